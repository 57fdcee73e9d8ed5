//! Structured checks of the numerical-range relations, and the gallery of
//! worked examples and counterexamples.
//!
//! Every check produces a [`CheckReport`]: a list of named comparisons
//! `value <= bound` or `value >= bound`, each marked as expected to hold or
//! (for registered counterexamples only) expected to fail.

mod checks;
mod gallery;
mod instances;

use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::C64;

pub use checks::{check_cor23, check_thm21, check_thm22, check_thm24, check_thm25, check_thm26, subalgebra, Thm21Input, Thm22Input};
pub use gallery::{case_names, run_case, run_gallery, run_random_suite, GalleryCase, CASES};
pub use instances::{random_instance, random_suite, Model, RandomInstance, SuiteDraw};

/// Tolerances and sample sizes shared by all checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToleranceProfile {
    /// Exact identities and closed-form bounds.
    pub exact_tol: f64,
    /// Hausdorff distance between a sampled hull and an oracle polygon.
    pub sample_hausdorff_tol: f64,
    /// One-sided inclusion of sampled points.
    pub inclusion_tol: f64,
    pub n_sphere: usize,
    pub n_dual: usize,
    pub n_dirs: usize,
    pub seed: u64,
    /// Sphere directions for ranges under numerically dualized norms.
    pub n_sphere_numeric: usize,
    /// Finite-difference probes per unit vector for those norms.
    pub n_probes: usize,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            exact_tol: 1e-9,
            sample_hausdorff_tol: 5e-2,
            inclusion_tol: 2e-2,
            n_sphere: 2000,
            n_dual: 50,
            n_dirs: 720,
            seed: 0,
            n_sphere_numeric: 200,
            n_probes: 16,
        }
    }
}

impl ToleranceProfile {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> crate::Result<()> {
        let tols = [self.exact_tol, self.sample_hausdorff_tol, self.inclusion_tol];
        let counts = [self.n_sphere, self.n_dual, self.n_dirs, self.n_sphere_numeric, self.n_probes];
        if tols.iter().any(|t| !(*t > 0.0 && t.is_finite())) || counts.contains(&0) || self.n_dirs < 3 {
            return Err(crate::Error::InvalidArgument("profile tolerances and counts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ExpectedViolation,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ExpectedViolation => "expected-violation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Violated,
}

/// One comparison `value (<= | >=) bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub expect: Expect,
    pub holds: bool,
}

impl CheckItem {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, bound: f64) -> Self {
        let holds = match relation {
            Relation::Le => value <= bound,
            Relation::Ge => value >= bound,
        };
        Self { name: name.into(), value, bound, relation, expect: Expect::Holds, holds }
    }

    pub fn le(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Le, bound)
    }

    pub fn ge(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, Relation::Ge, bound)
    }

    /// Whether the item came out as expected.
    pub fn as_expected(&self) -> bool {
        match self.expect {
            Expect::Holds => self.holds,
            Expect::Violated => !self.holds,
        }
    }
}

/// A named quantity reported without a pass/fail criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    pub items: Vec<CheckItem>,
    pub measurements: Vec<Measurement>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub locator: Option<String>,
    pub profile: ToleranceProfile,
}

impl CheckReport {
    pub fn new(theorem: impl Into<String>, instance: impl Into<String>, profile: &ToleranceProfile) -> Self {
        Self {
            theorem: theorem.into(),
            instance: instance.into(),
            status: Status::Pass,
            items: Vec::new(),
            measurements: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            locator: None,
            profile: profile.clone(),
        }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
        self.refresh();
    }

    pub fn measure(&mut self, name: impl Into<String>, value: f64) {
        self.measurements.push(Measurement { name: name.into(), value });
    }

    pub fn witness(&mut self, name: impl Into<String>, value: &[C64]) {
        self.witnesses.push(Witness { name: name.into(), value: value.to_vec() });
    }

    pub fn element_witness(&mut self, name: impl Into<String>, value: &Element) {
        self.witness(name, value.as_slice());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn measurement(&self, name: &str) -> Option<f64> {
        self.measurements.iter().find(|m| m.name == name).map(|m| m.value)
    }

    /// Marks the named items as registered counterexamples. Unknown names
    /// make the report fail.
    pub fn expect_violations(&mut self, names: &[&str]) {
        for name in names {
            match self.items.iter_mut().find(|i| i.name == *name) {
                Some(item) => item.expect = Expect::Violated,
                None => {
                    self.note(format!("registered violation '{name}' was not evaluated"));
                    self.items.push(CheckItem {
                        name: (*name).to_owned(),
                        value: f64::NAN,
                        bound: f64::NAN,
                        relation: Relation::Le,
                        expect: Expect::Violated,
                        holds: true,
                    });
                }
            }
        }
        self.refresh();
    }

    /// Appends the items and records of `other`, prefixing item names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        let tag = |s: String| if prefix.is_empty() { s } else { format!("{prefix} {s}") };
        self.items.extend(other.items.into_iter().map(|mut i| {
            i.name = tag(i.name);
            i
        }));
        self.measurements.extend(other.measurements.into_iter().map(|mut m| {
            m.name = tag(m.name);
            m
        }));
        self.witnesses.extend(other.witnesses.into_iter().map(|mut w| {
            w.name = tag(w.name);
            w
        }));
        self.notes.extend(other.notes);
        self.refresh();
    }

    fn refresh(&mut self) {
        self.status = if self.items.iter().any(|i| !i.as_expected()) {
            Status::Fail
        } else if self.items.iter().any(|i| i.expect == Expect::Violated) {
            Status::ExpectedViolation
        } else {
            Status::Pass
        };
    }

    pub fn failed_items(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.as_expected())
    }
}
