//! Output files: provenance stamps, point-cloud CSV, report documents.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64 as C64;
use numrange_core::range::{PointCloud, RangePoint};
use numrange_core::verify::{CheckReport, Status, ToleranceProfile};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const CSV_HEADER: [&str; 4] = ["re", "im", "x_index", "phi_index"];

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Enough to rerun the command that wrote a file.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_sha256: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<(String, String)>,
    pub profile: ToleranceProfile,
}

impl Provenance {
    pub fn new(command: &str, profile: &ToleranceProfile, spec_sha256: Option<String>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_owned(),
            seed: profile.seed,
            spec_sha256,
            args: Vec::new(),
            profile: profile.clone(),
        }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.push((key.to_owned(), value.to_string()));
        self
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Cloud as CSV text, floats in shortest round-trip form.
pub fn cloud_csv(cloud: &PointCloud) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for p in &cloud.points {
        w.write_record([format!("{:?}", p.z.re), format!("{:?}", p.z.im), p.x_index.to_string(), p.phi_index.to_string()])?;
    }
    Ok(w.into_inner()?)
}

pub fn read_cloud_csv(bytes: &[u8]) -> Result<Vec<RangePoint>> {
    let mut r = csv::Reader::from_reader(bytes);
    if r.headers()?.iter().ne(CSV_HEADER) {
        bail!("cloud CSV header must be {}", CSV_HEADER.join(","));
    }
    let mut out = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| rec.get(k).unwrap_or_default();
        let parse_f = |k: usize| -> Result<f64> {
            let v: f64 = field(k).parse().with_context(|| format!("row {}: bad {}", row + 1, CSV_HEADER[k]))?;
            if !v.is_finite() {
                bail!("row {}: non-finite {}", row + 1, CSV_HEADER[k]);
            }
            Ok(v)
        };
        let parse_u = |k: usize| -> Result<usize> { field(k).parse().with_context(|| format!("row {}: bad {}", row + 1, CSV_HEADER[k])) };
        out.push(RangePoint { z: C64::new(parse_f(0)?, parse_f(1)?), x_index: parse_u(2)?, phi_index: parse_u(3)? });
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub reports: usize,
    pub pass: usize,
    pub expected_violation: usize,
    pub fail: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Self { reports: reports.len(), pass: count(Status::Pass), expected_violation: count(Status::ExpectedViolation), fail: count(Status::Fail) }
    }
}

#[derive(Serialize)]
pub struct ReportDocument<'a> {
    pub provenance: Provenance,
    pub summary: Summary,
    pub reports: &'a [CheckReport],
}

/// One line per report plus the failing items.
pub fn print_reports(reports: &[CheckReport]) {
    for r in reports {
        let loc = r.locator.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
        println!("{:<18} {}{loc} | {}", r.status.to_string(), r.theorem, r.instance);
        for item in r.failed_items() {
            let rel = match item.relation {
                numrange_core::verify::Relation::Le => "<=",
                numrange_core::verify::Relation::Ge => ">=",
            };
            println!("    FAILED {}: {:e} {rel} {:e} expected {:?}", item.name, item.value, item.bound, item.expect);
        }
    }
    let s = Summary::of(reports);
    println!("{} reports: {} pass, {} expected-violation, {} fail", s.reports, s.pass, s.expected_violation, s.fail);
}
