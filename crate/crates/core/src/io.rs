//! Text formats: the algebra spec JSON, element literals and polygon JSON.
//!
//! Algebra spec:
//!
//! ```json
//! {"name": "x*y1", "dim": 2, "structure": [[[[1.0, 0.0], [0.0, 0.0]], ...]], "norm": {"p": "inf"}}
//! ```
//!
//! `structure[i][j][k]` is the coefficient of `e_k` in `e_i e_j`, as an
//! `[re, im]` pair. `norm` is `{"p": <number or "inf">}` or, for a
//! unitization whose leading `dim - 1` block is the base product,
//! `{"flavor": "unitize-op" | "unitize-l1", "base_p": ...}`. Floats are
//! written in shortest round-trip form, so serializing a parsed canonical
//! file reproduces it byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Exponent, NormSpec};
use crate::geometry::{convex_hull, ConvexPolygon};
use crate::unitize::{unitize_forced, Flavor};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_p: Option<Exponent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub structure: Vec<Vec<Vec<[f64; 2]>>>,
    pub norm: NormJson,
}

impl AlgebraSpec {
    pub fn from_algebra(algebra: &Algebra) -> Result<Self> {
        let norm = match algebra.norm_spec() {
            NormSpec::P(p) => NormJson { p: Some(*p), flavor: None, base_p: None },
            NormSpec::UnitizationOp(base) | NormSpec::UnitizationL1(base) => {
                let flavor = if matches!(algebra.norm_spec(), NormSpec::UnitizationOp(_)) { "unitize-op" } else { "unitize-l1" };
                let base_p = base.p_exponent().ok_or_else(|| Error::Spec("unitization of a base without a p-norm".into()))?;
                NormJson { p: None, flavor: Some(flavor.into()), base_p: Some(base_p) }
            }
            other => return Err(Error::Spec(format!("norm '{}' has no spec representation", other.describe()))),
        };
        let n = algebra.dim();
        let structure = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| pair(algebra.c(i, j, k))).collect()).collect()).collect();
        Ok(Self { name: algebra.name().map(str::to_owned), dim: n, structure, norm })
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Spec("dim must be positive".into()));
        }
        if self.structure.len() != n || self.structure.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(Error::Spec(format!("structure must be a {n}x{n}x{n} array of [re, im] pairs")));
        }
        let flat: Vec<C64> = self.structure.iter().flatten().flatten().map(|&[re, im]| C64::new(re, im)).collect();
        let NormJson { p, flavor, base_p } = &self.norm;
        let algebra = match (p, flavor.as_deref(), base_p) {
            (Some(p), None, None) => Algebra::new(n, flat, NormSpec::P(*p))?,
            (None, Some(f @ ("unitize-op" | "unitize-l1")), Some(bp)) => {
                let flavor = if f == "unitize-op" { Flavor::Op } else { Flavor::L1 };
                unitization_from(n, flat, flavor, *bp)?
            }
            (None, Some(f), _) if f != "unitize-op" && f != "unitize-l1" => {
                return Err(Error::Spec(format!("unknown norm flavor '{f}'")));
            }
            _ => return Err(Error::Spec("norm must be {\"p\": ...} or {\"flavor\": ..., \"base_p\": ...}".into())),
        };
        Ok(match &self.name {
            Some(name) => algebra.with_name(name.clone()),
            None => algebra,
        })
    }
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// The base is the leading block; the rest must be the unitization product.
fn unitization_from(n: usize, flat: Vec<C64>, flavor: Flavor, base_p: Exponent) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::Spec("a unitization has dim >= 2".into()));
    }
    let d = n - 1;
    let full = Algebra::new(n, flat, NormSpec::P(base_p))?;
    let base = Algebra::from_fn(d, NormSpec::P(base_p), |i, j, k| full.c(i, j, k))?;
    let u = unitize_forced(&base, flavor)?;
    if u.algebra().structure() != full.structure() {
        return Err(Error::Spec("structure is not the unitization of its leading block".into()));
    }
    let norm = match flavor {
        Flavor::Op => NormSpec::UnitizationOp(Arc::new(base)),
        Flavor::L1 => NormSpec::UnitizationL1(Arc::new(base)),
    };
    full.with_norm(norm)
}

/// Parses an algebra spec; errors carry the line and column.
pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
    spec.to_algebra()
}

/// Canonical spec text: pretty-printed with a trailing newline.
pub fn algebra_to_json(algebra: &Algebra) -> Result<String> {
    let spec = AlgebraSpec::from_algebra(algebra)?;
    let mut s = serde_json::to_string_pretty(&spec).map_err(|e| Error::Spec(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parses a comma-separated element literal: tokens `re`, `re+imi`,
/// `re-imi` or `imi` (`i` and `-i` stand for `+-1i`).
pub fn parse_element(text: &str) -> Result<Element> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.iter().any(|t| t.is_empty()) {
        return Err(Error::InvalidArgument(format!("empty component in element literal '{text}'")));
    }
    tokens.into_iter().map(parse_scalar).collect::<Result<Vec<_>>>().map(Element::new)
}

pub fn parse_scalar(token: &str) -> Result<C64> {
    let bad = || Error::InvalidArgument(format!("bad complex literal '{token}'"));
    let num = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad),
        }
    };
    let t = token.trim();
    let Some(body) = t.strip_suffix('i') else {
        if t.is_empty() {
            return Err(bad());
        }
        return Ok(C64::new(num(t).and_then(|v| if t.ends_with(['+', '-']) { Err(bad()) } else { Ok(v) })?, 0.0));
    };
    // split at the last sign that does not belong to an exponent
    let split = body.char_indices().filter(|&(k, c)| k > 0 && (c == '+' || c == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E')).map(|(k, _)| k).last();
    match split {
        Some(k) => {
            let re = &body[..k];
            if re.is_empty() || re.ends_with(['+', '-']) {
                return Err(bad());
            }
            Ok(C64::new(num(re)?, num(&body[k..])?))
        }
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

/// Shortest round-trip text of a scalar, in the literal syntax.
pub fn format_scalar(z: C64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        format!("{:?}", z.re)
    } else {
        let sign = if z.im.is_sign_negative() { "-" } else { "+" };
        format!("{:?}{sign}{:?}i", z.re, z.im.abs())
    }
}

pub fn format_element(x: &[C64]) -> String {
    x.iter().map(|z| format_scalar(*z)).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[f64; 2]>,
    #[serde(default)]
    pub meta: serde_json::Value,
}

/// `{"vertices": [[re, im], ...], "meta": {...}}` with a trailing newline.
pub fn polygon_to_json(polygon: &ConvexPolygon, meta: serde_json::Value) -> Result<String> {
    let doc = PolygonJson { vertices: polygon.vertices().iter().map(|z| pair(*z)).collect(), meta };
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Spec(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Reads a polygon file; the vertices are re-canonicalized.
pub fn polygon_from_json(text: &str) -> Result<(ConvexPolygon, serde_json::Value)> {
    let doc: PolygonJson = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
    let pts: Vec<C64> = doc.vertices.iter().map(|&[re, im]| C64::new(re, im)).collect();
    crate::ensure_finite(&pts, "polygon vertices")?;
    Ok((convex_hull(&pts), doc.meta))
}
