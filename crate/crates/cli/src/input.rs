//! Parsing of command-line values, registries of named objects and file literals.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use wlab_core::analytic::gadget::gadget_fn;
use wlab_core::analytic::series::{geometric_series, rational};
use wlab_core::analytic::{germ_from_series, indicator_germ, sum_germ, AnalyticName, GermName};
use wlab_core::names::RationalComplex;
use wlab_core::polynomials::PolyLiteral;
use wlab_core::testfns::{Family, FamilyDescriptor};
use wlab_core::weihrauch::instances::{analytic_polynomial, stream};
use wlab_core::weihrauch::{OracleInstance, Problem};

use crate::Failure;

pub fn rational_arg(s: &str) -> Result<BigRational, Failure> {
    let s = s.trim();
    let bad = |e: &dyn std::fmt::Display| Failure::Usage(format!("bad rational {s:?}: {e}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| bad(&e))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| bad(&e))?;
        if d == BigInt::from(0) {
            return Err(bad(&"zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|e| bad(&e))?))
    }
}

/// `re` or `re,im`, each a rational.
pub fn complex_arg(s: &str) -> Result<RationalComplex, Failure> {
    match s.split_once(',') {
        Some((re, im)) => Ok(RationalComplex::new(rational_arg(re)?, rational_arg(im)?)),
        None => Ok(RationalComplex::real(rational_arg(s)?)),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Germ keys accepted by `sum`: `geom3`, `inv2`, or `ind:0,2,...`.
pub fn germ(key: &str) -> Result<GermName, Failure> {
    let one = RationalComplex::one();
    match key {
        "geom3" => Ok(germ_from_series(1, geometric_series(one, BigRational::new(1.into(), 3.into())))),
        "inv2" => Ok(germ_from_series(1, geometric_series(RationalComplex::real(rational(1, 2)), rational(1, 2)))),
        _ => match key.strip_prefix("ind:") {
            Some(list) => Ok(indicator_germ(&nat_list(list)?)),
            None => Err(Failure::Usage(format!("unknown germ {key:?}; known: geom3, inv2, ind:<k,...>"))),
        },
    }
}

pub fn nat_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u64>().map_err(|e| Failure::Usage(format!("bad entry {t:?}: {e}"))))
        .collect()
}

/// Function keys accepted by `eval`, `germ` and `diff`: the germ keys summed,
/// `gadget<n>` for n < 32, or a polynomial literal from `--file`.
pub fn function(key: Option<&str>, file: Option<&Path>) -> Result<AnalyticName, Failure> {
    if let Some(path) = file {
        let lit: PolyLiteral = read_json(path)?;
        let coeffs = lit.coefficients().map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(AnalyticName(analytic_polynomial("file", coeffs).input));
    }
    let key = key.ok_or_else(|| Failure::Usage("give --fn <key> or --file <polynomial.json>".into()))?;
    if let Some(n) = key.strip_prefix("gadget") {
        let n: u64 = n.parse().map_err(|_| Failure::Usage(format!("bad gadget index in {key:?}")))?;
        if n >= 32 {
            return Err(Failure::Usage("gadget index must be below 32".into()));
        }
        return Ok(gadget_fn(n));
    }
    let g = germ(key).map_err(|_| Failure::Usage(format!("unknown function {key:?}; known: geom3, inv2, ind:<k,...>, gadget<n>")))?;
    sum_germ(&g).map_err(|e| Failure::Check(e.to_string()))
}

/// A bump family from `--file` (a family descriptor) or a single shift.
pub fn family(shift: &str, file: Option<&Path>) -> Result<Family, Failure> {
    match file {
        Some(path) => {
            let d: FamilyDescriptor = read_json(path)?;
            d.to_family().map_err(|e| Failure::Usage(e.to_string()))
        }
        None => Ok(Family::bump(rational_arg(shift)?)),
    }
}

/// Exact coefficients and degree bound of a polynomial literal.
pub fn polynomial(path: &Path) -> Result<(Vec<RationalComplex>, u64), Failure> {
    let lit: PolyLiteral = read_json(path)?;
    lit.to_name().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((lit.coefficients().map_err(|e| Failure::Usage(e.to_string()))?, lit.bound))
}

/// Name literal: leading values followed by a generator that produces the rest.
#[derive(Debug, Deserialize)]
pub struct NameLiteral {
    pub values: Vec<u64>,
    pub generator: String,
    #[serde(default)]
    pub tail: u64,
}

/// Generator tags a name literal may carry.
pub const GENERATORS: &[&str] = &["const"];

/// A stream instance from a name literal, for reductions whose source reads streams.
pub fn stream_instance(path: &Path, source: Problem) -> Result<OracleInstance, Failure> {
    let lit: NameLiteral = read_json(path)?;
    if !GENERATORS.contains(&lit.generator.as_str()) {
        return Err(Failure::Usage(format!("unknown generator {:?}; known: {}", lit.generator, GENERATORS.join(", "))));
    }
    if !matches!(source, Problem::Count | Problem::Min | Problem::Lpo | Problem::Identity) {
        return Err(Failure::Usage(format!("name literals are accepted for stream problems only, not {source}")));
    }
    if source == Problem::Count && lit.tail != 0 {
        return Err(Failure::Usage("Count needs a finitely supported stream (tail 0)".into()));
    }
    Ok(stream(&lit.values, lit.tail))
}
