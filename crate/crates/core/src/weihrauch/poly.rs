//! Reductions between min, degree, monic normalisation and roots of polynomials,
//! and the degree problems for polynomials given as analytic functions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::analytic::germ_of_name;
use crate::error::{Error, Result};
use crate::names::{Name, RationalComplex};
use crate::polynomials::{bounded_set_polynomial, deg_monic, deg_to_min_stream, min_to_deg_poly, monic_from_roots, monic_of, nonzero_coefficients, zeros_monic_name, PolyName, TupleName};

use super::basic::{cn_le_bound, max_le_cn};
use super::oracle::read_nat;
use super::{compose, AnalyticTruth, Choice, PolyTruth, Problem, Reduction, Truth};

/// min to degree: `a_n = 2^-min{i | p(0) - p(i) = n}`, so `deg = p(0) - min p`.
pub fn min_le_deg() -> Reduction {
    Reduction::new(
        "min_le_deg",
        Problem::Min,
        Problem::Degree,
        "the minimum of a stream as the degree of a polynomial with shrinking coefficients",
        |p| min_to_deg_poly(p).0,
        |p, q| Name::constant(p.query_u64(0) - read_nat(q)),
        |_, t| {
            let (prefix, tail) = t.as_stream()?;
            let at = |i: u64| Truth::stream_at(prefix, tail, i);
            let p0 = at(0);
            let mut coeffs = vec![RationalComplex::zero(); p0 as usize + 1];
            // the tail value first appears at index prefix.len()
            for i in (0..=prefix.len() as u64).rev() {
                let v = at(i);
                if v <= p0 {
                    coeffs[(p0 - v) as usize] = RationalComplex::real(BigRational::new(BigInt::one(), BigInt::one() << i as usize));
                }
            }
            Ok(Truth::Poly(PolyTruth { coeffs, roots: None }))
        },
    )
}

/// Degree to min: count the top coefficients that are not yet provably nonzero.
pub fn deg_le_min() -> Reduction {
    Reduction::new(
        "deg_le_min",
        Problem::Degree,
        Problem::Min,
        "the degree from the least number of top coefficients still possibly zero",
        deg_to_min_stream,
        |p, q| Name::constant(p.query_u64(0) - read_nat(q)),
        |p, t| {
            let d = t.as_poly()?.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
            Ok(Truth::Choice(Choice::exactly(PolyName(p.clone()).bound() - d)))
        },
    )
}

/// Degree to Monic: the monic normalisation has a coefficient 1 at the degree.
pub fn deg_le_monic() -> Reduction {
    Reduction::new(
        "deg_le_monic",
        Problem::Degree,
        Problem::Monic,
        "the degree read off the monic normalisation",
        |p| p.clone(),
        |_, q| {
            let q = PolyName(q.clone());
            Name::from_fn(move |_| deg_monic(&q).expect("oracle answer is not monic").into())
        },
        |_, t| Ok(t.clone()),
    )
}

/// Monic to degree: divide by the coefficient at the degree.
pub fn monic_le_deg() -> Reduction {
    Reduction::new(
        "monic_le_deg",
        Problem::Monic,
        Problem::Degree,
        "normalising once the degree is known",
        |p| p.clone(),
        |p, q| monic_of(&PolyName(p.clone()), read_nat(q)).0,
        |_, t| Ok(t.clone()),
    )
}

/// Monic to Zeros: multiply out the roots.
pub fn monic_le_zeros() -> Reduction {
    Reduction::new(
        "monic_le_zeros",
        Problem::Monic,
        Problem::Zeros,
        "the monic normalisation as the product over the roots",
        |p| p.clone(),
        |_, q| monic_from_roots(&TupleName(q.clone())).0,
        |_, t| Ok(t.clone()),
    )
    .with_probe(4)
}

/// Zeros to Monic: the roots of a monic polynomial are computable.
pub fn zeros_le_monic() -> Reduction {
    Reduction::new(
        "zeros_le_monic",
        Problem::Zeros,
        Problem::Monic,
        "roots of the monic normalisation",
        |p| p.clone(),
        |_, q| zeros_monic_name(q),
        |_, t| Ok(t.clone()),
    )
    .with_probe(4)
}

/// Bound to the degree bound of `Σ_n 2^-(n + p(n)) X^(p(n))`, whose degree is the
/// largest raw value `p(n)`, one more than the largest listed element.
pub fn bound_le_dbnd_analytic() -> Reduction {
    Reduction::new(
        "bound_le_dbnd_analytic",
        Problem::Bound,
        Problem::DegreeBoundAnalytic,
        "an upper bound of an enumerated set from a degree bound of an analytic polynomial",
        |p| bounded_set_polynomial(p).0,
        |_, q| Name::constant(read_nat(q)),
        |_, t| {
            let top = t.as_set()?.last().map_or(0, |m| m + 1);
            Ok(Truth::Analytic(AnalyticTruth {
                // |P| <= Σ 2^-n = 2 on the disk of radius 2^(1/3)
                advice: Choice::at_least_valid(2),
                derivative_at_one: None,
                support: None,
                degree: Some(top),
            }))
        },
    )
}

/// Closed choice to the analytic degree bound, through Bound.
pub fn cn_le_dbnd_analytic() -> Reduction {
    compose(&cn_le_bound(), &bound_le_dbnd_analytic()).expect("matching problems").named("cn_le_dbnd_analytic")
}

/// A degree is a degree bound.
pub fn dbnd_le_deg_analytic() -> Reduction {
    Reduction::new(
        "dbnd_le_deg_analytic",
        Problem::DegreeBoundAnalytic,
        Problem::DegreeAnalytic,
        "the degree is a degree bound",
        |p| p.clone(),
        |_, q| q.clone(),
        |_, t| Ok(t.clone()),
    )
}

/// Analytic degree to max: enumerate the provably nonzero Taylor coefficients.
pub fn deg_analytic_le_max() -> Reduction {
    Reduction::new(
        "deg_analytic_le_max",
        Problem::DegreeAnalytic,
        Problem::Max,
        "the degree as the largest index of a nonzero Taylor coefficient",
        |p| nonzero_coefficients(&germ_of_name(&p.shift(1))),
        |_, q| Name::constant(read_nat(q)),
        |_, t| {
            let s: BTreeSet<u64> = t.as_analytic()?.support.clone().ok_or_else(|| Error::Config("coefficient support not recorded".into()))?;
            Ok(Truth::Set(s))
        },
    )
    .with_probe(4)
}

/// Analytic degree to closed choice, through max.
pub fn deg_analytic_le_cn() -> Reduction {
    compose(&deg_analytic_le_max(), &max_le_cn()).expect("matching problems").named("deg_analytic_le_cn")
}

/// Exact degree recorded in a truth.
pub fn truth_degree(t: &Truth) -> Result<u64> {
    match t {
        Truth::Poly(p) => p.degree().ok_or_else(|| Error::Domain("zero polynomial".into())),
        Truth::Analytic(a) => a.degree.ok_or_else(|| Error::Domain("degree not recorded".into())),
        other => Err(Error::Config(format!("no degree in a {} truth", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weihrauch::instances::{analytic_polynomial, closed_set, enumerated_set, polynomial, polynomial_from_roots, rational, stream};
    use crate::weihrauch::{apply_verified, OracleRealizer, Policy};

    fn run(r: &Reduction, inst: &crate::weihrauch::OracleInstance) -> Name {
        apply_verified(r, &OracleRealizer::exact(r.target), inst).unwrap()
    }

    #[test]
    fn min_and_degree() {
        assert_eq!(read_nat(&run(&min_le_deg(), &stream(&[5, 3, 8], 3))), 3);
        assert_eq!(read_nat(&run(&min_le_deg(), &stream(&[2, 7, 0], 4))), 0);
        assert_eq!(read_nat(&run(&deg_le_min(), &polynomial(&[1, 0, 3], 5))), 2);
        assert_eq!(truth_degree(&min_le_deg().map_truth(&Name::constant(0u32), &stream(&[5, 3, 8], 3).truth).unwrap()).unwrap(), 2);
    }

    #[test]
    fn monic_and_roots() {
        let inst = polynomial_from_roots(rational(2, 1), &[rational(1, 1), rational(-1, 2)], 4);
        assert_eq!(read_nat(&run(&deg_le_monic(), &inst)), 2);
        let monic = run(&monic_le_deg(), &inst);
        assert_eq!(PolyName(monic).coeff(2, 10), RationalComplex::one());
        run(&monic_le_zeros(), &inst);
        run(&zeros_le_monic(), &inst);
    }

    #[test]
    fn analytic_degree_problems() {
        for policy in [Policy::Tight, Policy::Loose] {
            let g = OracleRealizer::with_policy(Problem::DegreeBoundAnalytic, policy);
            let out = apply_verified(&bound_le_dbnd_analytic(), &g, &enumerated_set(&[2, 5])).unwrap();
            assert!(read_nat(&out) >= 5);
        }
        assert_eq!(read_nat(&run(&cn_le_dbnd_analytic(), &closed_set(&[3, 4]))), 3);
        let p = analytic_polynomial("z^3 + z/2", vec![rational(0, 1), rational(1, 2), rational(0, 1), rational(1, 1)]);
        assert_eq!(read_nat(&run(&deg_analytic_le_cn(), &p)), 3);
        assert_eq!(read_nat(&run(&dbnd_le_deg_analytic(), &p)), 3);
    }
}
