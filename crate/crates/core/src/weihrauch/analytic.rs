//! Reductions around summation, advice and differentiation of analytic functions.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::analytic::gadget::{gadget_series, gadget_sum_advice, gadget_taylor_polynomial};
use crate::analytic::series::approximant;
use crate::analytic::{diff_analytic_name, eval_analytic, germ_bound_admits, germ_of_name, sum_advice, sum_germ_name, AnalyticName};
use crate::error::{Error, Result};
use crate::names::{pair, unpair, Name, RationalComplex, RationalPoly2};
use crate::numeric::IntervalC;
use crate::spaces::{cont_eval, MetricName, Space};

use super::basic::cn_le_count;
use super::oracle::read_nat;
use super::{compose, AnalyticTruth, Choice, Problem, Reduction, Truth};

/// Nearest integer to the real part of an enclosure narrower than 1/2.
fn round_re(v: &IntervalC) -> u64 {
    let (lo, hi) = v.re.to_f64();
    ((lo + hi) / 2.0).round().max(0.0) as u64
}

fn one() -> MetricName {
    MetricName::complex_rational(&RationalComplex::one())
}

fn support_of(t: &Truth) -> Result<Vec<u64>> {
    let (prefix, tail) = t.as_stream()?;
    if tail != 0 {
        return Err(Error::Domain("Count needs a finitely supported stream".into()));
    }
    Ok((0..prefix.len() as u64).filter(|&n| prefix[n as usize] > 0).collect())
}

/// Count to Sum: the indicator of the support sums to a function with `f(1) = Count(p)`.
pub fn count_le_sum() -> Reduction {
    Reduction::new(
        "count_le_sum",
        Problem::Count,
        Problem::Sum,
        "counting by summing the indicator series at 1",
        |p| {
            let p = p.clone();
            Name::from_fn(move |i| {
                let (k, _) = unpair(i);
                if p.query_u64(k) > 0 { RationalComplex::one() } else { RationalComplex::zero() }.index()
            })
        },
        |_, q| {
            let f = MetricName::new(Space::Disk, q.clone());
            Name::from_fn(move |_| round_re(&cont_eval(&f, &one(), 3)).into())
        },
        |_, t| Ok(Truth::Germ(Choice::at_least(crate::analytic::germ_advice_for_support(&support_of(t)?)))),
    )
}

/// Sum to germ advice: with an advice the summation is computable.
pub fn sum_le_advg() -> Reduction {
    Reduction::new(
        "sum_le_advg",
        Problem::Sum,
        Problem::AdvGerm,
        "summing a series once its germ advice is known",
        |p| p.clone(),
        |p, q| sum_germ_name(&Name::cons(read_nat(q), p)).shift(1),
        |_, t| Ok(t.clone()),
    )
}

/// Complement of the germ advices of a coefficient sequence: step `⟨⟨k, m⟩, j⟩`
/// excludes `m` when the `2^-j` approximation of `a_k` rules out `|a_k| <= m 2^(-k/(m+1))`.
pub fn germ_advice_complement(seq: &Name) -> Name {
    let seq = seq.clone();
    Name::from_u64_fn(move |step| {
        let (km, j) = unpair(step);
        let (k, m) = unpair(km);
        let c = RationalComplex::at(&seq.query(pair(k, j)));
        if germ_bound_admits(m, k, &c, j) { 0 } else { m + 1 }
    })
}

/// Germ advice to closed choice by dovetailing the coefficient tests.
pub fn advg_le_cn() -> Reduction {
    Reduction::new(
        "advg_le_cn",
        Problem::AdvGerm,
        Problem::ClosedChoice,
        "germ advices form a closed set, refuted by single coefficients",
        germ_advice_complement,
        |_, q| Name::constant(read_nat(q)),
        |_, t| Ok(Truth::Choice(t.as_choice()?.clone())),
    )
}

/// Closed choice to Sum, through Count.
pub fn cn_le_sum() -> Reduction {
    compose(&cn_le_count(), &count_le_sum()).expect("matching problems").named("cn_le_sum")
}

/// `Σ_{n <= j+1, p(n) > 0} f_n` within `2^-j`: each `|f_n| < 2^-n` on the disk.
pub fn gadget_stream_name(p: &Name) -> Name {
    let p = p.clone();
    Name::from_fn(move |j| {
        (0..=j + 1)
            .filter(|&n| p.query_u64(n) > 0)
            .fold(RationalPoly2::zero(), |acc, n| acc.add(&approximant(&*gadget_series(n), j + 3 + n)))
            .index()
    })
}

fn gadget_truth(t: &Truth, derivative: bool) -> Result<Truth> {
    let s = support_of(t)?;
    let d = RationalComplex::real(num_rational::BigRational::from_integer((s.len() as i64).into()));
    Ok(Truth::Analytic(AnalyticTruth {
        advice: Choice::at_least_valid(gadget_sum_advice(&s)),
        derivative_at_one: derivative.then_some(d),
        support: None,
        degree: None,
    }))
}

/// Count to Diff₁: the sum of the gadgets over the support has derivative `Count(p)` at 1.
pub fn count_le_diff1() -> Reduction {
    Reduction::new(
        "count_le_diff1",
        Problem::Count,
        Problem::Diff1,
        "counting with the derivative at 1 of a sum of small functions with unit slope",
        gadget_stream_name,
        |_, q| {
            let q = q.clone();
            Name::from_fn(move |_| round_re(&MetricName::new(Space::Complex, q.clone()).center(3).enclose(8)).into())
        },
        |_, t| gadget_truth(t, true),
    )
    .with_probe(4)
}

/// Derivative at 1 of `cons(advice, f)` as a complex name.
fn derivative_at_one(advice: u64, f: &Name) -> Name {
    let d = AnalyticName(diff_analytic_name(&Name::cons(advice, f)));
    MetricName::complex_from_enclosures(move |n| eval_analytic(&d, &one(), n + 1)).name
}

/// Diff₁ to analytic advice: with the advice, differentiate and evaluate.
pub fn diff1_le_advc() -> Reduction {
    Reduction::new(
        "diff1_le_advc",
        Problem::Diff1,
        Problem::AdvAnalytic,
        "differentiating an analytic function once its advice is known",
        |p| p.clone(),
        |p, q| derivative_at_one(read_nat(q), p),
        |_, t| Ok(t.clone()),
    )
    .with_probe(2)
}

/// Analytic advice to closed choice: choose a germ advice of the Taylor coefficients
/// and sum them.
pub fn advc_le_cn() -> Reduction {
    Reduction::new(
        "advc_le_cn",
        Problem::AdvAnalytic,
        Problem::ClosedChoice,
        "analytic advice through the germ advice of the Taylor coefficients",
        |p| germ_advice_complement(&germ_of_name(p)),
        |_, q| Name::constant(sum_advice(read_nat(q))),
        // Cauchy's estimate turns an analytic advice into a germ advice
        |_, t| Ok(Truth::Choice(Choice::at_least_valid(t.as_analytic()?.advice.tight))),
    )
    .with_probe(3)
}

/// Closed choice to Diff₁, through Count.
pub fn cn_le_diff1() -> Reduction {
    compose(&cn_le_count(), &count_le_diff1()).expect("matching problems").named("cn_le_diff1")
}

/// Like [`gadget_stream_name`] with each `f_n` replaced by a rational Taylor
/// polynomial within `2^-(n+3)` in value and in derivative at 1. For finitely
/// supported `p` the function is a polynomial.
pub fn gadget_polynomial_stream_name(p: &Name) -> Name {
    let p = p.clone();
    let cache: Mutex<HashMap<u64, RationalPoly2>> = Mutex::new(HashMap::new());
    Name::from_fn(move |j| {
        (0..=j + 1)
            .filter(|&n| p.query_u64(n) > 0)
            .fold(RationalPoly2::zero(), |acc, n| {
                let mut c = cache.lock().unwrap();
                let pn = c.entry(n).or_insert_with(|| RationalPoly2::from_z_coeffs(&gadget_taylor_polynomial(n, n + 3)));
                acc.add(pn)
            })
            .index()
    })
}

/// Count to analytic advice restricted to polynomials.
pub fn count_le_advc_poly() -> Reduction {
    Reduction::new(
        "count_le_advc_poly",
        Problem::Count,
        Problem::AdvAnalytic,
        "the advice problem stays as hard on polynomials: Taylor truncations replace the gadgets",
        gadget_polynomial_stream_name,
        |p, q| {
            let d = derivative_at_one(read_nat(q), &gadget_polynomial_stream_name(p));
            Name::from_fn(move |_| round_re(&RationalComplex::at(&d.query(3)).enclose(8)).into())
        },
        // the truncations have coefficients below those of the gadgets
        |_, t| gadget_truth(t, false),
    )
    .with_probe(3)
}

#[cfg(test)]
mod tests {
    use num_traits::ToPrimitive;

    use super::*;
    use crate::weihrauch::instances::{closed_set, gadget_sum, geometric_sequence, indicator_sequence, stream};
    use crate::weihrauch::{apply_verified, OracleRealizer};

    fn run(r: &Reduction, inst: &crate::weihrauch::OracleInstance) -> Name {
        apply_verified(r, &OracleRealizer::exact(r.target), inst).unwrap()
    }

    #[test]
    fn counting_by_summation() {
        assert_eq!(read_nat(&run(&count_le_sum(), &stream(&[0, 0, 1, 0, 0, 1, 0, 1], 0))), 3);
        assert_eq!(read_nat(&run(&count_le_sum(), &stream(&[], 0))), 0);
    }

    #[test]
    fn closed_choice_by_summation() {
        assert_eq!(read_nat(&run(&cn_le_sum(), &closed_set(&[4, 11]))), 4);
    }

    #[test]
    fn sums_and_germ_advice() {
        run(&sum_le_advg(), &geometric_sequence());
        assert_eq!(read_nat(&run(&advg_le_cn(), &indicator_sequence(&[3]))), crate::analytic::germ_advice_for_support(&[3]));
    }

    #[test]
    fn closed_choice_by_differentiation() {
        assert_eq!(read_nat(&run(&cn_le_diff1(), &closed_set(&[4, 6]))), 4);
        assert_eq!(read_nat(&run(&count_le_diff1(), &stream(&[0, 1, 1], 0))), 2);
    }

    #[test]
    fn derivative_with_advice() {
        let out = run(&diff1_le_advc(), &gadget_sum(&[1, 2]));
        let c = MetricName::new(Space::Complex, out).center(6);
        assert!((c.re.to_f64().unwrap() - 2.0).abs() < 0.05);
    }

    #[test]
    fn taylor_truncation_keeps_value_and_slope() {
        let c = gadget_taylor_polynomial(2, 6);
        let slope: f64 = c.iter().enumerate().map(|(k, a)| k as f64 * a.re.to_f64().unwrap()).sum();
        assert!((slope - 1.0).abs() <= 2f64.powi(-6), "{slope}");
        assert!(c.iter().all(|a| a.re >= num_rational::BigRational::from_integer(0.into())));
    }

    #[test]
    fn counting_through_polynomial_advice() {
        assert_eq!(read_nat(&run(&count_le_advc_poly(), &stream(&[1, 1], 0))), 2);
    }
}
