//! Germs at 0 and analytic functions on the unit disk: summation, differentiation,
//! germ extraction and their advice values.
//!
//! A germ name `q` carries the advice `n = q(0)` with `|a_k| <= n 2^(-k/(n+1))` and
//! the coefficient sequence `q(1 + ⟨k, j⟩)` (index of a Gaussian rational within
//! `2^-j` of `a_k`). An analytic name carries the advice `m = q(0)` (the function
//! extends to `|z| < r_m = 2^(1/(m+1))` with bound `m` there) followed by a C(D)-name.

pub mod gadget;
pub mod series;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::names::{pair, Name, Nat, RationalComplex};
use crate::numeric::elementary::pow2_frac;
use crate::numeric::{Dyadic, Interval, IntervalC, Round};
use crate::spaces::{cont_eval, poly_approx, MetricName, Space};
use series::{approximant, ceil_log2, round_to_grid, Series, SeriesSource};

/// Coefficients checked eagerly against the advice bound.
pub const GERM_CHECK_WINDOW: u64 = 64;

/// Working precision for advice arithmetic.
const ADVICE_PREC: u64 = 64;

#[derive(Clone, Debug)]
pub struct GermName(pub Name);

impl GermName {
    pub fn advice(&self) -> u64 {
        self.0.query_u64(0)
    }

    /// Gaussian rational within `2^-prec` of `a_k`.
    pub fn coeff(&self, k: u64, prec: u64) -> RationalComplex {
        RationalComplex::at(&self.0.query(1 + pair(k, prec)))
    }

    pub fn from_series(advice: u64, src: Series) -> GermName {
        GermName(Name::from_fn(move |i| {
            if i == 0 {
                return Nat::from(advice);
            }
            let (k, j) = crate::names::unpair(i - 1);
            src.coeff(k, j).index()
        }))
    }

    /// Check `|a_k| <= n 2^(-k/(n+1))` for `k < upto` using enclosures at precision `prec`.
    pub fn check_advice(&self, upto: u64, prec: u64) -> Result<()> {
        let n = self.advice();
        for k in 0..upto {
            let c = self.coeff(k, prec);
            if !germ_bound_admits(n, k, &c, prec) {
                return Err(Error::InvalidGerm { k, advice: n });
            }
        }
        Ok(())
    }
}

/// Whether an approximation `c` (within `2^-prec`) is compatible with `|a_k| <= n 2^(-k/(n+1))`.
pub fn germ_bound_admits(n: u64, k: u64, c: &RationalComplex, prec: u64) -> bool {
    let lower = c.enclose(prec + 8).mig(prec + 8);
    let lower = &lower - &Dyadic::pow2(-(prec as i64));
    if lower.signum() <= 0 {
        return true;
    }
    if n == 0 {
        return false;
    }
    let bound = &pow2_frac(-(k as i64), n + 1, prec + 8).hi().clone() * &Dyadic::from_int(n);
    lower <= bound
}

#[derive(Clone, Debug)]
pub struct AnalyticName(pub Name);

impl AnalyticName {
    pub fn new(advice: u64, cont: &MetricName) -> AnalyticName {
        AnalyticName(Name::cons(advice, &cont.name))
    }

    pub fn advice(&self) -> u64 {
        self.0.query_u64(0)
    }

    pub fn cont(&self) -> MetricName {
        MetricName::new(Space::Disk, self.0.shift(1))
    }

    pub fn from_series(advice: u64, src: Series) -> AnalyticName {
        let cont = MetricName::function(Space::Disk, move |m| approximant(src.as_ref(), m));
        AnalyticName::new(advice, &cont)
    }
}

/// `r_m = 2^(1/(m+1))`.
pub fn radius(m: u64, prec: u64) -> Interval {
    pow2_frac(1, m + 1, prec)
}

/// Sufficient condition for `m'` to be an advice of the sum of a germ with advice `n`:
/// `r_{m'} <= 2^(1/(2(n+1)))` and `n / (1 - r_{m'} 2^(-1/(n+1))) <= m'`.
pub fn sum_advice_holds(n: u64, m_out: u64) -> bool {
    if n == 0 {
        return true;
    }
    if m_out < 2 * n + 1 {
        return false;
    }
    // r_{m'} 2^(-1/(n+1)) = 2^((n - m') / ((m'+1)(n+1)))
    let num = n as i64 - m_out as i64;
    let den = (m_out + 1) * (n + 1);
    let q = pow2_frac(num, den, ADVICE_PREC);
    let gap = &Dyadic::one() - q.hi();
    if gap.signum() <= 0 {
        return false;
    }
    let lhs = BigRational::from_integer(n.into()) / gap.to_rational();
    lhs <= BigRational::from_integer(m_out.into())
}

/// Advice attached to `sum_germ` outputs.
pub fn sum_advice(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut m = 2 * n + 1;
    while !sum_advice_holds(n, m) {
        m += 1;
    }
    m
}

/// Advice attached to derivatives of functions with advice `m`:
/// `max(m + 1, ceil(m / (r_m - r_{m+1})))`.
pub fn diff_advice(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let gap = radius(m, ADVICE_PREC).lo() - radius(m + 1, ADVICE_PREC).hi();
    assert!(gap.signum() > 0);
    let q = BigRational::from_integer(m.into()) / gap.to_rational();
    let c = q.ceil().to_integer().to_u64().expect("derivative advice overflow");
    c.max(m + 1)
}

/// Smallest advice `n` for which every coefficient of modulus at most 1 at the given
/// positions satisfies the germ bound.
pub fn germ_advice_for_support(support: &[u64]) -> u64 {
    let Some(&kmax) = support.iter().max() else { return 0 };
    let mut n = 1;
    loop {
        let b = &pow2_frac(-(kmax as i64), n + 1, ADVICE_PREC).lo().clone() * &Dyadic::from_int(n);
        if b >= Dyadic::one() {
            return n;
        }
        n += 1;
    }
}

/// Coefficients of a germ name, with the tail bound implied by its advice.
struct GermSeries {
    germ: GermName,
    advice: u64,
}

impl SeriesSource for GermSeries {
    fn coeff(&self, k: u64, prec: u64) -> RationalComplex {
        self.germ.coeff(k, prec)
    }

    fn tail(&self, k0: u64) -> Dyadic {
        germ_tail(self.advice, k0)
    }
}

/// `n ρ^K / (1 - ρ)` with `ρ = 2^(-1/(n+1))`, rounded up.
pub fn germ_tail(n: u64, k0: u64) -> Dyadic {
    if n == 0 {
        return Dyadic::zero();
    }
    let rho_k = pow2_frac(-(k0 as i64), n + 1, ADVICE_PREC);
    let rho = pow2_frac(-1, n + 1, ADVICE_PREC);
    let gap = &Dyadic::one() - rho.hi();
    let v = BigRational::from_integer(n.into()) * rho_k.hi().to_rational() / gap.to_rational();
    Dyadic::from_rational(&v, ADVICE_PREC, Round::Up)
}

/// Stream transformer behind [`sum_germ`]: germ name ↦ analytic name.
pub fn sum_germ_name(q: &Name) -> Name {
    let germ = GermName(q.clone());
    let q2 = q.clone();
    let body = Name::from_fn(move |m| {
        let n = germ.advice();
        approximant(&GermSeries { germ: germ.clone(), advice: n }, m).index()
    });
    Name::from_fn(move |i| if i == 0 { Nat::from(sum_advice(q2.query_u64(0))) } else { body.query(i - 1) })
}

/// `sum_germ`: the function `Σ a_k z^k`, after checking the first coefficients against the advice.
pub fn sum_germ(g: &GermName) -> Result<AnalyticName> {
    g.check_advice(GERM_CHECK_WINDOW, 24)?;
    Ok(AnalyticName(sum_germ_name(&g.0)))
}

/// `germ_of` as a stream transformer on C(D)-names: `⟨k, j⟩ ↦` Fourier coefficient
/// `Σ_{a-b=k} c_ab` of the `(j+1)`-st approximant, rounded to a dyadic grid.
pub fn germ_of_name(f: &Name) -> Name {
    let f = MetricName::new(Space::Disk, f.clone());
    Name::from_fn(move |i| {
        let (k, j) = crate::names::unpair(i);
        let p = poly_approx(&f, j + 1);
        let mut c = RationalComplex::zero();
        for (&(a, b), v) in p.terms() {
            if a as i64 - b as i64 == k as i64 {
                c = c.add(v);
            }
        }
        round_to_grid(&c, -(j as i64) - 3).index()
    })
}

/// `germ_of`: the coefficient sequence of a function analytic on the closed disk.
pub fn germ_of(f: &MetricName) -> Name {
    assert_eq!(f.space, Space::Disk);
    germ_of_name(&f.name)
}

/// Germ name of an analytic name: by Cauchy's estimate the advice carries over.
pub fn germ_of_analytic_name(q: &Name) -> Name {
    let seq = germ_of_name(&q.shift(1));
    let q = q.clone();
    Name::from_fn(move |i| if i == 0 { q.query(0) } else { seq.query(i - 1) })
}

/// Coefficients `(k+1) a_{k+1}` of the derivative, with the Cauchy tail bound.
struct DerivSeries {
    seq: Name,
    advice: u64,
}

impl SeriesSource for DerivSeries {
    fn coeff(&self, k: u64, prec: u64) -> RationalComplex {
        let extra = ceil_log2(k + 1) + 1;
        let c = RationalComplex::at(&self.seq.query(pair(k + 1, prec + extra)));
        c.scale(&BigRational::from_integer(BigInt::from(k + 1)))
    }

    fn tail(&self, k0: u64) -> Dyadic {
        deriv_tail(self.advice, k0)
    }
}

/// `Σ_{j >= K+1} j m ρ^j = m ρ^(K+1) ((K+1) - K ρ) / (1 - ρ)^2`, `ρ = 2^(-1/(m+1))`.
pub fn deriv_tail(m: u64, k0: u64) -> Dyadic {
    if m == 0 {
        return Dyadic::zero();
    }
    let rho = pow2_frac(-1, m + 1, ADVICE_PREC);
    let rho_k1 = pow2_frac(-(k0 as i64) - 1, m + 1, ADVICE_PREC);
    let kk = Interval::from_int(k0);
    let lin = &Interval::from_int(k0 + 1) - &(&kk * &rho);
    let gap = &Interval::one() - &rho;
    let num = &(&rho_k1 * &lin) * &Interval::from_int(m);
    num.div(&gap.sqr(), ADVICE_PREC).hi().clone()
}

/// Stream transformer behind [`diff_analytic`].
pub fn diff_analytic_name(q: &Name) -> Name {
    let seq = germ_of_name(&q.shift(1));
    let q2 = q.clone();
    let body = Name::from_fn(move |m| {
        let advice = q2.query_u64(0);
        approximant(&DerivSeries { seq: seq.clone(), advice }, m).index()
    });
    let q3 = q.clone();
    Name::from_fn(move |i| if i == 0 { Nat::from(diff_advice(q3.query_u64(0))) } else { body.query(i - 1) })
}

/// `diff_analytic`: `f ↦ f'`.
pub fn diff_analytic(f: &AnalyticName) -> AnalyticName {
    AnalyticName(diff_analytic_name(&f.0))
}

/// `eval_analytic`: enclosure of `f(z)` of width at most `2^-n`.
pub fn eval_analytic(f: &AnalyticName, z: &MetricName, n: u64) -> IntervalC {
    cont_eval(&f.cont(), z, n)
}

/// Germ name of an exactly given series with a stated advice.
pub fn germ_from_series(advice: u64, src: Series) -> GermName {
    GermName::from_series(advice, src)
}

/// The zero germ with the given advice.
pub fn zero_germ(advice: u64) -> GermName {
    GermName::from_series(advice, series::finite_series(vec![]))
}

/// `a_k = 1` for `k` in `support`, else 0, with the least admissible advice.
pub fn indicator_germ(support: &[u64]) -> GermName {
    let len = support.iter().max().map_or(0, |k| k + 1) as usize;
    let mut coeffs = vec![RationalComplex::zero(); len];
    for &k in support {
        coeffs[k as usize] = RationalComplex::one();
    }
    GermName::from_series(germ_advice_for_support(support), series::finite_series(coeffs))
}

/// Shared handle to a series.
pub fn share<S: SeriesSource + 'static>(s: S) -> Series {
    Arc::new(s)
}

#[cfg(test)]
mod tests {
    use super::series::{geometric_series, rational};
    use super::*;
    use num_traits::Signed;

    fn point(re: i64, im: i64) -> MetricName {
        MetricName::complex_rational(&RationalComplex::from_ints(re, 1, im, 1))
    }

    #[test]
    fn advice_formulas() {
        assert_eq!(sum_advice(0), 0);
        assert_eq!(sum_advice(1), 5);
        assert!(!sum_advice_holds(1, 4));
        for n in 1..6 {
            let m = sum_advice(n);
            assert!(sum_advice_holds(n, m));
            // the closed form bound checked in floating point
            let r = 2f64.powf(1.0 / (m as f64 + 1.0));
            let rho = 2f64.powf(-1.0 / (n as f64 + 1.0));
            assert!(n as f64 / (1.0 - r * rho) <= m as f64 + 1e-9);
        }
        // r_1 - r_2 = 2^(1/2) - 2^(1/3) ≈ 0.1543, 1/0.1543 ≈ 6.48
        assert_eq!(diff_advice(1), 7);
        assert_eq!(germ_advice_for_support(&[2, 5, 7]), 4);
    }

    #[test]
    fn zero_germ_sums_to_zero() {
        let f = sum_germ(&zero_germ(1)).unwrap();
        let v = eval_analytic(&f, &point(1, 0), 10);
        assert!(v.contains_zero());
    }

    #[test]
    fn geometric_third_sums_to_three_halves() {
        let g = germ_from_series(1, geometric_series(RationalComplex::one(), rational(1, 3)));
        let f = sum_germ(&g).unwrap();
        let v = eval_analytic(&f, &point(1, 0), 20);
        assert!(v.contains_rational(&rational(3, 2), &rational(0, 1)));
        assert!(v.width() <= Dyadic::pow2(-20));
    }

    #[test]
    fn count_gadget_sums_to_support_size() {
        let f = sum_germ(&indicator_germ(&[2, 5, 7])).unwrap();
        assert_eq!(f.advice(), sum_advice(4));
        let v = eval_analytic(&f, &point(1, 0), 12);
        assert!(v.contains_rational(&rational(3, 1), &rational(0, 1)));
    }

    #[test]
    fn invalid_germ_is_rejected() {
        let g = germ_from_series(1, series::finite_series(vec![RationalComplex::zero(), RationalComplex::from_ints(2, 1, 0, 1)]));
        assert_eq!(sum_germ(&g).unwrap_err(), Error::InvalidGerm { k: 1, advice: 1 });
    }

    #[test]
    fn germ_of_geometric_half() {
        // 1/(2 - z) = Σ 2^-(k+1) z^k
        let f = AnalyticName::from_series(2, geometric_series(RationalComplex::from_ints(1, 2, 0, 1), rational(1, 2)));
        let seq = germ_of(&f.cont());
        let a0 = RationalComplex::at(&seq.query(pair(0, 20)));
        let a3 = RationalComplex::at(&seq.query(pair(3, 20)));
        let tol = rational(1, 1 << 20);
        let close = |c: &RationalComplex, want: BigRational| (&c.re - want).abs() < tol && c.im.abs() < tol;
        assert!(close(&a0, rational(1, 2)));
        assert!(close(&a3, rational(1, 16)));
    }

    #[test]
    fn derivative_of_three_over_three_minus_z() {
        // 3/(3 - z) has advice 3 on U_3 (|z| < 2^(1/4)): bound 3/(3 - 1.19) < 3
        let f = AnalyticName::from_series(3, geometric_series(RationalComplex::one(), rational(1, 3)));
        let d = diff_analytic(&f);
        let v = eval_analytic(&d, &point(1, 0), 12);
        assert!(v.contains_rational(&rational(3, 4), &rational(0, 1)));
    }
}
