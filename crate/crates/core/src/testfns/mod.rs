//! Smooth, Schwartz and bump function names built from shifted copies of the bump
//! `exp(x²/(x²-1))`.
//!
//! Layouts:
//! - smooth: `q(⟨N, m, n⟩)` is the `n`-th entry of a `C([-N, N])`-name of `f^(m)`,
//!   read as `Σ c_a T_a(x / max(N, 1))`;
//! - Schwartz: decay witnesses on even entries, the smooth name on odd entries;
//! - bump: `q(0)` bounds the support, the smooth name follows.

pub mod bumppoly;
pub mod chebyshev;
pub mod constructions;
pub mod family;
pub mod seminorm;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::names::pairing::{to_u64, triple, untriple};
use crate::names::{Name, RationalPoly2};
use crate::numeric::{Dyadic, Interval, IntervalC};
use crate::spaces::{cont_eval, MetricName, Space};
pub use chebyshev::slice_polynomial;
pub use family::{Family, FamilyDescriptor};
pub use seminorm::{frechet_distance, schwartz_seminorm, smooth_seminorm, sup_abs, sup_at_most, Metric};

#[derive(Clone, Debug)]
pub struct SmoothName(pub Name);

impl SmoothName {
    /// Name of `F` whose `(N, m)` slice is certified within `2^-n` at entry `n`.
    pub fn from_family(f: Family) -> SmoothName {
        SmoothName(Name::from_fn(move |k| {
            let (nb, m, n) = untriple(k);
            slice_polynomial(&f, nb, m, -(n as i64) - 1).index()
        }))
    }

    /// Smooth name from a slice builder `(N, m, n) ↦ approximant within 2^-n`.
    pub fn from_slices<F>(slices: F) -> SmoothName
    where
        F: Fn(u64, u64, u64) -> RationalPoly2 + Send + Sync + 'static,
    {
        SmoothName(Name::from_fn(move |k| {
            let (nb, m, n) = untriple(k);
            slices(nb, m, n).index()
        }))
    }

    /// The `C([-N, N])`-name of `f^(m)`.
    pub fn slice(&self, n_bound: u64, m: u64) -> MetricName {
        let q = self.0.clone();
        MetricName::new(Space::Segment(n_bound.max(1)), Name::from_fn(move |n| q.query(triple(n_bound, m, n))))
    }
}

/// Enclosure of `f^(m)(x)` of width at most `2^-n`, read from the slice over a
/// segment containing `x`.
pub fn eval_smooth_derivative(f: &SmoothName, m: u64, x: &MetricName, n: u64) -> IntervalC {
    let c = x.center(0).re;
    let nb = (c.abs() + BigRational::from_integer(1.into())).ceil().to_integer().to_u64().expect("point too large");
    cont_eval(&f.slice(nb, m), x, n)
}

#[derive(Clone, Debug)]
pub struct SchwartzName(pub Name);

impl SchwartzName {
    pub fn from_parts(decay: Name, smooth: &SmoothName) -> SchwartzName {
        let s = smooth.0.clone();
        SchwartzName(Name::from_fn(move |k| if k % 2 == 0 { decay.query(k / 2) } else { s.query(k / 2) }))
    }

    /// `q(2n)`: beyond it `|x^d f^(m)(x)| <= 2^-k` for all `d, m, k <= n`.
    pub fn decay(&self, n: u64) -> u64 {
        to_u64(&self.0.query(2 * n))
    }

    pub fn smooth(&self) -> SmoothName {
        let q = self.0.clone();
        SmoothName(Name::from_fn(move |n| q.query(2 * n + 1)))
    }
}

#[derive(Clone, Debug)]
pub struct BumpName(pub Name);

impl BumpName {
    pub fn from_parts(support_bound: u64, smooth: &SmoothName) -> BumpName {
        BumpName(Name::cons(support_bound, &smooth.0))
    }

    pub fn support_bound(&self) -> u64 {
        to_u64(&self.0.query(0))
    }

    pub fn smooth(&self) -> SmoothName {
        SmoothName(self.0.shift(1))
    }
}

/// `f_λ(x) = f(x - λ)` with support bound `⌈|λ|⌉ + 1`.
pub fn bump(lambda: BigRational) -> BumpName {
    let f = Family::bump(lambda);
    BumpName::from_parts(f.support_bound(), &SmoothName::from_family(f))
}

/// Bump name of a family, with its least integer support bound.
pub fn bump_of_family(f: Family) -> BumpName {
    BumpName::from_parts(f.support_bound(), &SmoothName::from_family(f))
}

/// `𝒟 → 𝒮`: constant decay witness `q(0)`.
pub fn include_d_to_s(f: &BumpName) -> SchwartzName {
    let q = f.0.clone();
    SchwartzName(Name::from_fn(move |k| if k % 2 == 0 { q.query(0) } else { q.query(k / 2 + 1) }))
}

/// `𝒮 → ℰ`: drops the decay witnesses.
pub fn include_s_to_e(f: &SchwartzName) -> SmoothName {
    f.smooth()
}

/// Whether `b` is a certified decay witness at level `n`:
/// `sup_{|x| >= b} |x^d F^(m)(x)| <= 2^-n` for all `d, m <= n`.
pub fn decay_certified(f: &Family, b: u64, n: u64) -> bool {
    let Some((lo, hi)) = f.support_hull() else {
        return true;
    };
    let bq = BigRational::from_integer(b.into());
    let tol = Dyadic::pow2(-(n as i64));
    (0..=n).all(|d| {
        (0..=n).all(|m| sup_at_most(f, d, m, &bq, &hi, &tol) && sup_at_most(f, d, m, &lo, &-bq.clone(), &tol))
    })
}

/// Least integer certified by [`decay_certified`] (a monotone predicate in `b`);
/// the support bound always is.
pub fn least_certified_decay(f: &Family, n: u64) -> u64 {
    let (mut lo, mut hi) = (0, f.support_bound());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decay_certified(f, mid, n) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

/// Rational sample points `±(b + j·w/count)` with `w = max(S - b, 0) + 1`, `S` the
/// support bound.
fn samples_beyond(f: &Family, b: u64, count: u64) -> Vec<BigRational> {
    let w = f.support_bound().saturating_sub(b) + 1;
    let half = count.div_ceil(2);
    (0..count)
        .map(|j| {
            let x = BigRational::from_integer(b.into()) + BigRational::new(((j % half) * w).into(), half.into());
            if j < half { x } else { -x }
        })
        .collect()
}

/// Checks the Schwartz decay predicate of a name against the family it claims to
/// describe, for all `d, m, k <= n` at `count` points beyond each witness.
pub fn check_decay_at_samples(name: &SchwartzName, f: &Family, n_max: u64, count: u64) -> Result<(), String> {
    for n in 0..=n_max {
        let b = name.decay(n);
        for x in samples_beyond(f, b, count) {
            for m in 0..=n {
                let v = f.derivative_at(m, &x, 64);
                for d in 0..=n {
                    let xd = Interval::from_rational(&x, 80).powi(d as u32);
                    let y = (&xd * &v).mag();
                    if y > Dyadic::pow2(-(n as i64)) {
                        return Err(format!("level {n}: |x^{d} f^({m})| = {} at x = {x} beyond {b}", y.to_f64()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks slices of a smooth name against `F` at `count` points of `[-N, N]`:
/// the `n`-th approximant must lie within `2^-n` of the true derivative.
pub fn check_slices_at_samples(name: &SmoothName, f: &Family, n_bound: u64, m: u64, n: u64, count: u64) -> Result<(), String> {
    let nb = n_bound.max(1);
    let p = RationalPoly2::at(&name.0.query(triple(n_bound, m, n)));
    for j in 0..count {
        let x = BigRational::new((nb as i64 * (2 * j as i64 - count as i64 + 1)).into(), ((count as i64 - 1).max(1)).into());
        let got = p.eval_cheb(&Interval::from_rational(&x, n + 40), nb, n + 40).re;
        let want = f.derivative_at(m, &x, n + 40);
        let diff = (&got - &want).mig();
        if diff > Dyadic::pow2(-(n as i64)) {
            return Err(format!("slice ({n_bound}, {m}, {n}) is off by {} at {x}", diff.to_f64()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn contains_f64(v: &IntervalC, x: f64, slack: f64) -> bool {
        let (lo, hi) = v.re.to_f64();
        lo - slack <= x && x <= hi + slack
    }

    #[test]
    fn evaluates_bump_values() {
        let f = bump(q(0, 1)).smooth();
        let at = |x: BigRational, m| eval_smooth_derivative(&f, m, &MetricName::real_rational(&x), 8);
        assert!(at(q(0, 1), 0).re.contains(&Dyadic::one()));
        let v = at(q(1, 2), 0);
        assert!(contains_f64(&v, (-1.0f64 / 3.0).exp(), 1e-12));
        assert!(v.width() <= Dyadic::pow2(-8));
        assert!(at(q(0, 1), 1).re.contains(&Dyadic::zero()));
        assert!(at(q(1, 1), 0).re.contains(&Dyadic::zero()));
    }

    #[test]
    fn shifted_bump_has_its_center_at_the_shift() {
        let b = bump(q(2, 1));
        assert_eq!(b.support_bound(), 3);
        let v = eval_smooth_derivative(&b.smooth(), 0, &MetricName::real_rational(&q(2, 1)), 6);
        assert!(v.re.contains(&Dyadic::one()));
        assert_eq!(bump(q(-5, 2)).support_bound(), 4);
    }

    #[test]
    fn inclusion_into_schwartz_keeps_smooth_part() {
        let b = bump(q(0, 1));
        let s = include_d_to_s(&b);
        for n in 0..5 {
            assert_eq!(s.decay(n), 1);
        }
        check_decay_at_samples(&s, &Family::bump_int(0), 2, 50).unwrap();
        let e = include_s_to_e(&s);
        for k in [0u64, 1, 5, 9, 14] {
            assert_eq!(e.0.query(k), b.smooth().0.query(k));
        }
    }

    #[test]
    fn slices_match_the_family() {
        let f = Family::bump_int(1).add(&Family::bump(q(-1, 2)).scale(&q(-3, 1)));
        let s = SmoothName::from_family(f.clone());
        check_slices_at_samples(&s, &f, 2, 0, 8, 21).unwrap();
        check_slices_at_samples(&s, &f, 1, 1, 6, 21).unwrap();
        check_slices_at_samples(&s, &f, 0, 0, 6, 5).unwrap();
    }

    #[test]
    fn wrong_decay_witness_is_detected() {
        let f = Family::bump_int(3);
        let bad = SchwartzName::from_parts(Name::constant(1u32), &SmoothName::from_family(f.clone()));
        assert!(check_decay_at_samples(&bad, &f, 1, 50).is_err());
    }

    #[test]
    fn least_decay_witness() {
        let f = Family::bump_int(0);
        assert_eq!(least_certified_decay(&f, 0), 0);
        assert_eq!(least_certified_decay(&f, 1), 1);
        assert!(decay_certified(&f, 1, 3));
        assert!(!decay_certified(&f, 0, 1));
        // the tail of a small bump already satisfies level 0
        let g = Family::bump_int(5).scale(&q(1, 4));
        assert_eq!(least_certified_decay(&g, 0), 0);
        assert!(least_certified_decay(&Family::bump_int(5), 2) >= 5);
    }
}
