//! Power series given by coefficient approximations plus a rigorous tail bound, and
//! their conversion to polynomial approximants on the unit disk.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::names::{RationalComplex, RationalPoly2};
use crate::numeric::{Dyadic, IntervalC, Round};

/// Coefficients `a_k` of a power series with a tail bound valid on the closed disk.
pub trait SeriesSource: Send + Sync {
    /// A Gaussian rational within `2^-prec` of `a_k`.
    fn coeff(&self, k: u64, prec: u64) -> RationalComplex;
    /// Upper bound on `Σ_{k >= k0} |a_k|`.
    fn tail(&self, k0: u64) -> Dyadic;
}

pub type Series = Arc<dyn SeriesSource>;

/// `ceil(log2(n))` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Smallest `K` with `tail(K) <= bound`, assuming the tail is nonincreasing.
pub fn truncation_index(src: &dyn SeriesSource, bound: &Dyadic) -> u64 {
    if src.tail(0) <= *bound {
        return 0;
    }
    let mut hi = 1u64;
    while src.tail(hi) > *bound {
        hi = hi.checked_mul(2).expect("series tail does not decay");
        assert!(hi < 1 << 40, "series tail does not decay");
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if src.tail(mid) <= *bound {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Round both parts down to multiples of `2^exp`.
pub fn round_to_grid(z: &RationalComplex, exp: i64) -> RationalComplex {
    RationalComplex::new(
        Dyadic::from_rational_at(&z.re, exp, Round::Down).to_rational(),
        Dyadic::from_rational_at(&z.im, exp, Round::Down).to_rational(),
    )
}

/// Midpoint of an enclosure as a Gaussian rational.
pub fn midpoint(v: &IntervalC) -> RationalComplex {
    let (re, im) = v.mid();
    RationalComplex::new(re.to_rational(), im.to_rational())
}

/// Polynomial within `2^-m` of the series in sup norm on the closed unit disk.
pub fn approximant(src: &dyn SeriesSource, m: u64) -> RationalPoly2 {
    let k_max = truncation_index(src, &Dyadic::pow2(-(m as i64) - 1));
    if k_max == 0 {
        return RationalPoly2::zero();
    }
    // k_max coefficients, each within 2^-(j+1) after rounding: total below 2^-(m+1)
    let j = m + 2 + ceil_log2(k_max);
    let coeffs: Vec<RationalComplex> =
        (0..k_max).map(|k| round_to_grid(&src.coeff(k, j + 1), -(j as i64) - 3)).collect();
    RationalPoly2::from_z_coeffs(&coeffs)
}

/// Series with exactly known rational coefficients.
pub struct ExactSeries<F, T> {
    coeff: F,
    tail: T,
}

impl<F, T> ExactSeries<F, T>
where
    F: Fn(u64) -> RationalComplex + Send + Sync,
    T: Fn(u64) -> Dyadic + Send + Sync,
{
    pub fn new(coeff: F, tail: T) -> Self {
        ExactSeries { coeff, tail }
    }
}

impl<F, T> SeriesSource for ExactSeries<F, T>
where
    F: Fn(u64) -> RationalComplex + Send + Sync,
    T: Fn(u64) -> Dyadic + Send + Sync,
{
    fn coeff(&self, k: u64, _prec: u64) -> RationalComplex {
        (self.coeff)(k)
    }
    fn tail(&self, k0: u64) -> Dyadic {
        (self.tail)(k0)
    }
}

/// Finitely supported series `Σ_{k < len} c_k z^k`.
pub fn finite_series(coeffs: Vec<RationalComplex>) -> Series {
    let suffix: Vec<BigRational> = {
        let mut acc = BigRational::zero();
        let mut out = vec![BigRational::zero(); coeffs.len() + 1];
        for k in (0..coeffs.len()).rev() {
            acc += coeffs[k].l1();
            out[k] = acc.clone();
        }
        out
    };
    let c2 = coeffs.clone();
    Arc::new(ExactSeries::new(
        move |k| c2.get(k as usize).cloned().unwrap_or_default(),
        move |k0| {
            let s = suffix.get(k0 as usize).cloned().unwrap_or_default();
            Dyadic::from_rational(&s, 64, Round::Up)
        },
    ))
}

/// `c_k = first · ratio^k` with `|ratio| < 1`.
pub fn geometric_series(first: RationalComplex, ratio: BigRational) -> Series {
    assert!(ratio.abs() < BigRational::one(), "geometric ratio must be below 1");
    let r = ratio.abs();
    let scale = first.l1() / (BigRational::one() - &r);
    let ratio2 = ratio.clone();
    Arc::new(ExactSeries::new(
        move |k| first.scale(&pow_q(&ratio2, k)),
        move |k0| Dyadic::from_rational(&(&scale * pow_q(&r, k0)), 64, Round::Up),
    ))
}

/// Finite list followed by a geometric continuation `c_k = c_{L-1} ratio^{k-L+1}`.
pub fn list_then_geometric(coeffs: Vec<RationalComplex>, ratio: BigRational) -> Series {
    assert!(!coeffs.is_empty());
    assert!(ratio.abs() < BigRational::one(), "geometric ratio must be below 1");
    let len = coeffs.len() as u64;
    let last = coeffs[coeffs.len() - 1].clone();
    let r = ratio.abs();
    let head_l1: Vec<BigRational> = coeffs.iter().map(RationalComplex::l1).collect();
    let last_l1 = last.l1();
    let geo_tail = {
        let r = r.clone();
        move |k: u64| {
            // Σ_{j >= k} |last| r^(j-L+1) for k >= L
            &last_l1 * pow_q(&r, k - len + 1) / (BigRational::one() - &r)
        }
    };
    let c2 = coeffs.clone();
    Arc::new(ExactSeries::new(
        move |k| {
            if k < len {
                c2[k as usize].clone()
            } else {
                last.scale(&pow_q(&ratio, k - len + 1))
            }
        },
        move |k0| {
            let mut s = BigRational::zero();
            for (k, c) in head_l1.iter().enumerate() {
                if k as u64 >= k0 {
                    s += c;
                }
            }
            s += geo_tail(k0.max(len));
            Dyadic::from_rational(&s, 64, Round::Up)
        },
    ))
}

pub fn pow_q(r: &BigRational, k: u64) -> BigRational {
    let mut out = BigRational::one();
    let mut base = r.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            out *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    out
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceiling() {
        assert_eq!([1, 2, 3, 4, 5, 1024, 1025].map(ceil_log2), [0, 1, 2, 2, 3, 10, 11]);
    }

    #[test]
    fn geometric_truncation_is_tight() {
        let s = geometric_series(RationalComplex::one(), rational(1, 3));
        // tail(K) = 3^-K * 3/2 <= 2^-21 first at K = 14
        assert_eq!(truncation_index(s.as_ref(), &Dyadic::pow2(-21)), 14);
    }

    #[test]
    fn approximant_of_geometric_series_at_one() {
        let s = geometric_series(RationalComplex::one(), rational(1, 3));
        let p = approximant(s.as_ref(), 20);
        let v = p.eval_disk(&IntervalC::one(), 80);
        let three_halves = rational(3, 2);
        let d = v.re.mid().to_rational() - three_halves;
        assert!(d.abs() < rational(1, 1 << 20));
        assert!(v.im.contains_zero());
    }

    #[test]
    fn list_then_geometric_tail_covers_list() {
        let s = list_then_geometric(vec![RationalComplex::one(), RationalComplex::from_ints(1, 2, 0, 1)], rational(1, 2));
        // 1 + 1/2 + 1/4 + ... = 2
        assert_eq!(s.tail(0).to_f64(), 2.0);
        assert_eq!(s.coeff(3, 0), RationalComplex::from_ints(1, 8, 0, 1));
    }
}
