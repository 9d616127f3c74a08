//! Rigorous enclosures of `exp` and of rational powers of two.

use num_bigint::BigInt;
use num_traits::One;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;

/// Below this argument `exp` is reported as `[0, 2^-(2^20)]`.
const EXP_FLOOR_LOG2: i64 = 20;

/// Enclosure of `exp` over an interval, with relative accuracy about `2^-prec`.
pub fn exp(x: &Interval, prec: u64) -> Interval {
    let lo = exp_point(x.lo(), prec).lo().clone();
    let hi = exp_point(x.hi(), prec).hi().clone();
    let mut lo = Dyadic::max(&lo, &Dyadic::zero());
    let mut hi = hi;
    // exp is at most 1 on nonpositive arguments and at least 1 on nonnegative ones
    if x.hi().signum() <= 0 && hi > Dyadic::one() {
        hi = Dyadic::one();
    }
    if x.lo().signum() >= 0 && lo < Dyadic::one() {
        lo = Dyadic::one();
    }
    Interval::new(lo, hi)
}

/// Enclosure of `exp(d)` for a single dyadic.
pub fn exp_point(d: &Dyadic, prec: u64) -> Interval {
    if d.is_zero() {
        return Interval::one();
    }
    if d.is_negative() && d.msb() >= EXP_FLOOR_LOG2 {
        return Interval::new(Dyadic::zero(), Dyadic::pow2(-(1i64 << EXP_FLOOR_LOG2)));
    }
    assert!(d.msb() < EXP_FLOOR_LOG2, "exp argument too large: {d}");
    let s = (d.msb() + 9).max(0);
    let w = prec + s as u64 + 24;
    let y = Interval::point(d.mul_pow2(-s));
    // |y| < 2^-8, so the Taylor tail after term K is below 2 |y|^K / K!
    let mut sum = Interval::one();
    let mut term = Interval::one();
    let eps = Dyadic::pow2(-(w as i64) - 4);
    let mut k: u64 = 1;
    loop {
        term = (&term * &y).div(&Interval::from_int(k), w);
        sum = (&sum + &term).round(w);
        if term.mag() < eps {
            break;
        }
        k += 1;
    }
    let tail = term.mag().mul_pow2(1);
    let mut r = &sum + &Interval::ball0(tail);
    for _ in 0..s {
        r = r.sqr().round(w);
    }
    r.round(prec + 8)
}

/// Enclosure of `2^(a/b)` of width about `2^(a/b - prec)`.
pub fn pow2_frac(a: i64, b: u64, prec: u64) -> Interval {
    assert!(b > 0);
    let q = a.div_euclid(b as i64);
    let r = a.rem_euclid(b as i64) as u64;
    if r == 0 {
        return Interval::point(Dyadic::pow2(q));
    }
    let k = prec + 2;
    let x: BigInt = BigInt::one() << (r + b * k);
    let root = x.nth_root(b as u32);
    let exact = root.pow(b as u32) == x;
    let lo = Dyadic::new(root.clone(), q - k as i64);
    let hi = if exact { lo.clone() } else { Dyadic::new(root + 1, q - k as i64) };
    Interval::new(lo, hi)
}

/// `e = exp(1)`.
pub fn e_const(prec: u64) -> Interval {
    exp_point(&Dyadic::one(), prec)
}

/// Upper bound on `x` rounded upward to `prec` bits; convenience for sums of bounds.
pub fn up(x: &Dyadic, prec: u64) -> Dyadic {
    x.round(prec, Round::Up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_one_matches_float() {
        let e = e_const(80);
        let (lo, hi) = e.to_f64();
        assert!(lo <= std::f64::consts::E && std::f64::consts::E <= hi);
        assert!(e.width().msb() < -70);
    }

    #[test]
    fn exp_negative_argument() {
        let x = Interval::point(Dyadic::from_f64(-3.25));
        let v = exp(&x, 60);
        let want = (-3.25f64).exp();
        let (lo, hi) = v.to_f64();
        assert!(lo <= want * (1.0 + 1e-15) && want * (1.0 - 1e-15) <= hi);
    }

    #[test]
    fn exp_huge_negative_is_clamped() {
        let x = Interval::point(-Dyadic::pow2(21));
        let v = exp(&x, 30);
        assert!(v.lo().is_zero());
        assert!(v.hi().msb() < -1_000_000);
    }

    #[test]
    fn exp_of_zero_interval_has_upper_bound_one() {
        let x = Interval::new(Dyadic::from_f64(-0.5), Dyadic::zero());
        assert_eq!(exp(&x, 40).hi(), &Dyadic::one());
    }

    #[test]
    fn fractional_power_of_two() {
        let v = pow2_frac(1, 2, 50);
        let (lo, hi) = v.to_f64();
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
        let v = pow2_frac(-3, 4, 50);
        let want = 2f64.powf(-0.75);
        let (lo, hi) = v.to_f64();
        assert!(lo <= want + 1e-15 && want - 1e-15 <= hi);
        assert_eq!(pow2_frac(6, 3, 10), Interval::point(Dyadic::pow2(2)));
    }
}
