//! Closed real intervals with dyadic endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::dyadic::{Dyadic, Round};

/// `[lo, hi]` with `lo <= hi`. Arithmetic operators are exact; use [`Interval::round`]
/// to bound mantissa growth with outward rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval {lo} > {hi}");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Interval::point(Dyadic::one())
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Interval::point(Dyadic::from_int(v))
    }

    /// Symmetric interval `[-r, r]`.
    pub fn ball0(r: Dyadic) -> Self {
        let r = r.abs();
        Interval { lo: -&r, hi: r }
    }

    pub fn around(center: Dyadic, radius: Dyadic) -> Self {
        let r = radius.abs();
        Interval { lo: &center - &r, hi: &center + &r }
    }

    /// Outward enclosure of a rational.
    pub fn from_rational(r: &BigRational, prec: u64) -> Self {
        let lo = Dyadic::from_rational(r, prec, Round::Down);
        let hi = Dyadic::from_rational(r, prec, Round::Up);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).mul_pow2(-1)
    }

    /// Half-width.
    pub fn rad(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        self.lo.to_rational() <= *x && *x <= self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: Dyadic::min(&self.lo, &other.lo), hi: Dyadic::max(&self.hi, &other.hi) }
    }

    /// Outward rounding to `prec` significant bits per endpoint.
    pub fn round(&self, prec: u64) -> Interval {
        Interval { lo: self.lo.round(prec, Round::Down), hi: self.hi.round(prec, Round::Up) }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn abs(&self) -> Interval {
        if self.contains_zero() {
            Interval { lo: Dyadic::zero(), hi: self.mag() }
        } else if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval { lo: &a.lo * &a.lo, hi: &a.hi * &a.hi }
    }

    pub fn powi(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::one();
        }
        if k % 2 == 0 {
            let a = self.abs();
            return Interval { lo: pow_d(&a.lo, k), hi: pow_d(&a.hi, k) };
        }
        Interval { lo: pow_d(&self.lo, k), hi: pow_d(&self.hi, k) }
    }

    /// Power with outward rounding after every squaring.
    pub fn powi_r(&self, k: u64, prec: u64) -> Interval {
        let mut result = Interval::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).round(prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr().round(prec);
            }
        }
        result
    }

    /// Reciprocal; the interval must exclude zero.
    pub fn recip(&self, prec: u64) -> Interval {
        assert!(!self.contains_zero(), "reciprocal of interval containing zero");
        let lo = Dyadic::from_rational(&recip_q(&self.hi), prec, Round::Down);
        let hi = Dyadic::from_rational(&recip_q(&self.lo), prec, Round::Up);
        Interval { lo, hi }
    }

    pub fn div(&self, other: &Interval, prec: u64) -> Interval {
        (self * &other.recip(prec)).round(prec)
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self, prec: u64) -> Interval {
        assert!(self.hi.signum() >= 0, "sqrt of negative interval");
        let lo = if self.lo.signum() <= 0 { Dyadic::zero() } else { self.lo.sqrt(prec, Round::Down) };
        Interval { lo, hi: self.hi.sqrt(prec, Round::Up) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

fn recip_q(d: &Dyadic) -> BigRational {
    let r = d.to_rational();
    assert!(!r.is_zero());
    BigRational::new(r.denom().clone(), r.numer().clone())
}

fn pow_d(d: &Dyadic, k: u32) -> Dyadic {
    let mut r = Dyadic::one();
    for _ in 0..k {
        r = &r * d;
    }
    r
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval { lo: Dyadic::zero(), hi: Dyadic::zero() }
    }
}

impl From<Dyadic> for Interval {
    fn from(d: Dyadic) -> Self {
        Interval::point(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(Dyadic::from_f64(a), Dyadic::from_f64(b))
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = iv(-1.0, 2.0);
        let b = iv(-3.0, 0.5);
        let p = &a * &b;
        assert_eq!(p.to_f64(), (-6.0, 3.0));
    }

    #[test]
    fn reciprocal_encloses() {
        let a = iv(3.0, 3.0);
        let r = a.recip(40);
        let third = BigRational::new(1.into(), 3.into());
        assert!(r.contains_rational(&third));
        assert!(r.width().msb() < -38);
    }

    #[test]
    fn even_power_of_straddling_interval() {
        let a = iv(-2.0, 1.0);
        assert_eq!(a.powi(2).to_f64(), (0.0, 4.0));
        assert_eq!(a.powi(3).to_f64(), (-8.0, 1.0));
    }
}
