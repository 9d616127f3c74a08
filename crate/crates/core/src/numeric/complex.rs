//! Axis-aligned complex rectangles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalC {
    pub re: Interval,
    pub im: Interval,
}

impl IntervalC {
    pub fn new(re: Interval, im: Interval) -> Self {
        IntervalC { re, im }
    }

    pub fn real(re: Interval) -> Self {
        IntervalC { re, im: Interval::zero() }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        IntervalC { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn zero() -> Self {
        IntervalC::default()
    }

    pub fn one() -> Self {
        IntervalC::real(Interval::one())
    }

    /// Square `center ± r` in both coordinates.
    pub fn around(re: Dyadic, im: Dyadic, r: Dyadic) -> Self {
        IntervalC { re: Interval::around(re, r.clone()), im: Interval::around(im, r) }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u64) -> Self {
        IntervalC { re: Interval::from_rational(re, prec), im: Interval::from_rational(im, prec) }
    }

    pub fn conj(&self) -> Self {
        IntervalC { re: self.re.clone(), im: -&self.im }
    }

    pub fn round(&self, prec: u64) -> Self {
        IntervalC { re: self.re.round(prec), im: self.im.round(prec) }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        IntervalC { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn scale(&self, s: &Interval) -> Self {
        IntervalC { re: &self.re * s, im: &self.im * s }
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }

    pub fn mid(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    /// Upper bound on `|z|` over the rectangle.
    pub fn mag(&self, prec: u64) -> Dyadic {
        let (a, b) = (self.re.mag(), self.im.mag());
        (&(&a * &a) + &(&b * &b)).sqrt(prec, Round::Up)
    }

    /// Lower bound on `|z|` over the rectangle.
    pub fn mig(&self, prec: u64) -> Dyadic {
        let (a, b) = (self.re.mig(), self.im.mig());
        (&(&a * &a) + &(&b * &b)).sqrt(prec, Round::Down)
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn contains(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn contains_rational(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_box(&self, other: &IntervalC) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn intersects(&self, other: &IntervalC) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn hull(&self, other: &IntervalC) -> IntervalC {
        IntervalC { re: self.re.hull(&other.re), im: self.im.hull(&other.im) }
    }

    /// Reciprocal; the rectangle must exclude zero.
    pub fn recip(&self, prec: u64) -> Self {
        let d = self.norm_sqr().round(prec);
        let inv = d.recip(prec);
        IntervalC { re: (&self.re * &inv).round(prec), im: (-&(&self.im * &inv)).round(prec) }
    }

    pub fn div(&self, other: &IntervalC, prec: u64) -> Self {
        (self * &other.recip(prec)).round(prec)
    }

    pub fn powi_r(&self, k: u64, prec: u64) -> Self {
        let mut result = IntervalC::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).round(prec);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).round(prec);
            }
        }
        result
    }

    pub fn to_f64(&self) -> ((f64, f64), (f64, f64)) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &IntervalC {
    type Output = IntervalC;
    fn add(self, rhs: &IntervalC) -> IntervalC {
        IntervalC { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &IntervalC {
    type Output = IntervalC;
    fn sub(self, rhs: &IntervalC) -> IntervalC {
        IntervalC { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &IntervalC {
    type Output = IntervalC;
    fn mul(self, rhs: &IntervalC) -> IntervalC {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        IntervalC { re, im }
    }
}

impl Neg for &IntervalC {
    type Output = IntervalC;
    fn neg(self) -> IntervalC {
        IntervalC { re: -&self.re, im: -&self.im }
    }
}

impl Add for IntervalC {
    type Output = IntervalC;
    fn add(self, rhs: IntervalC) -> IntervalC {
        &self + &rhs
    }
}

impl Sub for IntervalC {
    type Output = IntervalC;
    fn sub(self, rhs: IntervalC) -> IntervalC {
        &self - &rhs
    }
}

impl Mul for IntervalC {
    type Output = IntervalC;
    fn mul(self, rhs: IntervalC) -> IntervalC {
        &self * &rhs
    }
}

impl fmt::Display for IntervalC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}
