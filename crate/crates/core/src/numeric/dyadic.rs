//! Dyadic rationals `m * 2^e` with explicit directed rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact dyadic number `mant * 2^exp`, kept normalized (odd mantissa, or zero with exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

fn shr_round(m: &BigInt, k: u64, dir: Round) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let d = BigInt::one() << k;
    match dir {
        Round::Down => m.div_floor(&d),
        Round::Up => -((-m).div_floor(&d)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit: `2^msb <= |x| < 2^(msb+1)`. Zero maps to `i64::MIN`.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64 - 1
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u64, dir: Round) -> Self {
        let prec = prec.max(2);
        let b = self.mant.bits();
        if b <= prec {
            return self.clone();
        }
        let k = b - prec;
        Dyadic::new(shr_round(&self.mant, k, dir), self.exp + k as i64)
    }

    /// Round to a multiple of `2^exp`.
    pub fn round_to_exp(&self, exp: i64, dir: Round) -> Self {
        if self.exp >= exp {
            return self.clone();
        }
        let k = (exp - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, k, dir), exp)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(r: &BigRational, prec: u64, dir: Round) -> Self {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        // |r| is roughly 2^(nb-db); scale so the quotient has about prec bits.
        let s = prec as i64 + 2 - (nb - db);
        let (num, den) = if s >= 0 {
            (r.numer() << s as u64, r.denom().clone())
        } else {
            (r.numer().clone(), r.denom() << (-s) as u64)
        };
        let q = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Dyadic::new(q, -s)
    }

    /// Directed rounding of a rational to a multiple of `2^exp`.
    pub fn from_rational_at(r: &BigRational, exp: i64, dir: Round) -> Self {
        let (num, den) = if exp <= 0 {
            (r.numer() << (-exp) as u64, r.denom().clone())
        } else {
            (r.numer().clone(), r.denom() << exp as u64)
        };
        let q = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => -((-num).div_floor(&den)),
        };
        Dyadic::new(q, exp)
    }

    /// Exact conversion of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits();
        let (m, e) = if b > 60 {
            let k = b - 60;
            (&self.mant >> k, self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mut v = m.to_f64().unwrap_or(0.0);
        let mut e = e.clamp(-1300, 1300);
        while e != 0 {
            let step = e.clamp(-500, 500);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        v
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }

    /// Directed square root of a nonnegative dyadic with `prec` bits.
    pub fn sqrt(&self, prec: u64, dir: Round) -> Self {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // result = r * 2^t with r = isqrt(mant * 2^(exp - 2t)) carrying about prec bits
        let b = self.mant.bits() as i64;
        let t = (self.exp + b).div_euclid(2) - prec as i64 - 2;
        let shift = self.exp - 2 * t;
        let scaled = if shift >= 0 {
            &self.mant << shift as u64
        } else {
            &self.mant >> (-shift) as u64
        };
        let exact = shift >= 0 || (&scaled << (-shift) as u64) == self.mant;
        let mut r = scaled.sqrt();
        if dir == Round::Up && !(exact && &r * &r == scaled) {
            r += 1;
        }
        Dyadic::new(r, t)
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b { a.clone() } else { b.clone() }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b { a.clone() } else { b.clone() }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &rhs.mant, exp: self.exp + rhs.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mant: -self.mant, exp: self.exp }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(d.mant(), &BigInt::from(3));
        assert_eq!(d.exp(), 2);
    }

    #[test]
    fn directed_rounding_brackets_rationals() {
        for (n, dd) in [(1, 3), (-2, 7), (22, 7), (-1, 10)] {
            let r = q(n, dd);
            let lo = Dyadic::from_rational(&r, 20, Round::Down);
            let hi = Dyadic::from_rational(&r, 20, Round::Up);
            assert!(lo.to_rational() <= r && r <= hi.to_rational());
            assert!((hi - lo).msb() <= r.numer().bits() as i64 - 18);
        }
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(40, Round::Down);
        let hi = two.sqrt(40, Round::Up);
        assert!(&lo * &lo <= two && two <= &hi * &hi);
        assert!((&hi - &lo).msb() <= -38);
        let four = Dyadic::from_int(4);
        assert_eq!(four.sqrt(10, Round::Up), Dyadic::from_int(2));
        let small = Dyadic::pow2(-41);
        let s = small.sqrt(30, Round::Up);
        assert!(&s * &s >= small);
    }

    #[test]
    fn f64_roundtrip() {
        for x in [0.5, -3.25, 1e-300, 123456.789] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }
}
