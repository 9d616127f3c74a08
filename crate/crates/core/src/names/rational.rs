//! Bijective enumerations of ℚ and ℚ(i).
//!
//! A rational is coded through its canonical continued fraction `[a0; a1, ..., ak]`
//! (`ai >= 1` for `i >= 1`, `ak >= 2` when `k >= 1`) as
//! `⟨k, tuple(zz(a0), a1 - 1, ..., a(k-1) - 1, ak - 2)⟩`. Every natural number decodes
//! to exactly one canonical fraction.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::pairing::{pair_big, tuple_decode, tuple_encode, unpair_big, unzigzag, zigzag};
use crate::numeric::{IntervalC, Interval};

pub fn rational_index(q: &BigRational) -> BigUint {
    let cf = continued_fraction(q);
    let k = cf.len() - 1;
    let mut entries = Vec::with_capacity(cf.len());
    entries.push(zigzag(&cf[0]));
    for (i, a) in cf.iter().enumerate().skip(1) {
        let off = if i == k { 2u32 } else { 1u32 };
        entries.push((a - BigInt::from(off)).to_biguint().expect("non-canonical continued fraction"));
    }
    pair_big(&BigUint::from(k), &tuple_encode(&entries))
}

pub fn rational_at(n: &BigUint) -> BigRational {
    let (k, body) = unpair_big(n);
    let k = k.to_usize().expect("continued fraction length out of range");
    let entries = tuple_decode(&body, k + 1);
    let mut terms: Vec<BigInt> = Vec::with_capacity(k + 1);
    terms.push(unzigzag(&entries[0]));
    for (i, e) in entries.iter().enumerate().skip(1) {
        let off = if i == k { 2u32 } else { 1u32 };
        terms.push(BigInt::from(e.clone()) + off);
    }
    // evaluate from the back: h/g
    let mut num = terms[k].clone();
    let mut den = BigInt::one();
    for a in terms[..k].iter().rev() {
        let next = a * &num + &den;
        den = num;
        num = next;
    }
    BigRational::new(num, den)
}

fn continued_fraction(q: &BigRational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let (mut p, mut d) = (q.numer().clone(), q.denom().clone());
    loop {
        let (a, r) = p.div_mod_floor(&d);
        out.push(a);
        if r.is_zero() {
            break;
        }
        p = d;
        d = r;
    }
    out
}

/// A Gaussian rational in canonical form (`BigRational` keeps fractions reduced with
/// positive denominators).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RationalComplex { re, im }
    }

    pub fn from_ints(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        RationalComplex {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn real(re: BigRational) -> Self {
        RationalComplex { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn i() -> Self {
        RationalComplex { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn at(n: &BigUint) -> Self {
        let (a, b) = unpair_big(n);
        RationalComplex { re: rational_at(&a), im: rational_at(&b) }
    }

    pub fn index(&self) -> BigUint {
        pair_big(&rational_index(&self.re), &rational_index(&self.im))
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RationalComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RationalComplex { re: &self.re * s, im: &self.im * s }
    }

    pub fn conj(&self) -> Self {
        RationalComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|re| + |im|`, an upper bound on the modulus.
    pub fn l1(&self) -> BigRational {
        self.re.abs() + self.im.abs()
    }

    pub fn enclose(&self, prec: u64) -> IntervalC {
        IntervalC::new(Interval::from_rational(&self.re, prec), Interval::from_rational(&self.im, prec))
    }

    /// Numerator/denominator quadruple `[re_num, re_den, im_num, im_den]`.
    pub fn parts(&self) -> [BigInt; 4] {
        [self.re.numer().clone(), self.re.denom().clone(), self.im.numer().clone(), self.im.denom().clone()]
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// `enum_rational_complex`.
pub fn enum_rational_complex(n: u64) -> RationalComplex {
    RationalComplex::at(&BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn zero_is_index_zero() {
        assert!(enum_rational_complex(0).is_zero());
        assert_eq!(RationalComplex::zero().index(), BigUint::zero());
    }

    #[test]
    fn index_42_roundtrips() {
        assert_eq!(enum_rational_complex(42).index(), BigUint::from(42u32));
    }

    #[test]
    fn rationals_prefix_is_injective() {
        let mut seen = HashSet::new();
        for n in 0u32..20_000 {
            let r = rational_at(&BigUint::from(n));
            assert_eq!(rational_index(&r), BigUint::from(n));
            assert!(seen.insert(r));
        }
    }

    #[test]
    fn small_rationals_are_reached() {
        // every p/q with |p| <= 20, 1 <= q <= 20 roundtrips
        for a in -20..=20 {
            for b in 1..=20 {
                let r = q(a, b);
                assert_eq!(rational_at(&rational_index(&r)), r);
            }
        }
    }

    proptest! {
        #[test]
        fn complex_roundtrip(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
            let z = RationalComplex::new(q(a, b), q(c, d));
            prop_assert_eq!(RationalComplex::at(&z.index()), z);
        }
    }
}
