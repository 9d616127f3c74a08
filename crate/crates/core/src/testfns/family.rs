//! Finite weighted sums `Σ w_i f(x - λ_i)` of shifted bumps.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::analytic::series::ceil_log2;
use super::bumppoly::{bump_derivative, bump_derivative_at, bump_derivative_f64};
use crate::error::{Error, Result};
use crate::numeric::Interval;

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub weight: BigRational,
    pub shift: BigRational,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Family {
    pub terms: Vec<Term>,
}

impl Family {
    pub fn zero() -> Family {
        Family::default()
    }

    /// `f_λ(x) = f(x - λ)`.
    pub fn bump(shift: BigRational) -> Family {
        Family { terms: vec![Term { weight: BigRational::one(), shift }] }
    }

    pub fn bump_int(shift: i64) -> Family {
        Family::bump(BigRational::from_integer(shift.into()))
    }

    /// Adds `weight · f_shift`, merging with an existing term of the same shift.
    pub fn push(&mut self, weight: BigRational, shift: BigRational) {
        if let Some(i) = self.terms.iter().position(|t| t.shift == shift) {
            let w = &self.terms[i].weight + &weight;
            if w.is_zero() {
                self.terms.remove(i);
            } else {
                self.terms[i].weight = w;
            }
        } else if !weight.is_zero() {
            self.terms.push(Term { weight, shift });
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &BigRational) -> Family {
        let mut out = Family::zero();
        for t in &self.terms {
            out.push(&t.weight * s, t.shift.clone());
        }
        out
    }

    pub fn add(&self, other: &Family) -> Family {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.weight.clone(), t.shift.clone());
        }
        out
    }

    pub fn sub(&self, other: &Family) -> Family {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Terms whose support `[λ-1, λ+1]` meets `[lo, hi]`.
    pub fn restrict(&self, lo: &BigRational, hi: &BigRational) -> Family {
        let one = BigRational::one();
        Family { terms: self.terms.iter().filter(|t| &(&t.shift + &one) > lo && &(&t.shift - &one) < hi).cloned().collect() }
    }

    /// `Σ |w_i|`.
    pub fn weight_l1(&self) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, t| acc + t.weight.abs())
    }

    /// Smallest integer `K` with support inside `[-K, K]`.
    pub fn support_bound(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| (t.shift.abs() + BigRational::one()).ceil().to_integer().to_u64().unwrap_or(u64::MAX))
            .max()
            .unwrap_or(0)
    }

    /// Hull `[min λ - 1, max λ + 1]` of the supports.
    pub fn support_hull(&self) -> Option<(BigRational, BigRational)> {
        let one = BigRational::one();
        let lo = self.terms.iter().map(|t| &t.shift - &one).min()?;
        let hi = self.terms.iter().map(|t| &t.shift + &one).max()?;
        Some((lo, hi))
    }

    /// Enclosure of `F^(m)` over an interval.
    pub fn derivative(&self, m: u64, x: &Interval, prec: u64) -> Interval {
        let w = prec + 8;
        let mut acc = Interval::zero();
        for t in &self.terms {
            let y = (x - &Interval::from_rational(&t.shift, w + 16)).round(w + 16);
            let v = bump_derivative(m, &y, w);
            if v.is_zero() {
                continue;
            }
            acc = (&acc + &(&v * &Interval::from_rational(&t.weight, w + 16))).round(w);
        }
        acc.round(prec)
    }

    /// Enclosure of `F^(m)(x)` at a rational point.
    pub fn derivative_at(&self, m: u64, x: &BigRational, prec: u64) -> Interval {
        let w = prec + 8 + ceil_log2(self.terms.len() as u64);
        let mut acc = Interval::zero();
        for t in &self.terms {
            let y = x - &t.shift;
            if y.abs() >= BigRational::one() {
                continue;
            }
            let v = bump_derivative_at(m, &y, w);
            acc = (&acc + &(&v * &Interval::from_rational(&t.weight, w + 16))).round(w);
        }
        acc.round(prec)
    }

    pub fn derivative_f64(&self, m: u64, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let y = x - t.shift.to_f64().unwrap_or(f64::NAN);
                if y.abs() >= 1.0 {
                    0.0
                } else {
                    t.weight.to_f64().unwrap_or(f64::NAN) * bump_derivative_f64(m, y)
                }
            })
            .sum()
    }
}

/// JSON descriptor `{kind: "bump" | "sum", shifts: [...], weights: [...]}` with
/// rationals written as `"p/q"` or integers.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FamilyDescriptor {
    pub kind: String,
    pub shifts: Vec<String>,
    #[serde(default)]
    pub weights: Vec<String>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r = if s.contains('/') {
        BigRational::from_str(s).map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}")))?
    } else {
        BigRational::from_integer(BigInt::from_str(s).map_err(|e| Error::Invalid(format!("bad integer {s:?}: {e}")))?)
    };
    if r.denom().is_zero() {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    Ok(r)
}

impl FamilyDescriptor {
    pub fn to_family(&self) -> Result<Family> {
        let shifts = self.shifts.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        match self.kind.as_str() {
            "bump" => {
                if shifts.len() != 1 || !self.weights.is_empty() {
                    return Err(Error::Invalid("a bump takes one shift and no weights".into()));
                }
                Ok(Family::bump(shifts[0].clone()))
            }
            "sum" => {
                if self.weights.len() != shifts.len() {
                    return Err(Error::Invalid(format!("{} shifts but {} weights", shifts.len(), self.weights.len())));
                }
                let mut f = Family::zero();
                for (w, s) in self.weights.iter().zip(shifts) {
                    f.push(parse_rational(w)?, s);
                }
                Ok(f)
            }
            other => Err(Error::Invalid(format!("unknown family kind {other:?}"))),
        }
    }
}
