//! Polynomials in two real variables with Gaussian-rational coefficients.
//!
//! Stored in the basis `z^a z̄^b` (equivalently polynomials in `Re z`, `Im z`). The
//! encoding is sparse: `0` is the zero polynomial; otherwise `n - 1 = ⟨t, body⟩`
//! where `body` codes the `t + 1` nonzero terms in increasing monomial position
//! `⟨a, b⟩`, each term as `⟨gap, index(coefficient) - 1⟩`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::pairing::{pair, pair_big, tuple_decode, tuple_encode, unpair, unpair_big};
use super::rational::RationalComplex;
use crate::numeric::{Dyadic, Interval, IntervalC, Round};

type Sparse = BTreeMap<(u32, u32), RationalComplex>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPoly2 {
    terms: Sparse,
}

impl RationalPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalComplex) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn monomial(a: u32, b: u32, c: RationalComplex) -> Self {
        Self::from_terms([((a, b), c)])
    }

    /// Sum of the given terms; repeated monomials are added, zeros dropped.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), RationalComplex)>,
    {
        let mut map = Sparse::new();
        for (k, c) in terms {
            let e = map.entry(k).or_default();
            *e = e.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        RationalPoly2 { terms: map }
    }

    /// `Σ c_k z^k`.
    pub fn from_z_coeffs(coeffs: &[RationalComplex]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())))
    }

    /// Real polynomial `Σ c_k x^i y^j` given on the `(x, y)` monomial basis.
    pub fn from_xy<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), RationalComplex)>,
    {
        let half = BigRational::new(1.into(), 2.into());
        let x = Sparse::from([((1, 0), RationalComplex::real(half.clone())), ((0, 1), RationalComplex::real(half.clone()))]);
        let y = Sparse::from([
            ((1, 0), RationalComplex::new(BigRational::zero(), -half.clone())),
            ((0, 1), RationalComplex::new(BigRational::zero(), half)),
        ]);
        RationalPoly2 { terms: substitute(terms, &x, &y) }
    }

    /// Coefficients on the `(x, y)` monomial basis, `z = x + iy`.
    pub fn to_xy(&self) -> BTreeMap<(u32, u32), RationalComplex> {
        let z = Sparse::from([((1, 0), RationalComplex::one()), ((0, 1), RationalComplex::i())]);
        let zb = Sparse::from([((1, 0), RationalComplex::one()), ((0, 1), RationalComplex::i().conj())]);
        substitute(self.terms.clone(), &z, &zb)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RationalComplex)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> RationalComplex {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// `Σ |Re c| + |Im c|`: bounds the sup norm on the unit disk in the `z^a z̄^b`
    /// basis and on `[-N, N]` in the Chebyshev reading.
    pub fn coefficient_bound(&self) -> BigRational {
        self.terms.values().map(RationalComplex::l1).fold(BigRational::zero(), |s, c| s + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.clone().into_iter().chain(other.terms.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = RationalComplex::real(-BigRational::one());
        self.add(&other.scale(&neg))
    }

    pub fn scale(&self, s: &RationalComplex) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.mul(s))))
    }

    pub fn index(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        let mut ordered: Vec<(u64, &RationalComplex)> =
            self.terms.iter().map(|(&(a, b), c)| (pair(a as u64, b as u64), c)).collect();
        ordered.sort_by_key(|(p, _)| *p);
        let mut prev: Option<u64> = None;
        let entries: Vec<BigUint> = ordered
            .iter()
            .map(|(pos, c)| {
                let gap = match prev {
                    None => *pos,
                    Some(q) => pos - q - 1,
                };
                prev = Some(*pos);
                pair_big(&BigUint::from(gap), &(c.index() - 1u32))
            })
            .collect();
        let t = BigUint::from(entries.len() - 1);
        pair_big(&t, &tuple_encode(&entries)) + 1u32
    }

    pub fn at(n: &BigUint) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let (t, body) = unpair_big(&(n - 1u32));
        let len = t.to_usize().expect("term count out of range") + 1;
        let mut pos: Option<u64> = None;
        let mut terms = Sparse::new();
        for e in tuple_decode(&body, len) {
            let (gap, ci) = unpair_big(&e);
            let gap = gap.to_u64().expect("monomial gap out of range");
            let p = match pos {
                None => gap,
                Some(q) => q + 1 + gap,
            };
            pos = Some(p);
            let (a, b) = unpair(p);
            terms.insert((a as u32, b as u32), RationalComplex::at(&(ci + 1u32)));
        }
        RationalPoly2 { terms }
    }

    /// Enclosure of `Σ c z^a z̄^b` over a rectangle.
    pub fn eval_disk(&self, z: &IntervalC, prec: u64) -> IntervalC {
        if self.is_zero() {
            return IntervalC::zero();
        }
        let d = self.degree() as usize;
        let zb = z.conj();
        let mut pz = vec![IntervalC::one()];
        let mut pzb = vec![IntervalC::one()];
        for k in 1..=d {
            pz.push((&pz[k - 1] * z).round(prec));
            pzb.push((&pzb[k - 1] * &zb).round(prec));
        }
        let mut acc = IntervalC::zero();
        for (&(a, b), c) in &self.terms {
            let m = (&pz[a as usize] * &pzb[b as usize]).round(prec);
            acc = (&acc + &(&c.enclose(prec) * &m)).round(prec);
        }
        acc
    }

    /// Enclosure of `Σ c T_a(x/N) T_b(x/N)` (Chebyshev reading on `[-N, N]`) over an
    /// interval `x ⊆ [-N, N]`.
    pub fn eval_cheb(&self, x: &Interval, n_bound: u64, prec: u64) -> IntervalC {
        if self.is_zero() {
            return IntervalC::zero();
        }
        let d = self.degree() as usize;
        let nb = BigRational::from_integer(n_bound.into());
        let mid = x.mid().to_rational() / &nb;
        let t0 = Dyadic::from_rational(&mid, prec + 8, Round::Down);
        let t0 = clamp_unit(t0);
        // |t - t0| for t in x/N
        let lo = (x.lo().to_rational() / &nb - t0.to_rational()).abs();
        let hi = (x.hi().to_rational() / &nb - t0.to_rational()).abs();
        let dist = Dyadic::from_rational(&lo.max(hi), 30, Round::Up);
        // exact values T_k(t0)
        let mut ts = vec![Dyadic::one(), t0.clone()];
        for k in 2..=d {
            let next = &(&t0 * &ts[k - 1]).mul_pow2(1) - &ts[k - 2];
            ts.push(next);
        }
        let mut acc = IntervalC::zero();
        let mut slope = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let v = Interval::point(&ts[a as usize] * &ts[b as usize]).round(prec + 8);
            acc = (&acc + &c.enclose(prec + 8).scale(&v)).round(prec + 8);
            // |d/dt T_a T_b| <= a^2 + b^2 on [-1, 1]
            let lip = BigRational::from_integer((a as u64 * a as u64 + b as u64 * b as u64).into());
            slope += c.l1() * lip;
        }
        let err = Dyadic::from_rational(&slope, 30, Round::Up);
        let err = &err * &dist;
        let ball = IntervalC::new(Interval::ball0(err.clone()), Interval::ball0(err));
        (&acc + &ball).round(prec)
    }
}

fn clamp_unit(t: Dyadic) -> Dyadic {
    Dyadic::min(&Dyadic::max(&t, &-Dyadic::one()), &Dyadic::one())
}

fn mul_sparse(p: &Sparse, q: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (&(a, b), c) in p {
        for (&(d, e), f) in q {
            let slot = out.entry((a + d, b + e)).or_default();
            *slot = slot.add(&c.mul(f));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Replace the first variable by `u` and the second by `v`.
fn substitute<I>(terms: I, u: &Sparse, v: &Sparse) -> Sparse
where
    I: IntoIterator<Item = ((u32, u32), RationalComplex)>,
{
    let one = Sparse::from([((0, 0), RationalComplex::one())]);
    let mut out = Sparse::new();
    for ((i, j), c) in terms {
        let mut m = one.clone();
        for _ in 0..i {
            m = mul_sparse(&m, u);
        }
        for _ in 0..j {
            m = mul_sparse(&m, v);
        }
        for (k, coeff) in m {
            let slot = out.entry(k).or_default();
            *slot = slot.add(&coeff.mul(&c));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl fmt::Display for RationalPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(a, b), c)| format!("({c}) z^{a} zb^{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `enum_rational_poly`.
pub fn enum_rational_poly(n: u64) -> RationalPoly2 {
    RationalPoly2::at(&BigUint::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn zero_polynomial_roundtrip() {
        assert!(enum_rational_poly(0).is_zero());
        assert_eq!(RationalPoly2::zero().index(), BigUint::zero());
    }

    #[test]
    fn xy_plus_half_roundtrip() {
        let p = RationalPoly2::from_xy([
            ((1, 1), RationalComplex::one()),
            ((0, 0), RationalComplex::real(q(1, 2))),
        ]);
        // x y = (z^2 - zb^2) / 4i
        assert_eq!(p.coeff(2, 0), RationalComplex::new(q(0, 1), q(-1, 4)));
        assert_eq!(RationalPoly2::at(&p.index()), p);
        let xy = p.to_xy();
        assert_eq!(xy.len(), 2);
        assert_eq!(xy[&(1, 1)], RationalComplex::one());
    }

    #[test]
    fn prefix_is_bijective() {
        let mut seen = HashSet::new();
        for n in 0u32..10_000 {
            let p = RationalPoly2::at(&BigUint::from(n));
            assert_eq!(p.index(), BigUint::from(n));
            assert!(seen.insert(format!("{p}")));
        }
    }

    #[test]
    fn disk_evaluation_contains_exact_value() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let p = RationalPoly2::at(&BigUint::from(rng.gen_range(1u64..10_000)));
            let z = RationalComplex::from_ints(rng.gen_range(-9..=9), 10, rng.gen_range(-9..=9), 13);
            let d = p.degree() as usize;
            let mut pz = vec![RationalComplex::one()];
            let mut pzb = vec![RationalComplex::one()];
            for k in 1..=d {
                pz.push(pz[k - 1].mul(&z));
                pzb.push(pzb[k - 1].mul(&z.conj()));
            }
            let mut exact = RationalComplex::zero();
            for (&(a, b), c) in p.terms() {
                exact = exact.add(&c.mul(&pz[a as usize]).mul(&pzb[b as usize]));
            }
            let v = p.eval_disk(&z.enclose(80), 80);
            assert!(v.contains_rational(&exact.re, &exact.im), "{p} at {z}");
        }
    }

    #[test]
    fn chebyshev_evaluation() {
        // T_3(x/2) at x = 1: 4 (1/2)^3 - 3/2 = -1
        let p = RationalPoly2::monomial(3, 0, RationalComplex::one());
        let v = p.eval_cheb(&Interval::one(), 2, 60);
        assert!(v.contains(&-Dyadic::one(), &Dyadic::zero()));
        assert!(v.width().msb() < -50);
    }
}
