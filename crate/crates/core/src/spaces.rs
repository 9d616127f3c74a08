//! Represented spaces: ℕ-subsets given by enumerations, Cauchy names over ℝ, ℂ, C(D)
//! and C([-N, N]), and sequences of such names.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::names::pairing::to_u64;
use crate::names::rational::{rational_at, rational_index};
use crate::names::{interleave, project, Name, RationalComplex, RationalPoly2};
use crate::numeric::{Dyadic, Interval, IntervalC};

/// Extra bits used when enclosing rational centers.
const GUARD: u64 = 40;

/// A set `O = {p(n) - 1 | p(n) > 0}`. Every name is valid.
#[derive(Clone, Debug)]
pub struct OpenSetName(pub Name);

impl OpenSetName {
    /// Elements listed among the first `steps` values.
    pub fn decode_prefix(&self, steps: u64) -> BTreeSet<u64> {
        (0..steps).filter_map(|n| self.0.query_u64(n).checked_sub(1)).collect()
    }

    pub fn listed_within(&self, k: u64, steps: u64) -> bool {
        (0..steps).any(|n| self.0.query_u64(n) == k + 1)
    }
}

/// A set given as the complement of the enumerated open set.
#[derive(Clone, Debug)]
pub struct ClosedSetName(pub Name);

impl ClosedSetName {
    pub fn as_open(&self) -> OpenSetName {
        OpenSetName(self.0.clone())
    }

    /// Elements known to be outside the set after `steps` values.
    pub fn excluded_prefix(&self, steps: u64) -> BTreeSet<u64> {
        self.as_open().decode_prefix(steps)
    }

    /// Elements below `bound` not yet excluded after `steps` values.
    pub fn candidates(&self, bound: u64, steps: u64) -> BTreeSet<u64> {
        let out = self.excluded_prefix(steps);
        (0..bound).filter(|k| !out.contains(k)).collect()
    }

    /// Name of the closed set `ℕ \ excluded` for a finite list of excluded points.
    pub fn excluding(excluded: Vec<u64>) -> ClosedSetName {
        ClosedSetName(Name::from_u64_fn(move |n| excluded.get(n as usize).map_or(0, |k| k + 1)))
    }
}

/// Metric spaces with a fixed dense sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    /// `x_n` = the `n`-th rational.
    Real,
    /// `x_n` = the `n`-th Gaussian rational.
    Complex,
    /// Continuous functions on the closed unit disk; `x_n` = `Σ c z^a z̄^b`.
    Disk,
    /// Continuous functions on `[-N, N]`; `x_n` = `Σ c T_a(x/N) T_b(x/N)`.
    Segment(u64),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Real => write!(f, "R"),
            Space::Complex => write!(f, "C"),
            Space::Disk => write!(f, "C(D)"),
            Space::Segment(n) => write!(f, "C([-{n},{n}])"),
        }
    }
}

/// A name promising `d(x, x_{p(n)}) < 2^-n` for every `n`.
#[derive(Clone, Debug)]
pub struct MetricName {
    pub space: Space,
    pub name: Name,
}

impl MetricName {
    pub fn new(space: Space, name: Name) -> Self {
        MetricName { space, name }
    }

    /// Constant name of a rational real.
    pub fn real_rational(q: &BigRational) -> Self {
        MetricName::new(Space::Real, Name::constant(rational_index(q)))
    }

    pub fn complex_rational(z: &RationalComplex) -> Self {
        MetricName::new(Space::Complex, Name::constant(z.index()))
    }

    /// Point name built from dyadic approximations `a(n)` with `|x - a(n)| <= 2^-(n+1)`.
    pub fn real_from_dyadics<F>(approx: F) -> Self
    where
        F: Fn(u64) -> Dyadic + Send + Sync + 'static,
    {
        MetricName::new(Space::Real, Name::from_fn(move |n| rational_index(&approx(n).to_rational())))
    }

    /// Point name built from rectangle enclosures: `enclose(n)` must have width at
    /// most `2^-(n+1)`, and its center is used.
    pub fn complex_from_enclosures<F>(enclose: F) -> Self
    where
        F: Fn(u64) -> IntervalC + Send + Sync + 'static,
    {
        MetricName::new(
            Space::Complex,
            Name::from_fn(move |n| {
                let (re, im) = enclose(n).mid();
                RationalComplex::new(re.to_rational(), im.to_rational()).index()
            }),
        )
    }

    /// Function name from approximants `approx(n)` within `2^-n` in sup norm.
    pub fn function<F>(space: Space, approx: F) -> Self
    where
        F: Fn(u64) -> RationalPoly2 + Send + Sync + 'static,
    {
        MetricName::new(space, Name::from_fn(move |n| approx(n).index()))
    }

    /// Center of the `n`-th ball as a Gaussian rational.
    pub fn center(&self, n: u64) -> RationalComplex {
        let v = self.name.query(n);
        match self.space {
            Space::Real => RationalComplex::real(rational_at(&v)),
            Space::Complex => RationalComplex::at(&v),
            _ => panic!("center of a function name"),
        }
    }
}

/// `real_eval`: the square of radius `2^-n` around `x_{p(n)}`, rounded outward.
pub fn real_eval(x: &MetricName, n: u64) -> IntervalC {
    let c = x.center(n);
    let r = Dyadic::pow2(-(n as i64));
    let prec_exp = -(n as i64) - GUARD as i64;
    let enclose = |q: &BigRational| {
        let lo = Dyadic::from_rational_at(q, prec_exp, crate::numeric::Round::Down);
        let hi = Dyadic::from_rational_at(q, prec_exp, crate::numeric::Round::Up);
        Interval::new(&lo - &r, &hi + &r)
    };
    let im = if x.space == Space::Real { Interval::zero() } else { enclose(&c.im) };
    IntervalC::new(enclose(&c.re), im)
}

/// `poly_approx`: the `n`-th approximant of a function name.
pub fn poly_approx(f: &MetricName, n: u64) -> RationalPoly2 {
    assert!(matches!(f.space, Space::Disk | Space::Segment(_)), "poly_approx needs a function name");
    RationalPoly2::at(&f.name.query(n))
}

/// Evaluate an approximant over a point enclosure in the reading of `space`.
pub fn eval_approximant(space: Space, p: &RationalPoly2, z: &IntervalC, prec: u64) -> IntervalC {
    match space {
        Space::Disk => p.eval_disk(z, prec),
        Space::Segment(nb) => {
            let nbd = Dyadic::from_int(nb);
            let seg = Interval::new(-nbd.clone(), nbd);
            let x = z.re.intersect(&seg).unwrap_or_else(|| Interval::point(z.re.mid()));
            p.eval_cheb(&x, nb, prec)
        }
        _ => panic!("not a function space"),
    }
}

/// `cont_eval`: enclosure of `f(z)` of width at most `2^-n`.
pub fn cont_eval(f: &MetricName, z: &MetricName, n: u64) -> IntervalC {
    let p = poly_approx(f, n + 2);
    let slack = Dyadic::pow2(-(n as i64) - 2);
    let target = Dyadic::pow2(-(n as i64) - 1);
    let prec = n + 24;
    let mut k = n + 4;
    let value = loop {
        let v = eval_approximant(f.space, &p, &real_eval(z, k), prec + k - n);
        if v.width() <= target || k > n + 400 {
            break v;
        }
        k += 8;
    };
    let ball = IntervalC::new(Interval::ball0(slack.clone()), Interval::ball0(slack));
    &value + &ball
}

/// Sequence of names, interleaved.
#[derive(Clone, Debug)]
pub struct SeqName {
    pub space: Space,
    pub name: Name,
}

impl SeqName {
    pub fn from_family<F>(space: Space, family: F) -> Self
    where
        F: Fn(u64) -> MetricName + Send + Sync + 'static,
    {
        SeqName { space, name: interleave(move |k| family(k).name) }
    }

    pub fn element(&self, k: u64) -> MetricName {
        MetricName::new(self.space, project(&self.name, k))
    }
}

/// One line of a validity report.
#[derive(Clone, Debug, Serialize)]
pub struct ValidityEntry {
    pub index: u64,
    pub claimed_precision: u64,
    pub interval: [[f64; 2]; 2],
    pub contains_truth: bool,
}

/// Check `real_eval` against a known point for the first `depth` indices.
pub fn validate_point(x: &MetricName, truth: &IntervalC, depth: u64) -> Vec<ValidityEntry> {
    (0..depth)
        .map(|n| {
            let v = real_eval(x, n);
            ValidityEntry {
                index: n,
                claimed_precision: n,
                interval: [[v.re.lo().to_f64(), v.re.hi().to_f64()], [v.im.lo().to_f64(), v.im.hi().to_f64()]],
                contains_truth: v.contains_box(truth),
            }
        })
        .collect()
}

/// Check `cont_eval` at a point with known value enclosure.
pub fn validate_function(f: &MetricName, z: &MetricName, truth: &IntervalC, depth: u64) -> Vec<ValidityEntry> {
    (0..depth)
        .map(|n| {
            let v = cont_eval(f, z, n);
            ValidityEntry {
                index: n,
                claimed_precision: n,
                interval: [[v.re.lo().to_f64(), v.re.hi().to_f64()], [v.im.lo().to_f64(), v.im.hi().to_f64()]],
                contains_truth: v.intersects(truth),
            }
        })
        .collect()
}

/// Index of a rational in the real dense sequence, as a `u64`.
pub fn real_index_u64(q: &BigRational) -> u64 {
    to_u64(&rational_index(q))
}

/// Leading hexadecimal digits of π, used as an independent reference expansion.
pub const PI_HEX: &str = "3.243F6A8885A308D313198A2E03707344A4093822299F31D0082EFA98EC4E6C89452821E638D01377BE5466CF34E90C6CC0AC29B7C97C50DD3F84D5B5B5470917";

/// Name of π read from [`PI_HEX`]: the `n`-th entry truncates to `n + 1` bits.
pub fn pi_name() -> MetricName {
    MetricName::real_from_dyadics(|n| {
        let digits: Vec<u32> = PI_HEX[2..].chars().map(|c| c.to_digit(16).unwrap()).collect();
        let nd = ((n + 1) / 4 + 1) as usize;
        assert!(nd <= digits.len(), "reference expansion of pi exhausted");
        let mut m = BigUint::from(3u32);
        for d in &digits[..nd] {
            m = (m << 4u32) + *d;
        }
        Dyadic::new(m.into(), -4 * nd as i64)
    })
}

/// Constant function name.
pub fn constant_function(space: Space, c: RationalComplex) -> MetricName {
    let idx = RationalPoly2::constant(c).index();
    MetricName::new(space, Name::constant(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn empty_enumeration() {
        let o = OpenSetName(Name::constant(0u32));
        assert!(o.decode_prefix(50).is_empty());
    }

    #[test]
    fn decode_formula() {
        let o = OpenSetName(Name::from_prefix(vec![1, 0, 3, 3], 0));
        assert_eq!(o.decode_prefix(4), BTreeSet::from([0, 2]));
    }

    #[test]
    fn decoding_is_monotone() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let vals: Vec<u64> = (0..40).map(|_| rng.gen_range(0..10)).collect();
            let o = OpenSetName(Name::from_prefix(vals, 0));
            for s in 0..40 {
                assert!(o.decode_prefix(s).is_subset(&o.decode_prefix(s + 1)));
            }
        }
    }

    #[test]
    fn open_and_closed_readings_are_complementary() {
        let c = ClosedSetName::excluding(vec![4, 0, 2]);
        let open = c.as_open().decode_prefix(3);
        let closed = c.candidates(8, 3);
        assert_eq!(open, BTreeSet::from([0, 2, 4]));
        assert_eq!(closed, BTreeSet::from([1, 3, 5, 6, 7]));
        assert!(open.is_disjoint(&closed));
    }

    #[test]
    fn real_eval_of_exact_half() {
        let x = MetricName::real_rational(&q(1, 2));
        let v = real_eval(&x, 10);
        assert_eq!(v.re, Interval::new(Dyadic::from_f64(0.5 - 1.0 / 1024.0), Dyadic::from_f64(0.5 + 1.0 / 1024.0)));
    }

    #[test]
    fn pi_name_encloses_pi() {
        let x = pi_name();
        let v = real_eval(&x, 20);
        let pi = Dyadic::from_f64(std::f64::consts::PI);
        assert!(v.re.contains(&pi));
        let mut acc = real_eval(&x, 0);
        for n in 1..=20 {
            let next = real_eval(&x, n);
            assert!(acc.intersects(&next));
            acc = IntervalC::new(acc.re.intersect(&next.re).unwrap(), acc.im.intersect(&next.im).unwrap());
        }
    }

    #[test]
    fn constant_and_square_functions() {
        let one = constant_function(Space::Disk, RationalComplex::one());
        let z = MetricName::complex_rational(&RationalComplex::from_ints(1, 3, -1, 2));
        let v = cont_eval(&one, &z, 12);
        assert!(v.contains(&Dyadic::one(), &Dyadic::zero()));
        assert!(v.width() <= Dyadic::pow2(-12));

        let sq = MetricName::function(Space::Disk, |_| RationalPoly2::monomial(2, 0, RationalComplex::one()));
        let at_one = MetricName::complex_rational(&RationalComplex::one());
        let v = cont_eval(&sq, &at_one, 16);
        assert!(v.contains(&Dyadic::one(), &Dyadic::zero()));
        assert!(v.width() <= Dyadic::pow2(-16));
    }

    #[test]
    fn constant_stream_approximant() {
        let p = RationalPoly2::monomial(1, 1, RationalComplex::from_ints(2, 7, 0, 1));
        let f = MetricName::new(Space::Disk, Name::constant(p.index()));
        for n in [0, 5, 30] {
            assert_eq!(poly_approx(&f, n), p);
        }
    }
}
