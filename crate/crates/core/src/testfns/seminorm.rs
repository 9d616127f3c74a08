//! Enclosures of `sup |x^d F^(m)(x)|` by branch and bound, and the Fréchet
//! distances built from them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_rational::BigRational;

use super::family::Family;
use crate::names::pairing::unpair;
use crate::numeric::{Dyadic, Interval, Round};

/// Cells examined before giving up on the requested tolerance.
const CELL_BUDGET: usize = 1 << 18;

struct Cell {
    lo: Dyadic,
    hi: Dyadic,
    upper: Dyadic,
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.upper == o.upper
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.upper.cmp(&o.upper)
    }
}

/// Enclosure of `sup_{x ∈ [lo, hi]} |x^d F^(m)(x)|`, tightened until its width is at
/// most `2^-n · max(1, lower end)` or the cell budget runs out.
pub fn sup_abs(f: &Family, d: u64, m: u64, lo: &BigRational, hi: &BigRational, n: u64) -> Interval {
    branch_and_bound(f, d, m, lo, hi, n, |lower, upper| {
        let tol = Dyadic::max(&Dyadic::one(), lower).mul_pow2(-(n as i64));
        upper - lower <= tol
    })
}

/// Whether `sup_{x ∈ [lo, hi]} |x^d F^(m)(x)| <= t` can be certified.
pub fn sup_at_most(f: &Family, d: u64, m: u64, lo: &BigRational, hi: &BigRational, t: &Dyadic) -> bool {
    let n = (-t.msb()).max(0) as u64 + 8;
    let s = branch_and_bound(f, d, m, lo, hi, n, |lower, upper| upper <= t || lower > t);
    s.hi() <= t
}

fn branch_and_bound<S>(f: &Family, d: u64, m: u64, lo: &BigRational, hi: &BigRational, n: u64, stop: S) -> Interval
where
    S: Fn(&Dyadic, &Dyadic) -> bool,
{
    let Some((slo, shi)) = f.support_hull() else {
        return Interval::zero();
    };
    let lo = std::cmp::max(lo.clone(), slo);
    let hi = std::cmp::min(hi.clone(), shi);
    if lo >= hi {
        return Interval::zero();
    }
    let prec = n + 40;
    let lo = Dyadic::from_rational(&lo, 32, Round::Down);
    let hi = Dyadic::from_rational(&hi, 32, Round::Up);
    let cells0 = ((&hi - &lo).to_f64().ceil() as u64 * 32).clamp(32, 4096);
    let step = (&hi - &lo).to_rational() / BigRational::from_integer(cells0.into());

    let eval = |a: &Dyadic, b: &Dyadic| -> Dyadic {
        let x = Interval::new(a.clone(), b.clone());
        let v = f.derivative(m, &x, prec);
        (&x.powi(d as u32) * &v).mag()
    };
    let point = |a: &Dyadic, b: &Dyadic| -> Dyadic {
        let mid = (a + b).mul_pow2(-1);
        let v = f.derivative_at(m, &mid.to_rational(), prec);
        (&Interval::point(mid).powi(d as u32) * &v).mig()
    };

    let mut heap = BinaryHeap::new();
    let mut lower = Dyadic::zero();
    let mut a = lo.clone();
    for i in 1..=cells0 {
        let b = if i == cells0 {
            hi.clone()
        } else {
            Dyadic::from_rational(&(&lo.to_rational() + &step * BigRational::from_integer(i.into())), 40, Round::Down)
        };
        lower = Dyadic::max(&lower, &point(&a, &b));
        heap.push(Cell { upper: eval(&a, &b), lo: a, hi: b.clone() });
        a = b;
    }
    let mut examined = cells0 as usize;
    loop {
        let top = heap.pop().expect("at least one cell");
        if stop(&lower, &top.upper) || examined >= CELL_BUDGET {
            return Interval::new(lower, top.upper);
        }
        let mid = (&top.lo + &top.hi).mul_pow2(-1);
        for (a, b) in [(top.lo, mid.clone()), (mid, top.hi)] {
            lower = Dyadic::max(&lower, &point(&a, &b));
            heap.push(Cell { upper: eval(&a, &b), lo: a, hi: b });
        }
        examined += 2;
    }
}

/// `‖F‖_{d,m} = sup_ℝ |x^d F^(m)(x)|`.
pub fn schwartz_seminorm(f: &Family, d: u64, m: u64, n: u64) -> Interval {
    match f.support_hull() {
        None => Interval::zero(),
        Some((lo, hi)) => sup_abs(f, d, m, &lo, &hi, n),
    }
}

/// `‖F‖_{N,m} = sup_{|x| <= N} |F^(m)(x)|`.
pub fn smooth_seminorm(f: &Family, n_bound: u64, m: u64, n: u64) -> Interval {
    let nq = BigRational::from_integer(n_bound.into());
    sup_abs(f, 0, m, &-nq.clone(), &nq, n)
}

/// Which seminorm family indexes the Fréchet metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// `i = ⟨N, m⟩ ↦ ‖·‖_{N,m}`.
    Smooth,
    /// `i = ⟨d, m⟩ ↦ ‖·‖_{d,m}`.
    Schwartz,
}

/// `Σ_i 2^(-i-1) s_i/(s_i+1)` for the seminorms `s_i` of `f - g`, enclosed to
/// width at most `2^-n`.
pub fn frechet_distance(f: &Family, g: &Family, metric: Metric, n: u64) -> Interval {
    let h = f.sub(g);
    let terms = n + 1;
    let mut acc = Interval::ball0(Dyadic::pow2(-(terms as i64))).abs();
    if h.is_zero() {
        return Interval::zero();
    }
    for i in 0..terms {
        let (a, m) = unpair(i);
        let s = match metric {
            Metric::Smooth => smooth_seminorm(&h, a, m, n + 2),
            Metric::Schwartz => schwartz_seminorm(&h, a, m, n + 2),
        };
        // s/(s+1) is increasing, with derivative at most 1/(1+s)^2
        let lo = Interval::point(s.lo().clone());
        let hi = Interval::point(s.hi().clone());
        let one = Interval::one();
        let phi_lo = lo.div(&(&lo + &one), n + 8).lo().clone();
        let phi_hi = hi.div(&(&hi + &one), n + 8).hi().clone();
        acc = &acc + &Interval::new(phi_lo, phi_hi).mul_pow2(-(i as i64) - 1);
    }
    acc
}
