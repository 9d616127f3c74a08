//! Certified polynomial approximants of `F^(m)` on `[-N, N]` in the Chebyshev
//! reading `Σ c_a T_a(x/N)`.
//!
//! The interpolant `p_M` at the points `cos(jπ/M)` satisfies
//! `‖G - p_M‖ <= 4V / (πν(M-ν)^ν)` when `G^(ν)` has total variation `V`. Here
//! `G(t) = F^(m)(Nt)`, so `V <= N^ν Σ|w_i| ∫|f^(m+ν+1)|`. The coefficients of `p_M`
//! are enclosed with interval arithmetic and the emitted polynomial is a rounded
//! truncation whose extra error is bounded by the dropped coefficients.

use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;

use super::bumppoly::bump_derivative;
use super::family::Family;
use crate::analytic::series::ceil_log2;
use crate::names::{RationalComplex, RationalPoly2};
use crate::numeric::{Dyadic, Interval, Round};
use crate::spaces::PI_HEX;

/// Largest smoothness order tried in the error bound.
const MAX_NU: u64 = 8;

/// Enclosure of π from the stored hexadecimal expansion.
pub fn pi_interval(prec: u64) -> Interval {
    let digits: Vec<u32> = PI_HEX[2..].chars().map(|c| c.to_digit(16).unwrap()).collect();
    let nd = (prec / 4 + 2) as usize;
    assert!(nd <= digits.len(), "stored expansion of pi is too short for {prec} bits");
    let mut m = num_bigint::BigInt::from(3);
    for d in &digits[..nd] {
        m = (m << 4u32) + *d;
    }
    let lo = Dyadic::new(m, -4 * nd as i64);
    let hi = &lo + &Dyadic::pow2(-4 * nd as i64);
    Interval::new(lo, hi)
}

/// `cos x` for `|x| <= 2` by the alternating Taylor series.
fn cos_small(x: &Interval, prec: u64) -> Interval {
    let w = prec + 16;
    let x2 = x.sqr().round(w);
    let mut term = Interval::one();
    let mut sum = Interval::one();
    let mut k = 0u64;
    loop {
        k += 1;
        let den = Interval::from_int((2 * k - 1) * (2 * k));
        term = (-&(&term * &x2)).div(&den, w);
        sum = (&sum + &term).round(w);
        // remaining terms alternate and decrease once (2k+1)(2k+2) > 4
        if k >= 2 && term.mag() < Dyadic::pow2(-(w as i64)) {
            let r = term.mag();
            return (&sum + &Interval::ball0(r)).round(prec);
        }
    }
}

/// `cos(iπ/M)` for `i = 0..=2M`, each from the series (a three-term recurrence
/// would widen the intervals geometrically).
fn cos_table(m: u64, prec: u64) -> Vec<Interval> {
    let w = prec + 8;
    let pi = pi_interval(w + 8);
    let half: Vec<Interval> = (0..=m)
        .map(|i| {
            if 2 * i <= m {
                cos_small(&(&pi * &Interval::from_int(i)).div(&Interval::from_int(m), w), w)
            } else {
                -&cos_small(&(&pi * &Interval::from_int(m - i)).div(&Interval::from_int(m), w), w)
            }
        })
        .collect();
    let mut out = half.clone();
    out.extend((m + 1..=2 * m).map(|i| half[(2 * m - i) as usize].clone()));
    out
}

fn l1_cache() -> &'static Mutex<Vec<Dyadic>> {
    static C: OnceLock<Mutex<Vec<Dyadic>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(Vec::new()))
}

/// Upper bound on `∫_{-1}^{1} |f^(k)|` by an upper Riemann sum of interval enclosures.
pub fn derivative_l1_bound(k: u64) -> Dyadic {
    {
        let c = l1_cache().lock().unwrap();
        if let Some(v) = c.get(k as usize) {
            return v.clone();
        }
    }
    let mut computed = Vec::new();
    let start = l1_cache().lock().unwrap().len() as u64;
    for j in start..=k {
        let cells = 1u64 << 12;
        let width = Dyadic::pow2(-11);
        let mut total = Dyadic::zero();
        for c in 0..cells {
            let lo = &Dyadic::from_int(c as i64 - (cells / 2) as i64) * &width;
            let hi = &lo + &width;
            let v = bump_derivative(j, &Interval::new(lo, hi), 32);
            total = &total + &(&v.mag() * &width);
        }
        computed.push(total.round(24, Round::Up));
    }
    let mut c = l1_cache().lock().unwrap();
    for v in computed {
        if c.len() as u64 <= k {
            c.push(v);
        }
    }
    c[k as usize].clone()
}

/// Choice of interpolation degree `M` with a certified bound
/// `4V/(3ν(M-ν)^ν) <= target` (using `π >= 3`).
fn interpolation_degree(n_scale: u64, weight: &Dyadic, m: u64, target: &Dyadic) -> u64 {
    let mut best: Option<u64> = None;
    for nu in 1..=MAX_NU {
        let v = &pow_dyadic(&Dyadic::from_int(n_scale), nu) * &(weight * &derivative_l1_bound(m + nu + 1));
        // float guess, then exact confirmation
        let guess = (4.0 * v.to_f64() / (3.0 * nu as f64 * target.to_f64())).powf(1.0 / nu as f64);
        if !guess.is_finite() || guess > 1e6 {
            continue;
        }
        let mut deg = nu + guess.ceil().max(1.0) as u64;
        loop {
            let lhs = &Dyadic::from_int(4) * &v;
            let rhs = &(&Dyadic::from_int(3 * nu) * &pow_dyadic(&Dyadic::from_int(deg - nu), nu)) * target;
            if lhs <= rhs {
                break;
            }
            deg += 1;
        }
        if best.is_none_or(|b| deg < b) {
            best = Some(deg);
        }
    }
    best.expect("no usable smoothness order for the requested precision")
}

fn pow_dyadic(x: &Dyadic, k: u64) -> Dyadic {
    let mut out = Dyadic::one();
    for _ in 0..k {
        out = &out * x;
    }
    out
}

/// Certified Chebyshev coefficients of `F^(m)(N t)`, with an upper bound on the
/// sup-norm error of `Σ c_a T_a(t)` on `[-1, 1]`.
pub struct Certified {
    pub coeffs: Vec<Dyadic>,
    pub error: Dyadic,
}

/// Approximant of `F^(m)` on `[-N, N]` with error at most `2^err_exp` (`N = 0` is
/// treated as `N = 1`).
pub fn certify(f: &Family, n_bound: u64, m: u64, err_exp: i64) -> Certified {
    let n_scale = n_bound.max(1);
    let nq = BigRational::from_integer(n_scale.into());
    let f = f.restrict(&-nq.clone(), &nq);
    if f.is_zero() {
        return Certified { coeffs: vec![], error: Dyadic::zero() };
    }
    let tol = Dyadic::pow2(err_exp);
    let half = tol.mul_pow2(-1);
    let weight = Dyadic::from_rational(&f.weight_l1(), 64, Round::Up);
    let deg = interpolation_degree(n_scale, &weight, m, &half);
    let mut extra = 0u64;
    loop {
        let prec = (-err_exp).max(0) as u64 + 2 * ceil_log2(deg + 1) + 40 + extra;
        let c = interpolant(&f, n_scale, m, deg, prec);
        // truncation: drop the longest tail whose magnitude sum is below tol/4
        let mut tail = Dyadic::zero();
        let mut keep = c.len();
        let quarter = tol.mul_pow2(-2);
        while keep > 0 {
            let t = &tail + &c[keep - 1].mag();
            if t > quarter {
                break;
            }
            tail = t;
            keep -= 1;
        }
        let grid = err_exp - 4 - ceil_log2(keep as u64 + 1) as i64;
        let mut radii = Dyadic::zero();
        let mut coeffs = Vec::with_capacity(keep);
        for ci in &c[..keep] {
            let mid = ci.mid().round_to_exp(grid, Round::Down);
            let r = Dyadic::max(&(ci.hi() - &mid).abs(), &(&mid - ci.lo()).abs());
            radii = &radii + &r;
            coeffs.push(mid);
        }
        let error = &(&half + &tail) + &radii;
        if error <= tol {
            return Certified { coeffs, error };
        }
        extra += 32;
        assert!(extra <= 256, "could not certify approximant to 2^{err_exp}");
    }
}

/// Interval coefficients of the degree-`deg` interpolant at `cos(jπ/deg)`.
fn interpolant(f: &Family, n_scale: u64, m: u64, deg: u64, prec: u64) -> Vec<Interval> {
    let table = cos_table(deg, prec);
    let nd = Interval::from_int(n_scale);
    let hull = f.support_hull();
    let values: Vec<(usize, Interval)> = (0..=deg as usize)
        .filter_map(|j| {
            let x = (&table[j] * &nd).round(prec);
            if let Some((lo, hi)) = &hull {
                if x.hi().to_rational() <= *lo || x.lo().to_rational() >= *hi {
                    return None;
                }
            }
            let mut v = f.derivative(m, &x, prec);
            if j == 0 || j == deg as usize {
                v = v.mul_pow2(-1);
            }
            (!v.is_zero()).then_some((j, v))
        })
        .collect();
    let period = 2 * deg as usize;
    let fast_values: Vec<(usize, Fi)> = values.iter().map(|(j, v)| (*j, Fi::from(v))).collect();
    let fast_table: Vec<Fi> = table.iter().map(Fi::from).collect();
    (0..=deg as usize)
        .map(|k| {
            let mut acc = Fi::zero();
            for (j, v) in &fast_values {
                acc = acc.add(v.mul(&fast_table[(j * k) % period]));
            }
            let mut c = acc.scale(2.0 / deg as f64);
            if k == 0 || k == deg as usize {
                c = c.scale(0.5);
            }
            c.to_interval()
        })
        .collect()
}

/// `f64` interval with outward rounding by one ulp per operation.
#[derive(Clone, Copy, Debug)]
struct Fi {
    lo: f64,
    hi: f64,
}

impl Fi {
    fn zero() -> Fi {
        Fi { lo: 0.0, hi: 0.0 }
    }

    fn add(self, o: Fi) -> Fi {
        Fi { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }

    fn mul(&self, o: &Fi) -> Fi {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Fi { lo: lo.next_down(), hi: hi.next_up() }
    }

    /// Multiply by a positive constant `s` (itself exact, e.g. `2/M` rounded: the
    /// extra ulp covers that rounding).
    fn scale(self, s: f64) -> Fi {
        Fi { lo: (self.lo * s).next_down().next_down(), hi: (self.hi * s).next_up().next_up() }
    }

    fn to_interval(self) -> Interval {
        assert!(self.lo.is_finite() && self.hi.is_finite(), "coefficient enclosure overflowed");
        Interval::new(Dyadic::from_f64(self.lo), Dyadic::from_f64(self.hi))
    }
}

impl From<&Interval> for Fi {
    fn from(v: &Interval) -> Fi {
        Fi { lo: v.lo().to_f64().next_down(), hi: v.hi().to_f64().next_up() }
    }
}

/// Slice polynomial in the reading of `Segment(max(N, 1))`.
pub fn slice_polynomial(f: &Family, n_bound: u64, m: u64, err_exp: i64) -> RationalPoly2 {
    let c = certify(f, n_bound, m, err_exp);
    RationalPoly2::from_terms(
        c.coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(a, d)| ((a as u32, 0u32), RationalComplex::real(d.to_rational()))),
    )
}

/// Clenshaw evaluation of `Σ c_a T_a(t)` at a point, for checks.
pub fn clenshaw(coeffs: &[Dyadic], t: &Dyadic, prec: u64) -> Interval {
    let ti = Interval::point(t.clone());
    let mut b1 = Interval::zero();
    let mut b2 = Interval::zero();
    for c in coeffs.iter().skip(1).rev() {
        let b0 = (&(&(&ti * &b1).mul_pow2(1) - &b2) + &Interval::point(c.clone())).round(prec);
        b2 = b1;
        b1 = b0;
    }
    let c0 = coeffs.first().cloned().unwrap_or_else(Dyadic::zero);
    (&(&(&ti * &b1) - &b2) + &Interval::point(c0)).round(prec)
}
