//! The bump `f(x) = exp(x²/(x²-1))` on `|x| < 1` and its derivatives
//! `f^(n)(x) = p_n(x) f(x) (1-x²)^(-2n)` with integer polynomials `p_n`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::elementary::exp;
use crate::numeric::{Dyadic, Interval};

/// Integer polynomial, coefficients in increasing degree.
pub type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_deriv(a: &[BigInt]) -> IntPoly {
    if a.len() <= 1 {
        return vec![BigInt::zero()];
    }
    a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// `p_{n+1} = (1-x²)² p_n' + 2((2n-1)x - 2n x³) p_n`.
pub fn next_bump_poly(p: &[BigInt], n: u64) -> IntPoly {
    let n = BigInt::from(n);
    let sq = vec![BigInt::one(), BigInt::zero(), BigInt::from(-2), BigInt::zero(), BigInt::one()];
    let lin = vec![BigInt::zero(), BigInt::from(2) * (BigInt::from(2) * &n - 1), BigInt::zero(), BigInt::from(-4) * &n];
    trim(poly_add(&poly_mul(&sq, &poly_deriv(p)), &poly_mul(&lin, p)))
}

fn cache() -> &'static Mutex<Vec<IntPoly>> {
    static CACHE: OnceLock<Mutex<Vec<IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![vec![BigInt::one()]]))
}

/// `p_n`.
pub fn bump_poly(n: u64) -> IntPoly {
    let mut c = cache().lock().unwrap();
    while c.len() as u64 <= n {
        let k = c.len() as u64 - 1;
        let next = next_bump_poly(&c[k as usize], k);
        c.push(next);
    }
    c[n as usize].clone()
}

pub fn degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn horner(p: &[BigInt], y: &Interval, prec: u64) -> Interval {
    let mut acc = Interval::zero();
    for c in p.iter().rev() {
        acc = (&(&acc * y) + &Interval::from_int(c.clone())).round(prec);
    }
    acc
}

fn horner_f64(p: &[BigInt], y: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * y + c.to_f64().unwrap_or(f64::NAN))
}

/// `g(u) = exp(1 - 1/u) u^(-2m)` at a point `u > 0`.
fn edge_factor_point(u: &Dyadic, m: u64, prec: u64) -> Interval {
    let w = prec + 16;
    let ui = Interval::point(u.clone());
    let arg = &Interval::one() - &ui.recip(w);
    let e = exp(&arg.round(w), w);
    (&e * &ui.recip(w).powi_r(2 * m, w)).round(prec)
}

/// Enclosure of `g(u)` over `u ∈ [ul, uh] ⊆ [0, 1]`. `g` increases on `(0, 1/(2m)]`
/// and tends to 0 at 0, so endpoints give tight bounds there.
fn edge_factor(ul: &Dyadic, uh: &Dyadic, m: u64, prec: u64) -> Interval {
    let w = prec + 16;
    let turn_ok = |u: &Dyadic| m == 0 || u * &Dyadic::from_int(2 * m) <= Dyadic::one();
    let at = |u: &Dyadic| if u.is_zero() { Interval::zero() } else { edge_factor_point(u, m, w) };
    if turn_ok(uh) {
        return Interval::new(at(ul).lo().clone(), at(uh).hi().clone());
    }
    // split at 1/(2m): increasing part below, naive enclosure above
    let split = Interval::one().div(&Interval::from_int(2 * m), w);
    let mut parts = Vec::new();
    if turn_ok(ul) {
        let s = split.lo().clone();
        parts.push(Interval::new(at(ul).lo().clone(), at(&s).hi().clone()));
        parts.push(naive_edge(&s, uh, m, w));
    } else {
        parts.push(naive_edge(ul, uh, m, w));
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        out = out.hull(p);
    }
    out.round(prec)
}

fn naive_edge(ul: &Dyadic, uh: &Dyadic, m: u64, w: u64) -> Interval {
    let ui = Interval::new(ul.clone(), uh.clone());
    let arg = &Interval::one() - &ui.recip(w);
    let e = exp(&arg.round(w), w);
    (&e * &ui.recip(w).powi_r(2 * m, w)).round(w)
}

/// Enclosure of `f^(m)(y)` over the interval `y`.
pub fn bump_derivative(m: u64, y: &Interval, prec: u64) -> Interval {
    let w = prec + 24;
    let one = Dyadic::one();
    let inner = match y.intersect(&Interval::new(-one.clone(), one)) {
        None => return Interval::zero(),
        Some(i) => i,
    };
    let u = (&Interval::one() - &inner.sqr()).round(w);
    let ul = Dyadic::max(u.lo(), &Dyadic::zero());
    let uh = Dyadic::max(u.hi(), &Dyadic::zero());
    let g = edge_factor(&ul, &uh, m, w);
    let p = bump_poly(m);
    let mut v = (&horner(&p, &inner, w) * &g).round(prec);
    if &inner != y {
        // y sticks out of [-1, 1], where every derivative vanishes
        v = v.hull(&Interval::zero());
    }
    if m == 0 {
        // 0 <= f <= 1
        let lo = Dyadic::max(v.lo(), &Dyadic::zero());
        let hi = Dyadic::min(v.hi(), &Dyadic::one());
        v = Interval::new(lo, hi);
    }
    v
}

/// Enclosure of `f^(m)` at a rational point.
pub fn bump_derivative_at(m: u64, y: &BigRational, prec: u64) -> Interval {
    if y.abs() >= BigRational::one() {
        return Interval::zero();
    }
    let w = prec + 24;
    let yi = Interval::from_rational(y, w + 16);
    let u = Interval::from_rational(&(BigRational::one() - y * y), w + 16);
    let arg = &Interval::one() - &u.recip(w);
    let g = (&exp(&arg.round(w), w) * &u.recip(w).powi_r(2 * m, w)).round(w);
    let v = (&horner(&bump_poly(m), &yi, w) * &g).round(prec);
    if m == 0 {
        Interval::new(Dyadic::max(v.lo(), &Dyadic::zero()), Dyadic::min(v.hi(), &Dyadic::one()))
    } else {
        v
    }
}

/// Floating point value of `f^(m)(y)`, for proposing approximants.
pub fn bump_derivative_f64(m: u64, y: f64) -> f64 {
    if y.abs() >= 1.0 {
        return 0.0;
    }
    let u = 1.0 - y * y;
    let p = horner_f64(&bump_poly(m), y);
    if p == 0.0 {
        return 0.0;
    }
    p.signum() * (1.0 - 1.0 / u - 2.0 * m as f64 * u.ln() + p.abs().ln()).exp()
}

/// Largest absolute coefficient of `p_n`.
pub fn max_coefficient(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn first_polynomials() {
        assert_eq!(bump_poly(0), ints(&[1]));
        assert_eq!(bump_poly(1), ints(&[0, -2]));
        // p_2 = -2(1-x²)² + 2(x - 2x³)(-2x) = -2 + 6x^4
        assert_eq!(bump_poly(2), ints(&[-2, 0, 0, 0, 6]));
    }

    #[test]
    fn degrees_follow_leading_coefficient_recursion() {
        // the top coefficient c of p_n (degree d) becomes c(d - 4n) in degree d + 3,
        // which vanishes only for n = 0; hence deg p_n = 3n - 2 for n >= 1
        assert_eq!(degree(&bump_poly(0)), 0);
        for n in 1..=8 {
            assert_eq!(degree(&bump_poly(n)), 3 * n as usize - 2, "n = {n}");
        }
    }

    /// Taylor coefficients of `exp(h(x0 + t) - h(x0))`, `h(x) = x²/(x²-1)`, in exact
    /// rationals: an independent route to `f^(n)(x0) / f(x0)`.
    fn jet_ratio(x0: &BigRational, order: usize) -> Vec<BigRational> {
        // h(x0 + t) = 1 + 1/(x² - 1); series of 1/(a + b t + t²) with a = x0² - 1, b = 2x0
        let a = x0 * x0 - BigRational::one();
        let b = x0 * BigRational::from_integer(2.into());
        let mut inv = vec![BigRational::zero(); order + 1];
        inv[0] = BigRational::one() / &a;
        for k in 1..=order {
            let mut s = &b * &inv[k - 1];
            if k >= 2 {
                s += &inv[k - 2];
            }
            inv[k] = -s / &a;
        }
        // e = exp(g) with g = inv - inv[0]: e' = g' e
        let g = inv;
        let mut e = vec![BigRational::zero(); order + 1];
        e[0] = BigRational::one();
        for k in 1..=order {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += BigRational::from_integer(BigInt::from(j)) * &g[j] * &e[k - j];
            }
            e[k] = s / BigRational::from_integer(BigInt::from(k));
        }
        e
    }

    #[test]
    fn polynomials_match_jet_arithmetic() {
        for k in 1..=20 {
            let x0 = BigRational::new(BigInt::from(2 * k - 21), BigInt::from(22));
            let jets = jet_ratio(&x0, 6);
            let u = BigRational::one() - &x0 * &x0;
            let mut fact = BigRational::one();
            for n in 0..=6u64 {
                if n > 0 {
                    fact *= BigRational::from_integer(BigInt::from(n));
                }
                let want = &jets[n as usize] * &fact * num_traits::pow(u.clone(), 2 * n as usize);
                let p = bump_poly(n);
                let got = p.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x0 + BigRational::from_integer(c.clone()));
                assert_eq!(got, want, "n = {n} at {x0}");
            }
        }
    }

    #[test]
    fn values_match_finite_differences() {
        let h = 1e-5;
        for m in 0..4 {
            for &y in &[-0.7, -0.2, 0.0, 0.3, 0.55] {
                let fd = (bump_derivative_f64(m, y + h) - bump_derivative_f64(m, y - h)) / (2.0 * h);
                let d = bump_derivative_f64(m + 1, y);
                assert!((fd - d).abs() < 1e-4 * (1.0 + d.abs()), "m = {m}, y = {y}: {fd} vs {d}");
            }
        }
    }

    #[test]
    fn enclosures_contain_float_values() {
        for m in 0..5 {
            for k in -19..=19 {
                let y = BigRational::new(k.into(), 20.into());
                let v = bump_derivative_at(m, &y, 60);
                let f = bump_derivative_f64(m, k as f64 / 20.0);
                let (lo, hi) = v.to_f64();
                let tol = 1e-12 * (1.0 + f.abs());
                assert!(lo - tol <= f && f <= hi + tol, "m = {m}, y = {k}/20");
                assert!(hi - lo < 1e-12 * (1.0 + f.abs()));
            }
        }
    }

    #[test]
    fn interval_enclosure_covers_points() {
        for m in 0..4 {
            let y = Interval::new(Dyadic::from_f64(0.875), Dyadic::from_f64(1.125));
            let v = bump_derivative(m, &y, 40);
            for &p in &[0.875, 0.9, 0.95, 0.99, 0.999] {
                let f = bump_derivative_f64(m, p);
                let (lo, hi) = v.to_f64();
                assert!(lo <= f + 1e-12 && f - 1e-12 <= hi, "m = {m} at {p}: {f} not in [{lo}, {hi}]");
            }
            assert!(v.contains_zero());
        }
    }

    #[test]
    fn bump_value_at_center_is_one() {
        let v = bump_derivative(0, &Interval::zero(), 40);
        assert!(v.contains(&Dyadic::one()) && v.hi() <= &Dyadic::one());
    }
}
