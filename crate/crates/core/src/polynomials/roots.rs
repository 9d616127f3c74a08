//! Certified root clusters of monic polynomials.
//!
//! Aberth iteration in `f64` proposes root approximations. Proposals are grouped by
//! single linkage, each group's center is refined by Newton's method on the
//! `(k-1)`-st derivative in dyadic arithmetic, and Pellet's test on the Taylor shift
//! certifies that the disk around the center holds exactly `k` roots. Certified
//! disks are pairwise disjoint, so their counts account for every root.

use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::{Dyadic, Interval, IntervalC, Round};

/// A disk holding exactly `multiplicity` roots, counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
    pub multiplicity: usize,
}

impl Cluster {
    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn enclosure(&self) -> IntervalC {
        IntervalC::around(self.re.clone(), self.im.clone(), self.radius.clone())
    }

    /// Whether the closed disks intersect (exact test on dyadic data).
    pub fn meets(&self, other: &Cluster) -> bool {
        let dr = &self.re - &other.re;
        let di = &self.im - &other.im;
        let d2 = &(&dr * &dr) + &(&di * &di);
        let s = &self.radius + &other.radius;
        d2 <= &s * &s
    }
}

/// Certificate record of a Pellet test.
#[derive(Clone, Debug, Serialize)]
pub struct PelletRecord {
    pub center: [f64; 2],
    pub radius: f64,
    pub winding: usize,
    /// Approximate `log2` of `|b_k| ρ^k / Σ_{i≠k} |b_i| ρ^i`; absent when the sum is zero.
    pub margin_log2: Option<i64>,
}

fn mean(points: &[Complex64]) -> Complex64 {
    points.iter().sum::<Complex64>() / points.len() as f64
}

/// Aberth–Ehrlich iteration on a monic polynomial with coefficients `a_0..a_d`.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return vec![];
    }
    let bound = 1.0 + coeffs[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(bound * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    let eval = |x: Complex64| {
        let mut p = coeffs[d];
        let mut dp = Complex64::new(0.0, 0.0);
        for c in coeffs[..d].iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-17 * bound {
            break;
        }
    }
    z
}

/// Single-linkage groups of points closer than `tau`.
pub fn single_linkage(points: &[Complex64], tau: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() < tau {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(vec![]);
        }
        groups[root_of[r]].push(i);
    }
    groups
}

/// Taylor shift `b_i` of `Σ a_k (c + z)^k`.
pub fn taylor_shift(coeffs: &[IntervalC], c: &IntervalC, prec: u64) -> Vec<IntervalC> {
    let mut t: Vec<IntervalC> = coeffs.to_vec();
    let d = t.len() - 1;
    for i in 0..d {
        for k in (i..d).rev() {
            let next = (&t[k] + &(c * &t[k + 1])).round(prec);
            t[k] = next;
        }
    }
    t
}

/// Pellet's test: exactly `k` roots in the open disk of radius `2^rho_exp` around `c`.
/// On success returns the approximate `log2` margin (`None` when all other terms vanish).
pub fn pellet(coeffs: &[IntervalC], re: &Dyadic, im: &Dyadic, rho_exp: i64, k: usize, prec: u64) -> Option<Option<i64>> {
    let c = IntervalC::point(re.clone(), im.clone());
    let b = taylor_shift(coeffs, &c, prec);
    let mut lead = Dyadic::zero();
    let mut rest = Dyadic::zero();
    for (i, bi) in b.iter().enumerate() {
        let scale = rho_exp * i as i64;
        if i == k {
            lead = bi.mig(prec).mul_pow2(scale);
        } else {
            rest = &rest + &bi.mag(prec).mul_pow2(scale);
        }
    }
    if lead > rest {
        Some(if rest.is_zero() { None } else { Some(lead.msb() - rest.msb()) })
    } else {
        None
    }
}

/// Coefficients of the `s`-th derivative divided by `s!`.
fn derivative_coeffs(coeffs: &[IntervalC], s: usize) -> Vec<IntervalC> {
    let d = coeffs.len() - 1;
    (s..=d)
        .map(|k| {
            let mut binom = num_bigint::BigInt::from(1);
            for t in 0..s {
                binom = binom * (k - t) / (t + 1);
            }
            coeffs[k].scale(&Interval::from_int(binom))
        })
        .collect()
}

fn horner(coeffs: &[IntervalC], x: &IntervalC, prec: u64) -> (IntervalC, IntervalC) {
    let d = coeffs.len() - 1;
    let mut p = coeffs[d].clone();
    let mut dp = IntervalC::zero();
    for c in coeffs[..d].iter().rev() {
        dp = (&(&dp * x) + &p).round(prec);
        p = (&(&p * x) + c).round(prec);
    }
    (p, dp)
}

/// Newton's method on the `(k-1)`-st derivative, started from `start`.
pub fn refine_center(coeffs: &[IntervalC], start: Complex64, k: usize, prec: u64) -> (Dyadic, Dyadic) {
    let q: Vec<IntervalC> = derivative_coeffs(coeffs, k - 1).iter().map(|c| IntervalC::point(c.re.mid(), c.im.mid())).collect();
    let mut re = Dyadic::from_f64(start.re);
    let mut im = Dyadic::from_f64(start.im);
    if q.len() < 2 {
        return (re, im);
    }
    let stop = Dyadic::pow2(-(prec as i64) + 8);
    for _ in 0..(40 + 2 * (64 - prec.leading_zeros())) {
        let x = IntervalC::point(re.clone(), im.clone());
        let (v, dv) = horner(&q, &x, prec);
        if dv.contains_zero() {
            break;
        }
        let step = v.div(&dv, prec);
        let (sr, si) = step.mid();
        re = (&re - &sr).round(prec, Round::Down);
        im = (&im - &si).round(prec, Round::Down);
        if Dyadic::max(&sr.abs(), &si.abs()) < stop {
            break;
        }
    }
    (re, im)
}

/// Certified clusters whose radii are at most `2^max_radius_exp`, together with
/// their Pellet records. `coeffs(prec)` returns enclosures of `a_0..a_d` (`a_d = 1`).
pub fn certify_clusters<F>(coeffs: F, degree: usize, max_radius_exp: i64) -> Option<(Vec<Cluster>, Vec<PelletRecord>)>
where
    F: Fn(u64) -> Vec<IntervalC>,
{
    if degree == 0 {
        return Some((vec![], vec![]));
    }
    let depth = (-max_radius_exp).max(1) as u64;
    let prec = (depth + 4) * degree as u64 + 96;
    let enc = coeffs(prec);
    let approx: Vec<Complex64> = enc
        .iter()
        .map(|c| {
            let (re, im) = c.mid();
            Complex64::new(re.to_f64(), im.to_f64())
        })
        .collect();
    let proposals = aberth(&approx);
    for tau_exp in (0..=60).step_by(2) {
        let tau = 2f64.powi(-(tau_exp as i32)) * (1.0 + approx[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max));
        let groups = single_linkage(&proposals, tau);
        if let Some(found) = certify_groups(&enc, &proposals, &groups, max_radius_exp, prec) {
            return Some(found);
        }
    }
    None
}

fn certify_groups(
    enc: &[IntervalC],
    proposals: &[Complex64],
    groups: &[Vec<usize>],
    max_radius_exp: i64,
    prec: u64,
) -> Option<(Vec<Cluster>, Vec<PelletRecord>)> {
    let mut clusters = Vec::new();
    let mut records = Vec::new();
    for g in groups {
        let pts: Vec<Complex64> = g.iter().map(|&i| proposals[i]).collect();
        let k = pts.len();
        let (re, im) = refine_center(enc, mean(&pts), k, prec);
        // shrink until Pellet's test holds and the disk is apart from earlier ones
        let (cl, margin) = (0..12).find_map(|s| {
            let rho_exp = max_radius_exp - s;
            let cl = Cluster { re: re.clone(), im: im.clone(), radius: Dyadic::pow2(rho_exp), multiplicity: k };
            if clusters.iter().any(|c: &Cluster| c.meets(&cl)) {
                return None;
            }
            pellet(enc, &re, &im, rho_exp, k, prec).map(|m| (cl, m))
        })?;
        records.push(PelletRecord {
            center: [cl.re.to_f64(), cl.im.to_f64()],
            radius: cl.radius.to_f64(),
            winding: k,
            margin_log2: margin,
        });
        clusters.push(cl);
    }
    Some((clusters, records))
}
