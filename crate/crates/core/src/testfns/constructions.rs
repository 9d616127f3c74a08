//! Name transformations that connect the projections between `𝒟`, `𝒮` and `ℰ`
//! with closed choice on `ℕ` and bound problems.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{eval_smooth_derivative, slice_polynomial, BumpName, Family, SchwartzName, SmoothName};
use crate::analytic::series::ceil_log2;
use crate::names::pairing::{to_u64, unpair};
use crate::names::rational::rational_at;
use crate::names::{interleave, pair, Name};
use crate::numeric::{Dyadic, Interval};
use crate::spaces::{ClosedSetName, MetricName};

/// Complement of `{K | ∀m: f(q_m) ≠ 0 ⇒ |q_m| <= K}`: step `⟨⟨m, n⟩, K⟩` excludes
/// `K` when `|q_m| > K` and the `2^-n` enclosure of `f(q_m)` misses 0.
pub fn support_bound_complement(f: &SmoothName) -> ClosedSetName {
    let f = f.clone();
    ClosedSetName(Name::from_u64_fn(move |s| {
        let (mn, k) = unpair(s);
        let (mi, n) = unpair(mn);
        let x = rational_at(&BigUint::from(mi));
        if x.abs() <= BigRational::from_integer(k.into()) {
            return 0;
        }
        let v = eval_smooth_derivative(&f, 0, &MetricName::real_rational(&x), n);
        if v.re.contains_zero() { 0 } else { k + 1 }
    }))
}

/// Attaches a support bound found by choice.
pub fn attach_support_bound(f: &SmoothName, k: u64) -> BumpName {
    BumpName::from_parts(k, f)
}

/// `2^(-i-1) (2v+1)^(-i) (17i)^(-4i)`.
fn bounded_set_weight(i: u64, v: u64) -> BigRational {
    let mut den = BigUint::one() << (i + 1);
    den *= BigUint::from(2 * v + 1).pow(i as u32);
    den *= BigUint::from(17 * i).pow(4 * i as u32);
    BigRational::new(1.into(), den.into())
}

/// `Σ_{i <= upto} w_i f_{2p(i)}`.
pub fn bounded_set_family(p: &Name, upto: u64) -> Family {
    let mut g = Family::zero();
    for i in 0..=upto {
        let v = to_u64(&p.query(i));
        g.push(bounded_set_weight(i, v), BigRational::from_integer((2 * v).into()));
    }
    g
}

/// Schwartz name of `g = Σ_i 2^(-i-1) (2p(i)+1)^(-i) (17i)^(-4i) f_{2p(i)}`.
///
/// The `i`-th term has `‖·‖_{d,m} <= 2^(-i-1)` once `i >= d, m`, so the slice
/// `(N, m, j)` keeps `i <= max(m, j+1)` and the decay witness at level `n` only has
/// to clear the supports of the terms `i <= 2n+2`.
pub fn bounded_set_schwartz(p: &Name) -> SchwartzName {
    let pd = p.clone();
    let decay = Name::from_u64_fn(move |n| 1 + (0..=2 * n + 2).map(|i| 2 * to_u64(&pd.query(i)) + 1).max().unwrap_or(1));
    let ps = p.clone();
    let smooth = SmoothName::from_slices(move |nb, m, j| {
        let g = bounded_set_family(&ps, m.max(j + 1));
        slice_polynomial(&g, nb, m, -(j as i64) - 2)
    });
    SchwartzName::from_parts(decay, &smooth)
}

/// Least support bound of `g` when `p` is bounded by `max`.
pub fn bounded_set_support(max: u64) -> u64 {
    2 * max + 1
}

/// Complement of the valid decay witnesses at `level`: step
/// `⟨⟨x, b⟩, ⟨⟨d, m⟩, r⟩⟩` excludes `b` when `|q_x| >= b`, `d, m <= level` and
/// the `2^-r` enclosure shows `|q_x^d f^(m)(q_x)| > 2^-level`.
pub fn decay_complement(f: &SmoothName, level: u64) -> ClosedSetName {
    let f = f.clone();
    let t = Dyadic::pow2(-(level as i64));
    ClosedSetName(Name::from_u64_fn(move |s| {
        let (xb, dmr) = unpair(s);
        let (xi, b) = unpair(xb);
        let (dm, r) = unpair(dmr);
        let (d, m) = unpair(dm);
        if d > level || m > level {
            return 0;
        }
        let x = rational_at(&BigUint::from(xi));
        if x.abs() < BigRational::from_integer(b.into()) {
            return 0;
        }
        let v = eval_smooth_derivative(&f, m, &MetricName::real_rational(&x), r);
        let xd = Interval::from_rational(&x.abs(), r + 40).powi(d as u32);
        if (&xd * &v.re.abs()).mig() > t { b + 1 } else { 0 }
    }))
}

/// All levels of [`decay_complement`], interleaved.
pub fn decay_complements(f: &SmoothName) -> Name {
    let f = f.clone();
    interleave(move |level| decay_complement(&f, level).0)
}

/// Schwartz name from a smooth name and a sequence of decay witnesses.
pub fn attach_decay(f: &SmoothName, witnesses: &Name) -> SchwartzName {
    SchwartzName::from_parts(witnesses.clone(), f)
}

/// Shifts `s = n + i + 2` of the first occurrences `n` of values `i` in column `k`,
/// for `s <= max_shift`.
fn column_shifts(p: &Name, k: u64, max_shift: u64) -> Vec<u64> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for n in 0..max_shift.saturating_sub(1) {
        let i = to_u64(&p.query(pair(n, k)));
        if !seen.contains(&i) {
            seen.push(i);
            if n + i + 2 <= max_shift {
                out.push(n + i + 2);
            }
        }
    }
    out
}

/// Terms `2 s^(-k) f_s` of the columns `k < columns` with shift at most `max_shift`.
pub fn bound_seq_family(p: &Name, max_shift: u64, columns: u64) -> Family {
    let mut g = Family::zero();
    for k in 0..columns {
        for s in column_shifts(p, k, max_shift) {
            let w = BigRational::new(2.into(), BigUint::from(s).pow(k as u32).into());
            g.push(w, BigRational::from_integer(s.into()));
        }
    }
    g
}

/// Smooth name of `g = Σ_k Σ_i 2 s_{i,k}^(-k) f_{s_{i,k}}`, `s_{i,k} = m_{i,k} + i + 2`
/// with `m_{i,k}` the first `n` where `p(⟨n, k⟩) = i`.
///
/// On `[-N, N]` column `k` contributes at most `N` terms of weight `<= 2^(1-k)`, so
/// the columns from `K` on change `f^(m)` by at most `N (17m)^(4m) 2^(2-K)`.
pub fn bound_seq_smooth(p: &Name) -> SmoothName {
    let p = p.clone();
    SmoothName::from_slices(move |nb, m, j| {
        let n = nb.max(1);
        let growth = if m == 0 { 0 } else { 4 * m * ceil_log2(17 * m) };
        let columns = j + 4 + ceil_log2(n) + growth;
        let g = bound_seq_family(&p, n + 1, columns);
        slice_polynomial(&g, nb, m, -(j as i64) - 2)
    })
}

/// Bound sequence read off a Schwartz name: `k ↦ q(2k)`.
pub fn read_bounds(s: &SchwartzName) -> Name {
    let q = s.0.clone();
    Name::from_fn(move |k| q.query(2 * k))
}

/// Stream with `p(⟨n, k⟩) = columns[k][min(n, len - 1)]`, and 0 in later columns.
pub fn column_stream(columns: &[Vec<u64>]) -> Name {
    let cols = columns.to_vec();
    Name::from_u64_fn(move |x| {
        let (n, k) = unpair(x);
        match cols.get(k as usize) {
            Some(c) if !c.is_empty() => c[(n as usize).min(c.len() - 1)],
            _ => 0,
        }
    })
}

/// Exact `g` for [`column_stream`]: the zero columns from `K` on add up to
/// `2^(2-K) f_2`.
pub fn bound_seq_truth(columns: &[Vec<u64>]) -> Family {
    let p = column_stream(columns);
    let k0 = columns.len() as u64;
    let longest = columns.iter().map(|c| c.len() as u64).max().unwrap_or(0);
    let top = columns.iter().flatten().copied().max().unwrap_or(0);
    // every first occurrence lies in the listed prefix
    let mut g = bound_seq_family(&p, longest + top + 2, k0);
    g.push(BigRational::new(4.into(), (BigUint::one() << k0).into()), BigRational::from_integer(2.into()));
    debug_assert!(!g.terms.iter().any(|t| t.weight.is_zero()));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfns::{check_decay_at_samples, check_slices_at_samples, least_certified_decay};

    #[test]
    fn bounded_set_name_is_valid() {
        let p = Name::from_prefix(vec![1, 0, 1], 0);
        let s = bounded_set_schwartz(&p);
        let truth = bounded_set_family(&p, 12);
        assert_eq!(s.decay(0), 4);
        assert_eq!(truth.support_bound(), bounded_set_support(1));
        check_decay_at_samples(&s, &truth, 3, 50).unwrap();
        check_slices_at_samples(&s.smooth(), &truth, 3, 0, 8, 25).unwrap();
    }

    #[test]
    fn support_complement_excludes_small_bounds_only() {
        let f = SmoothName::from_family(Family::bump_int(1));
        let excluded = support_bound_complement(&f).excluded_prefix(2000);
        assert!(excluded.contains(&0));
        assert!(excluded.iter().all(|&k| k < 2), "{excluded:?}");
    }

    #[test]
    fn decay_complement_is_sound() {
        let f = Family::bump_int(1);
        let c = decay_complement(&SmoothName::from_family(f.clone()), 1);
        let excluded = c.excluded_prefix(300);
        let least = least_certified_decay(&f, 1);
        assert!(!excluded.is_empty());
        assert!(excluded.iter().all(|&b| b < least), "{excluded:?} vs {least}");
    }

    #[test]
    fn bound_sequence_family_matches_its_truth() {
        let cols = vec![vec![2, 0, 2], vec![5]];
        let p = column_stream(&cols);
        let truth = bound_seq_truth(&cols);
        // column 0: 2 at n = 0 (s = 4), 0 at n = 1 (s = 3); column 1: 5 at n = 0 (s = 7)
        let shifts: Vec<i64> = truth.terms.iter().map(|t| t.shift.to_integer().try_into().unwrap()).collect();
        assert_eq!(shifts, vec![4, 3, 7, 2]);
        let s = bound_seq_smooth(&p);
        check_slices_at_samples(&s, &truth, 8, 0, 6, 33).unwrap();
    }
}
