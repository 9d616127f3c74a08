//! Reductions among closed choice, max, Bound, Count and lpo.
//!
//! Closed sets are named by enumerations of their complements (`p(n) = k + 1`
//! excludes `k`); enumerated sets list `k` as `k + 1` and use 0 for "nothing".

use std::collections::BTreeSet;

use crate::error::Error;
use crate::names::{pair, unpair, Name};

use super::oracle::read_nat;
use super::{compose, Choice, Problem, Reduction, Truth};

/// `μ_0, ..., μ_n`: the least values not excluded by `p(0..=j)`.
pub fn least_unexcluded_trace(p: &Name, n: u64) -> Vec<u64> {
    let mut out = BTreeSet::new();
    let mut mu = 0;
    let mut trace = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        if let Some(k) = p.query_u64(j).checked_sub(1) {
            out.insert(k);
        }
        while out.contains(&mu) {
            mu += 1;
        }
        trace.push(mu);
    }
    trace
}

/// Steps until the least unexcluded value reaches `target`, with the trace so far.
fn trace_until(p: &Name, target: u64) -> Vec<u64> {
    let mut len = 16;
    loop {
        let t = least_unexcluded_trace(p, len);
        if let Some(i) = t.iter().position(|&m| m == target) {
            return t[..=i].to_vec();
        }
        assert!(t.last().is_some_and(|&m| m < target), "closed set name skips its least member {target}");
        len *= 2;
    }
}

fn constant(v: u64) -> Name {
    Name::constant(v)
}

/// Closed choice to Count: `H(p)(n) = 1` while `μ_n` exceeds the ones written so
/// far, so the support size converges to `min A`.
pub fn cn_le_count() -> Reduction {
    Reduction::new(
        "cn_le_count",
        Problem::ClosedChoice,
        Problem::Count,
        "closed choice from counting: write a 1 whenever the least candidate exceeds the count",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |n| {
                let trace = least_unexcluded_trace(&p, n);
                let mut count = 0;
                let mut last = 0;
                for &mu in &trace {
                    last = u64::from(mu > count);
                    count += last;
                }
                last
            })
        },
        |_, q| constant(read_nat(q)),
        |p, t| {
            let least = t.as_choice()?.least()?;
            let mut prefix = Vec::new();
            let mut count = 0;
            for mu in trace_until(p, least) {
                let bit = u64::from(mu > count);
                count += bit;
                prefix.push(bit);
            }
            // μ has settled; one more 1 per step until the count catches up
            while count < least {
                count += 1;
                prefix.push(1);
            }
            Ok(Truth::Stream { prefix, tail: 0 })
        },
    )
}

/// Count to max: enumerate the support as `n + 1`, then count it up to the maximum.
pub fn count_le_max() -> Reduction {
    Reduction::new(
        "count_le_max",
        Problem::Count,
        Problem::Max,
        "counting from the maximum of the support",
        |p| p.map(|n, v| if v > 0u32.into() { (n + 1).into() } else { 0u32.into() }),
        |p, q| {
            let (p, top) = (p.clone(), read_nat(q));
            Name::from_fn(move |_| ((0..=top).filter(|&m| p.query_u64(m) > 0).count() as u64).into())
        },
        |_, t| {
            let (prefix, tail) = t.as_stream()?;
            if tail != 0 {
                return Err(Error::Domain("Count needs a finitely supported stream".into()));
            }
            Ok(Truth::Set((0..prefix.len() as u64).filter(|&n| prefix[n as usize] > 0).collect()))
        },
    )
}

/// Stage from which `max U` has been listed, 0 when `max U = 0`.
fn max_stage(p: &Name, max: u64) -> u64 {
    if max == 0 {
        return 0;
    }
    (0..).find(|&j| p.query_u64(j) == max + 1).unwrap() + 1
}

/// max to closed choice over pairs `⟨m, s⟩`: `m` is listed within `s` steps (or is
/// 0) and nothing larger is ever listed.
pub fn max_le_cn() -> Reduction {
    Reduction::new(
        "max_le_cn",
        Problem::Max,
        Problem::ClosedChoice,
        "the maximum of a bounded set by choosing a listed element with nothing above it",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |step| {
                let (x, j) = unpair(step);
                let (m, s) = unpair(x);
                let unlisted = m != 0 && !(0..s).any(|i| p.query_u64(i) == m + 1);
                let beaten = p.query_u64(j).checked_sub(1).is_some_and(|u| u > m);
                if unlisted || beaten { x + 1 } else { 0 }
            })
        },
        |_, q| constant(unpair(read_nat(q)).0),
        |p, t| {
            let max = t.as_set()?.last().copied().unwrap_or(0);
            let s0 = max_stage(p, max);
            Ok(Truth::Choice(Choice::new(pair(max, s0), pair(max, s0 + 3), true, move |x| {
                let (m, s) = unpair(x);
                m == max && s >= s0
            })))
        },
    )
}

/// Closed choice to max: `U = {μ_n}`, whose maximum is `min A`.
pub fn cn_le_max() -> Reduction {
    Reduction::new(
        "cn_le_max",
        Problem::ClosedChoice,
        Problem::Max,
        "closed choice as the maximum of the least candidates",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |n| least_unexcluded_trace(&p, n)[n as usize] + 1)
        },
        |_, q| constant(read_nat(q)),
        |p, t| Ok(Truth::Set(trace_until(p, t.as_choice()?.least()?).into_iter().collect())),
    )
}

/// Bound to closed choice: step `⟨j, b⟩` excludes `b` if entry `j` lists a larger value.
pub fn bound_le_cn() -> Reduction {
    Reduction::new(
        "bound_le_cn",
        Problem::Bound,
        Problem::ClosedChoice,
        "upper bounds of an enumerated set form a closed set",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |step| {
                let (j, b) = unpair(step);
                if p.query_u64(j).checked_sub(1).is_some_and(|u| u > b) { b + 1 } else { 0 }
            })
        },
        |_, q| constant(read_nat(q)),
        |_, t| Ok(Truth::Choice(Choice::at_least(t.as_set()?.last().copied().unwrap_or(0)))),
    )
}

/// Closed choice to Bound: enumerate the stages where `μ` changes; past any bound
/// of them, `μ` has settled on `min A`.
pub fn cn_le_bound() -> Reduction {
    Reduction::new(
        "cn_le_bound",
        Problem::ClosedChoice,
        Problem::Bound,
        "closed choice from a bound on the stages where the least candidate moves",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |n| {
                if n == 0 {
                    return 0;
                }
                let t = least_unexcluded_trace(&p, n);
                if t[n as usize] != t[n as usize - 1] { n + 1 } else { 0 }
            })
        },
        |p, q| {
            let (p, b) = (p.clone(), read_nat(q));
            Name::from_fn(move |_| least_unexcluded_trace(&p, b)[b as usize].into())
        },
        |p, t| {
            let trace = trace_until(p, t.as_choice()?.least()?);
            Ok(Truth::Set((1..trace.len()).filter(|&s| trace[s] != trace[s - 1]).map(|s| s as u64).collect()))
        },
    )
}

/// lpo to closed choice over `⟨b, s⟩`: `⟨0, s⟩` needs `p(s) ≠ 0`, `⟨1, s⟩` needs `p = 0`.
pub fn lpo_le_cn() -> Reduction {
    Reduction::new(
        "lpo_le_cn",
        Problem::Lpo,
        Problem::ClosedChoice,
        "testing a stream for zero with one closed choice",
        |p| {
            let p = p.clone();
            Name::from_u64_fn(move |step| {
                let (x, j) = unpair(step);
                let (b, s) = unpair(x);
                let out = match b {
                    0 => p.query_u64(s) == 0,
                    1 => p.query_u64(j) != 0,
                    _ => true,
                };
                if out { x + 1 } else { 0 }
            })
        },
        |_, q| constant(unpair(read_nat(q)).0),
        |_, t| {
            let (prefix, tail) = t.as_stream()?;
            let (prefix, tail) = (prefix.to_vec(), tail);
            let at = move |n: u64| Truth::stream_at(&prefix, tail, n);
            match (0..=prefix_len(t)).find(|&n| at(n) != 0) {
                None => Ok(Truth::Choice(Choice::new(pair(1, 0), pair(1, 1), true, |x| unpair(x).0 == 1))),
                Some(first) => {
                    let later = (first + 1..=prefix_len(t) + 1).find(|&n| at(n) != 0).unwrap_or(first);
                    Ok(Truth::Choice(Choice::new(pair(0, first), pair(0, later), true, move |x| {
                        let (b, s) = unpair(x);
                        b == 0 && at(s) != 0
                    })))
                }
            }
        },
    )
}

fn prefix_len(t: &Truth) -> u64 {
    match t {
        Truth::Stream { prefix, .. } => prefix.len() as u64,
        _ => 0,
    }
}

/// Count to closed choice through max.
pub fn count_le_cn() -> Reduction {
    compose(&count_le_max(), &max_le_cn()).expect("matching problems").named("count_le_cn")
}
