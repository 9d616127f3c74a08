//! Builders for instances whose truth is known by construction.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::analytic::gadget::{gadget_series, gadget_sum_advice};
use crate::analytic::series::{approximant, ceil_log2, Series};
use crate::analytic::{germ_advice_for_support, radius};
use crate::names::{interleave, unpair, Name, RationalComplex, RationalPoly2};
use crate::numeric::{Dyadic, Interval};
use crate::polynomials::PolyName;
use crate::spaces::{MetricName, Space};
use crate::testfns::constructions::{bound_seq_truth, column_stream};
use crate::testfns::{bump_of_family, decay_certified, include_d_to_s, least_certified_decay, Family, SmoothName};

use super::{AnalyticTruth, Choice, OracleInstance, PolyTruth, Truth};

fn list(xs: &[u64]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Closed choice on a finite set `A`: step `n` excludes `n` unless `n ∈ A`.
pub fn closed_set(members: &[u64]) -> OracleInstance {
    let set: BTreeSet<u64> = members.iter().copied().collect();
    let s2 = set.clone();
    let input = Name::from_u64_fn(move |n| if s2.contains(&n) { 0 } else { n + 1 });
    OracleInstance::new(format!("A = {}", list(members)), input, Truth::Choice(Choice::finite(set)))
}

/// Closed choice on `ℕ` minus finitely many points.
pub fn closed_cofinite(excluded: &[u64]) -> OracleInstance {
    let set: BTreeSet<u64> = excluded.iter().copied().collect();
    let ex = excluded.to_vec();
    let input = Name::from_u64_fn(move |n| ex.get(n as usize).map_or(0, |k| k + 1));
    OracleInstance::new(format!("A = N \\ {}", list(excluded)), input, Truth::Choice(Choice::cofinite(set)))
}

/// An enumerated set listed in the given order, followed by "nothing".
pub fn enumerated_set(elements: &[u64]) -> OracleInstance {
    let input = Name::from_prefix(elements.iter().map(|k| k + 1).collect(), 0);
    OracleInstance::new(format!("U = {}", list(elements)), input, Truth::Set(elements.iter().copied().collect()))
}

/// The stream `prefix` followed by `tail` forever.
pub fn stream(prefix: &[u64], tail: u64) -> OracleInstance {
    let v: Vec<String> = prefix.iter().map(|x| x.to_string()).collect();
    OracleInstance::new(
        format!("p = ({}{}{tail}, ...)", v.join(","), if prefix.is_empty() { "" } else { "," }),
        Name::from_prefix(prefix.to_vec(), tail),
        Truth::Stream { prefix: prefix.to_vec(), tail },
    )
}

/// `⟨k, j⟩ ↦` the coefficient `a_k` within `2^-j`.
pub fn sequence_name(src: Series) -> Name {
    Name::from_fn(move |i| {
        let (k, j) = unpair(i);
        src.coeff(k, j).index()
    })
}

/// The coefficient sequence `a_k = [k ∈ S]`.
pub fn indicator_sequence(support: &[u64]) -> OracleInstance {
    let s = support.to_vec();
    let input = Name::from_fn(move |i| {
        let (k, _) = unpair(i);
        if s.contains(&k) { RationalComplex::one() } else { RationalComplex::zero() }.index()
    });
    OracleInstance::new(
        format!("a = indicator of {}", list(support)),
        input,
        Truth::Germ(Choice::at_least(germ_advice_for_support(support))),
    )
}

/// `a_k = 3^-k`: the advice 1 already works.
pub fn geometric_sequence() -> OracleInstance {
    let src = crate::analytic::series::geometric_series(RationalComplex::one(), BigRational::new(1.into(), 3.into()));
    OracleInstance::new("a_k = 3^-k", sequence_name(src), Truth::Germ(Choice::at_least(1)))
}

/// C(D)-name of `Σ_{n ∈ S} f_n` with the gadget functions `f_n`.
pub fn gadget_sum_name(support: &[u64]) -> Name {
    let s = support.to_vec();
    let extra = ceil_log2(s.len() as u64);
    Name::from_fn(move |j| {
        s.iter().fold(RationalPoly2::zero(), |acc, &n| acc.add(&approximant(&*gadget_series(n), j + 1 + extra))).index()
    })
}

/// `Σ_{n ∈ S} f_n`, whose derivative at 1 is `|S|`.
pub fn gadget_sum(support: &[u64]) -> OracleInstance {
    let advice = gadget_sum_advice(support);
    let truth = AnalyticTruth {
        advice: Choice::at_least_valid(advice),
        derivative_at_one: Some(RationalComplex::real(BigRational::from_integer((support.len() as i64).into()))),
        support: None,
        degree: None,
    };
    OracleInstance::new(format!("sum of gadgets {}", list(support)), gadget_sum_name(support), Truth::Analytic(truth))
}

/// `Σ |c_k| r_m^k`, an upper bound of `|P|` on `U_m`.
fn poly_bound(coeffs: &[RationalComplex], m: u64) -> Dyadic {
    let r = radius(m, 64);
    let mut acc = Interval::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let a = Interval::from_rational(&c.l1(), 64);
        acc = &acc + &(&a * &r.powi(k as u32));
    }
    acc.hi().clone()
}

/// A polynomial as an analytic function on the disk.
pub fn analytic_polynomial(label: &str, coeffs: Vec<RationalComplex>) -> OracleInstance {
    let support: BTreeSet<u64> = (0..coeffs.len() as u64).filter(|&k| !coeffs[k as usize].is_zero()).collect();
    let degree = support.last().copied();
    let advice = if support.is_empty() { 0 } else { (1..).find(|&m| poly_bound(&coeffs, m) <= Dyadic::from_int(m)).unwrap() };
    let c2 = coeffs.clone();
    let member = move |m: u64| if m == 0 { c2.iter().all(|c| c.is_zero()) } else { poly_bound(&c2, m) <= Dyadic::from_int(m) };
    let truth = AnalyticTruth {
        advice: Choice::new(advice, advice + 1, false, member),
        derivative_at_one: Some(coeffs.iter().enumerate().skip(1).fold(RationalComplex::zero(), |acc, (k, c)| {
            acc.add(&c.scale(&BigRational::from_integer((k as i64).into())))
        })),
        support: Some(support),
        degree,
    };
    let p = RationalPoly2::from_z_coeffs(&coeffs);
    let cont = MetricName::function(Space::Disk, move |_| p.clone());
    OracleInstance::new(label, Name::cons(advice, &cont.name), Truth::Analytic(truth))
}

/// Strips the advice from an analytic instance, leaving its C(D)-name.
pub fn continuous_part(inst: OracleInstance) -> OracleInstance {
    OracleInstance::new(inst.label, inst.input.shift(1), inst.truth)
}

pub fn rational(n: i64, d: i64) -> RationalComplex {
    RationalComplex::from_ints(n, d, 0, 1)
}

/// Polynomial `lead · Π (X - r)` over the given rational roots, with degree bound `bound`.
pub fn polynomial_from_roots(lead: RationalComplex, roots: &[RationalComplex], bound: u64) -> OracleInstance {
    let mut coeffs = vec![lead];
    for r in roots {
        let mut next = vec![RationalComplex::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r));
        }
        coeffs = next;
    }
    let label = format!("{} roots, bound {bound}", roots.len());
    let input = PolyName::exact(coeffs.clone(), bound).0;
    OracleInstance::new(label, input, Truth::Poly(PolyTruth { coeffs, roots: Some(roots.to_vec()) }))
}

/// A polynomial from integer coefficients `a_0, a_1, ...`.
pub fn polynomial(coeffs: &[i64], bound: u64) -> OracleInstance {
    let c: Vec<RationalComplex> = coeffs.iter().map(|&a| rational(a, 1)).collect();
    OracleInstance::new(
        format!("coefficients {coeffs:?}, bound {bound}"),
        PolyName::exact(c.clone(), bound).0,
        Truth::Poly(PolyTruth { coeffs: c, roots: None }),
    )
}

/// A bump family as a Schwartz name with compact support.
pub fn schwartz_bump(label: &str, f: Family) -> OracleInstance {
    let k = f.support_bound();
    OracleInstance::new(label, include_d_to_s(&bump_of_family(f)).0, Truth::Choice(Choice::at_least(k)))
}

/// A bump family as a smooth name with compact support.
pub fn smooth_bump(label: &str, f: Family) -> OracleInstance {
    let k = f.support_bound();
    OracleInstance::new(label, SmoothName::from_family(f).0, Truth::Choice(Choice::at_least(k)))
}

/// Certified decay witnesses of a family, one choice set per level.
pub fn decay_choices(f: Family) -> Truth {
    let f = Arc::new(f);
    Truth::Choices(Arc::new(move |n| {
        let tight = least_certified_decay(&f, n);
        let g = f.clone();
        Choice::new(tight, f.support_bound().max(tight), false, move |b| decay_certified(&g, b, n))
    }))
}

/// A bump family as a smooth name that happens to decay fast.
pub fn smooth_decaying(label: &str, f: Family) -> OracleInstance {
    OracleInstance::new(label, SmoothName::from_family(f.clone()).0, decay_choices(f))
}

/// Interleaved closed choice instances on finite sets.
pub fn closed_set_sequence(sets: &[Vec<u64>]) -> OracleInstance {
    let names: Vec<Name> = sets.iter().map(|s| closed_set(s).input).collect();
    let fallback = closed_set(&[0]).input;
    let truths: Vec<Choice> = sets.iter().map(|s| Choice::finite(s.iter().copied().collect())).collect();
    let label = sets.iter().map(|s| list(s)).collect::<Vec<_>>().join(" ");
    OracleInstance::new(
        format!("A_n = {label}, then {{0}}"),
        interleave(move |m| names.get(m as usize).cloned().unwrap_or_else(|| fallback.clone())),
        Truth::Choices(Arc::new(move |n| truths.get(n as usize).cloned().unwrap_or_else(|| Choice::finite([0].into())))),
    )
}

/// Columns `k ↦ (p(⟨n, k⟩))_n`, each repeating its last entry; later columns are 0.
pub fn bound_sequence(columns: &[Vec<u64>]) -> OracleInstance {
    let label = columns.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(" ");
    OracleInstance::new(format!("columns {label}"), column_stream(columns), Truth::Columns(columns.to_vec()))
}

/// The exact test function behind a bound sequence instance.
pub fn bound_sequence_family(columns: &[Vec<u64>]) -> Family {
    bound_seq_truth(columns)
}

/// Reals `x_j = Σ_{i <= j} 2^-(i+1)` converging to 1 with modulus `n ↦ n`.
pub fn geometric_limit() -> OracleInstance {
    let input = interleave(|j| {
        let x = BigRational::one() - BigRational::new(1.into(), num_bigint::BigInt::from(1) << (j + 1) as usize);
        MetricName::real_rational(&x).name
    });
    OracleInstance::new("x_j = 1 - 2^-(j+1)", input, Truth::Limit { modulus: Arc::new(|n| n) })
}
