//! Names: lazy, memoized points of Baire space, plus the pairing calculus and
//! instrumentation used to observe which indices a realizer reads.

pub mod pairing;
pub mod poly2;
pub mod rational;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

pub use pairing::{pair, unpair};
pub use poly2::RationalPoly2;
pub use rational::RationalComplex;

/// Values carried by names.
pub type Nat = BigUint;

type Generator = dyn Fn(u64) -> Nat + Send + Sync;

struct Inner {
    generator: Box<Generator>,
    memo: Mutex<HashMap<u64, Nat>>,
    evaluations: AtomicU64,
}

/// A total function `ℕ → ℕ`, evaluated on demand and memoized. Cloning shares the memo.
#[derive(Clone)]
pub struct Name(Arc<Inner>);

impl Name {
    pub fn from_fn<F>(f: F) -> Name
    where
        F: Fn(u64) -> Nat + Send + Sync + 'static,
    {
        Name(Arc::new(Inner {
            generator: Box::new(f),
            memo: Mutex::new(HashMap::new()),
            evaluations: AtomicU64::new(0),
        }))
    }

    pub fn from_u64_fn<F>(f: F) -> Name
    where
        F: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        Name::from_fn(move |n| Nat::from(f(n)))
    }

    pub fn constant(v: impl Into<Nat>) -> Name {
        let v = v.into();
        Name::from_fn(move |_| v.clone())
    }

    /// Leading values followed by a constant tail.
    pub fn from_prefix(values: Vec<u64>, tail: u64) -> Name {
        Name::from_u64_fn(move |n| values.get(n as usize).copied().unwrap_or(tail))
    }

    pub fn query(&self, n: u64) -> Nat {
        if let Some(v) = self.0.memo.lock().unwrap().get(&n) {
            return v.clone();
        }
        // evaluate without holding the lock: generators may query other names
        let v = (self.0.generator)(n);
        self.0.evaluations.fetch_add(1, Ordering::Relaxed);
        self.0.memo.lock().unwrap().entry(n).or_insert(v).clone()
    }

    pub fn query_u64(&self, n: u64) -> u64 {
        pairing::to_u64(&self.query(n))
    }

    pub fn prefix(&self, len: u64) -> Vec<Nat> {
        (0..len).map(|n| self.query(n)).collect()
    }

    pub fn prefix_u64(&self, len: u64) -> Vec<u64> {
        (0..len).map(|n| self.query_u64(n)).collect()
    }

    /// Number of times the generator actually ran.
    pub fn evaluations(&self) -> u64 {
        self.0.evaluations.load(Ordering::Relaxed)
    }

    /// `n ↦ self(n + k)`.
    pub fn shift(&self, k: u64) -> Name {
        let p = self.clone();
        Name::from_fn(move |n| p.query(n + k))
    }

    /// `head` followed by `self`.
    pub fn cons(head: impl Into<Nat>, tail: &Name) -> Name {
        let head = head.into();
        let p = tail.clone();
        Name::from_fn(move |n| if n == 0 { head.clone() } else { p.query(n - 1) })
    }

    pub fn map<F>(&self, f: F) -> Name
    where
        F: Fn(u64, Nat) -> Nat + Send + Sync + 'static,
    {
        let p = self.clone();
        Name::from_fn(move |n| f(n, p.query(n)))
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.prefix(6).iter().map(|v| v.to_string()).collect();
        write!(f, "Name[{}, ...]", shown.join(", "))
    }
}

/// `⟨(p_m)⟩(⟨m, n⟩) = p_m(n)` for a family given by its generator.
pub fn interleave<F>(family: F) -> Name
where
    F: Fn(u64) -> Name + Send + Sync + 'static,
{
    let cache: Mutex<HashMap<u64, Name>> = Mutex::new(HashMap::new());
    Name::from_fn(move |k| {
        let (m, n) = unpair(k);
        let member = {
            let mut c = cache.lock().unwrap();
            c.entry(m).or_insert_with(|| family(m)).clone()
        };
        member.query(n)
    })
}

pub fn interleave_vec(family: Vec<Name>) -> Name {
    let fallback = Name::constant(0u32);
    interleave(move |m| family.get(m as usize).cloned().unwrap_or_else(|| fallback.clone()))
}

/// The `m`-th member of an interleaved family.
pub fn project(p: &Name, m: u64) -> Name {
    let p = p.clone();
    Name::from_fn(move |n| p.query(pair(m, n)))
}

/// A name wrapper that records which indices were read.
#[derive(Clone)]
pub struct InstrumentedName {
    inner: Name,
    log: Arc<Mutex<BTreeSet<u64>>>,
    view: Name,
}

impl InstrumentedName {
    pub fn new(inner: &Name) -> Self {
        let log: Arc<Mutex<BTreeSet<u64>>> = Arc::default();
        let (l, p) = (log.clone(), inner.clone());
        // the view is not memoized by the caller, so every read is logged
        let view = Name::from_fn(move |n| {
            l.lock().unwrap().insert(n);
            p.query(n)
        });
        InstrumentedName { inner: inner.clone(), log, view }
    }

    /// The name to hand to a realizer.
    pub fn name(&self) -> &Name {
        &self.view
    }

    pub fn log(&self) -> Vec<u64> {
        self.log.lock().unwrap().iter().copied().collect()
    }

    /// A name agreeing with the inner name on the logged indices and given by
    /// `filler` elsewhere. `misses` counts reads outside the log.
    pub fn replay<F>(&self, filler: F, misses: Arc<AtomicU64>) -> Name
    where
        F: Fn(u64) -> Nat + Send + Sync + 'static,
    {
        let known: HashMap<u64, Nat> = self.log().into_iter().map(|i| (i, self.inner.query(i))).collect();
        Name::from_fn(move |n| match known.get(&n) {
            Some(v) => v.clone(),
            None => {
                misses.fetch_add(1, Ordering::Relaxed);
                filler(n)
            }
        })
    }
}

/// Outcome of a continuity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    /// Number of distinct indices read from each input.
    pub reads: Vec<usize>,
    pub outputs_checked: u64,
}

/// Run `transformer` on instrumented inputs, read `outputs` values, then rerun on
/// replays that only know the logged prefixes (filled arbitrarily elsewhere) and
/// require identical outputs without any read outside the log.
pub fn check_continuity<T>(inputs: &[Name], transformer: T, outputs: u64) -> Result<ContinuityReport, String>
where
    T: Fn(&[Name]) -> Name,
{
    let instrumented: Vec<InstrumentedName> = inputs.iter().map(InstrumentedName::new).collect();
    let views: Vec<Name> = instrumented.iter().map(|i| i.name().clone()).collect();
    let expected = transformer(&views).prefix(outputs);
    let reads: Vec<usize> = instrumented.iter().map(|i| i.log().len()).collect();
    for filler_seed in [0u64, 7] {
        let misses = Arc::new(AtomicU64::new(0));
        let replays: Vec<Name> = instrumented
            .iter()
            .map(|i| i.replay(move |n| Nat::from(n.wrapping_mul(filler_seed) % 5), misses.clone()))
            .collect();
        let got = transformer(&replays).prefix(outputs);
        if got != expected {
            return Err(format!("replayed outputs differ (filler {filler_seed})"));
        }
        let m = misses.load(Ordering::Relaxed);
        if m != 0 {
            return Err(format!("replay read {m} indices outside the logged prefix"));
        }
    }
    Ok(ContinuityReport { reads, outputs_checked: outputs })
}
