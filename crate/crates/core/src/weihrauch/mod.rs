//! Weihrauch reductions as pairs of stream transformers around an oracle slot.
//!
//! A reduction `f ≤ g` is a pre-processor `H` and a post-processor `K`; with any
//! realizer `G` of `g`, `p ↦ K(p, G(H(p)))` realizes `f`. The oracles here are not
//! computable, so every instance carries a finite description of the object behind
//! its name ([`Truth`]), and each reduction knows how to carry that description
//! through `H` so that the target oracle can answer.

pub mod analytic;
pub mod basic;
pub mod catalog;
pub mod instances;
pub mod oracle;
pub mod poly;
pub mod testfn;
pub mod verify;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::names::{Name, RationalComplex};

pub use catalog::{bundled, catalog, check_reduction_continuity, find, manifest, Bundled, CatalogEntry, ManifestEntry, ManifestInstance};
pub use oracle::{oracle_lim, Mode, OracleRealizer, Policy};
pub use verify::verify;

/// The problems that appear as sources or targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Problem {
    /// Closed choice on ℕ: a point of a nonempty set given by its complement.
    ClosedChoice,
    /// Maximum of a bounded enumerated set.
    Max,
    /// Some upper bound of a bounded enumerated set.
    Bound,
    /// Minimum of a stream.
    Min,
    /// 1 on the zero stream, 0 elsewhere.
    Lpo,
    /// Limit of a converging sequence of reals.
    Lim,
    /// Size of the support of a finitely supported stream.
    Count,
    /// Power series of a germ without its advice.
    Sum,
    /// Germ advice of a coefficient sequence.
    AdvGerm,
    /// Analytic advice of a continuous function on the disk.
    AdvAnalytic,
    /// Derivative at 1 of a continuous function that is analytic.
    Diff1,
    /// Degree of a nonzero polynomial.
    Degree,
    /// Monic normalisation of a nonzero polynomial.
    Monic,
    /// Roots of a nonconstant polynomial.
    Zeros,
    /// Degree bound of an analytic function that is a polynomial.
    DegreeBoundAnalytic,
    /// Degree of an analytic function that is a polynomial.
    DegreeAnalytic,
    /// Schwartz function with compact support to a bump name.
    ProjSchwartzToBump,
    /// Smooth function with compact support to a bump name.
    ProjSmoothToBump,
    /// Smooth function with fast decay to a Schwartz name.
    ProjSmoothToSchwartz,
    /// A sequence of closed choice instances.
    ClosedChoiceSeq,
    /// A sequence of bound instances.
    BoundSeq,
    /// Returns its input.
    Identity,
}

impl Problem {
    pub const ALL: [Problem; 22] = [
        Problem::ClosedChoice,
        Problem::Max,
        Problem::Bound,
        Problem::Min,
        Problem::Lpo,
        Problem::Lim,
        Problem::Count,
        Problem::Sum,
        Problem::AdvGerm,
        Problem::AdvAnalytic,
        Problem::Diff1,
        Problem::Degree,
        Problem::Monic,
        Problem::Zeros,
        Problem::DegreeBoundAnalytic,
        Problem::DegreeAnalytic,
        Problem::ProjSchwartzToBump,
        Problem::ProjSmoothToBump,
        Problem::ProjSmoothToSchwartz,
        Problem::ClosedChoiceSeq,
        Problem::BoundSeq,
        Problem::Identity,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Problem::ClosedChoice => "C_N",
            Problem::Max => "max",
            Problem::Bound => "Bound",
            Problem::Min => "min",
            Problem::Lpo => "lpo",
            Problem::Lim => "lim",
            Problem::Count => "Count",
            Problem::Sum => "Sum",
            Problem::AdvGerm => "Adv_germ",
            Problem::AdvAnalytic => "Adv_analytic",
            Problem::Diff1 => "Diff1",
            Problem::Degree => "deg",
            Problem::Monic => "Monic",
            Problem::Zeros => "Zeros",
            Problem::DegreeBoundAnalytic => "Dbnd_analytic",
            Problem::DegreeAnalytic => "deg_analytic",
            Problem::ProjSchwartzToBump => "proj_SD",
            Problem::ProjSmoothToBump => "proj_ED",
            Problem::ProjSmoothToSchwartz => "proj_ES",
            Problem::ClosedChoiceSeq => "C_N^N",
            Problem::BoundSeq => "Bound^N",
            Problem::Identity => "id",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Problem> {
        Problem::ALL.into_iter().find(|p| p.tag() == tag)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

type Member = Arc<dyn Fn(u64) -> bool + Send + Sync>;

/// A nonempty set of valid natural-number answers with two designated members.
///
/// `tight` is the least member when `least` is set; otherwise it is only known to
/// be valid and `contains` may be a sufficient test rather than an exact one.
#[derive(Clone)]
pub struct Choice {
    pub tight: u64,
    pub loose: u64,
    pub least: bool,
    empty: bool,
    member: Member,
}

impl Choice {
    pub fn new<F>(tight: u64, loose: u64, least: bool, member: F) -> Choice
    where
        F: Fn(u64) -> bool + Send + Sync + 'static,
    {
        Choice { tight, loose, least, empty: false, member: Arc::new(member) }
    }

    /// The empty set: oracles report a domain error on it.
    pub fn empty() -> Choice {
        Choice { tight: 0, loose: 0, least: true, empty: true, member: Arc::new(|_| false) }
    }

    /// `{n | n >= min}`.
    pub fn at_least(min: u64) -> Choice {
        Choice::new(min, min + 3, true, move |n| n >= min)
    }

    /// `{n | n >= min}` where `min` is only known to be an element.
    pub fn at_least_valid(min: u64) -> Choice {
        Choice::new(min, min + 1, false, move |n| n >= min)
    }

    pub fn exactly(v: u64) -> Choice {
        Choice::new(v, v, true, move |n| n == v)
    }

    pub fn finite(set: BTreeSet<u64>) -> Choice {
        match (set.first().copied(), set.last().copied()) {
            (Some(lo), Some(hi)) => Choice::new(lo, hi, true, move |n| set.contains(&n)),
            _ => Choice::empty(),
        }
    }

    /// `ℕ` without the listed points.
    pub fn cofinite(excluded: BTreeSet<u64>) -> Choice {
        let tight = (0..).find(|n| !excluded.contains(n)).unwrap();
        let loose = excluded.last().map_or(tight + 1, |m| m + 1).max(tight);
        Choice::new(tight, loose, true, move |n| !excluded.contains(&n))
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, n: u64) -> bool {
        (self.member)(n)
    }

    /// The least member, when known.
    pub fn least(&self) -> Result<u64> {
        if self.empty {
            Err(Error::Domain("empty set".into()))
        } else if self.least {
            Ok(self.tight)
        } else {
            Err(Error::Config("least member of this set is not known".into()))
        }
    }
}

impl fmt::Debug for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return f.write_str("Choice(∅)");
        }
        write!(f, "Choice(tight {}, loose {}, least {})", self.tight, self.loose, self.least)
    }
}

/// Facts about an analytic function on the disk.
#[derive(Clone, Debug)]
pub struct AnalyticTruth {
    /// Valid analytic advices.
    pub advice: Choice,
    pub derivative_at_one: Option<RationalComplex>,
    /// Indices of the nonzero Taylor coefficients of a polynomial.
    pub support: Option<BTreeSet<u64>>,
    /// Exact degree of a polynomial.
    pub degree: Option<u64>,
}

/// Exact coefficients of a polynomial and, when rational, its roots.
#[derive(Clone, Debug)]
pub struct PolyTruth {
    pub coeffs: Vec<RationalComplex>,
    pub roots: Option<Vec<RationalComplex>>,
}

impl PolyTruth {
    pub fn degree(&self) -> Option<u64> {
        crate::polynomials::exact_degree(&self.coeffs)
    }
}

/// Finite description of the object named by an instance input.
#[derive(Clone)]
pub enum Truth {
    Choice(Choice),
    /// An enumerated set.
    Set(BTreeSet<u64>),
    /// An eventually constant stream.
    Stream { prefix: Vec<u64>, tail: u64 },
    /// Valid germ advices of a coefficient sequence.
    Germ(Choice),
    Analytic(AnalyticTruth),
    Poly(PolyTruth),
    /// One choice set per index.
    Choices(Arc<dyn Fn(u64) -> Choice + Send + Sync>),
    /// The columns of a bound sequence; later columns are constantly 0.
    Columns(Vec<Vec<u64>>),
    /// `|x_j - x| <= 2^-n` for `j >= modulus(n)`.
    Limit { modulus: Arc<dyn Fn(u64) -> u64 + Send + Sync> },
    /// Nothing beyond the input itself.
    Plain,
}

impl Truth {
    pub fn kind(&self) -> &'static str {
        match self {
            Truth::Choice(_) => "choice",
            Truth::Set(_) => "set",
            Truth::Stream { .. } => "stream",
            Truth::Germ(_) => "germ",
            Truth::Analytic(_) => "analytic",
            Truth::Poly(_) => "poly",
            Truth::Choices(_) => "choices",
            Truth::Columns(_) => "columns",
            Truth::Limit { .. } => "limit",
            Truth::Plain => "plain",
        }
    }

    /// Value at `n` of a stream truth.
    pub fn stream_at(prefix: &[u64], tail: u64, n: u64) -> u64 {
        prefix.get(n as usize).copied().unwrap_or(tail)
    }

    fn mismatch(&self, want: &str) -> Error {
        Error::Config(format!("expected a {want} truth, got {}", self.kind()))
    }

    pub fn as_choice(&self) -> Result<&Choice> {
        match self {
            Truth::Choice(c) | Truth::Germ(c) => Ok(c),
            other => Err(other.mismatch("choice")),
        }
    }

    pub fn as_set(&self) -> Result<&BTreeSet<u64>> {
        match self {
            Truth::Set(s) => Ok(s),
            other => Err(other.mismatch("set")),
        }
    }

    pub fn as_stream(&self) -> Result<(&[u64], u64)> {
        match self {
            Truth::Stream { prefix, tail } => Ok((prefix, *tail)),
            other => Err(other.mismatch("stream")),
        }
    }

    pub fn as_analytic(&self) -> Result<&AnalyticTruth> {
        match self {
            Truth::Analytic(a) => Ok(a),
            other => Err(other.mismatch("analytic")),
        }
    }

    pub fn as_poly(&self) -> Result<&PolyTruth> {
        match self {
            Truth::Poly(p) => Ok(p),
            other => Err(other.mismatch("poly")),
        }
    }
}

impl fmt::Debug for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truth::Choice(c) | Truth::Germ(c) => write!(f, "{}({c:?})", self.kind()),
            Truth::Set(s) => write!(f, "Set({s:?})"),
            Truth::Stream { prefix, tail } => write!(f, "Stream({prefix:?} then {tail})"),
            Truth::Analytic(a) => write!(f, "{a:?}"),
            Truth::Poly(p) => write!(f, "{p:?}"),
            Truth::Columns(c) => write!(f, "Columns({c:?})"),
            other => f.write_str(other.kind()),
        }
    }
}

/// An input name together with the truth behind it.
#[derive(Clone, Debug)]
pub struct OracleInstance {
    pub label: String,
    pub input: Name,
    pub truth: Truth,
}

impl OracleInstance {
    pub fn new(label: impl Into<String>, input: Name, truth: Truth) -> OracleInstance {
        OracleInstance { label: label.into(), input, truth }
    }
}

type Pre = Arc<dyn Fn(&Name) -> Name + Send + Sync>;
type Post = Arc<dyn Fn(&Name, &Name) -> Name + Send + Sync>;
type TruthMap = Arc<dyn Fn(&Name, &Truth) -> Result<Truth> + Send + Sync>;

/// `source ≤ target` via `p ↦ K(p, G(H(p)))`.
#[derive(Clone)]
pub struct Reduction {
    pub id: String,
    pub source: Problem,
    pub target: Problem,
    /// What the reduction demonstrates, in words.
    pub anchor: String,
    /// Output entries of `H` and `K` inspected by the continuity harness.
    pub probe: u64,
    h: Pre,
    k: Post,
    truth: TruthMap,
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reduction({}: {} ≤ {})", self.id, self.source, self.target)
    }
}

impl Reduction {
    /// `truth` maps the truth of a source instance `p` to the truth of `H(p)`.
    pub fn new<H, K, T>(id: &str, source: Problem, target: Problem, anchor: &str, h: H, k: K, truth: T) -> Reduction
    where
        H: Fn(&Name) -> Name + Send + Sync + 'static,
        K: Fn(&Name, &Name) -> Name + Send + Sync + 'static,
        T: Fn(&Name, &Truth) -> Result<Truth> + Send + Sync + 'static,
    {
        Reduction {
            id: id.into(),
            source,
            target,
            anchor: anchor.into(),
            probe: 6,
            h: Arc::new(h),
            k: Arc::new(k),
            truth: Arc::new(truth),
        }
    }

    pub fn named(mut self, id: &str) -> Reduction {
        self.id = id.into();
        self
    }

    pub fn with_probe(mut self, probe: u64) -> Reduction {
        self.probe = probe;
        self
    }

    pub fn identity(problem: Problem) -> Reduction {
        Reduction::new(
            &format!("identity_{}", problem.tag()),
            problem,
            problem,
            "reflexivity",
            |p| p.clone(),
            |_, q| q.clone(),
            |_, t| Ok(t.clone()),
        )
    }

    pub fn pre(&self, p: &Name) -> Name {
        (self.h)(p)
    }

    pub fn post(&self, p: &Name, answer: &Name) -> Name {
        (self.k)(p, answer)
    }

    pub fn map_truth(&self, p: &Name, t: &Truth) -> Result<Truth> {
        (self.truth)(p, t)
    }
}

/// `K(p, G(H(p)))`.
pub fn apply_reduction(r: &Reduction, g: &OracleRealizer, inst: &OracleInstance) -> Result<Name> {
    if g.problem != r.target {
        return Err(Error::Config(format!("reduction {} needs a {} oracle, got {}", r.id, r.target, g.problem)));
    }
    let hp = r.pre(&inst.input);
    let t = r.map_truth(&inst.input, &inst.truth)?;
    let answer = g.answer(&hp, &t)?;
    Ok(r.post(&inst.input, &answer))
}

/// [`apply_reduction`] followed by the source problem's verifier.
pub fn apply_verified(r: &Reduction, g: &OracleRealizer, inst: &OracleInstance) -> Result<Name> {
    let out = apply_reduction(r, g, inst)?;
    verify(r.source, &inst.input, &inst.truth, &out).map_err(Error::Verification)?;
    Ok(out)
}

/// `f ≤ g` and `g ≤ h` give `f ≤ h`, with `r2` inlined in the oracle slot of `r1`.
pub fn compose(r1: &Reduction, r2: &Reduction) -> Result<Reduction> {
    if r1.target != r2.source {
        return Err(Error::Config(format!("cannot compose {} (target {}) with {} (source {})", r1.id, r1.target, r2.id, r2.source)));
    }
    let (h1, h2) = (r1.h.clone(), r2.h.clone());
    let (k1, k2, h1k) = (r1.k.clone(), r2.k.clone(), r1.h.clone());
    let (t1, t2, h1t) = (r1.truth.clone(), r2.truth.clone(), r1.h.clone());
    Ok(Reduction {
        id: format!("{}+{}", r1.id, r2.id),
        source: r1.source,
        target: r2.target,
        anchor: format!("{}; {}", r1.anchor, r2.anchor),
        probe: r1.probe.min(r2.probe),
        h: Arc::new(move |p| h2(&h1(p))),
        k: Arc::new(move |p, a| k1(p, &k2(&h1k(p), a))),
        truth: Arc::new(move |p, t| t2(&h1t(p), &t1(p, t)?)),
    })
}
