//! Oracle realizers: answer names computed from an input name and its truth.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::names::pairing::to_u64;
use crate::names::{project, Name, RationalComplex};
use crate::numeric::{Dyadic, Interval, IntervalC};
use crate::polynomials::{PolyName, TupleName};
use crate::spaces::{real_eval, MetricName, Space};
use crate::testfns::{BumpName, SchwartzName, SmoothName};

use super::{Choice, Problem, Truth};

/// Which valid answer an exact oracle gives when several are valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    Tight,
    Loose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Answer from the truth.
    Exact(Policy),
    /// Answer from the first `fuel` entries of the input for the discrete problems
    /// (closed choice, max, Bound, min, lpo, Count and their sequences); other
    /// problems answer exactly.
    Fuel(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleRealizer {
    pub problem: Problem,
    pub mode: Mode,
}

impl OracleRealizer {
    pub fn exact(problem: Problem) -> OracleRealizer {
        OracleRealizer { problem, mode: Mode::Exact(Policy::Tight) }
    }

    pub fn with_policy(problem: Problem, policy: Policy) -> OracleRealizer {
        OracleRealizer { problem, mode: Mode::Exact(policy) }
    }

    pub fn fuel(problem: Problem, fuel: u64) -> OracleRealizer {
        OracleRealizer { problem, mode: Mode::Fuel(fuel) }
    }

    fn pick(&self, c: &Choice) -> Result<u64> {
        if c.is_empty() {
            return Err(Error::Domain(format!("{} instance has no valid answer", self.problem)));
        }
        Ok(match self.mode {
            Mode::Exact(Policy::Loose) => c.loose,
            _ => c.tight,
        })
    }

    /// The answer name for `input`, whose truth is `truth`.
    pub fn answer(&self, input: &Name, truth: &Truth) -> Result<Name> {
        if let Mode::Fuel(fuel) = self.mode {
            if let Some(v) = self.fuel_answer(input, fuel) {
                return Ok(v);
            }
        }
        let loose = self.mode == Mode::Exact(Policy::Loose);
        let constant = |v: u64| Ok(Name::constant(v));
        match self.problem {
            Problem::Identity => Ok(input.clone()),
            Problem::ClosedChoice | Problem::AdvGerm => constant(self.pick(truth.as_choice()?)?),
            Problem::Max | Problem::Bound => {
                let set = truth.as_set()?;
                let max = set.last().copied().unwrap_or(0);
                let slack = if loose && self.problem == Problem::Bound { 3 } else { 0 };
                constant(max + slack)
            }
            Problem::Count => {
                let (prefix, tail) = truth.as_stream()?;
                if tail != 0 {
                    return Err(Error::Domain("Count needs a finitely supported stream".into()));
                }
                constant(prefix.iter().filter(|&&v| v > 0).count() as u64)
            }
            Problem::Min => match truth {
                Truth::Stream { prefix, tail } => constant(prefix.iter().copied().chain([*tail]).min().unwrap()),
                Truth::Choice(c) => constant(self.pick(c)?),
                other => Err(Error::Config(format!("min needs a stream truth, got {}", other.kind()))),
            },
            Problem::Lpo => {
                let (prefix, tail) = truth.as_stream()?;
                constant(u64::from(tail == 0 && prefix.iter().all(|&v| v == 0)))
            }
            Problem::Lim => {
                let Truth::Limit { modulus } = truth else {
                    return Err(Error::Config(format!("lim needs a limit truth, got {}", truth.kind())));
                };
                let (p, modulus) = (input.clone(), modulus.clone());
                Ok(MetricName::real_from_dyadics(move |n| {
                    let x = MetricName::new(Space::Real, project(&p, modulus(n + 2)));
                    real_eval(&x, n + 2).re.mid()
                })
                .name)
            }
            Problem::Sum => {
                let advice = self.pick(truth.as_choice()?)?;
                Ok(crate::analytic::sum_germ_name(&Name::cons(advice, input)).shift(1))
            }
            Problem::AdvAnalytic => constant(self.pick(&truth.as_analytic()?.advice)?),
            Problem::Diff1 => {
                let a = truth.as_analytic()?;
                let d = a.derivative_at_one.clone().ok_or_else(|| Error::Config("derivative at 1 not recorded".into()))?;
                Ok(MetricName::complex_rational(&d).name)
            }
            Problem::DegreeBoundAnalytic | Problem::DegreeAnalytic => {
                let a = truth.as_analytic()?;
                let d = a.degree.ok_or_else(|| Error::Domain("not a polynomial".into()))?;
                let slack = if loose && self.problem == Problem::DegreeBoundAnalytic { 2 } else { 0 };
                constant(d + slack)
            }
            Problem::Degree => {
                let d = truth.as_poly()?.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
                constant(d)
            }
            Problem::Monic => {
                let p = truth.as_poly()?;
                let d = p.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
                let lead = p.coeffs[d as usize].clone();
                let inv = complex_inverse(&lead);
                let coeffs = p.coeffs[..=d as usize].iter().map(|c| c.mul(&inv)).collect();
                Ok(PolyName::exact(coeffs, d).0)
            }
            Problem::Zeros => {
                let p = truth.as_poly()?;
                let roots = p.roots.clone().ok_or_else(|| Error::Config("roots not recorded".into()))?;
                if p.degree().is_none() {
                    return Err(Error::Domain("zero polynomial".into()));
                }
                Ok(TupleName::exact(roots).0)
            }
            Problem::ProjSchwartzToBump => {
                let k = self.pick(truth.as_choice()?)?;
                Ok(BumpName::from_parts(k, &SchwartzName(input.clone()).smooth()).0)
            }
            Problem::ProjSmoothToBump => {
                let k = self.pick(truth.as_choice()?)?;
                Ok(BumpName::from_parts(k, &SmoothName(input.clone())).0)
            }
            Problem::ProjSmoothToSchwartz => {
                let seq = self.choices(truth)?;
                Ok(SchwartzName::from_parts(seq, &SmoothName(input.clone())).0)
            }
            Problem::ClosedChoiceSeq => self.choices(truth),
            Problem::BoundSeq => {
                let Truth::Columns(cols) = truth else {
                    return Err(Error::Config(format!("Bound^N needs a columns truth, got {}", truth.kind())));
                };
                let cols = cols.clone();
                let slack = u64::from(loose);
                Ok(Name::from_u64_fn(move |k| cols.get(k as usize).and_then(|c| c.iter().max()).copied().unwrap_or(0) + slack))
            }
        }
    }

    /// `n ↦` the answer for the `n`-th choice set.
    fn choices(&self, truth: &Truth) -> Result<Name> {
        let Truth::Choices(seq) = truth else {
            return Err(Error::Config(format!("{} needs a choice sequence, got {}", self.problem, truth.kind())));
        };
        let (seq, me) = (seq.clone(), *self);
        Ok(Name::from_u64_fn(move |n| me.pick(&seq(n)).expect("empty choice set in a sequence")))
    }

    fn fuel_answer(&self, input: &Name, fuel: u64) -> Option<Name> {
        let v = match self.problem {
            Problem::ClosedChoice => least_unexcluded(input, fuel),
            Problem::Max | Problem::Bound => (0..fuel).filter_map(|n| input.query_u64(n).checked_sub(1)).max().unwrap_or(0),
            Problem::Min => (0..fuel.max(1)).map(|n| input.query_u64(n)).min().unwrap(),
            Problem::Lpo => u64::from((0..fuel).all(|n| input.query_u64(n) == 0)),
            Problem::Count => (0..fuel).filter(|&n| input.query_u64(n) > 0).count() as u64,
            Problem::ClosedChoiceSeq => {
                let p = input.clone();
                return Some(Name::from_u64_fn(move |k| least_unexcluded(&project(&p, k), fuel)));
            }
            _ => return None,
        };
        Some(Name::constant(v))
    }
}

/// Least value not excluded by the first `steps` entries of a closed-set name.
pub fn least_unexcluded(p: &Name, steps: u64) -> u64 {
    let out: BTreeSet<u64> = (0..steps).filter_map(|n| p.query_u64(n).checked_sub(1)).collect();
    (0..).find(|k| !out.contains(k)).unwrap()
}

fn complex_inverse(z: &RationalComplex) -> RationalComplex {
    let n = z.norm_sqr();
    RationalComplex::new(&z.re / &n, -&z.im / &n)
}

/// `lim`: an enclosure of the limit of width at most `2^-(n-1)`. In fuel mode the
/// `(fuel · (n+1))`-th term is read instead of the one the modulus prescribes.
pub fn oracle_lim(g: &OracleRealizer, input: &Name, truth: &Truth, n: u64) -> Result<IntervalC> {
    let j = match (g.mode, truth) {
        (Mode::Fuel(fuel), _) => fuel * (n + 1),
        (_, Truth::Limit { modulus }) => modulus(n + 1),
        (_, other) => return Err(Error::Config(format!("lim needs a limit truth, got {}", other.kind()))),
    };
    let x = MetricName::new(Space::Real, project(input, j));
    let v = real_eval(&x, n + 1);
    let r = Dyadic::pow2(-(n as i64) - 1);
    Ok(IntervalC::new(&v.re + &Interval::ball0(r), v.im))
}

/// Natural-number answer carried by a constant answer name.
pub fn read_nat(answer: &Name) -> u64 {
    to_u64(&answer.query(0))
}
