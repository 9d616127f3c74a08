//! Ground-truth checks of answer names.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::analytic::germ_tail;
use crate::names::{project, Name, RationalComplex};
use crate::numeric::Dyadic;
use crate::polynomials::{PolyName, TupleName};
use crate::spaces::{cont_eval, MetricName, Space};
use crate::testfns::{BumpName, SchwartzName, SmoothName};

use super::oracle::read_nat;
use super::{Choice, Problem, Truth};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok { Ok(()) } else { Err(msg()) }
}

fn member(c: &Choice, v: u64, what: &str) -> Check {
    ensure(c.contains(v), || format!("{what} {v} is not a valid answer ({c:?})"))
}

fn close(a: &RationalComplex, b: &RationalComplex, exp: i64) -> bool {
    let t = Dyadic::pow2(exp).to_rational();
    let d = a.sub(b);
    d.re.abs() <= t && d.im.abs() <= t
}

fn same_smooth(a: &SmoothName, b: &SmoothName) -> Check {
    ensure((0..4).all(|k| a.0.query(k) == b.0.query(k)), || "the smooth part was changed".into())
}

/// Whether `answer` is a valid answer of `problem` on `input`, whose truth is `truth`.
pub fn verify(problem: Problem, input: &Name, truth: &Truth, answer: &Name) -> Check {
    let err = |e: crate::error::Error| e.to_string();
    match problem {
        Problem::Identity => ensure(answer.prefix(20) == input.prefix(20), || "identity changed the name".into()),
        Problem::ClosedChoice => member(truth.as_choice().map_err(err)?, read_nat(answer), "choice"),
        Problem::AdvGerm => member(truth.as_choice().map_err(err)?, read_nat(answer), "germ advice"),
        Problem::AdvAnalytic => member(&truth.as_analytic().map_err(err)?.advice, read_nat(answer), "analytic advice"),
        Problem::Max | Problem::Bound => {
            let max = truth.as_set().map_err(err)?.last().copied().unwrap_or(0);
            let v = read_nat(answer);
            if problem == Problem::Max {
                ensure(v == max, || format!("max is {max}, got {v}"))
            } else {
                ensure(v >= max, || format!("{v} is below the element {max}"))
            }
        }
        Problem::Count | Problem::Min | Problem::Lpo => {
            let v = read_nat(answer);
            let want = match (problem, truth) {
                (Problem::Min, Truth::Choice(c)) => c.tight,
                (_, Truth::Stream { prefix, tail }) => match problem {
                    Problem::Count => prefix.iter().filter(|&&x| x > 0).count() as u64,
                    Problem::Min => prefix.iter().copied().chain([*tail]).min().unwrap(),
                    _ => u64::from(*tail == 0 && prefix.iter().all(|&x| x == 0)),
                },
                (_, other) => return Err(format!("{problem} cannot be checked against a {} truth", other.kind())),
            };
            ensure(v == want, || format!("{problem} is {want}, got {v}"))
        }
        Problem::Sum => verify_sum(input, truth.as_choice().map_err(err)?.tight, answer),
        Problem::Diff1 => {
            let want = truth.as_analytic().map_err(err)?.derivative_at_one.clone().ok_or("derivative not recorded")?;
            let got = MetricName::new(Space::Complex, answer.clone()).center(10);
            ensure(close(&got, &want, -9), || format!("derivative {want} but the answer is near {got}"))
        }
        Problem::Degree | Problem::DegreeAnalytic | Problem::DegreeBoundAnalytic => {
            let d = super::poly::truth_degree(truth).map_err(err)?;
            let v = read_nat(answer);
            if problem == Problem::DegreeBoundAnalytic {
                ensure(v >= d, || format!("{v} is below the degree {d}"))
            } else {
                ensure(v == d, || format!("degree is {d}, got {v}"))
            }
        }
        Problem::Monic => {
            let p = truth.as_poly().map_err(err)?;
            let d = p.degree().ok_or("zero polynomial")? as usize;
            let lead = p.coeffs[d].clone();
            let q = PolyName(answer.clone());
            for k in 0..=q.bound().max(d as u64) as usize {
                let want = if k <= d { div(&p.coeffs[k], &lead) } else { RationalComplex::zero() };
                let got = q.coeff(k as u64, 12);
                ensure(close(&got, &want, -11), || format!("monic coefficient {k} is {want}, got {got}"))?;
            }
            Ok(())
        }
        Problem::Zeros => {
            let p = truth.as_poly().map_err(err)?;
            let mut want = p.roots.clone().ok_or("roots not recorded")?;
            let t = TupleName(answer.clone());
            ensure(t.len() == want.len() as u64, || format!("{} roots, got {}", want.len(), t.len()))?;
            for i in 0..t.len() {
                let got = t.entry(i, 12);
                let j = want.iter().position(|w| close(&got, w, -10)).ok_or_else(|| format!("no root near {got}"))?;
                want.remove(j);
            }
            Ok(())
        }
        Problem::ProjSchwartzToBump | Problem::ProjSmoothToBump => {
            let b = BumpName(answer.clone());
            member(truth.as_choice().map_err(err)?, b.support_bound(), "support bound")?;
            let smooth = if problem == Problem::ProjSchwartzToBump { SchwartzName(input.clone()).smooth() } else { SmoothName(input.clone()) };
            same_smooth(&b.smooth(), &smooth)
        }
        Problem::ProjSmoothToSchwartz => {
            let Truth::Choices(seq) = truth else { return Err("decay witnesses need a choice sequence".into()) };
            let s = SchwartzName(answer.clone());
            for n in 0..2 {
                member(&seq(n), s.decay(n), &format!("decay witness at level {n}"))?;
            }
            same_smooth(&s.smooth(), &SmoothName(input.clone()))
        }
        Problem::ClosedChoiceSeq => {
            let Truth::Choices(seq) = truth else { return Err("needs a choice sequence".into()) };
            (0..3).try_for_each(|n| member(&seq(n), answer.query_u64(n), &format!("choice {n}")))
        }
        Problem::BoundSeq => {
            let Truth::Columns(cols) = truth else { return Err("needs columns".into()) };
            for k in 0..cols.len() as u64 + 1 {
                let max = cols.get(k as usize).and_then(|c| c.iter().max()).copied().unwrap_or(0);
                let v = answer.query_u64(k);
                ensure(v >= max, || format!("column {k} reaches {max}, bound {v}"))?;
            }
            Ok(())
        }
        Problem::Lim => {
            let Truth::Limit { modulus } = truth else { return Err("needs a limit truth".into()) };
            let got = MetricName::new(Space::Real, answer.clone());
            for n in 0..8 {
                let x = MetricName::new(Space::Real, project(input, modulus(n + 2)));
                ensure(close(&got.center(n), &x.center(n + 2), -(n as i64)), || format!("limit approximation {n} is off"))?;
            }
            Ok(())
        }
    }
}

fn div(a: &RationalComplex, b: &RationalComplex) -> RationalComplex {
    let n = b.norm_sqr();
    a.mul(&RationalComplex::new(&b.re / &n, -&b.im / &n))
}

/// Compares the answer at `z = 1/2` with a partial sum of the input coefficients,
/// whose tail is bounded through the advice.
fn verify_sum(input: &Name, advice: u64, answer: &Name) -> Check {
    let prec = 12u64;
    let k_max = (1..).find(|&k| germ_tail(advice, k) <= Dyadic::pow2(-(prec as i64))).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let mut sum = RationalComplex::zero();
    let mut pow = BigRational::from_integer(1.into());
    for k in 0..k_max {
        let c = RationalComplex::at(&input.query(crate::names::pair(k, prec + 2)));
        sum = sum.add(&c.scale(&pow));
        pow *= &half;
    }
    let f = MetricName::new(Space::Disk, answer.clone());
    let v = cont_eval(&f, &MetricName::complex_rational(&RationalComplex::real(half)), prec);
    let (re, im) = v.mid();
    let got = RationalComplex::new(re.to_rational(), im.to_rational());
    ensure(close(&got, &sum, -(prec as i64) + 2), || {
        format!("sum at 1/2 is near {}, got {}", sum.re.to_f64().unwrap_or(f64::NAN), got.re.to_f64().unwrap_or(f64::NAN))
    })
}
