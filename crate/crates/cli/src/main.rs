//! `wlab`: evaluate operations at a requested precision, run catalog reductions and
//! emit validity reports.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use wlab_core::analytic::{diff_analytic, eval_analytic, germ_of_analytic_name, sum_advice, sum_germ, GermName};
use wlab_core::error::Error;
use wlab_core::names::{Name, RationalComplex};
use wlab_core::numeric::{Dyadic, Interval, IntervalC};
use wlab_core::polynomials::{zeros_monic, PolyName};
use wlab_core::spaces::{pi_name, validate_function, validate_point, MetricName, ValidityEntry};
use wlab_core::testfns::bumppoly::{bump_poly, degree};
use wlab_core::testfns::{bump_of_family, check_decay_at_samples, check_slices_at_samples, eval_smooth_derivative, include_d_to_s, schwartz_seminorm, smooth_seminorm, Family};
use wlab_core::weihrauch::oracle::read_nat;
use wlab_core::weihrauch::{apply_reduction, bundled, find, manifest, verify, OracleInstance, OracleRealizer, PolyTruth, Problem, Truth};

use output::{complex_json, complex_text, interval_text, row, Format, Report};

const DEFAULT_PRECISION: u64 = 20;

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Malformed arguments or unknown names: exit code 1.
    Usage(String),
    /// A computed result failed its check: exit code 2.
    Check(String),
}

fn core(e: Error) -> Failure {
    match e {
        Error::Config(_) | Error::Invalid(_) => Failure::Usage(e.to_string()),
        _ => Failure::Check(e.to_string()),
    }
}

#[derive(Parser)]
#[command(name = "wlab", version, about = "Computable analysis workbench: rigorous enclosures and runnable Weihrauch reductions")]
struct Cli {
    /// Output precision n (enclosures of width 2^-n); falls back to WLAB_DEFAULT_PRECISION.
    #[arg(long, global = true)]
    precision: Option<u64>,
    /// Catalog instance, by key or position.
    #[arg(long, global = true)]
    instance: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Run discrete oracles on the first F input entries instead of exactly.
    #[arg(long, global = true)]
    fuel: Option<u64>,
    /// JSON literal: a polynomial, a family descriptor or a name literal, depending on the verb.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an analytic function at a point of the closed unit disk.
    Eval {
        #[arg(long = "fn")]
        func: Option<String>,
        /// `re` or `re,im` with rational parts.
        #[arg(long, default_value = "0")]
        at: String,
    },
    /// Taylor coefficients a_0..a_k recovered from the function's values on the disk.
    Germ {
        #[arg(long = "fn")]
        func: Option<String>,
        #[arg(long, default_value_t = 10)]
        k: u64,
    },
    /// Sum a germ (coefficients with advice) and evaluate the sum.
    Sum {
        #[arg(long)]
        germ: String,
        #[arg(long, default_value = "0")]
        at: String,
    },
    /// Evaluate the derivative of an analytic function.
    Diff {
        #[arg(long = "fn")]
        func: Option<String>,
        #[arg(long, default_value = "1")]
        at: String,
    },
    /// Certified roots of a polynomial, normalised to be monic.
    Zeros,
    /// Degree of a polynomial through the minimum oracle.
    Deg,
    /// Derivatives of a bump family, or the coefficients of p_n with --poly.
    Bump {
        #[arg(long, default_value = "0")]
        shift: String,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long, default_value = "1/2")]
        at: String,
        #[arg(long)]
        poly: Option<u64>,
    },
    /// Schwartz seminorm sup |x^d f^(m)|, or sup over [-N, N] of |f^(m)| with --bound.
    Seminorm {
        #[arg(long, default_value = "0")]
        shift: String,
        #[arg(long, default_value_t = 0)]
        d: u64,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Check a constructed name against ground truth up to a depth.
    Validate {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 3)]
        depth: u64,
    },
    /// Run a catalog reduction on one instance and verify the answer.
    Reduce { id: String },
    /// List the catalog and the named objects the other verbs accept.
    List,
}

fn precision(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var("WLAB_DEFAULT_PRECISION") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("WLAB_DEFAULT_PRECISION must be a natural number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn point(z: &RationalComplex) -> Result<MetricName, Failure> {
    if z.norm_sqr() > BigRational::from_integer(1.into()) {
        return Err(Failure::Usage("the point must lie in the closed unit disk".into()));
    }
    Ok(MetricName::complex_rational(z))
}

fn widen(z: &IntervalC, exp: i64) -> IntervalC {
    z + &IntervalC::around(Dyadic::zero(), Dyadic::zero(), Dyadic::pow2(exp))
}

/// Enclosures at precisions 0..=n, as CSV rows of the real part.
fn ladder(n: u64, f: impl Fn(u64) -> IntervalC) -> Vec<output::Row> {
    (0..=n).map(|j| row(j, &f(j).re)).collect()
}

/// Report on an enclosure that must have width at most `2^-n`.
fn enclosure_report(what: &str, v: &IntervalC, n: u64, extra: Value) -> (Report, bool) {
    let ok = v.width() <= Dyadic::pow2(-(n as i64));
    let mut r = Report::new(json!({ "value": complex_json(v), "precision": n, "within_precision": ok, "input": extra }));
    r.line(format!("{what} in {}", complex_text(v)));
    if !ok {
        r.line(format!("width {} exceeds 2^-{n}", v.width().to_f64()));
    }
    (r, ok)
}

fn eval(func: Option<&str>, file: Option<&std::path::Path>, at: &str, n: u64, format: Format) -> Result<(Report, bool), Failure> {
    let f = input::function(func, file)?;
    let z = point(&input::complex_arg(at)?)?;
    let label = func.unwrap_or("f");
    let (mut r, ok) = enclosure_report(&format!("{label}({at})"), &eval_analytic(&f, &z, n), n, json!({ "fn": label, "at": at }));
    if format == Format::Csv {
        r = r.series(ladder(n, |j| eval_analytic(&f, &z, j)));
    }
    Ok((r, ok))
}

fn germ(func: Option<&str>, file: Option<&std::path::Path>, k: u64, n: u64) -> Result<(Report, bool), Failure> {
    let f = input::function(func, file)?;
    let g = GermName(germ_of_analytic_name(&f.0));
    let mut rows = Vec::new();
    let mut coeffs = Vec::new();
    let mut r = Report::new(Value::Null);
    r.line(format!("advice {}", g.advice()));
    for i in 0..=k {
        let v = widen(&g.coeff(i, n + 2).enclose(n + 8), -(n as i64) - 2);
        r.line(format!("a_{i} in {}", complex_text(&v)));
        rows.push(row(i, &v.re));
        coeffs.push(json!({ "k": i, "value": complex_json(&v) }));
    }
    r.json = json!({ "fn": func.unwrap_or("f"), "advice": g.advice(), "precision": n, "coefficients": coeffs });
    Ok((r.series(rows), true))
}

fn sum(key: &str, at: &str, n: u64, format: Format) -> Result<(Report, bool), Failure> {
    let g = input::germ(key)?;
    let f = sum_germ(&g).map_err(core)?;
    let z = point(&input::complex_arg(at)?)?;
    let (mut r, ok) = enclosure_report(&format!("sum of {key} at {at}"), &eval_analytic(&f, &z, n), n, json!({ "germ": key, "at": at }));
    r.text.insert(0, format!("germ advice {}, analytic advice {}", g.advice(), sum_advice(g.advice())));
    r.json["germ_advice"] = json!(g.advice());
    r.json["analytic_advice"] = json!(f.advice());
    if format == Format::Csv {
        r = r.series(ladder(n, |j| eval_analytic(&f, &z, j)));
    }
    Ok((r, ok))
}

fn diff(func: Option<&str>, file: Option<&std::path::Path>, at: &str, n: u64, format: Format) -> Result<(Report, bool), Failure> {
    let d = diff_analytic(&input::function(func, file)?);
    let z = point(&input::complex_arg(at)?)?;
    let label = func.unwrap_or("f");
    let (mut r, ok) = enclosure_report(&format!("{label}'({at})"), &eval_analytic(&d, &z, n), n, json!({ "fn": label, "at": at }));
    if format == Format::Csv {
        r = r.series(ladder(n, |j| eval_analytic(&d, &z, j)));
    }
    Ok((r, ok))
}

/// A catalog instance of `problem` selected by key or position.
fn pick(problem: Problem, key: &str) -> Result<OracleInstance, Failure> {
    let mut all = bundled(problem);
    let keys: Vec<String> = all.iter().map(|b| b.key.clone()).collect();
    let pos = key.parse::<usize>().ok().filter(|&i| i < all.len()).or_else(|| keys.iter().position(|k| k == key));
    match pos {
        Some(i) => Ok(all.swap_remove(i).instance),
        None => Err(Failure::Usage(format!("unknown instance {key:?}; known: {}", keys.join(", ")))),
    }
}

/// Exact coefficients, degree bound and known roots, from `--file` or `--instance`.
fn poly_input(cli: &Cli, problem: Problem) -> Result<(Vec<RationalComplex>, u64, Option<Vec<RationalComplex>>, String), Failure> {
    if let Some(path) = &cli.file {
        let (c, b) = input::polynomial(path)?;
        return Ok((c, b, None, path.display().to_string()));
    }
    let key = cli.instance.as_deref().ok_or_else(|| Failure::Usage("give --instance <key> or --file <polynomial.json>".into()))?;
    let inst = pick(problem, key)?;
    let t = inst.truth.as_poly().map_err(core)?;
    Ok((t.coeffs.clone(), PolyName(inst.input.clone()).bound(), t.roots.clone(), key.to_string()))
}

fn inverse(c: &RationalComplex) -> RationalComplex {
    c.conj().scale(&(BigRational::from_integer(1.into()) / c.norm_sqr()))
}

fn zeros(cli: &Cli, n: u64) -> Result<(Report, bool), Failure> {
    let (coeffs, _, roots, source) = poly_input(cli, Problem::Zeros)?;
    let d = coeffs.iter().rposition(|c| !c.is_zero()).filter(|&d| d > 0).ok_or_else(|| Failure::Usage("need a nonconstant polynomial".into()))?;
    let inv = inverse(&coeffs[d]);
    let monic: Vec<RationalComplex> = coeffs[..=d].iter().map(|c| c.mul(&inv)).collect();
    let z = zeros_monic(&PolyName::exact(monic, d as u64)).map_err(core)?;
    let mut clusters = z.clusters(n);
    clusters.dedup();
    let mut r = Report::new(Value::Null);
    r.line(format!("degree {d}"));
    let mut boxes = Vec::new();
    for (i, c) in clusters.iter().enumerate() {
        let e = c.enclosure();
        r.line(format!("root {i}: {} (multiplicity {})", complex_text(&e), c.multiplicity));
        boxes.push(json!({ "value": complex_json(&e), "multiplicity": c.multiplicity }));
    }
    let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
    let mut problems = Vec::new();
    if total != d {
        problems.push(format!("multiplicities sum to {total}, not {d}"));
    }
    for root in roots.iter().flatten() {
        if !clusters.iter().any(|c| c.enclosure().contains_rational(&root.re, &root.im)) {
            problems.push(format!("known root {} + {}i lies in no disk", root.re, root.im));
        }
    }
    let certificate = z.report(n).certificate;
    let ok = problems.is_empty();
    r.line(if ok { "certified".to_string() } else { format!("check failed: {}", problems.join("; ")) });
    r.json = json!({ "input": source, "degree": d, "precision": n, "roots": boxes, "certificate": certificate, "verified": ok, "problems": problems });
    Ok((r, ok))
}

fn oracle(cli: &Cli, problem: Problem) -> (OracleRealizer, Value) {
    match cli.fuel {
        Some(f) => (OracleRealizer::fuel(problem, f), json!({ "fuel": f })),
        None => (OracleRealizer::exact(problem), json!("exact")),
    }
}

fn deg(cli: &Cli) -> Result<(Report, bool), Failure> {
    let (coeffs, bound, _, source) = poly_input(cli, Problem::Degree)?;
    let inst = OracleInstance::new(source.clone(), PolyName::exact(coeffs.clone(), bound).0, Truth::Poly(PolyTruth { coeffs, roots: None }));
    let r = find("deg_le_min").expect("catalog entry").reduction;
    let (g, how) = oracle(cli, r.target);
    let out = apply_reduction(&r, &g, &inst).map_err(core)?;
    let d = read_nat(&out);
    let check = verify(Problem::Degree, &inst.input, &inst.truth, &out);
    let mut rep = Report::new(json!({ "input": source, "degree_bound": bound, "degree": d, "oracle": how, "verified": check.is_ok(), "error": check.as_ref().err() }));
    rep.line(format!("degree bound {bound}"));
    rep.line(match &check {
        Ok(()) => format!("degree: {d}, verified"),
        Err(e) => format!("degree: {d}, verification failed: {e}"),
    });
    Ok((rep, check.is_ok()))
}

fn bump(cli: &Cli, shift: &str, m: u64, at: &str, poly: Option<u64>, n: u64) -> Result<(Report, bool), Failure> {
    if let Some(k) = poly {
        let p = bump_poly(k);
        let coeffs: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        let mut r = Report::new(json!({ "n": k, "degree": degree(&p), "coefficients": coeffs }));
        r.line(format!("p_{k}: degree {}", degree(&p)));
        r.line(format!("coefficients (constant first): {}", coeffs.join(" ")));
        return Ok((r, true));
    }
    let f = input::family(shift, cli.file.as_deref())?;
    let x = input::rational_arg(at)?;
    let mut r = Report::new(Value::Null);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for k in 0..=m {
        let v = f.derivative_at(k, &x, n + 8);
        r.line(format!("f^({k})({at}) in {}", interval_text(&v)));
        rows.push(row(k, &v));
        values.push(json!({ "order": k, "value": output::bounds(&v) }));
    }
    r.json = json!({ "at": at, "precision": n, "support_bound": f.support_bound(), "derivatives": values });
    Ok((r.series(rows), true))
}

fn seminorm(cli: &Cli, shift: &str, d: u64, m: u64, bound: Option<u64>, n: u64) -> Result<(Report, bool), Failure> {
    let f = input::family(shift, cli.file.as_deref())?;
    let (what, v) = match bound {
        Some(nb) => (format!("sup over [-{nb}, {nb}] of |f^({m})|"), smooth_seminorm(&f, nb, m, n)),
        None => (format!("sup |x^{d} f^({m})|"), schwartz_seminorm(&f, d, m, n)),
    };
    let mut r = Report::new(json!({ "d": d, "m": m, "bound": bound, "precision": n, "value": output::bounds(&v) }));
    r.line(format!("{what} in {}", interval_text(&v)));
    Ok((r.series(vec![row(0, &v)]), true))
}

fn entry_line(e: &ValidityEntry) -> String {
    let [[a, b], [c, d]] = e.interval;
    let im = if c == 0.0 && d == 0.0 { String::new() } else { format!(" + i [{c}, {d}]") };
    format!("n = {}: [{a}, {b}]{im} {}", e.claimed_precision, if e.contains_truth { "ok" } else { "MISSES TRUTH" })
}

fn entry(n: u64, v: &IntervalC, contains_truth: bool) -> ValidityEntry {
    let (re, im) = (output::bounds(&v.re), output::bounds(&v.im));
    ValidityEntry { index: n, claimed_precision: n, interval: [re, im], contains_truth }
}

/// Name checks of a bump family: values, support bound, smooth slices and decay.
fn validate_bump(f: &Family, depth: u64) -> (Vec<ValidityEntry>, Vec<(String, Result<(), String>)>) {
    let name = bump_of_family(f.clone());
    let smooth = name.smooth();
    let (lo, hi) = f.support_hull().unwrap_or((BigRational::from_integer(0.into()), BigRational::from_integer(0.into())));
    let x = (&lo + &hi) / BigRational::from_integer(2.into()) + BigRational::new(1.into(), 3.into());
    let entries = (0..depth)
        .map(|n| {
            let v = eval_smooth_derivative(&smooth, 0, &MetricName::real_rational(&x), n);
            let truth = f.derivative_at(0, &x, n + 40);
            entry(n, &v, v.re.intersects(&truth))
        })
        .collect();
    let k = name.support_bound();
    let kq = BigRational::from_integer(k.into());
    let support = if lo.abs() > kq || hi.abs() > kq {
        Err(format!("support [{lo}, {hi}] exceeds the bound {k}"))
    } else {
        (0..8)
            .map(|j| kq.clone() + BigRational::new(j.into(), 4.into()))
            .flat_map(|x| [x.clone(), -x])
            .find(|x| !f.derivative_at(0, x, 64).contains_zero())
            .map_or(Ok(()), |x| Err(format!("nonzero value at {x} beyond the bound {k}")))
    };
    let slices = (|| {
        for nb in [0, k] {
            for m in 0..depth {
                for n in 0..depth {
                    check_slices_at_samples(&smooth, f, nb, m, n, 9)?;
                }
            }
        }
        Ok(())
    })();
    let decay = check_decay_at_samples(&include_d_to_s(&name), f, depth.saturating_sub(1), 8);
    (entries, vec![("support bound".into(), support), ("smooth slices".into(), slices), ("decay witnesses".into(), decay)])
}

fn validate(cli: &Cli, key: &str, depth: u64) -> Result<(Report, bool), Failure> {
    let (entries, checks) = match key {
        "pi" => {
            let truth = IntervalC::real(Interval::around(Dyadic::from_f64(std::f64::consts::PI), Dyadic::pow2(-50)));
            if depth > 45 {
                return Err(Failure::Usage("pi is checked against a double; use depth <= 45".into()));
            }
            (validate_point(&pi_name(), &truth, depth), Vec::new())
        }
        "geom3" => {
            let f = input::function(Some("geom3"), None)?;
            let z = RationalComplex::real(BigRational::new(1.into(), 2.into()));
            let truth = RationalComplex::real(BigRational::new(6.into(), 5.into())).enclose(80);
            (validate_function(&f.cont(), &MetricName::complex_rational(&z), &truth, depth), Vec::new())
        }
        "family" => {
            let path = cli.file.as_deref().ok_or_else(|| Failure::Usage("validate --name family needs --file <family.json>".into()))?;
            validate_bump(&input::family("0", Some(path))?, depth)
        }
        _ => {
            let shift = key.strip_prefix("bump").ok_or_else(|| Failure::Usage(format!("unknown name {key:?}; known: pi, geom3, bump<k>, bump_m<k>, family")))?;
            let shift = match shift.strip_prefix("_m") {
                Some(s) => format!("-{s}"),
                None => shift.to_string(),
            };
            let lambda = input::rational_arg(&shift).map_err(|_| Failure::Usage(format!("bad bump name {key:?}")))?;
            validate_bump(&Family::bump(lambda), depth)
        }
    };
    let ok = entries.iter().all(|e| e.contains_truth) && checks.iter().all(|(_, c)| c.is_ok());
    let mut r = Report::new(json!({
        "name": key,
        "depth": depth,
        "entries": entries,
        "checks": checks.iter().map(|(what, c)| json!({ "check": what, "ok": c.is_ok(), "detail": c.as_ref().err() })).collect::<Vec<_>>(),
        "valid": ok,
    }));
    for e in &entries {
        r.line(entry_line(e));
    }
    for (what, c) in &checks {
        r.line(match c {
            Ok(()) => format!("{what}: ok"),
            Err(e) => format!("{what}: FAILED ({e})"),
        });
    }
    r.line(if ok { "valid" } else { "invalid" });
    let rows = entries.iter().map(|e| output::Row { index: e.index, lower: e.interval[0][0], upper: e.interval[0][1] }).collect();
    Ok((r.series(rows), ok))
}

/// Sources whose answers are natural numbers, read from the first entry.
fn nat_answer(p: Problem) -> bool {
    use Problem::*;
    matches!(p, ClosedChoice | Max | Bound | Min | Lpo | Count | AdvGerm | AdvAnalytic | Degree | DegreeBoundAnalytic | DegreeAnalytic)
}

fn leading(out: &Name) -> Vec<String> {
    out.prefix(3)
        .iter()
        .map(|v| {
            let s = v.to_string();
            if s.len() > 24 { format!("<{} digits>", s.len()) } else { s }
        })
        .collect()
}

fn reduce(cli: &Cli, id: &str) -> Result<(Report, bool), Failure> {
    let entry = find(id).ok_or_else(|| Failure::Usage(format!("unknown reduction {id:?}; see `wlab list`")))?;
    let red = entry.reduction;
    let (key, inst) = match (&cli.file, &cli.instance) {
        (Some(path), _) => (path.display().to_string(), input::stream_instance(path, red.source)?),
        (None, Some(key)) => {
            let keys: Vec<&str> = entry.instances.iter().map(|b| b.key.as_str()).collect();
            let pos = key.parse::<usize>().ok().filter(|&i| i < keys.len()).or_else(|| keys.iter().position(|k| k == key));
            let pos = pos.ok_or_else(|| Failure::Usage(format!("unknown instance {key:?} for {id}; known: {}", keys.join(", "))))?;
            (entry.instances[pos].key.clone(), entry.instances[pos].instance.clone())
        }
        (None, None) => return Err(Failure::Usage("give --instance <key> or --file <name.json>".into())),
    };
    let (g, how) = oracle(cli, red.target);
    let out = apply_reduction(&red, &g, &inst).map_err(core)?;
    let check = verify(red.source, &inst.input, &inst.truth, &out);
    let (answer_text, answer_json) = if nat_answer(red.source) {
        let v = read_nat(&out);
        (v.to_string(), json!(v))
    } else {
        let l = leading(&out);
        (format!("name starting {}", l.join(", ")), json!({ "leading": l }))
    };
    let mut r = Report::new(json!({
        "reduction": red.id,
        "source": red.source,
        "target": red.target,
        "instance": key,
        "label": inst.label,
        "oracle": how,
        "answer": answer_json,
        "verified": check.is_ok(),
        "error": check.as_ref().err(),
    }));
    r.line(format!("reduction {}: {} <= {}", red.id, red.source, red.target));
    r.line(format!("instance {key}: {}", inst.label));
    r.line(match &check {
        Ok(()) => format!("answer: {answer_text}, verified"),
        Err(e) => format!("answer: {answer_text}, verification failed: {e}"),
    });
    Ok((r, check.is_ok()))
}

fn list() -> Report {
    let m = manifest();
    let mut r = Report::new(json!({
        "reductions": m,
        "functions": ["geom3", "inv2", "ind:<k,...>", "gadget<n>"],
        "germs": ["geom3", "inv2", "ind:<k,...>"],
        "names": ["pi", "geom3", "bump<k>", "bump_m<k>", "family"],
        "generators": input::GENERATORS,
    }));
    for e in &m {
        let keys: Vec<&str> = e.instances.iter().map(|i| i.key.as_str()).collect();
        r.line(format!("{}: {} <= {} [{}]", e.id, e.source, e.target, keys.join(", ")));
    }
    r
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    let n = precision(cli.precision)?;
    let file = cli.file.as_deref();
    match &cli.command {
        Command::Eval { func, at } => eval(func.as_deref(), file, at, n, cli.format),
        Command::Germ { func, k } => germ(func.as_deref(), file, *k, n),
        Command::Sum { germ, at } => sum(germ, at, n, cli.format),
        Command::Diff { func, at } => diff(func.as_deref(), file, at, n, cli.format),
        Command::Zeros => zeros(cli, n),
        Command::Deg => deg(cli),
        Command::Bump { shift, m, at, poly } => bump(cli, shift, *m, at, *poly, n),
        Command::Seminorm { shift, d, m, bound } => seminorm(cli, shift, *d, *m, *bound, n),
        Command::Validate { name, depth } => validate(cli, name, *depth),
        Command::Reduce { id } => reduce(cli, id),
        Command::List => Ok((list(), true)),
    }
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Germ { .. } => "germ",
        Command::Sum { .. } => "sum",
        Command::Diff { .. } => "diff",
        Command::Zeros => "zeros",
        Command::Deg => "deg",
        Command::Bump { .. } => "bump",
        Command::Seminorm { .. } => "seminorm",
        Command::Validate { .. } => "validate",
        Command::Reduce { .. } => "reduce",
        Command::List => "list",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(&cli).and_then(|(r, ok)| Ok((r.render(cli.format, verb(&cli.command))?, ok)));
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok { ExitCode::SUCCESS } else { ExitCode::from(2) }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(2)
        }
    }
}
