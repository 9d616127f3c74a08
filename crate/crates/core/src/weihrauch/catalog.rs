//! The named reductions with bundled instances and a machine-readable manifest.

use serde::Serialize;

use num_rational::BigRational;

use crate::names::{check_continuity, ContinuityReport};
use crate::testfns::Family;

use super::instances::*;
use super::{analytic, basic, poly, testfn, OracleInstance, OracleRealizer, Problem, Reduction};

/// An instance with the short key it is selected by.
pub struct Bundled {
    pub key: String,
    pub instance: OracleInstance,
}

pub struct CatalogEntry {
    pub reduction: Reduction,
    pub instances: Vec<Bundled>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestInstance {
    pub key: String,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub id: String,
    pub source: Problem,
    pub target: Problem,
    pub anchor: String,
    pub instances: Vec<ManifestInstance>,
}

fn bundle(items: Vec<(&str, OracleInstance)>) -> Vec<Bundled> {
    items.into_iter().map(|(k, instance)| Bundled { key: k.into(), instance }).collect()
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn two_bumps() -> Family {
    Family::bump_int(1).add(&Family::bump(-half()).scale(&half()))
}

fn analytic_polynomials() -> Vec<(&'static str, OracleInstance)> {
    vec![
        ("z2", analytic_polynomial("z^2", vec![rational(0, 1), rational(0, 1), rational(1, 1)])),
        ("3_plus_z", analytic_polynomial("3 + z", vec![rational(3, 1), rational(1, 1)])),
        ("z3_half_z", analytic_polynomial("z^3 + z/2", vec![rational(0, 1), rational(1, 2), rational(0, 1), rational(1, 1)])),
        ("const5", analytic_polynomial("5", vec![rational(5, 1)])),
    ]
}

fn rooted_polynomials() -> Vec<(&'static str, OracleInstance)> {
    vec![
        ("roots_1_mhalf", polynomial_from_roots(rational(2, 1), &[rational(1, 1), rational(-1, 2)], 4)),
        ("root_3", polynomial_from_roots(rational(1, 1), &[rational(3, 1)], 1)),
        ("roots_0_2_m1", polynomial_from_roots(rational(-1, 1), &[rational(0, 1), rational(2, 1), rational(-1, 1)], 5)),
    ]
}

/// Instances of a source problem used across the catalog.
pub fn bundled(problem: Problem) -> Vec<Bundled> {
    let items = match problem {
        Problem::ClosedChoice => vec![
            ("A4_11", closed_set(&[4, 11])),
            ("A0", closed_set(&[0])),
            ("A378", closed_set(&[3, 7, 8])),
            ("cof012", closed_cofinite(&[0, 1, 2])),
            ("N", closed_cofinite(&[])),
        ],
        Problem::Max | Problem::Bound => vec![
            ("U31", enumerated_set(&[3, 1])),
            ("U_empty", enumerated_set(&[])),
            ("U0", enumerated_set(&[0])),
            ("U25", enumerated_set(&[2, 5])),
            ("U404", enumerated_set(&[4, 0, 4])),
        ],
        Problem::Count => vec![
            ("supp257", stream(&[0, 0, 1, 0, 0, 1, 0, 1], 0)),
            ("supp09", stream(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 5], 0)),
            ("supp_empty", stream(&[], 0)),
            ("supp01", stream(&[2, 2], 0)),
        ],
        Problem::Min => vec![
            ("p5383", stream(&[5, 3, 8], 3)),
            ("p2704", stream(&[2, 7, 0], 4)),
            ("const6", stream(&[], 6)),
            ("p99142", stream(&[9, 9, 1, 4], 2)),
        ],
        Problem::Lpo | Problem::Identity => vec![
            ("zero", stream(&[], 0)),
            ("e7", stream(&[0, 0, 0, 0, 0, 0, 0, 1], 0)),
            ("const2", stream(&[], 2)),
        ],
        Problem::Sum | Problem::AdvGerm => vec![
            ("geom3", geometric_sequence()),
            ("ind02", indicator_sequence(&[0, 2])),
            ("ind_empty", indicator_sequence(&[])),
        ],
        Problem::AdvAnalytic | Problem::Diff1 => vec![
            ("gadgets12", gadget_sum(&[1, 2])),
            ("gadget0", gadget_sum(&[0])),
            ("z3_half_z", continuous_part(analytic_polynomials().remove(2).1)),
        ],
        Problem::Degree => {
            let mut v = rooted_polynomials();
            v.push(("p103", polynomial(&[1, 0, 3], 5)));
            v.push(("p7", polynomial(&[7], 2)));
            v
        }
        Problem::Monic | Problem::Zeros => rooted_polynomials(),
        Problem::DegreeBoundAnalytic | Problem::DegreeAnalytic => analytic_polynomials(),
        Problem::ProjSchwartzToBump => vec![
            ("bump0", schwartz_bump("bump at 0", Family::bump_int(0))),
            ("bump2", schwartz_bump("bump at 2", Family::bump_int(2))),
            ("two_bumps", schwartz_bump("bump at 1 plus half a bump at -1/2", two_bumps())),
        ],
        Problem::ProjSmoothToBump => vec![
            ("bump0", smooth_bump("bump at 0", Family::bump_int(0))),
            ("bump_m3", smooth_bump("bump at -3", Family::bump_int(-3))),
            ("two_bumps", smooth_bump("bump at 1 plus half a bump at -1/2", two_bumps())),
        ],
        Problem::ProjSmoothToSchwartz => vec![
            ("bump0", smooth_decaying("bump at 0", Family::bump_int(0))),
            ("bump1", smooth_decaying("bump at 1", Family::bump_int(1))),
        ],
        Problem::BoundSeq => vec![
            ("cols_202_5", bound_sequence(&[vec![2, 0, 2], vec![5]])),
            ("cols_0", bound_sequence(&[vec![0]])),
            ("cols_13_021", bound_sequence(&[vec![1, 3], vec![0, 2, 1]])),
            ("cols_none", bound_sequence(&[])),
            ("cols_4_x_1", bound_sequence(&[vec![4], vec![], vec![1]])),
        ],
        Problem::ClosedChoiceSeq => vec![("A1_3_0", closed_set_sequence(&[vec![1, 4], vec![3], vec![0]]))],
        Problem::Lim => vec![("geometric", geometric_limit())],
    };
    bundle(items)
}

fn entry(reduction: Reduction) -> CatalogEntry {
    let instances = bundled(reduction.source);
    CatalogEntry { reduction, instances }
}

/// Every reduction with its bundled instances.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = [
        Reduction::identity(Problem::Identity),
        basic::cn_le_count(),
        basic::count_le_max(),
        basic::max_le_cn(),
        basic::count_le_cn(),
        basic::cn_le_max(),
        basic::bound_le_cn(),
        basic::cn_le_bound(),
        basic::lpo_le_cn(),
        analytic::count_le_sum(),
        analytic::cn_le_sum(),
        analytic::sum_le_advg(),
        analytic::advg_le_cn(),
        analytic::count_le_diff1(),
        analytic::cn_le_diff1(),
        analytic::diff1_le_advc(),
        analytic::advc_le_cn(),
        poly::min_le_deg(),
        poly::deg_le_min(),
        poly::deg_le_monic(),
        poly::monic_le_deg(),
        poly::monic_le_zeros(),
        poly::zeros_le_monic(),
        poly::bound_le_dbnd_analytic(),
        poly::cn_le_dbnd_analytic(),
        poly::dbnd_le_deg_analytic(),
        poly::deg_analytic_le_max(),
        poly::deg_analytic_le_cn(),
        testfn::bound_le_proj_sd(),
        testfn::cn_le_proj_sd(),
        testfn::proj_sd_le_proj_ed(),
        testfn::proj_ed_le_cn(),
        testfn::proj_es_le_cnseq(),
        testfn::boundseq_le_proj_es(),
    ]
    .into_iter()
    .map(entry)
    .collect();
    // the Taylor truncations of gadgets with large index are long
    out.push(CatalogEntry {
        reduction: analytic::count_le_advc_poly(),
        instances: bundle(vec![("supp01", stream(&[2, 2], 0)), ("supp1", stream(&[0, 1], 0)), ("supp_empty", stream(&[], 0))]),
    });
    out
}

pub fn find(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.reduction.id == id)
}

pub fn manifest() -> Vec<ManifestEntry> {
    catalog()
        .into_iter()
        .map(|e| ManifestEntry {
            id: e.reduction.id.clone(),
            source: e.reduction.source,
            target: e.reduction.target,
            anchor: e.reduction.anchor.clone(),
            instances: e.instances.iter().map(|b| ManifestInstance { key: b.key.clone(), label: b.instance.label.clone() }).collect(),
        })
        .collect()
}

/// Runs the instrumentation harness on `H` and on `K` of `r` at one instance; `K`
/// gets the exact oracle answer as its second input.
pub fn check_reduction_continuity(r: &Reduction, inst: &OracleInstance) -> Result<(ContinuityReport, ContinuityReport), String> {
    let h = check_continuity(std::slice::from_ref(&inst.input), |v| r.pre(&v[0]), r.probe).map_err(|e| format!("H: {e}"))?;
    let t = r.map_truth(&inst.input, &inst.truth).map_err(|e| e.to_string())?;
    let answer = OracleRealizer::exact(r.target).answer(&r.pre(&inst.input), &t).map_err(|e| e.to_string())?;
    let k = check_continuity(&[inst.input.clone(), answer], |v| r.post(&v[0], &v[1]), r.probe).map_err(|e| format!("K: {e}"))?;
    Ok((h, k))
}
