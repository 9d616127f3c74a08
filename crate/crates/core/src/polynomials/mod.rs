//! Polynomial names: degree bounds, monic normalization, degrees and zeros.
//!
//! A polynomial name `p` has `p(0) >= deg P` and `p(1 + ⟨i, j⟩)` = index of a
//! Gaussian rational within `2^-j` of the coefficient `a_i` (`i <= p(0)`). Tuple
//! names of `ℂ^×` use the same layout with `p(0)` the exact length.

pub mod roots;

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::names::{pair, unpair, Name, Nat, RationalComplex};
use crate::numeric::{Dyadic, Interval, IntervalC};
use roots::{certify_clusters, Cluster, PelletRecord};

/// Name of a complex vector `(x_0, ..., x_{len-1})` with its length in front.
#[derive(Clone, Debug)]
pub struct TupleName(pub Name);

impl TupleName {
    pub fn len(&self) -> u64 {
        self.0.query_u64(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Gaussian rational within `2^-prec` of entry `i`.
    pub fn entry(&self, i: u64, prec: u64) -> RationalComplex {
        RationalComplex::at(&self.0.query(1 + pair(i, prec)))
    }

    /// Entries at `i >= len` are zero.
    pub fn from_fn<F>(len: u64, entry: F) -> TupleName
    where
        F: Fn(u64, u64) -> RationalComplex + Send + Sync + 'static,
    {
        TupleName(header_name(len, len, entry))
    }

    pub fn exact(entries: Vec<RationalComplex>) -> TupleName {
        let len = entries.len() as u64;
        TupleName::from_fn(len, move |i, _| entries.get(i as usize).cloned().unwrap_or_default())
    }
}

/// `p(0) = header`, `p(1 + ⟨i, j⟩)` the `j`-th approximation of entry `i < len`.
fn header_name<F>(header: u64, len: u64, entry: F) -> Name
where
    F: Fn(u64, u64) -> RationalComplex + Send + Sync + 'static,
{
    Name::from_fn(move |n| {
        if n == 0 {
            return Nat::from(header);
        }
        let (i, j) = unpair(n - 1);
        if i < len { entry(i, j) } else { RationalComplex::zero() }.index()
    })
}

/// Name of a polynomial: `p(0)` bounds the degree.
#[derive(Clone, Debug)]
pub struct PolyName(pub Name);

impl PolyName {
    /// `dbnd`.
    pub fn bound(&self) -> u64 {
        self.0.query_u64(0)
    }

    pub fn coeff(&self, i: u64, prec: u64) -> RationalComplex {
        RationalComplex::at(&self.0.query(1 + pair(i, prec)))
    }

    /// Enclosure `coeff ± 2^-prec` in both parts.
    pub fn coeff_enclosure(&self, i: u64, prec: u64) -> IntervalC {
        let c = self.coeff(i, prec);
        let r = Dyadic::pow2(-(prec as i64));
        let e = c.enclose(prec + 16);
        IntervalC::new(&e.re + &Interval::ball0(r.clone()), &e.im + &Interval::ball0(r))
    }

    pub fn from_fn<F>(bound: u64, coeff: F) -> PolyName
    where
        F: Fn(u64, u64) -> RationalComplex + Send + Sync + 'static,
    {
        PolyName(header_name(bound, bound + 1, coeff))
    }

    /// Exact coefficients `a_0, a_1, ...` with the given degree bound.
    pub fn exact(coeffs: Vec<RationalComplex>, bound: u64) -> PolyName {
        PolyName::from_fn(bound, move |i, _| if i <= bound { coeffs.get(i as usize).cloned().unwrap_or_default() } else { RationalComplex::zero() })
    }

    pub fn from_integers(coeffs: &[i64], bound: u64) -> PolyName {
        PolyName::exact(coeffs.iter().map(|&c| RationalComplex::from_ints(c, 1, 0, 1)).collect(), bound)
    }
}

/// `dbnd`.
pub fn dbnd(p: &PolyName) -> u64 {
    p.bound()
}

/// `deg_monic`: read every coefficient within `1/4`; the degree is the highest index
/// whose approximation exceeds `1/2` in modulus, and that approximation must lie
/// within `1/4` of 1.
pub fn deg_monic(p: &PolyName) -> Result<u64> {
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let bound = p.bound();
    for i in (0..=bound).rev() {
        let c = p.coeff(i, 2);
        if c.norm_sqr() > &half * &half {
            let dist = c.sub(&RationalComplex::one());
            if dist.norm_sqr() >= &quarter * &quarter {
                return Err(Error::NotMonic(format!("coefficient {i} is approximately {c}")));
            }
            return Ok(i);
        }
    }
    Err(Error::NotMonic("no coefficient close to 1".into()))
}

/// `monic_of`: coefficients `a_k / a_d` for a known degree `d`.
pub fn monic_of(p: &PolyName, d: u64) -> PolyName {
    let p = p.clone();
    PolyName::from_fn(d, move |k, j| {
        if k > d {
            return RationalComplex::zero();
        }
        if k == d {
            return RationalComplex::one();
        }
        let target = Dyadic::pow2(-(j as i64) - 1);
        let mut w = j + 8;
        loop {
            let lead = p.coeff_enclosure(d, w);
            if !lead.contains_zero() {
                let q = p.coeff_enclosure(k, w).div(&lead, w + 8);
                if q.width() <= target {
                    return series_mid(&q);
                }
            }
            w += 8;
        }
    })
}

fn series_mid(v: &IntervalC) -> RationalComplex {
    crate::analytic::series::midpoint(v)
}

/// Hierarchy of certified cluster levels; level `j` has radii below `2^-(j+1)` and
/// every level-`j` cluster lies inside exactly one level-`(j-1)` cluster.
struct RootTracker {
    poly: PolyName,
    degree: usize,
    /// Each level: clusters in output order, with the range of tuple entries they carry.
    levels: Mutex<Vec<Vec<(Cluster, PelletRecord)>>>,
}

impl RootTracker {
    fn enclosures(&self, prec: u64) -> Vec<IntervalC> {
        let d = self.degree as u64;
        (0..=d).map(|i| if i == d { IntervalC::one() } else { self.poly.coeff_enclosure(i, prec) }).collect()
    }

    /// Certified clusters at level `j`, each repeated by multiplicity in entry order.
    fn level(&self, j: u64) -> Vec<(Cluster, PelletRecord)> {
        {
            let levels = self.levels.lock().unwrap();
            if let Some(l) = levels.get(j as usize) {
                return l.clone();
            }
        }
        let parent = if j == 0 { None } else { Some(self.level(j - 1)) };
        let mut extra = 0i64;
        let fresh = loop {
            let (clusters, records) = certify_clusters(|w| self.enclosures(w), self.degree, -(j as i64) - 1 - extra)
                .unwrap_or_else(|| panic!("root certification failed at level {j}"));
            match &parent {
                None => break order_children(None, clusters, records),
                Some(par) => {
                    if let Some(ordered) = attach(par, &clusters, &records) {
                        break ordered;
                    }
                }
            }
            extra += 2;
            assert!(extra < 64, "could not nest root clusters at level {j}");
        };
        let mut levels = self.levels.lock().unwrap();
        while levels.len() < j as usize {
            unreachable!("levels are built in order");
        }
        if levels.len() == j as usize {
            levels.push(fresh.clone());
        }
        levels[j as usize].clone()
    }
}

fn sort_key(c: &Cluster) -> (Dyadic, Dyadic) {
    (c.re.clone(), c.im.clone())
}

fn order_children(_parent: Option<()>, clusters: Vec<Cluster>, records: Vec<PelletRecord>) -> Vec<(Cluster, PelletRecord)> {
    let mut pairs: Vec<(Cluster, PelletRecord)> = clusters.into_iter().zip(records).collect();
    pairs.sort_by_key(|(c, _)| sort_key(c));
    let mut out = Vec::new();
    for (c, r) in pairs {
        for _ in 0..c.multiplicity {
            out.push((c.clone(), r.clone()));
        }
    }
    out
}

/// Assign every child to the unique parent disk it meets; children of one parent
/// take over the parent's entry range in sorted order.
fn attach(parent: &[(Cluster, PelletRecord)], clusters: &[Cluster], records: &[PelletRecord]) -> Option<Vec<(Cluster, PelletRecord)>> {
    let mut out: Vec<Option<(Cluster, PelletRecord)>> = vec![None; parent.len()];
    // distinct parents in entry order with their first entry index
    let mut starts: Vec<(usize, &Cluster)> = Vec::new();
    for (i, (c, _)) in parent.iter().enumerate() {
        if i == 0 || parent[i - 1].0 != *c {
            starts.push((i, c));
        }
    }
    let mut children: Vec<Vec<usize>> = vec![vec![]; starts.len()];
    for (ci, c) in clusters.iter().enumerate() {
        let hits: Vec<usize> = starts.iter().enumerate().filter(|(_, (_, p))| p.meets(c)).map(|(k, _)| k).collect();
        if hits.len() != 1 {
            return None;
        }
        children[hits[0]].push(ci);
    }
    for (k, (start, p)) in starts.iter().enumerate() {
        let mut kids = children[k].clone();
        kids.sort_by_key(|&ci| sort_key(&clusters[ci]));
        let total: usize = kids.iter().map(|&ci| clusters[ci].multiplicity).sum();
        if total != p.multiplicity {
            return None;
        }
        let mut pos = *start;
        for ci in kids {
            for _ in 0..clusters[ci].multiplicity {
                out[pos] = Some((clusters[ci].clone(), records[ci].clone()));
                pos += 1;
            }
        }
    }
    out.into_iter().collect()
}

/// Root tuple report at one precision.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub degree: u64,
    pub roots: Vec<RootBox>,
    pub certificate: Vec<PelletRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootBox {
    /// `[[re_lo, re_hi], [im_lo, im_hi]]`.
    #[serde(rename = "box")]
    pub bounds: [[f64; 2]; 2],
    pub multiplicity: usize,
}

/// Zeros of a monic polynomial as a tuple name plus access to certificates.
#[derive(Clone)]
pub struct Zeros {
    tracker: Arc<RootTracker>,
    pub tuple: TupleName,
}

impl Zeros {
    pub fn degree(&self) -> u64 {
        self.tracker.degree as u64
    }

    /// Certified clusters at precision `2^-n`.
    pub fn report(&self, n: u64) -> RootReport {
        let level = self.tracker.level(n);
        let mut roots = Vec::new();
        let mut certificate = Vec::new();
        for (i, (c, r)) in level.iter().enumerate() {
            if i > 0 && level[i - 1].0 == *c {
                continue;
            }
            let e = c.enclosure();
            roots.push(RootBox {
                bounds: [[e.re.lo().to_f64(), e.re.hi().to_f64()], [e.im.lo().to_f64(), e.im.hi().to_f64()]],
                multiplicity: c.multiplicity,
            });
            certificate.push(r.clone());
        }
        RootReport { degree: self.degree(), roots, certificate }
    }

    /// Clusters at level `n`, one per tuple entry.
    pub fn clusters(&self, n: u64) -> Vec<Cluster> {
        self.tracker.level(n).into_iter().map(|(c, _)| c).collect()
    }
}

/// `zeros_monic`: the roots of a monic polynomial, listed with multiplicity. Entry
/// `i` at precision `j` is the center of a certified disk of radius below `2^-(j+1)`.
pub fn zeros_monic(p: &PolyName) -> Result<Zeros> {
    let degree = deg_monic(p)? as usize;
    let tracker = Arc::new(RootTracker { poly: p.clone(), degree, levels: Mutex::new(Vec::new()) });
    let t2 = tracker.clone();
    let tuple = TupleName::from_fn(degree as u64, move |i, j| {
        let level = t2.level(j);
        let (c, _) = &level[i as usize];
        RationalComplex::new(c.re.to_rational(), c.im.to_rational())
    });
    Ok(Zeros { tracker, tuple })
}

/// Stream version of [`zeros_monic`] for use inside reductions.
pub fn zeros_monic_name(p: &Name) -> Name {
    let poly = PolyName(p.clone());
    let cell: Mutex<Option<Zeros>> = Mutex::new(None);
    Name::from_fn(move |n| {
        let z = {
            let mut c = cell.lock().unwrap();
            c.get_or_insert_with(|| zeros_monic(&poly).expect("input is not monic")).clone()
        };
        z.tuple.0.query(n)
    })
}

/// `monic_via_zeros`: `∏ (X - y_k)` from a root tuple.
pub fn monic_from_roots(t: &TupleName) -> PolyName {
    let t = t.clone();
    let d = t.len();
    PolyName::from_fn(d, move |k, j| {
        if k > d {
            return RationalComplex::zero();
        }
        let target = Dyadic::pow2(-(j as i64) - 1);
        let mut w = j + d + 8;
        loop {
            let roots: Vec<IntervalC> = (0..d)
                .map(|i| {
                    let r = t.entry(i, w);
                    let e = r.enclose(w + 16);
                    let rad = Dyadic::pow2(-(w as i64));
                    IntervalC::new(&e.re + &Interval::ball0(rad.clone()), &e.im + &Interval::ball0(rad))
                })
                .collect();
            let coeffs = expand_roots(&roots, w + 8);
            let c = &coeffs[k as usize];
            if c.width() <= target {
                return series_mid(c);
            }
            w += 8;
        }
    })
}

/// Coefficients `c_0..c_d` of `∏ (X - r_i)`.
pub fn expand_roots(roots: &[IntervalC], prec: u64) -> Vec<IntervalC> {
    let mut c = vec![IntervalC::one()];
    for r in roots {
        let mut next = vec![IntervalC::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] = (&next[i + 1] + ci).round(prec);
            next[i] = (&next[i] - &(ci * r)).round(prec);
        }
        c = next;
    }
    c
}

/// The stream `H(p)` of the degree-via-min reduction: at `n`, the number of top
/// coefficients (counted down from index `p(0)`) whose `2^-n`-enclosures contain 0,
/// i.e. `p(0) - i` for the largest provably nonzero index `i`, or `p(0) + 1`.
pub fn deg_to_min_stream(p: &Name) -> Name {
    let poly = PolyName(p.clone());
    Name::from_u64_fn(move |n| {
        let b = poly.bound();
        for i in (0..=b).rev() {
            if !poly.coeff_enclosure(i, n).contains_zero() {
                return b - i;
            }
        }
        b + 1
    })
}

/// The polynomial of the min-via-degree reduction: bound `p(0)` and
/// `a_n = 2^-min{i : p(0) - p(i) = n}` (0 if no such `i`). Values `p(i) > p(0)` play no role.
pub fn min_to_deg_poly(p: &Name) -> PolyName {
    let p = p.clone();
    let p0 = p.query_u64(0);
    let p2 = p.clone();
    PolyName(Name::from_fn(move |n| {
        if n == 0 {
            return Nat::from(p0);
        }
        let (target, j) = unpair(n - 1);
        // inspect p(0..=j): an index beyond j contributes at most 2^-(j+1)
        for i in 0..=j {
            let v = p2.query_u64(i);
            if v <= p0 && p0 - v == target {
                let a = BigRational::new(BigInt::one(), BigInt::one() << i as usize);
                return RationalComplex::real(a).index();
            }
        }
        RationalComplex::zero().index()
    }))
}

/// `P(X) = Σ_n 2^-(n + p(n)) X^(p(n))` as a C(D)-name with advice 2: the degree is
/// `max p`, and `|P| <= Σ 2^-n = 2` on `|z| <= 2^(1/3)`.
pub fn bounded_set_polynomial(p: &Name) -> crate::analytic::AnalyticName {
    let p = p.clone();
    let cont = crate::spaces::MetricName::function(crate::spaces::Space::Disk, move |m| {
        // terms n <= m + 1 leave a tail below 2^-(m+1)
        let terms = (0..=m + 1).map(|n| {
            let e = p.query_u64(n);
            let c = BigRational::new(BigInt::one(), BigInt::one() << (n + e) as usize);
            ((e as u32, 0u32), RationalComplex::real(c))
        });
        crate::names::RationalPoly2::from_terms(terms)
    });
    crate::analytic::AnalyticName::new(2, &cont)
}

/// Enumeration `⟨m, n⟩ ↦ m + 1` if the `m`-th germ coefficient is provably nonzero at
/// precision `n` (`|d| > 2^-n`), else 0.
pub fn nonzero_coefficients(germ_seq: &Name) -> Name {
    let g = germ_seq.clone();
    Name::from_u64_fn(move |k| {
        let (m, n) = unpair(k);
        let d = RationalComplex::at(&g.query(pair(m, n)));
        let t = BigRational::new(BigInt::one(), BigInt::one() << n as usize);
        if d.norm_sqr() > &t * &t {
            m + 1
        } else {
            0
        }
    })
}

/// Polynomial literal `{bound, coeffs: [[re_num, re_den, im_num, im_den], ...]}`.
#[derive(Clone, Debug, serde::Deserialize, Serialize)]
pub struct PolyLiteral {
    pub bound: u64,
    pub coeffs: Vec<[i64; 4]>,
}

impl PolyLiteral {
    pub fn coefficients(&self) -> Result<Vec<RationalComplex>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c[1] == 0 || c[3] == 0 {
                    Err(Error::Invalid("zero denominator".into()))
                } else {
                    Ok(RationalComplex::from_ints(c[0], c[1], c[2], c[3]))
                }
            })
            .collect()
    }

    pub fn to_name(&self) -> Result<PolyName> {
        let c = self.coefficients()?;
        if let Some(last) = c.iter().rposition(|x| !x.is_zero()) {
            if last as u64 > self.bound {
                return Err(Error::Invalid(format!("degree {last} exceeds bound {}", self.bound)));
            }
        }
        Ok(PolyName::exact(c, self.bound))
    }
}

/// Exact degree of a coefficient list, `None` for the zero polynomial.
pub fn exact_degree(coeffs: &[RationalComplex]) -> Option<u64> {
    coeffs.iter().rposition(|c| !c.is_zero()).map(|d| d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> RationalComplex {
        RationalComplex::from_ints(a, b, 0, 1)
    }

    fn sorted_re(z: &Zeros, n: u64) -> Vec<f64> {
        let mut v: Vec<f64> =
            (0..z.degree()).map(|i| num_traits::ToPrimitive::to_f64(&z.tuple.entry(i, n).re).unwrap()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn degree_bound_is_read_directly() {
        assert_eq!(dbnd(&PolyName::from_integers(&[1, 0, 1], 5)), 5);
        assert_eq!(dbnd(&PolyName::from_integers(&[], 0)), 0);
    }

    #[test]
    fn monic_degrees() {
        assert_eq!(deg_monic(&PolyName::from_integers(&[-1, 1], 3)).unwrap(), 1);
        assert_eq!(deg_monic(&PolyName::from_integers(&[2, -3, 1], 2)).unwrap(), 2);
        let p = PolyName::exact(vec![q(0, 1), q(2, 5), q(0, 1), q(1, 1)], 7);
        assert_eq!(deg_monic(&p).unwrap(), 3);
        assert!(deg_monic(&PolyName::from_integers(&[0, 3], 1)).is_err());
    }

    #[test]
    fn zeros_of_small_monics() {
        let z = zeros_monic(&PolyName::from_integers(&[-1, 1], 3)).unwrap();
        assert_eq!(sorted_re(&z, 10), vec![1.0]);
        let z = zeros_monic(&PolyName::from_integers(&[2, -3, 1], 2)).unwrap();
        let r = sorted_re(&z, 20);
        assert!((r[0] - 1.0).abs() < 1e-6 && (r[1] - 2.0).abs() < 1e-6);
        let z = zeros_monic(&PolyName::from_integers(&[0, 0, 1], 2)).unwrap();
        assert_eq!(z.report(12).roots.len(), 1);
        assert_eq!(z.report(12).roots[0].multiplicity, 2);
        assert_eq!(z.tuple.len(), 2);
    }

    #[test]
    fn entries_stay_consistent_across_levels() {
        // roots 1, 1 + 2^-6, -1/3
        let roots = [q(1, 1), q(65, 64), q(-1, 3)];
        let coeffs: Vec<RationalComplex> = expand_exact(&roots);
        let z = zeros_monic(&PolyName::exact(coeffs, 3)).unwrap();
        for i in 0..3 {
            let mut prev: Option<RationalComplex> = None;
            for j in 0..12 {
                let e = z.tuple.entry(i, j);
                if let Some(p) = prev {
                    let d = e.sub(&p).norm_sqr();
                    let lim = BigRational::new(BigInt::one(), BigInt::one() << (2 * j as usize - 2));
                    assert!(d < lim * BigRational::from_integer(4.into()), "entry {i} jumps at level {j}");
                }
                prev = Some(e);
            }
        }
    }

    fn expand_exact(roots: &[RationalComplex]) -> Vec<RationalComplex> {
        let mut c = vec![RationalComplex::one()];
        for r in roots {
            let mut next = vec![RationalComplex::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].add(ci);
                next[i] = next[i].sub(&ci.mul(r));
            }
            c = next;
        }
        c
    }

    fn assert_close(a: &RationalComplex, b: &RationalComplex, prec: u64) {
        let tol = BigRational::new(BigInt::one(), BigInt::one() << prec as usize);
        assert!(a.sub(b).norm_sqr() <= &tol * &tol, "{a} is not within 2^-{prec} of {b}");
    }

    #[test]
    fn monic_normalization() {
        let m = monic_of(&PolyName::from_integers(&[2, 2], 1), 1);
        assert_close(&m.coeff(0, 20), &q(1, 1), 20);
        let m = monic_of(&PolyName::from_integers(&[-3, 0, 3], 2), 2);
        assert_close(&m.coeff(0, 20), &q(-1, 1), 20);
        assert_close(&m.coeff(1, 20), &q(0, 1), 20);
    }

    #[test]
    fn expansion_of_roots() {
        let t = TupleName::exact(vec![q(1, 1), q(2, 1)]);
        let p = monic_from_roots(&t);
        assert_close(&p.coeff(0, 10), &q(2, 1), 10);
        assert_close(&p.coeff(1, 10), &q(-3, 1), 10);
        assert_close(&p.coeff(2, 10), &q(1, 1), 10);
        assert_close(&monic_from_roots(&TupleName::exact(vec![])).coeff(0, 5), &q(1, 1), 5);
    }

    #[test]
    fn degree_stream_tends_to_bound_minus_degree() {
        // X^2 + 2^-9 X^3, bound 3
        let p = PolyName::exact(vec![q(0, 1), q(0, 1), q(1, 1), q(1, 512)], 3);
        let h = deg_to_min_stream(&p.0);
        assert_eq!(h.query_u64(2), 1);
        assert_eq!(h.query_u64(12), 0);
        let min = (0..40).map(|n| h.query_u64(n)).min().unwrap();
        assert_eq!(3 - min, 3);
    }

    #[test]
    fn min_polynomial_degree() {
        // p = (5, 2, 7, 7, ...): min 2, degree of the polynomial 3
        let p = Name::from_prefix(vec![5, 2], 7);
        let poly = min_to_deg_poly(&p);
        assert_eq!(poly.coeff(3, 10), q(1, 2));
        assert_eq!(poly.coeff(0, 10), q(1, 1));
        assert_eq!(poly.coeff(1, 10), q(0, 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn roots_recovered_from_coefficients(roots in prop::collection::vec((-8i64..=8, 1i64..=4, -8i64..=8, 1i64..=4), 1..=4)) {
                let rs: Vec<RationalComplex> = roots.iter().map(|&(a, b, c, d)| RationalComplex::from_ints(a, b, c, d)).collect();
                let z = zeros_monic(&PolyName::exact(expand_exact(&rs), rs.len() as u64)).unwrap();
                let n = 8;
                let mut entries: Vec<RationalComplex> = (0..z.degree()).map(|i| z.tuple.entry(i, n)).collect();
                // greedy matching is sound since clusters at this level have radius < 2^-9
                for r in &rs {
                    let pos = entries.iter().position(|e| {
                        let tol = BigRational::new(BigInt::one(), BigInt::one() << n);
                        e.sub(r).norm_sqr() <= &tol * &tol
                    });
                    prop_assert!(pos.is_some(), "root {} missing", r);
                    entries.remove(pos.unwrap());
                }
            }

            #[test]
            fn min_polynomial_has_degree_bound_minus_min(p0 in 0u64..6, vals in prop::collection::vec(0u64..8, 1..6)) {
                let mut prefix = vec![p0];
                prefix.extend(vals.iter().copied());
                let tail = *vals.last().unwrap();
                let name = Name::from_prefix(prefix.clone(), tail);
                let m = prefix.iter().copied().min().unwrap();
                let poly = min_to_deg_poly(&name);
                // exact coefficient: 2^-(first index attaining the value)
                let first = prefix.iter().position(|&v| v == m).unwrap();
                let lead = poly.coeff(p0 - m, 20);
                prop_assert_eq!(lead, RationalComplex::real(BigRational::new(BigInt::one(), BigInt::one() << first)));
                for k in p0 - m + 1..=p0 {
                    prop_assert!(poly.coeff(k, 20).is_zero());
                }
            }
        }
    }
}
