//! The functions `f_n(z) = (z - x_n)^(-M)`, `M = 2^(n+1)`, `x_n = 1 + 2^((n+1)/(M+1))`:
//! small on the disk (`|f_n| <= 2^(-(n+1)M/(M+1)) < 2^-n`) yet `f_n'(1) = 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;

use super::series::{midpoint, Series, SeriesSource};
use super::AnalyticName;
use crate::names::RationalComplex;
use crate::numeric::elementary::pow2_frac;
use crate::numeric::{Dyadic, Interval, IntervalC};

pub fn gadget_power(n: u64) -> u64 {
    assert!(n < 32, "gadget index too large");
    1u64 << (n + 1)
}

/// Enclosure of `x_n`.
pub fn gadget_pole(n: u64, prec: u64) -> Interval {
    let m = gadget_power(n);
    &Interval::one() + &pow2_frac(n as i64 + 1, m + 1, prec)
}

/// Direct enclosure of `f_n(z)` from the closed form.
pub fn gadget_value(n: u64, z: &IntervalC, prec: u64) -> IntervalC {
    let m = gadget_power(n);
    let w = prec + 2 * (n + 1) + 16;
    let d = z - &IntervalC::real(gadget_pole(n, w));
    d.recip(w).powi_r(m, w).round(prec)
}

/// Direct enclosure of `f_n'(z) = -M (z - x_n)^(-M-1)`.
pub fn gadget_derivative(n: u64, z: &IntervalC, prec: u64) -> IntervalC {
    let m = gadget_power(n);
    let w = prec + 2 * (n + 1) + 16;
    let d = z - &IntervalC::real(gadget_pole(n, w));
    let v = d.recip(w).powi_r(m + 1, w).scale(&Interval::from_int(m));
    (-&v).round(prec)
}

/// Taylor coefficients `a_k = C(M+k-1, k) x_n^(-M-k)` with a ratio-test tail bound.
pub struct GadgetSeries {
    n: u64,
    m: u64,
}

impl GadgetSeries {
    pub fn new(n: u64) -> Self {
        GadgetSeries { n, m: gadget_power(n) }
    }

    fn coeff_enclosure(&self, k: u64, prec: u64) -> Interval {
        let w = prec + 24 + 2 * super::series::ceil_log2(self.m + k + 1);
        let y = gadget_pole(self.n, w).recip(w);
        let b = binomial(BigInt::from(self.m + k - 1), BigInt::from(k));
        (&Interval::from_int(b) * &y.powi_r(self.m + k, w)).round(w)
    }

    /// Upper bound on `(M+K) / ((K+1) x_n)`, the ratio `a_{K+1} / a_K`.
    fn ratio_bound(&self, k: u64) -> Dyadic {
        let lo_pole = gadget_pole(self.n, 64).lo().clone();
        let num = Interval::from_int(self.m + k);
        let den = Interval::point(&Dyadic::from_int(k + 1) * &lo_pole);
        num.div(&den, 64).hi().clone()
    }
}

impl SeriesSource for GadgetSeries {
    fn coeff(&self, k: u64, prec: u64) -> RationalComplex {
        midpoint(&IntervalC::real(self.coeff_enclosure(k, prec + 2)))
    }

    fn tail(&self, k0: u64) -> Dyadic {
        // ratios decrease in K, so once below 1 the tail is dominated by a geometric series
        let mut k = k0;
        let mut head = Dyadic::zero();
        loop {
            let q = self.ratio_bound(k);
            let a = self.coeff_enclosure(k, 64).hi().clone();
            if q < Dyadic::one() {
                let geo = Interval::point(a).div(&Interval::point(&Dyadic::one() - &q), 64);
                return &head + geo.hi();
            }
            head = &head + &a;
            k += 1;
        }
    }
}

pub fn gadget_series(n: u64) -> Series {
    Arc::new(GadgetSeries::new(n))
}

/// Least `m` with `(x_n - r_m)^(-M) <= m`, so `f_n` is bounded by `m` on `U_m`.
pub fn gadget_advice(n: u64) -> u64 {
    let big_m = gadget_power(n);
    let pole = gadget_pole(n, 64).lo().clone();
    let mut m = 1;
    loop {
        let r = super::radius(m, 64).hi().clone();
        let gap = Interval::point(&pole - &r);
        let bound = gap.recip(64).powi_r(big_m, 64);
        if bound.hi() <= &Dyadic::from_int(m) {
            return m;
        }
        m += 1;
    }
}

/// Least `m` with `Σ_{n ∈ S} (x_n - r_m)^(-M_n) <= m`. The Taylor coefficients of
/// every `f_n` are positive, so the left side is the maximum of `Σ f_n` on `U_m`.
pub fn gadget_sum_advice(support: &[u64]) -> u64 {
    if support.is_empty() {
        return 0;
    }
    let mut m = 1;
    loop {
        let r = super::radius(m, 64).hi().clone();
        let mut total = Interval::zero();
        for &n in support {
            let gap = Interval::point(gadget_pole(n, 64).lo() - &r);
            total = &total + &gap.recip(64).powi_r(gadget_power(n), 64);
        }
        if total.hi() <= &Dyadic::from_int(m) {
            return m;
        }
        m += 1;
    }
}

/// Rational Taylor truncation `P` of `f_n` with coefficients in `[0, a_k]`, such that
/// `Σ k (a_k - c_k) <= 2^-e`: then `|P - f_n| <= 2^-e` on the disk and
/// `|P'(1) - f_n'(1)| <= 2^-e`.
pub fn gadget_taylor_polynomial(n: u64, e: u64) -> Vec<RationalComplex> {
    let s = GadgetSeries::new(n);
    let half = Dyadic::pow2(-(e as i64) - 1);
    // past the ratio peak, Σ_{k >= K} k a_k <= a_K (K / (1 - q) + q / (1 - q)^2)
    let mut k = 1;
    let len = loop {
        let q = s.ratio_bound(k);
        if q < Dyadic::one() {
            let a = Interval::point(s.coeff_enclosure(k, 64).hi().clone());
            let gap = Interval::point(&Dyadic::one() - &q);
            let lin = Interval::from_int(k).div(&gap, 64);
            let quad = Interval::point(q).div(&gap.sqr(), 64);
            if (&a * &(&lin + &quad)).hi() <= &half {
                break k;
            }
        }
        k += 1;
    };
    // rounding each coefficient down by about 2^-w costs below (len + 1)^2 2^-w
    let w = e + 2 + 2 * super::series::ceil_log2(len + 1);
    (0..len)
        .map(|k| {
            let lo = s.coeff_enclosure(k, w + 2).lo().clone();
            let c = Dyadic::from_rational_at(&lo.to_rational(), -(w as i64), crate::numeric::Round::Down);
            RationalComplex::real(Dyadic::max(&c, &Dyadic::zero()).to_rational())
        })
        .collect()
}

/// `gadget_fn`.
pub fn gadget_fn(n: u64) -> AnalyticName {
    AnalyticName::from_series(gadget_advice(n), gadget_series(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::series::approximant;

    #[test]
    fn closed_form_values() {
        // f_0(1) = (1 - x_0)^-2 = 2^(-2/3)
        let v = gadget_value(0, &IntervalC::one(), 60);
        let want = 2f64.powf(-2.0 / 3.0);
        let ((lo, hi), _) = v.to_f64();
        assert!(lo <= want + 1e-15 && want - 1e-15 <= hi);
        for n in 0..4 {
            let d = gadget_derivative(n, &IntervalC::one(), 60);
            assert!(d.contains(&Dyadic::one(), &Dyadic::zero()), "n = {n}: {d}");
        }
    }

    #[test]
    fn advice_values() {
        assert_eq!(gadget_advice(0), 2);
        assert_eq!(gadget_advice(3), 3);
    }

    #[test]
    fn series_matches_closed_form() {
        for n in 0..3 {
            let s = GadgetSeries::new(n);
            let p = approximant(&s, 30);
            let z = IntervalC::point(Dyadic::from_f64(0.25), Dyadic::from_f64(-0.5));
            let approx = p.eval_disk(&z, 80);
            let exact = gadget_value(n, &z, 80);
            let tol = Dyadic::pow2(-29);
            let slack = IntervalC::new(Interval::ball0(tol.clone()), Interval::ball0(tol));
            assert!((&exact + &slack).contains_box(&approx), "n = {n}");
        }
    }

    #[test]
    fn derivative_at_one_through_names() {
        use crate::analytic::{diff_analytic, eval_analytic};
        use crate::spaces::MetricName;
        let d = diff_analytic(&gadget_fn(0));
        let v = eval_analytic(&d, &MetricName::complex_rational(&RationalComplex::one()), 10);
        assert!(v.contains(&Dyadic::one(), &Dyadic::zero()));
    }
}
