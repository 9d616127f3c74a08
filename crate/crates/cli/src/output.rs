//! Rendering of command results as text, JSON or CSV.

use serde::Serialize;
use serde_json::{json, Value};

use wlab_core::numeric::{Dyadic, Interval, IntervalC};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Largest double not above `d`.
pub fn down(d: &Dyadic) -> f64 {
    let v = d.to_f64();
    if Dyadic::from_f64(v) > *d { v.next_down() } else { v }
}

/// Smallest double not below `d`.
pub fn up(d: &Dyadic) -> f64 {
    let v = d.to_f64();
    if Dyadic::from_f64(v) < *d { v.next_up() } else { v }
}

/// Outward-rounded `[lo, hi]`.
pub fn bounds(x: &Interval) -> [f64; 2] {
    [down(x.lo()), up(x.hi())]
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub index: u64,
    pub lower: f64,
    pub upper: f64,
}

/// One result: text lines, a JSON value and, for interval series, CSV rows.
pub struct Report {
    pub text: Vec<String>,
    pub json: Value,
    pub rows: Option<Vec<Row>>,
}

impl Report {
    pub fn new(json: Value) -> Report {
        Report { text: Vec::new(), json, rows: None }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn series(mut self, rows: Vec<Row>) -> Report {
        self.rows = Some(rows);
        self
    }

    pub fn render(&self, format: Format, verb: &str) -> Result<String, Failure> {
        Ok(match format {
            Format::Text => self.text.iter().map(|l| format!("{l}\n")).collect(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Csv => {
                let rows = self.rows.as_ref().ok_or_else(|| Failure::Usage(format!("{verb} has no interval series; use text or json")))?;
                let mut out = String::from("index,lower,upper\n");
                for r in rows {
                    out.push_str(&format!("{},{},{}\n", r.index, r.lower, r.upper));
                }
                out
            }
        })
    }
}

pub fn interval_text(x: &Interval) -> String {
    let [lo, hi] = bounds(x);
    format!("[{lo}, {hi}]")
}

/// `re [a, b]` with ` im [c, d]` appended when the imaginary part is not exactly 0.
pub fn complex_text(z: &IntervalC) -> String {
    if z.im.is_zero() {
        interval_text(&z.re)
    } else {
        format!("{} + i {}", interval_text(&z.re), interval_text(&z.im))
    }
}

pub fn complex_json(z: &IntervalC) -> Value {
    json!({ "re": bounds(&z.re), "im": bounds(&z.im) })
}

pub fn row(index: u64, x: &Interval) -> Row {
    let [lower, upper] = bounds(x);
    Row { index, lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_outward() {
        let third = Interval::from_rational(&num_rational::BigRational::new(1.into(), 3.into()), 80);
        let [lo, hi] = bounds(&third);
        // 1/3 is not a double, so the outward bounds are its two neighbours
        assert_eq!(lo.next_up(), hi);
        assert!(Dyadic::from_f64(lo) <= *third.lo() && Dyadic::from_f64(hi) >= *third.hi());
        let exact = Interval::point(Dyadic::from_f64(1.5));
        assert_eq!(bounds(&exact), [1.5, 1.5]);
    }
}
