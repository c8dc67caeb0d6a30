//! The results table: best per-length bound for each avoided set.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::Serialize;

use crate::automaton::{degree_profile, DegreeProfile};
use crate::avoided::avoided_set;
use crate::bounds::{best_bound, decimal, fraction};
use crate::cluster::{weight_series_with, Control};
use crate::error::{Error, Result};

pub const MAX_REPORT_DEPTH: usize = 6;

/// Largest `N * |S|` the series backend runs without `force`.
pub const DEFAULT_COST_CEILING: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Automaton,
    GjSeries,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Automaton => "automaton",
            Backend::GjSeries => "gj-series",
        }
    }
}

/// Number of terms used for each depth in the reference table.
pub fn default_terms(d: usize) -> usize {
    match d {
        4 => 500,
        5 => 800,
        6 => 600,
        _ => 200,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub d: usize,
    pub set_size: usize,
    #[serde(rename = "N")]
    pub terms: usize,
    pub n: Option<usize>,
    #[serde(serialize_with = "ser_opt_fraction")]
    pub epsilon: Option<Rational64>,
    pub backend: Backend,
    pub error: Option<String>,
}

fn ser_opt_fraction<S: serde::Serializer>(
    r: &Option<Rational64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fraction(r)),
        None => s.serialize_none(),
    }
}

#[derive(Default, Clone, Copy)]
pub struct ReportOptions<'a> {
    pub force: bool,
    /// Overrides [`DEFAULT_COST_CEILING`] when set.
    pub cost_ceiling: Option<usize>,
    pub control: Control<'a>,
}

/// Profile of `S_d` to `terms` with the chosen backend.
pub fn profile_with(
    d: usize,
    terms: usize,
    backend: Backend,
    opts: ReportOptions<'_>,
) -> Result<(usize, DegreeProfile)> {
    let set = avoided_set(d)?;
    let profile = match backend {
        Backend::Automaton => degree_profile(set.words(), terms)?,
        Backend::GjSeries => {
            let cost = terms * set.len();
            let ceiling = opts.cost_ceiling.unwrap_or(DEFAULT_COST_CEILING);
            if cost > ceiling && !opts.force {
                return Err(Error::CostCeiling { cost, ceiling });
            }
            DegreeProfile::from_series(&weight_series_with(set.words(), terms, opts.control)?)?
        }
    };
    Ok((set.len(), profile))
}

/// One row; bound errors (such as `N = 0`) are recorded in the row, while
/// refusals and backend failures are returned.
pub fn report_row(d: usize, terms: usize, backend: Backend, opts: ReportOptions<'_>) -> Result<ReportRow> {
    if d == 0 || d > MAX_REPORT_DEPTH {
        return Err(Error::UnsupportedDepth(d));
    }
    let (set_size, profile) = profile_with(d, terms, backend, opts)?;
    let mut row = ReportRow { d, set_size, terms, n: None, epsilon: None, backend, error: None };
    match best_bound(&profile) {
        Ok((n, b)) => {
            row.n = Some(n);
            row.epsilon = Some(b.epsilon);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    Ok(row)
}

/// Rows for each `(d, N)` pair, in order.
pub fn cmd_report(
    jobs: &[(usize, usize)],
    backend: Backend,
    opts: ReportOptions<'_>,
) -> Result<Vec<ReportRow>> {
    if let Some(&(d, _)) = jobs.iter().find(|&&(d, _)| d == 0 || d > MAX_REPORT_DEPTH) {
        return Err(Error::UnsupportedDepth(d));
    }
    jobs.iter().map(|&(d, terms)| report_row(d, terms, backend, opts)).collect()
}

pub fn render_text(rows: &[ReportRow]) -> String {
    let mut out = format!(
        "{:>2} {:>5} {:>5} {:>5} {:>10} {:>10}  backend\n",
        "d", "|S_d|", "N", "n", "eps(n)", "decimal"
    );
    for r in rows {
        let (n, eps, dec) = match (r.n, r.epsilon) {
            (Some(n), Some(e)) => (n.to_string(), fraction(&e), decimal(&e, 7)),
            _ => ("-".into(), "-".into(), r.error.clone().unwrap_or_default()),
        };
        let _ = writeln!(
            out,
            "{:>2} {:>5} {:>5} {:>5} {:>10} {:>10}  {}",
            r.d,
            r.set_size,
            r.terms,
            n,
            eps,
            dec,
            r.backend.name()
        );
    }
    out
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("d,set_size,N,n,epsilon,decimal,backend\n");
    for r in rows {
        let n = r.n.map(|n| n.to_string()).unwrap_or_default();
        let eps = r.epsilon.map(|e| fraction(&e)).unwrap_or_default();
        let dec = r.epsilon.map(|e| decimal(&e, 7)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{n},{eps},{dec},{}", r.d, r.set_size, r.terms, r.backend.name());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let jobs: Vec<_> = (1..=3).map(|d| (d, 200)).collect();
        let rows = cmd_report(&jobs, Backend::Automaton, ReportOptions::default()).unwrap();
        let got: Vec<_> =
            rows.iter().map(|r| (r.d, r.set_size, r.terms, r.n.unwrap(), r.epsilon.unwrap())).collect();
        let r = Rational64::new;
        assert_eq!(got, vec![(1, 2, 200, 3, r(1, 6)), (2, 6, 200, 3, r(1, 6)), (3, 14, 200, 9, r(1, 18))]);
        let gj = cmd_report(&jobs, Backend::GjSeries, ReportOptions::default()).unwrap();
        for (a, b) in rows.iter().zip(&gj) {
            assert_eq!((a.n, a.epsilon), (b.n, b.epsilon));
        }
    }

    #[test]
    fn empty_profile_row() {
        let row = report_row(1, 0, Backend::Automaton, ReportOptions::default()).unwrap();
        assert_eq!(row.n, None);
        assert_eq!(row.error.as_deref(), Some(Error::EmptyProfile.to_string().as_str()));
        assert!(render_text(&[row]).contains("no terms"));
    }

    #[test]
    fn ceiling_and_depth() {
        let opts = ReportOptions { cost_ceiling: Some(100), ..Default::default() };
        assert_eq!(
            report_row(2, 200, Backend::GjSeries, opts),
            Err(Error::CostCeiling { cost: 1200, ceiling: 100 })
        );
        let forced = ReportOptions { force: true, ..opts };
        assert!(report_row(1, 20, Backend::GjSeries, forced).is_ok());
        assert_eq!(
            cmd_report(&[(7, 10)], Backend::Automaton, ReportOptions::default()),
            Err(Error::UnsupportedDepth(7))
        );
    }

    #[test]
    fn renderings() {
        let rows = cmd_report(&[(1, 10)], Backend::Automaton, ReportOptions::default()).unwrap();
        assert_eq!(
            render_csv(&rows),
            "d,set_size,N,n,epsilon,decimal,backend\n1,2,10,3,1/6,0.1666667,automaton\n"
        );
        let json = serde_json::to_value(&rows).unwrap();
        assert_eq!(json[0]["epsilon"], "1/6");
        assert_eq!(json[0]["N"], 10);
        assert_eq!(json[0]["backend"], "automaton");
    }
}
