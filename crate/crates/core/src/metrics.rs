//! Per-day observables and plot-ready output files.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::disease::{DayOutcome, SimState};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "day,new_infections,cum_infections,cum_deaths,susceptible,exposed,infectious,recovered,dead,vaccinated,doses";

pub const SUMMARY_HEADER: &str = "label,final_cum_infections_mean,final_cum_infections_std,final_cum_deaths_mean,final_cum_deaths_std,pct_reduction_vs_baseline";

/// Marker written where a percentage reduction is undefined.
pub const UNDEFINED: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayRecord {
    pub day: u32,
    pub new_infections: usize,
    pub cumulative_infections: usize,
    pub cumulative_deaths: usize,
    pub counts: [usize; 6],
    pub doses: usize,
}

impl DayRecord {
    fn columns(&self) -> [f64; 11] {
        let c = self.counts;
        [
            self.day as f64,
            self.new_infections as f64,
            self.cumulative_infections as f64,
            self.cumulative_deaths as f64,
            c[0] as f64,
            c[1] as f64,
            c[2] as f64,
            c[3] as f64,
            c[4] as f64,
            c[5] as f64,
            self.doses as f64,
        ]
    }
}

/// A scheduled round and what it actually delivered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    pub day: u32,
    pub requested: usize,
    pub administered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunMeta {
    pub label: String,
    pub strategy: String,
    pub schedule: String,
    pub replicate: usize,
    pub network_seed: u64,
    pub epidemic_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsTimeSeries {
    pub meta: RunMeta,
    pub initial_infections: usize,
    pub records: Vec<DayRecord>,
    pub rounds: Vec<RoundRecord>,
}

impl MetricsTimeSeries {
    pub fn new(meta: RunMeta, initial_infections: usize) -> Self {
        MetricsTimeSeries {
            meta,
            initial_infections,
            records: Vec::new(),
            rounds: Vec::new(),
        }
    }

    /// Appends the record for `day`, which must be the next day in sequence.
    pub fn record_day(&mut self, day: u32, outcome: &DayOutcome, state: &SimState, doses: usize) -> Result<()> {
        let expected = self.records.len() as u32 + 1;
        if day != expected {
            return Err(Error::OutOfOrder { expected, got: day });
        }
        self.records.push(DayRecord {
            day,
            new_infections: outcome.new_infections,
            cumulative_infections: state.ever_infected(),
            cumulative_deaths: state.deaths(),
            counts: state.counts(),
            doses,
        });
        Ok(())
    }

    pub fn final_record(&self) -> Option<&DayRecord> {
        self.records.last()
    }

    pub fn final_infections(&self) -> usize {
        self.final_record().map_or(self.initial_infections, |r| r.cumulative_infections)
    }

    pub fn final_deaths(&self) -> usize {
        self.final_record().map_or(0, |r| r.cumulative_deaths)
    }

    pub fn total_doses(&self) -> usize {
        self.records.iter().map(|r| r.doses).sum()
    }

    pub fn unfilled_doses(&self) -> usize {
        self.rounds.iter().map(|r| r.requested - r.administered).sum()
    }

    pub fn write_csv_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.records {
            let c = r.counts;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.day, r.new_infections, r.cumulative_infections, r.cumulative_deaths,
                c[0], c[1], c[2], c[3], c[4], c[5], r.doses
            )?;
        }
        out.flush()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_file(path, |w| self.write_csv_to(w))
    }
}

/// Day-by-day mean over replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanSeries {
    pub label: String,
    pub replicates: usize,
    pub rows: Vec<[f64; 11]>,
}

impl MeanSeries {
    pub fn from_replicates(label: &str, series: &[MetricsTimeSeries]) -> Result<Self> {
        let first = series
            .first()
            .ok_or_else(|| Error::arg("cannot average zero replicates"))?;
        let days = first.records.len();
        if series.iter().any(|s| s.records.len() != days) {
            return Err(Error::arg("replicates differ in length"));
        }
        let k = series.len() as f64;
        let rows = (0..days)
            .map(|d| {
                let mut acc = [0.0f64; 11];
                for s in series {
                    for (a, x) in acc.iter_mut().zip(s.records[d].columns()) {
                        *a += x;
                    }
                }
                acc.iter_mut().skip(1).for_each(|a| *a /= k);
                acc[0] = (d + 1) as f64;
                acc
            })
            .collect();
        Ok(MeanSeries {
            label: label.to_string(),
            replicates: series.len(),
            rows,
        })
    }

    pub fn write_csv_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            let mut line = format!("{}", row[0] as u64);
            for x in &row[1..] {
                write!(line, ",{x:.6}").expect("writing to a String");
            }
            writeln!(out, "{line}")?;
        }
        out.flush()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_file(path, |w| self.write_csv_to(w))
    }
}

fn write_file(path: &Path, f: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    f(&mut w).map_err(|e| Error::io(path, e))
}

pub fn write_rounds_csv(path: &Path, series: &[MetricsTimeSeries]) -> Result<()> {
    write_file(path, |w| {
        writeln!(w, "replicate,day,requested,administered")?;
        for s in series {
            for r in &s.rounds {
                writeln!(w, "{},{},{},{}", s.meta.replicate, r.day, r.requested, r.administered)?;
            }
        }
        w.flush()
    })
}

/// `100 * (baseline - value) / baseline`, undefined for an empty baseline.
pub fn percent_reduction(baseline: f64, value: f64) -> Option<f64> {
    (baseline != 0.0).then(|| 100.0 * (baseline - value) / baseline)
}

/// Arithmetic mean and sample standard deviation (0 for fewer than two values).
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub label: String,
    pub infections_mean: f64,
    pub infections_std: f64,
    pub deaths_mean: f64,
    pub deaths_std: f64,
    pub pct_reduction: Option<f64>,
}

/// One labelled configuration's final values across replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalValues {
    pub label: String,
    pub infections: Vec<f64>,
    pub deaths: Vec<f64>,
}

impl FinalValues {
    pub fn from_series(label: &str, series: &[MetricsTimeSeries]) -> Self {
        FinalValues {
            label: label.to_string(),
            infections: series.iter().map(|s| s.final_infections() as f64).collect(),
            deaths: series.iter().map(|s| s.final_deaths() as f64).collect(),
        }
    }
}

/// Summary rows in input order; reductions are relative to the mean final
/// infections of the row labelled `baseline`.
pub fn summarize(rows: &[FinalValues], baseline: Option<&str>) -> Vec<SummaryRow> {
    let base = baseline
        .and_then(|b| rows.iter().find(|r| r.label == b))
        .map(|r| mean_std(&r.infections).0);
    rows.iter()
        .map(|r| {
            let (im, is) = mean_std(&r.infections);
            let (dm, ds) = mean_std(&r.deaths);
            SummaryRow {
                label: r.label.clone(),
                infections_mean: im,
                infections_std: is,
                deaths_mean: dm,
                deaths_std: ds,
                pct_reduction: base.and_then(|b| percent_reduction(b, im)),
            }
        })
        .collect()
}

fn pct_cell(p: Option<f64>) -> String {
    p.map_or_else(|| UNDEFINED.to_string(), |p| format!("{p:.6}"))
}

pub fn write_summary_csv_to<W: Write>(mut out: W, rows: &[SummaryRow]) -> std::io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.6},{:.6},{:.6},{:.6},{}",
            r.label,
            r.infections_mean,
            r.infections_std,
            r.deaths_mean,
            r.deaths_std,
            pct_cell(r.pct_reduction)
        )?;
    }
    out.flush()
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    write_file(path, |w| write_summary_csv_to(w, rows))
}

/// Aligned plain-text rendering of the summary.
pub fn format_summary_table(rows: &[SummaryRow]) -> String {
    let header = ["label", "infections", "±", "deaths", "±", "reduction %"];
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.label.clone(),
                format!("{:.1}", r.infections_mean),
                format!("{:.1}", r.infections_std),
                format!("{:.1}", r.deaths_mean),
                format!("{:.1}", r.deaths_std),
                r.pct_reduction.map_or_else(|| UNDEFINED.to_string(), |p| format!("{p:.1}")),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cols: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cols
            .iter()
            .zip(width)
            .enumerate()
            .map(|(i, (c, w))| {
                let pad = w - c.chars().count();
                if i == 0 {
                    format!("{c}{}", " ".repeat(pad))
                } else {
                    format!("{}{c}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for row in &cells {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disease::Compartment;

    fn meta() -> RunMeta {
        RunMeta {
            label: "x".into(),
            strategy: "none".into(),
            schedule: "none".into(),
            replicate: 0,
            network_seed: 1,
            epidemic_seed: 2,
        }
    }

    #[test]
    fn record_day_rules() {
        let mut s = MetricsTimeSeries::new(meta(), 0);
        let state = SimState::new(10, 0);
        s.record_day(1, &DayOutcome::default(), &state, 0).unwrap();
        let r = s.records[0];
        assert_eq!((r.new_infections, r.cumulative_infections, r.cumulative_deaths), (0, 0, 0));
        assert_eq!(r.counts.iter().sum::<usize>(), 10);
        assert!(matches!(
            s.record_day(3, &DayOutcome::default(), &state, 0),
            Err(Error::OutOfOrder { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn csv_shape_and_determinism() {
        let mut s = MetricsTimeSeries::new(meta(), 0);
        let state = SimState::new(4, 0);
        for d in 1..=170 {
            s.record_day(d, &DayOutcome::default(), &state, 0).unwrap();
        }
        let mut a = Vec::new();
        s.write_csv_to(&mut a).unwrap();
        let mut b = Vec::new();
        s.write_csv_to(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert_eq!(text.lines().count(), 171);
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().nth(1).unwrap(), "1,0,0,0,4,0,0,0,0,0,0");
    }

    #[test]
    fn mean_series_uses_six_decimals() {
        let mut a = MetricsTimeSeries::new(meta(), 0);
        let mut b = MetricsTimeSeries::new(meta(), 0);
        let mut s1 = SimState::new(3, 0);
        let s2 = SimState::new(3, 0);
        s1.place(0, Compartment::Exposed, 2).unwrap();
        a.record_day(1, &DayOutcome { new_infections: 1, ..Default::default() }, &s1, 1).unwrap();
        b.record_day(1, &DayOutcome::default(), &s2, 0).unwrap();
        let m = MeanSeries::from_replicates("x", &[a, b]).unwrap();
        let mut buf = Vec::new();
        m.write_csv_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "1,0.500000,0.500000,0.000000,2.500000,0.500000,0.000000,0.000000,0.000000,0.000000,0.500000"
        );
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(percent_reduction(10_000.0, 10_000.0), Some(0.0));
        assert!((percent_reduction(10_000.0, 3_900.0).unwrap() - 61.0).abs() < 1e-12);
        assert_eq!(percent_reduction(100.0, 150.0), Some(-50.0));
        assert_eq!(percent_reduction(0.0, 5.0), None);
    }

    #[test]
    fn summary_rows_and_table() {
        let rows = vec![
            FinalValues { label: "none".into(), infections: vec![100.0, 120.0], deaths: vec![2.0, 4.0] },
            FinalValues { label: "preempt".into(), infections: vec![40.0, 48.0], deaths: vec![1.0, 1.0] },
        ];
        let s = summarize(&rows, Some("none"));
        assert_eq!(s[0].pct_reduction, Some(0.0));
        assert!((s[1].pct_reduction.unwrap() - 60.0).abs() < 1e-12);
        assert!((s[0].infections_std - 200f64.sqrt()).abs() < 1e-12);
        let mut buf = Vec::new();
        write_summary_csv_to(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), SUMMARY_HEADER);
        assert!(text.contains("preempt,44.000000,5.656854,1.000000,0.000000,60.000000"));
        let no_base = summarize(&rows[1..], Some("none"));
        assert_eq!(no_base[0].pct_reduction, None);
        let zero = summarize(
            &[FinalValues { label: "none".into(), infections: vec![0.0], deaths: vec![0.0] }],
            Some("none"),
        );
        assert_eq!(zero[0].pct_reduction, None);
        let table = format_summary_table(&s);
        assert_eq!(table.lines().count(), 3);
        assert!(table.lines().nth(2).unwrap().starts_with("preempt"));
    }
}
