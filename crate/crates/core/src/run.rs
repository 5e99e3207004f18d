//! Executes validated configs and renders the results as CSV.

use std::io::Write;

use rayon::prelude::*;

use crate::config::{Experiment, ExperimentConfig, QbcSettings};
use crate::oracle::suite::{run_equivalence_suite, SuiteOptions};
use crate::oracle::{oracle_hom, ORACLE_MAX_BINS};
use crate::qbc::{self, ProtocolTrialRecord};
use crate::spectral::{self, FrequencyGrid, SpectralShape};
use crate::{interference, Error, FrequencyResponse, Result};

pub const MZI_COLUMNS: [&str; 3] = ["sweep_value", "p_a", "p_b"];
pub const HOM_COLUMNS: [&str; 3] = ["sweep_value", "p_coin_eq24", "p_coin_oracle_full"];
pub const QBC_COLUMNS: [&str; 5] = [
    "sweep_value",
    "pe_closed_form",
    "pe_monte_carlo",
    "n_trials",
    "seed",
];
pub const ORACLE_COLUMNS: [&str; 4] = ["check_name", "n_trials", "max_abs_error", "status"];
pub const RECORD_COLUMNS: [&str; 6] = [
    "trial",
    "pair_k",
    "alice_outcome",
    "bob_outcome",
    "announced_bit",
    "verdict",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    /// A probability, written with 12 significant digits.
    Probability(f64),
    /// Any other real, written in shortest round-trip form.
    Real(f64),
    /// A real written in scientific notation.
    Scientific(f64),
    Integer(u64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Probability(x) | Cell::Real(x) | Cell::Scientific(x) => Some(x),
            Cell::Integer(i) => Some(i as f64),
            Cell::Empty | Cell::Text(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Probability(x) => format_probability(*x),
            Cell::Real(x) => format!("{x}"),
            Cell::Scientific(x) => format!("{x:e}"),
            Cell::Integer(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Rounds to 12 significant digits and prints the shortest string that
/// parses back to the rounded value.
pub fn format_probability(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 || (1e-4..1e16).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Rows of one run, in sweep order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepResult {
    /// Values of a named column; `None` for empty cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    /// Names of failed checks in an oracle-check result.
    pub fn failed_checks(&self) -> Vec<String> {
        let (Some(name), Some(status)) = (
            self.columns.iter().position(|c| *c == "check_name"),
            self.columns.iter().position(|c| *c == "status"),
        ) else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter(|r| r[status] != Cell::Text("pass".into()))
            .map(|r| r[name].render())
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Runs the experiment, one row per sweep step (one row without a sweep).
pub fn run(config: &ExperimentConfig) -> Result<SweepResult> {
    if let Experiment::OracleCheck(opts) = &config.experiment {
        return oracle_check(opts);
    }
    let columns: Vec<&'static str> = match config.experiment {
        Experiment::Mzi { .. } => MZI_COLUMNS.to_vec(),
        Experiment::Hom { .. } => HOM_COLUMNS.to_vec(),
        Experiment::Qbc { .. } => QBC_COLUMNS.to_vec(),
        Experiment::OracleCheck(_) => unreachable!("handled above"),
    };
    let rows = match &config.sweep {
        None => vec![row(config, None, None)?],
        Some(sweep) => sweep
            .values()
            .into_par_iter()
            .enumerate()
            .map(|(step, value)| {
                config
                    .at_sweep_value(value)
                    .and_then(|c| row(&c, Some(value), Some(step as u64)))
                    .map_err(|e| e.context(format!("{} = {value} (step {step})", sweep.parameter)))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(SweepResult { columns, rows })
}

/// Per-trial records of a single (non-sweep) qbc run.
pub fn qbc_records(config: &ExperimentConfig) -> Result<Vec<ProtocolTrialRecord>> {
    if config.sweep.is_some() {
        return Err(Error::config(
            "sweep",
            "trial records are only available without a sweep",
        ));
    }
    let Experiment::Qbc {
        spectrum,
        rotator,
        settings,
    } = &config.experiment
    else {
        return Err(Error::config("kind", "trial records require kind `qbc`"));
    };
    let b = qbc::make_bell_biphoton(spectrum, settings.omega_0, &config.require_grid()?)?;
    let run = qbc::simulate_protocol(
        &b,
        rotator,
        settings.committed_bit,
        settings.cheat,
        settings.trials,
        settings.seed,
    )?;
    Ok(run.records)
}

pub fn write_records_csv<W: Write>(records: &[ProtocolTrialRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.pair_k.to_string(),
            r.alice_outcome.to_string(),
            r.bob_outcome.to_string(),
            r.announced_bit.to_string(),
            r.bob_verdict.to_string(),
        ])?;
    }
    w.flush()
}

/// Monte-Carlo seed of sweep step `step`: a SplitMix64 mix of both inputs.
pub fn step_seed(seed: u64, step: u64) -> u64 {
    let mut z = seed ^ step.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn row(
    config: &ExperimentConfig,
    sweep_value: Option<f64>,
    step: Option<u64>,
) -> Result<Vec<Cell>> {
    let first = sweep_value.map_or(Cell::Empty, Cell::Real);
    let grid = config.require_grid()?;
    let mut cells = vec![first];
    match &config.experiment {
        Experiment::Mzi {
            spectrum,
            phi_a,
            phi_b,
        } => {
            let s = discretized(spectrum, &grid, "spectrum")?;
            let p = interference::mzi_probabilities(&s, phi_a, phi_b)?;
            cells.extend([Cell::Probability(p.p_a), Cell::Probability(p.p_b)]);
        }
        Experiment::Hom {
            spectrum_a,
            spectrum_b,
            theta,
        } => {
            let s = discretized(spectrum_a, &grid, "spectrum_a")?;
            let t = discretized(spectrum_b, &grid, "spectrum_b")?;
            let closed = interference::hom_coincidence(&s, &t, theta)?;
            let full = if grid.n_bins() <= ORACLE_MAX_BINS {
                Cell::Probability(oracle_hom(&s, &t, theta)?.p_coin_full)
            } else {
                Cell::Empty
            };
            cells.extend([Cell::Probability(closed), full]);
        }
        Experiment::Qbc {
            spectrum,
            rotator,
            settings,
        } => cells.extend(qbc_cells(spectrum, rotator, settings, &grid, step)?),
        Experiment::OracleCheck(_) => unreachable!("oracle checks produce their own table"),
    }
    Ok(cells)
}

fn qbc_cells(
    spectrum: &SpectralShape,
    rotator: &FrequencyResponse,
    settings: &QbcSettings,
    grid: &FrequencyGrid,
    step: Option<u64>,
) -> Result<Vec<Cell>> {
    let b = qbc::make_bell_biphoton(spectrum, settings.omega_0, grid)
        .map_err(|e| e.context("spectrum"))?;
    let pe = qbc::cheat_error_probability(&b, rotator).map_err(|e| e.context("rotator"))?;
    let seed = step.map_or(settings.seed, |s| step_seed(settings.seed, s));
    let mc = if settings.trials > 0 {
        let run = qbc::simulate_protocol(
            &b,
            rotator,
            settings.committed_bit,
            settings.cheat,
            settings.trials,
            seed,
        )?;
        Cell::Probability(run.detection_rate)
    } else {
        Cell::Empty
    };
    Ok(vec![
        Cell::Probability(pe),
        mc,
        Cell::Integer(settings.trials),
        Cell::Integer(seed),
    ])
}

fn discretized(
    shape: &SpectralShape,
    grid: &FrequencyGrid,
    key: &str,
) -> Result<spectral::SpectralAmplitude> {
    spectral::discretize(shape, grid)
        .map(|d| d.amplitude)
        .map_err(|e| e.context(key))
}

fn oracle_check(opts: &SuiteOptions) -> Result<SweepResult> {
    let outcomes = run_equivalence_suite(opts)?;
    Ok(SweepResult {
        columns: ORACLE_COLUMNS.to_vec(),
        rows: outcomes
            .into_iter()
            .map(|o| {
                let status = if o.passed() { "pass" } else { "fail" };
                vec![
                    Cell::Text(o.name.to_string()),
                    Cell::Integer(o.n_trials as u64),
                    Cell::Scientific(o.max_abs_error),
                    Cell::Text(status.into()),
                ]
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    const MZI: &str = r#"
kind = "mzi"
[grid]
omega_s = 1.0
n_bins = 64
[spectrum]
shape = "gaussian"
center = 32.0
std = 4.0
[phi_a]
kind = "linear"
value_at_ref = 0.3
slope = 0.05
ref_frequency = 32.0
[phi_b]
kind = "linear"
value_at_ref = 0.3
slope = 0.05
ref_frequency = 32.0
"#;

    #[test]
    fn probability_formatting() {
        assert_eq!(format_probability(1.0), "1");
        assert_eq!(format_probability(0.0), "0");
        assert_eq!(format_probability(0.25), "0.25");
        assert_eq!(format_probability(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_probability(0.1 + 0.2), "0.3");
        assert_eq!(format_probability(1.0 - 1e-15), "1");
        assert_eq!(format_probability(2.0 / 3.0 * 1e-7), "6.66666666667e-8");
    }

    #[test]
    fn equal_arms_single_row() {
        let c = parse_config(MZI).unwrap();
        let r = run(&c).unwrap();
        assert_eq!(r.columns, MZI_COLUMNS);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0][0], Cell::Empty);
        assert!((r.rows[0][1].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert!(r.rows[0][2].as_f64().unwrap().abs() < 1e-12);
        assert_eq!(
            r.to_csv_string().lines().next(),
            Some("sweep_value,p_a,p_b")
        );
    }

    #[test]
    fn sweep_rows_in_order() {
        let text = format!(
            "{MZI}\n[sweep]\nparameter = \"phi_a.value_at_ref\"\nstart = 0.3\nstop = 3.4415926535897931\nsteps = 7\n"
        );
        let r = run(&parse_config(&text).unwrap()).unwrap();
        assert_eq!(r.rows.len(), 7);
        let xs: Vec<f64> = r
            .column("sweep_value")
            .unwrap()
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let pa = r.column("p_a").unwrap();
        // phase difference π at the last step sends everything to b
        assert!(pa[6].unwrap() < 1e-12);
        for row in &r.rows {
            let sum =
                row[1].render().parse::<f64>().unwrap() + row[2].render().parse::<f64>().unwrap();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn step_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..100).map(|s| step_seed(42, s)).collect();
        assert_eq!(seeds.len(), 100);
        assert_eq!(step_seed(42, 3), step_seed(42, 3));
    }

    #[test]
    fn oracle_table() {
        let c =
            parse_config("kind = \"oracle-check\"\n[oracle]\ntrials = 5\nmax_bins = 4\n").unwrap();
        let r = run(&c).unwrap();
        assert_eq!(r.columns, ORACLE_COLUMNS);
        assert!(r.failed_checks().is_empty(), "{:?}", r.failed_checks());
    }

    #[test]
    fn records_csv_header() {
        let mut buf = Vec::new();
        write_records_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "trial,pair_k,alice_outcome,bob_outcome,announced_bit,verdict\n"
        );
    }
}
