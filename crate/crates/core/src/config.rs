//! Experiment configuration files.
//!
//! Configs are TOML documents. The top-level `kind` selects the experiment
//! and fixes which sections must be present:
//!
//! | kind           | required sections                              |
//! |----------------|------------------------------------------------|
//! | `mzi`          | `grid`, `spectrum`, `phi_a`, `phi_b`           |
//! | `hom`          | `grid`, `spectrum_a`, `spectrum_b`, `theta`    |
//! | `qbc`          | `grid`, `spectrum`, `rotator`, `qbc`           |
//! | `oracle-check` | none (`oracle` optional)                       |
//!
//! Every kind except `oracle-check` also accepts an optional `sweep` section
//! that varies one numeric leaf, addressed by a dotted path such as
//! `rotator.slope` or `phi_a.terms.0.length`.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use toml::{Table, Value};

use crate::devices::FrequencyResponse;
use crate::oracle::suite::SuiteOptions;
use crate::oracle::ORACLE_MAX_BINS;
use crate::spectral::{self, FrequencyGrid, SpectralShape};
use crate::{qbc, Complex64, Error, Result};

/// Largest grid accepted from a config file.
pub const MAX_CONFIG_BINS: usize = 1 << 20;

/// Largest number of sweep steps accepted from a config file.
pub const MAX_SWEEP_STEPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Mzi,
    Hom,
    Qbc,
    OracleCheck,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Mzi => "mzi",
            Kind::Hom => "hom",
            Kind::Qbc => "qbc",
            Kind::OracleCheck => "oracle-check",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "mzi" => Some(Kind::Mzi),
            "hom" => Some(Kind::Hom),
            "qbc" => Some(Kind::Qbc),
            "oracle-check" => Some(Kind::OracleCheck),
            _ => None,
        }
    }

    fn sections(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Kind::Mzi => (&["grid", "spectrum", "phi_a", "phi_b"], &["sweep"]),
            Kind::Hom => (&["grid", "spectrum_a", "spectrum_b", "theta"], &["sweep"]),
            Kind::Qbc => (&["grid", "spectrum", "rotator", "qbc"], &["sweep"]),
            Kind::OracleCheck => (&[], &["oracle"]),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QbcSettings {
    pub omega_0: f64,
    pub committed_bit: u8,
    pub cheat: bool,
    /// Monte-Carlo trials; 0 skips the simulation.
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Mzi {
        spectrum: SpectralShape,
        phi_a: FrequencyResponse,
        phi_b: FrequencyResponse,
    },
    Hom {
        spectrum_a: SpectralShape,
        spectrum_b: SpectralShape,
        theta: FrequencyResponse,
    },
    Qbc {
        spectrum: SpectralShape,
        rotator: FrequencyResponse,
        settings: QbcSettings,
    },
    OracleCheck(SuiteOptions),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    /// Linearly spaced values including both endpoints.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// A validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub grid: Option<FrequencyGrid>,
    pub experiment: Experiment,
    pub sweep: Option<Sweep>,
    /// Non-fatal diagnostics, e.g. spectra truncated by the grid.
    pub warnings: Vec<String>,
    document: Table,
}

impl ExperimentConfig {
    pub fn kind(&self) -> Kind {
        match self.experiment {
            Experiment::Mzi { .. } => Kind::Mzi,
            Experiment::Hom { .. } => Kind::Hom,
            Experiment::Qbc { .. } => Kind::Qbc,
            Experiment::OracleCheck(_) => Kind::OracleCheck,
        }
    }

    /// Grid of a non-oracle experiment.
    pub fn require_grid(&self) -> Result<FrequencyGrid> {
        self.grid.ok_or_else(|| Error::config("grid", "missing"))
    }

    /// Replaces the seed of a `qbc` or `oracle-check` config.
    pub fn with_seed(self, seed: u64) -> Result<Self> {
        let section = match self.kind() {
            Kind::Qbc => "qbc",
            Kind::OracleCheck => "oracle",
            other => {
                return Err(Error::config(
                    "seed",
                    format!("kind `{}` has no seed", other.name()),
                ))
            }
        };
        self.with_integer(section, "seed", seed)
    }

    /// Overrides the trial count and largest grid of an `oracle-check` config.
    pub fn with_oracle_limits(
        mut self,
        trials: Option<usize>,
        max_bins: Option<usize>,
    ) -> Result<Self> {
        if self.kind() != Kind::OracleCheck {
            return Err(Error::config(
                "oracle",
                "only `oracle-check` configs take suite limits",
            ));
        }
        if let Some(t) = trials {
            self = self.with_integer("oracle", "trials", t as u64)?;
        }
        if let Some(m) = max_bins {
            self = self.with_integer("oracle", "max_bins", m as u64)?;
        }
        Ok(self)
    }

    fn with_integer(mut self, section: &str, key: &str, value: u64) -> Result<Self> {
        let value = i64::try_from(value).map_err(|_| {
            Error::config(
                format!("{section}.{key}"),
                "must fit in a signed 64-bit integer",
            )
        })?;
        let entry = self
            .document
            .entry(section)
            .or_insert_with(|| Value::Table(Table::new()));
        match entry {
            Value::Table(t) => {
                t.insert(key.into(), Value::Integer(value));
            }
            _ => return Err(Error::config(section, "expected a table")),
        }
        from_document(self.document)
    }

    /// The config with the sweep leaf set to `value`, sweep block removed.
    pub fn at_sweep_value(&self, value: f64) -> Result<ExperimentConfig> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| Error::config("sweep", "config has no sweep"))?;
        let mut doc = self.document.clone();
        doc.remove("sweep");
        set_leaf(&mut doc, &sweep.parameter, value)?;
        from_document(doc)
    }

    pub fn document(&self) -> &Table {
        &self.document
    }
}

/// Reads and validates a config file.
pub fn load_config(path: impl AsRef<std::path::Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), format!("cannot read file: {e}")))?;
    parse_config(&text)
}

/// Parses and validates config text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let doc: Table =
        toml::from_str(text).map_err(|e| Error::config("<document>", e.message().to_string()))?;
    let config = from_document(doc)?;
    if let Some(sweep) = &config.sweep {
        // endpoints must produce valid configs too
        for v in [sweep.start, sweep.stop] {
            config
                .at_sweep_value(v)
                .map_err(|e| e.context(format!("sweep value {v}")))?;
        }
    }
    Ok(config)
}

/// Parses a single device response written as a TOML table.
pub fn parse_response(text: &str) -> Result<FrequencyResponse> {
    toml::from_str(text).map_err(|e| Error::config("<response>", e.message().to_string()))
}

/// Parses a single spectral shape written as a TOML table.
pub fn parse_shape(text: &str) -> Result<SpectralShape> {
    let repr: ShapeRepr =
        toml::from_str(text).map_err(|e| Error::config("<shape>", e.message().to_string()))?;
    repr.into_shape("<shape>")
}

fn from_document(doc: Table) -> Result<ExperimentConfig> {
    let kind_name = match doc.get("kind") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return Err(Error::config("kind", "must be a string")),
        None => return Err(Error::config("kind", "missing")),
    };
    let kind = Kind::parse(kind_name).ok_or_else(|| {
        Error::config(
            "kind",
            format!("unknown kind `{kind_name}`; expected mzi, hom, qbc or oracle-check"),
        )
    })?;
    let (required, optional) = kind.sections();
    for key in doc.keys() {
        if key != "kind" && !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(Error::config(
                key.clone(),
                format!("not allowed for kind `{}`", kind.name()),
            ));
        }
    }
    for key in required {
        if !doc.contains_key(*key) {
            return Err(Error::config(
                *key,
                format!("required for kind `{}`", kind.name()),
            ));
        }
    }

    let mut warnings = Vec::new();
    let grid = if kind == Kind::OracleCheck {
        None
    } else {
        let grid: FrequencyGrid = section(&doc, "grid")?;
        if grid.n_bins() > MAX_CONFIG_BINS {
            return Err(Error::config(
                "grid.n_bins",
                format!("at most {MAX_CONFIG_BINS} bins are supported"),
            ));
        }
        Some(grid)
    };

    let experiment = match kind {
        Kind::Mzi => {
            let grid = grid.expect("grid parsed above");
            let spectrum = shape_section(&doc, "spectrum")?;
            check_discretization(&spectrum, &grid, "spectrum", &mut warnings)?;
            Experiment::Mzi {
                spectrum,
                phi_a: response_section(&doc, "phi_a")?,
                phi_b: response_section(&doc, "phi_b")?,
            }
        }
        Kind::Hom => {
            let grid = grid.expect("grid parsed above");
            let spectrum_a = shape_section(&doc, "spectrum_a")?;
            let spectrum_b = shape_section(&doc, "spectrum_b")?;
            check_discretization(&spectrum_a, &grid, "spectrum_a", &mut warnings)?;
            check_discretization(&spectrum_b, &grid, "spectrum_b", &mut warnings)?;
            Experiment::Hom {
                spectrum_a,
                spectrum_b,
                theta: response_section(&doc, "theta")?,
            }
        }
        Kind::Qbc => {
            let grid = grid.expect("grid parsed above");
            let spectrum = shape_section(&doc, "spectrum")?;
            let raw: QbcRepr = section(&doc, "qbc")?;
            if raw.committed_bit > 1 {
                return Err(Error::config("qbc.committed_bit", "must be 0 or 1"));
            }
            qbc::pair_index(raw.omega_0, &grid)
                .map_err(|e| Error::config("qbc.omega_0", e.to_string()))?;
            let b = qbc::make_bell_biphoton(&spectrum, raw.omega_0, &grid)
                .map_err(|e| Error::config("spectrum", e.to_string()))?;
            if b.is_truncated() {
                warnings.push(format!(
                    "spectrum: {:.3e} of the pair probability falls outside the grid",
                    b.truncated_mass()
                ));
            }
            Experiment::Qbc {
                spectrum,
                rotator: response_section(&doc, "rotator")?,
                settings: QbcSettings {
                    omega_0: raw.omega_0,
                    committed_bit: raw.committed_bit,
                    cheat: raw.cheat,
                    trials: raw.trials,
                    seed: raw.seed,
                },
            }
        }
        Kind::OracleCheck => {
            let defaults = SuiteOptions::default();
            let raw: OracleRepr = if doc.contains_key("oracle") {
                section(&doc, "oracle")?
            } else {
                OracleRepr::default()
            };
            let opts = SuiteOptions {
                trials: raw.trials.unwrap_or(defaults.trials),
                max_bins: raw.max_bins.unwrap_or(defaults.max_bins),
                seed: raw.seed.unwrap_or(defaults.seed),
            };
            if opts.trials == 0 {
                return Err(Error::config("oracle.trials", "must be at least 1"));
            }
            if opts.max_bins == 0 {
                return Err(Error::config("oracle.max_bins", "must be at least 1"));
            }
            if opts.max_bins > ORACLE_MAX_BINS {
                return Err(Error::OracleCapacity {
                    bins: opts.max_bins,
                    limit: ORACLE_MAX_BINS,
                }
                .context("oracle.max_bins"));
            }
            Experiment::OracleCheck(opts)
        }
    };

    let sweep = if doc.contains_key("sweep") {
        let raw: SweepRepr = section(&doc, "sweep")?;
        if !(raw.start.is_finite() && raw.stop.is_finite()) {
            return Err(Error::config("sweep", "start and stop must be finite"));
        }
        if raw.steps == 0 || raw.steps > MAX_SWEEP_STEPS {
            return Err(Error::config(
                "sweep.steps",
                format!("must be in 1..={MAX_SWEEP_STEPS}"),
            ));
        }
        if raw.parameter == "sweep" || raw.parameter.starts_with("sweep.") {
            return Err(Error::config(
                "sweep.parameter",
                "cannot sweep the sweep block",
            ));
        }
        resolve_leaf(&doc, &raw.parameter)?;
        Some(Sweep {
            parameter: raw.parameter,
            start: raw.start,
            stop: raw.stop,
            steps: raw.steps,
        })
    } else {
        None
    };

    Ok(ExperimentConfig {
        grid,
        experiment,
        sweep,
        warnings,
        document: doc,
    })
}

fn section<T: DeserializeOwned>(doc: &Table, key: &str) -> Result<T> {
    let value = doc
        .get(key)
        .ok_or_else(|| Error::config(key, "missing"))?
        .clone();
    value
        .try_into()
        .map_err(|e: toml::de::Error| Error::config(key, e.message().to_string()))
}

fn response_section(doc: &Table, key: &str) -> Result<FrequencyResponse> {
    section(doc, key)
}

fn shape_section(doc: &Table, key: &str) -> Result<SpectralShape> {
    let repr: ShapeRepr = section(doc, key)?;
    repr.into_shape(key)
}

fn check_discretization(
    shape: &SpectralShape,
    grid: &FrequencyGrid,
    key: &str,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let d = spectral::discretize(shape, grid).map_err(|e| Error::config(key, e.to_string()))?;
    if d.is_truncated() {
        warnings.push(format!(
            "{key}: sampled mass {:.9} differs from 1 by {:.3e}; the grid may truncate the spectrum",
            d.sampled_mass,
            d.truncated_mass()
        ));
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
enum ShapeRepr {
    Gaussian {
        center: f64,
        std: f64,
    },
    Lorentzian {
        center: f64,
        half_width: f64,
    },
    Rectangular {
        low: f64,
        high: f64,
    },
    /// Rows of `[frequency, re]` or `[frequency, re, im]`.
    Table {
        samples: Vec<Vec<f64>>,
    },
}

impl ShapeRepr {
    fn into_shape(self, key: &str) -> Result<SpectralShape> {
        let shape = match self {
            ShapeRepr::Gaussian { center, std } => SpectralShape::Gaussian { center, std },
            ShapeRepr::Lorentzian { center, half_width } => {
                SpectralShape::Lorentzian { center, half_width }
            }
            ShapeRepr::Rectangular { low, high } => SpectralShape::Rectangular { low, high },
            ShapeRepr::Table { samples } => {
                let rows = samples
                    .into_iter()
                    .enumerate()
                    .map(|(i, row)| match row.as_slice() {
                        [w, re] => Ok((*w, Complex64::new(*re, 0.0))),
                        [w, re, im] => Ok((*w, Complex64::new(*re, *im))),
                        _ => Err(Error::config(
                            format!("{key}.samples[{i}]"),
                            "expected [frequency, re] or [frequency, re, im]",
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                SpectralShape::Table(rows)
            }
        };
        shape
            .validate()
            .map_err(|e| Error::config(key, e.to_string()))?;
        Ok(shape)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QbcRepr {
    omega_0: f64,
    #[serde(default)]
    committed_bit: u8,
    #[serde(default = "default_cheat")]
    cheat: bool,
    #[serde(default)]
    trials: u64,
    #[serde(default)]
    seed: u64,
}

fn default_cheat() -> bool {
    true
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleRepr {
    trials: Option<usize>,
    max_bins: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepRepr {
    parameter: String,
    start: f64,
    stop: f64,
    steps: usize,
}

fn resolve_leaf<'a>(doc: &'a Table, path: &str) -> Result<&'a Value> {
    let mut segments = path.split('.');
    let first = segments.next().unwrap_or_default();
    let mut node = doc
        .get(first)
        .ok_or_else(|| Error::config("sweep.parameter", format!("`{path}` does not exist")))?;
    for seg in segments {
        node = match node {
            Value::Table(t) => t.get(seg),
            Value::Array(a) => seg.parse::<usize>().ok().and_then(|i| a.get(i)),
            _ => None,
        }
        .ok_or_else(|| Error::config("sweep.parameter", format!("`{path}` does not exist")))?;
    }
    match node {
        Value::Integer(_) | Value::Float(_) => Ok(node),
        _ => Err(Error::config(
            "sweep.parameter",
            format!("`{path}` is not a numeric scalar"),
        )),
    }
}

fn set_leaf(doc: &mut Table, path: &str, value: f64) -> Result<()> {
    let not_found = || Error::config("sweep.parameter", format!("`{path}` does not exist"));
    let mut segments = path.split('.');
    let first = segments.next().unwrap_or_default();
    let mut node = doc.get_mut(first).ok_or_else(not_found)?;
    for seg in segments {
        node = match node {
            Value::Table(t) => t.get_mut(seg),
            Value::Array(a) => seg.parse::<usize>().ok().and_then(|i| a.get_mut(i)),
            _ => None,
        }
        .ok_or_else(not_found)?;
    }
    match node {
        Value::Integer(i) => {
            let rounded = value.round();
            if !(rounded.is_finite() && rounded.abs() < 9.0e18) {
                return Err(Error::config(
                    path,
                    format!("sweep value {value} does not fit an integer field"),
                ));
            }
            *i = rounded as i64;
        }
        Value::Float(f) => *f = value,
        _ => {
            return Err(Error::config(
                "sweep.parameter",
                format!("`{path}` is not a numeric scalar"),
            ))
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

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
kind = "constant"
value = 0.0
[phi_b]
kind = "constant"
value = 0.0
"#;

    const QBC: &str = r#"
kind = "qbc"
[grid]
omega_s = 1.0
n_bins = 300
[spectrum]
shape = "gaussian"
center = 0.0
std = 5.0
[rotator]
kind = "linear"
value_at_ref = 1.5707963267948966
slope = 0.0
ref_frequency = 100.0
[qbc]
omega_0 = 100.0
trials = 1000
seed = 7
[sweep]
parameter = "rotator.slope"
start = 0.0
stop = 0.05
steps = 50
"#;

    fn err_key(e: Error) -> String {
        match e {
            Error::Config { key, .. } => key,
            Error::Context { source, .. } => err_key(*source),
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn minimal_mzi() {
        let c = parse_config(MZI).unwrap();
        assert_eq!(c.kind(), Kind::Mzi);
        assert!(c.sweep.is_none());
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn qbc_with_sweep() {
        let c = parse_config(QBC).unwrap();
        assert_eq!(c.kind(), Kind::Qbc);
        let sweep = c.sweep.as_ref().unwrap();
        assert_eq!(sweep.steps, 50);
        let values = sweep.values();
        assert_eq!(values.len(), 50);
        assert_eq!(values[0], 0.0);
        assert_eq!(values[49], 0.05);
        let last = c.at_sweep_value(0.05).unwrap();
        match last.experiment {
            Experiment::Qbc { rotator, .. } => {
                assert_eq!(
                    rotator,
                    FrequencyResponse::linear(std::f64::consts::FRAC_PI_2, 0.05, 100.0)
                )
            }
            _ => unreachable!(),
        }
        assert!(last.sweep.is_none());
    }

    #[test]
    fn incommensurate_carrier_named() {
        let text = QBC.replace("omega_0 = 100.0", "omega_0 = 99.75");
        let e = parse_config(&text).unwrap_err();
        assert!(e.to_string().contains("incommensurate"), "{e}");
        assert_eq!(err_key(e), "qbc.omega_0");
    }

    #[test]
    fn schema_violations() {
        let cases = [
            (MZI.replace("kind = \"mzi\"", "kind = \"laser\""), "kind"),
            (
                MZI.replace("[phi_b]\nkind = \"constant\"\nvalue = 0.0\n", ""),
                "phi_b",
            ),
            (
                format!("{MZI}\n[theta]\nkind = \"constant\"\nvalue = 1.0\n"),
                "theta",
            ),
            (MZI.replace("n_bins = 64", "n_bins = 0"), "grid"),
            (MZI.replace("std = 4.0", "std = -4.0"), "spectrum"),
            (MZI.replace("center = 32.0", "center = 500.0"), "spectrum"),
            (
                MZI.replace(
                    "kind = \"constant\"\nvalue = 0.0\n[phi_b]",
                    "kind = \"constant\"\nvalue = 0.0\nbogus = 1\n[phi_b]",
                ),
                "phi_a",
            ),
            (
                QBC.replace("omega_0 = 100.0", "omega_0 = 100.0\ncommitted_bit = 2"),
                "qbc.committed_bit",
            ),
            (
                QBC.replace("rotator.slope", "rotator.kind"),
                "sweep.parameter",
            ),
            (
                QBC.replace("rotator.slope", "rotator.missing"),
                "sweep.parameter",
            ),
            (QBC.replace("steps = 50", "steps = 0"), "sweep.steps"),
            ("kind = 3".to_string(), "kind"),
            ("not toml at all [".to_string(), "<document>"),
        ];
        for (text, key) in cases {
            let e = parse_config(&text).unwrap_err();
            assert_eq!(err_key(e), key, "{text}");
        }
    }

    #[test]
    fn sweep_endpoint_validation() {
        // the stop value pushes the Gaussian off the grid entirely
        let text = format!(
            "{MZI}\n[sweep]\nparameter = \"spectrum.center\"\nstart = 32.0\nstop = 1000.0\nsteps = 3\n"
        );
        let e = parse_config(&text).unwrap_err();
        assert!(matches!(e, Error::Context { .. }));
    }

    #[test]
    fn integer_leaves_round() {
        let text = format!(
            "{MZI}\n[sweep]\nparameter = \"grid.n_bins\"\nstart = 60\nstop = 70\nsteps = 3\n"
        );
        let c = parse_config(&text).unwrap();
        let mid = c.at_sweep_value(65.4).unwrap();
        assert_eq!(mid.grid.unwrap().n_bins(), 65);
    }

    #[test]
    fn seed_override() {
        let c = parse_config(QBC).unwrap().with_seed(99).unwrap();
        match c.experiment {
            Experiment::Qbc { settings, .. } => assert_eq!(settings.seed, 99),
            _ => unreachable!(),
        }
        assert!(parse_config(MZI).unwrap().with_seed(1).is_err());
        let o = parse_config("kind = \"oracle-check\"")
            .unwrap()
            .with_seed(5)
            .unwrap();
        assert_eq!(
            o.experiment,
            Experiment::OracleCheck(SuiteOptions {
                seed: 5,
                ..SuiteOptions::default()
            })
        );
    }

    #[test]
    fn array_paths() {
        let text = r#"
kind = "mzi"
[grid]
omega_s = 1.0
n_bins = 32
[spectrum]
shape = "table"
samples = [[10.0, 0.0], [16.0, 1.0, 0.5], [22.0, 0.0]]
[phi_a]
kind = "sum"
[[phi_a.terms]]
kind = "constant"
value = 0.1
[[phi_a.terms]]
kind = "fiber"
beta = 0.0
beta2 = 0.01
beta3 = 0.0
length = 1.0
carrier = 16.0
[phi_b]
kind = "constant"
value = 0.0
[sweep]
parameter = "phi_a.terms.1.length"
start = 0.0
stop = 2.0
steps = 5
"#;
        let c = parse_config(text).unwrap();
        let at = c.at_sweep_value(2.0).unwrap();
        match at.experiment {
            Experiment::Mzi { phi_a, .. } => {
                assert!((phi_a.eval(18.0).unwrap() - 0.14).abs() < 1e-12)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn single_items() {
        assert!(parse_shape("shape = \"rectangular\"\nlow = 1.0\nhigh = 2.0").is_ok());
        assert!(parse_shape("shape = \"table\"\nsamples = [[1.0]]").is_err());
        assert!(parse_response("kind = \"constant\"\nvalue = 0.5").is_ok());
        assert!(parse_response(
            "kind = \"sampled\"\nvalues = [1.0]\ngrid = { omega_s = 1.0, n_bins = 2 }"
        )
        .is_err());
    }
}
