//! TOML scenario and sweep files.
//!
//! Unknown keys are rejected so a misspelled field never silently falls
//! back to its default. A scenario file looks like
//!
//! ```toml
//! wavelength_m = 0.1          # or frequency_hz, exactly one of the two
//! tx_power_w = 1.0
//! efficiency = 1.0
//! strategy = "focusing"       # beamforming | uniform | { custom = "b.csv" }
//!
//! [pattern]
//! q = 0.285                   # or broadside_gain_dbi
//!
//! [ris]
//! rows = 40
//! cols = 40
//! spacing_over_lambda = 0.5
//!
//! [tx]
//! r_lambda = 1000.0           # or r_m
//! psi_deg = 0.0
//!
//! [rx]
//! r_m = 100.0
//! psi_deg = 30.0
//! azimuth_deg = 0.0
//! ```

use super::sweep::{Normalization, SweepSpec, SweepStrategy, DEFAULT_MAX_PER_SIDE};
use crate::coeffs::{self, CoefficientSet};
use crate::geometry::{build_square_grid, TerminalPlacement};
use crate::link::Scenario;
use crate::pattern::{benchmark_pattern, pattern_from_broadside_gain, ElementPattern};
use crate::{db, Error, Result, SPEED_OF_LIGHT};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub broadside_gain_dbi: Option<f64>,
}

impl PatternConfig {
    pub fn resolve(&self) -> Result<ElementPattern> {
        match (self.q, self.broadside_gain_dbi) {
            (Some(_), Some(_)) => Err(Error::config(
                "pattern",
                "give either q or broadside_gain_dbi, not both",
            )),
            (Some(q), None) => {
                ElementPattern::new(q).map_err(|e| Error::config("pattern.q", e.to_string()))
            }
            (None, Some(dbi)) => pattern_from_broadside_gain(db::from_db(dbi))
                .map_err(|e| Error::config("pattern.broadside_gain_dbi", e.to_string())),
            (None, None) => Ok(benchmark_pattern()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RisConfig {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "half")]
    pub spacing_over_lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminalConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub psi_deg: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub azimuth_deg: f64,
}

impl TerminalConfig {
    fn resolve(&self, field: &str, wavelength: f64) -> Result<TerminalPlacement> {
        let r = match (self.r_m, self.r_lambda) {
            (Some(r), None) => r,
            (None, Some(r)) => r * wavelength,
            _ => {
                return Err(Error::config(
                    field,
                    "exactly one of r_m or r_lambda is required",
                ))
            }
        };
        TerminalPlacement::polar(r, self.psi_deg.to_radians(), self.azimuth_deg.to_radians())
            .map_err(|e| Error::config(field, e.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyConfig {
    #[default]
    Focusing,
    Beamforming,
    Uniform,
    /// Two-column CSV, path relative to the scenario file.
    Custom(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_hz: Option<f64>,
    #[serde(default = "one")]
    pub tx_power_w: f64,
    #[serde(default = "one")]
    pub tx_gain: f64,
    #[serde(default = "one")]
    pub rx_gain: f64,
    #[serde(default = "one")]
    pub efficiency: f64,
    #[serde(default)]
    pub pattern: PatternConfig,
    #[serde(default)]
    pub strategy: StrategyConfig,
    pub ris: RisConfig,
    pub tx: TerminalConfig,
    pub rx: TerminalConfig,
}

fn resolve_wavelength(wavelength_m: Option<f64>, frequency_hz: Option<f64>) -> Result<f64> {
    let lambda = match (wavelength_m, frequency_hz) {
        (Some(_), Some(_)) => {
            return Err(Error::config(
                "wavelength_m",
                "wavelength_m and frequency_hz are mutually exclusive",
            ))
        }
        (None, None) => {
            return Err(Error::config(
                "wavelength_m",
                "missing; one of wavelength_m or frequency_hz is required",
            ))
        }
        (Some(l), None) => l,
        (None, Some(f)) => {
            if !(f > 0.0) {
                return Err(Error::config(
                    "frequency_hz",
                    format!("must be positive, got {f}"),
                ));
            }
            SPEED_OF_LIGHT / f
        }
    };
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::config(
            "wavelength_m",
            format!("must be positive, got {lambda}"),
        ));
    }
    Ok(lambda)
}

impl ScenarioConfig {
    pub fn wavelength(&self) -> Result<f64> {
        resolve_wavelength(self.wavelength_m, self.frequency_hz)
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let lambda = self.wavelength()?;
        let pattern = self.pattern.resolve()?;
        if !(self.ris.spacing_over_lambda > 0.0) {
            return Err(Error::config(
                "ris.spacing_over_lambda",
                format!("must be positive, got {}", self.ris.spacing_over_lambda),
            ));
        }
        let ris = build_square_grid(
            self.ris.rows,
            self.ris.cols,
            self.ris.spacing_over_lambda * lambda,
        )
        .map_err(|e| Error::config("ris", e.to_string()))?;
        let tx = self.tx.resolve("tx", lambda)?;
        let rx = self.rx.resolve("rx", lambda)?;
        Scenario::new(lambda, ris, pattern, tx, rx)?
            .with_tx_power(self.tx_power_w)
            .map_err(|e| Error::config("tx_power_w", e.to_string()))?
            .with_gains(self.tx_gain, self.rx_gain)
            .map_err(|e| Error::config("tx_gain", e.to_string()))?
            .with_efficiency(self.efficiency)
            .map_err(|e| Error::config("efficiency", e.to_string()))
    }

    /// Coefficients for the configured strategy. Custom CSV paths resolve
    /// against `base_dir`.
    pub fn coefficients(&self, scenario: &Scenario, base_dir: &Path) -> Result<CoefficientSet> {
        match &self.strategy {
            StrategyConfig::Focusing => coeffs::focusing(scenario),
            StrategyConfig::Beamforming => coeffs::beamforming(scenario),
            StrategyConfig::Uniform => Ok(coeffs::uniform(scenario.ris().len())),
            StrategyConfig::Custom(p) => coeffs::load_csv(&base_dir.join(p), scenario.ris().len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRisConfig {
    #[serde(default = "half")]
    pub spacing_over_lambda: f64,
}

impl Default for SweepRisConfig {
    fn default() -> Self {
        Self {
            spacing_over_lambda: 0.5,
        }
    }
}

/// Side lengths in wavelengths: an explicit list or an inclusive range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SideSpec {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl SideSpec {
    fn values(&self) -> Result<Vec<f64>> {
        match self {
            SideSpec::List(v) => Ok(v.clone()),
            SideSpec::Range { start, stop, step } => {
                if !(*step > 0.0) || !(stop >= start) {
                    return Err(Error::config(
                        "sweep.side_lambda",
                        "range needs step > 0 and stop >= start",
                    ));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                Ok((0..count).map(|i| start + i as f64 * step).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub r_lambda: Vec<f64>,
    pub psi_deg: Vec<f64>,
    pub side_lambda: SideSpec,
    pub strategies: Vec<SweepStrategy>,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub azimuth_deg: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_elements_per_side: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_hz: Option<f64>,
    #[serde(default = "one")]
    pub efficiency: f64,
    #[serde(default)]
    pub pattern: PatternConfig,
    #[serde(default)]
    pub ris: SweepRisConfig,
    pub sweep: SweepSection,
}

impl SweepConfig {
    pub fn to_spec(&self) -> Result<SweepSpec> {
        let lambda = resolve_wavelength(self.wavelength_m, self.frequency_hz)?;
        let pattern = self.pattern.resolve()?;
        let sw = &self.sweep;
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::config(
                "efficiency",
                format!("must lie in (0, 1], got {}", self.efficiency),
            ));
        }
        let spacing = self.ris.spacing_over_lambda;
        if !(spacing > 0.0) {
            return Err(Error::config("ris.spacing_over_lambda", "must be positive"));
        }
        let mut elements_per_side = Vec::new();
        for side in sw.side_lambda.values()? {
            let count = side / spacing;
            let rounded = count.round();
            if !(rounded >= 1.0) || (count - rounded).abs() > 1e-9 {
                return Err(Error::config(
                    "sweep.side_lambda",
                    format!("side {side} λ is not a positive whole number of {spacing} λ elements"),
                ));
            }
            elements_per_side.push(rounded as usize);
        }
        if sw.r_lambda.is_empty() || sw.psi_deg.is_empty() || sw.strategies.is_empty() {
            return Err(Error::config(
                "sweep",
                "r_lambda, psi_deg and strategies must be non-empty",
            ));
        }
        if let Some(r) = sw.r_lambda.iter().find(|r| !(**r > 0.0)) {
            return Err(Error::config(
                "sweep.r_lambda",
                format!("distances must be positive, got {r}"),
            ));
        }
        if let Some(p) = sw.psi_deg.iter().find(|p| !(0.0..90.0).contains(*p)) {
            return Err(Error::config(
                "sweep.psi_deg",
                format!("angles must lie in [0, 90), got {p}"),
            ));
        }
        Ok(SweepSpec {
            wavelength: lambda,
            efficiency: self.efficiency,
            pattern,
            spacing_over_lambda: spacing,
            distances_lambda: sw.r_lambda.clone(),
            psi_deg: sw.psi_deg.clone(),
            azimuth_deg: sw.azimuth_deg,
            elements_per_side,
            strategies: sw.strategies.clone(),
            normalization: sw.normalization,
            max_elements_per_side: sw.max_elements_per_side.unwrap_or(DEFAULT_MAX_PER_SIDE),
        })
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = toml::Deserializer::new(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let reason = e.into_inner().message().trim().to_string();
        Error::config(
            if path.is_empty() {
                ".".to_string()
            } else {
                path
            },
            reason,
        )
    })
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = parse(text)?;
    cfg.wavelength()?;
    Ok(cfg)
}

pub fn parse_sweep(text: &str) -> Result<SweepConfig> {
    let cfg: SweepConfig = parse(text)?;
    resolve_wavelength(cfg.wavelength_m, cfg.frequency_hz)?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    parse_scenario(&read(path)?)
}

pub fn load_sweep(path: &Path) -> Result<SweepConfig> {
    parse_sweep(&read(path)?)
}

impl ScenarioConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config serializes")
    }
}

impl SweepConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("sweep config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
wavelength_m = 0.1
[ris]
rows = 4
cols = 4
[tx]
r_m = 10.0
[rx]
r_lambda = 50.0
psi_deg = 30.0
"#;

    #[test]
    fn minimal_round_trip() {
        let a = parse_scenario(MINIMAL).unwrap();
        assert_eq!(a.tx_power_w, 1.0);
        assert_eq!(a.efficiency, 1.0);
        assert_eq!(a.strategy, StrategyConfig::Focusing);
        assert_eq!(a.ris.spacing_over_lambda, 0.5);
        let b = parse_scenario(&a.to_toml()).unwrap();
        assert_eq!(a, b);
        let s = a.to_scenario().unwrap();
        assert_eq!(s.ris().len(), 16);
        assert!((s.rx().position().norm() - 5.0).abs() < 1e-12);
        assert_eq!(s.pattern(), &benchmark_pattern());
    }

    #[test]
    fn missing_wavelength_names_field() {
        let text = MINIMAL.replace("wavelength_m = 0.1", "");
        match parse_scenario(&text) {
            Err(Error::Config { field, .. }) => assert_eq!(field, "wavelength_m"),
            other => panic!("{other:?}"),
        }
        let both = format!("frequency_hz = 3e9\n{MINIMAL}");
        assert!(matches!(parse_scenario(&both), Err(Error::Config { .. })));
    }

    #[test]
    fn unknown_key_rejected_with_path() {
        let text = MINIMAL.replace("cols = 4", "cols = 4\ncolz = 5");
        match parse_scenario(&text) {
            Err(Error::Config { field, reason }) => {
                assert!(field.starts_with("ris"), "{field}");
                assert!(reason.contains("colz"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frequency_and_pattern_variants() {
        let text = MINIMAL
            .replace("wavelength_m = 0.1", "frequency_hz = 2.99792458e9\nstrategy = { custom = \"b.csv\" }\n[pattern]\nbroadside_gain_dbi = 9.03089986991944")
            ;
        let cfg = parse_scenario(&text).unwrap();
        assert!((cfg.wavelength().unwrap() - 0.1).abs() < 1e-15);
        let p = cfg.pattern.resolve().unwrap();
        assert!((p.q() - 1.5).abs() < 1e-12);
        assert_eq!(cfg.strategy, StrategyConfig::Custom("b.csv".into()));
        assert_eq!(parse_scenario(&cfg.to_toml()).unwrap(), cfg);

        let bad = MINIMAL.replace(
            "[ris]",
            "[pattern]\nq = 0.3\nbroadside_gain_dbi = 5.0\n[ris]",
        );
        assert!(matches!(
            parse_scenario(&bad).unwrap().to_scenario(),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn scenario_validation_errors() {
        let t = MINIMAL.replace("r_m = 10.0", "");
        assert!(matches!(
            parse_scenario(&t).unwrap().to_scenario(),
            Err(Error::Config { .. })
        ));
        let t = MINIMAL.replace("psi_deg = 30.0", "psi_deg = 90.0");
        assert!(matches!(
            parse_scenario(&t).unwrap().to_scenario(),
            Err(Error::Config { .. })
        ));
        let t = format!("efficiency = 1.5\n{MINIMAL}");
        assert!(matches!(
            parse_scenario(&t).unwrap().to_scenario(),
            Err(Error::Config { .. })
        ));
        let t = MINIMAL.replace("rows = 4", "rows = 0");
        assert!(matches!(
            parse_scenario(&t).unwrap().to_scenario(),
            Err(Error::Config { .. })
        ));
    }

    const SWEEP: &str = r#"
wavelength_m = 1.0
[sweep]
r_lambda = [1000.0]
psi_deg = [0.0, 60.0]
side_lambda = { start = 10.0, stop = 12.0, step = 0.5 }
strategies = ["focusing", "beamforming", "far"]
"#;

    #[test]
    fn sweep_spec_conversion() {
        let cfg = parse_sweep(SWEEP).unwrap();
        let spec = cfg.to_spec().unwrap();
        assert_eq!(spec.elements_per_side, vec![20, 21, 22, 23, 24]);
        assert_eq!(spec.normalization, Normalization::FreeSpaceEqualLength);
        assert_eq!(spec.max_elements_per_side, DEFAULT_MAX_PER_SIDE);
        assert_eq!(parse_sweep(&cfg.to_toml()).unwrap(), cfg);

        let list = SWEEP.replace("{ start = 10.0, stop = 12.0, step = 0.5 }", "[1.0, 2.5]");
        assert_eq!(
            parse_sweep(&list)
                .unwrap()
                .to_spec()
                .unwrap()
                .elements_per_side,
            vec![2, 5]
        );

        let bad = SWEEP.replace("{ start = 10.0, stop = 12.0, step = 0.5 }", "[1.25]");
        assert!(matches!(
            parse_sweep(&bad).unwrap().to_spec(),
            Err(Error::Config { .. })
        ));
        let bad = SWEEP.replace("\"far\"", "\"nearfield\"");
        assert!(matches!(parse_sweep(&bad), Err(Error::Config { .. })));
    }
}
