use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::data::ModeBand;
use crate::diagnostics::REFERENCE_C1;
use crate::dynamics::{step_count, Scheme, SolverParams};
use crate::error::{Error, Result};
use crate::heat::DecayNorm;
use crate::spectral::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataConfig {
    pub amplitude: f64,
    pub width: f64,
    pub epsilon: f64,
    pub band: ModeBand,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub t1: f64,
    pub t2: f64,
    pub sample_interval: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorConfig {
    pub epsilon0: f64,
    pub c1: f64,
}

/// One norm to track along the semigroup; `window: None` selects
/// [`crate::heat::kernel_dominated_window`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayTarget {
    pub norm: DecayNorm,
    pub window: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayConfig {
    pub targets: Vec<DecayTarget>,
    pub samples: usize,
    /// Fit residual above which a decay run reports failure.
    pub residual_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub csv: bool,
    pub json: bool,
    pub checkpoint: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub params: SolverParams,
    pub data: DataConfig,
    pub schedule: Schedule,
    pub monitor: MonitorConfig,
    pub decay: DecayConfig,
    pub output: OutputConfig,
    /// Co-run the full solve to check the decomposition.
    pub co_run_full: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let params = SolverParams::new(0.5).expect("default gamma is valid");
        RunConfig {
            grid: GridSpec::new(256, 100.0).expect("default grid is valid"),
            params,
            data: DataConfig {
                amplitude: 1.0,
                width: 2.0,
                epsilon: 1e-3,
                band: ModeBand::default(),
                seed: 1,
            },
            schedule: Schedule {
                t1: 0.5,
                t2: 8.0,
                sample_interval: 0.05,
            },
            monitor: MonitorConfig {
                epsilon0: 1.0,
                c1: REFERENCE_C1,
            },
            decay: DecayConfig::for_gamma(params.gamma()),
            output: OutputConfig {
                dir: None,
                csv: true,
                json: true,
                checkpoint: true,
            },
            co_run_full: false,
        }
    }
}

impl DecayConfig {
    /// `Ḣ^{2−γ}` on `[1, 10]` and the mean-free L² norm on the
    /// kernel-dominated window.
    pub fn for_gamma(gamma: f64) -> Self {
        DecayConfig {
            targets: vec![
                DecayTarget {
                    norm: DecayNorm::HomogeneousSobolev { s: 2.0 - gamma },
                    window: Some((1.0, 10.0)),
                },
                DecayTarget {
                    norm: DecayNorm::L2,
                    window: None,
                },
            ],
            samples: 24,
            residual_threshold: 0.5,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        let d = &self.data;
        if !(d.amplitude >= 0.0 && d.amplitude.is_finite()) {
            return bad(format!("amplitude must be ≥ 0, got {}", d.amplitude));
        }
        if !(d.width > 0.0 && d.width.is_finite()) {
            return bad(format!("width must be positive, got {}", d.width));
        }
        if !(d.epsilon >= 0.0 && d.epsilon.is_finite()) {
            return bad(format!("epsilon must be ≥ 0, got {}", d.epsilon));
        }
        if !(d.band.min >= 0.0 && d.band.max >= d.band.min) {
            return bad(format!("invalid perturbation band {:?}", d.band));
        }
        let s = &self.schedule;
        if !(s.t1 >= 0.0 && s.t2 > s.t1 && s.t2 <= self.params.t_end() + 1e-12) {
            return bad(format!(
                "need 0 ≤ t1 < t2 ≤ t_end, got t1 = {}, t2 = {}, t_end = {}",
                s.t1,
                s.t2,
                self.params.t_end()
            ));
        }
        let dt = self.params.dt();
        let stride = s.sample_interval / dt;
        if !(stride >= 1.0 - 1e-9) || (stride - stride.round()).abs() > 1e-9 * stride {
            return bad(format!(
                "sample interval {} must be a positive multiple of dt = {dt}",
                s.sample_interval
            ));
        }
        step_count(0.0, self.params.t_end(), dt).map_err(|e| Error::Config(e.to_string()))?;
        let k = self.params.t_end() / s.sample_interval;
        if (k - k.round()).abs() > 1e-9 * k {
            return bad(format!(
                "t_end = {} must be a multiple of the sample interval {}",
                self.params.t_end(),
                s.sample_interval
            ));
        }
        for t in [s.t1, s.t2] {
            let k = t / s.sample_interval;
            if (k - k.round()).abs() > 1e-9 * k.max(1.0) {
                return bad(format!("t1 and t2 must fall on sample times, {t} does not"));
            }
        }
        if !(self.monitor.epsilon0 > 0.0) {
            return bad("epsilon0 must be positive".into());
        }
        if !(self.monitor.c1 > 0.0 && self.monitor.c1.is_finite()) {
            return bad(format!("C1 must be positive, got {}", self.monitor.c1));
        }
        if self.decay.samples < 5 {
            return bad("decay runs need at least 5 samples".into());
        }
        Ok(())
    }

    pub fn sample_stride(&self) -> usize {
        (self.schedule.sample_interval / self.params.dt()).round() as usize
    }

    /// Defaults, then the key-value file, then explicit overrides.
    pub fn resolve(file: Option<&str>, flags: &ConfigOverrides) -> Result<RunConfig> {
        let mut merged = ConfigOverrides::default();
        if let Some(text) = file {
            merged = ConfigOverrides::parse(text)?;
        }
        merged.merge(flags);
        merged.apply(RunConfig::default())
    }
}

/// Every setting reachable from a config file or the command line.
/// Config files are `key = value` lines (TOML syntax); keys match the CLI
/// flag names with either `_` or `-`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub gamma: Option<f64>,
    #[serde(alias = "grid-n")]
    pub grid_n: Option<usize>,
    #[serde(alias = "box-length")]
    pub box_length: Option<f64>,
    pub dt: Option<f64>,
    #[serde(alias = "t-end")]
    pub t_end: Option<f64>,
    pub amplitude: Option<f64>,
    pub width: Option<f64>,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
    pub sigma: Option<f64>,
    #[serde(alias = "out-dir")]
    pub out_dir: Option<PathBuf>,
    #[serde(alias = "cfl-safety")]
    pub cfl_safety: Option<f64>,
    pub scheme: Option<String>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    #[serde(alias = "sample-interval")]
    pub sample_interval: Option<f64>,
    #[serde(alias = "band-min")]
    pub band_min: Option<f64>,
    #[serde(alias = "band-max")]
    pub band_max: Option<f64>,
    pub epsilon0: Option<f64>,
    pub c1: Option<f64>,
    #[serde(alias = "co-run-full")]
    pub co_run_full: Option<bool>,
    #[serde(alias = "residual-threshold")]
    pub residual_threshold: Option<f64>,
}

macro_rules! take_some {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Fields set in `other` win.
    pub fn merge(&mut self, other: &ConfigOverrides) {
        take_some!(self, other; gamma, grid_n, box_length, dt, t_end, amplitude, width, epsilon,
            seed, sigma, out_dir, cfl_safety, scheme, t1, t2, sample_interval, band_min, band_max,
            epsilon0, c1, co_run_full, residual_threshold);
    }

    pub fn apply(&self, mut cfg: RunConfig) -> Result<RunConfig> {
        let wrap = |e: Error| Error::Config(e.to_string());
        if self.grid_n.is_some() || self.box_length.is_some() {
            cfg.grid = GridSpec::new(
                self.grid_n.unwrap_or(cfg.grid.n()),
                self.box_length.unwrap_or(cfg.grid.box_length()),
            )
            .map_err(wrap)?;
        }
        let gamma = self.gamma.unwrap_or(cfg.params.gamma());
        let mut params = SolverParams::new(gamma)
            .map_err(wrap)?
            .with_dt(self.dt.unwrap_or(cfg.params.dt()))
            .and_then(|p| p.with_t_end(self.t_end.unwrap_or(cfg.params.t_end())))
            .and_then(|p| p.with_cfl_safety(self.cfl_safety.unwrap_or(cfg.params.cfl_safety())))
            .map_err(wrap)?
            .with_scheme(cfg.params.scheme());
        // σ's admissible interval moves with γ, so an unset σ tracks the midpoint
        if let Some(sigma) = self.sigma {
            params = params.with_sigma(sigma).map_err(wrap)?;
        } else if self.gamma.is_none() {
            params = params.with_sigma(cfg.params.sigma()).map_err(wrap)?;
        }
        if let Some(scheme) = &self.scheme {
            params = params.with_scheme(scheme.parse::<Scheme>().map_err(wrap)?);
        }
        if self.gamma.is_some() {
            cfg.decay = DecayConfig::for_gamma(gamma);
        }
        cfg.params = params;
        let d = &mut cfg.data;
        d.amplitude = self.amplitude.unwrap_or(d.amplitude);
        d.width = self.width.unwrap_or(d.width);
        d.epsilon = self.epsilon.unwrap_or(d.epsilon);
        d.seed = self.seed.unwrap_or(d.seed);
        d.band.min = self.band_min.unwrap_or(d.band.min);
        d.band.max = self.band_max.unwrap_or(d.band.max);
        let s = &mut cfg.schedule;
        s.t1 = self.t1.unwrap_or(s.t1);
        // a shorter horizon pulls an unset t2 in with it
        s.t2 = self.t2.unwrap_or(s.t2.min(cfg.params.t_end()));
        s.sample_interval = self.sample_interval.unwrap_or(s.sample_interval);
        cfg.monitor.epsilon0 = self.epsilon0.unwrap_or(cfg.monitor.epsilon0);
        cfg.monitor.c1 = self.c1.unwrap_or(cfg.monitor.c1);
        cfg.co_run_full = self.co_run_full.unwrap_or(cfg.co_run_full);
        cfg.decay.residual_threshold = self.residual_threshold.unwrap_or(cfg.decay.residual_threshold);
        if self.out_dir.is_some() {
            cfg.output.dir = self.out_dir.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
