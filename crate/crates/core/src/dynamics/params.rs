use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "if-rk2")]
    IfRk2,
    #[serde(rename = "if-rk4")]
    IfRk4,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "if-rk2" | "rk2" => Ok(Scheme::IfRk2),
            "if-rk4" | "rk4" => Ok(Scheme::IfRk4),
            other => Err(Error::InvalidParameter(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Exponents and time-stepping controls. `s = 2 − γ` is derived, never set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct SolverParams {
    gamma: f64,
    s: f64,
    sigma: f64,
    dt: f64,
    t_end: f64,
    cfl_safety: f64,
    scheme: Scheme,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    gamma: f64,
    s: f64,
    sigma: f64,
    dt: f64,
    t_end: f64,
    cfl_safety: f64,
    scheme: Scheme,
}

impl TryFrom<ParamsRepr> for SolverParams {
    type Error = Error;
    fn try_from(r: ParamsRepr) -> Result<Self> {
        let p = SolverParams::new(r.gamma)?
            .with_sigma(r.sigma)?
            .with_dt(r.dt)?
            .with_t_end(r.t_end)?
            .with_cfl_safety(r.cfl_safety)?
            .with_scheme(r.scheme);
        if p.s != r.s {
            return Err(Error::InvalidParameter(format!(
                "s = {} is inconsistent with gamma = {} (expected {})",
                r.s, r.gamma, p.s
            )));
        }
        Ok(p)
    }
}

impl From<SolverParams> for ParamsRepr {
    fn from(p: SolverParams) -> Self {
        ParamsRepr {
            gamma: p.gamma,
            s: p.s,
            sigma: p.sigma,
            dt: p.dt,
            t_end: p.t_end,
            cfl_safety: p.cfl_safety,
            scheme: p.scheme,
        }
    }
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidParameter(msg))
}

impl SolverParams {
    /// Defaults: `σ` at the midpoint `1.5 − γ` of `(1 − γ, 2 − γ)`,
    /// `dt = 0.01`, `t_end = 10`, CFL safety `0.5`, IF-RK2.
    pub fn new(gamma: f64) -> Result<Self> {
        crate::heat::check_gamma(gamma)?;
        Ok(SolverParams {
            gamma,
            s: 2.0 - gamma,
            sigma: 1.5 - gamma,
            dt: 0.01,
            t_end: 10.0,
            cfl_safety: 0.5,
            scheme: Scheme::IfRk2,
        })
    }

    pub fn with_sigma(mut self, sigma: f64) -> Result<Self> {
        if !(sigma > 1.0 - self.gamma && sigma < 2.0 - self.gamma) {
            return invalid(format!(
                "sigma = {sigma} must lie strictly inside ({}, {})",
                1.0 - self.gamma,
                2.0 - self.gamma
            ));
        }
        self.sigma = sigma;
        Ok(self)
    }

    pub fn with_dt(mut self, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return invalid(format!("dt must be positive, got {dt}"));
        }
        self.dt = dt;
        Ok(self)
    }

    pub fn with_t_end(mut self, t_end: f64) -> Result<Self> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return invalid(format!("t_end must be positive, got {t_end}"));
        }
        self.t_end = t_end;
        Ok(self)
    }

    pub fn with_cfl_safety(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return invalid(format!("cfl_safety must lie in (0, 1], got {c}"));
        }
        self.cfl_safety = c;
        Ok(self)
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn t_end(&self) -> f64 {
        self.t_end
    }
    pub fn cfl_safety(&self) -> f64 {
        self.cfl_safety
    }
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
}
