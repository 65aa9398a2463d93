//! Run configuration shared by the command line and the Python bindings.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{Field, FieldParams, NormBase};
use crate::spectral::{Normalization, RadialSymbol, DEFAULT_NU_MAX, DEFAULT_TAIL_TOL};
use crate::teichmueller::{GridSpec, Renormalization, RootOrder};

pub const ENV_PREFIX: &str = "MUMFORD_";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Certified tail bound for kernel evaluation.
    pub tail: f64,
    /// Numerical checks (eigenrelations, mass, semigroup).
    pub check: f64,
    /// Relative finite-difference residual accepted by `evolve`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { tail: DEFAULT_TAIL_TOL, check: 1e-8, residual: 1e-2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub prime: u64,
    pub degree: usize,
    pub precision: u32,
    pub norm_base: Option<NormBase>,
    pub alpha: f64,
    pub lambda: f64,
    pub nu_max: u32,
    /// `None` picks the smallest admissible value for the command.
    pub rho: Option<i64>,
    pub tolerance: Tolerances,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub normalization: Normalization,
    pub renormalization: Renormalization,
    pub root_order: RootOrder,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: 5,
            degree: 1,
            precision: 32,
            norm_base: None,
            alpha: 1.0,
            lambda: 1.0,
            nu_max: DEFAULT_NU_MAX,
            rho: None,
            tolerance: Tolerances::default(),
            seed: 0,
            out: None,
            normalization: Normalization::Reconciled,
            renormalization: Renormalization::Standard,
            root_order: RootOrder::AttractingFirst,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::InvalidInput(format!("{key}: cannot parse {v:?}")))
}

fn parse_enum<T: for<'de> Deserialize<'de>>(key: &str, v: &str) -> Result<T> {
    serde_json::from_value(serde_json::Value::String(v.trim().to_string()))
        .map_err(|_| Error::InvalidInput(format!("{key}: unknown value {v:?}")))
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("config JSON: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    /// Sets one field from its string form; keys are the JSON field names,
    /// tolerances as `tol_tail`, `tol_check`, `tol_residual`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "prime" => self.prime = parse(key, value)?,
            "degree" => self.degree = parse(key, value)?,
            "precision" => self.precision = parse(key, value)?,
            "norm_base" => self.norm_base = Some(parse_enum(key, value)?),
            "alpha" => self.alpha = parse(key, value)?,
            "lambda" => self.lambda = parse(key, value)?,
            "nu_max" => self.nu_max = parse(key, value)?,
            "rho" => self.rho = Some(parse(key, value)?),
            "seed" => self.seed = parse(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "tol" | "tol_check" => self.tolerance.check = parse(key, value)?,
            "tol_tail" => self.tolerance.tail = parse(key, value)?,
            "tol_residual" => self.tolerance.residual = parse(key, value)?,
            "normalization" => self.normalization = parse_enum(key, value)?,
            "renormalization" => self.renormalization = parse_enum(key, value)?,
            "root_order" => self.root_order = parse_enum(key, value)?,
            _ => return Err(Error::InvalidInput(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `MUMFORD_<KEY>` variables (e.g. `MUMFORD_PRIME=13`).
    pub fn apply_env(&mut self, vars: impl IntoIterator<Item = (String, String)>) -> Result<()> {
        let mut found: Vec<(String, String)> = vars
            .into_iter()
            .filter_map(|(k, v)| k.strip_prefix(ENV_PREFIX).map(|k| (k.to_ascii_lowercase(), v)))
            .collect();
        found.sort();
        for (k, v) in found {
            self.set(&k, &v)?;
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field> {
        FieldParams::new(self.prime, self.degree, None, self.norm_base, self.precision)
    }

    pub fn validate(&self) -> Result<()> {
        if self.prime < 2 {
            return Err(Error::InvalidInput(format!("prime must be at least 2, got {}", self.prime)));
        }
        if self.precision < 8 {
            return Err(Error::InvalidInput(format!("precision must be at least 8, got {}", self.precision)));
        }
        let field = self.field()?;
        let bound = (field.base() as f64).powf(self.alpha);
        if !(self.alpha > 0.0) || !(self.lambda <= bound) {
            return Err(Error::InvalidInput(format!(
                "need α > 0 and λ ≤ base^α = {bound}, got α = {}, λ = {}",
                self.alpha, self.lambda
            )));
        }
        let t = &self.tolerance;
        if !(t.tail > 0.0 && t.check > 0.0 && t.residual > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.rho.is_some_and(|r| r < 1) {
            return Err(Error::InvalidInput("rho must be positive".into()));
        }
        Ok(())
    }

    /// The default symbol `f̃(m) = base^{αm}` for `m ≥ 1`, `λ` below.
    pub fn symbol(&self) -> Result<RadialSymbol> {
        RadialSymbol::power(self.lambda, self.field()?.base(), self.alpha)
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec {
            renormalization: self.renormalization,
            root_order: self.root_order,
            rho: self.rho.unwrap_or(1),
            lambda: self.lambda,
            ..GridSpec::default()
        }
    }
}
