use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::RadialFunction;
use crate::error::{Error, Result};

/// Constants with `A₁ b^{γ₁ m} ≤ f̃(m) ≤ A₂ b^{γ₂ m}` for `m ≥ 1`, `b` the norm base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthCertificate {
    pub a1: f64,
    pub a2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

pub type ShellFn = Arc<dyn Fn(i64) -> f64 + Send + Sync>;

/// Value of `f̃` on shells `m ≥ 1`.
#[derive(Clone)]
pub enum ShellRule {
    /// `coeff · b^{α m}`.
    Power { alpha: f64, coeff: f64 },
    Custom(ShellFn),
}

impl fmt::Debug for ShellRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShellRule::Power { alpha, coeff } => write!(f, "Power {{ alpha: {alpha}, coeff: {coeff} }}"),
            ShellRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Radial symbol `f(x) = f̃(m)` for `‖x‖ = b^m`, equal to `λ` on the unit ball.
#[derive(Debug, Clone)]
pub struct RadialSymbol {
    lambda: f64,
    base: f64,
    rule: ShellRule,
    cert: GrowthCertificate,
}

/// Shells checked when validating monotonicity and the certificate.
const CHECK_SHELLS: i64 = 64;

impl RadialSymbol {
    pub fn new(lambda: f64, base: u64, rule: ShellRule, cert: GrowthCertificate) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSymbol("norm base must be at least 2".into()));
        }
        if !(cert.a1 > 0.0 && cert.gamma1 > 0.0 && cert.a2 >= cert.a1 && cert.gamma2 >= cert.gamma1) {
            return Err(Error::InvalidSymbol(format!("bad growth certificate {cert:?}")));
        }
        let s = RadialSymbol { lambda, base: base as f64, rule, cert };
        let mut prev = lambda;
        for m in 1..=CHECK_SHELLS {
            let v = s.value(m);
            if v.is_nan() || v < prev {
                return Err(Error::InvalidSymbol(format!("f̃ decreases at shell {m}")));
            }
            let lo = cert.a1 * s.base.powf(cert.gamma1 * m as f64);
            let hi = cert.a2 * s.base.powf(cert.gamma2 * m as f64);
            if v.is_finite() && (v < lo * (1.0 - 1e-12) || v > hi * (1.0 + 1e-12)) {
                return Err(Error::InvalidSymbol(format!("certificate fails at shell {m}")));
            }
            prev = v;
        }
        Ok(s)
    }

    /// `f̃(m) = λ` for `m ≤ 0` and `b^{α m}` above; needs `λ ≤ b^α`.
    pub fn power(lambda: f64, base: u64, alpha: f64) -> Result<Self> {
        if alpha <= 0.0 {
            return Err(Error::InvalidSymbol("alpha must be positive".into()));
        }
        let cert = GrowthCertificate { a1: 1.0, a2: 1.0, gamma1: alpha, gamma2: alpha };
        Self::new(lambda, base, ShellRule::Power { alpha, coeff: 1.0 }, cert)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn certificate(&self) -> GrowthCertificate {
        self.cert
    }

    pub fn rule(&self) -> &ShellRule {
        &self.rule
    }

    /// `f̃(m)`, the value on the shell `‖x‖ = b^m`.
    pub fn value(&self, m: i64) -> f64 {
        if m <= 0 {
            return self.lambda;
        }
        match &self.rule {
            ShellRule::Power { alpha, coeff } => coeff * self.base.powf(alpha * m as f64),
            ShellRule::Custom(g) => g(m),
        }
    }

    /// Certified lower bound `A₁ b^{γ₁ m}` used for tails.
    pub fn lower_bound(&self, m: i64) -> f64 {
        self.cert.a1 * self.base.powf(self.cert.gamma1 * m as f64)
    }
}

impl RadialFunction for RadialSymbol {
    fn at_valuation(&self, v: Option<i64>) -> f64 {
        v.map_or(self.lambda, |v| self.value(-v))
    }
}
