use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use super::operator::{apply_fourier_multiplier, group_symbol};
use super::symbol::RadialSymbol;
use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::schwartz::TestFunction;

/// `u(·, t)` with its mass, norm and finite-difference residual.
#[derive(Debug, Clone)]
pub struct EvolutionStep {
    pub t: f64,
    pub u: TestFunction,
    pub mass: Complex64,
    pub l2_norm: f64,
    /// `‖(u(t+h) − u(t−h))/2h + H_G u(t)‖₂`; one-sided second order at `t < h`.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionTrace {
    pub h: f64,
    pub steps: Vec<EvolutionStep>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepSummary {
    pub t: f64,
    pub mass_re: f64,
    pub mass_im: f64,
    pub l2_norm: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    pub h: f64,
    pub max_residual: f64,
    pub steps: Vec<StepSummary>,
}

impl EvolutionTrace {
    pub fn max_residual(&self) -> f64 {
        self.steps.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    /// Rows `t,coset,re,im`, with the coset given by its digit coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,coset,re,im\n");
        for s in &self.steps {
            let layout = s.u.layout();
            for (i, a) in s.u.amplitudes().iter().enumerate() {
                let coset: Vec<String> = layout.coords(i).iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "{},{},{:.17e},{:.17e}", s.t, coset.join(":"), a.re, a.im);
            }
        }
        out
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            h: self.h,
            max_residual: self.max_residual(),
            steps: self
                .steps
                .iter()
                .map(|s| StepSummary {
                    t: s.t,
                    mass_re: s.mass.re,
                    mass_im: s.mass.im,
                    l2_norm: s.l2_norm,
                    residual: s.residual,
                })
                .collect(),
        }
    }
}

/// `u(·, t) = F^{-1}(e^{−t(f_G − λ)} Fψ)`, the solution of `∂_t u + H_G u = 0`
/// with `u(·, 0) = ψ`.
pub fn evolve(symbol: &RadialSymbol, action: &GroupAction, psi: &TestFunction, t: f64) -> Result<TestFunction> {
    let lambda = symbol.lambda();
    apply_fourier_multiplier(psi, |xi| {
        Ok(Complex64::new((-t * (group_symbol(symbol, action, xi)? - lambda)).exp(), 0.0))
    })
}

/// Solves the Cauchy problem for `H_G` on the time grid `times`. The step `h`
/// of the residual defaults to the smallest grid spacing.
pub fn solve_cauchy(
    symbol: &RadialSymbol,
    action: &GroupAction,
    psi: &TestFunction,
    times: &[f64],
    h: Option<f64>,
) -> Result<EvolutionTrace> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidInput("times must be finite and nonnegative".into()));
    }
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    let h = h.unwrap_or_else(|| {
        sorted.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).fold(1e-2, f64::min)
    });
    if !(h > 0.0) {
        return Err(Error::InvalidInput("residual step must be positive".into()));
    }
    let lambda = symbol.lambda();
    let mut steps = Vec::with_capacity(times.len());
    for &t in times {
        let u = evolve(symbol, action, psi, t)?;
        let hu = apply_fourier_multiplier(&u, |xi| Ok(Complex64::new(group_symbol(symbol, action, xi)? - lambda, 0.0)))?;
        let du = if t >= h {
            let up = evolve(symbol, action, psi, t + h)?;
            let um = evolve(symbol, action, psi, t - h)?;
            up.sub(&um)?.scale(Complex64::new(0.5 / h, 0.0))
        } else {
            let u1 = evolve(symbol, action, psi, t + h)?;
            let u2 = evolve(symbol, action, psi, t + 2.0 * h)?;
            u.scale(Complex64::new(-3.0, 0.0)).add(&u1.scale(Complex64::new(4.0, 0.0)))?.sub(&u2)?.scale(Complex64::new(0.5 / h, 0.0))
        };
        let residual = du.add(&hu)?.l2_norm();
        steps.push(EvolutionStep { t, mass: u.integrate(), l2_norm: u.l2_norm(), residual, u });
    }
    Ok(EvolutionTrace { h, steps })
}
