//! Radial symbols, twisted and invariant heat kernels, the multiplier
//! operators `J_σ`, `H_σ`, `H_G`, wavelets and the Cauchy problem.

mod cauchy;
mod kernel;
mod lattice;
mod operator;
mod symbol;
mod wavelet;

pub use cauchy::{evolve, solve_cauchy, EvolutionStep, EvolutionTrace, StepSummary, TraceSummary};
pub use kernel::{
    positivity_check, HeatKernel, KernelAction, KernelValue, Normalization, PositivityReport, DEFAULT_NU_MAX,
    DEFAULT_TAIL_TOL,
};
pub use lattice::{spectrum_in_lattice, LatticeDecision, LATTICE_TOL};
pub use operator::{apply_fourier_multiplier, apply_multiplier, group_symbol, sigma_symbol, Operator};
pub use symbol::{GrowthCertificate, RadialSymbol, ShellFn, ShellRule};
pub use wavelet::{
    eigenvalue, gamma_sigma, wavelet_indices, GammaReport, Wavelet, WaveletIndex,
};

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, PadicVector};

const MAX_DIGIT_VECTORS: usize = 1 << 20;

/// All vectors in `O^N` whose coordinates have `depth` digits, i.e. a set of
/// representatives of `O^N / p^depth O^N`, in a fixed order.
pub(crate) fn digit_vectors(field: &Field, n: usize, depth: u32) -> Result<Vec<PadicVector>> {
    let q = field.q() as u128;
    let per = q.pow(depth);
    let total = per
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_DIGIT_VECTORS as u128)
        .ok_or_else(|| Error::SizeGuard(format!("more than {MAX_DIGIT_VECTORS} representatives requested")))?
        as usize;
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total as u128 {
        let mut comps = Vec::with_capacity(n);
        for _ in 0..n {
            let mut c = code % per;
            code /= per;
            let digits: Vec<u64> = (0..depth)
                .map(|_| {
                    let d = (c % q) as u64;
                    c /= q;
                    d
                })
                .collect();
            comps.push(PadicScalar::from_digits(field, 0, &digits));
        }
        out.push(PadicVector::new(comps)?);
    }
    Ok(out)
}
