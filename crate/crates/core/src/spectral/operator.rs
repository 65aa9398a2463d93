use num_complex::Complex64;
use rayon::prelude::*;

use super::symbol::RadialSymbol;
use crate::action::{ExtendedMap, GroupAction, RadialFunction};
use crate::error::Result;
use crate::padic::PadicVector;
use crate::schwartz::{Direction, LatticeWindow, TestFunction};

/// Fourier-multiplier operators: `J_σ` with symbol `f_σ`, `H_σ = J_σ − λ`,
/// and `H_G`, the average of the `H_σ` over the group.
#[derive(Clone, Debug)]
pub enum Operator {
    J(ExtendedMap),
    H(ExtendedMap),
    HG(GroupAction),
}

/// `f(σξ)`.
pub fn sigma_symbol(symbol: &RadialSymbol, sigma: &ExtendedMap, xi: &PadicVector) -> Result<f64> {
    Ok(symbol.eval(&sigma.apply(xi)?))
}

/// `f_G(ξ) = (1/|G|) Σ_σ f(σξ)`.
pub fn group_symbol(symbol: &RadialSymbol, action: &GroupAction, xi: &PadicVector) -> Result<f64> {
    let mut s = 0.0;
    for m in action.maps() {
        s += sigma_symbol(symbol, m, xi)?;
    }
    Ok(s / action.maps().len() as f64)
}

impl Operator {
    /// Symbol of the operator at `ξ`.
    pub fn symbol(&self, symbol: &RadialSymbol, xi: &PadicVector) -> Result<f64> {
        match self {
            Operator::J(s) => sigma_symbol(symbol, s, xi),
            Operator::H(s) => Ok(sigma_symbol(symbol, s, xi)? - symbol.lambda()),
            Operator::HG(a) => Ok(group_symbol(symbol, a, xi)? - symbol.lambda()),
        }
    }
}

/// `F^{-1}(g · Fψ)` for a multiplier `g` that is constant on cosets of `O^N`.
/// `ψ` is first refined so that its transform lives on such cosets.
pub fn apply_fourier_multiplier(
    psi: &TestFunction,
    g: impl Fn(&PadicVector) -> Result<Complex64> + Sync,
) -> Result<TestFunction> {
    let w = psi.window();
    let psi = if w.support < 0 { psi.refine(LatticeWindow::new(w.n, 0, w.constancy)?)? } else { psi.clone() };
    let hat = psi.fourier(Direction::Forward)?;
    let factors = (0..hat.layout().size)
        .into_par_iter()
        .map(|i| if hat.amplitudes()[i] == Complex64::new(0.0, 0.0) { Ok(Complex64::new(0.0, 0.0)) } else { g(&hat.cell_representative(i)) })
        .collect::<Result<Vec<_>>>()?;
    let mut out = hat;
    for (a, f) in out.amplitudes_mut().iter_mut().zip(factors) {
        *a *= f;
    }
    out.fourier(Direction::Inverse)
}

/// Applies `J_σ`, `H_σ` or `H_G` to a test function.
pub fn apply_multiplier(symbol: &RadialSymbol, op: &Operator, psi: &TestFunction) -> Result<TestFunction> {
    apply_fourier_multiplier(psi, |xi| Ok(Complex64::new(op.symbol(symbol, xi)?, 0.0)))
}
