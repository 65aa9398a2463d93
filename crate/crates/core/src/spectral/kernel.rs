use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::operator::{apply_fourier_multiplier, sigma_symbol};
use super::symbol::RadialSymbol;
use super::digit_vectors;
use crate::action::{ExtendedMap, GroupAction};
use crate::error::{Error, Result};
use crate::padic::PadicVector;
use crate::schwartz::{Character, Direction, LatticeWindow, TestFunction};

pub const DEFAULT_NU_MAX: u32 = 24;
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
const MAX_NU: u32 = 1 << 12;

/// How `Z_G` is normalized. `Reconciled` uses the multiplier
/// `exp(−t(f_G − λ))` with `f_G` the mean of the `f_σ`; `Literal` is
/// `(1/|G|) exp(−t Σ_σ (f_σ − λ))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Reconciled,
    Literal,
}

#[derive(Debug, Clone)]
pub enum KernelAction {
    Twisted(ExtendedMap),
    Invariant(GroupAction, Normalization),
}

/// Twisted heat kernel `Z_σ(·, t)` or invariant kernel `Z_G(·, t)`.
#[derive(Debug, Clone)]
pub struct HeatKernel {
    symbol: Arc<RadialSymbol>,
    action: KernelAction,
    t: f64,
    nu_max: u32,
    tol: f64,
}

/// Pointwise kernel value with a certified bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub nu_max: u32,
}

/// Coordinates of `p^shift x` modulo `p^depth`, identifying the `O^N` coset of `x`.
fn cell_key(x: &PadicVector, shift: i64, depth: u32) -> Vec<BigInt> {
    let p = x.get(0).field().p();
    let m = num_traits::pow(BigInt::from(p), depth as usize);
    let mut key = Vec::new();
    for s in x.comps() {
        match s.valuation() {
            None => key.extend(std::iter::repeat(BigInt::from(0)).take(s.field().degree())),
            Some(v) => {
                let e = v + shift;
                let pe = if e >= 0 { num_traits::pow(BigInt::from(p), e as usize) } else { BigInt::from(0) };
                key.extend(s.unit_coords().iter().map(|c| (c * &pe).mod_floor(&m)));
            }
        }
    }
    key
}

impl HeatKernel {
    pub fn twisted(symbol: Arc<RadialSymbol>, sigma: ExtendedMap, t: f64) -> Result<Self> {
        Self::build(symbol, KernelAction::Twisted(sigma), t)
    }

    pub fn invariant(symbol: Arc<RadialSymbol>, action: GroupAction, t: f64, norm: Normalization) -> Result<Self> {
        Self::build(symbol, KernelAction::Invariant(action, norm), t)
    }

    fn build(symbol: Arc<RadialSymbol>, action: KernelAction, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidInput(format!("time must be positive, got {t}")));
        }
        Ok(HeatKernel { symbol, action, t, nu_max: DEFAULT_NU_MAX, tol: DEFAULT_TAIL_TOL })
    }

    pub fn with_truncation(mut self, nu_max: u32, tol: f64) -> Self {
        self.nu_max = nu_max.max(1);
        self.tol = tol;
        self
    }

    pub fn at_time(&self, t: f64) -> Result<Self> {
        let mut k = Self::build(self.symbol.clone(), self.action.clone(), t)?;
        k.nu_max = self.nu_max;
        k.tol = self.tol;
        Ok(k)
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn symbol(&self) -> &RadialSymbol {
        &self.symbol
    }

    pub fn action(&self) -> &KernelAction {
        &self.action
    }

    fn maps(&self) -> Vec<&ExtendedMap> {
        match &self.action {
            KernelAction::Twisted(s) => vec![s],
            KernelAction::Invariant(a, _) => a.maps().iter().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.maps().iter().all(|m| m.is_identity())
    }

    fn dim(&self) -> usize {
        self.maps()[0].dim()
    }

    fn rho(&self) -> i64 {
        self.maps().iter().map(|m| m.rho()).max().unwrap_or(1)
    }

    /// `ln` of the multiplier given `Σ_σ (f_σ − λ)` and the group order.
    fn log_multiplier(&self, excess_sum: f64, order: usize) -> f64 {
        match &self.action {
            KernelAction::Twisted(_) => -self.t * excess_sum,
            KernelAction::Invariant(_, Normalization::Reconciled) => -self.t * excess_sum / order as f64,
            KernelAction::Invariant(_, Normalization::Literal) => -(order as f64).ln() - self.t * excess_sum,
        }
    }

    /// Fourier-side multiplier at `ξ`.
    pub fn multiplier(&self, xi: &PadicVector) -> Result<f64> {
        let maps = self.maps();
        let lambda = self.symbol.lambda();
        let mut excess = 0.0;
        for m in &maps {
            excess += sigma_symbol(&self.symbol, m, xi)? - lambda;
        }
        Ok(self.log_multiplier(excess, maps.len()).exp())
    }

    /// Multiplier on the shell `‖ξ‖ = b^ν` away from the twisted region.
    fn log_radial_multiplier(&self, value: f64) -> f64 {
        let order = self.maps().len();
        self.log_multiplier(order as f64 * (value - self.symbol.lambda()), order)
    }

    /// `∫ Z(x, t) dx`, the multiplier at `ξ = 0`.
    pub fn total_mass(&self) -> Result<f64> {
        self.multiplier(&PadicVector::zero(self.maps()[0].field(), self.dim()))
    }

    /// Certified bound on `Σ_{ν > from} q^{νN} · multiplier(ν)`.
    pub fn tail_bound(&self, from: u32) -> f64 {
        let field = self.maps()[0].field();
        let ln_qn = (field.q() as f64).ln() * self.dim() as f64;
        let ln_a = |nu: i64| nu as f64 * ln_qn + self.log_radial_multiplier(self.symbol.lower_bound(nu));
        let mut total = 0.0;
        let mut nu = from as i64 + 1;
        loop {
            let a = ln_a(nu);
            if ln_a(nu + 1) - a <= -std::f64::consts::LN_2 {
                // ratios decrease from here on, so the rest is at most a geometric series
                return total + 2.0 * a.exp();
            }
            total += a.exp();
            nu += 1;
            if nu > from as i64 + 100_000 || !total.is_finite() {
                return f64::INFINITY;
            }
        }
    }

    /// Representatives of the `O^N` cosets on which some `σ` acts nontrivially.
    fn twisted_cells(&self) -> Result<Vec<PadicVector>> {
        let rho_max = self.rho();
        let mut cells: BTreeMap<Vec<BigInt>, PadicVector> = BTreeMap::new();
        for m in self.maps() {
            let Some(dom) = m.core().domain() else { continue };
            for b in dom.balls() {
                let depth = (m.rho() - b.radius) as u32;
                for u in digit_vectors(m.field(), m.dim(), depth)? {
                    let x = b.center.checked_add(&u.shift(b.radius))?.shift(-m.rho());
                    cells.entry(cell_key(&x, rho_max, rho_max as u32)).or_insert(x);
                }
            }
        }
        Ok(cells.into_values().collect())
    }

    /// `Z(x, t)`: the unit-ball term, radial shell sums in closed form, the
    /// explicit correction on twisted cells and a certified tail bound. The
    /// truncation is raised automatically until the tail meets the tolerance.
    pub fn eval(&self, x: &PadicVector) -> Result<KernelValue> {
        if x.valuation().is_some_and(|v| v < 0) {
            return Ok(KernelValue { value: Complex64::new(0.0, 0.0), tail_bound: 0.0, nu_max: 0 });
        }
        let field = self.maps()[0].field().clone();
        let n = self.dim() as i32;
        let qn = (field.q() as f64).powi(n);
        let vx = x.valuation();
        let mut nu_max = self.nu_max.max(self.rho() as u32);
        let mut tail = 0.0;
        if vx.is_none_or(|v| v + 1 > nu_max as i64) {
            tail = self.tail_bound(nu_max);
            while tail > self.tol && nu_max < MAX_NU {
                nu_max *= 2;
                tail = self.tail_bound(nu_max);
            }
            if tail > self.tol {
                return Err(Error::TailBoundExceeded { bound: tail, tolerance: self.tol });
            }
        }
        let mut value = Complex64::new(self.total_mass()?, 0.0);
        let top = vx.map_or(nu_max as i64, |v| (v + 1).min(nu_max as i64));
        for nu in 1..=top {
            let m = self.log_radial_multiplier(self.symbol.value(nu));
            let s = if vx.is_none_or(|v| v >= nu) {
                (nu as f64 * n as f64 * (field.q() as f64).ln() + m).exp() * (1.0 - 1.0 / qn)
            } else {
                -(((nu - 1) as f64 * n as f64 * (field.q() as f64).ln() + m).exp())
            };
            value += s;
        }
        let chi = Character::new(&field);
        for c in self.twisted_cells()? {
            let nu = -c.valuation().expect("twisted cells avoid the unit ball");
            let radial = self.log_radial_multiplier(self.symbol.value(nu)).exp();
            let delta = self.multiplier(&c)? - radial;
            if delta != 0.0 {
                let phase = chi.eval(&(-&x.dot(&c)?))?;
                value += phase * delta;
            }
        }
        Ok(KernelValue { value, tail_bound: tail, nu_max })
    }

    /// `Z(·, t) * ψ`, exact through the Fourier multiplier.
    pub fn apply(&self, psi: &TestFunction) -> Result<TestFunction> {
        apply_fourier_multiplier(psi, |xi| Ok(Complex64::new(self.multiplier(xi)?, 0.0)))
    }

    /// `F^{-1}(multiplier · 1_{‖ξ‖ ≤ b^ν})`, a test function on window `(0, ν)`.
    pub fn truncated(&self, nu: i64) -> Result<TestFunction> {
        let field = self.maps()[0].field().clone();
        let w = LatticeWindow::new(self.dim(), nu, 0)?;
        let hat = TestFunction::from_point_fn(&field, w, |xi| {
            Complex64::new(self.multiplier(xi).unwrap_or(f64::NAN), 0.0)
        })?;
        if hat.amplitudes().iter().any(|a| a.re.is_nan()) {
            return Err(Error::InvalidAction("multiplier evaluation failed on the window".into()));
        }
        hat.fourier(Direction::Inverse)
    }

    /// Checks that the multiplier is constant on `O^N` cosets at the sample
    /// points, which makes the kernel vanish outside the unit polydisk.
    pub fn support_property(&self, samples: &[PadicVector], shifts: &[PadicVector]) -> Result<bool> {
        for xi in samples {
            let base = self.multiplier(xi)?;
            for eta in shifts {
                if eta.valuation().is_some_and(|v| v < 0) {
                    continue;
                }
                let other = self.multiplier(&xi.checked_add(eta)?)?;
                if (other - base).abs() > 1e-14 * base.abs().max(1e-300) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Sampled sign report for a kernel.
#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub samples: usize,
    pub min_real: f64,
    pub max_abs_imag: f64,
    pub max_tail_bound: f64,
    /// Indices of samples with real part below `−tail_bound`.
    pub negatives: Vec<usize>,
    pub trivial_action: bool,
}

impl PositivityReport {
    /// Nonnegative within the tail bound (the expected outcome for trivial `G`).
    pub fn nonnegative(&self) -> bool {
        self.negatives.is_empty()
    }
}

pub fn positivity_check(kernel: &HeatKernel, samples: &[PadicVector]) -> Result<PositivityReport> {
    let mut rep = PositivityReport {
        samples: samples.len(),
        min_real: f64::INFINITY,
        max_abs_imag: 0.0,
        max_tail_bound: 0.0,
        negatives: Vec::new(),
        trivial_action: kernel.is_trivial(),
    };
    for (i, x) in samples.iter().enumerate() {
        let v = kernel.eval(x)?;
        rep.min_real = rep.min_real.min(v.value.re);
        rep.max_abs_imag = rep.max_abs_imag.max(v.value.im.abs());
        rep.max_tail_bound = rep.max_tail_bound.max(v.tail_bound);
        let slack = v.tail_bound + 1e-9 * v.value.norm().max(1.0);
        if v.value.re < -slack {
            rep.negatives.push(i);
        }
    }
    Ok(rep)
}
