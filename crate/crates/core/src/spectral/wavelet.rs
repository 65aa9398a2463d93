use num_complex::Complex64;
use parking_lot::Mutex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::digit_vectors;
use super::operator::Operator;
use super::symbol::RadialSymbol;
use crate::action::{random_vector, ExtendedMap};
use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, PadicVector};
use crate::schwartz::{Character, Direction, LatticeWindow, TestFunction};

/// Index `(γ, b, k)`: `γ ≤ 0`, `b` a representative of `O^N / p^{−γ}O^N`,
/// `k` a nonzero vector of residue codes.
#[derive(Debug, Clone)]
pub struct WaveletIndex {
    pub gamma: i64,
    pub b: PadicVector,
    pub k: Vec<u64>,
}

/// `ω_{γbk}` with `F ω = q^{γN/2} χ(b·ξ) 1_C(ξ)`, `C = p^γ(−p^{−1}k + O^N)`.
#[derive(Debug, Clone)]
pub struct Wavelet {
    pub index: WaveletIndex,
    pub function: TestFunction,
}

fn check_k(field: &Field, n: usize, k: &[u64]) -> Result<()> {
    if k.len() != n {
        return Err(Error::InadmissibleIndex(format!("k has {} entries, expected {n}", k.len())));
    }
    if k.iter().any(|&c| c >= field.q()) {
        return Err(Error::InadmissibleIndex("k entries must be residue codes below q".into()));
    }
    if k.iter().all(|&c| c == 0) {
        return Err(Error::InadmissibleIndex("k must be nonzero".into()));
    }
    Ok(())
}

fn k_vector(field: &Field, k: &[u64]) -> Result<PadicVector> {
    PadicVector::new(k.iter().map(|&c| PadicScalar::from_digits(field, 0, &[c])).collect())
}

/// Every admissible index with the given `γ`, in a fixed order.
pub fn wavelet_indices(field: &Field, n: usize, gamma: i64) -> Result<Vec<WaveletIndex>> {
    if gamma > 0 {
        return Err(Error::InadmissibleIndex(format!("γ = {gamma} is positive")));
    }
    let q = field.q();
    let bs = digit_vectors(field, n, (-gamma) as u32)?;
    let total = q.pow(n as u32);
    let mut out = Vec::new();
    for b in &bs {
        for code in 1..total {
            let mut c = code;
            let k: Vec<u64> = (0..n)
                .map(|_| {
                    let d = c % q;
                    c /= q;
                    d
                })
                .collect();
            out.push(WaveletIndex { gamma, b: b.clone(), k });
        }
    }
    Ok(out)
}

impl Wavelet {
    pub fn build(field: &Field, gamma: i64, b: &PadicVector, k: &[u64]) -> Result<Self> {
        let n = b.dim();
        if gamma > 0 {
            return Err(Error::InadmissibleIndex(format!("γ = {gamma} is positive")));
        }
        check_k(field, n, k)?;
        if b.valuation().is_some_and(|v| v < 0) {
            return Err(Error::InadmissibleIndex("b must lie in O^N".into()));
        }
        let kv = k_vector(field, k)?;
        let chi = Character::new(field);
        let scale = (field.q() as f64).powf(gamma as f64 * n as f64 / 2.0);
        let hat_window = LatticeWindow::new(n, 1 - gamma, 0)?;
        let failure = Mutex::new(None);
        let hat = TestFunction::from_point_fn(field, hat_window, |xi| {
            let inside = xi
                .shift(1 - gamma)
                .checked_add(&kv)
                .map(|y| y.valuation().is_none_or(|v| v >= 1));
            match inside {
                Ok(false) => Complex64::new(0.0, 0.0),
                Ok(true) => match chi.pair(b, xi) {
                    Ok(z) => z * scale,
                    Err(e) => {
                        failure.lock().get_or_insert(e.to_string());
                        Complex64::new(0.0, 0.0)
                    }
                },
                Err(e) => {
                    failure.lock().get_or_insert(e.to_string());
                    Complex64::new(0.0, 0.0)
                }
            }
        });
        let hat = hat?;
        if let Some(msg) = failure.into_inner() {
            return Err(Error::InvalidInput(msg));
        }
        let function = hat.fourier(Direction::Inverse)?;
        Ok(Wavelet { index: WaveletIndex { gamma, b: b.clone(), k: k.to_vec() }, function })
    }

    pub fn from_index(field: &Field, idx: &WaveletIndex) -> Result<Self> {
        Self::build(field, idx.gamma, &idx.b, &idx.k)
    }
}

/// Outcome of evaluating `‖σξ‖` over the Fourier support of a wavelet.
#[derive(Debug, Clone, Serialize)]
pub enum GammaReport {
    /// `‖σξ‖ = b^{1−γ_σ}` on every sample.
    Constant { gamma_sigma: i64, samples: usize },
    /// Two points of the support whose images have different norms.
    NotConstant { xi: String, eta: String, norm_exp_xi: Option<i64>, norm_exp_eta: Option<i64> },
}

impl GammaReport {
    pub fn value(&self) -> Result<i64> {
        match self {
            GammaReport::Constant { gamma_sigma, .. } => Ok(*gamma_sigma),
            GammaReport::NotConstant { xi, eta, .. } => {
                Err(Error::NotConstant(format!("‖σξ‖ differs between {xi} and {eta}")))
            }
        }
    }
}

fn describe(x: &PadicVector) -> String {
    let parts: Vec<String> = x
        .comps()
        .iter()
        .map(|c| match c.valuation() {
            None => "0".into(),
            Some(v) => format!("p^{v}·{:?}", c.digits()),
        })
        .collect();
    format!("({})", parts.join(", "))
}

const RANDOM_SAMPLES_PER_CELL: usize = 3;

/// `γ_σ` for the Fourier support `C = p^γ(−p^{−1}k + O^N)`: `σ` is evaluated
/// on a representative of every `O^N` coset in `C` and on random points
/// inside each coset.
pub fn gamma_sigma(sigma: &ExtendedMap, gamma: i64, k: &[u64], seed: u64) -> Result<GammaReport> {
    let field = sigma.field();
    let n = sigma.dim();
    if gamma > 0 {
        return Err(Error::InadmissibleIndex(format!("γ = {gamma} is positive")));
    }
    check_k(field, n, k)?;
    let center = PadicVector::new(k_vector(field, k)?.comps().iter().map(|c| -c).collect())?.shift(gamma - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Option<(PadicVector, Option<i64>)> = None;
    let mut samples = 0;
    for u in digit_vectors(field, n, (-gamma) as u32)? {
        let cell = center.checked_add(&u.shift(gamma))?;
        let mut pts = vec![cell.clone()];
        for _ in 0..RANDOM_SAMPLES_PER_CELL {
            let depth = rng.gen_range(0..=sigma.rho() + 2);
            let eta = random_vector(field, n, depth, depth + 3, &mut rng);
            pts.push(cell.checked_add(&eta)?);
        }
        for xi in pts {
            samples += 1;
            let v = sigma.apply(&xi)?.valuation();
            match &first {
                None => first = Some((xi, v)),
                Some((x0, v0)) if *v0 != v => {
                    return Ok(GammaReport::NotConstant {
                        xi: describe(x0),
                        eta: describe(&xi),
                        norm_exp_xi: v0.map(|v| -v),
                        norm_exp_eta: v.map(|v| -v),
                    });
                }
                _ => {}
            }
        }
    }
    let v = first.and_then(|(_, v)| v).ok_or_else(|| Error::NotConstant("σ sends the support to 0".into()))?;
    Ok(GammaReport::Constant { gamma_sigma: 1 + v, samples })
}

/// Eigenvalue of `J_σ`, `H_σ` or `H_G` on `ω_{γbk}`; `H_G` averages the
/// `H_σ` eigenvalues over the group.
pub fn eigenvalue(symbol: &RadialSymbol, op: &Operator, gamma: i64, k: &[u64], seed: u64) -> Result<f64> {
    let shell = |s: &ExtendedMap| -> Result<f64> {
        let g = gamma_sigma(s, gamma, k, seed)?.value()?;
        Ok(symbol.value(1 - g))
    };
    match op {
        Operator::J(s) => shell(s),
        Operator::H(s) => Ok(shell(s)? - symbol.lambda()),
        Operator::HG(a) => {
            let mut sum = 0.0;
            for s in a.maps() {
                sum += shell(s)? - symbol.lambda();
            }
            Ok(sum / a.maps().len() as f64)
        }
    }
}
