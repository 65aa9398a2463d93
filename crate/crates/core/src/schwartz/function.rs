use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::window::{CellLayout, LatticeWindow};
use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, PadicVector};

/// Locally constant, compactly supported function `K^N → C` stored densely
/// on the cells of a [`LatticeWindow`].
#[derive(Clone, Debug)]
pub struct TestFunction {
    field: Field,
    window: LatticeWindow,
    layout: CellLayout,
    amps: Vec<Complex64>,
}

/// How convolutions are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvolutionMethod {
    Direct,
    #[default]
    Fourier,
}

/// Cell count above which direct (quadratic) convolution is refused.
pub const MAX_DIRECT_CONVOLUTION: usize = 1 << 14;

fn v_p(p: u64, mut x: u64) -> u32 {
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

impl TestFunction {
    pub fn zero(field: &Field, window: LatticeWindow) -> Result<Self> {
        let layout = window.layout(field)?;
        let amps = vec![Complex64::zero(); layout.size];
        Ok(TestFunction { field: field.clone(), window, layout, amps })
    }

    pub fn from_amplitudes(field: &Field, window: LatticeWindow, amps: Vec<Complex64>) -> Result<Self> {
        let layout = window.layout(field)?;
        if amps.len() != layout.size {
            return Err(Error::WindowMismatch(format!(
                "{} amplitudes for {} cells",
                amps.len(),
                layout.size
            )));
        }
        Ok(TestFunction { field: field.clone(), window, layout, amps })
    }

    /// Builds a function from its value on each cell, given by integer coordinates.
    pub fn from_cell_fn(
        field: &Field,
        window: LatticeWindow,
        g: impl Fn(&[u64]) -> Complex64 + Sync,
    ) -> Result<Self> {
        let layout = window.layout(field)?;
        let amps = (0..layout.size).into_par_iter().map(|i| g(&layout.coords(i))).collect();
        Ok(TestFunction { field: field.clone(), window, layout, amps })
    }

    /// Builds a function from its value at each cell representative.
    pub fn from_point_fn(
        field: &Field,
        window: LatticeWindow,
        g: impl Fn(&PadicVector) -> Complex64 + Sync,
    ) -> Result<Self> {
        let mut out = Self::zero(field, window)?;
        let reps: Vec<Complex64> =
            (0..out.layout.size).into_par_iter().map(|i| g(&out.cell_representative(i))).collect();
        out.amps = reps;
        Ok(out)
    }

    /// Indicator of the ball `c + p^r O^N`, which is a single cell of its window.
    pub fn indicator_ball(field: &Field, center: &PadicVector, r: i64) -> Result<Self> {
        let n = center.dim();
        let support = center.valuation().map_or(-r, |v| (-v).max(-r));
        let window = LatticeWindow::new(n, support, r)?;
        let mut out = Self::zero(field, window)?;
        let idx = out.cell_index(center)?.expect("center lies in the support");
        out.amps[idx] = Complex64::new(1.0, 0.0);
        Ok(out)
    }

    /// Indicator of `p^r O^N`.
    pub fn indicator_ball_at_zero(field: &Field, n: usize, r: i64) -> Result<Self> {
        Self::indicator_ball(field, &PadicVector::zero(field, n), r)
    }

    /// Indicator of the unit polydisk `O^N`.
    pub fn unit_ball(field: &Field, n: usize) -> Result<Self> {
        Self::indicator_ball_at_zero(field, n, 0)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn window(&self) -> LatticeWindow {
        self.window
    }

    pub fn layout(&self) -> &CellLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Representative `p^{-M} a` of cell `idx`.
    pub fn cell_representative(&self, idx: usize) -> PadicVector {
        let coords = self.layout.coords(idx);
        let f = self.layout.f;
        let comps = coords
            .chunks(f)
            .map(|c| {
                let c: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
                PadicScalar::from_coords(&self.field, -self.window.support, &c)
            })
            .collect();
        PadicVector::new(comps).expect("components share the field")
    }

    /// Valuation of the cell's points, or `None` for the cell `p^m O^N`
    /// around the origin.
    pub fn cell_valuation(&self, idx: usize) -> Option<i64> {
        let p = self.field.p();
        let coords = self.layout.coords(idx);
        coords.iter().filter(|&&c| c != 0).map(|&c| v_p(p, c) as i64).min().map(|k| k - self.window.support)
    }

    /// Index of the cell containing `x`, `None` outside the support.
    pub fn cell_index(&self, x: &PadicVector) -> Result<Option<usize>> {
        if x.dim() != self.window.n {
            return Err(Error::WindowMismatch("point dimension".into()));
        }
        let big_m = self.window.support;
        let depth = self.window.depth() as i64;
        let side = BigInt::from(self.layout.side);
        let p = self.field.p();
        let mut coords = Vec::with_capacity(self.layout.axes);
        for s in x.comps() {
            match s.valuation() {
                Some(v) if v < -big_m => return Ok(None),
                Some(v) => {
                    let e = v + big_m;
                    if e >= depth {
                        coords.extend(std::iter::repeat(0).take(self.layout.f));
                        continue;
                    }
                    if e + (s.precision() as i64) < depth {
                        return Err(Error::PrecisionExhausted("point known too coarsely for the window".into()));
                    }
                    let shift = num_traits::pow(BigInt::from(p), e as usize);
                    for u in s.unit_coords() {
                        coords.push((u * &shift).mod_floor(&side).to_u64().unwrap());
                    }
                }
                None => {
                    if let Some(a) = s.abs_precision() {
                        if a + big_m < depth {
                            return Err(Error::PrecisionExhausted("zero known too coarsely".into()));
                        }
                    }
                    coords.extend(std::iter::repeat(0).take(self.layout.f));
                }
            }
        }
        Ok(Some(self.layout.index(&coords)))
    }

    pub fn eval(&self, x: &PadicVector) -> Result<Complex64> {
        Ok(self.cell_index(x)?.map_or(Complex64::zero(), |i| self.amps[i]))
    }

    /// `∫ φ dx` with the unit ball of measure one.
    pub fn integrate(&self) -> Complex64 {
        self.amps.iter().sum::<Complex64>() * self.window.cell_measure(&self.field)
    }

    /// Same function on a finer window.
    pub fn refine(&self, target: LatticeWindow) -> Result<Self> {
        if !target.refines(&self.window) {
            return Err(Error::WindowMismatch(format!("{target:?} does not refine {:?}", self.window)));
        }
        if target == self.window {
            return Ok(self.clone());
        }
        let shift = (target.support - self.window.support) as u32;
        let div = self.field.p().pow(shift);
        let old = &self.layout;
        let amps = &self.amps;
        Self::from_cell_fn(&self.field, target, |c| {
            if c.iter().any(|&x| x % div != 0) {
                return Complex64::zero();
            }
            let oc: Vec<u64> = c.iter().map(|&x| (x / div) % old.side).collect();
            amps[old.index(&oc)]
        })
    }

    /// Both functions on their common refinement.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.field != other.field {
            return Err(Error::ParamsMismatch);
        }
        let w = self.window.join(&other.window)?;
        Ok((self.refine(w)?, other.refine(w)?))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let amps = a.amps.iter().zip(&b.amps).map(|(&x, &y)| op(x, y)).collect();
        Ok(TestFunction { amps, ..a })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TestFunction { amps: self.amps.iter().map(|&x| x * s).collect(), ..self.clone() }
    }

    /// Applies `g(cell index, amplitude)` to every cell.
    pub fn map_cells(&self, g: impl Fn(usize, Complex64) -> Complex64 + Sync) -> Self {
        let amps = self.amps.par_iter().enumerate().map(|(i, &a)| g(i, a)).collect();
        TestFunction { amps, ..self.clone() }
    }

    /// `⟨φ, ψ⟩ = ∫ φ · conj(ψ)`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        let (a, b) = self.align(other)?;
        let s: Complex64 = a.amps.iter().zip(&b.amps).map(|(x, y)| x * y.conj()).sum();
        Ok(s * a.window.cell_measure(&a.field))
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.amps.iter().map(|x| x.norm_sqr()).sum();
        (s * self.window.cell_measure(&self.field)).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.amps.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// `sup |φ − ψ|` on the common refinement.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }

    /// `(φ * ψ)(x) = ∫ φ(x − y) ψ(y) dy`.
    pub fn convolve(&self, other: &Self, method: ConvolutionMethod) -> Result<Self> {
        let (a, b) = self.align(other)?;
        match method {
            ConvolutionMethod::Fourier => {
                let fa = a.fourier(super::Direction::Forward)?;
                let fb = b.fourier(super::Direction::Forward)?;
                fa.mul(&fb)?.fourier(super::Direction::Inverse)
            }
            ConvolutionMethod::Direct => {
                if a.layout.size > MAX_DIRECT_CONVOLUTION {
                    return Err(Error::SizeGuard(format!(
                        "direct convolution limited to {MAX_DIRECT_CONVOLUTION} cells"
                    )));
                }
                let lay = &a.layout;
                let measure = a.window.cell_measure(&a.field);
                let nz: Vec<(Vec<u64>, Complex64)> = b
                    .amps
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, &v)| (lay.coords(j), v))
                    .collect();
                let amps_a = &a.amps;
                let out = Self::from_cell_fn(&a.field, a.window, |x| {
                    let mut acc = Complex64::zero();
                    let mut diff = vec![0u64; x.len()];
                    for (y, v) in &nz {
                        for k in 0..x.len() {
                            diff[k] = (x[k] + lay.side - y[k]) % lay.side;
                        }
                        acc += amps_a[lay.index(&diff)] * v;
                    }
                    acc * measure
                })?;
                Ok(out)
            }
        }
    }
}
