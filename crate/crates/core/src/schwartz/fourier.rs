use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use super::function::TestFunction;
use super::window::CellLayout;
use crate::error::{Error, Result};
use crate::padic::Field;

/// `Forward` is `∫ χ(ξ·x) φ(x) dx`, `Inverse` uses `χ(−ξ·x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// `Fast` runs a multidimensional FFT over the digit lattice; `Direct` sums
/// every cell pair with exact integer phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FourierMethod {
    #[default]
    Fast,
    Direct,
}

/// Cell count above which the direct transform is refused.
pub const MAX_DIRECT_TRANSFORM: usize = 1 << 13;

/// Trace form reduced modulo `P`.
fn trace_form_mod(field: &Field, side: u64) -> Vec<Vec<u64>> {
    let m = num_bigint::BigInt::from(side);
    field
        .trace_form()
        .into_iter()
        .map(|row| row.into_iter().map(|b| b.mod_floor(&m).to_u64().unwrap()).collect())
        .collect()
}

/// Applies the trace form blockwise: `c_i = B b_i mod P`.
fn apply_trace_form(b: &[u64], form: &[Vec<u64>], side: u64) -> Vec<u64> {
    let f = form.len();
    let mut out = vec![0u64; b.len()];
    for (blk, chunk) in b.chunks(f).enumerate() {
        for j in 0..f {
            let s: u128 = (0..f).map(|k| form[j][k] as u128 * chunk[k] as u128).sum();
            out[blk * f + j] = (s % side as u128) as u64;
        }
    }
    out
}

/// In-place unnormalized DFT along every axis of a `side^axes` array.
fn dft_nd(data: &mut [Complex64], side: usize, axes: usize, dir: FftDirection) {
    if side <= 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(side, dir);
    let mut line = vec![Complex64::zero(); side];
    let mut scratch = vec![Complex64::zero(); fft.get_inplace_scratch_len()];
    let mut stride = 1usize;
    for _ in 0..axes {
        let block = stride * side;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for k in 0..side {
                    line[k] = data[base + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for k in 0..side {
                    data[base + k * stride] = line[k];
                }
            }
        }
        stride *= side;
    }
}

impl TestFunction {
    /// Fourier transform with the default (fast) method.
    pub fn fourier(&self, dir: Direction) -> Result<TestFunction> {
        self.fourier_with(dir, FourierMethod::Fast)
    }

    /// Exact transform: a function on window `(M, m)` maps to one on `(m, M)`.
    pub fn fourier_with(&self, dir: Direction, method: FourierMethod) -> Result<TestFunction> {
        let field = self.field().clone();
        let win = self.window();
        let out_win = win.dual();
        let layout: &CellLayout = self.layout();
        let side = layout.side;
        let form = trace_form_mod(&field, side);
        let scale = win.cell_measure(&field);
        match method {
            FourierMethod::Fast => {
                let mut data = self.amplitudes().to_vec();
                let fdir = match dir {
                    Direction::Forward => FftDirection::Inverse,
                    Direction::Inverse => FftDirection::Forward,
                };
                dft_nd(&mut data, side as usize, layout.axes, fdir);
                TestFunction::from_cell_fn(&field, out_win, |b| {
                    let c = apply_trace_form(b, &form, side);
                    data[layout.index(&c)] * scale
                })
            }
            FourierMethod::Direct => {
                if layout.size > MAX_DIRECT_TRANSFORM {
                    return Err(Error::SizeGuard(format!(
                        "direct transform limited to {MAX_DIRECT_TRANSFORM} cells"
                    )));
                }
                let roots: Vec<Complex64> =
                    (0..side).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / side as f64)).collect();
                let src: Vec<(Vec<u64>, Complex64)> = self
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(|(i, &a)| (layout.coords(i), a))
                    .collect();
                let amps: Vec<Complex64> = (0..layout.size)
                    .into_par_iter()
                    .map(|j| {
                        let c = apply_trace_form(&layout.coords(j), &form, side);
                        let mut acc = Complex64::zero();
                        for (a, v) in &src {
                            let ph: u128 = a.iter().zip(&c).map(|(&x, &y)| x as u128 * y as u128).sum();
                            let mut ph = (ph % side as u128) as u64;
                            if dir == Direction::Inverse {
                                ph = (side - ph) % side;
                            }
                            acc += v * roots[ph as usize];
                        }
                        acc * scale
                    })
                    .collect();
                TestFunction::from_amplitudes(&field, out_win, amps)
            }
        }
    }
}
