use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::Field;

/// Largest number of cells a single window may hold.
pub const MAX_CELLS: usize = 1 << 22;

/// Coset lattice for functions on `K^N` supported in `p^{-M} O^N` and
/// constant on cosets of `p^m O^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeWindow {
    pub n: usize,
    /// Support exponent `M`.
    pub support: i64,
    /// Constancy exponent `m`.
    pub constancy: i64,
}

impl LatticeWindow {
    pub fn new(n: usize, support: i64, constancy: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::WindowMismatch("dimension must be positive".into()));
        }
        if support + constancy < 0 {
            return Err(Error::WindowMismatch(format!(
                "empty window: support {support}, constancy {constancy}"
            )));
        }
        Ok(LatticeWindow { n, support, constancy })
    }

    /// `L = M + m`, the number of `p`-adic digits per coordinate.
    pub fn depth(&self) -> u32 {
        (self.support + self.constancy) as u32
    }

    /// Window of the Fourier transform: `(M, m) → (m, M)`.
    pub fn dual(&self) -> Self {
        LatticeWindow { n: self.n, support: self.constancy, constancy: self.support }
    }

    /// Smallest window refining both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::WindowMismatch(format!("dimensions {} and {}", self.n, other.n)));
        }
        Ok(LatticeWindow {
            n: self.n,
            support: self.support.max(other.support),
            constancy: self.constancy.max(other.constancy),
        })
    }

    pub fn refines(&self, other: &Self) -> bool {
        self.n == other.n && self.support >= other.support && self.constancy >= other.constancy
    }

    /// Haar measure of one cell, `q^{-mN}`.
    pub fn cell_measure(&self, field: &Field) -> f64 {
        (field.q() as f64).powi(-(self.constancy as i32) * self.n as i32)
    }

    pub fn layout(&self, field: &Field) -> Result<CellLayout> {
        CellLayout::new(field, self)
    }
}

/// Dense indexing of window cells. A cell `p^{-M} a + p^m O^N` is indexed by
/// the coordinates `a_{ij} ∈ Z/p^L` of `a_i = Σ_j a_{ij} θ^j`, as
/// `Σ a_{ij} P^{i f + j}` with `P = p^L`.
#[derive(Debug, Clone)]
pub struct CellLayout {
    pub side: u64,
    pub axes: usize,
    pub f: usize,
    pub size: usize,
}

impl CellLayout {
    pub fn new(field: &Field, w: &LatticeWindow) -> Result<Self> {
        let f = field.degree();
        let axes = w.n * f;
        let side = field
            .p()
            .checked_pow(w.depth())
            .ok_or_else(|| Error::SizeGuard(format!("p^{} overflows", w.depth())))?;
        let size = (side as u128).checked_pow(axes as u32).filter(|&s| s <= MAX_CELLS as u128).ok_or_else(|| {
            Error::SizeGuard(format!("window {w:?} has more than {MAX_CELLS} cells"))
        })? as usize;
        Ok(CellLayout { side, axes, f, size })
    }

    pub fn coords(&self, mut idx: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.axes);
        for _ in 0..self.axes {
            out.push(idx as u64 % self.side);
            idx /= self.side as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        coords.iter().rev().fold(0usize, |acc, &c| acc * self.side as usize + (c % self.side) as usize)
    }
}
