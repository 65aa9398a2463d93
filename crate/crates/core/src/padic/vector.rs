use super::params::Field;
use super::scalar::{AbsValue, PadicScalar};
use crate::error::{Error, Result};

/// Element of `K^N` with the max norm.
#[derive(Clone, Debug)]
pub struct PadicVector {
    comps: Vec<PadicScalar>,
}

impl PadicVector {
    pub fn new(comps: Vec<PadicScalar>) -> Result<Self> {
        if let Some(first) = comps.first() {
            if comps.iter().any(|c| c.field() != first.field()) {
                return Err(Error::ParamsMismatch);
            }
        }
        Ok(PadicVector { comps })
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        PadicVector { comps: vec![PadicScalar::zero(field); n] }
    }

    pub fn from_i64(field: &Field, xs: &[i64]) -> Self {
        PadicVector { comps: xs.iter().map(|&x| PadicScalar::from_i64(field, x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[PadicScalar] {
        &self.comps
    }

    pub fn get(&self, i: usize) -> &PadicScalar {
        &self.comps[i]
    }

    /// `min_i v(x_i)`, `None` for the zero vector.
    pub fn valuation(&self) -> Option<i64> {
        self.comps.iter().filter_map(|c| c.valuation()).min()
    }

    /// `||x|| = max_i |x_i|`.
    pub fn norm(&self) -> AbsValue {
        AbsValue::from_valuation(self.valuation())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_sub(b))
    }

    pub fn scale(&self, s: &PadicScalar) -> Result<Self> {
        let comps = self.comps.iter().map(|c| c.checked_mul(s)).collect::<Result<_>>()?;
        Ok(PadicVector { comps })
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        PadicVector { comps: self.comps.iter().map(|c| c.shift(k)).collect() }
    }

    /// `Σ_i x_i y_i`.
    pub fn dot(&self, other: &Self) -> Result<PadicScalar> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let field = match self.comps.first() {
            Some(c) => c.field().clone(),
            None => return Err(Error::InvalidInput("empty vectors".into())),
        };
        let mut acc = PadicScalar::zero(&field);
        for (a, b) in self.comps.iter().zip(&other.comps) {
            acc = acc.checked_add(&a.checked_mul(b)?)?;
        }
        Ok(acc)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.comps.iter().zip(&other.comps).all(|(a, b)| a.approx_eq(b))
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&PadicScalar, &PadicScalar) -> Result<PadicScalar>,
    ) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidInput("dimension mismatch".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| op(a, b)).collect::<Result<_>>()?;
        Ok(PadicVector { comps })
    }
}
