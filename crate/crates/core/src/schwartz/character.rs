use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::padic::{Field, PadicScalar, PadicVector};

/// Standard additive character `χ(x) = exp(2πi {Tr x}_p)` on `K`.
#[derive(Debug, Clone)]
pub struct Character {
    field: Field,
}

/// `exp(2πi num/den)`, reducing the phase exactly before converting.
pub fn root_of_unity(num: &BigInt, den: &BigInt) -> Complex64 {
    let r = num.mod_floor(den);
    // keep the ratio accurate for large denominators
    let shift = den.bits().saturating_sub(60);
    let (rn, dn) = ((&r >> shift).to_f64().unwrap(), (den >> shift).to_f64().unwrap());
    Complex64::from_polar(1.0, TAU * rn / dn)
}

impl Character {
    pub fn new(field: &Field) -> Self {
        Character { field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Exact phase `num/den ∈ [0, 1)` of `χ(x)`.
    pub fn phase(&self, x: &PadicScalar) -> Result<(BigInt, BigInt)> {
        if x.field() != &self.field {
            return Err(Error::ParamsMismatch);
        }
        x.trace_fraction()
    }

    pub fn eval(&self, x: &PadicScalar) -> Result<Complex64> {
        let (n, d) = self.phase(x)?;
        Ok(root_of_unity(&n, &d))
    }

    /// `χ(x · y)` for the standard bilinear pairing on `K^N`.
    pub fn pair(&self, x: &PadicVector, y: &PadicVector) -> Result<Complex64> {
        self.eval(&x.dot(y)?)
    }

    /// Exact phase of `χ(x · y)`.
    pub fn pair_phase(&self, x: &PadicVector, y: &PadicVector) -> Result<(BigInt, BigInt)> {
        self.phase(&x.dot(y)?)
    }
}
