use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{AbsValue, Field, MoebiusMap, PadicScalar, ProjectivePoint};

/// Normal-form coordinates `(t₁; y₂, t₂; x₃, y₃, t₃; …)` of a Schottky group.
/// `w₁` fixes `0` (attracting) and `1`, `w₂` fixes `∞` (attracting) and `y₂`,
/// `w_i` fixes `x_i` (attracting) and `y_i`.
#[derive(Debug, Clone)]
pub struct SchottkyTuple {
    field: Field,
    t: Vec<PadicScalar>,
    y2: PadicScalar,
    extra: Vec<(PadicScalar, PadicScalar)>,
}

/// Generators `w₁, …, w_g` built from a tuple.
#[derive(Debug, Clone)]
pub struct GeneratorMatrices {
    pub maps: Vec<MoebiusMap>,
}

/// `max |c|` over the listed coordinates.
pub fn max_norm<'a>(coords: impl IntoIterator<Item = &'a PadicScalar>) -> AbsValue {
    coords.into_iter().map(|c| c.norm()).fold(AbsValue::Zero, |a, b| if b > a { b } else { a })
}

fn in_disk(x: &PadicScalar) -> bool {
    x.norm() <= AbsValue::Power(0)
}

impl SchottkyTuple {
    /// Genus-two tuple `(0, 1, t₁; ∞, y₂, t₂)`.
    pub fn genus2(t1: PadicScalar, y2: PadicScalar, t2: PadicScalar) -> Result<Self> {
        Self::new(vec![t1, t2], y2, Vec::new())
    }

    /// `t` holds `t₁, …, t_g`; `extra` holds `(x_i, y_i)` for `i ≥ 3`.
    pub fn new(t: Vec<PadicScalar>, y2: PadicScalar, extra: Vec<(PadicScalar, PadicScalar)>) -> Result<Self> {
        if t.len() < 2 || extra.len() + 2 != t.len() {
            return Err(Error::InvalidTuple(format!(
                "{} multipliers and {} extra fixed-point pairs do not describe a genus",
                t.len(),
                extra.len()
            )));
        }
        let field = y2.field().clone();
        let all = t.iter().chain(std::iter::once(&y2)).chain(extra.iter().flat_map(|(x, y)| [x, y]));
        if all.into_iter().any(|c| c.field() != &field) {
            return Err(Error::ParamsMismatch);
        }
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() || !(ti.norm() < AbsValue::Power(0)) {
                return Err(Error::InvalidTuple(format!("need 0 < |t_{}| < 1, got {}", i + 1, ti.norm())));
            }
        }
        let mut points: Vec<(&str, PadicScalar)> = vec![("y2", y2.clone())];
        for (x, y) in &extra {
            points.push(("x_i", x.clone()));
            points.push(("y_i", y.clone()));
        }
        for (name, c) in &points {
            if !in_disk(c) {
                return Err(Error::InvalidTuple(format!("{name} = {c} lies outside the unit disk")));
            }
        }
        let zero = PadicScalar::zero(&field);
        let one = PadicScalar::one(&field);
        let mut fixed: Vec<&PadicScalar> = vec![&zero, &one];
        fixed.extend(points.iter().map(|(_, c)| c));
        for i in 0..fixed.len() {
            for j in (i + 1)..fixed.len() {
                if fixed[i].checked_sub(fixed[j])?.is_zero() {
                    return Err(Error::InvalidTuple(format!(
                        "fixed points {} and {} coincide at working precision",
                        fixed[i], fixed[j]
                    )));
                }
            }
        }
        Ok(SchottkyTuple { field, t, y2, extra })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn genus(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self, i: usize) -> &PadicScalar {
        &self.t[i - 1]
    }

    pub fn y2(&self) -> &PadicScalar {
        &self.y2
    }

    pub fn extra(&self) -> &[(PadicScalar, PadicScalar)] {
        &self.extra
    }

    /// The `3g − 3` free coordinates `t₁, y₂, t₂, x₃, y₃, t₃, …`.
    pub fn coordinates(&self) -> Vec<PadicScalar> {
        let mut out = vec![self.t[0].clone(), self.y2.clone(), self.t[1].clone()];
        for (i, (x, y)) in self.extra.iter().enumerate() {
            out.extend([x.clone(), y.clone(), self.t[i + 2].clone()]);
        }
        out
    }

    /// `‖x‖ = max` of the coordinate norms.
    pub fn norm(&self) -> AbsValue {
        max_norm(&self.coordinates())
    }

    /// Attracting and repelling fixed points of `w_i`.
    pub fn fixed_points(&self, i: usize) -> (ProjectivePoint, ProjectivePoint) {
        match i {
            1 => (ProjectivePoint::Finite(PadicScalar::zero(&self.field)), ProjectivePoint::Finite(PadicScalar::one(&self.field))),
            2 => (ProjectivePoint::Infinity, ProjectivePoint::Finite(self.y2.clone())),
            _ => {
                let (x, y) = &self.extra[i - 3];
                (ProjectivePoint::Finite(x.clone()), ProjectivePoint::Finite(y.clone()))
            }
        }
    }

    pub fn generators(&self) -> Result<GeneratorMatrices> {
        let maps = (1..=self.genus())
            .map(|i| {
                let (a, r) = self.fixed_points(i);
                MoebiusMap::hyperbolic(&a, &r, self.t(i))
            })
            .collect::<Result<_>>()?;
        Ok(GeneratorMatrices { maps })
    }
}

/// `w₁ = [[−t₁, 0], [1 − t₁, −1]]` and `w₂ = [[1, (t₂ − 1)y₂], [0, t₂]]`.
pub fn generators_genus2(x: &SchottkyTuple) -> Result<GeneratorMatrices> {
    if x.genus() != 2 {
        return Err(Error::InvalidTuple(format!("genus {} tuple, expected 2", x.genus())));
    }
    x.generators()
}

impl GeneratorMatrices {
    /// Product of generators along a word with letters `±(i + 1)`, left to right.
    pub fn word(&self, word: &[i32]) -> Result<MoebiusMap> {
        let field = self.maps[0].field().clone();
        let mut m = MoebiusMap::identity(&field);
        for &l in word {
            let i = l.unsigned_abs() as usize;
            let g = self
                .maps
                .get(i.wrapping_sub(1))
                .ok_or_else(|| Error::InvalidInput(format!("letter {l} out of range")))?;
            m = if l > 0 { m.compose(g)? } else { m.compose(&g.inverse())? };
        }
        Ok(m)
    }
}

/// Record of a tuple for reports: coordinate strings and norm exponents.
#[derive(Debug, Clone, Serialize)]
pub struct TupleRecord {
    pub coordinates: Vec<String>,
    pub norm_exponents: Vec<Option<i64>>,
    pub norm_exponent: Option<i64>,
}

impl From<&SchottkyTuple> for TupleRecord {
    fn from(x: &SchottkyTuple) -> Self {
        let c = x.coordinates();
        TupleRecord {
            coordinates: c.iter().map(|s| s.to_string()).collect(),
            norm_exponents: c.iter().map(|s| s.norm().exponent()).collect(),
            norm_exponent: x.norm().exponent(),
        }
    }
}
