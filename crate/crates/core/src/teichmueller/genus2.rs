use serde::{Deserialize, Serialize};

use super::tuple::{generators_genus2, SchottkyTuple};
use crate::error::{Error, Result};
use crate::padic::{AbsValue, MoebiusMap, PadicScalar, ProjectivePoint};

/// `w = w₂⁻¹w₁`, computed as `adj(w₂)·w₁`.
pub fn composite_w(x: &SchottkyTuple) -> Result<MoebiusMap> {
    let g = generators_genus2(x)?;
    g.maps[1].inverse().compose(&g.maps[0])
}

/// The closed form `[[y₂(1 − t₁)(1 − t₂) − t₁t₂, y₂(t₂ − 1)], [1 − t₁, −1]]`.
pub fn composite_w_display(x: &SchottkyTuple) -> Result<MoebiusMap> {
    let f = x.field();
    let one = PadicScalar::one(f);
    let (t1, t2, y2) = (x.t(1), x.t(2), x.y2());
    let u1 = one.checked_sub(t1)?;
    let u2 = one.checked_sub(t2)?;
    let a = y2.checked_mul(&u1)?.checked_mul(&u2)?.checked_sub(&t1.checked_mul(t2)?)?;
    let b = y2.checked_mul(&t2.checked_sub(&one)?)?;
    MoebiusMap::new(a, b, u1, -&one)
}

/// Which fixed point of `w` is called `z₁` (sent to `0` by `β`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootOrder {
    /// `z₁` is the attracting fixed point.
    #[default]
    AttractingFirst,
    /// Canonical digit order.
    Canonical,
}

/// `β(z) = ((z₂ − 1)z + z₁(1 − z₂)) / ((z₁ − 1)z + z₂(1 − z₁))`.
pub fn beta_map(z1: &PadicScalar, z2: &PadicScalar) -> Result<MoebiusMap> {
    let one = PadicScalar::one(z1.field());
    let a = z2.checked_sub(&one)?;
    let b = z1.checked_mul(&one.checked_sub(z2)?)?;
    let c = z1.checked_sub(&one)?;
    let d = z2.checked_mul(&one.checked_sub(z1)?)?;
    MoebiusMap::new(a, b, c, d)
}

/// `η = z₁(z₂ − 1) / (z₂(z₁ − 1))`.
pub fn eta_of_roots(z1: &PadicScalar, z2: &PadicScalar) -> Result<PadicScalar> {
    let one = PadicScalar::one(z1.field());
    z1.checked_mul(&z2.checked_sub(&one)?)?.checked_div(&z2.checked_mul(&z1.checked_sub(&one)?)?)
}

/// Result of the explicit genus-two automorphism action.
#[derive(Debug, Clone)]
pub struct SigmaAction {
    pub w: MoebiusMap,
    pub z1: PadicScalar,
    pub z2: PadicScalar,
    pub beta: MoebiusMap,
    pub eta: PadicScalar,
    /// Multiplier coordinates `(t₁, t₁t₂)` of the output.
    pub multipliers: [PadicScalar; 2],
    /// `(0, 1, t₁; ∞, η, t₁t₂)`; an error when `|η| > 1`.
    pub tuple: Result<SchottkyTuple>,
    /// The multiplier of `w` itself, which is what conjugation preserves.
    pub w_multiplier: Result<PadicScalar>,
}

/// Fixed points of `w` from `z² + ((d − a)/c)z − b/c = 0`.
pub fn fixed_points_of_w(w: &MoebiusMap, order: RootOrder) -> Result<(PadicScalar, PadicScalar)> {
    let (p1, p2) = w.fixed_points()?;
    let (ProjectivePoint::Finite(z1), ProjectivePoint::Finite(z2)) = (p1, p2) else {
        return Err(Error::InvalidTuple("w fixes ∞".into()));
    };
    Ok(match order {
        RootOrder::Canonical => (z1, z2),
        RootOrder::AttractingFirst => {
            let d1 = w.derivative_at_fixed(&ProjectivePoint::Finite(z1.clone()))?;
            if d1.norm() < AbsValue::Power(0) { (z1, z2) } else { (z2, z1) }
        }
    })
}

/// `σ(0, 1, t₁; ∞, −1, t₂) = (0, 1, t₁; ∞, η, t₁t₂)` following the displayed
/// formulas: fixed points of `w`, the map `β`, `η = β(0)`.
pub fn sigma_action_genus2(x: &SchottkyTuple, order: RootOrder) -> Result<SigmaAction> {
    let minus_one = PadicScalar::from_i64(x.field(), -1);
    if !x.y2().checked_sub(&minus_one)?.is_zero() {
        return Err(Error::InvalidTuple(format!("expected y₂ = −1, got {}", x.y2())));
    }
    let w = composite_w(x)?;
    let (z1, z2) = fixed_points_of_w(&w, order)?;
    let beta = beta_map(&z1, &z2)?;
    let eta = eta_of_roots(&z1, &z2)?;
    let t = x.t(1).checked_mul(x.t(2))?;
    let tuple = SchottkyTuple::genus2(x.t(1).clone(), eta.clone(), t.clone());
    let w_multiplier = w.multiplier();
    Ok(SigmaAction { w, z1, z2, beta, eta, multipliers: [x.t(1).clone(), t], tuple, w_multiplier })
}

/// Residuals of the fixed-point sum and product against two candidate
/// closed forms.
#[derive(Debug, Clone, Serialize)]
pub struct VietaCheck {
    /// `z₁z₂ + b/c` and `z₁ + z₂ + (d − a)/c`, both zero for roots of the fixed-point equation.
    pub exact: [Option<i64>; 2],
    /// `z₁z₂ − (1 − t₂)/(1 − t₁)` and `z₁ + z₂ − (t₁ + t₂)/(t₁ − 1)`.
    pub displayed: [Option<i64>; 2],
}

/// Valuations of the residuals (`None` means zero at working precision).
pub fn vieta_check(x: &SchottkyTuple, z1: &PadicScalar, z2: &PadicScalar) -> Result<VietaCheck> {
    let w = composite_w(x)?;
    let one = PadicScalar::one(x.field());
    let prod = z1.checked_mul(z2)?;
    let sum = z1.checked_add(z2)?;
    let e1 = prod.checked_add(&w.b.checked_div(&w.c)?)?;
    let e2 = sum.checked_add(&w.d.checked_sub(&w.a)?.checked_div(&w.c)?)?;
    let (t1, t2) = (x.t(1), x.t(2));
    let d1 = prod.checked_sub(&one.checked_sub(t2)?.checked_div(&one.checked_sub(t1)?)?)?;
    let d2 = sum.checked_sub(&t1.checked_add(t2)?.checked_div(&t1.checked_sub(&one)?)?)?;
    let v = |s: &PadicScalar| s.valuation();
    Ok(VietaCheck { exact: [v(&e1), v(&e2)], displayed: [v(&d1), v(&d2)] })
}

/// Solution set of `z₁z₂t₁ − t₂ = z₁z₂ − 1`, `(z₁ + z₂ − 1)t₁ − t₂ = z₁ + z₂`.
#[derive(Debug, Clone)]
pub enum TSolution {
    Unique { t1: PadicScalar, t2: PadicScalar },
    /// `(t₁, t₂) = base + s · direction`.
    Line { base: [PadicScalar; 2], direction: [PadicScalar; 2] },
}

impl TSolution {
    pub fn at(&self, s: &PadicScalar) -> Result<(PadicScalar, PadicScalar)> {
        match self {
            TSolution::Unique { t1, t2 } => Ok((t1.clone(), t2.clone())),
            TSolution::Line { base, direction } => Ok((
                base[0].checked_add(&s.checked_mul(&direction[0])?)?,
                base[1].checked_add(&s.checked_mul(&direction[1])?)?,
            )),
        }
    }
}

/// The line `((P − 1)/P, 0) + s(1/P, 1)` with `P = z₁z₂`.
pub fn t_line(z1: &PadicScalar, z2: &PadicScalar) -> Result<TSolution> {
    let one = PadicScalar::one(z1.field());
    let prod = z1.checked_mul(z2)?;
    let zero = PadicScalar::zero(z1.field());
    Ok(TSolution::Line {
        base: [prod.checked_sub(&one)?.checked_div(&prod)?, zero],
        direction: [one.checked_div(&prod)?, one],
    })
}

/// `z₁z₂ − (z₁ + z₂ − 1)`, zero exactly on the critical curve.
pub fn critical_residual(z1: &PadicScalar, z2: &PadicScalar) -> Result<PadicScalar> {
    let one = PadicScalar::one(z1.field());
    z1.checked_mul(z2)?.checked_sub(&z1.checked_add(z2)?.checked_sub(&one)?)
}

pub fn solve_t_from_roots(z1: &PadicScalar, z2: &PadicScalar) -> Result<TSolution> {
    let one = PadicScalar::one(z1.field());
    let prod = z1.checked_mul(z2)?;
    if prod.is_zero() {
        return Err(Error::InvalidInput("z₁z₂ = 0".into()));
    }
    let sum = z1.checked_add(z2)?;
    // subtracting the equations: (P − S + 1) t₁ = P − 1 − S
    let det = critical_residual(z1, z2)?;
    if det.is_zero() {
        return t_line(z1, z2);
    }
    let t1 = prod.checked_sub(&one)?.checked_sub(&sum)?.checked_div(&det)?;
    let t2 = prod.checked_mul(&t1)?.checked_sub(&prod.checked_sub(&one)?)?;
    Ok(TSolution::Unique { t1, t2 })
}
