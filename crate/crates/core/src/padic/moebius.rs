use std::cmp::Ordering;
use std::fmt;

use super::params::Field;
use super::scalar::{AbsValue, PadicScalar};
use crate::error::{Error, Result};

/// Point of `P^1(K)`; infinity is tagged, never encoded as a scalar.
#[derive(Clone, Debug)]
pub enum ProjectivePoint {
    Finite(PadicScalar),
    Infinity,
}

impl ProjectivePoint {
    pub fn from_i64(field: &Field, n: i64) -> Self {
        ProjectivePoint::Finite(PadicScalar::from_i64(field, n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&PadicScalar> {
        match self {
            ProjectivePoint::Finite(z) => Some(z),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => true,
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a.approx_eq(b),
            _ => false,
        }
    }

    /// Canonical ordering: finite points by digits, infinity last.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => Ordering::Equal,
            (ProjectivePoint::Infinity, _) => Ordering::Greater,
            (_, ProjectivePoint::Infinity) => Ordering::Less,
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a.canonical_cmp(b),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(z) => write!(f, "{z}"),
            ProjectivePoint::Infinity => write!(f, "∞"),
        }
    }
}

/// `z ↦ (az + b)/(cz + d)`, defined up to a scalar.
#[derive(Clone, Debug)]
pub struct MoebiusMap {
    pub a: PadicScalar,
    pub b: PadicScalar,
    pub c: PadicScalar,
    pub d: PadicScalar,
}

/// Fixed-point data of a hyperbolic map.
#[derive(Clone, Debug)]
pub struct HyperbolicData {
    pub attracting: ProjectivePoint,
    pub repelling: ProjectivePoint,
    /// Multiplier, `|t| < 1`.
    pub multiplier: PadicScalar,
}

/// Divides `num / den`, sending a vanishing denominator to infinity only when
/// the quotient is beyond the working precision.
fn projective_quotient(num: &PadicScalar, den: &PadicScalar) -> Result<ProjectivePoint> {
    if !den.is_zero() {
        return Ok(ProjectivePoint::Finite(num.checked_div(den)?));
    }
    let Some(vn) = num.valuation() else {
        return Err(Error::PrecisionExhausted("0/0 in projective evaluation".into()));
    };
    match den.abs_precision() {
        None => Ok(ProjectivePoint::Infinity),
        Some(a) if a >= vn + num.field().precision() as i64 => Ok(ProjectivePoint::Infinity),
        Some(a) => Err(Error::PrecisionExhausted(format!(
            "denominator only known modulo p^{a} near the pole"
        ))),
    }
}

impl MoebiusMap {
    pub fn new(a: PadicScalar, b: PadicScalar, c: PadicScalar, d: PadicScalar) -> Result<Self> {
        let m = MoebiusMap { a, b, c, d };
        for x in [&m.b, &m.c, &m.d] {
            if x.field() != m.a.field() {
                return Err(Error::ParamsMismatch);
            }
        }
        if m.det()?.is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn from_i64(field: &Field, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let s = |n| PadicScalar::from_i64(field, n);
        Self::new(s(a), s(b), s(c), s(d))
    }

    pub fn identity(field: &Field) -> Self {
        Self::from_i64(field, 1, 0, 0, 1).expect("identity is invertible")
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn det(&self) -> Result<PadicScalar> {
        self.a.checked_mul(&self.d)?.checked_sub(&self.b.checked_mul(&self.c)?)
    }

    pub fn trace(&self) -> Result<PadicScalar> {
        self.a.checked_add(&self.d)
    }

    /// Projective evaluation; `∞ ↦ a/c`, the pole `−d/c ↦ ∞`.
    pub fn apply(&self, z: &ProjectivePoint) -> Result<ProjectivePoint> {
        match z {
            ProjectivePoint::Infinity => projective_quotient(&self.a, &self.c),
            ProjectivePoint::Finite(z) => {
                let num = self.a.checked_mul(z)?.checked_add(&self.b)?;
                let den = self.c.checked_mul(z)?.checked_add(&self.d)?;
                projective_quotient(&num, &den)
            }
        }
    }

    pub fn apply_scalar(&self, z: &PadicScalar) -> Result<ProjectivePoint> {
        self.apply(&ProjectivePoint::Finite(z.clone()))
    }

    /// Matrix product `self · other`, i.e. the map `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = |x: &PadicScalar, y: &PadicScalar| x.checked_mul(y);
        Self::new(
            m(&self.a, &other.a)?.checked_add(&m(&self.b, &other.c)?)?,
            m(&self.a, &other.b)?.checked_add(&m(&self.b, &other.d)?)?,
            m(&self.c, &other.a)?.checked_add(&m(&self.d, &other.c)?)?,
            m(&self.c, &other.b)?.checked_add(&m(&self.d, &other.d)?)?,
        )
    }

    /// Adjugate matrix, which represents the inverse map.
    pub fn inverse(&self) -> Self {
        MoebiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.field());
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base)?;
        }
        Ok(out)
    }

    /// Same map with every entry scaled by `s`.
    pub fn scaled(&self, s: &PadicScalar) -> Result<Self> {
        Self::new(
            self.a.checked_mul(s)?,
            self.b.checked_mul(s)?,
            self.c.checked_mul(s)?,
            self.d.checked_mul(s)?,
        )
    }

    /// Both fixed points, canonically ordered. For `c ≠ 0` these are the
    /// roots of `z² + ((d − a)/c) z − b/c`; for `c = 0` they are `∞` and
    /// `b/(d − a)`. `Parabolic` on a double root, `NoRoot` when the roots lie
    /// in a quadratic extension.
    pub fn fixed_points(&self) -> Result<(ProjectivePoint, ProjectivePoint)> {
        if self.c.is_zero() {
            let dm = self.d.checked_sub(&self.a)?;
            if dm.is_zero() {
                return Err(Error::Parabolic);
            }
            let z = self.b.checked_div(&dm)?;
            return Ok((ProjectivePoint::Finite(z), ProjectivePoint::Infinity));
        }
        let bq = self.d.checked_sub(&self.a)?.checked_div(&self.c)?;
        let cq = (-&self.b).checked_div(&self.c)?;
        let (z1, z2) = solve_monic_quadratic(&bq, &cq)?;
        Ok((ProjectivePoint::Finite(z1), ProjectivePoint::Finite(z2)))
    }

    /// Multiplier `|(cz + d)^{-2} det|` at a finite fixed point, `d/a` at infinity.
    pub fn derivative_at_fixed(&self, z: &ProjectivePoint) -> Result<PadicScalar> {
        match z {
            ProjectivePoint::Infinity => self.d.checked_div(&self.a),
            ProjectivePoint::Finite(z) => {
                let den = self.c.checked_mul(z)?.checked_add(&self.d)?;
                self.det()?.checked_div(&den.checked_mul(&den)?)
            }
        }
    }

    /// Ratio of eigenvalues with `|t| < 1`.
    pub fn multiplier(&self) -> Result<PadicScalar> {
        let tr = self.trace()?;
        let det = self.det()?;
        let disc = tr.checked_mul(&tr)?.checked_sub(&det.checked_mul(&PadicScalar::from_i64(self.field(), 4))?)?;
        if disc.is_zero() {
            return Err(Error::Parabolic);
        }
        let s = match disc.sqrt() {
            Ok(s) => s,
            Err(Error::NoRoot(_)) => {
                return Err(Error::NotHyperbolic("eigenvalues are conjugate over a quadratic extension".into()))
            }
            Err(e) => return Err(e),
        };
        let t = tr.checked_sub(&s)?.checked_div(&tr.checked_add(&s)?)?;
        match t.norm().cmp(&AbsValue::Power(0)) {
            Ordering::Less => Ok(t),
            Ordering::Greater => t.inv(),
            Ordering::Equal => Err(Error::NotHyperbolic(format!("|t| = 1 for t = {t}"))),
        }
    }

    /// Attracting and repelling fixed points together with the multiplier.
    pub fn hyperbolic_data(&self) -> Result<HyperbolicData> {
        let t = self.multiplier()?;
        let (z1, z2) = self.fixed_points()?;
        let d1 = self.derivative_at_fixed(&z1)?;
        let (attracting, repelling) =
            if d1.norm() < AbsValue::Power(0) { (z1, z2) } else { (z2, z1) };
        Ok(HyperbolicData { attracting, repelling, multiplier: t })
    }

    /// Hyperbolic map with attracting point `a`, repelling point `b` and
    /// multiplier `t`: `[[a − tb, (t − 1)ab], [1 − t, ta − b]]`, with the
    /// limits `[[1, (t − 1)b], [0, t]]` for `a = ∞` and `[[t, (1 − t)a], [0, 1]]`
    /// for `b = ∞`.
    pub fn hyperbolic(a: &ProjectivePoint, b: &ProjectivePoint, t: &PadicScalar) -> Result<Self> {
        let field = t.field();
        let one = PadicScalar::one(field);
        let t1 = t.checked_sub(&one)?;
        match (a, b) {
            (ProjectivePoint::Infinity, ProjectivePoint::Finite(b)) => {
                Self::new(one.clone(), t1.checked_mul(b)?, PadicScalar::zero(field), t.clone())
            }
            (ProjectivePoint::Finite(a), ProjectivePoint::Infinity) => {
                Self::new(t.clone(), (-&t1).checked_mul(a)?, PadicScalar::zero(field), one)
            }
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => Self::new(
                a.checked_sub(&t.checked_mul(b)?)?,
                t1.checked_mul(a)?.checked_mul(b)?,
                (-&t1).clone(),
                t.checked_mul(a)?.checked_sub(b)?,
            ),
            _ => Err(Error::DegenerateMap),
        }
    }

    /// The map sending `(x, y, z)` to `(0, 1, ∞)`.
    pub fn normalizing(x: &ProjectivePoint, y: &ProjectivePoint, z: &ProjectivePoint) -> Result<Self> {
        use ProjectivePoint::{Finite, Infinity};
        let field = [x, y, z]
            .iter()
            .find_map(|p| p.finite().map(|s| s.field().clone()))
            .ok_or(Error::DegenerateMap)?;
        let one = PadicScalar::one(&field);
        let zero = PadicScalar::zero(&field);
        match (x, y, z) {
            (Finite(a), Finite(b), Finite(c)) => {
                let bc = b.checked_sub(c)?;
                let ba = b.checked_sub(a)?;
                Self::new(bc.clone(), (-a).checked_mul(&bc)?, ba.clone(), (-c).checked_mul(&ba)?)
            }
            (Finite(a), Finite(b), Infinity) => Self::new(one, -a, zero, b.checked_sub(a)?),
            (Infinity, Finite(b), Finite(c)) => Self::new(zero, b.checked_sub(c)?, one, -c),
            (Finite(a), Infinity, Finite(c)) => Self::new(one.clone(), -a, one, -c),
            _ => Err(Error::DegenerateMap),
        }
    }

    /// Entrywise equality up to a common scalar factor.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        let lhs = [&self.a, &self.b, &self.c, &self.d];
        let rhs = [&other.a, &other.b, &other.c, &other.d];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (Ok(x), Ok(y)) = (lhs[i].checked_mul(rhs[j]), lhs[j].checked_mul(rhs[i])) else {
                    return false;
                };
                if !x.approx_eq(&y) {
                    return false;
                }
            }
        }
        true
    }
}

/// Roots of `z² + bz + c` in `K`, canonically ordered.
pub fn solve_monic_quadratic(b: &PadicScalar, c: &PadicScalar) -> Result<(PadicScalar, PadicScalar)> {
    let field = b.field();
    let four = PadicScalar::from_i64(field, 4);
    let disc = b.checked_mul(b)?.checked_sub(&four.checked_mul(c)?)?;
    if disc.is_zero() {
        return Err(Error::Parabolic);
    }
    let s = disc.sqrt()?;
    let two = PadicScalar::from_i64(field, 2);
    let z1 = (-b).checked_add(&s)?.checked_div(&two)?;
    let z2 = (-b).checked_sub(&s)?.checked_div(&two)?;
    Ok(if z2.canonical_cmp(&z1) == Ordering::Less { (z2, z1) } else { (z1, z2) })
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
