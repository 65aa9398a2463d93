use serde::Serialize;

use super::genus2::{critical_residual, eta_of_roots, sigma_action_genus2, t_line, vieta_check, RootOrder, VietaCheck};
use super::tuple::SchottkyTuple;
use crate::error::{Error, Result};
use crate::padic::{solve_monic_quadratic, AbsValue, Field, FieldParams, NormBase, PadicScalar};

/// One member of the family: roots of `z² − εz + (1 + ε)` and the
/// multipliers on the line through them.
#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub epsilon: PadicScalar,
    pub s: PadicScalar,
    pub z1: PadicScalar,
    pub z2: PadicScalar,
    pub t1: PadicScalar,
    pub t2: PadicScalar,
    /// `η` computed from the family roots.
    pub eta: PadicScalar,
}

pub fn epsilon_family(epsilon: &PadicScalar, s: &PadicScalar) -> Result<FamilyPoint> {
    if !(epsilon.norm() < AbsValue::Power(0)) {
        return Err(Error::InvalidInput(format!("need |ε| < 1, got {}", epsilon.norm())));
    }
    let one = PadicScalar::one(epsilon.field());
    let (z1, z2) = solve_monic_quadratic(&-epsilon, &one.checked_add(epsilon)?)?;
    let (t1, t2) = t_line(&z1, &z2)?.at(s)?;
    let eta = eta_of_roots(&z1, &z2)?;
    Ok(FamilyPoint { epsilon: epsilon.clone(), s: s.clone(), z1, z2, t1, t2, eta })
}

/// Norm exponents of the quantities the family is judged by; `None` is `0`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub p: u64,
    pub f: usize,
    pub epsilon: String,
    pub s: String,
    pub status: String,
    pub z1: Option<String>,
    pub z2: Option<String>,
    pub abs_z1: Option<i64>,
    pub abs_z2: Option<i64>,
    pub abs_z1_minus_1: Option<i64>,
    pub abs_z2_minus_1: Option<i64>,
    pub abs_eta: Option<i64>,
    pub critical_residual: Option<i64>,
    /// `(z₁ + z₂ − 1)t₁ − t₂ − (z₁ + z₂)`: the second linear equation on the line.
    pub second_equation_residual: Option<i64>,
    pub abs_t1: Option<i64>,
    pub abs_t2: Option<i64>,
    /// `|η|` from the fixed points of `w` built from `(t₁, −1, t₂)`.
    pub pipeline_abs_eta: Option<i64>,
    pub pipeline_error: Option<String>,
    pub vieta: Option<VietaCheck>,
    pub eta_in_punctured_disk: Option<bool>,
}

fn exp(x: &PadicScalar) -> Option<i64> {
    x.norm().exponent()
}

/// `None` exponents mean the quantity vanished; norms are `base^exponent`.
fn row(field: &Field, eps: i64, s: i64, order: RootOrder) -> Result<FamilyRow> {
    let e = PadicScalar::from_i64(field, eps);
    let sv = PadicScalar::from_i64(field, s);
    let mut r = FamilyRow {
        p: field.p(),
        f: field.degree(),
        epsilon: eps.to_string(),
        s: s.to_string(),
        status: "ok".into(),
        z1: None,
        z2: None,
        abs_z1: None,
        abs_z2: None,
        abs_z1_minus_1: None,
        abs_z2_minus_1: None,
        abs_eta: None,
        critical_residual: None,
        second_equation_residual: None,
        abs_t1: None,
        abs_t2: None,
        pipeline_abs_eta: None,
        pipeline_error: None,
        vieta: None,
        eta_in_punctured_disk: None,
    };
    let pt = match epsilon_family(&e, &sv) {
        Ok(pt) => pt,
        Err(Error::NoRoot(msg)) => {
            r.status = format!("no_root: {msg}");
            return Ok(r);
        }
        Err(err) => return Err(err),
    };
    let one = PadicScalar::one(field);
    r.z1 = Some(pt.z1.to_string());
    r.z2 = Some(pt.z2.to_string());
    r.abs_z1 = exp(&pt.z1);
    r.abs_z2 = exp(&pt.z2);
    r.abs_z1_minus_1 = exp(&pt.z1.checked_sub(&one)?);
    r.abs_z2_minus_1 = exp(&pt.z2.checked_sub(&one)?);
    r.abs_eta = exp(&pt.eta);
    r.eta_in_punctured_disk = Some(!pt.eta.is_zero() && pt.eta.norm() < AbsValue::Power(0));
    r.critical_residual = exp(&critical_residual(&pt.z1, &pt.z2)?);
    let sum = pt.z1.checked_add(&pt.z2)?;
    let second = sum.checked_sub(&one)?.checked_mul(&pt.t1)?.checked_sub(&pt.t2)?.checked_sub(&sum)?;
    r.second_equation_residual = exp(&second);
    r.abs_t1 = exp(&pt.t1);
    r.abs_t2 = exp(&pt.t2);
    let tuple = SchottkyTuple::genus2(pt.t1.clone(), -&one, pt.t2.clone());
    match tuple.and_then(|x| sigma_action_genus2(&x, order).map(|a| (x, a))) {
        Ok((x, a)) => {
            r.pipeline_abs_eta = exp(&a.eta);
            r.vieta = Some(vieta_check(&x, &a.z1, &a.z2)?);
        }
        Err(err) => r.pipeline_error = Some(err.to_string()),
    }
    Ok(r)
}

pub const CONJUGATE_STATUS: &str = "conjugate_roots";

/// Row for an irreducible quadratic: the roots are Galois conjugate, so
/// `|z₁| = |z₂| = |1 + ε|^{1/2}`, `|η| = 1` and the residual `P − S + 1`
/// comes from the coefficients. `|zᵢ − 1|` and the multipliers need the
/// roots and stay empty.
fn conjugate_row(field: &Field, eps: i64, s: i64) -> Result<FamilyRow> {
    let e = PadicScalar::from_i64(field, eps);
    let one = PadicScalar::one(field);
    let product = one.checked_add(&e)?;
    let half = exp(&product).filter(|x| x % 2 == 0).map(|x| x / 2);
    Ok(FamilyRow {
        p: field.p(),
        f: field.degree(),
        epsilon: eps.to_string(),
        s: s.to_string(),
        status: CONJUGATE_STATUS.into(),
        z1: None,
        z2: None,
        abs_z1: half,
        abs_z2: half,
        abs_z1_minus_1: None,
        abs_z2_minus_1: None,
        abs_eta: Some(0),
        critical_residual: exp(&product.checked_sub(&e)?.checked_add(&one)?),
        second_equation_residual: None,
        abs_t1: None,
        abs_t2: None,
        pipeline_abs_eta: None,
        pipeline_error: None,
        vieta: None,
        eta_in_punctured_disk: Some(false),
    })
}

/// Family rows for `ε = 0, p, 2p, …` (`points` values).
pub fn epsilon_report(
    p: u64,
    f: usize,
    precision: u32,
    norm_base: Option<NormBase>,
    points: usize,
    s: Option<i64>,
    order: RootOrder,
) -> Result<Vec<FamilyRow>> {
    let eps: Vec<i64> = (0..points as i64).map(|j| j * p as i64).collect();
    epsilon_rows(p, f, precision, norm_base, &eps, s, order)
}

/// Family rows for the given integers `ε`, retrying in the unramified
/// extension of twice the degree when the roots are not in `K`.
pub fn epsilon_rows(
    p: u64,
    f: usize,
    precision: u32,
    norm_base: Option<NormBase>,
    epsilons: &[i64],
    s: Option<i64>,
    order: RootOrder,
) -> Result<Vec<FamilyRow>> {
    let field = FieldParams::new(p, f, None, norm_base, precision)?;
    let wide = FieldParams::new(p, 2 * f, None, norm_base, precision)?;
    let s = s.unwrap_or(p as i64);
    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mut r = row(&field, eps, s, order)?;
        if r.status.starts_with("no_root") {
            let mut w = row(&wide, eps, s, order)?;
            if w.status.starts_with("no_root") {
                w = conjugate_row(&field, eps, s)?;
            }
            r = w;
        }
        rows.push(r);
    }
    Ok(rows)
}

pub const FAMILY_CSV_HEADER: &str = "p,f,epsilon,s,status,abs_z1,abs_z2,abs_z1_minus_1,abs_z2_minus_1,abs_eta,critical_residual,second_equation_residual,abs_t1,abs_t2,pipeline_abs_eta,eta_in_punctured_disk";

fn cell(e: Option<i64>) -> String {
    e.map_or_else(|| "zero".to_string(), |e| e.to_string())
}

/// CSV with norm exponents (`base^e`); `zero` marks a vanishing quantity.
pub fn family_csv(rows: &[FamilyRow]) -> String {
    let mut out = String::from(FAMILY_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ok = r.status == "ok";
        let conjugate = r.status == CONJUGATE_STATUS;
        let c = |e: Option<i64>| match (ok, conjugate) {
            (true, _) => cell(e),
            (_, true) => e.map_or_else(String::new, |e| e.to_string()),
            _ => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.p,
            r.f,
            r.epsilon,
            r.s,
            r.status.replace(',', ";"),
            c(r.abs_z1),
            c(r.abs_z2),
            c(r.abs_z1_minus_1),
            c(r.abs_z2_minus_1),
            c(r.abs_eta),
            c(r.critical_residual),
            c(r.second_equation_residual),
            c(r.abs_t1),
            c(r.abs_t2),
            if ok && r.pipeline_error.is_none() { cell(r.pipeline_abs_eta) } else { String::new() },
            r.eta_in_punctured_disk.map_or(String::new(), |b| b.to_string()),
        ));
    }
    out
}
