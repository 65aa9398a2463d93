use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::genus2::{beta_map, fixed_points_of_w, composite_w, RootOrder};
use super::tuple::{max_norm, SchottkyTuple, TupleRecord};
use crate::error::{Error, Result};
use crate::graphs::{automorphisms, classify_spectrum, format_word, Decision, GeometricBasis, GraphAutomorphism, Multigraph};
use crate::padic::{AbsValue, Field, MoebiusMap, PadicScalar, ProjectivePoint};
use crate::spectral::{spectrum_in_lattice, LatticeDecision};

/// Which three fixed points of the image generators `(v₁, v₂)` are sent to
/// `(0, 1, ∞)`; the fourth becomes the free coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Renormalization {
    /// attracting(v₁) → 0, repelling(v₁) → 1, attracting(v₂) → ∞.
    #[default]
    Standard,
    /// repelling(v₁) → 0, attracting(v₁) → 1, attracting(v₂) → ∞.
    SwapFirst,
    /// attracting(v₁) → 0, repelling(v₁) → 1, repelling(v₂) → ∞.
    SecondRepelling,
    /// attracting(v₂) → 0, repelling(v₁) → 1, repelling(v₂) → ∞, as in the map `β`.
    Beta,
}

/// Tuples `(t₁, y₂, t₂)` with `tᵢ = d·p^k`, `k ∈ exponents`, `d` a nonzero residue code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub exponents: Vec<i64>,
    /// `None` means every nonzero residue code.
    pub digits: Option<Vec<u64>>,
    pub y2: Vec<i64>,
    pub renormalization: Renormalization,
    pub root_order: RootOrder,
    pub rho: i64,
    pub lambda: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            exponents: vec![1, 2],
            digits: None,
            y2: vec![-1],
            renormalization: Renormalization::Standard,
            root_order: RootOrder::AttractingFirst,
            rho: 1,
            lambda: 1.0,
        }
    }
}

impl GridSpec {
    fn multipliers(&self, field: &Field) -> Vec<PadicScalar> {
        let digits: Vec<u64> = self.digits.clone().unwrap_or_else(|| (1..field.q()).collect());
        let mut out = Vec::new();
        for &k in &self.exponents {
            for &d in &digits {
                out.push(PadicScalar::from_digits(field, k, &[d]));
            }
        }
        out
    }

    /// Grid points in lexicographic index order `(t₁, y₂, t₂)`.
    pub fn points(&self, field: &Field) -> Vec<(PadicScalar, PadicScalar, PadicScalar)> {
        let ts = self.multipliers(field);
        let mut out = Vec::new();
        for t1 in &ts {
            for &y in &self.y2 {
                for t2 in &ts {
                    out.push((t1.clone(), PadicScalar::from_i64(field, y), t2.clone()));
                }
            }
        }
        out
    }
}

/// `(λ_id, λ_σ)` with `λ_τ = ‖p^ρ τx‖ = base^{e_τ − ρ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenPair {
    pub exponent_id: Option<i64>,
    pub exponent_sigma: Option<i64>,
    pub lambda_id: f64,
    pub lambda_sigma: f64,
}

fn shell(norm: AbsValue, rho: i64, base: u64) -> (Option<i64>, f64) {
    match norm {
        AbsValue::Zero => (None, 0.0),
        AbsValue::Power(e) => (Some(e - rho), AbsValue::Power(e - rho).to_f64(base)),
    }
}

pub fn compare_eigenvalues(x_norm: AbsValue, sigma_x_norm: AbsValue, rho: i64, base: u64) -> EigenPair {
    let (exponent_id, lambda_id) = shell(x_norm, rho, base);
    let (exponent_sigma, lambda_sigma) = shell(sigma_x_norm, rho, base);
    EigenPair { exponent_id, exponent_sigma, lambda_id, lambda_sigma }
}

/// Image of a tuple under an automorphism given by the image words of the generators.
#[derive(Debug, Clone)]
pub struct ImageTuple {
    pub multipliers: Vec<PadicScalar>,
    pub free: PadicScalar,
}

impl ImageTuple {
    pub fn coordinates(&self) -> Vec<PadicScalar> {
        vec![self.multipliers[0].clone(), self.free.clone(), self.multipliers[1].clone()]
    }

    pub fn norm(&self) -> AbsValue {
        max_norm(&self.coordinates())
    }
}

/// `σx` for a genus-two tuple: evaluate the words on the generators, read off
/// fixed points and multipliers, and bring the result back to normal form.
pub fn act_genus2(x: &SchottkyTuple, words: &[Vec<i32>], renorm: Renormalization) -> Result<ImageTuple> {
    if x.genus() != 2 || words.len() != 2 {
        return Err(Error::InvalidTuple("genus-2 tuple and two words expected".into()));
    }
    let gens = x.generators()?;
    let d1 = gens.word(&words[0])?.hyperbolic_data()?;
    let d2 = gens.word(&words[1])?.hyperbolic_data()?;
    let (zero, one, inf, free) = match renorm {
        Renormalization::Standard => (&d1.attracting, &d1.repelling, &d2.attracting, &d2.repelling),
        Renormalization::SwapFirst => (&d1.repelling, &d1.attracting, &d2.attracting, &d2.repelling),
        Renormalization::SecondRepelling => (&d1.attracting, &d1.repelling, &d2.repelling, &d2.attracting),
        Renormalization::Beta => (&d2.attracting, &d1.repelling, &d2.repelling, &d1.attracting),
    };
    let n = MoebiusMap::normalizing(zero, one, inf)?;
    let free = match n.apply(free)? {
        ProjectivePoint::Finite(z) => z,
        ProjectivePoint::Infinity => return Err(Error::InvalidTuple("free coordinate at ∞".into())),
    };
    Ok(ImageTuple { multipliers: vec![d1.multiplier, d2.multiplier], free })
}

/// One evaluation of `‖σx‖` against `‖x‖`.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRow {
    pub grid_index: usize,
    pub sigma_index: usize,
    pub words: Vec<String>,
    pub x: TupleRecord,
    /// Norm exponents of the image coordinates `(t₁', y', t₂')`; `x_norm` is
    /// the norm of `x` itself brought to the same normal form.
    pub sigma_x: Option<Vec<Option<i64>>>,
    pub x_norm: Option<i64>,
    pub sigma_x_norm: Option<i64>,
    /// `|free coordinate|`, which is `|η|` for the `β` normalization.
    pub eta: Option<i64>,
    pub decreasing: bool,
    pub eigen: Option<EigenPair>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub grid_index: usize,
    pub sigma_index: usize,
    pub x: TupleRecord,
    pub eigen: EigenPair,
    /// Mean of `λ_τ − λ` over the automorphisms evaluated for this `x`.
    pub averaged_eigenvalue: f64,
    pub lattice: LatticeDecision,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Witness),
    NotFound { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub f: usize,
    pub genus: usize,
    pub decision: Decision,
    pub method: String,
    pub grid: GridSpec,
    pub grid_points: usize,
    pub automorphisms: usize,
    pub evaluated: usize,
    pub failures: usize,
    pub decreasing: usize,
    pub outcome: SearchOutcome,
    pub rows: Vec<SearchRow>,
}

fn image_words(g: &Multigraph, basis: &GeometricBasis, sigma: &GraphAutomorphism) -> Vec<Vec<i32>> {
    (0..basis.rank()).map(|i| basis.image(g, sigma, i)).collect()
}

fn mean_eigenvalue(lambdas: &[f64], lambda: f64) -> f64 {
    lambdas.iter().map(|l| l - lambda).sum::<f64>() / lambdas.len() as f64
}

/// Looks for `x` with `‖σx‖ < ‖x‖`. Genus two acts on the whole grid with
/// every automorphism; higher genus evaluates the mouth-local quantity
/// `|β(ξ)|` when the graph has a qualifying mouth corner.
pub fn search_norm_decreasing(g: &Multigraph, tree: &[usize], field: &Field, grid: &GridSpec) -> Result<SearchReport> {
    let class = classify_spectrum(g, tree)?;
    if class.genus == 2 {
        search_genus2(g, &class.spanning_tree, class.decision, field, grid)
    } else {
        search_mouth_local(&class, field, grid)
    }
}

fn search_genus2(g: &Multigraph, tree: &[usize], decision: Decision, field: &Field, grid: &GridSpec) -> Result<SearchReport> {
    let basis = GeometricBasis::new(g, tree, 0)?;
    let auts = automorphisms(g, false)?;
    let words: Vec<Vec<Vec<i32>>> = auts.iter().map(|s| image_words(g, &basis, s)).collect();
    let points = grid.points(field);
    let base = field.base();
    let rows: Vec<Vec<SearchRow>> = points
        .par_iter()
        .enumerate()
        .map(|(gi, (t1, y2, t2))| {
            let x = match SchottkyTuple::genus2(t1.clone(), y2.clone(), t2.clone()) {
                Ok(x) => x,
                Err(e) => {
                    return vec![SearchRow {
                        grid_index: gi,
                        sigma_index: 0,
                        words: Vec::new(),
                        x: TupleRecord {
                            coordinates: vec![t1.to_string(), y2.to_string(), t2.to_string()],
                            norm_exponents: vec![],
                            norm_exponent: None,
                        },
                        sigma_x: None,
                        x_norm: None,
                        sigma_x_norm: None,
                        eta: None,
                        decreasing: false,
                        eigen: None,
                        error: Some(e.to_string()),
                    }]
                }
            };
            // ‖x‖ in the same chart: the identity image under the chosen normalization
            let identity = [vec![1], vec![2]];
            let xn = match act_genus2(&x, &identity, grid.renormalization) {
                Ok(img) => img.norm(),
                Err(_) => x.norm(),
            };
            words
                .iter()
                .enumerate()
                .map(|(si, w)| {
                    let mut row = SearchRow {
                        grid_index: gi,
                        sigma_index: si,
                        words: w.iter().map(|w| format_word(w)).collect(),
                        x: TupleRecord::from(&x),
                        sigma_x: None,
                        x_norm: xn.exponent(),
                        sigma_x_norm: None,
                        eta: None,
                        decreasing: false,
                        eigen: None,
                        error: None,
                    };
                    match act_genus2(&x, w, grid.renormalization) {
                        Ok(img) => {
                            let sn = img.norm();
                            row.sigma_x = Some(img.coordinates().iter().map(|c| c.norm().exponent()).collect());
                            row.sigma_x_norm = sn.exponent();
                            row.eta = img.free.norm().exponent();
                            row.decreasing = sn < xn;
                            row.eigen = Some(compare_eigenvalues(xn, sn, grid.rho, base));
                        }
                        Err(e) => row.error = Some(e.to_string()),
                    }
                    row
                })
                .collect()
        })
        .collect();
    let rows: Vec<SearchRow> = rows.into_iter().flatten().collect();
    let failures = rows.iter().filter(|r| r.error.is_some()).count();
    let decreasing = rows.iter().filter(|r| r.decreasing).count();
    let outcome = match rows.iter().find(|r| r.decreasing) {
        None => SearchOutcome::NotFound {
            reason: format!("no (x, σ) on the grid with ‖σx‖ < ‖x‖ ({failures} evaluations failed)"),
        },
        Some(r) => {
            let same: Vec<&SearchRow> = rows.iter().filter(|s| s.grid_index == r.grid_index).collect();
            let lambdas: Vec<f64> = same.iter().filter_map(|s| s.eigen.map(|e| e.lambda_sigma)).collect();
            let averaged_eigenvalue = mean_eigenvalue(&lambdas, grid.lambda);
            let lattice = spectrum_in_lattice(&[averaged_eigenvalue], grid.lambda, base as f64);
            SearchOutcome::Found(Witness {
                grid_index: r.grid_index,
                sigma_index: r.sigma_index,
                x: r.x.clone(),
                eigen: r.eigen.expect("decreasing rows carry eigenvalues"),
                averaged_eigenvalue,
                lattice,
            })
        }
    };
    Ok(SearchReport {
        p: field.p(),
        f: field.degree(),
        genus: 2,
        decision,
        method: "genus2_word_action".into(),
        grid: grid.clone(),
        grid_points: points.len(),
        automorphisms: auts.len(),
        evaluated: rows.len(),
        failures,
        decreasing,
        outcome,
        rows,
    })
}

/// A point `ξ ∉ {0, 1}` with `|ξ − z₁| = |ξ − z₂|`, taken from small integers.
fn equidistant_point(z1: &PadicScalar, z2: &PadicScalar) -> Result<Option<PadicScalar>> {
    let field = z1.field();
    let limit = 2 + (field.p() * field.p()) as i64;
    for k in 2..limit {
        let xi = PadicScalar::from_i64(field, k);
        if xi.checked_sub(z1)?.norm() == xi.checked_sub(z2)?.norm() {
            return Ok(Some(xi));
        }
    }
    Ok(None)
}

fn search_mouth_local(class: &crate::graphs::Classification, field: &Field, grid: &GridSpec) -> Result<SearchReport> {
    let base = field.base();
    let mut report = SearchReport {
        p: field.p(),
        f: field.degree(),
        genus: class.genus,
        decision: class.decision,
        method: "mouth_local".into(),
        grid: grid.clone(),
        grid_points: 0,
        automorphisms: 0,
        evaluated: 0,
        failures: 0,
        decreasing: 0,
        outcome: SearchOutcome::NotFound { reason: String::new() },
        rows: Vec::new(),
    };
    if class.witness.is_none() {
        report.outcome = SearchOutcome::NotFound {
            reason: "no mouth corner is a tip of T with deg_G − deg_T ≤ 2, so the construction does not apply".into(),
        };
        return Ok(report);
    }
    let minus_one = PadicScalar::from_i64(field, -1);
    let points: Vec<_> = grid.points(field).into_iter().filter(|(_, y, _)| y.checked_sub(&minus_one).is_ok_and(|d| d.is_zero())).collect();
    report.grid_points = points.len();
    let rows: Vec<SearchRow> = points
        .par_iter()
        .enumerate()
        .map(|(gi, (t1, y2, t2))| {
            let mut row = SearchRow {
                grid_index: gi,
                sigma_index: 1,
                words: Vec::new(),
                x: TupleRecord { coordinates: vec![t1.to_string(), y2.to_string(), t2.to_string()], norm_exponents: vec![], norm_exponent: None },
                sigma_x: None,
                x_norm: Some(0),
                sigma_x_norm: None,
                eta: None,
                decreasing: false,
                eigen: None,
                error: None,
            };
            let mut eval = || -> Result<(AbsValue, AbsValue)> {
                let x = SchottkyTuple::genus2(t1.clone(), y2.clone(), t2.clone())?;
                row.x = TupleRecord::from(&x);
                let (z1, z2) = fixed_points_of_w(&composite_w(&x)?, grid.root_order)?;
                let one = PadicScalar::one(field);
                let formula = z1
                    .checked_div(&z2)?
                    .checked_mul(&one.checked_sub(&z2)?.checked_div(&one.checked_sub(&z1)?)?)?
                    .norm();
                let xi = equidistant_point(&z1, &z2)?
                    .ok_or_else(|| Error::InvalidTuple("no small integer equidistant from z₁ and z₂".into()))?;
                let direct = match beta_map(&z1, &z2)?.apply_scalar(&xi)? {
                    ProjectivePoint::Finite(b) => b.norm(),
                    ProjectivePoint::Infinity => AbsValue::Power(i64::MAX),
                };
                Ok((formula, direct))
            };
            match eval() {
                Ok((formula, direct)) => {
                    row.eta = formula.exponent();
                    row.sigma_x = Some(vec![formula.exponent(), direct.exponent()]);
                    row.sigma_x_norm = formula.exponent();
                    row.decreasing = formula < AbsValue::Power(0) && formula == direct;
                    row.eigen = Some(compare_eigenvalues(AbsValue::Power(0), formula, grid.rho, base));
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();
    report.evaluated = rows.len();
    report.failures = rows.iter().filter(|r| r.error.is_some()).count();
    report.decreasing = rows.iter().filter(|r| r.decreasing).count();
    report.outcome = match rows.iter().find(|r| r.decreasing) {
        None => SearchOutcome::NotFound {
            reason: format!("|β(ξ)| ≥ 1 at every grid point ({} evaluations failed)", report.failures),
        },
        Some(r) => {
            let e = r.eigen.expect("decreasing rows carry eigenvalues");
            let averaged_eigenvalue = mean_eigenvalue(&[e.lambda_id, e.lambda_sigma], grid.lambda);
            SearchOutcome::Found(Witness {
                grid_index: r.grid_index,
                sigma_index: r.sigma_index,
                x: r.x.clone(),
                eigen: e,
                averaged_eigenvalue,
                lattice: spectrum_in_lattice(&[averaged_eigenvalue], grid.lambda, base as f64),
            })
        }
    };
    report.rows = rows;
    Ok(report)
}

pub const SEARCH_CSV_HEADER: &str =
    "p,f,grid_index,sigma_index,words,x_norm,sigma_x_norm,eta,decreasing,lambda_id,lambda_sigma,error";

/// CSV of a search report; norms are exponents of the norm base.
pub fn search_csv(r: &SearchReport) -> String {
    let e = |x: Option<i64>| x.map_or_else(|| "zero".to_string(), |v| v.to_string());
    let mut out = String::from(SEARCH_CSV_HEADER);
    out.push('\n');
    for row in &r.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.p,
            r.f,
            row.grid_index,
            row.sigma_index,
            row.words.join(";"),
            e(row.x_norm),
            if row.error.is_some() { String::new() } else { e(row.sigma_x_norm) },
            if row.error.is_some() { String::new() } else { e(row.eta) },
            row.decreasing,
            row.eigen.map_or(String::new(), |p| format!("{:e}", p.lambda_id)),
            row.eigen.map_or(String::new(), |p| format!("{:e}", p.lambda_sigma)),
            row.error.as_deref().unwrap_or("").replace(',', ";"),
        ));
    }
    out
}
