use serde::Serialize;

use super::search::{SearchOutcome, SearchReport};
use super::tuple::TupleRecord;
use crate::graphs::Decision;
use crate::spectral::{spectrum_in_lattice, LatticeDecision, RadialSymbol};

/// One automorphism at the chosen point: `‖σx‖ = b^e` puts the wavelet
/// eigenvalue of `J_σ` on the shell `m = e + ρ`, i.e. `γ_σ = 1 − m`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub sigma_index: usize,
    pub words: Vec<String>,
    pub norm_exponent: Option<i64>,
    pub shell: Option<i64>,
    pub j_eigenvalue: f64,
    pub h_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub p: u64,
    pub f: usize,
    pub genus: usize,
    pub norm_base: f64,
    pub lambda: f64,
    pub rho: i64,
    pub grid_index: Option<usize>,
    pub x: Option<TupleRecord>,
    pub entries: Vec<SpectrumEntry>,
    /// Mean of the `H_σ` eigenvalues.
    pub hg_eigenvalue: f64,
    pub lattice: LatticeDecision,
    pub classification: Decision,
    pub agrees_with_classification: bool,
}

/// Eigenvalues of `J_σ`, `H_σ` and `H_G` at the witness of `report` (or at the
/// first grid point when there is none). `rho = None` takes the smallest
/// `ρ ≥ 1` putting every finite shell at `m ≥ 1`.
pub fn spectrum_table(report: &SearchReport, symbol: &RadialSymbol, rho: Option<i64>) -> SpectrumTable {
    let grid_index = match &report.outcome {
        SearchOutcome::Found(w) => Some(w.grid_index),
        SearchOutcome::NotFound { .. } => report.rows.iter().find(|r| r.error.is_none()).map(|r| r.grid_index),
    };
    let rows: Vec<_> = report
        .rows
        .iter()
        .filter(|r| Some(r.grid_index) == grid_index && r.error.is_none())
        .collect();
    let mut raw: Vec<(usize, Vec<String>, Option<i64>)> = Vec::new();
    if report.method == "mouth_local" {
        // the mouth-local rows compare a single σ against the identity
        raw.push((0, Vec::new(), Some(0)));
        if let Some(r) = rows.first() {
            raw.push((r.sigma_index, r.words.clone(), r.sigma_x_norm));
        }
    } else {
        raw.extend(rows.iter().map(|r| (r.sigma_index, r.words.clone(), r.sigma_x_norm)));
    }
    if raw.is_empty() {
        raw.push((0, Vec::new(), Some(0)));
    }
    let rho = rho.unwrap_or_else(|| raw.iter().filter_map(|r| r.2).map(|e| 1 - e).fold(1, i64::max));
    let lambda = symbol.lambda();
    let entries: Vec<SpectrumEntry> = raw
        .into_iter()
        .map(|(sigma_index, words, e)| {
            let shell = e.map(|e| e + rho);
            let j = shell.map_or(lambda, |m| symbol.value(m));
            SpectrumEntry { sigma_index, words, norm_exponent: e, shell, j_eigenvalue: j, h_eigenvalue: j - lambda }
        })
        .collect();
    let hg_eigenvalue = entries.iter().map(|e| e.h_eigenvalue).sum::<f64>() / entries.len() as f64;
    let mut values: Vec<f64> = entries.iter().map(|e| e.h_eigenvalue).collect();
    values.push(hg_eigenvalue);
    let lattice = spectrum_in_lattice(&values, lambda, symbol.base());
    let agrees = lattice.is_contained() == (report.decision == Decision::Contained);
    SpectrumTable {
        p: report.p,
        f: report.f,
        genus: report.genus,
        norm_base: symbol.base(),
        lambda,
        rho,
        grid_index,
        x: grid_index.and_then(|gi| report.rows.iter().find(|r| r.grid_index == gi).map(|r| r.x.clone())),
        entries,
        hg_eigenvalue,
        lattice,
        classification: report.decision,
        agrees_with_classification: agrees,
    }
}
