use serde::Serialize;

/// Relative tolerance when matching `v + λ` against a power of the base.
pub const LATTICE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum LatticeDecision {
    Contained { exponents: Vec<i64> },
    Witness { index: usize, value: f64 },
}

impl LatticeDecision {
    pub fn is_contained(&self) -> bool {
        matches!(self, LatticeDecision::Contained { .. })
    }
}

/// Whether every `v + λ` is an integer power of `base`.
pub fn spectrum_in_lattice(values: &[f64], lambda: f64, base: f64) -> LatticeDecision {
    let mut exponents = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        let shifted = value + lambda;
        if !(shifted > 0.0 && shifted.is_finite()) {
            return LatticeDecision::Witness { index, value };
        }
        let k = (shifted.ln() / base.ln()).round();
        let power = base.powf(k);
        if (shifted - power).abs() > LATTICE_TOL * power {
            return LatticeDecision::Witness { index, value };
        }
        exponents.push(k as i64);
    }
    LatticeDecision::Contained { exponents }
}
