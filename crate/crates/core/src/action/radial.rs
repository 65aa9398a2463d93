use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::Mutex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::extend::{axis_probes, random_vector, ExtendedMap};
use crate::error::Result;
use crate::padic::PadicVector;
use crate::schwartz::{LatticeWindow, TestFunction};

/// A radial function on `K^N`, given by its value on the shell of
/// valuation `v` (`None` for the origin).
pub trait RadialFunction: Send + Sync {
    fn at_valuation(&self, v: Option<i64>) -> f64;

    fn eval(&self, x: &PadicVector) -> f64 {
        self.at_valuation(x.valuation())
    }
}

/// Adapter turning a closure on valuations into a [`RadialFunction`].
pub struct RadialFn<F>(pub F);

impl<F: Fn(Option<i64>) -> f64 + Send + Sync> RadialFunction for RadialFn<F> {
    fn at_valuation(&self, v: Option<i64>) -> f64 {
        (self.0)(v)
    }
}

/// `f_σ(x) = f(σx)` with per-window memoized cell tables.
pub struct SigmaRadialProfile {
    f: Arc<dyn RadialFunction>,
    sigma: ExtendedMap,
    memo: Mutex<HashMap<LatticeWindow, Arc<Vec<f64>>>>,
}

impl SigmaRadialProfile {
    pub fn new(f: Arc<dyn RadialFunction>, sigma: ExtendedMap) -> Self {
        SigmaRadialProfile { f, sigma, memo: Mutex::new(HashMap::new()) }
    }

    pub fn sigma(&self) -> &ExtendedMap {
        &self.sigma
    }

    pub fn base(&self) -> &Arc<dyn RadialFunction> {
        &self.f
    }

    pub fn eval(&self, x: &PadicVector) -> Result<f64> {
        Ok(self.f.eval(&self.sigma.apply(x)?))
    }

    /// Value at the representative of every cell of `window`. The table is
    /// deterministic, so concurrent callers racing on a miss agree.
    pub fn cell_table(&self, window: LatticeWindow) -> Result<Arc<Vec<f64>>> {
        if let Some(t) = self.memo.lock().get(&window) {
            return Ok(t.clone());
        }
        let shape = TestFunction::zero(self.sigma.field(), window)?;
        let values = (0..shape.layout().size)
            .map(|i| self.eval(&shape.cell_representative(i)))
            .collect::<Result<Vec<_>>>()?;
        let table = Arc::new(values);
        self.memo.lock().entry(window).or_insert_with(|| table.clone());
        Ok(table)
    }
}

/// Result of a sampled σ-radial / σ-increasing check.
#[derive(Debug, Clone)]
pub enum SamplingReport {
    Consistent { samples: usize, shells: usize },
    Counterexample { x: PadicVector, y: PadicVector, gx: f64, gy: f64 },
}

impl SamplingReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self, SamplingReport::Consistent { .. })
    }
}

const REL_TOL: f64 = 1e-12;

fn approx(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Sample points grouped by the norm of `σx`, ordered by increasing norm.
fn shells(
    g: &(dyn Fn(&PadicVector) -> f64 + Sync),
    sigma: &ExtendedMap,
    budget: usize,
    seed: u64,
) -> Result<(usize, Vec<Vec<(PadicVector, f64)>>)> {
    let field = sigma.field();
    let n = sigma.dim();
    let rho = sigma.rho();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = axis_probes(field, n, -rho - 1, rho + 1);
    if let Some(d) = sigma.core().domain() {
        for b in d.balls() {
            for _ in 0..4 {
                let u = random_vector(field, n, 0, 3, &mut rng);
                let x = b.center.checked_add(&u.shift(b.radius))?;
                pts.push(x.shift(-rho));
                pts.push(x);
            }
        }
    }
    while pts.len() < budget {
        pts.push(random_vector(field, n, -rho - 2, rho + 2, &mut rng));
    }
    // key: norm exponent −v, with the origin first
    let mut groups: BTreeMap<Option<i64>, Vec<(PadicVector, f64)>> = BTreeMap::new();
    for x in pts.iter() {
        let key = sigma.apply(x)?.valuation().map(|v| -v);
        groups.entry(key).or_default().push((x.clone(), g(x)));
    }
    Ok((pts.len(), groups.into_values().collect()))
}

/// Samples shells and reports a pair with `‖σx‖ = ‖σy‖` but `g(x) ≠ g(y)`.
pub fn check_sigma_radial(
    g: &(dyn Fn(&PadicVector) -> f64 + Sync),
    sigma: &ExtendedMap,
    budget: usize,
    seed: u64,
) -> Result<SamplingReport> {
    let (samples, groups) = shells(g, sigma, budget, seed)?;
    for grp in &groups {
        let (x0, g0) = &grp[0];
        for (y, gy) in &grp[1..] {
            if !approx(*g0, *gy) {
                return Ok(SamplingReport::Counterexample { x: x0.clone(), y: y.clone(), gx: *g0, gy: *gy });
            }
        }
    }
    Ok(SamplingReport::Consistent { samples, shells: groups.len() })
}

/// Samples shells and reports a pair with `‖σx‖ ≤ ‖σy‖` but `g(x) > g(y)`.
pub fn check_sigma_increasing(
    g: &(dyn Fn(&PadicVector) -> f64 + Sync),
    sigma: &ExtendedMap,
    budget: usize,
    seed: u64,
) -> Result<SamplingReport> {
    let (samples, groups) = shells(g, sigma, budget, seed)?;
    let mut prev_max: Option<&(PadicVector, f64)> = None;
    for grp in &groups {
        let lo = grp.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        let hi = grp.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        if !approx(lo.1, hi.1) {
            return Ok(SamplingReport::Counterexample { x: hi.0.clone(), y: lo.0.clone(), gx: hi.1, gy: lo.1 });
        }
        if let Some(pm) = prev_max {
            if pm.1 > lo.1 && !approx(pm.1, lo.1) {
                return Ok(SamplingReport::Counterexample { x: pm.0.clone(), y: lo.0.clone(), gx: pm.1, gy: lo.1 });
            }
        }
        prev_max = Some(hi);
    }
    Ok(SamplingReport::Consistent { samples, shells: groups.len() })
}
