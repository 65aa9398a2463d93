//! Invariant suite run by `mumford selftest`: a reduced version of the
//! integration tests on the configured field.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{ExtendedMap, GroupAction};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::graphs::{classify_spectrum, enumerate_stable_graphs, example_graph, genus2, Decision, Multigraph};
use crate::padic::{Field, PadicScalar};
use crate::schwartz::{ConvolutionMethod, Direction, LatticeWindow, TestFunction};
use crate::spectral::{
    apply_multiplier, eigenvalue, gamma_sigma, solve_cauchy, wavelet_indices, HeatKernel, Operator, Wavelet,
};
use crate::teichmueller::{composite_w, composite_w_display, sigma_action_genus2, GridSpec, RootOrder, SchottkyTuple};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Observed error, or a count for exact checks.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub p: u64,
    pub f: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn within(name: &str, value: f64, tolerance: f64, detail: impl Into<String>) -> Check {
    Check { name: name.into(), value, tolerance, passed: value <= tolerance, detail: detail.into() }
}

fn exact(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), value: if ok { 0.0 } else { 1.0 }, tolerance: 0.0, passed: ok, detail: detail.into() }
}

fn failed(name: &str, e: impl std::fmt::Display) -> Check {
    Check { name: name.into(), value: f64::INFINITY, tolerance: 0.0, passed: false, detail: e.to_string() }
}

fn random_fn(field: &Field, w: LatticeWindow, rng: &mut ChaCha8Rng) -> Result<TestFunction> {
    let n = w.layout(field)?.size;
    let amps = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    TestFunction::from_amplitudes(field, w, amps)
}

fn rel(a: &TestFunction, b: &TestFunction) -> Result<f64> {
    Ok(a.sub(b)?.l2_norm() / b.l2_norm().max(1e-300))
}

fn run(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| failed(name, e))
}

fn fourier(field: &Field, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut worst_inv: f64 = 0.0;
    let mut worst_parseval: f64 = 0.0;
    let c = run("fourier_inversion", || {
        for n in [1, 2] {
            for _ in 0..5 {
                let phi = random_fn(field, LatticeWindow::new(n, 1, 3 - n as i64)?, rng)?;
                let hat = phi.fourier(Direction::Forward)?;
                worst_inv = worst_inv.max(rel(&hat.fourier(Direction::Inverse)?, &phi)?);
                worst_parseval = worst_parseval.max((hat.l2_norm() - phi.l2_norm()).abs() / phi.l2_norm());
            }
        }
        Ok(within("fourier_inversion", worst_inv, 1e-12, "relative L² error of F⁻¹Fφ, N ∈ {1, 2}"))
    });
    let parseval = within("parseval", worst_parseval, 1e-12, "relative difference of ‖Fφ‖ and ‖φ‖");
    let ball = run("unit_ball_fixed", || {
        let one = TestFunction::unit_ball(field, 2)?;
        let d = one.fourier(Direction::Forward)?.max_abs_diff(&one)?;
        Ok(exact("unit_ball_fixed", d == 0.0, format!("max |F(1_O) − 1_O| = {d:e}")))
    });
    vec![c, parseval, ball]
}

fn kernels(cfg: &RunConfig, field: &Field, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = Vec::new();
    let symbol = match cfg.symbol() {
        Ok(s) => Arc::new(s),
        Err(e) => return vec![failed("symbol", e)],
    };
    let tol = cfg.tolerance.check;
    out.push(run("kernel_mass", || {
        let action = GroupAction::demo_cycle(field, 1, 2, cfg.rho)?;
        let zs = [
            HeatKernel::twisted(symbol.clone(), ExtendedMap::identity(field, 1, 3), 0.5)?,
            HeatKernel::invariant(symbol.clone(), action, 0.5, cfg.normalization)?,
        ];
        let mut worst: f64 = 0.0;
        for z in zs {
            worst = worst.max((z.with_truncation(cfg.nu_max, cfg.tolerance.tail).total_mass()? - 1.0).abs());
        }
        Ok(within("kernel_mass", worst, 1e-10, "|∫Z − 1| for Z_id and Z_G"))
    }));
    out.push(run("semigroup", || {
        let action = GroupAction::demo_cycle(field, 1, 2, cfg.rho)?;
        let z = HeatKernel::invariant(symbol.clone(), action, 0.3, cfg.normalization)?;
        let nu = 4;
        let a = z.truncated(nu)?;
        let b = z.at_time(0.5)?.truncated(nu)?;
        let ab = z.at_time(0.8)?.truncated(nu)?;
        let d = a.convolve(&b, ConvolutionMethod::Fourier)?.sub(&ab)?.l2_norm() + z.at_time(0.8)?.tail_bound(nu as u32);
        Ok(within("semigroup", d, tol, "‖Z_t * Z_t' − Z_{t+t'}‖₂ plus the truncation tail"))
    }));
    out.push(run("eigenrelation", || {
        let action = GroupAction::demo_cycle(field, 1, 2, cfg.rho)?;
        let mut worst_rel: f64 = 0.0;
        let mut worst_mean: f64 = 0.0;
        for gamma in [0, -1] {
            for idx in wavelet_indices(field, 1, gamma)? {
                let w = Wavelet::from_index(field, &idx)?.function;
                let mut per = Vec::new();
                for m in action.maps() {
                    let g = gamma_sigma(m, gamma, &idx.k, cfg.seed)?.value()?;
                    let mu = symbol.value(1 - g);
                    let jw = apply_multiplier(&symbol, &Operator::J(m.clone()), &w)?;
                    worst_rel = worst_rel.max(jw.sub(&w.scale(Complex64::new(mu, 0.0)))?.l2_norm() / w.l2_norm());
                    per.push(mu - symbol.lambda());
                }
                let mean = per.iter().sum::<f64>() / per.len() as f64;
                let hg = eigenvalue(&symbol, &Operator::HG(action.clone()), gamma, &idx.k, cfg.seed)?;
                worst_mean = worst_mean.max((hg - mean).abs());
            }
        }
        let ok = worst_rel <= 1e-10 && worst_mean <= 1e-12;
        Ok(Check {
            name: "eigenrelation".into(),
            value: worst_rel,
            tolerance: 1e-10,
            passed: ok,
            detail: format!("‖J_σω − μω‖/‖ω‖ over γ ∈ {{0, −1}}; |H_G − mean| = {worst_mean:e}"),
        })
    }));
    out.push(run("commutators", || {
        let action = GroupAction::demo_cycle(field, 1, 2, cfg.rho)?;
        let psi = random_fn(field, LatticeWindow::new(1, 1, 3)?, rng)?;
        let ops: Vec<Operator> = action.maps().iter().map(|m| Operator::H(m.clone())).collect();
        let mut worst: f64 = 0.0;
        for a in &ops {
            for b in &ops {
                let ab = apply_multiplier(&symbol, a, &apply_multiplier(&symbol, b, &psi)?)?;
                let ba = apply_multiplier(&symbol, b, &apply_multiplier(&symbol, a, &psi)?)?;
                worst = worst.max(ab.sub(&ba)?.l2_norm() / ab.l2_norm().max(psi.l2_norm()));
            }
        }
        Ok(within("commutators", worst, 1e-10, "‖[H_σ, H_τ]ψ‖/‖H_σH_τψ‖"))
    }));
    out.push(run("cauchy_eigenfunction", || {
        let action = GroupAction::demo_cycle(field, 1, 2, cfg.rho)?;
        let idx = &wavelet_indices(field, 1, 0)?[0];
        let psi = Wavelet::from_index(field, idx)?.function;
        let mu = eigenvalue(&symbol, &Operator::HG(action.clone()), 0, &idx.k, cfg.seed)?;
        let times: Vec<f64> = (0..=10).map(|i| i as f64 * 0.2).collect();
        let trace = solve_cauchy(&symbol, &action, &psi, &times, None)?;
        let mut worst: f64 = 0.0;
        // below e^{−μt} = 1e−6 the relative error measures round-off of the transforms
        for st in trace.steps.iter().filter(|st| (-mu * st.t).exp() >= 1e-6) {
            worst = worst.max(rel(&st.u, &psi.scale(Complex64::new((-mu * st.t).exp(), 0.0)))?);
        }
        Ok(within("cauchy_eigenfunction", worst, 1e-6, format!("u(t) against e^{{−μt}}ψ on [0, 2], μ = {mu}, while e^{{−μt}} ≥ 1e−6")))
    }));
    out
}

fn graphs() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("enumerate_genus2", || {
        let n = enumerate_stable_graphs(2)?.len();
        Ok(exact("enumerate_genus2", n == 3, format!("{n} stable graphs of genus 2")))
    }));
    let decide = |g: &Multigraph| -> Result<Decision> {
        let tree = g.spanning_trees().into_iter().next().unwrap_or_default();
        Ok(classify_spectrum(g, &tree)?.decision)
    };
    let cases = [
        ("classify_dumbbell", genus2::dumbbell(), Decision::Contained),
        ("classify_rose", genus2::rose(), Decision::Contained),
        ("classify_theta", genus2::theta(), Decision::NotContained),
        ("classify_example", example_graph(), Decision::Contained),
    ];
    for (name, g, expect) in cases {
        out.push(run(name, || {
            let d = decide(&g)?;
            Ok(exact(name, d == expect, format!("{d:?}")))
        }));
    }
    out
}

fn teichmueller(field: &Field) -> Vec<Check> {
    let name = "genus2_algebra";
    vec![run(name, || {
        let mut bad = 0usize;
        let pts = GridSpec::default().points(field);
        let mut count = 0usize;
        let mut no_root = 0usize;
        for (t1, y2, t2) in pts.into_iter().take(16) {
            let x = match SchottkyTuple::genus2(t1, y2, t2) {
                Ok(x) => x,
                Err(_) => continue,
            };
            count += 1;
            let g = x.generators()?;
            for i in 1..=2 {
                let h = g.maps[i - 1].hyperbolic_data()?;
                let (a, r) = x.fixed_points(i);
                if !(h.attracting.approx_eq(&a) && h.repelling.approx_eq(&r) && h.multiplier.approx_eq(x.t(i))) {
                    bad += 1;
                }
            }
            if !composite_w(&x)?.projectively_eq(&composite_w_display(&x)?) {
                bad += 1;
            }
            let t12: PadicScalar = x.t(1).checked_mul(x.t(2))?;
            // over Q_2 the fixed points of w may lie in an extension
            match sigma_action_genus2(&x, RootOrder::AttractingFirst) {
                Ok(a) if !a.multipliers[1].approx_eq(&t12) => bad += 1,
                Ok(_) => {}
                Err(Error::NoRoot(_)) => no_root += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(exact(name, bad == 0 && count > 0, format!("{count} tuples, {bad} mismatches, {no_root} without σ-action over K")))
    })]
}

pub fn selftest(cfg: &RunConfig) -> Result<SelfTestReport> {
    cfg.validate()?;
    let field = cfg.field()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = fourier(&field, &mut rng);
    checks.extend(kernels(cfg, &field, &mut rng));
    checks.extend(graphs());
    checks.extend(teichmueller(&field));
    Ok(SelfTestReport { p: field.p(), f: field.degree(), passed: checks.iter().all(|c| c.passed), checks })
}
