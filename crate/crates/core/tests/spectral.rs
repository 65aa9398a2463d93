use std::sync::Arc;

use mumford_spectra::action::*;
use mumford_spectra::padic::*;
use mumford_spectra::schwartz::*;
use mumford_spectra::spectral::*;
use mumford_spectra::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LAMBDA: f64 = 1.5;

fn q3() -> Field {
    FieldParams::qp(3).unwrap()
}

fn symbol(field: &Field) -> Arc<RadialSymbol> {
    Arc::new(RadialSymbol::power(LAMBDA, field.base(), 1.0).unwrap())
}

fn random_fn(field: &Field, w: LatticeWindow, seed: u64) -> TestFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = w.layout(field).unwrap().size;
    let amps = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    TestFunction::from_amplitudes(field, w, amps).unwrap()
}

fn rel_diff(a: &TestFunction, b: &TestFunction) -> f64 {
    a.sub(b).unwrap().l2_norm() / b.l2_norm().max(1e-300)
}

fn kernels(field: &Field, n: usize, t: f64) -> Vec<HeatKernel> {
    let s = symbol(field);
    let action = GroupAction::demo_cycle(field, n, 2, None).unwrap();
    vec![
        HeatKernel::twisted(s.clone(), ExtendedMap::identity(field, n, 3), t).unwrap(),
        HeatKernel::twisted(s.clone(), action.map(1).clone(), t).unwrap(),
        HeatKernel::invariant(s.clone(), action, t, Normalization::Reconciled).unwrap(),
    ]
}

#[test]
fn symbol_validation() {
    assert!(RadialSymbol::power(3.5, 3, 1.0).is_err());
    assert!(RadialSymbol::power(1.0, 3, -1.0).is_err());
    let s = RadialSymbol::power(2.0, 3, 1.0).unwrap();
    assert_eq!(s.value(-4), 2.0);
    assert_eq!(s.value(0), 2.0);
    assert_eq!(s.value(2), 9.0);
    let bad_cert = GrowthCertificate { a1: 2.0, a2: 2.0, gamma1: 1.0, gamma2: 1.0 };
    assert!(RadialSymbol::new(1.0, 3, ShellRule::Power { alpha: 1.0, coeff: 1.0 }, bad_cert).is_err());
}

#[test]
fn kernel_vanishes_outside_polydisk_and_has_unit_mass() {
    let f = q3();
    for n in [1, 2] {
        for z in kernels(&f, n, 0.7) {
            let far = PadicVector::from_i64(&f, &vec![1; n]).shift(-1);
            assert_eq!(z.eval(&far).unwrap().value, Complex64::new(0.0, 0.0));
            assert!((z.total_mass().unwrap() - 1.0).abs() <= 1e-15);
        }
    }
    // literal normalization has mass 1/|G|
    let action = GroupAction::demo_cycle(&f, 1, 2, None).unwrap();
    let lit = HeatKernel::invariant(symbol(&f), action, 0.7, Normalization::Literal).unwrap();
    assert!((lit.total_mass().unwrap() - 0.5).abs() <= 1e-15);
}

/// `eval` (closed-form shells plus twisted corrections) against the inverse
/// FFT of the multiplier on a window covering every twisted cell.
#[test]
fn pointwise_values_match_truncated_transform() {
    let f = q3();
    for n in [1, 2] {
        for z in kernels(&f, n, 0.4) {
            let nu = 4;
            let tr = z.truncated(nu).unwrap();
            for i in 0..tr.layout().size {
                let x = tr.cell_representative(i);
                if x.valuation().is_none_or(|v| v >= nu) {
                    continue;
                }
                let v = z.eval(&x).unwrap();
                assert_eq!(v.tail_bound, 0.0);
                assert!((v.value - tr.amplitudes()[i]).norm() <= 1e-10, "{:?} vs {:?}", v.value, tr.amplitudes()[i]);
            }
            // the origin needs the tail: compare against a deep truncation
            let zero = PadicVector::zero(&f, n);
            let deep = z.truncated(if n == 1 { 9 } else { 6 }).unwrap();
            let v = z.eval(&zero).unwrap();
            assert!(v.tail_bound <= DEFAULT_TAIL_TOL);
            assert!((v.value - deep.eval(&zero).unwrap()).norm() <= 1e-8 * v.value.norm());
        }
    }
}

#[test]
fn tail_escalation_and_failure() {
    let f = q3();
    let s = symbol(&f);
    let id = ExtendedMap::identity(&f, 1, 1);
    let zero = PadicVector::zero(&f, 1);
    // small t needs more shells than the default before the tail certifies
    let z = HeatKernel::twisted(s, id.clone(), 1e-3).unwrap();
    let v = z.eval(&zero).unwrap();
    assert!(v.nu_max > DEFAULT_NU_MAX || v.tail_bound <= DEFAULT_TAIL_TOL);
    assert!(v.tail_bound <= DEFAULT_TAIL_TOL);
    // a symbol growing like 3^{m/10^4} is too slow to certify within the shell cap
    let cert = GrowthCertificate { a1: 1.0, a2: 1.0, gamma1: 1e-4, gamma2: 1e-4 };
    let slow = RadialSymbol::new(1.0, 3, ShellRule::Power { alpha: 1e-4, coeff: 1.0 }, cert).unwrap();
    let z = HeatKernel::twisted(Arc::new(slow), id, 1.0).unwrap();
    assert!(matches!(z.eval(&zero), Err(Error::TailBoundExceeded { .. })));
    // points with finite valuation below the truncation need no tail
    assert!(z.eval(&PadicVector::from_i64(&f, &[3])).is_ok());
}

#[test]
fn large_time_approaches_unit_ball_indicator() {
    let f = q3();
    let ind = TestFunction::unit_ball(&f, 1).unwrap().refine(LatticeWindow::new(1, 0, 4).unwrap()).unwrap();
    for z in kernels(&f, 1, 1.0) {
        let mut prev = f64::INFINITY;
        for t in [1.0, 4.0, 16.0, 32.0] {
            let tr = z.at_time(t).unwrap().truncated(4).unwrap();
            let d = tr.max_abs_diff(&ind).unwrap();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-12);
    }
}

#[test]
fn semigroup_law() {
    let f = q3();
    for n in [1, 2] {
        for z in kernels(&f, n, 0.3) {
            let nu = 4;
            let a = z.truncated(nu).unwrap();
            let b = z.at_time(0.5).unwrap().truncated(nu).unwrap();
            let ab = z.at_time(0.8).unwrap().truncated(nu).unwrap();
            let conv = a.convolve(&b, ConvolutionMethod::Fourier).unwrap();
            assert!(conv.sub(&ab).unwrap().l2_norm() <= 1e-8);
            // truncation error of the true kernel
            assert!(z.at_time(0.8).unwrap().tail_bound(nu as u32) < 1e-8);
        }
    }
}

/// `Z_G(·, t)` equals the `|G|`-fold convolution of the `Z_σ(·, t/|G|)`.
#[test]
fn invariant_kernel_is_convolution_of_twisted() {
    let f = q3();
    let action = GroupAction::demo_cycle(&f, 1, 3, None).unwrap();
    let s = symbol(&f);
    let t = 0.9;
    let nu = 5;
    let zg = HeatKernel::invariant(s.clone(), action.clone(), t, Normalization::Reconciled).unwrap();
    let mut conv: Option<TestFunction> = None;
    for m in action.maps() {
        let zs = HeatKernel::twisted(s.clone(), m.clone(), t / 3.0).unwrap().truncated(nu).unwrap();
        conv = Some(match conv {
            None => zs,
            Some(c) => c.convolve(&zs, ConvolutionMethod::Direct).unwrap(),
        });
    }
    assert!(rel_diff(&conv.unwrap(), &zg.truncated(nu).unwrap()) <= 1e-10);
    // trivial G gives Z_id
    let triv = GroupAction::trivial(FiniteGroup::cyclic(1).unwrap(), &f, 1, 4);
    let a = HeatKernel::invariant(s.clone(), triv, t, Normalization::Reconciled).unwrap().truncated(nu).unwrap();
    let b = HeatKernel::twisted(s, ExtendedMap::identity(&f, 1, 4), t).unwrap().truncated(nu).unwrap();
    assert!(rel_diff(&a, &b) <= 1e-14);
}

#[test]
fn delta_family_converges_monotonically() {
    let f = q3();
    for z in kernels(&f, 1, 1.0) {
        for seed in 0..5 {
            let phi = random_fn(&f, LatticeWindow::new(1, 1, 2).unwrap(), seed);
            let mut prev = f64::INFINITY;
            for t in [1.0, 0.1, 0.01] {
                let d = z.at_time(t).unwrap().apply(&phi).unwrap().sub(&phi).unwrap().l2_norm();
                assert!(d < prev);
                prev = d;
            }
            assert!(z.at_time(1e-6).unwrap().apply(&phi).unwrap().sub(&phi).unwrap().l2_norm() < 1e-3);
        }
    }
}

#[test]
fn positivity() {
    let f = q3();
    let g = GroupAction::demo_cycle(&f, 2, 2, None).unwrap();
    let pts = g.sample_points(120, 5);
    for t in [0.05, 0.5, 3.0] {
        let zs = kernels(&f, 2, t);
        let rep = positivity_check(&zs[0], &pts).unwrap();
        assert!(rep.trivial_action);
        assert!(rep.nonnegative(), "{rep:?}");
        assert!(rep.max_abs_imag <= 1e-12);
        // twisted kernels only get a report
        let rep = positivity_check(&zs[1], &pts).unwrap();
        assert!(!rep.trivial_action);
        assert_eq!(rep.samples, pts.len());
    }
}

#[test]
fn apply_equals_convolution_with_truncated_kernel() {
    let f = q3();
    for z in kernels(&f, 1, 0.6) {
        let psi = random_fn(&f, LatticeWindow::new(1, 1, 2).unwrap(), 3);
        let direct = z.truncated(4).unwrap().convolve(&psi, ConvolutionMethod::Direct).unwrap();
        let fast = z.apply(&psi).unwrap();
        let (a, b) = direct.align(&fast).unwrap();
        // the truncated kernel drops shells above 4, invisible at constancy 2
        assert!(rel_diff(&a, &b) <= 1e-12);
    }
}

#[test]
fn operators_on_unit_ball() {
    let f = q3();
    let s = symbol(&f);
    let one = TestFunction::unit_ball(&f, 2).unwrap();
    let id = ExtendedMap::identity(&f, 2, 3);
    let j = apply_multiplier(&s, &Operator::J(id.clone()), &one).unwrap();
    assert!(rel_diff(&j, &one.scale(Complex64::new(LAMBDA, 0.0))) <= 1e-14);
    let h = apply_multiplier(&s, &Operator::H(id), &one).unwrap();
    assert!(h.l2_norm() <= 1e-14);
}

#[test]
fn commutators_and_self_adjointness() {
    let f = q3();
    let s = symbol(&f);
    let action = GroupAction::demo_cycle(&f, 1, 3, None).unwrap();
    let ops: Vec<Operator> = action.maps().iter().map(|m| Operator::H(m.clone())).collect();
    for seed in 0..3 {
        let phi = random_fn(&f, LatticeWindow::new(1, 1, 5).unwrap(), seed);
        let psi = random_fn(&f, LatticeWindow::new(1, 1, 5).unwrap(), seed + 100);
        for a in &ops {
            let ha_phi = apply_multiplier(&s, a, &phi).unwrap();
            let ha_psi = apply_multiplier(&s, a, &psi).unwrap();
            let lhs = ha_phi.inner(&psi).unwrap();
            let rhs = phi.inner(&ha_psi).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
            for b in &ops {
                let ab = apply_multiplier(&s, a, &apply_multiplier(&s, b, &psi).unwrap()).unwrap();
                let ba = apply_multiplier(&s, b, &ha_psi).unwrap();
                assert!(ab.sub(&ba).unwrap().l2_norm() <= 1e-10 * psi.l2_norm());
            }
        }
    }
}

#[test]
fn wavelets_are_orthonormal_oracle() {
    for p in [2u64, 3, 5, 7] {
        let f = FieldParams::qp(p).unwrap();
        let zero = PadicVector::zero(&f, 1);
        let ws: Vec<_> = (1..p).map(|k| Wavelet::build(&f, 0, &zero, &[k]).unwrap().function).collect();
        for (i, a) in ws.iter().enumerate() {
            for (j, b) in ws.iter().enumerate() {
                let ip = a.inner(b).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(expect, 0.0)).norm() <= 1e-12);
            }
            assert!(a.integrate().norm() <= 1e-14);
        }
    }
}

#[test]
fn wavelet_family_support_and_orthonormality() {
    let f = q3();
    for n in [1, 2] {
        for gamma in [0, -1] {
            let idx = wavelet_indices(&f, n, gamma).unwrap();
            let expect = 3usize.pow((-gamma) as u32 * n as u32) * (3usize.pow(n as u32) - 1);
            assert_eq!(idx.len(), expect);
            let ws: Vec<_> = idx.iter().map(|i| Wavelet::from_index(&f, i).unwrap()).collect();
            for w in &ws {
                let phi = &w.function;
                assert!((phi.l2_norm() - 1.0).abs() <= 1e-12);
                assert!(phi.integrate().norm() <= 1e-12);
                assert_eq!(phi.window().support, 0);
                // supported on b + p^{−γ}O^N
                for i in 0..phi.layout().size {
                    if phi.amplitudes()[i].norm() > 1e-12 {
                        let d = phi.cell_representative(i).checked_sub(&w.index.b).unwrap();
                        assert!(d.valuation().is_none_or(|v| v >= -gamma));
                    }
                }
            }
            for (i, a) in ws.iter().enumerate() {
                for b in &ws[i + 1..] {
                    assert!(a.function.inner(&b.function).unwrap().norm() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn inadmissible_indices() {
    let f = q3();
    let zero = PadicVector::zero(&f, 1);
    assert!(matches!(Wavelet::build(&f, 1, &zero, &[1]), Err(Error::InadmissibleIndex(_))));
    assert!(matches!(Wavelet::build(&f, 0, &zero, &[0]), Err(Error::InadmissibleIndex(_))));
    assert!(matches!(Wavelet::build(&f, 0, &zero, &[3]), Err(Error::InadmissibleIndex(_))));
    let b = PadicVector::from_i64(&f, &[1]).shift(-1);
    assert!(matches!(Wavelet::build(&f, -1, &b, &[1]), Err(Error::InadmissibleIndex(_))));
}

/// Core map `x ↦ px` on `X = 1 + 3O`, with `ρ = 1`.
fn rescale_map(f: &Field) -> ExtendedMap {
    let x = BallUnion::new(vec![Ball::new(PadicVector::from_i64(f, &[1]), 1)]).unwrap();
    let field = f.clone();
    let map: CustomFn = Arc::new(move |v: &PadicVector| Ok(v.scale(&PadicScalar::from_i64(&field, 3))?));
    extend_action(CoreMap::Custom { domain: x, map }, 1, 1, f).unwrap()
}

#[test]
fn gamma_sigma_examples() {
    let f = q3();
    let id = ExtendedMap::identity(&f, 2, 3);
    for gamma in [0, -1, -2] {
        assert_eq!(gamma_sigma(&id, gamma, &[1, 2], 0).unwrap().value().unwrap(), gamma);
    }
    let sigma = rescale_map(&f);
    // C = −2/3 + O lies in p^{-1}X; oracle: ‖σξ‖ computed directly at a point of C
    let xi = PadicVector::from_i64(&f, &[1]).shift(-1);
    assert_eq!(sigma.apply(&xi).unwrap().valuation(), Some(0));
    assert_eq!(gamma_sigma(&sigma, 0, &[2], 1).unwrap().value().unwrap(), 1);
    // C = −1/3 + O avoids the twisted region
    assert_eq!(gamma_sigma(&sigma, 0, &[1], 1).unwrap().value().unwrap(), 0);
    // cosets outside B_ρ are fixed
    assert_eq!(gamma_sigma(&sigma, -3, &[1], 1).unwrap().value().unwrap(), -3);
}

#[test]
fn gamma_sigma_reports_non_constant_norms() {
    let f = q3();
    // x ↦ px on 1 + 9O only: half of the coset −2/3 + O is rescaled
    let x = BallUnion::new(vec![Ball::new(PadicVector::from_i64(&f, &[1]), 2)]).unwrap();
    let field = f.clone();
    let map: CustomFn = Arc::new(move |v: &PadicVector| Ok(v.scale(&PadicScalar::from_i64(&field, 3))?));
    let sigma = extend_action(CoreMap::Custom { domain: x, map }, 2, 1, &f).unwrap();
    let rep = gamma_sigma(&sigma, -1, &[2], 0).unwrap();
    assert!(matches!(rep, GammaReport::NotConstant { .. }));
    assert!(matches!(rep.value(), Err(Error::NotConstant(_))));
}

#[test]
fn eigenvalue_examples() {
    let f = q3();
    let s = symbol(&f);
    let id = ExtendedMap::identity(&f, 1, 2);
    let j = eigenvalue(&s, &Operator::J(id.clone()), 0, &[1], 0).unwrap();
    assert_eq!(j, 3.0);
    // oracle: apply J_id to the wavelet and read the ratio
    let w = Wavelet::build(&f, 0, &PadicVector::zero(&f, 1), &[1]).unwrap().function;
    let jw = apply_multiplier(&s, &Operator::J(id.clone()), &w).unwrap();
    let ratio = jw.inner(&w).unwrap() / w.inner(&w).unwrap();
    assert!((ratio.re - 3.0).abs() <= 1e-12 && ratio.im.abs() <= 1e-12);
    assert_eq!(eigenvalue(&s, &Operator::H(id.clone()), 0, &[1], 0).unwrap(), 3.0 - LAMBDA);
    let triv = GroupAction::trivial(FiniteGroup::cyclic(1).unwrap(), &f, 1, 2);
    assert_eq!(eigenvalue(&s, &Operator::HG(triv), -1, &[2], 0).unwrap(), 9.0 - LAMBDA);
}

#[test]
fn eigenrelation_and_mean_eigenvalue() {
    let f = q3();
    let s = symbol(&f);
    for n in [1, 2] {
        let action = GroupAction::demo_cycle(&f, n, 3, None).unwrap();
        for gamma in [0, -1] {
            for idx in wavelet_indices(&f, n, gamma).unwrap() {
                let w = Wavelet::from_index(&f, &idx).unwrap().function;
                let mut per_sigma = Vec::new();
                for m in action.maps() {
                    let g = gamma_sigma(m, gamma, &idx.k, 7).unwrap().value().unwrap();
                    let mu = s.value(1 - g);
                    let jw = apply_multiplier(&s, &Operator::J(m.clone()), &w).unwrap();
                    assert!(jw.sub(&w.scale(Complex64::new(mu, 0.0))).unwrap().l2_norm() <= 1e-10);
                    per_sigma.push(mu - LAMBDA);
                }
                let mean = per_sigma.iter().sum::<f64>() / per_sigma.len() as f64;
                let hg = eigenvalue(&s, &Operator::HG(action.clone()), gamma, &idx.k, 7).unwrap();
                assert!((hg - mean).abs() <= 1e-12);
                let hw = apply_multiplier(&s, &Operator::HG(action.clone()), &w).unwrap();
                assert!(hw.sub(&w.scale(Complex64::new(hg, 0.0))).unwrap().l2_norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn cauchy_eigenfunction_and_mass() {
    let f = q3();
    let s = symbol(&f);
    let action = GroupAction::demo_cycle(&f, 1, 2, None).unwrap();
    let idx = &wavelet_indices(&f, 1, -1).unwrap()[1];
    let psi = Wavelet::from_index(&f, idx).unwrap().function;
    let mu = eigenvalue(&s, &Operator::HG(action.clone()), -1, &idx.k, 0).unwrap();
    let times: Vec<f64> = (0..=20).map(|i| i as f64 * 0.1).collect();
    let trace = solve_cauchy(&s, &action, &psi, &times, None).unwrap();
    assert!(rel_diff(&trace.steps[0].u, &psi) <= 1e-14);
    for st in &trace.steps {
        let expect = psi.scale(Complex64::new((-mu * st.t).exp(), 0.0));
        assert!(rel_diff(&st.u, &expect) <= 1e-6);
    }
    // scalar ODE residual for the central difference: e^{−μt}|sinh(μh)/h − μ|
    let h = trace.h;
    for st in trace.steps.iter().filter(|st| st.t >= h) {
        let expect = (-mu * st.t).exp() * ((mu * h).sinh() / h - mu).abs();
        assert!((st.residual - expect).abs() <= 1e-6 * expect.max(1e-12));
    }
    // mass conservation
    let phi = random_fn(&f, LatticeWindow::new(1, 1, 3).unwrap(), 2);
    let tr = solve_cauchy(&s, &action, &phi, &[0.0, 0.5, 2.0], None).unwrap();
    for st in &tr.steps {
        assert!((st.mass - phi.integrate()).norm() <= 1e-12 * phi.integrate().norm().max(1.0));
    }
    let csv = tr.to_csv();
    assert!(csv.starts_with("t,coset,re,im\n"));
    assert_eq!(csv.lines().count(), 1 + 3 * 81);
}

#[test]
fn cauchy_residual_is_second_order() {
    let f = q3();
    let s = symbol(&f);
    let action = GroupAction::demo_cycle(&f, 1, 2, None).unwrap();
    let idx = &wavelet_indices(&f, 1, 0).unwrap()[0];
    let psi = Wavelet::from_index(&f, idx).unwrap().function;
    let times = [0.5, 1.0, 1.5];
    let r1 = solve_cauchy(&s, &action, &psi, &times, Some(0.02)).unwrap().max_residual();
    let r2 = solve_cauchy(&s, &action, &psi, &times, Some(0.01)).unwrap().max_residual();
    assert!((r1 / r2).log2() >= 1.9);
}

#[test]
fn lattice_examples() {
    let p = 3.0;
    assert!(spectrum_in_lattice(&[p - LAMBDA, p * p - LAMBDA], LAMBDA, p).is_contained());
    let avg = (p + p * p) / 2.0 - LAMBDA;
    assert_eq!(spectrum_in_lattice(&[avg], LAMBDA, p), LatticeDecision::Witness { index: 0, value: avg });
    assert!(spectrum_in_lattice(&[], LAMBDA, p).is_contained());
    assert!(!spectrum_in_lattice(&[-LAMBDA], LAMBDA, p).is_contained());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn semigroup_of_apply(seed in 0u64..1000, t in 0.05f64..1.5, t2 in 0.05f64..1.5) {
        let f = q3();
        for z in kernels(&f, 1, t) {
            let psi = random_fn(&f, LatticeWindow::new(1, 2, 3).unwrap(), seed);
            let lhs = z.apply(&z.at_time(t2).unwrap().apply(&psi).unwrap()).unwrap();
            let rhs = z.at_time(t + t2).unwrap().apply(&psi).unwrap();
            prop_assert!(rel_diff(&lhs, &rhs) <= 1e-12);
        }
    }

    #[test]
    fn heat_flow_contracts(seed in 0u64..1000, t in 0.01f64..3.0) {
        let f = q3();
        for z in kernels(&f, 1, t) {
            let psi = random_fn(&f, LatticeWindow::new(1, 1, 3).unwrap(), seed);
            prop_assert!(z.apply(&psi).unwrap().l2_norm() <= psi.l2_norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn random_index_eigenrelation(gamma in -2i64..=0, k in 1u64..3, seed in 0u64..100) {
        let f = q3();
        let s = symbol(&f);
        let action = GroupAction::demo_cycle(&f, 1, 3, None).unwrap();
        let idx = wavelet_indices(&f, 1, gamma).unwrap();
        let pick = idx.iter().filter(|i| i.k == vec![k]).nth(seed as usize % 3usize.pow((-gamma) as u32)).unwrap();
        let w = Wavelet::from_index(&f, pick).unwrap().function;
        let mu = eigenvalue(&s, &Operator::HG(action.clone()), gamma, &pick.k, seed).unwrap();
        let hw = apply_multiplier(&s, &Operator::HG(action), &w).unwrap();
        prop_assert!(hw.sub(&w.scale(Complex64::new(mu, 0.0))).unwrap().l2_norm() <= 1e-10);
    }
}
