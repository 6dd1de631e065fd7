use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::C64;
use crate::states::{singlet, werner, BuiltinState};
use crate::steering::{evaluate_functional, icosahedron_directions, lhs_bound, SteeringFunctional};

fn random_state(rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(4, 4, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr), vec![2, 2]).unwrap()
}

fn icosa() -> Vec<Vec3> {
    icosahedron_directions().to_vec()
}

fn anchor_state(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(separable_anchor(rho).unwrap(), vec![2, 2]).unwrap()
}

#[test]
fn radial_mix_endpoints_and_marginal() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rho = random_state(&mut rng);
    let one = radial_mix(&rho, 1.0).unwrap().valid().unwrap();
    assert!(one.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    let zero = radial_mix(&rho, 0.0).unwrap().valid().unwrap();
    assert!(zero.matrix().max_abs_diff(&separable_anchor(&rho).unwrap()) < 1e-15);
    let rho_b = rho.partial_trace(&[1]).unwrap();
    for t in [0.3, 0.8, 1.0] {
        let mix = radial_mix(&rho, t).unwrap().valid().unwrap();
        assert!(mix.partial_trace(&[1]).unwrap().matrix().max_abs_diff(rho_b.matrix()) < 1e-14);
    }
    assert!(radial_mix(&rho, -0.1).is_err());
}

#[test]
fn radial_mix_of_singlet_is_werner() {
    for t in [0.0, 0.25, 0.5, 0.9, 1.0] {
        let mix = radial_mix(&singlet(), t).unwrap().valid().unwrap();
        assert!(mix.matrix().max_abs_diff(werner(t).unwrap().matrix()) < 1e-15);
    }
    assert!(matches!(radial_mix(&singlet(), 1.2).unwrap(), RadialMix::Indefinite { .. }));
}

#[test]
fn radial_mix_commutes_with_white_noise() {
    // radial_mix(pρ + (1-p)I/4, t) = p·radial_mix(ρ, t) + (1-p)I/4
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rho = random_state(&mut rng);
    let white = DensityMatrix::maximally_mixed(vec![2, 2]);
    for (p, t) in [(0.999, 0.7), (0.5, 1.0), (0.9, 0.2)] {
        let lhs = radial_mix(&rho.mix(&white, p).unwrap(), t).unwrap().valid().unwrap();
        let inner = radial_mix(&rho, t).unwrap().valid().unwrap();
        let rhs = inner.mix(&white, p).unwrap();
        assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-15);
    }
}

#[test]
fn psd_boundary_values() {
    assert!((psd_boundary(&singlet(), 2.0).unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(psd_boundary(&DensityMatrix::maximally_mixed(vec![2, 2]), 2.0).unwrap(), 2.0);
    let b1 = BuiltinState::B1.state().unwrap();
    let rho = crate::states::reduce_pair(&crate::states::build_family(&b1, 1.0).unwrap(), PartyPair::AB).unwrap();
    let cap = psd_boundary(&rho, 2.0).unwrap();
    assert!(cap > 1.0 && cap < 2.0);
    assert!(radial_mix(&rho, cap).unwrap().valid().is_some());
}

#[test]
fn strategy_set_responses() {
    let s = DeterministicStrategySet::new(3).unwrap();
    assert_eq!(s.len(), 8);
    for lambda in 0..8u128 {
        for x in 0..3 {
            assert_eq!(
                DeterministicStrategySet::response(lambda, 0, x) + DeterministicStrategySet::response(lambda, 1, x),
                1.0
            );
        }
    }
    assert!(DeterministicStrategySet::new(129).is_err());
}

#[test]
fn maximally_mixed_is_lhs() {
    let settings: Vec<_> = icosa().iter().map(|&d| DichotomicSetting::new(d).unwrap()).collect();
    let a = make_assemblage(&DensityMatrix::maximally_mixed(vec![2, 2]), &settings).unwrap();
    let out = lhs_lp_feasible(&a, &SpherePolytope::new(0), HiddenMode::Restrict).unwrap();
    let LpOutcome::Feasible(cert) = out else { panic!("expected a model") };
    assert!(cert.residual <= 1e-8);
    assert!(cert.terms.iter().all(|t| t.weight >= -1e-12));
}

#[test]
fn werner_lp_thresholds() {
    let settings: Vec<_> = icosa().iter().map(|&d| DichotomicSetting::new(d).unwrap()).collect();
    let hidden = SpherePolytope::new(2);
    let a = make_assemblage(&werner(0.6).unwrap(), &settings).unwrap();
    assert!(!lhs_lp_feasible(&a, &hidden, HiddenMode::Relax).unwrap().is_feasible());
    let a = make_assemblage(&werner(0.5).unwrap(), &settings).unwrap();
    let LpOutcome::Feasible(cert) = lhs_lp_feasible(&a, &hidden, HiddenMode::Restrict).unwrap() else {
        panic!("werner(0.5) should admit a model")
    };
    assert!(cert.residual <= 1e-8);
    // The model's assemblage obeys the classical bound of the icosahedral functional.
    let f = SteeringFunctional::icosahedral();
    let l = lhs_bound(&f).unwrap().value;
    assert!(evaluate_functional(&cert.assemblage(6), &f).unwrap() <= l + 1e-9);
    for h in cert.hidden_states() {
        assert!(crate::linalg::herm_eig(&h).unwrap().min() >= -1e-12);
    }
}

#[test]
fn detection_thresholds() {
    // 0.54 lies 0.1% above the six-setting threshold, so the relaxed hull must be tight.
    let hidden = SpherePolytope::new(4);
    let d = detect_steerable(&singlet(), &icosa(), &hidden).unwrap();
    assert!(d.steerable);
    let w = d.witness.unwrap();
    assert!(w.bound_exact);
    assert!(!detect_steerable(&DensityMatrix::maximally_mixed(vec![2, 2]), &icosa(), &hidden).unwrap().steerable);
    assert!(detect_steerable(&werner(0.54).unwrap(), &icosa(), &hidden).unwrap().steerable);
    assert!(!detect_steerable(&werner(0.53).unwrap(), &icosa(), &hidden).unwrap().steerable);
}

#[test]
fn witness_bound_matches_eigenvalue_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let hidden = SpherePolytope::new(3);
    for m in [1, 3, 7] {
        let mut r4 = || [0; 4].map(|_| rng.random_range(-1.0..1.0));
        let anchor = r4();
        let settings: Vec<[f64; 4]> = (0..m).map(|_| r4()).collect();
        let (bound, exact) = witness_bound(anchor, &settings, &hidden);
        assert!(exact);
        // Y = y0 I + y·σ; the bound is the largest eigenvalue over all subsets.
        let op =
            |s: &[f64; 4]| &ComplexMatrix::identity(2).scale(s[0]) + &crate::linalg::bloch_to_obs([s[1], s[2], s[3]]);
        let mut oracle = f64::NEG_INFINITY;
        for mask in 0..1u32 << m {
            let mut y = op(&anchor);
            for (x, s) in settings.iter().enumerate() {
                if mask >> x & 1 == 1 {
                    y = &y + &op(s);
                }
            }
            oracle = oracle.max(crate::linalg::herm_eig(&y).unwrap().max());
        }
        assert!((bound - oracle).abs() < 1e-12);
    }
}

#[test]
fn farkas_witness_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let hidden = SpherePolytope::new(1);
    let mut seen = 0;
    for _ in 0..30 {
        let rho = random_state(&mut rng);
        let settings: Vec<_> = icosa().iter().map(|&d| DichotomicSetting::new(d).unwrap()).collect();
        let a = make_assemblage(&rho, &settings).unwrap();
        if let LpOutcome::Infeasible { margin, .. } = lhs_lp_feasible(&a, &hidden, HiddenMode::Relax).unwrap() {
            let w = detect_steerable(&rho, &icosa(), &hidden).unwrap().witness.unwrap();
            assert!((w.value - margin).abs() < 1e-9);
            assert!(w.violation() >= margin - 1e-6, "{} vs {margin}", w.violation());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn shrunk_certificates() {
    let meas = SpherePolytope::new(0);
    let hidden = SpherePolytope::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rho = random_state(&mut rng);
    assert!(certify_unsteerable_shrunk(&anchor_state(&rho), &meas, &hidden).unwrap());
    assert!(certify_unsteerable_shrunk(&werner(0.5).unwrap(), &meas, &hidden).unwrap());
    assert!(!certify_unsteerable_shrunk(&singlet(), &meas, &hidden).unwrap());
}

#[test]
fn restrict_feasibility_is_monotone_along_the_ray() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let meas = SpherePolytope::new(0);
    let hidden = SpherePolytope::new(1);
    for _ in 0..20 {
        let rho = random_state(&mut rng);
        let cap = psd_boundary(&rho, 2.0).unwrap();
        let verdicts: Vec<bool> = (0..=6)
            .map(|i| {
                let t = cap * i as f64 / 6.0;
                certify_unsteerable_shrunk(&radial_mix(&rho, t).unwrap().valid().unwrap(), &meas, &hidden).unwrap()
            })
            .collect();
        // once infeasible, stays infeasible
        assert!(verdicts.windows(2).all(|w| w[0] || !w[1]), "{verdicts:?}");
    }
}

#[test]
fn certificates_never_contradict() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let meas = SpherePolytope::new(0);
    let hidden = SpherePolytope::new(1);
    let dirs = meas.directions();
    for _ in 0..15 {
        let rho = random_state(&mut rng);
        let cap = psd_boundary(&rho, 2.0).unwrap();
        for i in 1..=4 {
            let t = cap * i as f64 / 4.0;
            let shrunk = (t / meas.eta()).min(cap);
            let certified =
                certify_unsteerable_shrunk(&radial_mix(&rho, shrunk).unwrap().valid().unwrap(), &meas, &hidden)
                    .unwrap();
            if certified && shrunk >= t / meas.eta() - 1e-15 {
                let detected =
                    detect_steerable(&radial_mix(&rho, t).unwrap().valid().unwrap(), &dirs, &hidden).unwrap();
                assert!(!detected.steerable);
            }
        }
    }
}

#[test]
fn refinement_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let settings: Vec<_> = icosa().iter().map(|&d| DichotomicSetting::new(d).unwrap()).collect();
    let coarse = SpherePolytope::new(1);
    let fine = SpherePolytope::new(2);
    let finer_dirs = SpherePolytope::new(1).directions();
    for _ in 0..10 {
        let rho = random_state(&mut rng);
        for t in [0.4, 0.7, 1.0] {
            let mix = radial_mix(&rho, t).unwrap().valid().unwrap();
            let a = make_assemblage(&mix, &settings).unwrap();
            if lhs_lp_feasible(&a, &coarse, HiddenMode::Restrict).unwrap().is_feasible() {
                assert!(lhs_lp_feasible(&a, &fine, HiddenMode::Restrict).unwrap().is_feasible());
            }
            // the level-1 directions contain the icosahedral ones
            if detect_steerable(&mix, &icosa(), &fine).unwrap().steerable {
                assert!(detect_steerable(&mix, &finer_dirs, &fine).unwrap().steerable);
            }
        }
    }
}

#[test]
fn singlet_radius_bracket() {
    let report = critical_radius_bounds(&singlet(), &RadiusParams::default()).unwrap();
    assert!(report.r_in <= 0.5 && 0.5 <= report.r_out, "{report:?}");
    assert!(report.r_out <= 0.56, "{report:?}");
    assert!(report.r_in >= 0.40, "{report:?}");
    assert!(report.r_in <= report.r_out + report.bisection_tol);
    assert_eq!(report.meas_directions, 6);
}

#[test]
fn anchor_radius_is_vacuous_outside() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let anchor = anchor_state(&random_state(&mut rng));
    let params = RadiusParams { hidden_level: 1, ..RadiusParams::default() };
    let report = critical_radius_bounds(&anchor, &params).unwrap();
    assert_eq!(report.r_out, report.t_cap);
    assert!((report.r_in - report.eta_meas * report.t_cap).abs() < 1e-12);
}

#[test]
fn white_noise_family_is_refuted() {
    let family = TriFamilyState::new(BuiltinState::W.state().unwrap(), 0.0).unwrap();
    let params = RadiusParams { hidden_level: 1, bisection_tol: 1e-2, ..RadiusParams::default() };
    let report = one_way_report(&family, &params).unwrap();
    assert_eq!(report.verdict, Verdict::Refuted);
    assert_eq!(serde_json::to_value(report.verdict).unwrap(), "refuted");
    assert_eq!(serde_json::to_value(Verdict::Undetermined).unwrap(), "undetermined-at-this-resolution");
}
