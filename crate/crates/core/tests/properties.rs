use proptest::prelude::*;

use cyclic_steering::entanglement::{gte_criterion, negativity};
use cyclic_steering::lhs::{certify_unsteerable_shrunk, detect_steerable, psd_boundary, radial_mix, SpherePolytope};
use cyclic_steering::linalg::bloch::{normalized, qubit_state};
use cyclic_steering::linalg::{
    herm_eig, partial_trace, permute_subsystems, tensor, trace_norm, ComplexMatrix, DensityMatrix, Vec3, C64,
};
use cyclic_steering::search::{gap_objective, heaviside, nelder_mead, objective_scenario1, GapPenalty, NMParams};
use cyclic_steering::states::{
    build_family, cyclic_tensor_product, reduce_pair, shift_operator, PartyPair, PureState3Q,
};
use cyclic_steering::steering::{
    evaluate_functional, icosahedron_directions, lhs_bound, quantum_value, Assemblage, DichotomicSetting, Observable,
    SteeringFunctional,
};

fn unit() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

fn complex() -> impl Strategy<Value = C64> {
    (unit(), unit()).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |v| ComplexMatrix::new(n, n, v).unwrap())
}

/// Ginibre density matrix on `dims`.
fn state(dims: Vec<usize>) -> impl Strategy<Value = DensityMatrix> {
    let n: usize = dims.iter().product();
    matrix(n).prop_map(move |g| {
        let m = &g * &g.adjoint();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale(1.0 / tr), dims.clone()).unwrap()
    })
}

fn unitary(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n).prop_map(|g| herm_eig(&g.hermitian_part()).unwrap().vectors)
}

fn psi() -> impl Strategy<Value = PureState3Q> {
    prop::array::uniform8(complex())
        .prop_filter("nonzero", |a| a.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|a| PureState3Q::new(a).normalized().unwrap())
}

fn direction() -> impl Strategy<Value = Vec3> {
    [unit(), unit(), unit()]
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(normalized)
}

fn icosahedral() -> SteeringFunctional {
    SteeringFunctional::icosahedral()
}

fn pair_of(rho3: &DensityMatrix) -> DensityMatrix {
    reduce_pair(rho3, PartyPair::AB).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_composes(rho in state(vec![2, 2, 2])) {
        let stepwise = partial_trace(&partial_trace(&rho, &[0, 1]).unwrap(), &[0]).unwrap();
        let direct = partial_trace(&rho, &[0]).unwrap();
        prop_assert!(stepwise.matrix().max_abs_diff(direct.matrix()) <= 1e-12);
    }

    #[test]
    fn trace_norm_is_unitarily_invariant(g in matrix(4), u in unitary(4)) {
        let rotated = g.conjugate_by(&u);
        prop_assert!((trace_norm(&rotated) - trace_norm(&g)).abs() <= 1e-10);
    }

    #[test]
    fn tensor_is_associative(a in matrix(2), b in matrix(2), c in matrix(2)) {
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-15);
    }

    #[test]
    fn family_states_are_shift_invariant_states(psi1 in psi(), p in 0.0..=1.0f64) {
        let rho = build_family(&psi1, p).unwrap();
        prop_assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(rho.min_eigenvalue() >= -1e-12);
        prop_assert!(rho.matrix().conjugate_by(&shift_operator()).max_abs_diff(rho.matrix()) <= 1e-12);
        let ab = pair_of(&rho);
        for pair in [PartyPair::BC, PartyPair::CA] {
            prop_assert!(reduce_pair(&rho, pair).unwrap().matrix().max_abs_diff(ab.matrix()) <= 1e-12);
        }
    }

    #[test]
    fn swapping_a_pair_twice_is_the_identity(rho in state(vec![2, 2, 2])) {
        let ba = reduce_pair(&rho, PartyPair::BA).unwrap();
        let back = permute_subsystems(&ba, &[1, 0]).unwrap();
        prop_assert_eq!(back.matrix().max_abs_diff(pair_of(&rho).matrix()), 0.0);
    }

    #[test]
    fn cyclic_product_is_product_across_primed_cuts(
        ab in state(vec![2, 2]), bc in state(vec![2, 2]), ca in state(vec![2, 2]),
    ) {
        // order [A, A', B, B', C, C']; primed qubits belong to the other factors
        let ring = cyclic_tensor_product(&ab, &bc, &ca).unwrap();
        for (party, primed) in [(0, 1), (2, 3), (4, 5)] {
            let joint = partial_trace(&ring, &[party, primed]).unwrap();
            let product = partial_trace(&joint, &[0]).unwrap().tensor(&partial_trace(&joint, &[1]).unwrap());
            prop_assert!(joint.matrix().max_abs_diff(product.matrix()) <= 1e-12);
        }
        let a_prime = partial_trace(&ring, &[1]).unwrap();
        prop_assert!(a_prime.matrix().max_abs_diff(partial_trace(&ca, &[1]).unwrap().matrix()) <= 1e-12);
    }

    #[test]
    fn quantum_value_ignores_setting_signs(rho in state(vec![2, 2]), flips in prop::array::uniform6(any::<bool>())) {
        let settings: Vec<DichotomicSetting> = icosahedron_directions()
            .iter()
            .zip(flips)
            .map(|(d, f)| DichotomicSetting::new(if f { d.map(|x| -x) } else { *d }).unwrap())
            .collect();
        let flipped = quantum_value(&rho, &SteeringFunctional::new(settings)).unwrap().value;
        let plain = quantum_value(&rho, &icosahedral()).unwrap().value;
        prop_assert!((flipped - plain).abs() <= 1e-10);
    }

    #[test]
    fn quantum_value_is_maximal_and_closed(
        rho in state(vec![2, 2]),
        obs in prop::collection::vec((unit(), direction(), 0.0..=1.0f64), 6),
    ) {
        let functional = icosahedral();
        let q = quantum_value(&rho, &functional).unwrap();
        let explicit: Vec<Observable> = obs
            .iter()
            .map(|&(w, d, s)| {
                // |w| + |a| ≤ 1
                let w = w * (1.0 - s);
                Observable { identity: w, bloch: d.map(|x| x * s) }
            })
            .collect();
        let value = evaluate_functional(&Assemblage::from_observables(&rho, &explicit).unwrap(), &functional).unwrap();
        prop_assert!(value <= q.value + 1e-10);
        let closure = evaluate_functional(&Assemblage::from_observables(&rho, &q.observables).unwrap(), &functional).unwrap();
        prop_assert!((closure - q.value).abs() <= 1e-10);
    }

    #[test]
    fn lhs_bound_is_permutation_and_rotation_invariant(seed in any::<u64>(), u in unitary(2)) {
        let base = lhs_bound(&icosahedral()).unwrap().value;
        let mut dirs = icosahedron_directions().to_vec();
        let k = (seed % 6) as usize;
        dirs.rotate_left(k);
        dirs.swap(0, (seed / 6 % 6) as usize);
        // rotate the Bloch sphere by conjugating each observable with u
        let rotated: Vec<DichotomicSetting> = dirs
            .iter()
            .map(|&d| {
                let o = DichotomicSetting::new(d).unwrap().observable().conjugate_by(&u);
                DichotomicSetting::new(cyclic_steering::linalg::obs_to_bloch(&o)).unwrap()
            })
            .collect();
        let value = lhs_bound(&SteeringFunctional::new(rotated)).unwrap().value;
        prop_assert!((value - base).abs() <= 1e-9);
    }

    #[test]
    fn product_states_never_violate(a in direction(), b in direction(), ra in 0.0..=1.0f64, rb in 0.0..=1.0f64) {
        let rho_a = DensityMatrix::new(qubit_state(a.map(|x| x * ra)), vec![2]).unwrap();
        let rho_b = DensityMatrix::new(qubit_state(b.map(|x| x * rb)), vec![2]).unwrap();
        let l = lhs_bound(&icosahedral()).unwrap().value;
        prop_assert!(quantum_value(&rho_a.tensor(&rho_b), &icosahedral()).unwrap().value <= l + 1e-10);
    }

    #[test]
    fn negativity_is_local_unitary_invariant(rho in state(vec![2, 2]), ua in unitary(2), ub in unitary(2)) {
        let rotated = rho.conjugate_by(&ua.kron(&ub));
        prop_assert!((negativity(&rotated, &[0]).unwrap() - negativity(&rho, &[0]).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn negativity_shrinks_towards_the_anchor(rho in state(vec![2, 2])) {
        let cap = psd_boundary(&rho, 1.0).unwrap();
        let values: Vec<f64> = (0..=8)
            .map(|i| negativity(&radial_mix(&rho, cap * i as f64 / 8.0).unwrap().valid().unwrap(), &[0]).unwrap())
            .collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1] + 1e-12), "{:?}", values);
    }

    #[test]
    fn gs_verdict_survives_a_basis_round_trip(psi1 in psi(), p in 0.0..=1.0f64) {
        let rho = build_family(&psi1, p).unwrap();
        let there = permute_subsystems(&rho, &[1, 2, 0]).unwrap();
        let back = permute_subsystems(&there, &[2, 0, 1]).unwrap();
        prop_assert_eq!(gte_criterion(&back).unwrap().detected, gte_criterion(&rho).unwrap().detected);
    }

    #[test]
    fn gap_penalties_vanish_exactly_on_the_feasible_region(r1 in 0.0..2.0f64, r2 in 0.0..2.0f64) {
        for p in [GapPenalty::BALANCED, GapPenalty::ASYMMETRIC] {
            let penalty = (r2 - r1) - gap_objective(r1, r2, p);
            if r1 <= 1.0 && r2 >= 1.0 {
                prop_assert_eq!(penalty, 0.0);
            } else {
                prop_assert!(penalty > 0.0);
            }
        }
        prop_assert_eq!(heaviside(0.0), 0.0);
    }

    #[test]
    fn scenario1_objective_ignores_global_sign(c in prop::array::uniform7(unit())) {
        prop_assume!(c.iter().any(|x| x.abs() > 1e-2));
        let neg = c.map(|x| -x);
        prop_assert!((objective_scenario1(&c).unwrap() - objective_scenario1(&neg).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn nelder_mead_keeps_its_best_point(x0 in prop::array::uniform3(-2.0..2.0f64), steps in 0usize..60) {
        let f = |x: &[f64]| (2.0 * x[0]).sin() + (x[1] * x[2]).cos() - 0.1 * x[0] * x[0];
        let r = nelder_mead(f, &x0, &NMParams { max_iterations: steps, ..NMParams::default() });
        prop_assert!(r.value >= f(&x0));
        prop_assert_eq!(f(&r.x), r.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lp_certificates_are_monotone_and_consistent(rho in state(vec![2, 2])) {
        let meas = SpherePolytope::new(0);
        let hidden = SpherePolytope::new(1);
        let dirs = meas.directions();
        let cap = psd_boundary(&rho, 2.0).unwrap();
        let mut certified = Vec::new();
        let mut detected = Vec::new();
        for i in 0..=4 {
            let t = cap * i as f64 / 4.0;
            let mixed = radial_mix(&rho, t).unwrap().valid().unwrap();
            certified.push(certify_unsteerable_shrunk(&mixed, &meas, &hidden).unwrap());
            detected.push(detect_steerable(&mixed, &dirs, &hidden).unwrap().steerable);
        }
        // feasibility only ever switches off, detection only ever switches on
        prop_assert!(certified.windows(2).all(|w| w[0] || !w[1]), "{:?}", certified);
        prop_assert!(detected.windows(2).all(|w| !w[0] || w[1]), "{:?}", detected);
        // a certificate at t covers every t' ≤ η t
        for (i, &c) in certified.iter().enumerate() {
            for (j, &d) in detected.iter().enumerate() {
                if c && d {
                    prop_assert!((j as f64) > meas.eta() * i as f64);
                }
            }
        }
    }

    #[test]
    fn finer_polytopes_only_help(rho in state(vec![2, 2])) {
        let meas = SpherePolytope::new(0);
        let fine_meas = SpherePolytope::new(1);
        let t = 0.9 * psd_boundary(&rho, 2.0).unwrap();
        let mixed = radial_mix(&rho, t).unwrap().valid().unwrap();
        let coarse = certify_unsteerable_shrunk(&mixed, &meas, &SpherePolytope::new(0)).unwrap();
        let fine = certify_unsteerable_shrunk(&mixed, &meas, &SpherePolytope::new(2)).unwrap();
        prop_assert!(!coarse || fine);
        let hidden = SpherePolytope::new(2);
        let few = detect_steerable(&mixed, &meas.directions(), &hidden).unwrap().steerable;
        let many = detect_steerable(&mixed, &fine_meas.directions(), &hidden).unwrap().steerable;
        prop_assert!(!few || many);
    }
}
