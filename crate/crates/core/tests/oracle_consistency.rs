//! Dense-oracle checks that do not go through the capacity formulas.

use metrocap::capacity::{capacity, su2_closed_form, su_capacity};
use metrocap::oracle::{
    bn1_state_su2, bs4_state, empirical_mi, isotypic_weights, mp_twirl, mp_twirl_grid, noon_state,
    su2_schur_basis, Dims, PureState, C64,
};
use metrocap::rep_core::decompose;
use metrocap::{Model, Natural, RefDim};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_state(rng: &mut ChaCha8Rng, dims: Dims) -> PureState {
    let v = DVector::<C64>::from_fn(dims.total(), |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = v.norm();
    PureState::new(v / C64::from(norm), dims).unwrap()
}

#[test]
fn random_inputs_never_beat_capacity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cases: [(Model, u64, usize, usize); 6] = [
        (Model::MultiPhase, 3, 2, 1),
        (Model::MultiPhase, 5, 2, 1),
        (Model::MultiPhase, 3, 3, 1),
        (Model::SpecialUnitary, 2, 2, 1),
        (Model::SpecialUnitary, 4, 2, 2),
        (Model::SpecialUnitary, 5, 2, 1),
    ];
    for (model, n, t, r) in cases {
        let decomp = decompose(model, n, t, RefDim::Finite(r as u64)).unwrap();
        let cap = capacity::<f64>(&decomp).value;
        let dims = Dims::new(n, t, r).unwrap();
        for _ in 0..50 {
            let psi = random_state(&mut rng, dims);
            let mi = empirical_mi(&psi, model, n, t).unwrap();
            assert!(mi <= cap + 1e-9, "{model} n={n} t={t} l={r}: {mi} > {cap}");
        }
    }
}

#[test]
fn twirl_grid_is_already_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, t) in [(3u64, 2usize), (4, 2), (2, 3)] {
        let rho = random_state(&mut rng, Dims::new(n, t, 2).unwrap()).projector();
        let a = mp_twirl_grid(&rho, n, t, n + 1).unwrap();
        let b = mp_twirl_grid(&rho, n, t, n + 2).unwrap();
        assert!((a.matrix() - b.matrix()).camax() < 1e-12);
        let c = mp_twirl(&rho, n, t).unwrap();
        assert_eq!(a.matrix(), c.matrix());
    }
}

#[test]
fn optimal_su2_state_has_dimension_weights() {
    for n in 1..=6u64 {
        let basis = su2_schur_basis(n).unwrap();
        let weights = isotypic_weights(&basis, &bn1_state_su2(n).unwrap()).unwrap();
        let total = su2_closed_form(n);
        let total = total.to_string().parse::<f64>().unwrap();
        for (lambda, w) in weights {
            let d = (lambda.rows()[0] - lambda.rows()[1] + 1) as f64;
            assert!((w - d * d / total).abs() < 1e-10, "n={n} {lambda}: {w}");
        }
    }
}

#[test]
fn named_states_overlap() {
    // bs4 and NOON share the all-zero and all-one strings.
    for n in 1..=6u64 {
        let overlap = bs4_state(n)
            .unwrap()
            .inner(&noon_state(n).unwrap())
            .norm_sqr();
        let want = if n == 1 { 1.0 } else { 2.0 / (n as f64 + 1.0) };
        assert!((overlap - want).abs() < 1e-12, "n={n}: {overlap}");
    }
}

#[test]
fn closed_form_is_one_cubic() {
    for n in 1..=1000u64 {
        let cubic = Natural::from((n + 1) * (n + 2) * (n + 3) / 6);
        assert_eq!(su2_closed_form(n), cubic);
    }
    for n in [1u64, 10, 100, 1000] {
        let want = (((n + 1) * (n + 2) * (n + 3)) as f64 / 6.0).ln();
        assert!((su_capacity::<f64>(n, 2).unwrap() - want).abs() < 1e-12);
    }
}
