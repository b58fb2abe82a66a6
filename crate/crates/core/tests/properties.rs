use ident_entangle::dynamics::{average_entanglement, evolve, project_state, two_particle_spectrum, HoppingModel, HoppingSign, SpectrumOptions};
use ident_entangle::fock::{read_state, schmidt_decompose, write_state, Species, TwoParticleState};
use ident_entangle::models::{bose_average_closed_form, hubbard_cross_trace, hubbard_eigenstate, HubbardRing, InfiniteRangeBoseModel};
use ident_entangle::random::{random_antisymmetric, random_hermitian, random_state, random_symmetric, random_unitary};
use ident_entangle::{
    antisym_canonical, canonical_spectrum, frobenius_distance, hermitian_eig, is_unitary, takagi, Matrix, Parity,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn species() -> impl Strategy<Value = Species> {
    prop_oneof![Just(Species::Boson), Just(Species::Fermion)]
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hermitian_eig_contract(seed in any::<u64>(), n in 1usize..=40) {
        let mut r = rng(seed);
        let h: Matrix = random_hermitian(&mut r, n);
        let eig = hermitian_eig(&h).unwrap();
        let norm = h.frobenius_norm();
        prop_assert!(frobenius_distance(&eig.reconstruct(), &h).unwrap() <= 1e-10 * norm);
        prop_assert!(is_unitary(&eig.eigenvectors, 1e-10).unwrap());
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((trace - h.trace().re).abs() <= 1e-10 * norm);
        let w = random_unitary(&mut r, n);
        let rotated = hermitian_eig(&w.adjoint().matmul(&h).matmul(&w)).unwrap();
        prop_assert!(max_diff(&rotated.eigenvalues, &eig.eigenvalues) <= 1e-10 * norm.max(1.0));
    }

    #[test]
    fn takagi_contract(seed in any::<u64>(), n in 1usize..=24) {
        let mut r = rng(seed);
        let m: Matrix = random_symmetric(&mut r, n);
        let t = takagi(&m).unwrap();
        prop_assert!(is_unitary(&t.u, 1e-10).unwrap());
        prop_assert!(frobenius_distance(&t.reconstruct(), &m).unwrap() <= 1e-10 * m.frobenius_norm());
        prop_assert!(t.d.windows(2).all(|w| w[0] >= w[1]));
        let p = canonical_spectrum(&m, Parity::Symmetric).unwrap();
        let d2: Vec<f64> = t.d.iter().map(|d| d * d).collect();
        prop_assert!(max_diff(&d2, &p) <= 1e-10 * m.norm_sqr());
        // largest entry of each row of U has positive real part
        for row in 0..n {
            let big = t.u.row(row).iter().fold(t.u.row(row)[0], |b, z| if z.norm() > b.norm() + 1e-12 { *z } else { b });
            prop_assert!(big.re > 0.0 || t.d[row] == 0.0);
        }
    }

    #[test]
    fn antisym_contract(seed in any::<u64>(), n in 1usize..=24) {
        let mut r = rng(seed);
        let m: Matrix = random_antisymmetric(&mut r, n);
        let a = antisym_canonical(&m).unwrap();
        prop_assert!(is_unitary(&a.u, 1e-10).unwrap());
        prop_assert!(frobenius_distance(&a.reconstruct(), &m).unwrap() <= 1e-10 * m.frobenius_norm().max(1e-300));
        prop_assert_eq!(2 * a.blocks.len() + a.null_dim, n);
        if n % 2 == 1 {
            prop_assert!(a.null_dim >= 1);
        }
        prop_assert!(a.blocks.windows(2).all(|w| w[0] >= w[1]));
        let p = canonical_spectrum(&m, Parity::Antisymmetric).unwrap();
        for j in 0..n / 2 {
            prop_assert!((p[2 * j] - p[2 * j + 1]).abs() <= 1e-10 * m.norm_sqr());
        }
        let s2: Vec<f64> = a.singular_values().iter().map(|s| s * s).collect();
        prop_assert!(max_diff(&s2, &p) <= 1e-10 * m.norm_sqr());
    }

    #[test]
    fn spectrum_is_congruence_invariant(seed in any::<u64>(), n in 2usize..=16, sp in species()) {
        let mut r = rng(seed);
        let m: Matrix = match sp {
            Species::Boson => random_symmetric(&mut r, n),
            Species::Fermion => random_antisymmetric(&mut r, n),
        };
        let w = random_unitary(&mut r, n);
        let moved = w.transpose().matmul(&m).matmul(&w);
        let a = canonical_spectrum(&m, sp.parity()).unwrap();
        let b = canonical_spectrum(&moved, sp.parity()).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-10 * m.norm_sqr());
    }

    #[test]
    fn entropy_paths_agree(seed in any::<u64>(), n in 2usize..=32, sp in species()) {
        let mut r = rng(seed);
        let psi: TwoParticleState<f64> = random_state(&mut r, sp, n);
        let d = schmidt_decompose(&psi).unwrap();
        let total: f64 = d.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        prop_assert!(d.probabilities.iter().all(|&p| p >= 0.0));
        prop_assert!((psi.linear_entropy() - d.linear_entropy().unwrap()).abs() <= 1e-10);
        prop_assert!(frobenius_distance(&d.reconstruct(), psi.lambda()).unwrap() <= 1e-10);
        if sp == Species::Fermion {
            prop_assert_eq!(d.support() % 2, 0);
        }
    }

    #[test]
    fn reduced_densities_contract(seed in any::<u64>(), n in 2usize..=12, sp in species()) {
        let mut r = rng(seed);
        let psi: TwoParticleState<f64> = random_state(&mut r, sp, n);
        let d = schmidt_decompose(&psi).unwrap();
        let (sigma, tau) = d.reduced_densities();
        for rho in [&sigma, &tau] {
            prop_assert!((rho.trace() - 1.0).abs() <= 1e-10);
            prop_assert!(frobenius_distance(&rho.rho.adjoint(), &rho.rho).unwrap() <= 1e-12);
            prop_assert!(rho.eigenvalues().unwrap().iter().all(|&x| x >= 0.0));
        }
        prop_assert!((sigma.von_neumann_entropy().unwrap() - tau.von_neumann_entropy().unwrap()).abs() <= 1e-10);
        let eig = sigma.eigenvalues().unwrap();
        let expect: Vec<f64> = match sp {
            Species::Boson => d.probabilities.clone(),
            Species::Fermion => {
                let mut v: Vec<f64> = (0..n / 2).map(|j| 2.0 * d.probabilities[2 * j]).collect();
                v.resize(n, 0.0);
                v
            }
        };
        prop_assert!(max_diff(&eig, &expect) <= 1e-10);
        // σ reproduces the partial trace ΛΛ† for bosons, and on average for fermions
        let llh = psi.lambda().matmul(&psi.lambda().adjoint());
        let avg = (&sigma.rho + &tau.rho).scale_real(0.5);
        prop_assert!(frobenius_distance(&avg, &llh).unwrap() <= 1e-10);
    }

    #[test]
    fn entropies_are_basis_covariant(seed in any::<u64>(), n in 2usize..=12, sp in species()) {
        let mut r = rng(seed);
        let psi: TwoParticleState<f64> = random_state(&mut r, sp, n);
        let w = random_unitary(&mut r, n);
        let moved = TwoParticleState::new(sp, w.transpose().matmul(psi.lambda()).matmul(&w)).unwrap();
        prop_assert!((psi.linear_entropy() - moved.linear_entropy()).abs() <= 1e-10);
        prop_assert!((psi.von_neumann_entropy().unwrap() - moved.von_neumann_entropy().unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn state_file_round_trip(seed in any::<u64>(), n in 2usize..=10, sp in species()) {
        let mut r = rng(seed);
        let psi: TwoParticleState<f64> = random_state(&mut r, sp, n);
        let back: TwoParticleState<f64> = read_state(&write_state(&psi)).unwrap();
        prop_assert!(frobenius_distance(back.lambda(), psi.lambda()).unwrap() <= 1e-15);
        prop_assert_eq!(back.species(), sp);
    }

    #[test]
    fn dynamics_invariants(seed in any::<u64>(), n in 2usize..=8, sp in species(), t in -20.0f64..20.0) {
        let mut r = rng(seed);
        let model = HoppingModel::new(random_hermitian::<f64, _>(&mut r, n), HoppingSign::Minus).unwrap();
        let spec = two_particle_spectrum(&model, sp, SpectrumOptions::degenerate()).unwrap();
        let psi = random_state(&mut r, sp, n);
        let report = average_entanglement(&psi, &spec).unwrap();
        prop_assert!((report.avg_e1 - (report.s1_sigma + report.s1_tau - report.delta)).abs() <= 1e-12);
        prop_assert!((report.s1_sigma - report.s1_tau).abs() <= 1e-10);
        prop_assert!(report.avg_e1 >= 0.0 && report.avg_e1 < 1.0);
        if sp == Species::Fermion {
            prop_assert!(report.avg_e1 >= 0.5 - 1e-12);
        }
        let moved = evolve(&psi, &spec, t).unwrap();
        prop_assert!((moved.lambda().norm_sqr() - 1.0).abs() <= 1e-10);
        let again = average_entanglement(&moved, &spec).unwrap();
        prop_assert!((again.avg_e1 - report.avg_e1).abs() <= 1e-10);
        let proj = project_state(&psi, &spec).unwrap();
        let sum = proj.components.iter().fold(Matrix::zeros(n, n), |acc, c| &acc + &c.state.lambda().scale_real(c.weight.sqrt()));
        prop_assert!(frobenius_distance(&sum, psi.lambda()).unwrap() <= 1e-10);
        let total: f64 = proj.components.iter().map(|c| c.weight).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn hubbard_eigen_relation(n in 3usize..=16, r in 1usize..=16, s in 1usize..=16) {
        prop_assume!(r <= n && s <= n && r != s);
        let ring = HubbardRing::new(n).unwrap();
        let t = ring.hopping::<f64>();
        let psi = hubbard_eigenstate::<f64>(n, r, s).unwrap();
        let l = psi.lambda();
        let e = ring.energy::<f64>(r, s).unwrap();
        let res = &(&t.matmul(l) + &l.matmul(&t)) + &l.scale_real(e);
        prop_assert!(res.frobenius_norm() <= 1e-12);
        let a = antisym_canonical(l).unwrap();
        prop_assert_eq!(a.blocks.len(), 1);
        prop_assert!((a.blocks[0] - 0.5f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn hubbard_cross_trace_identity(n in 3usize..=10, idx in prop::array::uniform4(1usize..=10)) {
        let [r, s, rp, sp] = idx;
        prop_assume!(r <= n && s <= n && rp <= n && sp <= n && r != s && rp != sp);
        let ct = hubbard_cross_trace::<f64>(n, (r, s), (rp, sp)).unwrap();
        prop_assert!((ct.closed_form - ct.direct).abs() <= 1e-12);
    }

    #[test]
    fn bose_engine_matches_closed_form(n in 3usize..=24, eps in 0.01f64..0.3) {
        let model = InfiniteRangeBoseModel::new(n, eps).unwrap();
        let spec = model.spectrum(SpectrumOptions::degenerate()).unwrap();
        let report = average_entanglement(&model.initial_state(), &spec).unwrap();
        let f = bose_average_closed_form::<f64>(n).unwrap();
        prop_assert_eq!(report.weights.len(), 3);
        prop_assert!((report.avg_e1 - f.avg_e1).abs() <= 1e-10);
        prop_assert!((report.delta - f.delta).abs() <= 1e-10);
    }
}
