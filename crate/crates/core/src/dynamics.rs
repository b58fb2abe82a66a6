//! Two-particle spectra of quadratic hopping Hamiltonians, time evolution and
//! the phase-ensemble average of the linear entropy.
//!
//! Every two-particle eigenvector of `H = sign·Σ t_jk b†_j b_k` is a
//! (anti)symmetrized product of one-particle eigenvectors, so all work happens
//! in eigen coordinates `c = V† Λ V̄`, where `V` holds the one-particle modes as
//! columns. In these coordinates a level projector is a mask on the entries of
//! `c` and evolution multiplies each entry by a phase.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::fock::{Species, TwoParticleState};
use crate::matrix::{is_unitary, ComplexMatrix, Symmetry};
use crate::scalar::{c, Real, C};

/// Weight below which a projected component is treated as empty.
pub const P_FLOOR: f64 = 1e-14;

/// Relative degeneracy threshold used when no override is given.
pub const GROUP_REL_TOL: f64 = 1e-8;

const MC_CHUNK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoppingSign {
    /// `H = −Σ t_jk b†_j b_k`
    Minus,
    /// `H = +Σ t_jk b†_j b_k`
    Plus,
}

impl HoppingSign {
    pub fn value<T: Real>(self) -> T {
        match self {
            HoppingSign::Minus => -T::one(),
            HoppingSign::Plus => T::one(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HoppingModel<T> {
    hopping: ComplexMatrix<T>,
    sign: HoppingSign,
}

impl<T: Real> HoppingModel<T> {
    pub fn new(hopping: ComplexMatrix<T>, sign: HoppingSign) -> Result<Self> {
        let hopping = hopping.project_symmetry(Symmetry::Hermitian, T::structure_tol())?;
        Ok(Self { hopping, sign })
    }

    pub fn dim(&self) -> usize {
        self.hopping.rows()
    }

    pub fn hopping(&self) -> &ComplexMatrix<T> {
        &self.hopping
    }

    pub fn sign(&self) -> HoppingSign {
        self.sign
    }

    /// `h = sign·t`; the two-particle Hamiltonian acts as `Λ ↦ hΛ + Λhᵀ`.
    pub fn one_particle_hamiltonian(&self) -> ComplexMatrix<T> {
        self.hopping.scale_real(self.sign.value())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SpectrumOptions<T> {
    /// Give every product mode its own level even when energies coincide.
    pub nondegenerate: bool,
    /// Absolute grouping threshold replacing the relative default.
    pub group_tol: Option<T>,
}

impl<T: Real> SpectrumOptions<T> {
    pub fn degenerate() -> Self {
        Self { nondegenerate: false, group_tol: None }
    }

    pub fn nondegenerate() -> Self {
        Self { nondegenerate: true, group_tol: None }
    }
}

#[derive(Clone, Debug)]
pub struct Level<T> {
    pub energy: T,
    /// Product modes `(a, b)` spanning the level, `a < b` for fermions and
    /// `a ≤ b` for bosons.
    pub modes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition<T> {
    species: Species,
    basis: ComplexMatrix<T>,
    one_particle: Vec<T>,
    levels: Vec<Level<T>>,
    level_of: Vec<Option<usize>>,
}

/// Spectrum with the one-particle modes taken from a Hermitian eigensolve.
pub fn two_particle_spectrum<T: Real>(
    model: &HoppingModel<T>,
    species: Species,
    opts: SpectrumOptions<T>,
) -> Result<SpectralDecomposition<T>> {
    let eig = hermitian_eig(&model.one_particle_hamiltonian())?;
    two_particle_spectrum_with_basis(model, species, eig.eigenvectors, opts)
}

/// Spectrum over a caller-chosen one-particle eigenbasis (columns of
/// `basis`). Within a degenerate one-particle level the choice of basis
/// matters in nondegenerate mode.
pub fn two_particle_spectrum_with_basis<T: Real>(
    model: &HoppingModel<T>,
    species: Species,
    basis: ComplexMatrix<T>,
    opts: SpectrumOptions<T>,
) -> Result<SpectralDecomposition<T>> {
    let n = model.dim();
    if basis.shape() != (n, n) {
        return Err(Error::ShapeMismatch { left: basis.shape(), right: (n, n) });
    }
    if species == Species::Fermion && n < 2 {
        return Err(Error::InvalidArgument("fermion pairs need at least two modes".into()));
    }
    if !is_unitary(&basis, T::structure_tol())? {
        return Err(Error::Incompatible("one-particle basis is not unitary".into()));
    }
    let h = model.one_particle_hamiltonian();
    let hv = h.matmul(&basis);
    let one_particle: Vec<T> = (0..n)
        .map(|a| (0..n).fold(T::zero(), |s, i| s + (basis[(i, a)].conj() * hv[(i, a)]).re))
        .collect();
    let residual = ComplexMatrix::from_fn(n, n, |i, a| hv[(i, a)] - basis[(i, a)] * one_particle[a]);
    let scale = h.frobenius_norm().max(T::one());
    if residual.frobenius_norm() > T::structure_tol() * scale {
        return Err(Error::Incompatible(format!(
            "basis does not diagonalize the hopping matrix (residual {:e})",
            residual.frobenius_norm()
        )));
    }

    let mut modes: Vec<(T, usize, usize)> = Vec::new();
    for a in 0..n {
        let start = if species == Species::Fermion { a + 1 } else { a };
        for b in start..n {
            modes.push((one_particle[a] + one_particle[b], a, b));
        }
    }
    modes.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut levels: Vec<Level<T>> = Vec::new();
    if opts.nondegenerate {
        levels.extend(modes.iter().map(|&(e, a, b)| Level { energy: e, modes: vec![(a, b)] }));
    } else {
        let lo = modes.first().map_or(T::zero(), |m| m.0);
        let hi = modes.last().map_or(T::zero(), |m| m.0);
        let delta = opts
            .group_tol
            .unwrap_or_else(|| T::lit(GROUP_REL_TOL) * (hi - lo).max(lo.abs()).max(hi.abs()));
        let mut prev = T::neg_infinity();
        let mut sums: Vec<T> = Vec::new();
        for &(e, a, b) in &modes {
            if levels.is_empty() || e - prev > delta {
                levels.push(Level { energy: e, modes: Vec::new() });
                sums.push(T::zero());
            }
            levels.last_mut().unwrap().modes.push((a, b));
            *sums.last_mut().unwrap() = *sums.last().unwrap() + e;
            prev = e;
        }
        for (level, s) in levels.iter_mut().zip(sums) {
            level.energy = s / T::from_count(level.modes.len());
        }
    }

    let mut level_of = vec![None; n * n];
    for (k, level) in levels.iter().enumerate() {
        for &(a, b) in &level.modes {
            level_of[a * n + b] = Some(k);
            level_of[b * n + a] = Some(k);
        }
    }
    Ok(SpectralDecomposition { species, basis, one_particle, levels, level_of })
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn species(&self) -> Species {
        self.species
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// One-particle modes as columns.
    pub fn basis(&self) -> &ComplexMatrix<T> {
        &self.basis
    }

    /// Eigenvalues of `h`, aligned with the basis columns.
    pub fn one_particle_energies(&self) -> &[T] {
        &self.one_particle
    }

    pub fn levels(&self) -> &[Level<T>] {
        &self.levels
    }

    pub fn energies(&self) -> Vec<T> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    /// Level containing product mode `(a, b)`.
    pub fn level_of(&self, a: usize, b: usize) -> Option<usize> {
        self.level_of[a * self.dim() + b]
    }

    /// `c = V† Λ V̄`.
    pub fn to_coordinates(&self, lambda: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.basis.adjoint().matmul(lambda).matmul(&self.basis.conj())
    }

    /// `Λ = V c Vᵀ`.
    pub fn from_coordinates(&self, coords: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.basis.matmul(coords).matmul(&self.basis.transpose())
    }

    fn check(&self, state: &TwoParticleState<T>) -> Result<()> {
        if state.species() != self.species {
            return Err(Error::Incompatible(format!(
                "{} state against a {} spectrum",
                state.species(),
                self.species
            )));
        }
        if state.dim() != self.dim() {
            return Err(Error::Incompatible(format!(
                "state dimension {} against spectrum dimension {}",
                state.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn mask(&self, coords: &ComplexMatrix<T>, level: usize) -> ComplexMatrix<T> {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |a, b| {
            if self.level_of[a * n + b] == Some(level) {
                coords[(a, b)]
            } else {
                C::new(T::zero(), T::zero())
            }
        })
    }

    fn level_weights(&self, coords: &ComplexMatrix<T>) -> Vec<T> {
        let n = self.dim();
        let mut w = vec![T::zero(); self.levels.len()];
        for a in 0..n {
            for b in 0..n {
                if let Some(k) = self.level_of[a * n + b] {
                    w[k] = w[k] + coords[(a, b)].norm_sqr();
                }
            }
        }
        w
    }

    /// Applies `F_level` to `Λ`.
    pub fn project(&self, lambda: &ComplexMatrix<T>, level: usize) -> ComplexMatrix<T> {
        self.from_coordinates(&self.mask(&self.to_coordinates(lambda), level))
    }

    /// `F_level` as an `N²×N²` matrix on row-major `vec(Λ)`, composed with the
    /// (anti)symmetrizer so that the projectors sum to the identity on the
    /// species sector. Costs `O(N⁵)`; meant for small `N`.
    pub fn projector(&self, level: usize) -> ComplexMatrix<T> {
        let n = self.dim();
        let sign = match self.species {
            Species::Boson => T::one(),
            Species::Fermion => -T::one(),
        };
        let half = T::lit(0.5);
        let mut f = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = ComplexMatrix::zeros(n, n);
                e[(i, j)] = e[(i, j)] + c(half, T::zero());
                e[(j, i)] = e[(j, i)] + c(half * sign, T::zero());
                let col = self.project(&e, level);
                for a in 0..n {
                    for b in 0..n {
                        f[(a * n + b, i * n + j)] = col[(a, b)];
                    }
                }
            }
        }
        f
    }
}

#[derive(Clone, Debug)]
pub struct Component<T> {
    pub level: usize,
    pub energy: T,
    /// `p_n = ‖F_n ψ‖²`, renormalized over the kept components.
    pub weight: T,
    /// `F_n ψ / ‖F_n ψ‖`.
    pub state: TwoParticleState<T>,
}

#[derive(Clone, Debug)]
pub struct Projection<T> {
    pub components: Vec<Component<T>>,
    /// Total weight of levels below the floor, removed before renormalizing.
    pub discarded: T,
}

struct Split<T> {
    coords: ComplexMatrix<T>,
    weights: Vec<T>,
    kept: Vec<usize>,
    discarded: T,
}

impl<T: Real> SpectralDecomposition<T> {
    fn split(&self, state: &TwoParticleState<T>) -> Result<Split<T>> {
        self.check(state)?;
        let coords = self.to_coordinates(state.lambda());
        let weights = self.level_weights(&coords);
        let floor = T::lit(P_FLOOR);
        let kept: Vec<usize> = (0..weights.len()).filter(|&k| weights[k] >= floor).collect();
        if kept.is_empty() {
            return Err(Error::InvalidState("state has no weight on any level".into()));
        }
        let total = weights.iter().fold(T::zero(), |s, &w| s + w);
        let kept_total = kept.iter().fold(T::zero(), |s, &k| s + weights[k]);
        Ok(Split { coords, weights, kept, discarded: total - kept_total })
    }
}

/// `ψ = Σ √p_n ψ′_n` over the levels of `spec`.
pub fn project_state<T: Real>(
    state: &TwoParticleState<T>,
    spec: &SpectralDecomposition<T>,
) -> Result<Projection<T>> {
    let split = spec.split(state)?;
    let kept_total = split.kept.iter().fold(T::zero(), |s, &k| s + split.weights[k]);
    let components = split
        .kept
        .iter()
        .map(|&k| {
            let lambda = spec.from_coordinates(&spec.mask(&split.coords, k));
            Ok(Component {
                level: k,
                energy: spec.levels[k].energy,
                weight: split.weights[k] / kept_total,
                state: TwoParticleState::normalized(spec.species, lambda)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Projection { components, discarded: split.discarded })
}

/// `e^{−iHt} ψ`, one phase `e^{−iE_n t}` per level.
pub fn evolve<T: Real>(
    state: &TwoParticleState<T>,
    spec: &SpectralDecomposition<T>,
    time: T,
) -> Result<TwoParticleState<T>> {
    spec.check(state)?;
    let coords = spec.to_coordinates(state.lambda());
    let evolved = phase_coordinates(spec, &coords, &level_phases(spec, time));
    TwoParticleState::normalized(spec.species, spec.from_coordinates(&evolved))
}

fn level_phases<T: Real>(spec: &SpectralDecomposition<T>, time: T) -> Vec<C<T>> {
    spec.levels
        .iter()
        .map(|l| C::from_polar(T::one(), -l.energy * time))
        .collect()
}

fn phase_coordinates<T: Real>(
    spec: &SpectralDecomposition<T>,
    coords: &ComplexMatrix<T>,
    phases: &[C<T>],
) -> ComplexMatrix<T> {
    let n = spec.dim();
    ComplexMatrix::from_fn(n, n, |a, b| match spec.level_of[a * n + b] {
        Some(k) => coords[(a, b)] * phases[k],
        None => C::new(T::zero(), T::zero()),
    })
}

/// `1 − Tr(c†c)²`, valid in eigen coordinates because `V` is unitary.
fn coords_linear_entropy<T: Real>(coords: &ComplexMatrix<T>) -> T {
    T::one() - coords.adjoint().matmul(coords).norm_sqr()
}

/// `E₁` of the evolved state at each time.
pub fn e1_trajectory<T: Real>(
    state: &TwoParticleState<T>,
    spec: &SpectralDecomposition<T>,
    times: &[T],
) -> Result<Vec<(T, T)>> {
    spec.check(state)?;
    let coords = spec.to_coordinates(state.lambda());
    Ok(times
        .iter()
        .map(|&t| (t, coords_linear_entropy(&phase_coordinates(spec, &coords, &level_phases(spec, t)))))
        .collect())
}

#[derive(Clone, Debug)]
pub struct AverageReport<T> {
    pub avg_e1: T,
    pub s1_sigma: T,
    pub s1_tau: T,
    pub delta: T,
    /// `(E_n, p_n)` for each kept level, ascending in energy.
    pub weights: Vec<(T, T)>,
    pub discarded: T,
}

/// Phase-ensemble average of `E₁`: `S₁(σ) + S₁(τ) − Δ` with
/// `σ = Σ p_n Λ_n†Λ_n`, `τ = Σ p_n Λ_nΛ_n†` and `Δ = 1 − Σ p_n² Tr(Λ_n†Λ_n)²`.
pub fn average_entanglement<T: Real>(
    state: &TwoParticleState<T>,
    spec: &SpectralDecomposition<T>,
) -> Result<AverageReport<T>> {
    let split = spec.split(state)?;
    let n = spec.dim();
    let kept_total = split.kept.iter().fold(T::zero(), |s, &k| s + split.weights[k]);
    let mut sigma = ComplexMatrix::zeros(n, n);
    let mut tau = ComplexMatrix::zeros(n, n);
    let mut sum_sq = T::zero();
    for &k in &split.kept {
        // p_n Λ_n†Λ_n with Λ_n normalized is the raw masked product over the kept weight
        let part = spec.mask(&split.coords, k).scale_real(T::one() / kept_total.sqrt());
        let g = part.adjoint().matmul(&part);
        sum_sq = sum_sq + g.norm_sqr();
        sigma = &sigma + &g;
        tau = &tau + &part.matmul(&part.adjoint());
    }
    let s1_sigma = T::one() - sigma.norm_sqr();
    let s1_tau = T::one() - tau.norm_sqr();
    let delta = T::one() - sum_sq;
    Ok(AverageReport {
        avg_e1: s1_sigma + s1_tau - delta,
        s1_sigma,
        s1_tau,
        delta,
        weights: split
            .kept
            .iter()
            .map(|&k| (spec.levels[k].energy, split.weights[k] / kept_total))
            .collect(),
        discarded: split.discarded,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct MonteCarloEstimate<T> {
    pub mean: T,
    /// Sample standard deviation over `√samples`; zero for a single sample.
    pub stderr: T,
    pub samples: usize,
}

#[derive(Clone, Copy)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n / n,
            m2: self.m2 + o.m2 + d * d * self.n * o.n / n,
        }
    }
}

/// Estimates the phase-ensemble average by sampling independent uniform
/// phases per level. The phase of the first kept level is fixed, since a
/// global phase does not change `E₁`. Samples are drawn in fixed chunks, each
/// from its own ChaCha8 stream of `seed`, so results do not depend on the
/// thread count.
pub fn monte_carlo_phase_average<T: Real>(
    state: &TwoParticleState<T>,
    spec: &SpectralDecomposition<T>,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate<T>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let split = spec.split(state)?;
    let kept_total = split.kept.iter().fold(T::zero(), |s, &k| s + split.weights[k]);
    let coords = split.coords.scale_real(T::one() / kept_total.sqrt());
    let chunks = samples.div_ceil(MC_CHUNK);
    let two_pi = T::lit(std::f64::consts::TAU);

    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            let mut m = Moments { n: 0.0, mean: 0.0, m2: 0.0 };
            let mut phases = vec![C::new(T::zero(), T::zero()); spec.levels.len()];
            for _ in 0..count {
                for (i, &k) in split.kept.iter().enumerate() {
                    phases[k] = if i == 0 {
                        C::new(T::one(), T::zero())
                    } else {
                        C::from_polar(T::one(), two_pi * T::lit(rng.random::<f64>()))
                    };
                }
                let e1 = coords_linear_entropy(&phase_coordinates(spec, &coords, &phases));
                m.push(e1.to_f64().unwrap_or(f64::NAN));
            }
            m
        })
        .collect();
    let total = parts
        .into_iter()
        .fold(Moments { n: 0.0, mean: 0.0, m2: 0.0 }, Moments::merge);
    let stderr = if samples > 1 {
        (total.m2 / (total.n - 1.0)).sqrt() / total.n.sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate { mean: T::lit(total.mean), stderr: T::lit(stderr), samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{state_from_occupation, Occupation};
    use crate::matrix::frobenius_distance;
    use crate::random::{random_hermitian, random_state};
    use rand::SeedableRng;

    fn random_setup(seed: u64, species: Species, n: usize) -> (TwoParticleState<f64>, SpectralDecomposition<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = HoppingModel::new(random_hermitian(&mut rng, n), HoppingSign::Minus).unwrap();
        let spec = two_particle_spectrum(&model, species, SpectrumOptions::degenerate()).unwrap();
        (random_state(&mut rng, species, n), spec)
    }

    #[test]
    fn identity_hopping_has_one_level() {
        let model = HoppingModel::new(ComplexMatrix::<f64>::identity(4), HoppingSign::Plus).unwrap();
        let spec = two_particle_spectrum(&model, Species::Boson, SpectrumOptions::degenerate()).unwrap();
        assert_eq!(spec.levels().len(), 1);
        assert!((spec.levels()[0].energy - 2.0).abs() < 1e-14);
        assert_eq!(spec.levels()[0].modes.len(), 10);
        let f = spec.projector(0);
        let sym = ComplexMatrix::from_fn(16, 16, |r, col| {
            let (a, b) = (r / 4, r % 4);
            let (i, j) = (col / 4, col % 4);
            let mut v = 0.0;
            if a == i && b == j {
                v += 0.5;
            }
            if a == j && b == i {
                v += 0.5;
            }
            c(v, 0.0)
        });
        assert!(frobenius_distance(&f, &sym).unwrap() < 1e-13);
    }

    #[test]
    fn projectors_resolve_the_sector() {
        for species in [Species::Boson, Species::Fermion] {
            let (_, spec) = random_setup(3, species, 4);
            let count = spec.levels().len();
            assert_eq!(count, if species == Species::Boson { 10 } else { 6 });
            let fs: Vec<_> = (0..count).map(|k| spec.projector(k)).collect();
            let mut total = ComplexMatrix::zeros(16, 16);
            for (k, f) in fs.iter().enumerate() {
                assert!(frobenius_distance(&f.matmul(f), f).unwrap() < 1e-12);
                assert!(frobenius_distance(&f.adjoint(), f).unwrap() < 1e-12);
                for g in &fs[k + 1..] {
                    assert!(f.matmul(g).frobenius_norm() < 1e-12);
                }
                total = &total + f;
            }
            assert!(frobenius_distance(&total.matmul(&total), &total).unwrap() < 1e-12);
            let rank = total.trace().re;
            let expect = if species == Species::Boson { 10.0 } else { 6.0 };
            assert!((rank - expect).abs() < 1e-12);
            assert!(spec.energies().windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn evolution_is_a_group() {
        let (psi, spec) = random_setup(5, Species::Fermion, 5);
        let same = evolve(&psi, &spec, 0.0).unwrap();
        assert!(frobenius_distance(same.lambda(), psi.lambda()).unwrap() < 1e-13);
        let a = evolve(&evolve(&psi, &spec, 0.3).unwrap(), &spec, 1.1).unwrap();
        let b = evolve(&psi, &spec, 1.4).unwrap();
        assert!(frobenius_distance(a.lambda(), b.lambda()).unwrap() < 1e-12);
        assert!((b.lambda().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_matches_one_body_propagator() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let t = random_hermitian::<f64, _>(&mut rng, 4);
        let model = HoppingModel::new(t.clone(), HoppingSign::Plus).unwrap();
        let spec = two_particle_spectrum(&model, Species::Boson, SpectrumOptions::degenerate()).unwrap();
        let psi = random_state(&mut rng, Species::Boson, 4);
        let time = 0.7;
        let eig = hermitian_eig(&t).unwrap();
        let phases: Vec<_> = eig.eigenvalues.iter().map(|&e| C::from_polar(1.0, -e * time)).collect();
        let u = eig
            .eigenvectors
            .matmul(&ComplexMatrix::from_diagonal(&phases))
            .matmul(&eig.eigenvectors.adjoint());
        let expect = u.matmul(psi.lambda()).matmul(&u.transpose());
        let got = evolve(&psi, &spec, time).unwrap();
        assert!(frobenius_distance(got.lambda(), &expect).unwrap() < 1e-12);
    }

    #[test]
    fn eigenstate_is_stationary() {
        let model = HoppingModel::new(
            ComplexMatrix::from_real_rows(&[vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]).unwrap(),
            HoppingSign::Minus,
        )
        .unwrap();
        let spec = two_particle_spectrum(&model, Species::Fermion, SpectrumOptions::degenerate()).unwrap();
        let psi: TwoParticleState<f64> = project_state(
            &state_from_occupation(Species::Fermion, 3, [(Occupation::Pair(0, 1), c(1.0, 0.0))]).unwrap(),
            &spec,
        )
        .unwrap()
        .components[0]
            .state
            .clone();
        let proj = project_state(&psi, &spec).unwrap();
        assert_eq!(proj.components.len(), 1);
        assert!((proj.components[0].weight - 1.0f64).abs() < 1e-14);
        let e1: f64 = psi.linear_entropy();
        let report = average_entanglement(&psi, &spec).unwrap();
        assert!((report.avg_e1 - e1).abs() < 1e-12);
        let traj = e1_trajectory(&psi, &spec, &[0.0, 0.5, 3.0]).unwrap();
        assert!(traj.iter().all(|&(_, e)| (e - e1).abs() < 1e-12));
        let mc = monte_carlo_phase_average(&psi, &spec, 100, 1).unwrap();
        assert!((mc.mean - e1).abs() < 1e-12);
        assert_eq!(mc.stderr, 0.0);
        assert!(e1_trajectory(&psi, &spec, &[]).unwrap().is_empty());
    }

    #[test]
    fn report_identity_and_completeness() {
        for (seed, species) in [(11, Species::Boson), (12, Species::Fermion)] {
            let (psi, spec) = random_setup(seed, species, 6);
            let report = average_entanglement(&psi, &spec).unwrap();
            assert!((report.avg_e1 - (report.s1_sigma + report.s1_tau - report.delta)).abs() < 1e-12);
            assert!((report.s1_sigma - report.s1_tau).abs() < 1e-10);
            let total: f64 = report.weights.iter().map(|w| w.1).sum();
            assert!((total - 1.0).abs() < 1e-10);
            let proj = project_state(&psi, &spec).unwrap();
            let mut sum = ComplexMatrix::zeros(6, 6);
            for comp in &proj.components {
                sum = &sum + &comp.state.lambda().scale_real(comp.weight.sqrt());
            }
            assert!(frobenius_distance(&sum, psi.lambda()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let (psi, spec) = random_setup(21, Species::Boson, 4);
        let a = monte_carlo_phase_average(&psi, &spec, 5000, 77).unwrap();
        let b = monte_carlo_phase_average(&psi, &spec, 5000, 77).unwrap();
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.stderr, b.stderr);
        let exact = average_entanglement(&psi, &spec).unwrap().avg_e1;
        assert!((a.mean - exact).abs() < 4.0 * a.stderr);
        assert!(monte_carlo_phase_average(&psi, &spec, 0, 1).is_err());
    }

    #[test]
    fn rejects_incompatible_input() {
        let (psi, spec) = random_setup(2, Species::Boson, 4);
        let (other, _) = random_setup(2, Species::Fermion, 4);
        assert!(matches!(evolve(&other, &spec, 1.0), Err(Error::Incompatible(_))));
        let small = state_from_occupation(Species::Boson, 3, [(Occupation::Double(0), c(1.0, 0.0))]).unwrap();
        assert!(average_entanglement(&small, &spec).is_err());
        assert!(project_state(&psi, &spec).is_ok());
        let model = HoppingModel::new(ComplexMatrix::<f64>::identity(3), HoppingSign::Plus).unwrap();
        let bad_basis = ComplexMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        assert!(two_particle_spectrum_with_basis(&model, Species::Boson, bad_basis, SpectrumOptions::degenerate()).is_err());
        let not_hermitian = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(HoppingModel::new(not_hermitian, HoppingSign::Plus).is_err());
    }
}
