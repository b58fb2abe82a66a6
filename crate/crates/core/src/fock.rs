//! Two identical particles: coefficient matrices, the generalized Schmidt
//! decomposition, reduced density operators and entropies.
//!
//! A state `ψ = Σ λ_mn ω_m ⊗ ω_n` over an orthonormal site basis is stored as
//! its coefficient matrix `Λ`, symmetric for bosons and antisymmetric for
//! fermions, normalized so that `Tr(Λ†Λ) = ‖ψ‖² = 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::factor::{antisym_canonical, canonical_spectrum, congruence, takagi, Parity};
use crate::matrix::{significant_lines, ComplexMatrix};
use crate::scalar::{cr, Real, C};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    Boson,
    Fermion,
}

impl Species {
    pub fn parity(self) -> Parity {
        match self {
            Species::Boson => Parity::Symmetric,
            Species::Fermion => Parity::Antisymmetric,
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::Boson => "boson",
            Species::Fermion => "fermion",
        })
    }
}

impl FromStr for Species {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boson" | "bosons" => Ok(Species::Boson),
            "fermion" | "fermions" => Ok(Species::Fermion),
            other => Err(Error::InvalidArgument(format!("unknown species {other:?}"))),
        }
    }
}

/// Normalized two-particle pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParticleState<T> {
    species: Species,
    lambda: ComplexMatrix<T>,
}

impl<T: Real> TwoParticleState<T> {
    /// Validates symmetry and normalization (both within `T::structure_tol()`).
    pub fn new(species: Species, lambda: ComplexMatrix<T>) -> Result<Self> {
        Self::build(species, lambda, Some(T::structure_tol()))
    }

    /// Validates symmetry and rescales to unit norm.
    pub fn normalized(species: Species, lambda: ComplexMatrix<T>) -> Result<Self> {
        Self::build(species, lambda, None)
    }

    /// Accepts a norm deviation up to `tol`, then rescales to unit norm.
    pub fn with_norm_tolerance(species: Species, lambda: ComplexMatrix<T>, tol: T) -> Result<Self> {
        Self::build(species, lambda, Some(tol))
    }

    fn build(species: Species, lambda: ComplexMatrix<T>, norm_tol: Option<T>) -> Result<Self> {
        lambda.require_square()?;
        if species == Species::Fermion && lambda.rows() < 2 {
            return Err(Error::InvalidState(
                "no antisymmetric two-fermion state exists in dimension 1".into(),
            ));
        }
        let lambda = lambda.project_symmetry(species.parity().into(), T::structure_tol())?;
        let norm2 = lambda.norm_sqr();
        if norm2 == T::zero() {
            return Err(Error::InvalidState("zero coefficient matrix".into()));
        }
        if let Some(tol) = norm_tol {
            if (norm2 - T::one()).abs() > tol {
                return Err(Error::InvalidState(format!(
                    "Tr(Λ†Λ) = {norm2} deviates from 1 by more than {tol:e}"
                )));
            }
        }
        Ok(Self {
            species,
            lambda: lambda.scale_real(T::one() / norm2.sqrt()),
        })
    }

    pub fn species(&self) -> Species {
        self.species
    }

    /// One-particle dimension `N`.
    pub fn dim(&self) -> usize {
        self.lambda.rows()
    }

    pub fn lambda(&self) -> &ComplexMatrix<T> {
        &self.lambda
    }

    pub fn into_lambda(self) -> ComplexMatrix<T> {
        self.lambda
    }

    /// `Λ†Λ`, whose eigenvalues are the Schmidt probabilities.
    pub fn gram(&self) -> ComplexMatrix<T> {
        self.lambda.adjoint().matmul(&self.lambda)
    }

    /// `⟨self|other⟩ = Tr(Λ_self† Λ_other)`.
    pub fn overlap(&self, other: &Self) -> C<T> {
        self.lambda.inner(&other.lambda)
    }

    /// `1 − Tr(Λ†Λ)²`, without any factorization.
    pub fn linear_entropy(&self) -> T {
        T::one() - self.gram().norm_sqr()
    }

    /// Schmidt probabilities from the eigenvalues of `Λ†Λ`, descending.
    pub fn schmidt_probabilities(&self) -> Result<Vec<T>> {
        let raw = hermitian_eig(&self.gram())?.eigenvalues;
        let mut p: Vec<T> = raw.into_iter().rev().collect();
        clamp_probabilities(&mut p)?;
        Ok(p)
    }

    pub fn von_neumann_entropy(&self) -> Result<T> {
        von_neumann_entropy(&self.schmidt_probabilities()?)
    }
}

/// Sets probabilities in `[−floor, 0)` to zero and rejects larger negatives.
fn clamp_probabilities<T: Real>(p: &mut [T]) -> Result<()> {
    for x in p.iter_mut() {
        if *x < -T::probability_floor() {
            return Err(Error::InvalidProbabilities(format!("negative probability {x}")));
        }
        if *x < T::zero() {
            *x = T::zero();
        }
    }
    Ok(())
}

fn check_distribution<T: Real>(p: &[T]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidProbabilities("empty list".into()));
    }
    if let Some(x) = p.iter().find(|x| !x.is_finite() || **x < -T::probability_floor()) {
        return Err(Error::InvalidProbabilities(format!("invalid entry {x}")));
    }
    let sum = p.iter().fold(T::zero(), |s, &x| s + x);
    if (sum - T::one()).abs() > T::lit(1e-8).max(T::structure_tol()) {
        return Err(Error::InvalidProbabilities(format!("sum {sum} differs from 1")));
    }
    Ok(())
}

/// `−Σ p ln p` in nats with `0 ln 0 = 0`.
pub fn von_neumann_entropy<T: Real>(p: &[T]) -> Result<T> {
    check_distribution(p)?;
    Ok(p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |s, &x| s - x * x.ln()))
}

/// `1 − Σ p²`.
pub fn linear_entropy<T: Real>(p: &[T]) -> Result<T> {
    check_distribution(p)?;
    Ok(T::one() - p.iter().fold(T::zero(), |s, &x| s + x * x))
}

/// Occupation pattern of a two-particle Fock basis state (sites 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Occupation {
    /// One particle on each of two distinct sites `m < n`.
    Pair(usize, usize),
    /// Both particles on one site (bosons only).
    Double(usize),
}

/// Builds a state from Fock-basis amplitudes.
///
/// `|1_m 1_n⟩` contributes `a/√2` to `λ_mn` and `±a/√2` to `λ_nm` (sign by
/// species); `|2_m⟩` contributes `a` to `λ_mm`. With these factors
/// `Σ|a|² = Tr(Λ†Λ)`.
pub fn state_from_occupation<T: Real>(
    species: Species,
    dim: usize,
    amplitudes: impl IntoIterator<Item = (Occupation, C<T>)>,
) -> Result<TwoParticleState<T>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let inv_sqrt2 = T::FRAC_1_SQRT_2();
    let mut lambda = ComplexMatrix::zeros(dim, dim);
    let mut seen = BTreeSet::new();
    let mut total = T::zero();
    for (occ, a) in amplitudes {
        if !seen.insert(occ) {
            return Err(Error::InvalidState(format!("duplicate pattern {occ:?}")));
        }
        match occ {
            Occupation::Pair(m, n) => {
                if m >= n || n >= dim {
                    return Err(Error::InvalidState(format!(
                        "pattern {occ:?} needs sites m < n < {dim}"
                    )));
                }
                let v = a * inv_sqrt2;
                lambda[(m, n)] = v;
                lambda[(n, m)] = match species {
                    Species::Boson => v,
                    Species::Fermion => -v,
                };
            }
            Occupation::Double(m) => {
                if species == Species::Fermion {
                    return Err(Error::InvalidState(format!(
                        "double occupancy of site {m} is forbidden for fermions"
                    )));
                }
                if m >= dim {
                    return Err(Error::InvalidState(format!("site {m} out of range {dim}")));
                }
                lambda[(m, m)] = a;
            }
        }
        total = total + a.norm_sqr();
    }
    if total == T::zero() {
        return Err(Error::InvalidState("zero vector".into()));
    }
    if (total - T::one()).abs() > T::lit(1e-8).max(T::structure_tol()) {
        return Err(Error::InvalidState(format!("amplitudes have squared norm {total}")));
    }
    TwoParticleState::normalized(species, lambda)
}

/// Generalized Schmidt decomposition `ψ = Σ_rs D_rs φ_r ⊗ φ_s` with
/// `φ_r = Σ_m U_rm ω_m`.
///
/// Bosons: `D = diag(√p_r)`. Fermions: `D` has blocks `[[0, √p_2j], [−√p_2j, 0]]`
/// on consecutive modes and `p_2j = p_2j+1`, so `Σ_n p_n = 1` over all modes.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition<T> {
    pub species: Species,
    /// Row `r` holds the components of mode `φ_r`.
    pub modes: ComplexMatrix<T>,
    /// One probability per mode, descending (pairs repeated for fermions).
    pub probabilities: Vec<T>,
}

pub fn schmidt_decompose<T: Real>(state: &TwoParticleState<T>) -> Result<SchmidtDecomposition<T>> {
    match state.species {
        Species::Boson => {
            let t = takagi(&state.lambda)?;
            Ok(SchmidtDecomposition {
                species: Species::Boson,
                modes: t.u,
                probabilities: t.d.iter().map(|&d| d * d).collect(),
            })
        }
        Species::Fermion => {
            let a = antisym_canonical(&state.lambda)?;
            let probabilities = a.singular_values().iter().map(|&z| z * z).collect();
            Ok(SchmidtDecomposition {
                species: Species::Fermion,
                modes: a.u,
                probabilities,
            })
        }
    }
}

impl<T: Real> SchmidtDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.modes.rows()
    }

    /// Components of mode `φ_r` in the site basis.
    pub fn mode(&self, r: usize) -> Vec<C<T>> {
        self.modes.row(r).to_vec()
    }

    /// Number of modes with nonzero probability.
    pub fn support(&self) -> usize {
        self.probabilities.iter().filter(|&&p| p > T::zero()).count()
    }

    /// The middle factor `D` of `Λ = Uᵀ D U`.
    pub fn middle(&self) -> ComplexMatrix<T> {
        let n = self.dim();
        let mut d = ComplexMatrix::zeros(n, n);
        match self.species {
            Species::Boson => {
                for (r, &p) in self.probabilities.iter().enumerate() {
                    d[(r, r)] = cr(p.sqrt());
                }
            }
            Species::Fermion => {
                for j in 0..n / 2 {
                    let z = self.probabilities[2 * j].sqrt();
                    if z > T::zero() {
                        d[(2 * j, 2 * j + 1)] = cr(z);
                        d[(2 * j + 1, 2 * j)] = cr(-z);
                    }
                }
            }
        }
        d
    }

    /// `Λ = Uᵀ D U`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        congruence(&self.modes, &self.middle())
    }

    pub fn von_neumann_entropy(&self) -> Result<T> {
        von_neumann_entropy(&self.probabilities)
    }

    pub fn linear_entropy(&self) -> Result<T> {
        linear_entropy(&self.probabilities)
    }

    fn projector_sum(&self, modes: impl Iterator<Item = (usize, T)>) -> ComplexMatrix<T> {
        let n = self.dim();
        let mut rho = ComplexMatrix::zeros(n, n);
        for (r, w) in modes {
            if w == T::zero() {
                continue;
            }
            let phi = self.modes.row(r);
            for a in 0..n {
                for b in 0..n {
                    rho[(a, b)] = rho[(a, b)] + phi[a] * phi[b].conj() * w;
                }
            }
        }
        rho
    }

    /// `(σ, τ)`. Bosons: `σ = τ = Σ p_m |φ_m⟩⟨φ_m|`. Fermions: the even mode of
    /// each pair goes to `σ` and the odd one to `τ`, each weighted `2p`.
    pub fn reduced_densities(&self) -> (ReducedDensity<T>, ReducedDensity<T>) {
        let two = T::lit(2.0);
        match self.species {
            Species::Boson => {
                let rho = self.projector_sum(self.probabilities.iter().copied().enumerate());
                (ReducedDensity { rho: rho.clone() }, ReducedDensity { rho })
            }
            Species::Fermion => {
                let pairs = self.dim() / 2;
                let sigma = self.projector_sum((0..pairs).map(|j| (2 * j, two * self.probabilities[2 * j])));
                let tau = self.projector_sum((0..pairs).map(|j| (2 * j + 1, two * self.probabilities[2 * j + 1])));
                (ReducedDensity { rho: sigma }, ReducedDensity { rho: tau })
            }
        }
    }
}

/// One-particle reduced density operator.
#[derive(Clone, Debug)]
pub struct ReducedDensity<T> {
    pub rho: ComplexMatrix<T>,
}

impl<T: Real> ReducedDensity<T> {
    pub fn trace(&self) -> T {
        self.rho.trace().re
    }

    /// Eigenvalues, descending, clamped at zero within the probability floor.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        let mut p: Vec<T> = hermitian_eig(&self.rho)?.eigenvalues.into_iter().rev().collect();
        clamp_probabilities(&mut p)?;
        Ok(p)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        self.rho.norm_sqr()
    }

    /// `1 − Tr ρ²`.
    pub fn linear_entropy(&self) -> T {
        T::one() - self.purity()
    }

    pub fn von_neumann_entropy(&self) -> Result<T> {
        von_neumann_entropy(&self.eigenvalues()?)
    }
}

pub fn reduced_densities<T: Real>(
    state: &TwoParticleState<T>,
) -> Result<(ReducedDensity<T>, ReducedDensity<T>)> {
    Ok(schmidt_decompose(state)?.reduced_densities())
}

/// Factorization-free Schmidt probabilities of a coefficient matrix.
pub fn schmidt_probabilities<T: Real>(lambda: &ComplexMatrix<T>, species: Species) -> Result<Vec<T>> {
    let mut p = canonical_spectrum(lambda, species.parity())?;
    clamp_probabilities(&mut p)?;
    Ok(p)
}

// ---------------------------------------------------------------------------
// state file format

/// Norm deviation tolerated when reading a state file.
pub const FILE_NORM_TOL: f64 = 1e-6;

/// Serializes as `species dim` followed by `Λ` in the matrix text format.
pub fn write_state<T: Real>(state: &TwoParticleState<T>) -> String {
    format!("{} {}\n{}", state.species, state.dim(), state.lambda.to_text())
}

/// Parses a state file. The norm may deviate from 1 by at most
/// [`FILE_NORM_TOL`]; within that it is rescaled exactly to 1.
pub fn read_state<T: Real>(text: &str) -> Result<TwoParticleState<T>> {
    let mut lines = significant_lines(text, 0);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing state header \"species dim\"".into(),
    })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            line: hline,
            message: format!("expected \"species dim\", found {header:?}"),
        });
    }
    let species: Species = parts[0].parse().map_err(|e: Error| Error::Parse {
        line: hline,
        message: e.to_string(),
    })?;
    let dim: usize = parts[1].parse().map_err(|_| Error::Parse {
        line: hline,
        message: format!("invalid dimension {:?}", parts[1]),
    })?;
    let lambda = ComplexMatrix::<T>::parse_lines(&mut lines)?;
    if lambda.shape() != (dim, dim) {
        return Err(Error::Parse {
            line: hline,
            message: format!(
                "header declares dimension {dim} but the matrix is {}x{}",
                lambda.rows(),
                lambda.cols()
            ),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: "unexpected content after the matrix".into(),
        });
    }
    TwoParticleState::with_norm_tolerance(species, lambda, T::lit(FILE_NORM_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{frobenius_distance, is_unitary};
    use crate::scalar::c;

    fn one() -> C<f64> {
        c(1.0, 0.0)
    }

    #[test]
    fn occupation_conventions() {
        let s = state_from_occupation(Species::Boson, 4, [(Occupation::Pair(0, 1), one())]).unwrap();
        let h = 0.5f64.sqrt();
        assert!((s.lambda()[(0, 1)] - c(h, 0.0)).norm() < 1e-15);
        assert!((s.lambda()[(1, 0)] - c(h, 0.0)).norm() < 1e-15);
        assert!((s.lambda().norm_sqr() - 1.0).abs() < 1e-15);

        let s = state_from_occupation(Species::Boson, 3, [(Occupation::Double(0), one())]).unwrap();
        assert_eq!(s.lambda()[(0, 0)], one());

        let s = state_from_occupation(Species::Fermion, 3, [(Occupation::Pair(0, 1), one())]).unwrap();
        assert!((s.lambda()[(0, 1)] - c(h, 0.0)).norm() < 1e-15);
        assert!((s.lambda()[(1, 0)] + c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn occupation_errors() {
        let f = state_from_occupation(Species::Fermion, 3, [(Occupation::Double(0), one())]);
        assert!(matches!(f, Err(Error::InvalidState(_))));
        let bad = state_from_occupation(Species::Boson, 3, [(Occupation::Pair(2, 1), one())]);
        assert!(bad.is_err());
        let out = state_from_occupation(Species::Boson, 3, [(Occupation::Pair(1, 3), one())]);
        assert!(out.is_err());
        let zero = state_from_occupation(Species::Boson, 3, [(Occupation::Pair(0, 1), c(0.0, 0.0))]);
        assert!(zero.is_err());
        let none = state_from_occupation::<f64>(Species::Boson, 3, []);
        assert!(none.is_err());
        let unnorm = state_from_occupation(Species::Boson, 3, [(Occupation::Double(1), c(2.0, 0.0))]);
        assert!(unnorm.is_err());
        let dup = state_from_occupation(
            Species::Boson,
            3,
            [(Occupation::Double(1), c(0.6, 0.0)), (Occupation::Double(1), c(0.8, 0.0))],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn state_validation() {
        let lam = ComplexMatrix::<f64>::from_real_rows(&[vec![1.0]]).unwrap();
        assert!(TwoParticleState::new(Species::Fermion, lam.clone()).is_err());
        assert!(TwoParticleState::new(Species::Boson, lam).is_ok());
        let half = ComplexMatrix::<f64>::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!(TwoParticleState::new(Species::Boson, half.clone()).is_err());
        let s = TwoParticleState::normalized(Species::Boson, half).unwrap();
        assert!((s.lambda().norm_sqr() - 1.0).abs() < 1e-15);
        let asym = ComplexMatrix::<f64>::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(TwoParticleState::normalized(Species::Boson, asym).is_err());
    }

    #[test]
    fn condensate_decomposition() {
        let s = state_from_occupation(Species::Boson, 3, [(Occupation::Double(0), one())]).unwrap();
        let d = schmidt_decompose(&s).unwrap();
        assert!((d.probabilities[0] - 1.0).abs() < 1e-15);
        assert_eq!(d.support(), 1);
        let phi = d.mode(0);
        assert!((phi[0].norm() - 1.0).abs() < 1e-15);
        let (sigma, tau) = d.reduced_densities();
        let expect = ComplexMatrix::from_fn(3, 3, |i, j| if i == 0 && j == 0 { one() } else { c(0.0, 0.0) });
        assert!(frobenius_distance(&sigma.rho, &expect).unwrap() < 1e-14);
        assert!(frobenius_distance(&tau.rho, &expect).unwrap() < 1e-14);
        assert_eq!(s.linear_entropy(), 0.0);
        assert_eq!(d.von_neumann_entropy().unwrap(), 0.0);
    }

    #[test]
    fn slater_determinant() {
        let s = state_from_occupation(Species::Fermion, 4, [(Occupation::Pair(1, 2), one())]).unwrap();
        let d = schmidt_decompose(&s).unwrap();
        assert!((d.probabilities[0] - 0.5).abs() < 1e-15);
        assert!((d.probabilities[1] - 0.5).abs() < 1e-15);
        assert_eq!(d.support(), 2);
        assert!((d.von_neumann_entropy().unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((s.linear_entropy() - 0.5).abs() < 1e-15);
        assert!(frobenius_distance(&d.reconstruct(), s.lambda()).unwrap() < 1e-14);
        let (sigma, tau) = d.reduced_densities();
        // each is a rank-one projector onto one of the two occupied modes
        assert!((sigma.trace() - 1.0).abs() < 1e-14 && (tau.trace() - 1.0).abs() < 1e-14);
        assert!((sigma.purity() - 1.0).abs() < 1e-14 && (tau.purity() - 1.0).abs() < 1e-14);
        let occupied = |rho: &ComplexMatrix<f64>| rho[(1, 1)].re + rho[(2, 2)].re;
        assert!((occupied(&sigma.rho) - 1.0).abs() < 1e-14);
        assert!((occupied(&tau.rho) - 1.0).abs() < 1e-14);
        assert!(sigma.rho.matmul(&tau.rho).frobenius_norm() < 1e-14);
    }

    #[test]
    fn entropy_functions() {
        assert_eq!(von_neumann_entropy(&[1.0]).unwrap(), 0.0);
        assert!((von_neumann_entropy(&[0.5, 0.5]).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((von_neumann_entropy(&[0.25; 4]).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!((von_neumann_entropy(&[1.0f64, 0.0]).unwrap()).abs() < 1e-15);
        assert!((linear_entropy(&[0.9f64, 0.1]).unwrap() - 0.18).abs() < 1e-15);
        assert!(von_neumann_entropy(&[0.5, 0.6]).is_err());
        assert!(von_neumann_entropy(&[1.1, -0.1]).is_err());
        assert!(linear_entropy::<f64>(&[]).is_err());
        assert!(von_neumann_entropy(&[1.0 + 1e-13, -1e-13]).is_ok());
    }

    #[test]
    fn state_file_round_trip() {
        let s = state_from_occupation(
            Species::Fermion,
            3,
            [(Occupation::Pair(0, 1), c(0.6, 0.0)), (Occupation::Pair(1, 2), c(0.0, 0.8))],
        )
        .unwrap();
        let text = write_state(&s);
        assert!(text.starts_with("fermion 3\n3 3\n"));
        let back: TwoParticleState<f64> = read_state(&text).unwrap();
        assert!(frobenius_distance(back.lambda(), s.lambda()).unwrap() < 1e-15);
        assert_eq!(back.species(), Species::Fermion);
    }

    #[test]
    fn state_file_errors() {
        let unnorm = "boson 2\n2 2\n1 0\n0 1\n";
        assert!(matches!(read_state::<f64>(unnorm), Err(Error::InvalidState(_))));
        let mismatch = "boson 3\n2 2\n1 0\n0 0\n";
        assert!(matches!(read_state::<f64>(mismatch), Err(Error::Parse { line: 1, .. })));
        let species = "anyon 2\n2 2\n1 0\n0 0\n";
        assert!(matches!(read_state::<f64>(species), Err(Error::Parse { line: 1, .. })));
        let trailing = "boson 1\n1 1\n1\n7\n";
        assert!(matches!(read_state::<f64>(trailing), Err(Error::Parse { line: 4, .. })));
        let slightly_off = "boson 1\n1 1\n1.0000001\n";
        let s = read_state::<f64>(slightly_off).unwrap();
        assert!((s.lambda().norm_sqr() - 1.0).abs() < 1e-15);
        let wrong_parity = "fermion 2\n2 2\n0 0.7071067811865476\n0.7071067811865476 0\n";
        assert!(matches!(read_state::<f64>(wrong_parity), Err(Error::Structure { .. })));
    }

    #[test]
    fn decomposition_modes_are_unitary() {
        let s = state_from_occupation(
            Species::Boson,
            4,
            [
                (Occupation::Pair(0, 1), c(0.5, 0.0)),
                (Occupation::Double(2), c(0.0, 0.5)),
                (Occupation::Pair(1, 3), c(0.5, 0.5)),
            ],
        )
        .unwrap();
        let d = schmidt_decompose(&s).unwrap();
        assert!(is_unitary(&d.modes, 1e-12).unwrap());
        assert!(frobenius_distance(&d.reconstruct(), s.lambda()).unwrap() < 1e-13);
        let p: Vec<f64> = schmidt_probabilities(s.lambda(), Species::Boson).unwrap();
        for (a, b) in p.iter().zip(&d.probabilities) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
