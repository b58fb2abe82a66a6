//! Closed forms for two reference models: the spin-polarized Hubbard ring and
//! the Bose-Hubbard model with infinite-range hopping.
//!
//! Sites are `0..N` internally. Momentum labels `r, s` run over `1..=N` with
//! `θ(m) = exp(2πim/N)`.

use crate::dynamics::{
    two_particle_spectrum, two_particle_spectrum_with_basis, HoppingModel, HoppingSign,
    SpectralDecomposition, SpectrumOptions,
};
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::fock::{Occupation, Species, TwoParticleState};
use crate::matrix::ComplexMatrix;
use crate::scalar::{cr, Real, C};

fn theta<T: Real>(n: usize, m: usize) -> C<T> {
    let k = m % n;
    C::from_polar(T::one(), T::lit(std::f64::consts::TAU) * T::from_count(k) / T::from_count(n))
}

/// Periodic nearest-neighbour ring with unit hopping, `H = −Σ t_jk b†_j b_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HubbardRing {
    n: usize,
}

impl HubbardRing {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("Hubbard ring needs N ≥ 3, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn hopping<T: Real>(&self) -> ComplexMatrix<T> {
        let n = self.n;
        ComplexMatrix::from_fn(n, n, |j, k| {
            if (j + 1) % n == k || (k + 1) % n == j {
                cr(T::one())
            } else {
                cr(T::zero())
            }
        })
    }

    pub fn model<T: Real>(&self) -> HoppingModel<T> {
        HoppingModel::new(self.hopping(), HoppingSign::Minus).expect("ring hopping is Hermitian")
    }

    /// Plane waves `v_r(m) = θ(mr)/√N` as columns, column `r − 1` for label `r`.
    pub fn plane_wave_basis<T: Real>(&self) -> ComplexMatrix<T> {
        let n = self.n;
        let norm = T::one() / T::from_count(n).sqrt();
        ComplexMatrix::from_fn(n, n, |m, col| theta::<T>(n, m * (col + 1)) * norm)
    }

    /// Two-particle spectrum over the plane-wave basis.
    pub fn spectrum<T: Real>(&self, species: Species, opts: SpectrumOptions<T>) -> Result<SpectralDecomposition<T>> {
        two_particle_spectrum_with_basis(&self.model(), species, self.plane_wave_basis(), opts)
    }

    fn check_pair(&self, r: usize, s: usize) -> Result<()> {
        if r == s || !(1..=self.n).contains(&r) || !(1..=self.n).contains(&s) {
            return Err(Error::InvalidArgument(format!(
                "momentum pair ({r}, {s}) needs distinct labels in 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// `E^(rs) = −2 Re θ(r) − 2 Re θ(s)`.
    pub fn energy<T: Real>(&self, r: usize, s: usize) -> Result<T> {
        self.check_pair(r, s)?;
        let two = T::lit(2.0);
        Ok(-two * theta::<T>(self.n, r).re - two * theta::<T>(self.n, s).re)
    }
}

/// Fermion eigenstate `λ_mn = [θ(mr+ns) − θ(nr+ms)]/(N√2)`.
pub fn hubbard_eigenstate<T: Real>(n: usize, r: usize, s: usize) -> Result<TwoParticleState<T>> {
    let ring = HubbardRing::new(n)?;
    ring.check_pair(r, s)?;
    let scale = T::one() / (T::from_count(n) * T::SQRT_2());
    let lambda = ComplexMatrix::from_fn(n, n, |a, b| {
        (theta::<T>(n, a * r + b * s) - theta::<T>(n, b * r + a * s)) * scale
    });
    TwoParticleState::new(Species::Fermion, lambda)
}

/// `Σ √p_rs ψ^(rs)` for weights on distinct unordered momentum pairs.
pub fn hubbard_superposition<T: Real>(n: usize, weights: &[((usize, usize), T)]) -> Result<TwoParticleState<T>> {
    check_pair_weights(n, weights)?;
    let mut lambda = ComplexMatrix::zeros(n, n);
    for &((r, s), p) in weights {
        let psi = hubbard_eigenstate::<T>(n, r, s)?;
        lambda = &lambda + &psi.lambda().scale_real(p.sqrt());
    }
    TwoParticleState::normalized(Species::Fermion, lambda)
}

fn check_pair_weights<T: Real>(n: usize, weights: &[((usize, usize), T)]) -> Result<()> {
    let ring = HubbardRing::new(n)?;
    let mut seen = Vec::new();
    let mut total = T::zero();
    for &((r, s), p) in weights {
        ring.check_pair(r, s)?;
        let key = (r.min(s), r.max(s));
        if seen.contains(&key) {
            return Err(Error::InvalidArgument(format!("pair {{{r}, {s}}} given twice")));
        }
        seen.push(key);
        if !(p >= T::zero()) {
            return Err(Error::InvalidProbabilities(format!("weight {p} for pair {{{r}, {s}}}")));
        }
        total = total + p;
    }
    if (total - T::one()).abs() > T::lit(1e-8) {
        return Err(Error::InvalidProbabilities(format!("pair weights sum to {total}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct CrossTrace<T> {
    pub closed_form: T,
    pub direct: T,
}

/// `Tr[(Λ^(rs)†Λ^(rs))(Λ^(r′s′)†Λ^(r′s′))]`, directly and as
/// `(δ_ss′ + δ_rr′ + δ_rs′ + δ_sr′)/4`.
pub fn hubbard_cross_trace<T: Real>(n: usize, (r, s): (usize, usize), (rp, sp): (usize, usize)) -> Result<CrossTrace<T>> {
    let a = hubbard_eigenstate::<T>(n, r, s)?.gram();
    let b = hubbard_eigenstate::<T>(n, rp, sp)?.gram();
    let hits = [s == sp, r == rp, r == sp, s == rp].iter().filter(|&&x| x).count();
    Ok(CrossTrace {
        closed_form: T::from_count(hits) / T::lit(4.0),
        direct: a.matmul(&b).trace().re,
    })
}

/// `1/2 + Σ p_A p_B` over unordered pairs `{A, B}` of disjoint momentum pairs.
pub fn hubbard_average_closed_form<T: Real>(n: usize, weights: &[((usize, usize), T)]) -> Result<T> {
    check_pair_weights(n, weights)?;
    let mut sum = T::zero();
    for (i, &((r, s), p)) in weights.iter().enumerate() {
        for &((rp, sp), q) in &weights[i + 1..] {
            if r != rp && r != sp && s != rp && s != sp {
                sum = sum + p * q;
            }
        }
    }
    Ok(T::lit(0.5) + sum)
}

/// Bosons with `t_jk = [1 − (N−1)ε]δ_jk + ε(1 − δ_jk)` and `H = +Σ t_jk b†_j b_k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfiniteRangeBoseModel<T> {
    n: usize,
    eps: T,
}

impl<T: Real> InfiniteRangeBoseModel<T> {
    pub fn new(n: usize, eps: T) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("Bose model needs N ≥ 3, got {n}")));
        }
        if !(eps > T::zero()) || !eps.is_finite() {
            return Err(Error::InvalidArgument(format!("Bose model needs finite ε > 0, got {eps}")));
        }
        Ok(Self { n, eps })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    pub fn hopping(&self) -> ComplexMatrix<T> {
        let diag = T::one() - T::from_count(self.n - 1) * self.eps;
        ComplexMatrix::from_fn(self.n, self.n, |j, k| cr(if j == k { diag } else { self.eps }))
    }

    pub fn model(&self) -> HoppingModel<T> {
        HoppingModel::new(self.hopping(), HoppingSign::Plus).expect("Bose hopping is Hermitian")
    }

    pub fn spectrum(&self, opts: SpectrumOptions<T>) -> Result<SpectralDecomposition<T>> {
        two_particle_spectrum(&self.model(), Species::Boson, opts)
    }

    /// `|1,1,0,…,0⟩`.
    pub fn initial_state(&self) -> TwoParticleState<T> {
        crate::fock::state_from_occupation(Species::Boson, self.n, [(Occupation::Pair(0, 1), cr(T::one()))])
            .expect("single occupation pattern is a valid state")
    }
}

#[derive(Clone, Debug)]
pub struct BoseSpectrumFacts<T> {
    /// Eigenvalues of `t`, ascending.
    pub one_particle: Vec<T>,
    /// `1 − Nε`.
    pub degenerate_energy: T,
    /// Eigenvalues within tolerance of `1 − Nε` and of `1`.
    pub multiplicities: (usize, usize),
    /// `‖t φ⁰ − φ⁰‖` for the uniform mode `φ⁰ = N^{−1/2} Σ ω_j`.
    pub uniform_residual: T,
    /// Engine levels, ascending.
    pub two_particle_levels: Vec<T>,
    /// `2(1 − Nε)`, `2 − Nε`, `2`.
    pub expected_levels: [T; 3],
}

impl<T: Real> BoseSpectrumFacts<T> {
    /// Largest deviation between engine and expected two-particle levels, or
    /// infinity if the level count differs.
    pub fn level_deviation(&self) -> T {
        if self.two_particle_levels.len() != 3 {
            return T::infinity();
        }
        self.two_particle_levels
            .iter()
            .zip(&self.expected_levels)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }
}

pub fn bose_model_spectrum_facts<T: Real>(n: usize, eps: T) -> Result<BoseSpectrumFacts<T>> {
    let model = InfiniteRangeBoseModel::new(n, eps)?;
    let t = model.hopping();
    let one_particle = hermitian_eig(&t)?.eigenvalues;
    let low = T::one() - T::from_count(n) * eps;
    let tol = T::lit(1e-10) * (T::one() + low.abs());
    let count = |e: T| one_particle.iter().filter(|&&x| (x - e).abs() <= tol).count();
    let uniform = vec![cr(T::one() / T::from_count(n).sqrt()); n];
    let tu = t.mul_vec(&uniform);
    let uniform_residual = tu
        .iter()
        .zip(&uniform)
        .fold(T::zero(), |s, (a, b)| s + (*a - *b).norm_sqr())
        .sqrt();
    let spec = model.spectrum(SpectrumOptions::degenerate())?;
    let two = T::lit(2.0);
    Ok(BoseSpectrumFacts {
        multiplicities: (count(low), count(T::one())),
        one_particle,
        degenerate_energy: low,
        uniform_residual,
        two_particle_levels: spec.energies(),
        expected_levels: [two * low, low + T::one(), two],
    })
}

/// Closed-form averages for `|1,1,0,…,0⟩`. Level labels count particles in
/// the uniform mode: `00` both, `01` one, `11` none.
#[derive(Clone, Copy, Debug)]
pub struct BoseClosedForm<T> {
    pub p00: T,
    pub p11: T,
    pub p01: T,
    pub s1_sigma: T,
    pub delta: T,
    pub avg_e1: T,
}

pub fn bose_average_closed_form<T: Real>(n: usize) -> Result<BoseClosedForm<T>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("Bose model needs N ≥ 3, got {n}")));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let inv = one / T::from_count(n);
    let half = T::lit(0.5);
    Ok(BoseClosedForm {
        p00: two * inv * inv,
        p11: (one - inv) * (one - inv) + inv * inv,
        p01: two * inv * (one - two * inv),
        s1_sigma: half + inv - two * inv * inv,
        delta: half + two * inv - T::lit(8.0) * inv.powi(2) + T::lit(16.0) * inv.powi(3)
            - T::lit(16.0) * inv.powi(4),
        avg_e1: half + T::lit(4.0) * inv * inv * (one - two * inv).powi(2),
    })
}

/// Explicit normalized eigencomponents `(Λ^(00), Λ^(11), Λ^(01))` of
/// `|1,1,0,…,0⟩`.
pub fn bose_eigencomponents<T: Real>(n: usize) -> Result<[ComplexMatrix<T>; 3]> {
    let f = bose_average_closed_form::<T>(n)?;
    let nn = T::from_count(n);
    let two = T::lit(2.0);
    let d = |j: usize, i: usize| if j == i { T::one() } else { T::zero() };
    let x1 = |_: usize, _: usize| two / nn;
    let x2 = |j: usize, k: usize| (d(j, 0) + d(j, 1)) * (d(k, 0) + d(k, 1));
    let x3 = |j: usize, k: usize| d(j, 0) + d(k, 0) + d(j, 1) + d(k, 1);
    let y = |j: usize, k: usize| (d(j, 0) - d(j, 1)) * (d(k, 0) - d(k, 1));
    let c11 = T::one() / (f.p11.sqrt() * two * nn * T::SQRT_2());
    let c01 = T::one() / (f.p01.sqrt() * nn * T::SQRT_2());
    let lam00 = ComplexMatrix::from_fn(n, n, |j, k| cr(x1(j, k) / two));
    let lam11 = ComplexMatrix::from_fn(n, n, |j, k| {
        cr(c11 * (two * x1(j, k) - two * x3(j, k) + nn * x2(j, k) - nn * y(j, k)))
    });
    let lam01 = ComplexMatrix::from_fn(n, n, |j, k| cr(c01 * (x3(j, k) - two * x1(j, k))));
    Ok([lam00, lam11, lam01])
}
