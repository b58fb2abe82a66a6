//! Shared plumbing for the acceptance suite.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion.
pub struct Verdict {
    pub id: u32,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(id: u32, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { id, pass, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("criterion {}: {tag} {}", self.id, self.detail)
    }
}

/// Deterministic generator for criterion `id`, case `case`.
pub fn rng(id: u32, case: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0x1de7_0000 + id as u64);
    r.set_stream(case);
    r
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
