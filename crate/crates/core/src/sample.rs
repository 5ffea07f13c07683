//! Seeded random algebras, elements and frames for tests, benches and the
//! KL sampler.
//!
//! Every draw goes through [`stream_rng`], so sample `i` of a run depends
//! only on `(seed, i)` and not on how many samples came before it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Algebra, Element, FactorKind};
use crate::error::Result;
use crate::frame::{diag_build, Atom, JordanFrame};

/// Largest total rank [`random_algebra`] produces.
pub const MAX_RANK: usize = 12;
pub const MAX_FACTORS: usize = 4;
pub const MAX_SYM: usize = 8;
pub const MAX_SPIN: usize = 10;

/// Independent generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let g = gaussian_vec(rng, n);
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return g.into_iter().map(|v| v / norm).collect();
        }
    }
}

/// Haar-random orthonormal basis of ℝⁿ by Gram–Schmidt on Gaussian vectors.
fn orthonormal_basis<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    while basis.len() < n {
        let mut v = gaussian_vec(rng, n);
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Random factor of rank at most `budget` (which must be at least 1).
fn random_factor<R: Rng>(rng: &mut R, budget: usize) -> FactorKind {
    let choices = if budget >= 2 { 3 } else { 2 };
    match rng.random_range(0..choices) {
        0 => FactorKind::Diagonal(rng.random_range(1..=budget.min(4))),
        1 => FactorKind::Sym(rng.random_range(1..=budget.min(MAX_SYM))),
        _ => FactorKind::Spin(rng.random_range(2..=MAX_SPIN)),
    }
}

/// Product of one to four random factors with total rank at most 12.
pub fn random_algebra<R: Rng>(rng: &mut R) -> Algebra {
    let n_factors = rng.random_range(1..=MAX_FACTORS);
    let mut factors = Vec::new();
    let mut budget = MAX_RANK;
    for _ in 0..n_factors {
        if budget == 0 {
            break;
        }
        let f = random_factor(rng, budget);
        budget -= f.rank();
        factors.push(f);
    }
    Algebra::new(factors).expect("factor sizes are valid")
}

/// Element with independent standard Gaussian orthonormal coordinates.
pub fn random_element<R: Rng>(rng: &mut R, algebra: &Algebra) -> Element {
    algebra
        .from_coords(&gaussian_vec(rng, algebra.dim()))
        .expect("dimension matches")
}

/// Random Jordan frame, with atoms in random order.
pub fn random_frame<R: Rng>(rng: &mut R, algebra: &Algebra) -> JordanFrame {
    let mut atoms = Vec::with_capacity(algebra.rank());
    for (factor, kind) in algebra.factors().iter().enumerate() {
        match *kind {
            FactorKind::Diagonal(n) => atoms.extend((0..n).map(|index| Atom::Coord { factor, index })),
            FactorKind::Sym(n) => atoms.extend(
                orthonormal_basis(rng, n)
                    .into_iter()
                    .map(|v| Atom::Ray { factor, v }),
            ),
            FactorKind::Spin(n) => {
                let w = unit_vec(rng, n - 1);
                let neg = w.iter().map(|c| -c).collect();
                atoms.push(Atom::Spin { factor, w });
                atoms.push(Atom::Spin { factor, w: neg });
            }
        }
    }
    atoms.shuffle(rng);
    JordanFrame::from_atoms(algebra, atoms)
}

/// Eigenvalue vector of length `r` drawn from a few distinct levels, so
/// that repeated eigenvalues are common.
pub fn tied_spectrum<R: Rng>(rng: &mut R, r: usize) -> Vec<f64> {
    let n_levels = rng.random_range(1..=r.clamp(1, 3));
    let levels = gaussian_vec(rng, n_levels);
    (0..r).map(|_| levels[rng.random_range(0..levels.len())]).collect()
}

/// `Σ uᵢcᵢ` over a fresh random frame.
pub fn element_with_spectrum<R: Rng>(rng: &mut R, algebra: &Algebra, u: &[f64]) -> Result<Element> {
    diag_build(u, &random_frame(rng, algebra))
}

/// Random element with repeated eigenvalues.
pub fn repeated_eigen_element<R: Rng>(rng: &mut R, algebra: &Algebra) -> Element {
    let u = tied_spectrum(rng, algebra.rank());
    element_with_spectrum(rng, algebra, &u).expect("rank matches")
}
