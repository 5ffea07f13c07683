//! Eigenvalue block structure, directional derivatives of the eigenvalue map,
//! and majorization.

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::frame::{block_eigen, group_blocks, spectral_decompose, SpectralDecomposition};

/// Blocks of equal eigenvalues of a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBlockStructure {
    /// `0 = r₀ < r₁ < … < r_ℓ = r`.
    pub boundaries: Vec<usize>,
    /// `n_j = r_j − r_{j−1}`.
    pub multiplicities: Vec<usize>,
    /// `l_p`: 1-based position of index `p` inside its block.
    pub relative_index: Vec<usize>,
    /// Block number of every index `p`.
    pub block_of: Vec<usize>,
    /// Sum of the frame idempotents of each block.
    pub block_idempotents: Vec<Element>,
}

impl EigenBlockStructure {
    pub fn num_blocks(&self) -> usize {
        self.multiplicities.len()
    }

    /// `e_p`: the idempotent of the block holding index `p` (0-based).
    pub fn e(&self, p: usize) -> &Element {
        &self.block_idempotents[self.block_of[p]]
    }

    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        self.boundaries[j]..self.boundaries[j + 1]
    }
}

pub fn block_structure(dec: &SpectralDecomposition, tau_group: f64) -> EigenBlockStructure {
    let blocks = group_blocks(dec.lambda(), tau_group);
    let mut boundaries = vec![0];
    let mut multiplicities = Vec::with_capacity(blocks.len());
    let mut relative_index = vec![0; dec.rank()];
    let mut block_of = vec![0; dec.rank()];
    let mut block_idempotents = Vec::with_capacity(blocks.len());
    let algebra = dec.frame().algebra();
    for (j, b) in blocks.iter().enumerate() {
        boundaries.push(b.end);
        multiplicities.push(b.len());
        let mut e = algebra.zero();
        for (k, p) in b.clone().enumerate() {
            relative_index[p] = k + 1;
            block_of[p] = j;
            e = &e + &dec.frame().idempotents()[p];
        }
        block_idempotents.push(e);
    }
    EigenBlockStructure {
        boundaries,
        multiplicities,
        relative_index,
        block_of,
        block_idempotents,
    }
}

/// Directional derivative `λ′(x; z)`.
///
/// For each block of equal eigenvalues of `x` with idempotent `e_j`, the
/// entries are the eigenvalues of `Q_{e_j} z` inside `V(e_j, 1)`, sorted
/// nonincreasingly.
pub fn eigen_dir_derivative(x: &Element, z: &Element, tau_group: f64) -> Result<Vec<f64>> {
    x.check_same(z)?;
    let dec = spectral_decompose(x)?;
    let mut out = Vec::with_capacity(dec.rank());
    for block in group_blocks(dec.lambda(), tau_group) {
        let pairs = block_eigen(z, &dec.frame().atoms()[block])?;
        out.extend(pairs.into_iter().map(|(v, _)| v));
    }
    Ok(out)
}

fn check_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        })
    }
}

fn sorted_desc(u: &[f64]) -> Vec<f64> {
    let mut s = u.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// `u ≺ v`: sorted prefix sums of `u` are dominated by those of `v` and the
/// totals agree, each within `tol·(1 + ‖v‖₁)`.
pub fn majorizes(u: &[f64], v: &[f64], tol: f64) -> Result<bool> {
    check_len(u, v)?;
    let slack = tol * (1.0 + v.iter().map(|x| x.abs()).sum::<f64>());
    let (su, sv) = (sorted_desc(u), sorted_desc(v));
    let (mut pu, mut pv) = (0.0, 0.0);
    for (a, b) in su.iter().zip(&sv) {
        pu += a;
        pv += b;
        if pu > pv + slack {
            return Ok(false);
        }
    }
    Ok((pu - pv).abs() <= slack)
}

/// Membership of `u` in `conv{Pv : P ∈ Pᵣ(lam)}`.
///
/// Permutations fixing `lam` act independently on each group of equal
/// entries (grouped at `tau_group`), so the hull is the product of the
/// per-group permutation hulls and membership reduces to blockwise
/// majorization.
pub fn stabilizer_hull_member(
    u: &[f64],
    v: &[f64],
    lam: &[f64],
    tau_group: f64,
    tol: f64,
) -> Result<bool> {
    check_len(u, v)?;
    check_len(u, lam)?;
    let mut order: Vec<usize> = (0..lam.len()).collect();
    order.sort_by(|&i, &j| lam[j].total_cmp(&lam[i]));
    let sorted: Vec<f64> = order.iter().map(|&i| lam[i]).collect();
    for block in group_blocks(&sorted, tau_group) {
        let idx = &order[block];
        let ub: Vec<f64> = idx.iter().map(|&i| u[i]).collect();
        let vb: Vec<f64> = idx.iter().map(|&i| v[i]).collect();
        if !majorizes(&ub, &vb, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Part, SymMatrix};
    use crate::frame::{diag_build, JordanFrame};

    fn diagonal_frame(n: usize) -> JordanFrame {
        spectral_decompose(&Algebra::diagonal(n).unwrap().identity())
            .unwrap()
            .frame()
            .clone()
    }

    fn decomposition_of(lambda: &[f64]) -> SpectralDecomposition {
        let frame = diagonal_frame(lambda.len());
        SpectralDecomposition::new(lambda.to_vec(), frame).unwrap()
    }

    #[test]
    fn distinct_eigenvalues() {
        let s = block_structure(&decomposition_of(&[5.0, 4.0, 3.0, 2.0, 1.0]), 1e-9);
        assert_eq!(s.num_blocks(), 5);
        assert_eq!(s.multiplicities, vec![1; 5]);
        assert_eq!(s.relative_index, vec![1; 5]);
    }

    #[test]
    fn seven_eigenvalue_pattern() {
        let dec = decomposition_of(&[7.0, 5.0, 5.0, 5.0, 3.0, 3.0, 1.0]);
        let s = block_structure(&dec, 1e-9);
        assert_eq!(s.relative_index, vec![1, 1, 2, 3, 1, 2, 1]);
        assert_eq!(s.boundaries, vec![0, 1, 4, 6, 7]);
        let c = dec.frame().idempotents();
        let e234 = &(&c[1] + &c[2]) + &c[3];
        for p in 1..4 {
            assert_eq!(s.e(p), &e234);
        }
        assert_eq!(s.e(4), &(&c[4] + &c[5]));
        assert_eq!(s.e(0), &c[0]);
    }

    #[test]
    fn single_repeated_block() {
        let dec = decomposition_of(&[1.0, 1.0]);
        let s = block_structure(&dec, 1e-9);
        assert_eq!(s.multiplicities, vec![2]);
        assert_eq!(s.relative_index, vec![1, 2]);
        assert_eq!(s.e(0), &dec.frame().algebra().identity());
    }

    #[test]
    fn derivative_at_zero_is_eigenvalues_of_direction() {
        let alg = Algebra::sym(3).unwrap();
        let z = alg.from_coords(&[1.0, -2.0, 0.5, 0.3, -0.7, 1.1]).unwrap();
        let d = eigen_dir_derivative(&alg.zero(), &z, 1e-9).unwrap();
        let lam = spectral_decompose(&z).unwrap().lambda().to_vec();
        for (a, b) in d.iter().zip(&lam) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_along_identity_is_ones() {
        let alg = Algebra::sym(3).unwrap();
        let x = alg.from_coords(&[1.0, -2.0, 0.5, 0.3, -0.7, 1.1]).unwrap();
        let d = eigen_dir_derivative(&x, &alg.identity(), 1e-9).unwrap();
        for v in d {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_at_identity_splits_the_tie() {
        let alg = Algebra::sym(2).unwrap();
        let m = SymMatrix::from_lower(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let z = Element::new(alg.clone(), vec![Part::Sym(m)]).unwrap();
        let d = eigen_dir_derivative(&alg.identity(), &z, 1e-9).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-14 && (d[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_is_positively_homogeneous() {
        let frame = diagonal_frame(3);
        let alg = frame.algebra().clone();
        let x = diag_build(&[2.0, 2.0, 1.0], &frame).unwrap();
        let z = alg.from_coords(&[0.3, -1.0, 4.0]).unwrap();
        let d1 = eigen_dir_derivative(&x, &z, 1e-9).unwrap();
        let d2 = eigen_dir_derivative(&x, &z.scale(2.5), 1e-9).unwrap();
        for (a, b) in d1.iter().zip(&d2) {
            assert!((2.5 * a - b).abs() < 1e-12);
        }
        assert_eq!(d1, vec![0.3, -1.0, 4.0]);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[3.0, 1.0, 2.0], &[3.0, 1.0, 2.0], 1e-12).unwrap());
        assert!(majorizes(&[1.0, 1.0], &[2.0, 0.0], 1e-12).unwrap());
        assert!(!majorizes(&[2.0, 0.0], &[1.0, 1.0], 1e-12).unwrap());
        assert!(majorizes(&[0.0, 2.0], &[2.0, 0.0], 1e-12).unwrap());
        assert!(!majorizes(&[1.0, 1.0], &[1.0, 0.0], 1e-12).unwrap());
        assert!(majorizes(&[1.0], &[1.0, 2.0], 1e-12).is_err());
    }

    #[test]
    fn stabilizer_hull_examples() {
        let distinct = [3.0, 2.0, 1.0];
        assert!(stabilizer_hull_member(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], &distinct, 1e-9, 1e-12).unwrap());
        assert!(!stabilizer_hull_member(&[2.0, 1.0, 3.0], &[1.0, 2.0, 3.0], &distinct, 1e-9, 1e-12).unwrap());

        let constant = [1.0, 1.0, 1.0];
        assert!(stabilizer_hull_member(&[1.0, 1.0, 1.0], &[3.0, 0.0, 0.0], &constant, 1e-9, 1e-12).unwrap());

        assert!(stabilizer_hull_member(&[5.0, 1.0, 1.0], &[5.0, 2.0, 0.0], &[2.0, 1.0, 1.0], 1e-9, 1e-12).unwrap());
        assert!(!stabilizer_hull_member(&[4.0, 2.0, 1.0], &[5.0, 2.0, 0.0], &[2.0, 1.0, 1.0], 1e-9, 1e-12).unwrap());
    }
}
