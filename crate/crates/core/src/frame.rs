//! Spectral decomposition, Jordan frames and simultaneous diagonalization.
//!
//! Every primitive idempotent of a product algebra lives in a single factor
//! and is represented internally by an [`Atom`]: a coordinate vector of a
//! diagonal factor, a rank-one projector `vvᵀ` of a symmetric-matrix factor,
//! or `½(1, w)` with `‖w‖ = 1` in a spin factor. The block eigensolver
//! [`block_eigen`] decomposes the compression of an element onto the
//! subalgebra `V(e, 1)` spanned by a set of orthogonal atoms summing to `e`;
//! full decompositions, common frames, directional derivatives and frame
//! extension are all instances of it.

use std::ops::Range;

use crate::algebra::{Algebra, Element, FactorKind, Part, SymMatrix};
use crate::error::{Error, Result};
use crate::jacobi::jacobi_eigen;

/// Below this norm the spin vector part is treated as zero and the frame
/// uses the first coordinate direction.
pub const SPIN_ZERO: f64 = 1e-14;

/// Default eigenvalue grouping tolerance `1e-8·(1 + ‖x‖)`.
pub fn default_tau_group(norm: f64) -> f64 {
    1e-8 * (1.0 + norm)
}

/// A primitive idempotent living in one factor.
#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    /// Unit coordinate vector `index` of a diagonal factor.
    Coord { factor: usize, index: usize },
    /// `vvᵀ` in a symmetric-matrix factor, `‖v‖ = 1`.
    Ray { factor: usize, v: Vec<f64> },
    /// `½(1, w)` in a spin factor, `‖w‖ = 1`.
    Spin { factor: usize, w: Vec<f64> },
}

impl Atom {
    pub fn factor(&self) -> usize {
        match self {
            Atom::Coord { factor, .. } | Atom::Ray { factor, .. } | Atom::Spin { factor, .. } => {
                *factor
            }
        }
    }

    pub fn to_element(&self, algebra: &Algebra) -> Element {
        let mut parts: Vec<Part> = algebra
            .factors()
            .iter()
            .map(algebra_zero_part)
            .collect();
        parts[self.factor()] = match self {
            Atom::Coord { factor, index } => {
                let mut v = vec![0.0; algebra.factors()[*factor].rank()];
                v[*index] = 1.0;
                Part::Diagonal(v)
            }
            Atom::Ray { v, .. } => Part::Sym(SymMatrix::from_rank_one_sum(v.len(), &[(1.0, v)])),
            Atom::Spin { w, .. } => Part::Spin {
                x0: 0.5,
                xbar: w.iter().map(|c| 0.5 * c).collect(),
            },
        };
        Element::from_parts_unchecked(algebra.clone(), parts)
    }

    /// Recovers the atom of a primitive idempotent, or `None` if `c` is not
    /// one within `tol`.
    pub fn recover(c: &Element, tol: f64) -> Option<Atom> {
        let nonzero: Vec<usize> = c
            .parts()
            .iter()
            .enumerate()
            .filter(|(_, p)| part_norm(p) > tol)
            .map(|(i, _)| i)
            .collect();
        let &[factor] = nonzero.as_slice() else {
            return None;
        };
        let atom = match c.part(factor) {
            Part::Diagonal(d) => {
                let (index, _) = d
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))?;
                Atom::Coord { factor, index }
            }
            Part::Sym(m) => {
                let n = m.n();
                let k = (0..n).max_by(|&a, &b| m.get(a, a).total_cmp(&m.get(b, b)))?;
                let pivot = m.get(k, k);
                if pivot <= 0.0 {
                    return None;
                }
                let s = pivot.sqrt();
                Atom::Ray {
                    factor,
                    v: normalize((0..n).map(|i| m.get(i, k) / s).collect())?,
                }
            }
            Part::Spin { xbar, .. } => Atom::Spin {
                factor,
                w: normalize(xbar.iter().map(|v| 2.0 * v).collect())?,
            },
        };
        let back = atom.to_element(c.algebra());
        (back.distance(c) <= tol).then_some(atom)
    }
}

fn algebra_zero_part(k: &FactorKind) -> Part {
    match *k {
        FactorKind::Diagonal(n) => Part::Diagonal(vec![0.0; n]),
        FactorKind::Sym(n) => Part::Sym(SymMatrix::zeros(n)),
        FactorKind::Spin(n) => Part::Spin {
            x0: 0.0,
            xbar: vec![0.0; n - 1],
        },
    }
}

fn part_norm(p: &Part) -> f64 {
    match p {
        Part::Diagonal(d) => d.iter().map(|v| v * v).sum::<f64>().sqrt(),
        Part::Sym(m) => m.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt(),
        Part::Spin { x0, xbar } => {
            (2.0 * (x0 * x0 + xbar.iter().map(|v| v * v).sum::<f64>())).sqrt()
        }
    }
}

fn normalize(v: Vec<f64>) -> Option<Vec<f64>> {
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    (n > 0.0).then(|| v.into_iter().map(|c| c / n).collect())
}

/// Atoms of a frame that diagonalizes every element of the factor up to the
/// block eigensolver: standard coordinates, the standard basis of ℝⁿ, or a
/// complementary spin pair.
fn full_atoms(algebra: &Algebra) -> Vec<Atom> {
    let mut atoms = Vec::with_capacity(algebra.rank());
    for (factor, k) in algebra.factors().iter().enumerate() {
        match *k {
            FactorKind::Diagonal(n) => {
                atoms.extend((0..n).map(|index| Atom::Coord { factor, index }));
            }
            FactorKind::Sym(n) => atoms.extend((0..n).map(|i| {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                Atom::Ray { factor, v }
            })),
            FactorKind::Spin(n) => {
                let mut w = vec![0.0; n - 1];
                w[0] = 1.0;
                atoms.push(Atom::Spin {
                    factor,
                    w: w.clone(),
                });
                w[0] = -1.0;
                atoms.push(Atom::Spin { factor, w });
            }
        }
    }
    atoms
}

fn spin_eigen(x0: f64, xbar: &[f64]) -> [(f64, Vec<f64>); 2] {
    let r = xbar.iter().map(|v| v * v).sum::<f64>().sqrt();
    let w: Vec<f64> = if r > SPIN_ZERO {
        xbar.iter().map(|v| v / r).collect()
    } else {
        let mut w = vec![0.0; xbar.len()];
        w[0] = 1.0;
        w
    };
    let neg = w.iter().map(|v| -v).collect();
    [(x0 + r, w), (x0 - r, neg)]
}

/// Eigen-decomposition of the compression `Q_e z` inside `V(e, 1)`, where
/// `e` is the sum of the (mutually orthogonal) `atoms`.
///
/// Atoms are grouped by factor in order of first appearance; the result is
/// stably sorted by nonincreasing value, so ties keep factor order and then
/// the local order of each factor's solver.
pub fn block_eigen(z: &Element, atoms: &[Atom]) -> Result<Vec<(f64, Atom)>> {
    let mut factors: Vec<usize> = Vec::new();
    for a in atoms {
        if !factors.contains(&a.factor()) {
            factors.push(a.factor());
        }
    }
    let mut out: Vec<(f64, Atom)> = Vec::with_capacity(atoms.len());
    for factor in factors {
        let group: Vec<&Atom> = atoms.iter().filter(|a| a.factor() == factor).collect();
        let mut local: Vec<(f64, Atom)> = match z.part(factor) {
            Part::Diagonal(d) => group
                .iter()
                .map(|a| match a {
                    Atom::Coord { index, .. } => (d[*index], (*a).clone()),
                    _ => unreachable!("diagonal factor holds coordinate atoms"),
                })
                .collect(),
            Part::Sym(m) => {
                let n = m.n();
                let k = group.len();
                let mut basis = vec![0.0; n * k];
                for (j, a) in group.iter().enumerate() {
                    let Atom::Ray { v, .. } = a else {
                        unreachable!("matrix factor holds ray atoms")
                    };
                    for i in 0..n {
                        basis[i * k + j] = v[i];
                    }
                }
                let compressed = m.compress(&basis, k);
                let eig = jacobi_eigen(&compressed, k)?;
                (0..k)
                    .map(|col| {
                        let w = eig.vector(col);
                        let v: Vec<f64> = (0..n)
                            .map(|i| (0..k).map(|j| basis[i * k + j] * w[j]).sum())
                            .collect();
                        let v = normalize(v).expect("orthonormal columns");
                        (eig.values[col], Atom::Ray { factor, v })
                    })
                    .collect()
            }
            Part::Spin { x0, xbar } => match group.as_slice() {
                [Atom::Spin { w, .. }] => {
                    let dot: f64 = xbar.iter().zip(w).map(|(a, b)| a * b).sum();
                    vec![(x0 + dot, group[0].clone())]
                }
                [_, _] => spin_eigen(*x0, xbar)
                    .into_iter()
                    .map(|(val, w)| (val, Atom::Spin { factor, w }))
                    .collect(),
                _ => unreachable!("a spin factor has rank 2"),
            },
        };
        local.sort_by(|a, b| b.0.total_cmp(&a.0));
        out.extend(local);
    }
    out.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(out)
}

/// Ordered list of mutually orthogonal primitive idempotents summing to `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanFrame {
    algebra: Algebra,
    atoms: Vec<Atom>,
    idempotents: Vec<Element>,
}

impl JordanFrame {
    pub(crate) fn from_atoms(algebra: &Algebra, atoms: Vec<Atom>) -> Self {
        let idempotents = atoms.iter().map(|a| a.to_element(algebra)).collect();
        Self {
            algebra: algebra.clone(),
            atoms,
            idempotents,
        }
    }

    /// Builds a frame from explicit idempotents, validating every frame
    /// invariant at `tol`.
    pub fn from_idempotents(idempotents: Vec<Element>, tol: f64) -> Result<Self> {
        let algebra = idempotents
            .first()
            .ok_or_else(|| Error::InvalidFrame("empty".into()))?
            .algebra()
            .clone();
        let mut atoms = Vec::with_capacity(idempotents.len());
        for (i, c) in idempotents.iter().enumerate() {
            c.check_same(&idempotents[0])?;
            let atom = Atom::recover(c, tol.max(1e-12)).ok_or_else(|| {
                Error::InvalidFrame(format!("element {i} is not a primitive idempotent"))
            })?;
            atoms.push(atom);
        }
        let frame = Self {
            algebra,
            atoms,
            idempotents,
        };
        frame.validate(tol)?;
        Ok(frame)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Checks idempotency, unit trace, pairwise orthogonality and
    /// completeness at `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let r = self.algebra.rank();
        if self.idempotents.len() != r {
            return Err(Error::InvalidFrame(format!(
                "{} idempotents for rank {r}",
                self.idempotents.len()
            )));
        }
        let mut sum = self.algebra.zero();
        for (i, c) in self.idempotents.iter().enumerate() {
            let sq = c.jordan_unchecked(c);
            if sq.distance(c) > tol {
                return Err(Error::InvalidFrame(format!("c{i} is not idempotent")));
            }
            if (c.trace() - 1.0).abs() > tol {
                return Err(Error::InvalidFrame(format!("c{i} does not have unit trace")));
            }
            for (j, d) in self.idempotents.iter().enumerate().skip(i + 1) {
                if c.jordan_unchecked(d).norm() > tol || c.inner_unchecked(d).abs() > tol {
                    return Err(Error::InvalidFrame(format!("c{i} and c{j} are not orthogonal")));
                }
            }
            sum = &sum + c;
        }
        if sum.distance(&self.algebra.identity()) > tol {
            return Err(Error::InvalidFrame("idempotents do not sum to e".into()));
        }
        Ok(())
    }
}

/// `λ(x)` together with a frame in `J(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    lambda: Vec<f64>,
    frame: JordanFrame,
}

impl SpectralDecomposition {
    /// Pairs explicit eigenvalues with a frame; `lambda` must be
    /// nonincreasing and match the frame length.
    pub fn new(lambda: Vec<f64>, frame: JordanFrame) -> Result<Self> {
        if lambda.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                actual: lambda.len(),
            });
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("eigenvalues must be nonincreasing".into()));
        }
        Ok(Self { lambda, frame })
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn frame(&self) -> &JordanFrame {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `Σ λᵢ cᵢ`.
    pub fn reconstruct(&self) -> Element {
        diag_build_unchecked(&self.lambda, &self.frame)
    }
}

/// Spectral decomposition of `x`.
///
/// Symmetric-matrix factors use the cyclic Jacobi solver, spin factors the
/// closed form `x₀ ± ‖x̄‖`. Eigenvalues of a product are the merged,
/// stably sorted factor eigenvalues.
pub fn spectral_decompose(x: &Element) -> Result<SpectralDecomposition> {
    if !x.is_finite() {
        return Err(Error::NonConvergence { sweeps: 0 });
    }
    let algebra = x.algebra();
    let pairs = block_eigen(x, &full_atoms(algebra))?;
    let (lambda, atoms): (Vec<f64>, Vec<Atom>) = pairs.into_iter().unzip();
    Ok(SpectralDecomposition {
        lambda,
        frame: JordanFrame::from_atoms(algebra, atoms),
    })
}

/// The eigenvalue map `λ(x)`.
pub fn eigenvalues(x: &Element) -> Result<Vec<f64>> {
    Ok(spectral_decompose(x)?.lambda)
}

/// Index ranges of maximal runs of a nonincreasing vector whose consecutive
/// gaps are at most `tau`.
pub fn group_blocks(lambda: &[f64], tau: f64) -> Vec<Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=lambda.len() {
        if i == lambda.len() || lambda[i - 1] - lambda[i] > tau {
            blocks.push(start..i);
            start = i;
        }
    }
    blocks
}

/// Whether the multiplication operators `L_x` and `L_y` commute, tested on
/// the orthonormal basis with tolerance `tol·(1 + ‖x‖‖y‖)`.
pub fn operator_commute(x: &Element, y: &Element, tol: f64) -> Result<bool> {
    x.check_same(y)?;
    let bound = tol * (1.0 + x.norm() * y.norm());
    Ok(x.algebra().basis().iter().all(|b| {
        let xyb = x.jordan_unchecked(&y.jordan_unchecked(b));
        let yxb = y.jordan_unchecked(&x.jordan_unchecked(b));
        xyb.distance(&yxb) <= bound
    }))
}

/// A frame in `J(x, s)` with the default grouping tolerance.
pub fn common_frame(x: &Element, s: &Element, tol: f64) -> Result<JordanFrame> {
    common_frame_with(x, s, tol, default_tau_group(x.norm()))
}

/// A frame in `J(x, s)`: it diagonalizes `s`, and `diag(x, J) = λ(x)`.
///
/// Inside each block of equal eigenvalues of `x` (grouped at `tau_group`)
/// the compression of `s` onto the block subalgebra is decomposed, so frame
/// elements there are ordered by nonincreasing `s`-diagonal.
pub fn common_frame_with(x: &Element, s: &Element, tol: f64, tau_group: f64) -> Result<JordanFrame> {
    if !operator_commute(x, s, tol)? {
        return Err(Error::NonCommuting);
    }
    let dec = spectral_decompose(x)?;
    let mut atoms = Vec::with_capacity(dec.rank());
    for block in group_blocks(&dec.lambda, tau_group) {
        let pairs = block_eigen(s, &dec.frame.atoms[block])?;
        atoms.extend(pairs.into_iter().map(|(_, a)| a));
    }
    Ok(JordanFrame::from_atoms(x.algebra(), atoms))
}

/// `diag(z, J) = (⟨c₁, z⟩, …, ⟨c_r, z⟩)`.
pub fn diag_in_frame(z: &Element, frame: &JordanFrame) -> Result<Vec<f64>> {
    if z.algebra() != frame.algebra() {
        return Err(Error::DescriptorMismatch);
    }
    Ok(frame
        .atoms
        .iter()
        .map(|a| atom_inner(a, z))
        .collect())
}

fn atom_inner(atom: &Atom, z: &Element) -> f64 {
    match (atom, z.part(atom.factor())) {
        (Atom::Coord { index, .. }, Part::Diagonal(d)) => d[*index],
        (Atom::Ray { v, .. }, Part::Sym(m)) => {
            let n = v.len();
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += v[i] * m.get(i, j) * v[j];
                }
            }
            s
        }
        (Atom::Spin { w, .. }, Part::Spin { x0, xbar }) => {
            x0 + xbar.iter().zip(w).map(|(a, b)| a * b).sum::<f64>()
        }
        _ => unreachable!("atom and element share a descriptor"),
    }
}

/// `Diag(u, J) = Σ uᵢ cᵢ`.
pub fn diag_build(u: &[f64], frame: &JordanFrame) -> Result<Element> {
    if u.len() != frame.len() {
        return Err(Error::LengthMismatch {
            expected: frame.len(),
            actual: u.len(),
        });
    }
    Ok(diag_build_unchecked(u, frame))
}

fn diag_build_unchecked(u: &[f64], frame: &JordanFrame) -> Element {
    frame
        .idempotents
        .iter()
        .zip(u)
        .fold(frame.algebra.zero(), |acc, (c, &w)| acc.axpy(w, c))
}

/// Householder completion: `n - 1` orthonormal vectors orthogonal to the
/// unit vector `v`.
fn orthogonal_complement(v: &[f64]) -> Vec<Vec<f64>> {
    let n = v.len();
    let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut u = v.to_vec();
    u[0] += sign;
    let uu: f64 = u.iter().map(|c| c * c).sum();
    // columns 1..n of H = I - 2uuᵀ/uᵀu; H maps v onto -sign·e₁
    (1..n)
        .map(|col| {
            (0..n)
                .map(|i| {
                    let id = if i == col { 1.0 } else { 0.0 };
                    id - 2.0 * u[i] * u[col] / uu
                })
                .collect()
        })
        .collect()
}

/// A frame in `J(x)` containing the primitive idempotent `c`, given
/// `‖x∘c − σc‖ ≤ tol·(1 + ‖x‖)`.
///
/// `x − σc` lies in `V(c, 0)`; it is diagonalized there and `c` is added back.
/// Elements are stably ordered by nonincreasing eigenvalue with `c` first
/// among its ties.
pub fn frame_extend(x: &Element, c: &Element, sigma: f64, tol: f64) -> Result<JordanFrame> {
    x.check_same(c)?;
    let residual = x.jordan_unchecked(c).distance(&c.scale(sigma));
    let atom = Atom::recover(c, tol.max(1e-12));
    let atom = match atom {
        Some(a) if residual <= tol * (1.0 + x.norm()) => a,
        _ => return Err(Error::NotEigenIdempotent { residual }),
    };
    let algebra = x.algebra();
    let mut complement = Vec::with_capacity(algebra.rank() - 1);
    for a in full_atoms(algebra) {
        if a.factor() != atom.factor() {
            complement.push(a);
        }
    }
    let factor = atom.factor();
    match &atom {
        Atom::Coord { index, .. } => {
            let n = algebra.factors()[factor].rank();
            complement.extend(
                (0..n)
                    .filter(|i| i != index)
                    .map(|index| Atom::Coord { factor, index }),
            );
        }
        Atom::Ray { v, .. } => {
            complement.extend(
                orthogonal_complement(v)
                    .into_iter()
                    .map(|v| Atom::Ray { factor, v }),
            );
        }
        Atom::Spin { w, .. } => complement.push(Atom::Spin {
            factor,
            w: w.iter().map(|v| -v).collect(),
        }),
    }
    let shifted = x.axpy(-sigma, &atom.to_element(algebra));
    let mut pairs = vec![(sigma, atom)];
    pairs.extend(block_eigen(&shifted, &complement)?);
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(JordanFrame::from_atoms(
        algebra,
        pairs.into_iter().map(|(_, a)| a).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn sym2(a: [[f64; 2]; 2]) -> Element {
        let m = SymMatrix::from_lower(2, &[a[0][0], a[0][1], a[1][0], a[1][1]]).unwrap();
        Element::new(Algebra::sym(2).unwrap(), vec![Part::Sym(m)]).unwrap()
    }

    fn spin3(x0: f64, xbar: [f64; 2]) -> Element {
        Element::new(
            Algebra::spin(3).unwrap(),
            vec![Part::Spin {
                x0,
                xbar: xbar.to_vec(),
            }],
        )
        .unwrap()
    }

    fn e11() -> Element {
        sym2([[1.0, 0.0], [0.0, 0.0]])
    }

    fn e22() -> Element {
        sym2([[0.0, 0.0], [0.0, 1.0]])
    }

    fn assert_close(a: &Element, b: &Element, tol: f64) {
        assert!(a.distance(b) <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn decompose_identity() {
        let alg = Algebra::new(vec![FactorKind::Sym(3), FactorKind::Spin(4)]).unwrap();
        let dec = spectral_decompose(&alg.identity()).unwrap();
        assert_eq!(dec.lambda(), &[1.0; 5]);
        dec.frame().validate(1e-12).unwrap();
    }

    #[test]
    fn decompose_sym2_diagonal() {
        let dec = spectral_decompose(&sym2([[2.0, 0.0], [0.0, 1.0]])).unwrap();
        assert_eq!(dec.lambda(), &[2.0, 1.0]);
        assert_close(&dec.frame().idempotents()[0], &e11(), TOL);
        assert_close(&dec.frame().idempotents()[1], &e22(), TOL);
    }

    #[test]
    fn decompose_spin_closed_form() {
        let dec = spectral_decompose(&spin3(1.0, [1.0, 0.0])).unwrap();
        assert_eq!(dec.lambda(), &[2.0, 0.0]);
        assert_close(&dec.frame().idempotents()[0], &spin3(0.5, [0.5, 0.0]), TOL);
        assert_close(&dec.frame().idempotents()[1], &spin3(0.5, [-0.5, 0.0]), TOL);
        for c in dec.frame().idempotents() {
            assert_close(&c.jordan(c).unwrap(), c, TOL);
        }
    }

    #[test]
    fn spin_with_zero_vector_part_uses_first_axis() {
        let dec = spectral_decompose(&spin3(3.0, [0.0, 0.0])).unwrap();
        assert_eq!(dec.lambda(), &[3.0, 3.0]);
        assert_close(&dec.frame().idempotents()[0], &spin3(0.5, [0.5, 0.0]), TOL);
    }

    #[test]
    fn product_eigenvalues_merge_with_stable_ties() {
        let alg = Algebra::new(vec![FactorKind::Diagonal(2), FactorKind::Spin(2)]).unwrap();
        let x = Element::new(
            alg,
            vec![
                Part::Diagonal(vec![1.0, 4.0]),
                Part::Spin {
                    x0: 2.0,
                    xbar: vec![-1.0],
                },
            ],
        )
        .unwrap();
        let dec = spectral_decompose(&x).unwrap();
        assert_eq!(dec.lambda(), &[4.0, 3.0, 1.0, 1.0]);
        // the tie at 1 keeps the diagonal factor first
        assert_eq!(dec.frame().atoms()[2].factor(), 0);
        assert_eq!(dec.frame().atoms()[3].factor(), 1);
        assert_close(&dec.reconstruct(), &x, TOL);
    }

    #[test]
    fn commute_examples() {
        let x = sym2([[0.0, 1.0], [1.0, 0.0]]);
        let y = sym2([[1.0, 0.0], [0.0, -1.0]]);
        assert!(!operator_commute(&x, &y, 1e-10).unwrap());
        assert!(operator_commute(&x, &x, 1e-10).unwrap());
        assert!(operator_commute(&x, &x.algebra().identity(), 1e-10).unwrap());
    }

    #[test]
    fn common_frame_follows_x_order() {
        let x = sym2([[2.0, 0.0], [0.0, 1.0]]);
        let s = sym2([[3.0, 0.0], [0.0, 7.0]]);
        let j = common_frame(&x, &s, 1e-10).unwrap();
        assert_eq!(diag_in_frame(&s, &j).unwrap(), vec![3.0, 7.0]);
        assert_close(&j.idempotents()[0], &e11(), TOL);
    }

    #[test]
    fn common_frame_with_identity_sorts_s() {
        let x = Algebra::sym(2).unwrap().identity();
        let s = sym2([[3.0, 0.0], [0.0, 7.0]]);
        let j = common_frame(&x, &s, 1e-10).unwrap();
        assert_eq!(diag_in_frame(&s, &j).unwrap(), vec![7.0, 3.0]);
        assert_eq!(diag_in_frame(&x, &j).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn common_frame_rejects_non_commuting() {
        let x = sym2([[2.0, 0.0], [0.0, 1.0]]);
        let s = sym2([[0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(common_frame(&x, &s, 1e-10), Err(Error::NonCommuting));
    }

    #[test]
    fn diag_and_diag_build() {
        let j = JordanFrame::from_idempotents(vec![e11(), e22()], 1e-12).unwrap();
        let z = sym2([[1.0, 1.0], [1.0, 1.0]]);
        assert_eq!(diag_in_frame(&z, &j).unwrap(), vec![1.0, 1.0]);
        let built = diag_build(&[3.0, 7.0], &j).unwrap();
        assert_close(&built, &sym2([[3.0, 0.0], [0.0, 7.0]]), 0.0);
        assert_close(&diag_build(&[1.0, 1.0], &j).unwrap(), &j.algebra().identity(), 0.0);
        assert!(diag_build(&[1.0], &j).is_err());
    }

    #[test]
    fn frame_validation_catches_bad_frames() {
        assert!(JordanFrame::from_idempotents(vec![e11(), e11()], 1e-12).is_err());
        assert!(JordanFrame::from_idempotents(vec![e11()], 1e-12).is_err());
        assert!(JordanFrame::from_idempotents(vec![sym2([[2.0, 0.0], [0.0, 0.0]]), e22()], 1e-12).is_err());
    }

    #[test]
    fn frame_extend_examples() {
        let x = sym2([[2.0, 0.0], [0.0, 1.0]]);
        let j = frame_extend(&x, &e11(), 2.0, 1e-10).unwrap();
        assert_close(&j.idempotents()[0], &e11(), TOL);
        assert_close(&j.idempotents()[1], &e22(), TOL);

        let x = spin3(1.0, [1.0, 0.0]);
        let c = spin3(0.5, [0.5, 0.0]);
        let j = frame_extend(&x, &c, 2.0, 1e-10).unwrap();
        assert_close(&j.idempotents()[0], &c, TOL);
        assert_close(&j.idempotents()[1], &spin3(0.5, [-0.5, 0.0]), TOL);

        assert!(matches!(
            frame_extend(&x, &c, 0.0, 1e-10),
            Err(Error::NotEigenIdempotent { .. })
        ));
    }

    #[test]
    fn frame_extend_of_scalar_multiple_keeps_c() {
        let alg = Algebra::sym(3).unwrap();
        let x = alg.identity().scale(5.0);
        let v = [0.6, 0.0, 0.8];
        let c = Atom::Ray {
            factor: 0,
            v: v.to_vec(),
        }
        .to_element(&alg);
        let j = frame_extend(&x, &c, 5.0, 1e-10).unwrap();
        j.validate(1e-12).unwrap();
        assert_close(&j.idempotents()[0], &c, 1e-14);
        assert_eq!(diag_in_frame(&x, &j).unwrap().len(), 3);
    }

    #[test]
    fn group_blocks_by_gap() {
        let b = group_blocks(&[5.0, 3.0, 3.0, 3.0, 1.0, 1.0, 0.0], 1e-9);
        assert_eq!(b, vec![0..1, 1..4, 4..6, 6..7]);
        assert_eq!(group_blocks(&[], 1.0), vec![]);
    }
}
