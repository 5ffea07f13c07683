//! Product Euclidean Jordan algebras and their elements.
//!
//! An [`Algebra`] is a direct product of factors, each one of
//!
//! * `Diagonal(n)`: ℝⁿ with the componentwise product, rank `n`;
//! * `Sym(n)`: real symmetric `n × n` matrices with `X∘Y = (XY + YX)/2`, rank `n`;
//! * `Spin(n)`: pairs `(x₀, x̄) ∈ ℝ × ℝⁿ⁻¹` with
//!   `x∘y = (x₀y₀ + x̄·ȳ, x₀ȳ + y₀x̄)`, rank 2.
//!
//! The trace of a spin element is `2x₀`, so the trace inner product on a spin
//! factor is `2(x₀y₀ + x̄·ȳ)` and every primitive idempotent has unit norm.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Diagonal(usize),
    Sym(usize),
    Spin(usize),
}

impl FactorKind {
    pub fn rank(&self) -> usize {
        match *self {
            FactorKind::Diagonal(n) | FactorKind::Sym(n) => n,
            FactorKind::Spin(_) => 2,
        }
    }

    /// Real dimension of the factor as a vector space.
    pub fn dim(&self) -> usize {
        match *self {
            FactorKind::Diagonal(n) | FactorKind::Spin(n) => n,
            FactorKind::Sym(n) => n * (n + 1) / 2,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FactorKind::Diagonal(0) => Err(Error::InvalidAlgebra("Diagonal(0)".into())),
            FactorKind::Sym(0) => Err(Error::InvalidAlgebra("Sym(0)".into())),
            FactorKind::Spin(n) if n < 2 => {
                Err(Error::InvalidAlgebra(format!("Spin({n}) needs n >= 2")))
            }
            _ => Ok(()),
        }
    }

    fn zero_part(&self) -> Part {
        match *self {
            FactorKind::Diagonal(n) => Part::Diagonal(vec![0.0; n]),
            FactorKind::Sym(n) => Part::Sym(SymMatrix::zeros(n)),
            FactorKind::Spin(n) => Part::Spin {
                x0: 0.0,
                xbar: vec![0.0; n - 1],
            },
        }
    }

    fn identity_part(&self) -> Part {
        match *self {
            FactorKind::Diagonal(n) => Part::Diagonal(vec![1.0; n]),
            FactorKind::Sym(n) => Part::Sym(SymMatrix::identity(n)),
            FactorKind::Spin(n) => Part::Spin {
                x0: 1.0,
                xbar: vec![0.0; n - 1],
            },
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Diagonal(n) => write!(f, "Diagonal({n})"),
            FactorKind::Sym(n) => write!(f, "Sym({n})"),
            FactorKind::Spin(n) => write!(f, "Spin({n})"),
        }
    }
}

/// Descriptor of a product algebra. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    factors: Arc<[FactorKind]>,
    rank: usize,
    dim: usize,
}

impl Algebra {
    pub fn new(factors: Vec<FactorKind>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidAlgebra("no factors".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        let rank = factors.iter().map(FactorKind::rank).sum();
        let dim = factors.iter().map(FactorKind::dim).sum();
        Ok(Self {
            factors: factors.into(),
            rank,
            dim,
        })
    }

    pub fn diagonal(n: usize) -> Result<Self> {
        Self::new(vec![FactorKind::Diagonal(n)])
    }

    pub fn sym(n: usize) -> Result<Self> {
        Self::new(vec![FactorKind::Sym(n)])
    }

    pub fn spin(n: usize) -> Result<Self> {
        Self::new(vec![FactorKind::Spin(n)])
    }

    pub fn factors(&self) -> &[FactorKind] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            parts: self.factors.iter().map(FactorKind::zero_part).collect(),
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            algebra: self.clone(),
            parts: self.factors.iter().map(FactorKind::identity_part).collect(),
        }
    }

    /// Builds an element from coordinates in the orthonormal basis returned
    /// by [`Algebra::basis`]. The map is an isometry onto ℝ^dim.
    pub fn from_coords(&self, coords: &[f64]) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: coords.len(),
            });
        }
        let mut offset = 0;
        let mut parts = Vec::with_capacity(self.factors.len());
        for f in self.factors.iter() {
            let c = &coords[offset..offset + f.dim()];
            offset += f.dim();
            parts.push(match *f {
                FactorKind::Diagonal(_) => Part::Diagonal(c.to_vec()),
                FactorKind::Sym(n) => {
                    let mut m = SymMatrix::zeros(n);
                    let mut k = 0;
                    for i in 0..n {
                        m.set(i, i, c[k]);
                        k += 1;
                    }
                    for i in 0..n {
                        for j in (i + 1)..n {
                            m.set(i, j, c[k] / SQRT_2);
                            k += 1;
                        }
                    }
                    Part::Sym(m)
                }
                FactorKind::Spin(_) => Part::Spin {
                    x0: c[0] / SQRT_2,
                    xbar: c[1..].iter().map(|v| v / SQRT_2).collect(),
                },
            });
        }
        Ok(Element {
            algebra: self.clone(),
            parts,
        })
    }

    /// Orthonormal basis under the trace inner product.
    pub fn basis(&self) -> Vec<Element> {
        let mut unit = vec![0.0; self.dim];
        (0..self.dim)
            .map(|k| {
                unit[k] = 1.0;
                let b = self.from_coords(&unit).expect("length matches");
                unit[k] = 0.0;
                b
            })
            .collect()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" × ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Dense symmetric matrix. Both triangles are stored and kept equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from a row-major full matrix; the lower triangle wins.
    pub fn from_lower(n: usize, full: &[f64]) -> Result<Self> {
        if full.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: full.len(),
            });
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, full[i * n + j]);
            }
        }
        Ok(m)
    }

    /// `Σ wₖ vₖ vₖᵀ`.
    pub fn from_rank_one_sum(n: usize, terms: &[(f64, &[f64])]) -> Self {
        let mut m = Self::zeros(n);
        for &(w, v) in terms {
            for i in 0..n {
                for j in 0..=i {
                    let val = m.get(i, j) + w * v[i] * v[j];
                    m.set(i, j, val);
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    fn matmul(&self, other: &SymMatrix) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `(XY + YX)/2`.
    pub fn jordan(&self, other: &SymMatrix) -> SymMatrix {
        let xy = self.matmul(other);
        let n = self.n;
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, 0.5 * (xy[i * n + j] + xy[j * n + i]));
            }
        }
        m
    }

    /// `Vᵀ X V` for a row-major `n × m` matrix `v`.
    pub fn compress(&self, v: &[f64], m: usize) -> Vec<f64> {
        let n = self.n;
        let mut xv = vec![0.0; n * m];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..m {
                    xv[i * m + j] += a * v[k * m + j];
                }
            }
        }
        let mut out = vec![0.0; m * m];
        for a in 0..m {
            for b in 0..=a {
                let s: f64 = (0..n).map(|i| v[i * m + a] * xv[i * m + b]).sum();
                out[a * m + b] = s;
                out[b * m + a] = s;
            }
        }
        out
    }

    fn zip(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|a| f(*a)).collect(),
        }
    }
}

/// Coordinates of one factor of an element.
#[derive(Debug, Clone, PartialEq)]
pub enum Part {
    Diagonal(Vec<f64>),
    Sym(SymMatrix),
    Spin { x0: f64, xbar: Vec<f64> },
}

impl Part {
    fn matches(&self, kind: &FactorKind) -> bool {
        match (self, kind) {
            (Part::Diagonal(v), FactorKind::Diagonal(n)) => v.len() == *n,
            (Part::Sym(m), FactorKind::Sym(n)) => m.n == *n,
            (Part::Spin { xbar, .. }, FactorKind::Spin(n)) => xbar.len() + 1 == *n,
            _ => false,
        }
    }

    fn zip(&self, other: &Part, f: impl Fn(f64, f64) -> f64 + Copy) -> Part {
        match (self, other) {
            (Part::Diagonal(a), Part::Diagonal(b)) => {
                Part::Diagonal(a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect())
            }
            (Part::Sym(a), Part::Sym(b)) => Part::Sym(a.zip(b, f)),
            (Part::Spin { x0: a0, xbar: a }, Part::Spin { x0: b0, xbar: b }) => Part::Spin {
                x0: f(*a0, *b0),
                xbar: a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect(),
            },
            _ => unreachable!("parts checked against a shared descriptor"),
        }
    }

    fn map(&self, f: impl Fn(f64) -> f64 + Copy) -> Part {
        match self {
            Part::Diagonal(a) => Part::Diagonal(a.iter().map(|x| f(*x)).collect()),
            Part::Sym(a) => Part::Sym(a.map(f)),
            Part::Spin { x0, xbar } => Part::Spin {
                x0: f(*x0),
                xbar: xbar.iter().map(|x| f(*x)).collect(),
            },
        }
    }

    fn jordan(&self, other: &Part) -> Part {
        match (self, other) {
            (Part::Diagonal(a), Part::Diagonal(b)) => {
                Part::Diagonal(a.iter().zip(b).map(|(x, y)| x * y).collect())
            }
            (Part::Sym(a), Part::Sym(b)) => Part::Sym(a.jordan(b)),
            (Part::Spin { x0: a0, xbar: a }, Part::Spin { x0: b0, xbar: b }) => {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                Part::Spin {
                    x0: a0 * b0 + dot,
                    xbar: a.iter().zip(b).map(|(x, y)| a0 * y + b0 * x).collect(),
                }
            }
            _ => unreachable!("parts checked against a shared descriptor"),
        }
    }

    fn inner(&self, other: &Part) -> f64 {
        match (self, other) {
            (Part::Diagonal(a), Part::Diagonal(b)) => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            (Part::Sym(a), Part::Sym(b)) => a.data.iter().zip(&b.data).map(|(x, y)| x * y).sum(),
            (Part::Spin { x0: a0, xbar: a }, Part::Spin { x0: b0, xbar: b }) => {
                2.0 * (a0 * b0 + a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>())
            }
            _ => unreachable!("parts checked against a shared descriptor"),
        }
    }

    fn trace(&self) -> f64 {
        match self {
            Part::Diagonal(a) => a.iter().sum(),
            Part::Sym(a) => (0..a.n).map(|i| a.get(i, i)).sum(),
            Part::Spin { x0, .. } => 2.0 * x0,
        }
    }

    fn push_coords(&self, out: &mut Vec<f64>) {
        match self {
            Part::Diagonal(a) => out.extend_from_slice(a),
            Part::Sym(m) => {
                for i in 0..m.n {
                    out.push(m.get(i, i));
                }
                for i in 0..m.n {
                    for j in (i + 1)..m.n {
                        out.push(SQRT_2 * m.get(i, j));
                    }
                }
            }
            Part::Spin { x0, xbar } => {
                out.push(SQRT_2 * x0);
                out.extend(xbar.iter().map(|v| SQRT_2 * v));
            }
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Part::Diagonal(a) => a.iter().all(|v| v.is_finite()),
            Part::Sym(m) => m.data.iter().all(|v| v.is_finite()),
            Part::Spin { x0, xbar } => x0.is_finite() && xbar.iter().all(|v| v.is_finite()),
        }
    }
}

/// An element of a product algebra, stored per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    algebra: Algebra,
    parts: Vec<Part>,
}

impl Element {
    pub fn new(algebra: Algebra, parts: Vec<Part>) -> Result<Self> {
        if parts.len() != algebra.factors().len() {
            return Err(Error::Shape(format!(
                "{} parts for {} factors",
                parts.len(),
                algebra.factors().len()
            )));
        }
        for (i, (p, k)) in parts.iter().zip(algebra.factors()).enumerate() {
            if !p.matches(k) {
                return Err(Error::Shape(format!("part {i} does not fit {k}")));
            }
        }
        Ok(Self { algebra, parts })
    }

    pub(crate) fn from_parts_unchecked(algebra: Algebra, parts: Vec<Part>) -> Self {
        Self { algebra, parts }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn part(&self, factor: usize) -> &Part {
        &self.parts[factor]
    }

    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(Part::is_finite)
    }

    pub(crate) fn check_same(&self, other: &Element) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    /// Coordinates in the orthonormal basis of [`Algebra::basis`].
    pub fn coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.algebra.dim());
        for p in &self.parts {
            p.push_coords(&mut out);
        }
        out
    }

    /// The Jordan product `self ∘ other`.
    pub fn jordan(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.jordan_unchecked(other))
    }

    pub(crate) fn jordan_unchecked(&self, other: &Element) -> Element {
        Element {
            algebra: self.algebra.clone(),
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| a.jordan(b))
                .collect(),
        }
    }

    /// Trace inner product `tr(self ∘ other)`.
    pub fn inner(&self, other: &Element) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Element) -> f64 {
        self.parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.inner(b))
            .sum()
    }

    pub fn trace(&self) -> f64 {
        self.parts.iter().map(Part::trace).sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner_unchecked(self).max(0.0).sqrt()
    }

    pub fn scale(&self, a: f64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            parts: self.parts.iter().map(|p| p.map(|v| a * v)).collect(),
        }
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: f64, other: &Element) -> Element {
        assert_eq!(self.algebra, other.algebra, "descriptor mismatch");
        Element {
            algebra: self.algebra.clone(),
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(p, q)| p.zip(q, |x, y| x + a * y))
                .collect(),
        }
    }

    pub fn distance(&self, other: &Element) -> f64 {
        (self - other).norm()
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        self.axpy(-1.0, rhs)
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

impl Mul<&Element> for f64 {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

/// The Jordan product `x ∘ y`.
pub fn jordan_product(x: &Element, y: &Element) -> Result<Element> {
    x.jordan(y)
}

/// The trace inner product `⟨x, y⟩ = tr(x ∘ y)`.
pub fn trace_inner(x: &Element, y: &Element) -> Result<f64> {
    x.inner(y)
}
