//! JSON representation of algebras, elements, frames and decompositions.
//!
//! ```json
//! {"algebra": [{"kind": "sym", "n": 2}, {"kind": "spin", "n": 3}, {"kind": "diag", "n": 4}],
//!  "parts": [[[1, 0], [0, 1]], {"x0": 1, "xbar": [0, 0]}, [1, 2, 3, 4]]}
//! ```
//!
//! Matrix parts are full row-major matrices; their asymmetry may not exceed
//! [`MAX_ASYMMETRY`].

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, Element, FactorKind, Part, SymMatrix};
use crate::error::{Error, Result};
use crate::frame::{JordanFrame, SpectralDecomposition};

pub const MAX_ASYMMETRY: f64 = 1e-12;

/// Frame invariants are checked at this tolerance when frames are loaded.
pub const FRAME_LOAD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindRepr {
    Diag,
    Sym,
    Spin,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FactorRepr {
    kind: KindRepr,
    n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum PartRepr {
    Spin { x0: f64, xbar: Vec<f64> },
    Matrix(Vec<Vec<f64>>),
    Vector(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ElementRepr {
    algebra: Vec<FactorRepr>,
    parts: Vec<PartRepr>,
}

fn algebra_from_repr(factors: &[FactorRepr]) -> Result<Algebra> {
    Algebra::new(
        factors
            .iter()
            .map(|f| match f.kind {
                KindRepr::Diag => FactorKind::Diagonal(f.n),
                KindRepr::Sym => FactorKind::Sym(f.n),
                KindRepr::Spin => FactorKind::Spin(f.n),
            })
            .collect(),
    )
}

fn algebra_to_repr(algebra: &Algebra) -> Vec<FactorRepr> {
    algebra
        .factors()
        .iter()
        .map(|f| match *f {
            FactorKind::Diagonal(n) => FactorRepr {
                kind: KindRepr::Diag,
                n,
            },
            FactorKind::Sym(n) => FactorRepr {
                kind: KindRepr::Sym,
                n,
            },
            FactorKind::Spin(n) => FactorRepr {
                kind: KindRepr::Spin,
                n,
            },
        })
        .collect()
}

fn part_from_repr(repr: PartRepr, kind: &FactorKind, index: usize) -> Result<Part> {
    let shape = |msg: &str| Error::Shape(format!("part {index} ({kind}): {msg}"));
    match (repr, *kind) {
        (PartRepr::Vector(v), FactorKind::Diagonal(n)) if v.len() == n => Ok(Part::Diagonal(v)),
        (PartRepr::Matrix(rows), FactorKind::Sym(n)) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(shape("expected an n × n matrix"));
            }
            for i in 0..n {
                for j in 0..i {
                    if (rows[i][j] - rows[j][i]).abs() > MAX_ASYMMETRY {
                        return Err(shape("matrix is not symmetric"));
                    }
                }
            }
            let flat: Vec<f64> = rows.into_iter().flatten().collect();
            Ok(Part::Sym(SymMatrix::from_lower(n, &flat)?))
        }
        (PartRepr::Spin { x0, xbar }, FactorKind::Spin(n)) if xbar.len() + 1 == n => {
            Ok(Part::Spin { x0, xbar })
        }
        (PartRepr::Vector(_), _) | (PartRepr::Matrix(_), _) | (PartRepr::Spin { .. }, _) => {
            Err(shape("wrong part layout"))
        }
    }
}

fn part_to_repr(part: &Part) -> PartRepr {
    match part {
        Part::Diagonal(v) => PartRepr::Vector(v.clone()),
        Part::Sym(m) => PartRepr::Matrix(
            (0..m.n())
                .map(|i| (0..m.n()).map(|j| m.get(i, j)).collect())
                .collect(),
        ),
        Part::Spin { x0, xbar } => PartRepr::Spin {
            x0: *x0,
            xbar: xbar.clone(),
        },
    }
}

impl TryFrom<ElementRepr> for Element {
    type Error = Error;

    fn try_from(repr: ElementRepr) -> Result<Self> {
        let algebra = algebra_from_repr(&repr.algebra)?;
        if repr.parts.len() != algebra.factors().len() {
            return Err(Error::Shape(format!(
                "{} parts for {} factors",
                repr.parts.len(),
                algebra.factors().len()
            )));
        }
        let parts = repr
            .parts
            .into_iter()
            .zip(algebra.factors())
            .enumerate()
            .map(|(i, (p, k))| part_from_repr(p, k, i))
            .collect::<Result<Vec<_>>>()?;
        let el = Element::new(algebra, parts)?;
        if !el.is_finite() {
            return Err(Error::Shape("non-finite coordinate".into()));
        }
        Ok(el)
    }
}

impl From<&Element> for ElementRepr {
    fn from(el: &Element) -> Self {
        ElementRepr {
            algebra: algebra_to_repr(el.algebra()),
            parts: el.parts().iter().map(part_to_repr).collect(),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        Element::try_from(repr).map_err(D::Error::custom)
    }
}

impl Serialize for JordanFrame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.idempotents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanFrame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let els = Vec::<Element>::deserialize(d)?;
        JordanFrame::from_idempotents(els, FRAME_LOAD_TOL).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    lambda: Vec<f64>,
    frame: JordanFrame,
}

impl Serialize for SpectralDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionRepr {
            lambda: self.lambda().to_vec(),
            frame: self.frame().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectralDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DecompositionRepr::deserialize(d)?;
        SpectralDecomposition::new(repr.lambda, repr.frame).map_err(D::Error::custom)
    }
}
