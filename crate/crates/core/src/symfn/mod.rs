//! Catalog of symmetric functions `f : ℝʳ → ℝ ∪ {+∞}` and their regular,
//! limiting, horizon and Clarke subdifferentials.
//!
//! Ties between entries of `u` (and zero tests) are decided at a grouping
//! tolerance `tau`, because the eigenvalues these functions are composed with
//! are computed in floating point. [`SymmetricFunctionId::subdiff`] uses
//! `1e-8·(1 + ‖u‖)`.
//!
//! Formulas, with `t = f_k(u)`, `I = {i : uᵢ = t}` and `aⁱ` the unit vectors:
//!
//! * `KthLargest(k)`: Clarke is `conv{aⁱ : i ∈ I}`; Regular equals Clarke if
//!   `k = 1` or `f_{k−1}(u) > t` and is empty otherwise; Limiting is the part
//!   of Clarke with at most `α = 1 − k + |{i : uᵢ ≥ t}|` nonzero entries;
//!   Horizon is `{0}`.
//! * `SumTopK(k)` is convex and finite, so all of Regular, Limiting and
//!   Clarke equal its convex subdifferential. Writing `A = {i : uᵢ > t}`, the
//!   maximizers of `⟨d, u⟩` over 0/1 vectors with `k` ones are those with ones
//!   on `A` and `k − |A|` ones on `I`; the subdifferential is their convex
//!   hull, `{d : d_A = 1, d_I ∈ [0,1]^I, Σ_I d = k − |A|, 0 elsewhere}`.
//!   Horizon is `{0}`.
//! * `L1Norm(μ)`: the box `Π ∂(μ|uᵢ|)`, i.e. `μ·sign(uᵢ)` off the zero set and
//!   `[−μ, μ]` on it. `L2Norm(μ)`: the gradient `μu/‖u‖`, or the ball of radius
//!   `μ` at the origin.
//! * `NegLogProd(μ) = −μ Σ log uᵢ` on `u > 0`, `Sum`, `HalfSqNorm`: singleton
//!   gradients.
//! * `ZeroNormCount(μ) = μ·|supp u|`: near `u`,
//!   `f(u + v) = f(u) + μ·|{i ∉ supp u : vᵢ ≠ 0}|`, so `f` is constant on
//!   `u + M` with `M = {v : vᵢ = 0 ∀ i ∉ supp u}` and jumps by at least `μ`
//!   off it. Hence `d` is a regular subgradient iff `d ⊥ M`:
//!   Regular = `{d : dᵢ = 0 ∀ i ∈ supp u}`. Nearby points have larger
//!   supports and smaller such subspaces, so Limiting equals Regular, and
//!   the horizon set (limits of `tₖdₖ`, `tₖ ↓ 0`) is the same subspace. These
//!   last two formulas are not taken from a reference; the oracle tests
//!   check them numerically. The value counts `|uᵢ| ≤ 1e-12·(1 + ‖u‖)` as
//!   zero ([`ZERO_RESOLUTION`]), so eigenvalues that are zero up to solver
//!   rounding do not enter the support; the sets use the coarser grouping
//!   tolerance.
//!
//! Except where noted above, Clarke is `conv ∂f + conv ∂^∞ f`; for every
//! entry here it coincides with the limiting set or its convex hull.

mod set;

/// Relative size below which [`SymmetricFunctionId::ZeroNormCount`] counts an
/// entry as zero; matches the eigensolver's stopping tolerance.
pub const ZERO_RESOLUTION: f64 = 1e-12;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{default_tau_group, group_blocks};

pub use set::{Generators, SetShape, SubdiffSet, MAX_FREE_BOX_COORDS, MAX_GENERATORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubdiffKind {
    Regular,
    Limiting,
    Horizon,
    Clarke,
}

impl SubdiffKind {
    pub const ALL: [SubdiffKind; 4] = [
        SubdiffKind::Regular,
        SubdiffKind::Limiting,
        SubdiffKind::Horizon,
        SubdiffKind::Clarke,
    ];
}

impl fmt::Display for SubdiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubdiffKind::Regular => "regular",
            SubdiffKind::Limiting => "limiting",
            SubdiffKind::Horizon => "horizon",
            SubdiffKind::Clarke => "clarke",
        })
    }
}

impl FromStr for SubdiffKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(SubdiffKind::Regular),
            "limiting" => Ok(SubdiffKind::Limiting),
            "horizon" => Ok(SubdiffKind::Horizon),
            "clarke" => Ok(SubdiffKind::Clarke),
            other => Err(Error::InvalidArgument(format!("unknown subdifferential kind {other:?}"))),
        }
    }
}

/// Catalog entry. Serializes as `name` or `name:param=value`, e.g.
/// `kth_largest:k=2` or `neglogprod:mu=1.5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetricFunctionId {
    KthLargest { k: usize },
    SumTopK { k: usize },
    L1Norm { mu: f64 },
    L2Norm { mu: f64 },
    NegLogProd { mu: f64 },
    Sum,
    HalfSqNorm,
    ZeroNormCount { mu: f64 },
}

impl fmt::Display for SymmetricFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SymmetricFunctionId::*;
        match self {
            KthLargest { k } => write!(f, "kth_largest:k={k}"),
            SumTopK { k } => write!(f, "sum_top_k:k={k}"),
            L1Norm { mu } => write!(f, "l1norm:mu={mu}"),
            L2Norm { mu } => write!(f, "l2norm:mu={mu}"),
            NegLogProd { mu } => write!(f, "neglogprod:mu={mu}"),
            Sum => f.write_str("sum"),
            HalfSqNorm => f.write_str("half_sq_norm"),
            ZeroNormCount { mu } => write!(f, "zero_norm_count:mu={mu}"),
        }
    }
}

impl FromStr for SymmetricFunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SymmetricFunctionId::*;
        let bad = || Error::ParseFunctionId(s.to_string());
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.split_once('=').ok_or_else(bad)?)),
            None => (s, None),
        };
        let index = |key: &str| -> Result<usize> {
            match param {
                Some((k, v)) if k == key => match v.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            }
        };
        let weight = || -> Result<f64> {
            match param {
                None => Ok(1.0),
                Some(("mu", v)) => match v.parse::<f64>() {
                    Ok(mu) if mu.is_finite() && mu > 0.0 => Ok(mu),
                    _ => Err(bad()),
                },
                Some(_) => Err(bad()),
            }
        };
        let plain = |id| if param.is_none() { Ok(id) } else { Err(bad()) };
        match name {
            "kth_largest" => Ok(KthLargest { k: index("k")? }),
            "sum_top_k" => Ok(SumTopK { k: index("k")? }),
            "l1norm" => Ok(L1Norm { mu: weight()? }),
            "l2norm" => Ok(L2Norm { mu: weight()? }),
            "neglogprod" => Ok(NegLogProd { mu: weight()? }),
            "zero_norm_count" => Ok(ZeroNormCount { mu: weight()? }),
            "sum" => plain(Sum),
            "half_sq_norm" => plain(HalfSqNorm),
            _ => Err(bad()),
        }
    }
}

impl Serialize for SymmetricFunctionId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SymmetricFunctionId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn sorted_desc(u: &[f64]) -> Vec<f64> {
    let mut s = u.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Indices of `u` sorted by nonincreasing value, and the block of tied
/// entries (consecutive gaps at most `tau`) holding sorted position `k − 1`.
fn tie_block(u: &[f64], k: usize, tau: f64) -> (Vec<usize>, std::ops::Range<usize>) {
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by(|&i, &j| u[j].total_cmp(&u[i]));
    let sorted: Vec<f64> = order.iter().map(|&i| u[i]).collect();
    let block = group_blocks(&sorted, tau)
        .into_iter()
        .find(|b| b.contains(&(k - 1)))
        .expect("k is within range");
    (order, block)
}

fn euclid(u: &[f64]) -> f64 {
    u.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl SymmetricFunctionId {
    /// Every catalog entry with representative parameters, for sweeps.
    pub fn catalog(rank: usize) -> Vec<SymmetricFunctionId> {
        use SymmetricFunctionId::*;
        let k = rank.div_ceil(2).max(1);
        vec![
            KthLargest { k: 1 },
            KthLargest { k },
            SumTopK { k },
            L1Norm { mu: 1.5 },
            L2Norm { mu: 0.5 },
            NegLogProd { mu: 1.0 },
            Sum,
            HalfSqNorm,
            ZeroNormCount { mu: 1.0 },
        ]
    }

    fn check_index(&self, r: usize) -> Result<()> {
        match *self {
            SymmetricFunctionId::KthLargest { k } | SymmetricFunctionId::SumTopK { k }
                if k == 0 || k > r =>
            {
                Err(Error::IndexOutOfRange { index: k, rank: r })
            }
            _ => Ok(()),
        }
    }

    /// `f(u)`, with `+∞` outside the domain.
    pub fn value(&self, u: &[f64]) -> Result<f64> {
        use SymmetricFunctionId::*;
        self.check_index(u.len())?;
        Ok(match *self {
            KthLargest { k } => sorted_desc(u)[k - 1],
            SumTopK { k } => sorted_desc(u)[..k].iter().sum(),
            L1Norm { mu } => mu * u.iter().map(|v| v.abs()).sum::<f64>(),
            L2Norm { mu } => mu * euclid(u),
            NegLogProd { mu } => {
                if u.iter().all(|&v| v > 0.0) {
                    -mu * u.iter().map(|v| v.ln()).sum::<f64>()
                } else {
                    f64::INFINITY
                }
            }
            Sum => u.iter().sum(),
            HalfSqNorm => 0.5 * u.iter().map(|v| v * v).sum::<f64>(),
            ZeroNormCount { mu } => {
                let zero = ZERO_RESOLUTION * (1.0 + euclid(u));
                mu * u.iter().filter(|&&v| v.abs() > zero).count() as f64
            }
        })
    }

    /// Subdifferential at the default grouping tolerance `1e-8·(1 + ‖u‖)`.
    pub fn subdiff(&self, kind: SubdiffKind, u: &[f64]) -> Result<SubdiffSet> {
        self.subdiff_with(kind, u, default_tau_group(euclid(u)))
    }

    /// Subdifferential of `kind` at `u`; entries of `u` within `tau` of each
    /// other (or of zero) are treated as equal.
    pub fn subdiff_with(&self, kind: SubdiffKind, u: &[f64], tau: f64) -> Result<SubdiffSet> {
        use SymmetricFunctionId::*;
        let r = u.len();
        if !self.value(u)?.is_finite() {
            return Err(Error::DomainViolation(self.to_string()));
        }
        let horizon_trivial = kind == SubdiffKind::Horizon && !matches!(self, ZeroNormCount { .. });
        if horizon_trivial {
            return Ok(SubdiffSet::origin(r));
        }
        let set = match *self {
            KthLargest { k } => {
                let (order, block) = tie_block(u, k, tau);
                let support = order[block.clone()].to_vec();
                match kind {
                    SubdiffKind::Clarke => SubdiffSet::new(r, SetShape::SimplexFace { dim: r, support }),
                    SubdiffKind::Regular => {
                        if block.start == k - 1 {
                            SubdiffSet::new(r, SetShape::SimplexFace { dim: r, support })
                        } else {
                            SubdiffSet::empty(r)
                        }
                    }
                    SubdiffKind::Limiting => SubdiffSet::new(
                        r,
                        SetShape::SparseSimplexFace {
                            dim: r,
                            support,
                            max_card: 1 + block.end - k,
                        },
                    ),
                    SubdiffKind::Horizon => unreachable!(),
                }
            }
            SumTopK { k } => {
                let (order, block) = tie_block(u, k, tau);
                SubdiffSet::new(
                    r,
                    SetShape::CappedSimplex {
                        dim: r,
                        ones: order[..block.start].to_vec(),
                        free: order[block.clone()].to_vec(),
                        mass: k - block.start,
                    },
                )
            }
            L1Norm { mu } => {
                let (lo, hi) = u
                    .iter()
                    .map(|&v| {
                        if v.abs() <= tau {
                            (-mu, mu)
                        } else {
                            (mu * v.signum(), mu * v.signum())
                        }
                    })
                    .unzip();
                SubdiffSet::new(r, SetShape::Box { lo, hi })
            }
            L2Norm { mu } => {
                let n = euclid(u);
                if n <= tau {
                    SubdiffSet::new(
                        r,
                        SetShape::Ball {
                            center: vec![0.0; r],
                            radius: mu,
                        },
                    )
                } else {
                    SubdiffSet::point(u.iter().map(|v| mu * v / n).collect())
                }
            }
            NegLogProd { mu } => SubdiffSet::point(u.iter().map(|v| -mu / v).collect()),
            Sum => SubdiffSet::point(vec![1.0; r]),
            HalfSqNorm => SubdiffSet::point(u.to_vec()),
            ZeroNormCount { .. } => {
                let (lo, hi) = u
                    .iter()
                    .map(|&v| {
                        if v.abs() <= tau {
                            (f64::NEG_INFINITY, f64::INFINITY)
                        } else {
                            (0.0, 0.0)
                        }
                    })
                    .unzip();
                SubdiffSet::new(r, SetShape::Box { lo, hi })
            }
        };
        Ok(set)
    }

    /// Distance from the origin to the limiting subdifferential at `u`.
    pub fn dist0(&self, u: &[f64]) -> Result<f64> {
        self.dist0_with(u, default_tau_group(euclid(u)))
    }

    pub fn dist0_with(&self, u: &[f64], tau: f64) -> Result<f64> {
        self.subdiff_with(SubdiffKind::Limiting, u, tau)?
            .dist0()
            .ok_or(Error::EmptySubdifferential)
    }
}

/// `f(u)` for a catalog entry.
pub fn value(fid: SymmetricFunctionId, u: &[f64]) -> Result<f64> {
    fid.value(u)
}

pub fn subdiff(fid: SymmetricFunctionId, kind: SubdiffKind, u: &[f64]) -> Result<SubdiffSet> {
    fid.subdiff(kind, u)
}

pub fn dist0(fid: SymmetricFunctionId, u: &[f64]) -> Result<f64> {
    fid.dist0(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymmetricFunctionId::*;

    fn fid(s: &str) -> SymmetricFunctionId {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "kth_largest:k=2",
            "sum_top_k:k=3",
            "l1norm:mu=1.5",
            "l2norm:mu=0.25",
            "neglogprod:mu=1.5",
            "sum",
            "half_sq_norm",
            "zero_norm_count:mu=2",
        ] {
            assert_eq!(fid(s).to_string(), s);
        }
        assert_eq!(fid("neglogprod"), NegLogProd { mu: 1.0 });
        for bad in ["kth_largest", "kth_largest:k=0", "sum:k=1", "l1norm:mu=-1", "nope", "l2norm:k=1"] {
            assert!(bad.parse::<SymmetricFunctionId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn values() {
        assert_eq!(KthLargest { k: 2 }.value(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(NegLogProd { mu: 1.0 }.value(&[1.0, 1.0, 1.0]).unwrap(), 0.0);
        assert_eq!(NegLogProd { mu: 1.0 }.value(&[1.0, 0.0]).unwrap(), f64::INFINITY);
        assert_eq!(ZeroNormCount { mu: 1.0 }.value(&[0.0, 3.0, 0.0, -1.0]).unwrap(), 2.0);
        assert_eq!(ZeroNormCount { mu: 1.0 }.value(&[1e-17, 3.0, 0.0, -1.0]).unwrap(), 2.0);
        assert_eq!(SumTopK { k: 2 }.value(&[3.0, 1.0, 2.0]).unwrap(), 5.0);
        assert!(KthLargest { k: 4 }.value(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn second_largest_at_a_tie() {
        let f = KthLargest { k: 2 };
        let u = [1.0, 1.0];
        assert!(f.subdiff(SubdiffKind::Regular, &u).unwrap().is_empty());

        let lim = f.subdiff(SubdiffKind::Limiting, &u).unwrap();
        assert!(lim.contains(&[1.0, 0.0], 1e-12));
        assert!(lim.contains(&[0.0, 1.0], 1e-12));
        assert!(!lim.contains(&[0.5, 0.5], 1e-3));

        let clarke = f.subdiff(SubdiffKind::Clarke, &u).unwrap();
        assert!(clarke.contains(&[0.5, 0.5], 1e-12));
        assert!(clarke.contains(&[0.2, 0.8], 1e-12));
        assert!(!clarke.contains(&[0.6, 0.6], 1e-3));

        let hz = f.subdiff(SubdiffKind::Horizon, &u).unwrap();
        assert_eq!(hz.shape(), &SetShape::Point(vec![0.0, 0.0]));
    }

    #[test]
    fn second_largest_below_a_strict_gap() {
        let f = KthLargest { k: 2 };
        let u = [3.0, 1.0, 1.0];
        let clarke = f.subdiff(SubdiffKind::Clarke, &u).unwrap();
        let lim = f.subdiff(SubdiffKind::Limiting, &u).unwrap();
        // α = 1 − 2 + 3 = 2 covers the whole face
        for d in [[0.0, 1.0, 0.0], [0.0, 0.5, 0.5], [0.0, 0.0, 1.0]] {
            assert!(clarke.contains(&d, 1e-12));
            assert!(lim.contains(&d, 1e-12));
        }
        assert!(!clarke.contains(&[1.0, 0.0, 0.0], 1e-3));
        assert!(f.subdiff(SubdiffKind::Regular, &u).unwrap().contains(&[0.0, 0.5, 0.5], 1e-12));
    }

    #[test]
    fn smooth_entries() {
        let u = [0.5, -2.0, 1.0];
        for kind in SubdiffKind::ALL {
            let s = HalfSqNorm.subdiff(kind, &u).unwrap();
            let expected = if kind == SubdiffKind::Horizon { vec![0.0; 3] } else { u.to_vec() };
            assert_eq!(s.shape(), &SetShape::Point(expected));
        }
        let s = Sum.subdiff(SubdiffKind::Limiting, &u).unwrap();
        assert_eq!(s.shape(), &SetShape::Point(vec![1.0; 3]));
        assert!(NegLogProd { mu: 1.0 }.subdiff(SubdiffKind::Regular, &u).is_err());
        let s = NegLogProd { mu: 2.0 }.subdiff(SubdiffKind::Regular, &[1.0, 4.0]).unwrap();
        assert_eq!(s.shape(), &SetShape::Point(vec![-2.0, -0.5]));
    }

    #[test]
    fn l1_and_l2_at_kinks() {
        let l1 = L1Norm { mu: 2.0 }.subdiff(SubdiffKind::Limiting, &[0.0, -1.0, 3.0]).unwrap();
        assert!(l1.contains(&[1.5, -2.0, 2.0], 1e-12));
        assert!(!l1.contains(&[2.5, -2.0, 2.0], 1e-3));
        assert_eq!(l1.generators().unwrap().points.len(), 2);

        let l2 = L2Norm { mu: 1.0 }.subdiff(SubdiffKind::Clarke, &[0.0, 0.0]).unwrap();
        assert!(l2.contains(&[0.6, 0.8], 1e-12));
        assert!(!l2.contains(&[0.6, 0.9], 1e-3));
        assert_eq!(L2Norm { mu: 1.0 }.dist0(&[0.0, 0.0]).unwrap(), 0.0);
        assert!((L2Norm { mu: 3.0 }.dist0(&[3.0, 4.0]).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn sum_top_k_with_ties() {
        let f = SumTopK { k: 2 };
        let s = f.subdiff(SubdiffKind::Limiting, &[5.0, 2.0, 2.0, 1.0]).unwrap();
        assert!(s.contains(&[1.0, 0.3, 0.7, 0.0], 1e-12));
        assert!(!s.contains(&[1.0, 0.3, 0.3, 0.4], 1e-3));
        let g = s.generators().unwrap();
        assert_eq!(g.points.len(), 2);
    }

    #[test]
    fn zero_norm_count_sets() {
        let f = ZeroNormCount { mu: 1.0 };
        let u = [0.0, 2.0, 0.0];
        for kind in SubdiffKind::ALL {
            let s = f.subdiff(kind, &u).unwrap();
            assert!(s.contains(&[100.0, 0.0, -7.0], 1e-12), "{kind}");
            assert!(!s.contains(&[0.0, 0.1, 0.0], 1e-3), "{kind}");
        }
        assert_eq!(f.dist0(&u).unwrap(), 0.0);
    }

    #[test]
    fn dist0_examples() {
        assert_eq!(KthLargest { k: 1 }.dist0(&[2.0, 1.0]).unwrap(), 1.0);
        assert!((KthLargest { k: 1 }.dist0(&[1.0, 1.0]).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(KthLargest { k: 2 }.dist0(&[1.0, 1.0]).unwrap(), 1.0);
        let u = [3.0, -4.0];
        assert_eq!(HalfSqNorm.dist0(&u).unwrap(), 5.0);
        assert_eq!(Sum.dist0(&[1.0, 2.0, 3.0, 4.0]).unwrap(), 2.0);
    }

    #[test]
    fn serde_uses_the_string_form() {
        let json = serde_json::to_string(&KthLargest { k: 2 }).unwrap();
        assert_eq!(json, "\"kth_largest:k=2\"");
        let back: SymmetricFunctionId = serde_json::from_str(&json).unwrap();
        assert_eq!(back, KthLargest { k: 2 });
        let kind: SubdiffKind = serde_json::from_str("\"clarke\"").unwrap();
        assert_eq!(kind, SubdiffKind::Clarke);
    }
}
