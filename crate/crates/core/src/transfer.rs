//! Subdifferentials of spectral functions `F = f∘λ`.
//!
//! For the regular, limiting and horizon kinds, `s ∈ ◇F(x)` iff `x` and `s`
//! operator commute and `diag(s, J) ∈ ◇f(λ(x))` for a common frame
//! `J ∈ J(x, s)`; for the Clarke kind the same holds with the Clarke set of
//! `f`. Any two frames of `J(x, s)` give diagonals that differ by a
//! permutation fixing `λ(x)`, and the catalog sets are invariant under such
//! permutations, so checking the single frame returned by
//! [`common_frame_with`] decides membership.
//!
//! [`lambda_k_subdiff_member`] evaluates the closed-form description of the
//! subdifferentials of `λ_k` directly in the algebra, without going through
//! a frame of `s`; the two paths are tested against each other.

use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::frame::{
    common_frame_with, default_tau_group, diag_build, diag_in_frame, group_blocks,
    spectral_decompose, JordanFrame,
};
use crate::peirce::quadratic_apply;
use crate::symfn::{SubdiffKind, SymmetricFunctionId};

/// Outcome of a spectral subdifferential membership query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralQueryReport {
    pub commutes: bool,
    pub frame_used: Option<JordanFrame>,
    pub diag_vector: Option<Vec<f64>>,
    pub member: bool,
    pub kind: SubdiffKind,
}

/// `F(x) = f(λ(x))`.
pub fn spectral_value(fid: SymmetricFunctionId, x: &Element) -> Result<f64> {
    fid.value(spectral_decompose(x)?.lambda())
}

pub fn spectral_subdiff_member(
    fid: SymmetricFunctionId,
    kind: SubdiffKind,
    x: &Element,
    s: &Element,
    tol: f64,
) -> Result<SpectralQueryReport> {
    spectral_subdiff_member_with(fid, kind, x, s, tol, default_tau_group(x.norm()))
}

/// Decides `s ∈ ◇F(x)` for `F = f∘λ`.
///
/// Non-commuting `s` yields `member = false, commutes = false`; a point
/// with `λ(x)` outside `dom f` yields `member = false` for every kind.
pub fn spectral_subdiff_member_with(
    fid: SymmetricFunctionId,
    kind: SubdiffKind,
    x: &Element,
    s: &Element,
    tol: f64,
    tau_group: f64,
) -> Result<SpectralQueryReport> {
    x.check_same(s)?;
    let frame = match common_frame_with(x, s, tol, tau_group) {
        Ok(f) => f,
        Err(Error::NonCommuting) => {
            return Ok(SpectralQueryReport {
                commutes: false,
                frame_used: None,
                diag_vector: None,
                member: false,
                kind,
            })
        }
        Err(e) => return Err(e),
    };
    let lambda = diag_in_frame(x, &frame)?;
    let d = diag_in_frame(s, &frame)?;
    let member = match fid.subdiff_with(kind, &lambda, tau_group) {
        Ok(set) => set.contains(&d, tol),
        Err(Error::DomainViolation(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(SpectralQueryReport {
        commutes: true,
        frame_used: Some(frame),
        diag_vector: Some(d),
        member,
        kind,
    })
}

/// `Diag(d, J)` for a frame `J ∈ J(x)`, after checking `d ∈ ◇f(λ(x))`.
pub fn spectral_subgradient_build(
    fid: SymmetricFunctionId,
    kind: SubdiffKind,
    x: &Element,
    d: &[f64],
    tol: f64,
) -> Result<Element> {
    let dec = spectral_decompose(x)?;
    let set = fid.subdiff_with(kind, dec.lambda(), default_tau_group(x.norm()))?;
    if d.len() != dec.rank() {
        return Err(Error::LengthMismatch {
            expected: dec.rank(),
            actual: d.len(),
        });
    }
    let distance = set.distance(d);
    if distance > tol {
        return Err(Error::NotASubgradient { distance });
    }
    diag_build(d, dec.frame())
}

/// `dist(0, ∂F(x)) = dist(0, ∂f(λ(x)))`.
pub fn spectral_dist0(fid: SymmetricFunctionId, x: &Element) -> Result<f64> {
    let dec = spectral_decompose(x)?;
    fid.dist0_with(dec.lambda(), default_tau_group(x.norm()))
}

/// Which part of the `λ_k` formula decided a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaKBranch {
    /// `s ∈ conv{c primitive : x∘c = λ_k(x)c}`.
    Clarke,
    /// Regular set equal to the Clarke set (`k = 1` or `λ_{k−1} > λ_k`).
    Regular,
    /// `λ_{k−1}(x) = λ_k(x)`: the regular subdifferential is empty.
    RegularEmpty,
    /// The horizon subdifferential is `{0}`.
    Horizon,
    /// Clarke set restricted to `rank(s) ≤ α`.
    Limiting,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaKVerdict {
    pub member: bool,
    pub branch: LambdaKBranch,
}

/// Relative threshold below which eigenvalues of `s` do not count towards
/// its rank: `1e-6·(1 + ‖s‖)`.
pub fn rank_threshold(s: &Element) -> f64 {
    1e-6 * (1.0 + s.norm())
}

pub fn lambda_k_subdiff_member(
    k: usize,
    kind: SubdiffKind,
    x: &Element,
    s: &Element,
    tol: f64,
) -> Result<LambdaKVerdict> {
    lambda_k_subdiff_member_with(k, kind, x, s, tol, default_tau_group(x.norm()))
}

/// Membership in the subdifferentials of `λ_k` at `x`.
///
/// With `ĉ` the idempotent of the block of eigenvalues equal to `λ_k(x)`,
/// the Clarke set is the set of `s ∈ V(ĉ, 1)` with nonnegative eigenvalues
/// summing to one; it is tested as `Q_ĉ s = s`, `λ_min(s) ≥ −tol` and
/// `|tr s − 1| ≤ tol`. The limiting set adds `rank(s) ≤ α` with
/// `α = 1 − k + |{i : λᵢ(x) ≥ λ_k(x)}|`. Rank counting uses
/// [`rank_threshold`], so limiting queries near the rank boundary are
/// tolerance-sensitive.
pub fn lambda_k_subdiff_member_with(
    k: usize,
    kind: SubdiffKind,
    x: &Element,
    s: &Element,
    tol: f64,
    tau_group: f64,
) -> Result<LambdaKVerdict> {
    x.check_same(s)?;
    let r = x.algebra().rank();
    if k == 0 || k > r {
        return Err(Error::IndexOutOfRange { index: k, rank: r });
    }
    if kind == SubdiffKind::Horizon {
        return Ok(LambdaKVerdict {
            member: s.norm() <= tol,
            branch: LambdaKBranch::Horizon,
        });
    }
    let dec = spectral_decompose(x)?;
    let block = group_blocks(dec.lambda(), tau_group)
        .into_iter()
        .find(|b| b.contains(&(k - 1)))
        .expect("k is within range");
    if kind == SubdiffKind::Regular && block.start != k - 1 {
        return Ok(LambdaKVerdict {
            member: false,
            branch: LambdaKBranch::RegularEmpty,
        });
    }
    let c_hat = dec.frame().idempotents()[block.clone()]
        .iter()
        .fold(x.algebra().zero(), |acc, c| &acc + c);
    let in_block_algebra = quadratic_apply(&c_hat, s)?.distance(s) <= tol;
    let lam_s = spectral_decompose(s)?.lambda().to_vec();
    let clarke = in_block_algebra
        && lam_s.last().is_some_and(|&m| m >= -tol)
        && (s.trace() - 1.0).abs() <= tol;
    let (member, branch) = match kind {
        SubdiffKind::Clarke => (clarke, LambdaKBranch::Clarke),
        SubdiffKind::Regular => (clarke, LambdaKBranch::Regular),
        SubdiffKind::Limiting => {
            let alpha = 1 + block.end - k;
            let threshold = rank_threshold(s);
            let rank = lam_s.iter().filter(|&&v| v > threshold).count();
            (clarke && rank <= alpha, LambdaKBranch::Limiting)
        }
        SubdiffKind::Horizon => unreachable!(),
    };
    Ok(LambdaKVerdict { member, branch })
}
