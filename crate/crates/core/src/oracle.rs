//! Brute-force oracles working on plain coordinate vectors.
//!
//! Nothing here uses the subdifferential formulas it is meant to check:
//! callers pass evaluation closures, typically built from
//! [`crate::frame::eigenvalues`] and the orthonormal coordinates of an
//! algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sample::{gaussian_vec, stream_rng};

/// Default number of probe directions per radius.
pub const DEFAULT_DIRECTIONS: usize = 512;

/// Largest point set [`hull_member_bruteforce`] accepts.
pub const MAX_HULL_POINTS: usize = 10_000;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FdEstimate {
    /// Difference quotient at each `t` of the grid.
    pub quotients: Vec<Vec<f64>>,
    /// Richardson extrapolation from the two smallest steps.
    pub value: Vec<f64>,
    /// Distance between the quotient at the smallest step and `value`.
    pub error_estimate: f64,
    /// Convergence order fitted from successive quotient differences;
    /// `+∞` when the quotients agree to within rounding.
    pub observed_order: f64,
}

/// Quotients closer than this are treated as equal when estimating the
/// order.
const FD_NOISE: f64 = 1e-9;

/// One-sided difference quotients `(g(x + tz) − g(x))/t` over a decreasing
/// grid, with first-order Richardson extrapolation.
pub fn fd_dir_derivative<G>(eval: G, x: &[f64], z: &[f64], t_grid: &[f64]) -> Result<FdEstimate>
where
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if x.len() != z.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: z.len(),
        });
    }
    if t_grid.len() < 2 || t_grid.iter().any(|&t| !t.is_finite() || t <= 0.0) || t_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "t grid needs at least two positive, strictly decreasing steps".into(),
        ));
    }
    let g0 = eval(x)?;
    let quotients = t_grid
        .iter()
        .map(|&t| {
            let xt: Vec<f64> = x.iter().zip(z).map(|(a, b)| a + t * b).collect();
            Ok(eval(&xt)?
                .iter()
                .zip(&g0)
                .map(|(a, b)| (a - b) / t)
                .collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let m = t_grid.len();
    let (t1, t2) = (t_grid[m - 2], t_grid[m - 1]);
    let (q1, q2) = (&quotients[m - 2], &quotients[m - 1]);
    let value: Vec<f64> = q1
        .iter()
        .zip(q2)
        .map(|(a, b)| (t1 * b - t2 * a) / (t1 - t2))
        .collect();
    let error_estimate = diff_norm(q2, &value);

    let diffs: Vec<f64> = quotients.windows(2).map(|w| diff_norm(&w[0], &w[1])).collect();
    let observed_order = if diffs.iter().all(|&d| d <= FD_NOISE) {
        f64::INFINITY
    } else {
        // average log-ratio of successive differences against step ratios
        let pairs: Vec<f64> = diffs
            .windows(2)
            .zip(t_grid.windows(2))
            .filter(|(d, _)| d[0] > FD_NOISE && d[1] > FD_NOISE)
            .map(|(d, t)| (d[0] / d[1]).ln() / (t[0] / t[1]).ln())
            .collect();
        if pairs.is_empty() {
            f64::INFINITY
        } else {
            pairs.iter().sum::<f64>() / pairs.len() as f64
        }
    };
    Ok(FdEstimate {
        quotients,
        value,
        error_estimate,
        observed_order,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeVerdict {
    pub passed: bool,
    /// `min (g(x0 + v) − g(x0) − ⟨s, v⟩)/‖v‖ + ε` over the probed `v`.
    pub worst_violation: f64,
    /// The `v` attaining `worst_violation`.
    pub witness: Option<Vec<f64>>,
}

/// Samples the regular subgradient inequality
/// `g(x0 + v) − g(x0) − ⟨s, v⟩ ≥ −ε‖v‖` on spheres of the given radii.
///
/// Passes when `worst_violation ≥ 0`. Points where `g` is `+∞` never
/// violate. This can only falsify membership.
pub fn regular_subgradient_probe<G>(
    eval: G,
    x0: &[f64],
    s: &[f64],
    eps: f64,
    radii: &[f64],
    n_dirs: usize,
    seed: u64,
) -> Result<ProbeVerdict>
where
    G: Fn(&[f64]) -> Result<f64>,
{
    if x0.len() != s.len() {
        return Err(Error::LengthMismatch {
            expected: x0.len(),
            actual: s.len(),
        });
    }
    let g0 = eval(x0)?;
    if !g0.is_finite() {
        return Err(Error::DomainViolation("probe base point has infinite value".into()));
    }
    let mut worst = f64::INFINITY;
    let mut witness = None;
    for (j, &rho) in radii.iter().enumerate() {
        for i in 0..n_dirs {
            let mut rng = stream_rng(seed, (j * n_dirs + i) as u64);
            let g = gaussian_vec(&mut rng, x0.len());
            let gn = norm(&g);
            if gn == 0.0 {
                continue;
            }
            let v: Vec<f64> = g.iter().map(|c| rho * c / gn).collect();
            let y: Vec<f64> = x0.iter().zip(&v).map(|(a, b)| a + b).collect();
            let gy = eval(&y)?;
            if gy == f64::INFINITY {
                continue;
            }
            let ratio = (gy - g0 - dot(s, &v)) / norm(&v);
            if ratio < worst {
                worst = ratio;
                witness = Some(v);
            }
        }
    }
    let worst_violation = worst + eps;
    Ok(ProbeVerdict {
        passed: worst_violation >= 0.0,
        worst_violation,
        witness,
    })
}

/// Solves `a·y = b` for a small dense system by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot vanishes.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-13 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut y = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * y[k]).sum();
        y[row] = (b[row] - s) / a[row][row];
    }
    Some(y)
}

/// Weights of the point of minimal norm in the affine hull of `pts`.
fn affine_min_norm(pts: &[&[f64]]) -> Option<Vec<f64>> {
    let m = pts.len();
    let mut a = vec![vec![0.0; m + 1]; m + 1];
    for i in 0..m {
        for j in 0..=i {
            let g = dot(pts[i], pts[j]);
            a[i][j] = g;
            a[j][i] = g;
        }
        a[i][m] = 1.0;
        a[m][i] = 1.0;
    }
    let mut b = vec![0.0; m + 1];
    b[m] = 1.0;
    let mut y = solve(a, b)?;
    y.truncate(m);
    Some(y)
}

/// Euclidean distance from `u` to the convex hull of `points`, by Wolfe's
/// minimum-norm-point algorithm.
pub fn hull_distance(u: &[f64], points: &[Vec<f64>]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty point set".into()));
    }
    if points.len() > MAX_HULL_POINTS {
        return Err(Error::SizeCapExceeded {
            count: points.len(),
            cap: MAX_HULL_POINTS,
        });
    }
    if let Some(p) = points.iter().find(|p| p.len() != u.len()) {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            actual: p.len(),
        });
    }
    let p: Vec<Vec<f64>> = points
        .iter()
        .map(|q| q.iter().zip(u).map(|(a, b)| a - b).collect())
        .collect();
    let max_sq = p.iter().map(|q| dot(q, q)).fold(0.0, f64::max);
    let tol = 1e-14 * max_sq.max(1e-300);
    let combine = |set: &[usize], w: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; u.len()];
        for (&i, &wi) in set.iter().zip(w) {
            x.iter_mut().zip(&p[i]).for_each(|(a, b)| *a += wi * b);
        }
        x
    };

    let start = (0..p.len())
        .min_by(|&i, &j| dot(&p[i], &p[i]).total_cmp(&dot(&p[j], &p[j])))
        .expect("nonempty");
    let mut set = vec![start];
    let mut w = vec![1.0];
    let mut x = p[start].clone();
    for _ in 0..(50 * p.len() + 1000) {
        let xx = dot(&x, &x);
        if xx <= tol {
            return Ok(xx.sqrt());
        }
        let j = (0..p.len())
            .min_by(|&i, &k| dot(&x, &p[i]).total_cmp(&dot(&x, &p[k])))
            .expect("nonempty");
        if xx - dot(&x, &p[j]) <= tol || set.contains(&j) {
            return Ok(xx.sqrt());
        }
        set.push(j);
        w.push(0.0);
        loop {
            let refs: Vec<&[f64]> = set.iter().map(|&i| p[i].as_slice()).collect();
            let Some(alpha) = affine_min_norm(&refs) else {
                // affinely dependent: drop the newest point and stop here
                set.pop();
                w.pop();
                return Ok(norm(&combine(&set, &w)));
            };
            if alpha.iter().all(|&a| a > 1e-15) {
                w = alpha;
                break;
            }
            let theta = w
                .iter()
                .zip(&alpha)
                .filter(|(_, &a)| a <= 1e-15)
                .map(|(&wi, &a)| wi / (wi - a))
                .fold(1.0, f64::min);
            for (wi, a) in w.iter_mut().zip(&alpha) {
                *wi = (1.0 - theta) * *wi + theta * a;
            }
            let keep: Vec<bool> = w.iter().map(|&wi| wi > 1e-15).collect();
            set = set.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
            w = w.iter().zip(&keep).filter(|(_, &k)| k).map(|(&v, _)| v).collect();
            let total: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= total);
        }
        x = combine(&set, &w);
    }
    Err(Error::NonConvergence { sweeps: 50 * p.len() + 1000 })
}

/// `dist(u, conv points) ≤ tol`.
pub fn hull_member_bruteforce(u: &[f64], points: &[Vec<f64>], tol: f64) -> Result<bool> {
    Ok(hull_distance(u, points)? <= tol)
}

/// All distinct permutations of `v`, in lexicographic order of positions.
pub fn permutations(v: &[f64]) -> Vec<Vec<f64>> {
    fn rec(cur: &mut Vec<f64>, rest: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if rest[..i].contains(&rest[i]) {
                continue;
            }
            let x = rest.remove(i);
            cur.push(x);
            rec(cur, rest, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut v.to_vec(), &mut out);
    out
}
