//! Sampling checks of the Kurdyka–Łojasiewicz inequality
//! `ψ′(F(y) − F(x))·dist(0, ∂F(y)) ≥ 1` with `ψ(t) = c·t^(1−α)`.
//!
//! Samples are drawn around `x` as `y = x + ρ·g/‖g‖` with `g` an isotropic
//! Gaussian in orthonormal coordinates and `ρ` uniform in `(0, radius]`.
//! Only points in the band `F(x) < F(y) < F(x) + ν` are tested. A report
//! without violations means none were found; it is not a proof.
//!
//! # Exponent fit
//!
//! If `dist(0, ∂F(y)) ≈ C·Δ^θ` with `Δ = F(y) − F(x)`, the inequality holds
//! with `ψ′(Δ) ∝ Δ^(−α)` exactly when `α ≥ θ`, so the smallest admissible
//! exponent is the log–log slope `θ` itself. [`kl_exponent_fit`] reports
//! that slope. For `½‖x‖²` at the origin `dist0 = √(2Δ)` and the slope is
//! `½`; where `dist0` is locally constant it is `0`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::sample::stream_rng;
use crate::symfn::SymmetricFunctionId;
use crate::transfer::{spectral_dist0, spectral_value};

/// Samples with `Δ` below this are left out of exponent fits.
pub const MIN_FIT_GAP: f64 = 1e-8;

/// Fewest accepted samples an exponent fit will use.
pub const MIN_FIT_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlConfig {
    pub alpha: f64,
    pub c: f64,
    pub nu: f64,
    pub radius: f64,
    pub n_samples: usize,
    pub seed: u64,
    /// Margins below `−tol` count as violations.
    pub tol: f64,
}

impl KlConfig {
    pub fn new(alpha: f64, c: f64, nu: f64, radius: f64, n_samples: usize, seed: u64) -> Self {
        KlConfig {
            alpha,
            c,
            nu,
            radius,
            n_samples,
            seed,
            tol: 1e-9,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = (0.0..1.0).contains(&self.alpha)
            && self.c > 0.0
            && self.nu > 0.0
            && self.radius > 0.0
            && self.radius.is_finite()
            && self.tol >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "need 0 ≤ alpha < 1, c > 0, nu > 0, 0 < radius < ∞, tol ≥ 0".into(),
            ))
        }
    }

    /// `ψ′(t) = c(1 − α)t^(−α)`.
    pub fn psi_prime(&self, t: f64) -> f64 {
        self.c * (1.0 - self.alpha) * t.powf(-self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub exponent: f64,
    /// Root-mean-square residual of the log–log fit.
    pub residual: f64,
    pub samples: usize,
    /// `dist0` or `Δ` showed no spread, so the slope carries no information
    /// beyond "constant".
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KLReport {
    pub samples_tested: usize,
    pub violations: usize,
    /// `min ψ′(Δ)·dist0 − 1` over tested samples; `null` when none passed
    /// the band filter.
    pub min_margin: Option<f64>,
    pub fitted_exponent: Option<ExponentFit>,
}

struct Sample {
    gap: f64,
    dist0: f64,
}

fn direction<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            return g.into_iter().map(|v| v / n).collect();
        }
    }
}

/// Point `i` of the sample sequence: `x + ρ·w` in coordinates with `w` a
/// uniform unit direction; `ρ = radius` on the shell, else uniform in
/// `(0, radius]`.
fn perturb(x: &[f64], seed: u64, i: u64, radius: f64, on_shell: bool) -> Vec<f64> {
    let mut rng = stream_rng(seed, i);
    let w = direction(&mut rng, x.len());
    let rho = if on_shell {
        radius
    } else {
        radius * (1.0 - rng.random::<f64>())
    };
    x.iter().zip(&w).map(|(a, b)| a + rho * b).collect()
}

fn check<V, D>(x: &[f64], value: V, dist0: D, cfg: &KlConfig) -> Result<KLReport>
where
    V: Fn(&[f64]) -> Result<f64>,
    D: Fn(&[f64]) -> Result<f64>,
{
    cfg.validate()?;
    let fx = value(x)?;
    if !fx.is_finite() {
        return Err(Error::DomainViolation("F(x) is not finite".into()));
    }
    let mut samples = Vec::new();
    let mut violations = 0;
    let mut min_margin: Option<f64> = None;
    for i in 0..cfg.n_samples {
        let y = perturb(x, cfg.seed, i as u64, cfg.radius, false);
        let fy = value(&y)?;
        let gap = fy - fx;
        if !(gap > 0.0 && gap < cfg.nu) {
            continue;
        }
        let d = dist0(&y)?;
        let margin = cfg.psi_prime(gap) * d - 1.0;
        if margin < -cfg.tol {
            violations += 1;
        }
        min_margin = Some(min_margin.map_or(margin, |m| m.min(margin)));
        samples.push(Sample { gap, dist0: d });
    }
    Ok(KLReport {
        samples_tested: samples.len(),
        violations,
        min_margin,
        fitted_exponent: fit(&samples).ok(),
    })
}

fn fit(samples: &[Sample]) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.gap >= MIN_FIT_GAP && s.dist0 > 0.0 && s.dist0.is_finite())
        .map(|s| (s.gap.ln(), s.dist0.ln()))
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples {
            accepted: pts.len(),
            required: MIN_FIT_SAMPLES,
        });
    }
    let n = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = pts.iter().map(|(_, y)| (y - my).powi(2)).sum();
    let flat_y = syy <= 1e-20 * n;
    let flat_x = sxx <= 1e-20 * n;
    let slope = if flat_y || flat_x { 0.0 } else { sxy / sxx };
    let residual = (pts
        .iter()
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ExponentFit {
        exponent: slope,
        residual,
        samples: pts.len(),
        degenerate: flat_x || flat_y,
    })
}

fn elem_value(fid: SymmetricFunctionId, x: &Element) -> impl Fn(&[f64]) -> Result<f64> + '_ {
    move |c| spectral_value(fid, &x.algebra().from_coords(c)?)
}

fn elem_dist0(fid: SymmetricFunctionId, x: &Element) -> impl Fn(&[f64]) -> Result<f64> + '_ {
    move |c| spectral_dist0(fid, &x.algebra().from_coords(c)?)
}

/// KL check for `F = f∘λ` around `x`.
pub fn kl_check(fid: SymmetricFunctionId, x: &Element, cfg: &KlConfig) -> Result<KLReport> {
    check(&x.coords(), elem_value(fid, x), elem_dist0(fid, x), cfg)
}

/// KL check for `f` itself around `u ∈ ℝʳ`.
pub fn kl_check_vector(fid: SymmetricFunctionId, u: &[f64], cfg: &KlConfig) -> Result<KLReport> {
    check(u, |v| fid.value(v), |v| fid.dist0(v), cfg)
}

/// Log–log fit of `dist0` against `Δ` over samples on the spheres of the
/// given radii, `n_samples` per radius, restricted to `Δ ∈ [1e-8, ν)`.
pub fn kl_exponent_fit(
    fid: SymmetricFunctionId,
    x: &Element,
    radii: &[f64],
    n_samples: usize,
    seed: u64,
    nu: f64,
) -> Result<ExponentFit> {
    let coords = x.coords();
    let value = elem_value(fid, x);
    let dist0 = elem_dist0(fid, x);
    let fx = value(&coords)?;
    if !fx.is_finite() {
        return Err(Error::DomainViolation("F(x) is not finite".into()));
    }
    let mut samples = Vec::new();
    for (j, &rho) in radii.iter().enumerate() {
        for i in 0..n_samples {
            let stream = (j * n_samples + i) as u64;
            let y = perturb(&coords, seed, stream, rho, true);
            let gap = value(&y)? - fx;
            if gap >= MIN_FIT_GAP && gap < nu {
                samples.push(Sample {
                    gap,
                    dist0: dist0(&y)?,
                });
            }
        }
    }
    fit(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Part, SymMatrix};
    use SymmetricFunctionId::*;

    fn sym3() -> Algebra {
        Algebra::sym(3).unwrap()
    }

    #[test]
    fn half_sq_norm_at_origin_has_zero_margin() {
        let x = sym3().zero();
        let cfg = KlConfig::new(0.5, 2f64.sqrt(), 10.0, 1.0, 500, 7);
        let r = kl_check(HalfSqNorm, &x, &cfg).unwrap();
        assert_eq!(r.samples_tested, 500);
        assert_eq!(r.violations, 0);
        assert!(r.min_margin.unwrap().abs() < 1e-9);
        let fit = r.fitted_exponent.unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-6, "{fit:?}");
    }

    #[test]
    fn top_eigenvalue_with_constant_desingularizer() {
        let m = SymMatrix::from_lower(3, &[1.0, 0.2, 0.0, 0.2, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let x = Element::new(sym3(), vec![Part::Sym(m)]).unwrap();
        let cfg = KlConfig::new(0.0, 3f64.sqrt(), 1.0, 0.5, 300, 1);
        let r = kl_check(KthLargest { k: 1 }, &x, &cfg).unwrap();
        assert!(r.samples_tested > 0);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn narrow_band_accepts_nothing() {
        let x = sym3().identity();
        let cfg = KlConfig::new(0.5, 1.0, 1e-300, 1e-3, 50, 3);
        let r = kl_check(HalfSqNorm, &x, &cfg).unwrap();
        assert_eq!(r.samples_tested, 0);
        assert_eq!(r.violations, 0);
        assert_eq!(r.min_margin, None);
    }

    #[test]
    fn reports_are_deterministic() {
        let x = sym3().identity();
        let cfg = KlConfig::new(0.5, 1.0, 1.0, 0.3, 100, 11);
        assert_eq!(
            kl_check(SumTopK { k: 2 }, &x, &cfg).unwrap(),
            kl_check(SumTopK { k: 2 }, &x, &cfg).unwrap()
        );
    }

    #[test]
    fn bad_config_and_domain() {
        let x = sym3().zero();
        let mut cfg = KlConfig::new(1.0, 1.0, 1.0, 1.0, 10, 0);
        assert!(matches!(kl_check(HalfSqNorm, &x, &cfg), Err(Error::InvalidArgument(_))));
        cfg.alpha = 0.5;
        assert!(matches!(
            kl_check(NegLogProd { mu: 1.0 }, &x, &cfg),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn exponent_fits() {
        let radii = [1e-1, 1e-2, 1e-3];
        let fit = kl_exponent_fit(HalfSqNorm, &sym3().zero(), &radii, 20, 5, 1.0).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-6);
        assert!(!fit.degenerate);

        let m = SymMatrix::from_lower(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let x = Element::new(sym3(), vec![Part::Sym(m)]).unwrap();
        let fit = kl_exponent_fit(KthLargest { k: 1 }, &x, &radii, 20, 5, 1.0).unwrap();
        assert!(fit.exponent.abs() < 1e-6);

        let fit = kl_exponent_fit(Sum, &x, &radii, 20, 5, 1.0).unwrap();
        assert!(fit.degenerate);

        assert!(matches!(
            kl_exponent_fit(HalfSqNorm, &sym3().zero(), &radii, 2, 5, 1.0),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn vector_check_matches_spectral_check_on_diagonal() {
        let alg = Algebra::diagonal(4).unwrap();
        let u = [2.0, 1.0, 1.0, -1.0];
        let x = Element::new(alg, vec![Part::Diagonal(u.to_vec())]).unwrap();
        let cfg = KlConfig::new(0.0, 2.0, 1.0, 0.5, 200, 9);
        let a = kl_check(KthLargest { k: 2 }, &x, &cfg).unwrap();
        let b = kl_check_vector(KthLargest { k: 2 }, &u, &cfg).unwrap();
        assert_eq!(a.samples_tested, b.samples_tested);
        assert_eq!(a.violations, b.violations);
        assert!((a.min_margin.unwrap() - b.min_margin.unwrap()).abs() < 1e-9);
    }
}
