//! Closed convex (and a few nonconvex) subsets of ℝʳ with exact distance
//! queries.

/// Generators beyond this many vertices are not materialized.
pub const MAX_GENERATORS: usize = 10_000;
/// Box-product vertex lists are produced only up to this many free
/// coordinates.
pub const MAX_FREE_BOX_COORDS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum SetShape {
    Empty,
    Point(Vec<f64>),
    /// Closed Euclidean ball.
    Ball { center: Vec<f64>, radius: f64 },
    /// Product of closed intervals; bounds may be infinite.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `conv{aⁱ : i ∈ support}`.
    SimplexFace { dim: usize, support: Vec<usize> },
    /// Points of `conv{aⁱ : i ∈ support}` with at most `max_card` nonzero
    /// entries; a union of faces, not convex in general.
    SparseSimplexFace {
        dim: usize,
        support: Vec<usize>,
        max_card: usize,
    },
    /// `dᵢ = 1` on `ones`, `dᵢ ∈ [0, 1]` on `free` with `Σ_free dᵢ = mass`,
    /// zero elsewhere.
    CappedSimplex {
        dim: usize,
        ones: Vec<usize>,
        free: Vec<usize>,
        mass: usize,
    },
}

/// V-representation: the set is `conv(points) + cone(rays)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Generators {
    pub points: Vec<Vec<f64>>,
    pub rays: Vec<Vec<f64>>,
}

/// A queryable subdifferential set.
///
/// Membership at tolerance `tol` means Euclidean distance at most `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdiffSet {
    dim: usize,
    shape: SetShape,
}

fn unit(dim: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    v[i] = 1.0;
    v
}

fn sq(v: f64) -> f64 {
    v * v
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut s = y.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, v) in s.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Projection onto `{y ∈ [0,1]ⁿ : Σ y = mass}` by bisection on the shift.
fn project_capped_simplex(y: &[f64], mass: f64) -> Vec<f64> {
    let total = |theta: f64| y.iter().map(|v| (v - theta).clamp(0.0, 1.0)).sum::<f64>();
    let mut lo = y.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0;
    let mut hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) > mass {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    let theta = 0.5 * (lo + hi);
    y.iter().map(|v| (v - theta).clamp(0.0, 1.0)).collect()
}

fn face_distance_sq(d: &[f64], support: &[usize]) -> f64 {
    let mut outside: f64 = d.iter().map(|v| v * v).sum();
    let ds: Vec<f64> = support.iter().map(|&i| d[i]).collect();
    for v in &ds {
        outside -= v * v;
    }
    let p = project_simplex(&ds);
    outside.max(0.0) + ds.iter().zip(&p).map(|(a, b)| sq(a - b)).sum::<f64>()
}

impl SubdiffSet {
    pub fn new(dim: usize, shape: SetShape) -> Self {
        Self { dim, shape }
    }

    pub fn empty(dim: usize) -> Self {
        Self::new(dim, SetShape::Empty)
    }

    pub fn point(p: Vec<f64>) -> Self {
        Self::new(p.len(), SetShape::Point(p))
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &SetShape {
        &self.shape
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.shape, SetShape::Empty)
    }

    /// Euclidean distance from `d` to the set; `+∞` for the empty set.
    pub fn distance(&self, d: &[f64]) -> f64 {
        assert_eq!(d.len(), self.dim, "dimension mismatch");
        match &self.shape {
            SetShape::Empty => f64::INFINITY,
            SetShape::Point(p) => d.iter().zip(p).map(|(a, b)| sq(a - b)).sum::<f64>().sqrt(),
            SetShape::Ball { center, radius } => {
                let r = d.iter().zip(center).map(|(a, b)| sq(a - b)).sum::<f64>().sqrt();
                (r - radius).max(0.0)
            }
            SetShape::Box { lo, hi } => d
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(v, (l, h))| sq(v - v.clamp(*l, *h)))
                .sum::<f64>()
                .sqrt(),
            SetShape::SimplexFace { support, .. } => face_distance_sq(d, support).sqrt(),
            SetShape::SparseSimplexFace {
                support, max_card, ..
            } => {
                if *max_card >= support.len() {
                    return face_distance_sq(d, support).sqrt();
                }
                // the best sparse support keeps the largest entries
                let mut order = support.clone();
                order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
                face_distance_sq(d, &order[..*max_card]).sqrt()
            }
            SetShape::CappedSimplex {
                ones, free, mass, ..
            } => {
                let mut acc = 0.0;
                for (i, v) in d.iter().enumerate() {
                    if ones.contains(&i) {
                        acc += sq(v - 1.0);
                    } else if !free.contains(&i) {
                        acc += v * v;
                    }
                }
                let df: Vec<f64> = free.iter().map(|&i| d[i]).collect();
                let p = project_capped_simplex(&df, *mass as f64);
                acc += df.iter().zip(&p).map(|(a, b)| sq(a - b)).sum::<f64>();
                acc.sqrt()
            }
        }
    }

    pub fn contains(&self, d: &[f64], tol: f64) -> bool {
        self.distance(d) <= tol
    }

    /// `min{‖d‖ : d ∈ set}`, or `None` when the set is empty.
    pub fn dist0(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.distance(&vec![0.0; self.dim]))
    }

    /// Finite V-representation when one exists and is small enough.
    pub fn generators(&self) -> Option<Generators> {
        let dim = self.dim;
        let points_only = |points| Some(Generators { points, rays: vec![] });
        match &self.shape {
            SetShape::Empty | SetShape::Ball { .. } => None,
            SetShape::Point(p) => points_only(vec![p.clone()]),
            SetShape::SimplexFace { support, .. } => {
                points_only(support.iter().map(|&i| unit(dim, i)).collect())
            }
            SetShape::SparseSimplexFace {
                support, max_card, ..
            } => (*max_card >= support.len())
                .then(|| support.iter().map(|&i| unit(dim, i)).collect())
                .and_then(points_only),
            SetShape::Box { lo, hi } => {
                let mut base = vec![0.0; dim];
                let mut varying = Vec::new();
                let mut rays = Vec::new();
                for i in 0..dim {
                    match (lo[i].is_finite(), hi[i].is_finite()) {
                        (true, true) if lo[i] == hi[i] => base[i] = lo[i],
                        (true, true) => {
                            base[i] = lo[i];
                            varying.push(i);
                        }
                        (true, false) => {
                            base[i] = lo[i];
                            rays.push(unit(dim, i));
                        }
                        (false, true) => {
                            base[i] = hi[i];
                            rays.push(unit(dim, i).iter().map(|v| -v).collect());
                        }
                        (false, false) => {
                            rays.push(unit(dim, i));
                            rays.push(unit(dim, i).iter().map(|v| -v).collect());
                        }
                    }
                }
                if varying.len() > MAX_FREE_BOX_COORDS {
                    return None;
                }
                let mut points = Vec::with_capacity(1 << varying.len());
                for mask in 0..(1usize << varying.len()) {
                    let mut p = base.clone();
                    for (bit, &i) in varying.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            p[i] = hi[i];
                        }
                    }
                    points.push(p);
                }
                Some(Generators { points, rays })
            }
            SetShape::CappedSimplex {
                ones, free, mass, ..
            } => {
                let mut points = Vec::new();
                for choice in k_subsets(free.len(), *mass) {
                    if points.len() == MAX_GENERATORS {
                        return None;
                    }
                    let mut p = vec![0.0; dim];
                    for &i in ones {
                        p[i] = 1.0;
                    }
                    for c in choice {
                        p[free[c]] = 1.0;
                    }
                    points.push(p);
                }
                points_only(points)
            }
        }
    }
}

/// Lexicographic `k`-subsets of `0..n`, produced lazily.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        for i in (0..k).rev() {
            if next[i] < n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_all() {
        let all: Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(k_subsets(3, 0).count(), 1);
        assert_eq!(k_subsets(2, 3).count(), 0);
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&[0.5, 0.5]);
        assert_eq!(p, vec![0.5, 0.5]);
        let p = project_simplex(&[2.0, 0.0]);
        assert_eq!(p, vec![1.0, 0.0]);
        let p = project_simplex(&[0.0, 0.0, 0.0]);
        for v in p {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn segment_distance() {
        let s = SubdiffSet::new(2, SetShape::SimplexFace { dim: 2, support: vec![0, 1] });
        assert!(s.contains(&[0.5, 0.5], 1e-12));
        assert!(!s.contains(&[0.6, 0.5], 1e-3));
        assert!((s.dist0().unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sparse_face_matches_enumeration() {
        let support = vec![0, 2, 3, 4];
        let set = SubdiffSet::new(
            5,
            SetShape::SparseSimplexFace {
                dim: 5,
                support: support.clone(),
                max_card: 2,
            },
        );
        let probes = [
            [0.3, 0.1, 0.4, 0.2, 0.9],
            [-0.5, 2.0, 0.1, 0.1, 0.1],
            [0.0; 5],
            [0.25, 0.0, 0.25, 0.25, 0.25],
        ];
        for d in probes {
            let brute = k_subsets(support.len(), 2)
                .map(|c| {
                    let t: Vec<usize> = c.iter().map(|&i| support[i]).collect();
                    face_distance_sq(&d, &t).sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            assert!((set.distance(&d) - brute).abs() < 1e-14);
        }
    }

    #[test]
    fn capped_simplex_distance() {
        let set = SubdiffSet::new(
            4,
            SetShape::CappedSimplex {
                dim: 4,
                ones: vec![0],
                free: vec![1, 2, 3],
                mass: 1,
            },
        );
        assert!(set.contains(&[1.0, 0.2, 0.3, 0.5], 1e-12));
        assert!(!set.contains(&[1.0, 0.2, 0.3, 0.6], 1e-3));
        // nearest point of 0 is (1, 1/3, 1/3, 1/3)
        assert!((set.dist0().unwrap() - (1.0f64 + 1.0 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(set.generators().unwrap().points.len(), 3);
    }

    #[test]
    fn box_generators_and_rays() {
        let set = SubdiffSet::new(
            3,
            SetShape::Box {
                lo: vec![1.0, -1.0, f64::NEG_INFINITY],
                hi: vec![1.0, 1.0, f64::INFINITY],
            },
        );
        let g = set.generators().unwrap();
        assert_eq!(g.points.len(), 2);
        assert_eq!(g.rays.len(), 2);
        assert!((set.distance(&[0.0, 2.0, 100.0]) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empty_set() {
        let e = SubdiffSet::empty(3);
        assert_eq!(e.dist0(), None);
        assert!(!e.contains(&[0.0; 3], 1.0));
        assert!(e.generators().is_none());
    }
}
