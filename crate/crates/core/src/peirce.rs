//! Quadratic representation and Peirce decomposition.

use crate::algebra::Element;
use crate::error::{Error, Result};

/// `Q_x(y) = 2x∘(x∘y) − (x∘x)∘y`.
pub fn quadratic_apply(x: &Element, y: &Element) -> Result<Element> {
    x.check_same(y)?;
    let xy = x.jordan_unchecked(y);
    let xxy = x.jordan_unchecked(&xy);
    let x2y = x.jordan_unchecked(x).jordan_unchecked(y);
    Ok(xxy.scale(2.0).axpy(-1.0, &x2y))
}

/// Components of `z` in `V(c,1) ⊕ V(c,½) ⊕ V(c,0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeirceParts {
    pub one: Element,
    pub half: Element,
    pub zero: Element,
}

/// Peirce decomposition of `z` with respect to the idempotent `c`:
/// `z₁ = Q_c z`, `z₀ = Q_{e−c} z` and `z_½ = z − z₁ − z₀`.
pub fn peirce_project(c: &Element, z: &Element, tol: f64) -> Result<PeirceParts> {
    c.check_same(z)?;
    let residual = c.jordan_unchecked(c).distance(c);
    if residual > tol {
        return Err(Error::NotIdempotent { residual });
    }
    let complement = &c.algebra().identity() - c;
    let one = quadratic_apply(c, z)?;
    let zero = quadratic_apply(&complement, z)?;
    let half = (z - &one).axpy(-1.0, &zero);
    Ok(PeirceParts { one, half, zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Part, SymMatrix};

    fn sym2(a: [[f64; 2]; 2]) -> Element {
        let m = SymMatrix::from_lower(2, &[a[0][0], a[0][1], a[1][0], a[1][1]]).unwrap();
        Element::new(Algebra::sym(2).unwrap(), vec![Part::Sym(m)]).unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let y = sym2([[1.0, 1.0], [1.0, 1.0]]);
        let e = y.algebra().identity();
        assert_eq!(quadratic_apply(&e, &y).unwrap(), y);

        let x = sym2([[2.0, 0.0], [0.0, 1.0]]);
        assert_eq!(
            quadratic_apply(&x, &y).unwrap(),
            sym2([[4.0, 2.0], [2.0, 1.0]])
        );

        let c = sym2([[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(quadratic_apply(&c, &c).unwrap(), c);
    }

    #[test]
    fn peirce_of_matrix_unit() {
        let c = sym2([[1.0, 0.0], [0.0, 0.0]]);
        let z = sym2([[1.0, 2.0], [2.0, 3.0]]);
        let p = peirce_project(&c, &z, 1e-12).unwrap();
        assert_eq!(p.one, sym2([[1.0, 0.0], [0.0, 0.0]]));
        assert_eq!(p.half, sym2([[0.0, 2.0], [2.0, 0.0]]));
        assert_eq!(p.zero, sym2([[0.0, 0.0], [0.0, 3.0]]));
    }

    #[test]
    fn peirce_trivial_idempotents() {
        let z = sym2([[1.0, 2.0], [2.0, 3.0]]);
        let e = z.algebra().identity();
        let zero = z.algebra().zero();
        let p = peirce_project(&e, &z, 1e-12).unwrap();
        assert_eq!((p.one.clone(), p.half.norm(), p.zero.norm()), (z.clone(), 0.0, 0.0));
        let p = peirce_project(&zero, &z, 1e-12).unwrap();
        assert_eq!((p.one.norm(), p.half.norm(), p.zero), (0.0, 0.0, z));
    }

    #[test]
    fn peirce_rejects_non_idempotent() {
        let z = sym2([[1.0, 2.0], [2.0, 3.0]]);
        assert!(matches!(
            peirce_project(&z, &z, 1e-9),
            Err(Error::NotIdempotent { .. })
        ));
    }
}
