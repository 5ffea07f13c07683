//! Fixed benchmark inputs.

use jordan_core::sample::{random_element, repeated_eigen_element, stream_rng};
use jordan_core::{Algebra, Element, FactorKind};

pub const SEED: u64 = 0x5eed;

/// Algebras of increasing size, with a label for each.
pub fn algebras() -> Vec<(&'static str, Algebra)> {
    vec![
        ("sym4", Algebra::sym(4).unwrap()),
        ("sym8", Algebra::sym(8).unwrap()),
        ("spin10", Algebra::spin(10).unwrap()),
        (
            "product",
            Algebra::new(vec![
                FactorKind::Sym(5),
                FactorKind::Spin(6),
                FactorKind::Diagonal(3),
                FactorKind::Sym(2),
            ])
            .unwrap(),
        ),
    ]
}

pub fn generic(algebra: &Algebra, stream: u64) -> Element {
    random_element(&mut stream_rng(SEED, stream), algebra)
}

pub fn repeated(algebra: &Algebra, stream: u64) -> Element {
    repeated_eigen_element(&mut stream_rng(SEED, stream), algebra)
}
