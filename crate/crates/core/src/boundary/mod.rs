//! Bounded verification of the boundary arithmetic of `Λ = Λ₁₀ ⊥ Λ₁`:
//! cusp classes, the hyperplanes spanned by `Λ₁₀`-sublattices, and how the
//! two meet.

mod cusps;
mod hyperplanes;

pub use cusps::{
    classify_cusps, lattice_symmetries, recheck_class, ClassLabel, CuspClass, CuspClassification, CuspFile,
};
pub use hyperplanes::{
    check_disjointness, check_incidence, check_record, find_hyperplanes, label_classes, HyperplaneFile,
    HyperplaneRecord,
};

use crate::eisenstein::EisensteinInt;

type Pair = (i64, i64);

fn mul(x: Pair, y: Pair) -> Pair {
    let (a, b) = x;
    let (c, d) = y;
    (a * c - b * d, a * d + b * c - b * d)
}

fn to_pairs(v: &[EisensteinInt]) -> Option<Vec<Pair>> {
    v.iter().map(EisensteinInt::to_i64_pair).collect()
}

fn from_pairs(v: &[Pair]) -> Vec<EisensteinInt> {
    v.iter().map(|&p| EisensteinInt::from(p)).collect()
}
