//! Randomized identities checked against oracles written here, not against
//! the library's own helpers.

use std::collections::BTreeSet;

use eislat::normal_form::{det, hnf, snf};
use eislat::{BigMatrix, EMatrix, EisensteinInt, IntMatrix, ZLattice};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

type E = EisensteinInt;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn eis() -> impl Strategy<Value = E> {
    (-1_000_000i64..1_000_000, -1_000_000i64..1_000_000).prop_map(|(a, b)| E::new(a, b))
}

fn small_eis() -> impl Strategy<Value = E> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| E::new(a, b))
}

/// `N(a + bζ) = a² − ab + b²`, straight from the definition.
fn norm_oracle(x: &E) -> BigInt {
    let (a, b) = x.to_i64_pair().unwrap();
    BigInt::from(a * a - a * b + b * b)
}

fn int_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = BigMatrix> {
    prop::collection::vec(lo..=hi, rows * cols)
        .prop_map(move |v| BigMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn e_matrix(rows: usize, cols: usize) -> impl Strategy<Value = EMatrix> {
    prop::collection::vec(small_eis(), rows * cols).prop_map(move |v| EMatrix::from_vec(rows, cols, v).unwrap())
}

fn is_row_echelon<T: Zero>(h: &eislat::Matrix<T>) -> bool {
    let mut last: Option<usize> = None;
    let mut seen_zero = false;
    for row in h.iter_rows() {
        match row.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                if seen_zero || last.is_some_and(|l| p <= l) {
                    return false;
                }
                last = Some(p);
            }
            None => seen_zero = true,
        }
    }
    true
}

fn is_diagonal<T: Zero>(d: &eislat::Matrix<T>) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)].is_zero()))
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn eisenstein_division_reconstructs(a in eis(), d in eis()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem_euclid(&d).unwrap();
        prop_assert_eq!(q * d.clone() + r.clone(), a);
        prop_assert!(norm_oracle(&r) < norm_oracle(&d));
    }

    #[test]
    fn eisenstein_norm_is_multiplicative(a in small_eis(), b in small_eis()) {
        prop_assert_eq!(norm_oracle(&(a.clone() * b.clone())), norm_oracle(&a) * norm_oracle(&b));
        prop_assert_eq!(a.norm(), norm_oracle(&a));
    }

    #[test]
    fn integer_hnf_reconstructs(m in int_matrix(3, 4, -20, 20)) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(det(&u).unwrap().abs().is_one());
        prop_assert!(is_row_echelon(&h));
        for row in h.iter_rows() {
            if let Some(x) = row.iter().find(|x| !x.is_zero()) {
                prop_assert!(x.is_positive());
            }
        }
    }

    #[test]
    fn integer_snf_reconstructs(m in int_matrix(3, 3, -20, 20)) {
        let (d, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(det(&u).unwrap().abs().is_one());
        prop_assert!(det(&v).unwrap().abs().is_one());
        prop_assert!(is_diagonal(&d));
        for i in 0..2 {
            let (a, b) = (&d[(i, i)], &d[(i + 1, i + 1)]);
            if a.is_zero() {
                prop_assert!(b.is_zero());
            } else {
                prop_assert!((b % a).is_zero());
            }
        }
        // |det| is the product of the invariant factors
        let prod = (0..3).fold(BigInt::one(), |p, i| p * d[(i, i)].clone());
        prop_assert_eq!(prod.abs(), det(&m).unwrap().abs());
    }

    #[test]
    fn eisenstein_hnf_snf_reconstruct(m in e_matrix(3, 3)) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(det(&u).unwrap().is_unit());
        prop_assert!(is_row_echelon(&h));
        let (d, u, v) = snf(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), d.clone());
        prop_assert!(det(&u).unwrap().is_unit() && det(&v).unwrap().is_unit());
        prop_assert!(is_diagonal(&d));
        for i in 0..2 {
            let (a, b) = (&d[(i, i)], &d[(i + 1, i + 1)]);
            let chain = if a.is_zero() { b.is_zero() } else { a.divides(b) };
            prop_assert!(chain);
        }
    }
}

/// Positive definite Gram `B Bᵀ` of a random nonsingular small matrix.
fn definite_gram(rank: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-2i64..=2, rank * rank).prop_filter_map("singular", move |v| {
        let b = IntMatrix::from_vec(rank, rank, v).unwrap();
        let d = det(&b.to_big()).ok()?;
        if d.is_zero() {
            return None;
        }
        b.mul(&b.transpose()).ok()
    })
}

fn naive_norm(g: &IntMatrix, x: &[i64]) -> i64 {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| x[i] * g[(i, j)] * x[j]).sum::<i64>()).sum()
}

/// Every `x` with `|xᵢ| ≤ r` and `xᵀGx = norm`, first nonzero entry positive.
fn box_enumeration(g: &IntMatrix, norm: i64, r: i64) -> BTreeSet<Vec<i64>> {
    let n = g.rows();
    let side = (2 * r + 1) as usize;
    let mut out = BTreeSet::new();
    for mut idx in 0..side.pow(n as u32) {
        let mut x = vec![0i64; n];
        for xi in x.iter_mut() {
            *xi = (idx % side) as i64 - r;
            idx /= side;
        }
        let first = x.iter().find(|&&c| c != 0);
        if first.is_some_and(|&c| c > 0) && naive_norm(g, &x) == norm {
            out.insert(x);
        }
    }
    out
}

/// `|xᵢ|² ≤ N·(G⁻¹)ᵢᵢ` on the ellipsoid `xᵀGx ≤ N`; `(G⁻¹)ᵢᵢ` is bounded by
/// `1/λ_min`, and `λ_min ≥ det / trace^(n−1)`.
fn box_radius(g: &IntMatrix, norm: i64) -> i64 {
    let n = g.rows();
    let d = det(&g.to_big()).unwrap();
    let tr: i64 = (0..n).map(|i| g[(i, i)]).sum();
    let d: f64 = d.to_string().parse().unwrap();
    let lmin = d / (tr as f64).powi(n as i32 - 1);
    ((norm as f64) / lmin).sqrt().floor() as i64 + 1
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn short_vectors_match_box_enumeration(g in (1usize..=4).prop_flat_map(definite_gram), norm in 1i64..=6) {
        let r = box_radius(&g, norm);
        prop_assume!((2 * r + 1).pow(g.rows() as u32) <= 200_000);
        let l = ZLattice::new(g.clone()).unwrap();
        let fast: BTreeSet<Vec<i64>> = l.short_vectors(norm).unwrap().into_iter().collect();
        prop_assert_eq!(fast, box_enumeration(&g, norm, r));
    }
}

#[test]
fn standard_lattices_short_vectors() {
    // root counts up to sign
    for (name, roots) in [("A2", 3), ("E8", 120)] {
        let l = ZLattice::standard(name).unwrap();
        assert_eq!(l.short_vectors(2).unwrap().len(), roots, "{name}");
    }
    let d4 = IntMatrix::from_rows(vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]])
        .unwrap();
    assert_eq!(ZLattice::new(d4).unwrap().short_vectors(2).unwrap().len(), 12);
    assert_eq!(ZLattice::zn(3).short_vectors(3).unwrap().len(), 4);
}
