//! Exact signature of symmetric and Hermitian forms by pivoting over `Q(ζ)`.
//!
//! A rational symmetric matrix is a Hermitian matrix with rational entries,
//! so one routine serves both lattice kinds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{EisensteinInt, EisensteinRational};
use crate::matrix::{EMatrix, IntMatrix, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct Signature {
    pub p: usize,
    pub n: usize,
    pub z: usize,
}

impl Signature {
    pub fn new(p: usize, n: usize, z: usize) -> Self {
        Signature { p, n, z }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n == 0 && self.z == 0
    }

    pub fn is_negative_definite(&self) -> bool {
        self.p == 0 && self.z == 0
    }

    pub fn is_definite(&self) -> bool {
        self.is_positive_definite() || self.is_negative_definite()
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature { p: self.p + o.p, n: self.n + o.n, z: self.z + o.z }
    }
}

/// Result of the pivoting: the signature and, if some direction is
/// negative, the coefficients (w.r.t. the input basis) of a vector `w` with
/// `h(w, w) < 0`.
#[derive(Clone, Debug)]
pub struct PivotOutcome {
    pub signature: Signature,
    pub negative: Option<Vec<EisensteinRational>>,
    pub pivots: Vec<EisensteinRational>,
}

type Q = EisensteinRational;

/// Pivoting on a Hermitian matrix `S` with `S[i][j] = h(wᵢ, wⱼ)`, `h` linear in
/// the first slot. Zero diagonals with a nonzero off-diagonal entry are
/// resolved by the hyperbolic split `wᵢ ← wᵢ + S[i][j]·wⱼ`, which makes the
/// diagonal `2|S[i][j]|² > 0`.
pub fn hermitian_pivot(s: &Matrix<Q>) -> PivotOutcome {
    let n = s.rows();
    let mut s = s.clone();
    let mut w: Matrix<Q> = Matrix::identity(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature::default();
    let mut negative = None;
    let mut pivots = Vec::new();

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !s[(i, i)].is_zero()) {
            let i = active.remove(pos);
            let d = s[(i, i)].clone();
            match d.real_sign().expect("Hermitian diagonal is rational") {
                Ordering::Greater => sig.p += 1,
                Ordering::Less => {
                    sig.n += 1;
                    if negative.is_none() {
                        negative = Some(w.row(i).to_vec());
                    }
                }
                Ordering::Equal => unreachable!(),
            }
            let dinv = d.inv().expect("nonzero pivot");
            let coeffs: Vec<(usize, Q)> = active.iter().map(|&j| (j, s[(j, i)].clone() * dinv.clone())).collect();
            for &(j, ref c) in &coeffs {
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let t = w[(j, k)].clone() - c.clone() * w[(i, k)].clone();
                    w[(j, k)] = t;
                }
                for &k in &active {
                    let t = s[(j, k)].clone() - c.clone() * s[(i, k)].clone();
                    s[(j, k)] = t;
                }
            }
            pivots.push(d);
            continue;
        }
        let pair = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !s[(i, j)].is_zero());
        let Some((i, j)) = pair else {
            sig.z += active.len();
            break;
        };
        let lam = s[(i, j)].clone();
        // wᵢ ← wᵢ + λ·wⱼ
        for k in 0..n {
            let t = w[(i, k)].clone() + lam.clone() * w[(j, k)].clone();
            w[(i, k)] = t;
        }
        let old_i: Vec<Q> = (0..n).map(|k| s[(i, k)].clone()).collect();
        let old_j: Vec<Q> = (0..n).map(|k| s[(j, k)].clone()).collect();
        for &k in &active {
            if k == i {
                continue;
            }
            let v = old_i[k].clone() + lam.clone() * old_j[k].clone();
            s[(k, i)] = v.conj();
            s[(i, k)] = v;
        }
        // h(wᵢ + λwⱼ, wᵢ + λwⱼ) = 2 Re(λ·conj(S[i][j])) + |λ|²S[j][j], S[i][i] = 0
        let sjj = s[(j, j)].clone();
        let lam_bar = lam.conj();
        let new_ii = lam.clone() * old_j[i].clone() + lam_bar.clone() * old_i[j].clone() + lam * lam_bar * sjj;
        s[(i, i)] = new_ii;
    }
    PivotOutcome { signature: sig, negative, pivots }
}

pub fn hermitian_signature(h: &EMatrix) -> Signature {
    hermitian_pivot(&h.map(|x| Q::from_int(x.clone()))).signature
}

pub fn symmetric_signature(g: &IntMatrix) -> Signature {
    hermitian_pivot(&to_q(g)).signature
}

pub fn to_q(g: &IntMatrix) -> Matrix<Q> {
    g.map(|&x| Q::from_int(EisensteinInt::from_int(x)))
}

/// Clears denominators of a `Q(ζ)` vector by a positive integer.
pub fn clear_denominators(v: &[Q]) -> Vec<EisensteinInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer().scale(&(&l / x.denom()))).collect()
}
