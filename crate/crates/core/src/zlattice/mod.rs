//! Integral quadratic lattices given by a Gram matrix.
//!
//! Vectors are coordinate columns with respect to the lattice basis, so
//! `x·y = xᵀ G y`. A list of vectors spanning a sublattice is stored as the
//! rows of a matrix.

mod isometry;
pub mod shortvec;

pub use isometry::{automorphism_group, isometry_definite, IsometrySource};
pub use shortvec::{lll_reduce, Enumerator};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BigMatrix, IntMatrix, Matrix};
use crate::normal_form::{det, left_kernel, row_basis, snf};
use crate::pivot::{symmetric_signature, Signature};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ZLatticeRepr", into = "ZLatticeRepr")]
pub struct ZLattice {
    gram: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct ZLatticeRepr {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<ZLatticeRepr> for ZLattice {
    type Error = Error;
    fn try_from(r: ZLatticeRepr) -> Result<Self> {
        let gram = if r.gram.is_empty() { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(r.gram)? };
        if gram.rows() != r.rank {
            return Err(Error::Dimension(format!("rank {} but gram has {} rows", r.rank, gram.rows())));
        }
        ZLattice::new(gram)
    }
}

impl From<ZLattice> for ZLatticeRepr {
    fn from(l: ZLattice) -> Self {
        ZLatticeRepr { rank: l.rank(), gram: l.gram.to_rows() }
    }
}

impl std::fmt::Debug for ZLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ZLattice(rank {}, {:?})", self.rank(), self.gram)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantData {
    pub invariant_factors: Vec<BigInt>,
    pub parity: Parity,
    pub signature: Signature,
}

impl DiscriminantData {
    pub fn is_unimodular(&self) -> bool {
        self.signature.z == 0 && self.invariant_factors.is_empty()
    }
}

/// Bourbaki labelling: 1-3-4-5-6-7-8 is the long chain, node 2 hangs off 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

impl ZLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension("gram must be square".into()));
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::InvalidArgument(format!("gram not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(ZLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn hyperbolic() -> Self {
        ZLattice { gram: IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap() }
    }

    pub fn a2() -> Self {
        ZLattice { gram: IntMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]).unwrap() }
    }

    pub fn e8() -> Self {
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            g[(i, i)] = 2;
        }
        for &(i, j) in &E8_EDGES {
            g[(i, j)] = -1;
            g[(j, i)] = -1;
        }
        ZLattice { gram: g }
    }

    pub fn zn(k: usize) -> Self {
        ZLattice { gram: IntMatrix::identity(k) }
    }

    pub fn diag(entries: &[i64]) -> Self {
        let mut g = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            g[(i, i)] = e;
        }
        ZLattice { gram: g }
    }

    /// Builds one of `U`, `A2`, `E8`, `Zn(k)` (also `Zk`), `diag(a,b,...)`.
    pub fn standard(name: &str) -> Result<Self> {
        let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownName(name.to_string());
        match s.as_str() {
            "U" => return Ok(Self::hyperbolic()),
            "A2" => return Ok(Self::a2()),
            "E8" => return Ok(Self::e8()),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("Zn(").and_then(|r| r.strip_suffix(')')) {
            return inner.parse().map(Self::zn).map_err(|_| unknown());
        }
        if let Some(inner) = s.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
            if inner.is_empty() {
                return Ok(Self::diag(&[]));
            }
            let entries: std::result::Result<Vec<i64>, _> = inner.split(',').map(str::parse).collect();
            return entries.map(|e| Self::diag(&e)).map_err(|_| unknown());
        }
        if let Some(k) = s.strip_prefix('Z') {
            return k.parse().map(Self::zn).map_err(|_| unknown());
        }
        Err(unknown())
    }

    pub fn direct_sum(&self, other: &ZLattice) -> ZLattice {
        ZLattice { gram: IntMatrix::block_diag(&[&self.gram, &other.gram]) }
    }

    pub fn direct_sum_all(parts: &[&ZLattice]) -> ZLattice {
        let grams: Vec<&IntMatrix> = parts.iter().map(|l| &l.gram).collect();
        ZLattice { gram: IntMatrix::block_diag(&grams) }
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s: i128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut t: i128 = 0;
            for j in 0..n {
                t += self.gram[(i, j)] as i128 * y[j] as i128;
            }
            s += x[i] as i128 * t;
        }
        s as i64
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    pub fn det(&self) -> BigInt {
        det(&self.gram.to_big()).expect("square")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)] % 2 == 0)
    }

    pub fn signature(&self) -> Signature {
        symmetric_signature(&self.gram)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().is_positive_definite()
    }

    pub fn invariants(&self) -> DiscriminantData {
        let (d, _, _) = snf(&self.gram.to_big());
        let mut invariant_factors = Vec::new();
        for i in 0..d.rows().min(d.cols()) {
            let x = d[(i, i)].abs();
            if x > BigInt::one() {
                invariant_factors.push(x);
            }
        }
        DiscriminantData {
            invariant_factors,
            parity: if self.is_even() { Parity::Even } else { Parity::Odd },
            signature: self.signature(),
        }
    }

    /// Gram matrix `B G Bᵀ` of the vectors in the rows of `basis`.
    pub fn restrict(&self, basis: &IntMatrix) -> Result<ZLattice> {
        if basis.cols() != self.rank() {
            return Err(Error::Dimension("basis vectors have the wrong length".into()));
        }
        let g = basis.to_big().mul(&self.gram.to_big())?.mul(&basis.to_big().transpose())?;
        ZLattice::new(g.to_i64()?)
    }

    /// Vectors of norm exactly `norm`, one of each `±v` pair (the one whose
    /// first nonzero coordinate is positive), in lexicographic order.
    pub fn short_vectors(&self, norm: i64) -> Result<Vec<Vec<i64>>> {
        if norm <= 0 {
            return Err(Error::InvalidArgument("norm must be positive".into()));
        }
        let e = Enumerator::new(&self.gram)?;
        let mut out: Vec<Vec<i64>> = e
            .vectors_up_to(norm)?
            .into_iter()
            .filter(|(n, v)| *n == norm && first_nonzero_positive(v))
            .map(|(_, v)| v)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Saturated sublattice `{x : x·v = 0 for all v}` with its Gram.
    pub fn orth_complement(&self, vectors: &[Vec<i64>]) -> Result<(IntMatrix, ZLattice)> {
        let n = self.rank();
        if vectors.is_empty() {
            return Ok((IntMatrix::identity(n), self.clone()));
        }
        for v in vectors {
            if v.len() != n {
                return Err(Error::Dimension("vector length differs from rank".into()));
            }
        }
        // column j of M is G·vⱼ; the left kernel is the complement
        let m = BigMatrix::from_fn(n, vectors.len(), |i, j| {
            (0..n).map(|k| BigInt::from(self.gram[(i, k)]) * vectors[j][k]).sum()
        });
        let k = left_kernel(&m).to_i64()?;
        let basis = if k.rows() == 0 { IntMatrix::zeros(0, n) } else { k };
        let gram = if basis.rows() == 0 { ZLattice::diag(&[]) } else { self.restrict(&basis)? };
        Ok((basis, gram))
    }

    /// Generators of the discriminant group `L^#/L` with their orders:
    /// columns of `V` scaled by `1/dᵢ` where `U G V = diag(d)`.
    pub fn discriminant_generators(&self) -> Result<Vec<(BigInt, Vec<BigRational>)>> {
        let (d, _, v) = snf(&self.gram.to_big());
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            let di = d[(i, i)].abs();
            if di.is_zero() {
                return Err(Error::InvalidArgument("degenerate lattice has no finite discriminant group".into()));
            }
            if di.is_one() {
                continue;
            }
            let g = (0..n).map(|r| BigRational::new(v[(r, i)].clone(), di.clone())).collect();
            out.push((di, g));
        }
        Ok(out)
    }

    pub fn rational_inner(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut s = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.gram[(i, j)] != 0 && !y[j].is_zero() {
                    s += &x[i] * &y[j] * BigRational::from_integer(self.gram[(i, j)].into());
                }
            }
        }
        s
    }

    /// The lattice generated by `L` and rational glue vectors, on an HNF
    /// basis. Returns the overlattice and its basis in `L`-coordinates.
    pub fn glue(&self, glue: &[Vec<BigRational>]) -> Result<(ZLattice, Matrix<BigRational>)> {
        let n = self.rank();
        for (i, g) in glue.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Dimension("glue vector length differs from rank".into()));
            }
            let gg: Vec<BigRational> = (0..n)
                .map(|r| (0..n).map(|k| &g[k] * BigRational::from_integer(self.gram[(r, k)].into())).sum())
                .collect();
            if let Some(r) = gg.iter().position(|x| !x.is_integer()) {
                return Err(Error::NonIntegralGluing(format!(
                    "glue vector {i} pairs non-integrally with basis vector {r}"
                )));
            }
            for (j, h) in glue.iter().enumerate().take(i + 1) {
                if !self.rational_inner(g, h).is_integer() {
                    let what = if i == j { "norm".to_string() } else { format!("pairing with glue vector {j}") };
                    return Err(Error::NonIntegralGluing(format!("glue vector {i} has non-integral {what}")));
                }
            }
        }
        let den = glue.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut rows: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect()).collect();
        for g in glue {
            rows.push(g.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect());
        }
        let hb = row_basis(&BigMatrix::from_rows(rows)?);
        let basis = hb.map(|x| BigRational::new(x.clone(), den.clone()));
        let g = Matrix::from_fn(n, n, |i, j| self.rational_inner(basis.row(i), basis.row(j)));
        let gram = g.try_map(|x| x.to_integer().to_i64().ok_or(Error::Overflow("glued gram")))?;
        Ok((ZLattice::new(gram)?, basis))
    }
}

pub(crate) fn first_nonzero_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}
