//! Hermitian lattices over `Z[ζ]` and the dictionary with integral lattices
//! carrying a fixed-point-free order-3 isometry.
//!
//! Conventions: `h(x, y) = xᵀ H ȳ` is linear in the first slot; a vector is
//! a column of Eisenstein coordinates; bases of sublattices are matrix rows.
//! On the integral side `ζ` acts as `T`, and
//! `h = θ·φ` with `φ(a, a') = −(a·a')ζ + (a·Ta')`.

mod search;

pub use search::{element_ball, isotropic_search, vectors_of_norm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{gcd, EisensteinInt, EisensteinRational};
use crate::error::{Error, Result};
use crate::matrix::{EMatrix, IntMatrix};
use crate::normal_form::{det, hnf, left_kernel, solve_in_row_span, unimodular_inverse};
use crate::pivot::{clear_denominators, hermitian_pivot, Signature};
use crate::zlattice::{IsometrySource, ZLattice};

type E = EisensteinInt;

/// An integral lattice with an isometry `T`, `1 + T + T² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Mu3Repr", into = "Mu3Repr")]
pub struct Mu3ZLattice {
    base: ZLattice,
    t: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct Mu3Repr {
    rank: usize,
    gram: Vec<Vec<i64>>,
    t: Vec<Vec<i64>>,
}

impl TryFrom<Mu3Repr> for Mu3ZLattice {
    type Error = Error;
    fn try_from(r: Mu3Repr) -> Result<Self> {
        let base: ZLattice = serde_json::from_value(serde_json::json!({"rank": r.rank, "gram": r.gram}))
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let t = if r.t.is_empty() { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(r.t)? };
        Mu3ZLattice::new(base, t)
    }
}

impl From<Mu3ZLattice> for Mu3Repr {
    fn from(m: Mu3ZLattice) -> Self {
        Mu3Repr { rank: m.base.rank(), gram: m.base.gram().to_rows(), t: m.t.to_rows() }
    }
}

impl Mu3ZLattice {
    pub fn new(base: ZLattice, t: IntMatrix) -> Result<Self> {
        let n = base.rank();
        if t.rows() != n || t.cols() != n {
            return Err(Error::Dimension("T must match the lattice rank".into()));
        }
        let g = base.gram();
        if t.transpose().mul(g)?.mul(&t)? != *g {
            return Err(Error::InvariantViolation("T is not an isometry".into()));
        }
        let t2 = t.mul(&t)?;
        let s = IntMatrix::identity(n).add(&t)?.add(&t2)?;
        if !s.is_zero() {
            return Err(Error::InvariantViolation("1 + T + T² ≠ 0: T has fixed vectors or wrong order".into()));
        }
        Ok(Mu3ZLattice { base, t })
    }

    pub fn base(&self) -> &ZLattice {
        &self.base
    }

    pub fn t(&self) -> &IntMatrix {
        &self.t
    }

    /// `φ(a, a') = −(a·a')ζ + (a·Ta')`
    pub fn phi(&self, a: &[i64], b: &[i64]) -> E {
        let tb: Vec<i64> = (0..b.len()).map(|i| crate::matrix::dot(self.t.row(i), b)).collect();
        E::new(self.base.inner(a, &tb), -self.base.inner(a, b))
    }

    pub fn h(&self, a: &[i64], b: &[i64]) -> E {
        &E::theta() * &self.phi(a, b)
    }
}

/// A lattice over `Z[ζ]` with Hermitian Gram matrix valued in `θ·Z[ζ]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ERepr", into = "ERepr")]
pub struct ELattice {
    hgram: EMatrix,
}

#[derive(Serialize, Deserialize)]
struct ERepr {
    rank: usize,
    hgram: Vec<Vec<E>>,
}

impl TryFrom<ERepr> for ELattice {
    type Error = Error;
    fn try_from(r: ERepr) -> Result<Self> {
        let h = if r.hgram.is_empty() { EMatrix::zeros(0, 0) } else { EMatrix::from_rows(r.hgram)? };
        if h.rows() != r.rank {
            return Err(Error::Dimension(format!("rank {} but hgram has {} rows", r.rank, h.rows())));
        }
        ELattice::new(h)
    }
}

impl From<ELattice> for ERepr {
    fn from(l: ELattice) -> Self {
        ERepr { rank: l.rank(), hgram: l.hgram.to_rows() }
    }
}

impl std::fmt::Debug for ELattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ELattice(rank {}, {:?})", self.rank(), self.hgram)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EInvariants {
    pub signature: Signature,
    pub positive_definite: bool,
    pub negative_definite: bool,
    pub det: E,
}

impl EInvariants {
    pub fn definite(&self) -> bool {
        self.positive_definite || self.negative_definite
    }
}

/// Result of [`ELattice::complement_quotient`].
#[derive(Clone, Debug)]
pub struct ComplementQuotient {
    pub complement: ELattice,
    pub complement_basis: EMatrix,
    /// `v^⊥/Z[ζ]v` and the lifts of its basis, when `v` is isotropic
    pub quotient: Option<(ELattice, EMatrix)>,
}

pub(crate) fn theta_divides(x: &E) -> bool {
    // θ | a + bζ  ⟺  3 | a + b
    (&x.a + &x.b).is_multiple_of(&BigInt::from(3))
}

impl ELattice {
    pub fn new(hgram: EMatrix) -> Result<Self> {
        if !hgram.is_square() {
            return Err(Error::Dimension("hgram must be square".into()));
        }
        let n = hgram.rows();
        for i in 0..n {
            if !hgram[(i, i)].is_rational() || !hgram[(i, i)].a.is_multiple_of(&BigInt::from(3)) {
                return Err(Error::InvariantViolation(format!("diagonal entry {i} is not a multiple of 3")));
            }
            for j in 0..n {
                if hgram[(j, i)] != hgram[(i, j)].conj() {
                    return Err(Error::InvariantViolation(format!("hgram not Hermitian at ({i}, {j})")));
                }
                if !theta_divides(&hgram[(i, j)]) {
                    return Err(Error::InvariantViolation(format!("entry ({i}, {j}) is not divisible by θ")));
                }
            }
        }
        Ok(ELattice { hgram })
    }

    pub fn rank(&self) -> usize {
        self.hgram.rows()
    }

    pub fn hgram(&self) -> &EMatrix {
        &self.hgram
    }

    /// `Λ_k`: diagonal 3, `h(rᵢ, rᵢ₊₁) = θ`.
    pub fn lambda(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("Λ_k needs k ≥ 1".into()));
        }
        let t = E::theta();
        let h = EMatrix::from_fn(k, k, |i, j| {
            if i == j {
                E::from_int(3)
            } else if j == i + 1 {
                t.clone()
            } else if i == j + 1 {
                -t.clone()
            } else {
                E::zero()
            }
        });
        Ok(ELattice { hgram: h })
    }

    /// `U_E`: two isotropic vectors with `h(e, f) = θ`.
    pub fn hyperbolic() -> Self {
        let t = E::theta();
        ELattice { hgram: EMatrix::from_rows(vec![vec![E::zero(), t.clone()], vec![-t, E::zero()]]).unwrap() }
    }

    pub fn direct_sum(&self, other: &ELattice) -> ELattice {
        ELattice { hgram: EMatrix::block_diag(&[&self.hgram, &other.hgram]) }
    }

    pub fn direct_sum_all(parts: &[&ELattice]) -> ELattice {
        let hs: Vec<&EMatrix> = parts.iter().map(|l| &l.hgram).collect();
        ELattice { hgram: EMatrix::block_diag(&hs) }
    }

    /// Entrywise conjugate Gram matrix.
    pub fn conjugate(&self) -> ELattice {
        ELattice { hgram: self.hgram.conj() }
    }

    pub fn h(&self, x: &[E], y: &[E]) -> E {
        let n = self.rank();
        let mut s = E::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut t = E::zero();
            for j in 0..n {
                if !y[j].is_zero() && !self.hgram[(i, j)].is_zero() {
                    t += &(&self.hgram[(i, j)] * &y[j].conj());
                }
            }
            s += &(&x[i] * &t);
        }
        s
    }

    /// `H ȳ`, so that `h(x, y) = Σ xᵢ (Hȳ)ᵢ`.
    pub fn pairing_column(&self, y: &[E]) -> Vec<E> {
        let yb: Vec<E> = y.iter().map(E::conj).collect();
        self.hgram.mul_vec(&yb).expect("dimension")
    }

    /// Gram matrix `B H Bᴴ` of the rows of `basis`.
    pub fn restrict(&self, basis: &EMatrix) -> Result<ELattice> {
        if basis.cols() != self.rank() {
            return Err(Error::Dimension("basis vectors have the wrong length".into()));
        }
        if basis.rows() == 0 {
            return Ok(ELattice { hgram: EMatrix::zeros(0, 0) });
        }
        let h = basis.mul(&self.hgram)?.mul(&basis.conj_transpose())?;
        ELattice::new(h)
    }

    pub fn signature(&self) -> Signature {
        crate::pivot::hermitian_signature(&self.hgram)
    }

    pub fn invariants(&self) -> EInvariants {
        let signature = self.signature();
        EInvariants {
            signature,
            positive_definite: signature.is_positive_definite() && self.rank() > 0,
            negative_definite: signature.is_negative_definite() && self.rank() > 0,
            det: det(&self.hgram).expect("square"),
        }
    }

    pub fn det(&self) -> E {
        det(&self.hgram).expect("square")
    }

    /// The underlying integral lattice on the basis `(b₁, ζb₁, b₂, ζb₂, …)`,
    /// with `T` acting as multiplication by `ζ`.
    pub fn underlying(&self) -> Result<Mu3ZLattice> {
        let n = self.rank();
        let zeta = E::zeta();
        let zeta_bar = zeta.conj();
        let theta = E::theta();
        let mut g = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                for s in 0..2 {
                    for t in 0..2 {
                        // h(ζˢbᵢ, ζᵗbⱼ) = ζˢ ζ̄ᵗ h(bᵢ, bⱼ)
                        let mut v = self.hgram[(i, j)].clone();
                        if s == 1 {
                            v = &v * &zeta;
                        }
                        if t == 1 {
                            v = &v * &zeta_bar;
                        }
                        let phi = v
                            .div_exact(&theta)
                            .ok_or_else(|| Error::InvariantViolation("hgram entry not divisible by θ".into()))?;
                        let dotv = (-phi.b).to_i64().ok_or(Error::Overflow("underlying gram"))?;
                        g[(2 * i + s, 2 * j + t)] = dotv;
                    }
                }
            }
        }
        let mut tm = IntMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            tm[(2 * i + 1, 2 * i)] = 1;
            tm[(2 * i, 2 * i + 1)] = -1;
            tm[(2 * i + 1, 2 * i + 1)] = -1;
        }
        Mu3ZLattice::new(ZLattice::new(g)?, tm)
    }

    /// Eisenstein structure of a μ₃-lattice. Returns the lattice and the
    /// chosen `Z[ζ]`-basis as integer rows.
    pub fn from_mu3(m: &Mu3ZLattice) -> Result<(ELattice, IntMatrix)> {
        let n = m.base.rank();
        if n % 2 == 1 {
            return Err(Error::InvariantViolation("odd rank cannot carry a free Z[ζ]-structure".into()));
        }
        let r = n / 2;
        let t = &m.t;
        let tv = |v: &[i64]| -> Vec<i64> { (0..n).map(|i| crate::matrix::dot(t.row(i), v)).collect() };

        // Q(ζ)-basis among the standard vectors, greedily in input order
        let mut picked: Vec<usize> = Vec::new();
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for j in 0..n {
            if cols.len() == n {
                break;
            }
            let mut e = vec![0i64; n];
            e[j] = 1;
            let te = tv(&e);
            let mut trial = cols.clone();
            trial.push(e);
            trial.push(te);
            let mm = crate::matrix::BigMatrix::from_fn(trial.len(), n, |a, b| BigInt::from(trial[a][b]));
            if crate::normal_form::rank(&mm) == trial.len() {
                picked.push(j);
                cols = trial;
            }
        }
        if cols.len() != n {
            return Err(Error::InvariantViolation("T-orbits do not span".into()));
        }
        // C has columns c₁, Tc₁, …; coordinates of eⱼ are C⁻¹eⱼ
        let c = crate::matrix::BigMatrix::from_fn(n, n, |i, k| BigInt::from(cols[k][i]));
        let (cinv_num, cinv_den) = rational_inverse(&c)?;
        // row j: eⱼ = Σₖ (α + βζ) cₖ, scaled by the common denominator
        let coords =
            EMatrix::from_fn(n, r, |j, k| E::new(cinv_num[(2 * k, j)].clone(), cinv_num[(2 * k + 1, j)].clone()));
        let hb = crate::normal_form::row_basis(&coords);
        debug_assert_eq!(hb.rows(), r);
        let mut ebasis = IntMatrix::zeros(r, n);
        for i in 0..r {
            for row in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..r {
                    let x = &hb[(i, k)];
                    acc += &x.a * cols[2 * k][row] + &x.b * cols[2 * k + 1][row];
                }
                let (q, rem) = acc.div_rem(&cinv_den);
                if !rem.is_zero() {
                    return Err(Error::InvariantViolation("saturation produced a non-integral vector".into()));
                }
                ebasis[(i, row)] = q.to_i64().ok_or(Error::Overflow("Eisenstein basis"))?;
            }
        }
        let rows: Vec<Vec<i64>> = ebasis.to_rows();
        let h = EMatrix::from_fn(r, r, |i, j| m.h(&rows[i], &rows[j]));
        Ok((ELattice::new(h)?, ebasis))
    }

    /// Coefficients of `x` in the `Z[ζ]`-basis `ebasis` of a μ₃-lattice.
    pub fn eisenstein_coordinates(m: &Mu3ZLattice, ebasis: &IntMatrix, x: &[i64]) -> Result<Option<Vec<E>>> {
        let n = m.base.rank();
        let r = ebasis.rows();
        let mut rows = Vec::with_capacity(n);
        for i in 0..r {
            let b = ebasis.row(i).to_vec();
            let tb: Vec<i64> = (0..n).map(|k| crate::matrix::dot(m.t.row(k), &b)).collect();
            rows.push(b.into_iter().map(BigInt::from).collect::<Vec<_>>());
            rows.push(tb.into_iter().map(BigInt::from).collect());
        }
        let bm = crate::matrix::BigMatrix::from_rows(rows)?;
        let y: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        Ok(solve_in_row_span(&bm, &y)?
            .map(|c| (0..r).map(|i| E::new(c[2 * i].clone(), c[2 * i + 1].clone())).collect()))
    }

    /// `v^⊥` (saturated) and, for isotropic `v`, the quotient `v^⊥/Z[ζ]v`.
    pub fn complement_quotient(&self, v: &[E]) -> Result<ComplementQuotient> {
        let n = self.rank();
        if v.len() != n {
            return Err(Error::NotInLattice);
        }
        let content = v.iter().filter(|x| !x.is_zero()).try_fold(None::<E>, |acc, x| -> Result<Option<E>> {
            Ok(Some(match acc {
                None => x.canonical(),
                Some(g) => gcd(&g, x)?,
            }))
        })?;
        if !content.is_some_and(|c| c.is_unit()) {
            return Err(Error::NonPrimitive);
        }
        let col = self.pairing_column(v);
        let m = EMatrix::from_fn(n, 1, |i, _| col[i].clone());
        let k = left_kernel(&m);
        let complement = self.restrict(&k)?;
        let quotient = if self.h(v, v).is_zero() {
            let y = solve_in_row_span(&k, v)?.ok_or(Error::InvariantViolation("isotropic v outside v^⊥".into()))?;
            let p = extend_to_unimodular(&y)?;
            let nb = p.mul(&k)?;
            let idx: Vec<usize> = (1..nb.rows()).collect();
            let qb = nb.select_rows(&idx);
            Some((self.restrict(&qb)?, qb))
        } else {
            None
        };
        Ok(ComplementQuotient { complement, complement_basis: k, quotient })
    }

    /// Whether `h` is positive semidefinite on the span of `sub_basis`;
    /// otherwise a lattice vector with `h(w, w) < 0`.
    pub fn psd_on(&self, sub_basis: &EMatrix) -> Result<(bool, Option<Vec<E>>)> {
        if sub_basis.rows() == 0 {
            return Ok((true, None));
        }
        if sub_basis.cols() != self.rank() {
            return Err(Error::Dimension("basis vectors have the wrong length".into()));
        }
        let g = sub_basis.mul(&self.hgram)?.mul(&sub_basis.conj_transpose())?;
        let out = hermitian_pivot(&g.map(|x| EisensteinRational::from_int(x.clone())));
        match out.negative {
            None => Ok((true, None)),
            Some(c) => {
                let c = clear_denominators(&c);
                let w = sub_basis.vec_mul(&c)?;
                debug_assert!(self.h(&w, &w).a.is_negative());
                Ok((false, Some(w)))
            }
        }
    }
}

/// `(N, d)` with `M⁻¹ = N / d` over `Q`.
fn rational_inverse(m: &crate::matrix::BigMatrix) -> Result<(crate::matrix::BigMatrix, BigInt)> {
    use num_rational::BigRational;
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    BigRational::from_integer(if j < n { m[(i, j)].clone() } else { BigInt::from((j - n == i) as i64) })
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::InvariantViolation("singular matrix".into()))?;
        a.swap(p, k);
        let piv = a[k][k].clone();
        for x in a[k].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let c = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &c * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    let d = a.iter().flat_map(|r| r[n..].iter()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = crate::matrix::BigMatrix::from_fn(n, n, |i, j| {
        (&a[i][n + j] * BigRational::from_integer(d.clone())).to_integer()
    });
    Ok((num, d))
}

/// A unimodular matrix whose first row is the primitive vector `y`.
fn extend_to_unimodular(y: &[E]) -> Result<EMatrix> {
    let n = y.len();
    let col = EMatrix::from_fn(n, 1, |i, _| y[i].clone());
    let (h, u) = hnf(&col);
    // U·y = (d, 0, …)ᵀ with d a unit, so y = d · (first column of U⁻¹)
    let d = h[(0, 0)].clone();
    if !d.is_unit() {
        return Err(Error::NonPrimitive);
    }
    let uinv = unimodular_inverse(&u).ok_or(Error::InvariantViolation("HNF transform not unimodular".into()))?;
    let mut p = uinv.transpose();
    for k in 0..n {
        p[(0, k)] = &p[(0, k)] * &d;
    }
    Ok(p)
}

/// Exact check that `g` is an isometry `L₁ → L₂`: `gᵀ H₂ ḡ = H₁`.
pub fn is_e_isometry(h1: &EMatrix, h2: &EMatrix, g: &EMatrix) -> bool {
    g.transpose().mul(h2).and_then(|x| x.mul(&g.conj())).is_ok_and(|x| &x == h1)
}

/// Reusable source side of Hermitian isometry tests.
pub struct ESource {
    hgram: EMatrix,
    inner: IsometrySource,
}

impl ESource {
    pub fn new(l: &ELattice) -> Result<Self> {
        if !l.invariants().positive_definite && l.rank() > 0 {
            return Err(Error::NotPositiveDefinite);
        }
        let u = l.underlying()?;
        Ok(ESource { hgram: l.hgram.clone(), inner: IsometrySource::new(u.base(), Some(u.t()))? })
    }

    /// An isometry `g` from the source onto `target`, `gᵀ H₂ ḡ = H₁`.
    pub fn find(&self, target: &ELattice) -> Result<Option<EMatrix>> {
        let n = self.hgram.rows();
        if target.rank() != n {
            return Err(Error::RankMismatch(n, target.rank()));
        }
        if !target.invariants().positive_definite && n > 0 {
            return Err(Error::NotPositiveDefinite);
        }
        if det(&self.hgram)? != target.det() {
            return Ok(None);
        }
        let u = target.underlying()?;
        let Some(f) = self.inner.find(u.base(), Some(u.t()))? else { return Ok(None) };
        let g = EMatrix::from_fn(n, n, |i, j| E::new(f[(2 * i, 2 * j)], f[(2 * i + 1, 2 * j)]));
        if !is_e_isometry(&self.hgram, target.hgram(), &g) {
            return Err(Error::InvariantViolation("equivariant isometry failed the Hermitian check".into()));
        }
        Ok(Some(g))
    }
}

/// Isometry between positive definite Hermitian lattices via the
/// `T`-equivariant search on the underlying integral lattices.
pub fn e_isometry_definite(l1: &ELattice, l2: &ELattice) -> Result<Option<EMatrix>> {
    if l1.rank() != l2.rank() {
        return Err(Error::RankMismatch(l1.rank(), l2.rank()));
    }
    ESource::new(l1)?.find(l2)
}

/// `diag((−1)ⁱ)`, the isometry between `Λ_k` and its conjugate.
pub fn alternating_sign(k: usize) -> EMatrix {
    EMatrix::from_fn(k, k, |i, j| {
        if i != j {
            E::zero()
        } else if i % 2 == 0 {
            E::one()
        } else {
            -E::one()
        }
    })
}

pub(crate) fn content_is_unit(v: &[E]) -> bool {
    let mut g: Option<E> = None;
    for x in v.iter().filter(|x| !x.is_zero()) {
        g = Some(match g {
            None => x.canonical(),
            Some(g) => gcd(&g, x).expect("nonzero"),
        });
        if g.as_ref().is_some_and(|g| g.is_unit()) {
            return true;
        }
    }
    g.is_some_and(|g| g.is_unit())
}

#[cfg(test)]
mod tests;
