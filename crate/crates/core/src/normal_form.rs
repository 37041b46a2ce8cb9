//! Hermite and Smith normal forms, kernels and determinants over a Euclidean
//! domain (`Z` or `Z[ζ]`).
//!
//! Matrices act on row vectors: `hnf` returns `(H, U)` with `H = U·M`, and
//! the rows of `H` generate the same module as the rows of `M`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;

/// `row[target] -= q · row[src]`
fn row_axpy<R: EuclideanDomain>(m: &mut Matrix<R>, target: usize, src: usize, q: &R) {
    if q.is_zero() {
        return;
    }
    for k in 0..m.cols() {
        let s = m[(src, k)].clone();
        if !s.is_zero() {
            m[(target, k)] = m[(target, k)].clone() - q.clone() * s;
        }
    }
}

/// `col[target] -= q · col[src]`
fn col_axpy<R: EuclideanDomain>(m: &mut Matrix<R>, target: usize, src: usize, q: &R) {
    if q.is_zero() {
        return;
    }
    for k in 0..m.rows() {
        let s = m[(k, src)].clone();
        if !s.is_zero() {
            m[(k, target)] = m[(k, target)].clone() - q.clone() * s;
        }
    }
}

fn scale_row<R: EuclideanDomain>(m: &mut Matrix<R>, i: usize, u: &R) {
    for k in 0..m.cols() {
        m[(i, k)] = u.clone() * m[(i, k)].clone();
    }
}

fn swap_cols<R: Clone>(m: &mut Matrix<R>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..m.rows() {
        let t = m[(k, i)].clone();
        m[(k, i)] = m[(k, j)].clone();
        m[(k, j)] = t;
    }
}

/// Row-style Hermite normal form.
///
/// Pivots are canonical associates; entries above a pivot are Euclidean
/// remainders modulo the pivot. Zero rows collect at the bottom.
pub fn hnf<R: EuclideanDomain>(m: &Matrix<R>) -> (Matrix<R>, Matrix<R>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = Matrix::<R>::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !h[(i, c)].is_zero()).min_by_key(|&i| h[(i, c)].size());
            let Some(p) = best else { break };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let (q, rem) = h[(i, c)].div_rem_e(&h[(r, c)]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        let unit = h[(r, c)].normalizing_unit();
        scale_row(&mut h, r, &unit);
        scale_row(&mut u, r, &unit);
        for i in 0..r {
            let (q, _) = h[(i, c)].div_rem_e(&h[(r, c)]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Number of nonzero rows of the Hermite form.
pub fn rank<R: EuclideanDomain>(m: &Matrix<R>) -> usize {
    let (h, _) = hnf(m);
    h.iter_rows().filter(|row| row.iter().any(|x| !x.is_zero())).count()
}

/// Smith normal form: `(D, U, V)` with `D = U·M·V` diagonal, `d₁ | d₂ | …`,
/// each `dᵢ` a canonical associate.
pub fn snf<R: EuclideanDomain>(m: &Matrix<R>) -> (Matrix<R>, Matrix<R>, Matrix<R>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::<R>::identity(rows);
    let mut v = Matrix::<R>::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].size() < d[(bi, bj)].size()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(pi, t);
            u.swap_rows(pi, t);
            swap_cols(&mut d, pj, t);
            swap_cols(&mut v, pj, t);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (q, rem) = d[(i, t)].div_rem_e(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= rem.is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (q, rem) = d[(t, j)].div_rem_e(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[(i, j)].exact_div(&d[(t, t)]).is_none()));
            match bad {
                Some(i) => {
                    // row_t += row_i brings a non-multiple into row t
                    let minus_one = -R::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if !d[(t, t)].is_zero() {
            let unit = d[(t, t)].normalizing_unit();
            scale_row(&mut d, t, &unit);
            scale_row(&mut u, t, &unit);
        }
    }
    (d, u, v)
}

/// Basis (as rows) of the left kernel `{x : x·M = 0}`; saturated by construction.
pub fn left_kernel<R: EuclideanDomain>(m: &Matrix<R>) -> Matrix<R> {
    let (h, u) = hnf(m);
    let zero_rows: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    u.select_rows(&zero_rows)
}

/// Basis (as rows) of the right kernel `{x : M·x = 0}`.
pub fn right_kernel<R: EuclideanDomain>(m: &Matrix<R>) -> Matrix<R> {
    left_kernel(&m.transpose())
}

/// The nonzero rows of the Hermite form: a basis of the row module.
pub fn row_basis<R: EuclideanDomain>(m: &Matrix<R>) -> Matrix<R> {
    let (h, _) = hnf(m);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    h.select_rows(&keep)
}

/// Coefficients `x` with `x·B = y`, or `None` when `y` is not in the row
/// module of `B`. `B` must have independent rows.
pub fn solve_in_row_span<R: EuclideanDomain>(b: &Matrix<R>, y: &[R]) -> Result<Option<Vec<R>>> {
    if y.len() != b.cols() {
        return Err(Error::Dimension(format!("vector of length {} against {} columns", y.len(), b.cols())));
    }
    let (h, u) = hnf(b);
    let mut rest = y.to_vec();
    let mut coeff = vec![R::zero(); h.rows()];
    let mut col = 0;
    for i in 0..h.rows() {
        while col < h.cols() && h[(i, col)].is_zero() {
            if !rest[col].is_zero() {
                return Ok(None);
            }
            col += 1;
        }
        if col == h.cols() {
            break;
        }
        let Some(q) = rest[col].exact_div(&h[(i, col)]) else { return Ok(None) };
        for k in col..h.cols() {
            rest[k] = rest[k].clone() - q.clone() * h[(i, k)].clone();
        }
        coeff[i] = q;
        col += 1;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    // y = c·H = c·U·B
    Ok(Some(u.vec_mul(&coeff)?))
}

/// Inverse of a matrix that is invertible over the ring, else `None`.
pub fn unimodular_inverse<R: EuclideanDomain>(m: &Matrix<R>) -> Option<Matrix<R>> {
    if !m.is_square() {
        return None;
    }
    let (h, u) = hnf(m);
    h.is_identity().then_some(u)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det<R: EuclideanDomain>(m: &Matrix<R>) -> Result<R> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(R::one());
    }
    let mut a = m.clone();
    let mut sign = R::one();
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * a[(n - 1, n - 1)].clone())
}
