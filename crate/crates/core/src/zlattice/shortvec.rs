//! Fincke–Pohst enumeration on an LLL-preconditioned basis.
//!
//! The Cholesky data is computed exactly over `Q` and only then rounded to
//! `f64`; the enumeration box is widened by a margin far above the rounding
//! error, and every emitted vector is re-checked in integer arithmetic.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

fn checked(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("gram entry during reduction"))
}

/// LLL reduction (δ = 0.99) of a positive definite Gram matrix.
///
/// Returns `(R, G')` with `R` unimodular (rows are the new basis vectors in
/// old coordinates) and `G' = R G Rᵀ`. Floating point only steers the
/// choice of operations; `R` and `G'` are exact.
pub fn lll_reduce(gram: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let n = gram.rows();
    let mut g = gram.clone();
    let mut r = IntMatrix::identity(n);
    if n <= 1 {
        return Ok((r, g));
    }
    let sub = |g: &mut IntMatrix, r: &mut IntMatrix, k: usize, j: usize, q: i64| -> Result<()> {
        // b_k -= q b_j
        for c in 0..n {
            r[(k, c)] = checked(r[(k, c)] as i128 - q as i128 * r[(j, c)] as i128)?;
        }
        let gjj = g[(j, j)] as i128;
        let gkj = g[(k, j)] as i128;
        let gkk = g[(k, k)] as i128;
        for c in 0..n {
            if c != k {
                let v = checked(g[(k, c)] as i128 - q as i128 * g[(j, c)] as i128)?;
                g[(k, c)] = v;
                g[(c, k)] = v;
            }
        }
        let qq = q as i128;
        g[(k, k)] = checked(gkk - 2 * qq * gkj + qq * qq * gjj)?;
        Ok(())
    };
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        let (mut mu, bstar) = gso(&g, k + 1);
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                sub(&mut g, &mut r, k, j, q as i64)?;
                for l in 0..j {
                    mu[k][l] -= q * mu[j][l];
                }
                mu[k][j] -= q;
            }
        }
        let m = mu[k][k - 1];
        if bstar[k] < (0.99 - m * m) * bstar[k - 1] {
            g.swap_rows(k, k - 1);
            for i in 0..n {
                let t = g[(i, k)];
                g[(i, k)] = g[(i, k - 1)];
                g[(i, k - 1)] = t;
            }
            r.swap_rows(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    Ok((r, g))
}

/// Gram–Schmidt coefficients of the first `m` basis vectors.
fn gso(g: &IntMatrix, m: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut mu = vec![vec![0.0; m]; m];
    let mut rr = vec![vec![0.0; m]; m];
    let mut bstar = vec![0.0; m];
    for i in 0..m {
        for j in 0..=i {
            let mut v = g[(i, j)] as f64;
            for l in 0..j {
                v -= mu[j][l] * rr[i][l];
            }
            rr[i][j] = v;
            if j < i {
                mu[i][j] = v / bstar[j];
            } else {
                bstar[i] = v;
            }
        }
    }
    (mu, bstar)
}

/// Short-vector enumerator for a fixed positive definite Gram matrix.
#[derive(Clone, Debug)]
pub struct Enumerator {
    gram: IntMatrix,
    /// rows: reduced basis vectors in original coordinates
    red: IntMatrix,
    /// `Q(y) = Σᵢ q[i][i] (yᵢ + Σ_{j>i} q[i][j] yⱼ)²`
    q: Vec<Vec<f64>>,
}

impl Enumerator {
    /// Errors with `NotPositiveDefinite` unless every exact pivot is positive.
    pub fn new(gram: &IntMatrix) -> Result<Self> {
        // exact check first; reduction assumes definiteness
        exact_cholesky(gram)?;
        let (red, g) = lll_reduce(gram)?;
        let qx = exact_cholesky(&g)?;
        let q = qx.iter().map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
        Ok(Enumerator { gram: gram.clone(), red, q })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// All nonzero `x` (both signs) with `xᵀGx ≤ bound`, with their norms,
    /// sorted by norm and then lexicographically.
    pub fn vectors_up_to(&self, bound: i64) -> Result<Vec<(i64, Vec<i64>)>> {
        let n = self.rank();
        let mut out = Vec::new();
        if n == 0 || bound <= 0 {
            return Ok(out);
        }
        let mut y = vec![0i64; n];
        let eps = 1e-6 * (1.0 + bound as f64);
        let mut err = None;
        self.rec(n - 1, &mut y, bound as f64, eps, &mut |y| {
            let mut x = vec![0i64; n];
            for (i, &yi) in y.iter().enumerate() {
                if yi != 0 {
                    for c in 0..n {
                        x[c] += yi * self.red[(i, c)];
                    }
                }
            }
            let norm = norm_i128(&self.gram, &x);
            match i64::try_from(norm) {
                Ok(v) if v <= bound => out.push((v, x)),
                Ok(_) => {}
                Err(_) => err = Some(Error::Overflow("vector norm")),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        out.sort();
        Ok(out)
    }

    fn rec(&self, i: usize, y: &mut [i64], rem: f64, eps: f64, out: &mut impl FnMut(&[i64])) {
        let n = y.len();
        let mut c = 0.0;
        for j in i + 1..n {
            c -= self.q[i][j] * y[j] as f64;
        }
        let r = ((rem + eps).max(0.0) / self.q[i][i]).sqrt() + 1e-9;
        let lo = (c - r).ceil() as i64;
        let hi = (c + r).floor() as i64;
        for v in lo..=hi {
            y[i] = v;
            let d = v as f64 - c;
            let next = rem - self.q[i][i] * d * d;
            if next < -eps {
                continue;
            }
            if i == 0 {
                if y.iter().any(|&t| t != 0) {
                    out(y);
                }
            } else {
                self.rec(i - 1, y, next, eps, out);
            }
        }
        y[i] = 0;
    }
}

fn norm_i128(g: &IntMatrix, x: &[i64]) -> i128 {
    let n = x.len();
    let mut s = 0i128;
    for i in 0..n {
        if x[i] == 0 {
            continue;
        }
        let mut t = 0i128;
        for j in 0..n {
            t += g[(i, j)] as i128 * x[j] as i128;
        }
        s += x[i] as i128 * t;
    }
    s
}

/// Exact Fincke–Pohst coefficients over `Q`.
fn exact_cholesky(gram: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = gram.rows();
    let mut q: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(gram[(i, j)].into())).collect()).collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            q[i][j] = BigRational::zero();
        }
    }
    Ok(q)
}
