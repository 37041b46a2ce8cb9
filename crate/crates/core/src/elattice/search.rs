//! Bounded search for vectors of prescribed Hermitian norm.
//!
//! Coordinates range over the Eisenstein integers of norm at most the
//! height. The Gram matrix is assumed banded (bandwidth `w`), so the norm
//! accumulates coordinate by coordinate with a contribution depending on the
//! new coordinate and the previous `w` ones. A backward pass tabulates which
//! remaining sums are reachable from each frontier; the forward depth-first
//! pass then only enters branches that can still hit the target.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::eisenstein::EisensteinInt;
use crate::elattice::{content_is_unit, ELattice};
use crate::error::{Error, Result};

type Pair = (i64, i64);

const MAX_STATES: usize = 200_000;

fn norm(x: Pair) -> i64 {
    x.0 * x.0 - x.0 * x.1 + x.1 * x.1
}

fn mul(x: Pair, y: Pair) -> Pair {
    // ζ² = −1 − ζ
    let (a, b) = x;
    let (c, d) = y;
    (a * c - b * d, a * d + b * c - b * d)
}

fn conj(x: Pair) -> Pair {
    (x.0 - x.1, -x.1)
}

fn re2(x: Pair) -> i64 {
    2 * x.0 - x.1
}

fn is_canonical(x: Pair) -> bool {
    0 <= x.1 && x.1 < x.0
}

/// Eisenstein integers of norm at most `height`, in lexicographic order.
pub fn element_ball(height: u64) -> Vec<EisensteinInt> {
    ball(height).into_iter().map(EisensteinInt::from).collect()
}

fn ball(height: u64) -> Vec<Pair> {
    let h = height as i64;
    let r = (2.0 * (h as f64 / 3.0).sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if norm((a, b)) <= h {
                out.push((a, b));
            }
        }
    }
    out
}

struct Tables {
    r: usize,
    w: usize,
    elems: Vec<Pair>,
    zero: usize,
    /// `diag[k][x] = H_kk·N(x)`
    diag: Vec<Vec<i64>>,
    /// `cross[k][d-1][xj·m + x] = 2 Re(xⱼ H_{k−d,k} x̄)`
    cross: Vec<Vec<Vec<i64>>>,
    /// `reach[k][state]`: sums of contributions of coordinates `k..r`
    reach: Vec<Vec<HashSet<i64>>>,
}

impl Tables {
    fn new(l: &ELattice, height: u64) -> Result<Tables> {
        let r = l.rank();
        let h = l.hgram().try_map(|x| x.to_i64_pair().ok_or(Error::Overflow("hgram entry")))?;
        let w = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .filter(|&(i, j)| h[(i, j)] != (0, 0))
            .map(|(i, j)| i.abs_diff(j))
            .max()
            .unwrap_or(0);
        let elems = ball(height);
        let m = elems.len();
        let zero = elems.iter().position(|&x| x == (0, 0)).unwrap();
        let nstates = m
            .checked_pow(w as u32)
            .filter(|&s| s <= MAX_STATES)
            .ok_or_else(|| Error::InvalidArgument(format!("Gram bandwidth {w} is too large for the banded search")))?;
        let diag = (0..r).map(|k| elems.iter().map(|&x| h[(k, k)].0 * norm(x)).collect()).collect();
        let cross = (0..r)
            .map(|k| {
                (1..=w)
                    .map(|d| {
                        let mut t = vec![0i64; m * m];
                        if k >= d {
                            let hk = h[(k - d, k)];
                            for (a, &xj) in elems.iter().enumerate() {
                                for (b, &x) in elems.iter().enumerate() {
                                    t[a * m + b] = re2(mul(mul(xj, hk), conj(x)));
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        let mut t = Tables { r, w, elems, zero, diag, cross, reach: Vec::new() };
        let mut reach = vec![Vec::new(); r + 1];
        reach[r] = vec![std::iter::once(0).collect::<HashSet<i64>>(); nstates];
        for k in (0..r).rev() {
            let next = &reach[k + 1];
            let cur: Vec<HashSet<i64>> = (0..nstates)
                .map(|s| {
                    let mut set = HashSet::new();
                    for x in 0..m {
                        let c = t.contribution(k, s, x);
                        for v in &next[t.shift(s, x)] {
                            set.insert(c + v);
                        }
                    }
                    set
                })
                .collect();
            reach[k] = cur;
        }
        t.reach = reach;
        Ok(t)
    }

    /// Frontier element at distance `d` (1-based) encoded in state `s`.
    fn frontier(&self, s: usize, d: usize) -> usize {
        let m = self.elems.len();
        (s / m.pow((d - 1) as u32)) % m
    }

    fn shift(&self, s: usize, x: usize) -> usize {
        if self.w == 0 {
            return 0;
        }
        let m = self.elems.len();
        (s % m.pow((self.w - 1) as u32)) * m + x
    }

    fn contribution(&self, k: usize, s: usize, x: usize) -> i64 {
        let m = self.elems.len();
        let mut c = self.diag[k][x];
        for d in 1..=self.w.min(k) {
            c += self.cross[k][d - 1][self.frontier(s, d) * m + x];
        }
        c
    }

    fn initial_state(&self) -> usize {
        (0..self.w).fold(0, |s, _| s * self.elems.len() + self.zero)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        k: usize,
        s: usize,
        partial: i64,
        leading: bool,
        target: i64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == self.r {
            if !leading && partial == target {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..self.elems.len() {
            if leading && x != self.zero && !is_canonical(self.elems[x]) {
                continue;
            }
            let c = partial + self.contribution(k, s, x);
            let ns = self.shift(s, x);
            if !self.reach[k + 1][ns].contains(&(target - c)) {
                continue;
            }
            cur.push(x);
            self.dfs(k + 1, ns, c, leading && x == self.zero, target, cur, out);
            cur.pop();
        }
    }
}

/// Nonzero `v` with `h(v, v) = target` and every coordinate of norm at most
/// `height`, one per unit class (first nonzero coordinate canonical),
/// optionally only primitive ones, in lexicographic order.
pub fn vectors_of_norm(l: &ELattice, height: u64, target: i64, primitive: bool) -> Result<Vec<Vec<EisensteinInt>>> {
    let r = l.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    let t = Tables::new(l, height)?;
    let s0 = t.initial_state();
    let firsts: Vec<usize> = (0..t.elems.len()).filter(|&x| x == t.zero || is_canonical(t.elems[x])).collect();
    let parts: Vec<Vec<Vec<usize>>> = firsts
        .par_iter()
        .map(|&x| {
            let mut out = Vec::new();
            let c = t.contribution(0, s0, x);
            let ns = t.shift(s0, x);
            if t.reach[1][ns].contains(&(target - c)) {
                let mut cur = vec![x];
                t.dfs(1, ns, c, x == t.zero, target, &mut cur, &mut out);
            }
            out
        })
        .collect();
    let vecs: Vec<Vec<EisensteinInt>> = parts
        .into_iter()
        .flatten()
        .map(|idx| idx.into_iter().map(|i| EisensteinInt::from(t.elems[i])).collect::<Vec<_>>())
        .filter(|v| !primitive || content_is_unit(v))
        .collect();
    Ok(vecs)
}

/// Primitive isotropic vectors of height at most `height`, one per unit
/// class, in lexicographic order.
pub fn isotropic_search(l: &ELattice, height: u64) -> Result<Vec<Vec<EisensteinInt>>> {
    let sig = l.signature();
    if sig.p == 0 || sig.n == 0 {
        return Err(Error::DefiniteInput);
    }
    vectors_of_norm(l, height, 0, true)
}
