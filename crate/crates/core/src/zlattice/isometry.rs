//! Isometry testing for positive definite lattices by backtracking over
//! short-vector images (in the spirit of Plesken–Souvignier).
//!
//! A generating set `b₁, …` of the source lattice is chosen among its short
//! vectors. When an order-`m` symmetry `T₁` must be intertwined, each `bₖ`
//! brings its orbit `bₖ, T₁bₖ, …` along, and only `bₖ` gets a free image `w`;
//! the rest of the block is forced to `T₂w, T₂²w, …`. Partial assignments
//! are pruned by comparing inner products with the source Gram.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{BigMatrix, IntMatrix};
use crate::normal_form::snf;
use crate::zlattice::shortvec::{lll_reduce, Enumerator};
use crate::zlattice::{first_nonzero_positive, ZLattice};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    (0..m.rows()).map(|i| dot(m.row(i), v)).collect()
}

fn is_isometry(g: &IntMatrix, t: &IntMatrix) -> bool {
    t.rows() == g.rows() && t.cols() == g.cols() && t.transpose().mul(g).and_then(|x| x.mul(t)).is_ok_and(|x| &x == g)
}

/// Incremental row echelon form over `Z` used for independence tests.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = r[*p].clone();
            let b = v[*p].clone();
            for k in 0..v.len() {
                v[k] = &a * &v[k] - &b * &r[k];
            }
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() {
                for x in v.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was.
    fn push(&mut self, v: &[i64]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

fn saturated(rows: &[Vec<i64>]) -> bool {
    let m = BigMatrix::from_fn(rows.len(), rows[0].len(), |i, j| BigInt::from(rows[i][j]));
    let (d, _, _) = snf(&m);
    (0..rows.len()).all(|i| d[(i, i)] == BigInt::from(1) || d[(i, i)] == BigInt::from(-1))
}

/// Precomputed data for the source side of an isometry search, reusable
/// against many targets.
#[derive(Clone, Debug)]
pub struct IsometrySource {
    gram: IntMatrix,
    t: Option<IntMatrix>,
    /// `(offset, length, norm)` of each orbit block inside `src`
    blocks: Vec<(usize, usize, i64)>,
    src_gram: Vec<Vec<i64>>,
    /// number of vectors (both signs) of each norm used by the blocks
    counts: BTreeMap<i64, usize>,
    /// per block, how the short vectors of the counted norms pair with the
    /// block's first vector; `None` when there are too many to tabulate
    profiles: Option<Vec<Profile>>,
    /// `adj(S)` and `det(S)` for the matrix `S` whose columns are `src`
    adj: BigMatrix,
    det: BigInt,
}

impl IsometrySource {
    pub fn new(lattice: &ZLattice, t: Option<&IntMatrix>) -> Result<Self> {
        let g = lattice.gram().clone();
        let n = g.rows();
        if let Some(t) = t {
            if !is_isometry(&g, t) {
                return Err(Error::InvariantViolation("T is not an isometry of the lattice".into()));
            }
        }
        let enumerator = Enumerator::new(&g)?;
        let (_, reduced) = lll_reduce(&g)?;
        let bound = (0..n).map(|i| reduced[(i, i)]).max().unwrap_or(0);
        let vecs = enumerator.vectors_up_to(bound)?;
        let mut counts_all: BTreeMap<i64, usize> = BTreeMap::new();
        for (nm, _) in &vecs {
            *counts_all.entry(*nm).or_default() += 1;
        }

        // Candidates are taken by norm, then by how many already chosen
        // vectors they meet non-orthogonally, so that later levels are
        // pinned down by earlier ones. A basis is preferred, but a
        // finite-index set of shorter vectors wins: images of long vectors
        // are expensive to enumerate, and non-integral assignments are
        // rejected when the isometry is assembled.
        let pool: Vec<&(i64, Vec<i64>)> = vecs.iter().filter(|(_, v)| first_nonzero_positive(v)).collect();
        let pool_g: Vec<Vec<i64>> = pool.iter().map(|(_, v)| mat_vec(&g, v)).collect();
        let mut options = Vec::new();
        for require_saturation in [true, false] {
            let mut ech = Echelon::default();
            let mut src: Vec<Vec<i64>> = Vec::new();
            let mut blocks = Vec::new();
            let mut rejected = vec![false; pool.len()];
            while src.len() < n {
                let mut order: Vec<usize> = (0..pool.len()).filter(|&i| !rejected[i]).collect();
                let score = |i: usize| src.iter().filter(|s| dot(s, &pool_g[i]) != 0).count();
                order.sort_by_key(|&i| (pool[i].0, std::cmp::Reverse(score(i)), i));
                let mut progressed = false;
                for i in order {
                    let (nm, v) = pool[i];
                    let mut trial = ech.clone();
                    let mut block = Vec::new();
                    let mut cur = v.clone();
                    loop {
                        if !trial.push(&cur) {
                            break;
                        }
                        block.push(cur.clone());
                        match t {
                            Some(t) => cur = mat_vec(t, &cur),
                            None => break,
                        }
                    }
                    rejected[i] = true;
                    if block.is_empty() {
                        continue;
                    }
                    let mut rows = src.clone();
                    rows.extend(block.iter().cloned());
                    if require_saturation && !saturated(&rows) {
                        continue;
                    }
                    blocks.push((src.len(), block.len(), *nm));
                    src = rows;
                    ech = trial;
                    progressed = true;
                    break;
                }
                if !progressed {
                    break;
                }
            }
            if src.len() == n {
                let longest = blocks.iter().map(|b: &(usize, usize, i64)| b.2).max().unwrap_or(0);
                options.push(((longest, !require_saturation), src, blocks));
            }
        }
        let (src, blocks) = options
            .into_iter()
            .min_by_key(|o| o.0)
            .map(|o| (o.1, o.2))
            .ok_or_else(|| Error::InvariantViolation("short vectors do not span".into()))?;
        let src_gram = src.iter().map(|a| src.iter().map(|b| lattice.inner(a, b)).collect()).collect();
        let counts: BTreeMap<i64, usize> = blocks.iter().map(|&(_, _, nm)| (nm, counts_all[&nm])).collect();
        let pool: Vec<&Vec<i64>> = vecs.iter().filter(|(nm, _)| counts.contains_key(nm)).map(|(_, v)| v).collect();
        let profiles = (pool.len() <= PROFILE_LIMIT).then(|| {
            let pool: Vec<(i64, &Vec<i64>)> = pool.iter().map(|v| (lattice.inner(v, v), *v)).collect();
            blocks.iter().map(|&(off, _, _)| profile(&mat_vec(&g, &src[off]), &pool)).collect()
        });
        let s = BigMatrix::from_fn(n, n, |i, j| BigInt::from(src[j][i]));
        let (adj, det) = adjugate(&s);
        Ok(IsometrySource { gram: g, t: t.cloned(), blocks, src_gram, counts, profiles, adj, det })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// First isometry `f` with `fᵀ G₂ f = G₁` (and `f T₁ = T₂ f`), if any.
    pub fn find(&self, target: &ZLattice, t2: Option<&IntMatrix>) -> Result<Option<IntMatrix>> {
        let mut found = None;
        self.search(target, t2, &mut |f| {
            found = Some(f);
            false
        })?;
        Ok(found)
    }

    /// Calls `visit` on every isometry until it returns `false`.
    pub fn search(
        &self,
        target: &ZLattice,
        t2: Option<&IntMatrix>,
        visit: &mut dyn FnMut(IntMatrix) -> bool,
    ) -> Result<()> {
        let n = self.rank();
        if target.rank() != n {
            return Err(Error::RankMismatch(n, target.rank()));
        }
        let g2 = target.gram();
        let enumerator = Enumerator::new(g2)?;
        if self.t.is_some() != t2.is_some() {
            return Err(Error::InvalidArgument("equivariance needs a symmetry on both sides".into()));
        }
        if let Some(t2) = t2 {
            if !is_isometry(g2, t2) {
                return Err(Error::InvariantViolation("T is not an isometry of the target".into()));
            }
        }
        if n == 0 {
            visit(IntMatrix::zeros(0, 0));
            return Ok(());
        }
        if target.det() != ZLattice::new(self.gram.clone())?.det() {
            return Ok(());
        }
        let max_norm = *self.counts.keys().last().unwrap();
        let vecs = enumerator.vectors_up_to(max_norm)?;
        let max_block = self.blocks.iter().map(|b| b.1).max().unwrap_or(1);
        let mut by_norm: BTreeMap<i64, Vec<Cand>> = BTreeMap::new();
        let pool: Vec<(i64, &Vec<i64>)> =
            vecs.iter().filter(|(nm, _)| self.counts.contains_key(nm)).map(|(nm, v)| (*nm, v)).collect();
        for (nm, w) in vecs.iter().cloned() {
            if !self.counts.contains_key(&nm) {
                continue;
            }
            let mut orbit = vec![w];
            while orbit.len() < max_block {
                let next = mat_vec(t2.unwrap(), orbit.last().unwrap());
                orbit.push(next);
            }
            let g_orbit: Vec<Vec<i64>> = orbit.iter().map(|x| mat_vec(g2, x)).collect();
            let profile = self.profiles.as_ref().map(|_| profile(&g_orbit[0], &pool));
            by_norm.entry(nm).or_default().push(Cand { orbit, g_orbit, profile });
        }
        for (nm, c) in &self.counts {
            if by_norm.get(nm).map_or(0, |v| v.len()) != *c {
                return Ok(());
            }
        }
        // domains: per block, the candidates respecting the block's own Gram
        let domains: Vec<Vec<&Cand>> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, &(off, len, nm))| {
                by_norm[&nm]
                    .iter()
                    .filter(|c| match (&self.profiles, &c.profile) {
                        (Some(p), Some(q)) => &p[k] == q,
                        _ => true,
                    })
                    .filter(|c| {
                        (0..len).all(|a| {
                            (a + 1..len).all(|b| dot(&c.orbit[a], &c.g_orbit[b]) == self.src_gram[off + a][off + b])
                        })
                    })
                    .collect()
            })
            .collect();
        let mut state = SearchState { chosen: vec![None; self.blocks.len()], stop: false };
        self.rec(domains, g2, t2, &mut state, visit)
    }

    /// Forward-checking backtrack: assign the open block with the fewest
    /// remaining candidates, then prune every other open block's domain
    /// against the new assignment.
    fn rec<'a>(
        &self,
        domains: Vec<Vec<&'a Cand>>,
        g2: &IntMatrix,
        t2: Option<&IntMatrix>,
        state: &mut SearchState<'a>,
        visit: &mut dyn FnMut(IntMatrix) -> bool,
    ) -> Result<()> {
        let open = (0..self.blocks.len()).filter(|&k| state.chosen[k].is_none()).min_by_key(|&k| (domains[k].len(), k));
        let Some(level) = open else {
            let chosen: Vec<&Cand> = state.chosen.iter().map(|c| c.unwrap()).collect();
            if let Some(f) = self.assemble(&chosen, g2, t2)? {
                if !visit(f) {
                    state.stop = true;
                }
            }
            return Ok(());
        };
        let (off, len, _) = self.blocks[level];
        for &c in &domains[level] {
            let mut next = Vec::with_capacity(domains.len());
            let mut dead = false;
            for (k, dom) in domains.iter().enumerate() {
                if k == level || state.chosen[k].is_some() || dead {
                    next.push(Vec::new());
                    continue;
                }
                let (koff, klen, _) = self.blocks[k];
                let kept: Vec<&Cand> = dom
                    .iter()
                    .copied()
                    .filter(|d| {
                        (0..klen).all(|b| {
                            (0..len).all(|a| dot(&d.orbit[b], &c.g_orbit[a]) == self.src_gram[koff + b][off + a])
                        })
                    })
                    .collect();
                dead = kept.is_empty();
                next.push(kept);
            }
            if dead {
                continue;
            }
            state.chosen[level] = Some(c);
            self.rec(next, g2, t2, state, visit)?;
            state.chosen[level] = None;
            if state.stop {
                break;
            }
        }
        Ok(())
    }

    fn assemble(&self, chosen: &[&Cand], g2: &IntMatrix, t2: Option<&IntMatrix>) -> Result<Option<IntMatrix>> {
        let n = self.rank();
        // columns of W are the images of src, in order
        let mut w = vec![vec![0i64; n]; n];
        for (k, c) in chosen.iter().enumerate() {
            let (off, len, _) = self.blocks[k];
            for a in 0..len {
                for i in 0..n {
                    w[i][off + a] = c.orbit[a][i];
                }
            }
        }
        let mut f = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for k in 0..n {
                    if w[i][k] != 0 {
                        s += &self.adj[(k, j)] * w[i][k];
                    }
                }
                let (q, r) = s.div_rem(&self.det);
                if !r.is_zero() {
                    return Ok(None);
                }
                f[(i, j)] = q.to_i64().ok_or(Error::Overflow("isometry entry"))?;
            }
        }
        if !is_isometry_between(&self.gram, g2, &f) {
            return Ok(None);
        }
        if let (Some(t1), Some(t2)) = (&self.t, t2) {
            if f.mul(t1)? != t2.mul(&f)? {
                return Ok(None);
            }
        }
        Ok(Some(f))
    }
}

struct Cand {
    orbit: Vec<Vec<i64>>,
    g_orbit: Vec<Vec<i64>>,
    profile: Option<Profile>,
}

/// Multiset of `(norm, inner product)` over a pool of short vectors.
type Profile = Vec<((i64, i64), usize)>;

const PROFILE_LIMIT: usize = 5000;

fn profile(gv: &[i64], pool: &[(i64, &Vec<i64>)]) -> Profile {
    let mut m: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (nm, w) in pool {
        *m.entry((*nm, dot(w, gv))).or_default() += 1;
    }
    m.into_iter().collect()
}

struct SearchState<'a> {
    chosen: Vec<Option<&'a Cand>>,
    stop: bool,
}

fn is_isometry_between(g1: &IntMatrix, g2: &IntMatrix, f: &IntMatrix) -> bool {
    f.transpose().mul(g2).and_then(|x| x.mul(f)).is_ok_and(|x| &x == g1)
}

/// `(adj(S), det(S))` with `S · adj(S) = det(S) · I`.
fn adjugate(s: &BigMatrix) -> (BigMatrix, BigInt) {
    let n = s.rows();
    let det = crate::normal_form::det(s).expect("square");
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let x = if j < n { s[(i, j)].clone() } else { BigInt::from((j - n == i) as i64) };
                    BigRational::from_integer(x)
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("nonsingular");
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
    let d = BigRational::from_integer(det.clone());
    let adj = BigMatrix::from_fn(n, n, |i, j| (&a[i][n + j] * &d).to_integer());
    (adj, det)
}

/// Some isometry `f` from `L1` onto `L2`: `fᵀ G₂ f = G₁`, and `f T₁ = T₂ f`
/// when `equivariance = Some((T₁, T₂))`. `None` only after exhausting the
/// search.
pub fn isometry_definite(
    l1: &ZLattice,
    l2: &ZLattice,
    equivariance: Option<(&IntMatrix, &IntMatrix)>,
) -> Result<Option<IntMatrix>> {
    if l1.rank() != l2.rank() {
        return Err(Error::RankMismatch(l1.rank(), l2.rank()));
    }
    let src = IsometrySource::new(l1, equivariance.map(|e| e.0))?;
    src.find(l2, equivariance.map(|e| e.1))
}

/// All isometries of `L` onto itself; errors once more than `cap` exist.
pub fn automorphism_group(l: &ZLattice, cap: usize) -> Result<Vec<IntMatrix>> {
    let src = IsometrySource::new(l, None)?;
    let mut out = Vec::new();
    let mut exceeded = false;
    src.search(l, None, &mut |f| {
        out.push(f);
        if out.len() > cap {
            exceeded = true;
            return false;
        }
        true
    })?;
    if exceeded {
        return Err(Error::CapExceeded(cap));
    }
    Ok(out)
}
