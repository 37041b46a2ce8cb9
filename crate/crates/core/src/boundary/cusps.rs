//! Cusps: primitive isotropic vectors, bucketed by the isometry class of
//! `v^⊥/Z[ζ]v`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{from_pairs, mul, to_pairs, Pair};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::eisenstein::EisensteinInt;
use crate::elattice::{is_e_isometry, isotropic_search, vectors_of_norm, ELattice, ESource};
use crate::error::{Error, Result};
use crate::matrix::EMatrix;
use crate::report::{Status, WitnessReport};
use crate::zlattice::shortvec::Enumerator;

type E = EisensteinInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassLabel {
    #[serde(rename = "D4^3")]
    D4Cubed,
    #[serde(rename = "A5^2")]
    A5Squared,
    #[serde(rename = "unassigned")]
    Unassigned,
}

/// One bucket of cusps with a common invariant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspClass {
    pub label: ClassLabel,
    pub invariant_hgram: EMatrix,
    pub representatives: Vec<Vec<E>>,
}

impl CuspClass {
    pub fn invariant(&self) -> Result<ELattice> {
        ELattice::new(self.invariant_hgram.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspFile {
    pub classes: Vec<CuspClass>,
}

pub struct CuspClassification {
    pub classes: Vec<CuspClass>,
    pub report: WitnessReport,
}

const MAX_TRIFLECTIONS: usize = 64;

/// Automorphisms of `L`: unit rescalings of orthogonally split coordinates,
/// signed reversals of leading coordinate chains, and triflections in the
/// sparsest norm-3 vectors of height 1. Each is kept only if it passes the exact
/// isometry check.
pub fn lattice_symmetries(l: &ELattice) -> Vec<EMatrix> {
    let n = l.rank();
    let h = l.hgram();
    let mut out = Vec::new();
    for i in 0..n {
        for u in [E::zeta(), -E::one()] {
            let g = EMatrix::from_fn(n, n, |a, b| {
                if a != b {
                    E::zero()
                } else if a == i {
                    u.clone()
                } else {
                    E::one()
                }
            });
            if is_e_isometry(h, h, &g) {
                out.push(g);
            }
        }
    }
    for k in 2..=n {
        // eᵢ ↦ (−1)ⁱ e_{k−1−i} on the first k coordinates
        let g = EMatrix::from_fn(n, n, |a, b| {
            if b >= k {
                E::from_int((a == b) as i64)
            } else if a == k - 1 - b {
                E::from_int(if b % 2 == 0 { 1 } else { -1 })
            } else {
                E::zero()
            }
        });
        if is_e_isometry(h, h, &g) {
            out.push(g);
        }
    }
    // triflections x ↦ x − (1 − ζ)·h(x, s)/3·s in the shortest norm-3 vectors
    let mut roots = vectors_of_norm(l, 1, 3, true).unwrap_or_default();
    roots.sort_by_key(|s| s.iter().filter(|x| !x.is_zero()).count());
    let three = BigInt::from(3);
    for s in roots.iter().take(MAX_TRIFLECTIONS) {
        let cols: Option<Vec<Vec<E>>> = (0..n)
            .map(|j| {
                let c = ((E::one() - E::zeta()) * l.h(&unit(n, j), s)).div_int_exact(&three)?;
                Some((0..n).map(|a| E::from_int((a == j) as i64) - c.clone() * s[a].clone()).collect())
            })
            .collect();
        let Some(cols) = cols else { continue };
        let g = EMatrix::from_fn(n, n, |a, b| cols[b][a].clone());
        if is_e_isometry(h, h, &g) {
            out.push(g);
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<E> {
    (0..n).map(|j| E::from_int((i == j) as i64)).collect()
}

fn canonical_pairs(v: &mut [Pair]) {
    if let Some(&x) = v.iter().find(|&&x| x != (0, 0)) {
        let (u, _) = E::from(x).canonical_with_unit();
        let u = u.to_i64_pair().unwrap();
        for y in v.iter_mut() {
            *y = mul(*y, u);
        }
    }
}

/// `g − I` as its nonzero entries `(row, col, value)`.
type Sparse = Vec<(usize, usize, Pair)>;

fn sparse_delta(g: &EMatrix) -> Result<Sparse> {
    let mut out = Vec::new();
    for (a, row) in g.iter_rows().enumerate() {
        for (b, x) in row.iter().enumerate() {
            let mut p = x.to_i64_pair().ok_or(Error::Overflow("symmetry entry"))?;
            if a == b {
                p.0 -= 1;
            }
            if p != (0, 0) {
                out.push((a, b, p));
            }
        }
    }
    Ok(out)
}

fn apply(d: &Sparse, v: &[Pair]) -> Vec<Pair> {
    let mut w = v.to_vec();
    for &(a, b, p) in d {
        let t = mul(p, v[b]);
        w[a] = (w[a].0 + t.0, w[a].1 + t.1);
    }
    w
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Orbit index of every vector under the group generated by `gens`; each
/// orbit is named by its first member.
fn orbits(vecs: &[Vec<Pair>], gens: &[EMatrix]) -> Result<Vec<usize>> {
    let index: HashMap<&Vec<Pair>, usize> = vecs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let gens: Vec<Sparse> = gens.iter().map(sparse_delta).collect::<Result<_>>()?;
    let edges: Vec<Vec<usize>> = vecs
        .par_iter()
        .map(|v| {
            gens.iter()
                .filter_map(|d| {
                    let mut w = apply(d, v);
                    canonical_pairs(&mut w);
                    // images outside the search range link nothing
                    index.get(&w).copied()
                })
                .collect()
        })
        .collect();
    let mut parent: Vec<usize> = (0..vecs.len()).collect();
    for (i, js) in edges.iter().enumerate() {
        for &j in js {
            let (a, b) = (find_root(&mut parent, i), find_root(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    Ok((0..vecs.len()).map(|i| find_root(&mut parent, i)).collect())
}

/// Cheap isometry invariants of a positive definite Hermitian lattice:
/// its determinant and the number of underlying vectors up to the smallest
/// diagonal Gram entry.
fn fingerprint(q: &ELattice) -> Result<(E, usize)> {
    let u = q.underlying()?;
    let g = u.base().gram();
    let m = (0..g.rows()).map(|i| g[(i, i)]).min().unwrap_or(0);
    let count = Enumerator::new(g)?.vectors_up_to(m)?.len();
    Ok((q.det(), count))
}

struct Bucket {
    source: ESource,
    quotient: ELattice,
    fingerprint: (E, usize),
    members: Vec<usize>,
}

/// Isotropic vectors of `l` within `height`, bucketed by the isometry class
/// of their quotient lattices. Vectors related by a lattice symmetry share
/// a bucket without a separate search.
pub fn classify_cusps(l: &ELattice, height: u64) -> Result<CuspClassification> {
    let bound = json!({"height": height});
    let vecs = match isotropic_search(l, height) {
        Ok(v) => v,
        Err(Error::DefiniteInput) => {
            let r = WitnessReport::new(
                "cusps",
                Status::Inconclusive,
                json!({"reason": "definite lattice", "classes": []}),
                bound,
            );
            return Ok(CuspClassification { classes: Vec::new(), report: r });
        }
        Err(e) => return Err(e),
    };
    let pairs: Vec<Vec<Pair>> =
        vecs.iter().map(|v| to_pairs(v).ok_or(Error::Overflow("isotropic vector"))).collect::<Result<_>>()?;
    let gens = lattice_symmetries(l);
    let orbit_of = orbits(&pairs, &gens)?;
    let reps: Vec<usize> = (0..vecs.len()).filter(|&i| orbit_of[i] == i).collect();

    let quotients: Vec<(ELattice, (E, usize))> = reps
        .par_iter()
        .map(|&i| {
            let q = l
                .complement_quotient(&vecs[i])?
                .quotient
                .ok_or(Error::InvariantViolation("isotropic vector".into()))?
                .0;
            if !q.invariants().positive_definite || q.rank() + 2 != l.rank() {
                return Err(Error::InvariantViolation("cusp quotient is not definite of corank 2".into()));
            }
            let f = fingerprint(&q)?;
            Ok((q, f))
        })
        .collect::<Result<_>>()?;

    let mut buckets: Vec<Bucket> = Vec::new();
    let mut bucket_of_rep: Vec<Option<usize>> = vec![None; reps.len()];
    const CHUNK: usize = 256;
    for start in (0..reps.len()).step_by(CHUNK) {
        let end = (start + CHUNK).min(reps.len());
        let known = buckets.len();
        let found: Vec<Option<usize>> =
            (start..end).into_par_iter().map(|k| match_bucket(&buckets, &quotients[k])).collect::<Result<_>>()?;
        for (k, b) in (start..end).zip(found) {
            let b = match b {
                Some(b) => Some(b),
                // only buckets opened within this chunk are new to it
                None => match_bucket(&buckets[known..], &quotients[k])?.map(|b| b + known),
            };
            match b {
                Some(b) => bucket_of_rep[k] = Some(b),
                None => {
                    let (q, f) = &quotients[k];
                    buckets.push(Bucket {
                        source: ESource::new(q)?,
                        quotient: q.clone(),
                        fingerprint: f.clone(),
                        members: Vec::new(),
                    });
                    bucket_of_rep[k] = Some(buckets.len() - 1);
                }
            }
        }
    }
    let rep_pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    for (i, &o) in orbit_of.iter().enumerate() {
        let b = bucket_of_rep[rep_pos[&o]].unwrap();
        buckets[b].members.push(i);
    }

    // exhaustive searches between the bucket representatives
    let mut cross = Vec::new();
    for i in 0..buckets.len() {
        for j in i + 1..buckets.len() {
            let iso = buckets[i].source.find(&buckets[j].quotient)?;
            cross.push(json!({"classes": [i, j], "isometric": iso.is_some()}));
        }
    }
    let separated = cross.iter().all(|c| c["isometric"] == false);
    let status = match buckets.len() {
        2 if separated => Status::Verified,
        0 | 1 => Status::Inconclusive,
        _ => Status::Refuted,
    };
    let class_json: Vec<Value> = buckets
        .iter()
        .map(|b| {
            json!({
                "invariant_hgram": b.quotient.hgram(),
                "members": b.members.len(),
                "first_vector": vecs[b.members[0]],
                "det": b.fingerprint.0,
                "short_vectors": b.fingerprint.1,
            })
        })
        .collect();
    let w = json!({
        "isotropic_vectors": vecs.len(),
        "symmetry_generators": gens.len(),
        "orbits": reps.len(),
        "classes": class_json,
        "cross_class": cross,
    });
    let mut bound = bound;
    bound["isometry_search"] = json!("exhaustive");
    let classes = buckets
        .iter()
        .map(|b| CuspClass {
            label: ClassLabel::Unassigned,
            invariant_hgram: b.quotient.hgram().clone(),
            representatives: b.members.iter().map(|&i| from_pairs(&pairs[i])).collect(),
        })
        .collect();
    Ok(CuspClassification { classes, report: WitnessReport::new("cusps", status, w, bound) })
}

fn match_bucket(buckets: &[Bucket], (q, f): &(ELattice, (E, usize))) -> Result<Option<usize>> {
    for (b, bucket) in buckets.iter().enumerate() {
        if &bucket.fingerprint != f {
            continue;
        }
        if bucket.source.find(q)?.is_some() {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// `|h(v, v)|` is zero and the quotient invariant is positive definite, for
/// every representative.
pub fn recheck_class(l: &ELattice, class: &CuspClass) -> Result<bool> {
    let inv = class.invariant()?;
    if !inv.invariants().positive_definite {
        return Ok(false);
    }
    Ok(class.representatives.iter().all(|v| l.h(v, v) == E::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_lattice_has_one_class() {
        let l = ELattice::hyperbolic().direct_sum(&ELattice::lambda(1).unwrap());
        let c = classify_cusps(&l, 1).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.classes[0].invariant_hgram.to_rows(), vec![vec![E::from_int(3)]]);
        assert_eq!(c.report.status, Status::Inconclusive);
        let total: usize = c.classes.iter().map(|k| k.representatives.len()).sum();
        assert_eq!(total, isotropic_search(&l, 1).unwrap().len());
    }

    #[test]
    fn definite_lattice_has_no_cusps() {
        let c = classify_cusps(&ELattice::lambda(4).unwrap(), 2).unwrap();
        assert!(c.classes.is_empty());
        assert_eq!(c.report.status, Status::Inconclusive);
    }

    #[test]
    fn symmetries_of_big_lambda() {
        let l = ELattice::lambda(10).unwrap().direct_sum(&ELattice::lambda(1).unwrap());
        let gens = lattice_symmetries(&l);
        // ζ and −1 on the split-off coordinate, the chain reversal, and triflections
        assert!(gens.len() > 3);
        for g in &gens {
            assert!(is_e_isometry(l.hgram(), l.hgram(), g));
        }
    }
}
