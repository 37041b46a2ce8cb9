//! Hyperplanes `r^⊥` whose lattice contains a copy of `Λ₁₀`, and their
//! position relative to the cusps and to each other.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cusps::{ClassLabel, CuspClass};
use super::{mul, to_pairs, Pair};
use crate::constructions::big_lambda;
use num_traits::{One, Zero};

use crate::eisenstein::EisensteinInt;
use crate::elattice::{vectors_of_norm, ELattice};
use crate::error::{Error, Result};
use crate::matrix::EMatrix;
use crate::normal_form::{left_kernel, rank};
use crate::report::{Status, WitnessReport};

type E = EisensteinInt;

/// A normal `r` with `h(r, r) = 3` and ten vectors of `r^⊥` with the Gram
/// matrix of `Λ₁₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneRecord {
    pub normal: Vec<E>,
    pub basis: EMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneFile {
    pub records: Vec<HyperplaneRecord>,
}

/// Re-check of a record by matrix arithmetic alone.
pub fn check_record(l: &ELattice, r: &HyperplaneRecord) -> bool {
    let Ok(l10) = ELattice::lambda(10) else { return false };
    if r.normal.len() != l.rank() || r.basis.rows() != 10 || r.basis.cols() != l.rank() {
        return false;
    }
    if l.h(&r.normal, &r.normal) != E::from_int(3) {
        return false;
    }
    if r.basis.iter_rows().any(|b| !l.h(b, &r.normal).is_zero()) {
        return false;
    }
    let g = r.basis.mul(l.hgram()).and_then(|x| x.mul(&r.basis.conj_transpose()));
    g.is_ok_and(|g| &g == l10.hgram())
}

/// The order-3 complex reflection `x ↦ x − (1 − ζ)·h(x, s)/3·s` in a
/// norm-3 vector `s`; it preserves `h` and the lattice.
fn triflection(l: &ELattice, s: &[E], x: &[E]) -> Result<Vec<E>> {
    let c = (E::one() - E::zeta()) * l.h(x, s);
    let c = c
        .div_int_exact(&BigInt::from(3))
        .ok_or_else(|| Error::InvariantViolation("triflection is not integral".into()))?;
    Ok(x.iter().zip(s).map(|(xi, si)| xi - &(&c * si)).collect())
}

fn unit_vector(n: usize, i: usize) -> Vec<E> {
    (0..n).map(|j| E::from_int((i == j) as i64)).collect()
}

fn canonical_vector(v: &[E]) -> Vec<E> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) => {
            let (u, _) = x.canonical_with_unit();
            v.iter().map(|y| &u * y).collect()
        }
        None => v.to_vec(),
    }
}

/// Records for `Λ = Λ₁₀ ⊥ Λ₁`: the split-off coordinate with the first ten
/// basis vectors, then its images under triflections in the norm-3 vectors
/// of height at most `height`, up to `max_count` distinct normals.
pub fn find_hyperplanes(height: u64, max_count: usize) -> Result<(Vec<HyperplaneRecord>, WitnessReport)> {
    let l = big_lambda();
    let n = l.rank();
    let taut = HyperplaneRecord {
        normal: unit_vector(n, n - 1),
        basis: EMatrix::from_rows((0..n - 1).map(|i| unit_vector(n, i)).collect())?,
    };
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut reflections = Vec::new();
    if max_count > 0 && check_record(&l, &taut) {
        seen.insert(canonical_vector(&taut.normal));
        records.push(taut.clone());
    }
    let norm3 = if height == 0 { Vec::new() } else { vectors_of_norm(&l, height, 3, true)? };
    let mut scanned = 0usize;
    for s in &norm3 {
        if records.len() >= max_count {
            break;
        }
        scanned += 1;
        let normal = canonical_vector(&triflection(&l, s, &taut.normal)?);
        if seen.contains(&normal) {
            continue;
        }
        let rows = taut.basis.iter_rows().map(|b| triflection(&l, s, b)).collect::<Result<Vec<_>>>()?;
        let rec = HyperplaneRecord { normal, basis: EMatrix::from_rows(rows)? };
        if check_record(&l, &rec) {
            seen.insert(rec.normal.clone());
            reflections.push(s.clone());
            records.push(rec);
        }
    }
    let status = if records.len() >= 2 { Status::Verified } else { Status::Inconclusive };
    let w = json!({
        "records": records.len(),
        "normals": records.iter().map(|r| &r.normal).collect::<Vec<_>>(),
        "triflection_vectors": reflections,
        "norm3_vectors_in_range": norm3.len(),
        "norm3_vectors_scanned": scanned,
    });
    let report = WitnessReport::new("hyperplanes", status, w, json!({"height": height, "max": max_count}));
    Ok((records, report))
}

/// `H r̄` for each normal, as small pairs: `h(v, r) = Σ vᵢ (H r̄)ᵢ`.
fn pairing_columns(l: &ELattice, records: &[HyperplaneRecord]) -> Result<Vec<Vec<Pair>>> {
    records.iter().map(|r| to_pairs(&l.pairing_column(&r.normal)).ok_or(Error::Overflow("pairing column"))).collect()
}

fn pairs_dot(v: &[Pair], col: &[Pair]) -> Pair {
    v.iter().zip(col).fold((0, 0), |acc, (&a, &b)| {
        let t = mul(a, b);
        (acc.0 + t.0, acc.1 + t.1)
    })
}

fn incident(v: &[Pair], cols: &[Vec<Pair>]) -> Vec<usize> {
    (0..cols.len()).filter(|&j| pairs_dot(v, &cols[j]) == (0, 0)).collect()
}

fn class_pairs(class: &CuspClass) -> Result<Vec<Vec<Pair>>> {
    class.representatives.iter().map(|v| to_pairs(v).ok_or(Error::Overflow("cusp vector"))).collect()
}

/// Labels the two classes by incidence: the one with no representative on
/// any recorded hyperplane is `D4^3`, the other `A5^2`.
pub fn label_classes(l: &ELattice, classes: &mut [CuspClass], records: &[HyperplaneRecord]) -> Result<()> {
    if classes.len() != 2 {
        return Err(Error::UnlabeledClasses);
    }
    let cols = pairing_columns(l, records)?;
    let touches: Vec<bool> = classes
        .iter()
        .map(|c| Ok(class_pairs(c)?.iter().any(|v| !incident(v, &cols).is_empty())))
        .collect::<Result<_>>()?;
    match (touches[0], touches[1]) {
        (false, true) => {
            classes[0].label = ClassLabel::D4Cubed;
            classes[1].label = ClassLabel::A5Squared;
        }
        (true, false) => {
            classes[0].label = ClassLabel::A5Squared;
            classes[1].label = ClassLabel::D4Cubed;
        }
        _ => return Err(Error::UnlabeledClasses),
    }
    Ok(())
}

const MAX_COUNTEREXAMPLES: usize = 8;

/// (ii) `D4^3` cusps lie on no recorded hyperplane; (iii) the recorded
/// hyperplanes through an `A5^2` cusp cut out a subspace of codimension 2.
pub fn check_incidence(l: &ELattice, classes: &[CuspClass], records: &[HyperplaneRecord]) -> Result<WitnessReport> {
    if classes.iter().any(|c| c.label == ClassLabel::Unassigned) || classes.is_empty() {
        return Err(Error::UnlabeledClasses);
    }
    if records.is_empty() {
        return Err(Error::InvalidArgument("no hyperplane records".into()));
    }
    let n = l.rank();
    let cols = pairing_columns(l, records)?;
    let mut d4_checked = 0usize;
    let mut d4_bad = Vec::new();
    let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rank_cache: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut a5_single = 0usize;
    let mut a5_none = 0usize;
    let mut a5_example: Option<Value> = None;
    let mut a5_bad = Vec::new();
    for class in classes {
        for (v, orig) in class_pairs(class)?.iter().zip(&class.representatives) {
            let inc = incident(v, &cols);
            match class.label {
                ClassLabel::D4Cubed => {
                    d4_checked += 1;
                    if !inc.is_empty() && d4_bad.len() < MAX_COUNTEREXAMPLES {
                        d4_bad.push(json!({"cusp": orig, "normal": records[inc[0]].normal}));
                    }
                }
                ClassLabel::A5Squared => match inc.len() {
                    0 => a5_none += 1,
                    1 => a5_single += 1,
                    _ => {
                        let r = *rank_cache.entry(inc.clone()).or_insert_with(|| {
                            let m =
                                EMatrix::from_rows(inc.iter().map(|&j| records[j].normal.clone()).collect()).unwrap();
                            rank(&m)
                        });
                        let dim = n - r;
                        *dims.entry(dim).or_default() += 1;
                        if dim != n - 2 && a5_bad.len() < MAX_COUNTEREXAMPLES {
                            a5_bad.push(json!({"cusp": orig, "incident_records": inc, "kernel_dimension": dim}));
                        }
                        if a5_example.is_none() && dim == n - 2 {
                            a5_example = Some(json!({
                                "cusp": orig,
                                "incident_records": inc,
                                "normals": inc.iter().map(|&j| &records[j].normal).collect::<Vec<_>>(),
                                "kernel_dimension": dim,
                            }));
                        }
                    }
                },
                ClassLabel::Unassigned => unreachable!(),
            }
        }
    }
    let d4_count =
        classes.iter().filter(|c| c.label == ClassLabel::D4Cubed).map(|c| c.representatives.len()).sum::<usize>();
    let ii = if d4_bad.is_empty() && d4_count > 0 {
        Status::Verified
    } else if d4_bad.is_empty() {
        Status::Inconclusive
    } else {
        Status::Refuted
    };
    let with_two: usize = dims.values().sum();
    // a kernel of dimension n − 1 cannot occur with two independent normals
    let iii = if !a5_bad.is_empty() {
        Status::Refuted
    } else if with_two == 0 {
        Status::Inconclusive
    } else {
        Status::Verified
    };
    let w = json!({
        "ii": {
            "status": ii,
            "cusps_checked": d4_checked,
            "normals": records.len(),
            "counterexamples": d4_bad,
        },
        "iii": {
            "status": iii,
            "cusps_with_two_or_more": with_two,
            "cusps_with_one": a5_single,
            "cusps_with_none": a5_none,
            "kernel_dimensions": dims.iter().map(|(d, c)| json!({"dimension": d, "cusps": c})).collect::<Vec<_>>(),
            "example": a5_example,
            "counterexamples": a5_bad,
        },
    });
    let bound =
        json!({"normals": records.len(), "cusps": classes.iter().map(|c| c.representatives.len()).sum::<usize>()});
    Ok(WitnessReport::new("incidence", Status::worst([ii, iii]), w, bound))
}

fn intersection_basis(l: &ELattice, normals: &[&Vec<E>]) -> Result<EMatrix> {
    let cols: Vec<Vec<E>> = normals.iter().map(|r| l.pairing_column(r)).collect();
    let m = EMatrix::from_fn(l.rank(), cols.len(), |i, j| cols[j][i].clone());
    Ok(left_kernel(&m))
}

/// (iv) For distinct recorded normals `r₁, r₂`, `h` is positive
/// semidefinite on `{x : h(x, r₁) = h(x, r₂) = 0}`, so the two hyperplanes
/// do not meet inside the ball. The pair of the first record with itself is
/// run as a control and must fail.
pub fn check_disjointness(l: &ELattice, records: &[HyperplaneRecord], max_pairs: usize) -> Result<WitnessReport> {
    if records.len() < 2 {
        return Err(Error::TooFewRecords);
    }
    let canon: Vec<Vec<E>> = records.iter().map(|r| canonical_vector(&r.normal)).collect();
    let mut tested = 0usize;
    let mut failures = Vec::new();
    let mut pairing_norms: BTreeSet<BigInt> = BTreeSet::new();
    'outer: for i in 0..records.len() {
        for j in i + 1..records.len() {
            if tested >= max_pairs {
                break 'outer;
            }
            if canon[i] == canon[j] {
                continue;
            }
            tested += 1;
            let k = intersection_basis(l, &[&records[i].normal, &records[j].normal])?;
            pairing_norms.insert(l.h(&records[i].normal, &records[j].normal).norm());
            let (psd, neg) = l.psd_on(&k)?;
            if !psd && failures.len() < MAX_COUNTEREXAMPLES {
                failures.push(json!({"records": [i, j], "negative_vector": neg}));
            }
        }
    }
    let k = intersection_basis(l, &[&records[0].normal])?;
    let (control_psd, control_neg) = l.psd_on(&k)?;
    let status = if failures.is_empty() && !control_psd { Status::Verified } else { Status::Refuted };
    let w = json!({
        "pairs_tested": tested,
        "failures": failures,
        "pairing_norms": pairing_norms.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "control": {"records": [0, 0], "psd": control_psd, "negative_vector": control_neg},
    });
    Ok(WitnessReport::new("disjointness", status, w, json!({"max_pairs": max_pairs, "records": records.len()})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tautological_record() {
        let (recs, report) = find_hyperplanes(1, 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(report.status, Status::Inconclusive);
        assert!(check_record(&big_lambda(), &recs[0]));
    }

    #[test]
    fn triflection_is_an_isometry() {
        let l = big_lambda();
        let s = vectors_of_norm(&l, 1, 3, true).unwrap();
        let s = s.iter().find(|v| !v[10].is_zero()).unwrap();
        let images: Vec<Vec<E>> = (0..11).map(|i| triflection(&l, s, &unit_vector(11, i)).unwrap()).collect();
        let g = EMatrix::from_rows(images).unwrap();
        let gram = g.mul(l.hgram()).unwrap().mul(&g.conj_transpose()).unwrap();
        assert_eq!(&gram, l.hgram());
        // order three
        let mut x = unit_vector(11, 10);
        for _ in 0..3 {
            x = triflection(&l, s, &x).unwrap();
        }
        assert_eq!(x, unit_vector(11, 10));
    }

    #[test]
    fn records_recheck() {
        let (recs, report) = find_hyperplanes(4, 6).unwrap();
        assert!(recs.len() >= 2, "{}", report.witnesses);
        let l = big_lambda();
        assert!(recs.iter().all(|r| check_record(&l, r)));
        let mut bad = recs[1].clone();
        bad.basis = bad.basis.map(|x| x.clone() * E::from_int(2));
        assert!(!check_record(&l, &bad));
    }

    #[test]
    fn disjointness_control_and_errors() {
        let l = big_lambda();
        let (recs, _) = find_hyperplanes(4, 6).unwrap();
        assert!(matches!(check_disjointness(&l, &recs[..1], 10), Err(Error::TooFewRecords)));
        let r = check_disjointness(&l, &recs, 20).unwrap();
        assert_eq!(r.witnesses["control"]["psd"], false);
    }

    #[test]
    fn incidence_is_unit_invariant() {
        let l = big_lambda();
        let (recs, _) = find_hyperplanes(4, 6).unwrap();
        let v = vec![
            E::one(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
            E::zero(),
        ];
        for r in &recs {
            let base = l.h(&v, &r.normal).is_zero();
            for u in E::units() {
                let uv: Vec<E> = v.iter().map(|x| &u * x).collect();
                let ur: Vec<E> = r.normal.iter().map(|x| &u * x).collect();
                assert_eq!(l.h(&uv, &r.normal).is_zero(), base);
                assert_eq!(l.h(&v, &ur).is_zero(), base);
            }
        }
    }

    #[test]
    fn unlabeled_classes_rejected() {
        let l = big_lambda();
        let (recs, _) = find_hyperplanes(1, 1).unwrap();
        let class =
            CuspClass { label: ClassLabel::Unassigned, invariant_hgram: EMatrix::identity(1), representatives: vec![] };
        assert!(matches!(check_incidence(&l, &[class], &recs), Err(Error::UnlabeledClasses)));
    }
}
