//! One line per acceptance criterion. Each check recomputes its expected
//! values here from first principles where it can, then compares with the
//! library. Criteria listed in `KNOWN_RED` are expected to fail and are
//! asserted to fail, so a change in either direction is noticed.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use eislat::boundary::{
    check_disjointness, check_incidence, classify_cusps, find_hyperplanes, label_classes, recheck_class,
};
use eislat::constructions::{
    arc_intersection, big_lambda, chordal_cubic, claim_arc, claim_one_triple, coxeter_e8, verify_a2_lambda1,
    verify_ambient, verify_arcs, verify_chordal, verify_chordal_form, verify_conjugate_lambda, verify_e8_lambda4,
    verify_lambda10_split, Polynomial,
};
use eislat::normal_form::{hnf, snf};
use eislat::{BigMatrix, ELattice, EMatrix, EisensteinInt, IntMatrix, Status, ZLattice};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRng, TestRunner};
use serde_json::Value;

type E = EisensteinInt;

const KNOWN_RED: &[u32] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// Written to the real stdout so the lines survive the harness's capture.
fn say(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn run(n: u32, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.pass = false;
        o.detail = format!("{}; over the {limit:?} budget", o.detail);
    }
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    say(format!("criterion {n:>2}  {verdict}  {}  ({:.3}s)", o.detail, elapsed.as_secs_f64()));
    o.pass
}

fn theta() -> E {
    E::new(1, 2)
}

/// `xᵀ H ȳ` with every product written out.
fn herm(h: &EMatrix, x: &[E], y: &[E]) -> E {
    let mut s = E::zero();
    for i in 0..x.len() {
        for j in 0..y.len() {
            s = s + x[i].clone() * h[(i, j)].clone() * y[j].conj();
        }
    }
    s
}

/// `gᵀ H₂ ḡ`, the Gram of the columns of `g`.
fn pullback(h2: &EMatrix, g: &EMatrix) -> EMatrix {
    let n = g.cols();
    EMatrix::from_fn(n, n, |a, b| herm(h2, &g.column(a), &g.column(b)))
}

fn from_json<T: serde::de::DeserializeOwned>(v: &Value) -> T {
    serde_json::from_value(v.clone()).unwrap()
}

/// Integer determinant by fraction-free elimination.
fn bareiss(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Λ_k from its defining band: 3 on the diagonal, θ above, −θ below.
fn lambda_oracle(k: usize) -> EMatrix {
    EMatrix::from_fn(k, k, |i, j| match (i as i64) - (j as i64) {
        0 => E::from_int(3),
        -1 => theta(),
        1 => -theta(),
        _ => E::zero(),
    })
}

/// Integral Gram on `(r₁, Tr₁, r₂, Tr₂, …)` generated by the relations
/// `rᵢ·rᵢ = 2`, `rᵢ·rᵢ₊₁ = 0`, `rᵢ·Trᵢ₊₁ = 1`, with `T` an isometry and
/// `1 + T + T² = 0` (so `x·T²y = −x·y − x·Ty` and `Tx·y = x·T²y`).
fn integral_oracle(k: usize) -> IntMatrix {
    let dot = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else {
            0
        }
    };
    let tdot = |i: usize, j: usize| -> i64 {
        if i == j {
            -1
        } else if j == i + 1 {
            1
        } else if i == j + 1 {
            // rᵢ₊₁·Trᵢ = Trᵢ·rᵢ₊₁ = rᵢ·T²rᵢ₊₁
            -dot(j, i) - 1
        } else {
            0
        }
    };
    IntMatrix::from_fn(2 * k, 2 * k, |a, b| {
        let (i, s, j, t) = (a / 2, a % 2, b / 2, b % 2);
        match (s, t) {
            (0, 0) | (1, 1) => dot(i, j),
            (0, 1) => tdot(i, j),
            // Trᵢ·rⱼ = rᵢ·T²rⱼ
            _ => -dot(i, j) - tdot(i, j),
        }
    })
}

fn criterion_1() -> Outcome {
    for k in 1..=10 {
        let l = ELattice::lambda(k).unwrap();
        if l.hgram() != &lambda_oracle(k) {
            return outcome(false, format!("Λ_{k} Hermitian Gram differs from the band"));
        }
        let u = l.underlying().unwrap();
        if u.base().gram() != &integral_oracle(k) {
            return outcome(false, format!("Λ_{k} underlying Gram breaks the integral relations"));
        }
    }
    let d = bareiss(ELattice::lambda(2).unwrap().underlying().unwrap().base().gram());
    outcome(d == BigInt::from(4), format!("Λ_1..Λ_10 relations exact; det ℤ-Gram(Λ_2) = {d}"))
}

fn criterion_2() -> Outcome {
    for k in 1..=10 {
        let h = lambda_oracle(k);
        // diag((−1)ⁱ) pulls conj(H) back to H entrywise
        let ok = (0..k).all(|i| {
            (0..k).all(|j| {
                let s = if (i + j) % 2 == 0 { E::one() } else { -E::one() };
                h[(i, j)].conj() * s == h[(i, j)]
            })
        });
        if !ok {
            return outcome(false, format!("k = {k}"));
        }
    }
    let r = verify_conjugate_lambda(10).unwrap();
    let g: EMatrix = from_json(&r.witnesses["isometry"]);
    let ok = r.status == Status::Verified && pullback(&lambda_oracle(10), &g) == lambda_oracle(10).conj();
    outcome(ok, "conj(Λ_k) ≅ Λ_k via diag((−1)^i), k = 1..10")
}

fn criterion_3() -> Outcome {
    let r = verify_a2_lambda1().unwrap();
    let h: EMatrix = from_json(&r.witnesses["hgram"]);
    outcome(
        r.status == Status::Verified && h.to_rows() == vec![vec![E::from_int(3)]],
        format!("A2 with rotation has hgram {}", r.witnesses["hgram"]),
    )
}

fn criterion_4() -> Outcome {
    let (c, order) = coxeter_e8();
    let id = IntMatrix::identity(8);
    let pow = |e: u32| c.pow(e).unwrap();
    let exact30 = pow(30) == id && [1, 2, 3, 5, 6, 10, 15].iter().all(|&d| pow(d) != id);
    let c10 = pow(10);
    let order3 = c10.pow(3).unwrap() == id && c10 != id;
    let no_fixed = !bareiss(&c10.sub(&id).unwrap()).is_zero();
    let r = verify_e8_lambda4().unwrap();
    let h: EMatrix = from_json(&r.witnesses["hgram"]);
    let g: EMatrix = from_json(&r.witnesses["isometry_to_lambda4"]);
    let t: IntMatrix = from_json(&r.witnesses["t"]);
    let witness = pullback(&lambda_oracle(4), &g) == h && t == c10;
    let ok = exact30 && order == 30 && order3 && no_fixed && r.status == Status::Verified && witness;
    outcome(ok, format!("Coxeter order {order}, c^10 of order 3 without fixed vectors, isometry to Λ_4 re-checked"))
}

fn criterion_5() -> Outcome {
    let at3 = verify_lambda10_split(3).unwrap();
    let (h, r) = if at3.status == Status::Verified { (3, at3) } else { (4, verify_lambda10_split(4).unwrap()) };
    if r.status != Status::Verified {
        return outcome(false, format!("status {} at height {h}", r.status));
    }
    let w = &r.witnesses;
    let (e, f): (Vec<E>, Vec<E>) = (from_json(&w["e"]), from_json(&w["f"]));
    let k: EMatrix = from_json(&w["complement_basis"]);
    let g: EMatrix = from_json(&w["isometry_from_lambda4_sum"]);
    let h10 = lambda_oracle(10);
    let target = EMatrix::block_diag(&[&lambda_oracle(4), &lambda_oracle(4)]);
    let kh = EMatrix::from_fn(8, 8, |a, b| herm(&h10, k.row(a), k.row(b)));
    let orth = k.iter_rows().all(|x| herm(&h10, x, &e).is_zero() && herm(&h10, x, &f).is_zero());
    let ok = herm(&h10, &e, &e).is_zero()
        && herm(&h10, &f, &f).is_zero()
        && herm(&h10, &e, &f) == theta()
        && orth
        && pullback(&kh, &g) == target;
    let note = if h == 3 {
        String::new()
    } else {
        format!(" (inconclusive at height 3, escalated; {} isotropic vectors)", r.search_bound["isotropic_vectors"])
    };
    outcome(ok, format!("Λ_10 = U_E ⊥ Λ_4 ⊥ Λ_4 at height {h}{note}"))
}

fn criterion_6() -> Outcome {
    let r = verify_ambient().unwrap();
    let w = &r.witnesses;
    let sig = |v: &Value| (v["p"].as_u64().unwrap(), v["n"].as_u64().unwrap());
    let lam = &w["lambda_underlying"];
    let part_a = lam["parity"] == "even"
        && sig(&lam["signature"]) == (20, 2)
        && lam["invariant_factors"] == serde_json::json!([[1, [3]]]);
    let amb = &w["ambient"];
    let gram: IntMatrix = from_json(&amb["gram"]);
    let odd = (0..gram.rows()).any(|i| gram[(i, i)] % 2 != 0);
    let unimodular = bareiss(&gram).magnitude() == &num_bigint::BigUint::one();
    let part_b = odd && unimodular && sig(&amb["signature"]) == (21, 2);
    // ℤ³ by brute force: norm-3 vectors and signed permutations
    let mut norm3 = Vec::new();
    for x in -1i64..=1 {
        for y in -1i64..=1 {
            for z in -1i64..=1 {
                if x * x + y * y + z * z == 3 {
                    norm3.push([x, y, z]);
                }
            }
        }
    }
    let z3 = &w["z3"];
    let perp: IntMatrix = from_json(&z3["perp_111_basis"]);
    let perp_gram = perp.mul(&perp.transpose()).unwrap();
    let a2 = ZLattice::a2();
    let f: IntMatrix = from_json(&z3["isometry_to_a2"]);
    let iso = f.transpose().mul(a2.gram()).unwrap().mul(&f).unwrap() == perp_gram;
    let part_c = norm3.len() == 8
        && z3["automorphisms"] == 48
        && z3["orbit_of_111"].as_array().unwrap().len() == 8
        && perp.iter_rows().all(|v| v.iter().sum::<i64>() == 0)
        && iso;
    let ok = r.status == Status::Verified && part_a && part_b && part_c;
    outcome(ok, format!("(even, (20,2), [3]); odd unimodular (21,2); 48 automorphisms, one orbit of 8, (1,1,1)^⊥ ≅ A2 [a={part_a} b={part_b} c={part_c}]"))
}

/// `x0(x3² − x2x4) + x2³ + x1²x4 − 2x1x2x3` evaluated directly.
fn chordal_eval(x: &[BigInt; 5]) -> BigInt {
    &x[0] * (&x[3] * &x[3] - &x[2] * &x[4]) + &x[2] * &x[2] * &x[2] + &x[1] * &x[1] * &x[4]
        - BigInt::from(2) * &x[1] * &x[2] * &x[3]
}

fn chordal_grad(x: &[BigInt; 5]) -> [BigInt; 5] {
    let two = BigInt::from(2);
    [
        &x[3] * &x[3] - &x[2] * &x[4],
        &two * &x[1] * &x[4] - &two * &x[2] * &x[3],
        -(&x[0] * &x[4]) + BigInt::from(3) * &x[2] * &x[2] - &two * &x[1] * &x[3],
        &two * &x[0] * &x[3] - &two * &x[1] * &x[2],
        -(&x[0] * &x[2]) + &x[1] * &x[1],
    ]
}

fn criterion_7() -> Outcome {
    let r = verify_chordal().unwrap();
    let x0 = Polynomial::var("x0");
    let control = verify_chordal_form(&chordal_cubic().add(&x0.pow(3))).unwrap();
    // numeric oracle on secant, tangent and curve points
    let mut numeric = true;
    for t in -3i64..=3 {
        for s in -3i64..=3 {
            for (lam, mu) in [(1i64, 1i64), (2, -3), (-5, 7)] {
                let sec: [BigInt; 5] =
                    std::array::from_fn(|i| BigInt::from(lam * t.pow(i as u32) + mu * s.pow(i as u32)));
                let tan: [BigInt; 5] = std::array::from_fn(|i| {
                    let d = if i == 0 { 0 } else { i as i64 * t.pow(i as u32 - 1) };
                    BigInt::from(lam * t.pow(i as u32) + mu * d)
                });
                numeric &= chordal_eval(&sec).is_zero() && chordal_eval(&tan).is_zero();
            }
        }
        let curve: [BigInt; 5] = std::array::from_fn(|i| BigInt::from(t.pow(i as u32)));
        numeric &= chordal_grad(&curve).iter().all(Zero::is_zero);
    }
    let ok = r.status == Status::Verified && control.status == Status::Refuted && numeric;
    outcome(
        ok,
        format!(
            "secant, gradient and tangent identities are the zero polynomial; perturbed control {}",
            control.status
        ),
    )
}

fn criterion_8() -> Outcome {
    let triple = claim_one_triple().unwrap();
    let stated = [1, 0, -1];
    let cyclic = (0..3).any(|s| (0..3).all(|i| triple[i] == stated[(i + s) % 3]));
    let a = claim_arc();
    let a_prime = a.rotated(2).reversed();
    let anti = (0..3).all(|k| {
        let b = a_prime.rotated(4 * k);
        arc_intersection(&a, &b).ok().map(|x| -x) == arc_intersection(&b, &a).ok()
    });
    let r = verify_arcs().unwrap();
    outcome(
        cyclic && anti && r.status == Status::Verified,
        format!("triple {triple:?} against cyclic shifts of {stated:?}; antisymmetry {anti}"),
    )
}

fn criterion_9_10() -> (Outcome, Outcome) {
    let l = big_lambda();
    let mut tried = Vec::new();
    let mut found = None;
    for h in 2..=4u64 {
        let c = classify_cusps(&l, h).unwrap();
        tried.push(format!("h{h}: {} classes", c.classes.len()));
        if !c.classes.is_empty() {
            found = Some((h, c));
            break;
        }
    }
    let Some((h, mut c)) = found else {
        let o = outcome(false, format!("no classes ({})", tried.join(", ")));
        return (o, outcome(false, "no cusp classes to check"));
    };
    let rechecked = c.classes.iter().all(|k| recheck_class(&l, k).unwrap() && k.invariant().unwrap().rank() == 9);
    let recorded = c.report.search_bound["height"] == h;
    let nine = outcome(
        c.classes.len() == 2 && c.report.status == Status::Verified && rechecked && recorded,
        format!(
            "{} classes of rank-9 definite invariants at height {h} [{}]{}",
            c.classes.len(),
            tried.join(", "),
            if h > 3 { "; heights 2 and 3 hold no isotropic vectors, escalated" } else { "" }
        ),
    );

    let (records, _) = find_hyperplanes(h, 40).unwrap();
    if records.len() < 2 {
        return (nine, outcome(false, format!("{} hyperplane records at height {h}", records.len())));
    }
    if label_classes(&l, &mut c.classes, &records).is_err() {
        return (nine, outcome(false, "cusp classes could not be labeled by incidence"));
    }
    let inc = check_incidence(&l, &c.classes, &records).unwrap();
    let dis = check_disjointness(&l, &records, 200).unwrap();
    let dims = &inc.witnesses["iii"]["kernel_dimensions"];
    let ok = inc.status == Status::Verified
        && dims.as_array().unwrap().iter().all(|d| d["dimension"] == 9)
        && dis.status == Status::Verified
        && dis.witnesses["control"]["psd"] == false;
    let ten = outcome(
        ok,
        format!(
            "{} records; (ii)/(iii) {} with kernel dimensions {}; (iv) {} over {} pairs, self-pair control non-PSD",
            records.len(),
            inc.status,
            dims,
            dis.status,
            dis.witnesses["pairs_tested"]
        ),
    );
    (nine, ten)
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha))
}

fn samples<T: std::fmt::Debug>(strategy: impl Strategy<Value = T>, n: usize) -> Vec<T> {
    let mut r = runner();
    (0..n).map(|_| strategy.new_tree(&mut r).unwrap().current()).collect()
}

fn box_vectors(g: &IntMatrix, norm: i64, r: i64) -> BTreeSet<Vec<i64>> {
    let n = g.rows();
    let mut out = BTreeSet::new();
    let side = (2 * r + 1) as usize;
    for mut idx in 0..side.pow(n as u32) {
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let c = (idx % side) as i64 - r;
                idx /= side;
                c
            })
            .collect();
        let q: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[(i, j)] * x[j]).sum::<i64>()).sum();
        if q == norm && x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            out.insert(x);
        }
    }
    out
}

/// Gauss–Jordan inverse in floating point, only used to size search boxes.
fn float_inverse(g: &IntMatrix) -> Vec<Vec<f64>> {
    let n = g.rows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..2 * n).map(|j| if j < n { g[(i, j)] as f64 } else { (j - n == i) as i64 as f64 }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        let d = a[c][c];
        a[c].iter_mut().for_each(|x| *x /= d);
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                let row = a[c].clone();
                a[r].iter_mut().zip(&row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn criterion_11() -> Outcome {
    const CASES: usize = 1000;
    // short vectors against a box search, on Grams B Bᵀ with B unitriangular
    // times a small diagonal, so that every coordinate of a norm ≤ 6 vector
    // is bounded by a computable radius
    let mut shortvec_ok = 0;
    let grams = samples((1usize..=4, prop_vec(-1i64..=1, 16), prop_vec(1i64..=2, 4)), 200);
    for (n, off, diag) in &grams {
        let b = IntMatrix::from_fn(*n, *n, |i, j| {
            if i == j {
                diag[i]
            } else if j < i {
                off[i * 4 + j]
            } else {
                0
            }
        });
        let g = b.mul(&b.transpose()).unwrap();
        // |xᵢ|² ≤ N·(G⁻¹)ᵢᵢ, with one unit of slack for rounding
        let ginv = float_inverse(&g);
        let l = ZLattice::new(g.clone()).unwrap();
        let all = (1..=6).all(|norm| {
            let r = (0..*n).map(|i| (norm as f64 * ginv[i][i]).sqrt()).fold(0.0, f64::max).floor() as i64 + 1;
            l.short_vectors(norm).unwrap().into_iter().collect::<BTreeSet<_>>() == box_vectors(&g, norm, r)
        });
        shortvec_ok += all as usize;
    }
    let pairs = samples(((-10_000i64..10_000, -10_000i64..10_000), (-500i64..500, -500i64..500)), CASES);
    let divmod_ok = pairs
        .iter()
        .filter(|((a, b), (c, d))| {
            let (x, y) = (E::new(*a, *b), E::new(*c, *d));
            if y.is_zero() {
                return true;
            }
            let (q, r) = x.div_rem_euclid(&y).unwrap();
            let (p, s) = r.to_i64_pair().unwrap();
            let (u, v) = (*c, *d);
            q * y == x - r && p * p - p * s + s * s < u * u - u * v + v * v
        })
        .count();
    let mats = samples(prop_vec(-30i64..=30, 12), CASES);
    let hnf_ok = mats
        .iter()
        .filter(|v| {
            let m = BigMatrix::from_vec(3, 4, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
            let (h, u) = hnf(&m);
            u.mul(&m).unwrap() == h
        })
        .count();
    let snf_ok = mats
        .iter()
        .filter(|v| {
            let m = BigMatrix::from_vec(4, 3, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
            let (d, u, w) = snf(&m);
            let diag = (0..4).all(|i| (0..3).all(|j| i == j || d[(i, j)].is_zero()));
            u.mul(&m).unwrap().mul(&w).unwrap() == d && diag
        })
        .count();
    let ok = shortvec_ok == grams.len() && divmod_ok == CASES && hnf_ok == CASES && snf_ok == CASES;
    outcome(
        ok,
        format!("short vectors {shortvec_ok}/{} Grams × norms 1..6; divmod {divmod_ok}/{CASES}, HNF {hnf_ok}/{CASES}, SNF {snf_ok}/{CASES}", grams.len()),
    )
}

fn prop_vec<S: Strategy>(s: S, n: usize) -> proptest::collection::VecStrategy<S> {
    proptest::collection::vec(s, n)
}

fn strip_timing(report: &str) -> Value {
    let mut v: Value = serde_json::from_str(report).unwrap();
    for r in v["reports"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

fn criterion_12() -> Outcome {
    let dir = std::env::temp_dir();
    let run = |i: u32| {
        let path = dir.join(format!("eislat-acceptance-{}-{i}.json", std::process::id()));
        let st = Command::new(env!("CARGO_BIN_EXE_eislat"))
            .args(["verify", "all", "--height", "2", "--parallel", "4", "--json", "--report"])
            .arg(&path)
            .output()
            .unwrap();
        let s = std::fs::read_to_string(&path).unwrap();
        let _ = std::fs::remove_file(&path);
        (st.status.code(), s)
    };
    let (c1, a) = run(1);
    let (c2, b) = run(2);
    let same = strip_timing(&a) == strip_timing(&b);
    outcome(
        same && c1 == c2,
        format!(
            "two `verify all --height 2 --parallel 4` reports identical apart from timing; exit codes {c1:?}, {c2:?}"
        ),
    )
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    let mut check = |n: u32, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        if !run(n, limit, f) {
            failed.push(n);
        }
    };
    let s = Duration::from_secs;
    check(1, s(1), &mut criterion_1);
    check(2, s(1), &mut criterion_2);
    check(3, s(1), &mut criterion_3);
    check(4, s(60), &mut criterion_4);
    check(5, s(600), &mut criterion_5);
    check(6, s(30), &mut criterion_6);
    check(7, s(1), &mut criterion_7);
    check(8, s(1), &mut criterion_8);
    let mut ten = None;
    check(9, s(1800), &mut || {
        let (nine, t) = criterion_9_10();
        ten = Some(t);
        nine
    });
    let ten = ten.unwrap();
    check(10, s(1800), &mut || outcome(ten.pass, ten.detail.clone()));
    check(11, s(120), &mut criterion_11);
    check(12, s(600), &mut criterion_12);
    say(format!("red criteria: {failed:?} (expected {KNOWN_RED:?})"));
    assert_eq!(failed, KNOWN_RED, "acceptance results changed");
}
