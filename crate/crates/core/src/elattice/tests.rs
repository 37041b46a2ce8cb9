use super::*;

fn e(a: i64, b: i64) -> E {
    E::new(a, b)
}

fn rotation() -> IntMatrix {
    IntMatrix::from_rows(vec![vec![0, -1], vec![1, -1]]).unwrap()
}

#[test]
fn lambda_family() {
    assert_eq!(ELattice::lambda(1).unwrap().hgram().to_rows(), vec![vec![e(3, 0)]]);
    let t = E::theta();
    assert_eq!(ELattice::lambda(2).unwrap().hgram().to_rows(), vec![vec![e(3, 0), t.clone()], vec![-t, e(3, 0)]]);
    assert!(ELattice::lambda(0).is_err());
    let u = ELattice::lambda(10).unwrap().underlying().unwrap();
    assert!(u.base().is_even());
    assert_eq!(u.base().det().abs(), BigInt::one());
}

#[test]
fn lambda2_underlying_gram() {
    let u = ELattice::lambda(2).unwrap().underlying().unwrap();
    let expected = vec![vec![2, -1, 0, 1], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![1, 0, -1, 2]];
    assert_eq!(u.base().gram().to_rows(), expected);
    assert_eq!(u.base().det(), BigInt::from(4));
}

#[test]
fn lambda1_is_a2_with_rotation() {
    let u = ELattice::lambda(1).unwrap().underlying().unwrap();
    assert_eq!(u.base().gram(), ZLattice::a2().gram());
    assert_eq!(u.t(), &rotation());
}

#[test]
fn a2_rotation_gives_lambda1() {
    let m = Mu3ZLattice::new(ZLattice::a2(), rotation()).unwrap();
    let (l, basis) = ELattice::from_mu3(&m).unwrap();
    assert_eq!(l.hgram().to_rows(), vec![vec![e(3, 0)]]);
    assert_eq!(basis.rows(), 1);
}

#[test]
fn mu3_invariants_enforced() {
    let bad = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert!(matches!(Mu3ZLattice::new(ZLattice::a2(), bad), Err(Error::InvariantViolation(_))));
    assert!(matches!(Mu3ZLattice::new(ZLattice::a2(), IntMatrix::identity(2)), Err(Error::InvariantViolation(_))));
}

#[test]
fn hyperbolic_round_trip() {
    let ue = ELattice::hyperbolic();
    let u = ue.underlying().unwrap();
    let inv = u.base().invariants();
    assert_eq!(inv.signature, Signature::new(2, 2, 0));
    assert!(u.base().is_even());
    assert_eq!(u.base().det().abs(), BigInt::one());
    let (back, _) = ELattice::from_mu3(&u).unwrap();
    assert_eq!(back, ue);
    let i = ue.invariants();
    assert_eq!(i.signature, Signature::new(1, 1, 0));
    assert_eq!(i.det, e(-3, 0));
}

#[test]
fn round_trip_definite() {
    for k in 1..=4 {
        let l = ELattice::lambda(k).unwrap();
        let (back, _) = ELattice::from_mu3(&l.underlying().unwrap()).unwrap();
        let g = e_isometry_definite(&l, &back).unwrap().expect("isometric");
        assert!(is_e_isometry(l.hgram(), back.hgram(), &g));
    }
}

#[test]
fn det_relation() {
    let lam = ELattice::lambda(10).unwrap().direct_sum(&ELattice::lambda(1).unwrap());
    let mut cases: Vec<ELattice> = (1..=4).map(|k| ELattice::lambda(k).unwrap()).collect();
    cases.push(ELattice::hyperbolic());
    cases.push(lam);
    for l in cases {
        let z = l.underlying().unwrap().base().det().abs();
        let n = l.det().norm();
        assert_eq!(z * BigInt::from(3).pow(l.rank() as u32), n);
    }
}

#[test]
fn signatures() {
    let l4 = ELattice::lambda(4).unwrap().invariants();
    assert_eq!(l4.signature, Signature::new(4, 0, 0));
    assert!(l4.positive_definite);
    let lam = ELattice::lambda(10).unwrap().direct_sum(&ELattice::lambda(1).unwrap());
    assert_eq!(lam.invariants().signature, Signature::new(10, 1, 0));
}

#[test]
fn conjugate_isometry() {
    for k in 1..=10 {
        let l = ELattice::lambda(k).unwrap();
        let c = l.conjugate();
        assert!(is_e_isometry(c.hgram(), l.hgram(), &alternating_sign(k)));
        assert_eq!(c.conjugate(), l);
    }
}

#[test]
fn isometry_examples() {
    let l1 = ELattice::lambda(1).unwrap();
    let g = e_isometry_definite(&l1, &l1).unwrap().unwrap();
    assert!(g[(0, 0)].is_unit());
    let six = ELattice::new(EMatrix::from_rows(vec![vec![e(6, 0)]]).unwrap()).unwrap();
    assert_eq!(e_isometry_definite(&l1, &six).unwrap(), None);
    assert!(matches!(e_isometry_definite(&l1, &ELattice::lambda(2).unwrap()), Err(Error::RankMismatch(1, 2))));
    assert!(matches!(
        e_isometry_definite(&ELattice::hyperbolic(), &ELattice::hyperbolic()),
        Err(Error::NotPositiveDefinite)
    ));
}

#[test]
fn complement_and_quotient() {
    let l = ELattice::hyperbolic().direct_sum(&ELattice::lambda(1).unwrap());
    let v = vec![e(1, 0), e(0, 0), e(0, 0)];
    let cq = l.complement_quotient(&v).unwrap();
    assert_eq!(cq.complement.rank(), 2);
    let (q, _) = cq.quotient.unwrap();
    assert_eq!(q.hgram().to_rows(), vec![vec![e(3, 0)]]);

    let l = ELattice::lambda(1).unwrap().direct_sum(&ELattice::lambda(1).unwrap());
    let cq = l.complement_quotient(&[e(1, 0), e(0, 0)]).unwrap();
    assert_eq!(cq.complement.hgram().to_rows(), vec![vec![e(3, 0)]]);
    assert!(cq.quotient.is_none());
    assert!(matches!(l.complement_quotient(&[e(2, 0), e(0, 0)]), Err(Error::NonPrimitive)));
    assert!(matches!(l.complement_quotient(&[e(1, 0)]), Err(Error::NotInLattice)));
}

#[test]
fn psd_checks() {
    let l4 = ELattice::lambda(4).unwrap();
    assert_eq!(l4.psd_on(&EMatrix::identity(4)).unwrap(), (true, None));
    let ue = ELattice::hyperbolic();
    let (psd, w) = ue.psd_on(&EMatrix::identity(2)).unwrap();
    assert!(!psd);
    let w = w.unwrap();
    assert!(ue.h(&w, &w).a < BigInt::zero());
    assert_eq!(ue.psd_on(&EMatrix::zeros(0, 2)).unwrap(), (true, None));
}

#[test]
fn json_formats() {
    let l = ELattice::lambda(2).unwrap();
    let s = serde_json::to_string(&l).unwrap();
    assert_eq!(s, r#"{"rank":2,"hgram":[[[3,0],[1,2]],[[-1,-2],[3,0]]]}"#);
    assert_eq!(serde_json::from_str::<ELattice>(&s).unwrap(), l);
    assert!(serde_json::from_str::<ELattice>(r#"{"rank":1,"hgram":[[[2,0]]]}"#).is_err());
    let m = Mu3ZLattice::new(ZLattice::a2(), rotation()).unwrap();
    let s = serde_json::to_string(&m).unwrap();
    assert_eq!(s, r#"{"rank":2,"gram":[[2,-1],[-1,2]],"t":[[0,-1],[1,-1]]}"#);
    assert_eq!(serde_json::from_str::<Mu3ZLattice>(&s).unwrap(), m);
}

#[test]
fn dictionary_is_sesquilinear() {
    // φ(Ta, a') = ζ φ(a, a'), φ(a, Ta') = ζ̄ φ(a, a') on Λ₃'s underlying lattice
    let u = ELattice::lambda(3).unwrap().underlying().unwrap();
    let n = u.base().rank();
    let t = u.t();
    let tv = |v: &[i64]| -> Vec<i64> { (0..n).map(|i| crate::matrix::dot(t.row(i), v)).collect() };
    let samples: Vec<Vec<i64>> =
        (0..20).map(|s: i64| (0..n as i64).map(|i| ((s * 7 + i * 3) % 5) - 2).collect()).collect();
    for a in &samples {
        for b in &samples {
            let p = u.phi(a, b);
            assert_eq!(u.phi(&tv(a), b), &E::zeta() * &p);
            assert_eq!(u.phi(a, &tv(b)), &E::zeta().conj() * &p);
            if a == b {
                assert_eq!(u.h(a, a), E::from_int(3 * u.base().norm(a) / 2));
            }
        }
    }
}
