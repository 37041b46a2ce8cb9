//! Multivariate polynomials with integer coefficients, and the chordal cubic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{Status, WitnessReport};

/// A polynomial over `Z` in named variables. Terms map exponent vectors
/// (aligned with `variables`) to nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { variables: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Polynomial { variables: Vec::new(), terms }
    }

    pub fn var(name: &str) -> Self {
        Polynomial { variables: vec![name.to_string()], terms: BTreeMap::from([(vec![1], BigInt::one())]) }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Re-expresses `self` over `vars`, a superset of its variables.
    fn aligned(&self, vars: &[String]) -> BTreeMap<Vec<u32>, BigInt> {
        let pos: Vec<usize> = self.variables.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    f[pos[i]] = k;
                }
                (f, c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.variables.clone();
        for v in &other.variables {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// The same polynomial with `vars` appended to its variable list.
    pub fn with_variables(&self, vars: &[String]) -> Self {
        let extra = Polynomial { variables: vars.to_vec(), terms: BTreeMap::new() };
        let variables = self.merged_vars(&extra);
        Polynomial { terms: self.aligned(&variables), variables }
    }

    pub fn add(&self, other: &Self) -> Self {
        let variables = self.merged_vars(other);
        let mut terms = self.aligned(&variables);
        for (e, c) in other.aligned(&variables) {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { variables, terms }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        self.mul(&Polynomial::constant(k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let variables = self.merged_vars(other);
        let a = self.aligned(&variables);
        let b = other.aligned(&variables);
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { variables, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::constant(1), |acc, _| acc.mul(self))
    }

    /// Simultaneous substitution of the named variables.
    pub fn substitute(&self, subs: &[(&str, Polynomial)]) -> Result<Self> {
        for (name, _) in subs {
            if !self.variables.iter().any(|v| v == name) {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        let images: Vec<Polynomial> = self
            .variables
            .iter()
            .map(|v| subs.iter().find(|(n, _)| n == v).map(|(_, p)| p.clone()).unwrap_or_else(|| Polynomial::var(v)))
            .collect();
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&img.pow(k));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        let i =
            self.variables.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                terms.insert(f, c * BigInt::from(e[i]));
            }
        }
        Ok(Polynomial { variables: self.variables.clone(), terms })
    }
}

/// Equality as polynomials, regardless of the order or extent of the
/// variable lists.
impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then(b.cmp(a)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.variables)
                .filter(|(&p, _)| p > 0)
                .map(|(&p, v)| if p == 1 { v.clone() } else { format!("{v}^{p}") })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(&format!("x{i}"))
}

/// `F = x₀(x₃² − x₂x₄) + x₂³ + x₁²x₄ − 2x₁x₂x₃`, cutting out the secant
/// variety of the rational normal quartic.
pub fn chordal_cubic() -> Polynomial {
    let quad = x(3).pow(2).sub(&x(2).mul(&x(4)));
    x(0).mul(&quad).add(&x(2).pow(3)).add(&x(1).pow(2).mul(&x(4))).sub(&x(1).mul(&x(2)).mul(&x(3)).scale(2))
}

fn names() -> Vec<String> {
    (0..5).map(|i| format!("x{i}")).collect()
}

fn subst_all(f: &Polynomial, images: Vec<Polynomial>) -> Result<Polynomial> {
    let names = names();
    let pairs: Vec<(&str, Polynomial)> = names.iter().map(String::as_str).zip(images).collect();
    f.with_variables(&names).substitute(&pairs)
}

/// Runs the three identities for the cubic `f`: vanishing on secant
/// lines, vanishing gradient along the curve, vanishing on tangent lines.
pub fn verify_chordal_form(f: &Polynomial) -> Result<WitnessReport> {
    let (lam, mu, s, t) =
        (Polynomial::var("lambda"), Polynomial::var("mu"), Polynomial::var("s"), Polynomial::var("t"));
    let secant = (0..5).map(|i| lam.mul(&t.pow(i)).add(&mu.mul(&s.pow(i)))).collect();
    let curve: Vec<Polynomial> = (0..5).map(|i| t.pow(i)).collect();
    let tangent = (0..5)
        .map(|i| {
            let d = if i == 0 { Polynomial::zero() } else { t.pow(i - 1).scale(i) };
            lam.mul(&t.pow(i)).add(&mu.mul(&d))
        })
        .collect();
    let a = subst_all(f, secant)?;
    let mut grads = Vec::new();
    for name in names() {
        let d = if f.variables().contains(&name) { f.partial_derivative(&name)? } else { Polynomial::zero() };
        grads.push(subst_all(&d, curve.clone())?);
    }
    let c = subst_all(f, tangent)?;
    let ok = a.is_zero() && grads.iter().all(Polynomial::is_zero) && c.is_zero();
    let w = json!({
        "polynomial": f.to_string(),
        "secant": a.to_string(),
        "gradient_on_curve": grads.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "tangent": c.to_string(),
    });
    Ok(WitnessReport::new("chordal", if ok { Status::Verified } else { Status::Refuted }, w, serde_json::Value::Null))
}

pub fn verify_chordal() -> Result<WitnessReport> {
    verify_chordal_form(&chordal_cubic())
}
