//! Arithmetic in the Eisenstein integers `Z[ζ]`, `ζ² + ζ + 1 = 0`, and in
//! the fraction field `Q(ζ)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The element `a + bζ` of `Z[ζ]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        EisensteinInt { a: a.into(), b: BigInt::zero() }
    }

    pub fn zeta() -> Self {
        EisensteinInt::new(0, 1)
    }

    /// `θ = 1 + 2ζ = √−3`.
    pub fn theta() -> Self {
        EisensteinInt::new(1, 2)
    }

    /// The six units `1, −ζ², ζ, −1, ζ², −ζ` (powers of `−ζ²`, a primitive sixth root of unity).
    pub fn units() -> [EisensteinInt; 6] {
        [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(1, 1),
            EisensteinInt::new(0, 1),
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(-1, -1),
            EisensteinInt::new(0, -1),
        ]
    }

    pub fn conj(&self) -> Self {
        EisensteinInt { a: &self.a - &self.b, b: -&self.b }
    }

    /// `N(a + bζ) = a² − ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// True when the element is a rational integer (`b = 0`).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Twice the real part, `2a − b`; always an integer.
    pub fn re2(&self) -> BigInt {
        &self.a * 2 - &self.b
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        EisensteinInt { a: &self.a * k, b: &self.b * k }
    }

    /// Exact division by a rational integer, if it divides both coordinates.
    pub fn div_int_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let (qa, ra) = self.a.div_rem(k);
        let (qb, rb) = self.b.div_rem(k);
        (ra.is_zero() && rb.is_zero()).then_some(EisensteinInt { a: qa, b: qb })
    }

    /// Euclidean division: `self = q·d + r` with `N(r) < N(d)`.
    ///
    /// Both rational coordinates of `self/d` are rounded to the nearest
    /// integer, ties toward zero.
    pub fn div_rem_euclid(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = d.norm();
        let num = self * &d.conj();
        let q = EisensteinInt { a: round_half_to_zero(&num.a, &n), b: round_half_to_zero(&num.b, &n) };
        let r = self - &(&q * d);
        debug_assert!(r.norm() < n);
        Ok((q, r))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        (self * &d.conj()).div_int_exact(&n)
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// The canonical associate: the unit multiple with argument in `[0, π/3)`,
    /// i.e. `0 ≤ b < a`. Zero maps to zero.
    pub fn canonical(&self) -> Self {
        let (_, c) = self.canonical_with_unit();
        c
    }

    /// Returns `(u, u·self)` where `u·self` is the canonical associate.
    pub fn canonical_with_unit(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::one(), Self::zero());
        }
        for u in Self::units() {
            let c = &u * self;
            if !c.b.is_negative() && c.b < c.a {
                return (u, c);
            }
        }
        unreachable!("exactly one associate lies in the sector [0, π/3)")
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || *self == self.canonical()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.conj())
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?))
    }
}

/// `round(p / n)` for `n > 0`, halves rounded toward zero.
fn round_half_to_zero(p: &BigInt, n: &BigInt) -> BigInt {
    debug_assert!(n.is_positive());
    let (q, r) = p.div_mod_floor(n);
    // p/n = q + r/n with 0 ≤ r < n
    let twice = &r * 2;
    if twice > *n {
        q + 1
    } else if twice < *n {
        q
    } else if q.is_negative() {
        // exactly q + 1/2 with q < 0: toward zero is q + 1
        q + 1
    } else {
        q
    }
}

/// Greatest common divisor in `Z[ζ]`, normalized to the canonical associate.
pub fn gcd(x: &EisensteinInt, y: &EisensteinInt) -> Result<EisensteinInt> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem_euclid(&b)?;
        a = b;
        b = r;
    }
    Ok(a.canonical())
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}ζ", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}ζ", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}ζ", self.a, self.b)
                }
            }
        }
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        EisensteinInt::from_int(a)
    }
}

impl From<(i64, i64)> for EisensteinInt {
    fn from((a, b): (i64, i64)) -> Self {
        EisensteinInt::new(a, b)
    }
}

impl Zero for EisensteinInt {
    fn zero() -> Self {
        EisensteinInt::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for EisensteinInt {
    fn one() -> Self {
        EisensteinInt::from_int(1)
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, o: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn mul(self, o: &EisensteinInt) -> EisensteinInt {
        // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bdζ², ζ² = −1 − ζ
        let bd = &self.b * &o.b;
        EisensteinInt { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for EisensteinInt {
            type Output = EisensteinInt;
            fn $m(self, o: EisensteinInt) -> EisensteinInt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a EisensteinInt> for EisensteinInt {
            type Output = EisensteinInt;
            fn $m(self, o: &EisensteinInt) -> EisensteinInt {
                (&self).$m(o)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -self.a, b: -self.b }
    }
}

impl AddAssign<&EisensteinInt> for EisensteinInt {
    fn add_assign(&mut self, o: &EisensteinInt) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&EisensteinInt> for EisensteinInt {
    fn sub_assign(&mut self, o: &EisensteinInt) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl Serialize for EisensteinInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        for c in [&self.a, &self.b] {
            match c.to_i64() {
                Some(v) => t.serialize_element(&v)?,
                None => t.serialize_element(&c.to_string())?,
            }
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for EisensteinInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = EisensteinInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a two-element integer array [a, b]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<EisensteinInt, A::Error> {
                let a: BigIntRepr = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let b: BigIntRepr = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<BigIntRepr>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(EisensteinInt { a: a.0, b: b.0 })
            }
        }
        d.deserialize_tuple(2, V)
    }
}

/// Integer accepted either as a JSON number or as a decimal string.
struct BigIntRepr(BigInt);

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigIntRepr(BigInt::from(v))),
            Raw::Str(s) => s.parse().map(BigIntRepr).map_err(de::Error::custom),
        }
    }
}

/// An element `num / den` of `Q(ζ)` with `den > 0` and `gcd(num.a, num.b, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EisensteinRational {
    num: EisensteinInt,
    den: BigInt,
}

impl EisensteinRational {
    pub fn new(num: EisensteinInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: EisensteinInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.a.gcd(&num.b).gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num = num.div_int_exact(&g).expect("gcd divides");
            den /= g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        EisensteinRational { num, den }
    }

    pub fn from_int(x: EisensteinInt) -> Self {
        EisensteinRational { num: x, den: BigInt::one() }
    }

    pub fn numer(&self) -> &EisensteinInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn conj(&self) -> Self {
        EisensteinRational { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational()
    }

    /// Sign of a rational (real) value; `None` if the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<std::cmp::Ordering> {
        self.num.is_rational().then(|| self.num.a.cmp(&BigInt::zero()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(n/d) = d·conj(n)/N(n)
        Ok(Self::reduced(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn to_integer(&self) -> Option<EisensteinInt> {
        self.den.is_one().then(|| self.num.clone())
    }
}

impl fmt::Debug for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl Zero for EisensteinRational {
    fn zero() -> Self {
        Self::from_int(EisensteinInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for EisensteinRational {
    fn one() -> Self {
        Self::from_int(EisensteinInt::one())
    }
}

impl Add for EisensteinRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let num = self.num.scale(&o.den) + o.num.scale(&self.den);
        Self::reduced(num, self.den * o.den)
    }
}

impl Sub for EisensteinRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for EisensteinRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::reduced(self.num * o.num, self.den * o.den)
    }
}

impl Neg for EisensteinRational {
    type Output = Self;
    fn neg(self) -> Self {
        EisensteinRational { num: -self.num, den: self.den }
    }
}

impl From<EisensteinInt> for EisensteinRational {
    fn from(x: EisensteinInt) -> Self {
        Self::from_int(x)
    }
}
