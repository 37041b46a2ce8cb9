//! The Euclidean domains used by the normal-form algorithms: `Z` and `Z[ζ]`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eisenstein::EisensteinInt;

pub trait EuclideanDomain:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Euclidean size; remainders are strictly smaller than the divisor.
    fn size(&self) -> BigInt;
    /// `self = q·d + r` with `size(r) < size(d)`. Panics if `d` is zero.
    fn div_rem_e(&self, d: &Self) -> (Self, Self);
    /// Unit `u` with `u·self` the canonical associate (`u = 1` for zero).
    fn normalizing_unit(&self) -> Self;
    /// Inverse of a unit.
    fn unit_inv(&self) -> Self;
    fn is_unit(&self) -> bool;

    fn canonical(&self) -> Self {
        self.normalizing_unit() * self.clone()
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_e(d);
        r.is_zero().then_some(q)
    }
}

impl EuclideanDomain for BigInt {
    fn size(&self) -> BigInt {
        self.abs()
    }
    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        // floor division keeps |r| < |d|
        self.div_mod_floor(d)
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn unit_inv(&self) -> Self {
        self.clone()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl EuclideanDomain for EisensteinInt {
    fn size(&self) -> BigInt {
        self.norm()
    }
    fn div_rem_e(&self, d: &Self) -> (Self, Self) {
        self.div_rem_euclid(d).expect("nonzero divisor")
    }
    fn normalizing_unit(&self) -> Self {
        self.canonical_with_unit().0
    }
    fn unit_inv(&self) -> Self {
        self.unit_inverse().expect("unit")
    }
    fn is_unit(&self) -> bool {
        EisensteinInt::is_unit(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
}
