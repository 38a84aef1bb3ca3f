use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

/// The coefficient field of a computation: F2 or Q. All linear algebra in
/// one computation uses a single tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    F2,
    Q,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::F2 => write!(f, "F2"),
            FieldTag::Q => write!(f, "Q"),
        }
    }
}

/// Exact field scalars. Every nonzero element is invertible; there is no
/// floating point anywhere in the crate.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    const TAG: FieldTag;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }
}

/// The two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2(pub u8);

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for F2 {
    const TAG: FieldTag = FieldTag::F2;
    fn zero() -> Self {
        F2(0)
    }
    fn one() -> Self {
        F2(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn mul(&self, rhs: &Self) -> Self {
        F2(self.0 & rhs.0)
    }
    fn inv(&self) -> Self {
        assert!(self.0 == 1, "inverse of zero in F2");
        F2(1)
    }
    fn from_int(n: i64) -> Self {
        F2((n.rem_euclid(2)) as u8)
    }
}

/// Exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(pub BigRational);

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Rat {
    const TAG: FieldTag = FieldTag::Q;
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero in Q");
        Rat(self.0.recip())
    }
    fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}
