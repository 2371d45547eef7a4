//! Prime fields `F_p` with `p` fitting in a machine word.
//!
//! Products are formed in `u128` and reduced immediately, so every
//! [`FieldElement`] is always stored in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic must be prime (got {0})")]
    NotPrime(u64),
    #[error("{0} is not invertible")]
    NotInvertible(u64),
    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },
}

/// Trial division up to `sqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field `F_p`. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1 % self.p, field: *self }
    }

    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement { value: value % self.p, field: *self }
    }

    pub fn from_i64(&self, value: i64) -> FieldElement {
        let v = (value as i128).rem_euclid(self.p as i128);
        self.element(v as u64)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        let p = self.p as u128;
        (if s >= p { s - p } else { s }) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            (a as u128 + self.p as u128 - b as u128) as u64
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        let a = a % self.p;
        if a == 0 {
            return Err(FieldError::NotInvertible(a));
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    /// Returns `e` with `q = p^e`, or an error if `q` is not a power of `p`.
    pub fn frobenius_exponent(&self, q: u64) -> Result<u32, FieldError> {
        let mut rest = q;
        let mut e = 0;
        if q == 0 {
            return Err(FieldError::NotPowerOfCharacteristic { q, p: self.p });
        }
        while rest > 1 {
            if !rest.is_multiple_of(self.p) {
                return Err(FieldError::NotPowerOfCharacteristic { q, p: self.p });
            }
            rest /= self.p;
            e += 1;
        }
        Ok(e)
    }

    /// `p^e`, or `None` on overflow.
    pub fn prime_power(&self, e: u32) -> Option<u64> {
        self.p.checked_pow(e)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue in `[0, p)` together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(FieldElement { value: self.field.inv(self.value)?, field: self.field })
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement { value: self.field.pow(self.value, exp), field: self.field }
    }

    /// Signed representative in `(-p/2, p/2]`, for display.
    pub fn centered(&self) -> i128 {
        let p = self.field.p as i128;
        let v = self.value as i128;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "field mismatch");
        FieldElement { value: self.field.add(self.value, rhs.value), field: self.field }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "field mismatch");
        FieldElement { value: self.field.sub(self.value, rhs.value), field: self.field }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.field, rhs.field, "field mismatch");
        FieldElement { value: self.field.mul(self.value, rhs.value), field: self.field }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement { value: self.field.neg(self.value), field: self.field }
    }
}
