//! Coefficient rings: the integers and the integers modulo `m`.
//!
//! Elements of `Z/mZ` are always stored as their canonical representative in
//! `[0, m)`, so equality of values is ring equality. `Z/1Z` (the zero ring) is
//! allowed; its only element is `0`, which is also its multiplicative unit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    IntegersMod(u64),
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec::Integers
    }

    /// `Z/mZ`. Panics when `m == 0`; use [`RingSpec::parse`] for untrusted input.
    pub fn modulo(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        RingSpec::IntegersMod(m)
    }

    /// Parses `"Z"` or `"Z/<m>"` with `m >= 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let lead = s.len() - s.trim_start().len();
        let body = s.trim();
        let mut chars = body.char_indices();
        match chars.next() {
            Some((_, 'Z')) => {}
            Some((i, c)) => return Err(Error::parse(lead + i, format!("expected `Z`, found `{c}`"))),
            None => return Err(Error::parse(lead, "empty ring specification")),
        }
        let rest = &body[1..];
        if rest.is_empty() {
            return Ok(RingSpec::Integers);
        }
        let Some(digits) = rest.strip_prefix('/') else {
            return Err(Error::parse(lead + 1, format!("expected `/` after `Z`, found `{rest}`")));
        };
        if digits.is_empty() {
            return Err(Error::parse(lead + 2, "missing modulus after `Z/`"));
        }
        if let Some(bad) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(Error::parse(
                lead + 2 + bad.0,
                format!("unexpected character `{}` in modulus", bad.1),
            ));
        }
        let m: u64 = digits
            .parse()
            .map_err(|_| Error::parse(lead + 2, "modulus does not fit in 64 bits"))?;
        if m == 0 {
            return Err(Error::parse(lead + 2, "modulus must be at least 1"));
        }
        Ok(RingSpec::IntegersMod(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(m) => Some(*m),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    /// Number of elements, `None` for `Z`.
    pub fn cardinality(&self) -> Option<u64> {
        self.modulus()
    }

    /// Canonical representative of `v`.
    pub fn reduce(&self, v: BigInt) -> BigInt {
        match self {
            RingSpec::Integers => v,
            RingSpec::IntegersMod(m) => v.mod_floor(&BigInt::from(*m)),
        }
    }

    pub fn elem(&self, v: impl Into<BigInt>) -> RingElem {
        RingElem {
            ring: *self,
            value: self.reduce(v.into()),
        }
    }

    pub fn zero(&self) -> RingElem {
        self.elem(0)
    }

    pub fn one(&self) -> RingElem {
        self.elem(1)
    }

    /// All of `Z/mZ` in increasing order, or `{-bound, ..., bound}` for `Z`.
    pub fn enumerate(&self, bound: u64) -> Vec<RingElem> {
        self.enumerate_values(bound)
            .into_iter()
            .map(|value| RingElem { ring: *self, value })
            .collect()
    }

    pub(crate) fn enumerate_values(&self, bound: u64) -> Vec<BigInt> {
        match self {
            RingSpec::Integers => {
                let b = bound as i128;
                (-b..=b).map(BigInt::from).collect()
            }
            RingSpec::IntegersMod(m) => (0..*m).map(BigInt::from).collect(),
        }
    }

    pub(crate) fn add_raw(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }

    pub(crate) fn mul_raw(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }

    pub(crate) fn neg_raw(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }

    pub(crate) fn pow_raw(&self, a: &BigInt, e: u64) -> BigInt {
        match self {
            RingSpec::Integers => num_traits::pow(a.clone(), e as usize),
            RingSpec::IntegersMod(m) => a.modpow(&BigInt::from(e), &BigInt::from(*m)),
        }
    }

    pub(crate) fn is_unit_raw(&self, a: &BigInt) -> bool {
        match self {
            RingSpec::Integers => a.abs().is_one(),
            RingSpec::IntegersMod(1) => true,
            RingSpec::IntegersMod(m) => a.gcd(&BigInt::from(*m)).is_one(),
        }
    }

    pub(crate) fn inv_raw(&self, a: &BigInt) -> Option<BigInt> {
        match self {
            RingSpec::Integers => a.abs().is_one().then(|| a.clone()),
            RingSpec::IntegersMod(1) => Some(BigInt::zero()),
            RingSpec::IntegersMod(m) => {
                let m = BigInt::from(*m);
                let g = a.extended_gcd(&m);
                g.gcd.is_one().then(|| g.x.mod_floor(&m))
            }
        }
    }

    /// Inverse of an integer constant, reporting the constant itself on failure.
    pub(crate) fn inv_int(&self, k: i64) -> Result<BigInt> {
        self.inv_raw(&self.reduce(BigInt::from(k)))
            .ok_or(Error::NotInvertible {
                value: BigInt::from(k),
                ring: *self,
            })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

/// An element of a [`RingSpec`], stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    ring: RingSpec,
    value: BigInt,
}

impl RingElem {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn into_value(self) -> BigInt {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &RingElem) -> Result<RingSpec> {
        if self.ring == other.ring {
            Ok(self.ring)
        } else {
            Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            })
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        let r = self.check(other)?;
        Ok(r.elem(&self.value + &other.value))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        let r = self.check(other)?;
        Ok(r.elem(&self.value - &other.value))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        let r = self.check(other)?;
        Ok(r.elem(&self.value * &other.value))
    }

    pub fn neg(&self) -> RingElem {
        self.ring.elem(-&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit_raw(&self.value)
    }

    pub fn inv(&self) -> Result<RingElem> {
        self.ring
            .inv_raw(&self.value)
            .map(|value| RingElem {
                ring: self.ring,
                value,
            })
            .ok_or_else(|| Error::NotInvertible {
                value: self.value.clone(),
                ring: self.ring,
            })
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
