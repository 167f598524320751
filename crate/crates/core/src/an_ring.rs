//! Canonical-form arithmetic in `A_n(R) = R[x, x^-1, (1+x)^-1, ..., (n-1+x)^-1]`.
//!
//! Every element is stored as its coefficient family over the basis
//!
//! ```text
//! 1, x^j, x^-j, (1+x)^-j, ..., (n-1+x)^-j      (j = 1, 2, ...)
//! ```
//!
//! so equality is structural. Only multiplication by the unit monomials
//! `(i+x)^{±1}` is provided; that is all the group law needs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// A basis element of `A_n(R)`.
///
/// `x^-j` is `Power(-j)`; `Pole { offset, order }` is `(offset + x)^-order`
/// with `offset >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Power(i64),
    Pole { offset: usize, order: u64 },
}

impl Basis {
    /// `(offset + x)^-order`, where offset `0` means `x^-order`.
    pub fn pole(offset: usize, order: u64) -> Basis {
        assert!(order >= 1, "pole order starts at 1");
        if offset == 0 {
            Basis::Power(-(order as i64))
        } else {
            Basis::Pole { offset, order }
        }
    }

    /// `(offset + x)^-order` with the convention `(offset + x)^0 = 1`.
    fn pole_or_one(offset: usize, order: u64) -> Basis {
        if order == 0 {
            Basis::Power(0)
        } else {
            Basis::pole(offset, order)
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Power(0) => write!(f, "1"),
            Basis::Power(1) => write!(f, "x"),
            Basis::Power(j) => write!(f, "x^{j}"),
            Basis::Pole { offset, order } => write!(f, "({offset}+x)^-{order}"),
        }
    }
}

/// Which factor of a unit monomial: `x` (index 0) or `(i+x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(e: i64) -> Sign {
        if e < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// One of the `n + 1` coordinates: `∞` or an offset `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coordinate {
    Infinity,
    Offset(usize),
}

impl Coordinate {
    /// Position in an `(n+1)`-tuple ordered `∞, 0, ..., n-1`.
    pub fn slot(self) -> usize {
        match self {
            Coordinate::Infinity => 0,
            Coordinate::Offset(i) => i + 1,
        }
    }

    pub fn from_slot(slot: usize) -> Coordinate {
        if slot == 0 {
            Coordinate::Infinity
        } else {
            Coordinate::Offset(slot - 1)
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = Coordinate> {
        (0..=n).map(Coordinate::from_slot)
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Infinity => write!(f, "inf"),
            Coordinate::Offset(i) => write!(f, "{i}"),
        }
    }
}

/// Deliberately wrong reduction rules, for checking that the verifiers notice.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fault {
    /// Uses `(i+1+x) x^j` in place of `(i+x) x^j` for `i >= 1`.
    PowerTimesLinear,
}

/// Rank and coefficient ring of `A_n(R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnContext {
    n: usize,
    ring: RingSpec,
    fault: Option<Fault>,
}

impl AnContext {
    /// Fails unless `2, ..., n-1` are units in `ring`.
    pub fn new(n: usize, ring: RingSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("rank must be at least 1".into()));
        }
        for k in 2..n as i64 {
            ring.inv_int(k)?;
        }
        Ok(AnContext {
            n,
            ring,
            fault: None,
        })
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn zero(&self) -> AnElement {
        AnElement {
            ctx: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AnElement {
        self.constant(&BigInt::one())
    }

    pub fn constant(&self, c: &BigInt) -> AnElement {
        self.monomial(Basis::Power(0), c.clone())
    }

    pub fn x(&self) -> AnElement {
        self.monomial(Basis::Power(1), BigInt::one())
    }

    /// `coeff * basis`, reduced and with zero dropped.
    pub fn monomial(&self, basis: Basis, coeff: BigInt) -> AnElement {
        let mut terms = BTreeMap::new();
        let c = self.ring.reduce(coeff);
        if !c.is_zero() {
            terms.insert(basis, c);
        }
        AnElement { ctx: *self, terms }
    }

    pub fn from_basis(&self, basis: Basis, coeff: &RingElem) -> Result<AnElement> {
        if coeff.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: coeff.ring(),
            });
        }
        self.check_basis(basis)?;
        Ok(self.monomial(basis, coeff.value().clone()))
    }

    fn check_basis(&self, basis: Basis) -> Result<()> {
        match basis {
            Basis::Pole { offset, .. } if offset >= self.n => Err(Error::IndexOutOfRange {
                index: offset,
                rank: self.n,
            }),
            Basis::Pole { offset: 0, .. } => {
                Err(Error::ContextMismatch("offset-0 poles are negative powers of x".into()))
            }
            _ => Ok(()),
        }
    }

    /// Builds an element from arbitrary (basis, coefficient) pairs, summing repeats.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Basis, BigInt)>) -> Result<AnElement> {
        let mut acc = Acc::new(self.ring);
        for (b, c) in terms {
            self.check_basis(b)?;
            acc.add(b, &c);
        }
        Ok(acc.finish(*self))
    }

    /// The unique element whose `x^0, x^1, ...` coefficients are `b_inf` and
    /// whose `(i+x)^-1, (i+x)^-2, ...` coefficients are `b_poles[i]`
    /// (`b_poles[0]` fills `x^-1, x^-2, ...`).
    pub fn from_sequences(&self, b_inf: &[BigInt], b_poles: &[Vec<BigInt>]) -> Result<AnElement> {
        if b_poles.len() > self.n {
            return Err(Error::IndexOutOfRange {
                index: b_poles.len() - 1,
                rank: self.n,
            });
        }
        let mut acc = Acc::new(self.ring);
        for (j, c) in b_inf.iter().enumerate() {
            acc.add(Basis::Power(j as i64), c);
        }
        for (i, seq) in b_poles.iter().enumerate() {
            for (j, c) in seq.iter().enumerate() {
                acc.add(Basis::pole(i, j as u64 + 1), c);
            }
        }
        Ok(acc.finish(*self))
    }

    /// An element carrying `seq` in coordinate `coord` and nothing else.
    pub(crate) fn single_sequence_element(&self, coord: Coordinate, seq: &[BigInt]) -> AnElement {
        let mut acc = Acc::new(self.ring);
        for (j, c) in seq.iter().enumerate() {
            let b = match coord {
                Coordinate::Infinity => Basis::Power(j as i64),
                Coordinate::Offset(i) => Basis::pole(i, j as u64 + 1),
            };
            acc.add(b, c);
        }
        acc.finish(*self)
    }

    fn inv_const(&self, k: i64) -> BigInt {
        self.ring
            .inv_int(k)
            .expect("offsets and their differences are units by construction")
    }
}

/// Sparse accumulator that keeps coefficients reduced and drops zeros at the end.
struct Acc {
    ring: RingSpec,
    map: BTreeMap<Basis, BigInt>,
}

impl Acc {
    fn new(ring: RingSpec) -> Self {
        Acc {
            ring,
            map: BTreeMap::new(),
        }
    }

    fn add(&mut self, b: Basis, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.map.entry(b).or_insert_with(BigInt::zero);
        *slot = self.ring.add_raw(slot, c);
    }

    fn finish(mut self, ctx: AnContext) -> AnElement {
        let ring = self.ring;
        self.map.retain(|_, v| {
            *v = ring.reduce(std::mem::take(v));
            !v.is_zero()
        });
        AnElement {
            ctx,
            terms: self.map,
        }
    }
}

/// Heights `h_0, ..., h_{n-1}`; `h_∞ = -Σ h_i` is derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightVector(pub Vec<i64>);

impl HeightVector {
    pub fn zero(n: usize) -> Self {
        HeightVector(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut h = vec![0; n];
        h[j] = 1;
        HeightVector(h)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn h_inf(&self) -> i64 {
        -self.0.iter().sum::<i64>()
    }

    /// Height of one coordinate, including `∞`.
    pub fn height(&self, coord: Coordinate) -> i64 {
        match coord {
            Coordinate::Infinity => self.h_inf(),
            Coordinate::Offset(i) => self.0[i],
        }
    }

    pub fn add(&self, other: &HeightVector) -> HeightVector {
        HeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> HeightVector {
        HeightVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl From<Vec<i64>> for HeightVector {
    fn from(v: Vec<i64>) -> Self {
        HeightVector(v)
    }
}

/// An element of `A_n(R)` in canonical basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnElement {
    ctx: AnContext,
    terms: BTreeMap<Basis, BigInt>,
}

impl AnElement {
    pub fn ctx(&self) -> &AnContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero coefficients in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficients of `x^j` for every integer `j`.
    pub fn laurent(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().filter_map(|(b, c)| match b {
            Basis::Power(j) => Some((*j, c)),
            _ => None,
        })
    }

    /// Coefficients of `(offset + x)^-order` for `offset >= 1`.
    pub fn poles(&self, offset: usize) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().filter_map(move |(b, c)| match b {
            Basis::Pole { offset: o, order } if *o == offset => Some((*order, c)),
            _ => None,
        })
    }

    fn same_ctx(&self, other: &AnElement) -> Result<()> {
        if self.ctx.n != other.ctx.n || self.ctx.ring != other.ctx.ring {
            return Err(Error::ContextMismatch(format!(
                "A_{}({}) vs A_{}({})",
                self.ctx.n, self.ctx.ring, other.ctx.n, other.ctx.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &AnElement) -> Result<AnElement> {
        self.same_ctx(other)?;
        let mut acc = Acc::new(self.ctx.ring);
        for (b, c) in self.terms.iter().chain(&other.terms) {
            acc.add(*b, c);
        }
        Ok(acc.finish(self.ctx))
    }

    pub fn sub(&self, other: &AnElement) -> Result<AnElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AnElement {
        let ring = self.ctx.ring;
        AnElement {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, ring.neg_raw(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scalar_mul(&self, r: &RingElem) -> Result<AnElement> {
        if r.ring() != self.ctx.ring {
            return Err(Error::RingMismatch {
                left: self.ctx.ring,
                right: r.ring(),
            });
        }
        Ok(self.scale_raw(r.value()))
    }

    pub(crate) fn scale_raw(&self, r: &BigInt) -> AnElement {
        let mut acc = Acc::new(self.ctx.ring);
        for (b, c) in &self.terms {
            acc.add(*b, &(c * r));
        }
        acc.finish(self.ctx)
    }

    /// `(i+x)^{±1} · self`, where `(0+x)` is `x`.
    pub fn mul_unit(&self, i: usize, sign: Sign) -> Result<AnElement> {
        if i >= self.ctx.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.ctx.n,
            });
        }
        let mut acc = Acc::new(self.ctx.ring);
        for (b, c) in &self.terms {
            match sign {
                Sign::Plus => self.times_linear(&mut acc, i, *b, c),
                Sign::Minus if i == 0 => self.times_x_inv(&mut acc, *b, c),
                Sign::Minus => self.times_linear_inv(&mut acc, i, *b, c),
            }
        }
        Ok(acc.finish(self.ctx))
    }

    /// `(i+x) · c·b`.
    fn times_linear(&self, acc: &mut Acc, i: usize, b: Basis, c: &BigInt) {
        let ring = self.ctx.ring;
        match b {
            Basis::Power(j) => {
                let mut k = i as i64;
                if i >= 1 && self.ctx.fault == Some(Fault::PowerTimesLinear) {
                    k += 1;
                }
                acc.add(Basis::Power(j), &ring.mul_raw(c, &BigInt::from(k)));
                acc.add(Basis::Power(j + 1), c);
            }
            Basis::Pole { offset: l, order } => {
                // (i+x)(l+x)^-j = (l+x)^-(j-1) + (i-l)(l+x)^-j
                acc.add(Basis::pole_or_one(l, order - 1), c);
                let d = BigInt::from(i as i64 - l as i64);
                acc.add(b, &ring.mul_raw(c, &d));
            }
        }
    }

    /// `x^-1 · c·b`.
    fn times_x_inv(&self, acc: &mut Acc, b: Basis, c: &BigInt) {
        let ring = self.ctx.ring;
        match b {
            Basis::Power(j) => acc.add(Basis::Power(j - 1), c),
            Basis::Pole { offset: l, order: j } => {
                // x^-1 (l+x)^-j = l^-j x^-1 - Σ_{k=1..j} l^-(j-k+1) (l+x)^-k
                let l_inv = self.ctx.inv_const(l as i64);
                acc.add(Basis::Power(-1), &ring.mul_raw(c, &ring.pow_raw(&l_inv, j)));
                for k in 1..=j {
                    let coeff = ring.mul_raw(c, &ring.pow_raw(&l_inv, j - k + 1));
                    acc.add(Basis::Pole { offset: l, order: k }, &ring.neg_raw(&coeff));
                }
            }
        }
    }

    /// `(i+x)^-1 · c·b` for `i >= 1`.
    fn times_linear_inv(&self, acc: &mut Acc, i: usize, b: Basis, c: &BigInt) {
        let ring = self.ctx.ring;
        let ii = BigInt::from(i as i64);
        match b {
            Basis::Power(j) if j >= 0 => {
                // x^j/(i+x) = Σ_{k<j} (-i)^k x^(j-1-k) + (-i)^j (i+x)^-1
                let neg_i = ring.neg_raw(&ii);
                let mut p = ring.reduce(c.clone());
                for k in 0..j {
                    acc.add(Basis::Power(j - 1 - k), &p);
                    p = ring.mul_raw(&p, &neg_i);
                }
                acc.add(Basis::Pole { offset: i, order: 1 }, &p);
            }
            Basis::Power(j) => {
                // x^-m/(i+x) = Σ_{k=1..m} (-1)^(k-1) i^-k x^-(m-k+1) + (-1)^m i^-m (i+x)^-1
                let m = -j;
                let neg_i_inv = ring.neg_raw(&self.ctx.inv_const(i as i64));
                let mut p = ring.reduce(c.clone());
                for k in 1..=m {
                    p = ring.mul_raw(&p, &neg_i_inv);
                    acc.add(Basis::Power(-(m - k + 1)), &ring.neg_raw(&p));
                }
                acc.add(Basis::Pole { offset: i, order: 1 }, &p);
            }
            Basis::Pole { offset: l, order } if l == i => {
                acc.add(Basis::Pole { offset: l, order: order + 1 }, c);
            }
            Basis::Pole { offset: l, order: j } => {
                // (l+x)^-j (i+x)^-1 = Σ_{t<j} d e^t (l+x)^-(j-t) + e^j (i+x)^-1,
                // d = (i-l)^-1, e = (l-i)^-1
                let d = self.ctx.inv_const(i as i64 - l as i64);
                let e = ring.neg_raw(&d);
                let mut et = ring.reduce(c.clone());
                for t in 0..j {
                    acc.add(Basis::Pole { offset: l, order: j - t }, &ring.mul_raw(&et, &d));
                    et = ring.mul_raw(&et, &e);
                }
                acc.add(Basis::Pole { offset: i, order: 1 }, &et);
            }
        }
    }

    /// `(i+x)^e · self`.
    pub fn mul_unit_pow(&self, i: usize, e: i64) -> Result<AnElement> {
        let sign = Sign::of(e);
        let mut cur = self.clone();
        for _ in 0..e.unsigned_abs() {
            cur = cur.mul_unit(i, sign)?;
        }
        Ok(cur)
    }

    /// `self · x^{h_0} (1+x)^{h_1} ⋯ (n-1+x)^{h_{n-1}}`.
    pub fn mul_shift(&self, h: &HeightVector) -> Result<AnElement> {
        if h.len() != self.ctx.n {
            return Err(Error::ContextMismatch(format!(
                "height vector of length {} for rank {}",
                h.len(),
                self.ctx.n
            )));
        }
        let mut cur = self.clone();
        for (i, &e) in h.0.iter().enumerate() {
            cur = cur.mul_unit_pow(i, e)?;
        }
        Ok(cur)
    }

    pub fn coeff(&self, b: Basis) -> BigInt {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^j`.
    pub fn coeff_x(&self, j: i64) -> RingElem {
        self.ctx.ring.elem(self.coeff(Basis::Power(j)))
    }

    /// Coefficient of `(i+x)^-j`, `j >= 1`; `i = 0` reads `x^-j`.
    pub fn coeff_pole(&self, i: usize, j: u64) -> RingElem {
        self.ctx.ring.elem(self.coeff(Basis::pole(i, j)))
    }

    /// The coefficient sequence of one coordinate, read directly off `self`:
    /// `x^0, x^1, ...` for `∞` and `(i+x)^-1, (i+x)^-2, ...` for offset `i`.
    /// Trailing zeros are trimmed.
    pub fn sequence(&self, coord: Coordinate) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        let mut put = |pos: usize, c: &BigInt| {
            if out.len() <= pos {
                out.resize(pos + 1, BigInt::zero());
            }
            out[pos] = c.clone();
        };
        for (b, c) in &self.terms {
            match (coord, b) {
                (Coordinate::Infinity, Basis::Power(j)) if *j >= 0 => put(*j as usize, c),
                (Coordinate::Offset(0), Basis::Power(j)) if *j < 0 => put((-j - 1) as usize, c),
                (Coordinate::Offset(i), Basis::Pole { offset, order }) if *offset == i => {
                    put((*order - 1) as usize, c)
                }
                _ => {}
            }
        }
        out
    }

    /// The `a`-sequence of `(self, h)` at `coord`: the `x^0, x^1, ...`
    /// coefficients of `x^{h_∞} self`, or the `(∗+x)^-1, (∗+x)^-2, ...`
    /// coefficients of `(∗+x)^{-h_∗} self`.
    pub fn seq_a(&self, h: &HeightVector, coord: Coordinate) -> Result<Vec<BigInt>> {
        if h.len() != self.ctx.n {
            return Err(Error::ContextMismatch(format!(
                "height vector of length {} for rank {}",
                h.len(),
                self.ctx.n
            )));
        }
        let shifted = match coord {
            Coordinate::Infinity => self.mul_unit_pow(0, h.h_inf())?,
            Coordinate::Offset(i) => self.mul_unit_pow(i, -h.0[i])?,
        };
        Ok(shifted.sequence(coord))
    }
}

impl fmt::Display for AnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{b}")?;
            } else if matches!(b, Basis::Power(0)) {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{b}")?;
            }
        }
        Ok(())
    }
}

/// Trims trailing zeros.
pub fn trim(mut seq: Vec<BigInt>) -> Vec<BigInt> {
    while seq.last().is_some_and(|c| c.is_zero()) {
        seq.pop();
    }
    seq
}

/// Convenience for tests and examples: integers to big integers.
pub fn big_seq(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: usize, r: RingSpec) -> AnContext {
        AnContext::new(n, r).unwrap()
    }

    fn el(c: &AnContext, terms: &[(Basis, i64)]) -> AnElement {
        c.from_terms(terms.iter().map(|(b, v)| (*b, BigInt::from(*v))))
            .unwrap()
    }

    use Basis::{Pole, Power};
    fn p(offset: usize, order: u64) -> Basis {
        Basis::pole(offset, order)
    }

    // Evaluation at x = t over Z/q, an independent oracle for the reduction
    // rules: every basis element is a rational function, so equal elements
    // agree at every point where no denominator vanishes.
    const Q: i64 = 1_000_003;

    fn modpow(mut b: i64, mut e: u64) -> i64 {
        let mut r = 1i64;
        b = b.rem_euclid(Q);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % Q;
            }
            b = b * b % Q;
            e >>= 1;
        }
        r
    }

    fn inv_q(a: i64) -> i64 {
        modpow(a, (Q - 2) as u64)
    }

    fn eval(f: &AnElement, t: i64) -> i64 {
        let mut s = 0i64;
        for (b, c) in f.terms() {
            let c = (c % BigInt::from(Q)).try_into().map(|v: i64| v.rem_euclid(Q)).unwrap();
            let v = match *b {
                Power(j) if j >= 0 => modpow(t, j as u64),
                Power(j) => inv_q(modpow(t, (-j) as u64)),
                Pole { offset, order } => inv_q(modpow(t + offset as i64, order)),
            };
            s = (s + c * v) % Q;
        }
        s
    }

    const POINTS: [i64; 4] = [7, 1234, 99991, 500000];

    fn assert_eval_eq(lhs: &AnElement, rhs_at: impl Fn(i64) -> i64) {
        for t in POINTS {
            assert_eq!(eval(lhs, t), rhs_at(t).rem_euclid(Q), "at x = {t}");
        }
    }

    #[test]
    fn constructors() {
        let c = ctx(3, RingSpec::modulo(5));
        let one = c.one();
        assert_eq!(one.terms().collect::<Vec<_>>(), vec![(&Power(0), &BigInt::one())]);
        let e = c.from_basis(p(1, 2), &RingSpec::modulo(5).elem(3)).unwrap();
        assert_eq!(e.coeff_pole(1, 2), RingSpec::modulo(5).elem(3));
        assert_eq!(e.num_terms(), 1);
        assert!(c
            .from_basis(Power(-1), &RingSpec::modulo(5).zero())
            .unwrap()
            .is_zero());
        assert!(c.from_basis(Power(0), &RingSpec::Integers.one()).is_err());
    }

    #[test]
    fn additive_structure() {
        let c = ctx(2, RingSpec::Integers);
        let f = el(&c, &[(Power(1), 1), (p(1, 1), 1)]);
        let g = el(&c, &[(Power(-1), 1), (p(1, 1), -1)]);
        assert_eq!(f.add(&g).unwrap(), el(&c, &[(Power(1), 1), (Power(-1), 1)]));
        assert!(f.add(&f.neg()).unwrap().is_zero());
        assert!(f.scalar_mul(&RingSpec::Integers.zero()).unwrap().is_zero());
        let other = ctx(2, RingSpec::modulo(3)).one();
        assert!(matches!(f.add(&other), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn mul_unit_examples() {
        // (2+x)^-1 · (1+x)^-1 over Z/5 with n = 3
        let c = ctx(3, RingSpec::modulo(5));
        let f = el(&c, &[(p(2, 1), 1)]);
        let got = f.mul_unit(1, Sign::Minus).unwrap();
        assert_eq!(got, el(&c, &[(p(1, 1), 1), (p(2, 1), -1)]));

        let z = ctx(2, RingSpec::Integers);
        let x_inv = el(&z, &[(Power(-1), 1)]);
        assert_eq!(x_inv.mul_unit(0, Sign::Plus).unwrap(), z.one());

        // x^2/(1+x) = x - 1 + (1+x)^-1, since (x-1)(1+x) + 1 = x^2
        let x2 = el(&z, &[(Power(2), 1)]);
        let got = x2.mul_unit(1, Sign::Minus).unwrap();
        assert_eq!(got, el(&z, &[(Power(1), 1), (Power(0), -1), (p(1, 1), 1)]));
        assert_eq!(got.mul_unit(1, Sign::Plus).unwrap(), x2);
    }

    #[test]
    fn mul_shift_examples() {
        let z = ctx(2, RingSpec::Integers);
        let f = el(&z, &[(Power(3), 2), (p(1, 2), -1)]);
        assert_eq!(f.mul_shift(&HeightVector::zero(2)).unwrap(), f);
        // (1+x)/x = x^-1 + 1
        let got = z.one().mul_shift(&HeightVector(vec![-1, 1])).unwrap();
        assert_eq!(got, el(&z, &[(Power(-1), 1), (Power(0), 1)]));
        assert_eq!(got.mul_shift(&HeightVector(vec![1, -1])).unwrap(), z.one());
    }

    #[test]
    fn coefficient_corollaries() {
        // with k_* = 0 the *-pole coefficients of the monomial vanish
        let c = ctx(3, RingSpec::modulo(7));
        let mono = c.one().mul_shift(&HeightVector(vec![-2, 0, 3])).unwrap();
        for j in 1..6 {
            assert!(mono.coeff_pole(1, j).is_zero());
        }
        // x^-1 (1+x)^2 (2+x)^-3: coefficient of x^-1 is 1^2 · 2^-3
        let mono = c.one().mul_shift(&HeightVector(vec![-1, 2, -3])).unwrap();
        let expected = RingSpec::modulo(7).elem(2).inv().unwrap();
        let expected = expected.mul(&expected).unwrap().mul(&expected).unwrap();
        assert_eq!(mono.coeff_pole(0, 1), expected);
        assert_eq!(mono.coeff_pole(0, 1), mono.coeff_x(-1));
    }

    #[test]
    fn seq_a_rank_one() {
        let c = ctx(1, RingSpec::modulo(2));
        let f = el(&c, &[(Power(-4), 1), (Power(0), 1), (Power(1), 1), (Power(3), 1)]);
        let h = HeightVector(vec![5]);
        assert!(f.seq_a(&h, Coordinate::Infinity).unwrap().is_empty());
        assert_eq!(
            f.seq_a(&h, Coordinate::Offset(0)).unwrap(),
            big_seq(&[0, 1, 0, 1, 1, 0, 0, 0, 1])
        );
        assert!(c
            .zero()
            .seq_a(&h, Coordinate::Offset(0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn from_sequences_rank_two_element() {
        let z = ctx(2, RingSpec::Integers);
        let f = z
            .from_sequences(
                &big_seq(&[3, 1, 0, 2]),
                &[big_seq(&[11, 3, 1]), big_seq(&[-6, -4, -1, -1])],
            )
            .unwrap();
        let expected = el(
            &z,
            &[
                (Power(0), 3),
                (Power(1), 1),
                (Power(3), 2),
                (Power(-1), 11),
                (Power(-2), 3),
                (Power(-3), 1),
                (p(1, 1), -6),
                (p(1, 2), -4),
                (p(1, 3), -1),
                (p(1, 4), -1),
            ],
        );
        assert_eq!(f, expected);
        let h0 = HeightVector::zero(2);
        assert_eq!(f.seq_a(&h0, Coordinate::Infinity).unwrap(), big_seq(&[3, 1, 0, 2]));
        assert_eq!(f.seq_a(&h0, Coordinate::Offset(0)).unwrap(), big_seq(&[11, 3, 1]));
        assert_eq!(
            f.seq_a(&h0, Coordinate::Offset(1)).unwrap(),
            big_seq(&[-6, -4, -1, -1])
        );
        assert!(z.from_sequences(&[], &[]).unwrap().is_zero());
    }

    #[test]
    fn context_requires_units() {
        assert!(matches!(
            AnContext::new(3, RingSpec::modulo(2)),
            Err(Error::NotInvertible { .. })
        ));
        assert!(AnContext::new(3, RingSpec::modulo(3)).is_ok());
        assert!(AnContext::new(2, RingSpec::Integers).is_ok());
        assert!(AnContext::new(3, RingSpec::Integers).is_err());
        match AnContext::new(4, RingSpec::modulo(6)) {
            Err(Error::NotInvertible { value, .. }) => assert_eq!(value, BigInt::from(2)),
            other => panic!("{other:?}"),
        }
    }

    fn arb_basis(n: usize) -> impl Strategy<Value = Basis> {
        prop_oneof![
            (-6i64..=6).prop_map(Power),
            ((1..n.max(2)), 1u64..=4).prop_map(move |(o, k)| if n > 1 {
                Basis::pole(o, k)
            } else {
                Power(-(k as i64))
            }),
        ]
    }

    fn arb_element(c: AnContext) -> impl Strategy<Value = AnElement> {
        proptest::collection::vec((arb_basis(c.n()), -9i64..=9), 0..=8)
            .prop_map(move |ts| el(&c, &ts))
    }

    fn contexts() -> Vec<AnContext> {
        vec![
            ctx(1, RingSpec::Integers),
            ctx(2, RingSpec::Integers),
            ctx(3, RingSpec::modulo(1_000_003)),
            ctx(4, RingSpec::modulo(1_000_003)),
        ]
    }

    fn arb_ctx_element() -> impl Strategy<Value = AnElement> {
        proptest::sample::select(contexts()).prop_flat_map(arb_element)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn mul_unit_matches_evaluation(f in arb_ctx_element(), i in 0usize..4, minus in any::<bool>()) {
            let i = i % f.ctx().n();
            let sign = if minus { Sign::Minus } else { Sign::Plus };
            let g = f.mul_unit(i, sign).unwrap();
            assert_eval_eq(&g, |t| {
                let u = (t + i as i64) % Q;
                let factor = if minus { inv_q(u) } else { u };
                eval(&f, t) * factor % Q
            });
        }

        #[test]
        fn mul_unit_inverts(f in arb_ctx_element(), i in 0usize..4) {
            let i = i % f.ctx().n();
            let up = f.mul_unit(i, Sign::Plus).unwrap();
            prop_assert_eq!(up.mul_unit(i, Sign::Minus).unwrap(), f.clone());
            let down = f.mul_unit(i, Sign::Minus).unwrap();
            prop_assert_eq!(down.mul_unit(i, Sign::Plus).unwrap(), f);
        }

        #[test]
        fn clearing_denominators(f in arb_ctx_element()) {
            let n = f.ctx().n();
            let mut k = vec![0i64; n];
            for (b, _) in f.terms() {
                match *b {
                    Power(j) if j < 0 => k[0] = k[0].max(-j),
                    Pole { offset, order } => k[offset] = k[offset].max(order as i64),
                    _ => {}
                }
            }
            let k = HeightVector(k);
            let cleared = f.mul_shift(&k).unwrap();
            for (b, _) in cleared.terms() {
                prop_assert!(matches!(b, Power(j) if *j >= 0), "{} left in {}", b, cleared);
            }
            prop_assert_eq!(cleared.mul_shift(&k.neg()).unwrap(), f);
        }

        #[test]
        fn shift_coefficients(f in arb_ctx_element(), star in 0usize..4) {
            let xf = f.mul_unit(0, Sign::Plus).unwrap();
            for j in 0..12 {
                prop_assert_eq!(f.coeff_x(j), xf.coeff_x(j + 1));
            }
            let star = star % f.ctx().n();
            let sf = f.mul_unit(star, Sign::Plus).unwrap();
            for j in 1..12 {
                prop_assert_eq!(sf.coeff_pole(star, j), f.coeff_pole(star, j + 1));
            }
        }

        #[test]
        fn first_bijection_depends_on_star_sequence_only(
            f in arb_ctx_element(),
            g_seed in proptest::collection::vec((-3i64..=3, 1u64..=3, -5i64..=5), 0..5),
            star in 0usize..4,
            q in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let c = *f.ctx();
            let n = c.n();
            let star = star % n;
            let mut q: Vec<i64> = q[..n].to_vec();
            q[star] = 0;
            let q = HeightVector(q);
            // g shares f's star-pole sequence and differs elsewhere
            let extra: Vec<(Basis, BigInt)> = g_seed
                .iter()
                .filter_map(|&(o, k, v)| {
                    let o = o.rem_euclid(n as i64 + 1) as usize;
                    let b = if o == n { Power(k as i64) } else { Basis::pole(o, k) };
                    (o == n || o != star).then(|| (b, BigInt::from(v)))
                })
                .collect();
            let g = f.add(&c.from_terms(extra).unwrap()).unwrap();
            let fs = f.mul_shift(&q).unwrap().sequence(Coordinate::Offset(star));
            let gs = g.mul_shift(&q).unwrap().sequence(Coordinate::Offset(star));
            prop_assert_eq!(fs.clone(), gs);
            // and the induced map is inverted by shifting back
            let back = c.single_sequence_element(Coordinate::Offset(star), &fs)
                .mul_shift(&q.neg()).unwrap().sequence(Coordinate::Offset(star));
            prop_assert_eq!(back, f.sequence(Coordinate::Offset(star)));
        }

        #[test]
        fn second_bijection_depends_on_power_sequence_only(
            f in arb_ctx_element(),
            poles in proptest::collection::vec((0usize..4, 1u64..=3, -5i64..=5), 0..5),
            q in proptest::collection::vec(-3i64..=3, 4),
        ) {
            let c = *f.ctx();
            let n = c.n();
            let mut q: Vec<i64> = q[..n].to_vec();
            let s: i64 = q.iter().sum();
            q[0] -= s;
            let q = HeightVector(q);
            let extra: Vec<(Basis, BigInt)> = poles
                .iter()
                .map(|&(o, k, v)| (Basis::pole(o % n, k), BigInt::from(v)))
                .collect();
            let g = f.add(&c.from_terms(extra).unwrap()).unwrap();
            let fs = f.mul_shift(&q).unwrap().sequence(Coordinate::Infinity);
            let gs = g.mul_shift(&q).unwrap().sequence(Coordinate::Infinity);
            prop_assert_eq!(fs.clone(), gs);
            let back = c.single_sequence_element(Coordinate::Infinity, &fs)
                .mul_shift(&q.neg()).unwrap().sequence(Coordinate::Infinity);
            prop_assert_eq!(back, f.sequence(Coordinate::Infinity));
        }

        #[test]
        fn monomial_power_coefficients(k in proptest::collection::vec(-4i64..=4, 2)) {
            let c = ctx(2, RingSpec::Integers);
            let kk = HeightVector(k.clone());
            let mono = c.one().mul_shift(&kk).unwrap();
            if kk.h_inf() > 0 {
                prop_assert!(mono.sequence(Coordinate::Infinity).is_empty());
            }
            // with Σ k_i = 0 the inverse monomial has x^0 coefficient 1 and nothing above
            let mut bal = k.clone();
            bal[0] = -bal[1];
            let inv = c.one().mul_shift(&HeightVector(bal).neg()).unwrap();
            prop_assert_eq!(inv.sequence(Coordinate::Infinity), big_seq(&[1]));
        }

        #[test]
        fn sequences_round_trip(
            bi in proptest::collection::vec(-5i64..=5, 0..6),
            b0 in proptest::collection::vec(-5i64..=5, 0..6),
            b1 in proptest::collection::vec(-5i64..=5, 0..6),
        ) {
            let c = ctx(2, RingSpec::Integers);
            let (bi, b0, b1) = (trim(big_seq(&bi)), trim(big_seq(&b0)), trim(big_seq(&b1)));
            let f = c.from_sequences(&bi, &[b0.clone(), b1.clone()]).unwrap();
            let h = HeightVector::zero(2);
            prop_assert_eq!(f.seq_a(&h, Coordinate::Infinity).unwrap(), bi);
            prop_assert_eq!(f.seq_a(&h, Coordinate::Offset(0)).unwrap(), b0);
            prop_assert_eq!(f.seq_a(&h, Coordinate::Offset(1)).unwrap(), b1);
        }
    }
}
