//! The groups `Γ_n(R) = A_n(R) ⋊ Z^n`, words over their alphabets, relator
//! families, and the rank-2 normal form.
//!
//! The product is `(f, h)(f', h') = (f + f'·h, h + h')` where `f'·h` is
//! multiplication by `x^{h_0} (1+x)^{h_1} ⋯ (n-1+x)^{h_{n-1}}`. Words are read
//! left to right, each letter multiplying on the right.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::an_ring::{AnContext, AnElement, Basis, HeightVector};
use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// `Γ_n(R)` for a fixed rank and ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaGroup {
    ctx: AnContext,
}

/// An element `(f, h)` of `Γ_n(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub f: AnElement,
    pub h: HeightVector,
}

impl GammaGroup {
    /// Fails with [`Error::NotInvertible`] unless `2, ..., n-1` are units in `ring`.
    pub fn new(n: usize, ring: RingSpec) -> Result<Self> {
        Ok(GammaGroup {
            ctx: AnContext::new(n, ring)?,
        })
    }

    pub fn from_context(ctx: AnContext) -> Self {
        GammaGroup { ctx }
    }

    pub fn ctx(&self) -> &AnContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn ring(&self) -> RingSpec {
        self.ctx.ring()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            f: self.ctx.zero(),
            h: HeightVector::zero(self.n()),
        }
    }

    /// `(f, h)` after checking that `f` lives in this group's ring.
    pub fn element(&self, f: AnElement, h: HeightVector) -> Result<GroupElement> {
        if f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch(format!(
                "element of A_{}({}) in Γ_{}({})",
                f.ctx().n(),
                f.ctx().ring(),
                self.n(),
                self.ring()
            )));
        }
        if h.len() != self.n() {
            return Err(Error::ContextMismatch(format!(
                "height vector of length {} in Γ_{}",
                h.len(),
                self.n()
            )));
        }
        Ok(GroupElement { f, h })
    }

    /// `(r, e_j)`.
    pub fn pair(&self, r: &BigInt, j: usize) -> Result<GroupElement> {
        self.check_index(j)?;
        Ok(GroupElement {
            f: self.ctx.constant(r),
            h: HeightVector::unit(self.n(), j),
        })
    }

    /// `(r, e_j)(r, e_k)^-1 = (r(k-j)(k+x)^-1, e_j - e_k)`.
    pub fn diff(&self, r: &BigInt, j: usize, k: usize) -> Result<GroupElement> {
        self.check_index(j)?;
        self.check_index(k)?;
        if j >= k {
            return Err(Error::InvalidToken {
                token: Letter::Diff {
                    r: 0,
                    j: j as i64,
                    k: k as i64,
                }
                .to_string(),
                reason: "indices must satisfy j < k".into(),
            });
        }
        self.pair(r, j)?.mul(&self.pair(r, k)?.inv())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: j,
                rank: self.n(),
            });
        }
        Ok(())
    }

    fn need_rank(&self, letter: &Letter, min: usize) -> Result<()> {
        if self.n() < min {
            return Err(Error::InvalidToken {
                token: letter.to_string(),
                reason: format!("needs rank at least {min}, group has rank {}", self.n()),
            });
        }
        Ok(())
    }

    /// The group element a letter stands for.
    pub fn generator(&self, letter: &Letter) -> Result<GroupElement> {
        let big = BigInt::from;
        match *letter {
            Letter::Pair { r, j } => self.pair(&big(r), index(letter, j)?),
            Letter::Diff { r, j, k } => self.diff(&big(r), index(letter, j)?, index(letter, k)?),
            Letter::A => Ok(GroupElement {
                f: self.ctx.one(),
                h: HeightVector::zero(self.n()),
            }),
            Letter::T => self.pair(&BigInt::zero(), 0),
            Letter::S => {
                self.need_rank(letter, 2)?;
                self.pair(&BigInt::zero(), 1)
            }
            Letter::Mu => self.generator(&Letter::S),
            Letter::Nu => self.generator(&Letter::T)?.inv().mul(&self.generator(&Letter::S)?),
            Letter::C => self.generator(&Letter::A)?.mul(&self.generator(&Letter::T)?),
            Letter::D => self.generator(&Letter::T)?.inv().mul(&self.generator(&Letter::A)?),
            Letter::Lambda(i) => self.pair(&big(i), 0),
            Letter::MuI(i) => {
                self.need_rank(letter, 2)?;
                self.pair(&big(i), 1)
            }
            Letter::NuI(i) => {
                self.need_rank(letter, 2)?;
                self.diff(&big(i), 0, 1)
            }
        }
    }

    /// `letter^exp`.
    pub fn syllable(&self, s: &Syllable) -> Result<GroupElement> {
        let g = self.generator(&s.letter)?;
        let base = if s.exp < 0 { g.inv() } else { g };
        let mut acc = self.identity();
        for _ in 0..s.exp.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Left-to-right product of the word's letters.
    pub fn eval_word(&self, word: &Word) -> Result<GroupElement> {
        let mut acc = self.identity();
        for s in &word.0 {
            acc = acc.mul(&self.syllable(s)?)?;
        }
        Ok(acc)
    }

    /// Like [`GammaGroup::eval_word`], rejecting letters outside `alphabet`.
    pub fn eval_word_in(&self, alphabet: Alphabet, word: &Word) -> Result<GroupElement> {
        for s in &word.0 {
            if !alphabet.admits(&s.letter) {
                return Err(Error::InvalidToken {
                    token: s.letter.to_string(),
                    reason: format!("not in the {alphabet} alphabet"),
                });
            }
        }
        self.eval_word(word)
    }

    pub fn parse_and_eval(&self, text: &str) -> Result<GroupElement> {
        self.eval_word(&text.parse()?)
    }

    /// The generating set `(r, e_j)` and `(r, e_j)(r, e_k)^-1` for `r` in
    /// `ring.enumerate(coeff_bound)`, each with its inverse.
    pub fn generating_letters(&self, coeff_bound: u64) -> Vec<Syllable> {
        let n = self.n() as i64;
        let mut out = Vec::new();
        for r in self.ring().enumerate_values(coeff_bound) {
            let r: i64 = (&r).try_into().expect("enumerated ring values fit in i64");
            for j in 0..n {
                out.push(Syllable::new(Letter::Pair { r, j }, 1));
                out.push(Syllable::new(Letter::Pair { r, j }, -1));
                for k in j + 1..n {
                    out.push(Syllable::new(Letter::Diff { r, j, k }, 1));
                    out.push(Syllable::new(Letter::Diff { r, j, k }, -1));
                }
            }
        }
        out
    }

    /// Recognizes `delta` as a generator of the main generating set or the
    /// inverse of one, returning it with its canonical coefficient.
    pub fn identify_generator(&self, delta: &GroupElement) -> Option<Syllable> {
        let n = self.n();
        let ring = self.ring();
        let as_int = |v: BigInt| -> Option<i64> { (&v).try_into().ok() };
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, &e) in delta.h.0.iter().enumerate() {
            match e {
                0 => {}
                1 => plus.push(i),
                -1 => minus.push(i),
                _ => return None,
            }
        }
        let constant = |g: &GroupElement| -> Option<BigInt> {
            match g.f.num_terms() {
                0 => Some(BigInt::zero()),
                1 => {
                    let c = g.f.coeff(Basis::Power(0));
                    (!c.is_zero()).then_some(c)
                }
                _ => None,
            }
        };
        match (plus.as_slice(), minus.as_slice()) {
            ([j], []) => {
                let r = as_int(constant(delta)?)?;
                Some(Syllable::new(Letter::Pair { r, j: *j as i64 }, 1))
            }
            ([], [j]) => {
                let r = as_int(constant(&delta.inv())?)?;
                Some(Syllable::new(Letter::Pair { r, j: *j as i64 }, -1))
            }
            ([a], [b]) => {
                let (g, exp, j, k) = if a < b {
                    (delta.clone(), 1, *a, *b)
                } else {
                    (delta.inv(), -1, *b, *a)
                };
                debug_assert!(k < n);
                let r = match g.f.num_terms() {
                    0 => BigInt::zero(),
                    1 => {
                        let c = g.f.coeff(Basis::pole(k, 1));
                        if c.is_zero() {
                            return None;
                        }
                        let inv = ring.inv_int((k - j) as i64).ok()?;
                        ring.mul_raw(&c, &inv)
                    }
                    _ => return None,
                };
                let candidate = self.diff(&r, j, k).ok()?;
                if candidate != g {
                    return None;
                }
                let r = as_int(r)?;
                Some(Syllable::new(
                    Letter::Diff {
                        r,
                        j: j as i64,
                        k: k as i64,
                    },
                    exp,
                ))
            }
            _ => None,
        }
    }

    /// A random element with at most `terms` basis terms, coefficients in
    /// `[-coeff, coeff]`, pole orders and `|x|`-exponents up to `spread`, and
    /// heights in `[-height, height]`.
    pub fn random_element<G: Rng + ?Sized>(
        &self,
        rng: &mut G,
        terms: usize,
        coeff: i64,
        spread: i64,
        height: i64,
    ) -> GroupElement {
        let n = self.n();
        let count = rng.gen_range(0..=terms);
        let mut pairs = Vec::with_capacity(count);
        for _ in 0..count {
            let offset = rng.gen_range(0..=n);
            let b = if offset == n {
                Basis::Power(rng.gen_range(0..=spread))
            } else {
                Basis::pole(offset, rng.gen_range(1..=spread.max(1)) as u64)
            };
            pairs.push((b, BigInt::from(rng.gen_range(-coeff..=coeff))));
        }
        let f = self
            .ctx
            .from_terms(pairs)
            .expect("offsets are below the rank");
        let h = HeightVector((0..n).map(|_| rng.gen_range(-height..=height)).collect());
        GroupElement { f, h }
    }

    /// The relator words of a presentation, free parameters ranging over
    /// `[-bound, bound]`.
    pub fn relators(&self, pres: PresentationId, bound: u64) -> Result<Vec<Word>> {
        pres.check(self)?;
        let b = bound as i64;
        let range = || -b..=b;
        let w = |syllables: Vec<(Letter, i64)>| Word::from_pairs(syllables);
        let mut out = Vec::new();
        use Letter::*;
        match pres {
            PresentationId::Gamma1Commutators => {
                for k in range() {
                    out.push(w(vec![
                        (A, -1),
                        (T, k),
                        (A, -1),
                        (T, -k),
                        (A, 1),
                        (T, k),
                        (A, 1),
                        (T, -k),
                    ]));
                }
            }
            PresentationId::Gamma1LambdaMu => {
                let (l, m) = (Lambda(0), Lambda(1));
                for k in range() {
                    let mut s = vec![(l, k)];
                    let block = if k >= 0 {
                        vec![(l, -1), (m, 1), (l, -1)]
                    } else {
                        vec![(l, 1), (m, -1), (l, 1)]
                    };
                    for _ in 0..k.abs() {
                        s.extend(block.iter().copied());
                    }
                    s.push((l, k));
                    s.push((m, -k));
                    out.push(w(s));
                }
            }
            PresentationId::Gamma1Lambda => {
                for i in range() {
                    for j in range() {
                        for k in range() {
                            out.push(lambda_relator(i, j, k));
                        }
                    }
                }
            }
            PresentationId::Gamma1Two => {
                let (l, m) = (Lambda(0), Lambda(1));
                for k in range() {
                    out.push(w(vec![(l, k), (m, -k), (l, k), (m, -k)]));
                }
            }
            PresentationId::Gamma1Mod => {
                let m = self.ring().modulus().expect("checked") as i64;
                for i in 0..m {
                    for j in 0..m {
                        for k in range() {
                            out.push(lambda_relator(i, j, k));
                            let mut s = Vec::new();
                            for _ in 0..m {
                                s.push((Lambda(i), k));
                                s.push((Lambda(j), -k));
                            }
                            out.push(w(s));
                        }
                    }
                }
            }
            PresentationId::Gamma2Ats => {
                out.push(w(vec![(A, -1), (T, 1), (A, -1), (T, -1), (A, 1), (T, 1), (A, 1), (T, -1)]));
                out.push(w(vec![(S, -1), (T, -1), (S, 1), (T, 1)]));
                out.push(w(vec![(S, 1), (A, 1), (S, -1), (T, 1), (A, -1), (T, -1), (A, -1)]));
            }
            PresentationId::Gamma2MuNuCD => {
                out.push(w(vec![(Mu, -1), (Nu, -1), (Mu, 1), (Nu, 1)]));
                out.push(w(vec![(Mu, -1), (C, 2), (Nu, 1), (C, -1)]));
                out.push(w(vec![(Nu, -1), (D, 2), (Mu, 1), (D, -1)]));
            }
            PresentationId::Gamma2Indexed => {
                for i in range() {
                    for j in range() {
                        out.push(w(vec![(Lambda(i + j), 1), (NuI(j), -1), (MuI(i), -1)]));
                    }
                }
                for i in range() {
                    out.push(w(vec![(Lambda(i), 1), (MuI(i), -1), (NuI(i), -1)]));
                }
            }
            PresentationId::CayleyComplex => {
                for i in range() {
                    for j in range() {
                        out.push(w(vec![(Lambda(i + j), 1), (NuI(j), -1), (MuI(i), -1)]));
                    }
                }
                for i in range() {
                    out.push(w(vec![(Lambda(i), -1), (NuI(i), 1), (MuI(i), 1)]));
                }
            }
        }
        Ok(out)
    }

    /// The unique word `Π t^k a^m t^-k · Π s^l a^n s^-l · s^{h_1} t^{h_0}`
    /// representing `g`, with `k` ascending and `l < 0` ascending. Ranks 1 and 2 only.
    pub fn normal_form(&self, g: &GroupElement) -> Result<Word> {
        if self.n() > 2 {
            return Err(Error::Unsupported(format!(
                "normal forms are only defined for rank 1 and 2, not {}",
                self.n()
            )));
        }
        let mut out = Vec::new();
        for (k, m) in g.f.laurent() {
            let m: i64 = m.try_into().map_err(|_| overflow())?;
            push_conjugate(&mut out, Letter::T, k, m);
        }
        if self.n() == 2 {
            let mut poles: Vec<(i64, i64)> = Vec::new();
            for (order, c) in g.f.poles(1) {
                poles.push((-(order as i64), c.try_into().map_err(|_| overflow())?));
            }
            poles.sort();
            for (l, c) in poles {
                push_conjugate(&mut out, Letter::S, l, c);
            }
            if g.h.0[1] != 0 {
                out.push(Syllable::new(Letter::S, g.h.0[1]));
            }
        }
        if g.h.0[0] != 0 {
            out.push(Syllable::new(Letter::T, g.h.0[0]));
        }
        Ok(Word(out))
    }
}

fn overflow() -> Error {
    Error::Unsupported("normal-form exponent does not fit in 64 bits".into())
}

fn push_conjugate(out: &mut Vec<Syllable>, by: Letter, k: i64, m: i64) {
    if k != 0 {
        out.push(Syllable::new(by, k));
    }
    out.push(Syllable::new(Letter::A, m));
    if k != 0 {
        out.push(Syllable::new(by, -k));
    }
}

/// `λ_i^k λ_j^-k λ_{-i}^k λ_{-j}^-k`.
fn lambda_relator(i: i64, j: i64, k: i64) -> Word {
    use Letter::Lambda;
    Word::from_pairs(vec![
        (Lambda(i), k),
        (Lambda(j), -k),
        (Lambda(-i), k),
        (Lambda(-j), -k),
    ])
}

fn index(letter: &Letter, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidToken {
        token: letter.to_string(),
        reason: "indices must be nonnegative".into(),
    })
}

impl GroupElement {
    fn check_same(&self, other: &GroupElement) -> Result<()> {
        if self.f.ctx() != other.f.ctx() {
            return Err(Error::ContextMismatch(format!(
                "Γ_{}({}) vs Γ_{}({})",
                self.f.ctx().n(),
                self.f.ctx().ring(),
                other.f.ctx().n(),
                other.f.ctx().ring()
            )));
        }
        Ok(())
    }

    /// `(f + f'·h, h + h')`.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_same(other)?;
        let shifted = other.f.mul_shift(&self.h)?;
        Ok(GroupElement {
            f: self.f.add(&shifted)?,
            h: self.h.add(&other.h),
        })
    }

    /// `(-f·(-h), -h)`.
    pub fn inv(&self) -> GroupElement {
        let minus_h = self.h.neg();
        let f = self
            .f
            .mul_shift(&minus_h)
            .expect("height vector matches its own context")
            .neg();
        GroupElement { f, h: minus_h }
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_zero() && self.h.is_zero()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.f, self.h.0)
    }
}

/// A single letter, before exponentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `g[r,j]`: `(r, e_j)`.
    Pair { r: i64, j: i64 },
    /// `g[r,j,k]`: `(r, e_j)(r, e_k)^-1`, `j < k`.
    Diff { r: i64, j: i64, k: i64 },
    A,
    T,
    S,
    Mu,
    Nu,
    C,
    D,
    /// `l[i] = a^i t`.
    Lambda(i64),
    /// `m[i] = a^i s`.
    MuI(i64),
    /// `n[i] = l[i] m[i]^-1`.
    NuI(i64),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Pair { r, j } => write!(f, "g[{r},{j}]"),
            Letter::Diff { r, j, k } => write!(f, "g[{r},{j},{k}]"),
            Letter::A => write!(f, "a"),
            Letter::T => write!(f, "t"),
            Letter::S => write!(f, "s"),
            Letter::Mu => write!(f, "mu"),
            Letter::Nu => write!(f, "nu"),
            Letter::C => write!(f, "c"),
            Letter::D => write!(f, "d"),
            Letter::Lambda(i) => write!(f, "l[{i}]"),
            Letter::MuI(i) => write!(f, "m[{i}]"),
            Letter::NuI(i) => write!(f, "n[{i}]"),
        }
    }
}

/// A letter raised to a nonzero integer power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: i64,
}

impl Syllable {
    pub fn new(letter: Letter, exp: i64) -> Self {
        Syllable { letter, exp }
    }

    pub fn inverse(&self) -> Self {
        Syllable::new(self.letter, -self.exp)
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.exp)
        }
    }
}

/// A word: a sequence of syllables, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Syllable>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Drops zero exponents.
    pub fn from_pairs(pairs: Vec<(Letter, i64)>) -> Self {
        Word(
            pairs
                .into_iter()
                .filter(|(_, e)| *e != 0)
                .map(|(l, e)| Syllable::new(l, e))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Syllable::inverse).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|s| s.exp.unsigned_abs()).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated tokens `a t s mu nu c d l[i] m[i] n[i] g[r,j]
    /// g[r,j,k]`, each optionally followed by `^<int>`.
    fn from_str(text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos].is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let syllable = parse_token(&text[start..pos], start)?;
            if syllable.exp != 0 {
                out.push(syllable);
            }
        }
        Ok(Word(out))
    }
}

fn parse_token(token: &str, offset: usize) -> Result<Syllable> {
    let (head, exp) = match token.find('^') {
        Some(p) => {
            let e = &token[p + 1..];
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::parse(offset + p + 1, format!("bad exponent `{e}`")))?;
            (&token[..p], exp)
        }
        None => (token, 1),
    };
    let letter = match head {
        "a" => Letter::A,
        "t" => Letter::T,
        "s" => Letter::S,
        "mu" => Letter::Mu,
        "nu" => Letter::Nu,
        "c" => Letter::C,
        "d" => Letter::D,
        _ => {
            let open = head
                .find('[')
                .ok_or_else(|| Error::parse(offset, format!("unknown letter `{head}`")))?;
            if !head.ends_with(']') {
                return Err(Error::parse(offset + head.len(), "expected `]`"));
            }
            let name = &head[..open];
            let args: Vec<i64> = head[open + 1..head.len() - 1]
                .split(',')
                .scan(offset + open + 1, |at, a| {
                    let here = *at;
                    *at += a.len() + 1;
                    Some(
                        a.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::parse(here, format!("bad index `{a}`"))),
                    )
                })
                .collect::<Result<_>>()?;
            match (name, args.as_slice()) {
                ("l", [i]) => Letter::Lambda(*i),
                ("m", [i]) => Letter::MuI(*i),
                ("n", [i]) => Letter::NuI(*i),
                ("g", [r, j]) => Letter::Pair { r: *r, j: *j },
                ("g", [r, j, k]) => Letter::Diff {
                    r: *r,
                    j: *j,
                    k: *k,
                },
                ("l" | "m" | "n" | "g", _) => {
                    return Err(Error::parse(
                        offset + open,
                        format!("wrong number of indices for `{name}`"),
                    ))
                }
                _ => return Err(Error::parse(offset, format!("unknown letter `{name}`"))),
            }
        }
    };
    Ok(Syllable::new(letter, exp))
}

/// Families of letters that words may be restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `g[r,j]` and `g[r,j,k]`.
    Generators,
    /// `a`, `t`, `s`.
    Lamplighter,
    /// `mu`, `nu`, `c`, `d`.
    MuNuCD,
    /// `l[i]`, `m[i]`, `n[i]`.
    Indexed,
    Any,
}

impl Alphabet {
    pub fn admits(&self, letter: &Letter) -> bool {
        use Letter::*;
        match self {
            Alphabet::Generators => matches!(letter, Pair { .. } | Diff { .. }),
            Alphabet::Lamplighter => matches!(letter, A | T | S),
            Alphabet::MuNuCD => matches!(letter, Mu | Nu | C | D),
            Alphabet::Indexed => matches!(letter, Lambda(_) | MuI(_) | NuI(_)),
            Alphabet::Any => true,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Generators => "generators",
            Alphabet::Lamplighter => "a/s/t",
            Alphabet::MuNuCD => "mu/nu/c/d",
            Alphabet::Indexed => "l/m/n",
            Alphabet::Any => "any",
        })
    }
}

/// The presentations whose relators can be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationId {
    /// Rank 1: `[a, t^k a t^-k]`.
    Gamma1Commutators,
    /// Rank 1: `λ^k (λ^-1 μ λ^-1)^k λ^k μ^-k` with `λ = l[0]`, `μ = l[1]`.
    Gamma1LambdaMu,
    /// Rank 1: `λ_i^k λ_j^-k λ_{-i}^k λ_{-j}^-k`.
    Gamma1Lambda,
    /// Rank 1 over `Z/2`: `(λ^k μ^-k)^2`.
    Gamma1Two,
    /// Rank 1 over `Z/m`: the `λ_i` relators with `i, j` in `0..m` plus `(λ_i^k λ_j^-k)^m`.
    Gamma1Mod,
    /// Rank 2: `[a, a^t]`, `[s, t]`, `a^s (a a^t)^-1`.
    Gamma2Ats,
    /// Rank 2: `[μ, ν]`, `μ^-1 c^2 ν c^-1`, `ν^-1 d^2 μ d^-1`.
    Gamma2MuNuCD,
    /// Rank 2: `λ_{i+j} ν_j^-1 μ_i^-1` and `λ_i μ_i^-1 ν_i^-1`.
    Gamma2Indexed,
    /// Rank 2: the boundary words of the two triangle types,
    /// `λ_{i+j} ν_j^-1 μ_i^-1` and `λ_i^-1 ν_i μ_i`.
    CayleyComplex,
}

impl PresentationId {
    pub const ALL: [PresentationId; 9] = [
        PresentationId::Gamma1Commutators,
        PresentationId::Gamma1LambdaMu,
        PresentationId::Gamma1Lambda,
        PresentationId::Gamma1Two,
        PresentationId::Gamma1Mod,
        PresentationId::Gamma2Ats,
        PresentationId::Gamma2MuNuCD,
        PresentationId::Gamma2Indexed,
        PresentationId::CayleyComplex,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PresentationId::Gamma1Commutators => "g1-i",
            PresentationId::Gamma1LambdaMu => "g1-ii",
            PresentationId::Gamma1Lambda => "g1-iii",
            PresentationId::Gamma1Two => "g1-2",
            PresentationId::Gamma1Mod => "g1-mod",
            PresentationId::Gamma2Ats => "g2-i",
            PresentationId::Gamma2MuNuCD => "g2-ii",
            PresentationId::Gamma2Indexed => "g2-iii",
            PresentationId::CayleyComplex => "cayley-complex",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            PresentationId::Gamma1Commutators
            | PresentationId::Gamma1LambdaMu
            | PresentationId::Gamma1Lambda
            | PresentationId::Gamma1Two
            | PresentationId::Gamma1Mod => 1,
            _ => 2,
        }
    }

    /// Resolves a name; the short forms `i`, `ii`, `iii` pick the family for rank `n`.
    pub fn resolve(name: &str, n: usize) -> Result<PresentationId> {
        let full = match (name, n) {
            ("i" | "ii" | "iii", 1) => format!("g1-{name}"),
            ("i" | "ii" | "iii", 2) => format!("g2-{name}"),
            ("2", _) => "g1-2".into(),
            ("mod", _) => "g1-mod".into(),
            ("complex", _) => "cayley-complex".into(),
            _ => name.to_string(),
        };
        PresentationId::ALL
            .into_iter()
            .find(|p| p.name() == full)
            .ok_or_else(|| Error::Config(format!("unknown presentation `{name}` for rank {n}")))
    }

    /// The presentations that apply to `group`.
    pub fn applicable(group: &GammaGroup) -> Vec<PresentationId> {
        PresentationId::ALL
            .into_iter()
            .filter(|p| p.check(group).is_ok())
            .collect()
    }

    fn check(&self, group: &GammaGroup) -> Result<()> {
        if group.n() != self.rank() {
            return Err(Error::ContextMismatch(format!(
                "presentation {} is for rank {}, group has rank {}",
                self.name(),
                self.rank(),
                group.n()
            )));
        }
        let ring = group.ring();
        match self {
            PresentationId::Gamma1Two if !ring.reduce(BigInt::from(2)).is_zero() => {
                Err(Error::ContextMismatch(format!(
                    "presentation g1-2 needs 2 = 0, ring is {ring}"
                )))
            }
            PresentationId::Gamma1Mod if ring.modulus().is_none_or(|m| m < 2) => Err(
                Error::ContextMismatch(format!("presentation g1-mod needs Z/m with m >= 2, ring is {ring}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PresentationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
