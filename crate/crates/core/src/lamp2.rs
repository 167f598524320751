//! The rank-2 board: elements of `A_2(R)` as finitely supported
//! assignments `Z² → R`, where the entry at `(p, q)` is the coefficient of
//! `x^p (1+x)^q`.
//!
//! Two boards represent the same ring element iff they differ by triangle
//! moves, the board form of `x^p (1+x)^{q+1} = x^p (1+x)^q + x^{p+1} (1+x)^q`.
//! Propagation pushes everything in a half-plane onto one line with such
//! moves and reads off the coefficient sequences used by the vertex map.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::an_ring::{trim, AnContext, AnElement, Basis, Coordinate, HeightVector};
use crate::error::{Error, Result};
use crate::group::{GammaGroup, GroupElement};
use crate::report::Report;
use crate::ring::RingSpec;

pub type Entries = BTreeMap<(i64, i64), BigInt>;

/// A board with a lamplighter position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub ring: RingSpec,
    pub entries: Entries,
    pub pos: (i64, i64),
}

/// `H^∞_m = {p + q ≥ m}`, `H^0_m = {p ≤ m}`, `H^1_m = {q ≤ m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfPlane {
    Infinity(i64),
    Zero(i64),
    One(i64),
}

impl HalfPlane {
    pub fn contains(&self, (p, q): (i64, i64)) -> bool {
        match *self {
            HalfPlane::Infinity(m) => p + q >= m,
            HalfPlane::Zero(m) => p <= m,
            HalfPlane::One(m) => q <= m,
        }
    }

    /// Cell `t` (0-based) of the line at `level` inside the half-plane,
    /// starting from the boundary and moving inward.
    pub fn cell(&self, level: i64, t: i64) -> (i64, i64) {
        match *self {
            HalfPlane::Infinity(m) => (m - level + t, level),
            HalfPlane::Zero(m) => (m - t, level),
            HalfPlane::One(m) => (level, m - t),
        }
    }
}

/// Which closed-form conversion to use: the `∞` and `0` sequences share one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PascalFamily {
    InfinityOrZero,
    One,
}

/// `BtoA` maps the sequences of `f̂` to those of `f = f̂·h`; `AtoB` inverts it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PascalDirection {
    BtoA,
    AtoB,
}

impl Configuration {
    pub fn empty(ring: RingSpec) -> Self {
        Configuration {
            ring,
            entries: Entries::new(),
            pos: (0, 0),
        }
    }

    /// Reduces values and drops zeros.
    pub fn from_entries(ring: RingSpec, entries: impl IntoIterator<Item = ((i64, i64), BigInt)>) -> Self {
        let mut c = Configuration::empty(ring);
        for (at, v) in entries {
            c.add(at, &v);
        }
        c
    }

    pub fn get(&self, at: (i64, i64)) -> BigInt {
        self.entries.get(&at).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, at: (i64, i64), v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(at).or_insert_with(BigInt::zero);
        *slot = self.ring.add_raw(slot, v);
        if slot.is_zero() {
            self.entries.remove(&at);
        }
    }

    fn take(&mut self, at: (i64, i64)) -> BigInt {
        self.entries.remove(&at).unwrap_or_default()
    }

    /// Subtracts `r` at `(i, j+1)` and adds it at `(i, j)` and `(i+1, j)`.
    pub fn triangle_move(&mut self, i: i64, j: i64, r: &BigInt) {
        let neg = self.ring.neg_raw(r);
        self.add((i, j + 1), &neg);
        self.add((i, j), r);
        self.add((i + 1, j), r);
    }

    /// The ring element `Σ v · x^p (1+x)^q`.
    pub fn to_poly(&self, ctx: &AnContext) -> Result<AnElement> {
        check_rank(ctx)?;
        let mut acc = ctx.zero();
        for (&(p, q), v) in &self.entries {
            let term = ctx
                .constant(v)
                .mul_shift(&HeightVector(vec![p, q]))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// The sequence left on the line at `level` after pushing every entry
    /// of the half-plane onto that line, read from the boundary inward.
    /// Entries pushed out of the half-plane are dropped.
    pub fn propagate(&self, hp: HalfPlane, level: i64) -> Vec<BigInt> {
        let mut work = Configuration::from_entries(
            self.ring,
            self.entries
                .iter()
                .filter(|(at, _)| hp.contains(**at))
                .map(|(at, v)| (*at, v.clone())),
        );
        let keep = |w: &mut Configuration, at: (i64, i64), v: &BigInt| {
            if hp.contains(at) {
                w.add(at, v);
            }
        };
        match hp {
            HalfPlane::Infinity(_) | HalfPlane::Zero(_) => {
                // fold rows above the level downward, top row first
                while let Some(&(p, q)) = work.entries.keys().filter(|k| k.1 > level).max_by_key(|k| (k.1, k.0)) {
                    let c = work.take((p, q));
                    keep(&mut work, (p, q - 1), &c);
                    keep(&mut work, (p + 1, q - 1), &c);
                }
                let neg = |w: &Configuration, c: &BigInt| w.ring.neg_raw(c);
                if let HalfPlane::Infinity(_) = hp {
                    // rows below, bottom row first, right to left
                    while let Some(&(p, q)) =
                        work.entries.keys().filter(|k| k.1 < level).min_by_key(|k| (k.1, -k.0))
                    {
                        let c = work.take((p, q));
                        let nc = neg(&work, &c);
                        keep(&mut work, (p - 1, q + 1), &c);
                        keep(&mut work, (p - 1, q), &nc);
                    }
                } else {
                    // rows below, bottom row first, left to right
                    while let Some(&(p, q)) =
                        work.entries.keys().filter(|k| k.1 < level).min_by_key(|k| (k.1, k.0))
                    {
                        let c = work.take((p, q));
                        let nc = neg(&work, &c);
                        keep(&mut work, (p, q + 1), &c);
                        keep(&mut work, (p + 1, q), &nc);
                    }
                }
            }
            HalfPlane::One(_) => {
                // columns left of the level, leftmost first, bottom to top
                while let Some(&(p, q)) = work.entries.keys().filter(|k| k.0 < level).min() {
                    let c = work.take((p, q));
                    let nc = work.ring.neg_raw(&c);
                    keep(&mut work, (p, q + 1), &c);
                    keep(&mut work, (p + 1, q), &nc);
                }
                // columns right of the level, rightmost first
                while let Some(&(p, q)) = work.entries.keys().filter(|k| k.0 > level).max() {
                    let c = work.take((p, q));
                    let nc = work.ring.neg_raw(&c);
                    keep(&mut work, (p - 1, q + 1), &c);
                    keep(&mut work, (p - 1, q), &nc);
                }
            }
        }
        let len = work
            .entries
            .keys()
            .map(|&at| line_index(hp, level, at).expect("only the level line remains") + 1)
            .max()
            .unwrap_or(0);
        trim((0..len as i64).map(|t| work.get(hp.cell(level, t))).collect())
    }

    /// The unique equivalent board supported on
    /// `L_{k,l} = {(i, l)} ∪ {(k, l-1), (k, l-2), ...}`.
    pub fn canonical_on_l(&self, k: i64, l: i64) -> Configuration {
        let inf = HalfPlane::Infinity(k + l);
        let zero = HalfPlane::Zero(k - 1);
        let one = HalfPlane::One(l - 1);
        let mut out = Configuration::empty(self.ring);
        out.pos = self.pos;
        for (hp, level) in [(inf, l), (zero, l), (one, k)] {
            for (t, v) in self.propagate(hp, level).iter().enumerate() {
                out.add(hp.cell(level, t as i64), v);
            }
        }
        out
    }

    /// Sparse listing: one `(i,j): v` line per entry in order, then `pos: (k,l)`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (&(i, j), v) in &self.entries {
            let _ = writeln!(s, "({i},{j}): {v}");
        }
        let _ = writeln!(s, "pos: ({},{})", self.pos.0, self.pos.1);
        s
    }

    /// An aligned matrix over the bounding box of the entries and the
    /// lamplighter, top row = largest `q`; the lamplighter's cell is bracketed.
    pub fn render_grid(&self) -> String {
        let keys = self.entries.keys().copied().chain(std::iter::once(self.pos));
        let (mut p0, mut p1, mut q0, mut q1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for (p, q) in keys {
            p0 = p0.min(p);
            p1 = p1.max(p);
            q0 = q0.min(q);
            q1 = q1.max(q);
        }
        let cell = |at: (i64, i64)| -> String {
            let v = self.get(at).to_string();
            if at == self.pos {
                format!("[{v}]")
            } else {
                v
            }
        };
        let width = (q0..=q1)
            .flat_map(|q| (p0..=p1).map(move |p| (p, q)))
            .map(|at| cell(at).len())
            .chain((p0..=p1).map(|p| p.to_string().len()))
            .max()
            .unwrap_or(1);
        let margin = (q0..=q1).map(|q| q.to_string().len()).max().unwrap_or(1);
        let mut s = String::new();
        for q in (q0..=q1).rev() {
            let _ = write!(s, "{q:>margin$} |");
            for p in p0..=p1 {
                let _ = write!(s, " {:>width$}", cell((p, q)));
            }
            s.push('\n');
        }
        let _ = write!(s, "{:>margin$} +", "");
        for _ in p0..=p1 {
            let _ = write!(s, " {}", "-".repeat(width));
        }
        s.push('\n');
        let _ = write!(s, "{:>margin$}  ", "");
        for p in p0..=p1 {
            let _ = write!(s, " {p:>width$}");
        }
        s.push('\n');
        s
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn line_index(hp: HalfPlane, level: i64, (p, q): (i64, i64)) -> Option<usize> {
    let t = match hp {
        HalfPlane::Infinity(m) if q == level => p - (m - level),
        HalfPlane::Zero(m) if q == level => m - p,
        HalfPlane::One(m) if p == level => m - q,
        _ => return None,
    };
    usize::try_from(t).ok()
}

fn check_rank(ctx: &AnContext) -> Result<()> {
    if ctx.n() != 2 {
        return Err(Error::ContextMismatch(format!(
            "the board model is for rank 2, not {}",
            ctx.n()
        )));
    }
    Ok(())
}

/// Places `x^i` at `(i, 0)` and `(1+x)^-j` at `(0, -j)`.
pub fn config_from_poly(f: &AnElement) -> Result<Configuration> {
    check_rank(f.ctx())?;
    let ring = f.ctx().ring();
    Ok(Configuration::from_entries(
        ring,
        f.terms().map(|(b, c)| {
            let at = match *b {
                Basis::Power(i) => (i, 0),
                Basis::Pole { order, .. } => (0, -(order as i64)),
            };
            (at, c.clone())
        }),
    ))
}

pub fn poly_from_config(ctx: &AnContext, entries: &Entries) -> Result<AnElement> {
    Configuration::from_entries(ctx.ring(), entries.iter().map(|(k, v)| (*k, v.clone()))).to_poly(ctx)
}

/// The board of `g = (f, (h_0, h_1))` with the lamplighter at `(h_0, h_1)`.
pub fn lamplighter_state(group: &GammaGroup, g: &GroupElement) -> Result<Configuration> {
    check_rank(group.ctx())?;
    let mut c = config_from_poly(&g.f)?;
    c.pos = (g.h.0[0], g.h.0[1]);
    Ok(c)
}

/// The sequences `a^∞, a^0, a^1` of `g`, read off its board by propagation
/// to level 0 in `H^∞_{h_0+h_1}`, `H^0_{h_0-1}`, `H^1_{h_1-1}`.
pub fn propagated_sequences(group: &GammaGroup, g: &GroupElement) -> Result<[Vec<BigInt>; 3]> {
    let c = lamplighter_state(group, g)?;
    let (h0, h1) = c.pos;
    Ok([
        c.propagate(HalfPlane::Infinity(h0 + h1), 0),
        c.propagate(HalfPlane::Zero(h0 - 1), 0),
        c.propagate(HalfPlane::One(h1 - 1), 0),
    ])
}

/// Closed-form conversion between the sequences of `f̂` (`b`) and of
/// `f = f̂·h` (`a`) in one coordinate.
///
/// With `m = h_1` for the `∞`/`0` family and `m = h_0` for the `1` family:
///
/// ```text
/// a_p = Σ_{i=0..m}  σ_i b_{p+i} C(m, i)              m ≥ 0
/// a_p = Σ_{i≥0}     τ_i b_{p+i} C(i-1-m, i)          m < 0
/// b_p = Σ_{i=0..-m} σ_i a_{p+i} C(-m, i)             m ≤ 0
/// b_p = Σ_{i≥0}     τ_i a_{p+i} C(i-1+m, i)          m > 0
/// ```
///
/// where `σ_i = 1`, `τ_i = (-1)^i` for `∞`/`0`, and `σ_i = (-1)^{i+|m|}`,
/// `τ_i = (-1)^{|m|}` for `1`. Infinite sums stop at the end of the input.
pub fn pascal_convert(
    ring: RingSpec,
    seq: &[BigInt],
    m: i64,
    family: PascalFamily,
    direction: PascalDirection,
) -> Vec<BigInt> {
    let e = match direction {
        PascalDirection::BtoA => m,
        PascalDirection::AtoB => -m,
    };
    let abs = e.unsigned_abs();
    let odd = |k: u64| k % 2 == 1;
    let sign = |i: u64, finite: bool| -> bool {
        match (family, finite) {
            (PascalFamily::InfinityOrZero, true) => false,
            (PascalFamily::InfinityOrZero, false) => odd(i),
            (PascalFamily::One, true) => odd(i + abs),
            (PascalFamily::One, false) => odd(abs),
        }
    };
    let len = seq.len();
    let mut out = Vec::with_capacity(len);
    for p in 0..len {
        let mut acc = BigInt::zero();
        let finite = e >= 0;
        let terms = if finite { (abs as usize + 1).min(len - p) } else { len - p };
        for i in 0..terms {
            let b = &seq[p + i];
            if b.is_zero() {
                continue;
            }
            let c = if finite {
                binomial(BigInt::from(abs), BigInt::from(i))
            } else {
                binomial(BigInt::from(i as u64 + abs - 1), BigInt::from(i))
            };
            let term = c * b;
            if sign(i as u64, finite) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(ring.reduce(acc));
    }
    trim(out)
}

/// `a^∞, a^0, a^1` of `g` through the closed forms applied to the
/// sequences of `f̂ = f·(-h)`.
pub fn pascal_sequences(group: &GammaGroup, g: &GroupElement) -> Result<[Vec<BigInt>; 3]> {
    check_rank(group.ctx())?;
    let f_hat = g.f.mul_shift(&g.h.neg())?;
    let ring = group.ring();
    let (h0, h1) = (g.h.0[0], g.h.0[1]);
    use crate::an_ring::Coordinate::*;
    use PascalDirection::BtoA;
    Ok([
        pascal_convert(ring, &f_hat.sequence(Infinity), h1, PascalFamily::InfinityOrZero, BtoA),
        pascal_convert(ring, &f_hat.sequence(Offset(0)), h1, PascalFamily::InfinityOrZero, BtoA),
        pascal_convert(ring, &f_hat.sequence(Offset(1)), h0, PascalFamily::One, BtoA),
    ])
}

/// Compares, on `samples` random elements of `Γ_2(R)` with heights in
/// `[-height, height]`, the sequences read off the polynomial, by board
/// propagation, and by the closed forms.
pub fn verify_propagation(group: &GammaGroup, samples: usize, height: i64, seed: u64) -> Result<Report> {
    check_rank(group.ctx())?;
    let mut report = Report::new(format!(
        "propagation in Γ_2({}), {samples} samples, seed {seed}",
        group.ring()
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = group.random_element(&mut rng, 6, 5, 4, height);
        let by_poly = [
            g.f.seq_a(&g.h, Coordinate::Infinity)?,
            g.f.seq_a(&g.h, Coordinate::Offset(0))?,
            g.f.seq_a(&g.h, Coordinate::Offset(1))?,
        ];
        if propagated_sequences(group, &g)? != by_poly {
            report.violation(format!("propagation disagrees with the polynomial at {g}"));
        }
        if pascal_sequences(group, &g)? != by_poly {
            report.violation(format!("closed forms disagree with the polynomial at {g}"));
        }
        report.count("samples", 1);
    }
    Ok(report)
}
