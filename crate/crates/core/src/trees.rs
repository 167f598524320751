//! Vertices of the `R`-branching tree and of the horocyclic product
//! `H_n(R)`, and the bijection between `Γ_n(R)` and those vertices.
//!
//! A tree vertex is addressed by the labels read along its downward path
//! (first label = the edge leaving the vertex) together with its height.
//! A vertex of `H_n(R)` is an `(n+1)`-tuple of tree vertices, indexed
//! `∞, 0, ..., n-1`, whose heights sum to zero.

use std::fmt;

use num_bigint::BigInt;

use crate::an_ring::{trim, Coordinate, HeightVector};
use crate::error::{Error, Result};
use crate::group::{GammaGroup, GroupElement, Letter, Syllable};
use crate::ring::RingSpec;

/// A vertex of the `R`-branching tree: downward labels and height.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeAddress {
    labels: Vec<BigInt>,
    pub height: i64,
}

impl TreeAddress {
    /// Trailing zeros of `labels` are dropped.
    pub fn new(labels: Vec<BigInt>, height: i64) -> Self {
        TreeAddress {
            labels: trim(labels),
            height,
        }
    }

    pub fn root() -> Self {
        TreeAddress::new(Vec::new(), 0)
    }

    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    /// Label `p` (0-based) of the downward path; zero beyond the support.
    pub fn label(&self, p: usize) -> BigInt {
        self.labels.get(p).cloned().unwrap_or_default()
    }

    /// Moves along the unique downward edge.
    pub fn down(&self) -> TreeAddress {
        TreeAddress {
            labels: self.labels.iter().skip(1).cloned().collect(),
            height: self.height - 1,
        }
    }

    /// Moves up along the edge labeled `label`.
    pub fn up(&self, label: BigInt) -> TreeAddress {
        let mut labels = Vec::with_capacity(self.labels.len() + 1);
        labels.push(label);
        labels.extend(self.labels.iter().cloned());
        TreeAddress::new(labels, self.height + 1)
    }
}

impl fmt::Display for TreeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "((")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "), {})", self.height)
    }
}

/// A vertex of `H_n(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnVertex {
    pub coords: Vec<TreeAddress>,
}

impl HnVertex {
    /// Fails unless the heights sum to zero.
    pub fn new(coords: Vec<TreeAddress>) -> Result<Self> {
        let sum: i64 = coords.iter().map(|c| c.height).sum();
        if sum != 0 {
            return Err(Error::InvalidVertex(format!("heights sum to {sum}, not 0")));
        }
        if coords.len() < 2 {
            return Err(Error::InvalidVertex(format!(
                "{} coordinates; a vertex needs at least 2",
                coords.len()
            )));
        }
        Ok(HnVertex { coords })
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coord(&self, c: Coordinate) -> &TreeAddress {
        &self.coords[c.slot()]
    }

    /// Down in `from`, up along `label` in `to`.
    pub fn step(&self, from: Coordinate, to: Coordinate, label: BigInt) -> HnVertex {
        let mut coords = self.coords.clone();
        coords[from.slot()] = coords[from.slot()].down();
        coords[to.slot()] = coords[to.slot()].up(label);
        HnVertex { coords }
    }
}

impl fmt::Display for HnVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An edge of `H_n(R)` seen from one endpoint: which coordinate moves
/// down, which moves up, and the label of the upward edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Adjacency {
    pub down: Coordinate,
    pub up: Coordinate,
    pub label: BigInt,
}

/// `Φ(g)`: the coordinate at `∞` is `(a^∞, h_∞)`, at `i` it is `(a^i, h_i)`.
pub fn phi(group: &GammaGroup, g: &GroupElement) -> Result<HnVertex> {
    if g.f.ctx() != group.ctx() {
        return Err(Error::ContextMismatch("element of another group".into()));
    }
    let coords = Coordinate::all(group.n())
        .map(|c| Ok(TreeAddress::new(g.f.seq_a(&g.h, c)?, g.h.height(c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(HnVertex { coords })
}

/// The unique `g` with `phi(g) = v`.
pub fn phi_inv(group: &GammaGroup, v: &HnVertex) -> Result<GroupElement> {
    let n = group.n();
    if v.coords.len() != n + 1 {
        return Err(Error::InvalidVertex(format!(
            "{} coordinates for rank {n}",
            v.coords.len()
        )));
    }
    let sum: i64 = v.coords.iter().map(|c| c.height).sum();
    if sum != 0 {
        return Err(Error::InvalidVertex(format!("heights sum to {sum}, not 0")));
    }
    let ctx = group.ctx();
    let ring = group.ring();
    let h = HeightVector(v.coords[1..].iter().map(|c| c.height).collect());
    let labels = |c: Coordinate| -> Vec<BigInt> {
        v.coord(c)
            .labels()
            .iter()
            .map(|l| ring.reduce(l.clone()))
            .collect()
    };

    // a^∞ = f̂ · x^{h_∞+h_0} (1+x)^{h_1} ⋯, a shift with zero exponent sum.
    let mut q = h.0.clone();
    q[0] += h.h_inf();
    let q = HeightVector(q);
    let b_inf = ctx
        .single_sequence_element(Coordinate::Infinity, &labels(Coordinate::Infinity))
        .mul_shift(&q.neg())?
        .sequence(Coordinate::Infinity);

    // a^∗ = f̂ · ∏_{i≠∗} (i+x)^{h_i}.
    let mut b_poles = Vec::with_capacity(n);
    for star in 0..n {
        let mut q = h.0.clone();
        q[star] = 0;
        let coord = Coordinate::Offset(star);
        b_poles.push(
            ctx.single_sequence_element(coord, &labels(coord))
                .mul_shift(&HeightVector(q).neg())?
                .sequence(coord),
        );
    }
    let f_hat = ctx.from_sequences(&b_inf, &b_poles)?;
    group.element(f_hat.mul_shift(&h)?, h)
}

/// `Some` iff `w` is reached from `v` by going down in one coordinate and
/// up in exactly one other.
pub fn hn_adjacent(v: &HnVertex, w: &HnVertex) -> Option<Adjacency> {
    if v.coords.len() != w.coords.len() {
        return None;
    }
    let differing: Vec<usize> = (0..v.coords.len())
        .filter(|&i| v.coords[i] != w.coords[i])
        .collect();
    let [a, b] = differing[..] else {
        return None;
    };
    let try_pair = |d: usize, u: usize| -> Option<Adjacency> {
        if w.coords[d] != v.coords[d].down() {
            return None;
        }
        let label = w.coords[u].label(0);
        if w.coords[u].down() != v.coords[u] || w.coords[u].height != v.coords[u].height + 1 {
            return None;
        }
        Some(Adjacency {
            down: Coordinate::from_slot(d),
            up: Coordinate::from_slot(u),
            label,
        })
    };
    try_pair(a, b).or_else(|| try_pair(b, a))
}

/// All vertices one step from `v`: for each ordered pair of distinct
/// coordinates and each label in `ring.enumerate(coeff_bound)`.
pub fn neighbors(v: &HnVertex, ring: RingSpec, coeff_bound: u64) -> Vec<HnVertex> {
    let labels = ring.enumerate_values(coeff_bound);
    let slots = v.coords.len();
    let mut out = Vec::with_capacity(slots * (slots - 1) * labels.len());
    for d in 0..slots {
        let down = v.coords[d].down();
        for u in 0..slots {
            if u == d {
                continue;
            }
            for r in &labels {
                let mut coords = v.coords.clone();
                coords[d] = down.clone();
                coords[u] = coords[u].up(r.clone());
                out.push(HnVertex { coords });
            }
        }
    }
    out
}

/// The `(down, up)` coordinates traversed by a generator letter:
/// `(r, e_j)` goes down in `∞` and up in `j`; `(r, e_j)(r, e_k)^-1` goes
/// down in `k` and up in `j`; inverses swap the two.
pub fn edge_direction(s: &Syllable) -> Option<(Coordinate, Coordinate)> {
    let (down, up) = match s.letter {
        Letter::Pair { j, .. } => (Coordinate::Infinity, Coordinate::Offset(j as usize)),
        Letter::Diff { j, k, .. } => (Coordinate::Offset(k as usize), Coordinate::Offset(j as usize)),
        _ => return None,
    };
    match s.exp {
        1 => Some((down, up)),
        -1 => Some((up, down)),
        _ => None,
    }
}

/// The vertex with every label zero and every height zero.
pub fn origin(n: usize) -> HnVertex {
    HnVertex {
        coords: vec![TreeAddress::root(); n + 1],
    }
}
