//! Balls in the Cayley graph of `Γ_n(R)` and in the 1-skeleton of
//! `H_n(R)`, the checks that compare them, and graph export.
//!
//! Balls are grown breadth-first. A frontier can be expanded on the rayon
//! pool; results are merged in frontier order and vertices are finally
//! sorted by `(layer, key)`, so the output does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::an_ring::Coordinate;
use crate::error::{Error, Result};
use crate::group::{GammaGroup, GroupElement, Letter, PresentationId, Syllable};
use crate::json;
use crate::report::Report;
use crate::ring::RingSpec;
use crate::trees::{edge_direction, hn_adjacent, neighbors, origin, phi, phi_inv, HnVertex};

/// Serial or rayon-parallel frontier expansion; the output is identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    #[default]
    Parallel,
}

fn map_in_order<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Exec::Serial => items.iter().map(f).collect(),
        Exec::Parallel => items.par_iter().map(f).collect(),
    }
}

fn check_bound(ring: RingSpec, coeff_bound: u64) -> Result<()> {
    if !ring.is_finite() && coeff_bound == 0 {
        return Err(Error::Config(format!(
            "{ring} is infinite; a coefficient bound of at least 1 is required"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVertex {
    pub key: String,
    pub layer: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A ball with canonical vertex keys, ready for export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
    pub root: usize,
}

/// A ball in the Cayley graph. Edges run `g → g·x` for the positive
/// generators `x`; vertices are sorted by `(layer, key)`.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub group: GammaGroup,
    pub radius: u32,
    pub coeff_bound: u64,
    pub elements: Vec<GroupElement>,
    pub layers: Vec<u32>,
    pub keys: Vec<String>,
    pub edges: Vec<(usize, usize, Syllable)>,
    index: HashMap<GroupElement, usize>,
}

impl CayleyBall {
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Distinct neighbors of each vertex inside the ball.
    pub fn degrees(&self) -> Vec<usize> {
        undirected_degrees(self.len(), self.edges.iter().map(|(a, b, _)| (*a, *b)))
    }

    pub fn to_graph(&self) -> LabeledGraph {
        LabeledGraph {
            vertices: self
                .keys
                .iter()
                .zip(&self.layers)
                .map(|(k, l)| GraphVertex {
                    key: k.clone(),
                    layer: *l,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b, s)| GraphEdge {
                    source: *a,
                    target: *b,
                    label: s.to_string(),
                })
                .collect(),
            root: 0,
        }
    }
}

fn undirected_degrees(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (a, b) in edges {
        if a != b {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj.iter().map(|s| s.len()).collect()
}

/// The ball of `radius` around the identity for the generating set with
/// coefficients in `ring.enumerate(coeff_bound)`.
pub fn cayley_ball(group: &GammaGroup, radius: u32, coeff_bound: u64, exec: Exec) -> Result<CayleyBall> {
    check_bound(group.ring(), coeff_bound)?;
    let letters = group.generating_letters(coeff_bound);
    let gens: Vec<(Syllable, GroupElement)> = letters
        .iter()
        .map(|s| Ok((*s, group.syllable(s)?)))
        .collect::<Result<_>>()?;
    let expand = |g: &GroupElement, positive_only: bool| -> Vec<(Syllable, GroupElement)> {
        gens.iter()
            .filter(|(s, _)| !positive_only || s.exp > 0)
            .map(|(s, x)| (*s, g.mul(x).expect("same group")))
            .collect()
    };

    let mut layer_of: HashMap<GroupElement, u32> = HashMap::new();
    let mut order: Vec<GroupElement> = Vec::new();
    layer_of.insert(group.identity(), 0);
    order.push(group.identity());
    let mut frontier = vec![group.identity()];
    for layer in 0..radius {
        let expanded = map_in_order(exec, &frontier, |g| expand(g, false));
        let mut next = Vec::new();
        for list in expanded {
            for (_, e) in list {
                if !layer_of.contains_key(&e) {
                    layer_of.insert(e.clone(), layer + 1);
                    order.push(e.clone());
                    next.push(e);
                }
            }
        }
        frontier = next;
    }

    let keyed: Vec<(u32, String, GroupElement)> = map_in_order(exec, &order, |g| {
        (
            layer_of[g],
            json::compact(&json::group_element_to_json(group, g)),
            g.clone(),
        )
    });
    let mut keyed = keyed;
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut elements = Vec::with_capacity(keyed.len());
    let mut layers = Vec::with_capacity(keyed.len());
    let mut keys = Vec::with_capacity(keyed.len());
    for (l, k, g) in keyed {
        layers.push(l);
        keys.push(k);
        elements.push(g);
    }
    let index: HashMap<GroupElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();

    let per_vertex = map_in_order(exec, &elements, |g| {
        expand(g, true)
            .into_iter()
            .filter_map(|(s, e)| index.get(&e).map(|&j| (s, j)))
            .collect::<Vec<_>>()
    });
    let mut edges: Vec<(usize, usize, Syllable)> = per_vertex
        .into_iter()
        .enumerate()
        .flat_map(|(i, v)| v.into_iter().map(move |(s, j)| (i, j, s)))
        .collect();
    edges.sort();

    Ok(CayleyBall {
        group: *group,
        radius,
        coeff_bound,
        elements,
        layers,
        keys,
        edges,
        index,
    })
}

/// A ball in the 1-skeleton of `H_n(R)`. Each undirected edge is stored
/// once, from the lower to the higher vertex index.
#[derive(Debug, Clone)]
pub struct HnBall {
    pub vertices: Vec<HnVertex>,
    pub layers: Vec<u32>,
    pub keys: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
    index: HashMap<HnVertex, usize>,
}

impl HnBall {
    pub fn index_of(&self, v: &HnVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        undirected_degrees(self.len(), self.edges.iter().map(|(a, b, _)| (*a, *b)))
    }

    pub fn to_graph(&self) -> LabeledGraph {
        LabeledGraph {
            vertices: self
                .keys
                .iter()
                .zip(&self.layers)
                .map(|(k, l)| GraphVertex {
                    key: k.clone(),
                    layer: *l,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b, l)| GraphEdge {
                    source: *a,
                    target: *b,
                    label: l.clone(),
                })
                .collect(),
            root: 0,
        }
    }
}

fn adjacency_label(v: &HnVertex, w: &HnVertex) -> String {
    let adj = hn_adjacent(v, w).expect("neighbors are adjacent");
    format!("{}>{}:{}", adj.down, adj.up, adj.label)
}

/// The ball of `radius` around the origin of `H_n(R)`, with upward labels
/// from `ring.enumerate(coeff_bound)`.
pub fn hn_ball(n: usize, ring: RingSpec, radius: u32, coeff_bound: u64, exec: Exec) -> Result<HnBall> {
    check_bound(ring, coeff_bound)?;
    let start = origin(n);
    let mut layer_of: HashMap<HnVertex, u32> = HashMap::new();
    let mut order = vec![start.clone()];
    layer_of.insert(start.clone(), 0);
    let mut frontier = vec![start];
    for layer in 0..radius {
        let expanded = map_in_order(exec, &frontier, |v| neighbors(v, ring, coeff_bound));
        let mut next = Vec::new();
        for list in expanded {
            for w in list {
                if !layer_of.contains_key(&w) {
                    layer_of.insert(w.clone(), layer + 1);
                    order.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut keyed: Vec<(u32, String, HnVertex)> = map_in_order(exec, &order, |v| {
        (layer_of[v], json::compact(&json::vertex_to_json(v)), v.clone())
    });
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut vertices = Vec::with_capacity(keyed.len());
    let mut layers = Vec::with_capacity(keyed.len());
    let mut keys = Vec::with_capacity(keyed.len());
    for (l, k, v) in keyed {
        layers.push(l);
        keys.push(k);
        vertices.push(v);
    }
    let index: HashMap<HnVertex, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let per_vertex = map_in_order(exec, &vertices, |v| {
        let i = index[v];
        neighbors(v, ring, coeff_bound)
            .into_iter()
            .filter_map(|w| {
                let j = *index.get(&w)?;
                (i < j).then(|| (j, adjacency_label(v, &w)))
            })
            .collect::<Vec<_>>()
    });
    let mut edges: Vec<(usize, usize, String)> = per_vertex
        .into_iter()
        .enumerate()
        .flat_map(|(i, v)| v.into_iter().map(move |(j, l)| (i, j, l)))
        .collect();
    edges.sort();
    Ok(HnBall {
        vertices,
        layers,
        keys,
        edges,
        index,
    })
}

fn short(g: &GroupElement) -> String {
    g.to_string()
}

/// Compares the Cayley ball with `H_n(R)` through `phi`.
///
/// Checks that `phi` is injective and inverted by `phi_inv` on the ball,
/// that the graph has no loops or double edges, that every Cayley edge
/// maps to an `H_n(R)` edge in the direction fixed by its generator, and
/// that every `H_n(R)` edge at an interior vertex pulls back to a generator
/// of the matching kind. For finite `R` the vertex sets, edge sets and
/// degrees are compared against an independently grown `H_n(R)` ball.
pub fn verify_iso(group: &GammaGroup, radius: u32, coeff_bound: u64, exec: Exec) -> Result<Report> {
    let n = group.n();
    let ring = group.ring();
    let mut report = Report::new(format!(
        "isomorphism Γ_{n}({ring}) ~ H_{n}({ring}), radius {radius}"
    ));
    let ball = cayley_ball(group, radius, coeff_bound, exec)?;
    report.set("vertices", ball.len() as u64);
    report.set("edges", ball.edges.len() as u64);

    let images: Vec<HnVertex> = map_in_order(exec, &ball.elements, |g| phi(group, g))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut image_index: HashMap<&HnVertex, usize> = HashMap::new();
    for (i, v) in images.iter().enumerate() {
        if let Some(j) = image_index.insert(v, i) {
            report.violation(format!(
                "phi not injective: {} and {} both map to {v}",
                short(&ball.elements[j]),
                short(&ball.elements[i])
            ));
        }
    }
    let round_trip_failures: Vec<usize> = map_in_order(exec, &(0..ball.len()).collect::<Vec<_>>(), |&i| {
        match phi_inv(group, &images[i]) {
            Ok(g) if g == ball.elements[i] => None,
            _ => Some(i),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    for i in round_trip_failures {
        report.violation(format!("phi_inv(phi(g)) != g for g = {}", short(&ball.elements[i])));
    }

    // simple graph: no loops, no two generators joining the same pair
    let mut seen_pairs: HashMap<(usize, usize), Syllable> = HashMap::new();
    for (a, b, s) in &ball.edges {
        if a == b {
            report.violation(format!("loop at {} labeled {s}", short(&ball.elements[*a])));
        }
        let key = ((*a).min(*b), (*a).max(*b));
        if let Some(prev) = seen_pairs.insert(key, *s) {
            report.violation(format!(
                "double edge between {} and {} ({prev}, {s})",
                short(&ball.elements[*a]),
                short(&ball.elements[*b])
            ));
        }
    }

    let edge_failures: Vec<String> = map_in_order(exec, &ball.edges, |(a, b, s)| {
        match hn_adjacent(&images[*a], &images[*b]) {
            None => Some(format!(
                "{} --{s}--> {} is not an edge of H",
                short(&ball.elements[*a]),
                short(&ball.elements[*b])
            )),
            Some(adj) if Some((adj.down, adj.up)) != edge_direction(s) => Some(format!(
                "{} --{s}--> {} goes down in {} and up in {}",
                short(&ball.elements[*a]),
                short(&ball.elements[*b]),
                adj.down,
                adj.up
            )),
            Some(_) => None,
        }
    })
    .into_iter()
    .flatten()
    .collect();
    for v in edge_failures {
        report.violation(v);
    }

    // pull back every H edge at interior vertices
    let interior: Vec<usize> = (0..ball.len()).filter(|&i| ball.layers[i] < radius).collect();
    report.set("interior vertices", interior.len() as u64);
    let finite = ring.is_finite();
    let pullback: Vec<Vec<String>> = map_in_order(exec, &interior, |&i| {
        let g = &ball.elements[i];
        let v = &images[i];
        let g_inv = g.inv();
        let mut out = Vec::new();
        for w in neighbors(v, ring, coeff_bound) {
            let adj = hn_adjacent(v, &w).expect("neighbors are adjacent");
            let g2 = match phi_inv(group, &w) {
                Ok(g2) => g2,
                Err(e) => {
                    out.push(format!("phi_inv failed at a neighbor of {}: {e}", short(g)));
                    continue;
                }
            };
            let delta = g_inv.mul(&g2).expect("same group");
            match group.identify_generator(&delta) {
                Some(s) if edge_direction(&s) == Some((adj.down, adj.up)) => {
                    if finite && ball.index_of(&g2).is_none() {
                        out.push(format!("{} · {s} missing from the ball", short(g)));
                    }
                }
                Some(s) => out.push(format!(
                    "H edge {}>{} at {} pulls back to {s}, which moves differently",
                    adj.down,
                    adj.up,
                    short(g)
                )),
                None => out.push(format!(
                    "H edge {}>{}:{} at {} pulls back to {}, not a generator",
                    adj.down,
                    adj.up,
                    adj.label,
                    short(g),
                    short(&delta)
                )),
            }
        }
        out
    });
    for v in pullback.into_iter().flatten() {
        report.violation(v);
    }

    let degrees = ball.degrees();
    report.set("root degree", degrees[0] as u64);
    if let Some(size) = ring.cardinality() {
        let expected = (n as u64 + 1) * n as u64 * size;
        report.set("expected degree", expected);
        for &i in &interior {
            if degrees[i] as u64 != expected {
                report.violation(format!(
                    "{} has degree {} instead of {expected}",
                    short(&ball.elements[i]),
                    degrees[i]
                ));
            }
        }
        let hb = hn_ball(n, ring, radius, coeff_bound, exec)?;
        report.set("H vertices", hb.len() as u64);
        report.set("H edges", hb.edges.len() as u64);
        let image_set: HashSet<&HnVertex> = images.iter().collect();
        let h_set: HashSet<&HnVertex> = hb.vertices.iter().collect();
        if image_set != h_set {
            report.violation(format!(
                "phi(ball) has {} vertices, H ball has {}; {} in common",
                image_set.len(),
                h_set.len(),
                image_set.intersection(&h_set).count()
            ));
        }
        let cayley_pairs: BTreeSet<(String, String)> = ball
            .edges
            .iter()
            .filter_map(|(a, b, _)| {
                let ka = hb.index_of(&images[*a])?;
                let kb = hb.index_of(&images[*b])?;
                Some(ordered(&hb.keys[ka], &hb.keys[kb]))
            })
            .collect();
        let h_pairs: BTreeSet<(String, String)> = hb
            .edges
            .iter()
            .map(|(a, b, _)| ordered(&hb.keys[*a], &hb.keys[*b]))
            .collect();
        if cayley_pairs != h_pairs {
            report.violation(format!(
                "edge sets differ: {} Cayley edges, {} H edges, {} shared",
                cayley_pairs.len(),
                h_pairs.len(),
                cayley_pairs.intersection(&h_pairs).count()
            ));
        }
        let h_degrees = hb.degrees();
        for (i, v) in images.iter().enumerate() {
            if let Some(j) = hb.index_of(v) {
                if h_degrees[j] != degrees[i] {
                    report.violation(format!(
                        "degree of {} is {} in the Cayley ball, {} in H",
                        short(&ball.elements[i]),
                        degrees[i],
                        h_degrees[j]
                    ));
                }
            }
        }
    } else {
        report.note(format!(
            "{ring} is infinite: generators use coefficients |r| <= {coeff_bound} and H edges \
             with labels |r| <= {coeff_bound} are pulled back; ball-to-ball comparison skipped"
        ));
    }
    Ok(report)
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Evaluates every relator of `pres` with parameters in `[-bound, bound]`.
pub fn verify_relators(group: &GammaGroup, pres: PresentationId, bound: u64) -> Result<Report> {
    let mut report = Report::new(format!(
        "relators {pres} in Γ_{}({}), bound {bound}",
        group.n(),
        group.ring()
    ));
    let words = group.relators(pres, bound)?;
    report.set("relators", words.len() as u64);
    for w in words {
        let g = group.eval_word(&w)?;
        if !g.is_identity() {
            report.violation(format!("`{w}` evaluates to {g}"));
        }
    }
    Ok(report)
}

/// The `λ/μ/ν` name of a generator letter of rank 2.
fn greek(letter: &Letter) -> Option<(char, i64)> {
    match *letter {
        Letter::Pair { r, j: 0 } => Some(('λ', r)),
        Letter::Pair { r, j: 1 } => Some(('μ', r)),
        Letter::Diff { r, j: 0, k: 1 } => Some(('ν', r)),
        _ => None,
    }
}

type Greek = (char, i64, i64);

/// Type 1: `λ_{i+j} ν_j^-1 μ_i^-1`; type 2: `λ_i^-1 ν_i μ_i`; up to rotation and inversion.
fn classify_triangle(word: [Greek; 3]) -> Option<u8> {
    let inverse = [
        (word[2].0, word[2].1, -word[2].2),
        (word[1].0, word[1].1, -word[1].2),
        (word[0].0, word[0].1, -word[0].2),
    ];
    for w in [word, inverse] {
        for rot in 0..3 {
            let r = [w[rot], w[(rot + 1) % 3], w[(rot + 2) % 3]];
            match r {
                [('λ', k, 1), ('ν', j, -1), ('μ', i, -1)] if k == i + j => return Some(1),
                [('λ', a, -1), ('ν', b, 1), ('μ', c, 1)] if a == b && b == c => return Some(2),
                _ => {}
            }
        }
    }
    None
}

/// Classifies every 3-cycle of the rank-2 Cayley ball as a type-1 or
/// type-2 relator triangle, and checks that every relator triangle lying in
/// the ball is found as a 3-cycle.
pub fn two_cell_report(group: &GammaGroup, radius: u32, coeff_bound: u64, exec: Exec) -> Result<Report> {
    if group.n() != 2 {
        return Err(Error::ContextMismatch(format!(
            "the two-cell check is for rank 2, not {}",
            group.n()
        )));
    }
    let mut report = Report::new(format!(
        "two-cells of Γ_2({}), radius {radius}, bound {coeff_bound}",
        group.ring()
    ));
    let ball = cayley_ball(group, radius, coeff_bound, exec)?;
    let size = ball.len();
    // directed label lookup: (a, b) -> syllable read going from a to b
    let mut step: HashMap<(usize, usize), Syllable> = HashMap::new();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); size];
    for (a, b, s) in &ball.edges {
        step.insert((*a, *b), *s);
        step.insert((*b, *a), s.inverse());
        adj[*a].insert(*b);
        adj[*b].insert(*a);
    }
    let mut triangles: BTreeSet<[usize; 3]> = BTreeSet::new();
    for u in 0..size {
        for &v in adj[u].range(u + 1..) {
            for &w in adj[v].range(v + 1..) {
                if adj[u].contains(&w) {
                    triangles.insert([u, v, w]);
                }
            }
        }
    }
    report.set("vertices", size as u64);
    report.set("3-cycles", triangles.len() as u64);
    let mut by_type: BTreeMap<u8, u64> = BTreeMap::new();
    for t in &triangles {
        let word: Vec<Greek> = [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
            .iter()
            .map(|e| {
                let s = step[e];
                let (c, i) = greek(&s.letter).expect("rank-2 generators");
                (c, i, s.exp)
            })
            .collect();
        match classify_triangle([word[0], word[1], word[2]]) {
            Some(k) => *by_type.entry(k).or_default() += 1,
            None => report.violation(format!(
                "3-cycle at {} with boundary {} is not a relator triangle",
                short(&ball.elements[t[0]]),
                word.iter()
                    .map(|(c, i, e)| format!("{c}_{i}^{e}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
        }
    }
    report.set("type 1", by_type.get(&1).copied().unwrap_or(0));
    report.set("type 2", by_type.get(&2).copied().unwrap_or(0));

    let relators = group.relators(PresentationId::CayleyComplex, coeff_bound)?;
    let b = coeff_bound as i64;
    let in_alphabet = |w: &crate::group::Word| {
        w.0.iter().all(|s| match s.letter {
            Letter::Lambda(i) | Letter::MuI(i) | Letter::NuI(i) => i.abs() <= b,
            _ => false,
        })
    };
    let relators: Vec<_> = relators.into_iter().filter(|w| in_alphabet(w)).collect();
    let mut instances = 0u64;
    for w in &relators {
        let steps: Vec<GroupElement> = w
            .0
            .iter()
            .map(|s| group.syllable(s))
            .collect::<Result<_>>()?;
        for (i, g) in ball.elements.iter().enumerate() {
            let g1 = g.mul(&steps[0])?;
            let g2 = g1.mul(&steps[1])?;
            let (Some(j), Some(k)) = (ball.index_of(&g1), ball.index_of(&g2)) else {
                continue;
            };
            instances += 1;
            if g2.mul(&steps[2])? != *g {
                report.violation(format!("relator `{w}` does not close at {}", short(g)));
                continue;
            }
            let mut key = [i, j, k];
            key.sort();
            if !triangles.contains(&key) {
                report.violation(format!("relator `{w}` at {} is not a 3-cycle of the ball", short(g)));
            }
        }
    }
    report.set("relator triangles in ball", instances);
    Ok(report)
}

/// Export formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Dot,
    GraphMl,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "dot" => Ok(Format::Dot),
            "graphml" => Ok(Format::GraphMl),
            "csv" | "edge-csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!(
                "unknown format `{s}` (expected dot, graphml, edge-csv or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Dot => "dot",
            Format::GraphMl => "graphml",
            Format::Csv => "edge-csv",
            Format::Json => "json",
        })
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl LabeledGraph {
    pub fn export(&self, format: Format) -> String {
        match format {
            Format::Dot => self.to_dot(),
            Format::GraphMl => self.to_graphml(),
            Format::Csv => self.to_csv(),
            Format::Json => json::pretty(&self.to_json()),
        }
    }

    fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  {} [layer={}];", dot_quote(&v.key), v.layer);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -> {} [label={}];",
                dot_quote(&self.vertices[e.source].key),
                dot_quote(&self.vertices[e.target].key),
                dot_quote(&e.label)
            );
        }
        s.push_str("}\n");
        s
    }

    fn to_graphml(&self) -> String {
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        s.push_str("  <key id=\"layer\" for=\"node\" attr.name=\"layer\" attr.type=\"string\"/>\n");
        s.push_str("  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n");
        s.push_str("  <graph edgedefault=\"directed\">\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <node id=\"{}\"><data key=\"layer\">{}</data></node>",
                xml_escape(&v.key),
                v.layer
            );
            let _ = i;
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "    <edge source=\"{}\" target=\"{}\"><data key=\"label\">{}</data></edge>",
                xml_escape(&self.vertices[e.source].key),
                xml_escape(&self.vertices[e.target].key),
                xml_escape(&e.label)
            );
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["source", "target", "label"]).expect("in-memory write");
        for e in &self.edges {
            w.write_record([
                &self.vertices[e.source].key,
                &self.vertices[e.target].key,
                &e.label,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_json(&self) -> Value {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let mut m = Map::new();
                m.insert("key".into(), Value::String(v.key.clone()));
                m.insert("layer".into(), Value::from(v.layer));
                Value::Object(m)
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let mut m = Map::new();
                m.insert("label".into(), Value::String(e.label.clone()));
                m.insert("source".into(), Value::String(self.vertices[e.source].key.clone()));
                m.insert("target".into(), Value::String(self.vertices[e.target].key.clone()));
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("edges".into(), Value::Array(edges));
        m.insert("root".into(), Value::String(self.vertices[self.root].key.clone()));
        m.insert("vertices".into(), Value::Array(vertices));
        Value::Object(m)
    }

    /// Reads the JSON export back.
    pub fn from_json(text: &str) -> Result<LabeledGraph> {
        let v = json::parse(text)?;
        let bad = |m: &str| Error::Json(m.to_string());
        let str_of = |v: &Value, what: &str| -> Result<String> {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("{what} must be a string")))
        };
        let mut vertices = Vec::new();
        let mut index = HashMap::new();
        for (i, item) in v["vertices"]
            .as_array()
            .ok_or_else(|| bad("`vertices` must be an array"))?
            .iter()
            .enumerate()
        {
            let key = str_of(&item["key"], "vertex key")?;
            let layer = item["layer"]
                .as_u64()
                .and_then(|l| u32::try_from(l).ok())
                .ok_or_else(|| bad("vertex layer must be a small nonnegative integer"))?;
            if index.insert(key.clone(), i).is_some() {
                return Err(bad(&format!("duplicate vertex {key}")));
            }
            vertices.push(GraphVertex { key, layer });
        }
        let lookup = |k: String| -> Result<usize> {
            index
                .get(&k)
                .copied()
                .ok_or_else(|| bad(&format!("edge endpoint {k} is not a vertex")))
        };
        let mut edges = Vec::new();
        for item in v["edges"]
            .as_array()
            .ok_or_else(|| bad("`edges` must be an array"))?
        {
            edges.push(GraphEdge {
                source: lookup(str_of(&item["source"], "edge source")?)?,
                target: lookup(str_of(&item["target"], "edge target")?)?,
                label: str_of(&item["label"], "edge label")?,
            });
        }
        let root = lookup(str_of(&v["root"], "root")?)?;
        Ok(LabeledGraph {
            vertices,
            edges,
            root,
        })
    }
}

/// Down/up coordinates as text, e.g. `inf>0`.
pub fn direction_label(d: (Coordinate, Coordinate)) -> String {
    format!("{}>{}", d.0, d.1)
}
