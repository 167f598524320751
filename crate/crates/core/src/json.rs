//! JSON encodings of ring elements, group elements and vertices.
//!
//! Objects are emitted with sorted keys so the compact form is byte-stable
//! and can serve as a canonical key.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use crate::an_ring::{AnContext, AnElement, Basis, HeightVector};
use crate::error::{Error, Result};
use crate::group::{GammaGroup, GroupElement};
use crate::ring::RingSpec;
use crate::trees::{HnVertex, TreeAddress};

pub fn int(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn as_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| bad(format!("{what}: `{n}` is not an integer"))),
        other => Err(bad(format!("{what}: expected an integer, found {other}"))),
    }
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| bad(format!("{what}: expected a 64-bit integer, found {v}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))
}

/// `{"laurent": {"<j>": c}, "poles": {"<i>": {"<j>": c}}}`.
pub fn element_to_json(f: &AnElement) -> Value {
    let mut laurent = Map::new();
    let mut poles: Map<String, Value> = Map::new();
    for (b, c) in f.terms() {
        match *b {
            Basis::Power(j) => {
                laurent.insert(j.to_string(), int(c));
            }
            Basis::Pole { offset, order } => {
                poles
                    .entry(offset.to_string())
                    .or_insert_with(|| Value::Object(Map::new()))
                    .as_object_mut()
                    .expect("pole maps are objects")
                    .insert(order.to_string(), int(c));
            }
        }
    }
    let mut out = Map::new();
    out.insert("laurent".into(), Value::Object(laurent));
    out.insert("poles".into(), Value::Object(poles));
    Value::Object(out)
}

pub fn element_from_json(ctx: &AnContext, v: &Value) -> Result<AnElement> {
    let obj = object(v, "element")?;
    let mut terms = Vec::new();
    if let Some(l) = obj.get("laurent") {
        for (k, c) in object(l, "laurent")? {
            let j: i64 = k
                .parse()
                .map_err(|_| bad(format!("laurent key `{k}` is not an integer")))?;
            terms.push((Basis::Power(j), as_int(c, "laurent coefficient")?));
        }
    }
    if let Some(p) = obj.get("poles") {
        for (ik, inner) in object(p, "poles")? {
            let i: usize = ik
                .parse()
                .map_err(|_| bad(format!("pole offset `{ik}` is not an index")))?;
            if i == 0 || i >= ctx.n() {
                return Err(bad(format!(
                    "pole offset {i} outside 1..{} (offset 0 goes in `laurent`)",
                    ctx.n()
                )));
            }
            for (jk, c) in object(inner, "pole map")? {
                let j: u64 = jk
                    .parse()
                    .ok()
                    .filter(|&j| j >= 1)
                    .ok_or_else(|| bad(format!("pole order `{jk}` is not a positive integer")))?;
                terms.push((Basis::pole(i, j), as_int(c, "pole coefficient")?));
            }
        }
    }
    ctx.from_terms(terms)
}

/// `{"f": ..., "h": [...], "n": n, "ring": "Z/m"}`.
pub fn group_element_to_json(group: &GammaGroup, g: &GroupElement) -> Value {
    let mut out = Map::new();
    out.insert("f".into(), element_to_json(&g.f));
    out.insert(
        "h".into(),
        Value::Array(g.h.0.iter().map(|&e| Value::from(e)).collect()),
    );
    out.insert("n".into(), Value::from(group.n() as u64));
    out.insert("ring".into(), Value::String(group.ring().to_string()));
    Value::Object(out)
}

/// Reads a group element; `ring` and `n`, when present, must match `group`.
pub fn group_element_from_json(group: &GammaGroup, v: &Value) -> Result<GroupElement> {
    let obj = object(v, "group element")?;
    if let Some(r) = obj.get("ring") {
        let text = r.as_str().ok_or_else(|| bad("`ring` must be a string"))?;
        let ring = RingSpec::parse(text)?;
        if ring != group.ring() {
            return Err(Error::RingMismatch {
                left: group.ring(),
                right: ring,
            });
        }
    }
    if let Some(n) = obj.get("n") {
        let n = as_i64(n, "n")?;
        if n != group.n() as i64 {
            return Err(Error::ContextMismatch(format!(
                "element of rank {n} for a group of rank {}",
                group.n()
            )));
        }
    }
    let f = element_from_json(group.ctx(), field(obj, "f")?)?;
    let h = array(field(obj, "h")?, "h")?
        .iter()
        .map(|e| as_i64(e, "height"))
        .collect::<Result<Vec<_>>>()?;
    group.element(f, HeightVector(h))
}

/// `{"coords": [{"height": h, "labels": [...]}, ...]}` in order `∞, 0, ..., n-1`.
pub fn vertex_to_json(v: &HnVertex) -> Value {
    let coords = v
        .coords
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("height".into(), Value::from(c.height));
            m.insert(
                "labels".into(),
                Value::Array(c.labels().iter().map(int).collect()),
            );
            Value::Object(m)
        })
        .collect();
    let mut out = Map::new();
    out.insert("coords".into(), Value::Array(coords));
    Value::Object(out)
}

/// Labels are reduced into `ring`; heights must sum to zero.
pub fn vertex_from_json(ring: RingSpec, v: &Value) -> Result<HnVertex> {
    let obj = object(v, "vertex")?;
    let coords = array(field(obj, "coords")?, "coords")?
        .iter()
        .map(|c| {
            let c = object(c, "coordinate")?;
            let height = as_i64(field(c, "height")?, "height")?;
            let labels = array(field(c, "labels")?, "labels")?
                .iter()
                .map(|l| Ok(ring.reduce(as_int(l, "label")?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(TreeAddress::new(labels, height))
        })
        .collect::<Result<Vec<_>>>()?;
    HnVertex::new(coords)
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

/// Compact, sorted-key rendering.
pub fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
