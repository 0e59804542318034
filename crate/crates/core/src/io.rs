//! JSON formats for complexes, matroids, sheaves and chain complexes.
//!
//! Rationals are written as strings `"p/q"` (integers without `/1`); on
//! input plain JSON integers are accepted as well. Matrices are lists of
//! rows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chains::{ChainComplex, ChainDirection};
use crate::error::{Error, Result};
use crate::exactlin::{format_rat, parse_rat, Rat, RatMatrix};
use crate::generators::Matroid;
use crate::polycomplex::PolyhedralComplex;
use crate::sheaves::{CellSheaf, Direction};

fn rat_to_json(q: &Rat) -> Value {
    Value::String(format_rat(q))
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::InvalidInput(format!("expected a rational, got {v}"))),
    }
}

fn vector_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

fn vector_from_json(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an array, got {v}")))?
        .iter()
        .map(rat_from_json)
        .collect()
}

fn vectors_from_json(v: &Value) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an array, got {v}")))?
        .iter()
        .map(vector_from_json)
        .collect()
}

pub fn matrix_to_json(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

/// Parse a list of rows. The shape cannot be recovered from an empty list,
/// so callers that know it pass `shape`.
pub fn matrix_from_json(v: &Value, shape: Option<(usize, usize)>) -> Result<RatMatrix> {
    let rows = vectors_from_json(v)?;
    let cols = match (rows.first(), shape) {
        (Some(r), _) => r.len(),
        (None, Some((_, c))) => c,
        (None, None) => 0,
    };
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput("ragged matrix rows".into()));
    }
    let m = if rows.is_empty() {
        RatMatrix::zeros(shape.map_or(0, |s| s.0), cols)
    } else {
        RatMatrix::from_rows(rows, cols)
    };
    if let Some(s) = shape {
        if m.shape() != s {
            return Err(Error::InvalidInput(format!(
                "matrix of shape {:?}, expected {s:?}",
                m.shape()
            )));
        }
    }
    Ok(m)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("missing field \"{key}\"")))
}

pub fn complex_to_json(pc: &PolyhedralComplex) -> Value {
    let maximal: Vec<&Vec<usize>> = pc
        .maximal_cells()
        .iter()
        .map(|&c| &pc.cell(c).rays)
        .collect();
    serde_json::json!({
        "ambient_dim": pc.ambient_dim(),
        "rays": pc.rays().iter().map(|r| vector_to_json(r)).collect::<Vec<_>>(),
        "lineality": pc.lineality().iter().map(|r| vector_to_json(r)).collect::<Vec<_>>(),
        "maximal_cells": maximal,
    })
}

pub fn complex_from_json(v: &Value) -> Result<PolyhedralComplex> {
    let ambient_dim: usize = serde_json::from_value(field(v, "ambient_dim")?.clone())?;
    let rays = vectors_from_json(field(v, "rays")?)?;
    let lineality = match v.get("lineality") {
        Some(l) => vectors_from_json(l)?,
        None => vec![],
    };
    let cells: Vec<Vec<usize>> = serde_json::from_value(field(v, "maximal_cells")?.clone())?;
    PolyhedralComplex::new(ambient_dim, rays, lineality, cells)
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    serde_json::to_value(MatroidJson {
        n: m.n_elements(),
        bases: m.bases(),
    })
    .expect("plain data")
}

pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    let m: MatroidJson = serde_json::from_value(v.clone())?;
    Matroid::new(m.n, m.bases)
}

pub fn sheaf_to_json(s: &CellSheaf) -> Value {
    let bases: serde_json::Map<String, Value> = s
        .bases
        .iter()
        .map(|(c, b)| (c.to_string(), matrix_to_json(b)))
        .collect();
    let blocks: serde_json::Map<String, Value> = s
        .blocks
        .iter()
        .map(|((t, u), b)| (format!("{t},{u}"), matrix_to_json(b)))
        .collect();
    serde_json::json!({
        "direction": s.direction.name(),
        "ambient_wedge_dim": s.ambient_wedge_dim,
        "bases": bases,
        "blocks": blocks,
    })
}

fn parse_id(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad cell id \"{s}\"")))
}

pub fn sheaf_from_json(v: &Value) -> Result<CellSheaf> {
    let direction: Direction = serde_json::from_value(field(v, "direction")?.clone())?;
    let k: usize = serde_json::from_value(field(v, "ambient_wedge_dim")?.clone())?;
    let mut bases = BTreeMap::new();
    let raw_bases = field(v, "bases")?
        .as_object()
        .ok_or_else(|| Error::InvalidInput("\"bases\" must be an object".into()))?;
    for (key, m) in raw_bases {
        let rows = vectors_from_json(m)?;
        if rows.len() != k {
            return Err(Error::InvalidInput(format!(
                "basis of cell {key} has {} rows, expected {k}",
                rows.len()
            )));
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        bases.insert(parse_id(key)?, RatMatrix::from_rows(rows, cols));
    }
    let mut s = CellSheaf {
        direction,
        ambient_wedge_dim: k,
        bases,
        blocks: BTreeMap::new(),
    };
    let raw_blocks = field(v, "blocks")?
        .as_object()
        .ok_or_else(|| Error::InvalidInput("\"blocks\" must be an object".into()))?;
    for (key, m) in raw_blocks {
        let (t, u) = key
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("bad block key \"{key}\"")))?;
        let (t, u) = (parse_id(t)?, parse_id(u)?);
        let block = matrix_from_json(m, Some(s.block_shape(t, u)))?;
        s.blocks.insert((t, u), block);
    }
    Ok(s)
}

pub fn chain_to_json(cc: &ChainComplex) -> Value {
    let direction = match cc.direction {
        ChainDirection::Homological => "homological",
        ChainDirection::Cohomological => "cohomological",
    };
    serde_json::json!({
        "direction": direction,
        "dims": cc.dims,
        "differentials": cc.maps.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts `"homological"`/`"chain"` and `"cohomological"`/`"cochain"`.
/// `"dims"` is optional when every differential is non-empty.
pub fn chain_from_json(v: &Value) -> Result<ChainComplex> {
    let direction = match field(v, "direction")?.as_str() {
        Some("homological" | "chain") => ChainDirection::Homological,
        Some("cohomological" | "cochain") => ChainDirection::Cohomological,
        _ => {
            return Err(Error::InvalidInput(
                "direction must be \"homological\" or \"cohomological\"".into(),
            ))
        }
    };
    let raw = field(v, "differentials")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("\"differentials\" must be an array".into()))?;
    match v.get("dims") {
        Some(d) => {
            let dims: Vec<usize> = serde_json::from_value(d.clone())?;
            if dims.len() != raw.len() + 1 {
                return Err(Error::InvalidInput(format!(
                    "{} dims for {} differentials",
                    dims.len(),
                    raw.len()
                )));
            }
            let maps = raw
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let shape = match direction {
                        ChainDirection::Homological => (dims[i], dims[i + 1]),
                        ChainDirection::Cohomological => (dims[i + 1], dims[i]),
                    };
                    matrix_from_json(m, Some(shape))
                })
                .collect::<Result<Vec<_>>>()?;
            ChainComplex::new(direction, dims, maps)
        }
        None => {
            let maps = raw
                .iter()
                .map(|m| matrix_from_json(m, None))
                .collect::<Result<Vec<_>>>()?;
            ChainComplex::from_maps(direction, maps)
        }
    }
}
