//! Cellular sheaves and cosheaves stored as stalk bases plus block matrices.
//!
//! Stalks are subspaces of a common ambient space (for `W^p` and `F_p` the
//! exterior power `∧^p ℚⁿ` in lexicographic coordinates), each given by a
//! column-RREF basis. Blocks are keyed by the face pair `(τ, σ)` with
//! `τ < σ`. For a sheaf the block is the matrix of `ρ_{τσ}: G(τ) → G(σ)`
//! (shape `dim G(σ) × dim G(τ)`); for a cosheaf it is the matrix of
//! `ι_{στ}: F(σ) → F(τ)` (shape `dim F(τ) × dim F(σ)`). Far cells carry no
//! stalks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::exactlin::{binomial, column_space, compound_matrix, coordinates_in, RatMatrix};
use crate::polycomplex::PolyhedralComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Sheaf,
    Cosheaf,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Sheaf => "sheaf",
            Direction::Cosheaf => "cosheaf",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSheaf {
    pub direction: Direction,
    pub ambient_wedge_dim: usize,
    pub bases: BTreeMap<usize, RatMatrix>,
    pub blocks: BTreeMap<(usize, usize), RatMatrix>,
}

impl CellSheaf {
    pub fn stalk_dim(&self, cell: usize) -> usize {
        self.bases.get(&cell).map_or(0, RatMatrix::cols)
    }

    pub fn block(&self, tau: usize, sigma: usize) -> Option<&RatMatrix> {
        self.blocks.get(&(tau, sigma))
    }

    /// Expected block shape for the pair `τ < σ`.
    pub fn block_shape(&self, tau: usize, sigma: usize) -> (usize, usize) {
        let (t, s) = (self.stalk_dim(tau), self.stalk_dim(sigma));
        match self.direction {
            Direction::Sheaf => (s, t),
            Direction::Cosheaf => (t, s),
        }
    }
}

/// Pairs `τ < σ` of non-far cells.
fn face_pairs(pc: &PolyhedralComplex) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for sigma in pc.non_far_cells() {
        for &tau in pc.faces_below(sigma) {
            if !pc.cell(tau).far {
                pairs.push((tau, sigma));
            }
        }
    }
    pairs
}

fn constant(pc: &PolyhedralComplex, direction: Direction) -> CellSheaf {
    let one = RatMatrix::identity(1);
    CellSheaf {
        direction,
        ambient_wedge_dim: 1,
        bases: pc.non_far_cells().map(|c| (c, one.clone())).collect(),
        blocks: face_pairs(pc)
            .into_iter()
            .map(|p| (p, one.clone()))
            .collect(),
    }
}

pub fn constant_sheaf(pc: &PolyhedralComplex) -> CellSheaf {
    constant(pc, Direction::Sheaf)
}

pub fn constant_cosheaf(pc: &PolyhedralComplex) -> CellSheaf {
    constant(pc, Direction::Cosheaf)
}

/// `∧^p L(σ)` for every non-far cell, as a matrix whose columns span it.
fn wedge_spans(pc: &PolyhedralComplex, p: usize) -> BTreeMap<usize, RatMatrix> {
    pc.non_far_cells()
        .map(|c| {
            let l = pc.span_basis(c).expect("non-far cell");
            (c, compound_matrix(&l, p))
        })
        .collect()
}

/// Stalks from spanning sets; returns canonical bases and their pivot rows.
fn canonical(spans: BTreeMap<usize, RatMatrix>) -> BTreeMap<usize, (RatMatrix, Vec<usize>)> {
    spans
        .into_iter()
        .map(|(c, m)| (c, column_space(&m)))
        .collect()
}

/// `W^p(σ) = ∧^p L(σ)` with restriction maps the wedge powers of the
/// inclusions `L(τ) ⊆ L(σ)`.
pub fn wsheaf(pc: &PolyhedralComplex, p: usize) -> CellSheaf {
    let stalks = canonical(wedge_spans(pc, p));
    let blocks = face_pairs(pc)
        .into_iter()
        .map(|(tau, sigma)| {
            let (bs, ps) = &stalks[&sigma];
            let block = coordinates_in(bs, ps, &stalks[&tau].0).expect("∧^p L(τ) ⊆ ∧^p L(σ)");
            ((tau, sigma), block)
        })
        .collect();
    CellSheaf {
        direction: Direction::Sheaf,
        ambient_wedge_dim: binomial(pc.ambient_dim(), p),
        bases: stalks.into_iter().map(|(c, (b, _))| (c, b)).collect(),
        blocks,
    }
}

/// `F_p(σ) = Σ_{γ ≥ σ} ∧^p L(γ)` with the inclusions `F_p(σ) ⊆ F_p(τ)` for
/// `τ ≤ σ`. The sum runs over all non-far cells containing `σ`, including
/// `σ` itself.
pub fn fcosheaf(pc: &PolyhedralComplex, p: usize) -> CellSheaf {
    let wedges = wedge_spans(pc, p);
    let rows = binomial(pc.ambient_dim(), p);
    let sums: BTreeMap<usize, RatMatrix> = pc
        .non_far_cells()
        .map(|sigma| {
            let mut m = wedges[&sigma].clone();
            for &gamma in pc.faces_above(sigma) {
                if let Some(w) = wedges.get(&gamma) {
                    m = m.hstack(w);
                }
            }
            debug_assert_eq!(m.rows(), rows);
            (sigma, m)
        })
        .collect();
    let stalks = canonical(sums);
    let blocks = face_pairs(pc)
        .into_iter()
        .map(|(tau, sigma)| {
            let (bt, pt) = &stalks[&tau];
            let block = coordinates_in(bt, pt, &stalks[&sigma].0).expect("F_p(σ) ⊆ F_p(τ)");
            ((tau, sigma), block)
        })
        .collect();
    CellSheaf {
        direction: Direction::Cosheaf,
        ambient_wedge_dim: rows,
        bases: stalks.into_iter().map(|(c, (b, _))| (c, b)).collect(),
        blocks,
    }
}

/// Dual (co)sheaf: same stalk dimensions, every block transposed.
pub fn dualize(s: &CellSheaf) -> CellSheaf {
    CellSheaf {
        direction: match s.direction {
            Direction::Sheaf => Direction::Cosheaf,
            Direction::Cosheaf => Direction::Sheaf,
        },
        ambient_wedge_dim: s.ambient_wedge_dim,
        bases: s.bases.clone(),
        blocks: s.blocks.iter().map(|(&k, b)| (k, b.transpose())).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingStalk {
        cell: usize,
    },
    StalkOnFarCell {
        cell: usize,
    },
    MissingBlock {
        tau: usize,
        sigma: usize,
    },
    NotAFacePair {
        tau: usize,
        sigma: usize,
    },
    BlockShape {
        tau: usize,
        sigma: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// The composite through `middle` disagrees with the direct block.
    Composition {
        lower: usize,
        middle: usize,
        upper: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Face pairs that take part in every reported violation. For a single
    /// corrupted block this is exactly that block's pair.
    pub fn implicated_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut acc: Option<BTreeSet<(usize, usize)>> = None;
        for v in &self.violations {
            let pairs: BTreeSet<(usize, usize)> = match *v {
                Violation::MissingStalk { .. } | Violation::StalkOnFarCell { .. } => continue,
                Violation::MissingBlock { tau, sigma }
                | Violation::NotAFacePair { tau, sigma }
                | Violation::BlockShape { tau, sigma, .. } => [(tau, sigma)].into(),
                Violation::Composition {
                    lower,
                    middle,
                    upper,
                } => [(lower, middle), (middle, upper), (lower, upper)].into(),
            };
            acc = Some(match acc {
                None => pairs,
                Some(a) => a.intersection(&pairs).copied().collect(),
            });
        }
        acc.unwrap_or_default()
    }
}

/// Check stalk presence, block shapes, and the composition law
/// `ρ_{γσ} = ρ_{τσ} ∘ ρ_{γτ}` (reversed for cosheaves) on every chain
/// `γ < τ < σ`.
pub fn validate(s: &CellSheaf, pc: &PolyhedralComplex) -> ValidationReport {
    let mut violations = Vec::new();
    for c in pc.non_far_cells() {
        if !s.bases.contains_key(&c) {
            violations.push(Violation::MissingStalk { cell: c });
        }
    }
    for &c in s.bases.keys() {
        if c >= pc.cells().len() || pc.cell(c).far {
            violations.push(Violation::StalkOnFarCell { cell: c });
        }
    }
    let pairs: BTreeSet<(usize, usize)> = face_pairs(pc).into_iter().collect();
    for &(tau, sigma) in &pairs {
        match s.block(tau, sigma) {
            None => violations.push(Violation::MissingBlock { tau, sigma }),
            Some(b) => {
                let expected = s.block_shape(tau, sigma);
                if b.shape() != expected {
                    violations.push(Violation::BlockShape {
                        tau,
                        sigma,
                        expected,
                        found: b.shape(),
                    });
                }
            }
        }
    }
    for (&(tau, sigma), b) in &s.blocks {
        if !pairs.contains(&(tau, sigma)) && !b.is_zero() {
            violations.push(Violation::NotAFacePair { tau, sigma });
        }
    }

    let well_shaped = |t: usize, u: usize| {
        s.block(t, u)
            .filter(|b| b.shape() == s.block_shape(t, u))
            .is_some()
    };
    for &(tau, sigma) in &pairs {
        for &gamma in pc.faces_below(tau) {
            if pc.cell(gamma).far {
                continue;
            }
            if !(well_shaped(gamma, tau) && well_shaped(tau, sigma) && well_shaped(gamma, sigma)) {
                continue;
            }
            let (gt, ts, gs) = (
                &s.blocks[&(gamma, tau)],
                &s.blocks[&(tau, sigma)],
                &s.blocks[&(gamma, sigma)],
            );
            let composite = match s.direction {
                Direction::Sheaf => ts.mul(gt),
                Direction::Cosheaf => gt.mul(ts),
            };
            if &composite != gs {
                violations.push(Violation::Composition {
                    lower: gamma,
                    middle: tau,
                    upper: sigma,
                });
            }
        }
    }
    ValidationReport { violations }
}
