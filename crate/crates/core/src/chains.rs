//! Cellular (co)chain complexes of (co)sheaves and their (co)homology.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rank, rref, RatMatrix};
use crate::polycomplex::{OrientationMap, PolyhedralComplex};
use crate::sheaves::{CellSheaf, Direction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainDirection {
    /// Differentials lower the degree: `∂_q : C_q → C_{q-1}`.
    Homological,
    /// Differentials raise the degree: `d^q : C^q → C^{q+1}`.
    Cohomological,
}

/// One summand of a chain group: the stalk of `cell`, occupying
/// coordinates `offset..offset + dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEntry {
    pub cell: usize,
    pub offset: usize,
    pub dim: usize,
}

/// A bounded complex of finite-dimensional ℚ-vector spaces in degrees
/// `0..=d`.
///
/// `maps[i]` connects degrees `i` and `i + 1`: for a homological complex it
/// is `∂_{i+1}` (shape `dims[i] × dims[i+1]`), for a cohomological one it
/// is `d^i` (shape `dims[i+1] × dims[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub direction: ChainDirection,
    pub dims: Vec<usize>,
    pub maps: Vec<RatMatrix>,
    /// Cell decomposition of each group, when assembled from a sheaf.
    pub groups: Option<Vec<Vec<GroupEntry>>>,
}

impl ChainComplex {
    /// Complex from raw differentials, checking that shapes chain together.
    pub fn new(direction: ChainDirection, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 && !(dims.is_empty() && maps.is_empty()) {
            return Err(Error::InvalidInput(format!(
                "{} groups need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let expected = match direction {
                ChainDirection::Homological => (dims[i], dims[i + 1]),
                ChainDirection::Cohomological => (dims[i + 1], dims[i]),
            };
            if m.shape() != expected {
                return Err(Error::InvalidInput(format!(
                    "map {i} has shape {:?}, expected {expected:?}",
                    m.shape()
                )));
            }
        }
        Ok(ChainComplex {
            direction,
            dims,
            maps,
            groups: None,
        })
    }

    /// Infer the group dimensions from the maps. Needs at least one map.
    pub fn from_maps(direction: ChainDirection, maps: Vec<RatMatrix>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::InvalidInput(
                "cannot infer group dimensions without maps".into(),
            ));
        };
        let mut dims = vec![match direction {
            ChainDirection::Homological => first.rows(),
            ChainDirection::Cohomological => first.cols(),
        }];
        for m in &maps {
            dims.push(match direction {
                ChainDirection::Homological => m.cols(),
                ChainDirection::Cohomological => m.rows(),
            });
        }
        Self::new(direction, dims, maps)
    }

    /// Top degree `d`, or -1 for the empty complex.
    pub fn top_degree(&self) -> isize {
        self.dims.len() as isize - 1
    }

    /// Map leaving degree `q`, if any.
    fn outgoing(&self, q: usize) -> Option<&RatMatrix> {
        match self.direction {
            ChainDirection::Homological => q.checked_sub(1).map(|i| &self.maps[i]),
            ChainDirection::Cohomological => self.maps.get(q),
        }
    }

    /// Map arriving in degree `q`, if any.
    fn incoming(&self, q: usize) -> Option<&RatMatrix> {
        match self.direction {
            ChainDirection::Homological => self.maps.get(q),
            ChainDirection::Cohomological => q.checked_sub(1).map(|i| &self.maps[i]),
        }
    }

    /// True iff every composite of consecutive differentials vanishes.
    pub fn is_welldefined(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let composite = match self.direction {
                ChainDirection::Homological => w[0].mul(&w[1]),
                ChainDirection::Cohomological => w[1].mul(&w[0]),
            };
            composite.is_zero()
        })
    }

    /// `β_q = dim C_q − rank(out of q) − rank(into q)` for `q = 0..=d`.
    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        if !self.is_welldefined() {
            return Err(Error::NotAChainComplex);
        }
        let ranks: Vec<usize> = self.maps.par_iter().map(rank).collect();
        Ok((0..self.dims.len())
            .map(|q| {
                let before = if q > 0 { ranks[q - 1] } else { 0 };
                let after = ranks.get(q).copied().unwrap_or(0);
                self.dims[q] - before - after
            })
            .collect())
    }

    /// Cycles in degree `q` that represent a basis of the (co)homology there.
    pub fn homology_basis(&self, q: usize) -> Result<RatMatrix> {
        if !self.is_welldefined() {
            return Err(Error::NotAChainComplex);
        }
        let n = self.dims[q];
        let cycles = match self.outgoing(q) {
            Some(m) => kernel_basis(m),
            None => RatMatrix::identity(n),
        };
        let boundaries = match self.incoming(q) {
            Some(m) => m.clone(),
            None => RatMatrix::zeros(n, 0),
        };
        let b = boundaries.cols();
        let pivots = rref(&boundaries.hstack(&cycles)).pivot_cols;
        let picked: Vec<usize> = pivots
            .into_iter()
            .filter(|&c| c >= b)
            .map(|c| c - b)
            .collect();
        Ok(cycles.select_columns(&picked))
    }

    /// Euler characteristic of the groups, `Σ (−1)^q dim C_q`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Sequence notation with a header of degree labels, e.g.
    ///
    /// ```text
    ///  1       0        -1
    /// k^0 --> k^3 --> k^1 --> k^0
    /// ```
    ///
    /// Homological complexes read from degree `d + 1` down to `−1`,
    /// cohomological ones from `−1` up to `d + 1`. Each label starts one
    /// column to the right of its `k^` token.
    pub fn print(&self) -> String {
        if self.dims.is_empty() {
            return "k^0".to_string();
        }
        let d = self.dims.len() as isize - 1;
        let degrees: Vec<isize> = match self.direction {
            ChainDirection::Homological => (-1..=d + 1).rev().collect(),
            ChainDirection::Cohomological => (-1..=d + 1).collect(),
        };
        let mut line = String::new();
        let mut header = String::new();
        for (i, &q) in degrees.iter().enumerate() {
            if i > 0 {
                line.push_str(" --> ");
            }
            let dim = if q < 0 || q > d {
                0
            } else {
                self.dims[q as usize]
            };
            let col = line.len() + 1;
            while header.len() < col {
                header.push(' ');
            }
            header.push_str(&q.to_string());
            line.push_str(&format!("k^{dim}"));
        }
        format!("{}\n{}", header.trim_end(), line)
    }
}

/// Which faces contribute chain groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Support {
    Bounded,
    NonFar,
}

fn assemble(
    pc: &PolyhedralComplex,
    s: &CellSheaf,
    orientation: &OrientationMap,
    support: Support,
) -> ChainComplex {
    let d = pc.dim();
    let bounded_only = support == Support::Bounded;
    let groups: Vec<Vec<GroupEntry>> = (0..=d)
        .map(|q| {
            let mut offset = 0;
            pc.cells_of_dim(q, bounded_only)
                .into_iter()
                .map(|cell| {
                    let dim = s.stalk_dim(cell);
                    let e = GroupEntry { cell, offset, dim };
                    offset += dim;
                    e
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = groups
        .iter()
        .map(|g| g.last().map_or(0, |e| e.offset + e.dim))
        .collect();

    let (direction, maps) = match s.direction {
        Direction::Cosheaf => {
            let maps = (1..groups.len())
                .map(|q| {
                    let mut m = RatMatrix::zeros(dims[q - 1], dims[q]);
                    let lower = &groups[q - 1];
                    for sigma in &groups[q] {
                        for tau in lower {
                            let sign = orientation.get(tau.cell, sigma.cell);
                            if sign == 0 || tau.dim == 0 || sigma.dim == 0 {
                                continue;
                            }
                            let block = s.block(tau.cell, sigma.cell).expect("face pair block");
                            let block = if sign < 0 {
                                block.scaled(&(-crate::exactlin::rat(1)))
                            } else {
                                block.clone()
                            };
                            m.set_block(tau.offset, sigma.offset, &block);
                        }
                    }
                    m
                })
                .collect();
            (ChainDirection::Homological, maps)
        }
        Direction::Sheaf => {
            let maps = (1..groups.len())
                .map(|q| {
                    let mut m = RatMatrix::zeros(dims[q], dims[q - 1]);
                    let lower = &groups[q - 1];
                    for sigma in &groups[q] {
                        for tau in lower {
                            let sign = orientation.get(tau.cell, sigma.cell);
                            if sign == 0 || tau.dim == 0 || sigma.dim == 0 {
                                continue;
                            }
                            let block = s.block(tau.cell, sigma.cell).expect("face pair block");
                            let block = if sign < 0 {
                                block.scaled(&(-crate::exactlin::rat(1)))
                            } else {
                                block.clone()
                            };
                            m.set_block(sigma.offset, tau.offset, &block);
                        }
                    }
                    m
                })
                .collect();
            (ChainDirection::Cohomological, maps)
        }
    };
    ChainComplex {
        direction,
        dims,
        maps,
        groups: Some(groups),
    }
}

fn require(s: &CellSheaf, want: Direction) -> Result<()> {
    if s.direction != want {
        return Err(Error::WrongDirection {
            expected: want.name(),
            found: s.direction.name(),
        });
    }
    Ok(())
}

/// `C_q = ⊕ F(σ)` over bounded `q`-cells.
pub fn usual_chain_complex(
    pc: &PolyhedralComplex,
    cosheaf: &CellSheaf,
    orientation: &OrientationMap,
) -> Result<ChainComplex> {
    require(cosheaf, Direction::Cosheaf)?;
    Ok(assemble(pc, cosheaf, orientation, Support::Bounded))
}

/// `C^BM_q = ⊕ F(σ)` over all non-far `q`-cells.
pub fn borel_moore_complex(
    pc: &PolyhedralComplex,
    cosheaf: &CellSheaf,
    orientation: &OrientationMap,
) -> Result<ChainComplex> {
    require(cosheaf, Direction::Cosheaf)?;
    Ok(assemble(pc, cosheaf, orientation, Support::NonFar))
}

/// `C^q = ⊕ G(σ)` over bounded `q`-cells.
pub fn usual_cochain_complex(
    pc: &PolyhedralComplex,
    sheaf: &CellSheaf,
    orientation: &OrientationMap,
) -> Result<ChainComplex> {
    require(sheaf, Direction::Sheaf)?;
    Ok(assemble(pc, sheaf, orientation, Support::Bounded))
}

/// `C^q_c = ⊕ G(σ)` over all non-far `q`-cells.
pub fn compact_support_complex(
    pc: &PolyhedralComplex,
    sheaf: &CellSheaf,
    orientation: &OrientationMap,
) -> Result<ChainComplex> {
    require(sheaf, Direction::Sheaf)?;
    Ok(assemble(pc, sheaf, orientation, Support::NonFar))
}
