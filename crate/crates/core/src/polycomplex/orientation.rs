//! Orientation map `𝒪(τ, σ)` for codimension-one pairs of non-far cells.
//!
//! Orientations are computed on the cones of the homogenized fan, which
//! treats bounded and unbounded cells uniformly.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{column_space, rank, sign_det, solve_in_span, Rat, RatMatrix};
use crate::polycomplex::PolyhedralComplex;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientationMap {
    signs: HashMap<(usize, usize), i8>,
}

impl OrientationMap {
    /// `𝒪(τ, σ)`; zero when `τ` is not a facet of `σ`.
    pub fn get(&self, tau: usize, sigma: usize) -> i8 {
        self.signs.get(&(tau, sigma)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i8)> + '_ {
        self.signs.iter().map(|(&k, &v)| (k, v))
    }

    /// Flip the sign of a single pair. Only useful for fault injection.
    pub fn set(&mut self, tau: usize, sigma: usize, sign: i8) {
        self.signs.insert((tau, sigma), sign);
    }
}

/// Orientations from the default reference bases.
pub fn orientations(pc: &PolyhedralComplex) -> Result<OrientationMap> {
    orientations_flipped(pc, &BTreeSet::new())
}

/// Orientations where the cells in `flipped` use the opposite orientation
/// of their reference basis (first basis vector negated).
pub fn orientations_flipped(
    pc: &PolyhedralComplex,
    flipped: &BTreeSet<usize>,
) -> Result<OrientationMap> {
    let hdim = pc.ambient_dim() + 1;
    let mut bases: HashMap<usize, RatMatrix> = HashMap::new();
    for id in pc.non_far_cells() {
        let mut b = reference_basis(pc, id, hdim);
        if flipped.contains(&id) && b.cols() > 0 {
            for i in 0..b.rows() {
                b[(i, 0)] = -b[(i, 0)].clone();
            }
        }
        bases.insert(id, b);
    }

    let mut map = OrientationMap::default();
    for sigma in pc.non_far_cells() {
        for &tau in pc.facets(sigma) {
            if pc.cell(tau).far {
                continue;
            }
            let sigma_rays = &pc.cell(sigma).rays;
            let tau_rays = &pc.cell(tau).rays;
            // sum of the rays of σ outside τ points from τ into σ
            let mut w = vec![Rat::zero(); hdim];
            for &r in sigma_rays.iter().filter(|r| !tau_rays.contains(r)) {
                for (wi, x) in w.iter_mut().zip(&pc.rays()[r]) {
                    *wi += x;
                }
            }
            let frame = RatMatrix::from_columns(&[w], hdim).hstack(&bases[&tau]);
            let coords = solve_in_span(&bases[&sigma], &frame)
                .map_err(|_| Error::DegeneratePair { tau, sigma })?;
            if coords.rows() != coords.cols() {
                return Err(Error::DegeneratePair { tau, sigma });
            }
            match sign_det(&coords) {
                0 => return Err(Error::DegeneratePair { tau, sigma }),
                s => {
                    map.signs.insert((tau, sigma), s);
                }
            }
        }
    }
    Ok(map)
}

/// Lineality generators first, then the canonical span vectors of the cone
/// that extend them to a basis.
fn reference_basis(pc: &PolyhedralComplex, id: usize, hdim: usize) -> RatMatrix {
    let mut cols: Vec<Vec<Rat>> = pc.lineality().to_vec();
    let (span, _) = column_space(&RatMatrix::from_columns(&pc.cone_columns(id), hdim));
    for c in span.columns() {
        let mut trial = cols.clone();
        trial.push(c);
        if rank(&RatMatrix::from_columns(&trial, hdim)) == trial.len() {
            cols = trial;
        }
    }
    RatMatrix::from_columns(&cols, hdim)
}
