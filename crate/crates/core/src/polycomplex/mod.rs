//! Polyhedral complexes in homogenized form.
//!
//! A complex `Π ⊂ ℚⁿ` is stored as a fan `Σ ⊂ ℚⁿ⁺¹` with `Π = Σ ∩ {x₀ = 1}`.
//! Rays with leading coordinate 1 are vertices of `Π`; rays with leading
//! coordinate 0 are "far" vertices (directions at infinity). Each cell is the
//! sorted set of indices of the rays it contains, and `τ ≤ σ` iff
//! `rays(τ) ⊆ rays(σ)`.

pub mod dd;
pub mod orientation;
pub mod polyhedron;

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{column_space, dot, primitive, rank, Rat, RatMatrix};
use dd::{cone_constraints, ConeConstraints};

pub use orientation::{orientations, orientations_flipped, OrientationMap};
pub use polyhedron::{dual_description, HRep, VRep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub rays: Vec<usize>,
    /// Dimension as a cell of `Π` (cone dimension minus one).
    pub dim: isize,
    pub far: bool,
    pub bounded: bool,
}

#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    rays: Vec<Vec<Rat>>,
    lineality: Vec<Vec<Rat>>,
    maximal_cells: Vec<usize>,
    cells: Vec<Cell>,
    index: HashMap<Vec<usize>, usize>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

/// Partition of all cells into far, bounded and unbounded ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceClass {
    pub far_faces: BTreeSet<usize>,
    pub bounded_faces: BTreeSet<usize>,
    pub unbounded_faces: BTreeSet<usize>,
}

fn normalize_ray(r: &[Rat]) -> Result<Vec<Rat>> {
    let lead = &r[0];
    if lead.is_negative() {
        return Err(Error::InvalidInput(
            "ray with negative leading coordinate".into(),
        ));
    }
    if lead.is_zero() {
        if r.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("zero ray".into()));
        }
        return Ok(primitive(r));
    }
    Ok(r.iter().map(|x| x / lead).collect())
}

struct ConeFaces {
    constraints: ConeConstraints,
    /// Faces as sets of global ray indices.
    faces: Vec<Vec<usize>>,
}

impl PolyhedralComplex {
    /// Build the complex generated by the given maximal cells and close it
    /// under taking faces.
    ///
    /// `rays` are homogenized vectors of length `ambient_dim + 1`, with
    /// leading coordinate 0 (far) or positive (rescaled to 1). `lineality`
    /// vectors must have leading coordinate 0.
    pub fn new(
        ambient_dim: usize,
        rays: Vec<Vec<Rat>>,
        lineality: Vec<Vec<Rat>>,
        maximal_cells: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let hdim = ambient_dim + 1;
        for r in rays.iter().chain(&lineality) {
            if r.len() != hdim {
                return Err(Error::InvalidInput(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    r.len()
                )));
            }
        }
        let rays: Vec<Vec<Rat>> = rays
            .iter()
            .map(|r| normalize_ray(r))
            .collect::<Result<_>>()?;
        {
            let mut seen = HashSet::new();
            for r in &rays {
                if !seen.insert(r.clone()) {
                    return Err(Error::InvalidInput("duplicate ray".into()));
                }
            }
        }
        if lineality.iter().any(|l| !l[0].is_zero()) {
            return Err(Error::InvalidInput(
                "lineality generators must have leading coordinate 0".into(),
            ));
        }
        let (lin_basis, _) = column_space(&RatMatrix::from_columns(&lineality, hdim));
        let lineality = lin_basis.columns();

        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for cell in maximal_cells {
            let set: BTreeSet<usize> = cell.into_iter().collect();
            if set.is_empty() {
                return Err(Error::InvalidInput("empty maximal cell".into()));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(format!("ray index {bad} out of range")));
            }
            let v: Vec<usize> = set.into_iter().collect();
            if !maximal.contains(&v) {
                maximal.push(v);
            }
        }
        maximal.sort();

        let cone_faces: Vec<ConeFaces> = maximal
            .iter()
            .map(|m| faces_of_cone(hdim, &rays, &lineality, m))
            .collect::<Result<_>>()?;

        check_intersections(hdim, &rays, &lineality, &maximal, &cone_faces)?;

        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cf in &cone_faces {
            all.extend(cf.faces.iter().cloned());
        }
        let cone_rank = |set: &[usize]| -> usize {
            let mut cols: Vec<Vec<Rat>> = set.iter().map(|&i| rays[i].clone()).collect();
            cols.extend(lineality.iter().cloned());
            rank(&RatMatrix::from_columns(&cols, hdim))
        };
        let mut cells: Vec<Cell> = all
            .into_iter()
            .map(|set| {
                let dim = cone_rank(&set) as isize - 1;
                let far = set.iter().all(|&i| rays[i][0].is_zero());
                let bounded = !set.is_empty() && set.iter().all(|&i| !rays[i][0].is_zero());
                Cell {
                    rays: set,
                    dim,
                    far,
                    bounded,
                }
            })
            .collect();
        cells.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        let index: HashMap<Vec<usize>, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.rays.clone(), i))
            .collect();

        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cells.len()];
        for cf in &cone_faces {
            let ids: Vec<usize> = cf.faces.iter().map(|f| index[f]).collect();
            for &s in &ids {
                for &t in &ids {
                    if s != t && is_subset(&cells[t].rays, &cells[s].rays) {
                        below[s].insert(t);
                    }
                }
            }
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        let mut facets: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        let mut cofacets: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for (s, bs) in below.iter().enumerate() {
            for &t in bs {
                above[t].push(s);
                if cells[t].dim + 1 == cells[s].dim {
                    facets[s].push(t);
                    cofacets[t].push(s);
                }
            }
        }
        let maximal_cells = maximal.iter().map(|m| index[m]).collect();

        Ok(PolyhedralComplex {
            ambient_dim,
            rays,
            lineality,
            maximal_cells,
            cells,
            index,
            below: below.into_iter().map(|b| b.into_iter().collect()).collect(),
            above,
            facets,
            cofacets,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Largest cell dimension, or -1 for a complex with no cells.
    pub fn dim(&self) -> isize {
        self.cells
            .iter()
            .filter(|c| !c.far)
            .map(|c| c.dim)
            .max()
            .unwrap_or(-1)
    }

    pub fn rays(&self) -> &[Vec<Rat>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Rat>] {
        &self.lineality
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_id(&self, rays: &[usize]) -> Option<usize> {
        self.index.get(rays).copied()
    }

    pub fn maximal_cells(&self) -> &[usize] {
        &self.maximal_cells
    }

    /// Codimension-one faces of `id`.
    pub fn facets(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    /// All faces strictly below `id`.
    pub fn faces_below(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    /// All cells strictly above `id`.
    pub fn faces_above(&self, id: usize) -> &[usize] {
        &self.above[id]
    }

    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        tau == sigma || self.below[sigma].binary_search(&tau).is_ok()
    }

    pub fn non_far_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(|&i| !self.cells[i].far)
    }

    /// Non-far cells of dimension `q`, in the canonical order.
    pub fn cells_of_dim(&self, q: isize, bounded_only: bool) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| {
                let c = &self.cells[i];
                !c.far && c.dim == q && (!bounded_only || c.bounded)
            })
            .collect()
    }

    pub fn classify_faces(&self) -> FaceClass {
        let mut fc = FaceClass::default();
        for (i, c) in self.cells.iter().enumerate() {
            if c.far {
                fc.far_faces.insert(i);
            } else if c.bounded {
                fc.bounded_faces.insert(i);
            } else {
                fc.unbounded_faces.insert(i);
            }
        }
        fc
    }

    /// Number of non-far cells in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.count_by_dim(|c| !c.far)
    }

    /// Number of bounded cells in each dimension `0..=dim`.
    pub fn bounded_f_vector(&self) -> Vec<usize> {
        self.count_by_dim(|c| c.bounded)
    }

    fn count_by_dim(&self, keep: impl Fn(&Cell) -> bool) -> Vec<usize> {
        let d = self.dim();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for c in self.cells.iter().filter(|c| keep(c)) {
            if c.dim >= 0 {
                f[c.dim as usize] += 1;
            }
        }
        f
    }

    /// Basis of the linear space `L(σ) ⊂ ℚⁿ` parallel to a non-far cell, as
    /// the columns of a column-RREF matrix.
    pub fn span_basis(&self, id: usize) -> Result<RatMatrix> {
        let cell = &self.cells[id];
        if cell.far {
            return Err(Error::FarFace(id));
        }
        let n = self.ambient_dim;
        let base = cell
            .rays
            .iter()
            .map(|&i| &self.rays[i])
            .find(|r| r[0].is_one())
            .expect("non-far cell has a vertex");
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        for &i in &cell.rays {
            let r = &self.rays[i];
            if r[0].is_zero() {
                cols.push(r[1..].to_vec());
            } else {
                cols.push(r[1..].iter().zip(&base[1..]).map(|(a, b)| a - b).collect());
            }
        }
        cols.extend(self.lineality.iter().map(|l| l[1..].to_vec()));
        Ok(column_space(&RatMatrix::from_columns(&cols, n)).0)
    }

    /// Generators of the cone over `id` (its rays followed by the lineality).
    pub(crate) fn cone_columns(&self, id: usize) -> Vec<Vec<Rat>> {
        let mut cols: Vec<Vec<Rat>> = self.cells[id]
            .rays
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect();
        cols.extend(self.lineality.iter().cloned());
        cols
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .filter(|x| b.binary_search(x).is_ok())
        .copied()
        .collect()
}

fn faces_of_cone(
    hdim: usize,
    rays: &[Vec<Rat>],
    lineality: &[Vec<Rat>],
    cell: &[usize],
) -> Result<ConeFaces> {
    let gens: Vec<Vec<Rat>> = cell.iter().map(|&i| rays[i].clone()).collect();
    let constraints = cone_constraints(hdim, &gens, lineality);
    let facet_sets: Vec<Vec<usize>> = constraints
        .inequalities
        .iter()
        .map(|a| {
            cell.iter()
                .zip(&gens)
                .filter(|(_, g)| dot(a, g).is_zero())
                .map(|(&i, _)| i)
                .collect()
        })
        .collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![cell.to_vec()];
    faces.insert(cell.to_vec());
    while let Some(f) = queue.pop() {
        for s in &facet_sets {
            let g = intersect(&f, s);
            if faces.insert(g.clone()) {
                queue.push(g);
            }
        }
    }
    for &i in cell {
        if !faces.contains(&vec![i]) {
            return Err(Error::NotAComplex(format!(
                "ray {i} is not an extreme ray of cell {cell:?}"
            )));
        }
    }
    Ok(ConeFaces {
        constraints,
        faces: faces.into_iter().collect(),
    })
}

fn satisfies(c: &ConeConstraints, x: &[Rat]) -> bool {
    c.inequalities.iter().all(|a| !dot(a, x).is_negative())
        && c.equations.iter().all(|a| dot(a, x).is_zero())
}

/// Every pair of maximal cones must meet in a common face, both
/// combinatorially and geometrically.
fn check_intersections(
    hdim: usize,
    rays: &[Vec<Rat>],
    lineality: &[Vec<Rat>],
    maximal: &[Vec<usize>],
    cone_faces: &[ConeFaces],
) -> Result<()> {
    let face_sets: Vec<HashSet<&Vec<usize>>> = cone_faces
        .iter()
        .map(|cf| cf.faces.iter().collect())
        .collect();
    for i in 0..maximal.len() {
        for j in i + 1..maximal.len() {
            let common = intersect(&maximal[i], &maximal[j]);
            for (a, b) in [(i, j), (j, i)] {
                if !face_sets[a].contains(&common) {
                    return Err(Error::NotAComplex(format!(
                        "cells {:?} and {:?} meet in {:?}, which is not a face of {:?}",
                        maximal[i], maximal[j], common, maximal[a]
                    )));
                }
                if maximal[b].iter().any(|r| {
                    !common.contains(r) && satisfies(&cone_faces[a].constraints, &rays[*r])
                }) {
                    return Err(Error::NotAComplex(format!(
                        "a ray of {:?} lies inside {:?}",
                        maximal[b], maximal[a]
                    )));
                }
            }
            if !cones_meet_in_face(
                hdim,
                &cone_faces[i],
                &cone_faces[j],
                &common,
                rays,
                lineality,
            ) {
                return Err(Error::NotAComplex(format!(
                    "cells {:?} and {:?} overlap beyond their common face",
                    maximal[i], maximal[j]
                )));
            }
        }
    }
    Ok(())
}

fn cones_meet_in_face(
    hdim: usize,
    a: &ConeFaces,
    b: &ConeFaces,
    common: &[usize],
    rays: &[Vec<Rat>],
    lineality: &[Vec<Rat>],
) -> bool {
    let mut ineqs = a.constraints.inequalities.clone();
    ineqs.extend(b.constraints.inequalities.iter().cloned());
    let mut eqs = a.constraints.equations.clone();
    eqs.extend(b.constraints.equations.iter().cloned());
    let meet = dd::cone_generators(hdim, &ineqs, &eqs);
    if meet.lineality.len() > lineality.len() {
        return false;
    }
    // the common face is cut out of `a` by the facets vanishing on it
    let tight: Vec<&Vec<Rat>> = a
        .constraints
        .inequalities
        .iter()
        .filter(|f| common.iter().all(|&r| dot(f, &rays[r]).is_zero()))
        .collect();
    meet.rays
        .iter()
        .all(|g| tight.iter().all(|f| dot(f, g).is_zero()))
}
