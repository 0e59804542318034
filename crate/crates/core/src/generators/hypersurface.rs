//! Tropical hypersurfaces as polyhedral complexes.
//!
//! For a Max polynomial `f(x) = max_k (c_k + a_k·x)` the hypersurface is the
//! set where at least two terms attain the maximum. It is the image of the
//! faces of the epigraph `P = {(x, t) : t ≥ c_k + a_k·x}` that lie on two or
//! more term facets; these faces are dual to the cells of positive
//! dimension in the regular subdivision of the Newton polytope induced by
//! the coefficients. A Min polynomial is handled by negating all terms.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{column_space, dot, rank, Rat, RatMatrix};
use crate::generators::tropical::TropicalPolynomial;
use crate::generators::Convention;
use crate::polycomplex::{dual_description, HRep, PolyhedralComplex};

pub fn tropical_hypersurface(f: &TropicalPolynomial) -> Result<PolyhedralComplex> {
    let n = f.n_variables();
    if f.terms.len() < 2 {
        return Err(Error::DegenerateInput(
            "a tropical hypersurface needs at least two distinct monomials".into(),
        ));
    }
    let sign = match f.convention {
        Convention::Max => Rat::one(),
        Convention::Min => -Rat::one(),
    };
    let terms: Vec<(Vec<Rat>, Rat)> = f
        .terms
        .iter()
        .map(|t| {
            let a = t
                .exponents
                .iter()
                .map(|&e| &sign * Rat::from_integer(BigInt::from(e)))
                .collect();
            (a, &sign * &t.coefficient)
        })
        .collect();

    // epigraph in (x, t): t - a_k·x ≥ c_k
    let mut epigraph = HRep::new(n + 1);
    for (a, c) in &terms {
        let mut row: Vec<Rat> = a.iter().map(|x| -x).collect();
        row.push(Rat::one());
        epigraph = epigraph.ge(row, c.clone());
    }
    let vrep = dual_description(&epigraph);
    let (gens, lin) = vrep.homogenized();

    // homogenized constraint rows (-c_k, -a_k, 1), plus x0 ≥ 0
    let mut rows: Vec<Vec<Rat>> = terms
        .iter()
        .map(|(a, c)| {
            let mut r = vec![-c.clone()];
            r.extend(a.iter().map(|x| -x));
            r.push(Rat::one());
            r
        })
        .collect();
    let mut far_row = vec![Rat::zero(); n + 2];
    far_row[0] = Rat::one();
    rows.push(far_row);
    let incidence: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            (0..gens.len())
                .filter(|&g| dot(r, &gens[g]).is_zero())
                .collect()
        })
        .collect();

    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let full: Vec<usize> = (0..gens.len()).collect();
    let mut queue = vec![full.clone()];
    faces.insert(full);
    while let Some(face) = queue.pop() {
        for s in &incidence {
            let g: Vec<usize> = face.iter().filter(|x| s.contains(x)).copied().collect();
            if faces.insert(g.clone()) {
                queue.push(g);
            }
        }
    }
    let face_rank = |face: &[usize]| {
        let mut cols: Vec<Vec<Rat>> = face.iter().map(|&g| gens[g].clone()).collect();
        cols.extend(lin.iter().cloned());
        rank(&RatMatrix::from_columns(&cols, n + 2))
    };
    let maximal: Vec<Vec<usize>> = faces
        .into_iter()
        .filter(|face| face.iter().any(|&g| gens[g][0].is_one()) && face_rank(face) == n)
        .collect();

    // drop the height coordinate and generators not on the hypersurface
    let used: BTreeSet<usize> = maximal.iter().flatten().copied().collect();
    let mut ray_index = vec![usize::MAX; gens.len()];
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for &g in &used {
        ray_index[g] = rays.len();
        rays.push(gens[g][..n + 1].to_vec());
    }
    let lineality: Vec<Vec<Rat>> = lin.iter().map(|l| l[..n + 1].to_vec()).collect();
    let cells: Vec<Vec<usize>> = maximal
        .iter()
        .map(|face| face.iter().map(|&g| ray_index[g]).collect())
        .collect();

    let (dim, rays) = quotient_by_lineality(n, rays, &lineality);
    PolyhedralComplex::new(dim, rays, vec![], cells)
}

/// Identify `ℚⁿ / span(lineality)` with `ℚⁿ⁻ᵏ` by reducing each vector
/// against the RREF lineality basis and dropping the pivot coordinates.
/// Inputs and outputs are homogenized.
fn quotient_by_lineality(
    n: usize,
    rays: Vec<Vec<Rat>>,
    lineality: &[Vec<Rat>],
) -> (usize, Vec<Vec<Rat>>) {
    let cols: Vec<Vec<Rat>> = lineality.iter().map(|l| l[1..].to_vec()).collect();
    let (basis, pivots) = column_space(&RatMatrix::from_columns(&cols, n));
    if pivots.is_empty() {
        return (n, rays);
    }
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let rays = rays
        .into_iter()
        .map(|r| {
            let mut x = r[1..].to_vec();
            for (j, &p) in pivots.iter().enumerate() {
                let f = x[p].clone();
                if !f.is_zero() {
                    for i in 0..n {
                        x[i] -= &f * &basis[(i, j)];
                    }
                }
            }
            let mut out = vec![r[0].clone()];
            out.extend(keep.iter().map(|&i| x[i].clone()));
            out
        })
        .collect();
    (keep.len(), rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::generators::tropical::parse_tropical_polynomial;

    fn hs(src: &str) -> PolyhedralComplex {
        tropical_hypersurface(&parse_tropical_polynomial(src).unwrap()).unwrap()
    }

    #[test]
    fn two_terms_in_one_variable() {
        let pc = hs("max(0,x)");
        assert_eq!(pc.f_vector(), vec![1]);
        assert_eq!(pc.rays(), &[vec![rat(1), rat(0)]]);
    }

    #[test]
    fn conic_combinatorics() {
        let pc = hs("max(0,x+5,y+3,x+y+9)");
        assert_eq!(pc.dim(), 1);
        assert_eq!(pc.f_vector(), vec![2, 5]);
        assert_eq!(pc.bounded_f_vector(), vec![2, 1]);
        let mut verts: Vec<Vec<Rat>> = pc
            .rays()
            .iter()
            .filter(|r| r[0].is_one())
            .map(|r| r[1..].to_vec())
            .collect();
        verts.sort();
        assert_eq!(verts, vec![vec![rat(-6), rat(-3)], vec![rat(-5), rat(-4)]]);
    }

    #[test]
    fn min_is_the_same_locus_as_negated_max() {
        let a = hs("min(0, x, y)");
        let b = hs("max(0, -x, -y)");
        assert_eq!(a.rays(), b.rays());
        assert_eq!(a.f_vector(), vec![1, 3]);
    }

    #[test]
    fn lineality_is_quotiented() {
        // max(x, y) is the line x = y in the plane
        let pc = hs("max(x, y)");
        assert_eq!(pc.ambient_dim(), 1);
        assert_eq!(pc.f_vector(), vec![1]);
        assert!(pc.lineality().is_empty());
    }

    #[test]
    fn single_monomial_is_degenerate() {
        let p = parse_tropical_polynomial("max(x+1, x+2)").unwrap();
        assert!(matches!(
            tropical_hypersurface(&p),
            Err(Error::DegenerateInput(_))
        ));
    }
}
