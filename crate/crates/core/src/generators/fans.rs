//! Cubes and Bergman fans.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{rat, Rat};
use crate::generators::matroid::{Flat, Matroid};
use crate::generators::Convention;
use crate::polycomplex::PolyhedralComplex;

/// The complex of all faces of `[0,1]^d`.
///
/// Vertex `i` has coordinate `j` equal to bit `j` of `i`.
pub fn cube_complex(d: usize) -> PolyhedralComplex {
    let rays: Vec<Vec<Rat>> = (0..1usize << d)
        .map(|i| {
            let mut r = vec![Rat::one()];
            r.extend((0..d).map(|j| rat(((i >> j) & 1) as i64)));
            r
        })
        .collect();
    let all = (0..rays.len()).collect();
    PolyhedralComplex::new(d, rays, vec![], vec![all]).expect("a cube is a polyhedral complex")
}

/// Chains `F₁ ⊊ … ⊊ F_{r-1}` of proper nonempty flats, one per rank.
pub fn maximal_flag_chains(flats: &[Flat], rank: usize) -> Vec<Vec<usize>> {
    let proper: Vec<usize> = (0..flats.len())
        .filter(|&i| flats[i].rank > 0 && flats[i].rank < rank)
        .collect();
    let contains =
        |big: &Flat, small: &Flat| small.elements.iter().all(|e| big.elements.contains(e));
    let mut chains: Vec<Vec<usize>> = proper
        .iter()
        .filter(|&&i| flats[i].rank == 1)
        .map(|&i| vec![i])
        .collect();
    for r in 2..rank {
        let mut next = Vec::new();
        for c in &chains {
            let top = &flats[*c.last().unwrap()];
            for &i in proper.iter().filter(|&&i| flats[i].rank == r) {
                if contains(&flats[i], top) {
                    let mut e = c.clone();
                    e.push(i);
                    next.push(e);
                }
            }
        }
        chains = next;
    }
    chains
}

/// The Bergman fan of a connected loopless matroid, refined by flag chains.
///
/// The ray of a proper flat `F` is its indicator vector `e_F` (negated for
/// [`Convention::Min`]), taken modulo the all-ones vector via
/// `x ↦ (x₁ − x₀, …, x_{n−1} − x₀)`. The result lives in `ℚⁿ⁻¹` with a single
/// vertex at the origin and no lineality.
pub fn bergman_fan(m: &Matroid, convention: Convention) -> Result<PolyhedralComplex> {
    let n = m.n_elements();
    if n == 0 {
        return Err(Error::InvalidMatroid("empty ground set".into()));
    }
    if !m.closure(&[]).is_empty() {
        return Err(Error::InvalidMatroid("matroid has loops".into()));
    }
    if !m.is_connected() {
        return Err(Error::DisconnectedMatroid);
    }
    let flats = m.flats();
    let sign = match convention {
        Convention::Max => Rat::one(),
        Convention::Min => -Rat::one(),
    };

    let mut rays: Vec<Vec<Rat>> = vec![{
        let mut v = vec![Rat::zero(); n];
        v[0] = Rat::one();
        v
    }];
    let mut ray_of_flat = vec![usize::MAX; flats.len()];
    for (i, f) in flats.iter().enumerate() {
        if f.rank == 0 || f.rank == m.rank() {
            continue;
        }
        let indicator = |e: usize| if f.elements.contains(&e) { 1 } else { 0 };
        let mut v = vec![Rat::zero()];
        v.extend((1..n).map(|e| &sign * rat(indicator(e) - indicator(0))));
        ray_of_flat[i] = rays.len();
        rays.push(v);
    }

    let cells: Vec<Vec<usize>> = maximal_flag_chains(&flats, m.rank())
        .into_iter()
        .map(|chain| {
            let mut cell = vec![0];
            cell.extend(chain.iter().map(|&f| ray_of_flat[f]));
            cell
        })
        .collect();
    let cells = if cells.is_empty() {
        vec![vec![0]]
    } else {
        cells
    };
    PolyhedralComplex::new(n - 1, rays, vec![], cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::matroid::{complete_graph, graphic_matroid, uniform_matroid};

    #[test]
    fn cube_f_vectors() {
        assert_eq!(cube_complex(0).f_vector(), vec![1]);
        assert_eq!(cube_complex(1).f_vector(), vec![2, 1]);
        let c = cube_complex(3);
        assert_eq!(c.f_vector(), vec![8, 12, 6, 1]);
        assert_eq!(c.bounded_f_vector(), vec![8, 12, 6, 1]);
        let fc = c.classify_faces();
        assert_eq!(fc.bounded_faces.len(), 27);
        assert!(fc.unbounded_faces.is_empty());
        // only the empty face is far
        assert_eq!(fc.far_faces.len(), 1);
    }

    #[test]
    fn tropical_line() {
        let t = bergman_fan(&uniform_matroid(2, 3).unwrap(), Convention::Max).unwrap();
        assert_eq!(t.ambient_dim(), 2);
        assert_eq!(t.dim(), 1);
        assert_eq!(t.f_vector(), vec![1, 3]);
        assert_eq!(t.bounded_f_vector(), vec![1, 0]);
        let fc = t.classify_faces();
        assert_eq!(fc.bounded_faces.len(), 1);
        assert_eq!(fc.unbounded_faces.len(), 3);
        // three far rays plus the empty face
        assert_eq!(fc.far_faces.len(), 4);
    }

    #[test]
    fn disconnected_matroid_rejected() {
        let m = graphic_matroid(&[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            bergman_fan(&m, Convention::Max),
            Err(Error::DisconnectedMatroid)
        ));
    }

    #[test]
    fn k4_fan_is_two_dimensional() {
        let m = graphic_matroid(&complete_graph(4)).unwrap();
        let b = bergman_fan(&m, Convention::Max).unwrap();
        assert_eq!(b.dim(), 2);
        // 6 + 7 rays, 18 flag chains of length two
        assert_eq!(b.f_vector(), vec![1, 13, 18]);
    }
}
