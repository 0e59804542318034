//! Inequality and generator descriptions of rational polyhedra.

use num_traits::{One, Signed, Zero};

use crate::exactlin::{column_space, dot, primitive, solve_in_span, Rat, RatMatrix};
use crate::polycomplex::dd::{cone_constraints, cone_generators};

/// `{x : a·x ≥ b for (a, b) in inequalities, a·x = b for (a, b) in equations}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HRep {
    pub ambient_dim: usize,
    pub inequalities: Vec<(Vec<Rat>, Rat)>,
    pub equations: Vec<(Vec<Rat>, Rat)>,
}

/// `conv(vertices) + cone(rays) + span(lineality)`. No vertices means the
/// empty polyhedron.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VRep {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
}

impl HRep {
    pub fn new(ambient_dim: usize) -> Self {
        HRep {
            ambient_dim,
            ..Default::default()
        }
    }

    pub fn ge(mut self, a: Vec<Rat>, b: Rat) -> Self {
        assert_eq!(a.len(), self.ambient_dim);
        self.inequalities.push((a, b));
        self
    }

    pub fn eq(mut self, a: Vec<Rat>, b: Rat) -> Self {
        assert_eq!(a.len(), self.ambient_dim);
        self.equations.push((a, b));
        self
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.inequalities.iter().all(|(a, b)| dot(a, x) >= *b)
            && self.equations.iter().all(|(a, b)| dot(a, x) == *b)
    }

    /// Rows `(-b, a)` so that `a·x ≥ b` reads `row·(1, x) ≥ 0`.
    pub(crate) fn homogenized(&self) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
        let hom = |(a, b): &(Vec<Rat>, Rat)| {
            let mut row = Vec::with_capacity(a.len() + 1);
            row.push(-b.clone());
            row.extend(a.iter().cloned());
            row
        };
        let mut ineqs: Vec<Vec<Rat>> = self.inequalities.iter().map(hom).collect();
        // x0 ≥ 0
        let mut e0 = vec![Rat::zero(); self.ambient_dim + 1];
        e0[0] = Rat::one();
        ineqs.push(e0);
        (ineqs, self.equations.iter().map(hom).collect())
    }

    pub fn to_vrep(&self) -> VRep {
        dual_description(self)
    }
}

impl VRep {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Generators as homogenized vectors `(1, v)` and `(0, r)`.
    pub fn homogenized(&self) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
        let lift = |lead: Rat, v: &Vec<Rat>| {
            let mut out = Vec::with_capacity(v.len() + 1);
            out.push(lead);
            out.extend(v.iter().cloned());
            out
        };
        let mut gens: Vec<Vec<Rat>> = self.vertices.iter().map(|v| lift(Rat::one(), v)).collect();
        gens.extend(self.rays.iter().map(|r| lift(Rat::zero(), r)));
        let lin = self
            .lineality
            .iter()
            .map(|l| lift(Rat::zero(), l))
            .collect();
        (gens, lin)
    }

    pub fn to_hrep(&self) -> HRep {
        let n = self.ambient_dim;
        if self.is_empty() {
            let mut h = HRep::new(n);
            h.inequalities.push((vec![Rat::zero(); n], Rat::one()));
            return h;
        }
        let (gens, lin) = self.homogenized();
        let c = cone_constraints(n + 1, &gens, &lin);
        let split = |row: &Vec<Rat>| (row[1..].to_vec(), -row[0].clone());
        HRep {
            ambient_dim: n,
            inequalities: c
                .inequalities
                .iter()
                .map(split)
                .filter(|(a, _)| a.iter().any(|x| !x.is_zero()))
                .collect(),
            equations: c.equations.iter().map(split).collect(),
        }
    }
}

/// Generators of the polyhedron described by `h`.
///
/// Output is canonical: lineality is the column-RREF basis, vertices and
/// rays are projected orthogonally to the lineality space, rays are
/// primitive integer vectors, and both lists are sorted.
pub fn dual_description(h: &HRep) -> VRep {
    let n = h.ambient_dim;
    let (ineqs, eqs) = h.homogenized();
    let g = cone_generators(n + 1, &ineqs, &eqs);

    let lin_cols: Vec<Vec<Rat>> = g.lineality.iter().map(|l| l[1..].to_vec()).collect();
    let (lin_basis, _) = column_space(&RatMatrix::from_columns(&lin_cols, n));
    let lineality = lin_basis.columns();
    let project = |v: &[Rat]| -> Vec<Rat> {
        if lineality.is_empty() {
            return v.to_vec();
        }
        let gram = lin_basis.transpose().mul(&lin_basis);
        let rhs = RatMatrix::from_columns(&[lin_basis.transpose().mul_vec(v)], lineality.len());
        let c = solve_in_span(&gram, &rhs).expect("gram matrix is invertible");
        let shift = lin_basis.mul_vec(&c.column(0));
        v.iter().zip(shift).map(|(a, b)| a - b).collect()
    };

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &g.rays {
        if r[0].is_positive() {
            let x: Vec<Rat> = r[1..].iter().map(|c| c / &r[0]).collect();
            vertices.push(project(&x));
        } else {
            rays.push(primitive(&project(&r[1..])));
        }
    }
    if vertices.is_empty() {
        return VRep {
            ambient_dim: n,
            ..Default::default()
        };
    }
    vertices.sort();
    rays.sort();
    VRep {
        ambient_dim: n,
        vertices,
        rays,
        lineality,
    }
}
