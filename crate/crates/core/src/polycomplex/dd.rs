//! Double description method: conversion between inequality descriptions
//! and generator descriptions of rational cones and polyhedra.

use num_traits::{One, Signed, Zero};

use crate::exactlin::{dot, primitive, rank, Rat, RatMatrix};

/// Generators of a cone: extreme rays (primitive integer vectors) plus a
/// basis of the lineality space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
}

/// Inequalities `a·x ≥ 0` (facets) and equations `a·x = 0` of a cone.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeConstraints {
    pub inequalities: Vec<Vec<Rat>>,
    pub equations: Vec<Vec<Rat>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<Rat>,
    // indices of processed constraints that vanish on v
    tight: Vec<bool>,
}

/// Extreme rays and lineality of `{x ∈ ℚ^dim : a·x ≥ 0 ∀ a ∈ ineqs, a·x = 0 ∀ a ∈ eqs}`.
///
/// Constraints are added one at a time; new rays are formed from pairs of
/// rays on opposite sides that are adjacent in the current cone, with
/// adjacency decided by the rank of their common tight constraints.
pub fn cone_generators(dim: usize, ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>]) -> ConeGenerators {
    let mut constraints: Vec<Vec<Rat>> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        constraints.push(e.clone());
        constraints.push(e.iter().map(|x| -x).collect());
    }
    constraints.extend(ineqs.iter().cloned());
    for c in &constraints {
        assert_eq!(c.len(), dim, "constraint of wrong length");
    }

    let mut lin: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let total = constraints.len();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                al = -al;
            }
            for other in lin.iter_mut() {
                let f = dot(a, other) / &al;
                if !f.is_zero() {
                    for (o, li) in other.iter_mut().zip(&l) {
                        *o -= &f * li;
                    }
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al;
                if !f.is_zero() {
                    for (o, li) in r.v.iter_mut().zip(&l) {
                        *o -= &f * li;
                    }
                    r.v = primitive(&r.v);
                }
                r.tight[k] = true;
            }
            let mut tight = vec![false; total];
            for t in tight.iter_mut().take(k) {
                *t = true;
            }
            rays.push(Ray {
                v: primitive(&l),
                tight,
            });
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut r = r.clone();
                r.tight[k] = true;
                next.push(r);
            } else if vals[i].is_positive() {
                next.push(r.clone());
            }
        }
        if !neg.is_empty() && !pos.is_empty() {
            // pointed part of the current cone has dimension dim - |lin|
            let target = (dim - lin.len()).checked_sub(2);
            for &p in &pos {
                for &n in &neg {
                    let common: Vec<usize> = (0..k)
                        .filter(|&j| rays[p].tight[j] && rays[n].tight[j])
                        .collect();
                    let Some(target) = target else { continue };
                    if common.len() < target {
                        continue;
                    }
                    let rows: Vec<Vec<Rat>> =
                        common.iter().map(|&j| constraints[j].clone()).collect();
                    if rank(&RatMatrix::from_rows(rows, dim)) != target {
                        continue;
                    }
                    let sp = &vals[p];
                    let sn = -&vals[n];
                    let v: Vec<Rat> = rays[n]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(xn, xp)| sp * xn + &sn * xp)
                        .collect();
                    let mut tight = vec![false; total];
                    for &j in &common {
                        tight[j] = true;
                    }
                    tight[k] = true;
                    next.push(Ray {
                        v: primitive(&v),
                        tight,
                    });
                }
            }
        }
        rays = next;
    }

    let mut rays: Vec<Vec<Rat>> = rays.into_iter().map(|r| r.v).collect();
    rays.sort();
    ConeGenerators {
        rays,
        lineality: lin,
    }
}

/// Facets and equations of the cone generated by `rays` and `lineality`.
///
/// Computed by polarity: the facet normals are the extreme rays of the dual
/// cone, and the equations span its lineality space.
pub fn cone_constraints(dim: usize, rays: &[Vec<Rat>], lineality: &[Vec<Rat>]) -> ConeConstraints {
    let dual = cone_generators(dim, rays, lineality);
    ConeConstraints {
        inequalities: dual.rays,
        equations: dual.lineality,
    }
}
