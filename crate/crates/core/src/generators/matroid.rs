//! Matroids given by their bases, with closure and flats by brute force.
//!
//! Subsets of the ground set are `u64` bitmasks, so ground sets are limited
//! to 64 elements; the exhaustive operations are meant for a dozen or so.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Largest ground set for which flats and connectivity are enumerated.
pub const MAX_ENUMERATED_ELEMENTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub elements: Vec<usize>,
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | (1u64 << i))
}

fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}

impl Matroid {
    /// Checks that all bases have the same size, lie in the ground set, and
    /// satisfy the basis exchange axiom.
    pub fn new(n: usize, bases: Vec<Vec<usize>>) -> Result<Self> {
        if n > 64 {
            return Err(Error::InvalidMatroid("ground set larger than 64".into()));
        }
        if bases.is_empty() {
            return Err(Error::InvalidMatroid("no bases".into()));
        }
        let rank = bases[0].len();
        let mut masks: Vec<u64> = Vec::with_capacity(bases.len());
        for b in &bases {
            if b.iter().any(|&i| i >= n) {
                return Err(Error::InvalidMatroid(format!(
                    "basis {b:?} outside ground set"
                )));
            }
            let m = mask_of(b);
            if m.count_ones() as usize != rank || b.len() != rank {
                return Err(Error::InvalidMatroid(
                    "bases must be sets of equal size".into(),
                ));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let set: HashSet<u64> = masks.iter().copied().collect();
        for &b1 in &masks {
            for &b2 in &masks {
                for x in elements_of(b1 & !b2) {
                    let ok = elements_of(b2 & !b1)
                        .into_iter()
                        .any(|y| set.contains(&((b1 & !(1 << x)) | (1 << y))));
                    if !ok {
                        return Err(Error::InvalidMatroid("basis exchange axiom fails".into()));
                    }
                }
            }
        }
        Ok(Matroid {
            n,
            rank,
            bases: masks,
        })
    }

    pub fn n_elements(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| elements_of(b)).collect()
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        self.rank_mask(mask_of(set))
    }

    fn rank_mask(&self, s: u64) -> usize {
        self.bases
            .iter()
            .map(|b| (b & s).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn closure_mask(&self, s: u64) -> u64 {
        let r = self.rank_mask(s);
        let mut c = s;
        for e in 0..self.n {
            let bit = 1u64 << e;
            if c & bit == 0 && self.rank_mask(s | bit) == r {
                c |= bit;
            }
        }
        c
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        elements_of(self.closure_mask(mask_of(set)))
    }

    /// All flats, sorted by rank and then lexicographically.
    pub fn flats(&self) -> Vec<Flat> {
        assert!(
            self.n <= MAX_ENUMERATED_ELEMENTS,
            "flat enumeration is exhaustive over subsets"
        );
        let mut seen: HashSet<u64> = HashSet::new();
        for s in 0..(1u64 << self.n) {
            seen.insert(self.closure_mask(s));
        }
        let mut flats: Vec<Flat> = seen
            .into_iter()
            .map(|m| Flat {
                rank: self.rank_mask(m),
                elements: elements_of(m),
            })
            .collect();
        flats.sort();
        flats
    }

    /// No proper nonempty separator `S` with `r(S) + r(E∖S) = r(E)`.
    pub fn is_connected(&self) -> bool {
        assert!(self.n <= MAX_ENUMERATED_ELEMENTS);
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        (1..full).all(|s| self.rank_mask(s) + self.rank_mask(full & !s) > self.rank)
    }
}

pub fn uniform_matroid(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::InvalidRank { rank: r, n });
    }
    Matroid::new(n, crate::exactlin::subsets(n, r))
}

/// Edges of the complete graph on `k` vertices, lexicographically ordered.
pub fn complete_graph(k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    edges
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Cycle matroid of a graph: ground set the edges, bases the spanning forests.
pub fn graphic_matroid(edges: &[(usize, usize)]) -> Result<Matroid> {
    let vertices = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let forest_size = |sel: &[usize]| -> usize {
        let mut parent: Vec<usize> = (0..vertices).collect();
        let mut size = 0;
        for &e in sel {
            let (a, b) = edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                size += 1;
            }
        }
        size
    };
    let all: Vec<usize> = (0..edges.len()).collect();
    let r = forest_size(&all);
    let bases: Vec<Vec<usize>> = crate::exactlin::subsets(edges.len(), r)
        .into_iter()
        .filter(|s| forest_size(s) == r)
        .collect();
    Matroid::new(edges.len(), bases)
}
