#![allow(dead_code)]

use sheafhom::chains::{
    borel_moore_complex, compact_support_complex, usual_chain_complex, usual_cochain_complex,
};
use sheafhom::generators::{
    bergman_fan, complete_graph, graphic_matroid, parse_tropical_polynomial, tropical_hypersurface,
    uniform_matroid, Convention,
};
use sheafhom::polycomplex::OrientationMap;
use sheafhom::sheaves::{fcosheaf, wsheaf};
use sheafhom::PolyhedralComplex;

pub const CONIC: &str = "max(0,x+5,y+3,x+y+9)";

pub const K3: &str = "max(0,x,y,z, 2*x-2,
   2*y-2, 2*z-2, x+y-1, x+z-1, y+z-1, 3*x-6,
   3*y-6, 3*z-6, 2*x+y-4, 2*y+x-4, 2*x+z-4,
   2*z+x-4, 2*y+z-4, 2*z+y-4, x+y+z+1, 4*x-12,
   4*y-12, 4*z-12, 3*x+y-9, 3*y+x-9, 3*x+z-9,
   3*z+x-9, 3*y+z-9, 3*z+y-9, 2*x+2*y-8,
   2*x+2*z-8, 2*y+2*z-8, 2*x+y+z-7, x+2*z+y-7,
   2*y+z+x-7)";

pub fn tropical_line() -> PolyhedralComplex {
    bergman_fan(&uniform_matroid(2, 3).unwrap(), Convention::Max).unwrap()
}

pub fn k4_fan() -> PolyhedralComplex {
    bergman_fan(
        &graphic_matroid(&complete_graph(4)).unwrap(),
        Convention::Max,
    )
    .unwrap()
}

pub fn u36_fan() -> PolyhedralComplex {
    bergman_fan(&uniform_matroid(3, 6).unwrap(), Convention::Max).unwrap()
}

pub fn hypersurface(src: &str) -> PolyhedralComplex {
    tropical_hypersurface(&parse_tropical_polynomial(src).unwrap()).unwrap()
}

pub fn top(pc: &PolyhedralComplex) -> usize {
    pc.dim() as usize
}

/// Rows `p = 0..=d` of usual `F_p` homology Betti numbers.
pub fn usual_f_table(pc: &PolyhedralComplex, o: &OrientationMap) -> Vec<Vec<usize>> {
    (0..=top(pc))
        .map(|p| {
            usual_chain_complex(pc, &fcosheaf(pc, p), o)
                .unwrap()
                .betti_numbers()
                .unwrap()
        })
        .collect()
}

pub fn bm_f_table(pc: &PolyhedralComplex, o: &OrientationMap) -> Vec<Vec<usize>> {
    (0..=top(pc))
        .map(|p| {
            borel_moore_complex(pc, &fcosheaf(pc, p), o)
                .unwrap()
                .betti_numbers()
                .unwrap()
        })
        .collect()
}

pub fn usual_w_table(pc: &PolyhedralComplex, o: &OrientationMap) -> Vec<Vec<usize>> {
    (0..=top(pc))
        .map(|p| {
            usual_cochain_complex(pc, &wsheaf(pc, p), o)
                .unwrap()
                .betti_numbers()
                .unwrap()
        })
        .collect()
}

pub fn cs_w_table(pc: &PolyhedralComplex, o: &OrientationMap) -> Vec<Vec<usize>> {
    (0..=top(pc))
        .map(|p| {
            compact_support_complex(pc, &wsheaf(pc, p), o)
                .unwrap()
                .betti_numbers()
                .unwrap()
        })
        .collect()
}
