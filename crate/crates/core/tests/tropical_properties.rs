mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use sheafhom::exactlin::{rank, rat, ratio, Rat, RatMatrix};
use sheafhom::generators::{parse_tropical_polynomial, tropical_hypersurface, Convention};
use sheafhom::PolyhedralComplex;

const VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug)]
struct RawTerm {
    exponents: Vec<i64>,
    constant: (i64, i64),
}

fn term_text(t: &RawTerm) -> String {
    let mut s = String::new();
    for (a, v) in t.exponents.iter().zip(VARS) {
        match *a {
            0 => continue,
            1 if s.is_empty() => s.push_str(v),
            1 => s.push_str(&format!("+{v}")),
            -1 => s.push_str(&format!("-{v}")),
            a if a > 0 && !s.is_empty() => s.push_str(&format!("+{a}*{v}")),
            a => s.push_str(&format!("{a}*{v}")),
        }
    }
    let (p, q) = t.constant;
    let c = if q == 1 {
        format!("{}", p.abs())
    } else {
        format!("{}/{q}", p.abs())
    };
    if s.is_empty() {
        if p < 0 {
            s.push('-');
        }
        s.push_str(&c);
    } else if p != 0 {
        s.push(if p < 0 { '-' } else { '+' });
        s.push_str(&c);
    }
    s
}

fn raw_terms(n: usize, max_terms: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (prop::collection::vec(-2i64..=2, n), -9i64..=9, 1i64..=3).prop_map(|(exponents, p, q)| {
            RawTerm {
                exponents,
                constant: (p, q),
            }
        }),
        1..=max_terms,
    )
}

fn source(max: bool, terms: &[RawTerm]) -> String {
    let body: Vec<String> = terms.iter().map(term_text).collect();
    format!("{}({})", if max { "max" } else { "min" }, body.join(", "))
}

fn value(t: &RawTerm, x: &[Rat]) -> Rat {
    let mut v = ratio(t.constant.0, t.constant.1);
    for (a, xi) in t.exponents.iter().zip(x) {
        v += rat(*a) * xi;
    }
    v
}

/// Affine dimension of a finite point set.
fn affine_dim(points: &[Vec<i64>]) -> usize {
    let n = points[0].len();
    let cols: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| rat(a - b)).collect())
        .collect();
    if cols.is_empty() {
        return 0;
    }
    rank(&RatMatrix::from_columns(&cols, n))
}

/// A point in the relative interior of a non-far cell.
fn interior_point(pc: &PolyhedralComplex, cell: usize) -> Vec<Rat> {
    let n = pc.ambient_dim();
    let rays = &pc.cell(cell).rays;
    let vertices: Vec<&Vec<Rat>> = rays
        .iter()
        .map(|&r| &pc.rays()[r])
        .filter(|r| r[0].is_one())
        .collect();
    let mut x = vec![Rat::zero(); n];
    for v in &vertices {
        for i in 0..n {
            x[i] += &v[i + 1] / rat(vertices.len() as i64);
        }
    }
    for &r in rays {
        let r = &pc.rays()[r];
        if r[0].is_zero() {
            for i in 0..n {
                x[i] += &r[i + 1];
            }
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn parse_display_round_trip(max in any::<bool>(), terms in raw_terms(3, 6)) {
        let src = source(max, &terms);
        let f = parse_tropical_polynomial(&src).unwrap();
        let again = parse_tropical_polynomial(&f.to_string()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(f.convention, if max { Convention::Max } else { Convention::Min });
    }

    #[test]
    fn evaluation_matches_raw_terms(
        max in any::<bool>(),
        terms in raw_terms(3, 6),
        point in prop::collection::vec(-5i64..=5, 3),
    ) {
        let src = source(max, &terms);
        let f = parse_tropical_polynomial(&src).unwrap();
        let used: Vec<usize> = (0..3)
            .filter(|&i| terms.iter().any(|t| t.exponents[i] != 0))
            .collect();
        let x: Vec<Rat> = used.iter().map(|&i| rat(point[i])).collect();
        let full: Vec<Rat> = point.iter().map(|&p| rat(p)).collect();
        let values = terms.iter().map(|t| value(t, &full));
        let want = if max { values.max().unwrap() } else { values.min().unwrap() };
        prop_assert_eq!(f.evaluate(&x), want);
    }

    /// Every cell is where exactly the terms of a subdivision cell tie, and
    /// the two dimensions add up to the number of variables.
    #[test]
    fn hypersurface_duality(max in any::<bool>(), terms in raw_terms(2, 6)) {
        let src = source(max, &terms);
        let f = parse_tropical_polynomial(&src).unwrap();
        prop_assume!(f.terms.len() >= 2);
        let pc = tropical_hypersurface(&f).unwrap();
        let n = f.n_variables();
        // without lineality the ambient space is unchanged
        prop_assume!(pc.ambient_dim() == n);
        for cell in pc.non_far_cells() {
            if pc.cell(cell).rays.is_empty() {
                continue;
            }
            let x = interior_point(&pc, cell);
            let best = f.evaluate(&x);
            let tied: Vec<Vec<i64>> = f
                .terms
                .iter()
                .filter(|t| sheafhom::generators::tropical::term_value(t, &x) == best)
                .map(|t| t.exponents.clone())
                .collect();
            prop_assert!(tied.len() >= 2, "cell {} has a single optimal term", cell);
            prop_assert_eq!(pc.cell(cell).dim as usize + affine_dim(&tied), n);
        }
        for cell in pc.non_far_cells() {
            prop_assert!(
                pc.maximal_cells().contains(&cell)
                    || pc.faces_above(cell).iter().any(|c| pc.maximal_cells().contains(c))
            );
        }
    }
}

#[test]
fn standard_polynomials_parse() {
    let f = parse_tropical_polynomial("max(0,x+5,y+3,x+y+9)").unwrap();
    let exps: Vec<Vec<i64>> = f.terms.iter().map(|t| t.exponents.clone()).collect();
    assert_eq!(exps, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    let coeffs: Vec<Rat> = f.terms.iter().map(|t| t.coefficient.clone()).collect();
    assert_eq!(coeffs, vec![rat(0), rat(5), rat(3), rat(9)]);

    let g = parse_tropical_polynomial("max(2*x+y-4, 3*z-6)").unwrap();
    assert_eq!(g.terms[0].exponents, vec![2, 1, 0]);
    assert_eq!(g.terms[0].coefficient, rat(-4));
    assert_eq!(g.terms[1].exponents, vec![0, 0, 3]);
    assert_eq!(g.terms[1].coefficient, rat(-6));

    let h = parse_tropical_polynomial("min(x, y)").unwrap();
    assert_eq!(h.convention, Convention::Min);
    assert_eq!(h.terms.len(), 2);

    let k3 = parse_tropical_polynomial(common::K3).unwrap();
    assert_eq!(k3.terms.len(), 35);
    assert_eq!(k3.n_variables(), 3);
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse_tropical_polynomial("max(0, x+)").unwrap_err();
    assert_eq!(e.position, 9);
    assert!(parse_tropical_polynomial("mux(0, x)").is_err());
    assert!(parse_tropical_polynomial("max()").is_err());
    assert!(parse_tropical_polynomial("max(0.5*x, 1)").is_err());
}
