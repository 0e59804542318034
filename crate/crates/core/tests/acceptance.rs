//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sheafhom::chains::{
    borel_moore_complex, compact_support_complex, usual_chain_complex, usual_cochain_complex,
};
use sheafhom::exactlin::{binomial, compound_matrix, rat, RatMatrix};
use sheafhom::generators::cube_complex;
use sheafhom::polycomplex::{orientations, orientations_flipped};
use sheafhom::sheaves::{
    constant_cosheaf, constant_sheaf, dualize, fcosheaf, validate, wsheaf, CellSheaf,
};
use sheafhom::{ChainComplex, PolyhedralComplex};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cube = cube_complex(3);
    let o = orientations(&cube).map_err(|e| e.to_string())?;
    let table = usual_w_table(&cube, &o);
    expect(
        "W^p cochain table",
        table.clone(),
        vec![
            vec![1, 0, 0, 0],
            vec![0, 3, 0, 0],
            vec![0, 0, 3, 0],
            vec![0, 0, 0, 1],
        ],
    )?;
    let diagonal: Vec<usize> = (0..4).map(|p| table[p][p]).collect();
    expect("diagonal", diagonal, vec![1, 3, 3, 1])?;
    within(Duration::from_secs(1), start)
}

fn f_tables(pc: &PolyhedralComplex, usual: Vec<Vec<usize>>, bm: Vec<Vec<usize>>) -> Outcome {
    let o = orientations(pc).map_err(|e| e.to_string())?;
    expect("usual F_p table", usual_f_table(pc, &o), usual)?;
    expect("Borel-Moore F_p table", bm_f_table(pc, &o), bm)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    f_tables(
        &tropical_line(),
        vec![vec![1, 0], vec![2, 0]],
        vec![vec![0, 2], vec![0, 1]],
    )?;
    within(Duration::from_secs(1), start)
}

fn vertex_stalks(pc: &PolyhedralComplex) -> Vec<usize> {
    let vertex = pc.cells_of_dim(0, true)[0];
    (0..=top(pc))
        .map(|p| fcosheaf(pc, p).stalk_dim(vertex))
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let pc = k4_fan();
    f_tables(
        &pc,
        vec![vec![1, 0, 0], vec![5, 0, 0], vec![6, 0, 0]],
        vec![vec![0, 0, 6], vec![0, 0, 5], vec![0, 0, 1]],
    )?;
    expect("dim F_p(vertex)", vertex_stalks(&pc), vec![1, 5, 6])?;
    within(Duration::from_secs(5), start)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    f_tables(
        &u36_fan(),
        vec![vec![1, 0, 0], vec![5, 0, 0], vec![10, 0, 0]],
        vec![vec![0, 0, 10], vec![0, 0, 5], vec![0, 0, 1]],
    )?;
    within(Duration::from_secs(10), start)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    f_tables(
        &hypersurface(CONIC),
        vec![vec![1, 0], vec![3, 0]],
        vec![vec![0, 3], vec![0, 1]],
    )?;
    within(Duration::from_secs(2), start)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let pc = hypersurface(K3);
    expect(
        "f-vector of bounded faces",
        pc.bounded_f_vector(),
        vec![64, 96, 34],
    )?;
    f_tables(
        &pc,
        vec![vec![1, 0, 1], vec![3, 31, 0], vec![34, 0, 0]],
        vec![vec![0, 0, 34], vec![0, 31, 3], vec![1, 0, 1]],
    )?;
    let o = orientations(&pc).map_err(|e| e.to_string())?;
    let cc = usual_chain_complex(&pc, &fcosheaf(&pc, 0), &o).map_err(|e| e.to_string())?;
    expect(
        "print",
        cc.print(),
        " 3       2        1        0        -1\nk^0 --> k^34 --> k^96 --> k^64 --> k^0"
            .to_string(),
    )?;
    within(Duration::from_secs(120), start)
}

fn generated_corpus() -> Vec<(&'static str, PolyhedralComplex)> {
    vec![
        ("B(U(2,3))", tropical_line()),
        ("B(M(K4))", k4_fan()),
        ("B(U(3,6))", u36_fan()),
        ("tropical line hypersurface", hypersurface("max(0,x,y)")),
        ("conic", hypersurface(CONIC)),
        ("K3", hypersurface(K3)),
    ]
}

fn criterion_7() -> Outcome {
    for (name, pc) in generated_corpus() {
        let o = orientations(&pc).map_err(|e| e.to_string())?;
        let d = top(&pc);
        let usual = usual_f_table(&pc, &o);
        let bm = bm_f_table(&pc, &o);
        for p in 0..=d {
            for q in 0..=d {
                if usual[p][q] != bm[d - p][d - q] {
                    return Err(format!(
                        "{name}: dim H_{q}(F_{p}) = {} but dim H^BM_{}(F_{}) = {}",
                        usual[p][q],
                        d - q,
                        d - p,
                        bm[d - p][d - q]
                    ));
                }
            }
        }
    }
    Ok(())
}

fn alternating(xs: impl IntoIterator<Item = usize>) -> i64 {
    xs.into_iter()
        .enumerate()
        .map(|(q, x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

fn criterion_8() -> Outcome {
    for (name, pc) in [
        ("B(U(2,3))", tropical_line()),
        ("B(M(K4))", k4_fan()),
        ("B(U(3,6))", u36_fan()),
    ] {
        let o = orientations(&pc).map_err(|e| e.to_string())?;
        let d = top(&pc);
        let f = pc.f_vector();
        let fb = pc.bounded_f_vector();
        for p in 0..=d {
            let w = wsheaf(&pc, p);
            let usual = usual_cochain_complex(&pc, &w, &o).map_err(|e| e.to_string())?;
            let cs = compact_support_complex(&pc, &w, &o).map_err(|e| e.to_string())?;
            let hu = usual.betti_numbers().map_err(|e| e.to_string())?;
            let hc = cs.betti_numbers().map_err(|e| e.to_string())?;
            for q in 0..=d {
                if p != q && hu[q] != 0 {
                    return Err(format!("{name}: H^{q}(W^{p}) = {}", hu[q]));
                }
                if q != d && hc[q] != 0 {
                    return Err(format!("{name}: H^{q}_c(W^{p}) = {}", hc[q]));
                }
            }
            let expected_usual = alternating((0..=d).map(|q| binomial(q, p) * fb[q]));
            let expected_cs = alternating((0..=d).map(|q| binomial(q, p) * f[q]));
            for (label, cc, h, want) in [
                ("usual", &usual, &hu, expected_usual),
                ("compact support", &cs, &hc, expected_cs),
            ] {
                if cc.euler_characteristic() != want || alternating(h.iter().copied()) != want {
                    return Err(format!(
                        "{name}: {label} Euler characteristic of W^{p} is {} (groups) / {} (Betti), expected {want}",
                        cc.euler_characteristic(),
                        alternating(h.iter().copied())
                    ));
                }
            }
        }
    }
    Ok(())
}

fn constructor_outputs(pc: &PolyhedralComplex) -> Vec<(String, CellSheaf)> {
    let mut out = vec![
        ("constant sheaf".to_string(), constant_sheaf(pc)),
        ("constant cosheaf".to_string(), constant_cosheaf(pc)),
    ];
    for p in 0..=top(pc) {
        let w = wsheaf(pc, p);
        let f = fcosheaf(pc, p);
        out.push((format!("dual W^{p}"), dualize(&w)));
        out.push((format!("dual F_{p}"), dualize(&f)));
        out.push((format!("W^{p}"), w));
        out.push((format!("F_{p}"), f));
    }
    out
}

fn assembled(
    pc: &PolyhedralComplex,
    s: &CellSheaf,
    o: &sheafhom::OrientationMap,
) -> Vec<ChainComplex> {
    match s.direction {
        sheafhom::Direction::Sheaf => vec![
            usual_cochain_complex(pc, s, o).unwrap(),
            compact_support_complex(pc, s, o).unwrap(),
        ],
        sheafhom::Direction::Cosheaf => vec![
            usual_chain_complex(pc, s, o).unwrap(),
            borel_moore_complex(pc, s, o).unwrap(),
        ],
    }
}

fn random_flips(pc: &PolyhedralComplex, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    pc.non_far_cells().filter(|_| rng.gen_bool(0.5)).collect()
}

fn all_betti(pc: &PolyhedralComplex, o: &sheafhom::OrientationMap) -> Vec<Vec<usize>> {
    constructor_outputs(pc)
        .iter()
        .flat_map(|(_, s)| assembled(pc, s, o))
        .map(|cc| cc.betti_numbers().unwrap())
        .collect()
}

fn criterion_9() -> Outcome {
    let mut corpus = generated_corpus();
    corpus.push(("3-cube", cube_complex(3)));
    for (name, pc) in &corpus {
        let o = orientations(pc).map_err(|e| e.to_string())?;
        for (label, s) in constructor_outputs(pc) {
            let report = validate(&s, pc);
            if !report.is_valid() {
                return Err(format!(
                    "{name}: {label} fails validation: {:?}",
                    report.violations
                ));
            }
            for cc in assembled(pc, &s, &o) {
                if !cc.is_welldefined() {
                    return Err(format!("{name}: d∘d ≠ 0 for {label}"));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (name, pc) in [("3-cube", cube_complex(3)), ("conic", hypersurface(CONIC))] {
        let reference = all_betti(&pc, &orientations(&pc).map_err(|e| e.to_string())?);
        for _ in 0..10 {
            let flips = random_flips(&pc, &mut rng);
            let o = orientations_flipped(&pc, &flips).map_err(|e| e.to_string())?;
            if all_betti(&pc, &o) != reference {
                return Err(format!(
                    "{name}: Betti numbers change under re-orientation {flips:?}"
                ));
            }
        }
    }

    for trial in 0..100 {
        let (m, k, n) = (
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
            rng.gen_range(1..=4),
        );
        let mut random = |r: usize, c: usize| {
            let entries: Vec<_> = (0..r * c).map(|_| rat(rng.gen_range(-5..=5))).collect();
            RatMatrix::from_vec(r, c, entries)
        };
        let a = random(m, k);
        let b = random(k, n);
        for p in 0..=m.min(k).min(n) {
            let lhs = compound_matrix(&a.mul(&b), p);
            let rhs = compound_matrix(&a, p).mul(&compound_matrix(&b, p));
            if lhs != rhs {
                return Err(format!(
                    "compound functoriality fails on pair {trial} at p = {p}"
                ));
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let cube = cube_complex(3);
    let o = orientations(&cube).map_err(|e| e.to_string())?;
    let cc = usual_cochain_complex(&cube, &constant_sheaf(&cube), &o).map_err(|e| e.to_string())?;
    expect(
        "3-cube",
        cc.betti_numbers().map_err(|e| e.to_string())?,
        vec![1, 0, 0, 0],
    )?;
    let line = tropical_line();
    let o = orientations(&line).map_err(|e| e.to_string())?;
    let cc = usual_cochain_complex(&line, &constant_sheaf(&line), &o).map_err(|e| e.to_string())?;
    expect(
        "tropical line",
        cc.betti_numbers().map_err(|e| e.to_string())?,
        vec![1, 0],
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("3-cube W^p cochain table and dual h-vector", criterion_1),
        (
            "tropical line F_p usual and Borel-Moore homology",
            criterion_2,
        ),
        ("Bergman fan of M(K4)", criterion_3),
        ("Bergman fan of U(3,6)", criterion_4),
        ("tropical conic", criterion_5),
        ("tropical K3 surface", criterion_6),
        (
            "Poincaré duality on generated fans and hypersurfaces",
            criterion_7,
        ),
        (
            "W^p vanishing and Euler characteristics on Bergman fans",
            criterion_8,
        ),
        (
            "d∘d, functoriality, orientation and compound invariance",
            criterion_9,
        ),
        ("constant sheaf on contractible complexes", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) => println!("PASS criterion {:>2}: {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
