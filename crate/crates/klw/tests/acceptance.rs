//! Acceptance gate: one test per shipped guarantee. Every test prints a
//! single `ACCEPTANCE NN <slug>: PASS` line once its assertions and its
//! wall-clock budget both hold. Tests serialize through a mutex so each
//! budget is measured on a quiet process.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;

use klw::oracle::{h_table_at_one_by_group_algebra, kl_polynomials_by_duality};
use klw::{
    apply_functor, cells, check_fact1, check_fact2, export_table_bytes, functor_matrix,
    import_table_bytes, read_table, rs_cells, sl2_tensor_case, thmout_multiplicity,
    wall_crossing_vs_theta, write_table, Basis, BigInt, BlockDescriptor, CellSide,
    CoxeterSystem, Element, FunctorSymbol, GrothendieckVector, KlTable, LaurentPoly,
    Rational64, Sl2Classification, Sl2Outcome, Sl2VermaIdentity,
};

static GATE: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(name.parse().unwrap())
}

fn table(name: &str) -> KlTable {
    KlTable::build(&system(name)).unwrap()
}

fn within(budget: Duration, start: Instant, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

fn pass(number: u32, slug: &str) {
    println!("ACCEPTANCE {number:02} {slug}: PASS");
}

fn nonempty_subsets(rank: usize) -> Vec<Vec<usize>> {
    (1..1u32 << rank)
        .map(|mask| (1..=rank).filter(|s| mask >> (s - 1) & 1 == 1).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    let mut out = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            let c = a[i][k];
            if c == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += c * b[k][j];
            }
        }
    }
    out
}

fn scaled_identity(n: usize, c: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c;
    }
    m
}

#[test]
fn acceptance_01_recursion_matches_duality_oracle() {
    let _g = serial();
    let start = Instant::now();
    for name in ["A2", "A3", "B2", "B3"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        let oracle = kl_polynomials_by_duality(&sys).unwrap();
        let elems = sys.all_elements().unwrap();
        for w in elems {
            for x in elems {
                let got = t.kl_polynomial(x, w);
                let want = oracle
                    .get(&(x.clone(), w.clone()))
                    .cloned()
                    .unwrap_or_else(LaurentPoly::zero);
                assert_eq!(got, want, "{name}: P(x={x}, w={w})");
            }
        }
    }
    within(Duration::from_secs(10), start, "criterion 1");
    pass(1, "kl-recursion-equals-duality-oracle");
}

#[test]
fn acceptance_02_positivity_and_degree_bounds() {
    let _g = serial();
    let zero = BigInt::from(0);
    for name in ["A3", "B3"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        let elems = sys.all_elements().unwrap();
        for w in elems {
            for x in elems {
                let p = t.kl_polynomial(x, w);
                if p.is_zero() {
                    continue;
                }
                let coeffs = p.to_q_coeffs().expect("P is a polynomial in q");
                assert!(
                    coeffs.iter().all(|c| *c >= zero),
                    "{name}: negative coefficient in P(x={x}, w={w})"
                );
                if x == w {
                    assert_eq!(p, LaurentPoly::one(), "{name}: diagonal at {w}");
                } else {
                    // Exponents are powers of v, so the classical bound
                    // 2 deg_q P <= l(w) - l(x) - 1 reads directly.
                    let bound = w.length() as i32 - x.length() as i32 - 1;
                    assert!(
                        p.max_exp().unwrap() <= bound,
                        "{name}: degree of P(x={x}, w={w}) exceeds the bound"
                    );
                }
            }
        }
        for x in elems {
            for y in elems {
                for (z, h) in t.h_expansion(x, y).unwrap() {
                    assert!(
                        h.eval_at_one() >= zero,
                        "{name}: h(x={x}, y={y}, z={z})(1) negative"
                    );
                }
            }
        }
    }
    pass(2, "positivity-and-degree-bounds");
}

#[test]
fn acceptance_03_cells_match_robinson_schensted() {
    let _g = serial();
    let start = Instant::now();
    for name in ["A2", "A3", "A4"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        for side in [CellSide::Left, CellSide::Right, CellSide::TwoSided] {
            let kl = cells(&t, side);
            let rs = rs_cells(&sys, side).unwrap();
            assert_eq!(kl.blocks(), rs.blocks(), "{name} {side} partition");
            if side == CellSide::TwoSided {
                for i in 0..kl.block_count() {
                    for j in 0..kl.block_count() {
                        assert_eq!(
                            kl.leq(i, j),
                            rs.leq(i, j),
                            "{name}: two-sided order vs dominance at ({i},{j})"
                        );
                    }
                }
            }
        }
    }
    within(Duration::from_secs(60), start, "criterion 3");
    pass(3, "cells-equal-tableau-fibers-with-dominance-order");
}

#[test]
fn acceptance_04_every_two_sided_cell_contains_a_parabolic_longest_element() {
    let _g = serial();
    let start = Instant::now();
    for name in ["A2", "A3", "A4", "B2", "B3", "B4"] {
        let report = check_fact1(&table(name)).unwrap();
        assert!(report.holds, "{name}: cell without a parabolic witness");
        assert!(report.witnesses.iter().all(Option::is_some), "{name}");
    }
    within(Duration::from_secs(900), start, "criterion 4");
    pass(4, "every-two-sided-cell-contains-a-parabolic-longest-element");
}

#[test]
fn acceptance_05_fact2_dichotomy() {
    let _g = serial();
    for name in ["A2", "A3", "A4"] {
        let report = check_fact2(&table(name)).unwrap();
        assert!(report.holds, "{name}: unexpected violation");
    }
    for name in ["B2", "B3"] {
        let report = check_fact2(&table(name)).unwrap();
        assert!(!report.holds, "{name}: expected a violation");
        assert!(
            report.violations.iter().any(|(_, _, ws)| ws.len() >= 2),
            "{name}: violation must exhibit at least two elements"
        );
    }
    pass(5, "left-right-intersections-singletons-in-type-a-not-in-type-b");
}

#[test]
fn acceptance_06_wall_crossing_identities() {
    let _g = serial();
    for name in ["A1", "A2", "A3", "B2"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        let reg = BlockDescriptor::regular(&t).unwrap();
        for gens in nonempty_subsets(sys.rank()) {
            let wall = sys.parabolic(&gens).unwrap();
            let sing = BlockDescriptor::singular(&t, &wall).unwrap();
            let report = wall_crossing_vs_theta(&reg, &sing).unwrap();
            assert!(report.holds(), "{name} J={gens:?}");

            let on = functor_matrix(&FunctorSymbol::wall_on(&reg, &sing).unwrap()).unwrap();
            let out = functor_matrix(&FunctorSymbol::wall_out(&sing, &reg).unwrap()).unwrap();
            let theta = functor_matrix(
                &FunctorSymbol::theta(&reg, wall.longest_element()).unwrap(),
            )
            .unwrap();
            // Rows are images, so "f then g" is matrix(f) * matrix(g).
            let k = sing.index_set().len();
            assert_eq!(
                matmul(&out, &on),
                scaled_identity(k, wall.order() as i64),
                "{name} J={gens:?}: on after out"
            );
            assert_eq!(
                matmul(&on, &out),
                theta,
                "{name} J={gens:?}: out after on vs theta(w0^J)"
            );
        }
    }
    pass(6, "wall-crossing-composition-identities");
}

#[test]
fn acceptance_07_thmout_multiplicity_equals_wall_order() {
    let _g = serial();
    let start = Instant::now();
    for name in ["A1", "A2", "A3", "B2"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        let reg = BlockDescriptor::regular(&t).unwrap();
        for gens in nonempty_subsets(sys.rank()) {
            let wall = sys.parabolic(&gens).unwrap();
            let sing = BlockDescriptor::singular(&t, &wall).unwrap();
            for y in sing.index_set() {
                assert_eq!(
                    thmout_multiplicity(&reg, &sing, y).unwrap(),
                    wall.order() as i64,
                    "{name} J={gens:?} y={y}"
                );
            }
        }
    }
    within(Duration::from_secs(30), start, "criterion 7");
    pass(7, "theta-out-multiplicity-equals-wall-order");
}

#[test]
fn acceptance_08_composition_matches_group_algebra_structure_constants() {
    let _g = serial();
    for name in ["A2", "B2"] {
        let sys = system(name);
        let t = KlTable::build(&sys).unwrap();
        let reg = BlockDescriptor::regular(&t).unwrap();
        // Structure constants from the integral group ring, not the Hecke
        // multiplication route the functor matrices are built from.
        let h = h_table_at_one_by_group_algebra(&sys).unwrap();
        let elems = sys.all_elements().unwrap();
        let n = elems.len();
        let mats: Vec<Vec<Vec<i64>>> = elems
            .iter()
            .map(|x| functor_matrix(&FunctorSymbol::theta(&reg, x).unwrap()).unwrap())
            .collect();
        for (xi, x) in elems.iter().enumerate() {
            for (yi, y) in elems.iter().enumerate() {
                let composite = matmul(&mats[xi], &mats[yi]);
                let mut expected = vec![vec![0i64; n]; n];
                for (zi, z) in elems.iter().enumerate() {
                    let c = h
                        .get(&(x.clone(), y.clone(), z.clone()))
                        .map(|b| b.to_i64().unwrap())
                        .unwrap_or(0);
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        for j in 0..n {
                            expected[i][j] += c * mats[zi][i][j];
                        }
                    }
                }
                assert_eq!(composite, expected, "{name}: theta_{x} then theta_{y}");
            }
        }
    }
    pass(8, "functor-composition-matches-group-algebra-constants");
}

#[test]
fn acceptance_09_rank_one_case_analysis() {
    let _g = serial();
    let case = sl2_tensor_case(Rational64::new(1, 2)).unwrap();
    assert_eq!(case.classification, Sl2Classification::NotInteger);
    assert_eq!(case.outcome, Sl2Outcome::DirectSumOfTwoSimples);
    assert_eq!(case.verma_identity, Sl2VermaIdentity::SumOfTwoVermas);

    let case = sl2_tensor_case(Rational64::from_integer(5)).unwrap();
    assert_eq!(case.classification, Sl2Classification::IntegerAtLeast2);
    assert_eq!(case.outcome, Sl2Outcome::DirectSumOfTwoSimples);
    assert_eq!(case.verma_identity, Sl2VermaIdentity::SumOfTwoVermas);

    let case = sl2_tensor_case(Rational64::from_integer(1)).unwrap();
    assert_eq!(case.classification, Sl2Classification::IntegerOne);
    assert_eq!(case.outcome, Sl2Outcome::SimplePlusThetaOn);
    assert_eq!(case.verma_identity, Sl2VermaIdentity::SumOfTwoVermas);

    let case = sl2_tensor_case(Rational64::from_integer(0)).unwrap();
    assert_eq!(case.classification, Sl2Classification::Zero);
    assert_eq!(case.outcome, Sl2Outcome::ThetaOutFiltration);
    assert_eq!(case.verma_identity, Sl2VermaIdentity::BigProjective);

    assert!(sl2_tensor_case(Rational64::from_integer(-3)).is_err());

    // Rank-one block model: tensoring the dominant Verma with the natural
    // module is theta_s, whose class is the sum of the two Vermas and also
    // the Verma flag of the big projective.
    let sys = system("A1");
    let t = KlTable::build(&sys).unwrap();
    let reg = BlockDescriptor::regular(&t).unwrap();
    let e = sys.identity();
    let s = sys.generator(1).unwrap();
    let dominant = GrothendieckVector::unit(&reg, Basis::Verma, &e).unwrap();

    let theta = FunctorSymbol::theta(&reg, &s).unwrap();
    let tensor = apply_functor(&theta, &dominant).unwrap();
    let two_vermas: BTreeMap<Element, i64> = [(e.clone(), 1), (s.clone(), 1)].into();
    let two_vermas = GrothendieckVector::new(&reg, Basis::Verma, two_vermas).unwrap();
    assert_eq!(tensor, two_vermas);

    // Big projective: Verma flag multiplicities P_{x, w0}(1) = 1 for all x.
    let w0 = sys.longest_element();
    for x in sys.all_elements().unwrap() {
        assert_eq!(t.kl_polynomial(x, &w0).eval_at_one(), BigInt::from(1));
    }

    // The same class through the wall.
    let wall = sys.parabolic(&[1]).unwrap();
    let sing = BlockDescriptor::singular(&t, &wall).unwrap();
    let on = FunctorSymbol::wall_on(&reg, &sing).unwrap();
    let out = FunctorSymbol::wall_out(&sing, &reg).unwrap();
    let through = apply_functor(&out, &apply_functor(&on, &dominant).unwrap()).unwrap();
    assert_eq!(through, two_vermas);

    pass(9, "rank-one-tensor-case-analysis");
}

#[test]
fn acceptance_10_persistence_round_trip_and_reload_speedup() {
    let _g = serial();
    let t = table("B3");
    let bytes = export_table_bytes(&t);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.klt.json");
    write_table(&t, &path).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), bytes, "file round trip");
    let imported = read_table(&path).unwrap();
    assert_eq!(export_table_bytes(&imported), bytes, "re-export round trip");

    let rebuild = (0..5)
        .map(|_| {
            let sys = system("B3");
            let start = Instant::now();
            let t = KlTable::build(&sys).unwrap();
            let elapsed = start.elapsed();
            assert_eq!(t.system().order(), 48);
            elapsed
        })
        .min()
        .unwrap();
    let reload = (0..5)
        .map(|_| {
            let start = Instant::now();
            let t = import_table_bytes(&bytes).unwrap();
            let elapsed = start.elapsed();
            assert_eq!(t.system().order(), 48);
            elapsed
        })
        .min()
        .unwrap();
    if reload * 10 <= rebuild {
        pass(10, "persistence-round-trip-and-reload-speedup");
    } else {
        println!("ACCEPTANCE 10 persistence-round-trip-and-reload-speedup: FAIL");
        // Kept red on purpose. The round trip above is byte-identical, but
        // the required speedup does not exist for a group this small: the
        // parallel row recursion rebuilds B3 (48 elements, best-of-five
        // measured here) faster than the 20 KB JSON serialization can be
        // parsed, and the gap widens with rank since the build fans out
        // over rows while parsing stays serial. See the persistence notes
        // in the book for measured numbers across ranks.
        panic!(
            "reload of B3 took {reload:?} against {rebuild:?} for a full rebuild \
             ({:.2}x, required 10x)",
            rebuild.as_secs_f64() / reload.as_secs_f64()
        );
    }
}
