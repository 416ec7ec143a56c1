use proptest::prelude::*;

use fgx::adversary::{
    classify_block, dyck_check, dyck_wrap, gen_symbol, gen_x_matrix, gen_y_matrix, is_member_x, is_member_y,
    prefix_imbalance_profile, SymbolKind,
};
use fgx::bp::{matrix_encode, random_bp, StairMatrix, TruthTable};
use fgx::convert::{coarse_to_path, path_to_coarse};
use fgx::editdist::{coarse_validate, edit_distance, Alignment};
use fgx::ov::{random_cnf, williams_vectors};
use fgx::pathcost::{path_cost, random_path, validate_path, CostConstants};
use fgx::reduction::{build_instance, GadgetParams, FILLER, MARKER, PAD, SEP_CLOSE, SEP_OPEN};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tt_strategy() -> impl Strategy<Value = TruthTable> {
    prop_oneof![Just(2usize), Just(4), Just(6)]
        .prop_flat_map(|n| proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |b| TruthTable::new(n, b).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn programs_are_layered(h in 1usize..4, depth in 2usize..6, width in 1usize..4, density in 0.1f64..0.9, seed: u64) {
        let n = 2 * h;
        let bp = random_bp(n, depth, width, density, seed).unwrap();
        let layer_of = |v: u32| bp.layers().iter().position(|l| l.contains(&v)).unwrap();
        for e in bp.edges() {
            prop_assert_eq!(layer_of(e.from) + 1, layer_of(e.to));
            prop_assert!((1..=n).contains(&e.var));
        }
        prop_assert_eq!(layer_of(bp.start()), 0);
        prop_assert_eq!(layer_of(bp.accept()), bp.layers().len() - 1);
        prop_assert_eq!(bp.size(), bp.edges().len());
        prop_assert_eq!(bp.truth_table(1 << 10).unwrap().bits().len(), 1 << n);
    }

    #[test]
    fn staircase_places_every_bit_once(tt in tt_strategy()) {
        let m = matrix_encode(&tt).unwrap();
        let (l, k) = (m.l(), m.k());
        prop_assert_eq!(k, 2 * l - 1);
        let mut seen = vec![0u8; tt.bits().len()];
        for i in 1..=k {
            for j in 1..=l {
                match StairMatrix::tt_index(l, i, j) {
                    Some(t) => {
                        seen[t - 1] += 1;
                        prop_assert_eq!(m.matrix().get(i, j), tt.bits()[t - 1]);
                    }
                    None => prop_assert!(!m.matrix().get(i, j)),
                }
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert_eq!(m.decode(), tt);
    }

    #[test]
    fn valid_constants_obey_their_inequalities(q in 1i64..20, rho in 1i64..20, s_g in 0i64..80, t in 0i64..200, l in 1usize..32) {
        if let Ok(c) = CostConstants::new(q, rho, s_g, t, l) {
            prop_assert!(c.c1() < c.c0());
            prop_assert!(c.s_g > 2 * c.q && c.t > c.s_g);
            prop_assert_eq!(c.c_jump(), 2 * c.t + c.s_g);
            for m in 2..10 {
                prop_assert!(c.s_g * (m - 1) > c.q * m);
            }
        }
    }

    #[test]
    fn random_paths_satisfy_path_rules(l in 1usize..9, p in 0.0f64..0.6, seed: u64) {
        let k = 2 * l - 1;
        let path = random_path(k, l, p, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(validate_path(&path, k, l).is_ok());
        prop_assert_eq!(path.points[0].1, 1);
        prop_assert_eq!(path.points[path.len() - 1].1, l);
        for w in path.points.windows(2) {
            prop_assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn path_cost_grows_with_mu(l in 1usize..6, seed: u64) {
        let k = 2 * l - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let path = random_path(k, l, 0.3, &mut rng);
        let tt = TruthTable::new(2, vec![seed & 1 == 1, seed & 2 == 2, seed & 4 == 4, seed & 8 == 8]).unwrap();
        let m = matrix_encode(&tt).unwrap();
        if m.l() == l {
            let c = GadgetParams::default().constants(l).unwrap();
            let lo = path_cost(m.matrix(), &path, 0, &c).unwrap();
            let hi = path_cost(m.matrix(), &path, c.q, &c).unwrap();
            prop_assert!(lo <= hi);
        }
    }

    #[test]
    fn conversions_preserve_validity(l in 1usize..9, p in 0.0f64..0.6, seed: u64) {
        let k = 2 * l - 1;
        let path = random_path(k, l, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = path_to_coarse(&path, l).unwrap();
        let (lo, hi) = (path.points[0].0, path.points[path.len() - 1].0 + l - 1);
        prop_assert!(coarse_validate(&c, lo, hi, l).is_ok());
        for (ps, qs) in &c.terms {
            prop_assert!(ps.len() == 1 || qs.len() == 1);
        }
        prop_assert_eq!(coarse_to_path(&c, l).unwrap(), path);
    }

    #[test]
    fn alignments_are_strictly_monotone(pairs in proptest::collection::btree_set((1usize..9, 1usize..9), 0..8)) {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let monotone = pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        prop_assert_eq!(Alignment::new(pairs).validate(8, 8).is_ok(), monotone);
    }

    #[test]
    fn edit_distance_is_a_metric(a in proptest::collection::vec(0u8..3, 0..12), b in proptest::collection::vec(0u8..3, 0..12), c in proptest::collection::vec(0u8..3, 0..12)) {
        let (ab, bc, ac) = (edit_distance(&a, &b), edit_distance(&b, &c), edit_distance(&a, &c));
        prop_assert_eq!(ab, edit_distance(&b, &a));
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(ab >= a.len().abs_diff(b.len()));
    }

    #[test]
    fn ov_vectors_have_uniform_shape(h in 1usize..5, m in 1usize..20, width in 1usize..4, seed: u64) {
        let n = 2 * h;
        let f = random_cnf(n, m, width.min(n), seed).unwrap();
        for cl in f.clauses() {
            prop_assert!(!cl.is_empty());
            prop_assert!(cl.iter().all(|&lit| lit != 0 && lit.unsigned_abs() as usize <= n));
        }
        let inst = williams_vectors(&f).unwrap();
        prop_assert_eq!(inst.u().len(), 1 << h);
        prop_assert_eq!(inst.v().len(), 1 << h);
        prop_assert!(inst.u().iter().chain(inst.v()).all(|v| v.len() == m));
    }

    #[test]
    fn symbols_carry_their_imbalance(level in 0usize..3, k in prop_oneof![Just(2usize), Just(4)], kind in prop_oneof![Just(SymbolKind::Plus), Just(SymbolKind::Minus), Just(SymbolKind::Zero)], seed: u64) {
        prop_assume!(!(level == 2 && k == 4));
        let s = gen_symbol(level, kind, k, seed).unwrap();
        let ones = s.iter().filter(|&&b| b).count() as i64;
        prop_assert_eq!(2 * ones - s.len() as i64, kind.imbalance());
        prop_assert_eq!(classify_block(&s, level, k).unwrap(), Some(kind));
    }

    #[test]
    fn family_rows_have_fixed_popcounts(k in prop_oneof![Just(2usize), Just(4)], t in 0usize..2, seed: u64) {
        prop_assume!(!(k == 4 && t == 1));
        let x = gen_x_matrix(k, t, seed).unwrap();
        let y = gen_y_matrix(k, t, seed).unwrap();
        let side = x.matrix.rows();
        prop_assert!(is_member_x(&x.matrix, k, t) && is_member_y(&y.matrix, k, t));
        prop_assert!(!is_member_y(&x.matrix, k, t) && !is_member_x(&y.matrix, k, t));
        let ones = |m: &fgx::matrix::BitMatrix, r| m.row(r).iter().filter(|&&b| b).count();
        prop_assert!((1..=side).all(|r| ones(&x.matrix, r) == side / 2));
        let heavy = (1..=side).filter(|&r| ones(&y.matrix, r) == side / 2 + 1).count();
        let even = (1..=side).filter(|&r| ones(&y.matrix, r) == side / 2).count();
        prop_assert_eq!((heavy, even), (1, side - 1));
    }

    #[test]
    fn wrapped_rows_stay_within_depth(row in proptest::collection::vec(any::<bool>(), 0..24)) {
        let d = prefix_imbalance_profile(&row);
        let s = dyck_wrap(&row, d);
        let balanced = 2 * row.iter().filter(|&&b| b).count() == row.len();
        prop_assert_eq!(dyck_check(&s, 2 * d).unwrap(), balanced);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn instances_have_the_stated_shape(depth in 2usize..5, width in 1usize..4, density in 0.2f64..0.8, seed: u64) {
        let bp = random_bp(2, depth, width, density, seed).unwrap();
        let inst = build_instance(&bp, &GadgetParams::default()).unwrap();
        let c = inst.constants();
        let l = inst.l();
        let (x, y) = (inst.x().as_slice(), inst.y().as_slice());
        prop_assert_eq!(x.len() as i64, (3 * l as i64 - 2) * (2 * c.t + c.s_g));
        prop_assert_eq!(inst.c_star(), 2 * x.len() as i64 + c.threshold());
        prop_assert!(y[..x.len()].iter().chain(&y[y.len() - x.len()..]).all(|&s| s == PAD));
        prop_assert_eq!(y.len() - 2 * x.len(), l * inst.block_len());
        let mut gadgets: Vec<&[u8]> = (1..=l).flat_map(|i| [inst.gadget(i).as_slice(), inst.cogadget(i).as_slice()]).collect();
        gadgets.push(inst.dummy().as_slice());
        for g in gadgets {
            prop_assert_eq!(g.len() as i64, c.s_g);
            prop_assert!(g.iter().all(|&s| s <= FILLER));
        }
        prop_assert!(x.iter().chain(y).all(|&s| s <= MARKER + 1 || s == SEP_OPEN || s == SEP_CLOSE || s == PAD));
    }
}
