use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use turyn::f2linalg::{rref, solve};
use turyn::io;
use turyn::orthogroup::{
    find_complement, map_complementary_pair, random_block_isometry, random_isometry, wreath_decompose,
    WreathDecomposition,
};
use turyn::quadspace::{hyperbolic_space, standard_phi};
use turyn::verify::witt_case;
use turyn::{F2Matrix, F2Vector, Subspace};

fn vector(n: usize) -> impl Strategy<Value = F2Vector> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| F2Vector::from_bools(&b))
}

fn matrix(max: usize) -> impl Strategy<Value = F2Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(vector(c), r).prop_map(move |rows| F2Matrix::from_rows(c, rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn transpose_and_text_round_trip(m in matrix(70)) {
        prop_assert_eq!(m.transpose().transpose(), m.clone());
        prop_assert_eq!(io::parse_f2_matrix(&io::write_f2_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn solve_is_consistent(m in matrix(40), seed in any::<u64>()) {
        // b in the row space is always solvable; x·M must reproduce it.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: Vec<bool> = (0..m.rows()).map(|_| rand::Rng::gen(&mut rng)).collect();
        let b = F2Vector::from_bools(&c).mul_mat(&m);
        let x = solve(&m, &b).expect("b is in the row space");
        prop_assert_eq!(x.mul_mat(&m), b);
    }

    #[test]
    fn inverse_round_trip(m in matrix(24)) {
        let sq = m.block(0, m.rows().min(m.cols()), 0, m.rows().min(m.cols()));
        match sq.inverse() {
            Some(inv) => prop_assert!(sq.mul(&inv).is_identity() && inv.mul(&sq).is_identity()),
            None => prop_assert!(sq.rank() < sq.rows()),
        }
    }

    #[test]
    fn rref_is_canonical(m in matrix(30), seed in any::<u64>()) {
        // Mixing rows does not change the reduced basis.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = m.row_vectors().to_vec();
        for _ in 0..rows.len() * 2 {
            let i = rand::Rng::gen_range(&mut rng, 0..rows.len());
            let j = rand::Rng::gen_range(&mut rng, 0..rows.len());
            if i != j {
                let src = rows[j].clone();
                rows[i].xor_assign(&src);
            }
        }
        let mixed = F2Matrix::from_rows(m.cols(), rows);
        prop_assert_eq!(rref(&m).rank, rref(&mixed).rank);
        prop_assert_eq!(Subspace::from_matrix(&m), Subspace::from_matrix(&mixed));
    }

    #[test]
    fn dimension_formula(a in matrix(12), b in matrix(12)) {
        let n = a.cols();
        let b = b.block(0, b.rows(), 0, b.cols().min(n));
        let b = F2Matrix::from_rows(n, b.row_vectors().iter().map(|r| {
            let mut v = F2Vector::zeros(n);
            v.write_slice(0, r);
            v
        }).collect());
        let (u, v) = (Subspace::from_matrix(&a), Subspace::from_matrix(&b));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains_subspace(&u) && u.contains_subspace(&meet) && v.contains_subspace(&meet));
    }

    #[test]
    fn polar_form_is_bilinear(m in 1usize..=5, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_isometry(&sp, &mut rng);
        let n = sp.dim();
        let r = |rng: &mut ChaCha8Rng| F2Vector::from_u64(n, rand::Rng::gen::<u64>(rng) & ((1 << n) - 1));
        let (u, v, w) = (r(&mut rng), r(&mut rng), r(&mut rng));
        prop_assert_eq!(sp.q(&u.xor(&v)), sp.q(&u) ^ sp.q(&v) ^ sp.bform(&u, &v));
        prop_assert_eq!(sp.bform(&u.xor(&v), &w), sp.bform(&u, &w) ^ sp.bform(&v, &w));
        prop_assert!(!sp.bform(&u, &u));
        // Isometries preserve q and the polar form.
        prop_assert_eq!(sp.q(&g.apply(&u)), sp.q(&u));
        prop_assert_eq!(sp.bform(&g.apply(&u), &g.apply(&v)), sp.bform(&u, &v));
    }

    #[test]
    fn weight_map_properties(m in 1usize..=4, k in 1usize..=4, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let n = sp.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits: Vec<bool> = (0..n * k).map(|_| rand::Rng::gen(&mut rng)).collect();
        // Sparse vectors reach the small weights the classification is about.
        let v = F2Vector::from_bools(&bits.iter().enumerate().map(|(i, &b)| b && i / n < 2).collect::<Vec<_>>());
        let total = sp.wk(k, &v).unwrap();
        let blocks: Vec<F2Vector> = (0..k).map(|i| v.slice(i * n, n)).collect();
        let q_sum = blocks.iter().fold(false, |acc, b| acc ^ sp.q(b));
        prop_assert_eq!(total % 2 == 1, q_sum);
        let nonsingular = blocks.iter().filter(|b| sp.q(b)).count();
        let singular = blocks.iter().filter(|b| !b.is_zero() && !sp.q(b)).count();
        match total {
            1 => prop_assert!(nonsingular == 1 && singular == 0),
            2 => prop_assert!((singular == 1 && nonsingular == 0) || (singular == 0 && nonsingular == 2)),
            _ => {}
        }
    }

    #[test]
    fn witt_constructions(m in 1usize..=5, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(witt_case(&sp, &mut rng).unwrap(), None);
    }

    #[test]
    fn maximal_ts_is_its_own_perp(m in 1usize..=5, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_isometry(&sp, &mut rng).apply_subspace(&standard_phi(m));
        prop_assert_eq!(sp.perp(&phi), phi.clone());
        let psi = find_complement(&sp, &phi).unwrap();
        prop_assert_eq!(sp.perp(&psi), psi);
    }

    #[test]
    fn complementary_pairs_are_transitive(m in 1usize..=5, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pair = || {
            let phi = random_isometry(&sp, &mut rng).apply_subspace(&standard_phi(m));
            let psi = find_complement(&sp, &phi).unwrap();
            let g = random_isometry(&sp, &mut rng);
            (g.apply_subspace(&phi), g.apply_subspace(&psi))
        };
        let (p1, s1) = pair();
        let (p2, s2) = pair();
        let h = map_complementary_pair(&sp, &p1, &s1, &p2, &s2).unwrap();
        prop_assert_eq!(h.apply_subspace(&p1), p2);
        prop_assert_eq!(h.apply_subspace(&s1), s2);
    }

    #[test]
    fn wreath_membership_round_trip(m in 1usize..=3, k in 1usize..=4, seed in any::<u64>()) {
        let sp = hyperbolic_space(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_block_isometry(&sp, k, &mut rng);
        match wreath_decompose(&sp, k, &h.flatten()).unwrap() {
            WreathDecomposition::Member(d) => prop_assert_eq!(d, h.clone()),
            other => prop_assert!(false, "rejected a block isometry: {:?}", other),
        }
        let text = io::write_wreath(&h);
        prop_assert_eq!(io::parse_wreath(&text, &sp).unwrap(), h);
    }

    #[test]
    fn subspace_file_round_trip(m in matrix(20)) {
        let s = Subspace::from_matrix(&m);
        prop_assert_eq!(io::parse_subspace(&io::write_subspace(&s)).unwrap(), s);
    }
}
