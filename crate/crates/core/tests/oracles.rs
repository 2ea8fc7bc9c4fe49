//! Brute-force oracles, written without the library's group machinery,
//! for the numbers the library computes by cleverer means.

use turyn::f2linalg::{kernel, solve};
use turyn::orthogroup::{group_order, o2h_element, stab_s_generators, DEFAULT_CLOSURE_CAP};
use turyn::quadspace::{build_s, check_cond1, hyperbolic_space, standard_phi, standard_psi};
use turyn::verify::orthogonal_order;
use turyn::{F2Matrix, F2Vector, QuadraticSpace};

/// `q = Σ x_{2i} x_{2i+1}` on a packed vector, independent of the library.
fn q_hyp(x: u64, m: usize) -> u32 {
    (0..m).map(|i| ((x >> (2 * i)) & (x >> (2 * i + 1)) & 1) as u32).sum::<u32>() & 1
}

/// `x·M` with row `i` of `M` packed in `rows[i]`.
fn apply(rows: &[u64], x: u64) -> u64 {
    rows.iter().enumerate().filter(|(i, _)| x >> i & 1 == 1).fold(0, |acc, (_, r)| acc ^ r)
}

/// Every invertible `n×n` matrix preserving `q`, found by exhausting all
/// `2^{n²}` matrices row by row.
fn brute_force_isometries(m: usize) -> Vec<Vec<u64>> {
    let n = 2 * m;
    let mut out = Vec::new();
    let mut rows = vec![0u64; n];
    fn rec(i: usize, n: usize, m: usize, rows: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            let all_ok = (0..1u64 << n).all(|x| q_hyp(apply(rows, x), m) == q_hyp(x, m));
            let injective = (1..1u64 << n).all(|x| apply(rows, x) != 0);
            if all_ok && injective {
                out.push(rows.clone());
            }
            return;
        }
        for r in 0..1u64 << n {
            // q(e_i·M) = q(e_i) = 0 prunes most candidates early.
            if q_hyp(r, m) != 0 {
                continue;
            }
            rows[i] = r;
            rec(i + 1, n, m, rows, out);
        }
    }
    rec(0, n, m, &mut rows, &mut out);
    out
}

fn pack(v: &F2Vector) -> u64 {
    v.to_u64()
}

#[test]
fn orthogonal_group_orders_by_exhaustion() {
    assert_eq!(brute_force_isometries(1).len(), 2);
    assert_eq!(brute_force_isometries(2).len(), 72);
    assert_eq!(orthogonal_order(1), 2);
    assert_eq!(orthogonal_order(2), 72);
    assert_eq!(orthogonal_order(3), 40320);
}

#[test]
fn stabilizer_m2_by_exhaustion() {
    let m = 2;
    let sp = hyperbolic_space(m).unwrap();
    let s = build_s(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
    let n = sp.dim();
    let mask = (1u64 << n) - 1;
    let mut member = vec![false; 1 << (3 * n)];
    for v in s.elements() {
        member[pack(&v) as usize] = true;
    }
    let basis: Vec<[u64; 3]> = s
        .basis_vectors()
        .iter()
        .map(|v| {
            let x = pack(v);
            [x & mask, (x >> n) & mask, (x >> (2 * n)) & mask]
        })
        .collect();

    let group = brute_force_isometries(m);
    let tables: Vec<Vec<u64>> = group.iter().map(|g| (0..1u64 << n).map(|x| apply(g, x)).collect()).collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut count = 0u64;
    for sigma in perms {
        for a in &tables {
            for b in &tables {
                for c in &tables {
                    let t = [a, b, c];
                    let fixes = basis.iter().all(|blk| {
                        let mut img = 0u64;
                        for i in 0..3 {
                            img |= t[i][blk[i] as usize] << (n * sigma[i]);
                        }
                        member[img as usize]
                    });
                    count += u64::from(fixes);
                }
            }
        }
    }
    assert_eq!(count, 144);

    let gens = stab_s_generators(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
    assert_eq!(group_order(3 * n, &gens.matrices(), DEFAULT_CLOSURE_CAP).unwrap(), 144);
}

#[test]
fn unipotent_elements_by_exhaustion() {
    // Every map Ψ -> Φ, counted by whether o2h_element accepts it; the
    // accepted ones are the alternating forms, 2^{C(m,2)} of them.
    for (m, expected) in [(2usize, 2usize), (3, 8)] {
        let sp = hyperbolic_space(m).unwrap();
        let (phi, psi) = (standard_phi(m), standard_psi(m));
        let phi_elems = phi.elements();
        let mut accepted = 0;
        let total = phi_elems.len().pow(m as u32);
        for idx in 0..total {
            let mut rest = idx;
            let images: Vec<F2Vector> = (0..m)
                .map(|_| {
                    let v = phi_elems[rest % phi_elems.len()].clone();
                    rest /= phi_elems.len();
                    v
                })
                .collect();
            accepted += usize::from(o2h_element(&sp, &phi, &psi, &images).is_ok());
        }
        assert_eq!(accepted, expected, "m = {m}");
    }
}

#[test]
fn weight_bound_by_exhaustion() {
    for m in 1..=3 {
        let sp = hyperbolic_space(m).unwrap();
        let n = sp.dim();
        let s = build_s(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
        let w = |x: u64| match (x, q_hyp(x, m)) {
            (0, _) => 0,
            (_, 1) => 1,
            _ => 2,
        };
        let mask = (1u64 << n) - 1;
        let min = s
            .elements()
            .iter()
            .map(pack)
            .filter(|&x| x != 0)
            .map(|x| (0..3).map(|i| w((x >> (i * n)) & mask)).sum::<u32>())
            .min()
            .unwrap();
        assert_eq!(min, 4, "m = {m}");
        assert!(check_cond1(&sp, 3, &s).is_ok());
        // Φ in place of Ψ breaks it, and the exhaustive minimum agrees.
        let bad = build_s(&sp, &standard_phi(m), &standard_phi(m), 3).unwrap();
        let bad_min = bad
            .elements()
            .iter()
            .map(pack)
            .filter(|&x| x != 0)
            .map(|x| (0..3).map(|i| w((x >> (i * n)) & mask)).sum::<u32>())
            .min()
            .unwrap();
        assert!(bad_min < 4);
        assert!(check_cond1(&sp, 3, &bad).is_err());
    }
}

#[test]
fn singular_counts_by_exhaustion() {
    for m in 1..=5usize {
        let sp: QuadraticSpace = hyperbolic_space(m).unwrap();
        let zeros = (0..1u64 << (2 * m)).filter(|&x| q_hyp(x, m) == 0).count() as u64;
        assert_eq!(sp.singular_count(), zeros);
        assert_eq!(zeros, (1 << (2 * m - 1)) + (1 << (m - 1)));
    }
}

#[test]
fn solve_and_kernel_by_exhaustion() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..200 {
        let (r, c) = (1 + (next() % 6) as usize, 1 + (next() % 6) as usize);
        let rows: Vec<u64> = (0..r).map(|_| next() & ((1 << c) - 1)).collect();
        let m = F2Matrix::from_rows(c, rows.iter().map(|&x| F2Vector::from_u64(c, x)).collect());
        let b = next() & ((1 << c) - 1);
        let solvable = (0..1u64 << r).any(|x| apply(&rows, x) == b);
        match solve(&m, &F2Vector::from_u64(c, b)) {
            Some(x) => assert_eq!(apply(&rows, pack(&x)), b),
            None => assert!(!solvable),
        }
        let kernel_size = (0..1u64 << r).filter(|&x| apply(&rows, x) == 0).count();
        assert_eq!(1usize << kernel(&m).dim(), kernel_size);
    }
}
