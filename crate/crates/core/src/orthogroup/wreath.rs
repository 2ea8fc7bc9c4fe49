//! Recognizing elements of `O(R, q) ≀ Sym_k` among isometries of `(R^k, q^k)`.

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector};
use crate::quadspace::{embed_block, QuadraticSpace};

use super::{check_isometry, BlockIsometry, Isometry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WreathDecomposition {
    Member(BlockIsometry),
    /// `w^k(witness) = before` but `w^k(witness·g) = after`.
    NotMember {
        witness: F2Vector,
        before: usize,
        after: usize,
    },
}

impl WreathDecomposition {
    pub fn is_member(&self) -> bool {
        matches!(self, WreathDecomposition::Member(_))
    }
}

/// Splits an isometry `g` of `(R^k, q^k)` as `(σ; g_1, …, g_k)`, or finds a
/// vector whose `w^k` value `g` changes.
pub fn wreath_decompose(sp: &QuadraticSpace, k: usize, g: &F2Matrix) -> Result<WreathDecomposition> {
    let n = sp.dim();
    check_isometry(&sp.direct_sum(k), g)?;

    if let Some(b) = block_structure(n, k, g) {
        let flat = b.flatten();
        if &flat != g {
            return Err(Error::Internal("block decomposition does not reproduce g".into()));
        }
        return Ok(WreathDecomposition::Member(b));
    }
    find_witness(sp, k, g).map(|(witness, before, after)| WreathDecomposition::NotMember {
        witness,
        before,
        after,
    })
}

/// `(σ; g_i)` when every block is mapped into a single block.
fn block_structure(n: usize, k: usize, g: &F2Matrix) -> Option<BlockIsometry> {
    let mut sigma = Vec::with_capacity(k);
    let mut blocks = Vec::with_capacity(k);
    for i in 0..k {
        let mut target = None;
        for r in 0..n {
            let row = g.row(i * n + r);
            for j in 0..k {
                if !row.slice(j * n, n).is_zero() {
                    match target {
                        None => target = Some(j),
                        Some(t) if t == j => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        let j = target?;
        if sigma.contains(&j) {
            return None;
        }
        sigma.push(j);
        blocks.push(Isometry::from_trusted(g.block(i * n, n, j * n, n)));
    }
    Some(BlockIsometry { sigma, blocks })
}

fn find_witness(sp: &QuadraticSpace, k: usize, g: &F2Matrix) -> Result<(F2Vector, usize, usize)> {
    let n = sp.dim();
    let wk = |v: &F2Vector| sp.wk(k, v).expect("length checked");
    let check = |v: &F2Vector| {
        let before = wk(v);
        let after = wk(&v.mul_mat(g));
        (before != after).then(|| (v.clone(), before, after))
    };
    let block_vectors: Vec<Vec<F2Vector>> = if n <= 20 {
        (0..k)
            .map(|i| {
                (1u64..1 << n)
                    .map(|x| embed_block(n, k, i, &F2Vector::from_u64(n, x)))
                    .collect()
            })
            .collect()
    } else {
        vec![]
    };
    for v in block_vectors.iter().flatten() {
        if let Some(w) = check(v) {
            return Ok(w);
        }
    }
    if !block_vectors.is_empty() && (k * k) << (2 * n) <= 1 << 26 {
        for i in 0..k {
            for j in i + 1..k {
                for a in &block_vectors[i] {
                    for b in &block_vectors[j] {
                        if let Some(w) = check(&a.xor(b)) {
                            return Ok(w);
                        }
                    }
                }
            }
        }
    }
    if n * k <= 24 {
        for x in 1u64..1 << (n * k) {
            if let Some(w) = check(&F2Vector::from_u64(n * k, x)) {
                return Ok(w);
            }
        }
    }
    Err(Error::Internal(
        "isometry is not block-monomial but no w^k witness was found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogroup::{random_block_isometry, transvection};
    use crate::quadspace::hyperbolic_space;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip() {
        let sp = hyperbolic_space(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let b = random_block_isometry(&sp, 3, &mut rng);
            let d = wreath_decompose(&sp, 3, &b.flatten()).unwrap();
            assert_eq!(d, WreathDecomposition::Member(b));
        }
    }

    #[test]
    fn identity_decomposes() {
        let sp = hyperbolic_space(1).unwrap();
        let d = wreath_decompose(&sp, 2, &F2Matrix::identity(4)).unwrap();
        assert_eq!(d, WreathDecomposition::Member(BlockIsometry::identity(2, 2)));
    }

    #[test]
    fn cross_block_transvection_is_not_member() {
        let sp = hyperbolic_space(1).unwrap();
        let sum = sp.direct_sum(2);
        let t = transvection(&sum, &F2Vector::parse_bits("1110").unwrap()).unwrap();
        match wreath_decompose(&sp, 2, t.matrix()).unwrap() {
            WreathDecomposition::NotMember {
                witness,
                before,
                after,
            } => {
                assert_eq!(witness, F2Vector::parse_bits("1000").unwrap());
                assert_eq!((before, after), (2, 4));
                assert_eq!(sp.wk(2, &t.apply(&witness)).unwrap(), after);
            }
            other => panic!("expected non-member, got {other:?}"),
        }
    }

    #[test]
    fn non_isometry_rejected() {
        let sp = hyperbolic_space(1).unwrap();
        let mut m = F2Matrix::identity(4);
        m.set(0, 2, true);
        assert!(wreath_decompose(&sp, 2, &m).is_err());
    }
}
