//! Breadth-first closure of a finite matrix group.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector};

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 26;

/// Matrix with at most 64 columns, one `u64` per row.
type Packed = Box<[u64]>;

fn pack(m: &F2Matrix) -> Packed {
    m.row_vectors().iter().map(F2Vector::to_u64).collect()
}

fn unpack(p: &Packed, cols: usize) -> F2Matrix {
    F2Matrix::from_rows(cols, p.iter().map(|&r| F2Vector::from_u64(cols, r)).collect())
}

fn packed_mul(a: &Packed, b: &Packed) -> Packed {
    a.iter()
        .map(|&row| {
            let mut acc = 0u64;
            let mut bits = row;
            while bits != 0 {
                acc ^= b[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            acc
        })
        .collect()
}

/// All elements of the group generated by `gens` (invertible `n × n`),
/// identity first. Fails once more than `cap` elements are found.
pub fn group_closure(n: usize, gens: &[F2Matrix], cap: usize) -> Result<Vec<F2Matrix>> {
    for g in gens {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.rows(),
            });
        }
    }
    if n <= 64 {
        let packed: Vec<Packed> = gens.iter().map(pack).collect();
        let elems = bfs(pack(&F2Matrix::identity(n)), &packed, cap, packed_mul)?;
        Ok(elems.iter().map(|p| unpack(p, n)).collect())
    } else {
        bfs(F2Matrix::identity(n), gens, cap, |a, b| a.mul(b))
    }
}

/// Order of the generated group without materializing unpacked matrices.
pub fn group_order(n: usize, gens: &[F2Matrix], cap: usize) -> Result<usize> {
    if n <= 64 && gens.iter().all(|g| g.rows() == n && g.cols() == n) {
        let packed: Vec<Packed> = gens.iter().map(pack).collect();
        return Ok(bfs(pack(&F2Matrix::identity(n)), &packed, cap, packed_mul)?.len());
    }
    Ok(group_closure(n, gens, cap)?.len())
}

fn bfs<T, F>(identity: T, gens: &[T], cap: usize, mul: F) -> Result<Vec<T>>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut order = vec![identity.clone()];
    let mut queue = VecDeque::from([identity.clone()]);
    seen.insert(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureCapExceeded {
                        cap,
                        reached: seen.len(),
                    });
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogroup::{all_transvections, orthogonal_generators};
    use crate::quadspace::hyperbolic_space;

    fn transvection_mats(m: usize) -> Vec<F2Matrix> {
        let sp = hyperbolic_space(m).unwrap();
        all_transvections(&sp).into_iter().map(|t| t.into_matrix()).collect()
    }

    #[test]
    fn orthogonal_group_orders() {
        // |O+(2m, 2)| = 2 · 2^{m(m-1)} (2^m - 1) ∏_{i<m} (4^i - 1)
        let full = |m: usize| {
            let sp = hyperbolic_space(m).unwrap();
            let gens: Vec<F2Matrix> = orthogonal_generators(&sp)
                .unwrap()
                .into_iter()
                .map(|t| t.into_matrix())
                .collect();
            group_order(2 * m, &gens, DEFAULT_CLOSURE_CAP).unwrap()
        };
        assert_eq!(full(1), 2);
        assert_eq!(full(2), 72);
        assert_eq!(full(3), 40320);
    }

    #[test]
    fn transvection_subgroups() {
        assert_eq!(group_order(2, &transvection_mats(1), DEFAULT_CLOSURE_CAP).unwrap(), 2);
        // the exceptional case: index 2 in O+(4, 2)
        assert_eq!(group_order(4, &transvection_mats(2), DEFAULT_CLOSURE_CAP).unwrap(), 36);
        assert_eq!(group_order(6, &transvection_mats(3), DEFAULT_CLOSURE_CAP).unwrap(), 40320);
    }

    #[test]
    fn no_generators_gives_identity() {
        let els = group_closure(5, &[], 10).unwrap();
        assert_eq!(els, vec![F2Matrix::identity(5)]);
    }

    #[test]
    fn identity_comes_first() {
        let els = group_closure(4, &transvection_mats(2), DEFAULT_CLOSURE_CAP).unwrap();
        assert!(els[0].is_identity());
    }

    #[test]
    fn cap_is_enforced() {
        let err = group_closure(6, &transvection_mats(3), 100).unwrap_err();
        assert!(matches!(err, Error::ClosureCapExceeded { cap: 100, .. }));
    }

    #[test]
    fn wide_matrices_use_generic_path() {
        let n = 66;
        let mut g = F2Matrix::identity(n);
        g.set(0, 65, true);
        assert_eq!(group_closure(n, &[g], 10).unwrap().len(), 2);
    }
}
