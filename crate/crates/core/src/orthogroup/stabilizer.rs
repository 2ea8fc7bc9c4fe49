//! Generators for the stabilizer of `S(Φ, Ψ; k)` in `O(R, q) ≀ Sym_k`.

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::quadspace::{build_s, QuadraticSpace};

use super::witt::{levi_lift, o2h_generators};
use super::{BlockIsometry, Isometry};

#[derive(Clone, Debug)]
pub struct StabilizerGenerators {
    /// Unipotent generators `h` placed on blocks `1` and `i` (`i = 2..k`).
    pub o2: Vec<BlockIsometry>,
    /// Levi lifts of elementary transvections of `SL(Φ)`, on every block.
    pub levi: Vec<BlockIsometry>,
    /// Adjacent transpositions of the blocks.
    pub perms: Vec<BlockIsometry>,
}

impl StabilizerGenerators {
    pub fn all(&self) -> impl Iterator<Item = &BlockIsometry> {
        self.o2.iter().chain(&self.levi).chain(&self.perms)
    }

    pub fn len(&self) -> usize {
        self.o2.len() + self.levi.len() + self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flattened matrices on `R^k`, ready for closure.
    pub fn matrices(&self) -> Vec<F2Matrix> {
        self.all().map(BlockIsometry::flatten).collect()
    }
}

/// Elementary matrices `I + E_jl` (`j ≠ l`), which generate `SL_m(2)`.
pub fn sl_generators(m: usize) -> Vec<F2Matrix> {
    let mut out = Vec::new();
    for j in 0..m {
        for l in 0..m {
            if j != l {
                let mut a = F2Matrix::identity(m);
                a.set(j, l, true);
                out.push(a);
            }
        }
    }
    out
}

/// `F2`-rank of `{g - 1}` for unipotent generators, i.e. `log_2` of the
/// order of the elementary abelian group they generate when they commute
/// and square to 1.
pub fn unipotent_rank(gens: &[BlockIsometry]) -> usize {
    let rows: Vec<F2Vector> = gens
        .iter()
        .map(|g| {
            let m = g.flatten();
            let d = m.add(&F2Matrix::identity(m.rows()));
            F2Vector::concat(d.row_vectors())
        })
        .collect();
    let width = rows.first().map_or(0, F2Vector::len);
    Subspace::from_generators(width, rows).dim()
}

/// Every pair commutes and every element is an involution (or trivial).
pub fn commuting_involutions(gens: &[BlockIsometry]) -> bool {
    let mats: Vec<F2Matrix> = gens.iter().map(BlockIsometry::flatten).collect();
    mats.iter().all(|a| a.mul(a).is_identity())
        && mats
            .iter()
            .enumerate()
            .all(|(i, a)| mats[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
}

pub fn stab_s_generators(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace, k: usize) -> Result<StabilizerGenerators> {
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k}, need k >= 3")));
    }
    let meet = phi.intersect(psi)?;
    if !meet.is_zero() {
        return Err(Error::NotComplementary(meet.dim()));
    }
    let n = sp.dim();
    let m = sp.half_dim();

    let mut o2 = Vec::new();
    for h in o2h_generators(sp, phi, psi)? {
        for i in 1..k {
            let mut b = BlockIsometry::single(&h, k, 0);
            b.blocks[i] = h.clone();
            o2.push(b);
        }
    }
    let levi = sl_generators(m)
        .iter()
        .map(|a| levi_lift(sp, phi, psi, a).map(|g| BlockIsometry::uniform(&g, k)))
        .collect::<Result<Vec<_>>>()?;
    let perms = (0..k - 1)
        .map(|i| {
            let mut sigma: Vec<usize> = (0..k).collect();
            sigma.swap(i, i + 1);
            BlockIsometry::new(sigma, vec![Isometry::identity(n); k])
        })
        .collect::<Result<Vec<_>>>()?;

    let gens = StabilizerGenerators { o2, levi, perms };
    let s = build_s(sp, phi, psi, k)?;
    for (idx, g) in gens.all().enumerate() {
        if g.apply_subspace(&s) != s {
            return Err(Error::Internal(format!("generator {idx} does not stabilize S")));
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogroup::closure::group_order;
    use crate::orthogroup::DEFAULT_CLOSURE_CAP;
    use crate::quadspace::{hyperbolic_space, standard_phi, standard_psi};

    #[test]
    fn generators_stabilize_and_have_expected_counts() {
        let sp = hyperbolic_space(3).unwrap();
        let g = stab_s_generators(&sp, &standard_phi(3), &standard_psi(3), 3).unwrap();
        assert_eq!(g.o2.len(), 3 * 2);
        assert_eq!(g.levi.len(), 6);
        assert_eq!(g.perms.len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        let sp = hyperbolic_space(2).unwrap();
        let phi = standard_phi(2);
        assert!(matches!(
            stab_s_generators(&sp, &phi, &phi, 3),
            Err(Error::NotComplementary(2))
        ));
        assert!(stab_s_generators(&sp, &phi, &standard_psi(2), 2).is_err());
    }

    #[test]
    fn unipotent_part_is_elementary_abelian() {
        for (m, rank) in [(3, 6), (4, 12)] {
            let sp = hyperbolic_space(m).unwrap();
            let g = stab_s_generators(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
            assert!(commuting_involutions(&g.o2));
            assert_eq!(unipotent_rank(&g.o2), rank);
        }
    }

    #[test]
    fn sl_generators_generate_sl() {
        let mats = sl_generators(3);
        assert_eq!(group_order(3, &mats, DEFAULT_CLOSURE_CAP).unwrap(), 168);
    }
}
