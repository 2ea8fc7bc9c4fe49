//! Isometries of `(R, q)` and of the `k`-fold sum `(R^k, q^k)`.
//!
//! Every element acts on row vectors from the right. A [`BlockIsometry`]
//! `(σ; g_1, …, g_k)` sends block `i` to block `σ(i)` after applying `g_i`;
//! these are exactly the automorphisms of `(R^k, w^k)`.

mod canon;
mod closure;
mod stabilizer;
mod witt;
mod wreath;

pub use canon::{canonicalize_s, lemma_invariants, Canonical, SectionReport};
pub use closure::{group_closure, group_order, DEFAULT_CLOSURE_CAP};
pub use stabilizer::{
    commuting_involutions, sl_generators, stab_s_generators, unipotent_rank, StabilizerGenerators,
};
pub use witt::{
    dual_basis_in, find_complement, levi_lift, map_complementary_pair, map_mts, map_singular,
    o2h_element, o2h_generators,
};
pub use wreath::{wreath_decompose, WreathDecomposition};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::quadspace::QuadraticSpace;

/// An invertible matrix preserving `q`, acting by `v ↦ v·mat`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Isometry {
    mat: F2Matrix,
}

impl Isometry {
    /// Certifies `mat` against `sp`: invertible, `q` preserved on a basis,
    /// polar form preserved on all basis pairs.
    pub fn new(sp: &QuadraticSpace, mat: F2Matrix) -> Result<Self> {
        check_isometry(sp, &mat)?;
        Ok(Self { mat })
    }

    pub(crate) fn from_trusted(mat: F2Matrix) -> Self {
        Self { mat }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: F2Matrix::identity(dim),
        }
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> F2Matrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        v.mul_mat(&self.mat)
    }

    pub fn apply_subspace(&self, s: &Subspace) -> Subspace {
        s.image(&self.mat)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Isometry) -> Isometry {
        Isometry {
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            mat: self.mat.inverse().expect("isometries are invertible"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

pub(crate) fn check_isometry(sp: &QuadraticSpace, mat: &F2Matrix) -> Result<()> {
    let n = sp.dim();
    if mat.rows() != n || mat.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mat.rows(),
        });
    }
    if !mat.is_invertible() {
        return Err(Error::NotInvertible);
    }
    for i in 0..n {
        let e = F2Vector::unit(n, i);
        if sp.q(mat.row(i)) != sp.q(&e) {
            return Err(Error::NotIsometry(format!("q changes on basis vector {i}")));
        }
    }
    let lhs = mat.mul(sp.polar()).mul(&mat.transpose());
    if &lhs != sp.polar() {
        return Err(Error::NotIsometry("polar form not preserved".into()));
    }
    Ok(())
}

/// `x ↦ x + ⟨x, a⟩·a` for non-singular `a`.
pub fn transvection(sp: &QuadraticSpace, a: &F2Vector) -> Result<Isometry> {
    if a.len() != sp.dim() {
        return Err(Error::DimensionMismatch {
            expected: sp.dim(),
            found: a.len(),
        });
    }
    if !sp.q(a) {
        return Err(Error::SingularVector(a.clone()));
    }
    let n = sp.dim();
    let rows = (0..n)
        .map(|i| {
            let mut r = F2Vector::unit(n, i);
            if sp.polar().row(i).dot(a) {
                r.xor_assign(a);
            }
            r
        })
        .collect();
    Ok(Isometry::from_trusted(F2Matrix::from_rows(n, rows)))
}

/// All transvections of `sp` (generators of `O(R, q)`).
pub fn all_transvections(sp: &QuadraticSpace) -> Vec<Isometry> {
    let n = sp.dim();
    assert!(n <= 24);
    (1u64..1 << n)
        .map(|x| F2Vector::from_u64(n, x))
        .filter(|a| sp.q(a))
        .map(|a| transvection(sp, &a).expect("non-singular"))
        .collect()
}

/// Generators of the full group `O(R, q)`: every transvection plus Levi lifts
/// of `SL_m(2)` for a hyperbolic frame. Transvections alone generate only an
/// index-2 subgroup when `dim R = 4`.
pub fn orthogonal_generators(sp: &QuadraticSpace) -> Result<Vec<Isometry>> {
    let mut gens = all_transvections(sp);
    let h = crate::quadspace::hyperbolic_completion(sp, &[])?;
    let phi = Subspace::from_generators(sp.dim(), h.f);
    let psi = Subspace::from_generators(sp.dim(), h.e);
    for a in sl_generators(sp.half_dim()) {
        gens.push(levi_lift(sp, &phi, &psi, &a)?);
    }
    Ok(gens)
}

/// An element `(σ; g_1, …, g_k)` of `O(R, q) ≀ Sym_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockIsometry {
    /// `sigma[i]` is the block that block `i` is sent to (0-based).
    pub sigma: Vec<usize>,
    pub blocks: Vec<Isometry>,
}

impl BlockIsometry {
    pub fn new(sigma: Vec<usize>, blocks: Vec<Isometry>) -> Result<Self> {
        let k = sigma.len();
        if blocks.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: blocks.len(),
            });
        }
        let mut seen = vec![false; k];
        for &s in &sigma {
            if s >= k || seen[s] {
                return Err(Error::Precondition(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        let dims: Vec<usize> = blocks.iter().map(Isometry::dim).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Precondition("blocks have different dimensions".into()));
        }
        Ok(Self { sigma, blocks })
    }

    pub fn identity(dim: usize, k: usize) -> Self {
        Self {
            sigma: (0..k).collect(),
            blocks: vec![Isometry::identity(dim); k],
        }
    }

    /// `(id; g_1, …, g_k)`.
    pub fn diagonal(blocks: Vec<Isometry>) -> Self {
        Self {
            sigma: (0..blocks.len()).collect(),
            blocks,
        }
    }

    /// The same isometry `g` on every block.
    pub fn uniform(g: &Isometry, k: usize) -> Self {
        Self::diagonal(vec![g.clone(); k])
    }

    /// `g` on block `i`, identity elsewhere.
    pub fn single(g: &Isometry, k: usize, i: usize) -> Self {
        let mut b = Self::identity(g.dim(), k);
        b.blocks[i] = g.clone();
        b
    }

    /// Pure coordinate permutation.
    pub fn permutation(dim: usize, sigma: Vec<usize>) -> Result<Self> {
        let k = sigma.len();
        Self::new(sigma, vec![Isometry::identity(dim); k])
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn block_dim(&self) -> usize {
        self.blocks.first().map_or(0, Isometry::dim)
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Matrix of the action on `R^k`.
    pub fn flatten(&self) -> F2Matrix {
        let n = self.block_dim();
        let k = self.k();
        let mut rows = Vec::with_capacity(n * k);
        for (i, g) in self.blocks.iter().enumerate() {
            let at = self.sigma[i] * n;
            for r in g.matrix().row_vectors() {
                let mut v = F2Vector::zeros(n * k);
                v.write_slice(at, r);
                rows.push(v);
            }
        }
        F2Matrix::from_rows(n * k, rows)
    }

    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        let n = self.block_dim();
        let mut out = F2Vector::zeros(v.len());
        for (i, g) in self.blocks.iter().enumerate() {
            out.write_slice(self.sigma[i] * n, &g.apply(&v.slice(i * n, n)));
        }
        out
    }

    pub fn apply_subspace(&self, s: &Subspace) -> Subspace {
        s.image(&self.flatten())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BlockIsometry) -> BlockIsometry {
        let sigma = self.sigma.iter().map(|&s| other.sigma[s]).collect();
        let blocks = self
            .blocks
            .iter()
            .zip(&self.sigma)
            .map(|(g, &s)| g.then(&other.blocks[s]))
            .collect();
        BlockIsometry { sigma, blocks }
    }

    pub fn inverse(&self) -> BlockIsometry {
        let k = self.k();
        let mut sigma = vec![0; k];
        let mut blocks = vec![Isometry::identity(self.block_dim()); k];
        for (i, &s) in self.sigma.iter().enumerate() {
            sigma[s] = i;
            blocks[s] = self.blocks[i].inverse();
        }
        BlockIsometry { sigma, blocks }
    }
}

/// A random non-singular vector.
pub fn random_nonsingular<R: Rng + ?Sized>(sp: &QuadraticSpace, rng: &mut R) -> F2Vector {
    let n = sp.dim();
    loop {
        let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let v = F2Vector::from_bools(&bits);
        if sp.q(&v) {
            return v;
        }
    }
}

/// A random element of `O(R, q)`: a random Levi element of a hyperbolic
/// frame followed by random transvections.
pub fn random_isometry<R: Rng + ?Sized>(sp: &QuadraticSpace, rng: &mut R) -> Isometry {
    let m = sp.half_dim();
    let h = crate::quadspace::hyperbolic_completion(sp, &[]).expect("plus type");
    let phi = Subspace::from_generators(sp.dim(), h.f);
    let psi = Subspace::from_generators(sp.dim(), h.e);
    let alpha = loop {
        let rows = (0..m)
            .map(|_| F2Vector::from_bools(&(0..m).map(|_| rng.gen()).collect::<Vec<bool>>()))
            .collect();
        let a = F2Matrix::from_rows(m, rows);
        if a.is_invertible() {
            break a;
        }
    };
    let mut g = levi_lift(sp, &phi, &psi, &alpha).expect("complementary frame");
    for _ in 0..3 * sp.dim() + 4 {
        let t = transvection(sp, &random_nonsingular(sp, rng)).expect("non-singular");
        g = g.then(&t);
    }
    g
}

/// A random element of `O(R, q) ≀ Sym_k`.
pub fn random_block_isometry<R: Rng + ?Sized>(sp: &QuadraticSpace, k: usize, rng: &mut R) -> BlockIsometry {
    let mut sigma: Vec<usize> = (0..k).collect();
    sigma.shuffle(rng);
    let blocks = (0..k).map(|_| random_isometry(sp, rng)).collect();
    BlockIsometry { sigma, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadspace::hyperbolic_space;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> F2Vector {
        F2Vector::parse_bits(s).unwrap()
    }

    #[test]
    fn transvection_examples() {
        let sp = hyperbolic_space(1).unwrap();
        let t = transvection(&sp, &bits("11")).unwrap();
        assert_eq!(t.apply(&bits("10")), bits("01"));
        assert_eq!(t.apply(&bits("01")), bits("10"));
        assert!(t.then(&t).is_identity());
        assert!(transvection(&sp, &bits("10")).is_err());

        let sp2 = hyperbolic_space(2).unwrap();
        let t = transvection(&sp2, &bits("1100")).unwrap();
        // ⟨0010, 1100⟩ = 0, so it is fixed.
        assert_eq!(t.apply(&bits("0010")), bits("0010"));
        assert!(Isometry::new(&sp2, t.matrix().clone()).is_ok());
    }

    #[test]
    fn non_isometry_rejected() {
        let sp = hyperbolic_space(1).unwrap();
        let m = F2Matrix::from_strs(&["11", "01"]);
        assert!(Isometry::new(&sp, m).is_err());
        assert!(Isometry::new(&sp, F2Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn block_isometry_algebra() {
        let sp = hyperbolic_space(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_block_isometry(&sp, 3, &mut rng);
            let h = random_block_isometry(&sp, 3, &mut rng);
            assert_eq!(g.then(&h).flatten(), g.flatten().mul(&h.flatten()));
            assert!(g.then(&g.inverse()).flatten().is_identity());
            let v = F2Vector::from_u64(12, rng.gen::<u64>() & 0xfff);
            assert_eq!(g.apply(&v), v.mul_mat(&g.flatten()));
            let r3 = sp.direct_sum(3);
            assert!(Isometry::new(&r3, g.flatten()).is_ok());
        }
    }
}
