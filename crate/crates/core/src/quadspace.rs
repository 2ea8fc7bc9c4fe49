//! Non-singular quadratic spaces of plus type over F2, the weight maps `w`
//! and `w^k`, and the maximal totally singular subspace `S(Φ, Ψ; k)`.
//!
//! A quadratic form is stored as an upper-triangular matrix `U` with
//! `q(x) = x·U·xᵀ`; its polar form is `B = U + Uᵀ`. In characteristic 2 the
//! form is not recoverable from `B`, so both are kept.
//!
//! The `k`-fold orthogonal sum `R^k` is laid out block-major: block `i`
//! occupies coordinates `[2m·i, 2m·(i+1))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2linalg::{solve, F2Matrix, F2Vector, Subspace};

/// Largest base dimension for which the weight table is precomputed.
const TABLE_MAX_DIM: usize = 16;

#[derive(Clone)]
pub struct QuadraticSpace {
    dim: usize,
    q_upper: F2Matrix,
    polar: F2Matrix,
    // w(x) for every x, indexed by the packed coordinates (small spaces only).
    w_table: Option<Vec<u8>>,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.q_upper == other.q_upper
    }
}

impl Eq for QuadraticSpace {}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticSpace(dim={}) {:?}", self.dim, self.q_upper)
    }
}

/// `(w(a_1), …, w(a_k))` together with the total `w^k(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightProfile {
    pub values: Vec<u8>,
    pub total: usize,
}

impl WeightProfile {
    /// Entries sorted in decreasing order, e.g. `[2, 1, 1]`.
    pub fn shape(&self) -> Vec<u8> {
        let mut s = self.values.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

impl QuadraticSpace {
    /// Validates `q_upper` and certifies the space is non-singular of plus type.
    pub fn new(q_upper: F2Matrix) -> Result<Self> {
        let dim = q_upper.rows();
        if q_upper.cols() != dim {
            return Err(Error::InvalidSpace(format!(
                "form matrix is {}x{}, expected square",
                dim,
                q_upper.cols()
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                if q_upper.get(i, j) {
                    return Err(Error::InvalidSpace(format!(
                        "entry ({i},{j}) below the diagonal is set"
                    )));
                }
            }
        }
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidSpace(format!("dimension {dim} is not a positive even number")));
        }
        let sp = Self::unchecked(q_upper);
        if !sp.polar.is_invertible() {
            return Err(Error::InvalidSpace("polar form is singular".into()));
        }
        hyperbolic_completion(&sp, &[])?;
        Ok(sp)
    }

    fn unchecked(q_upper: F2Matrix) -> Self {
        let dim = q_upper.rows();
        let polar = q_upper.add(&q_upper.transpose());
        let mut sp = Self {
            dim,
            q_upper,
            polar,
            w_table: None,
        };
        if dim <= TABLE_MAX_DIM {
            let table = (0..1u64 << dim)
                .map(|x| sp.w(&F2Vector::from_u64(dim, x)))
                .collect();
            sp.w_table = Some(table);
        }
        sp
    }

    /// Builds the form from its values `q(b_i)` on a basis and the polar
    /// (Gram) matrix of that basis.
    pub fn from_values(q_basis: &[bool], polar: &F2Matrix) -> Result<Self> {
        let n = q_basis.len();
        let mut u = F2Matrix::zeros(n, n);
        for i in 0..n {
            u.set(i, i, q_basis[i]);
            for j in i + 1..n {
                u.set(i, j, polar.get(i, j));
            }
        }
        Self::new(u)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Witt index `m` (half the dimension).
    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn q_upper(&self) -> &F2Matrix {
        &self.q_upper
    }

    pub fn polar(&self) -> &F2Matrix {
        &self.polar
    }

    #[inline]
    pub fn q(&self, v: &F2Vector) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        v.mul_mat(&self.q_upper).dot(v)
    }

    #[inline]
    pub fn bform(&self, u: &F2Vector, v: &F2Vector) -> bool {
        u.mul_mat(&self.polar).dot(v)
    }

    /// `0` for the zero vector, `1` for non-singular, `2` for singular non-zero.
    pub fn w(&self, a: &F2Vector) -> u8 {
        if a.is_zero() {
            0
        } else if self.q(a) {
            1
        } else {
            2
        }
    }

    #[inline]
    fn w_packed(&self, bits: u64) -> u8 {
        match &self.w_table {
            Some(t) => t[bits as usize],
            None => self.w(&F2Vector::from_u64(self.dim, bits)),
        }
    }

    /// `w^k(v) = Σ w(a_i)` for `v = (a_1, …, a_k)` in the `k`-fold sum.
    pub fn wk(&self, k: usize, v: &F2Vector) -> Result<usize> {
        self.check_len(k, v)?;
        if self.dim * k <= 64 && self.w_table.is_some() {
            return Ok(self.wk_packed(k, v.to_u64()));
        }
        Ok((0..k).map(|i| self.w(&v.slice(i * self.dim, self.dim)) as usize).sum())
    }

    /// Fast path: `v` packed in a single word (`k·dim <= 64`).
    #[inline]
    pub fn wk_packed(&self, k: usize, bits: u64) -> usize {
        let mask = (1u64 << self.dim) - 1;
        (0..k)
            .map(|i| self.w_packed((bits >> (i * self.dim)) & mask) as usize)
            .sum()
    }

    pub fn wk_profile(&self, k: usize, v: &F2Vector) -> Result<WeightProfile> {
        self.check_len(k, v)?;
        let values: Vec<u8> = (0..k)
            .map(|i| self.w(&v.slice(i * self.dim, self.dim)))
            .collect();
        let total = values.iter().map(|&x| x as usize).sum();
        Ok(WeightProfile { values, total })
    }

    fn check_len(&self, k: usize, v: &F2Vector) -> Result<()> {
        if v.len() != self.dim * k {
            return Err(Error::DimensionMismatch {
                expected: self.dim * k,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Block `i` of a vector in the `k`-fold sum.
    pub fn block(&self, v: &F2Vector, i: usize) -> F2Vector {
        v.slice(i * self.dim, self.dim)
    }

    /// Orthogonal direct sum of `k` copies.
    pub fn direct_sum(&self, k: usize) -> QuadraticSpace {
        assert!(k >= 1, "direct sum needs k >= 1");
        let blocks = vec![self.q_upper.clone(); k];
        let u = F2Matrix::block_diag(&blocks);
        let mut sp = Self::unchecked(u);
        // Each block is plus type, hence so is the sum.
        if sp.dim > TABLE_MAX_DIM {
            sp.w_table = None;
        }
        sp
    }

    pub fn is_totally_singular(&self, u: &Subspace) -> bool {
        let b = u.basis_vectors();
        b.iter().all(|x| !self.q(x))
            && b.iter()
                .enumerate()
                .all(|(i, x)| b[i + 1..].iter().all(|y| !self.bform(x, y)))
    }

    pub fn is_maximal_ts(&self, u: &Subspace) -> bool {
        u.ambient() == self.dim && u.dim() == self.half_dim() && self.is_totally_singular(u)
    }

    /// Orthogonal complement with respect to the polar form.
    pub fn perp(&self, u: &Subspace) -> Subspace {
        u.perp(&self.polar)
    }

    pub fn require_maximal_ts(&self, u: &Subspace, what: &str) -> Result<()> {
        if u.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.ambient(),
            });
        }
        if !self.is_maximal_ts(u) {
            return Err(Error::NotMaximalTotallySingular(format!(
                "{what} has dim {} (need {}) and totally singular = {}",
                u.dim(),
                self.half_dim(),
                self.is_totally_singular(u)
            )));
        }
        Ok(())
    }

    /// Number of singular vectors (including zero), by exhaustive evaluation.
    pub fn singular_count(&self) -> u64 {
        assert!(self.dim <= 24, "exhaustive count limited to dim <= 24");
        (0..1u64 << self.dim)
            .filter(|&x| !self.q(&F2Vector::from_u64(self.dim, x)))
            .count() as u64
    }

    /// Histogram `[#q=0, #q=1]` over all vectors.
    pub fn q_histogram(&self) -> [u64; 2] {
        let s = self.singular_count();
        [s, (1u64 << self.dim) - s]
    }
}

/// The hyperbolic space of dimension `2m`: `q(x) = Σ x_{2i} x_{2i+1}`.
pub fn hyperbolic_space(m: usize) -> Result<QuadraticSpace> {
    if m == 0 {
        return Err(Error::InvalidSpace("m must be at least 1".into()));
    }
    let mut u = F2Matrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        u.set(2 * i, 2 * i + 1, true);
    }
    QuadraticSpace::new(u)
}

/// `span{e_0, e_2, …}` in [`hyperbolic_space`].
pub fn standard_phi(m: usize) -> Subspace {
    Subspace::from_generators(2 * m, (0..m).map(|i| F2Vector::unit(2 * m, 2 * i)).collect())
}

/// `span{e_1, e_3, …}` in [`hyperbolic_space`].
pub fn standard_psi(m: usize) -> Subspace {
    Subspace::from_generators(2 * m, (0..m).map(|i| F2Vector::unit(2 * m, 2 * i + 1)).collect())
}

/// A hyperbolic basis `f_1..f_m, e_1..e_m` with `q(f_i) = q(e_i) = 0`,
/// `⟨f_i, e_j⟩ = δ_ij` and all other pairings zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicBasis {
    pub f: Vec<F2Vector>,
    pub e: Vec<F2Vector>,
}

impl HyperbolicBasis {
    /// Rows `f_1..f_m` followed by `e_1..e_m`.
    pub fn matrix(&self) -> F2Matrix {
        let n = self.f.first().map_or(0, |v| v.len());
        let rows = self.f.iter().chain(&self.e).cloned().collect();
        F2Matrix::from_rows(n, rows)
    }
}

/// Extends independent totally singular vectors `fs` to a full hyperbolic
/// basis whose first `f` vectors are exactly `fs`.
///
/// Fails with [`Error::NotPlusType`] when the residual space is anisotropic,
/// which makes this also the plus-type test for the whole space.
pub fn hyperbolic_completion(sp: &QuadraticSpace, fs: &[F2Vector]) -> Result<HyperbolicBasis> {
    let n = sp.dim();
    let r = fs.len();
    if r > 0 {
        let span = Subspace::from_generators(n, fs.to_vec());
        if span.dim() != r {
            return Err(Error::Precondition("vectors to extend are dependent".into()));
        }
        if !sp.is_totally_singular(&span) {
            return Err(Error::Precondition("vectors to extend are not totally singular".into()));
        }
    }
    let mut f: Vec<F2Vector> = fs.to_vec();
    let mut e: Vec<F2Vector> = Vec::with_capacity(n / 2);

    if r > 0 {
        let fmat = F2Matrix::from_rows(n, fs.to_vec());
        let pairing = sp.polar().mul(&fmat.transpose());
        for j in 0..r {
            let y = solve(&pairing, &F2Vector::unit(r, j))
                .ok_or_else(|| Error::Internal("polar form degenerate on Φ".into()))?;
            let mut ej = y;
            if sp.q(&ej) {
                ej.xor_assign(&f[j]);
            }
            for i in 0..j {
                if sp.bform(&e[i], &ej) {
                    ej.xor_assign(&f[i]);
                }
            }
            e.push(ej);
        }
    }

    // Residual space: everything orthogonal to the pairs found so far.
    let mut residual = {
        let found: Vec<F2Vector> = f.iter().chain(&e).cloned().collect();
        if found.is_empty() {
            Subspace::full(n)
        } else {
            sp.perp(&Subspace::from_generators(n, found))
        }
    };

    while residual.dim() > 0 {
        let w = residual.basis_vectors().to_vec();
        let s = find_singular(sp, &w).ok_or_else(|| {
            Error::NotPlusType(format!(
                "anisotropic residual of dimension {} after {} hyperbolic pairs",
                w.len(),
                f.len()
            ))
        })?;
        let t = w
            .iter()
            .find(|x| sp.bform(&s, x))
            .cloned()
            .ok_or_else(|| Error::InvalidSpace("degenerate residual space".into()))?;
        let mut ei = t;
        if sp.q(&ei) {
            ei.xor_assign(&s);
        }
        let projected: Vec<F2Vector> = w
            .iter()
            .map(|x| {
                let mut y = x.clone();
                if sp.bform(x, &ei) {
                    y.xor_assign(&s);
                }
                if sp.bform(x, &s) {
                    y.xor_assign(&ei);
                }
                y
            })
            .collect();
        f.push(s);
        e.push(ei);
        residual = Subspace::from_generators(n, projected);
    }
    if f.len() * 2 != n {
        return Err(Error::Internal("hyperbolic completion has wrong size".into()));
    }
    Ok(HyperbolicBasis { f, e })
}

/// A non-zero singular vector in the span of `w` (a basis of a
/// non-degenerate subspace); `None` only for an anisotropic plane.
fn find_singular(sp: &QuadraticSpace, w: &[F2Vector]) -> Option<F2Vector> {
    if let Some(x) = w.iter().find(|x| !sp.q(x)) {
        return Some(x.clone());
    }
    // All basis vectors are non-singular here.
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if !sp.bform(&w[i], &w[j]) {
                return Some(w[i].xor(&w[j]));
            }
        }
    }
    // All pairings are 1: q(w0 + w1 + w2) = 3 + 3 = 0.
    if w.len() >= 3 {
        return Some(w[0].xor(&w[1]).xor(&w[2]));
    }
    None
}

/// Embeds a vector of the base space into block `i` of the `k`-fold sum.
pub fn embed_block(dim: usize, k: usize, i: usize, a: &F2Vector) -> F2Vector {
    let mut v = F2Vector::zeros(dim * k);
    v.write_slice(i * dim, a);
    v
}

/// The subspace spanned by `Φ_(1i)` (2 ≤ i ≤ k), `Ψ_(12…k)` and `(Φ∩Ψ)_(1)`.
pub fn build_s(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace, k: usize) -> Result<Subspace> {
    sp.require_maximal_ts(phi, "Φ")?;
    sp.require_maximal_ts(psi, "Ψ")?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let n = sp.dim();
    let mut gens = Vec::new();
    for a in phi.basis_vectors() {
        for i in 1..k {
            let mut v = embed_block(n, k, 0, a);
            v.write_slice(i * n, a);
            gens.push(v);
        }
    }
    for b in psi.basis_vectors() {
        gens.push(F2Vector::concat(&vec![b.clone(); k]));
    }
    for c in phi.intersect(psi)?.basis_vectors() {
        gens.push(embed_block(n, k, 0, c));
    }
    let s = Subspace::from_generators(n * k, gens);
    if s.dim() != sp.half_dim() * k {
        return Err(Error::Internal(format!(
            "S(Φ,Ψ;{k}) has dim {} instead of {}",
            s.dim(),
            sp.half_dim() * k
        )));
    }
    Ok(s)
}

/// Exhaustive test of `w^k(v) >= 4` on every non-zero `v ∈ S`.
///
/// On failure returns the violating vector with the smallest coefficient
/// index (coefficients taken against the RREF basis of `S`).
pub fn check_cond1(sp: &QuadraticSpace, k: usize, s: &Subspace) -> std::result::Result<(), F2Vector> {
    assert_eq!(s.ambient(), sp.dim() * k, "S must live in the {k}-fold sum");
    let d = s.dim();
    assert!(d <= 30, "exhaustive scan limited to dim S <= 30");
    let packed = sp.dim() * k <= 64 && sp.w_table.is_some();
    let basis: Vec<u64> = s.basis_vectors().iter().map(F2Vector::to_u64).collect();
    let mut best: Option<u64> = None;
    let mut cur = F2Vector::zeros(s.ambient());
    let mut cur_bits = 0u64;
    let mut code = 0u64;
    for i in 1u64..(1u64 << d) {
        let bit = i.trailing_zeros() as usize;
        code ^= 1 << bit;
        let weight = if packed {
            cur_bits ^= basis[bit];
            sp.wk_packed(k, cur_bits)
        } else {
            cur.xor_assign(s.basis().row(bit));
            sp.wk(k, &cur).expect("length checked")
        };
        if weight < 4 && best.is_none_or(|b| code < b) {
            best = Some(code);
        }
    }
    match best {
        None => Ok(()),
        Some(c) => Err(s.combine(&F2Vector::from_u64(d, c))),
    }
}

/// Vectors of `w^3`-weight 4 in `S(Φ, Ψ; 3)`, split by shape.
#[derive(Clone, Debug)]
pub struct W4Classes {
    /// `σ(a, a, 0)`, `a ∈ Φ∖0`.
    pub type_one: Vec<F2Vector>,
    /// `σ(a+c, a+b+c, b+c)`, `a, b ∈ Φ`, `c ∈ Ψ∖0`.
    pub type_two: Vec<F2Vector>,
}

impl W4Classes {
    pub fn expected_counts(m: usize) -> (u64, u64) {
        let t1 = 3 * ((1u64 << m) - 1);
        (t1, t1 << (2 * m - 2))
    }
}

/// Splits the weight-4 vectors of `S(Φ, Ψ; 3)` into the two shapes.
/// Any weight-4 vector matching neither is reported as an internal error.
pub fn classify_w4(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace) -> Result<W4Classes> {
    let cap = phi.intersect(psi)?;
    if !cap.is_zero() {
        return Err(Error::NotComplementary(cap.dim()));
    }
    let s = build_s(sp, phi, psi, 3)?;
    let n = sp.dim();
    let mut out = W4Classes {
        type_one: Vec::new(),
        type_two: Vec::new(),
    };
    for v in s.elements() {
        let prof = sp.wk_profile(3, &v)?;
        if prof.total != 4 {
            continue;
        }
        let blocks: Vec<F2Vector> = (0..3).map(|i| v.slice(i * n, n)).collect();
        match prof.shape().as_slice() {
            [2, 2, 0] => {
                let nz: Vec<&F2Vector> = blocks.iter().filter(|b| !b.is_zero()).collect();
                if nz[0] == nz[1] && phi.contains(nz[0]) {
                    out.type_one.push(v);
                    continue;
                }
            }
            [2, 1, 1] => {
                let c = blocks[0].xor(&blocks[1]).xor(&blocks[2]);
                let p2 = prof.values.iter().position(|&x| x == 2).expect("shape has a 2");
                let py = (0..3).rev().find(|&i| i != p2).expect("three blocks");
                if !c.is_zero()
                    && psi.contains(&c)
                    && phi.contains(&blocks[p2].xor(&c))
                    && phi.contains(&blocks[py].xor(&c))
                {
                    out.type_two.push(v);
                    continue;
                }
            }
            _ => {}
        }
        return Err(Error::Internal(format!(
            "weight-4 vector {v} with profile {:?} matches neither shape",
            prof.values
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> F2Vector {
        F2Vector::parse_bits(s).unwrap()
    }

    #[test]
    fn hyperbolic_plane_values() {
        let sp = hyperbolic_space(1).unwrap();
        assert!(!sp.q(&bits("01")));
        assert!(!sp.q(&bits("10")));
        assert!(sp.q(&bits("11")));
        assert!(!sp.q(&bits("00")));
        assert!(sp.bform(&bits("10"), &bits("01")));
        assert_eq!(sp.w(&bits("00")), 0);
        assert_eq!(sp.w(&bits("11")), 1);
        assert_eq!(sp.w(&bits("10")), 2);
        assert!(hyperbolic_space(0).is_err());
    }

    #[test]
    fn singular_count_m5() {
        // Independent count: (2^{m-1}+1)(2^m-1)+1 singular vectors incl. 0.
        let sp = hyperbolic_space(5).unwrap();
        assert_eq!(sp.singular_count(), 528);
        assert_eq!((16 + 1) * 31 + 1, 528);
    }

    #[test]
    fn minus_type_rejected() {
        // Anisotropic plane q = x0² + x0x1 + x1².
        let u = F2Matrix::from_strs(&["11", "01"]);
        assert!(matches!(QuadraticSpace::new(u), Err(Error::NotPlusType(_))));
        // Degenerate polar form.
        let u = F2Matrix::from_strs(&["10", "00"]);
        assert!(QuadraticSpace::new(u).is_err());
        // Not upper triangular.
        let u = F2Matrix::from_strs(&["01", "10"]);
        assert!(QuadraticSpace::new(u).is_err());
    }

    #[test]
    fn standard_subspaces() {
        let sp = hyperbolic_space(3).unwrap();
        let (phi, psi) = (standard_phi(3), standard_psi(3));
        assert!(sp.is_maximal_ts(&phi));
        assert!(sp.is_maximal_ts(&psi));
        assert!(phi.intersect(&psi).unwrap().is_zero());
        let zero = Subspace::zero(6);
        assert!(sp.is_totally_singular(&zero));
        assert!(!sp.is_maximal_ts(&zero));
        let plane = hyperbolic_space(1).unwrap();
        assert!(!plane.is_totally_singular(&Subspace::from_generators(2, vec![bits("11")])));
    }

    #[test]
    fn wk_examples() {
        let sp = hyperbolic_space(1).unwrap();
        assert_eq!(sp.wk(3, &bits("000000")).unwrap(), 0);
        assert_eq!(sp.wk(3, &bits("101000")).unwrap(), 4);
        let p = sp.wk_profile(3, &bits("111101")).unwrap();
        assert_eq!(p.values, vec![1, 1, 2]);
        assert_eq!(p.total, 4);
        assert!(sp.wk(3, &bits("1010")).is_err());
    }

    #[test]
    fn direct_sum_matches_hyperbolic() {
        let sp = hyperbolic_space(1).unwrap();
        let r3 = sp.direct_sum(3);
        assert_eq!(r3.dim(), 6);
        assert!(QuadraticSpace::new(r3.q_upper().clone()).is_ok());
        assert_eq!(r3.q_histogram(), hyperbolic_space(3).unwrap().q_histogram());
        assert_eq!(sp.direct_sum(1), sp);
    }

    #[test]
    fn build_s_m1_k3_has_eight_elements() {
        let sp = hyperbolic_space(1).unwrap();
        let s = build_s(&sp, &standard_phi(1), &standard_psi(1), 3).unwrap();
        assert_eq!(s.dim(), 3);
        // a_i ∈ {0, e1}, b ∈ {0, e2}, Σ a_i = 0.
        let mut expected = Vec::new();
        for a1 in [false, true] {
            for a2 in [false, true] {
                let a3 = a1 ^ a2;
                for b in [false, true] {
                    let blk = |a: bool| format!("{}{}", a as u8, b as u8);
                    expected.push(bits(&format!("{}{}{}", blk(a1), blk(a2), blk(a3))));
                }
            }
        }
        let mut got = s.elements();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn build_s_k1_is_psi() {
        for m in 1..=4 {
            let sp = hyperbolic_space(m).unwrap();
            let s = build_s(&sp, &standard_phi(m), &standard_psi(m), 1).unwrap();
            assert_eq!(s, standard_psi(m));
        }
    }

    #[test]
    fn build_s_rejects_bad_input() {
        let sp = hyperbolic_space(2).unwrap();
        let bad = Subspace::from_generators(4, vec![bits("1100")]);
        assert!(build_s(&sp, &bad, &standard_psi(2), 3).is_err());
    }

    #[test]
    fn weight_bound_m3_k3() {
        let sp = hyperbolic_space(3).unwrap();
        let s = build_s(&sp, &standard_phi(3), &standard_psi(3), 3).unwrap();
        assert_eq!(s.dim(), 9);
        assert!(check_cond1(&sp, 3, &s).is_ok());
    }

    #[test]
    fn weight_bound_fails_for_k2() {
        let sp = hyperbolic_space(1).unwrap();
        let s = build_s(&sp, &standard_phi(1), &standard_psi(1), 2).unwrap();
        // (e2, e2) has w^2 = 4 but (e1+e2, e1+e2) has w^2 = 2.
        let v = check_cond1(&sp, 2, &s).unwrap_err();
        assert!(sp.wk(2, &v).unwrap() < 4);
    }

    #[test]
    fn weight_bound_on_diagonal_psi() {
        let sp = hyperbolic_space(1).unwrap();
        let diag = Subspace::from_generators(6, vec![bits("010101")]);
        assert_eq!(sp.wk(3, &bits("010101")).unwrap(), 6);
        assert!(check_cond1(&sp, 3, &diag).is_ok());
    }

    #[test]
    fn classify_w4_m1() {
        let sp = hyperbolic_space(1).unwrap();
        let c = classify_w4(&sp, &standard_phi(1), &standard_psi(1)).unwrap();
        assert_eq!((c.type_one.len(), c.type_two.len()), (3, 3));
    }

    #[test]
    fn hyperbolic_completion_is_hyperbolic() {
        let sp = hyperbolic_space(4).unwrap();
        let hb = hyperbolic_completion(&sp, &[bits("11110000")]).unwrap();
        assert_eq!(hb.f[0], bits("11110000"));
        for i in 0..4 {
            assert!(!sp.q(&hb.f[i]) && !sp.q(&hb.e[i]));
            for j in 0..4 {
                assert_eq!(sp.bform(&hb.f[i], &hb.e[j]), i == j);
                assert!(!sp.bform(&hb.f[i], &hb.f[j]));
                assert!(!sp.bform(&hb.e[i], &hb.e[j]));
            }
        }
    }
}
