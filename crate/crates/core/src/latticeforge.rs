//! Exact integral lattices, the glue space `R(L) = L*/L`, the lattices
//! `L(S)`, and the Leech lattice built from three copies of `R(√2E8)`.
//!
//! Lattices are given by their doubled Gram matrix `gram2 = 2·Gram`. Vectors
//! of `L* ⊗ Q` are written in *doubled coordinates*: `x = z/2` in the basis
//! of `L`, with `z` integral whenever `2L* ⊆ L`. Then `L = 2Z^n`, `L*` is the
//! preimage of `R(L) ⊆ F2^n` under reduction mod 2, and
//! `(x, x) = zᵀ·gram2·z / 8`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::f2linalg::{F2Vector, Subspace};
use crate::orthogroup::find_complement;
use crate::quadspace::{build_s, check_cond1, classify_w4, hyperbolic_completion, QuadraticSpace};

/// Integer scalars usable for exact lattice arithmetic.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Integer + Signed + From<i64> + ToPrimitive + CheckedAdd + CheckedSub + CheckedMul
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Ord + Hash + Integer + Signed + From<i64> + ToPrimitive + CheckedAdd + CheckedSub + CheckedMul
{
}

fn int<T: Scalar>(x: i64) -> T {
    T::from(x)
}

fn overflow() -> Error {
    Error::Lattice("integer overflow; use a wider scalar".into())
}

/// Square integer matrix helpers.
pub type IntMatrix<T> = Vec<Vec<T>>;

/// Fraction-free (Bareiss) elimination without pivoting. Returns the
/// leading principal minors `d_1, …, d_n`, stopping at the first zero.
pub fn leading_minors<T: Scalar>(m: &IntMatrix<T>) -> Result<Vec<T>> {
    let n = m.len();
    let mut a = m.clone();
    let mut prev = T::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(&pivot).ok_or_else(overflow)?;
                let y = a[i][k].checked_mul(&a[k][j]).ok_or_else(overflow)?;
                a[i][j] = x.checked_sub(&y).ok_or_else(overflow)? / prev.clone();
            }
        }
        prev = pivot;
    }
    Ok(out)
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub fn determinant<T: Scalar>(m: &IntMatrix<T>) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut prev = T::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(&pivot).ok_or_else(overflow)?;
                let y = a[i][k].checked_mul(&a[k][j]).ok_or_else(overflow)?;
                a[i][j] = x.checked_sub(&y).ok_or_else(overflow)? / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = pivot;
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Exact inverse over the rationals (Gauss–Jordan).
pub fn rational_inverse<T: Scalar>(m: &IntMatrix<T>) -> Result<Vec<Vec<Ratio<T>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<T>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<T>> = row.iter().cloned().map(Ratio::from_integer).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i][k].is_zero())
            .ok_or_else(|| Error::Lattice("singular Gram matrix".into()))?;
        a.swap(p, k);
        let inv = a[k][k].recip();
        for x in a[k].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let t = a[k][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A positive definite lattice given by `gram2 = 2·Gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLattice<T: Scalar> {
    gram2: IntMatrix<T>,
}

impl<T: Scalar> ExactLattice<T> {
    pub fn new(gram2: IntMatrix<T>) -> Result<Self> {
        let n = gram2.len();
        if n == 0 {
            return Err(Error::Lattice("rank 0".into()));
        }
        for (i, row) in gram2.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..i {
                if gram2[i][j] != gram2[j][i] {
                    return Err(Error::Lattice(format!("gram2 not symmetric at ({i}, {j})")));
                }
            }
        }
        let minors = leading_minors(&gram2)?;
        if minors.len() < n || minors.iter().any(|d| !d.is_positive()) {
            return Err(Error::Lattice("gram2 is not positive definite".into()));
        }
        Ok(Self { gram2 })
    }

    pub fn rank(&self) -> usize {
        self.gram2.len()
    }

    pub fn gram2(&self) -> &IntMatrix<T> {
        &self.gram2
    }

    /// `det(gram2) = 2^n · det(Gram)`.
    pub fn det_gram2(&self) -> Result<T> {
        determinant(&self.gram2)
    }

    /// `det(Gram)` as an exact rational.
    pub fn det(&self) -> Result<Ratio<T>> {
        let two_n = (0..self.rank()).fold(T::one(), |acc, _| acc * int::<T>(2));
        Ok(Ratio::new(self.det_gram2()?, two_n))
    }

    /// Gram entries are integers.
    pub fn is_integral(&self) -> bool {
        self.gram2.iter().flatten().all(|x| x.is_even())
    }

    /// Integral with every norm even.
    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| (self.gram2[i][i].clone() % int::<T>(4)).is_zero())
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.is_integral() && self.det()? == Ratio::one())
    }

    /// `Gram = gram2 / 2` as rationals.
    pub fn gram(&self) -> Vec<Vec<Ratio<T>>> {
        self.gram2
            .iter()
            .map(|r| r.iter().map(|x| Ratio::new(x.clone(), int(2))).collect())
            .collect()
    }

    /// Numbers of lattice vectors of norm `0, 1, …, bound`. Norms must be
    /// integral.
    pub fn norm_counts(&self, bound: u64) -> Result<Vec<u64>> {
        let center = vec![Ratio::zero(); self.rank()];
        norm_histogram(&self.gram(), &center, bound)
    }
}

pub type Lattice = ExactLattice<i128>;
pub type BigLattice = ExactLattice<BigInt>;

impl Lattice {
    pub fn to_big(&self) -> BigLattice {
        ExactLattice {
            gram2: self
                .gram2
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }
}

/// Calls `visit(x, Q(x))` for every `x = y + center` (`y` integral) with
/// `Q(x) = xᵀ·gram·x ≤ bound`.
pub fn fincke_pohst<T: Scalar>(
    gram: &[Vec<Ratio<T>>],
    center: &[Ratio<T>],
    bound: &Ratio<T>,
    mut visit: impl FnMut(&[i64], &Ratio<T>),
) -> Result<()> {
    let n = gram.len();
    // q[i][i] are the pivots, q[i][j] (j > i) the normalized multipliers.
    let mut q: Vec<Vec<Ratio<T>>> = gram.to_vec();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::Lattice("form is not positive definite".into()));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = q[i][j].clone() / q[i][i].clone();
        }
        for k in i + 1..n {
            for l in k..n {
                let t = q[k][i].clone() * q[i][l].clone();
                q[k][l] = q[k][l].clone() - t;
            }
        }
    }
    let mut y = vec![0i64; n];
    let mut x: Vec<Ratio<T>> = center.to_vec();
    let mut walk = Walk {
        q: &q,
        center,
        bound,
        y: &mut y,
        x: &mut x,
        visit: &mut visit,
    };
    walk.level(n, Ratio::zero())
}

struct Walk<'a, T: Scalar, F> {
    q: &'a [Vec<Ratio<T>>],
    center: &'a [Ratio<T>],
    bound: &'a Ratio<T>,
    y: &'a mut Vec<i64>,
    x: &'a mut Vec<Ratio<T>>,
    visit: &'a mut F,
}

impl<T: Scalar, F: FnMut(&[i64], &Ratio<T>)> Walk<'_, T, F> {
    /// Fixes coordinate `level - 1` given the cost `used` of the later ones.
    fn level(&mut self, level: usize, used: Ratio<T>) -> Result<()> {
        let i = level - 1;
        let q = self.q;
        let mut shift = self.center[i].clone();
        for j in i + 1..q.len() {
            shift = shift + q[i][j].clone() * self.x[j].clone();
        }
        let cost = |v: i64| {
            let t = Ratio::from_integer(int::<T>(v)) + shift.clone();
            used.clone() + q[i][i].clone() * t.clone() * t
        };
        // The cost is a parabola in v; walk outwards from its vertex.
        let vertex = (-shift.clone() + Ratio::new(int(1), int(2))).floor().to_integer();
        let start = vertex
            .to_i64()
            .ok_or_else(|| Error::Lattice("coordinate out of range".into()))?;
        for dir in [1i64, -1] {
            let mut v = if dir == 1 { start } else { start - 1 };
            loop {
                let c = cost(v);
                if &c > self.bound {
                    break;
                }
                self.y[i] = v;
                self.x[i] = Ratio::from_integer(int::<T>(v)) + self.center[i].clone();
                if i == 0 {
                    (self.visit)(self.y, &c);
                } else {
                    self.level(i, c)?;
                }
                v += dir;
            }
        }
        Ok(())
    }
}

/// Histogram of integral norms `≤ bound` of `y + center`, `y ∈ Z^n`.
pub fn norm_histogram<T: Scalar>(gram: &[Vec<Ratio<T>>], center: &[Ratio<T>], bound: u64) -> Result<Vec<u64>> {
    let b = i64::try_from(bound).map_err(|_| Error::Lattice("bound too large".into()))?;
    let mut hist = vec![0u64; bound as usize + 1];
    let mut bad = None;
    fincke_pohst(gram, center, &Ratio::from_integer(int(b)), |_, norm| {
        match norm.is_integer().then(|| norm.to_integer().to_usize()).flatten() {
            Some(k) => hist[k] += 1,
            None => bad = Some(norm.to_string()),
        }
    })?;
    if let Some(v) = bad {
        return Err(Error::Lattice(format!("non-integral norm {v}")));
    }
    Ok(hist)
}

/// The Cartan matrix of `E8`: a chain `0 – 1 – … – 6` with node 7 on node 4.
pub fn e8_cartan() -> IntMatrix<i64> {
    let mut c = vec![vec![0i64; 8]; 8];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: usize, b: usize| {
        c[a][b] = -1;
        c[b][a] = -1;
    };
    for i in 0..6 {
        edge(i, i + 1);
    }
    edge(4, 7);
    c
}

/// `√2·E8`: `gram2 = 4·Cartan`.
pub fn sqrt2_e8<T: Scalar>() -> ExactLattice<T> {
    let gram2 = e8_cartan()
        .into_iter()
        .map(|r| r.into_iter().map(|x| int::<T>(4 * x)).collect())
        .collect();
    ExactLattice::new(gram2).expect("√2E8 is positive definite")
}

/// Orthogonal direct sum.
pub fn orthogonal_sum<T: Scalar>(parts: &[&ExactLattice<T>]) -> Result<ExactLattice<T>> {
    let n: usize = parts.iter().map(|l| l.rank()).sum();
    let mut g = vec![vec![T::zero(); n]; n];
    let mut at = 0;
    for l in parts {
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                g[at + i][at + j] = l.gram2[i][j].clone();
            }
        }
        at += l.rank();
    }
    ExactLattice::new(g)
}

/// `R(L) = L*/L` with `q_L(x + L) = (x, x) mod 2`.
#[derive(Clone, Debug)]
pub struct LatticeGlue<T: Scalar> {
    lattice: ExactLattice<T>,
    /// `4·gram2^{-1}`: rows are `L*` basis vectors in doubled coordinates.
    doubled_dual: IntMatrix<T>,
    /// `L*/L` inside `F2^n` (reduction of the doubled coordinates).
    glue: Subspace,
    space: QuadraticSpace,
}

pub type GlueSpaceL = LatticeGlue<i128>;

impl<T: Scalar> LatticeGlue<T> {
    /// Requires `L` even, `2L* ⊆ L`, integral norms on `L*`, and a
    /// plus-type `R(L)`.
    pub fn new(lattice: ExactLattice<T>) -> Result<Self> {
        let n = lattice.rank();
        if !lattice.is_even() {
            return Err(Error::Lattice("L is not even".into()));
        }
        let inv = rational_inverse(&lattice.gram2)?;
        let four = Ratio::from_integer(int::<T>(4));
        let mut d = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = inv[i][j].clone() * four.clone();
                if !v.is_integer() {
                    return Err(Error::Lattice("2L* is not contained in L".into()));
                }
                d[i][j] = v.to_integer();
            }
        }
        for (i, row) in d.iter().enumerate() {
            let norm8 = quad_form(&lattice.gram2, row, row)?;
            if !(norm8 % int::<T>(8)).is_zero() {
                return Err(Error::Lattice(format!(
                    "dual basis vector {i} has non-integral norm (CondL fails)"
                )));
            }
        }
        let rows = d
            .iter()
            .map(|r| F2Vector::from_bools(&r.iter().map(|x| x.is_odd()).collect::<Vec<_>>()))
            .collect();
        let glue = Subspace::from_generators(n, rows);
        let r = glue.dim();
        if r == 0 {
            return Err(Error::Lattice("L is unimodular; R(L) = 0".into()));
        }
        let basis: Vec<Vec<T>> = glue.basis_vectors().iter().map(lift01::<T>).collect();
        let mut q_basis = Vec::with_capacity(r);
        let mut polar = crate::f2linalg::F2Matrix::zeros(r, r);
        for i in 0..r {
            // (x, x) = zᵀ gram2 z / 8
            let v = quad_form(&lattice.gram2, &basis[i], &basis[i])?;
            q_basis.push(((v / int::<T>(8)) % int::<T>(2)).is_odd());
            for j in 0..r {
                // 2(x, y) = zᵀ gram2 z' / 4
                let p = quad_form(&lattice.gram2, &basis[i], &basis[j])?;
                if !(p.clone() % int::<T>(4)).is_zero() {
                    return Err(Error::Internal("glue pairing not integral".into()));
                }
                polar.set(i, j, ((p / int::<T>(4)) % int::<T>(2)).is_odd());
            }
        }
        let space = QuadraticSpace::from_values(&q_basis, &polar)?;
        Ok(Self {
            lattice,
            doubled_dual: d,
            glue,
            space,
        })
    }

    pub fn lattice(&self) -> &ExactLattice<T> {
        &self.lattice
    }

    pub fn doubled_dual(&self) -> &IntMatrix<T> {
        &self.doubled_dual
    }

    pub fn dim(&self) -> usize {
        self.glue.dim()
    }

    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// `u ∈ R(L)` (coordinates) as a vector of `F2^n`.
    pub fn embed(&self, u: &F2Vector) -> F2Vector {
        self.glue.combine(u)
    }

    /// `φ_L` on doubled coordinates of a vector of `L*`.
    pub fn phi(&self, z: &[T]) -> Result<F2Vector> {
        let bits = F2Vector::from_bools(&z.iter().map(|x| x.is_odd()).collect::<Vec<_>>());
        self.glue
            .coordinates(&bits)
            .ok_or_else(|| Error::Lattice("vector is not in L*".into()))
    }

    /// Norm histogram (`0..=bound`) of the coset `φ_L^{-1}(u)`.
    pub fn coset_norm_profile(&self, u: &F2Vector, bound: u64) -> Result<Vec<u64>> {
        if bound > 8 && self.lattice.rank() > 8 {
            return Err(Error::Precondition("coset enumeration bound too large".into()));
        }
        let z = lift01::<T>(&self.embed(u));
        let center: Vec<Ratio<T>> = z.into_iter().map(|x| Ratio::new(x, int(2))).collect();
        norm_histogram(&self.lattice.gram(), &center, bound)
    }

    /// Smallest norm in the coset `φ_L^{-1}(u)`.
    pub fn coset_min_norm(&self, u: &F2Vector) -> Result<u64> {
        let mut bound = 2;
        loop {
            let h = self.coset_norm_profile(u, bound)?;
            if let Some(k) = h.iter().position(|&c| c > 0) {
                return Ok(k as u64);
            }
            bound += 2;
        }
    }
}

fn lift01<T: Scalar>(v: &F2Vector) -> Vec<T> {
    (0..v.len()).map(|i| if v.get(i) { T::one() } else { T::zero() }).collect()
}

fn quad_form<T: Scalar>(g: &IntMatrix<T>, a: &[T], b: &[T]) -> Result<T> {
    let mut total = T::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let t = ai.checked_mul(&g[i][j]).and_then(|x| x.checked_mul(bj)).ok_or_else(overflow)?;
            total = total.checked_add(&t).ok_or_else(overflow)?;
        }
    }
    Ok(total)
}

/// `L(S)` together with its basis in doubled coordinates of `L^k`.
#[derive(Clone, Debug)]
pub struct GluedLattice<T: Scalar> {
    pub lattice: ExactLattice<T>,
    pub basis: IntMatrix<T>,
}

/// `L(S) = (φ_L^k)^{-1}(S)` for maximal totally singular `S ⊆ R(L)^k`.
///
/// In doubled coordinates `L(S) = {z : z mod 2 ∈ W}` where `W ⊆ F2^{nk}`
/// is the image of `S`, so a basis is the 0/1 lift of the RREF basis of `W`
/// plus `2e_j` on the non-pivot columns. Evenness, `det(Gram) = 1` and
/// positive definiteness are checked exactly.
pub fn build_lattice_from_s<T: Scalar>(glue: &LatticeGlue<T>, k: usize, s: &Subspace) -> Result<GluedLattice<T>> {
    let sp = &glue.space;
    let r = glue.dim();
    let n = glue.lattice.rank();
    sp.direct_sum(k).require_maximal_ts(s, "S")?;

    let w_rows = s
        .basis_vectors()
        .iter()
        .map(|v| F2Vector::concat(&(0..k).map(|i| glue.embed(&v.slice(i * r, r))).collect::<Vec<_>>()))
        .collect();
    let w = Subspace::from_generators(n * k, w_rows);
    let mut basis: IntMatrix<T> = w.basis_vectors().iter().map(lift01::<T>).collect();
    for j in 0..n * k {
        if !w.pivots().contains(&j) {
            let mut e = vec![T::zero(); n * k];
            e[j] = int(2);
            basis.push(e);
        }
    }

    let mut big = vec![vec![T::zero(); n * k]; n * k];
    for b in 0..k {
        for i in 0..n {
            for j in 0..n {
                big[b * n + i][b * n + j] = glue.lattice.gram2[i][j].clone();
            }
        }
    }
    let dim = n * k;
    let mut gram2 = vec![vec![T::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let v = quad_form(&big, &basis[i], &basis[j])?;
            if !(v.clone() % int::<T>(4)).is_zero() {
                return Err(Error::Internal("L(S) Gram entry not in Z/2".into()));
            }
            gram2[i][j] = v / int::<T>(4);
            gram2[j][i] = gram2[i][j].clone();
        }
    }
    let lattice = ExactLattice::new(gram2)?;
    if !lattice.is_even() {
        return Err(Error::Internal("L(S) is not even".into()));
    }
    if !lattice.is_unimodular()? {
        return Err(Error::Internal(format!("L(S) has det(Gram) = {}", lattice.det()?)));
    }
    Ok(GluedLattice { lattice, basis })
}

/// Per-coset norm profiles for every `u ∈ R(L)` (index = integer coordinates).
pub fn all_coset_profiles<T: Scalar>(glue: &LatticeGlue<T>, bound: u64) -> Result<Vec<Vec<u64>>> {
    let r = glue.dim();
    assert!(r <= 16, "2^{r} cosets");
    (0u64..1 << r)
        .map(|x| glue.coset_norm_profile(&F2Vector::from_u64(r, x), bound))
        .collect()
}

fn convolve(a: &[u64], b: &[u64], cap: usize) -> Vec<u64> {
    let mut out = vec![0u64; cap + 1];
    for (i, &x) in a.iter().enumerate().take(cap + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(cap + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Norm counts (`0..=bound`) of `L(S)` summed coset by coset over `S`.
pub fn factored_norm_counts(profiles: &[Vec<u64>], r: usize, k: usize, s: &Subspace, bound: u64) -> Vec<u64> {
    let cap = bound as usize;
    let mut total = vec![0u64; cap + 1];
    for v in s.elements() {
        let mut acc = vec![0u64; cap + 1];
        acc[0] = 1;
        for i in 0..k {
            let p = &profiles[v.slice(i * r, r).to_u64() as usize];
            acc = convolve(&acc, p, cap);
        }
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    total
}

/// The pieces of the Leech construction.
#[derive(Clone, Debug)]
pub struct LeechBuild {
    pub glue: GlueSpaceL,
    pub phi: Subspace,
    pub psi: Subspace,
    pub s: Subspace,
    pub glued: GluedLattice<i128>,
    /// Coset norm profiles up to norm 6 for all 256 cosets of `√2E8`.
    pub profiles: Vec<Vec<u64>>,
}

impl LeechBuild {
    /// Norm counts `0..=6` of `L(S)` from the per-coset convolution.
    pub fn norm_counts(&self) -> Vec<u64> {
        factored_norm_counts(&self.profiles, self.glue.dim(), 3, &self.s, 6)
    }
}

/// `L = √2E8`, `Φ` from a greedy hyperbolic basis of `R(L)`, `Ψ` the
/// canonical complement, and `L(S(Φ, Ψ; 3))`.
pub fn build_leech() -> Result<LeechBuild> {
    let glue = GlueSpaceL::new(sqrt2_e8())?;
    let sp = glue.space.clone();
    let frame = hyperbolic_completion(&sp, &[])?;
    let phi = Subspace::from_generators(sp.dim(), frame.f);
    let psi = find_complement(&sp, &phi)?;
    let s = build_s(&sp, &phi, &psi, 3)?;
    let glued = build_lattice_from_s(&glue, 3, &s)?;
    let profiles = all_coset_profiles(&glue, 6)?;
    let build = LeechBuild {
        glue,
        phi,
        psi,
        s,
        glued,
        profiles,
    };
    if check_cond1(&sp, 3, &build.s).is_ok() && build.norm_counts()[2] != 0 {
        return Err(Error::Internal("L(S) has norm-2 vectors despite w^3 >= 4 on S".into()));
    }
    Ok(build)
}

/// Three ways of counting the norm-4 vectors of `L(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorReport {
    /// `(L^3 term, type I term, type II term)` from closed-form counts.
    pub closed_form: [u64; 3],
    /// The same terms summed over the classified vectors of `S`.
    pub by_class: [u64; 3],
    /// Coset-factored count over all of `S`.
    pub sweep: u64,
}

impl MinimalVectorReport {
    pub fn consistent(&self) -> bool {
        let a: u64 = self.closed_form.iter().sum();
        self.closed_form == self.by_class && a == self.sweep
    }
}

/// The decomposition `720 + 11520 + 184320 = 196560`.
pub fn verify_196560_identity(build: &LeechBuild) -> Result<MinimalVectorReport> {
    let glue = &build.glue;
    let sp = glue.space();
    let r = glue.dim();
    let m = sp.half_dim() as u32;
    let prof = |u: &F2Vector, norm: usize| build.profiles[u.to_u64() as usize][norm];
    let sample = |w: u8| {
        (1u64..1 << r)
            .map(|x| F2Vector::from_u64(r, x))
            .find(|u| sp.w(u) == w)
            .map(|u| prof(&u, w as usize))
            .unwrap_or(0)
    };
    let zero = F2Vector::zeros(r);
    let (c0, c1, c2) = (prof(&zero, 4), sample(1), sample(2));
    let t1 = 3 * ((1u64 << m) - 1);
    let t2 = t1 * (1u64 << (2 * m - 2));
    let closed_form = [3 * c0, t1 * c2 * c2, t2 * c1 * c1 * c2];

    let count_in = |v: &F2Vector| -> u64 {
        (0..3)
            .map(|i| {
                let u = v.slice(i * r, r);
                prof(&u, sp.w(&u) as usize)
            })
            .product()
    };
    let classes = classify_w4(sp, &build.phi, &build.psi)?;
    let by_class = [
        3 * prof(&zero, 4),
        classes.type_one.iter().map(count_in).sum(),
        classes.type_two.iter().map(count_in).sum(),
    ];
    let sweep = build.norm_counts()[4];
    Ok(MinimalVectorReport {
        closed_form,
        by_class,
        sweep,
    })
}

/// Direct rank-24 enumeration of norms `0..=bound` (slow).
pub fn direct_norm_counts(lattice: &Lattice, bound: u64) -> Result<Vec<u64>> {
    lattice.to_big().norm_counts(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cartan_i128() -> IntMatrix<i128> {
        e8_cartan().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
    }

    #[test]
    fn e8_determinant_and_roots() {
        assert_eq!(determinant(&cartan_i128()).unwrap(), 1);
        let e8 = Lattice::new(cartan_i128().iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect()).unwrap();
        assert!(e8.is_even());
        assert!(e8.is_unimodular().unwrap());
        assert_eq!(e8.norm_counts(2).unwrap(), vec![1, 0, 240]);
    }

    #[test]
    fn sqrt2_e8_invariants() {
        let l: Lattice = sqrt2_e8();
        assert_eq!(l.det().unwrap(), Ratio::from_integer(256));
        assert!(l.is_even());
        assert_eq!(l.norm_counts(4).unwrap(), vec![1, 0, 0, 0, 240]);
        let g = GlueSpaceL::new(l).unwrap();
        assert_eq!(g.dim(), 8);
        assert_eq!(g.space().singular_count(), 136);
    }

    #[test]
    fn determinant_with_pivoting() {
        let m: IntMatrix<i128> = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(&m).unwrap(), -1);
        let m: IntMatrix<BigInt> = vec![
            vec![2.into(), 1.into(), 0.into()],
            vec![1.into(), 2.into(), 1.into()],
            vec![0.into(), 1.into(), 2.into()],
        ];
        assert_eq!(determinant(&m).unwrap(), BigInt::from(4));
    }

    #[test]
    fn rejects_bad_lattices() {
        assert!(Lattice::new(vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(Lattice::new(vec![vec![4, 1], vec![0, 4]]).is_err());
        // √2·Z^8: even, but its dual has norm-1/2 vectors.
        let g: IntMatrix<i128> = (0..8).map(|i| (0..8).map(|j| if i == j { 4 } else { 0 }).collect()).collect();
        let err = GlueSpaceL::new(Lattice::new(g).unwrap()).unwrap_err();
        assert!(err.to_string().contains("CondL"), "{err}");
    }

    #[test]
    fn coset_constants() {
        let g = GlueSpaceL::new(sqrt2_e8()).unwrap();
        let sp = g.space().clone();
        for x in 0u64..256 {
            let u = F2Vector::from_u64(8, x);
            let w = sp.w(&u) as u64;
            let p = g.coset_norm_profile(&u, 4).unwrap();
            let first = p.iter().position(|&c| c > 0).unwrap() as u64;
            assert_eq!(first, w, "u = {u}");
            match w {
                0 => assert_eq!(p[4], 240),
                1 => assert_eq!(p[1], 2),
                _ => assert_eq!(p[2], 16),
            }
        }
    }

    #[test]
    fn doubled_sum_glue() {
        let l: Lattice = sqrt2_e8();
        let ll = orthogonal_sum(&[&l, &l]).unwrap();
        assert_eq!(GlueSpaceL::new(ll).unwrap().dim(), 16);
    }

    #[test]
    fn leech_counts() {
        let b = build_leech().unwrap();
        assert_eq!(b.glued.lattice.rank(), 24);
        let counts = b.norm_counts();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[2], 0);
        assert_eq!(counts[4], 196560);
        assert_eq!(counts[6], 16773120);
        let r = verify_196560_identity(&b).unwrap();
        assert_eq!(r.closed_form, [720, 11520, 184320]);
        assert!(r.consistent(), "{r:?}");
    }
}
