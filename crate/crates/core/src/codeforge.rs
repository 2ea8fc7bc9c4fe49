//! Binary codes, the glue space `R(C) = C^⊥/C`, the codes `C(S)`, and the
//! extended Golay code built from three copies of `R(span{1_8})`.

use crate::error::{Error, Result};
use crate::f2linalg::{kernel, solve, F2Matrix, F2Vector, Subspace};
use crate::orthogroup::find_complement;
use crate::quadspace::{build_s, check_cond1, classify_w4, QuadraticSpace};

/// Largest dimension for which codewords are enumerated.
pub const MAX_ENUM_DIM: usize = 24;

/// A binary linear code, stored by the RREF basis of its span.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryCode {
    gen: Subspace,
}

impl BinaryCode {
    pub fn new(gen: Subspace) -> Self {
        Self { gen }
    }

    pub fn from_generators(n: usize, rows: Vec<F2Vector>) -> Self {
        Self::new(Subspace::from_generators(n, rows))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Subspace::zero(n))
    }

    pub fn len(&self) -> usize {
        self.gen.ambient()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.gen
    }

    pub fn generator_matrix(&self) -> &F2Matrix {
        self.gen.basis()
    }

    pub fn contains(&self, x: &F2Vector) -> bool {
        self.gen.contains(x)
    }

    pub fn dual(&self) -> BinaryCode {
        if self.dim() == 0 {
            return BinaryCode::new(Subspace::full(self.len()));
        }
        BinaryCode::new(kernel(&self.gen.basis().transpose()))
    }

    /// Codeword counts indexed by weight (length `n + 1`).
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(Error::Code(format!(
                "refusing to enumerate 2^{} codewords",
                self.dim()
            )));
        }
        let mut hist = vec![0u64; self.len() + 1];
        for c in self.gen.elements() {
            hist[c.weight()] += 1;
        }
        Ok(hist)
    }

    /// Every weight divisible by 4. Exhaustive for small codes; otherwise via
    /// generator weights and pairwise even overlaps.
    pub fn is_doubly_even(&self) -> bool {
        if self.dim() <= MAX_ENUM_DIM {
            return self
                .weight_enumerator()
                .expect("dimension checked")
                .iter()
                .enumerate()
                .all(|(w, &c)| c == 0 || w % 4 == 0);
        }
        let rows = self.gen.basis_vectors();
        rows.iter().all(|r| r.weight() % 4 == 0)
            && rows
                .iter()
                .enumerate()
                .all(|(i, a)| rows[i + 1..].iter().all(|b| !a.dot(b)))
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.gen
            .elements()
            .iter()
            .map(F2Vector::weight)
            .filter(|&w| w > 0)
            .min()
    }
}

/// The all-ones word of length `n` spans `C`.
pub fn repetition_code(n: usize) -> BinaryCode {
    BinaryCode::from_generators(n, vec![F2Vector::ones(n)])
}

/// The `[8, 4, 4]` extended Hamming code with a fixed generator matrix.
pub fn extended_hamming8() -> BinaryCode {
    let m = F2Matrix::from_strs(&["11110000", "00111100", "00001111", "01010101"]);
    BinaryCode::new(Subspace::from_matrix(&m))
}

/// `R(C) = C^⊥/C` with `q_C(x + C) = wt(x)/2 mod 2`.
#[derive(Clone, Debug)]
pub struct GlueSpaceC {
    code: BinaryCode,
    dual: BinaryCode,
    /// Representatives `g_j ∈ C^⊥` of a basis of `R(C)`.
    reps: Vec<F2Vector>,
    /// Rows `reps` then the basis of `C`, for coordinate solves.
    frame: F2Matrix,
    space: Option<QuadraticSpace>,
}

impl GlueSpaceC {
    /// Requires `C` doubly even, `n ∈ 8Z` and `1_n ∈ C`.
    pub fn new(code: BinaryCode) -> Result<Self> {
        let n = code.len();
        if n == 0 || !n.is_multiple_of(8) {
            return Err(Error::Code(format!("length {n} is not a positive multiple of 8")));
        }
        if !code.is_doubly_even() {
            return Err(Error::Code("C is not doubly even".into()));
        }
        if !code.contains(&F2Vector::ones(n)) {
            return Err(Error::Code("the all-ones word is not in C".into()));
        }
        let dual = code.dual();
        if !dual.subspace().contains_subspace(code.subspace()) {
            return Err(Error::Code("C is not self-orthogonal".into()));
        }
        let mut span = code.subspace().clone();
        let mut reps = Vec::new();
        for v in dual.subspace().basis_vectors() {
            if !span.contains(v) {
                reps.push(v.clone());
                span = Subspace::from_generators(n, span.basis_vectors().iter().chain([v]).cloned().collect());
            }
        }
        let frame = F2Matrix::from_rows(
            n,
            reps.iter().chain(code.subspace().basis_vectors()).cloned().collect(),
        );
        let r = reps.len();
        let space = if r == 0 {
            None
        } else {
            let q_basis: Vec<bool> = reps.iter().map(|g| g.weight() % 4 == 2).collect();
            let mut polar = F2Matrix::zeros(r, r);
            for i in 0..r {
                for j in 0..r {
                    polar.set(i, j, reps[i].dot(&reps[j]));
                }
            }
            Some(QuadraticSpace::from_values(&q_basis, &polar)?)
        };
        let glue = Self {
            code,
            dual,
            reps,
            frame,
            space,
        };
        glue.check_well_defined()?;
        Ok(glue)
    }

    fn check_well_defined(&self) -> Result<()> {
        for g in &self.reps {
            for c in self.code.subspace().basis_vectors() {
                if g.xor(c).weight() % 4 != g.weight() % 4 {
                    return Err(Error::Code("wt/2 mod 2 is not constant on a coset".into()));
                }
            }
        }
        Ok(())
    }

    pub fn code(&self) -> &BinaryCode {
        &self.code
    }

    pub fn dual(&self) -> &BinaryCode {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// `(R(C), q_C)`; `None` when `C` is self-dual.
    pub fn space(&self) -> Option<&QuadraticSpace> {
        self.space.as_ref()
    }

    fn require_space(&self) -> Result<&QuadraticSpace> {
        self.space
            .as_ref()
            .ok_or_else(|| Error::Code("R(C) = 0 for a self-dual code".into()))
    }

    /// `φ_C(x)` for `x ∈ C^⊥`.
    pub fn phi(&self, x: &F2Vector) -> Result<F2Vector> {
        let c = solve(&self.frame, x).ok_or_else(|| Error::Code(format!("{x} is not in C^⊥")))?;
        Ok(c.slice(0, self.dim()))
    }

    /// `φ_C(U)` for a subspace `U ⊆ C^⊥`.
    pub fn phi_subspace(&self, u: &Subspace) -> Result<Subspace> {
        let imgs = u
            .basis_vectors()
            .iter()
            .map(|x| self.phi(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_generators(self.dim(), imgs))
    }

    /// The linear section `u ↦ Σ u_j g_j`.
    pub fn linear_lift(&self, u: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.code.len());
        for j in u.ones_iter() {
            out.xor_assign(&self.reps[j]);
        }
        out
    }

    /// All words of the coset `φ_C^{-1}(u)`.
    pub fn coset(&self, u: &F2Vector) -> Vec<F2Vector> {
        let base = self.linear_lift(u);
        self.code.subspace().elements().into_iter().map(|c| c.xor(&base)).collect()
    }

    /// Minimum-weight coset representative; ties go to the smallest bit string.
    pub fn lift(&self, u: &F2Vector) -> F2Vector {
        self.coset(u)
            .into_iter()
            .min_by(|a, b| {
                a.weight()
                    .cmp(&b.weight())
                    .then_with(|| a.to_bit_string().cmp(&b.to_bit_string()))
            })
            .expect("cosets are non-empty")
    }

    /// Weight distribution of the coset (indexed by weight).
    pub fn coset_weights(&self, u: &F2Vector) -> Vec<u64> {
        let mut hist = vec![0u64; self.code.len() + 1];
        for x in self.coset(u) {
            hist[x.weight()] += 1;
        }
        hist
    }

    pub fn coset_weight_count(&self, u: &F2Vector, t: usize) -> u64 {
        self.coset(u).iter().filter(|x| x.weight() == t).count() as u64
    }

    pub fn coset_min_weight(&self, u: &F2Vector) -> usize {
        self.coset(u).iter().map(F2Vector::weight).min().expect("non-empty")
    }
}

/// `C(S) = (φ_C^k)^{-1}(S)` for maximal totally singular `S ⊆ R(C)^k`.
///
/// Checks double evenness and self-duality of the result, and the absence
/// of weight-4 words when `C` has none and `w^3 ≥ 4` on `S \ 0`.
pub fn build_code_from_s(glue: &GlueSpaceC, k: usize, s: &Subspace) -> Result<BinaryCode> {
    let sp = glue.require_space()?;
    let r = glue.dim();
    let n = glue.code.len();
    sp.direct_sum(k).require_maximal_ts(s, "S")?;

    let mut gens = Vec::new();
    for c in glue.code.subspace().basis_vectors() {
        for i in 0..k {
            let mut v = F2Vector::zeros(n * k);
            v.write_slice(i * n, c);
            gens.push(v);
        }
    }
    for v in s.basis_vectors() {
        let parts: Vec<F2Vector> = (0..k).map(|i| glue.linear_lift(&v.slice(i * r, r))).collect();
        gens.push(F2Vector::concat(&parts));
    }
    let code = BinaryCode::from_generators(n * k, gens);
    if code.dim() != k * n / 2 {
        return Err(Error::Internal(format!(
            "C(S) has dimension {} instead of {}",
            code.dim(),
            k * n / 2
        )));
    }
    if !code.is_doubly_even() {
        return Err(Error::Internal("C(S) is not doubly even".into()));
    }
    if !code.is_self_dual() {
        return Err(Error::Internal("C(S) is not self-dual".into()));
    }
    if code.dim() <= MAX_ENUM_DIM && check_cond1(sp, k, s).is_ok() {
        let base_has_4 = glue.code.weight_enumerator()?.get(4).copied().unwrap_or(0) > 0;
        if !base_has_4 && code.weight_enumerator()?[4] != 0 {
            return Err(Error::Internal("C(S) has weight-4 words despite w^3 >= 4 on S".into()));
        }
    }
    Ok(code)
}

/// The pieces of the Golay construction.
#[derive(Clone, Debug)]
pub struct GolayBuild {
    pub glue: GlueSpaceC,
    pub phi: Subspace,
    pub psi: Subspace,
    pub s: Subspace,
    pub code: BinaryCode,
}

/// `C = span{1_8}`, `Φ = φ_C(H_8)`, `Ψ` the canonical complement, and
/// `C(S(Φ, Ψ; 3))`.
pub fn build_golay() -> Result<GolayBuild> {
    let glue = GlueSpaceC::new(repetition_code(8))?;
    let sp = glue.require_space()?.clone();
    let phi = glue.phi_subspace(extended_hamming8().subspace())?;
    let psi = find_complement(&sp, &phi)?;
    let s = build_s(&sp, &phi, &psi, 3)?;
    let code = build_code_from_s(&glue, 3, &s)?;
    Ok(GolayBuild {
        glue,
        phi,
        psi,
        s,
        code,
    })
}

/// Three ways of counting the weight-8 words of `C(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctadReport {
    /// `(C^3 term, type I term, type II term)` from the closed-form counts.
    pub closed_form: [u64; 3],
    /// The same terms summed coset by coset over the classified vectors.
    pub by_class: [u64; 3],
    /// Sum over every element of `S` of the weight-8 count in its preimage.
    pub sweep: u64,
    /// Weight-8 coefficient of the full weight enumerator.
    pub direct: u64,
}

impl OctadReport {
    pub fn consistent(&self) -> bool {
        let a: u64 = self.closed_form.iter().sum();
        let b: u64 = self.by_class.iter().sum();
        self.closed_form == self.by_class && a == b && b == self.sweep && self.sweep == self.direct
    }
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The weight-8 decomposition `3 + 84 + 672 = 759` for the Golay build.
pub fn verify_759_identity(build: &GolayBuild) -> Result<OctadReport> {
    let glue = &build.glue;
    let sp = glue.require_space()?;
    let m = sp.half_dim() as u32;
    let r = glue.dim();
    let zero = F2Vector::zeros(r);

    // Per-class coset constants: weight 8 in C, weight 2 for w=1, weight 4 for w=2.
    let c0 = glue.coset_weight_count(&zero, 8);
    let (t1, t2) = (3 * ((1u64 << m) - 1), 3 * ((1u64 << m) - 1) * (1u64 << (2 * m - 2)));
    let sample = |w: u8| {
        (1u64..1 << r)
            .map(|x| F2Vector::from_u64(r, x))
            .find(|u| sp.w(u) == w)
            .map(|u| glue.coset_weight_count(&u, 2 * w as usize))
            .unwrap_or(0)
    };
    let (c1, c2) = (sample(1), sample(2));
    let closed_form = [3 * c0, t1 * c2 * c2, t2 * c1 * c1 * c2];

    let count_in = |v: &F2Vector| -> u64 {
        (0..3)
            .map(|i| {
                let u = v.slice(i * r, r);
                glue.coset_weight_count(&u, 2 * sp.w(&u) as usize)
            })
            .product()
    };
    let classes = classify_w4(sp, &build.phi, &build.psi)?;
    let by_class = [
        (0..3).map(|_| glue.coset_weight_count(&zero, 8)).sum(),
        classes.type_one.iter().map(count_in).sum(),
        classes.type_two.iter().map(count_in).sum(),
    ];

    let profiles: Vec<Vec<u64>> = (0u64..1 << r)
        .map(|x| glue.coset_weights(&F2Vector::from_u64(r, x)))
        .collect();
    let mut sweep = 0u64;
    for v in build.s.elements() {
        let p: Vec<&Vec<u64>> = (0..3).map(|i| &profiles[v.slice(i * r, r).to_u64() as usize]).collect();
        let conv = convolve(&convolve(p[0], p[1]), p[2]);
        sweep += conv.get(8).copied().unwrap_or(0);
    }

    let direct = build.code.weight_enumerator()?[8];
    Ok(OctadReport {
        closed_form,
        by_class,
        sweep,
        direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code_basics() {
        let c = repetition_code(8);
        assert_eq!(c.dual().dim(), 7);
        assert!(c.is_doubly_even());
        assert!(!c.is_self_dual());
        assert_eq!(BinaryCode::zero(5).dual().dim(), 5);
    }

    #[test]
    fn hamming_code() {
        let h = extended_hamming8();
        assert!(h.is_self_dual());
        assert!(h.is_doubly_even());
        let mut want = vec![0u64; 9];
        want[0] = 1;
        want[4] = 14;
        want[8] = 1;
        assert_eq!(h.weight_enumerator().unwrap(), want);
    }

    #[test]
    fn glue_dimensions() {
        let g = GlueSpaceC::new(repetition_code(8)).unwrap();
        assert_eq!(g.dim(), 6);
        assert_eq!(g.space().unwrap().dim(), 6);
        let g16 = GlueSpaceC::new(repetition_code(16)).unwrap();
        assert_eq!(g16.dim(), 14);
        let h = GlueSpaceC::new(extended_hamming8()).unwrap();
        assert_eq!(h.dim(), 0);
        assert!(h.space().is_none());
    }

    #[test]
    fn glue_rejects_bad_codes() {
        assert!(GlueSpaceC::new(BinaryCode::zero(8)).is_err());
        assert!(GlueSpaceC::new(repetition_code(4)).is_err());
        let odd = BinaryCode::from_generators(8, vec![F2Vector::ones(8), F2Vector::parse_bits("11000000").unwrap()]);
        assert!(GlueSpaceC::new(odd).is_err());
    }

    #[test]
    fn q_matches_half_weight() {
        let g = GlueSpaceC::new(repetition_code(8)).unwrap();
        let sp = g.space().unwrap();
        for x in 0u64..64 {
            let u = F2Vector::from_u64(6, x);
            let lift = g.linear_lift(&u);
            assert!(g.dual().contains(&lift));
            assert_eq!(sp.q(&u), lift.weight() % 4 == 2);
            assert_eq!(g.phi(&lift).unwrap(), u);
        }
    }

    #[test]
    fn coset_constants() {
        let g = GlueSpaceC::new(repetition_code(8)).unwrap();
        let sp = g.space().unwrap();
        for x in 0u64..64 {
            let u = F2Vector::from_u64(6, x);
            let w = sp.w(&u);
            let expected = match w {
                0 => (8, 1),
                1 => (2, 1),
                _ => (4, 2),
            };
            assert_eq!(g.coset_weight_count(&u, expected.0), expected.1, "u = {u}");
            assert_eq!(g.coset_min_weight(&u), 2 * w as usize);
            assert_eq!(g.lift(&u).weight(), 2 * w as usize);
        }
    }

    #[test]
    fn golay_histogram() {
        let b = build_golay().unwrap();
        let hist = b.code.weight_enumerator().unwrap();
        let nonzero: Vec<(usize, u64)> = hist.iter().copied().enumerate().filter(|&(_, c)| c > 0).collect();
        assert_eq!(nonzero, vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
        assert_eq!(b.code.min_weight(), Some(8));
    }

    #[test]
    fn octad_identity() {
        let b = build_golay().unwrap();
        let r = verify_759_identity(&b).unwrap();
        assert_eq!(r.closed_form, [3, 84, 672]);
        assert!(r.consistent(), "{r:?}");
    }
}
