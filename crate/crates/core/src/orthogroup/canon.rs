//! Normal form for maximal totally singular `S ⊂ R^3` with `w^3 ≥ 4` on non-zero vectors:
//! an explicit `g ∈ O(R, q)^3` with `S·g = S(Φ, Ψ; 3)`.

use crate::error::{Error, Result};
use crate::f2linalg::{kernel, solve, F2Matrix, F2Vector, Subspace};
use crate::quadspace::{build_s, QuadraticSpace};

use super::witt::{find_complement, levi_lift, map_complementary_pair, map_mts, o2h_element};
use super::{BlockIsometry, Isometry};

const K: usize = 3;

/// Sections and projections of `S ⊂ R^3`.
#[derive(Clone, Debug)]
pub struct SectionReport {
    /// `sections[i] = {v ∈ S : ρ_i(v) = 0}`.
    pub sections: Vec<Subspace>,
    /// `projections[i][j] = ρ_j(sections[i])` (`None` on the diagonal).
    pub projections: Vec<Vec<Option<Subspace>>>,
}

/// Result of [`canonicalize_s`].
#[derive(Clone, Debug)]
pub struct Canonical {
    /// Block-diagonal element with `S·g = S(Φ, Ψ; 3)`.
    pub g: BlockIsometry,
    pub phi: Subspace,
    pub psi: Subspace,
}

impl Canonical {
    /// A block isometry taking the source of `self` to the source of `other`,
    /// through the two normal forms.
    pub fn conjugator_to(&self, sp: &QuadraticSpace, other: &Canonical) -> Result<BlockIsometry> {
        let h = map_complementary_pair(sp, &self.phi, &self.psi, &other.phi, &other.psi)?;
        Ok(self
            .g
            .then(&BlockIsometry::uniform(&h, K))
            .then(&other.g.inverse()))
    }
}

fn project(s: &Subspace, n: usize, i: usize) -> Subspace {
    let rows = s.basis_vectors().iter().map(|v| v.slice(i * n, n)).collect();
    Subspace::from_generators(n, rows)
}

/// `{v ∈ S : ρ_j(v) = 0 for j in zero_blocks}`.
fn section(s: &Subspace, n: usize, zero_blocks: &[usize]) -> Subspace {
    let width = n * zero_blocks.len();
    let rows = s
        .basis_vectors()
        .iter()
        .map(|v| F2Vector::concat(&zero_blocks.iter().map(|&j| v.slice(j * n, n)).collect::<Vec<_>>()))
        .collect();
    let coeffs = kernel(&F2Matrix::from_rows(width, rows));
    let gens = coeffs.basis_vectors().iter().map(|c| s.combine(c)).collect();
    Subspace::from_generators(s.ambient(), gens)
}

/// Some `v ∈ s` with `ρ_i(v) = target`.
fn lift_through(s: &Subspace, n: usize, i: usize, target: &F2Vector) -> Option<F2Vector> {
    let rows = s.basis_vectors().iter().map(|v| v.slice(i * n, n)).collect();
    let c = solve(&F2Matrix::from_rows(n, rows), target)?;
    Some(s.combine(&c))
}

/// Checks the structural consequences of `w^3 ≥ 4` for `S ⊂ R^3`:
/// `S^(ij) = 0`, `ρ_i(S) = R`, `dim S^(i) = m`, and `ρ_j(S^(i))` maximal
/// totally singular. The first failure is reported.
pub fn lemma_invariants(sp: &QuadraticSpace, s: &Subspace) -> Result<SectionReport> {
    let n = sp.dim();
    let m = sp.half_dim();
    if s.ambient() != n * K {
        return Err(Error::DimensionMismatch {
            expected: n * K,
            found: s.ambient(),
        });
    }
    let sum = sp.direct_sum(K);
    sum.require_maximal_ts(s, "S")?;
    for i in 0..K {
        for j in i + 1..K {
            let d = section(s, n, &[i, j]).dim();
            if d != 0 {
                return Err(Error::Precondition(format!(
                    "S^({}{}) has dimension {d}, expected 0",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    for i in 0..K {
        let d = project(s, n, i).dim();
        if d != n {
            return Err(Error::Precondition(format!(
                "ρ_{}(S) has dimension {d}, expected {n}",
                i + 1
            )));
        }
    }
    let mut sections = Vec::with_capacity(K);
    let mut projections = Vec::with_capacity(K);
    for i in 0..K {
        let sec = section(s, n, &[i]);
        if sec.dim() != m {
            return Err(Error::Precondition(format!(
                "S^({}) has dimension {}, expected {m}",
                i + 1,
                sec.dim()
            )));
        }
        let mut row = Vec::with_capacity(K);
        for j in 0..K {
            if i == j {
                row.push(None);
                continue;
            }
            let p = project(&sec, n, j);
            if !sp.is_maximal_ts(&p) {
                return Err(Error::Precondition(format!(
                    "ρ_{}(S^({})) is not maximal totally singular",
                    j + 1,
                    i + 1
                )));
            }
            row.push(Some(p));
        }
        sections.push(sec);
        projections.push(row);
    }
    Ok(SectionReport { sections, projections })
}

/// The isometry of block `j` that makes the section `sec` (zero on the third
/// block) diagonal: the element `(f, τ(f))` becomes `(f, f)`.
fn straighten(
    sp: &QuadraticSpace,
    sec: &Subspace,
    phi: &Subspace,
    psi0: &Subspace,
    j: usize,
) -> Result<Isometry> {
    let n = sp.dim();
    let m = sp.half_dim();
    let target = project(sec, n, j);
    let h = map_mts(sp, &target, phi)?;
    let mut a = F2Matrix::zeros(m, m);
    for (i, f) in phi.basis_vectors().iter().enumerate() {
        let v = lift_through(sec, n, 0, f)
            .ok_or_else(|| Error::Internal(format!("ρ_1 of a section misses basis vector {i}")))?;
        let image = h.apply(&v.slice(j * n, n));
        let c = phi
            .coordinates(&image)
            .ok_or_else(|| Error::Internal("map_mts image left Φ".into()))?;
        for (l, bit) in (0..m).map(|l| (l, c.get(l))) {
            a.set(i, l, bit);
        }
    }
    let beta = a.inverse().ok_or(Error::NotInvertible)?;
    Ok(h.then(&levi_lift(sp, phi, psi0, &beta)?))
}

/// Finds `g = (g_1, g_2, g_3)` with `S·g = S(Φ, Ψ; 3)`.
///
/// `S` must be maximal totally singular in `R^3` and satisfy the section
/// invariants of [`lemma_invariants`] (implied by `w^3 ≥ 4`).
pub fn canonicalize_s(sp: &QuadraticSpace, s: &Subspace) -> Result<Canonical> {
    let n = sp.dim();
    let report = lemma_invariants(sp, s)?;

    // Elements (a, τ(a), 0) and (a, 0, τ'(a)).
    let sec3 = &report.sections[2];
    let sec2 = &report.sections[1];
    let phi = project(sec3, n, 0);
    let other = project(sec2, n, 0);
    if phi != other {
        return Err(Error::Internal("ρ_1(S^(2)) differs from ρ_1(S^(3))".into()));
    }
    let psi = find_complement(sp, &phi)?;

    let g2 = straighten(sp, sec3, &phi, &psi, 1)?;
    let g3 = straighten(sp, sec2, &phi, &psi, 2)?;
    let partial = BlockIsometry::diagonal(vec![Isometry::identity(n), g2.clone(), g3.clone()]);
    let s2 = partial.apply_subspace(s);

    // Every c ∈ Ψ occurs as (x(c) + c + f, c + f, c) with f ∈ Φ.
    let mut images = Vec::with_capacity(psi.dim());
    for (j, c) in psi.basis_vectors().iter().enumerate() {
        let v = lift_through(&s2, n, 2, c)
            .ok_or_else(|| Error::Internal(format!("ρ_3(S) misses Ψ basis vector {j}")))?;
        let a = v.slice(0, n);
        let b = v.slice(n, n);
        if !phi.contains(&b.xor(c)) {
            return Err(Error::Internal(format!("second block of lift {j} is not c + Φ")));
        }
        let x = a.xor(&b);
        if !phi.contains(&x) {
            return Err(Error::Internal(format!("x(ψ_{}) is not in Φ", j + 1)));
        }
        images.push(x);
    }
    let g1 = o2h_element(sp, &phi, &psi, &images)?;

    let g = BlockIsometry::diagonal(vec![g1, g2, g3]);
    let target = build_s(sp, &phi, &psi, K)?;
    if g.apply_subspace(s) != target {
        return Err(Error::Internal("normal form check failed".into()));
    }
    Ok(Canonical { g, phi, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogroup::random_block_isometry;
    use crate::quadspace::{check_cond1, hyperbolic_space, standard_phi, standard_psi};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_s_is_fixed() {
        for m in 1..=4 {
            let sp = hyperbolic_space(m).unwrap();
            let s = build_s(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
            let c = canonicalize_s(&sp, &s).unwrap();
            assert_eq!(c.phi, standard_phi(m));
            assert_eq!(c.psi, standard_psi(m));
            assert!(c.g.flatten().is_identity());
        }
    }

    #[test]
    fn random_wreath_images_canonicalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=4 {
            let sp = hyperbolic_space(m).unwrap();
            let s0 = build_s(&sp, &standard_phi(m), &standard_psi(m), 3).unwrap();
            for _ in 0..10 {
                let h = random_block_isometry(&sp, 3, &mut rng);
                let s = h.apply_subspace(&s0);
                let c = canonicalize_s(&sp, &s).unwrap();
                assert!(c.g.is_block_diagonal());
                assert_eq!(c.g.apply_subspace(&s), build_s(&sp, &c.phi, &c.psi, 3).unwrap());
            }
        }
    }

    #[test]
    fn conjugator_links_two_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let sp = hyperbolic_space(3).unwrap();
        let s0 = build_s(&sp, &standard_phi(3), &standard_psi(3), 3).unwrap();
        let s1 = random_block_isometry(&sp, 3, &mut rng).apply_subspace(&s0);
        let s2 = random_block_isometry(&sp, 3, &mut rng).apply_subspace(&s0);
        let c1 = canonicalize_s(&sp, &s1).unwrap();
        let c2 = canonicalize_s(&sp, &s2).unwrap();
        let t = c1.conjugator_to(&sp, &c2).unwrap();
        assert!(t.is_block_diagonal());
        assert_eq!(t.apply_subspace(&s1), s2);
    }

    #[test]
    fn rejects_low_weight_input() {
        let sp = hyperbolic_space(2).unwrap();
        // Φ^3 is maximal totally singular but S^(12) = Φ ≠ 0.
        let phi = standard_phi(2);
        let gens = (0..3)
            .flat_map(|i| {
                phi.basis_vectors()
                    .iter()
                    .map(move |a| crate::quadspace::embed_block(4, 3, i, a))
                    .collect::<Vec<_>>()
            })
            .collect();
        let s = Subspace::from_generators(12, gens);
        assert!(check_cond1(&sp, 3, &s).is_err());
        let err = canonicalize_s(&sp, &s).unwrap_err();
        assert!(err.to_string().contains("S^(12)"), "{err}");
    }
}
