//! Explicit isometries built from hyperbolic bases.

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::quadspace::{hyperbolic_completion, QuadraticSpace};

use super::Isometry;

/// The matrix sending row `i` of `from` to row `i` of `to`.
fn basis_change(from: &F2Matrix, to: &F2Matrix) -> Result<F2Matrix> {
    let inv = from.inverse().ok_or(Error::NotInvertible)?;
    Ok(inv.mul(to))
}

/// An isometry `g` with `Φ1·g = Φ2`.
pub fn map_mts(sp: &QuadraticSpace, phi1: &Subspace, phi2: &Subspace) -> Result<Isometry> {
    sp.require_maximal_ts(phi1, "Φ1")?;
    sp.require_maximal_ts(phi2, "Φ2")?;
    let h1 = hyperbolic_completion(sp, phi1.basis_vectors())?;
    let h2 = hyperbolic_completion(sp, phi2.basis_vectors())?;
    Ok(Isometry::from_trusted(basis_change(&h1.matrix(), &h2.matrix())?))
}

/// An isometry `g` with `a·g = b` for non-zero singular `a`, `b`.
pub fn map_singular(sp: &QuadraticSpace, a: &F2Vector, b: &F2Vector) -> Result<Isometry> {
    for v in [a, b] {
        if v.len() != sp.dim() {
            return Err(Error::DimensionMismatch {
                expected: sp.dim(),
                found: v.len(),
            });
        }
        if v.is_zero() || sp.q(v) {
            return Err(Error::NotNonzeroSingular(v.clone()));
        }
    }
    let h1 = hyperbolic_completion(sp, std::slice::from_ref(a))?;
    let h2 = hyperbolic_completion(sp, std::slice::from_ref(b))?;
    Ok(Isometry::from_trusted(basis_change(&h1.matrix(), &h2.matrix())?))
}

/// A maximal totally singular `Ψ` with `Φ ∩ Ψ = 0`.
pub fn find_complement(sp: &QuadraticSpace, phi: &Subspace) -> Result<Subspace> {
    sp.require_maximal_ts(phi, "Φ")?;
    let h = hyperbolic_completion(sp, phi.basis_vectors())?;
    Ok(Subspace::from_generators(sp.dim(), h.e))
}

/// The basis `e_1..e_m` of `Ψ` with `⟨f_i, e_j⟩ = δ_ij`.
pub fn dual_basis_in(sp: &QuadraticSpace, f: &[F2Vector], psi: &Subspace) -> Result<Vec<F2Vector>> {
    let m = f.len();
    if psi.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: psi.dim(),
        });
    }
    let fmat = F2Matrix::from_rows(sp.dim(), f.to_vec());
    // pairing[i][l] = ⟨f_i, p_l⟩
    let pairing = fmat.mul(sp.polar()).mul(&psi.basis().transpose());
    let c = pairing
        .transpose()
        .inverse()
        .ok_or_else(|| Error::NotComplementary(m - pairing.rank()))?;
    Ok(c.mul(psi.basis()).into_rows())
}

fn complementary_frame(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace) -> Result<(Vec<F2Vector>, Vec<F2Vector>)> {
    sp.require_maximal_ts(phi, "Φ")?;
    sp.require_maximal_ts(psi, "Ψ")?;
    let meet = phi.intersect(psi)?;
    if !meet.is_zero() {
        return Err(Error::NotComplementary(meet.dim()));
    }
    let f = phi.basis_vectors().to_vec();
    let e = dual_basis_in(sp, &f, psi)?;
    Ok((f, e))
}

fn stack(n: usize, a: &[F2Vector], b: &[F2Vector]) -> F2Matrix {
    F2Matrix::from_rows(n, a.iter().chain(b).cloned().collect())
}

/// The Levi element acting on `Φ` by `α` (in RREF-basis coordinates,
/// `c ↦ c·α`) and on `Ψ` by the contragredient, so that the pairing is kept.
pub fn levi_lift(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace, alpha: &F2Matrix) -> Result<Isometry> {
    let (f, e) = complementary_frame(sp, phi, psi)?;
    let m = f.len();
    if alpha.rows() != m || alpha.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: alpha.rows(),
        });
    }
    let alpha_inv_t = alpha.inverse().ok_or(Error::NotInvertible)?.transpose();
    let fm = F2Matrix::from_rows(sp.dim(), f.clone());
    let em = F2Matrix::from_rows(sp.dim(), e.clone());
    let new_f = alpha.mul(&fm).into_rows();
    let new_e = alpha_inv_t.mul(&em).into_rows();
    let n = sp.dim();
    let g = basis_change(&stack(n, &f, &e), &stack(n, &new_f, &new_e))?;
    Ok(Isometry::from_trusted(g))
}

/// The element fixing `Φ` pointwise with `ψ_j ↦ ψ_j + x(ψ_j)`, where
/// `ψ_j` runs over the RREF basis of `Ψ` and `images[j] = x(ψ_j) ∈ Φ`.
///
/// `x` must satisfy `⟨x(ψ_j), ψ_l⟩ = ⟨ψ_j, x(ψ_l)⟩` and `⟨ψ_j, x(ψ_j)⟩ = 0`;
/// the first failing pair is reported.
pub fn o2h_element(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace, images: &[F2Vector]) -> Result<Isometry> {
    complementary_frame(sp, phi, psi)?;
    let m = psi.dim();
    if images.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: images.len(),
        });
    }
    for (j, x) in images.iter().enumerate() {
        if x.len() != sp.dim() {
            return Err(Error::DimensionMismatch {
                expected: sp.dim(),
                found: x.len(),
            });
        }
        if !phi.contains(x) {
            return Err(Error::Precondition(format!("image of ψ_{} is not in Φ", j + 1)));
        }
    }
    let ps = psi.basis_vectors();
    for j in 0..m {
        if sp.bform(&ps[j], &images[j]) {
            return Err(Error::SymmetryViolation(j, j));
        }
        for l in j + 1..m {
            if sp.bform(&images[j], &ps[l]) != sp.bform(&ps[j], &images[l]) {
                return Err(Error::SymmetryViolation(j, l));
            }
        }
    }
    let n = sp.dim();
    let moved: Vec<F2Vector> = ps.iter().zip(images).map(|(p, x)| p.xor(x)).collect();
    let g = basis_change(
        &stack(n, phi.basis_vectors(), ps),
        &stack(n, phi.basis_vectors(), &moved),
    )?;
    Ok(Isometry::from_trusted(g))
}

/// Generators of the unipotent radical: for each pair `j < l`, the element
/// with `e_j ↦ e_j + f_l`, `e_l ↦ e_l + f_j` (dual bases of `Φ`, `Ψ`).
pub fn o2h_generators(sp: &QuadraticSpace, phi: &Subspace, psi: &Subspace) -> Result<Vec<Isometry>> {
    let (f, e) = complementary_frame(sp, phi, psi)?;
    let n = sp.dim();
    let m = f.len();
    let from = stack(n, &f, &e);
    let mut out = Vec::new();
    for j in 0..m {
        for l in j + 1..m {
            let mut moved = e.clone();
            moved[j].xor_assign(&f[l]);
            moved[l].xor_assign(&f[j]);
            out.push(Isometry::from_trusted(basis_change(&from, &stack(n, &f, &moved))?));
        }
    }
    Ok(out)
}

/// An isometry taking the complementary pair `(Φ1, Ψ1)` to `(Φ2, Ψ2)`.
pub fn map_complementary_pair(
    sp: &QuadraticSpace,
    phi1: &Subspace,
    psi1: &Subspace,
    phi2: &Subspace,
    psi2: &Subspace,
) -> Result<Isometry> {
    let (f1, e1) = complementary_frame(sp, phi1, psi1)?;
    let (f2, e2) = complementary_frame(sp, phi2, psi2)?;
    let n = sp.dim();
    Ok(Isometry::from_trusted(basis_change(
        &stack(n, &f1, &e1),
        &stack(n, &f2, &e2),
    )?))
}
