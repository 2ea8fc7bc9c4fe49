//! The finite shadow of the moonshine construction: the 10-dimensional
//! quadratic space `R(V)` of irreducible modules of `V_{√2E8}^+`, the
//! lowest-weight rule `w(u)/2`, and the weight-2 count of `V(S)`.
//!
//! The per-class dimensions (156, 1, 8) are taken as given; nothing here can
//! derive them.

use crate::codeforge::{build_golay, verify_759_identity};
use crate::error::{Error, Result};
use crate::f2linalg::Subspace;
use crate::latticeforge::{build_leech, verify_196560_identity};
use crate::quadspace::{check_cond1, classify_w4, hyperbolic_space, QuadraticSpace};

/// Dimensions of the lowest relevant weight spaces, by `w`-class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightConstants {
    /// Weight-2 dimension of `V` itself (the class `u = 0`).
    pub vacuum_weight2: u64,
    /// Weight-1/2 dimension of a module with `w(u) = 1`.
    pub half: u64,
    /// Weight-1 dimension of a module with `w(u) = 2`.
    pub one: u64,
}

pub const LOWEST_WEIGHT_DIMS: WeightConstants = WeightConstants {
    vacuum_weight2: 156,
    half: 1,
    one: 8,
};

#[derive(Clone, Debug)]
pub struct RVModel {
    pub space: QuadraticSpace,
    pub constants: WeightConstants,
}

impl RVModel {
    /// Twice the lowest weight of a module in class `u`.
    pub fn doubled_lowest_weight(&self, u: &crate::f2linalg::F2Vector) -> u8 {
        self.space.w(u)
    }

    /// Dimension of the lowest weight space of a nonzero class, or of the
    /// weight-0 space for `u = 0`.
    fn lowest_dim(&self, w: u8) -> u64 {
        match w {
            0 => 1,
            1 => self.constants.half,
            _ => self.constants.one,
        }
    }
}

pub fn rv_space() -> RVModel {
    RVModel {
        space: hyperbolic_space(5).expect("m = 5 is valid"),
        constants: LOWEST_WEIGHT_DIMS,
    }
}

/// The weight-2 dimension of `V(S)` and its three parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight2Report {
    /// `(V^3 part, profile (2,2,0) part, profile (2,1,1) part)` by sweeping `S`.
    pub breakdown: [u64; 3],
    /// The same parts from the closed-form class counts.
    pub closed_form: [u64; 3],
    pub total: u64,
}

impl Weight2Report {
    pub fn consistent(&self) -> bool {
        self.breakdown == self.closed_form && self.breakdown.iter().sum::<u64>() == self.total
    }
}

/// Weight-2 dimension of `V(S)` for `S ⊆ R(V)^3` with `w^3 ≥ 4` on non-zero vectors.
///
/// Only `v = 0` and the vectors with `w^3(v) = 4` reach weight 2; each of the
/// latter contributes the product of the lowest-weight dimensions of its
/// three blocks.
pub fn dim_weight2(model: &RVModel, s: &Subspace) -> Result<Weight2Report> {
    let sp = &model.space;
    let n = sp.dim();
    if let Err(v) = check_cond1(sp, 3, s) {
        return Err(Error::Precondition(format!("S has w^3({v}) < 4")));
    }
    let c = model.constants;
    let mut breakdown = [3 * c.vacuum_weight2, 0, 0];
    for v in s.elements() {
        let ws: Vec<u8> = (0..3).map(|i| sp.w(&v.slice(i * n, n))).collect();
        if ws.iter().map(|&w| w as usize).sum::<usize>() != 4 {
            continue;
        }
        let dim: u64 = ws.iter().map(|&w| model.lowest_dim(w)).product();
        if ws.contains(&1) {
            breakdown[2] += dim;
        } else {
            breakdown[1] += dim;
        }
    }
    let m = sp.half_dim() as u32;
    let t1 = 3 * ((1u64 << m) - 1);
    let t2 = t1 * (1u64 << (2 * m - 2));
    let closed_form = [
        3 * c.vacuum_weight2,
        t1 * c.one * c.one,
        t2 * c.half * c.half * c.one,
    ];
    Ok(Weight2Report {
        breakdown,
        closed_form,
        total: breakdown.iter().sum(),
    })
}

/// `S(Φ, Ψ; 3)` in `R(V)^3` for the standard complementary pair.
pub fn standard_s(model: &RVModel) -> Result<Subspace> {
    let m = model.space.half_dim();
    crate::quadspace::build_s(
        &model.space,
        &crate::quadspace::standard_phi(m),
        &crate::quadspace::standard_psi(m),
        3,
    )
}

/// Checks that the type I / type II counts used above match an exhaustive
/// classification of `S(Φ, Ψ; 3)` in `R(V)^3`.
pub fn class_counts(model: &RVModel) -> Result<(u64, u64)> {
    let m = model.space.half_dim();
    let c = classify_w4(
        &model.space,
        &crate::quadspace::standard_phi(m),
        &crate::quadspace::standard_psi(m),
    )?;
    Ok((c.type_one.len() as u64, c.type_two.len() as u64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalogyRow {
    pub object: &'static str,
    pub quantity: &'static str,
    pub terms: [u64; 3],
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeRow {
    pub object: &'static str,
    pub shape: &'static str,
    pub verified: String,
}

#[derive(Clone, Debug)]
pub struct AnalogyTable {
    pub rows: Vec<AnalogyRow>,
    pub shapes: Vec<ShapeRow>,
}

impl AnalogyTable {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:<22} {:>8} {:>8} {:>8} {:>8}\n",
            "object", "quantity", "term0", "term1", "term2", "total"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<10} {:<22} {:>8} {:>8} {:>8} {:>8}\n",
                r.object, r.quantity, r.terms[0], r.terms[1], r.terms[2], r.total
            ));
        }
        out.push('\n');
        for s in &self.shapes {
            out.push_str(&format!("{:<10} {:<32} {}\n", s.object, s.shape, s.verified));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("object,quantity,term0,term1,term2,total\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.object, r.quantity, r.terms[0], r.terms[1], r.terms[2], r.total
            ));
        }
        out
    }
}

/// The three decompositions side by side, each computed from its builder,
/// with the stabilizer shapes and what was checked about them.
pub fn analogy_table(shape_checks: [String; 3]) -> Result<AnalogyTable> {
    let golay = build_golay()?;
    let octads = verify_759_identity(&golay)?;
    if !octads.consistent() {
        return Err(Error::Internal(format!("weight-8 counts disagree: {octads:?}")));
    }
    let leech = build_leech()?;
    let minimal = verify_196560_identity(&leech)?;
    if !minimal.consistent() {
        return Err(Error::Internal(format!("norm-4 counts disagree: {minimal:?}")));
    }
    let model = rv_space();
    let w2 = dim_weight2(&model, &standard_s(&model)?)?;
    if !w2.consistent() {
        return Err(Error::Internal(format!("weight-2 counts disagree: {w2:?}")));
    }
    let rows = vec![
        AnalogyRow {
            object: "golay",
            quantity: "weight-8 codewords",
            terms: octads.by_class,
            total: octads.direct,
        },
        AnalogyRow {
            object: "leech",
            quantity: "norm-4 vectors",
            terms: minimal.by_class,
            total: minimal.sweep,
        },
        AnalogyRow {
            object: "moonshine",
            quantity: "weight-2 dimension",
            terms: w2.breakdown,
            total: w2.total,
        },
    ];
    let [a, b, c] = shape_checks;
    let shapes = vec![
        ShapeRow {
            object: "golay",
            shape: "2^6:(SL_3(2)xSym_3)",
            verified: a,
        },
        ShapeRow {
            object: "leech",
            shape: "2^3.(2^12:(SL_4(2)xSym_3))",
            verified: b,
        },
        ShapeRow {
            object: "moonshine",
            shape: "2^15.(2^20:(SL_5(2)xSym_3))",
            verified: c,
        },
    ];
    Ok(AnalogyTable { rows, shapes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rv_space_shape() {
        let model = rv_space();
        assert_eq!(model.space.dim(), 10);
        assert_eq!(model.space.singular_count(), 528);
    }

    #[test]
    fn weight2_count() {
        let model = rv_space();
        let r = dim_weight2(&model, &standard_s(&model).unwrap()).unwrap();
        assert_eq!(r.breakdown, [468, 5952, 190464]);
        assert_eq!(r.total, 196884);
        assert!(r.consistent());
    }

    #[test]
    fn class_counts_m5() {
        assert_eq!(class_counts(&rv_space()).unwrap(), (93, 23808));
    }

    #[test]
    fn rejects_low_weight() {
        let model = rv_space();
        let sp2 = model.space.clone();
        let phi = crate::quadspace::standard_phi(5);
        let s = crate::quadspace::build_s(&sp2, &phi, &phi, 3).unwrap();
        assert!(dim_weight2(&model, &s).is_err());
    }
}
