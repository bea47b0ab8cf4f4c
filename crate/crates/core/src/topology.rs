//! Euler characteristics, signatures, and the volume lower bounds they give
//! for compact quotients of the negatively curved models.
//!
//! If `M` is a compact quotient of a negatively curved model `𝕄`, the
//! Gauss–Bonnet integrand of `M` is `(−1)^{m/2}` times that of the compact dual
//! `𝕄₊` (suitably rescaled), so `χ(M) ≠ 0` forces
//! `vol(M) ≥ vol(𝕄₊)/χ(𝕄₊)`. In dimensions divisible by four the same
//! argument applied to the signature integrand gives
//! `vol(M) ≥ ε(M)·vol(𝕄₊)` whenever `sign(𝕄₊) = 1`, with `ε = ½` for
//! non-orientable `M` (pass to the orientation cover).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::{CurvatureSign, Family, SpaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Value(i32),
    /// The dimension is not divisible by four.
    NotApplicable,
}

/// A machine-readable remark attached to a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Note {
    pub code: &'static str,
    pub message: &'static str,
}

/// The Cayley-plane bound is `vol(𝕆P²)/χ(𝕆P²) = vol(𝕆P²)/3`; a published
/// statement of it names the quaternionic volume instead.
pub const NOTE_OCTONION_STATEMENT: Note = Note {
    code: "statement_discrepancy",
    message: "bound computed as vol(OP2)/chi(OP2) = vol(OP2)/3; it is sometimes quoted with vol(HP^k) in place of vol(OP2)",
};

/// Only the trivial group acts freely by isometries on `ℍP^{2k+1}`, `k ≥ 1`.
pub const NOTE_QUATERNION_ISOMETRIC: Note = Note {
    code: "isometric_orders_sharper",
    message: "Euler-characteristic divisibility allows order 2, but no nontrivial group acts freely by isometries on HP^(2k+1) for k >= 1",
};

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyRecord {
    pub model: SpaceModel,
    pub euler: i64,
    pub signature: Signature,
    /// Orders allowed by `χ` divisibility for free actions.
    pub orientable_quotient_orders: Vec<u32>,
    /// Orders actually realized by free isometric actions.
    pub isometric_quotient_orders: Vec<u32>,
    pub notes: Vec<Note>,
}

fn require_positive(model: SpaceModel) -> Result<()> {
    if model.curvature_sign() != CurvatureSign::Positive {
        return Err(Error::unsupported(model, "needs a positively curved model"));
    }
    Ok(())
}

/// `χ` of a compact model: 2 or 0 for spheres, `k + 1` for `ℂPᵏ`, `ℍPᵏ`, 3 for `𝕆P²`.
pub fn euler_characteristic(model: SpaceModel) -> Result<i64> {
    require_positive(model)?;
    Ok(match model.family() {
        Family::Sphere => {
            if model.dimension() % 2 == 0 {
                2
            } else {
                0
            }
        }
        _ => i64::from(model.projective_index().unwrap_or(0)) + 1,
    })
}

/// Signature of a compact model; 1 for `ℂP^{2k}`, `ℍP^{2k}`, `𝕆P²`, 0 for
/// `S^{4k}` and `ℍP^{2k+1}`.
pub fn signature(model: SpaceModel) -> Result<Signature> {
    require_positive(model)?;
    if model.dimension() % 4 != 0 {
        return Ok(Signature::NotApplicable);
    }
    let k = model.projective_index().unwrap_or(0);
    Ok(Signature::Value(match model.family() {
        Family::Sphere => 0,
        Family::ComplexProjective | Family::OctonionPlane => 1,
        _ => {
            if k % 2 == 0 {
                1
            } else {
                0
            }
        }
    }))
}

/// Orders of groups that can act freely on the model, from `χ(M̃) = |Γ|·χ(M)`
/// and the structure of the cohomology ring.
pub fn allowed_group_orders(model: SpaceModel) -> Result<Vec<u32>> {
    require_positive(model)?;
    match model.family() {
        Family::Sphere if model.dimension() % 2 == 0 => Ok(vec![1, 2]),
        Family::Sphere => Err(Error::unsupported(model, "odd spheres admit infinitely many orders")),
        Family::OctonionPlane => Ok(vec![1]),
        _ => {
            let n = model.projective_index().unwrap_or(0);
            Ok(if n % 2 == 0 { vec![1] } else { vec![1, 2] })
        }
    }
}

/// [`allowed_group_orders`] restricted to free isometric actions.
pub fn isometric_group_orders(model: SpaceModel) -> Result<Vec<u32>> {
    let orders = allowed_group_orders(model)?;
    let k = model.projective_index().unwrap_or(0);
    if model.family() == Family::QuaternionProjective && k % 2 == 1 && k >= 3 {
        return Ok(vec![1]);
    }
    Ok(orders)
}

pub fn topology_record(model: SpaceModel) -> Result<TopologyRecord> {
    let euler = euler_characteristic(model)?;
    let signature = signature(model)?;
    let orientable_quotient_orders = allowed_group_orders(model)?;
    let isometric_quotient_orders = isometric_group_orders(model)?;
    let mut notes = Vec::new();
    if orientable_quotient_orders != isometric_quotient_orders {
        notes.push(NOTE_QUATERNION_ISOMETRIC);
    }
    Ok(TopologyRecord {
        model,
        euler,
        signature,
        orientable_quotient_orders,
        isometric_quotient_orders,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeBoundReport {
    pub negative_model: SpaceModel,
    pub dual: SpaceModel,
    pub dual_volume: f64,
    pub euler: i64,
    pub signature: Signature,
    /// `vol(dual)/χ(dual)`.
    pub gb_bound: f64,
    /// `ε·vol(dual)` when `sign(dual) = 1`.
    pub sig_bound: Option<f64>,
    /// 1 for orientable quotients, ½ otherwise.
    pub epsilon: f64,
    pub notes: Vec<Note>,
}

fn negative_dual(model: SpaceModel) -> Result<SpaceModel> {
    match (model.curvature_sign(), model.dual()) {
        (CurvatureSign::Negative, Some(dual)) => Ok(dual),
        _ => Err(Error::unsupported(model, "needs a negatively curved model")),
    }
}

/// `vol(M) ≥ vol(𝕄₊)/χ(𝕄₊)` for compact quotients `M` of an even-dimensional
/// negatively curved model.
pub fn volume_bound_gauss_bonnet(model: SpaceModel) -> Result<f64> {
    let dual = negative_dual(model)?;
    if model.dimension() % 2 != 0 {
        return Err(Error::unsupported(model, "Euler characteristic vanishes in odd dimensions"));
    }
    Ok(dual.model_volume()? / euler_characteristic(dual)? as f64)
}

/// `vol(M) ≥ ε·vol(𝕄₊)`, available when the dual has signature 1.
pub fn volume_bound_signature(model: SpaceModel, orientable: bool) -> Result<f64> {
    let dual = negative_dual(model)?;
    if signature(dual)? != Signature::Value(1) {
        return Err(Error::unsupported(model, "the dual model does not have signature 1"));
    }
    Ok(epsilon(orientable) * dual.model_volume()?)
}

fn epsilon(orientable: bool) -> f64 {
    if orientable {
        1.0
    } else {
        0.5
    }
}

/// Both bounds for one model; the signature bound is omitted where it does not apply.
pub fn volume_bounds(model: SpaceModel, orientable: bool) -> Result<VolumeBoundReport> {
    let dual = negative_dual(model)?;
    let gb_bound = volume_bound_gauss_bonnet(model)?;
    let sig_bound = match volume_bound_signature(model, orientable) {
        Ok(v) => Some(v),
        Err(Error::UnsupportedModel { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut notes = Vec::new();
    if dual.family() == Family::OctonionPlane {
        notes.push(NOTE_OCTONION_STATEMENT);
    }
    Ok(VolumeBoundReport {
        negative_model: model,
        dual,
        dual_volume: dual.model_volume()?,
        euler: euler_characteristic(dual)?,
        signature: signature(dual)?,
        gb_bound,
        sig_bound,
        epsilon: epsilon(orientable),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    fn m(id: &str) -> SpaceModel {
        id.parse().unwrap()
    }

    #[test]
    fn euler_and_signature_table() {
        let rows: &[(&str, i64, Signature)] = &[
            ("S2", 2, Signature::NotApplicable),
            ("S4", 2, Signature::Value(0)),
            ("S8", 2, Signature::Value(0)),
            ("S5", 0, Signature::NotApplicable),
            ("CP1", 2, Signature::NotApplicable),
            ("CP2", 3, Signature::Value(1)),
            ("CP3", 4, Signature::NotApplicable),
            ("CP4", 5, Signature::Value(1)),
            ("HP1", 2, Signature::Value(0)),
            ("HP2", 3, Signature::Value(1)),
            ("HP3", 4, Signature::Value(0)),
            ("HP4", 5, Signature::Value(1)),
            ("OP2", 3, Signature::Value(1)),
        ];
        for &(id, chi, sig) in rows {
            assert_eq!(euler_characteristic(m(id)).unwrap(), chi, "{id}");
            assert_eq!(signature(m(id)).unwrap(), sig, "{id}");
        }
        assert!(euler_characteristic(m("hS4")).is_err());
        assert!(signature(m("E4")).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(allowed_group_orders(m("CP4")).unwrap(), vec![1]);
        assert_eq!(allowed_group_orders(m("CP3")).unwrap(), vec![1, 2]);
        assert_eq!(allowed_group_orders(m("S6")).unwrap(), vec![1, 2]);
        assert_eq!(allowed_group_orders(m("HP2")).unwrap(), vec![1]);
        assert_eq!(allowed_group_orders(m("OP2")).unwrap(), vec![1]);
        assert!(allowed_group_orders(m("S3")).is_err());

        let hp3 = topology_record(m("HP3")).unwrap();
        assert_eq!(hp3.orientable_quotient_orders, vec![1, 2]);
        assert_eq!(hp3.isometric_quotient_orders, vec![1]);
        assert_eq!(hp3.notes, vec![NOTE_QUATERNION_ISOMETRIC]);
        // ℍP¹ = S⁴ does admit the antipodal map.
        assert_eq!(isometric_group_orders(m("HP1")).unwrap(), vec![1, 2]);
        assert!(topology_record(m("CP3")).unwrap().notes.is_empty());
    }

    #[test]
    fn cover_multiplicativity() {
        // χ(S^{2j}) = 2·χ(ℝP^{2j}) with χ(ℝP^{2j}) = 1.
        for j in 1..=4 {
            let s = SpaceModel::sphere(2 * j).unwrap();
            let chi = euler_characteristic(s).unwrap();
            for order in allowed_group_orders(s).unwrap() {
                assert_eq!(chi % i64::from(order), 0);
            }
        }
    }

    #[test]
    fn bound_examples() {
        let s4 = volume_bounds(m("hS4"), true).unwrap();
        assert_relative_eq!(s4.gb_bound, 4.0 * PI * PI / 3.0, max_relative = 1e-12);
        assert_eq!(s4.sig_bound, None);

        let vol_cp2 = PI * PI / 2.0;
        let cp2 = volume_bounds(m("hCP2"), true).unwrap();
        assert_relative_eq!(cp2.gb_bound, vol_cp2 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(cp2.sig_bound.unwrap(), vol_cp2, max_relative = 1e-12);
        assert_eq!(cp2.epsilon, 1.0);
        let cp2n = volume_bounds(m("hCP2"), false).unwrap();
        assert_relative_eq!(cp2n.sig_bound.unwrap(), vol_cp2 / 2.0, max_relative = 1e-12);

        let op2 = volume_bounds(m("hOP2"), true).unwrap();
        assert_relative_eq!(op2.gb_bound, op2.dual_volume / 3.0, max_relative = 1e-15);
        assert_eq!(op2.notes, vec![NOTE_OCTONION_STATEMENT]);

        assert!(matches!(
            volume_bound_signature(m("hHP3"), true),
            Err(Error::UnsupportedModel { .. })
        ));
        assert!(volume_bounds(m("CP2"), true).is_err());
        assert!(volume_bounds(m("hS3"), true).is_err());
        assert!(volume_bounds(m("E4"), true).is_err());
    }

    #[test]
    fn signature_bound_dominates() {
        for id in ["hCP2", "hCP4", "hHP2", "hHP4", "hOP2"] {
            let r = volume_bounds(m(id), true).unwrap();
            assert!(r.sig_bound.unwrap() >= r.gb_bound, "{id}");
        }
    }
}
