//! Catalogue of harmonic model spaces and their volume densities.
//!
//! Metrics are normalized so that the sphere has diameter `π` and the
//! projective spaces diameter `π/2`; the negatively curved duals use the same
//! normalization with `sin`/`cos` replaced by `sinh`/`cosh`.

use alloc::string::ToString;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::numeric::{integrate, Interval};
use crate::special::unit_sphere_volume;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sphere,
    ComplexProjective,
    QuaternionProjective,
    OctonionPlane,
    HyperbolicSpace,
    ComplexHyperbolic,
    QuaternionHyperbolic,
    OctonionHyperbolic,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvatureSign {
    Positive,
    Zero,
    Negative,
}

impl CurvatureSign {
    pub fn as_i8(self) -> i8 {
        match self {
            CurvatureSign::Positive => 1,
            CurvatureSign::Zero => 0,
            CurvatureSign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrigKind {
    Circular,
    Hyperbolic,
    Polynomial,
}

/// `Θ(r) = s(r)^a · c(r)^b` with `(s, c)` = `(sin, cos)`, `(sinh, cosh)`, or
/// `Θ(r) = r^a` in the flat case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityProfile {
    pub sine_exponent: u32,
    pub cosine_exponent: u32,
    pub trig_kind: TrigKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutLocusDescriptor {
    AntipodalPoint,
    /// A copy of the projective space one (projective) dimension lower.
    ProjectiveHyperplane { index: u32 },
    Sphere7,
    Empty,
}

/// A simply connected harmonic model space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceModel {
    family: Family,
    dimension: u32,
}

impl SpaceModel {
    /// `index` is the real dimension for spheres, hyperbolic and Euclidean
    /// space, and the projective index `k` for the projective families.
    pub fn new(family: Family, index: u32) -> Result<Self> {
        use Family::*;
        let dimension = match family {
            Sphere | HyperbolicSpace | Euclidean => index,
            ComplexProjective | ComplexHyperbolic => 2 * index,
            QuaternionProjective | QuaternionHyperbolic => 4 * index,
            OctonionPlane | OctonionHyperbolic => {
                if index != 2 {
                    return Err(Error::InvalidArgument("the octonion plane has index 2"));
                }
                16
            }
        };
        if index == 0 || dimension < 2 {
            return Err(Error::InvalidArgument("model dimension must be at least 2"));
        }
        Ok(SpaceModel { family, dimension })
    }

    pub fn sphere(m: u32) -> Result<Self> {
        Self::new(Family::Sphere, m)
    }
    pub fn complex_projective(k: u32) -> Result<Self> {
        Self::new(Family::ComplexProjective, k)
    }
    pub fn quaternion_projective(k: u32) -> Result<Self> {
        Self::new(Family::QuaternionProjective, k)
    }
    pub fn octonion_plane() -> Self {
        SpaceModel {
            family: Family::OctonionPlane,
            dimension: 16,
        }
    }
    pub fn hyperbolic(m: u32) -> Result<Self> {
        Self::new(Family::HyperbolicSpace, m)
    }
    pub fn euclidean(m: u32) -> Result<Self> {
        Self::new(Family::Euclidean, m)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn projective_index(&self) -> Option<u32> {
        use Family::*;
        match self.family {
            ComplexProjective | ComplexHyperbolic => Some(self.dimension / 2),
            QuaternionProjective | QuaternionHyperbolic => Some(self.dimension / 4),
            OctonionPlane | OctonionHyperbolic => Some(2),
            Sphere | HyperbolicSpace | Euclidean => None,
        }
    }

    pub fn curvature_sign(&self) -> CurvatureSign {
        use Family::*;
        match self.family {
            Sphere | ComplexProjective | QuaternionProjective | OctonionPlane => {
                CurvatureSign::Positive
            }
            Euclidean => CurvatureSign::Zero,
            _ => CurvatureSign::Negative,
        }
    }

    /// The dual model of opposite curvature; flat space has none.
    pub fn dual(&self) -> Option<SpaceModel> {
        use Family::*;
        let family = match self.family {
            Sphere => HyperbolicSpace,
            HyperbolicSpace => Sphere,
            ComplexProjective => ComplexHyperbolic,
            ComplexHyperbolic => ComplexProjective,
            QuaternionProjective => QuaternionHyperbolic,
            QuaternionHyperbolic => QuaternionProjective,
            OctonionPlane => OctonionHyperbolic,
            OctonionHyperbolic => OctonionPlane,
            Euclidean => return None,
        };
        Some(SpaceModel {
            family,
            dimension: self.dimension,
        })
    }

    pub fn density_profile(&self) -> DensityProfile {
        use Family::*;
        let cosine_exponent = match self.family {
            Sphere | HyperbolicSpace | Euclidean => 0,
            ComplexProjective | ComplexHyperbolic => 1,
            QuaternionProjective | QuaternionHyperbolic => 3,
            OctonionPlane | OctonionHyperbolic => 7,
        };
        let trig_kind = match self.curvature_sign() {
            CurvatureSign::Positive => TrigKind::Circular,
            CurvatureSign::Negative => TrigKind::Hyperbolic,
            CurvatureSign::Zero => TrigKind::Polynomial,
        };
        DensityProfile {
            sine_exponent: self.dimension - 1,
            cosine_exponent,
            trig_kind,
        }
    }

    /// Injectivity radius of the simply connected model (= diameter for the
    /// compact ones).
    pub fn domain_end(&self) -> f64 {
        match (self.family, self.curvature_sign()) {
            (Family::Sphere, _) => PI,
            (_, CurvatureSign::Positive) => FRAC_PI_2,
            _ => f64::INFINITY,
        }
    }

    /// The open interval `(0, domain_end)`.
    pub fn domain(&self) -> Interval {
        Interval {
            lo: 0.0,
            hi: self.domain_end(),
            open_lo: true,
            open_hi: true,
        }
    }

    pub fn cut_locus(&self) -> CutLocusDescriptor {
        use Family::*;
        match self.family {
            Sphere => CutLocusDescriptor::AntipodalPoint,
            ComplexProjective | QuaternionProjective => CutLocusDescriptor::ProjectiveHyperplane {
                index: self.projective_index().unwrap_or(1) - 1,
            },
            OctonionPlane => CutLocusDescriptor::Sphere7,
            _ => CutLocusDescriptor::Empty,
        }
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        self.domain().check(r)
    }

    /// Volume density `Θ(r)` in geodesic polar coordinates.
    pub fn theta(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let p = self.density_profile();
        let a = p.sine_exponent as i32;
        let b = p.cosine_exponent as i32;
        Ok(match p.trig_kind {
            TrigKind::Circular => r.sin().powi(a) * r.cos().powi(b),
            TrigKind::Hyperbolic => r.sinh().powi(a) * r.cosh().powi(b),
            TrigKind::Polynomial => r.powi(a),
        })
    }

    /// `Θ(r) / r^{m-1}`, evaluated without the cancellation near `r = 0`.
    pub fn theta_tilde(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let p = self.density_profile();
        let a = p.sine_exponent as i32;
        let b = p.cosine_exponent as i32;
        Ok(match p.trig_kind {
            TrigKind::Circular => (r.sin() / r).powi(a) * r.cos().powi(b),
            TrigKind::Hyperbolic => (r.sinh() / r).powi(a) * r.cosh().powi(b),
            TrigKind::Polynomial => 1.0,
        })
    }

    /// `Θ'(r) / Θ(r)`, the first-order coefficient of the radial Laplacian.
    pub fn log_derivative_theta(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let p = self.density_profile();
        let a = f64::from(p.sine_exponent);
        let b = f64::from(p.cosine_exponent);
        Ok(match p.trig_kind {
            TrigKind::Circular => a * r.cos() / r.sin() - b * r.tan(),
            TrigKind::Hyperbolic => a * r.cosh() / r.sinh() + b * r.tanh(),
            TrigKind::Polynomial => a / r,
        })
    }

    /// Total volume of a compact (positively curved) model,
    /// `|S^{m-1}| · ∫₀^D Θ`.
    pub fn model_volume(&self) -> Result<f64> {
        if self.curvature_sign() != CurvatureSign::Positive {
            return Err(Error::unsupported(*self, "total volume is infinite"));
        }
        self.ball_volume(self.domain_end())
    }

    /// Volume of the geodesic ball of the given radius about a point.
    pub fn ball_volume(&self, radius: f64) -> Result<f64> {
        let end = self.domain_end();
        if !(radius > 0.0 && radius <= end && radius.is_finite()) {
            return Err(Error::DomainViolation {
                value: radius,
                lo: 0.0,
                hi: end,
            });
        }
        let iv = Interval::new(0.0, radius, true, radius == end)?;
        let q = integrate(|r| self.theta(r).unwrap_or(f64::NAN), iv, 1e-14)?;
        Ok(unit_sphere_volume(self.dimension - 1) * q.value)
    }
}

impl fmt::Display for SpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        let k = self.projective_index().unwrap_or(0);
        match self.family {
            Sphere => write!(f, "S{}", self.dimension),
            ComplexProjective => write!(f, "CP{k}"),
            QuaternionProjective => write!(f, "HP{k}"),
            OctonionPlane => f.write_str("OP2"),
            HyperbolicSpace => write!(f, "hS{}", self.dimension),
            ComplexHyperbolic => write!(f, "hCP{k}"),
            QuaternionHyperbolic => write!(f, "hHP{k}"),
            OctonionHyperbolic => f.write_str("hOP2"),
            Euclidean => write!(f, "E{}", self.dimension),
        }
    }
}

impl FromStr for SpaceModel {
    type Err = Error;

    /// Parses the case-sensitive identifiers `S<m>`, `CP<k>`, `HP<k>`, `OP2`,
    /// their `h`-prefixed hyperbolic duals, and `E<m>`.
    fn from_str(s: &str) -> Result<Self> {
        use Family::*;
        let unknown = || Error::UnknownModel(s.to_string());
        let (hyperbolic, rest) = match s.strip_prefix('h') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (family, digits) = if let Some(d) = rest.strip_prefix("CP") {
            (if hyperbolic { ComplexHyperbolic } else { ComplexProjective }, d)
        } else if let Some(d) = rest.strip_prefix("HP") {
            (if hyperbolic { QuaternionHyperbolic } else { QuaternionProjective }, d)
        } else if let Some(d) = rest.strip_prefix("OP") {
            (if hyperbolic { OctonionHyperbolic } else { OctonionPlane }, d)
        } else if let Some(d) = rest.strip_prefix('S') {
            (if hyperbolic { HyperbolicSpace } else { Sphere }, d)
        } else if let (false, Some(d)) = (hyperbolic, rest.strip_prefix('E')) {
            (Euclidean, d)
        } else {
            return Err(unknown());
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) || digits.starts_with('0') {
            return Err(unknown());
        }
        let index: u32 = digits.parse().map_err(|_| unknown())?;
        SpaceModel::new(family, index).map_err(|_| unknown())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use core::f64::consts::FRAC_PI_4;

    fn m(id: &str) -> SpaceModel {
        id.parse().unwrap()
    }

    pub(crate) fn catalogue() -> Vec<SpaceModel> {
        let mut v = Vec::new();
        for n in 2..=8 {
            v.push(SpaceModel::sphere(n).unwrap());
            v.push(SpaceModel::hyperbolic(n).unwrap());
            v.push(SpaceModel::euclidean(n).unwrap());
        }
        for k in 1..=4 {
            for fam in [
                Family::ComplexProjective,
                Family::ComplexHyperbolic,
                Family::QuaternionProjective,
                Family::QuaternionHyperbolic,
            ] {
                v.push(SpaceModel::new(fam, k).unwrap());
            }
        }
        v.push(SpaceModel::octonion_plane());
        v.push(SpaceModel::octonion_plane().dual().unwrap());
        v
    }

    #[test]
    fn identifiers_round_trip() {
        for model in catalogue() {
            let id = model.to_string();
            assert_eq!(id.parse::<SpaceModel>().unwrap(), model, "{id}");
        }
        for bad in ["s3", "S", "S0", "S1", "OP3", "hE3", "CP0", "S03", "CPx", "Q2", ""] {
            assert!(bad.parse::<SpaceModel>().is_err(), "{bad}");
        }
    }

    #[test]
    fn family_invariants() {
        for model in catalogue() {
            let p = model.density_profile();
            assert_eq!(p.sine_exponent, model.dimension() - 1);
            match model.family() {
                Family::ComplexProjective | Family::ComplexHyperbolic => {
                    assert_eq!(model.dimension() % 2, 0);
                    assert_eq!(p.cosine_exponent, 1);
                }
                Family::QuaternionProjective | Family::QuaternionHyperbolic => {
                    assert_eq!(model.dimension() % 4, 0);
                    assert_eq!(p.cosine_exponent, 3);
                }
                Family::OctonionPlane | Family::OctonionHyperbolic => {
                    assert_eq!(model.dimension(), 16);
                    assert_eq!(p.cosine_exponent, 7);
                }
                _ => assert_eq!(p.cosine_exponent, 0),
            }
            let sign = model.curvature_sign();
            assert_eq!(
                p.trig_kind,
                match sign {
                    CurvatureSign::Positive => TrigKind::Circular,
                    CurvatureSign::Negative => TrigKind::Hyperbolic,
                    CurvatureSign::Zero => TrigKind::Polynomial,
                }
            );
            assert_eq!(model.cut_locus() == CutLocusDescriptor::Empty, sign != CurvatureSign::Positive);
            if sign == CurvatureSign::Positive {
                let expect = if model.family() == Family::Sphere { PI } else { FRAC_PI_2 };
                assert_eq!(model.domain_end(), expect);
            } else {
                assert!(model.domain_end().is_infinite());
            }
        }
        assert_eq!(
            m("CP3").cut_locus(),
            CutLocusDescriptor::ProjectiveHyperplane { index: 2 }
        );
        assert_eq!(m("OP2").cut_locus(), CutLocusDescriptor::Sphere7);
    }

    #[test]
    fn theta_examples() {
        assert_abs_diff_eq!(m("S2").theta(FRAC_PI_2).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m("CP2").theta(FRAC_PI_4).unwrap(), 0.25, epsilon = 1e-15);
        // sinh⁷(1)·cosh³(1), 30-digit reference
        assert_relative_eq!(
            m("hHP2").theta(1.0).unwrap(),
            11.375_000_655_318_738_425_765_381_599_1,
            max_relative = 1e-14
        );
        assert!(matches!(
            m("S3").theta(PI),
            Err(Error::DomainViolation { .. })
        ));
        assert!(m("S3").theta(0.0).is_err());
        assert!(m("CP2").theta(1.6).is_err());
    }

    #[test]
    fn theta_tilde_examples() {
        let s3 = m("S3");
        for r in [1e-2, 1e-3, 1e-4] {
            assert_abs_diff_eq!(s3.theta_tilde(r).unwrap(), 1.0, epsilon = r * r);
        }
        assert_eq!(m("E5").theta_tilde(2.0).unwrap(), 1.0);
        assert_relative_eq!(
            m("CP1").theta_tilde(0.5).unwrap(),
            0.841_470_984_807_896_506_652_502_321_63,
            max_relative = 1e-14
        );
    }

    #[test]
    fn log_derivative_examples() {
        assert_abs_diff_eq!(m("S4").log_derivative_theta(FRAC_PI_2).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m("CP2").log_derivative_theta(FRAC_PI_4).unwrap(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn theta_tilde_normalization_is_quadratic() {
        for model in catalogue() {
            let c = (model.theta_tilde(1e-2).unwrap() - 1.0).abs() / 1e-4;
            let small = (model.theta_tilde(1e-3).unwrap() - 1.0).abs();
            assert!(small <= 1.5 * c * 1e-6 + 1e-15, "{model}: {small} vs C={c}");
        }
    }

    #[test]
    fn hyperbolic_duals_substitute_sinh_cosh() {
        for model in catalogue().into_iter().filter(|m| m.curvature_sign() == CurvatureSign::Positive) {
            let dual = model.dual().unwrap();
            assert_eq!(dual.dual(), Some(model));
            let p = model.density_profile();
            for i in 1..=20 {
                let r = f64::from(i) / 20.0;
                let sinh = (r.exp() - (-r).exp()) / 2.0;
                let cosh = (r.exp() + (-r).exp()) / 2.0;
                let expect = sinh.powi(p.sine_exponent as i32) * cosh.powi(p.cosine_exponent as i32);
                assert_relative_eq!(dual.theta(r).unwrap(), expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn theta_is_positive_on_the_open_domain() {
        for model in catalogue() {
            let end = model.domain_end().min(5.0);
            for i in 1..1000 {
                let r = end * f64::from(i) / 1000.0;
                assert!(model.theta(r).unwrap() > 0.0, "{model} at {r}");
            }
        }
    }

    #[test]
    fn volumes() {
        assert_relative_eq!(m("S2").model_volume().unwrap(), 4.0 * PI, max_relative = 1e-9);
        assert_relative_eq!(m("CP1").model_volume().unwrap(), PI, max_relative = 1e-9);
        assert_relative_eq!(m("S4").model_volume().unwrap(), 8.0 * PI * PI / 3.0, max_relative = 1e-9);
        // π^k/k!, π^{2k}/(2k+1)!, 6π⁸/11!
        assert_relative_eq!(m("CP2").model_volume().unwrap(), 4.934_802_200_544_679_309_417, max_relative = 1e-12);
        assert_relative_eq!(m("HP2").model_volume().unwrap(), 0.811_742_425_283_353_643_637, max_relative = 1e-12);
        assert_relative_eq!(m("OP2").model_volume().unwrap(), 0.001_426_246_244_599_352_754_799, max_relative = 1e-12);
        for n in 2..=8 {
            let model = SpaceModel::sphere(n).unwrap();
            assert_relative_eq!(model.model_volume().unwrap(), unit_sphere_volume(n), max_relative = 1e-9);
        }
        assert!(m("hS3").model_volume().is_err());
        assert!(m("E3").model_volume().is_err());
    }

    #[test]
    fn ball_volumes() {
        // Flat ball of radius 2 in ℝ³.
        assert_relative_eq!(m("E3").ball_volume(2.0).unwrap(), 32.0 * PI / 3.0, max_relative = 1e-12);
        // Hyperbolic disc area 2π(cosh R − 1).
        assert_relative_eq!(m("hS2").ball_volume(1.5).unwrap(), 2.0 * PI * (1.5f64.cosh() - 1.0), max_relative = 1e-12);
        assert!(m("S2").ball_volume(4.0).is_err());
    }
}
