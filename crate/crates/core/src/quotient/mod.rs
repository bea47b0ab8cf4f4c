//! Quotients of model spaces by deck groups.
//!
//! A quotient `𝕄 = 𝕄̃/Γ` is represented by its cover and the group. Distances
//! descend as `d(p, q) = min_γ d̃(p, γq)`, the injectivity radius at `p` is half
//! the smallest displacement `min_{γ≠id} d̃(p, γp)`, and the maximal domain of
//! the distance function (the Dirichlet domain) is where the identity alone
//! realizes that minimum.

mod flat;
mod group;
mod sampling;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

pub use flat::{
    five_point_laplacian, flat_radial_extension, harmonicity_residual, klein_fundamental_region,
    klein_injectivity_closed, radial_symmetry_defect,
};
pub use group::{
    group_action_selfcheck, DeckAction, Relation, RelationTarget, SelfCheckReport,
    DISPLACEMENT_FLOOR, SELFCHECK_SAMPLES,
};
pub use sampling::{
    classify_grid, classify_slice, cut_locus_sample, interior_area, lens_volume_monte_carlo,
    random_unit_vector, GridSample, MonteCarloEstimate, Window,
};

use crate::error::{Error, Result};

/// Tolerance on `‖x‖ = 1` for sphere and projective points.
pub const UNIT_TOL: f64 = 1e-12;
/// Default width of the boundary band for analytic domain queries.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Default enumeration depth for the infinite flat groups.
pub const DEFAULT_DEPTH: u32 = 16;

/// The universal cover a deck group acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Plane,
    /// `Sᵐ ⊂ ℝᵐ⁺¹`
    Sphere(u32),
    /// `ℂPⁿ`, points given by unit vectors in `ℂⁿ⁺¹`.
    ComplexProjective(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum AmbientPoint {
    Plane([f64; 2]),
    Sphere(Vec<f64>),
    Projective(Vec<Complex64>),
}

impl AmbientPoint {
    /// The unit vector along `v`.
    pub fn sphere(v: &[f64]) -> Result<Self> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0 && n.is_finite()) || v.len() < 2 {
            return Err(Error::InvalidPoint("sphere point needs a nonzero finite vector"));
        }
        Ok(AmbientPoint::Sphere(v.iter().map(|x| x / n).collect()))
    }

    /// The projective point `⟨z⟩`, stored as a unit representative.
    pub fn projective(z: &[Complex64]) -> Result<Self> {
        let n = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0 && n.is_finite()) || z.len() < 2 {
            return Err(Error::InvalidPoint("projective point needs a nonzero finite vector"));
        }
        Ok(AmbientPoint::Projective(z.iter().map(|c| c / n).collect()))
    }

    /// `e₁` in the given ambient (the origin in the plane).
    pub fn basepoint(ambient: Ambient) -> Self {
        match ambient {
            Ambient::Plane => AmbientPoint::Plane([0.0, 0.0]),
            Ambient::Sphere(m) => {
                let mut v = vec![0.0; m as usize + 1];
                v[0] = 1.0;
                AmbientPoint::Sphere(v)
            }
            Ambient::ComplexProjective(n) => {
                let mut v = vec![Complex64::new(0.0, 0.0); n as usize + 1];
                v[0] = Complex64::new(1.0, 0.0);
                AmbientPoint::Projective(v)
            }
        }
    }

    pub fn as_plane(&self) -> Result<[f64; 2]> {
        match self {
            AmbientPoint::Plane(p) => Ok(*p),
            _ => Err(Error::InvalidPoint("expected a point of the plane")),
        }
    }

    /// Representative with the first nonzero coordinate real and positive.
    pub fn canonical(&self) -> AmbientPoint {
        match self {
            AmbientPoint::Projective(z) => {
                let Some(lead) = z.iter().position(|c| c.norm() > 0.0) else {
                    return self.clone();
                };
                let r = z[lead].norm();
                let phase = z[lead].conj() / r;
                let mut out: Vec<Complex64> = z.iter().map(|w| w * phase).collect();
                out[lead] = Complex64::new(r, 0.0);
                AmbientPoint::Projective(out)
            }
            _ => self.clone(),
        }
    }

    fn norm(&self) -> f64 {
        match self {
            AmbientPoint::Plane(p) => p[0].hypot(p[1]),
            AmbientPoint::Sphere(v) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            AmbientPoint::Projective(z) => z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt(),
        }
    }
}

fn check_point(ambient: Ambient, x: &AmbientPoint) -> Result<()> {
    let ok = match (ambient, x) {
        (Ambient::Plane, AmbientPoint::Plane(p)) => p.iter().all(|c| c.is_finite()),
        (Ambient::Sphere(m), AmbientPoint::Sphere(v)) => v.len() == m as usize + 1,
        (Ambient::ComplexProjective(n), AmbientPoint::Projective(z)) => z.len() == n as usize + 1,
        _ => return Err(Error::InvalidPoint("point does not belong to this ambient space")),
    };
    if !ok {
        return Err(Error::InvalidPoint("wrong number of coordinates"));
    }
    if ambient != Ambient::Plane && !((x.norm() - 1.0).abs() <= UNIT_TOL) {
        return Err(Error::InvalidPoint("point is not a unit vector"));
    }
    Ok(())
}

/// `2·atan2(‖p − q‖, ‖p + q‖)`, the angle between unit vectors, accurate at
/// both ends of `[0, π]`.
fn angle(p: &[f64], q: &[f64]) -> f64 {
    let (mut diff, mut sum) = (0.0, 0.0);
    for (a, b) in p.iter().zip(q) {
        diff += (a - b) * (a - b);
        sum += (a + b) * (a + b);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Fubini–Study distance `arccos|⟨p, q⟩|`, via the phase-aligned angle.
fn projective_angle(p: &[Complex64], q: &[Complex64]) -> f64 {
    let inner: Complex64 = p.iter().zip(q).map(|(a, b)| a.conj() * b).sum();
    let r = inner.norm();
    let phase = if r > 0.0 { inner.conj() / r } else { Complex64::new(1.0, 0.0) };
    let (mut diff, mut sum) = (0.0, 0.0);
    for (a, b) in p.iter().zip(q) {
        let b = b * phase;
        diff += (a - b).norm_sqr();
        sum += (a + b).norm_sqr();
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Distance in the simply connected cover.
pub fn ambient_distance(ambient: Ambient, p: &AmbientPoint, q: &AmbientPoint) -> Result<f64> {
    check_point(ambient, p)?;
    check_point(ambient, q)?;
    Ok(raw_distance(p, q))
}

fn raw_distance(p: &AmbientPoint, q: &AmbientPoint) -> f64 {
    match (p, q) {
        (AmbientPoint::Plane(a), AmbientPoint::Plane(b)) => (a[0] - b[0]).hypot(a[1] - b[1]),
        (AmbientPoint::Sphere(a), AmbientPoint::Sphere(b)) => angle(a, b),
        (AmbientPoint::Projective(a), AmbientPoint::Projective(b)) => projective_angle(a, b),
        _ => f64::NAN,
    }
}

/// An element of a deck group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// `i·g₁ + j·g₂` in a lattice.
    Translation(i64, i64),
    /// `Tⁿ` for a cyclic group generated by `T`.
    Power(i64),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Translation(i, j) => write!(f, "t({i},{j})"),
            GroupElement::Power(n) => write!(f, "T^{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeckGroupKind {
    /// Translations by the lattice spanned by two independent vectors.
    TorusLattice { generators: [[f64; 2]; 2] },
    /// `ℤ` generated by `(x, y) ↦ (x + 1, −y)`.
    KleinBottle,
    /// `{±1}` on `Sᵐ`.
    Antipodal { m: u32 },
    /// `ℤ₄` on `S²ᵏ⁺¹` generated by `(x₁, x₂, …) ↦ (−x₂, x₁, …)`.
    LensZ4 { k: u32 },
    /// `ℤ₂` on `ℂP²ᵏ⁺¹` generated by `⟨z⟩ ↦ ⟨−z̄₂, z̄₁, …⟩`.
    CpInvolution { k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeckGroup {
    pub kind: DeckGroupKind,
    /// Largest word length enumerated for the infinite groups.
    pub enumeration_depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainClass {
    Interior,
    Boundary,
    Exterior,
}

impl DomainClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainClass::Interior => "interior",
            DomainClass::Boundary => "boundary",
            DomainClass::Exterior => "exterior",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectivityMethod {
    BruteForce,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InjectivityReport {
    pub base: AmbientPoint,
    pub radius: f64,
    /// The element realizing the smallest displacement (absent for closed forms).
    pub minimizer: Option<GroupElement>,
    pub method: InjectivityMethod,
}

fn det(g: &[[f64; 2]; 2]) -> f64 {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

impl DeckGroup {
    fn new(kind: DeckGroupKind) -> Self {
        DeckGroup {
            kind,
            enumeration_depth: DEFAULT_DEPTH,
        }
    }

    /// The square lattice `ℤ²`.
    pub fn torus() -> Self {
        Self::new(DeckGroupKind::TorusLattice {
            generators: [[1.0, 0.0], [0.0, 1.0]],
        })
    }

    pub fn torus_lattice(g1: [f64; 2], g2: [f64; 2]) -> Result<Self> {
        let generators = [g1, g2];
        let d = det(&generators);
        if !(d.abs() > 1e-12 && d.is_finite()) {
            return Err(Error::InvalidArgument("lattice generators must be independent"));
        }
        Ok(Self::new(DeckGroupKind::TorusLattice { generators }))
    }

    pub fn klein() -> Self {
        Self::new(DeckGroupKind::KleinBottle)
    }

    pub fn antipodal(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument("sphere dimension must be positive"));
        }
        Ok(Self::new(DeckGroupKind::Antipodal { m }))
    }

    pub fn lens(k: u32) -> Self {
        Self::new(DeckGroupKind::LensZ4 { k })
    }

    pub fn cp_involution(k: u32) -> Self {
        Self::new(DeckGroupKind::CpInvolution { k })
    }

    pub fn with_depth(mut self, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("enumeration depth must be positive"));
        }
        self.enumeration_depth = depth;
        Ok(self)
    }

    pub fn is_flat(&self) -> bool {
        matches!(
            self.kind,
            DeckGroupKind::TorusLattice { .. } | DeckGroupKind::KleinBottle
        )
    }

    /// Group order, `None` for infinite groups.
    pub fn order(&self) -> Option<u32> {
        match self.kind {
            DeckGroupKind::Antipodal { .. } | DeckGroupKind::CpInvolution { .. } => Some(2),
            DeckGroupKind::LensZ4 { .. } => Some(4),
            _ => None,
        }
    }

    /// Smallest singular value of the translation part; word length of an
    /// element moving a point by `ℓ` is at most `ℓ/σ_min`.
    fn sigma_min(&self) -> f64 {
        match self.kind {
            DeckGroupKind::TorusLattice { generators: g } => {
                let a = g[0][0] * g[0][0] + g[1][0] * g[1][0];
                let b = g[0][0] * g[0][1] + g[1][0] * g[1][1];
                let c = g[0][1] * g[0][1] + g[1][1] * g[1][1];
                let mean = 0.5 * (a + c);
                let spread = (0.25 * (a - c) * (a - c) + b * b).sqrt();
                // Smallest eigenvalue of GᵀG, computed as det/largest.
                (det(&g).powi(2) / (mean + spread)).sqrt()
            }
            _ => 1.0,
        }
    }

    /// Length bound on some non-identity element's displacement (a lattice
    /// generator, or `T²` for the Klein bottle).
    fn shortest_translation(&self) -> f64 {
        match self.kind {
            DeckGroupKind::TorusLattice { generators: g } => {
                g[0][0].hypot(g[0][1]).min(g[1][0].hypot(g[1][1]))
            }
            _ => 2.0,
        }
    }

    /// Word length needed so that truncating the orbit of `q` cannot change
    /// any minimum taken from `p`.
    ///
    /// A minimizing element moves `q` by at most `2‖p − q‖ + L`, where `L`
    /// bounds some non-identity displacement, and its word length is at most
    /// that over `σ_min`.
    pub fn required_depth(&self, p: &AmbientPoint, q: &AmbientPoint) -> u32 {
        if !self.is_flat() {
            return 1;
        }
        let gap = raw_distance(p, q);
        let bound = (2.0 * gap + self.shortest_translation()) / self.sigma_min();
        if bound.is_finite() {
            bound.ceil().max(1.0) as u32
        } else {
            u32::MAX
        }
    }

    fn check_depth(&self, p: &AmbientPoint, q: &AmbientPoint) -> Result<()> {
        let required = self.required_depth(p, q);
        if required > self.enumeration_depth {
            return Err(Error::DepthInsufficient {
                depth: self.enumeration_depth,
                required,
            });
        }
        Ok(())
    }

    /// Every element that can realize `min_γ d(p, γq)` or
    /// `min_{γ≠id} d(p, γq)`, identity first.
    pub fn candidates(&self, p: &AmbientPoint, q: &AmbientPoint) -> Result<Vec<GroupElement>> {
        let ambient = self.ambient();
        check_point(ambient, p)?;
        check_point(ambient, q)?;
        self.check_depth(p, q)?;
        let radius = raw_distance(p, q) + self.shortest_translation();
        let mut out = vec![self.identity()];
        match self.kind {
            DeckGroupKind::TorusLattice { generators: g } => {
                let (p, q) = (p.as_plane()?, q.as_plane()?);
                let c = [p[0] - q[0], p[1] - q[1]];
                let d = det(&g);
                // Lattice coordinates of c.
                let u = [(c[0] * g[1][1] - c[1] * g[1][0]) / d, (g[0][0] * c[1] - g[0][1] * c[0]) / d];
                let reach = radius / self.sigma_min();
                let (i0, i1) = ((u[0] - reach).floor() as i64, (u[0] + reach).ceil() as i64);
                let (j0, j1) = ((u[1] - reach).floor() as i64, (u[1] + reach).ceil() as i64);
                for i in i0..=i1 {
                    for j in j0..=j1 {
                        let (fi, fj) = (i as f64, j as f64);
                        let t = [fi * g[0][0] + fj * g[1][0], fi * g[0][1] + fj * g[1][1]];
                        let near = (t[0] - c[0]).hypot(t[1] - c[1]) <= radius;
                        if near && (i, j) != (0, 0) {
                            out.push(GroupElement::Translation(i, j));
                        }
                    }
                }
            }
            DeckGroupKind::KleinBottle => {
                let (p, q) = (p.as_plane()?, q.as_plane()?);
                let shift = p[0] - q[0];
                let (n0, n1) = ((shift - radius).floor() as i64, (shift + radius).ceil() as i64);
                out.extend((n0..=n1).filter(|&n| n != 0).map(GroupElement::Power));
            }
            _ => {
                let order = i64::from(self.order().unwrap_or(1));
                out.extend((1..order).map(GroupElement::Power));
            }
        }
        Ok(out)
    }

    fn orbit_minimum(
        &self,
        p: &AmbientPoint,
        q: &AmbientPoint,
        skip_identity: bool,
    ) -> Result<(f64, GroupElement)> {
        let mut best = (f64::INFINITY, self.identity());
        for g in self.candidates(p, q)? {
            if skip_identity && g == self.identity() {
                continue;
            }
            let d = raw_distance(p, &self.act(g, q)?);
            if d < best.0 {
                best = (d, g);
            }
        }
        Ok(best)
    }
}

/// `min_γ d(p, γq)`.
pub fn quotient_distance(g: &DeckGroup, p: &AmbientPoint, q: &AmbientPoint) -> Result<f64> {
    Ok(g.orbit_minimum(p, q, false)?.0)
}

/// Half the smallest displacement of `p` by a non-identity element.
pub fn injectivity_radius(g: &DeckGroup, p: &AmbientPoint) -> Result<InjectivityReport> {
    let (d, minimizer) = g.orbit_minimum(p, p, true)?;
    Ok(InjectivityReport {
        base: p.clone(),
        radius: 0.5 * d,
        minimizer: Some(minimizer),
        method: InjectivityMethod::BruteForce,
    })
}

/// Closed-form injectivity radius where one is known.
pub fn injectivity_radius_closed(g: &DeckGroup, p: &AmbientPoint) -> Result<InjectivityReport> {
    check_point(g.ambient(), p)?;
    let radius = match g.kind {
        DeckGroupKind::TorusLattice { generators } => 0.5 * shortest_lattice_vector(generators),
        DeckGroupKind::KleinBottle => klein_injectivity_closed(p.as_plane()?[1]),
        DeckGroupKind::Antipodal { .. } => core::f64::consts::FRAC_PI_2,
        DeckGroupKind::LensZ4 { .. } | DeckGroupKind::CpInvolution { .. } => {
            core::f64::consts::FRAC_PI_4
        }
    };
    Ok(InjectivityReport {
        base: p.clone(),
        radius,
        minimizer: None,
        method: InjectivityMethod::ClosedForm,
    })
}

/// Length of the shortest nonzero lattice vector, by Lagrange–Gauss reduction.
fn shortest_lattice_vector(g: [[f64; 2]; 2]) -> f64 {
    let dot = |a: [f64; 2], b: [f64; 2]| a[0] * b[0] + a[1] * b[1];
    let (mut u, mut v) = (g[0], g[1]);
    if dot(u, u) > dot(v, v) {
        core::mem::swap(&mut u, &mut v);
    }
    loop {
        let mu = (dot(u, v) / dot(u, u)).round();
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
        if dot(v, v) >= dot(u, u) {
            return dot(u, u).sqrt();
        }
        core::mem::swap(&mut u, &mut v);
    }
}

/// Whether `q` lies in the Dirichlet domain about `p`: interior when the
/// identity beats every other element by more than `tol`.
pub fn in_fundamental_domain(
    g: &DeckGroup,
    p: &AmbientPoint,
    q: &AmbientPoint,
    tol: f64,
) -> Result<DomainClass> {
    let (other, _) = g.orbit_minimum(p, q, true)?;
    let own = raw_distance(p, q);
    Ok(if own < other - tol {
        DomainClass::Interior
    } else if (own - other).abs() <= tol {
        DomainClass::Boundary
    } else {
        DomainClass::Exterior
    })
}

/// Whether `q ∈ S²ᵏ⁺¹` lies in the open Dirichlet domain of the `ℤ₄` lens
/// action about `e₁`, namely `x₁ > |x₂|`.
pub fn lens_domain(q: &AmbientPoint) -> Result<bool> {
    match q {
        AmbientPoint::Sphere(v) if v.len() >= 4 && v.len() % 2 == 0 => {
            check_point(Ambient::Sphere(v.len() as u32 - 1), q)?;
            Ok(v[0] > v[1].abs())
        }
        _ => Err(Error::InvalidPoint("expected a unit vector in an even-dimensional space")),
    }
}

/// Distance in `ℂP²ᵏ⁺¹/ℤ₂` from the image of `⟨e₁⟩`, whose orbit is
/// `{⟨e₁⟩, ⟨e₂⟩}`: `arccos(max(|z₁|, |z₂|))`.
pub fn cp_quotient_distance(z: &AmbientPoint) -> Result<f64> {
    match z {
        AmbientPoint::Projective(v) if v.len() >= 4 && v.len() % 2 == 0 => {
            check_point(Ambient::ComplexProjective(v.len() as u32 - 1), z)?;
            let total: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let dist = |j: usize| {
                let rest = (total - v[j].norm_sqr()).max(0.0).sqrt();
                rest.atan2(v[j].norm())
            };
            Ok(dist(0).min(dist(1)))
        }
        _ => Err(Error::InvalidPoint("expected a unit vector in ℂ^{2k+2}")),
    }
}
