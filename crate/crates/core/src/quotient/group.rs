//! Group structure of the deck groups, and a self-check of the axioms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sampling::random_unit_vector;
use super::{raw_distance, Ambient, AmbientPoint, DeckGroup, DeckGroupKind, GroupElement};
use crate::error::{Error, Result};

/// What a word in the generators must evaluate to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationTarget {
    /// The identity of the ambient space (projectively, for `ℂPⁿ`).
    Identity,
    /// `x ↦ −x` on the linear representatives.
    Negation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    /// Applied right to left, one generator at a time.
    pub word: Vec<GroupElement>,
    pub target: RelationTarget,
}

/// A group acting by isometries on a simply connected cover.
pub trait DeckAction {
    fn ambient(&self) -> Ambient;
    fn identity(&self) -> GroupElement;
    fn generators(&self) -> Vec<GroupElement>;
    fn compose(&self, a: GroupElement, b: GroupElement) -> GroupElement;
    fn act(&self, g: GroupElement, x: &AmbientPoint) -> Result<AmbientPoint>;
    fn relations(&self) -> Vec<Relation>;
    /// Non-identity elements whose displacements witness a free action: every
    /// element of a finite group, short words otherwise.
    fn nontrivial_elements(&self) -> Vec<GroupElement>;
    fn sample_point(&self, rng: &mut dyn RngCore) -> AmbientPoint;
}

fn mismatch() -> Error {
    Error::InvalidPoint("point does not belong to this ambient space")
}

fn lens_rotate(v: &[f64], n: i64) -> Vec<f64> {
    let mut out = v.to_vec();
    for pair in out.chunks_exact_mut(2) {
        let (a, b) = (pair[0], pair[1]);
        let (x, y) = match n.rem_euclid(4) {
            0 => (a, b),
            1 => (-b, a),
            2 => (-a, -b),
            _ => (b, -a),
        };
        pair[0] = x;
        pair[1] = y;
    }
    out
}

fn cp_twist(z: &[Complex64]) -> Vec<Complex64> {
    let mut out = z.to_vec();
    for pair in out.chunks_exact_mut(2) {
        let (a, b) = (pair[0], pair[1]);
        pair[0] = -b.conj();
        pair[1] = a.conj();
    }
    out
}

impl DeckAction for DeckGroup {
    fn ambient(&self) -> Ambient {
        match self.kind {
            DeckGroupKind::TorusLattice { .. } | DeckGroupKind::KleinBottle => Ambient::Plane,
            DeckGroupKind::Antipodal { m } => Ambient::Sphere(m),
            DeckGroupKind::LensZ4 { k } => Ambient::Sphere(2 * k + 1),
            DeckGroupKind::CpInvolution { k } => Ambient::ComplexProjective(2 * k + 1),
        }
    }

    fn identity(&self) -> GroupElement {
        match self.kind {
            DeckGroupKind::TorusLattice { .. } => GroupElement::Translation(0, 0),
            _ => GroupElement::Power(0),
        }
    }

    fn generators(&self) -> Vec<GroupElement> {
        match self.kind {
            DeckGroupKind::TorusLattice { .. } => {
                vec![GroupElement::Translation(1, 0), GroupElement::Translation(0, 1)]
            }
            _ => vec![GroupElement::Power(1)],
        }
    }

    fn compose(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        use GroupElement::*;
        match (a, b) {
            (Translation(i, j), Translation(k, l)) => Translation(i + k, j + l),
            (Power(m), Power(n)) => match self.order() {
                Some(order) => Power((m + n).rem_euclid(i64::from(order))),
                None => Power(m + n),
            },
            // Mixed kinds never arise from one group.
            _ => a,
        }
    }

    fn act(&self, g: GroupElement, x: &AmbientPoint) -> Result<AmbientPoint> {
        use GroupElement::*;
        Ok(match (self.kind, g, x) {
            (DeckGroupKind::TorusLattice { generators: t }, Translation(i, j), AmbientPoint::Plane(p)) => {
                let (fi, fj) = (i as f64, j as f64);
                AmbientPoint::Plane([
                    p[0] + fi * t[0][0] + fj * t[1][0],
                    p[1] + fi * t[0][1] + fj * t[1][1],
                ])
            }
            (DeckGroupKind::KleinBottle, Power(n), AmbientPoint::Plane(p)) => {
                let y = if n.rem_euclid(2) == 0 { p[1] } else { -p[1] };
                AmbientPoint::Plane([p[0] + n as f64, y])
            }
            (DeckGroupKind::Antipodal { .. }, Power(n), AmbientPoint::Sphere(v)) => {
                if n.rem_euclid(2) == 0 {
                    x.clone()
                } else {
                    AmbientPoint::Sphere(v.iter().map(|c| -c).collect())
                }
            }
            (DeckGroupKind::LensZ4 { .. }, Power(n), AmbientPoint::Sphere(v)) => {
                AmbientPoint::Sphere(lens_rotate(v, n))
            }
            (DeckGroupKind::CpInvolution { .. }, Power(n), AmbientPoint::Projective(z)) => {
                if n.rem_euclid(2) == 0 {
                    x.clone()
                } else {
                    AmbientPoint::Projective(cp_twist(z))
                }
            }
            _ => return Err(mismatch()),
        })
    }

    fn relations(&self) -> Vec<Relation> {
        use GroupElement::*;
        use RelationTarget::*;
        let t = Power(1);
        match self.kind {
            DeckGroupKind::TorusLattice { .. } => vec![Relation {
                word: vec![
                    Translation(0, -1),
                    Translation(-1, 0),
                    Translation(0, 1),
                    Translation(1, 0),
                ],
                target: Identity,
            }],
            DeckGroupKind::KleinBottle => vec![Relation {
                word: vec![Power(-1), t],
                target: Identity,
            }],
            DeckGroupKind::Antipodal { .. } => vec![
                Relation { word: vec![t, t], target: Identity },
                Relation { word: vec![t], target: Negation },
            ],
            DeckGroupKind::LensZ4 { .. } => vec![
                Relation { word: vec![t; 4], target: Identity },
                Relation { word: vec![t; 2], target: Negation },
            ],
            DeckGroupKind::CpInvolution { .. } => vec![
                Relation { word: vec![t; 2], target: Identity },
                Relation { word: vec![t; 2], target: Negation },
            ],
        }
    }

    fn nontrivial_elements(&self) -> Vec<GroupElement> {
        use GroupElement::*;
        match self.kind {
            DeckGroupKind::TorusLattice { .. } => {
                let mut v = Vec::new();
                for i in -2..=2 {
                    for j in -2..=2 {
                        if (i, j) != (0, 0) {
                            v.push(Translation(i, j));
                        }
                    }
                }
                v
            }
            DeckGroupKind::KleinBottle => vec![Power(-2), Power(-1), Power(1), Power(2)],
            _ => (1..i64::from(self.order().unwrap_or(1))).map(Power).collect(),
        }
    }

    fn sample_point(&self, rng: &mut dyn RngCore) -> AmbientPoint {
        match self.ambient() {
            Ambient::Plane => AmbientPoint::Plane([rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]),
            Ambient::Sphere(m) => AmbientPoint::Sphere(random_unit_vector(rng, m as usize + 1)),
            Ambient::ComplexProjective(n) => {
                let v = random_unit_vector(rng, 2 * (n as usize + 1));
                AmbientPoint::Projective(v.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheckReport {
    pub relations_checked: usize,
    pub samples: usize,
    /// `max |d(γp, γq) − d(p, q)|` over sampled pairs and elements.
    pub max_isometry_defect: f64,
    /// `min d(x, γx)` over sampled points and non-identity elements.
    pub min_displacement: f64,
}

/// Number of random points used for the displacement check.
pub const SELFCHECK_SAMPLES: usize = 10_000;
/// Smallest acceptable sampled displacement.
pub const DISPLACEMENT_FLOOR: f64 = 0.1;
const ISOMETRY_TOL: f64 = 1e-12;
const RELATION_TOL: f64 = 1e-12;

fn negated(x: &AmbientPoint) -> AmbientPoint {
    match x {
        AmbientPoint::Plane(p) => AmbientPoint::Plane([-p[0], -p[1]]),
        AmbientPoint::Sphere(v) => AmbientPoint::Sphere(v.iter().map(|c| -c).collect()),
        AmbientPoint::Projective(z) => AmbientPoint::Projective(z.iter().map(|c| -c).collect()),
    }
}

fn coordinate_gap(a: &AmbientPoint, b: &AmbientPoint) -> f64 {
    match (a, b) {
        (AmbientPoint::Plane(x), AmbientPoint::Plane(y)) => {
            (x[0] - y[0]).abs().max((x[1] - y[1]).abs())
        }
        (AmbientPoint::Sphere(x), AmbientPoint::Sphere(y)) => {
            x.iter().zip(y).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
        }
        (AmbientPoint::Projective(x), AmbientPoint::Projective(y)) => {
            x.iter().zip(y).map(|(s, t)| (s - t).norm()).fold(0.0, f64::max)
        }
        _ => f64::INFINITY,
    }
}

/// Verifies the defining relations, closure of the composition law on words
/// of length two, that every element is an isometry, and that no sampled point
/// is (nearly) fixed.
pub fn group_action_selfcheck<G: DeckAction + ?Sized>(g: &G, seed: u64) -> Result<SelfCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = |msg: alloc::string::String| Err(Error::SelfCheckFailed(msg));

    let probes: Vec<AmbientPoint> = (0..32).map(|_| g.sample_point(&mut rng)).collect();

    let relations = g.relations();
    for rel in &relations {
        for x in &probes {
            let mut y = x.clone();
            for &s in rel.word.iter().rev() {
                y = g.act(s, &y)?;
            }
            let gap = match rel.target {
                RelationTarget::Identity => raw_distance(x, &y),
                RelationTarget::Negation => coordinate_gap(&y, &negated(x)),
            };
            if !(gap <= RELATION_TOL) {
                let word: Vec<_> = rel.word.iter().map(|e| format!("{e}")).collect();
                return fail(format!(
                    "{} != {:?} (defect {gap:e})",
                    word.join("·"),
                    rel.target
                ));
            }
        }
    }

    let gens = g.generators();
    let mut words = gens.clone();
    for &a in &gens {
        for &b in &gens {
            words.push(g.compose(a, b));
            for x in &probes {
                let direct = g.act(g.compose(a, b), x)?;
                let stepwise = g.act(a, &g.act(b, x)?)?;
                let gap = raw_distance(&direct, &stepwise);
                if !(gap <= RELATION_TOL) {
                    return fail(format!("composition of {a} and {b} is not the action of {}", g.compose(a, b)));
                }
            }
        }
    }

    let mut max_isometry_defect: f64 = 0.0;
    for pair in probes.chunks_exact(2) {
        let d = raw_distance(&pair[0], &pair[1]);
        for &w in words.iter().chain(g.nontrivial_elements().iter()) {
            let moved = raw_distance(&g.act(w, &pair[0])?, &g.act(w, &pair[1])?);
            max_isometry_defect = max_isometry_defect.max((moved - d).abs());
        }
    }
    if !(max_isometry_defect <= ISOMETRY_TOL) {
        return fail(format!("not an isometry (defect {max_isometry_defect:e})"));
    }

    let elements = g.nontrivial_elements();
    let mut min_displacement = f64::INFINITY;
    for _ in 0..SELFCHECK_SAMPLES {
        let x = g.sample_point(&mut rng);
        for &e in &elements {
            min_displacement = min_displacement.min(raw_distance(&x, &g.act(e, &x)?));
        }
    }
    if !(min_displacement > DISPLACEMENT_FLOOR) {
        return fail(format!("sampled displacement {min_displacement:e} suggests a fixed point"));
    }

    Ok(SelfCheckReport {
        relations_checked: relations.len(),
        samples: SELFCHECK_SAMPLES,
        max_isometry_defect,
        min_displacement,
    })
}
