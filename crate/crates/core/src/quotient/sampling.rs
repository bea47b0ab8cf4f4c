//! Raster classification of fundamental domains and Monte Carlo volumes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, RngCore};

use super::{
    in_fundamental_domain, lens_domain, Ambient, AmbientPoint, DeckAction, DeckGroup,
    DeckGroupKind, DomainClass,
};
use crate::error::{Error, Result};
use crate::special::unit_sphere_volume;

/// Uniform point on `S^{n−1} ⊂ ℝⁿ` from normalized Box–Muller normals.
pub fn random_unit_vector(rng: &mut dyn RngCore, n: usize) -> Vec<f64> {
    loop {
        let mut v = Vec::with_capacity(n + 1);
        while v.len() < n {
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen();
            let radius = (-2.0 * u1.ln()).sqrt();
            v.push(radius * (TAU * u2).cos());
            v.push(radius * (TAU * u2).sin());
        }
        v.truncate(n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// An axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }
    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    /// Cell centre `(i, j)` of a `resolution × resolution` raster.
    fn centre(&self, resolution: usize, i: usize, j: usize) -> [f64; 2] {
        let n = resolution as f64;
        [
            self.x0 + (i as f64 + 0.5) * self.width() / n,
            self.y0 + (j as f64 + 0.5) * self.height() / n,
        ]
    }

    /// The larger of the two cell sides.
    pub fn spacing(&self, resolution: usize) -> f64 {
        self.width().max(self.height()) / resolution as f64
    }

    /// Window covering the Dirichlet domain of a flat group about `p`.
    pub fn around(g: &DeckGroup, p: [f64; 2]) -> Result<Window> {
        let (hx, hy) = match g.kind {
            DeckGroupKind::TorusLattice { generators: t } => {
                let r = t[0][0].hypot(t[0][1]).max(t[1][0].hypot(t[1][1]));
                (r, r)
            }
            DeckGroupKind::KleinBottle => (1.25, 2.0),
            _ => return Err(Error::InvalidArgument("raster windows exist for flat groups only")),
        };
        Ok(Window {
            x0: p[0] - hx,
            x1: p[0] + hx,
            y0: p[1] - hy,
            y1: p[1] + hy,
        })
    }

    /// `[−1, 1]²`, the parameter square of the disc schematics.
    pub fn unit_square() -> Window {
        Window {
            x0: -1.0,
            x1: 1.0,
            y0: -1.0,
            y1: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub class: DomainClass,
}

/// Classifies the cell centres of a `resolution × resolution` raster over the
/// window around `p` (row by row, `y` outer). `tol` defaults to twice the
/// grid spacing.
pub fn classify_grid(
    g: &DeckGroup,
    p: [f64; 2],
    resolution: usize,
    tol: Option<f64>,
) -> Result<(Window, Vec<GridSample>)> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive"));
    }
    let window = Window::around(g, p)?;
    let tol = tol.unwrap_or(2.0 * window.spacing(resolution));
    let base = AmbientPoint::Plane(p);
    let mut out = Vec::with_capacity(resolution * resolution);
    for j in 0..resolution {
        for i in 0..resolution {
            let [x, y] = window.centre(resolution, i, j);
            let class = in_fundamental_domain(g, &base, &AmbientPoint::Plane([x, y]), tol)?;
            out.push(GridSample { x, y, class });
        }
    }
    Ok((window, out))
}

/// Raster points on the cut locus of `p`, at tolerance twice the spacing.
pub fn cut_locus_sample(g: &DeckGroup, p: [f64; 2], resolution: usize) -> Result<Vec<[f64; 2]>> {
    let (_, samples) = classify_grid(g, p, resolution, None)?;
    Ok(samples
        .into_iter()
        .filter(|s| s.class == DomainClass::Boundary)
        .map(|s| [s.x, s.y])
        .collect())
}

/// Area of the raster cells whose centres are interior at tolerance `tol`.
pub fn interior_area(g: &DeckGroup, p: [f64; 2], resolution: usize, tol: f64) -> Result<f64> {
    let (window, samples) = classify_grid(g, p, resolution, Some(tol))?;
    let cell = window.width() * window.height() / (resolution * resolution) as f64;
    let interior = samples.iter().filter(|s| s.class == DomainClass::Interior).count();
    Ok(interior as f64 * cell)
}

/// Lift of the parameter disc into the cover, for the slice pictures: the
/// vertical axis is `x₁` (resp. `|z₁|`), the horizontal one `x₂` (resp. `z₂`).
fn slice_lift(g: &DeckGroup, x: f64, y: f64) -> Option<AmbientPoint> {
    let h2 = 1.0 - x * x - y * y;
    if h2 <= 0.0 {
        return None;
    }
    let h = h2.sqrt();
    match g.ambient() {
        Ambient::Sphere(m) if m >= 2 => {
            let mut v = vec![0.0; m as usize + 1];
            v[0] = y;
            v[1] = x;
            v[2] = h;
            Some(AmbientPoint::Sphere(v))
        }
        Ambient::ComplexProjective(n) => {
            let mut z = vec![Complex64::new(0.0, 0.0); n as usize + 1];
            z[0] = Complex64::new(h, 0.0);
            z[1] = Complex64::new(x, y);
            Some(AmbientPoint::Projective(z))
        }
        _ => None,
    }
}

/// Classifies a 2D slice through `e₁` for the spherical and projective
/// quotients, over cell centres inside the unit disc.
///
/// For `Sᵐ` the disc point `(x, y)` is `(y, x, √(1 − x² − y²), 0, …)`; for
/// `ℂPⁿ` it is `⟨√(1 − x² − y²), x + iy, 0, …⟩`.
pub fn classify_slice(g: &DeckGroup, resolution: usize, tol: Option<f64>) -> Result<Vec<GridSample>> {
    if g.is_flat() {
        return Err(Error::InvalidArgument("slices are for spherical and projective quotients"));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive"));
    }
    let window = Window::unit_square();
    let tol = tol.unwrap_or(2.0 * window.spacing(resolution));
    let base = AmbientPoint::basepoint(g.ambient());
    let mut out = Vec::new();
    for j in 0..resolution {
        for i in 0..resolution {
            let [x, y] = window.centre(resolution, i, j);
            let Some(q) = slice_lift(g, x, y) else { continue };
            let class = in_fundamental_domain(g, &base, &q, tol)?;
            out.push(GridSample { x, y, class });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    pub hits: usize,
}

/// Volume of the lens Dirichlet domain `{x₁ > |x₂|} ⊂ S²ᵏ⁺¹` by uniform
/// sampling of the sphere.
pub fn lens_volume_monte_carlo<R: RngCore>(k: u32, samples: usize, rng: &mut R) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample"));
    }
    let n = 2 * k as usize + 2;
    let mut hits = 0;
    for _ in 0..samples {
        let q = AmbientPoint::Sphere(random_unit_vector(rng, n));
        if lens_domain(&q)? {
            hits += 1;
        }
    }
    let total = unit_sphere_volume(2 * k + 1);
    let frac = hits as f64 / samples as f64;
    Ok(MonteCarloEstimate {
        estimate: total * frac,
        std_error: total * (frac * (1.0 - frac) / samples as f64).sqrt(),
        samples,
        hits,
    })
}
