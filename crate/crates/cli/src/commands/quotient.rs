use anyhow::{bail, Context};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use radharm_core::quotient::{
    classify_grid, classify_slice, injectivity_radius, injectivity_radius_closed,
    lens_volume_monte_carlo, DeckGroupKind, GridSample, Window,
};
use radharm_core::{Ambient, AmbientPoint, DeckAction, DeckGroup, DomainClass};

use super::parse_group;
use crate::format::{fixed, num, CsvDoc};
use crate::svg::Figure;
use crate::{Report, RunConfig, EXIT_OK};

/// Samples behind the lens volume estimate.
pub const LENS_SAMPLES: usize = 100_000;

fn parse_basepoint(g: &DeckGroup, text: Option<&str>) -> anyhow::Result<AmbientPoint> {
    let ambient = g.ambient();
    let Some(text) = text else {
        return Ok(AmbientPoint::basepoint(ambient));
    };
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<Vec<f64>, _>>()
        .with_context(|| format!("basepoint `{text}` is not a comma-separated list of reals"))?;
    if coords.iter().any(|c| !c.is_finite()) {
        bail!("basepoint `{text}` has non-finite coordinates");
    }
    let expect = |n: usize| -> anyhow::Result<()> {
        if coords.len() != n {
            bail!("basepoint needs {n} coordinates, got {}", coords.len());
        }
        Ok(())
    };
    Ok(match ambient {
        Ambient::Plane => {
            expect(2)?;
            AmbientPoint::Plane([coords[0], coords[1]])
        }
        Ambient::Sphere(m) => {
            expect(m as usize + 1)?;
            AmbientPoint::sphere(&coords)?
        }
        Ambient::ComplexProjective(n) => {
            expect(n as usize + 1)?;
            let z: Vec<Complex64> = coords.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            AmbientPoint::projective(&z)?
        }
    })
}

pub fn run(
    config: &RunConfig,
    group_id: &str,
    basepoint: Option<&str>,
    resolution: usize,
    svg: bool,
) -> anyhow::Result<Report> {
    let g = parse_group(group_id)?;
    if resolution == 0 {
        bail!("resolution must be positive");
    }
    let p = parse_basepoint(&g, basepoint)?;
    let report = injectivity_radius(&g, &p)?;
    let closed = injectivity_radius_closed(&g, &p)?;
    let prec = config.precision;
    let minimizer = report.minimizer.map_or_else(|| "none".to_string(), |m| m.to_string());
    let mut summary = vec![format!(
        "iota={} minimizer={minimizer} closed_form={}",
        fixed(report.radius, prec),
        fixed(closed.radius, prec)
    )];
    if let DeckGroupKind::LensZ4 { k } = g.kind {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mc = lens_volume_monte_carlo(k, LENS_SAMPLES, &mut rng)?;
        summary.push(format!(
            "domain_volume={} std_error={} samples={}",
            fixed(mc.estimate, prec),
            fixed(mc.std_error, prec),
            mc.samples
        ));
    }

    let (window, samples, base2d, disc): (Window, Vec<GridSample>, [f64; 2], bool) = if g.is_flat() {
        let q = p.as_plane()?;
        let (window, samples) = classify_grid(&g, q, resolution, config.tol)?;
        (window, samples, q, false)
    } else {
        // Slices are drawn through e₁, which is the disc centre.
        (Window::unit_square(), classify_slice(&g, resolution, config.tol)?, [0.0, 0.0], true)
    };

    if svg {
        let mut metadata = vec![config.to_string()];
        metadata.extend(summary);
        let figure = Figure {
            window,
            resolution,
            samples: &samples,
            basepoint: base2d,
            disc,
            metadata,
        };
        return Ok(Report {
            text: figure.render(),
            exit_code: EXIT_OK,
        });
    }

    let mut doc = CsvDoc::new(config, &["x", "y"])?;
    for line in summary {
        doc.comment(line);
    }
    for s in samples.iter().filter(|s| s.class == DomainClass::Boundary) {
        doc.row([num(s.x, prec), num(s.y, prec)])?;
    }
    Ok(Report {
        text: doc.finish()?,
        exit_code: EXIT_OK,
    })
}
