//! Normalized path gain versus aperture size.
//!
//! The transmitter is broadside at distance r; the receiver sits at the
//! same distance, `psi` off broadside in the plane selected by the azimuth
//! (the x–z plane by default). Rows are evaluated in parallel but each
//! element sum is sequential, so output never depends on the thread count.

use crate::coeffs::{self, CoefficientSet};
use crate::farfield::{far_path_loss_area, specular_ratio, Aperture, FarScenario};
use crate::geometry::{build_square_grid, TerminalPlacement};
use crate::link::{dot_product_result, dot_product_sum, free_space_loss, Scenario};
use crate::pattern::ElementPattern;
use crate::{db, Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_MAX_PER_SIDE: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepStrategy {
    Focusing,
    Beamforming,
    /// Far-case area-only closed form.
    Far,
}

impl fmt::Display for SweepStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepStrategy::Focusing => "focusing",
            SweepStrategy::Beamforming => "beamforming",
            SweepStrategy::Far => "far",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Gain over the free-space channel of length r_i + r_s.
    #[default]
    FreeSpaceEqualLength,
    /// Absolute path gain, −loss_db.
    Absolute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub wavelength: f64,
    pub efficiency: f64,
    pub pattern: ElementPattern,
    pub spacing_over_lambda: f64,
    pub distances_lambda: Vec<f64>,
    pub psi_deg: Vec<f64>,
    pub azimuth_deg: f64,
    pub elements_per_side: Vec<usize>,
    pub strategies: Vec<SweepStrategy>,
    pub normalization: Normalization,
    pub max_elements_per_side: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub side_lambda: f64,
    pub psi_s_deg: f64,
    pub r_over_lambda: f64,
    pub strategy: SweepStrategy,
    pub n: usize,
    pub loss_db: f64,
    pub normalized_db: f64,
}

struct Point {
    r_lambda: f64,
    psi_deg: f64,
    per_side: usize,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if let Some(&m) = spec
        .elements_per_side
        .iter()
        .find(|&&m| m > spec.max_elements_per_side)
    {
        return Err(Error::ResourceCap {
            requested: m,
            cap: spec.max_elements_per_side,
        });
    }
    let mut points = Vec::new();
    for &r_lambda in &spec.distances_lambda {
        for &psi_deg in &spec.psi_deg {
            for &per_side in &spec.elements_per_side {
                points.push(Point {
                    r_lambda,
                    psi_deg,
                    per_side,
                });
            }
        }
    }
    let chunks: Vec<Result<Vec<SweepRow>>> =
        points.par_iter().map(|p| evaluate_point(spec, p)).collect();
    let mut rows = Vec::with_capacity(points.len() * spec.strategies.len());
    for chunk in chunks {
        rows.extend(chunk?);
    }
    Ok(rows)
}

fn evaluate_point(spec: &SweepSpec, p: &Point) -> Result<Vec<SweepRow>> {
    let lambda = spec.wavelength;
    let spacing = spec.spacing_over_lambda * lambda;
    let r = p.r_lambda * lambda;
    let psi = p.psi_deg.to_radians();
    let ris = build_square_grid(p.per_side, p.per_side, spacing)?;
    let n = ris.len();
    let area = ris.area();
    let side_lambda = p.per_side as f64 * spec.spacing_over_lambda;
    let tx = TerminalPlacement::polar(r, 0.0, 0.0)?;
    let rx = TerminalPlacement::polar(r, psi, spec.azimuth_deg.to_radians())?;
    let scenario =
        Scenario::new(lambda, ris, spec.pattern, tx, rx)?.with_efficiency(spec.efficiency)?;
    let reference_loss = free_space_loss(2.0 * r, lambda)?;

    let needs_geometry = spec.strategies.iter().any(|s| *s != SweepStrategy::Far);
    let geom = if needs_geometry {
        Some(scenario.geometry()?)
    } else {
        None
    };

    let mut rows = Vec::with_capacity(spec.strategies.len());
    for &strategy in &spec.strategies {
        let inverse_loss = match strategy {
            SweepStrategy::Far => far_path_loss_area(
                area,
                r,
                r,
                1.0,
                psi.cos(),
                spec.pattern.q(),
                spec.efficiency,
            ),
            exact => {
                let geom = geom
                    .as_ref()
                    .expect("geometry computed for exact strategies");
                let b: CoefficientSet = match exact {
                    SweepStrategy::Focusing => coeffs::focusing_from_geometry(geom, lambda),
                    _ => coeffs::beamforming(&scenario)?,
                };
                let y = dot_product_sum(geom, spec.pattern.q(), lambda, b.values());
                dot_product_result(&scenario, y).inverse_loss
            }
        };
        let loss_db = -db::to_db(inverse_loss);
        let normalized_db = match spec.normalization {
            Normalization::FreeSpaceEqualLength => db::to_db(reference_loss) - loss_db,
            Normalization::Absolute => -loss_db,
        };
        rows.push(SweepRow {
            side_lambda,
            psi_s_deg: p.psi_deg,
            r_over_lambda: p.r_lambda,
            strategy,
            n,
            loss_db,
            normalized_db,
        });
    }
    Ok(rows)
}

/// Normalized gain of a far row recomputed through the specular ratio.
pub fn far_row_specular_db(spec: &SweepSpec, row: &SweepRow) -> Result<f64> {
    let lambda = spec.wavelength;
    let r = row.r_over_lambda * lambda;
    let fs = FarScenario {
        u_inc: 1.0,
        u_sca: row.psi_s_deg.to_radians().cos(),
        efficiency: spec.efficiency,
        pattern: spec.pattern,
        ..FarScenario::broadside(
            r,
            r,
            lambda,
            Aperture::Area((row.side_lambda * lambda).powi(2)),
        )?
    };
    Ok(db::to_db(specular_ratio(&fs)))
}
