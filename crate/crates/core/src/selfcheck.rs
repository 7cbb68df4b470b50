//! Quick numerical self-checks run by `ris validate`.

use crate::coeffs::{self, CoefficientSet};
use crate::farfield::{
    far_path_loss_area, plate_path_loss, required_area, specular_ratio, Aperture, FarScenario,
};
use crate::geometry::{build_square_grid, TerminalPlacement};
use crate::link::{path_loss, path_loss_dot_product, receive_power, Scenario};
use crate::pattern::{radiated_power_integral, ElementPattern, Q0};
use crate::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst relative error (or other figure of merit) observed.
    pub worst: f64,
    pub tolerance: f64,
}

fn outcome(name: &'static str, worst: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: worst <= tolerance,
        worst,
        tolerance,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// A random scenario with at most `max_side`² elements.
pub fn random_scenario(rng: &mut impl Rng, max_side: usize) -> Result<Scenario> {
    let lambda = rng.gen_range(0.01..1.0);
    let rows = rng.gen_range(1..=max_side);
    let cols = rng.gen_range(1..=max_side);
    let ris = build_square_grid(rows, cols, lambda * rng.gen_range(0.2..0.8))?;
    let tx = TerminalPlacement::polar(
        lambda * rng.gen_range(2.0..500.0),
        rng.gen_range(0.0..1.4),
        rng.gen_range(-PI..PI),
    )?;
    let rx = TerminalPlacement::polar(
        lambda * rng.gen_range(2.0..500.0),
        rng.gen_range(0.0..1.4),
        rng.gen_range(-PI..PI),
    )?;
    let pattern = ElementPattern::new(rng.gen_range(0.0..3.0))?;
    Scenario::new(lambda, ris, pattern, tx, rx)?
        .with_tx_power(rng.gen_range(0.1..100.0))?
        .with_gains(rng.gen_range(0.5..20.0), rng.gen_range(0.5..20.0))?
        .with_efficiency(rng.gen_range(0.05..1.0))
}

pub fn random_phases(rng: &mut impl Rng, n: usize) -> Result<CoefficientSet> {
    let v = (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)))
        .collect();
    coeffs::custom(v, n)
}

pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();

    let mut worst = 0.0f64;
    for q in [0.0, Q0, 1.5, 3.7] {
        let p = ElementPattern::new(q)?;
        worst = worst.max(rel(radiated_power_integral(&p), 4.0 * PI));
    }
    out.push(outcome("pattern power conservation", worst, 1e-6));

    let mut worst = 0.0f64;
    for _ in 0..200 {
        let a = rng.gen_range(1e-3..1e3);
        let ri = rng.gen_range(1.0..1e5);
        let rs = rng.gen_range(1.0..1e5);
        worst = worst.max(rel(
            far_path_loss_area(a, ri, rs, 1.0, 1.0, Q0, 1.0),
            plate_path_loss(a, ri, rs),
        ));
    }
    out.push(outcome("plate scattering identity", worst, 1e-14));

    let (mut w_chain, mut w_dot, mut w_recip) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let s = random_scenario(&mut rng, 5)?;
        let b = random_phases(&mut rng, s.ris().len())?;
        let gain = path_loss(&s, &b)?;
        // Random phases can nearly cancel; errors are measured against the
        // fully coherent magnitude so that cancellation is not mistaken for
        // a discrepancy between the two evaluations.
        let scale = path_loss(&s, &coeffs::focusing(&s)?)?.inverse_loss;
        let err = |x: f64, y: f64| (x - y).abs() / scale;
        let chain = receive_power(&s, &b)?;
        let factor = s.tx_power() * s.tx_gain() * s.rx_gain();
        w_chain = w_chain.max(err(gain.inverse_loss, chain.received_power / factor));
        let dot = path_loss_dot_product(&s, &s.geometry()?, &b)?;
        w_dot = w_dot.max(err(gain.inverse_loss, dot.inverse_loss));
        let back = path_loss(&s.reversed(), &b)?;
        w_recip = w_recip.max(err(gain.inverse_loss, back.inverse_loss));
    }
    out.push(outcome("link chain vs path loss", w_chain, 1e-12));
    out.push(outcome("dot-product form", w_dot, 1e-12));
    out.push(outcome("reciprocity", w_recip, 1e-12));

    let mut excess = 0.0f64;
    for _ in 0..20 {
        let s = random_scenario(&mut rng, 4)?;
        let best = path_loss(&s, &coeffs::focusing(&s)?)?.inverse_loss;
        for _ in 0..20 {
            let b = random_phases(&mut rng, s.ris().len())?;
            let g = path_loss(&s, &b)?.inverse_loss;
            excess = excess.max((g - best) / best);
        }
    }
    out.push(outcome("focusing optimality", excess.max(0.0), 1e-12));

    let mut worst = 0.0f64;
    for _ in 0..200 {
        let fe = rng.gen_range(1.0..1e4);
        let lambda = rng.gen_range(1e-3..1.0);
        let ui = rng.gen_range(0.05..1.0);
        let us = rng.gen_range(0.05..1.0);
        let eps = rng.gen_range(0.05..1.0);
        let size = required_area(fe, lambda, ui, us, eps, Q0)?;
        let fs = FarScenario {
            u_inc: ui,
            u_sca: us,
            efficiency: eps,
            ..FarScenario::broadside(2.0 * fe, 2.0 * fe, lambda, Aperture::Area(size.area))?
        };
        worst = worst.max(rel(specular_ratio(&fs), 1.0));
    }
    out.push(outcome("sizing rule unity", worst, 1e-12));

    Ok(out)
}
