//! Far-case closed forms and classical benchmarks.
//!
//! In the far case every element sees the transmitter and receiver at the
//! same distance and direction; only the path phases still vary across the
//! surface. With λ/2 spacing and the benchmark pattern the focused path
//! gain depends only on the physical area and matches a flat conducting
//! plate at monostatic broadside.

use crate::pattern::ElementPattern;
use crate::{Error, Result};
use std::f64::consts::PI;

/// Size of the surface, either as an element count at λ/2 spacing or as a
/// physical area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Aperture {
    Elements(usize),
    Area(f64),
}

impl Aperture {
    /// Physical area in m²; an element count implies A = N(λ/2)².
    pub fn area(&self, wavelength: f64) -> f64 {
        match *self {
            Aperture::Elements(n) => n as f64 * wavelength * wavelength / 4.0,
            Aperture::Area(a) => a,
        }
    }

    /// Element count, possibly fractional when derived from an area.
    pub fn element_count(&self, wavelength: f64) -> f64 {
        match *self {
            Aperture::Elements(n) => n as f64,
            Aperture::Area(a) => 4.0 * a / (wavelength * wavelength),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarScenario {
    pub r_inc: f64,
    pub r_sca: f64,
    /// Cosine of the incidence angle from broadside, −r̂_i·n̂.
    pub u_inc: f64,
    /// Cosine of the scattering angle from broadside, r̂_s·n̂.
    pub u_sca: f64,
    pub wavelength: f64,
    pub efficiency: f64,
    pub pattern: ElementPattern,
    pub aperture: Aperture,
}

impl FarScenario {
    /// Broadside, lossless, benchmark-pattern scenario.
    pub fn broadside(r_inc: f64, r_sca: f64, wavelength: f64, aperture: Aperture) -> Result<Self> {
        Self {
            r_inc,
            r_sca,
            u_inc: 1.0,
            u_sca: 1.0,
            wavelength,
            efficiency: 1.0,
            pattern: crate::pattern::benchmark_pattern(),
            aperture,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        positive("r_inc", self.r_inc)?;
        positive("r_sca", self.r_sca)?;
        positive("wavelength", self.wavelength)?;
        positive("efficiency", self.efficiency)?;
        unit_cosine("u_inc", self.u_inc)?;
        unit_cosine("u_sca", self.u_sca)?;
        if let Aperture::Area(a) = self.aperture {
            positive("area", a)?;
        }
        Ok(self)
    }

    pub fn area(&self) -> f64 {
        self.aperture.area(self.wavelength)
    }

    /// (u_i)^2q·(u_s)^2q
    pub fn obliquity(&self) -> f64 {
        obliquity(self.u_inc, self.u_sca, self.pattern.q())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::invalid(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn unit_cosine(name: &str, u: f64) -> Result<()> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::invalid(format!(
            "{name} must lie in (0, 1], got {u}"
        )));
    }
    Ok(())
}

#[inline]
fn obliquity(u_inc: f64, u_sca: f64, q: f64) -> f64 {
    u_inc.powf(2.0 * q) * u_sca.powf(2.0 * q)
}

/// Far-case path gain for an arbitrary coefficient set, given
/// `coherent_sum_sq` = |Σ b_n e^{jφ_n}|²:
/// (λ/4π)⁴·γ²·(u_i u_s)^2q·|Σ|²·ε_p / (r_i² r_s²).
pub fn far_path_loss_general(fs: &FarScenario, coherent_sum_sq: f64) -> f64 {
    let k = fs.wavelength / (4.0 * PI);
    let g = fs.pattern.gamma();
    let r2 = (fs.r_inc * fs.r_inc) * (fs.r_sca * fs.r_sca);
    (k * k) * (k * k) * (g * g) * fs.obliquity() * coherent_sum_sq * fs.efficiency / r2
}

/// Phase-only focusing in the far case: the N² law.
pub fn far_path_loss_focused(fs: &FarScenario) -> f64 {
    let n = fs.aperture.element_count(fs.wavelength);
    far_path_loss_general(fs, n * n)
}

/// Area-only form (A / 4π r_i r_s)²·(u_i u_s)^2q·ε_p. Contains no wavelength.
pub fn far_path_loss_area(
    area: f64,
    r_inc: f64,
    r_sca: f64,
    u_inc: f64,
    u_sca: f64,
    q: f64,
    efficiency: f64,
) -> f64 {
    let x = area / (4.0 * PI * r_inc * r_sca);
    x * x * obliquity(u_inc, u_sca, q) * efficiency
}

/// Path gain of a flat conducting plate at monostatic broadside.
pub fn plate_path_loss(area: f64, r_inc: f64, r_sca: f64) -> f64 {
    let x = area / (4.0 * PI * r_inc * r_sca);
    x * x
}

/// Broadside monostatic radar cross section of a flat plate, 4πA²/λ².
pub fn plate_rcs(area: f64, wavelength: f64) -> f64 {
    4.0 * PI * area * area / (wavelength * wavelength)
}

/// Radar range equation, P_T G_T G_R λ² σ / ((4π)³ r_i² r_s²).
pub fn radar_received_power(
    tx_power: f64,
    tx_gain: f64,
    rx_gain: f64,
    wavelength: f64,
    rcs: f64,
    r_inc: f64,
    r_sca: f64,
) -> f64 {
    let four_pi = 4.0 * PI;
    tx_power * tx_gain * rx_gain * wavelength * wavelength * rcs
        / (four_pi * four_pi * four_pi * r_inc * r_inc * r_sca * r_sca)
}

/// Thin-lens combination r_i r_s / (r_i + r_s).
pub fn effective_focal_length(r_inc: f64, r_sca: f64) -> f64 {
    if r_inc.is_infinite() {
        return r_sca;
    }
    if r_sca.is_infinite() {
        return r_inc;
    }
    r_inc * r_sca / (r_inc + r_sca)
}

/// L_S / L_RIS against the free-space channel of length r_i + r_s;
/// above 1 the RIS channel has less loss.
pub fn specular_ratio(fs: &FarScenario) -> f64 {
    let fe = effective_focal_length(fs.r_inc, fs.r_sca);
    let x = fs.area() / (fe * fs.wavelength);
    x * x * fs.obliquity() * fs.efficiency
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RequiredSize {
    /// m²
    pub area: f64,
    /// Side of a square RIS, m.
    pub side: f64,
    /// Side in wavelengths.
    pub side_over_lambda: f64,
}

/// Area at which the far-case RIS channel matches the equal-length
/// free-space channel: A = f_e λ / √((u_i u_s)^2q ε_p).
pub fn required_area(
    focal_length: f64,
    wavelength: f64,
    u_inc: f64,
    u_sca: f64,
    efficiency: f64,
    q: f64,
) -> Result<RequiredSize> {
    if !(focal_length >= 0.0 && focal_length.is_finite()) {
        return Err(Error::invalid(format!(
            "effective focal length must be non-negative, got {focal_length}"
        )));
    }
    positive("wavelength", wavelength)?;
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::invalid(format!(
            "efficiency must lie in (0, 1], got {efficiency}"
        )));
    }
    for (name, u) in [("u_inc", u_inc), ("u_sca", u_sca)] {
        if u == 0.0 || (q > 0.0 && u.powf(2.0 * q) == 0.0) {
            return Err(Error::Divergence(format!(
                "{name} = 0: an edge-on RIS cannot match free space at any size"
            )));
        }
        unit_cosine(name, u)?;
    }
    let area = focal_length * wavelength / (obliquity(u_inc, u_sca, q) * efficiency).sqrt();
    let side = area.sqrt();
    Ok(RequiredSize {
        area,
        side,
        side_over_lambda: side / wavelength,
    })
}
