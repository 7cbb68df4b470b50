//! Per-element link power, path phases and the coherent RIS sum.
//!
//! Transmit and receive antenna gains are scalars: they are assumed
//! constant over the RIS, which lets path loss separate cleanly from the
//! terminals. Every element sum runs sequentially in row-major element
//! order with compensated accumulation, so identical inputs give
//! bit-identical results on any thread count.

use crate::coeffs::CoefficientSet;
use crate::geometry::{link_geometry, LinkGeometry, RisArray, TerminalPlacement};
use crate::pattern::ElementPattern;
use crate::sum::ComplexSum;
use crate::{db, Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Complete input to a path-loss evaluation.
#[derive(Debug, Clone)]
pub struct Scenario {
    wavelength: f64,
    tx_power: f64,
    tx_gain: f64,
    rx_gain: f64,
    efficiency: f64,
    ris: RisArray,
    pattern: ElementPattern,
    tx: TerminalPlacement,
    rx: TerminalPlacement,
}

impl Scenario {
    /// Scenario with unit transmit power, unit terminal gains and a
    /// lossless passive RIS.
    pub fn new(
        wavelength: f64,
        ris: RisArray,
        pattern: ElementPattern,
        tx: TerminalPlacement,
        rx: TerminalPlacement,
    ) -> Result<Self> {
        if !(wavelength > 0.0 && wavelength.is_finite()) {
            return Err(Error::invalid(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        Ok(Self {
            wavelength,
            tx_power: 1.0,
            tx_gain: 1.0,
            rx_gain: 1.0,
            efficiency: 1.0,
            ris,
            pattern,
            tx,
            rx,
        })
    }

    pub fn with_tx_power(mut self, watts: f64) -> Result<Self> {
        if !(watts > 0.0 && watts.is_finite()) {
            return Err(Error::invalid(format!(
                "transmit power must be positive, got {watts}"
            )));
        }
        self.tx_power = watts;
        Ok(self)
    }

    pub fn with_gains(mut self, tx_gain: f64, rx_gain: f64) -> Result<Self> {
        for (name, g) in [("tx_gain", tx_gain), ("rx_gain", rx_gain)] {
            if !(g >= 0.0 && g.is_finite()) {
                return Err(Error::invalid(format!(
                    "{name} must be non-negative, got {g}"
                )));
            }
        }
        self.tx_gain = tx_gain;
        self.rx_gain = rx_gain;
        Ok(self)
    }

    /// Passive efficiency in (0, 1].
    pub fn with_efficiency(mut self, efficiency: f64) -> Result<Self> {
        if !(efficiency > 0.0 && efficiency <= 1.0) {
            return Err(Error::invalid(format!(
                "passive RIS efficiency must lie in (0, 1], got {efficiency}; \
                 use with_active_efficiency for an active surface"
            )));
        }
        self.efficiency = efficiency;
        Ok(self)
    }

    /// Efficiency for an active RIS; values above 1 are accepted.
    pub fn with_active_efficiency(mut self, efficiency: f64) -> Result<Self> {
        if !(efficiency > 0.0 && efficiency.is_finite()) {
            return Err(Error::invalid(format!(
                "efficiency must be positive, got {efficiency}"
            )));
        }
        self.efficiency = efficiency;
        Ok(self)
    }

    pub fn with_terminals(mut self, tx: TerminalPlacement, rx: TerminalPlacement) -> Self {
        self.tx = tx;
        self.rx = rx;
        self
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }
    pub fn tx_power(&self) -> f64 {
        self.tx_power
    }
    pub fn tx_gain(&self) -> f64 {
        self.tx_gain
    }
    pub fn rx_gain(&self) -> f64 {
        self.rx_gain
    }
    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }
    pub fn is_passive(&self) -> bool {
        self.efficiency <= 1.0
    }
    pub fn ris(&self) -> &RisArray {
        &self.ris
    }
    pub fn pattern(&self) -> &ElementPattern {
        &self.pattern
    }
    pub fn tx(&self) -> &TerminalPlacement {
        &self.tx
    }
    pub fn rx(&self) -> &TerminalPlacement {
        &self.rx
    }

    pub fn geometry(&self) -> Result<LinkGeometry> {
        link_geometry(&self.ris, &self.tx, &self.rx)
    }

    /// Distances from the RIS reference point to the transmitter and receiver.
    pub fn reference_distances(&self) -> (f64, f64) {
        let o = self.ris.origin();
        (
            (self.tx.position() - o).norm(),
            (self.rx.position() - o).norm(),
        )
    }

    /// The same scenario with transmitter and receiver exchanged.
    pub fn reversed(&self) -> Scenario {
        let mut s = self.clone();
        std::mem::swap(&mut s.tx, &mut s.rx);
        std::mem::swap(&mut s.tx_gain, &mut s.rx_gain);
        s
    }

    fn terminal_factor(&self) -> f64 {
        self.tx_power * self.tx_gain * self.rx_gain
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementDiagnostics {
    /// Power delivered to the receiver through this element alone, W.
    pub received_power: f64,
    /// Unreduced path phase, rad.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathLossResult {
    /// Path gain L⁻¹.
    pub inverse_loss: f64,
    /// Path loss in dB, −10·log10(L⁻¹).
    pub loss_db: f64,
    /// Received power P_R = P_T·G_T·G_R·L⁻¹, W.
    pub received_power: f64,
    /// Σ b_n √P_Rn e^{jφ_n} in √W.
    pub coherent_sum: Complex64,
    /// Number of coefficients with ε_p·|b_n|² > 1.
    pub amplifying_elements: usize,
    pub per_element: Option<Vec<ElementDiagnostics>>,
}

impl PathLossResult {
    fn new(inverse_loss: f64, received_power: f64, coherent_sum: Complex64) -> Self {
        Self {
            inverse_loss,
            loss_db: -db::to_db(inverse_loss),
            received_power,
            coherent_sum,
            amplifying_elements: 0,
            per_element: None,
        }
    }

    /// Path gain relative to a free-space channel of the given loss, dB.
    pub fn gain_over_db(&self, reference_loss: f64) -> f64 {
        db::to_db(reference_loss * self.inverse_loss)
    }
}

/// φ_n = 2π(r_in + r_sn)/λ, not reduced modulo 2π.
pub fn path_phase(geom: &LinkGeometry, n: usize, wavelength: f64) -> Result<f64> {
    check_index(geom, n)?;
    Ok(2.0 * PI * (geom.r_inc[n] + geom.r_sca[n]) / wavelength)
}

/// All path phases in element order.
pub fn path_phases(geom: &LinkGeometry, wavelength: f64) -> Vec<f64> {
    geom.r_inc
        .iter()
        .zip(&geom.r_sca)
        .map(|(ri, rs)| 2.0 * PI * (ri + rs) / wavelength)
        .collect()
}

fn check_index(geom: &LinkGeometry, n: usize) -> Result<()> {
    if n >= geom.len() {
        return Err(Error::invalid(format!(
            "element index {n} out of range for {} elements",
            geom.len()
        )));
    }
    Ok(())
}

/// Power delivered to the receiver along the path through element `n`.
///
/// P_Rn = P_T·G_T·G_R·(λ/4π)⁴·G_e(u_in)·G_e(u_sn)·ε_p / (r_in²·r_sn²)
pub fn element_received_power(s: &Scenario, geom: &LinkGeometry, n: usize) -> Result<f64> {
    check_index(geom, n)?;
    Ok(element_power_unchecked(s, geom, n))
}

#[inline]
fn element_power_unchecked(s: &Scenario, geom: &LinkGeometry, n: usize) -> f64 {
    let k = s.wavelength / (4.0 * PI);
    let k4 = (k * k) * (k * k);
    let g = s.pattern.gamma();
    let g_inc = g * s.pattern.shape(geom.u_inc[n]);
    let g_sca = g * s.pattern.shape(geom.u_sca[n]);
    let ri2 = geom.r_inc[n] * geom.r_inc[n];
    let rs2 = geom.r_sca[n] * geom.r_sca[n];
    s.terminal_factor() * k4 * (g_inc * g_sca) * s.efficiency / (ri2 * rs2)
}

fn check_coefficients(s: &Scenario, b: &CoefficientSet) -> Result<()> {
    if b.len() != s.ris.len() {
        return Err(Error::invalid(format!(
            "coefficient count {} does not match element count {}",
            b.len(),
            s.ris.len()
        )));
    }
    Ok(())
}

fn count_amplifying(s: &Scenario, b: &CoefficientSet) -> usize {
    let n = b
        .values()
        .iter()
        .filter(|z| s.efficiency * z.norm_sqr() > 1.0 + 1e-12)
        .count();
    if n > 0 {
        log::warn!("{n} coefficient(s) amplify beyond passive limits (efficiency·|b|² > 1)");
    }
    n
}

/// Received power from the per-element chain: P_Rn from the link power
/// equation, then |Σ b_n √P_Rn e^{jφ_n}|².
pub fn receive_power(s: &Scenario, b: &CoefficientSet) -> Result<PathLossResult> {
    check_coefficients(s, b)?;
    let geom = s.geometry()?;
    let mut diag = Vec::with_capacity(geom.len());
    let mut acc = ComplexSum::new();
    for (n, bn) in b.values().iter().enumerate() {
        let p = element_power_unchecked(s, &geom, n);
        let phi = 2.0 * PI * (geom.r_inc[n] + geom.r_sca[n]) / s.wavelength;
        acc.add(bn * Complex64::from_polar(p.sqrt(), phi));
        diag.push(ElementDiagnostics {
            received_power: p,
            phase: phi,
        });
    }
    let y = acc.value();
    let pr = y.norm_sqr();
    let tf = s.terminal_factor();
    let inverse = if tf > 0.0 { pr / tf } else { 0.0 };
    let mut out = PathLossResult::new(inverse, pr, y);
    out.amplifying_elements = count_amplifying(s, b);
    out.per_element = Some(diag);
    Ok(out)
}

/// Path loss with explicit element gains:
/// L⁻¹ = (λ/4π)⁴·|Σ b_n √(G_e(u_in)G_e(u_sn)/(r_in² r_sn²)) e^{jφ_n}|²·ε_p.
pub fn path_loss(s: &Scenario, b: &CoefficientSet) -> Result<PathLossResult> {
    check_coefficients(s, b)?;
    let geom = s.geometry()?;
    path_loss_with_geometry(s, &geom, b)
}

pub fn path_loss_with_geometry(
    s: &Scenario,
    geom: &LinkGeometry,
    b: &CoefficientSet,
) -> Result<PathLossResult> {
    check_coefficients(s, b)?;
    let p = &s.pattern;
    let mut acc = ComplexSum::new();
    for (n, bn) in b.values().iter().enumerate() {
        let ge = (p.gamma() * p.shape(geom.u_inc[n])) * (p.gamma() * p.shape(geom.u_sca[n]));
        let amp = ge.sqrt() / (geom.r_inc[n] * geom.r_sca[n]);
        let phi = 2.0 * PI * (geom.r_inc[n] + geom.r_sca[n]) / s.wavelength;
        acc.add(bn * Complex64::from_polar(amp, phi));
    }
    let k = s.wavelength / (4.0 * PI);
    // scale so that |coherent_sum|² is the path gain
    let scale = (k * k * s.efficiency.sqrt()) * s.terminal_factor().sqrt();
    let y = acc.value();
    let inverse = (k * k) * (k * k) * y.norm_sqr() * s.efficiency;
    let mut out = PathLossResult::new(inverse, s.terminal_factor() * inverse, y * scale);
    out.amplifying_elements = count_amplifying(s, b);
    Ok(out)
}

/// Dot-product form of the path loss:
/// L⁻¹ = (λ⁴γ²/256π⁴)·|Σ b_n √(u_in^2q u_sn^2q/(r_in² r_sn²)) e^{jφ_n}|²·ε_p.
///
/// For γ = π this is the familiar λ⁴/256π² prefactor.
pub fn path_loss_dot_product(
    s: &Scenario,
    geom: &LinkGeometry,
    b: &CoefficientSet,
) -> Result<PathLossResult> {
    check_coefficients(s, b)?;
    let y = dot_product_sum(geom, s.pattern.q(), s.wavelength, b.values());
    Ok(dot_product_result(s, y))
}

pub(crate) fn dot_product_result(s: &Scenario, y: Complex64) -> PathLossResult {
    let lambda2 = s.wavelength * s.wavelength;
    let g = s.pattern.gamma();
    let prefactor = lambda2 * lambda2 * g * g / (256.0 * PI.powi(4));
    let inverse = prefactor * y.norm_sqr() * s.efficiency;
    let scale = (prefactor * s.efficiency * s.terminal_factor()).sqrt();
    PathLossResult::new(inverse, s.terminal_factor() * inverse, y * scale)
}

/// Σ b_n (u_in u_sn)^q / (r_in r_sn) · e^{jφ_n}, compensated, in element order.
pub(crate) fn dot_product_sum(
    geom: &LinkGeometry,
    q: f64,
    wavelength: f64,
    b: &[Complex64],
) -> Complex64 {
    let k = 2.0 * PI / wavelength;
    let mut acc = ComplexSum::new();
    for (n, bn) in b.iter().enumerate().take(geom.len()) {
        let (ui, us) = (geom.u_inc[n], geom.u_sca[n]);
        if !(ui > 0.0 && us > 0.0) {
            continue;
        }
        let amp = (ui.min(1.0) * us.min(1.0)).powf(q) / (geom.r_inc[n] * geom.r_sca[n]);
        let phi = k * (geom.r_inc[n] + geom.r_sca[n]);
        acc.add(bn * Complex64::from_polar(amp, phi));
    }
    acc.value()
}

/// Free-space loss over a straight path, (4π·d/λ)².
pub fn free_space_loss(path_length: f64, wavelength: f64) -> Result<f64> {
    if !(path_length > 0.0 && wavelength > 0.0) {
        return Err(Error::invalid(format!(
            "path length and wavelength must be positive, got {path_length} and {wavelength}"
        )));
    }
    let x = 4.0 * PI * path_length / wavelength;
    Ok(x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs;
    use crate::geometry::{build_square_grid, Vec3};
    use crate::pattern::benchmark_pattern;

    fn broadside(n_side: usize, r: f64) -> Scenario {
        let ris = build_square_grid(n_side, n_side, 0.5).unwrap();
        let t = TerminalPlacement::polar(r, 0.0, 0.0).unwrap();
        Scenario::new(1.0, ris, benchmark_pattern(), t, t).unwrap()
    }

    #[test]
    fn phase_values() {
        let g = LinkGeometry {
            r_inc: vec![0.25, 100.0, 10.3],
            r_sca: vec![0.75, 50.0, 5.9],
            u_inc: vec![1.0; 3],
            u_sca: vec![1.0; 3],
        };
        assert!((path_phase(&g, 0, 1.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((path_phase(&g, 1, 1.0).unwrap() - 300.0 * PI).abs() < 1e-12);
        assert!((path_phase(&g, 2, 1.0).unwrap() - 2.0 * PI * 16.2).abs() < 1e-12);
        assert!(path_phase(&g, 3, 1.0).is_err());
    }

    #[test]
    fn isotropic_element_power() {
        let ris = build_square_grid(1, 1, 0.5).unwrap();
        let t = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, 100.0)).unwrap();
        let iso = ElementPattern::new(0.0).unwrap();
        let s = Scenario::new(1.0, ris, iso, t, t).unwrap();
        let g = s.geometry().unwrap();
        let p = element_received_power(&s, &g, 0).unwrap();
        // (1/4π)⁴·4/10⁸ from a 30-digit mpmath evaluation
        assert!((p - 1.604_059_727_294_427e-12).abs() / p < 1e-14);
        let half = s.clone().with_efficiency(0.5).unwrap();
        assert_eq!(element_received_power(&half, &g, 0).unwrap(), 0.5 * p);
        assert!(element_received_power(&s, &g, 1).is_err());
    }

    #[test]
    fn doubling_distance_quarters_power() {
        let s = broadside(1, 10.0);
        let g = LinkGeometry {
            r_inc: vec![37.0, 74.0, 37.0],
            r_sca: vec![11.0, 11.0, 22.0],
            u_inc: vec![0.7; 3],
            u_sca: vec![0.4; 3],
        };
        let p0 = element_power_unchecked(&s, &g, 0);
        assert_eq!(element_power_unchecked(&s, &g, 1), p0 / 4.0);
        assert_eq!(element_power_unchecked(&s, &g, 2), p0 / 4.0);
    }

    #[test]
    fn single_element_sum_is_the_element_power() {
        let s = broadside(1, 50.0);
        let r = receive_power(&s, &coeffs::uniform(1)).unwrap();
        let p1 = r.per_element.as_ref().unwrap()[0].received_power;
        assert!((r.received_power - p1).abs() / p1 < 1e-15);
    }

    #[test]
    fn focusing_sum_is_sum_of_amplitudes() {
        let ris = build_square_grid(4, 5, 0.5).unwrap();
        let tx = TerminalPlacement::polar(30.0, 0.3, 0.0).unwrap();
        let rx = TerminalPlacement::polar(20.0, 0.9, 2.0).unwrap();
        let s = Scenario::new(1.0, ris, benchmark_pattern(), tx, rx).unwrap();
        let b = coeffs::focusing(&s).unwrap();
        let r = receive_power(&s, &b).unwrap();
        let amp: f64 = r
            .per_element
            .as_ref()
            .unwrap()
            .iter()
            .map(|d| d.received_power.sqrt())
            .sum();
        assert!((r.received_power - amp * amp).abs() / (amp * amp) < 1e-12);
    }

    #[test]
    fn coefficient_count_checked() {
        let s = broadside(2, 10.0);
        assert!(matches!(
            receive_power(&s, &coeffs::uniform(3)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            path_loss(&s, &coeffs::uniform(5)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn free_space_values() {
        let l = free_space_loss(1.0, 1.0).unwrap();
        assert!((l - 157.913_670_417_429_74).abs() < 1e-10);
        assert!((db::to_db(l) - 21.984_197_280_441_925).abs() < 1e-12);
        let step = db::to_db(free_space_loss(2.0, 1.0).unwrap()) - db::to_db(l);
        assert!((step - 6.020_599_913_279_624).abs() < 1e-12);
        let far = free_space_loss(2e4, 1.0).unwrap();
        assert!((far - 63_165_468_166.971_9).abs() / far < 1e-14);
        assert!((db::to_db(far) - 108.0).abs() < 0.01);
        assert!(free_space_loss(0.0, 1.0).is_err());
        assert!(free_space_loss(1.0, -1.0).is_err());
    }

    #[test]
    fn passive_check_counts_amplifying_coefficients() {
        let s = broadside(2, 10.0).with_efficiency(0.5).unwrap();
        let b = coeffs::custom(
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(1.5, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(2.0, 0.0),
            ],
            4,
        )
        .unwrap();
        assert_eq!(path_loss(&s, &b).unwrap().amplifying_elements, 2);
    }

    #[test]
    fn active_efficiency_requires_override() {
        let s = broadside(1, 10.0);
        assert!(s.clone().with_efficiency(1.5).is_err());
        let a = s.with_active_efficiency(1.5).unwrap();
        assert!(!a.is_passive());
    }

    #[test]
    fn element_behind_contributes_nothing() {
        let g = LinkGeometry {
            r_inc: vec![10.0, 10.0],
            r_sca: vec![10.0, 10.0],
            u_inc: vec![1.0, 0.0],
            u_sca: vec![1.0, 1.0],
        };
        let b = [Complex64::new(1.0, 0.0); 2];
        let both = dot_product_sum(&g, 0.285, 1.0, &b);
        let first = dot_product_sum(
            &LinkGeometry {
                r_inc: vec![10.0],
                r_sca: vec![10.0],
                u_inc: vec![1.0],
                u_sca: vec![1.0],
            },
            0.285,
            1.0,
            &b[..1],
        );
        assert_eq!(both, first);
    }
}
