//! Independent reference implementation of the link chain, used as an
//! oracle by the integration and acceptance tests. It walks the
//! per-element equations literally (geometry → element gains → per-element
//! received power → phase → coherent sum) and shares no code with the
//! library beyond reading positions out of the scenario.

#![allow(dead_code)]

use num_complex::Complex64;
use ris_core::coeffs::CoefficientSet;
use ris_core::link::Scenario;
use std::f64::consts::PI;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn arr(v: ris_core::geometry::Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

fn element_gain(q: f64, u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        2.0 * (2.0 * q + 1.0) * u.powf(2.0 * q)
    }
}

pub struct OracleResult {
    pub received_power: f64,
    /// |Σ |b_n| √P_Rn|², the fully coherent magnitude used to scale
    /// comparisons when random phases nearly cancel.
    pub coherent_bound: f64,
}

/// Received power in watts from the literal per-element chain.
pub fn brute_force_received_power(s: &Scenario, b: &CoefficientSet) -> OracleResult {
    let lambda = s.wavelength();
    let q = s.pattern().q();
    let n_hat = arr(s.ris().normal());
    let tx = arr(s.tx().position());
    let rx = arr(s.rx().position());
    let mut total = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    for (pos, bn) in s.ris().positions().iter().zip(b.values()) {
        let p = arr(*pos);
        let to_tx = sub(tx, p);
        let to_rx = sub(rx, p);
        let r_in = dot(to_tx, to_tx).sqrt();
        let r_sn = dot(to_rx, to_rx).sqrt();
        let u_in = dot(to_tx, n_hat) / r_in;
        let u_sn = dot(to_rx, n_hat) / r_sn;
        let p_rn = s.tx_power()
            * s.tx_gain()
            * s.rx_gain()
            * (lambda / (4.0 * PI)).powi(4)
            * element_gain(q, u_in)
            * element_gain(q, u_sn)
            * s.efficiency()
            / (r_in * r_in * r_sn * r_sn);
        let phi = 2.0 * PI * (r_in + r_sn) / lambda;
        total += bn * p_rn.sqrt() * Complex64::from_polar(1.0, phi);
        bound += bn.norm() * p_rn.sqrt();
    }
    OracleResult {
        received_power: total.norm_sqr(),
        coherent_bound: bound * bound,
    }
}
