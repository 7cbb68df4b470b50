//! RIS layouts and per-element link geometry.
//!
//! The canonical frame puts the RIS in the z = 0 plane with broadside
//! normal +z and the grid centered on the origin. Grids with an even
//! element count along a side have no element at the origin; the two
//! central elements sit at ±spacing/2.

use crate::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    /// Unit vector in the same direction. Fails on the zero vector.
    pub fn unit(self) -> Result<Vec3> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::invalid(
                "cannot normalize a zero or non-finite vector",
            ));
        }
        Ok(self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Row-major 3x3 rotation matrix.
pub type Rotation = [[f64; 3]; 3];

pub fn rotate(rot: &Rotation, v: Vec3) -> Vec3 {
    Vec3::new(
        rot[0][0] * v.x + rot[0][1] * v.y + rot[0][2] * v.z,
        rot[1][0] * v.x + rot[1][1] * v.y + rot[1][2] * v.z,
        rot[2][0] * v.x + rot[2][1] * v.y + rot[2][2] * v.z,
    )
}

/// Planar rectangular RIS.
///
/// Element positions are stored row-major, which is also the fixed order
/// of every element sum in the engine.
#[derive(Debug, Clone, PartialEq)]
pub struct RisArray {
    positions: Vec<Vec3>,
    normal: Vec3,
    origin: Vec3,
    spacing: f64,
    rows: usize,
    cols: usize,
    area: f64,
}

impl RisArray {
    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    /// Broadside unit normal.
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    /// Phase reference point (grid center).
    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Physical area, rows·cols·spacing².
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Side lengths (rows·spacing, cols·spacing).
    pub fn side_lengths(&self) -> (f64, f64) {
        (
            self.rows as f64 * self.spacing,
            self.cols as f64 * self.spacing,
        )
    }

    /// Applies `p -> rot·p + shift` to every element, the normal and the
    /// reference point.
    pub fn transformed(&self, rot: &Rotation, shift: Vec3) -> RisArray {
        RisArray {
            positions: self
                .positions
                .iter()
                .map(|&p| rotate(rot, p) + shift)
                .collect(),
            normal: rotate(rot, self.normal),
            origin: rotate(rot, self.origin) + shift,
            ..self.clone()
        }
    }
}

/// Builds a `rows × cols` grid centered on the origin in the z = 0 plane.
pub fn build_square_grid(rows: usize, cols: usize, spacing: f64) -> Result<RisArray> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid(format!(
            "grid dimensions must be positive, got {rows}×{cols}"
        )));
    }
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::invalid(format!(
            "element spacing must be positive, got {spacing}"
        )));
    }
    let row_offset = (rows as f64 - 1.0) / 2.0;
    let col_offset = (cols as f64 - 1.0) / 2.0;
    let mut positions = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let x = (r as f64 - row_offset) * spacing;
        for c in 0..cols {
            let y = (c as f64 - col_offset) * spacing;
            positions.push(Vec3::new(x, y, 0.0));
        }
    }
    Ok(RisArray {
        positions,
        normal: Vec3::Z,
        origin: Vec3::ZERO,
        spacing,
        rows,
        cols,
        area: (rows * cols) as f64 * spacing * spacing,
    })
}

/// Where a terminal sits.
///
/// The polar form is resolved in the canonical frame: `psi` is measured
/// from the +z broadside axis and `azimuth` from the +x axis, so azimuth 0
/// keeps the terminal in the x–z plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TerminalPlacement {
    Cartesian(Vec3),
    Polar { r: f64, psi: f64, azimuth: f64 },
}

impl TerminalPlacement {
    pub fn cartesian(position: Vec3) -> Result<Self> {
        if !position.is_finite() {
            return Err(Error::invalid("terminal position must be finite"));
        }
        Ok(TerminalPlacement::Cartesian(position))
    }

    /// `r` in meters, `psi` and `azimuth` in radians.
    pub fn polar(r: f64, psi: f64, azimuth: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::invalid(format!(
                "terminal distance must be positive, got {r}"
            )));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&psi) {
            return Err(Error::Geometry(format!(
                "off-broadside angle must lie in [0, π/2), got {psi} rad"
            )));
        }
        if !azimuth.is_finite() {
            return Err(Error::invalid("azimuth must be finite"));
        }
        Ok(TerminalPlacement::Polar { r, psi, azimuth })
    }

    pub fn position(&self) -> Vec3 {
        match *self {
            TerminalPlacement::Cartesian(p) => p,
            TerminalPlacement::Polar { r, psi, azimuth } => {
                let (s, c) = psi.sin_cos();
                let (sa, ca) = azimuth.sin_cos();
                Vec3::new(r * s * ca, r * s * sa, r * c)
            }
        }
    }
}

/// Per-element distances and broadside dot products for one tx/rx pair.
///
/// `u_inc[n]` is the cosine of the off-broadside angle toward the
/// transmitter, unit(tx − p_n)·n̂; `u_sca[n]` likewise toward the receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGeometry {
    pub r_inc: Vec<f64>,
    pub r_sca: Vec<f64>,
    pub u_inc: Vec<f64>,
    pub u_sca: Vec<f64>,
}

impl LinkGeometry {
    pub fn len(&self) -> usize {
        self.r_inc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_inc.is_empty()
    }

    /// The same link with transmitter and receiver exchanged.
    pub fn swapped(&self) -> LinkGeometry {
        LinkGeometry {
            r_inc: self.r_sca.clone(),
            r_sca: self.r_inc.clone(),
            u_inc: self.u_sca.clone(),
            u_sca: self.u_inc.clone(),
        }
    }
}

fn element_rays(ris: &RisArray, terminal: Vec3, label: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let normal = ris.normal();
    let height = (terminal - ris.origin()).dot(normal);
    if !(height > 0.0) {
        return Err(Error::Geometry(format!(
            "{label} must be strictly in front of the RIS plane (height along normal = {height} m)"
        )));
    }
    let mut dist = Vec::with_capacity(ris.len());
    let mut cosines = Vec::with_capacity(ris.len());
    for &p in ris.positions() {
        let d = terminal - p;
        let r = d.norm();
        if !(r > 0.0) {
            return Err(Error::Geometry(format!(
                "{label} coincides with an element"
            )));
        }
        dist.push(r);
        cosines.push(d.dot(normal) / r);
    }
    Ok((dist, cosines))
}

pub fn link_geometry(
    ris: &RisArray,
    tx: &TerminalPlacement,
    rx: &TerminalPlacement,
) -> Result<LinkGeometry> {
    let (r_inc, u_inc) = element_rays(ris, tx.position(), "transmitter")?;
    let (r_sca, u_sca) = element_rays(ris, rx.position(), "receiver")?;
    Ok(LinkGeometry {
        r_inc,
        r_sca,
        u_inc,
        u_sca,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn single_element_grid() {
        let g = build_square_grid(1, 1, 0.5).unwrap();
        assert_eq!(g.positions(), &[Vec3::ZERO]);
        assert_eq!(g.area(), 0.25);
    }

    #[test]
    fn two_by_two_grid_is_symmetric() {
        let g = build_square_grid(2, 2, 1.0).unwrap();
        let expected = [
            Vec3::new(-0.5, -0.5, 0.0),
            Vec3::new(-0.5, 0.5, 0.0),
            Vec3::new(0.5, -0.5, 0.0),
            Vec3::new(0.5, 0.5, 0.0),
        ];
        assert_eq!(g.positions(), &expected);
        assert_eq!(g.area(), 4.0);
    }

    #[test]
    fn large_grid_count_and_area() {
        let lambda = 1.0;
        let g = build_square_grid(200, 200, lambda / 2.0).unwrap();
        // independent construction: count by nested loop, area from side length
        let mut count = 0usize;
        for _ in 0..200 {
            for _ in 0..200 {
                count += 1;
            }
        }
        assert_eq!(g.len(), count);
        assert_eq!(g.len(), 40_000);
        let (sx, sy) = g.side_lengths();
        assert_eq!((sx, sy), (100.0, 100.0));
        assert!((g.area() - sx * sy).abs() < 1e-9);
        assert!((g.area() - 1e4 * lambda * lambda).abs() < 1e-9);
    }

    #[test]
    fn nearest_neighbor_distance_equals_spacing() {
        let g = build_square_grid(3, 4, 0.37).unwrap();
        let p = g.positions();
        assert!(((p[1] - p[0]).norm() - 0.37).abs() < 1e-15);
        assert!(((p[4] - p[0]).norm() - 0.37).abs() < 1e-15);
        assert!(p.iter().all(|q| q.z == 0.0));
    }

    #[test]
    fn rejects_bad_grid_dimensions() {
        assert!(matches!(
            build_square_grid(0, 3, 1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            build_square_grid(3, 0, 1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            build_square_grid(3, 3, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            build_square_grid(3, 3, -1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn broadside_single_element() {
        let g = build_square_grid(1, 1, 0.5).unwrap();
        let tx = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, 100.0)).unwrap();
        let rx = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, 50.0)).unwrap();
        let lg = link_geometry(&g, &tx, &rx).unwrap();
        assert_eq!(lg.r_inc, vec![100.0]);
        assert_eq!(lg.r_sca, vec![50.0]);
        assert_eq!(lg.u_inc, vec![1.0]);
        assert_eq!(lg.u_sca, vec![1.0]);
    }

    #[test]
    fn polar_off_broadside() {
        let g = build_square_grid(1, 1, 0.5).unwrap();
        let tx = TerminalPlacement::polar(100.0, 60f64.to_radians(), 0.0).unwrap();
        let rx = TerminalPlacement::polar(100.0, 0.0, 0.0).unwrap();
        let lg = link_geometry(&g, &tx, &rx).unwrap();
        assert!((lg.u_inc[0] - 0.5).abs() < 1e-15);
        assert!((lg.r_inc[0] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_distances_on_small_grid() {
        let g = build_square_grid(2, 2, 0.5).unwrap();
        let tx = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, 10.0)).unwrap();
        let lg = link_geometry(&g, &tx, &tx).unwrap();
        let expected = (100.0f64 + 2.0 * 0.25 * 0.25).sqrt();
        for &r in &lg.r_inc {
            assert!((r - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_terminal_in_or_behind_plane() {
        let g = build_square_grid(2, 2, 0.5).unwrap();
        let ok = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, 10.0)).unwrap();
        let in_plane = TerminalPlacement::cartesian(Vec3::new(5.0, 0.0, 0.0)).unwrap();
        let behind = TerminalPlacement::cartesian(Vec3::new(0.0, 0.0, -1.0)).unwrap();
        assert!(matches!(
            link_geometry(&g, &in_plane, &ok),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            link_geometry(&g, &ok, &behind),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            TerminalPlacement::polar(10.0, PI / 2.0, 0.0),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn far_terminal_cosines_converge() {
        let g = build_square_grid(10, 10, 0.5).unwrap();
        let spread = |r: f64| {
            let tx = TerminalPlacement::polar(r, 0.4, 0.3).unwrap();
            let lg = link_geometry(&g, &tx, &tx).unwrap();
            let max = lg.u_inc.iter().cloned().fold(f64::MIN, f64::max);
            let min = lg.u_inc.iter().cloned().fold(f64::MAX, f64::min);
            max - min
        };
        let s = [spread(1e2), spread(1e4), spread(1e6)];
        assert!(s[0] > s[1] && s[1] > s[2]);
        assert!(s[2] < 1e-5);
    }

    fn rotation(a: f64, b: f64, c: f64) -> Rotation {
        let (sa, ca) = a.sin_cos();
        let (sb, cb) = b.sin_cos();
        let (sc, cc) = c.sin_cos();
        let rz = [[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]];
        let ry = [[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]];
        let rx = [[1.0, 0.0, 0.0], [0.0, cc, -sc], [0.0, sc, cc]];
        mat_mul(&mat_mul(&rz, &ry), &rx)
    }

    fn mat_mul(a: &Rotation, b: &Rotation) -> Rotation {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }

    proptest! {
        #[test]
        fn polar_distance_preserved(r in 1e-3f64..1e6, psi in 0.0f64..1.57, az in -PI..PI) {
            let p = TerminalPlacement::polar(r, psi, az).unwrap().position();
            prop_assert!((p.norm() - r).abs() <= 1e-12 * r);
        }

        #[test]
        fn swap_is_exact(
            rows in 1usize..6, cols in 1usize..6,
            r1 in 1.0f64..100.0, p1 in 0.0f64..1.4, a1 in -PI..PI,
            r2 in 1.0f64..100.0, p2 in 0.0f64..1.4, a2 in -PI..PI,
        ) {
            let g = build_square_grid(rows, cols, 0.5).unwrap();
            let tx = TerminalPlacement::polar(r1, p1, a1).unwrap();
            let rx = TerminalPlacement::polar(r2, p2, a2).unwrap();
            let fwd = link_geometry(&g, &tx, &rx).unwrap();
            let rev = link_geometry(&g, &rx, &tx).unwrap();
            prop_assert_eq!(fwd.swapped(), rev);
        }

        #[test]
        fn rigid_motion_invariance(
            a in -PI..PI, b in -PI..PI, c in -PI..PI,
            sx in -50.0f64..50.0, sy in -50.0f64..50.0, sz in -50.0f64..50.0,
            psi in 0.0f64..1.3, r in 5.0f64..200.0,
        ) {
            let g = build_square_grid(4, 3, 0.5).unwrap();
            let tx = TerminalPlacement::polar(r, psi, 0.2).unwrap();
            let rx = TerminalPlacement::polar(2.0 * r, psi / 2.0, -1.0).unwrap();
            let base = link_geometry(&g, &tx, &rx).unwrap();

            let rot = rotation(a, b, c);
            let shift = Vec3::new(sx, sy, sz);
            let moved = g.transformed(&rot, shift);
            let tx2 = TerminalPlacement::cartesian(rotate(&rot, tx.position()) + shift).unwrap();
            let rx2 = TerminalPlacement::cartesian(rotate(&rot, rx.position()) + shift).unwrap();
            let other = link_geometry(&moved, &tx2, &rx2).unwrap();
            let close = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-10 * p.abs().max(1e-3));
            prop_assert!(close(&base.r_inc, &other.r_inc));
            prop_assert!(close(&base.r_sca, &other.r_sca));
            prop_assert!(close(&base.u_inc, &other.u_inc));
            prop_assert!(close(&base.u_sca, &other.u_sca));
        }
    }
}
