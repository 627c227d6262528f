//! Standard curves, surfaces and regions used by the built-in scenarios.

use std::f64::consts::PI;

use super::{Boundary, ParametricRegion, ParametricSurface, Path};
use crate::geometry::BoxDomain;

/// Unit circle, counter-clockwise, `t ∈ [0, 2π]`.
pub fn unit_circle() -> Path {
    Path::new(
        (0.0, 2.0 * PI),
        2,
        |t, out| {
            out[0] = t.cos();
            out[1] = t.sin();
        },
        |t, out| {
            out[0] = -t.sin();
            out[1] = t.cos();
        },
    )
    .and_then(Path::closed)
    .expect("unit circle")
}

/// Unit circle in the plane `z = 0`, counter-clockwise seen from `+z`.
pub fn unit_circle_3d() -> Path {
    Path::new(
        (0.0, 2.0 * PI),
        3,
        |t, out| {
            out[0] = t.cos();
            out[1] = t.sin();
            out[2] = 0.0;
        },
        |t, out| {
            out[0] = -t.sin();
            out[1] = t.cos();
            out[2] = 0.0;
        },
    )
    .and_then(Path::closed)
    .expect("unit circle")
}

/// Straight segment from `from` to `to`, `t ∈ [0, 1]`.
pub fn segment(from: &[f64], to: &[f64]) -> Path {
    let (p, q) = (from.to_vec(), to.to_vec());
    let d: Vec<f64> = q.iter().zip(&p).map(|(b, a)| b - a).collect();
    let d2 = d.clone();
    Path::new(
        (0.0, 1.0),
        p.len(),
        move |t, out| {
            for i in 0..out.len() {
                out[i] = p[i] + t * d[i];
            }
        },
        move |_, out| out.copy_from_slice(&d2),
    )
    .expect("segment")
}

/// Boundary of `[0,1]²`, counter-clockwise from the origin, `t ∈ [0, 4]`
/// with corners at `t = 1, 2, 3`.
pub fn unit_square_boundary() -> Path {
    Path::new(
        (0.0, 4.0),
        2,
        |t, out| {
            let (x, y) = if t < 1.0 {
                (t, 0.0)
            } else if t < 2.0 {
                (1.0, t - 1.0)
            } else if t < 3.0 {
                (3.0 - t, 1.0)
            } else {
                (0.0, 4.0 - t)
            };
            out[0] = x;
            out[1] = y;
        },
        |t, out| {
            let (x, y) = if t < 1.0 {
                (1.0, 0.0)
            } else if t < 2.0 {
                (0.0, 1.0)
            } else if t < 3.0 {
                (-1.0, 0.0)
            } else {
                (0.0, -1.0)
            };
            out[0] = x;
            out[1] = y;
        },
    )
    .and_then(Path::closed)
    .expect("square boundary")
    .with_corners(vec![1.0, 2.0, 3.0])
}

/// Unit square as an identity region.
pub fn unit_square() -> ParametricRegion {
    ParametricRegion::identity(
        BoxDomain::unit(2).expect("box"),
        Boundary::Curves(vec![unit_square_boundary()]),
    )
    .expect("unit square")
}

/// Unit disk in polar coordinates `(r, θ) ∈ [0,1] × [0,2π]`, Jacobian `r`.
pub fn unit_disk() -> ParametricRegion {
    ParametricRegion::new(
        BoxDomain::new(&[(0.0, 1.0), (0.0, 2.0 * PI)]).expect("box"),
        |p, out| {
            out[0] = p[0] * p[1].cos();
            out[1] = p[0] * p[1].sin();
        },
        |p| p[0],
        Boundary::Curves(vec![unit_circle()]),
    )
    .expect("unit disk")
}

/// Unit sphere, `u = θ ∈ [0, π]` (polar), `v = φ ∈ [0, 2π]`, outward normal.
pub fn unit_sphere() -> ParametricSurface {
    sphere_cap(PI)
}

/// Upper unit hemisphere with outward (upward) normal; its boundary is the
/// counter-clockwise unit circle in `z = 0`.
pub fn upper_hemisphere() -> ParametricSurface {
    sphere_cap(0.5 * PI)
}

fn sphere_cap(theta_max: f64) -> ParametricSurface {
    ParametricSurface::new(
        BoxDomain::new(&[(0.0, theta_max), (0.0, 2.0 * PI)]).expect("box"),
        |u, v| [u.sin() * v.cos(), u.sin() * v.sin(), u.cos()],
        |u, v| [u.cos() * v.cos(), u.cos() * v.sin(), -u.sin()],
        |u, v| [-u.sin() * v.sin(), u.sin() * v.cos(), 0.0],
    )
    .expect("sphere")
}

/// Unit disk in `z = 0` in polar coordinates, normal `+z`.
pub fn flat_disk() -> ParametricSurface {
    ParametricSurface::new(
        BoxDomain::new(&[(0.0, 1.0), (0.0, 2.0 * PI)]).expect("box"),
        |r, t| [r * t.cos(), r * t.sin(), 0.0],
        |_, t| [t.cos(), t.sin(), 0.0],
        |r, t| [-r * t.sin(), r * t.cos(), 0.0],
    )
    .expect("disk")
}

/// `[0,1]²` in the plane `z = 0`, normal `+z`.
pub fn flat_square_patch() -> ParametricSurface {
    ParametricSurface::new(
        BoxDomain::unit(2).expect("box"),
        |u, v| [u, v, 0.0],
        |_, _| [1.0, 0.0, 0.0],
        |_, _| [0.0, 1.0, 0.0],
    )
    .expect("patch")
}

/// Unit ball in spherical coordinates `(r, θ, φ)`, Jacobian `r² sin θ`.
pub fn unit_ball() -> ParametricRegion {
    ParametricRegion::new(
        BoxDomain::new(&[(0.0, 1.0), (0.0, PI), (0.0, 2.0 * PI)]).expect("box"),
        |p, out| {
            let (r, th, ph) = (p[0], p[1], p[2]);
            out[0] = r * th.sin() * ph.cos();
            out[1] = r * th.sin() * ph.sin();
            out[2] = r * th.cos();
        },
        |p| p[0] * p[0] * p[1].sin(),
        Boundary::Surfaces(vec![unit_sphere()]),
    )
    .expect("unit ball")
}

/// The six faces of `[0,1]³`, each with outward normal.
pub fn unit_cube_faces() -> Vec<ParametricSurface> {
    let unit = || BoxDomain::unit(2).expect("box");
    let face = |pos: fn(f64, f64) -> [f64; 3], du: [f64; 3], dv: [f64; 3]| {
        ParametricSurface::new(unit(), pos, move |_, _| du, move |_, _| dv).expect("face")
    };
    vec![
        face(|u, v| [1.0, u, v], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
        face(|u, v| [0.0, v, u], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]),
        face(|u, v| [v, 1.0, u], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
        face(|u, v| [u, 0.0, v], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
        face(|u, v| [u, v, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        face(|u, v| [v, u, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]),
    ]
}

/// `[0,1]³` as an identity region bounded by its six faces.
pub fn unit_cube() -> ParametricRegion {
    ParametricRegion::identity(
        BoxDomain::unit(3).expect("box"),
        Boundary::Surfaces(unit_cube_faces()),
    )
    .expect("unit cube")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_faces_point_outward() {
        for face in unit_cube_faces() {
            assert!(face.check_derivatives(20, 0).is_ok());
            let x = face.pos(0.5, 0.5);
            let n = face.normal(0.5, 0.5);
            let outward: f64 = (0..3).map(|i| (x[i] - 0.5) * n[i]).sum();
            assert!(outward > 0.0, "face at {x:?} has normal {n:?}");
        }
    }

    #[test]
    fn square_boundary_corners() {
        let b = unit_square_boundary();
        assert_eq!(b.corners(), &[1.0, 2.0, 3.0]);
        assert_eq!(b.position(2.5), vec![0.5, 1.0]);
        assert!(b.check_derivatives(200, 9).is_ok());
    }

    #[test]
    fn hemisphere_and_disk_derivatives() {
        assert!(upper_hemisphere().check_derivatives(500, 2).is_ok());
        assert!(flat_disk().check_derivatives(500, 2).is_ok());
        assert!(unit_circle_3d().check_derivatives(100, 2).is_ok());
    }
}
