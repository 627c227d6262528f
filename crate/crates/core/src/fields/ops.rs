//! Gradient, divergence and curl, analytic when a handle is registered and
//! fourth-order central differences otherwise.

use super::{ScalarField, VectorField};
use crate::error::{Error, Result};

/// Relative step of the finite-difference fallback.
pub const FD_STEP: f64 = 1e-6;

#[inline]
fn step(x: f64) -> f64 {
    FD_STEP.max(FD_STEP * x.abs())
}

/// `∂g/∂x_axis` at `x` by the five-point stencil.
pub fn partial<F: FnMut(&[f64]) -> f64>(mut g: F, x: &[f64], axis: usize) -> f64 {
    let h = step(x[axis]);
    let mut p = x.to_vec();
    let mut at = |offset: f64| {
        p[axis] = x[axis] + offset;
        g(&p)
    };
    let (f2, f1, b1, b2) = (at(2.0 * h), at(h), at(-h), at(-2.0 * h));
    (-f2 + 8.0 * f1 - 8.0 * b1 + b2) / (12.0 * h)
}

/// `∂F_component/∂x_axis` at `x` by the five-point stencil.
pub fn vector_partial(field: &VectorField, x: &[f64], component: usize, axis: usize) -> f64 {
    let mut out = vec![0.0; field.dim()];
    partial(
        |p| {
            field.eval(p, &mut out);
            out[component]
        },
        x,
        axis,
    )
}

/// ∇f at `x`.
pub fn gradient(f: &ScalarField, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; f.dim()];
    match f.gradient_handle() {
        Some(g) => g(x, &mut out),
        None => {
            for (axis, o) in out.iter_mut().enumerate() {
                *o = partial(|p| f.eval(p), x, axis);
            }
        }
    }
    out
}

/// ∇·F at `x`.
pub fn divergence(field: &VectorField, x: &[f64]) -> f64 {
    match field.divergence_handle() {
        Some(d) => d(x),
        None => (0..field.dim())
            .map(|j| vector_partial(field, x, j, j))
            .sum(),
    }
}

/// ∇×F at `x` for a three-dimensional field.
pub fn curl(field: &VectorField, x: &[f64]) -> Result<[f64; 3]> {
    if field.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: field.dim(),
        });
    }
    if let Some(c) = field.curl_handle() {
        let mut out = [0.0; 3];
        c(x, &mut out);
        return Ok(out);
    }
    let d = |component, axis| vector_partial(field, x, component, axis);
    Ok([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)])
}

/// `∂Q/∂x − ∂P/∂y` for a planar field `F = (P, Q)`.
pub fn planar_curl(field: &VectorField, x: &[f64]) -> Result<f64> {
    if field.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: field.dim(),
        });
    }
    if let Some(c) = field.curl_handle() {
        let mut out = [0.0; 1];
        c(x, &mut out);
        return Ok(out[0]);
    }
    Ok(vector_partial(field, x, 1, 0) - vector_partial(field, x, 0, 1))
}
