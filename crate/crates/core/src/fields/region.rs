use std::fmt;
use std::sync::Arc;

use super::{partial, sample_points, ParametricSurface, Path, ScalarFn, VectorFn};
use crate::error::{Error, Result};
use crate::geometry::BoxDomain;

/// Oriented boundary of a parametric region: closed curves with the
/// region on their left (planar regions) or surfaces with outward
/// normals (solids).
#[derive(Debug, Clone)]
pub enum Boundary {
    Curves(Vec<Path>),
    Surfaces(Vec<ParametricSurface>),
}

impl Boundary {
    pub fn len(&self) -> usize {
        match self {
            Boundary::Curves(c) => c.len(),
            Boundary::Surfaces(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A region of ℝ² or ℝ³ given as the image `Φ(B)` of a parameter box.
#[derive(Clone)]
pub struct ParametricRegion {
    param_box: BoxDomain,
    map: Arc<VectorFn>,
    jac_det: Arc<ScalarFn>,
    boundary: Boundary,
}

impl fmt::Debug for ParametricRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricRegion")
            .field("param_box", &self.param_box)
            .field("boundary", &self.boundary)
            .finish()
    }
}

impl ParametricRegion {
    pub fn new(
        param_box: BoxDomain,
        map: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
        jac_det: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        boundary: Boundary,
    ) -> Result<Self> {
        let dim = param_box.dim();
        let expected_kind = match (&boundary, dim) {
            (Boundary::Curves(c), 2) => c.iter().all(|p| p.dim() == 2),
            (Boundary::Surfaces(_), 3) => true,
            _ => false,
        };
        if !expected_kind {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: match &boundary {
                    Boundary::Curves(_) => 2,
                    Boundary::Surfaces(_) => 3,
                },
            });
        }
        Ok(Self {
            param_box,
            map: Arc::new(map),
            jac_det: Arc::new(jac_det),
            boundary,
        })
    }

    /// The box itself, mapped by the identity.
    pub fn identity(param_box: BoxDomain, boundary: Boundary) -> Result<Self> {
        Self::new(
            param_box,
            |p, out| out.copy_from_slice(p),
            |_| 1.0,
            boundary,
        )
    }

    pub fn dim(&self) -> usize {
        self.param_box.dim()
    }

    pub fn param_box(&self) -> &BoxDomain {
        &self.param_box
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    #[inline]
    pub fn map(&self, params: &[f64], out: &mut [f64]) {
        (self.map)(params, out)
    }

    #[inline]
    pub fn jac_det(&self, params: &[f64]) -> f64 {
        (self.jac_det)(params)
    }

    /// Check `jac_det ≥ 0` and its agreement with the finite-difference
    /// determinant of the map at `samples` parameter points.
    pub fn check_jacobian(&self, samples: usize, seed: u64) -> Result<()> {
        let n = self.dim();
        for p in sample_points(&self.param_box, samples, seed) {
            let j = self.jac_det(&p);
            if !(j >= 0.0) {
                return Err(Error::FieldCheck(format!("negative Jacobian {j} at {p:?}")));
            }
            let mut out = vec![0.0; n];
            let mut jac = vec![vec![0.0; n]; n];
            for (r, row) in jac.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    *entry = partial(
                        |q| {
                            self.map(q, &mut out);
                            out[r]
                        },
                        &p,
                        c,
                    );
                }
            }
            let fd = determinant(&jac).abs();
            if (fd - j).abs() > 1e-5 * (1.0 + j) {
                return Err(Error::FieldCheck(format!(
                    "Jacobian handle {j} disagrees with finite differences {fd} at {p:?}"
                )));
            }
        }
        Ok(())
    }
}

fn determinant(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("regions are planar or spatial"),
    }
}
