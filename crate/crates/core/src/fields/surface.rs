use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::BoxDomain;

type PatchFn = dyn Fn(f64, f64) -> [f64; 3] + Send + Sync;

/// A parametrized surface `X: D → ℝ³` over a rectangle `D` in the
/// `(u, v)` plane, oriented by `N = ∂X/∂u × ∂X/∂v`.
#[derive(Clone)]
pub struct ParametricSurface {
    domain: BoxDomain,
    pos: Arc<PatchFn>,
    du: Arc<PatchFn>,
    dv: Arc<PatchFn>,
}

impl fmt::Debug for ParametricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricSurface")
            .field("domain", &self.domain)
            .finish()
    }
}

impl ParametricSurface {
    pub fn new(
        domain: BoxDomain,
        pos: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static,
        du: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static,
        dv: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static,
    ) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: domain.dim(),
            });
        }
        Ok(Self {
            domain,
            pos: Arc::new(pos),
            du: Arc::new(du),
            dv: Arc::new(dv),
        })
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    #[inline]
    pub fn pos(&self, u: f64, v: f64) -> [f64; 3] {
        (self.pos)(u, v)
    }

    #[inline]
    pub fn du(&self, u: f64, v: f64) -> [f64; 3] {
        (self.du)(u, v)
    }

    #[inline]
    pub fn dv(&self, u: f64, v: f64) -> [f64; 3] {
        (self.dv)(u, v)
    }

    /// `N(u, v) = ∂X/∂u × ∂X/∂v`.
    #[inline]
    pub fn normal(&self, u: f64, v: f64) -> [f64; 3] {
        cross(self.du(u, v), self.dv(u, v))
    }

    /// The same surface with `u` and `v` exchanged, which flips the normal.
    pub fn swapped(&self) -> ParametricSurface {
        let axes: Vec<(f64, f64)> = self.domain.axes().collect();
        let (pos, du, dv) = (self.pos.clone(), self.du.clone(), self.dv.clone());
        ParametricSurface {
            domain: BoxDomain::new(&[axes[1], axes[0]]).expect("valid box"),
            pos: Arc::new(move |u, v| pos(v, u)),
            du: Arc::new(move |u, v| dv(v, u)),
            dv: Arc::new(move |u, v| du(v, u)),
        }
    }

    /// Check both partial-derivative handles against central differences
    /// (`h = 1e-6`, tolerance `1e-5·(1 + |∂X|)`) at `samples` interior points.
    pub fn check_derivatives(&self, samples: usize, seed: u64) -> Result<()> {
        let h = 1e-6;
        for (u, v) in self.interior_samples(samples, seed, 2.0 * h) {
            let fd_u = sub_scaled(self.pos(u + h, v), self.pos(u - h, v), 0.5 / h);
            let fd_v = sub_scaled(self.pos(u, v + h), self.pos(u, v - h), 0.5 / h);
            for (name, analytic, fd) in [("du", self.du(u, v), fd_u), ("dv", self.dv(u, v), fd_v)] {
                let scale = 1.0 + norm3(analytic);
                if (0..3).any(|i| (analytic[i] - fd[i]).abs() > 1e-5 * scale) {
                    return Err(Error::FieldCheck(format!(
                        "surface partial {name} = {analytic:?} disagrees with finite difference {fd:?} at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Check that the normal does not vanish at `samples` interior points.
    pub fn check_regularity(&self, samples: usize, seed: u64) -> Result<()> {
        for (u, v) in self.interior_samples(samples, seed, 0.0) {
            if norm3(self.normal(u, v)) == 0.0 {
                return Err(Error::DegenerateNormal(u, v));
            }
        }
        Ok(())
    }

    fn interior_samples(&self, samples: usize, seed: u64, margin: f64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let axes: Vec<(f64, f64)> = self.domain.axes().collect();
        (0..samples)
            .map(|_| {
                let mut draw = |(lo, hi): (f64, f64)| {
                    let u: f64 = rng.gen_range(0.0..1.0);
                    lo + margin + u * (hi - lo - 2.0 * margin)
                };
                let u = draw(axes[0]);
                (u, draw(axes[1]))
            })
            .collect()
    }
}

#[inline]
pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn sub_scaled(a: [f64; 3], b: [f64; 3], s: f64) -> [f64; 3] {
    [(a[0] - b[0]) * s, (a[1] - b[1]) * s, (a[2] - b[2]) * s]
}
