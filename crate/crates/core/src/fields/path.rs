use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::BoxDomain;

type CurveFn = dyn Fn(f64, &mut [f64]) + Send + Sync;

/// A C¹ (or piecewise C¹) path `x: [a, b] → ℝⁿ` with its velocity.
#[derive(Clone)]
pub struct Path {
    a: f64,
    b: f64,
    dim: usize,
    pos: Arc<CurveFn>,
    vel: Arc<CurveFn>,
    closed: bool,
    corners: Vec<f64>,
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Path")
            .field("domain", &(self.a, self.b))
            .field("dim", &self.dim)
            .field("closed", &self.closed)
            .field("corners", &self.corners)
            .finish()
    }
}

impl Path {
    pub fn new(
        (a, b): (f64, f64),
        dim: usize,
        pos: impl Fn(f64, &mut [f64]) + Send + Sync + 'static,
        vel: impl Fn(f64, &mut [f64]) + Send + Sync + 'static,
    ) -> Result<Self> {
        BoxDomain::new(&[(a, b)])?;
        Ok(Self {
            a,
            b,
            dim,
            pos: Arc::new(pos),
            vel: Arc::new(vel),
            closed: false,
            corners: Vec::new(),
        })
    }

    /// Mark the path closed, checking `x(a) = x(b)` to `1e-12` relative.
    pub fn closed(mut self) -> Result<Self> {
        let (start, end) = (self.position(self.a), self.position(self.b));
        let scale = 1.0 + norm(&start).max(norm(&end));
        let gap = start
            .iter()
            .zip(&end)
            .map(|(s, e)| (s - e) * (s - e))
            .sum::<f64>()
            .sqrt();
        if gap > 1e-12 * scale {
            return Err(Error::FieldCheck(format!("closed path ends {gap} apart")));
        }
        self.closed = true;
        Ok(self)
    }

    /// Parameters where the path is only piecewise C¹. Line sums require
    /// each of them to be a partition breakpoint.
    pub fn with_corners(mut self, mut corners: Vec<f64>) -> Self {
        corners.sort_by(f64::total_cmp);
        self.corners = corners;
        self
    }

    pub fn domain(&self) -> BoxDomain {
        BoxDomain::new(&[(self.a, self.b)]).expect("validated at construction")
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn corners(&self) -> &[f64] {
        &self.corners
    }

    #[inline]
    pub fn pos(&self, t: f64, out: &mut [f64]) {
        (self.pos)(t, out)
    }

    #[inline]
    pub fn vel(&self, t: f64, out: &mut [f64]) {
        (self.vel)(t, out)
    }

    pub fn position(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.pos(t, &mut out);
        out
    }

    pub fn velocity(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.vel(t, &mut out);
        out
    }

    /// The same curve traversed backwards over the same parameter interval.
    pub fn reversed(&self) -> Path {
        let (a, b) = (self.a, self.b);
        let pos = self.pos.clone();
        let vel = self.vel.clone();
        Path {
            a,
            b,
            dim: self.dim,
            pos: Arc::new(move |t, out| pos(a + b - t, out)),
            vel: Arc::new(move |t, out| {
                vel(a + b - t, out);
                out.iter_mut().for_each(|v| *v = -*v);
            }),
            closed: self.closed,
            corners: self.corners.iter().rev().map(|&c| a + b - c).collect(),
        }
    }

    /// `s ↦ x(φ(s))` on `[s0, s1]`, where `φ` maps `[s0, s1]` monotonically
    /// onto `[a, b]` and `dphi` is its derivative.
    pub fn reparametrized(
        &self,
        (s0, s1): (f64, f64),
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Path> {
        let phi = Arc::new(phi);
        let (pos, vel) = (self.pos.clone(), self.vel.clone());
        let phi_pos = phi.clone();
        let mut path = Path::new(
            (s0, s1),
            self.dim,
            move |s, out| pos(phi_pos(s), out),
            move |s, out| {
                vel(phi(s), out);
                let d = dphi(s);
                out.iter_mut().for_each(|v| *v *= d);
            },
        )?;
        path.closed = self.closed;
        Ok(path)
    }

    /// Check the velocity handle against central differences of the
    /// position (`h = 1e-6`) at `samples` random parameters, with tolerance
    /// `1e-5·(1 + |x′(t)|)`.
    pub fn check_derivatives(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = 1e-6;
        let (mut fwd, mut back, mut v) = (
            vec![0.0; self.dim],
            vec![0.0; self.dim],
            vec![0.0; self.dim],
        );
        for _ in 0..samples {
            let t = self.a + h + rng.gen::<f64>() * (self.b - self.a - 2.0 * h);
            if self.corners.iter().any(|&c| (c - t).abs() <= 2.0 * h) {
                continue;
            }
            self.pos(t + h, &mut fwd);
            self.pos(t - h, &mut back);
            self.vel(t, &mut v);
            let speed = norm(&v);
            for i in 0..self.dim {
                let fd = (fwd[i] - back[i]) / (2.0 * h);
                if (fd - v[i]).abs() > 1e-5 * (1.0 + speed) {
                    return Err(Error::FieldCheck(format!(
                        "path velocity component {i} = {} disagrees with finite difference {fd} at t = {t}",
                        v[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
