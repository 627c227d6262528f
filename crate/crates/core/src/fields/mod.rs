//! Scalar and vector fields, parametrized paths, surfaces and regions.
//!
//! Every evaluation handle is a pure `Fn + Send + Sync` closure so that the
//! sum engine may evaluate cells from several threads.

mod ops;
mod path;
mod region;
pub mod shapes;
mod surface;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::BoxDomain;

pub use ops::{curl, divergence, gradient, partial, planar_curl, vector_partial, FD_STEP};
pub use path::Path;
pub use region::{Boundary, ParametricRegion};
pub use surface::ParametricSurface;

pub type ScalarFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
pub type VectorFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// Known value of `∫_domain f` used as an oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceIntegral {
    pub domain: BoxDomain,
    pub value: f64,
}

/// A real-valued function on ℝⁿ.
#[derive(Clone)]
pub struct ScalarField {
    dim: usize,
    eval: Arc<ScalarFn>,
    gradient: Option<Arc<VectorFn>>,
    bound: Option<f64>,
    reference: Option<ReferenceIntegral>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("dim", &self.dim)
            .field("analytic_gradient", &self.gradient.is_some())
            .field("bound", &self.bound)
            .field("reference", &self.reference)
            .finish()
    }
}

impl ScalarField {
    pub fn new(dim: usize, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            dim,
            eval: Arc::new(eval),
            gradient: None,
            bound: None,
            reference: None,
        }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        Self::new(dim, move |_| value)
            .with_gradient(|_, g| g.fill(0.0))
            .with_bound(value.abs())
    }

    pub fn with_gradient(mut self, g: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(g));
        self
    }

    /// Declare `sup |f| ≤ bound` on the domain of interest.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_reference(mut self, domain: BoxDomain, value: f64) -> Self {
        self.reference = Some(ReferenceIntegral { domain, value });
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub fn bound(&self) -> Option<f64> {
        self.bound
    }

    pub fn reference(&self) -> Option<&ReferenceIntegral> {
        self.reference.as_ref()
    }

    pub fn gradient_handle(&self) -> Option<&VectorFn> {
        self.gradient.as_deref()
    }

    /// Spot-check the declared bound on `samples` uniform points of `domain`.
    pub fn check_bound(&self, domain: &BoxDomain, samples: usize, seed: u64) -> Result<()> {
        let Some(bound) = self.bound else {
            return Ok(());
        };
        for x in sample_points(domain, samples, seed) {
            let v = self.eval(&x);
            if !(v.abs() <= bound) {
                return Err(Error::FieldCheck(format!(
                    "|f({x:?})| = {} exceeds declared bound {bound}",
                    v.abs()
                )));
            }
        }
        Ok(())
    }
}

/// A vector field ℝⁿ → ℝⁿ, with optional analytic divergence and curl.
///
/// For planar fields the curl handle writes the single scalar
/// `∂Q/∂x − ∂P/∂y`; for spatial fields it writes three components.
#[derive(Clone)]
pub struct VectorField {
    dim: usize,
    eval: Arc<VectorFn>,
    divergence: Option<Arc<ScalarFn>>,
    curl: Option<Arc<VectorFn>>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField")
            .field("dim", &self.dim)
            .field("analytic_divergence", &self.divergence.is_some())
            .field("analytic_curl", &self.curl.is_some())
            .finish()
    }
}

impl VectorField {
    pub fn new(dim: usize, eval: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static) -> Self {
        Self {
            dim,
            eval: Arc::new(eval),
            divergence: None,
            curl: None,
        }
    }

    /// Constant field.
    pub fn constant(value: Vec<f64>) -> Self {
        let dim = value.len();
        let curl_len = if dim == 2 { 1 } else { 3 };
        Self::new(dim, move |_, out| out.copy_from_slice(&value))
            .with_divergence(|_| 0.0)
            .with_curl(move |_, out| out[..curl_len].fill(0.0))
    }

    /// ∇f, analytic when `f` carries a gradient handle.
    pub fn gradient_of(f: &ScalarField) -> Self {
        let f = f.clone();
        let dim = f.dim();
        let curl_len = if dim == 2 { 1 } else { 3 };
        let field = Self::new(dim, move |x, out| out.copy_from_slice(&gradient(&f, x)));
        if dim == 2 || dim == 3 {
            field.with_curl(move |_, out| out[..curl_len].fill(0.0))
        } else {
            field
        }
    }

    pub fn with_divergence(mut self, d: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.divergence = Some(Arc::new(d));
        self
    }

    pub fn with_curl(mut self, c: impl Fn(&[f64], &mut [f64]) + Send + Sync + 'static) -> Self {
        self.curl = Some(Arc::new(c));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn eval(&self, x: &[f64], out: &mut [f64]) {
        (self.eval)(x, out)
    }

    pub fn eval_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval(x, &mut out);
        out
    }

    pub fn divergence_handle(&self) -> Option<&ScalarFn> {
        self.divergence.as_deref()
    }

    pub fn curl_handle(&self) -> Option<&VectorFn> {
        self.curl.as_deref()
    }

    /// Compare the analytic divergence/curl handles against finite
    /// differences at `samples` points of `domain`, componentwise with
    /// tolerance `1e-5·(1 + |analytic|)`.
    pub fn check_derivatives(&self, domain: &BoxDomain, samples: usize, seed: u64) -> Result<()> {
        for x in sample_points(domain, samples, seed) {
            if let Some(d) = self.divergence_handle() {
                let fd: f64 = (0..self.dim).map(|j| vector_partial(self, &x, j, j)).sum();
                close(d(&x), fd, "divergence", &x)?;
            }
            if let Some(c) = self.curl_handle() {
                let stripped = VectorField {
                    curl: None,
                    ..self.clone()
                };
                if self.dim == 2 {
                    let mut a = [0.0];
                    c(&x, &mut a);
                    close(a[0], planar_curl(&stripped, &x)?, "planar curl", &x)?;
                } else if self.dim == 3 {
                    let mut a = [0.0; 3];
                    c(&x, &mut a);
                    let fd = curl(&stripped, &x)?;
                    for i in 0..3 {
                        close(a[i], fd[i], "curl", &x)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn close(analytic: f64, fd: f64, what: &str, x: &[f64]) -> Result<()> {
    if (analytic - fd).abs() <= 1e-5 * (1.0 + analytic.abs()) {
        Ok(())
    } else {
        Err(Error::FieldCheck(format!(
            "{what} handle {analytic} disagrees with finite differences {fd} at {x:?}"
        )))
    }
}

/// Uniform sample points of a box from a seeded stream.
pub fn sample_points(domain: &BoxDomain, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            domain
                .axes()
                .map(|(lo, hi)| lo + rng.gen::<f64>() * (hi - lo))
                .collect()
        })
        .collect()
}
