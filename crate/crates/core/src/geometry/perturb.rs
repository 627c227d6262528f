use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::domain::{symmetric_difference, BoxDomain};
use super::partition::{cell_box, Partition};
use crate::error::{Error, Result};

/// A distorted copy `Ĩ₁..Ĩ_m` of a partition's cells.
///
/// Tags stay those of the base partition and are guaranteed to lie in
/// `I_k ∩ Ĩ_k`. Symmetric-difference measures are computed per cell from
/// per-axis overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedPartition {
    base: Partition,
    breakpoints: Vec<Vec<f64>>,
    measures: Vec<f64>,
    symdiff: Vec<f64>,
    symdiff_total: f64,
    gamma: f64,
    amplitudes: Vec<f64>,
}

impl PerturbedPartition {
    /// Jitter every interior breakpoint of `base` independently.
    ///
    /// On axis `i` the shift is uniform in `[−h, h]` with
    /// `h = gamma · min(λ(P)², g_min/2)`, `g_min` being the smallest gap on
    /// that axis. Shifts are clamped so that every tag stays inside its
    /// perturbed cell. Axis endpoints never move.
    pub fn jitter(base: &Partition, gamma: f64, seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidGamma(gamma));
        }
        let lambda2 = base.mesh() * base.mesh();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amplitudes = Vec::with_capacity(base.dim());
        let mut perturbed = Vec::with_capacity(base.dim());
        for axis in 0..base.dim() {
            let b = base.breakpoints(axis);
            let g_min = b
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            let h = gamma * lambda2.min(0.5 * g_min);
            let (lo_tag, hi_tag) = tag_extents(base, axis);
            let mut out = b.to_vec();
            for j in 1..b.len() - 1 {
                let shift = h * rng.gen_range(-1.0..=1.0);
                // tags of segment j-1 must stay left of the breakpoint, tags
                // of segment j right of it
                out[j] = (b[j] + shift).clamp(hi_tag[j - 1], lo_tag[j]);
            }
            amplitudes.push(h);
            perturbed.push(out);
        }
        let mut pp = Self::from_breakpoints(base, perturbed)?;
        pp.gamma = gamma;
        pp.amplitudes = amplitudes;
        Ok(pp)
    }

    /// Perturbed cells given directly as breakpoints, one list per axis
    /// with the same segment counts as `base`.
    ///
    /// Fails with [`Error::TagEscape`] when some base tag falls outside its
    /// perturbed cell.
    pub fn from_breakpoints(base: &Partition, breakpoints: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                got: breakpoints.len(),
            });
        }
        for (axis, (b, orig)) in breakpoints.iter().zip(base.all_breakpoints()).enumerate() {
            if b.len() != orig.len() {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: format!("expected {} breakpoints, got {}", orig.len(), b.len()),
                });
            }
            if b.iter().any(|x| !x.is_finite()) || b.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::InvalidBreakpoints {
                    axis,
                    reason: "perturbed breakpoints must be finite and strictly increasing".into(),
                });
            }
        }

        let n = base.dim();
        let m = base.len();
        let mut measures = Vec::with_capacity(m);
        let mut symdiff = Vec::with_capacity(m);
        for k in 0..m {
            let tag = base.tag(k);
            let mut unchanged = true;
            let mut tilde = 1.0;
            let mut overlap = 1.0;
            for axis in 0..n {
                let j = base.axis_index(k, axis);
                let (lo, hi) = (base.breakpoints(axis)[j], base.breakpoints(axis)[j + 1]);
                let (plo, phi) = (breakpoints[axis][j], breakpoints[axis][j + 1]);
                if !(plo <= tag[axis] && tag[axis] <= phi) {
                    return Err(Error::TagEscape { cell: k });
                }
                unchanged &= lo == plo && hi == phi;
                tilde *= phi - plo;
                overlap *= (hi.min(phi) - lo.max(plo)).max(0.0);
            }
            let base_measure = base.measure(k);
            if unchanged {
                measures.push(base_measure);
                symdiff.push(0.0);
            } else {
                measures.push(tilde);
                symdiff.push(symmetric_difference(base_measure, tilde, overlap));
            }
        }
        let symdiff_total = crate::compensated::sum(&symdiff);
        Ok(Self {
            base: base.clone(),
            breakpoints,
            measures,
            symdiff,
            symdiff_total,
            gamma: 0.0,
            amplitudes: vec![0.0; n],
        })
    }

    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.measures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measures.is_empty()
    }

    pub fn breakpoints(&self, axis: usize) -> &[f64] {
        &self.breakpoints[axis]
    }

    /// Perturbed cell `Ĩ_k`.
    pub fn perturbed_cell(&self, cell: usize) -> BoxDomain {
        cell_box(&self.breakpoints, &self.base.multi_index(cell))
    }

    /// `m(Ĩ_k)`; equals the base measure bitwise for untouched cells.
    pub fn measure(&self, cell: usize) -> f64 {
        self.measures[cell]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    /// `m(I_k △ Ĩ_k)`.
    pub fn symdiff(&self, cell: usize) -> f64 {
        self.symdiff[cell]
    }

    pub fn symdiffs(&self) -> &[f64] {
        &self.symdiff
    }

    /// `Σ_k m(I_k △ Ĩ_k)`.
    pub fn symdiff_total(&self) -> f64 {
        self.symdiff_total
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Jitter half-width `h` used on `axis` (zero for explicit breakpoints).
    pub fn jitter_amplitude(&self, axis: usize) -> f64 {
        self.amplitudes[axis]
    }

    /// λ(P̃), the largest perturbed cell diameter.
    pub fn mesh(&self) -> f64 {
        self.breakpoints
            .iter()
            .map(|b| {
                let g = b.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
                g * g
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Per-segment (min, max) of tag coordinates along `axis`.
fn tag_extents(p: &Partition, axis: usize) -> (Vec<f64>, Vec<f64>) {
    let segments = p.breakpoints(axis).len() - 1;
    let mut lo = vec![f64::INFINITY; segments];
    let mut hi = vec![f64::NEG_INFINITY; segments];
    for k in 0..p.len() {
        let j = p.axis_index(k, axis);
        let x = p.tag(k)[axis];
        lo[j] = lo[j].min(x);
        hi[j] = hi[j].max(x);
    }
    (lo, hi)
}
