//! Problem definition: marginals, cost functions, and point samplers.
//!
//! The domain is planar. Facility indices are 0-based throughout the code;
//! bit `k` of any mask refers to facility `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{DetRng, RngStream};
use crate::scalar::{cast, Scalar};

/// Width bound for choice-set bitmasks (and the subset-enumeration budget).
pub const MAX_FACILITIES: usize = 24;

/// Tolerance on probability vectors summing to one.
pub const PROB_SUM_TOL: f64 = 1e-9;

/// Retry cap per point for truncated-mixture rejection sampling.
pub const REJECTION_CAP: u64 = 1_000_000;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect<S> {
    pub x0: S,
    pub y0: S,
    pub x1: S,
    pub y1: S,
}

impl<S: Scalar> Rect<S> {
    pub fn new(x0: S, y0: S, x1: S, y1: S) -> Self {
        Self { x0, y0, x1, y1 }
    }

    /// Unit square `[0,1]^2`.
    pub fn unit() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::one())
    }

    pub fn width(&self) -> S {
        self.x1 - self.x0
    }

    pub fn height(&self) -> S {
        self.y1 - self.y0
    }

    pub fn contains(&self, p: Point<S>) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    fn validate(&self) -> Result<()> {
        for v in [self.x0, self.y0, self.x1, self.y1] {
            if !v.is_finite() {
                return Err(Error::InvalidInstance("rect coordinates must be finite".into()));
            }
        }
        if !(self.width() > S::zero() && self.height() > S::zero()) {
            return Err(Error::InvalidInstance("rect must have positive area".into()));
        }
        Ok(())
    }
}

/// Ground cost family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostKind {
    Euclidean,
    L1,
    SquaredEuclidean,
}

/// Cost specification: a metric kind plus fixed facility locations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSpec<S> {
    pub kind: CostKind,
    pub facilities: Vec<Point<S>>,
}

impl<S: Scalar> CostSpec<S> {
    pub fn new(kind: CostKind, facilities: Vec<Point<S>>) -> Result<Self> {
        let spec = Self { kind, facilities };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.facilities.is_empty() {
            return Err(Error::InvalidInstance("at least one facility required".into()));
        }
        if self.facilities.len() > MAX_FACILITIES {
            return Err(Error::InvalidInstance(format!(
                "facility count {} exceeds bitmask bound {MAX_FACILITIES}",
                self.facilities.len()
            )));
        }
        if !self.facilities.iter().all(Point::is_finite) {
            return Err(Error::InvalidInstance("facility coordinates must be finite".into()));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.facilities.len()
    }

    /// Cost of serving `x` from facility `index`.
    pub fn cost(&self, x: Point<S>, index: usize) -> Result<S> {
        if index >= self.facilities.len() {
            return Err(Error::IndexOutOfRange {
                index,
                k: self.facilities.len(),
            });
        }
        Ok(self.cost_unchecked(x, index))
    }

    #[inline]
    pub(crate) fn cost_unchecked(&self, x: Point<S>, index: usize) -> S {
        let f = self.facilities[index];
        let dx = x.x - f.x;
        let dy = x.y - f.y;
        match self.kind {
            CostKind::Euclidean => (dx * dx + dy * dy).sqrt(),
            CostKind::L1 => dx.abs() + dy.abs(),
            CostKind::SquaredEuclidean => dx * dx + dy * dy,
        }
    }

    /// Fill `out` with the costs of all facilities at `x`.
    #[inline]
    pub fn costs_into(&self, x: Point<S>, out: &mut [S]) {
        debug_assert_eq!(out.len(), self.facilities.len());
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.cost_unchecked(x, k);
        }
    }

    pub fn costs_at(&self, x: Point<S>) -> Vec<S> {
        let mut out = vec![S::zero(); self.facilities.len()];
        self.costs_into(x, &mut out);
        out
    }
}

/// One isotropic Gaussian mixture component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent<S> {
    pub weight: S,
    pub mean: Point<S>,
    pub std_dev: S,
}

/// Sampling distribution of the continuous marginal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerSpec<S> {
    /// Uniform density on a rectangle.
    UniformRect { rect: Rect<S> },
    /// Isotropic Gaussian mixture truncated to `rect` by rejection.
    GaussianMixtureTruncated {
        rect: Rect<S>,
        components: Vec<MixtureComponent<S>>,
    },
}

impl<S: Scalar> SamplerSpec<S> {
    pub fn validate(&self) -> Result<()> {
        match self {
            SamplerSpec::UniformRect { rect } => rect.validate(),
            SamplerSpec::GaussianMixtureTruncated { rect, components } => {
                rect.validate()?;
                if components.is_empty() {
                    return Err(Error::InvalidInstance("mixture needs at least one component".into()));
                }
                let mut total = S::zero();
                for c in components {
                    if !(c.weight > S::zero()) {
                        return Err(Error::InvalidInstance("mixture weights must be positive".into()));
                    }
                    if !(c.std_dev > S::zero()) {
                        return Err(Error::InvalidInstance("mixture std-devs must be positive".into()));
                    }
                    if !c.mean.is_finite() {
                        return Err(Error::InvalidInstance("mixture means must be finite".into()));
                    }
                    total += c.weight;
                }
                if (total - S::one()).abs() > cast(PROB_SUM_TOL) {
                    return Err(Error::InvalidInstance("mixture weights must sum to 1".into()));
                }
                Ok(())
            }
        }
    }

    /// The support rectangle (truncation domain for the mixture kind).
    pub fn domain(&self) -> Rect<S> {
        match self {
            SamplerSpec::UniformRect { rect } => *rect,
            SamplerSpec::GaussianMixtureTruncated { rect, .. } => *rect,
        }
    }

    /// Draw one point; `point_index` only labels the rejection-cap error.
    pub(crate) fn sample_one(&self, rng: &mut DetRng, point_index: usize) -> Result<Point<S>> {
        match self {
            SamplerSpec::UniformRect { rect } => {
                let ux: S = rng.uniform01();
                let uy: S = rng.uniform01();
                Ok(Point::new(rect.x0 + ux * rect.width(), rect.y0 + uy * rect.height()))
            }
            SamplerSpec::GaussianMixtureTruncated { rect, components } => {
                for _ in 0..REJECTION_CAP {
                    let u: S = rng.uniform01();
                    let mut acc = S::zero();
                    let mut chosen = components.len() - 1;
                    for (i, c) in components.iter().enumerate() {
                        acc += c.weight;
                        if u < acc {
                            chosen = i;
                            break;
                        }
                    }
                    let c = &components[chosen];
                    let (z1, z2): (S, S) = rng.normal_pair();
                    let p = Point::new(c.mean.x + c.std_dev * z1, c.mean.y + c.std_dev * z2);
                    if rect.contains(p) {
                        return Ok(p);
                    }
                }
                Err(Error::RejectionCapExceeded {
                    point_index,
                    cap: REJECTION_CAP,
                })
            }
        }
    }

    /// Draw `n` points. Deterministic given the stream; all points lie in
    /// the sampler's domain.
    pub fn sample_points(&self, n: usize, stream: RngStream) -> Result<Vec<Point<S>>> {
        assert!(n >= 1, "sample count must be at least 1");
        let mut rng = stream.rng();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.sample_one(&mut rng, i)?);
        }
        Ok(out)
    }
}

/// A complete problem instance: facility marginals `p`, ground cost,
/// sampler for the continuous marginal, and the target level `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance<S> {
    pub p: Vec<S>,
    pub cost: CostSpec<S>,
    pub sampler: SamplerSpec<S>,
    pub alpha: S,
}

impl<S: Scalar> ProblemInstance<S> {
    pub fn new(p: Vec<S>, cost: CostSpec<S>, sampler: SamplerSpec<S>, alpha: S) -> Result<Self> {
        let inst = Self { p, cost, sampler, alpha };
        inst.validate()?;
        Ok(inst)
    }

    pub fn k(&self) -> usize {
        self.cost.k()
    }

    pub fn validate(&self) -> Result<()> {
        self.cost.validate()?;
        self.sampler.validate()?;
        if self.p.len() != self.cost.k() {
            return Err(Error::InvalidInstance(format!(
                "p has {} entries but there are {} facilities",
                self.p.len(),
                self.cost.k()
            )));
        }
        if !self.p.iter().all(|v| v.is_finite() && *v > S::zero()) {
            return Err(Error::InvalidInstance("every p_k must be positive".into()));
        }
        let total: S = self.p.iter().copied().sum();
        if (total - S::one()).abs() > cast(PROB_SUM_TOL) {
            return Err(Error::InvalidInstance(format!("p must sum to 1 (got {total})")));
        }
        if !(self.alpha > S::zero() && self.alpha < S::one()) {
            return Err(Error::InvalidInstance("alpha must lie strictly between 0 and 1".into()));
        }
        Ok(())
    }

    /// Same instance with a different target level.
    pub fn with_alpha(&self, alpha: S) -> Result<Self> {
        Self::new(self.p.clone(), self.cost.clone(), self.sampler.clone(), alpha)
    }
}
