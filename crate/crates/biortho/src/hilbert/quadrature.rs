//! Composite Gauss-Legendre quadrature on the unit interval.
//!
//! A [`QuadratureGrid`] realizes integration over `(0,1)` as a weighted sum
//! over nodes,
//!
//! ```text
//!     ∫₀¹ f(x) dx  ≈  Σ_i w_i f(x_i),
//! ```
//!
//! with `points_per_panel` Gauss-Legendre nodes mapped affinely onto each of
//! `panels` equal subintervals. The integrands handled by this crate
//! (`h^x e^{2πijx}` and polynomial-weighted trigonometric functions) are
//! entire, so the rule converges spectrally once the per-panel oscillation is
//! bounded; the default 64 x 8 rule resolves frequencies `|j| ≤ 64` to close
//! to machine precision.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::{Cplx, Scalar};

/// Shared handle to a grid; grid functions and systems hold one of these.
pub type GridRef<T> = Arc<QuadratureGrid<T>>;

/// Widen an `f64`-scale tolerance for coarser scalar types.
///
/// For `f64` this returns the tolerance unchanged; for `f32` it is scaled by
/// the epsilon ratio so construction checks remain meaningful.
pub(crate) fn widened_tol<T: Scalar>(tol_f64: f64) -> T {
    T::of(tol_f64 * (T::epsilon().as_f64() / f64::EPSILON))
}

/// Evaluate the Legendre polynomial `P_n` and its derivative at `x`.
fn legendre_with_derivative<T: Scalar>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    for k in 1..n {
        let kf = T::of(k as f64);
        let next = ((T::of(2.0) * kf + T::one()) * x * p - kf * p_prev) / (kf + T::one());
        p_prev = p;
        p = next;
    }
    let dp = T::of(n as f64) * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

/// Gauss-Legendre nodes and weights on the reference interval `[-1, 1]`.
///
/// Nodes are returned in ascending order. The rule integrates polynomials up
/// to degree `2·points - 1` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> PanelRule<T> {
    pub fn gauss_legendre(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidParameter {
                name: "points",
                value: 0.0,
                requirement: "points >= 1",
            });
        }
        let n = points;
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th largest root, then Newton.
            let mut z = (T::PI() * (T::of(i as f64) + T::of(0.75))
                / (T::of(n as f64) + T::of(0.5)))
            .cos();
            for _ in 0..64 {
                let (p, d) = legendre_with_derivative(n, z);
                let dz = p / d;
                z = z - dz;
                if dz.abs() <= T::epsilon() * z.abs().max(T::one()) {
                    break;
                }
            }
            let (p, d) = legendre_with_derivative(n, z);
            z = z - p / d;
            let (_, dp) = legendre_with_derivative(n, z);
            let w = T::of(2.0) / ((T::one() - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Integrate `f` over `(a, b)` with a composite Gauss-Legendre rule.
///
/// The base rule is mapped affinely onto `panels` equal subintervals of
/// `(a, b)`. Returns zero when the interval is empty or inverted.
pub fn integrate_on<T, F>(rule: &PanelRule<T>, a: T, b: T, panels: usize, f: F) -> Cplx<T>
where
    T: Scalar,
    F: Fn(T) -> Cplx<T>,
{
    if a.is_nan() || b.is_nan() || b <= a {
        return Cplx::new(T::zero(), T::zero());
    }
    let panels = panels.max(1);
    let width = (b - a) / T::of(panels as f64);
    let half = width / T::of(2.0);
    let mut acc = Cplx::new(T::zero(), T::zero());
    for k in 0..panels {
        let mid = a + width * T::of(k as f64) + half;
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            acc = acc + f(mid + half * *t) * (*w * half);
        }
    }
    acc
}

/// Quadrature nodes and weights realizing the measure of `L²(0,1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    rule_id: String,
    panels: usize,
    points_per_panel: usize,
}

impl<T: Scalar> QuadratureGrid<T> {
    /// Composite Gauss-Legendre rule with `panels` panels of `points` nodes.
    ///
    /// Construction validates the grid invariants: nodes strictly increasing
    /// inside `(0,1)`, positive weights, weights summing to one, and exact
    /// integration of monomials up to the exactness degree (checked up to
    /// degree 8).
    pub fn gauss_legendre(panels: usize, points: usize) -> Result<Self> {
        if panels == 0 {
            return Err(Error::InvalidParameter {
                name: "panels",
                value: 0.0,
                requirement: "panels >= 1",
            });
        }
        let base = PanelRule::<T>::gauss_legendre(points)?;
        let n = panels * points;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let width = T::one() / T::of(panels as f64);
        let half = width / T::of(2.0);
        for k in 0..panels {
            let mid = width * T::of(k as f64) + half;
            for (t, w) in base.nodes.iter().zip(base.weights.iter()) {
                nodes.push(mid + half * *t);
                weights.push(*w * half);
            }
        }
        let grid = Self {
            nodes,
            weights,
            rule_id: format!("gauss-legendre-{panels}x{points}"),
            panels,
            points_per_panel: points,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// The 64 x 8 rule used as the crate-wide default (512 nodes).
    pub fn default_rule() -> Result<Self> {
        Self::gauss_legendre(64, 8)
    }

    /// Construct the default rule behind a shared handle.
    pub fn shared(panels: usize, points: usize) -> Result<GridRef<T>> {
        Ok(Arc::new(Self::gauss_legendre(panels, points)?))
    }

    fn validate(&self) -> Result<()> {
        let mut prev = T::zero();
        for (i, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            if !x.is_finite() || !w.is_finite() {
                return Err(Error::NonFinite { what: "quadrature rule", index: i });
            }
            if x <= prev || x >= T::one() {
                return Err(Error::QuadratureInvariant {
                    detail: format!("node {i} not strictly increasing inside (0,1)"),
                });
            }
            if w <= T::zero() {
                return Err(Error::QuadratureInvariant {
                    detail: format!("weight {i} not positive"),
                });
            }
            prev = x;
        }
        let total = self.weights.iter().fold(T::zero(), |a, &w| a + w);
        let tol_sum = widened_tol::<T>(1e-12)
            .max(T::epsilon() * T::of(self.nodes.len() as f64));
        if (total - T::one()).abs() > tol_sum {
            return Err(Error::QuadratureInvariant {
                detail: format!("weights sum to {} instead of 1", total.as_f64()),
            });
        }
        let tol_poly = widened_tol::<T>(1e-10);
        for degree in 0..=self.exactness_degree().min(8) {
            let value = self
                .nodes
                .iter()
                .zip(&self.weights)
                .fold(T::zero(), |a, (&x, &w)| a + w * x.powi(degree as i32));
            let exact = T::one() / T::of(degree as f64 + 1.0);
            if (value - exact).abs() > tol_poly {
                return Err(Error::QuadratureInvariant {
                    detail: format!(
                        "monomial of degree {degree} integrates to {} instead of {}",
                        value.as_f64(),
                        exact.as_f64()
                    ),
                });
            }
        }
        Ok(())
    }

    /// Degree up to which the rule integrates polynomials exactly.
    pub fn exactness_degree(&self) -> usize {
        2 * self.points_per_panel - 1
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn rule_id(&self) -> &str {
        &self.rule_id
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn points_per_panel(&self) -> usize {
        self.points_per_panel
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature sum `Σ w_i v_i` over node-aligned samples.
    pub fn integrate_samples(&self, values: &[Cplx<T>]) -> Cplx<T> {
        debug_assert_eq!(values.len(), self.len());
        self.weights
            .iter()
            .zip(values)
            .fold(Cplx::new(T::zero(), T::zero()), |acc, (&w, &v)| acc + v * w)
    }

    /// Integrate a function by sampling it on the nodes.
    pub fn integrate<F: Fn(T) -> Cplx<T>>(&self, f: F) -> Cplx<T> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(Cplx::new(T::zero(), T::zero()), |acc, (&x, &w)| acc + f(x) * w)
    }
}
