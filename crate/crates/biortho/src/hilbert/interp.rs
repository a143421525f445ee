//! Per-panel barycentric interpolation of grid functions.
//!
//! The integral convolution forms evaluate their arguments between nodes.
//! On a composite Gauss-Legendre grid the nodes of every panel are an affine
//! copy of the reference rule, so a single set of barycentric weights serves
//! all panels; within a panel the interpolant is the degree `q - 1` Lagrange
//! polynomial through the panel's `q` nodes.

use crate::hilbert::{GridFunction, GridRef, PanelRule};
use crate::{Cplx, Scalar};

/// Panel-wise polynomial interpolant of a [`GridFunction`].
#[derive(Debug, Clone)]
pub struct PanelInterpolant<T: Scalar> {
    grid: GridRef<T>,
    values: Vec<Cplx<T>>,
    base_nodes: Vec<T>,
    bary_weights: Vec<T>,
}

impl<T: Scalar> PanelInterpolant<T> {
    pub fn new(f: &GridFunction<T>) -> Self {
        let grid = f.grid().clone();
        let rule = PanelRule::<T>::gauss_legendre(grid.points_per_panel())
            .expect("grid stores a valid panel size");
        let base_nodes = rule.nodes().to_vec();
        let q = base_nodes.len();
        let mut bary_weights = vec![T::one(); q];
        for i in 0..q {
            for j in 0..q {
                if i != j {
                    bary_weights[i] = bary_weights[i] / (base_nodes[i] - base_nodes[j]);
                }
            }
        }
        Self { grid, values: f.values().to_vec(), base_nodes, bary_weights }
    }

    pub fn grid(&self) -> &GridRef<T> {
        &self.grid
    }

    /// Evaluate the interpolant at `x ∈ [0, 1]`.
    pub fn eval(&self, x: T) -> Cplx<T> {
        let panels = T::of(self.grid.panels() as f64);
        let scaled = (x * panels).max(T::zero());
        let k = scaled
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(self.grid.panels() - 1);
        // Local coordinate on [-1, 1] within panel k.
        let t = (scaled - T::of(k as f64)) * T::of(2.0) - T::one();
        let q = self.base_nodes.len();
        let offset = k * q;

        let mut num = Cplx::new(T::zero(), T::zero());
        let mut den = T::zero();
        for i in 0..q {
            let d = t - self.base_nodes[i];
            if d.abs() < T::epsilon() * T::of(4.0) {
                return self.values[offset + i];
            }
            let c = self.bary_weights[i] / d;
            num = num + self.values[offset + i] * c;
            den = den + c;
        }
        num / den
    }
}
