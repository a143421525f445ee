//! Discretized elements of `H = L²(0,1)` and their inner products and norms.

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::hilbert::GridRef;
use crate::{Cplx, Scalar};

/// A complex-valued function sampled on the nodes of a
/// [`QuadratureGrid`](crate::hilbert::QuadratureGrid).
///
/// Values are validated to be finite at construction, and the grid handle is
/// shared so functions stay cheap to pass around.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T: Scalar> {
    grid: GridRef<T>,
    values: Vec<Cplx<T>>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(grid: GridRef<T>, values: Vec<Cplx<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                left: format!("{} values", values.len()),
                right: format!("{} nodes on {}", grid.len(), grid.rule_id()),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { what: "grid function values", index: i });
            }
        }
        Ok(Self { grid, values })
    }

    /// Sample a function on the grid nodes.
    pub fn from_fn<F: Fn(T) -> Cplx<T>>(grid: &GridRef<T>, f: F) -> Result<Self> {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid.clone(), values)
    }

    /// Sample a real-valued function on the grid nodes.
    pub fn from_real_fn<F: Fn(T) -> T>(grid: &GridRef<T>, f: F) -> Result<Self> {
        Self::from_fn(grid, |x| Cplx::new(f(x), T::zero()))
    }

    pub fn zero(grid: &GridRef<T>) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![Cplx::new(T::zero(), T::zero()); grid.len()],
        }
    }

    pub fn grid(&self) -> &GridRef<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Cplx<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether `self` and `other` are sampled on the same grid.
    pub fn same_grid(&self, other: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub(crate) fn expect_same_grid(&self, other: &Self) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.grid.rule_id().to_string(),
                right: other.grid.rule_id().to_string(),
            })
        }
    }

    /// Pointwise scaling by a complex constant.
    pub fn scaled(&self, c: Cplx<T>) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }

    /// `‖self‖_H`, the quadrature L² norm.
    pub fn h_norm(&self) -> T {
        lp_norm(self, T::of(2.0)).expect("p = 2 is always valid")
    }
}

impl<T: Scalar> Add for &GridFunction<T> {
    type Output = GridFunction<T>;

    /// Pointwise sum. Panics if the grids differ.
    fn add(self, rhs: Self) -> GridFunction<T> {
        self.expect_same_grid(rhs).expect("grid mismatch in +");
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &GridFunction<T> {
    type Output = GridFunction<T>;

    /// Pointwise difference. Panics if the grids differ.
    fn sub(self, rhs: Self) -> GridFunction<T> {
        self.expect_same_grid(rhs).expect("grid mismatch in -");
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(&a, &b)| a - b).collect(),
        }
    }
}

/// The inner product `(f, g)_H = Σ_i w_i f(x_i) conj(g(x_i))`.
///
/// Conjugate-linear in the second slot, so for the orthonormal exponential
/// system this reduces to the classical Fourier coefficient pairing.
pub fn inner_product<T: Scalar>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<Cplx<T>> {
    f.expect_same_grid(g)?;
    let mut acc = Cplx::new(T::zero(), T::zero());
    for ((&w, &a), &b) in f.grid.weights().iter().zip(&f.values).zip(&g.values) {
        acc = acc + a * b.conj() * w;
    }
    Ok(acc)
}

fn validate_exponent<T: Scalar>(p: T) -> Result<()> {
    if p.is_nan() || p < T::one() {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p.as_f64(),
            requirement: "p >= 1 (p = inf allowed)",
        });
    }
    Ok(())
}

/// The quadrature `L^p` norm; `p = ∞` (any infinite value) takes the node
/// maximum of `|f|`.
pub fn lp_norm<T: Scalar>(f: &GridFunction<T>, p: T) -> Result<T> {
    validate_exponent(p)?;
    if p.is_infinite() {
        return Ok(f
            .values
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| a.max(b)));
    }
    let sum = f
        .grid
        .weights()
        .iter()
        .zip(&f.values)
        .fold(T::zero(), |acc, (&w, v)| acc + w * v.norm().powf(p));
    Ok(sum.powf(T::one() / p))
}

/// Norm of the intersection space `H^p = L² ∩ L^p`, realized as the maximum
/// of the two norms so that `H² = H` isometrically and the Hölder-type bound
/// `|(f,g)_H| ≤ ‖f‖_{H^p} ‖g‖_{H^q}` follows from the discrete Hölder
/// inequality.
pub fn hp_norm<T: Scalar>(f: &GridFunction<T>, p: T) -> Result<T> {
    let l2 = lp_norm(f, T::of(2.0))?;
    let lp = lp_norm(f, p)?;
    Ok(l2.max(lp))
}
