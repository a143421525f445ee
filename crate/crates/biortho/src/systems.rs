//! Biorthogonal Riesz-basis systems: construction and verification.
//!
//! A [`BiorthogonalSystem`] pairs two families `U = {u_ξ}` and `V = {v_ξ}`
//! sampled on a common grid, with the Gram property `(u_ξ, v_η)_H = δ_{ξη}`
//! enforced at construction. Two systems are built in:
//!
//! * the `h`-exponential system `u_j = h^x e^{2πijx}`, `v_j = h^{-x} e^{2πijx}`
//!   over `j ∈ {-N..N}` ([`make_h_exponential`]), which is the orthonormal
//!   Fourier basis when `h = 1`;
//! * the Ionkin system over `{0..2N}` ([`make_ionkin`]), an extended
//!   eigenfunction family of `-d²/dx²` under `u(0) = 0`, `u'(0) = u'(1)`.
//!
//! User-supplied sampled families go through [`BiorthogonalSystem::from_families`],
//! which runs the same validation.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{inner_product, widened_tol, GridFunction, GridRef};
use crate::probe;
use crate::{Cplx, Scalar};

/// Default Gram residual tolerance for system construction (512-node grid,
/// frequencies up to `|j| = 64`).
pub const TOL_BIORTHO_DEFAULT: f64 = 1e-9;

/// Ordering convention of an [`IndexSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrdering {
    /// `0, 1, -1, 2, -2, …` — used by the `h`-exponential system.
    Balanced,
    /// Ascending — used by the Ionkin system.
    Natural,
}

impl IndexOrdering {
    pub fn id(self) -> &'static str {
        match self {
            IndexOrdering::Balanced => "balanced",
            IndexOrdering::Natural => "natural",
        }
    }
}

/// Finite ordered set of signed integer indices.
///
/// The ordering is part of the identity so coefficient sequences serialize
/// reproducibly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<i64>,
    ordering: IndexOrdering,
}

impl IndexSet {
    /// Interleaved set `0, 1, -1, …, n, -n`.
    pub fn balanced(n: usize) -> Self {
        let mut indices = Vec::with_capacity(2 * n + 1);
        indices.push(0);
        for j in 1..=n as i64 {
            indices.push(j);
            indices.push(-j);
        }
        Self { indices, ordering: IndexOrdering::Balanced }
    }

    /// Ascending set `lo, lo+1, …, hi`.
    pub fn natural(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidParameter {
                name: "hi",
                value: hi as f64,
                requirement: "hi >= lo",
            });
        }
        Ok(Self { indices: (lo..=hi).collect(), ordering: IndexOrdering::Natural })
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn ordering(&self) -> IndexOrdering {
        self.ordering
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Position of `index` in the storage order.
    pub fn position(&self, index: i64) -> Option<usize> {
        self.indices.iter().position(|&i| i == index)
    }

    pub(crate) fn describe(&self) -> String {
        format!("{} indices ({})", self.len(), self.ordering.id())
    }

    pub(crate) fn expect_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::IndexSetMismatch { left: self.describe(), right: other.describe() })
        }
    }
}

/// Closed-form description of a system's basis functions, when one exists.
///
/// Built-in systems evaluate their families anywhere in `(0,1)`; sampled
/// systems only exist on their grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemForm<T> {
    HExponential { h: T },
    Ionkin,
    Sampled,
}

impl<T: Scalar> SystemForm<T> {
    /// Evaluate `u_index` at `x`, if a closed form is available.
    pub fn eval_u(&self, index: i64, x: T) -> Option<Cplx<T>> {
        match *self {
            SystemForm::HExponential { h } => {
                let phase = T::TAU() * T::of(index as f64) * x;
                Some(Cplx::from_polar(h.powf(x), phase))
            }
            SystemForm::Ionkin => Some(Cplx::new(ionkin_u(index, x), T::zero())),
            SystemForm::Sampled => None,
        }
    }

    /// Evaluate `v_index` at `x`, if a closed form is available.
    pub fn eval_v(&self, index: i64, x: T) -> Option<Cplx<T>> {
        match *self {
            SystemForm::HExponential { h } => {
                let phase = T::TAU() * T::of(index as f64) * x;
                Some(Cplx::from_polar(h.powf(-x), phase))
            }
            SystemForm::Ionkin => Some(Cplx::new(ionkin_v(index, x), T::zero())),
            SystemForm::Sampled => None,
        }
    }
}

/// `u_0 = x`, `u_{2ξ-1} = sin(2πξx)`, `u_{2ξ} = x cos(2πξx)`.
fn ionkin_u<T: Scalar>(index: i64, x: T) -> T {
    if index == 0 {
        x
    } else if index % 2 == 1 {
        let xi = T::of(((index + 1) / 2) as f64);
        (T::TAU() * xi * x).sin()
    } else {
        let xi = T::of((index / 2) as f64);
        x * (T::TAU() * xi * x).cos()
    }
}

/// `v_0 = 2`, `v_{2ξ-1} = 4(1-x) sin(2πξx)`, `v_{2ξ} = 4 cos(2πξx)`.
fn ionkin_v<T: Scalar>(index: i64, x: T) -> T {
    if index == 0 {
        T::of(2.0)
    } else if index % 2 == 1 {
        let xi = T::of(((index + 1) / 2) as f64);
        T::of(4.0) * (T::one() - x) * (T::TAU() * xi * x).sin()
    } else {
        let xi = T::of((index / 2) as f64);
        T::of(4.0) * (T::TAU() * xi * x).cos()
    }
}

/// A biorthogonal pair of families sampled on a common grid.
#[derive(Debug, Clone)]
pub struct BiorthogonalSystem<T: Scalar> {
    grid: GridRef<T>,
    index_set: IndexSet,
    u: Vec<GridFunction<T>>,
    v: Vec<GridFunction<T>>,
    system_id: String,
    form: SystemForm<T>,
    tol_biortho: T,
    gram_residual: T,
    sup_u_norm: T,
    sup_v_norm: T,
    u_equals_v: bool,
}

impl<T: Scalar> BiorthogonalSystem<T> {
    /// Validate and assemble a system from already-sampled families.
    pub fn from_families(
        grid: GridRef<T>,
        index_set: IndexSet,
        u: Vec<GridFunction<T>>,
        v: Vec<GridFunction<T>>,
        system_id: impl Into<String>,
        tol_biortho: T,
    ) -> Result<Self> {
        Self::build(grid, index_set, u, v, system_id.into(), SystemForm::Sampled, tol_biortho)
    }

    fn build(
        grid: GridRef<T>,
        index_set: IndexSet,
        u: Vec<GridFunction<T>>,
        v: Vec<GridFunction<T>>,
        system_id: String,
        form: SystemForm<T>,
        tol_biortho: T,
    ) -> Result<Self> {
        if tol_biortho <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "tol_biortho",
                value: tol_biortho.as_f64(),
                requirement: "tol_biortho > 0",
            });
        }
        if u.len() != index_set.len() || v.len() != index_set.len() {
            return Err(Error::IndexSetMismatch {
                left: index_set.describe(),
                right: format!("{} u / {} v functions", u.len(), v.len()),
            });
        }
        let mut sup_u = T::zero();
        let mut sup_v = T::zero();
        for (pos, (uf, vf)) in u.iter().zip(&v).enumerate() {
            for f in [uf, vf] {
                if !std::sync::Arc::ptr_eq(f.grid(), &grid) && **f.grid() != *grid {
                    return Err(Error::GridMismatch {
                        left: grid.rule_id().to_string(),
                        right: f.grid().rule_id().to_string(),
                    });
                }
            }
            let nu = uf.h_norm();
            let nv = vf.h_norm();
            if nu <= T::zero() || nv <= T::zero() {
                return Err(Error::ZeroBasisElement { index: index_set.indices()[pos] });
            }
            sup_u = sup_u.max(nu);
            sup_v = sup_v.max(nv);
        }

        let mut residual = T::zero();
        for (i, uf) in u.iter().enumerate() {
            for (j, vf) in v.iter().enumerate() {
                let gram = inner_product(uf, vf)?;
                let target = if i == j { T::one() } else { T::zero() };
                residual = residual.max((gram - Cplx::new(target, T::zero())).norm());
            }
        }
        if residual > tol_biortho {
            return Err(Error::BiorthogonalityViolation {
                residual: residual.as_f64(),
                tolerance: tol_biortho.as_f64(),
            });
        }

        let pointwise_tol = widened_tol::<T>(1e-15);
        let u_equals_v = u.iter().zip(&v).all(|(uf, vf)| {
            uf.values()
                .iter()
                .zip(vf.values())
                .all(|(&a, &b)| (a - b).norm() <= pointwise_tol * T::of(8.0))
        });

        Ok(Self {
            grid,
            index_set,
            u,
            v,
            system_id,
            form,
            tol_biortho,
            gram_residual: residual,
            sup_u_norm: sup_u,
            sup_v_norm: sup_v,
            u_equals_v,
        })
    }

    pub fn grid(&self) -> &GridRef<T> {
        &self.grid
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn system_id(&self) -> &str {
        &self.system_id
    }

    pub fn form(&self) -> &SystemForm<T> {
        &self.form
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    /// `u` family element by storage position.
    pub fn u(&self, pos: usize) -> &GridFunction<T> {
        &self.u[pos]
    }

    /// `v` family element by storage position.
    pub fn v(&self, pos: usize) -> &GridFunction<T> {
        &self.v[pos]
    }

    pub fn u_by_index(&self, index: i64) -> Option<&GridFunction<T>> {
        self.index_set.position(index).map(|p| &self.u[p])
    }

    pub fn v_by_index(&self, index: i64) -> Option<&GridFunction<T>> {
        self.index_set.position(index).map(|p| &self.v[p])
    }

    pub fn u_family(&self) -> &[GridFunction<T>] {
        &self.u
    }

    pub fn v_family(&self) -> &[GridFunction<T>] {
        &self.v
    }

    pub fn tol_biortho(&self) -> T {
        self.tol_biortho
    }

    /// Gram residual observed when the system was built.
    pub fn gram_residual(&self) -> T {
        self.gram_residual
    }

    /// Largest `‖u_ξ‖_H`; finite by construction and reported rather than
    /// bounded a priori.
    pub fn sup_u_norm(&self) -> T {
        self.sup_u_norm
    }

    pub fn sup_v_norm(&self) -> T {
        self.sup_v_norm
    }

    /// Whether the two families coincide pointwise (the orthonormal case).
    pub fn is_orthonormal(&self) -> bool {
        self.u_equals_v
    }

    pub(crate) fn expect_on_grid(&self, f: &GridFunction<T>) -> Result<()> {
        if std::sync::Arc::ptr_eq(f.grid(), &self.grid) || **f.grid() == *self.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.grid.rule_id().to_string(),
                right: f.grid().rule_id().to_string(),
            })
        }
    }
}

/// Build the `h`-exponential system `u_j = h^x e^{2πijx}`, `v_j = h^{-x} e^{2πijx}`
/// over the balanced index set `{-n..n}`.
pub fn make_h_exponential<T: Scalar>(
    h: T,
    n: usize,
    grid: &GridRef<T>,
) -> Result<BiorthogonalSystem<T>> {
    make_h_exponential_with_tol(h, n, grid, widened_tol(TOL_BIORTHO_DEFAULT))
}

/// As [`make_h_exponential`] with an explicit Gram tolerance.
pub fn make_h_exponential_with_tol<T: Scalar>(
    h: T,
    n: usize,
    grid: &GridRef<T>,
    tol_biortho: T,
) -> Result<BiorthogonalSystem<T>> {
    if !h.is_finite() || h <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h.as_f64(),
            requirement: "h > 0",
        });
    }
    let index_set = IndexSet::balanced(n);
    let form = SystemForm::HExponential { h };
    let (u, v) = sample_families(&form, &index_set, grid)?;
    BiorthogonalSystem::build(
        grid.clone(),
        index_set,
        u,
        v,
        format!("h-exponential(h={}, n={n})", h.as_f64()),
        form,
        tol_biortho,
    )
}

/// Build the Ionkin system over the natural index set `{0..2n}`.
pub fn make_ionkin<T: Scalar>(n: usize, grid: &GridRef<T>) -> Result<BiorthogonalSystem<T>> {
    make_ionkin_with_tol(n, grid, widened_tol(TOL_BIORTHO_DEFAULT))
}

/// As [`make_ionkin`] with an explicit Gram tolerance.
pub fn make_ionkin_with_tol<T: Scalar>(
    n: usize,
    grid: &GridRef<T>,
    tol_biortho: T,
) -> Result<BiorthogonalSystem<T>> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            requirement: "n >= 1",
        });
    }
    let index_set = IndexSet::natural(0, 2 * n as i64)?;
    let form = SystemForm::Ionkin;
    let (u, v) = sample_families(&form, &index_set, grid)?;
    BiorthogonalSystem::build(
        grid.clone(),
        index_set,
        u,
        v,
        format!("ionkin(n={n})"),
        form,
        tol_biortho,
    )
}

type FamilyPair<T> = (Vec<GridFunction<T>>, Vec<GridFunction<T>>);

fn sample_families<T: Scalar>(
    form: &SystemForm<T>,
    index_set: &IndexSet,
    grid: &GridRef<T>,
) -> Result<FamilyPair<T>> {
    let mut u = Vec::with_capacity(index_set.len());
    let mut v = Vec::with_capacity(index_set.len());
    for &j in index_set.indices() {
        u.push(GridFunction::from_fn(grid, |x| {
            form.eval_u(j, x).expect("built-in form")
        })?);
        v.push(GridFunction::from_fn(grid, |x| {
            form.eval_v(j, x).expect("built-in form")
        })?);
    }
    Ok((u, v))
}

/// Outcome of a full Gram verification pass.
#[derive(Debug, Clone)]
pub struct BiorthoReport<T> {
    /// `max_{ξ≠η} |(u_ξ, v_η)|`.
    pub max_off_diagonal: T,
    /// `max_ξ |(u_ξ, v_ξ) - 1|`.
    pub max_diagonal_deviation: T,
    /// `|(u_ξ, v_η) - δ_{ξη}|` in storage order.
    pub residual_matrix: Vec<Vec<T>>,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Scalar> BiorthoReport<T> {
    pub fn max_residual(&self) -> T {
        self.max_off_diagonal.max(self.max_diagonal_deviation)
    }
}

/// Recompute the full Gram matrix of a system and compare it to the identity.
pub fn verify_biorthogonality<T: Scalar>(sys: &BiorthogonalSystem<T>) -> BiorthoReport<T> {
    let n = sys.len();
    let mut matrix = vec![vec![T::zero(); n]; n];
    let mut off = T::zero();
    let mut diag = T::zero();
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let gram = inner_product(sys.u(i), sys.v(j)).expect("families share the grid");
            let target = if i == j { T::one() } else { T::zero() };
            let dev = (gram - Cplx::new(target, T::zero())).norm();
            *cell = dev;
            if i == j {
                diag = diag.max(dev);
            } else {
                off = off.max(dev);
            }
        }
    }
    let tolerance = sys.tol_biortho();
    BiorthoReport {
        max_off_diagonal: off,
        max_diagonal_deviation: diag,
        residual_matrix: matrix,
        tolerance,
        pass: off.max(diag) <= tolerance,
    }
}

/// Frame bounds observed on random band-limited probes.
///
/// The `v` pair bounds `Σ_ξ |(g, v_ξ)|²` against `‖g‖²`, the `u` pair bounds
/// `Σ_ξ |(g, u_ξ)|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds<T> {
    pub v_lower: T,
    pub v_upper: T,
    pub u_lower: T,
    pub u_upper: T,
    pub trials: usize,
}

/// Estimate frame bounds by drawing `trials` random unit-norm elements of
/// `span(U)` with independent complex Gaussian coefficients.
///
/// Deterministic for a fixed `seed`.
pub fn estimate_frame_bounds<T: Scalar>(
    sys: &BiorthogonalSystem<T>,
    trials: usize,
    seed: u64,
) -> Result<FrameBounds<T>> {
    if trials < 1 {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: trials as f64,
            requirement: "trials >= 1",
        });
    }
    let mut rng = probe::seeded_rng(seed);
    let mut v_lo = T::infinity();
    let mut v_hi = T::zero();
    let mut u_lo = T::infinity();
    let mut u_hi = T::zero();
    for _ in 0..trials {
        let g = random_span_element(sys, &mut rng)?;
        let mut sum_v = T::zero();
        let mut sum_u = T::zero();
        for pos in 0..sys.len() {
            sum_v = sum_v + inner_product(&g, sys.v(pos))?.norm_sqr();
            sum_u = sum_u + inner_product(&g, sys.u(pos))?.norm_sqr();
        }
        v_lo = v_lo.min(sum_v);
        v_hi = v_hi.max(sum_v);
        u_lo = u_lo.min(sum_u);
        u_hi = u_hi.max(sum_u);
    }
    Ok(FrameBounds {
        v_lower: v_lo.sqrt(),
        v_upper: v_hi.sqrt(),
        u_lower: u_lo.sqrt(),
        u_upper: u_hi.sqrt(),
        trials,
    })
}

/// Random unit-norm element of `span(U)`.
fn random_span_element<T: Scalar>(
    sys: &BiorthogonalSystem<T>,
    rng: &mut impl Rng,
) -> Result<GridFunction<T>> {
    loop {
        let coeffs: Vec<Cplx<T>> = (0..sys.len()).map(|_| probe::complex_normal(rng)).collect();
        let mut values = vec![Cplx::new(T::zero(), T::zero()); sys.grid().len()];
        for (pos, c) in coeffs.iter().enumerate() {
            for (acc, &b) in values.iter_mut().zip(sys.u(pos).values()) {
                *acc = *acc + b * *c;
            }
        }
        let g = GridFunction::new(sys.grid().clone(), values)?;
        let norm = g.h_norm();
        if norm > T::epsilon().sqrt() {
            return Ok(g.scaled(Cplx::new(T::one() / norm, T::zero())));
        }
    }
}
