//! Operators diagonalized by a biorthogonal system: `L f = Σ λ_ξ (f,v_ξ) u_ξ`,
//! its adjoint, the resolvent realized as a convolution, and coefficient
//! decay diagnostics.

use crate::convolution::{conv_ionkin, SmoothFn};
use crate::error::{Error, Result};
use crate::fourier::{CoefficientSequence, SideTag};
use crate::hilbert::GridFunction;
use crate::systems::{BiorthogonalSystem, IndexSet, SystemForm};
use crate::{Cplx, Scalar};

/// A spectrum `Λ = {λ_ξ}` aligned with an index set.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Scalar> {
    index_set: IndexSet,
    values: Vec<Cplx<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(index_set: IndexSet, values: Vec<Cplx<T>>) -> Result<Self> {
        if values.len() != index_set.len() {
            return Err(Error::IndexSetMismatch {
                left: index_set.describe(),
                right: format!("{} eigenvalues", values.len()),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { what: "spectrum", index: i });
            }
        }
        Ok(Self { index_set, values })
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
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

    pub fn get(&self, index: i64) -> Option<Cplx<T>> {
        self.index_set.position(index).map(|p| self.values[p])
    }

    /// Summability diagnostic for `Σ_ξ (1 + |λ_ξ|)^{-s}` at the truncation.
    ///
    /// For each `s = 1..=8` the partial sums over `|index| ≤ n` are compared
    /// at `n` and `n/2`; the sum "appears Cauchy" once the relative increment
    /// drops below 5%. Returns the smallest such `s` and the increment
    /// profile. A heuristic at finite truncation, not a convergence proof.
    pub fn summability_report(&self) -> SummabilityReport<T> {
        let max_abs = self
            .index_set
            .indices()
            .iter()
            .map(|&j| j.unsigned_abs())
            .max()
            .unwrap_or(0);
        let half = max_abs / 2;
        let threshold = T::of(0.05);
        let mut increments = Vec::with_capacity(8);
        let mut order = None;
        for s in 1..=8u32 {
            let sum_at = |cap: u64| -> T {
                self.index_set
                    .indices()
                    .iter()
                    .zip(&self.values)
                    .filter(|(&j, _)| j.unsigned_abs() <= cap)
                    .fold(T::zero(), |acc, (_, &lam)| {
                        acc + (T::one() + lam.norm()).powi(-(s as i32))
                    })
            };
            let full = sum_at(max_abs);
            let partial = sum_at(half);
            let increment = if full > T::zero() { (full - partial) / full } else { T::zero() };
            increments.push(increment);
            if order.is_none() && increment < threshold {
                order = Some(s);
            }
        }
        SummabilityReport { order, relative_increments: increments }
    }
}

/// Output of [`Spectrum::summability_report`].
#[derive(Debug, Clone)]
pub struct SummabilityReport<T> {
    /// Smallest `s` in `1..=8` whose partial sums appear Cauchy, if any.
    pub order: Option<u32>,
    /// Relative doubling increments for `s = 1..=8`.
    pub relative_increments: Vec<T>,
}

/// Spectrum of `-i d/dx` under `h·y(0) = y(1)`: `λ_j = 2πj - i ln h` on the
/// balanced index set `{-n..n}`.
pub fn make_h_spectrum<T: Scalar>(h: T, n: usize) -> Result<Spectrum<T>> {
    if !h.is_finite() || h <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h.as_f64(),
            requirement: "h > 0",
        });
    }
    let index_set = IndexSet::balanced(n);
    let log_h = h.ln();
    let values = index_set
        .indices()
        .iter()
        .map(|&j| Cplx::new(T::TAU() * T::of(j as f64), -log_h))
        .collect();
    Spectrum::new(index_set, values)
}

/// Spectrum of the Ionkin operator on `{0..2n}`: `λ_0 = 0` and
/// `λ_{2ξ-1} = λ_{2ξ} = (2πξ)²`.
pub fn make_ionkin_spectrum<T: Scalar>(n: usize) -> Result<Spectrum<T>> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            requirement: "n >= 1",
        });
    }
    let index_set = IndexSet::natural(0, 2 * n as i64)?;
    let values = index_set
        .indices()
        .iter()
        .map(|&j| {
            let xi = T::of(((j + 1) / 2) as f64);
            Cplx::new((T::TAU() * xi).powi(2), T::zero())
        })
        .collect();
    Spectrum::new(index_set, values)
}

/// Default guard radius around eigenvalues when applying the resolvent.
pub const EPS_SPEC_DEFAULT: f64 = 1e-8;

/// The operator associated to a pair `(U, Λ)`.
#[derive(Debug, Clone)]
pub struct SpectralOperator<T: Scalar> {
    system: BiorthogonalSystem<T>,
    spectrum: Spectrum<T>,
    eps_spec: T,
}

impl<T: Scalar> SpectralOperator<T> {
    pub fn new(system: BiorthogonalSystem<T>, spectrum: Spectrum<T>) -> Result<Self> {
        system.index_set().expect_same(spectrum.index_set())?;
        Ok(Self { system, spectrum, eps_spec: T::of(EPS_SPEC_DEFAULT) })
    }

    /// Override the pole guard radius used by [`Self::resolvent_apply`].
    pub fn with_pole_guard(mut self, eps_spec: T) -> Result<Self> {
        if eps_spec.is_nan() || eps_spec <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "eps_spec",
                value: eps_spec.as_f64(),
                requirement: "eps_spec > 0",
            });
        }
        self.eps_spec = eps_spec;
        Ok(self)
    }

    pub fn system(&self) -> &BiorthogonalSystem<T> {
        &self.system
    }

    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.spectrum
    }

    pub fn eps_spec(&self) -> T {
        self.eps_spec
    }

    /// `L f = Σ_ξ λ_ξ f̂(ξ) u_ξ`.
    pub fn apply(&self, f: &GridFunction<T>) -> Result<GridFunction<T>> {
        let hat = self.system.analyze_u(f)?;
        let scaled: Vec<Cplx<T>> = hat
            .values()
            .iter()
            .zip(self.spectrum.values())
            .map(|(&c, &lam)| c * lam)
            .collect();
        let seq =
            CoefficientSequence::new(self.system.index_set().clone(), scaled, SideTag::Raw)?;
        self.system.synthesize_u(&seq)
    }

    /// `L* g = Σ_ξ conj(λ_ξ) ĝ_*(ξ) v_ξ`.
    pub fn apply_adjoint(&self, g: &GridFunction<T>) -> Result<GridFunction<T>> {
        let star = self.system.analyze_v(g)?;
        let scaled: Vec<Cplx<T>> = star
            .values()
            .iter()
            .zip(self.spectrum.values())
            .map(|(&c, &lam)| c * lam.conj())
            .collect();
        let seq =
            CoefficientSequence::new(self.system.index_set().clone(), scaled, SideTag::Raw)?;
        self.system.synthesize_v(&seq)
    }

    /// The convolution kernel `g_λ = Σ_ξ u_ξ / (λ_ξ - λ)` of the resolvent.
    ///
    /// Fails when `λ` comes within the pole guard of an eigenvalue.
    pub fn resolvent_kernel(&self, lambda: Cplx<T>) -> Result<GridFunction<T>> {
        self.guard_spectrum(lambda)?;
        let values: Vec<Cplx<T>> = self
            .spectrum
            .values()
            .iter()
            .map(|&lam| Cplx::new(T::one(), T::zero()) / (lam - lambda))
            .collect();
        let seq =
            CoefficientSequence::new(self.system.index_set().clone(), values, SideTag::Raw)?;
        self.system.synthesize_u(&seq)
    }

    /// Resolvent action `R(λ) f = g_λ ⋆_U f`, computed through the literal
    /// convolution composition.
    pub fn resolvent_apply(
        &self,
        lambda: Cplx<T>,
        f: &GridFunction<T>,
    ) -> Result<GridFunction<T>> {
        let kernel = self.resolvent_kernel(lambda)?;
        self.system.conv_u(&kernel, f)
    }

    fn guard_spectrum(&self, lambda: Cplx<T>) -> Result<()> {
        let mut worst: Option<(i64, T)> = None;
        for (&j, &lam) in self.spectrum.index_set().indices().iter().zip(self.spectrum.values())
        {
            let dist = (lam - lambda).norm();
            if worst.is_none_or(|(_, d)| dist < d) {
                worst = Some((j, dist));
            }
        }
        match worst {
            Some((index, distance)) if distance <= self.eps_spec => {
                Err(Error::SpectrumSingularity {
                    index,
                    distance: distance.as_f64(),
                    guard: self.eps_spec.as_f64(),
                })
            }
            _ => Ok(()),
        }
    }

    /// `max(‖L(f⋆g) - (Lf)⋆g‖_H, ‖L(f⋆g) - f⋆(Lg)‖_H)` for the spectral
    /// convolution.
    pub fn intertwining_residual(
        &self,
        f: &GridFunction<T>,
        g: &GridFunction<T>,
    ) -> Result<T> {
        let conv = self.system.conv_u(f, g)?;
        let l_conv = self.apply(&conv)?;
        let lf_conv = self.system.conv_u(&self.apply(f)?, g)?;
        let f_lg_conv = self.system.conv_u(f, &self.apply(g)?)?;
        let left = (&l_conv - &lf_conv).h_norm();
        let right = (&l_conv - &f_lg_conv).h_norm();
        Ok(left.max(right))
    }
}

/// The Ionkin operator `-d²/dx²` acting through its coefficient
/// representation in the extended eigensystem.
///
/// The even-indexed elements are associated functions, so the action is not
/// diagonal: with `λ_ξ = (2πξ)²`,
///
/// ```text
///     (Yf)^(0)    = 0,
///     (Yf)^(2ξ)   = λ_ξ f̂(2ξ),
///     (Yf)^(2ξ-1) = λ_ξ f̂(2ξ-1) + 4πξ f̂(2ξ).
/// ```
pub fn apply_ionkin<T: Scalar>(
    sys: &BiorthogonalSystem<T>,
    f: &GridFunction<T>,
) -> Result<GridFunction<T>> {
    if !matches!(sys.form(), SystemForm::Ionkin) {
        return Err(Error::UnsupportedForm { operation: "Ionkin operator action" });
    }
    let hat = sys.analyze_u(f)?;
    let n = (sys.len() - 1) / 2;
    let mut out = vec![Cplx::new(T::zero(), T::zero()); sys.len()];
    for xi in 1..=n as i64 {
        let lam = (T::TAU() * T::of(xi as f64)).powi(2);
        let even_pos = sys.index_set().position(2 * xi).expect("natural 0..2n");
        let odd_pos = sys.index_set().position(2 * xi - 1).expect("natural 0..2n");
        let fe = hat.values()[even_pos];
        let fo = hat.values()[odd_pos];
        out[even_pos] = fe * lam;
        out[odd_pos] = fo * lam + fe * (T::of(2.0) * T::TAU() * T::of(xi as f64));
    }
    let seq = CoefficientSequence::new(sys.index_set().clone(), out, SideTag::Raw)?;
    sys.synthesize_u(&seq)
}

/// Intertwining defect of the Ionkin convolution against the Ionkin operator:
/// `max(‖Y(f⋆g) - (Yf)⋆g‖_H, ‖Y(f⋆g) - f⋆(Yg)‖_H)`.
pub fn ionkin_intertwining_residual<T: Scalar>(
    sys: &BiorthogonalSystem<T>,
    f: &SmoothFn<T>,
    g: &SmoothFn<T>,
) -> Result<T> {
    let f_grid = f.sample()?;
    let g_grid = g.sample()?;
    let conv = conv_ionkin(f, g)?;
    let y_conv = apply_ionkin(sys, &conv)?;
    let yf = apply_ionkin(sys, &f_grid)?;
    let yg = apply_ionkin(sys, &g_grid)?;
    let yf_conv = conv_ionkin(&SmoothFn::from_samples(&yf), g)?;
    let f_yg_conv = conv_ionkin(f, &SmoothFn::from_samples(&yg))?;
    let left = (&y_conv - &yf_conv).h_norm();
    let right = (&y_conv - &f_yg_conv).h_norm();
    Ok(left.max(right))
}

/// Coefficient-decay diagnostic against a spectrum.
#[derive(Debug, Clone)]
pub struct DecayReport<T> {
    /// `sup_ξ |f̂(ξ)| (1 + |λ_ξ|)^k` for `k = 0..=k_max`.
    pub sup_products: Vec<T>,
    /// Slope `α` of the fit `|f̂(ξ)| ~ C (1 + |λ_ξ|)^{-α}`; `None` when the
    /// support is too small to fit. Negative values indicate growth.
    pub fitted_exponent: Option<T>,
    /// Heuristic class membership per `k`: the fitted exponent exceeds
    /// `k - 1/4`, or the support is a single point.
    pub class_membership: Vec<bool>,
    /// Number of coefficients that entered the fit.
    pub points_used: usize,
}

/// Fit the decay of `f̂` against `(1 + |λ_ξ|)` and report the seminorm-style
/// suprema `sup_ξ |f̂(ξ)|(1+|λ_ξ|)^k`.
///
/// Coefficients below `max|f̂| · 1e-12` are treated as quadrature noise and
/// excluded from the fit (they still enter the suprema).
pub fn decay_order<T: Scalar>(
    sys: &BiorthogonalSystem<T>,
    spectrum: &Spectrum<T>,
    f: &GridFunction<T>,
    k_max: usize,
) -> Result<DecayReport<T>> {
    sys.index_set().expect_same(spectrum.index_set())?;
    let hat = sys.analyze_u(f)?;
    let magnitudes: Vec<T> = hat.values().iter().map(|c| c.norm()).collect();
    let growth: Vec<T> = spectrum.values().iter().map(|l| T::one() + l.norm()).collect();

    let mut sup_products = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let sup = magnitudes
            .iter()
            .zip(&growth)
            .fold(T::zero(), |m, (&c, &g)| m.max(c * g.powi(k as i32)));
        sup_products.push(sup);
    }

    let peak = magnitudes.iter().fold(T::zero(), |m, &c| m.max(c));
    let floor = peak * T::of(1e-12);
    let points: Vec<(T, T)> = magnitudes
        .iter()
        .zip(&growth)
        .filter(|(&c, _)| c > floor && c > T::zero())
        .map(|(&c, &g)| (g.ln(), c.ln()))
        .collect();

    let fitted_exponent = fit_slope(&points).map(|slope| -slope);
    let quarter = T::of(0.25);
    let class_membership = (0..=k_max)
        .map(|k| match fitted_exponent {
            Some(alpha) => alpha >= T::of(k as f64) - quarter,
            None => true,
        })
        .collect();

    Ok(DecayReport { sup_products, fitted_exponent, class_membership, points_used: points.len() })
}

/// Least-squares slope of `y` against `x`; `None` for degenerate abscissae.
fn fit_slope<T: Scalar>(points: &[(T, T)]) -> Option<T> {
    if points.len() < 2 {
        return None;
    }
    let n = T::of(points.len() as f64);
    let mean_x = points.iter().fold(T::zero(), |a, &(x, _)| a + x) / n;
    let mean_y = points.iter().fold(T::zero(), |a, &(_, y)| a + y) / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for &(x, y) in points {
        sxx = sxx + (x - mean_x) * (x - mean_x);
        sxy = sxy + (x - mean_x) * (y - mean_y);
    }
    if sxx <= T::epsilon() * n {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{inner_product, QuadratureGrid};
    use crate::probe;
    use crate::systems::{make_h_exponential, make_ionkin};
    use std::sync::Arc;

    fn grid() -> crate::hilbert::GridRef<f64> {
        Arc::new(QuadratureGrid::default_rule().unwrap())
    }

    fn tau() -> f64 {
        2.0 * std::f64::consts::PI
    }

    fn h_operator(h: f64, n: usize) -> SpectralOperator<f64> {
        let sys = make_h_exponential(h, n, &grid()).unwrap();
        let spectrum = make_h_spectrum(h, n).unwrap();
        SpectralOperator::new(sys, spectrum).unwrap()
    }

    #[test]
    fn h_spectrum_values() {
        let s = make_h_spectrum(1.0, 4).unwrap();
        for &j in s.index_set().indices() {
            let lam = s.get(j).unwrap();
            assert!((lam - Cplx::new(tau() * j as f64, 0.0)).norm() < 1e-15);
        }
        let e = make_h_spectrum(std::f64::consts::E, 2).unwrap();
        assert!((e.get(0).unwrap() - Cplx::new(0.0, -1.0)).norm() < 1e-15);
        assert!(make_h_spectrum(-1.0, 2).is_err());
    }

    #[test]
    fn basis_elements_are_eigenfunctions() {
        let op = h_operator(2.0, 6);
        for &j in op.spectrum().index_set().indices() {
            let u = op.system().u_by_index(j).unwrap();
            let lu = op.apply(u).unwrap();
            let scaled = u.scaled(op.spectrum().get(j).unwrap());
            let residual = (&lu - &scaled).h_norm();
            assert!(residual < 1e-9 * scaled.h_norm().max(1.0), "index {j}: {residual}");
        }
    }

    #[test]
    fn adjoint_has_conjugate_eigenvalues_on_v() {
        let op = h_operator(2.0, 5);
        for j in [-3i64, 0, 4] {
            let v = op.system().v_by_index(j).unwrap();
            let lv = op.apply_adjoint(v).unwrap();
            let scaled = v.scaled(op.spectrum().get(j).unwrap().conj());
            assert!((&lv - &scaled).h_norm() < 1e-9 * scaled.h_norm().max(1.0));
        }
    }

    #[test]
    fn operator_matches_spectral_differentiation_on_the_span() {
        // -i d/dx of Σ c_j h^x e^{2πijx} has coefficients (2πj - i ln h) c_j.
        let h = 2.0f64;
        let op = h_operator(h, 8);
        let mut rng = probe::seeded_rng(19);
        let (coeffs, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
        let lf = op.apply(&f).unwrap();
        let derivative_coeffs = CoefficientSequence::new(
            coeffs.index_set().clone(),
            coeffs
                .index_set()
                .indices()
                .iter()
                .zip(coeffs.values())
                .map(|(&j, &c)| {
                    c * (Cplx::new(0.0, -1.0) * Cplx::new(h.ln(), tau() * j as f64))
                })
                .collect(),
            SideTag::Raw,
        )
        .unwrap();
        let oracle = op.system().synthesize_u(&derivative_coeffs).unwrap();
        assert!((&lf - &oracle).h_norm() < 1e-8);
    }

    #[test]
    fn operator_is_linear() {
        let op = h_operator(0.5, 5);
        let mut rng = probe::seeded_rng(3);
        let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
        let (_, g) = probe::random_band_limited(op.system(), &mut rng).unwrap();
        let alpha = Cplx::new(-0.7, 0.4);
        let lhs = op.apply(&(&f.scaled(alpha) + &g)).unwrap();
        let rhs = &op.apply(&f).unwrap().scaled(alpha) + &op.apply(&g).unwrap();
        assert!((&lhs - &rhs).h_norm() < 1e-10);
    }

    #[test]
    fn adjoint_reduces_to_conjugated_spectrum_when_orthonormal() {
        let op = h_operator(1.0, 4);
        let mut rng = probe::seeded_rng(13);
        let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
        // With u = v and real spectrum, L* acts exactly like L here.
        let adj = op.apply_adjoint(&f).unwrap();
        let fwd = op.apply(&f).unwrap();
        assert!((&adj - &fwd).h_norm() < 1e-12);
    }

    #[test]
    fn adjoint_identity_holds_on_band_limited_pairs() {
        let op = h_operator(2.0, 6);
        let mut rng = probe::seeded_rng(29);
        for _ in 0..5 {
            let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            let (_, g) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            let lhs = inner_product(&op.apply(&f).unwrap(), &g).unwrap();
            let rhs = inner_product(&f, &op.apply_adjoint(&g).unwrap()).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "defect {}", (lhs - rhs).norm());
        }
    }

    #[test]
    fn resolvent_inverts_on_eigenmodes() {
        let op = h_operator(2.0, 6);
        let lambda = Cplx::new(0.0, 1.0);
        let u2 = op.system().u_by_index(2).unwrap();
        let r = op.resolvent_apply(lambda, u2).unwrap();
        let expected = u2.scaled(Cplx::new(1.0, 0.0) / (op.spectrum().get(2).unwrap() - lambda));
        assert!((&r - &expected).h_norm() < 1e-9);
    }

    #[test]
    fn resolvent_satisfies_its_defining_equation() {
        let op = h_operator(2.0, 8);
        let mut rng = probe::seeded_rng(59);
        for lambda in [Cplx::new(0.0, 1.0), Cplx::new(1.0, 1.0), Cplx::new(-3.0, 0.0)] {
            let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            let rf = op.resolvent_apply(lambda, &f).unwrap();
            let check = &op.apply(&rf).unwrap() - &rf.scaled(lambda);
            assert!(
                (&check - &f).h_norm() < 1e-8,
                "λ = {lambda}: residual {}",
                (&check - &f).h_norm()
            );
        }
    }

    #[test]
    fn resolvent_rejects_spectrum_points() {
        let op = h_operator(2.0, 4);
        let lam1 = op.spectrum().get(1).unwrap();
        let err = op.resolvent_kernel(lam1);
        assert!(matches!(err, Err(Error::SpectrumSingularity { index: 1, .. })));
    }

    #[test]
    fn first_resolvent_identity() {
        let op = h_operator(2.0, 6);
        let l1 = Cplx::new(0.0, 1.0);
        let l2 = Cplx::new(1.0, 1.0);
        let mut rng = probe::seeded_rng(61);
        let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
        let lhs = &op.resolvent_apply(l1, &f).unwrap() - &op.resolvent_apply(l2, &f).unwrap();
        let rhs = op
            .resolvent_apply(l1, &op.resolvent_apply(l2, &f).unwrap())
            .unwrap()
            .scaled(l1 - l2);
        assert!((&lhs - &rhs).h_norm() < 1e-7);
    }

    #[test]
    fn intertwining_residual_is_small() {
        let op = h_operator(2.0, 6);
        let mut rng = probe::seeded_rng(67);
        let u1 = op.system().u_by_index(1).unwrap();
        assert!(op.intertwining_residual(u1, u1).unwrap() < 1e-9);
        for _ in 0..5 {
            let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            let (_, g) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            assert!(op.intertwining_residual(&f, &g).unwrap() < 1e-8);
        }
    }

    #[test]
    fn ionkin_action_on_basis_elements() {
        let sys = make_ionkin(3, &grid()).unwrap();
        // Y sin(2πx) = (2π)² sin(2πx)
        let y_sin = apply_ionkin(&sys, sys.u_by_index(1).unwrap()).unwrap();
        let expected = sys.u_by_index(1).unwrap().scaled(Cplx::new(tau() * tau(), 0.0));
        assert!((&y_sin - &expected).h_norm() < 1e-8);
        // Y (x cos(2πx)) = (2π)² x cos(2πx) + 4π sin(2πx)
        let y_assoc = apply_ionkin(&sys, sys.u_by_index(2).unwrap()).unwrap();
        let oracle = GridFunction::from_real_fn(&grid(), |x| {
            tau() * tau() * x * (tau() * x).cos() + 2.0 * tau() * (tau() * x).sin()
        })
        .unwrap();
        assert!((&y_assoc - &oracle).h_norm() < 1e-8);
        // Y x = 0
        let y_x = apply_ionkin(&sys, sys.u_by_index(0).unwrap()).unwrap();
        assert!(y_x.h_norm() < 1e-9);
    }

    #[test]
    fn diagonal_ionkin_operator_intertwines_with_spectral_convolution() {
        // Pairing the Ionkin system with its paired-eigenvalue spectrum makes
        // the intertwining a coefficient identity λ_ξ f̂ ĝ on both sides.
        let sys = make_ionkin(4, &grid()).unwrap();
        let spectrum = make_ionkin_spectrum(4).unwrap();
        assert_eq!(spectrum.get(0).unwrap(), Cplx::new(0.0, 0.0));
        assert!((spectrum.get(1).unwrap().re - tau() * tau()).abs() < 1e-12);
        assert_eq!(spectrum.get(1), spectrum.get(2));
        let op = SpectralOperator::new(sys, spectrum).unwrap();
        let mut rng = probe::seeded_rng(7);
        for _ in 0..5 {
            let (_, f) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            let (_, g) = probe::random_band_limited(op.system(), &mut rng).unwrap();
            assert!(op.intertwining_residual(&f, &g).unwrap() < 1e-8);
        }
    }

    #[test]
    fn ionkin_convolution_intertwines_with_the_ionkin_operator() {
        let g = grid();
        let sys = make_ionkin(5, &g).unwrap();
        let f1 = GridFunction::from_real_fn(&g, |x| {
            x + 0.5 * (tau() * x).sin() - 0.3 * x * (tau() * x).cos()
        })
        .unwrap();
        let f2 = GridFunction::from_real_fn(&g, |x| {
            0.8 * (2.0 * tau() * x).sin() + 0.6 * x * (2.0 * tau() * x).cos() - 0.1 * x
        })
        .unwrap();
        let residual = ionkin_intertwining_residual(
            &sys,
            &SmoothFn::from_samples(&f1),
            &SmoothFn::from_samples(&f2),
        )
        .unwrap();
        assert!(residual < 1e-6, "intertwining residual {residual}");
    }

    #[test]
    fn summability_diagnostic_finds_order_two_for_linear_growth() {
        let s = make_h_spectrum(2.0, 16).unwrap();
        let report = s.summability_report();
        assert_eq!(report.order, Some(2), "increments {:?}", report.relative_increments);
    }

    #[test]
    fn decay_of_indicator_is_not_fitted() {
        let sys = make_h_exponential(2.0, 8, &grid()).unwrap();
        let spectrum = make_h_spectrum(2.0, 8).unwrap();
        let report = decay_order(&sys, &spectrum, sys.u_by_index(3).unwrap(), 4).unwrap();
        assert!(report.fitted_exponent.is_none());
        assert!(report.class_membership.iter().all(|&m| m));
        assert!(report.sup_products.iter().all(|s| s.is_finite()));
    }

    #[test]
    fn decay_exponent_of_mildly_smooth_function_is_near_one() {
        // f = h^x · x has the classical coefficients of x: |f̂(j)| ~ 1/(2πj).
        let sys = make_h_exponential(2.0, 16, &grid()).unwrap();
        let spectrum = make_h_spectrum(2.0, 16).unwrap();
        let f = GridFunction::from_real_fn(&grid(), |x| 2f64.powf(x) * x).unwrap();
        let report = decay_order(&sys, &spectrum, &f, 3).unwrap();
        let alpha = report.fitted_exponent.unwrap();
        assert!((alpha - 1.0).abs() < 0.2, "fitted exponent {alpha}");
        assert!(report.class_membership[0]);
        assert!(!report.class_membership[3]);
    }

    #[test]
    fn decay_exponent_of_smooth_periodic_factor_is_large() {
        // f = h^x e^{sin(2πx)} has super-polynomially decaying coefficients.
        let sys = make_h_exponential(2.0, 16, &grid()).unwrap();
        let spectrum = make_h_spectrum(2.0, 16).unwrap();
        let f =
            GridFunction::from_real_fn(&grid(), |x| 2f64.powf(x) * (tau() * x).sin().exp())
                .unwrap();
        let report = decay_order(&sys, &spectrum, &f, 6).unwrap();
        let alpha = report.fitted_exponent.unwrap();
        assert!(alpha > 6.0, "fitted exponent {alpha}");
        assert!(report.class_membership.iter().all(|&m| m));
    }
}
