//! Numerical Fourier analysis, convolutions and spectral operator calculus
//! generated by biorthogonal Riesz bases in a discretized `H = L²(0,1)`.
//!
//! The crate works with a pair of families `U = {u_ξ}` and `V = {v_ξ}` that
//! are biorthogonal, `(u_ξ, v_η)_H = δ_{ξη}`, and builds on top of them:
//!
//! * analysis and synthesis operators (the `U`- and `V`-Fourier transforms)
//!   together with the Plancherel/Parseval identities ([`fourier`]),
//! * the spectral convolutions `f ⋆_U g = Σ (f,v_ξ)(g,v_ξ) u_ξ` and their
//!   closed integral forms ([`convolution`]),
//! * the diagonal operator `L f = Σ λ_ξ (f,v_ξ) u_ξ` associated to a spectrum
//!   `Λ`, its adjoint and its resolvent ([`spectral`]),
//! * weighted sequence norms `l^p(U)`, `l^p(V)` with the Hausdorff-Young and
//!   duality bounds ([`lp`]).
//!
//! Two concrete systems are built in: the `h`-exponential system
//! `u_j = h^x e^{2πijx}`, `v_j = h^{-x} e^{2πijx}` (eigenfunctions of
//! `-i d/dx` under the boundary condition `h·y(0) = y(1)`), and the Ionkin
//! system attached to `-d²/dx²` with `u(0) = 0`, `u'(0) = u'(1)`.
//!
//! Everything is exercised on a composite Gauss-Legendre discretization of
//! `(0,1)` ([`hilbert`]); all identities are verified on band-limited
//! elements, where truncation introduces no error.
//!
//! The numeric kernels are generic over the scalar type through [`Scalar`];
//! `f64` aliases for the main types are exported at the crate root.

pub mod convolution;
pub mod error;
pub mod fourier;
pub mod hilbert;
pub mod lp;
pub mod probe;
pub mod spectral;
pub mod systems;

pub use error::Error;

use core::fmt::{Debug, Display};
use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the numeric kernels are generic over.
///
/// Implemented by `f32` and `f64` through the blanket impl. The tolerance
/// defaults baked into constructors are stated for `f64`; coarser types get
/// them widened by their epsilon ratio (see [`hilbert::QuadratureGrid`]).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Shorthand for converting an `f64` constant into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant must convert")
    }

    /// Lossy view of `self` as `f64`, for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Complex number over the generic scalar.
pub type Cplx<T> = Complex<T>;

pub type C64 = Complex<f64>;
pub type Grid64 = hilbert::QuadratureGrid<f64>;
pub type GridFunction64 = hilbert::GridFunction<f64>;
pub type System64 = systems::BiorthogonalSystem<f64>;
pub type Coefficients64 = fourier::CoefficientSequence<f64>;
pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Operator64 = spectral::SpectralOperator<f64>;
