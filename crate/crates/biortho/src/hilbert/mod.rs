//! The discretized Hilbert space `H = L²(0,1)`: quadrature grids, grid
//! functions, inner products and `L^p`/`H^p` norms.

mod function;
mod interp;
mod quadrature;

pub use function::{hp_norm, inner_product, lp_norm, GridFunction};
pub use interp::PanelInterpolant;
pub use quadrature::{integrate_on, GridRef, PanelRule, QuadratureGrid};

pub(crate) use quadrature::widened_tol;
