//! Gaussian binomial coefficients, the subgroup ceiling `S(p, a)`, the
//! Euler-type product `C(p)`, and the bound functions `f` and the main bound.

mod bounds;
mod ceiling;
mod gauss;

pub use bounds::{alpha_constant, bound_f, bound_main, theorem_constant};
pub use ceiling::{cap_c, c_scale, small_c, sub_ceiling, sub_ceiling_exact, sum_gauss_le_ceiling, SubgroupCeiling};
pub use gauss::{gauss_binom, gauss_binom_product, GaussianBinomial, GaussianTable};
