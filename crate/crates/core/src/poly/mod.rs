//! Univariate and bivariate polynomial arithmetic over ℚ(i).

pub mod bi;
pub mod bifactor;
pub mod factor;
pub mod interp;
pub mod parse;
pub mod uni;

pub use bi::{discriminant_in_x, BiPoly};
pub use bifactor::{factor_bivariate, irreducible_factors};
pub use parse::parse_bipoly;
pub use uni::{factor, irreducible_split, poly_gcd, squarefree_decomposition, UniPoly};
