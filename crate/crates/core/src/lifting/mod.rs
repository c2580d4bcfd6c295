//! Scalars with a valuation, weight homogenization with the uniformizer, and
//! the check that a deformation of the schön ideal reduces to it over the
//! residue field.

mod parse;
mod polynomial;
mod scalar;

pub use parse::{parse_polynomial, parse_quadric_file, ParseError};
pub use polynomial::{
    check_schoen_deformation, fiber_at_h0, homogenize_weight, initial_form, standard_weight, x_monomial, FiberMatch,
    LiftError, Monomial, ValuedPolynomial, WeightedPolynomial,
};
pub use scalar::{cmp_valuation, ValuedScalar};

/// Quadrics deforming the cube's generators, in the bundled text format.
pub const CUBE_DEFORMATION: &str = include_str!("../../../../data/cube_deformation.quad");

/// Reads quadrics that already carry `h`, attaching the weight `(0, ..., 0, -1)`.
pub fn weighted_quadrics(src: &str) -> Result<Vec<(String, WeightedPolynomial)>, ParseError> {
    Ok(parse_quadric_file(src)?
        .into_iter()
        .map(|(name, poly)| {
            let weight = standard_weight(poly.nvars);
            (name, WeightedPolynomial { poly, weight })
        })
        .collect())
}
