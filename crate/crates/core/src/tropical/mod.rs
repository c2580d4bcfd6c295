//! Tropical projective space with trivial valuation, the tropicalized
//! schön lines, and the tropical-basis check for their generators.
//!
//! Every special point of a schön arrangement has coordinates 0 on its
//! support, so cells are described combinatorially by (support, argmin)
//! pairs and no numeric geometry is needed.

mod arrangement;
mod basis;
mod point;

pub use arrangement::{
    build_arrangement, tropicalize_line, ArrangementError, Node, NodeTag, Segment, TropicalComplex, TropicalLineGeom,
};
pub use basis::{enumerate_selection_pieces, tropical_basis_check, BasisCertificate, BasisViolation, SelectionPiece};
pub use point::{cell_membership, point_in_tropproj, Cell, Membership, TropicalPoint};
