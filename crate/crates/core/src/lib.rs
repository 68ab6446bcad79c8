//! Exact flat-band analysis for periodic graph operators.
//!
//! A `Z^d`-periodic graph with rational potentials and edge weights gives a
//! Floquet matrix `L(z)` of Laurent polynomials and a dispersion polynomial
//! `D(z, lambda) = det(L(z) - lambda I)`. This crate builds both exactly,
//! finds every constant `lambda0` with `(lambda - lambda0) | D`, studies the
//! Newton polytope of `D`, and compares the algebraic picture against the
//! combinatorial criterion: a generic labeling has a flat band iff some
//! quotient component can be refitted to have all offsets zero.

pub mod error;
pub mod factor;
pub mod flatband;
pub mod floquet;
pub mod graph;
pub mod labeling;
pub mod laurent;
pub mod numeric;
pub mod polytope;
pub mod resultant;
pub mod sampling;
pub mod univariate;

pub use error::{
    AlgebraError, FlatBandError, FloquetError, GraphError, LabelingError, NumericError, PolytopeError, ResultantError,
};
pub use flatband::{
    flat_bands, generic_flat_band_decision, inheritance_check, vertical_segment_face_witness, FlatBandReport,
    GenericDecision, GenericVerdict,
};
pub use floquet::{build_floquet, dispersion, induced_dispersion, FloquetMatrix};
pub use graph::{canonicalize_edge, EdgeClass, Offset, PeriodicGraph, QuotientGraph, ShiftAssignment};
pub use labeling::Labeling;
pub use laurent::{Exponent, LaurentMatrix, LaurentPoly, WeightVector};
pub use numeric::{numeric_flat_flags, sample_bands, BandSample};
pub use polytope::{
    facial_independence_witness, generic_support, is_vertical_segment, sigma_support_check, vertical_faces,
    FaceDescriptor, GenericSupportEstimate, NewtonPolytopeData,
};
pub use resultant::{cut_edge_certificate, resultant, SylvesterMatrix};
pub use univariate::UniPoly;
