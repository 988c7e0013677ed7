//! Exact-arithmetic toolkit for Legendrian polygons in the contact projective
//! space RP^3 and their counterparts: piecewise-circular curves on the sphere.
//!
//! Everything algebraic runs over `BigRational`; floating point appears only
//! in the rendering layer, where scenes are flattened to screen coordinates.

pub mod circles;
pub mod error;
pub mod flags;
pub mod io;
pub mod lagrangian;
pub mod polygon;
pub mod render;
pub mod scalar;
pub mod vec4;
pub mod veronese;

pub use circles::{
    circle_to_lagrangian, contact_element, incident, lagrangian_to_circle, maslov_of_circles,
    mobius_embed, radial_translation_matrix, ContactElement, CoorientedCircle, MobiusMatrix,
};
pub use error::Error;
pub use flags::{
    complete_flag, extract_unipotent, f0, f_infinity, flags_to_polygon, normalize_pair,
    oriented_intersection, parametrize_positive_triple, polygon_to_flags, sample_positive_tuple,
    sample_positive_unipotent, semigroup_inverse_identity_check, triple_positive, tuple_positive,
    tuple_positive_by_consecutive_triples, FlagTuple, NormalizeError, OrientedIsotropicFlag,
    UnipotentParams,
};
pub use io::{
    circles_from_json, circles_to_json, flags_from_json, flags_to_json, polygon_from_json,
    polygon_to_json, ReadError,
};
pub use lagrangian::{maslov_form, maslov_index, transversal_reflection, Lagrangian, MaslovIndex};
pub use polygon::{
    sample_legendrian_polygon, segment_incidence_corners, segment_pair_nonincident, ClosingSign,
    HomotopyClass, IncidenceWitness, LegendrianPolygon, TransversalityClass,
};
pub use render::{
    circles_scene, detect_crossings, polygon_scene, render_circles, render_polygon, scene_to_svg,
    ArcGeom, ArrowGeom, CircleGeom, PointGeom, RenderScene,
};
pub use scalar::{format_rat, parse_rat, rat, rat_i, to_f64, CRat, Rat};
pub use vec4::{Mat4, SymplecticMatrix, Vec4};
pub use veronese::{
    circumscribe_polygon, osculating_circle, veronese_flag, veronese_point, veronese_velocity,
};
