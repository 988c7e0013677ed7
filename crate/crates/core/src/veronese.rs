//! The rational Legendrian lift of the Veronese (twisted cubic) curve, its
//! osculating circles, and circumscribed polygons.
//!
//! The lift is `gamma(t) = (1, t, t^2, t^3/3)`, with the cubic weight chosen
//! so that the tangency pairing `omega(gamma(t), gamma'(t))` vanishes
//! identically — the curve is Legendrian, and its tangent planes
//! `span(gamma(t), gamma'(t))` are Lagrangian. On the sphere those planes
//! project to the osculating circles of the projected curve. Sampling the
//! curve at increasing parameters and circumscribing yields polygons with
//! decreasing curvature.

use crate::circles::{lagrangian_to_circle, CoorientedCircle};
use crate::error::Error;
use crate::flags::{flags_to_polygon, OrientedIsotropicFlag};
use crate::polygon::LegendrianPolygon;
use crate::scalar::{rat, Rat};
use crate::vec4::Vec4;
use num_traits::{One, Zero};

/// The curve point `gamma(t) = (1, t, t^2, t^3/3)`.
pub fn veronese_point(t: &Rat) -> Vec4 {
    Vec4::new(Rat::one(), t.clone(), t * t, t * t * t / rat(3, 1))
}

/// The velocity `gamma'(t) = (0, 1, 2t, t^2)`.
pub fn veronese_velocity(t: &Rat) -> Vec4 {
    Vec4::new(Rat::zero(), Rat::one(), t + t, t * t)
}

/// The flag of the curve at `t`: the curve point inside its tangent plane.
pub fn veronese_flag(t: &Rat) -> OrientedIsotropicFlag {
    OrientedIsotropicFlag::new(veronese_point(t), veronese_velocity(t))
        .expect("the curve is Legendrian, so point and velocity span an isotropic plane")
}

/// The osculating circle at `t`. The tangent plane always has an invertible
/// top block (its determinant is identically one), so the result is a
/// finite circle for every rational parameter; the center is
/// `(-t^2, t - t^3/3)` and the signed radius `t + t^3/3`.
pub fn osculating_circle(t: &Rat) -> CoorientedCircle {
    lagrangian_to_circle(&veronese_flag(t).plane())
}

/// Circumscribes a polygon around the curve: samples the flag at each of
/// `k >= 3` strictly increasing parameters and converts the tuple to its
/// `2k`-gon. Orientations are chosen to make the sampled tuple positive.
pub fn circumscribe_polygon(ts: &[Rat]) -> Result<LegendrianPolygon, Error> {
    if ts.len() < 3 {
        return Err(Error::TupleTooShort(3, ts.len()));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameterList);
    }
    let flags: Vec<OrientedIsotropicFlag> = ts.iter().map(veronese_flag).collect();
    flags_to_polygon(&flags)
}
