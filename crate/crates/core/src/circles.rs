//! The dictionary between Lagrangian planes and co-oriented circles.
//!
//! Identifying the real symplectic 4-space with `C^2` through `z1 = v1 - i*v2`
//! and `z2 = v3 + i*v4` turns projectivized vectors into points `z2/z1` of the
//! Riemann sphere and Lagrangian planes into circles. A plane whose top 2x2
//! block is invertible normalizes to the column span of `[I; B]` with
//! `B = [[a, b+c], [b-c, -a]]`; it corresponds to the circle with center
//! `(a, b)` and signed radius `c`, where the sign of `c` records a
//! co-orientation and `c = 0` gives a point circle. Planes meeting the
//! `v1 = v2 = 0` line pass through infinity (straight lines, or the point at
//! infinity itself) and are kept in raw form.
//!
//! Each nonzero vector refines its point into a contact element: the point
//! together with a co-normal direction, computed here in exact rational
//! arithmetic. Circle-preserving transformations enter through two families:
//! radial translations, which shift every signed radius by a constant, and
//! determinant-one complex 2x2 matrices acting as Mobius transformations.

use crate::error::Error;
use crate::lagrangian::{maslov_index, Lagrangian, MaslovIndex};
use crate::scalar::{rat_i, CRat, Rat};
use crate::vec4::{Mat4, SymplecticMatrix, Vec4};
use num_traits::{One, Signed, Zero};

/// A circle on the Riemann sphere together with a co-orientation.
#[derive(Debug, Clone)]
pub enum CoorientedCircle {
    /// A circle in the finite plane. The radius carries a sign recording the
    /// co-orientation; zero gives a point circle.
    Circle {
        center: (Rat, Rat),
        signed_radius: Rat,
    },
    /// A circle through the point at infinity — a straight line, or the
    /// degenerate point circle at infinity. Kept as the underlying plane,
    /// which loses no information; rendering moves such circles back into
    /// the finite plane with a Mobius transformation first.
    LineOrInfinity { lagrangian: Lagrangian },
}

impl CoorientedCircle {
    /// The Lagrangian plane this circle corresponds to.
    pub fn lagrangian(&self) -> Lagrangian {
        match self {
            CoorientedCircle::Circle {
                center,
                signed_radius,
            } => circle_to_lagrangian(center, signed_radius),
            CoorientedCircle::LineOrInfinity { lagrangian } => lagrangian.clone(),
        }
    }

    /// True for point circles (zero radius) and for the point at infinity.
    pub fn is_point(&self) -> bool {
        match self {
            CoorientedCircle::Circle { signed_radius, .. } => signed_radius.is_zero(),
            CoorientedCircle::LineOrInfinity { lagrangian } => {
                let (u, v) = lagrangian.basis();
                u[0].is_zero() && u[1].is_zero() && v[0].is_zero() && v[1].is_zero()
            }
        }
    }
}

impl PartialEq for CoorientedCircle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                CoorientedCircle::Circle {
                    center: c1,
                    signed_radius: r1,
                },
                CoorientedCircle::Circle {
                    center: c2,
                    signed_radius: r2,
                },
            ) => c1 == c2 && r1 == r2,
            (
                CoorientedCircle::LineOrInfinity { lagrangian: l1 },
                CoorientedCircle::LineOrInfinity { lagrangian: l2 },
            ) => {
                let (u, v) = l2.basis();
                l1.contains(u) && l1.contains(v)
            }
            _ => false,
        }
    }
}

/// Reads off the co-oriented circle of a Lagrangian plane. Total: planes
/// whose top block is singular become the `LineOrInfinity` variant.
pub fn lagrangian_to_circle(l: &Lagrangian) -> CoorientedCircle {
    let (u, v) = l.basis();
    let det = &u[0] * &v[1] - &u[1] * &v[0];
    if det.is_zero() {
        return CoorientedCircle::LineOrInfinity {
            lagrangian: l.clone(),
        };
    }
    // Normalize the column span to [I; B]; B is the bottom block times the
    // inverse of the top block.
    let b11 = (&u[2] * &v[1] - &v[2] * &u[1]) / &det;
    let b12 = (&v[2] * &u[0] - &u[2] * &v[0]) / &det;
    let b21 = (&u[3] * &v[1] - &v[3] * &u[1]) / &det;
    let b22 = (&v[3] * &u[0] - &u[3] * &v[0]) / &det;
    // Isotropy of the plane forces B to be trace-free.
    debug_assert!((&b11 + &b22).is_zero());
    let b = (&b12 + &b21) / rat_i(2);
    let c = (&b12 - &b21) / rat_i(2);
    CoorientedCircle::Circle {
        center: (b11, b),
        signed_radius: c,
    }
}

/// The Lagrangian plane of the circle with the given center `(a, b)` and
/// signed radius `c`: the column span of `[I; B]` with
/// `B = [[a, b+c], [b-c, -a]]`.
pub fn circle_to_lagrangian(center: &(Rat, Rat), signed_radius: &Rat) -> Lagrangian {
    let (a, b) = center;
    let c = signed_radius;
    let u = Vec4::new(Rat::one(), Rat::zero(), a.clone(), b - c);
    let v = Vec4::new(Rat::zero(), Rat::one(), b + c, -a);
    Lagrangian::new(u, v).expect("a unit top block always spans an isotropic plane")
}

/// A point of the Riemann sphere decorated with a co-normal direction: the
/// base is `None` at infinity, and the direction is a nonzero complex number
/// defined up to positive real scale (a direction in the chart around the
/// base point — the standard chart at finite points, the reciprocal chart at
/// infinity).
#[derive(Debug, Clone)]
pub struct ContactElement {
    pub base: Option<CRat>,
    pub direction: CRat,
}

impl ContactElement {
    /// True when the two elements have the same base point and positively
    /// proportional directions.
    pub fn same_element(&self, other: &ContactElement) -> bool {
        self.base == other.base
            && cross(&self.direction, &other.direction).is_zero()
            && dot(&self.direction, &other.direction).is_positive()
    }

    /// True when this element touches the circle with the given center and
    /// signed radius: for a nonzero radius the base lies on the circle and
    /// the direction points along the radius, away from the center exactly
    /// when the signed radius is positive; for a point circle the base must
    /// equal the center. Elements based at infinity never touch a finite
    /// circle.
    pub fn touches_circle(&self, center: &(Rat, Rat), signed_radius: &Rat) -> bool {
        let Some(w) = &self.base else {
            return false;
        };
        let offset = w - CRat::new(center.0.clone(), center.1.clone());
        if signed_radius.is_zero() {
            return offset.is_zero();
        }
        dot(&offset, &offset) == signed_radius * signed_radius
            && cross(&self.direction, &offset).is_zero()
            && dot(&self.direction, &offset).is_positive() == signed_radius.is_positive()
    }
}

/// The planar cross product of two complex numbers viewed as 2-vectors.
fn cross(p: &CRat, q: &CRat) -> Rat {
    &p.re * &q.im - &p.im * &q.re
}

/// The planar dot product of two complex numbers viewed as 2-vectors.
fn dot(p: &CRat, q: &CRat) -> Rat {
    &p.re * &q.re + &p.im * &q.im
}

/// The contact element determined by a nonzero vector: its base is the
/// sphere point `z2/z1`, and its co-normal direction is `-i * conj(z1)^2`
/// (at a finite base) or `i * conj(z2)^2` in the reciprocal chart (at
/// infinity). The base always lies on the circle of any Lagrangian plane
/// containing the vector, with the direction normal to it.
pub fn contact_element(v: &Vec4) -> Result<ContactElement, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (z1, z2) = v.complex_coordinates();
    let i = CRat::new(Rat::zero(), Rat::one());
    if z1.is_zero() {
        let c = z2.conj();
        Ok(ContactElement {
            base: None,
            direction: i * &c * &c,
        })
    } else {
        let c = z1.conj();
        Ok(ContactElement {
            base: Some(z2 / z1),
            direction: -i * &c * &c,
        })
    }
}

/// True when the two nonzero vectors pair to zero under the symplectic form,
/// i.e. when their contact elements share a tangent circle: the plane they
/// span is then Lagrangian and its circle touches both elements.
pub fn incident(p: &Vec4, q: &Vec4) -> bool {
    debug_assert!(!p.is_zero() && !q.is_zero());
    p.omega(q).is_zero()
}

/// The symplectic matrix shifting every signed radius by `r` while fixing
/// all centers: it maps the plane of center `(a, b)`, radius `c` to the
/// plane of center `(a, b)`, radius `c + r`.
pub fn radial_translation_matrix(r: &Rat) -> SymplecticMatrix {
    let m = Mat4::from_rows([
        Vec4::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()),
        Vec4::new(Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()),
        Vec4::new(Rat::zero(), r.clone(), Rat::one(), Rat::zero()),
        Vec4::new(-r, Rat::zero(), Rat::zero(), Rat::one()),
    ]);
    SymplecticMatrix::new(m).expect("radial translations preserve the symplectic form")
}

/// A complex 2x2 matrix of determinant one, acting on the Riemann sphere as
/// a Mobius transformation.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMatrix([[CRat; 2]; 2]);

impl MobiusMatrix {
    pub fn new(entries: [[CRat; 2]; 2]) -> Result<Self, Error> {
        let det = &entries[0][0] * &entries[1][1] - &entries[0][1] * &entries[1][0];
        if det != CRat::new(Rat::one(), Rat::zero()) {
            return Err(Error::NotUnimodular);
        }
        Ok(MobiusMatrix(entries))
    }

    pub fn identity() -> Self {
        MobiusMatrix([
            [CRat::new(Rat::one(), Rat::zero()), CRat::zero()],
            [CRat::zero(), CRat::new(Rat::one(), Rat::zero())],
        ])
    }

    pub fn entries(&self) -> &[[CRat; 2]; 2] {
        &self.0
    }

    pub fn mul(&self, other: &MobiusMatrix) -> MobiusMatrix {
        let a = &self.0;
        let b = &other.0;
        MobiusMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j])
        }))
    }

    /// The action on the Riemann sphere, with `None` as the point at
    /// infinity. Sphere points divide the second coordinate by the first,
    /// so the linear action of `[[a, b], [c, d]]` on coordinate pairs
    /// descends to `z -> (d*z + c) / (b*z + a)`; in particular the lower
    /// shear `[[1, 0], [t, 1]]` translates the plane by `t`.
    pub fn act(&self, z: Option<&CRat>) -> Option<CRat> {
        let [[a, b], [c, d]] = &self.0;
        let (num, den) = match z {
            Some(z) => (d * z + c, b * z + a),
            None => (d.clone(), b.clone()),
        };
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }

    /// The transformation translating the plane by `t` and fixing infinity.
    pub fn translation(t: &CRat) -> Self {
        let one = CRat::new(Rat::one(), Rat::zero());
        MobiusMatrix([[one.clone(), CRat::zero()], [t.clone(), one]])
    }

    /// The transformation `z -> -1 / (z - q)`, sending `q` to infinity and
    /// infinity to `0`.
    pub fn inversion_at(q: &CRat) -> Self {
        let one = CRat::new(Rat::one(), Rat::zero());
        MobiusMatrix([[-q, one.clone()], [-one, CRat::zero()]])
    }
}

/// Embeds a determinant-one complex 2x2 matrix as a symplectic matrix: the
/// real matrix of its complex-linear action under `z1 = v1 - i*v2`,
/// `z2 = v3 + i*v4`. The embedding is multiplicative, and the image acts on
/// circles exactly as the Mobius transformation acts on the sphere.
pub fn mobius_embed(m: &MobiusMatrix) -> SymplecticMatrix {
    let [[a, b], [c, d]] = m.entries();
    let rows = Mat4::from_rows([
        Vec4::new(a.re.clone(), a.im.clone(), b.re.clone(), -&b.im),
        Vec4::new(-&a.im, a.re.clone(), -&b.im, -&b.re),
        Vec4::new(c.re.clone(), c.im.clone(), d.re.clone(), -&d.im),
        Vec4::new(c.im.clone(), -&c.re, d.im.clone(), d.re.clone()),
    ]);
    SymplecticMatrix::new(rows).expect("determinant-one matrices embed symplectically")
}

/// The Maslov index of a triple of co-oriented circles, computed on the
/// corresponding Lagrangian planes. Fails with `TangentCircles` when any of
/// the planes share a line, i.e. when two of the circles are tangent with
/// matching co-orientations (a point circle counts as tangent to any circle
/// it lies on).
pub fn maslov_of_circles(
    c1: &CoorientedCircle,
    c2: &CoorientedCircle,
    c3: &CoorientedCircle,
) -> Result<MaslovIndex, Error> {
    match maslov_index(&c1.lagrangian(), &c2.lagrangian(), &c3.lagrangian()) {
        Ok(index) => Ok(index),
        Err(Error::NotTransverse) | Err(Error::DegenerateMaslovForm) => Err(Error::TangentCircles),
        Err(e) => Err(e),
    }
}
