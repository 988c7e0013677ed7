use crate::error::Error;
use crate::scalar::Rat;
use crate::vec4::{rank, Mat4, Vec4};
use num_traits::{One, Signed, Zero};

/// A Lagrangian plane in the 4-dimensional symplectic space, kept with the
/// basis it was constructed from. The stored basis matters: several
/// computations (Maslov form, flag extraction) read it directly.
#[derive(Debug, Clone)]
pub struct Lagrangian {
    u: Vec4,
    v: Vec4,
}

impl Lagrangian {
    /// Builds the plane spanned by `u` and `v`. Fails unless the vectors are
    /// independent and the symplectic form vanishes on them.
    pub fn new(u: Vec4, v: Vec4) -> Result<Self, Error> {
        if u.is_zero() || v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if rank(&[u.clone(), v.clone()]) != 2 {
            return Err(Error::DependentVectors);
        }
        if !u.omega(&v).is_zero() {
            return Err(Error::NotIsotropic);
        }
        Ok(Lagrangian { u, v })
    }

    pub fn basis(&self) -> (&Vec4, &Vec4) {
        (&self.u, &self.v)
    }

    pub fn contains(&self, w: &Vec4) -> bool {
        rank(&[self.u.clone(), self.v.clone(), w.clone()]) == 2
    }

    /// True when the two planes intersect only in the origin.
    pub fn transverse_to(&self, other: &Lagrangian) -> bool {
        !Mat4::from_cols([
            self.u.clone(),
            self.v.clone(),
            other.u.clone(),
            other.v.clone(),
        ])
        .det()
        .is_zero()
    }

    pub fn apply(&self, m: &Mat4) -> Result<Lagrangian, Error> {
        Lagrangian::new(m.mul_vec(&self.u), m.mul_vec(&self.v))
    }

    /// Reduced row echelon basis; canonical for the plane as a set.
    fn rref_basis(&self) -> [Vec4; 2] {
        let mut rows = [self.u.clone(), self.v.clone()];
        let mut r = 0;
        for col in 0..4 {
            let Some(p) = (r..2).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            rows[r] = rows[r].scale(&inv);
            let other = 1 - r;
            if !rows[other][col].is_zero() {
                let factor = rows[other][col].clone();
                rows[other] = rows[other].sub(&rows[r].scale(&factor));
            }
            r += 1;
            if r == 2 {
                break;
            }
        }
        rows
    }
}

/// Equality as planes, regardless of the stored bases.
impl PartialEq for Lagrangian {
    fn eq(&self, other: &Self) -> bool {
        self.rref_basis() == other.rref_basis()
    }
}
impl Eq for Lagrangian {}

/// The linear involution fixing `l1` pointwise and negating `l3`.
/// Defined whenever the planes are transverse; it is anti-symplectic.
pub fn transversal_reflection(l1: &Lagrangian, l3: &Lagrangian) -> Result<Mat4, Error> {
    let b = Mat4::from_cols([l1.u.clone(), l1.v.clone(), l3.u.clone(), l3.v.clone()]);
    let b_inv = b.inverse().map_err(|_| Error::NotTransverse)?;
    let d = Mat4::diag(&[Rat::one(), Rat::one(), -Rat::one(), -Rat::one()]);
    Ok(b.mul(&d).mul(&b_inv))
}

/// Gram matrix of the symmetric form `(x, y) -> omega(x, sigma y)` on the
/// stored basis of `l2`, where `sigma` reflects through `l1` along `l3`.
pub fn maslov_form(
    l1: &Lagrangian,
    l2: &Lagrangian,
    l3: &Lagrangian,
) -> Result<[[Rat; 2]; 2], Error> {
    let sigma = transversal_reflection(l1, l3)?;
    let su = sigma.mul_vec(&l2.u);
    let sv = sigma.mul_vec(&l2.v);
    let b_uu = l2.u.omega(&su);
    let b_uv = l2.u.omega(&sv);
    let b_vu = l2.v.omega(&su);
    let b_vv = l2.v.omega(&sv);
    debug_assert_eq!(b_uv, b_vu);
    Ok([[b_uu, b_uv], [b_vu, b_vv]])
}

/// Maslov index of an ordered triple of pairwise transverse Lagrangian
/// planes. Values are the three generic signatures of the associated
/// quadratic form on a plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaslovIndex {
    MinusOne,
    Zero,
    PlusOne,
}

impl MaslovIndex {
    pub fn value(self) -> i32 {
        match self {
            MaslovIndex::MinusOne => -1,
            MaslovIndex::Zero => 0,
            MaslovIndex::PlusOne => 1,
        }
    }
}

impl std::fmt::Display for MaslovIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// Computes the Maslov index from the sign pattern of the associated form:
/// positive definite gives +1, negative definite -1, split signature 0.
/// A degenerate form means `l2` meets `l1` or `l3` and is rejected.
pub fn maslov_index(
    l1: &Lagrangian,
    l2: &Lagrangian,
    l3: &Lagrangian,
) -> Result<MaslovIndex, Error> {
    let b = maslov_form(l1, l2, l3)?;
    let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
    let tr = &b[0][0] + &b[1][1];
    if det.is_zero() {
        return Err(Error::DegenerateMaslovForm);
    }
    if det.is_negative() {
        Ok(MaslovIndex::Zero)
    } else if tr.is_positive() {
        Ok(MaslovIndex::PlusOne)
    } else {
        Ok(MaslovIndex::MinusOne)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i;

    fn e(i: usize) -> Vec4 {
        Vec4::basis(i)
    }

    fn v4(a: i64, b: i64, c: i64, d: i64) -> Vec4 {
        Vec4::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d))
    }

    /// Plane spanned by (1, 0, a, b - c) and (0, 1, b + c, -a).
    fn circle_plane(a: i64, b: i64, c: i64) -> Lagrangian {
        Lagrangian::new(v4(1, 0, a, b - c), v4(0, 1, b + c, -a)).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Lagrangian::new(Vec4::zero(), e(0)), Err(Error::ZeroVector));
        assert_eq!(
            Lagrangian::new(e(0), e(0).scale(&rat_i(2))),
            Err(Error::DependentVectors)
        );
        assert_eq!(Lagrangian::new(e(0), e(3)), Err(Error::NotIsotropic));
        assert!(Lagrangian::new(e(0), e(1)).is_ok());
        assert!(Lagrangian::new(e(2), e(3)).is_ok());
    }

    #[test]
    fn equality_ignores_basis_choice() {
        let a = Lagrangian::new(e(0), e(1)).unwrap();
        let b = Lagrangian::new(v4(2, 3, 0, 0), e(1)).unwrap();
        let c = Lagrangian::new(e(2), e(3)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn membership() {
        let l = Lagrangian::new(e(0), e(1)).unwrap();
        assert!(l.contains(&v4(5, -2, 0, 0)));
        assert!(l.contains(&Vec4::zero()));
        assert!(!l.contains(&v4(0, 0, 1, 0)));
    }

    #[test]
    fn transversality() {
        let h = Lagrangian::new(e(0), e(1)).unwrap();
        let v = Lagrangian::new(e(2), e(3)).unwrap();
        let mixed = Lagrangian::new(e(0), e(2)).unwrap();
        assert!(h.transverse_to(&v));
        assert!(!h.transverse_to(&mixed));
        assert!(!h.transverse_to(&h));
    }

    #[test]
    fn reflection_fixes_and_negates() {
        let l1 = Lagrangian::new(e(0), e(1)).unwrap();
        let l3 = Lagrangian::new(e(2), e(3)).unwrap();
        let sigma = transversal_reflection(&l1, &l3).unwrap();
        assert_eq!(
            sigma,
            Mat4::diag(&[rat_i(1), rat_i(1), rat_i(-1), rat_i(-1)])
        );
        assert_eq!(sigma.mul(&sigma), Mat4::identity());
        assert_eq!(
            transversal_reflection(&l1, &Lagrangian::new(e(0), e(2)).unwrap()),
            Err(Error::NotTransverse)
        );
    }

    #[test]
    fn maslov_form_on_concentric_planes() {
        // Planes of circles centered at the origin with radii 0, 1, 2.
        let b = maslov_form(
            &circle_plane(0, 0, 0),
            &circle_plane(0, 0, 1),
            &circle_plane(0, 0, 2),
        )
        .unwrap();
        assert_eq!(b, [[rat_i(1), rat_i(0)], [rat_i(0), rat_i(1)]]);
    }

    #[test]
    fn maslov_index_values() {
        let l0 = circle_plane(0, 0, 0);
        let l1 = circle_plane(0, 0, 1);
        let l2 = circle_plane(0, 0, 2);
        assert_eq!(maslov_index(&l0, &l1, &l2), Ok(MaslovIndex::PlusOne));
        assert_eq!(maslov_index(&l2, &l1, &l0), Ok(MaslovIndex::MinusOne));

        // A split-signature middle plane.
        let h = Lagrangian::new(e(0), e(1)).unwrap();
        let v = Lagrangian::new(e(2), e(3)).unwrap();
        let m = Lagrangian::new(e(0).add(&e(2)), e(1).sub(&e(3))).unwrap();
        assert_eq!(maslov_index(&h, &m, &v), Ok(MaslovIndex::Zero));

        // Middle plane meeting an outer one: degenerate, rejected.
        let bad = Lagrangian::new(e(0), e(2)).unwrap();
        assert_eq!(maslov_index(&h, &bad, &v), Err(Error::DegenerateMaslovForm));
    }

    #[test]
    fn maslov_index_flips_under_order_reversal() {
        let triples = [
            (
                circle_plane(0, 0, 0),
                circle_plane(0, 0, 1),
                circle_plane(0, 0, 2),
            ),
            (
                circle_plane(1, 2, 1),
                circle_plane(1, 2, 3),
                circle_plane(1, 2, 7),
            ),
        ];
        for (a, b, c) in triples {
            let fwd = maslov_index(&a, &b, &c).unwrap();
            let rev = maslov_index(&c, &b, &a).unwrap();
            assert_eq!(fwd.value(), -rev.value());
        }
    }
}
