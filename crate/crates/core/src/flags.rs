use crate::error::Error;
use crate::lagrangian::Lagrangian;
use crate::polygon::{ClosingSign, LegendrianPolygon};
use crate::scalar::{rat, Rat};
use crate::vec4::{
    kernel_basis, omega_functional, rank, solve_system, Mat4, SymplecticMatrix, Vec4,
};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error as ThisError;

/// Oriented isotropic flag: an oriented line inside an oriented Lagrangian
/// plane, stored as a spanning pair `(f1, f2)`. Two pairs give the same
/// flag when `f1' = lambda f1` with `lambda > 0` and
/// `f2' = nu f1 + mu f2` with `mu > 0`.
#[derive(Debug, Clone)]
pub struct OrientedIsotropicFlag {
    f1: Vec4,
    f2: Vec4,
}

/// A tuple of flags, ordered cyclically.
pub type FlagTuple = Vec<OrientedIsotropicFlag>;

impl OrientedIsotropicFlag {
    pub fn new(f1: Vec4, f2: Vec4) -> Result<Self, Error> {
        if f1.is_zero() || f2.is_zero() {
            return Err(Error::ZeroVector);
        }
        if rank(&[f1.clone(), f2.clone()]) != 2 {
            return Err(Error::DependentVectors);
        }
        if !f1.omega(&f2).is_zero() {
            return Err(Error::NotIsotropic);
        }
        Ok(OrientedIsotropicFlag { f1, f2 })
    }

    pub fn f1(&self) -> &Vec4 {
        &self.f1
    }

    pub fn f2(&self) -> &Vec4 {
        &self.f2
    }

    /// The flag with both orientations reversed. This is a different
    /// oriented flag over the same line and plane.
    pub fn negated(&self) -> Self {
        OrientedIsotropicFlag {
            f1: self.f1.neg(),
            f2: self.f2.neg(),
        }
    }

    pub fn apply(&self, m: &SymplecticMatrix) -> Self {
        OrientedIsotropicFlag {
            f1: m.apply(&self.f1),
            f2: m.apply(&self.f2),
        }
    }

    /// The underlying Lagrangian plane, forgetting orientations.
    pub fn plane(&self) -> Lagrangian {
        Lagrangian::new(self.f1.clone(), self.f2.clone())
            .expect("flag invariants imply a Lagrangian plane")
    }
}

impl PartialEq for OrientedIsotropicFlag {
    fn eq(&self, other: &Self) -> bool {
        // Same oriented line: f1' = lambda f1 with lambda > 0.
        let Some(p) = (0..4).find(|&i| !self.f1[i].is_zero()) else {
            return false;
        };
        if other.f1[p].is_zero() {
            return false;
        }
        let lambda = &other.f1[p] / &self.f1[p];
        if !lambda.is_positive() || self.f1.scale(&lambda) != other.f1 {
            return false;
        }
        // Same oriented plane: f2' = nu f1 + mu f2 with mu > 0.
        let rows: Vec<Vec<Rat>> = (0..4)
            .map(|i| vec![self.f1[i].clone(), self.f2[i].clone()])
            .collect();
        let rhs: Vec<Rat> = (0..4).map(|i| other.f2[i].clone()).collect();
        match solve_system(&rows, &rhs, 2) {
            Some(sol) => sol[1].is_positive(),
            None => false,
        }
    }
}
impl Eq for OrientedIsotropicFlag {}

/// The base flag spanned by the first two basis vectors.
pub fn f0() -> OrientedIsotropicFlag {
    OrientedIsotropicFlag::new(Vec4::basis(0), Vec4::basis(1)).unwrap()
}

/// The flag opposite to the base flag: line e4 inside the plane (e4, -e3).
pub fn f_infinity() -> OrientedIsotropicFlag {
    OrientedIsotropicFlag::new(Vec4::basis(3), Vec4::basis(2).neg()).unwrap()
}

/// Extends a flag `(f1, f2)` to a symplectic basis `(f1, f2, f3, f4)`:
/// `f3` spans the rest of the omega-orthogonal of `f1`, pinned by
/// `omega(f2, f3) = -1`, and `f4` completes with `omega(f1, f4) = 1` and
/// `omega(f2, f4) = omega(f3, f4) = 0`. Free coefficients are set to zero,
/// which makes the completion deterministic; any other choice differs by a
/// change of basis of determinant one, so all derived orientations agree.
pub fn complete_flag(flag: &OrientedIsotropicFlag) -> SymplecticMatrix {
    let f1 = flag.f1();
    let f2 = flag.f2();
    let rows3 = vec![omega_functional(f1), omega_functional(f2)];
    let f3 = solve_system(&rows3, &[Rat::zero(), -Rat::one()], 4)
        .expect("independent functionals always solvable");
    let f3 = Vec4([f3[0].clone(), f3[1].clone(), f3[2].clone(), f3[3].clone()]);
    let rows4 = vec![
        omega_functional(f1),
        omega_functional(f2),
        omega_functional(&f3),
    ];
    let f4 = solve_system(&rows4, &[Rat::one(), Rat::zero(), Rat::zero()], 4)
        .expect("independent functionals always solvable");
    let f4 = Vec4([f4[0].clone(), f4[1].clone(), f4[2].clone(), f4[3].clone()]);
    SymplecticMatrix::new(Mat4::from_cols([f1.clone(), f2.clone(), f3, f4]))
        .expect("completion has symplectic Gram matrix by construction")
}

/// Oriented intersection line of an oriented plane `u` and an oriented
/// 3-space `w` that together span the whole space. Returns the unique
/// generator `g` (up to positive scale) for which an adapted basis
/// `(a1, g, a3, a4)` exists with `(a1, g)` positive for `u`, `(g, a3, a4)`
/// positive for `w`, and positive total determinant.
pub fn oriented_intersection(u: (&Vec4, &Vec4), w: (&Vec4, &Vec4, &Vec4)) -> Result<Vec4, Error> {
    let rows: Vec<Vec<Rat>> = (0..4)
        .map(|i| vec![u.0[i].clone(), u.1[i].clone(), -&w.0[i], -&w.1[i], -&w.2[i]])
        .collect();
    let kernel = kernel_basis(&rows, 5);
    if kernel.len() != 1 {
        return Err(Error::BadIntersection);
    }
    let k = &kernel[0];
    let (alpha, beta) = (k[0].clone(), k[1].clone());
    let gammas = [k[2].clone(), k[3].clone(), k[4].clone()];
    let g = u.0.scale(&alpha).add(&u.1.scale(&beta));
    if g.is_zero() {
        return Err(Error::BadIntersection);
    }

    let adapted_det = |alpha: &Rat, beta: &Rat, gammas: &[Rat; 3], g: &Vec4| -> Rat {
        let a1 = if !beta.is_zero() {
            if beta.is_positive() {
                u.0.clone()
            } else {
                u.0.neg()
            }
        } else if alpha.is_positive() {
            u.1.neg()
        } else {
            u.1.clone()
        };
        let ws = [w.0, w.1, w.2];
        let j = (0..3)
            .find(|&j| !gammas[j].is_zero())
            .expect("nonzero intersection vector has a nonzero coordinate");
        let (i3, i4) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        // Sign of det(g, a3, a4) in w-coordinates before any swap.
        let det3 = if j == 1 {
            -&gammas[1]
        } else {
            gammas[j].clone()
        };
        let (a3, a4) = if det3.is_positive() {
            (ws[i3].clone(), ws[i4].clone())
        } else {
            (ws[i4].clone(), ws[i3].clone())
        };
        Mat4::from_cols([a1, g.clone(), a3, a4]).det()
    };

    let det = adapted_det(&alpha, &beta, &gammas, &g);
    if det.is_positive() {
        Ok(g)
    } else {
        let g = g.neg();
        let flipped = [-&gammas[0], -&gammas[1], -&gammas[2]];
        debug_assert!(adapted_det(&-&alpha, &-&beta, &flipped, &g).is_positive());
        Ok(g)
    }
}

/// Lower unitriangular symplectic matrix with free parameters `(a, b, c, d)`;
/// the remaining entries are forced by the symplectic condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl UnipotentParams {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        UnipotentParams { a, b, c, d }
    }

    pub fn matrix(&self) -> Mat4 {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let z = Rat::zero;
        let o = Rat::one;
        Mat4::from_rows([
            Vec4::new(o(), z(), z(), z()),
            Vec4::new(a.clone(), o(), z(), z()),
            Vec4::new(b.clone(), d.clone(), o(), z()),
            Vec4::new(c.clone(), a * d - b, a.clone(), o()),
        ])
    }

    /// Reads the parameters back from a matrix of the same shape, if the
    /// matrix is exactly of that shape.
    pub fn from_matrix(m: &Mat4) -> Option<Self> {
        let p = UnipotentParams {
            a: m.0[1][0].clone(),
            b: m.0[2][0].clone(),
            c: m.0[3][0].clone(),
            d: m.0[2][1].clone(),
        };
        (p.matrix() == *m).then_some(p)
    }

    /// Membership in the totally positive semigroup of this unipotent
    /// family: all four minors that govern positivity must be positive.
    pub fn in_positive_semigroup(&self) -> bool {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let ad_b = a * d - b;
        let last = a * b * d - b * b - c * d;
        a.is_positive()
            && b.is_positive()
            && c.is_positive()
            && ad_b.is_positive()
            && last.is_positive()
    }
}

/// Checks the inverse identity of the positive semigroup on a concrete
/// element `p`: the inverse of `p`'s matrix, conjugated by the sign matrix
/// `diag(1, -1, 1, -1)`, must again be a totally positive unipotent.
/// Returns whether that holds; errors if `p` itself is not in the
/// semigroup, since the identity only concerns semigroup elements.
pub fn semigroup_inverse_identity_check(p: &UnipotentParams) -> Result<bool, Error> {
    if !p.in_positive_semigroup() {
        return Err(Error::NotInSemigroup);
    }
    let k = Mat4::diag(&[Rat::one(), -Rat::one(), Rat::one(), -Rat::one()]);
    let inv = p
        .matrix()
        .inverse()
        .expect("unitriangular matrices are invertible");
    let conjugated = k.mul(&inv).mul(&k);
    Ok(UnipotentParams::from_matrix(&conjugated).is_some_and(|q| q.in_positive_semigroup()))
}

/// Draws a random element of the totally positive unipotent semigroup,
/// deterministically in the seed. The parameters are built inside-out so
/// that every defining inequality holds by construction.
pub fn sample_positive_unipotent(seed: u64) -> UnipotentParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_positive_unipotent(&mut rng)
}

fn random_positive_unipotent(rng: &mut ChaCha8Rng) -> UnipotentParams {
    let a = rat(rng.gen_range(1..=4), rng.gen_range(1..=3));
    let d = rat(rng.gen_range(1..=4), rng.gen_range(1..=3));
    let b = rat(rng.gen_range(1..=7), 8) * &a * &d;
    let c = rat(rng.gen_range(1..=7), 8) * &b * (&a * &d - &b) / &d;
    let u = UnipotentParams::new(a, b, c, d);
    debug_assert!(u.in_positive_semigroup());
    u
}

/// Failure modes when moving a flag pair to the standard position.
#[derive(Debug, ThisError, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeError {
    /// The lines or the planes of the two flags are not transverse.
    #[error("flag pair is not transverse")]
    NotTransverse,
    /// Transverse, but arranged with the wrong relative orientation; no
    /// orientation-preserving symplectic map sends the pair to the
    /// standard one.
    #[error("flag pair has mismatched orientations")]
    OrientationMismatch,
}

/// Symplectic matrix moving the oriented flag pair `(f, g)` to the
/// standard pair (base flag, opposite flag). Exists exactly when the pair
/// is transverse and positively arranged.
pub fn normalize_pair(
    f: &OrientedIsotropicFlag,
    g: &OrientedIsotropicFlag,
) -> Result<SymplecticMatrix, NormalizeError> {
    let w11 = f.f1().omega(g.f1());
    if w11.is_zero() {
        return Err(NormalizeError::NotTransverse);
    }
    if w11.is_negative() {
        return Err(NormalizeError::OrientationMismatch);
    }
    let p = f.f2().sub(&f.f1().scale(&(f.f2().omega(g.f1()) / &w11)));
    let q = g.f2().sub(&g.f1().scale(&(f.f1().omega(g.f2()) / &w11)));
    let t = p.omega(&q);
    if t.is_zero() {
        return Err(NormalizeError::NotTransverse);
    }
    if t.is_negative() {
        return Err(NormalizeError::OrientationMismatch);
    }
    let b = Mat4::from_cols([
        f.f1().clone(),
        p,
        q.scale(&(-t.recip())),
        g.f1().scale(&w11.recip()),
    ]);
    let b = SymplecticMatrix::new(b).expect("columns have symplectic Gram matrix");
    Ok(b.inverse())
}

/// Reads unipotent parameters off a flag in standard position relative to
/// the base pair: the flag must be `u * base` for a unique lower
/// unitriangular `u`, which requires positive leading coefficients.
pub fn extract_unipotent(h: &OrientedIsotropicFlag) -> Option<UnipotentParams> {
    let h1 = h.f1();
    if !h1[0].is_positive() {
        return None;
    }
    let a = &h1[1] / &h1[0];
    let b = &h1[2] / &h1[0];
    let c = &h1[3] / &h1[0];
    let w = h.f2().sub(&h1.scale(&(&h.f2()[0] / &h1[0])));
    if !w[1].is_positive() {
        return None;
    }
    let d = &w[2] / &w[1];
    // Isotropy of the flag forces the last coordinate automatically.
    debug_assert_eq!(&w[3] / &w[1], &a * &d - &b);
    Some(UnipotentParams { a, b, c, d })
}

/// Positivity of an ordered flag triple: after normalizing the outer pair,
/// the middle flag must be a totally positive unipotent push of the base.
pub fn triple_positive(
    f1: &OrientedIsotropicFlag,
    f2: &OrientedIsotropicFlag,
    f3: &OrientedIsotropicFlag,
) -> bool {
    let Ok(m) = normalize_pair(f1, f3) else {
        return false;
    };
    let h = f2.apply(&m);
    match extract_unipotent(&h) {
        Some(u) => u.in_positive_semigroup(),
        None => false,
    }
}

/// Positivity of a flag tuple by the definition: every ordered triple
/// `i < j < k` must be positive. Tuples shorter than 3 are not positive.
pub fn tuple_positive(flags: &[OrientedIsotropicFlag]) -> bool {
    let n = flags.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if !triple_positive(&flags[i], &flags[j], &flags[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Positivity via the reduced criterion: only triples whose first two
/// members are consecutive need checking. Agrees with `tuple_positive`
/// and is quadratic instead of cubic in the tuple length.
pub fn tuple_positive_by_consecutive_triples(flags: &[OrientedIsotropicFlag]) -> bool {
    let n = flags.len();
    if n < 3 {
        return false;
    }
    for i in 0..(n - 2) {
        for j in (i + 2)..n {
            if !triple_positive(&flags[i], &flags[i + 1], &flags[j]) {
                return false;
            }
        }
    }
    true
}

/// The positive triple with middle flag determined by two positive
/// parameters; every positive triple is equivalent to exactly one of
/// these. The middle flag is spanned by `(1, x + y + 1/y, y, 1)` and
/// `(0, 1, 1, x + 1/y)`.
pub fn parametrize_positive_triple(x: &Rat, y: &Rat) -> Result<[OrientedIsotropicFlag; 3], Error> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::NotPositiveParam);
    }
    let y_inv = y.recip();
    let middle = OrientedIsotropicFlag::new(
        Vec4::new(Rat::one(), x + y + &y_inv, y.clone(), Rat::one()),
        Vec4::new(Rat::zero(), Rat::one(), Rat::one(), x + &y_inv),
    )?;
    Ok([f0(), middle, f_infinity()])
}

/// Samples a positive flag tuple of length `k >= 3`, deterministically in
/// the seed: the inner flags are pushed off the base flag by products of
/// random totally positive unipotents.
pub fn sample_positive_tuple(k: usize, seed: u64) -> Result<FlagTuple, Error> {
    if k < 3 {
        return Err(Error::TupleTooShort(3, k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flags = vec![f0()];
    let mut acc = Mat4::identity();
    for _ in 0..(k - 2) {
        let u = random_positive_unipotent(&mut rng);
        acc = acc.mul(&u.matrix());
        let m = SymplecticMatrix::new(acc.clone())
            .expect("products of unipotent symplectic matrices are symplectic");
        flags.push(f0().apply(&m));
    }
    flags.push(f_infinity());
    Ok(flags)
}

/// Breaks a closed polygon into its flags: vertex pairs `(v0, v1)`,
/// `(v2, v3)`, ... each span an oriented isotropic flag. Only generic
/// minus-polygons with an even vertex count decompose this way.
pub fn polygon_to_flags(p: &LegendrianPolygon) -> Result<FlagTuple, Error> {
    if p.sign() == ClosingSign::Plus {
        return Err(Error::ContractiblePolygon);
    }
    let n = p.len();
    if n % 2 != 0 {
        return Err(Error::OddVertexCount(n));
    }
    if !p.is_generic() {
        return Err(Error::NotGeneric);
    }
    let vs = p.vertices();
    Ok((0..n / 2)
        .map(|i| {
            OrientedIsotropicFlag::new(vs[2 * i].clone(), vs[2 * i + 1].clone())
                .expect("consecutive polygon vertices span a flag")
        })
        .collect())
}

/// Rebuilds the closed polygon of a flag tuple. Odd vertices are the flag
/// lines; even vertices are oriented intersections of one flag's plane
/// with the next flag's 3-space, the wrap-around using the negated first
/// flag so that the spiral closes with sign -1.
pub fn flags_to_polygon(flags: &[OrientedIsotropicFlag]) -> Result<LegendrianPolygon, Error> {
    let k = flags.len();
    if k < 2 {
        return Err(Error::TupleTooShort(2, k));
    }
    let completions: Vec<Mat4> = flags
        .iter()
        .map(|f| complete_flag(f).into_matrix())
        .collect();
    let mut vertices = Vec::with_capacity(2 * k);
    for i in 0..k {
        vertices.push(flags[i].f1().clone());
        let plane = (flags[i].f1(), flags[i].f2());
        let (next, wrap) = if i + 1 < k { (i + 1, false) } else { (0, true) };
        let c = &completions[next];
        let (w1, w2, w3) = (c.col(0), c.col(1), c.col(2));
        let g = if wrap {
            // The spiral continues into the negated first flag.
            oriented_intersection(plane, (&w1.neg(), &w2.neg(), &w3.neg()))?
        } else {
            oriented_intersection(plane, (&w1, &w2, &w3))?
        };
        vertices.push(g);
    }
    LegendrianPolygon::new(vertices, ClosingSign::Minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::TransversalityClass;
    use crate::scalar::rat_i;

    fn e(i: usize) -> Vec4 {
        Vec4::basis(i)
    }

    fn v4(a: i64, b: i64, c: i64, d: i64) -> Vec4 {
        Vec4::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d))
    }

    fn flag(f1: Vec4, f2: Vec4) -> OrientedIsotropicFlag {
        OrientedIsotropicFlag::new(f1, f2).unwrap()
    }

    #[test]
    fn flag_construction_validates() {
        assert_eq!(
            OrientedIsotropicFlag::new(Vec4::zero(), e(1)),
            Err(Error::ZeroVector)
        );
        assert_eq!(
            OrientedIsotropicFlag::new(e(0), e(0).scale(&rat_i(5))),
            Err(Error::DependentVectors)
        );
        assert_eq!(
            OrientedIsotropicFlag::new(e(0), e(3)),
            Err(Error::NotIsotropic)
        );
    }

    #[test]
    fn flag_equality_is_oriented() {
        let base = f0();
        assert_eq!(
            base,
            flag(e(0).scale(&rat_i(2)), e(0).add(&e(1).scale(&rat_i(3))))
        );
        assert_ne!(base, flag(e(0), e(1).neg()));
        assert_ne!(base, flag(e(0).neg(), e(1)));
        assert_ne!(base, flag(e(1), e(0)));
        assert_ne!(base, base.negated());
        assert_eq!(base.negated(), flag(e(0).neg(), e(1).neg()));
        assert_ne!(base, f_infinity());
    }

    #[test]
    fn completion_of_standard_flags() {
        let id = complete_flag(&f0()).into_matrix();
        assert_eq!(id, Mat4::identity());
        let hat = complete_flag(&f_infinity()).into_matrix();
        assert_eq!(hat, Mat4::from_cols([e(3), e(2).neg(), e(1), e(0).neg()]));
    }

    #[test]
    fn completion_orientation_is_well_defined() {
        // Different representatives of one oriented flag give completions
        // related by a determinant-one change, so equal orientations.
        let a = complete_flag(&f0()).into_matrix();
        let b = complete_flag(&flag(
            e(0).scale(&rat(3, 2)),
            e(0).add(&e(1).scale(&rat_i(5))),
        ))
        .into_matrix();
        assert!(a.det().is_one());
        assert!(b.det().is_one());
    }

    #[test]
    fn oriented_intersection_standard() {
        let g = oriented_intersection((&e(0), &e(1)), (&e(1), &e(2), &e(3))).unwrap();
        assert_eq!(g, e(1));
        // Reversing the 3-space orientation flips the answer.
        let g = oriented_intersection((&e(0), &e(1)), (&e(1).neg(), &e(2), &e(3))).unwrap();
        assert_eq!(g, e(1).neg());
        // Reversing the plane orientation also flips it.
        let g = oriented_intersection((&e(1), &e(0)), (&e(1), &e(2), &e(3))).unwrap();
        assert_eq!(g, e(1).neg());
    }

    #[test]
    fn oriented_intersection_needs_full_span() {
        assert_eq!(
            oriented_intersection((&e(1), &e(2)), (&e(1), &e(2), &e(3))),
            Err(Error::BadIntersection)
        );
    }

    #[test]
    fn unipotent_matrix_shape_and_symplecticity() {
        let u = UnipotentParams::new(rat_i(3), rat_i(1), rat_i(1), rat_i(3));
        let m = u.matrix();
        assert_eq!(
            m,
            Mat4::from_rows([
                v4(1, 0, 0, 0),
                v4(3, 1, 0, 0),
                v4(1, 3, 1, 0),
                v4(1, 8, 3, 1),
            ])
        );
        assert!(m.is_symplectic());
        assert_eq!(UnipotentParams::from_matrix(&m), Some(u));
        assert_eq!(UnipotentParams::from_matrix(&Mat4::omega_matrix()), None);
    }

    #[test]
    fn semigroup_membership() {
        let p = |a: i64, b: i64, c: i64, d: i64| {
            UnipotentParams::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d)).in_positive_semigroup()
        };
        assert!(p(3, 1, 1, 3));
        assert!(!p(1, 1, 1, 1)); // ad - b vanishes
        assert!(!p(2, 1, 1, 1)); // abd - b^2 - cd vanishes
        assert!(!p(-3, 1, 1, 3));
        assert!(!p(3, 0, 1, 3));
    }

    #[test]
    fn semigroup_closed_under_inverse_conjugation() {
        // The inverse of a positive unipotent, conjugated by the sign
        // matrix diag(1,-1,1,-1), is again positive.
        let k = Mat4::diag(&[rat_i(1), rat_i(-1), rat_i(1), rat_i(-1)]);
        for (a, b, c, d) in [(3, 1, 1, 3), (2, 1, 1, 2), (4, 2, 1, 1)] {
            let u = UnipotentParams::new(rat_i(a), rat_i(b), rat_i(c), rat_i(d));
            if !u.in_positive_semigroup() {
                continue;
            }
            let conj = k.mul(&u.matrix().inverse().unwrap()).mul(&k);
            let v = UnipotentParams::from_matrix(&conj).unwrap();
            assert!(v.in_positive_semigroup(), "({a},{b},{c},{d})");
        }
    }

    #[test]
    fn normalize_standard_pair_is_identity() {
        let m = normalize_pair(&f0(), &f_infinity()).unwrap();
        assert_eq!(m.matrix(), &Mat4::identity());
    }

    #[test]
    fn normalize_failure_modes() {
        assert_eq!(
            normalize_pair(&f0(), &f0()),
            Err(NormalizeError::NotTransverse)
        );
        assert_eq!(
            normalize_pair(&f_infinity(), &f0()),
            Err(NormalizeError::OrientationMismatch)
        );
        // Lines transverse and positively paired, planes wrongly oriented.
        let g = flag(e(3), e(2));
        assert_eq!(
            normalize_pair(&f0(), &g),
            Err(NormalizeError::OrientationMismatch)
        );
    }

    #[test]
    fn normalize_moves_pair_to_standard_position() {
        let u = UnipotentParams::new(rat_i(3), rat_i(1), rat_i(1), rat_i(3));
        let m = SymplecticMatrix::new(u.matrix()).unwrap();
        let f = f0().apply(&m);
        let g = f_infinity().apply(&m);
        let n = normalize_pair(&f, &g).unwrap();
        assert_eq!(f.apply(&n), f0());
        assert_eq!(g.apply(&n), f_infinity());
    }

    #[test]
    fn unipotent_extraction() {
        let u = UnipotentParams::new(rat_i(2), rat_i(3), rat_i(5), rat_i(7));
        let h = flag(v4(1, 2, 3, 5), v4(0, 1, 7, 11));
        assert_eq!(extract_unipotent(&h), Some(u.clone()));
        // Scale-invariant in the flag, not the representatives.
        let h2 = flag(
            v4(1, 2, 3, 5).scale(&rat_i(4)),
            v4(1, 2, 3, 5).add(&v4(0, 1, 7, 11).scale(&rat_i(2))),
        );
        assert_eq!(extract_unipotent(&h2), Some(u));
        assert_eq!(extract_unipotent(&f_infinity()), None);
        assert_eq!(extract_unipotent(&f0().negated()), None);
    }

    #[test]
    fn parametrized_triples_are_positive() {
        let t = parametrize_positive_triple(&rat_i(1), &rat_i(1)).unwrap();
        assert_eq!(t[1], flag(v4(1, 3, 1, 1), v4(0, 1, 1, 2)));
        assert!(triple_positive(&t[0], &t[1], &t[2]));
        assert!(tuple_positive(&t));
        for (x, y) in [(rat(1, 2), rat_i(3)), (rat_i(5), rat(2, 7))] {
            let t = parametrize_positive_triple(&x, &y).unwrap();
            assert!(triple_positive(&t[0], &t[1], &t[2]), "x={x} y={y}");
        }
        assert_eq!(
            parametrize_positive_triple(&rat_i(0), &rat_i(1)),
            Err(Error::NotPositiveParam)
        );
        assert_eq!(
            parametrize_positive_triple(&rat_i(1), &rat_i(-2)),
            Err(Error::NotPositiveParam)
        );
    }

    #[test]
    fn non_positive_triples_are_rejected() {
        // Middle flag on the semigroup boundary: ad - b = 0.
        let h = flag(v4(1, 1, 1, 1), v4(0, 1, 1, 0));
        assert!(!triple_positive(&f0(), &h, &f_infinity()));
        // Reversed outer pair fails outright.
        let t = parametrize_positive_triple(&rat_i(1), &rat_i(1)).unwrap();
        assert!(!triple_positive(&t[2], &t[1], &t[0]));
        // Tuples shorter than three are never positive.
        assert!(!tuple_positive(&[f0(), f_infinity()]));
        assert!(!tuple_positive_by_consecutive_triples(&[
            f0(),
            f_infinity()
        ]));
    }

    #[test]
    fn sampled_tuples_are_positive_both_ways() {
        for (k, seed) in [(3usize, 1u64), (4, 7), (5, 42)] {
            let flags = sample_positive_tuple(k, seed).unwrap();
            assert_eq!(flags.len(), k);
            assert!(tuple_positive(&flags), "k={k} seed={seed}");
            assert!(
                tuple_positive_by_consecutive_triples(&flags),
                "k={k} seed={seed}"
            );
        }
        assert_eq!(sample_positive_tuple(2, 0), Err(Error::TupleTooShort(3, 2)));
    }

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let a = sample_positive_tuple(5, 99).unwrap();
        let b = sample_positive_tuple(5, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_positive_tuple(5, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn hexagon_of_the_unit_positive_triple() {
        let t = parametrize_positive_triple(&rat_i(1), &rat_i(1)).unwrap();
        let p = flags_to_polygon(&t).unwrap();
        let expected = [
            v4(1, 0, 0, 0),
            v4(1, 1, 0, 0),
            v4(1, 3, 1, 1),
            v4(0, 1, 1, 2),
            v4(0, 0, 0, 1),
            v4(0, 0, -1, 0),
        ];
        assert_eq!(p.vertices(), &expected);
        assert_eq!(p.sign(), ClosingSign::Minus);
        assert_eq!(
            p.transversality_class(),
            TransversalityClass::PositiveTransverse
        );
    }

    #[test]
    fn polygon_flags_round_trip() {
        let t = parametrize_positive_triple(&rat_i(1), &rat_i(1)).unwrap();
        let p = flags_to_polygon(&t).unwrap();
        let back = polygon_to_flags(&p).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back[0], t[0]);
        assert_eq!(back[1], t[1]);
        assert_eq!(back[2], t[2]);
    }

    #[test]
    fn flags_round_trip_through_octagon() {
        let p = LegendrianPolygon::new(
            vec![
                v4(1, 0, 0, 0),
                v4(1, 1, 0, 0),
                v4(1, 1, 1, 1),
                v4(4, 2, -1, 1),
                v4(4, 8, -4, 1),
                v4(0, 1, 1, 3),
                v4(0, 0, 0, 1),
                v4(0, 0, -1, 0),
            ],
            ClosingSign::Minus,
        )
        .unwrap();
        let flags = polygon_to_flags(&p).unwrap();
        assert_eq!(flags.len(), 4);
        let q = flags_to_polygon(&flags).unwrap();
        assert!(p.equiv_up_to_positive_scaling(&q));
    }

    #[test]
    fn octagon_flags_are_not_positive() {
        let p = LegendrianPolygon::new(
            vec![
                v4(1, 0, 0, 0),
                v4(1, 1, 0, 0),
                v4(1, 1, 1, 1),
                v4(4, 2, -1, 1),
                v4(4, 8, -4, 1),
                v4(0, 1, 1, 3),
                v4(0, 0, 0, 1),
                v4(0, 0, -1, 0),
            ],
            ClosingSign::Minus,
        )
        .unwrap();
        let flags = polygon_to_flags(&p).unwrap();
        assert!(!tuple_positive(&flags));
        assert!(!tuple_positive_by_consecutive_triples(&flags));
    }

    #[test]
    fn polygon_to_flags_preconditions() {
        let quad_plus =
            LegendrianPolygon::new(vec![e(0), e(1), e(3), e(2).neg()], ClosingSign::Plus).unwrap();
        assert_eq!(
            polygon_to_flags(&quad_plus),
            Err(Error::ContractiblePolygon)
        );
        let pentagon = LegendrianPolygon::new(
            vec![e(0), e(1), e(3), v4(0, 1, 1, 1), v4(1, 2, 1, 0)],
            ClosingSign::Minus,
        )
        .unwrap();
        assert_eq!(polygon_to_flags(&pentagon), Err(Error::OddVertexCount(5)));
        let non_generic = LegendrianPolygon::new(
            vec![e(0), e(1), e(3), e(2), v4(1, 0, 1, 1), v4(1, 1, 1, 0)],
            ClosingSign::Minus,
        )
        .unwrap();
        assert_eq!(polygon_to_flags(&non_generic), Err(Error::NotGeneric));
    }

    #[test]
    fn flag_tuple_too_short_for_polygon() {
        assert_eq!(flags_to_polygon(&[f0()]), Err(Error::TupleTooShort(2, 1)));
    }

    #[test]
    fn positive_tuples_give_positive_transverse_polygons() {
        for seed in [3u64, 11, 2024] {
            let flags = sample_positive_tuple(4, seed).unwrap();
            let p = flags_to_polygon(&flags).unwrap();
            assert_eq!(
                p.transversality_class(),
                TransversalityClass::PositiveTransverse,
                "seed={seed}"
            );
            assert_eq!(p.transverse_by_segments(), Ok(true));
            let back = polygon_to_flags(&p).unwrap();
            assert_eq!(back, flags);
        }
    }

    #[test]
    fn maslov_form_of_normalized_positive_triple() {
        // For the middle flag pushed off by the unipotent with parameters
        // (a, b, c, d), the Maslov form of the three flag planes on the
        // pushed basis is exactly 2 * [[a*b - c, b], [b, d]], which is
        // positive definite whenever the parameters lie in the positive
        // semigroup.
        use crate::lagrangian::{maslov_form, maslov_index, Lagrangian, MaslovIndex};
        let (a, b, c, d) = (rat_i(3), rat_i(1), rat_i(1), rat_i(3));
        let u = UnipotentParams::new(a.clone(), b.clone(), c.clone(), d.clone());
        let m = SymplecticMatrix::new(u.matrix()).unwrap();
        let l1 = Lagrangian::new(e(0), e(1)).unwrap();
        let mid = f0().apply(&m);
        let l2 = Lagrangian::new(mid.f1().clone(), mid.f2().clone()).unwrap();
        let l3 = Lagrangian::new(e(3), e(2).neg()).unwrap();
        let form = maslov_form(&l1, &l2, &l3).unwrap();
        let two = rat_i(2);
        let expected = [[&two * (&a * &b - &c), &two * &b], [&two * &b, &two * &d]];
        assert_eq!(form, expected);
        assert_eq!(maslov_index(&l1, &l2, &l3), Ok(MaslovIndex::PlusOne));
    }

    #[test]
    fn positivity_survives_cyclic_shift_and_negation() {
        let t = parametrize_positive_triple(&rat(3, 2), &rat(5, 4)).unwrap();
        assert!(triple_positive(&t[0], &t[1], &t[2]));
        // Cyclic shift with a sign correction on the wrapped flag.
        assert!(triple_positive(&t[1], &t[2], &t[0].negated()));
        assert!(triple_positive(&t[2], &t[0].negated(), &t[1].negated()));
        // Negating every flag preserves positivity.
        let neg: FlagTuple = t.iter().map(|f| f.negated()).collect();
        assert!(tuple_positive(&neg));
        let tuple = sample_positive_tuple(5, 13).unwrap();
        let neg: FlagTuple = tuple.iter().map(|f| f.negated()).collect();
        assert!(tuple_positive_by_consecutive_triples(&neg));
    }

    #[test]
    fn inverse_identity_check_api() {
        for seed in 0..10 {
            let u = sample_positive_unipotent(seed);
            assert_eq!(semigroup_inverse_identity_check(&u), Ok(true));
        }
        let outside = UnipotentParams::new(rat_i(1), rat_i(1), rat_i(1), rat_i(1));
        assert_eq!(
            semigroup_inverse_identity_check(&outside),
            Err(Error::NotInSemigroup)
        );
    }

    #[test]
    fn factorization_of_a_positive_quadruple() {
        // Quadruple F0, u1 F0, u1 u2 F0, F_inf: normalizing the outer pair
        // of each consecutive triple recovers the respective factor.
        let u1 = UnipotentParams::new(rat_i(3), rat_i(1), rat_i(1), rat_i(3));
        let u2 = UnipotentParams::new(rat_i(2), rat_i(1), rat_i(1), rat_i(2));
        let m1 = SymplecticMatrix::new(u1.matrix()).unwrap();
        let m12 = SymplecticMatrix::new(u1.matrix().mul(&u2.matrix())).unwrap();
        let tuple = vec![f0(), f0().apply(&m1), f0().apply(&m12), f_infinity()];
        assert!(tuple_positive(&tuple));
        let n1 = normalize_pair(&tuple[0], &tuple[3]).unwrap();
        assert_eq!(extract_unipotent(&tuple[1].apply(&n1)), Some(u1));
        let n2 = normalize_pair(&tuple[1], &tuple[3]).unwrap();
        assert_eq!(extract_unipotent(&tuple[2].apply(&n2)), Some(u2));
    }

    #[test]
    fn distinct_parameters_give_distinct_middle_flags() {
        let mut seen = Vec::new();
        for (x, y) in [
            (rat_i(1), rat_i(1)),
            (rat_i(2), rat_i(1)),
            (rat_i(1), rat_i(2)),
            (rat(1, 2), rat(1, 3)),
        ] {
            let t = parametrize_positive_triple(&x, &y).unwrap();
            let n = normalize_pair(&t[0], &t[2]).unwrap();
            let u = extract_unipotent(&t[1].apply(&n)).unwrap();
            assert!(u.in_positive_semigroup());
            assert!(!seen.contains(&u), "params ({x},{y}) repeat a unipotent");
            seen.push(u);
        }
    }
}
