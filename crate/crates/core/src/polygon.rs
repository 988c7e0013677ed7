use crate::error::Error;
use crate::lagrangian::{maslov_index, Lagrangian, MaslovIndex};
use crate::scalar::Rat;
use crate::vec4::{kernel_basis, omega_functional, rank, SymplecticMatrix, Vec4};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sign with which a polygon closes up: the vertex after the last one is
/// `sign * v0`. Minus-polygons lift to arcs connecting antipodes in the
/// 3-sphere; plus-polygons lift to closed loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosingSign {
    Plus,
    Minus,
}

impl ClosingSign {
    pub fn value(self) -> i32 {
        match self {
            ClosingSign::Plus => 1,
            ClosingSign::Minus => -1,
        }
    }

    pub fn apply(self, v: &Vec4) -> Vec4 {
        match self {
            ClosingSign::Plus => v.clone(),
            ClosingSign::Minus => v.neg(),
        }
    }
}

impl std::fmt::Display for ClosingSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosingSign::Plus => write!(f, "+"),
            ClosingSign::Minus => write!(f, "-"),
        }
    }
}

/// Answer of the transversality test, including the common sign of the
/// vertex pairings when the polygon is transverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransversalityClass {
    PositiveTransverse,
    NegativeTransverse,
    NotTransverse,
}

impl TransversalityClass {
    pub fn is_transverse(self) -> bool {
        !matches!(self, TransversalityClass::NotTransverse)
    }
}

impl std::fmt::Display for TransversalityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TransversalityClass::PositiveTransverse => "positive-transverse",
            TransversalityClass::NegativeTransverse => "negative-transverse",
            TransversalityClass::NotTransverse => "not-transverse",
        };
        write!(f, "{s}")
    }
}

/// Free homotopy class of the polygon in the projective 3-space: plus
/// polygons bound disks, minus polygons represent the generator of the
/// fundamental group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyClass {
    Contractible,
    Generator,
}

impl std::fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HomotopyClass::Contractible => "contractible",
            HomotopyClass::Generator => "generator",
        };
        write!(f, "{s}")
    }
}

/// Closed Legendrian polygon in projective 3-space, stored as a spiral of
/// vertex representatives `v0, ..., v_{n-1}` that continues with
/// `sign * v0`. Consecutive representatives select the line segments, so
/// the representatives are part of the data, not just the projective points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendrianPolygon {
    vertices: Vec<Vec4>,
    sign: ClosingSign,
}

impl LegendrianPolygon {
    /// Validates and builds a polygon:
    /// at least 4 vertices, consecutive vertices pair to zero under the
    /// symplectic form (cyclically), and every three consecutive vertices
    /// are linearly independent.
    pub fn new(vertices: Vec<Vec4>, sign: ClosingSign) -> Result<Self, Error> {
        let n = vertices.len();
        if n < 4 {
            return Err(Error::TooFewVertices(n));
        }
        for v in &vertices {
            if v.is_zero() {
                return Err(Error::ZeroVector);
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if !vertices[i].omega(&vertices[j]).is_zero() {
                return Err(Error::NotLegendrian(i, j));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let k = (i + 2) % n;
            if rank(&[
                vertices[i].clone(),
                vertices[j].clone(),
                vertices[k].clone(),
            ]) != 3
            {
                return Err(Error::DegenerateCorner(i, j, k));
            }
        }
        Ok(LegendrianPolygon { vertices, sign })
    }

    #[allow(clippy::len_without_is_empty)] // a polygon has at least 4 vertices
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn sign(&self) -> ClosingSign {
        self.sign
    }

    pub fn vertices(&self) -> &[Vec4] {
        &self.vertices
    }

    /// Representative of vertex `i` on the spiral: indices past the end wrap
    /// around with the closing sign applied once per full turn.
    pub fn vertex_rep(&self, i: usize) -> Vec4 {
        let n = self.vertices.len();
        let v = &self.vertices[i % n];
        match (self.sign, (i / n) % 2) {
            (ClosingSign::Minus, 1) => v.neg(),
            _ => v.clone(),
        }
    }

    /// The Lagrangian plane spanned by the endpoints of edge `i`
    /// (from vertex `i` to vertex `i+1`).
    pub fn edge_lagrangian(&self, i: usize) -> Lagrangian {
        Lagrangian::new(self.vertex_rep(i), self.vertex_rep(i + 1))
            .expect("consecutive polygon vertices span a Lagrangian plane")
    }

    fn cyclically_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.vertices.len();
        let d = (j + n - i) % n;
        d == 1 || d == n - 1
    }

    /// True when every pair of non-adjacent vertices is strictly
    /// non-incident under the symplectic form. This also forces every pair
    /// of non-adjacent edges onto distinct projective lines: two edges on a
    /// common line would span one Lagrangian plane, making their endpoints
    /// incident. Edge planes may still share a single direction that lies
    /// on neither edge; that happens for transverse polygons with eight or
    /// more vertices and does not break genericity.
    pub fn is_generic(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cyclically_adjacent(i, j) {
                    continue;
                }
                if self.vertices[i].omega(&self.vertices[j]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Transversality via the sign test: a minus-polygon is transverse
    /// exactly when all pairings of non-adjacent vertex representatives
    /// carry the same strict sign. Plus-polygons are never transverse.
    pub fn transversality_class(&self) -> TransversalityClass {
        if self.sign == ClosingSign::Plus {
            return TransversalityClass::NotTransverse;
        }
        let n = self.vertices.len();
        let mut sign = 0i8;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cyclically_adjacent(i, j) {
                    continue;
                }
                let w = self.vertices[i].omega(&self.vertices[j]);
                let s = if w.is_positive() {
                    1
                } else if w.is_negative() {
                    -1
                } else {
                    return TransversalityClass::NotTransverse;
                };
                if sign == 0 {
                    sign = s;
                } else if sign != s {
                    return TransversalityClass::NotTransverse;
                }
            }
        }
        match sign {
            1 => TransversalityClass::PositiveTransverse,
            -1 => TransversalityClass::NegativeTransverse,
            // Unreachable for valid polygons (n >= 4 always has a
            // non-adjacent pair), kept total for safety.
            _ => TransversalityClass::NotTransverse,
        }
    }

    /// Transversality decided segment by segment, with no sign shortcut:
    /// checks that non-adjacent vertices are never incident and that the
    /// bilinear incidence form of every pair of non-adjacent closed edges
    /// keeps a weak sign on the whole parameter square.
    pub fn transverse_by_segments(&self) -> Result<bool, Error> {
        let n = self.vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cyclically_adjacent(i, j) {
                    continue;
                }
                if self.vertices[i].omega(&self.vertices[j]).is_zero() {
                    return Ok(false);
                }
            }
        }
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue; // adjacent edges share vertex 0
                }
                let a = (self.vertex_rep(i), self.vertex_rep(i + 1));
                let b = (self.vertex_rep(j), self.vertex_rep(j + 1));
                if !segment_pair_nonincident((&a.0, &a.1), (&b.0, &b.1))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Maslov indices of all cyclically ordered triples of pairwise
    /// non-adjacent edges, in lexicographic order of the index triples.
    /// Only defined for transverse polygons; empty for 4 or 5 vertices.
    /// Errors if some triple contains a pair of edge planes sharing a
    /// direction, which leaves that triple's index undefined.
    pub fn edge_triple_maslov_indices(&self) -> Result<Vec<MaslovIndex>, Error> {
        if !self.transversality_class().is_transverse() {
            return Err(Error::NotTransversePolygon);
        }
        let n = self.vertices.len();
        let adj = |i: usize, j: usize| {
            let d = (j + n - i) % n;
            d == 1 || d == n - 1
        };
        let mut indices = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if adj(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if adj(j, k) || adj(k, i) {
                        continue;
                    }
                    indices.push(maslov_index(
                        &self.edge_lagrangian(i),
                        &self.edge_lagrangian(j),
                        &self.edge_lagrangian(k),
                    )?);
                }
            }
        }
        Ok(indices)
    }

    /// True when every cyclically ordered triple of pairwise non-adjacent
    /// edges is a triple of pairwise transverse Lagrangians with Maslov
    /// index +1. Vacuously true for 4 or 5 vertices. A triple whose index
    /// is undefined (two of its edge planes share a direction) cannot have
    /// index +1, so it makes the answer false rather than an error. Only
    /// defined for transverse polygons.
    pub fn has_decreasing_curvature(&self) -> Result<bool, Error> {
        if !self.transversality_class().is_transverse() {
            return Err(Error::NotTransversePolygon);
        }
        let n = self.vertices.len();
        let adj = |i: usize, j: usize| {
            let d = (j + n - i) % n;
            d == 1 || d == n - 1
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if adj(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if adj(j, k) || adj(k, i) {
                        continue;
                    }
                    match maslov_index(
                        &self.edge_lagrangian(i),
                        &self.edge_lagrangian(j),
                        &self.edge_lagrangian(k),
                    ) {
                        Ok(MaslovIndex::PlusOne) => {}
                        Ok(_) => return Ok(false),
                        Err(Error::NotTransverse) | Err(Error::DegenerateMaslovForm) => {
                            return Ok(false)
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn homotopy_class(&self) -> HomotopyClass {
        match self.sign {
            ClosingSign::Plus => HomotopyClass::Contractible,
            ClosingSign::Minus => HomotopyClass::Generator,
        }
    }

    /// Applies a symplectic transformation vertex by vertex. All defining
    /// conditions are preserved, so the result is again a valid polygon.
    pub fn apply_symplectic(&self, m: &SymplecticMatrix) -> LegendrianPolygon {
        let vertices = self.vertices.iter().map(|v| m.apply(v)).collect();
        LegendrianPolygon::new(vertices, self.sign)
            .expect("symplectic maps preserve polygon validity")
    }

    /// Searches for a pair of incident points on non-adjacent edges: an
    /// exact rational parameter pair `(t, s)` on two edges whose points
    /// pair to zero under the symplectic form. Incidences forced by the
    /// polygon structure (coinciding or cyclically adjacent vertices) are
    /// skipped. Transverse polygons have no witness; the converse search
    /// walks corner data and rational roots of the bilinear incidence form
    /// along grid lines, which finds a witness whenever the corner signs of
    /// some edge pair disagree.
    pub fn incidence_witness(&self) -> Option<IncidenceWitness> {
        let n = self.vertices.len();
        // Non-adjacent vertex pairs first: they sit at edge corners.
        for i in 0..n {
            for j in (i + 1)..n {
                if self.cyclically_adjacent(i, j) {
                    continue;
                }
                if self.vertices[i].omega(&self.vertices[j]).is_zero() {
                    return Some(self.witness_at(i, j, Rat::zero(), Rat::zero()));
                }
            }
        }
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if let Some((t, s)) = self.edge_pair_witness_params(i, j) {
                    return Some(self.witness_at(i, j, t, s));
                }
            }
        }
        None
    }

    /// Point on edge `i` at parameter `t`: `(1-t) v_i + t v_{i+1}`.
    pub fn edge_point(&self, i: usize, t: &Rat) -> Vec4 {
        let one_minus = Rat::one() - t;
        self.vertex_rep(i)
            .scale(&one_minus)
            .add(&self.vertex_rep(i + 1).scale(t))
    }

    fn witness_at(&self, i: usize, j: usize, t: Rat, s: Rat) -> IncidenceWitness {
        let point_a = self.edge_point(i, &t);
        let point_b = self.edge_point(j, &s);
        debug_assert!(point_a.omega(&point_b).is_zero());
        IncidenceWitness {
            edge_a: i,
            edge_b: j,
            t,
            s,
            point_a,
            point_b,
        }
    }

    /// A corner parameter pair names a pair of vertices; such a witness is
    /// spurious when those vertices coincide or are cyclic neighbours.
    fn spurious_witness(&self, i: usize, j: usize, t: &Rat, s: &Rat) -> bool {
        let n = self.vertices.len();
        let corner = |x: &Rat| {
            if x.is_zero() {
                Some(0usize)
            } else if x.is_one() {
                Some(1)
            } else {
                None
            }
        };
        match (corner(t), corner(s)) {
            (Some(dt), Some(ds)) => {
                let a = (i + dt) % n;
                let b = (j + ds) % n;
                a == b || self.cyclically_adjacent(a, b)
            }
            _ => false,
        }
    }

    fn edge_pair_witness_params(&self, i: usize, j: usize) -> Option<(Rat, Rat)> {
        let a = (self.vertex_rep(i), self.vertex_rep(i + 1));
        let b = (self.vertex_rep(j), self.vertex_rep(j + 1));
        let [c00, c01, c10, c11] = segment_incidence_corners((&a.0, &a.1), (&b.0, &b.1));
        if c00.is_zero() && c01.is_zero() && c10.is_zero() && c11.is_zero() {
            // The whole parameter square is incident; pick its centre.
            let half = Rat::new(1.into(), 2.into());
            return Some((half.clone(), half));
        }
        let phi = |t: &Rat, s: &Rat| -> Rat {
            let one_minus_t = Rat::one() - t;
            let one_minus_s = Rat::one() - s;
            &one_minus_t * &one_minus_s * &c00
                + &one_minus_t * s * &c01
                + t * &one_minus_s * &c10
                + t * s * &c11
        };
        let grid: Vec<Rat> = (0..=16).map(|k| Rat::new(k.into(), 16.into())).collect();
        // Fix t, solve the affine function of s for a root in [0, 1].
        for t in &grid {
            let lo = phi(t, &Rat::zero());
            let hi = phi(t, &Rat::one());
            for (val, s) in [(&lo, Rat::zero()), (&hi, Rat::one())] {
                if val.is_zero() && !self.spurious_witness(i, j, t, &s) {
                    return Some((t.clone(), s));
                }
            }
            if (lo.is_positive() && hi.is_negative()) || (lo.is_negative() && hi.is_positive()) {
                let s = &lo / (&lo - &hi);
                return Some((t.clone(), s));
            }
        }
        // Symmetric pass: fix s, solve for t.
        for s in &grid {
            let lo = phi(&Rat::zero(), s);
            let hi = phi(&Rat::one(), s);
            for (val, t) in [(&lo, Rat::zero()), (&hi, Rat::one())] {
                if val.is_zero() && !self.spurious_witness(i, j, &t, s) {
                    return Some((t, s.clone()));
                }
            }
            if (lo.is_positive() && hi.is_negative()) || (lo.is_negative() && hi.is_positive()) {
                let t = &lo / (&lo - &hi);
                return Some((t, s.clone()));
            }
        }
        None
    }

    /// Same polygon as spirals: equal length and closing sign, and each
    /// vertex representative a strictly positive multiple of the other's.
    pub fn equiv_up_to_positive_scaling(&self, other: &LegendrianPolygon) -> bool {
        if self.vertices.len() != other.vertices.len() || self.sign != other.sign {
            return false;
        }
        for (v, w) in self.vertices.iter().zip(&other.vertices) {
            let Some(pivot) = (0..4).find(|&c| !v[c].is_zero()) else {
                return false;
            };
            if w[pivot].is_zero() {
                return false;
            }
            let lambda = &w[pivot] / &v[pivot];
            if !lambda.is_positive() || v.scale(&lambda) != *w {
                return false;
            }
        }
        true
    }
}

/// Exact certificate of a self-incidence: points at parameters `t` on edge
/// `edge_a` and `s` on edge `edge_b` that pair to zero under the symplectic
/// form, i.e. a pair of mutually incident contact elements along the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceWitness {
    pub edge_a: usize,
    pub edge_b: usize,
    pub t: Rat,
    pub s: Rat,
    pub point_a: Vec4,
    pub point_b: Vec4,
}

/// Draws a random valid polygon with `n >= 4` vertices and the given
/// closing sign, deterministically from the seed. Vertex coordinates are
/// small integers; the Legendrian chain conditions are solved linearly and
/// the construction retries until the corner independence conditions hold.
/// Neither genericity nor transversality is enforced, which makes the
/// output suitable for rejection sampling.
pub fn sample_legendrian_polygon(n: usize, sign: ClosingSign, seed: u64) -> LegendrianPolygon {
    assert!(n >= 4, "polygons need at least four vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(p) = try_sample_chain(n, sign, &mut rng) {
            return p;
        }
    }
}

fn try_sample_chain(
    n: usize,
    sign: ClosingSign,
    rng: &mut ChaCha8Rng,
) -> Option<LegendrianPolygon> {
    let mut vertices: Vec<Vec4> = Vec::with_capacity(n);
    let first = random_small_vec(rng);
    if first.is_zero() {
        return None;
    }
    vertices.push(first);
    for k in 1..n {
        let mut rows = vec![omega_functional(&vertices[k - 1])];
        if k == n - 1 {
            rows.push(omega_functional(&vertices[0]));
        }
        let kernel = kernel_basis(&rows, 4);
        let v = random_combination(&kernel, rng)?;
        vertices.push(v);
    }
    LegendrianPolygon::new(vertices, sign).ok()
}

fn random_small_vec(rng: &mut ChaCha8Rng) -> Vec4 {
    let mut c = [0i64; 4];
    for x in &mut c {
        *x = rng.gen_range(-3..=3);
    }
    Vec4::new(
        Rat::from_integer(c[0].into()),
        Rat::from_integer(c[1].into()),
        Rat::from_integer(c[2].into()),
        Rat::from_integer(c[3].into()),
    )
}

fn random_combination(basis: &[Vec<Rat>], rng: &mut ChaCha8Rng) -> Option<Vec4> {
    let mut acc = Vec4::zero();
    for b in basis {
        let coeff = Rat::from_integer(rng.gen_range(-3i64..=3).into());
        let term = Vec4::new(b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone());
        acc = acc.add(&term.scale(&coeff));
    }
    if acc.is_zero() {
        None
    } else {
        Some(acc)
    }
}

/// Corner values of the incidence form
/// `phi(t, s) = omega((1-t) a0 + t a1, (1-s) b0 + s b1)` on the unit square,
/// in the order `(0,0), (0,1), (1,0), (1,1)`.
pub fn segment_incidence_corners(a: (&Vec4, &Vec4), b: (&Vec4, &Vec4)) -> [Rat; 4] {
    [
        a.0.omega(b.0),
        a.0.omega(b.1),
        a.1.omega(b.0),
        a.1.omega(b.1),
    ]
}

/// Whether the closed segments `a` and `b` have no incident interior point
/// pair. The incidence form is bilinear, so its range on the square is the
/// hull of the corner values: a strict sign change forces an incidence, a
/// weak constant sign confines zeros to the corners. An identically zero
/// form means the segments are incident everywhere; that is reported as an
/// error because no isolated witness exists.
pub fn segment_pair_nonincident(a: (&Vec4, &Vec4), b: (&Vec4, &Vec4)) -> Result<bool, Error> {
    let corners = segment_incidence_corners(a, b);
    if corners.iter().all(|c| c.is_zero()) {
        return Err(Error::SegmentPairDegenerate);
    }
    let any_pos = corners.iter().any(|c| c.is_positive());
    let any_neg = corners.iter().any(|c| c.is_negative());
    Ok(!(any_pos && any_neg))
}
