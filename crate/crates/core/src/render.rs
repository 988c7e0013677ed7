//! Flattening polygons and circle families to screen geometry and SVG text.
//!
//! This is the only module that touches floating point, and every float here
//! is obtained from an exact rational at the last step. The pipeline: move
//! the picture away from infinity with an exact Mobius transformation when
//! necessary, read off each edge's circle and the contact elements at its
//! vertices exactly, pick the correct arc between the endpoints by exact
//! evaluation at the edge midpoint, and only then flatten to `f64` for
//! layout. Edges whose circle collapses to a point are drawn as the
//! co-orientation arrow alone.

use crate::circles::{
    contact_element, lagrangian_to_circle, mobius_embed, CoorientedCircle, MobiusMatrix,
};
use crate::error::Error;
use crate::lagrangian::Lagrangian;
use crate::polygon::LegendrianPolygon;
use crate::scalar::{rat, to_f64, CRat};
use crate::vec4::SymplecticMatrix;
use num_traits::Zero;
use std::f64::consts::TAU;

/// One drawn circular arc from `start` to `end`, in world coordinates
/// (y axis pointing up).
#[derive(Debug, Clone)]
pub struct ArcGeom {
    pub center: (f64, f64),
    pub radius: f64,
    pub start: (f64, f64),
    pub end: (f64, f64),
    /// Whether the arc runs counterclockwise from start to end.
    pub ccw: bool,
    /// Index of the polygon edge this arc belongs to.
    pub edge: usize,
}

/// A co-orientation arrow; `direction` has unit length.
#[derive(Debug, Clone)]
pub struct ArrowGeom {
    pub base: (f64, f64),
    pub direction: (f64, f64),
}

/// A full circle, used by circle-family scenes.
#[derive(Debug, Clone)]
pub struct CircleGeom {
    pub center: (f64, f64),
    pub radius: f64,
}

/// A point circle.
#[derive(Debug, Clone)]
pub struct PointGeom {
    pub at: (f64, f64),
}

/// Screen-ready geometry: the last stop before SVG text.
#[derive(Debug, Clone, Default)]
pub struct RenderScene {
    pub arcs: Vec<ArcGeom>,
    pub arrows: Vec<ArrowGeom>,
    pub circles: Vec<CircleGeom>,
    pub points: Vec<PointGeom>,
    /// Number of polygon edges behind the arcs (0 for circle families);
    /// used for the cyclic adjacency relation in crossing detection.
    pub edge_count: usize,
}

/// Searches for an exact transformation placing every given plane's circle
/// in the finite chart: the identity first, then inversions about rational
/// points row by row. Any circle blocks at most two candidates of the rows
/// it does not equal, and there are more rows than planes, so the search
/// succeeds whenever the input is finite.
fn finite_chart_move(planes: &[Lagrangian]) -> Result<SymplecticMatrix, Error> {
    let finite = |m: &SymplecticMatrix| {
        planes.iter().all(|p| {
            let moved = p
                .apply(m.matrix())
                .expect("symplectic maps preserve planes");
            matches!(
                lagrangian_to_circle(&moved),
                CoorientedCircle::Circle { .. }
            )
        })
    };
    let identity = SymplecticMatrix::new(crate::vec4::Mat4::identity())
        .expect("the identity preserves the symplectic form");
    if finite(&identity) {
        return Ok(identity);
    }
    let n = planes.len() as i64;
    for row in 0..=(n + 2) {
        let y = match row {
            0 => rat(0, 1),
            r if r % 2 == 1 => rat(1, r + 1),
            r => rat(-1, r + 1),
        };
        for x in -(n + 1)..=(n + 1) {
            let q = CRat::new(rat(x, 1), y.clone());
            let m = mobius_embed(&MobiusMatrix::inversion_at(&q));
            if finite(&m) {
                return Ok(m);
            }
        }
    }
    Err(Error::Unrenderable)
}

fn base_to_f64(v: &crate::vec4::Vec4) -> (f64, f64) {
    let elt = contact_element(v).expect("polygon vertices are nonzero");
    let w = elt
        .base
        .expect("vertices of finite circles have finite bases");
    (to_f64(&w.re), to_f64(&w.im))
}

fn unit_direction(v: &crate::vec4::Vec4) -> (f64, f64) {
    let elt = contact_element(v).expect("polygon vertices are nonzero");
    let dx = to_f64(&elt.direction.re);
    let dy = to_f64(&elt.direction.im);
    let len = (dx * dx + dy * dy).sqrt();
    (dx / len, dy / len)
}

/// Builds the drawable scene of a polygon: per edge either a circular arc
/// between the two vertex contact elements (the side of the circle picked by
/// exact evaluation at the edge midpoint) or, for a point-circle edge, the
/// collapse point; plus one co-orientation arrow per vertex. The polygon is
/// first moved into the finite chart by an exact Mobius transformation.
pub fn polygon_scene(p: &LegendrianPolygon) -> Result<RenderScene, Error> {
    let n = p.vertices().len();
    let planes: Vec<Lagrangian> = (0..n).map(|i| p.edge_lagrangian(i)).collect();
    let chart = finite_chart_move(&planes)?;
    let moved = p.apply_symplectic(&chart);

    let mut scene = RenderScene {
        edge_count: n,
        ..RenderScene::default()
    };
    for i in 0..n {
        scene.arrows.push(ArrowGeom {
            base: base_to_f64(&moved.vertex_rep(i)),
            direction: unit_direction(&moved.vertex_rep(i)),
        });
    }
    for i in 0..n {
        let CoorientedCircle::Circle {
            center,
            signed_radius,
        } = lagrangian_to_circle(&moved.edge_lagrangian(i))
        else {
            unreachable!("the chart move keeps every edge circle finite");
        };
        let c = (to_f64(&center.0), to_f64(&center.1));
        if signed_radius.is_zero() {
            scene.points.push(PointGeom { at: c });
            continue;
        }
        let start = scene.arrows[i].base;
        let end = scene.arrows[(i + 1) % n].base;
        let mid = base_to_f64(&moved.edge_point(i, &rat(1, 2)));
        let ang = |p: (f64, f64)| (p.1 - c.1).atan2(p.0 - c.0);
        // Counterclockwise when the exact midpoint is reached before the
        // endpoint while sweeping counterclockwise from the start.
        let ccw_delta = |x: f64| (x - ang(start)).rem_euclid(TAU);
        let ccw = ccw_delta(ang(mid)) <= ccw_delta(ang(end));
        scene.arcs.push(ArcGeom {
            center: c,
            radius: to_f64(&signed_radius).abs(),
            start,
            end,
            ccw,
            edge: i,
        });
    }
    Ok(scene)
}

/// Builds the scene of a circle family: full circles, with point circles as
/// dots. Circles through infinity are first moved into the finite chart.
pub fn circles_scene(circles: &[CoorientedCircle]) -> Result<RenderScene, Error> {
    let planes: Vec<Lagrangian> = circles.iter().map(|c| c.lagrangian()).collect();
    let chart = finite_chart_move(&planes)?;
    let mut scene = RenderScene::default();
    for plane in &planes {
        let moved = plane.apply(chart.matrix()).expect("symplectic map");
        let CoorientedCircle::Circle {
            center,
            signed_radius,
        } = lagrangian_to_circle(&moved)
        else {
            unreachable!("the chart move keeps every circle finite");
        };
        let at = (to_f64(&center.0), to_f64(&center.1));
        if signed_radius.is_zero() {
            scene.points.push(PointGeom { at });
        } else {
            scene.circles.push(CircleGeom {
                center: at,
                radius: to_f64(&signed_radius).abs(),
            });
        }
    }
    Ok(scene)
}

impl RenderScene {
    /// Bounding box over everything drawable; `None` for an empty scene.
    fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        let mut b: Option<(f64, f64, f64, f64)> = None;
        let mut take = |x: f64, y: f64| {
            b = Some(match b {
                None => (x, y, x, y),
                Some((x0, y0, x1, y1)) => (x0.min(x), y0.min(y), x1.max(x), y1.max(y)),
            });
        };
        for a in &self.arcs {
            take(a.center.0 - a.radius, a.center.1 - a.radius);
            take(a.center.0 + a.radius, a.center.1 + a.radius);
        }
        for c in &self.circles {
            take(c.center.0 - c.radius, c.center.1 - c.radius);
            take(c.center.0 + c.radius, c.center.1 + c.radius);
        }
        for p in &self.points {
            take(p.at.0, p.at.1);
        }
        for a in &self.arrows {
            take(a.base.0, a.base.1);
        }
        b
    }

    fn extent(&self) -> f64 {
        match self.bounds() {
            Some((x0, y0, x1, y1)) => (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE),
            None => 1.0,
        }
    }
}

fn dist(p: (f64, f64), q: (f64, f64)) -> f64 {
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

/// Angular membership of a point (assumed radially close) in the arc.
fn on_arc(arc: &ArcGeom, pt: (f64, f64), tol: f64) -> bool {
    if (dist(pt, arc.center) - arc.radius).abs() > tol {
        return false;
    }
    let ang = |p: (f64, f64)| (p.1 - arc.center.1).atan2(p.0 - arc.center.0);
    let tol_ang = (tol / arc.radius.max(tol)).min(TAU);
    let (from, to) = if arc.ccw {
        (ang(arc.start), ang(arc.end))
    } else {
        (ang(arc.end), ang(arc.start))
    };
    let sweep = (to - from).rem_euclid(TAU);
    let d = (ang(pt) - from).rem_euclid(TAU);
    d <= sweep + tol_ang || d >= TAU - tol_ang
}

fn near_endpoint(arc: &ArcGeom, pt: (f64, f64), tol: f64) -> bool {
    dist(pt, arc.start) <= tol || dist(pt, arc.end) <= tol
}

/// Intersection candidates of the two arcs' supporting circles. Arcs on a
/// shared circle contribute each other's endpoints and midpoints as
/// candidates so that overlaps are caught by the membership filter.
fn circle_meet_candidates(a: &ArcGeom, b: &ArcGeom, tol: f64) -> Vec<(f64, f64)> {
    let d = dist(a.center, b.center);
    if d <= tol && (a.radius - b.radius).abs() <= tol {
        let mid = |arc: &ArcGeom| {
            let ang = |p: (f64, f64)| (p.1 - arc.center.1).atan2(p.0 - arc.center.0);
            let from = ang(arc.start);
            let sweep = if arc.ccw {
                (ang(arc.end) - from).rem_euclid(TAU)
            } else {
                -((from - ang(arc.end)).rem_euclid(TAU))
            };
            let m = from + sweep / 2.0;
            (
                arc.center.0 + arc.radius * m.cos(),
                arc.center.1 + arc.radius * m.sin(),
            )
        };
        return vec![a.start, a.end, mid(a), b.start, b.end, mid(b)];
    }
    if d > a.radius + b.radius + tol || d < (a.radius - b.radius).abs() - tol || d <= tol {
        return Vec::new();
    }
    // Standard two-circle intersection, clamped into tangency when the
    // configuration is within tolerance of touching.
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h2 = a.radius * a.radius - along * along;
    let ux = (b.center.0 - a.center.0) / d;
    let uy = (b.center.1 - a.center.1) / d;
    let px = a.center.0 + along * ux;
    let py = a.center.1 + along * uy;
    if h2 <= 0.0 {
        return vec![(px, py)];
    }
    let h = h2.sqrt();
    vec![(px - h * uy, py + h * ux), (px + h * uy, py - h * ux)]
}

/// Finds contacts between arcs of non-adjacent edges, at a tolerance
/// relative to the scene extent. A contact at a point that is an endpoint
/// of both arcs does not count (edges meeting across a collapsed edge touch
/// there legitimately); any interior contact — crossing or tangency — does.
pub fn detect_crossings(scene: &RenderScene, tol_rel: f64) -> Vec<(usize, usize)> {
    let tol = tol_rel * scene.extent();
    let n = scene.edge_count;
    let adjacent = |i: usize, j: usize| {
        let d = (i + n - j) % n;
        d <= 1 || d == n - 1
    };
    let mut hits = Vec::new();
    for (ia, a) in scene.arcs.iter().enumerate() {
        for b in scene.arcs.iter().skip(ia + 1) {
            if n > 0 && adjacent(a.edge, b.edge) {
                continue;
            }
            let found = circle_meet_candidates(a, b, tol).into_iter().any(|pt| {
                on_arc(a, pt, tol)
                    && on_arc(b, pt, tol)
                    && !(near_endpoint(a, pt, tol) && near_endpoint(b, pt, tol))
            });
            if found {
                hits.push((a.edge, b.edge));
            }
        }
    }
    hits
}

/// Formats a screen coordinate with three decimals, normalizing `-0.000`.
fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Renders the scene as self-contained SVG 1.1 text, 800x800 pixels, with
/// the y axis flipped to screen orientation. Identical scenes produce
/// byte-identical text.
pub fn scene_to_svg(scene: &RenderScene) -> String {
    let (x0, y0, x1, y1) = scene.bounds().unwrap_or((-1.0, -1.0, 1.0, 1.0));
    let side = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = 40.0;
    let scale = (800.0 - 2.0 * pad) / side;
    // Center the shorter dimension.
    let ox = pad + (800.0 - 2.0 * pad - (x1 - x0) * scale) / 2.0;
    let oy = pad + (800.0 - 2.0 * pad - (y1 - y0) * scale) / 2.0;
    let sx = |x: f64| ox + (x - x0) * scale;
    let sy = |y: f64| 800.0 - (oy + (y - y0) * scale);

    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n",
    );
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    for c in &scene.circles {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" \
             stroke=\"#2c5f8a\" stroke-width=\"1\"/>\n",
            fmt(sx(c.center.0)),
            fmt(sy(c.center.1)),
            fmt(c.radius * scale),
        ));
    }
    for a in &scene.arcs {
        let r = a.radius * scale;
        let ang = |p: (f64, f64)| (p.1 - a.center.1).atan2(p.0 - a.center.0);
        let sweep_angle = if a.ccw {
            (ang(a.end) - ang(a.start)).rem_euclid(TAU)
        } else {
            (ang(a.start) - ang(a.end)).rem_euclid(TAU)
        };
        let large = if sweep_angle > TAU / 2.0 { 1 } else { 0 };
        // The y flip reverses orientation: world-counterclockwise arcs are
        // drawn with SVG sweep flag 0.
        let sweep = if a.ccw { 0 } else { 1 };
        out.push_str(&format!(
            "<path d=\"M {} {} A {} {} 0 {} {} {} {}\" fill=\"none\" \
             stroke=\"#1a1a1a\" stroke-width=\"2\"/>\n",
            fmt(sx(a.start.0)),
            fmt(sy(a.start.1)),
            fmt(r),
            fmt(r),
            large,
            sweep,
            fmt(sx(a.end.0)),
            fmt(sy(a.end.1)),
        ));
    }
    let arrow_len = 0.06 * side * scale;
    for a in &scene.arrows {
        let bx = sx(a.base.0);
        let by = sy(a.base.1);
        // Screen direction: y component flips with the axis.
        let (dx, dy) = (a.direction.0, -a.direction.1);
        let tx = bx + arrow_len * dx;
        let ty = by + arrow_len * dy;
        let head = 0.35 * arrow_len;
        let (hx1, hy1) = rotate((dx, dy), 150.0_f64.to_radians());
        let (hx2, hy2) = rotate((dx, dy), -150.0_f64.to_radians());
        out.push_str(&format!(
            "<path d=\"M {} {} L {} {} M {} {} L {} {} M {} {} L {} {}\" \
             fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"1.5\"/>\n",
            fmt(bx),
            fmt(by),
            fmt(tx),
            fmt(ty),
            fmt(tx),
            fmt(ty),
            fmt(tx + head * hx1),
            fmt(ty + head * hy1),
            fmt(tx),
            fmt(ty),
            fmt(tx + head * hx2),
            fmt(ty + head * hy2),
        ));
    }
    for p in &scene.points {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1a1a1a\"/>\n",
            fmt(sx(p.at.0)),
            fmt(sy(p.at.1)),
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn rotate(v: (f64, f64), angle: f64) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    (v.0 * c - v.1 * s, v.0 * s + v.1 * c)
}

/// Renders a polygon straight to SVG text.
pub fn render_polygon(p: &LegendrianPolygon) -> Result<String, Error> {
    Ok(scene_to_svg(&polygon_scene(p)?))
}

/// Renders a circle family straight to SVG text.
pub fn render_circles(circles: &[CoorientedCircle]) -> Result<String, Error> {
    Ok(scene_to_svg(&circles_scene(circles)?))
}
