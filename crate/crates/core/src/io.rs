//! JSON document formats for polygons, flag tuples, and circle lists.
//!
//! All rationals are written as exact `"p/q"` strings (plain `"p"` for
//! integers, lowest terms, positive denominator). Documents are
//! pretty-printed with a trailing newline, and field order is fixed, so
//! equal data always serializes to identical bytes. Reading validates the
//! mathematical invariants, not just the JSON shape: polygon documents must
//! describe closed Legendrian chains, flag documents isotropic flags, and
//! circle documents Lagrangian planes where they give one.

use crate::circles::{circle_to_lagrangian, lagrangian_to_circle, CoorientedCircle};
use crate::error::Error;
use crate::flags::{FlagTuple, OrientedIsotropicFlag};
use crate::lagrangian::Lagrangian;
use crate::polygon::{ClosingSign, LegendrianPolygon};
use crate::scalar::{format_rat, parse_rat, Rat};
use crate::vec4::Vec4;
use serde::{Deserialize, Serialize};

/// Failure while reading a document: either the JSON itself is malformed
/// (with serde's line/column diagnostics) or the data violates a
/// mathematical invariant.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid data: {0}")]
    Domain(#[from] Error),
}

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    sign: String,
    vertices: Vec<[String; 4]>,
}

#[derive(Serialize, Deserialize)]
struct FlagsDoc {
    flags: Vec<[[String; 4]; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CircleEntry {
    Round { center: [String; 2], radius: String },
    Plane { lagrangian: [[String; 4]; 2] },
}

#[derive(Serialize, Deserialize)]
struct CirclesDoc {
    circles: Vec<CircleEntry>,
}

fn finish(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types always serialize");
    s.push('\n');
    s
}

fn vec_strings(v: &Vec4) -> [String; 4] {
    std::array::from_fn(|i| format_rat(&v[i]))
}

fn parse_vec(strings: &[String; 4]) -> Result<Vec4, Error> {
    Ok(Vec4::new(
        parse_rat(&strings[0])?,
        parse_rat(&strings[1])?,
        parse_rat(&strings[2])?,
        parse_rat(&strings[3])?,
    ))
}

/// Serializes a polygon as `{"sign": "+"|"-", "vertices": [[p/q; 4], ...]}`.
pub fn polygon_to_json(p: &LegendrianPolygon) -> String {
    finish(&PolygonDoc {
        sign: match p.sign() {
            ClosingSign::Plus => "+".to_string(),
            ClosingSign::Minus => "-".to_string(),
        },
        vertices: p.vertices().iter().map(vec_strings).collect(),
    })
}

/// Reads a polygon document, revalidating the closed Legendrian chain.
pub fn polygon_from_json(s: &str) -> Result<LegendrianPolygon, ReadError> {
    let doc: PolygonDoc = serde_json::from_str(s)?;
    let sign = match doc.sign.as_str() {
        "+" => ClosingSign::Plus,
        "-" => ClosingSign::Minus,
        other => {
            return Err(Error::BadRational(format!("sign must be + or -, got {other}")).into())
        }
    };
    let vertices = doc
        .vertices
        .iter()
        .map(parse_vec)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LegendrianPolygon::new(vertices, sign)?)
}

/// Serializes a flag tuple as `{"flags": [[[f1], [f2]], ...]}`.
pub fn flags_to_json(flags: &[OrientedIsotropicFlag]) -> String {
    finish(&FlagsDoc {
        flags: flags
            .iter()
            .map(|f| [vec_strings(f.f1()), vec_strings(f.f2())])
            .collect(),
    })
}

/// Reads a flag document, revalidating each flag's isotropy.
pub fn flags_from_json(s: &str) -> Result<FlagTuple, ReadError> {
    let doc: FlagsDoc = serde_json::from_str(s)?;
    doc.flags
        .iter()
        .map(|[f1, f2]| Ok(OrientedIsotropicFlag::new(parse_vec(f1)?, parse_vec(f2)?)?))
        .collect()
}

/// Serializes circles as `{"circles": [{"center": [a, b], "radius": c} |
/// {"lagrangian": [[u], [v]]}, ...]}`; finite circles use the explicit
/// form, circles through infinity keep their plane.
pub fn circles_to_json(circles: &[CoorientedCircle]) -> String {
    finish(&CirclesDoc {
        circles: circles
            .iter()
            .map(|c| match c {
                CoorientedCircle::Circle {
                    center,
                    signed_radius,
                } => CircleEntry::Round {
                    center: [format_rat(&center.0), format_rat(&center.1)],
                    radius: format_rat(signed_radius),
                },
                CoorientedCircle::LineOrInfinity { lagrangian } => {
                    let (u, v) = lagrangian.basis();
                    CircleEntry::Plane {
                        lagrangian: [vec_strings(u), vec_strings(v)],
                    }
                }
            })
            .collect(),
    })
}

/// Reads a circle document. Explicit center/radius entries are taken as
/// given; plane entries are revalidated and reduced to the explicit form
/// when they do not pass through infinity.
pub fn circles_from_json(s: &str) -> Result<Vec<CoorientedCircle>, ReadError> {
    let doc: CirclesDoc = serde_json::from_str(s)?;
    doc.circles
        .iter()
        .map(|entry| match entry {
            CircleEntry::Round { center, radius } => {
                let a = parse_rat(&center[0])?;
                let b = parse_rat(&center[1])?;
                let c: Rat = parse_rat(radius)?;
                // Normalize through the plane so stored data and parsed
                // data cannot drift apart.
                Ok(lagrangian_to_circle(&circle_to_lagrangian(&(a, b), &c)))
            }
            CircleEntry::Plane { lagrangian: [u, v] } => {
                let plane = Lagrangian::new(parse_vec(u)?, parse_vec(v)?)?;
                Ok(lagrangian_to_circle(&plane))
            }
        })
        .collect()
}
