use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use legendrian::{
    circles_from_json, circles_to_json, flags_from_json, flags_to_json, flags_to_polygon,
    format_rat, maslov_of_circles, osculating_circle, parse_rat, polygon_from_json,
    polygon_to_flags, polygon_to_json, radial_translation_matrix, rat, render_circles,
    render_polygon, sample_positive_tuple, tuple_positive, ClosingSign, CoorientedCircle,
    LegendrianPolygon,
};

/// Exact-arithmetic toolkit for Legendrian polygons and the co-oriented
/// circles they correspond to.
#[derive(Parser)]
#[command(name = "legendrian", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polygon: genericity, transversality, curvature, positivity
    Check {
        /// Polygon JSON file
        file: PathBuf,
    },
    /// Sample a positive flag tuple and write flags, polygon, and a rendering
    Sample {
        /// Number of flags (at least 3); the polygon has 2k vertices
        #[arg(long)]
        k: usize,
        /// Seed for the deterministic sampler
        #[arg(long)]
        seed: u64,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the radial translates of a polygon as an SVG frame sequence
    Translate {
        /// Polygon JSON file
        file: PathBuf,
        /// Total radius increment, a rational like "3/2"
        #[arg(long)]
        r: String,
        /// Number of frames; frame i applies the translation by r*i/frames
        #[arg(long)]
        frames: u32,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the flag tuple of a polygon as JSON
    FlagsOf {
        /// Polygon JSON file
        file: PathBuf,
    },
    /// Print the polygon of a flag tuple as JSON
    PolygonOf {
        /// Flags JSON file
        file: PathBuf,
    },
    /// Maslov index of a file of exactly three co-oriented circles
    Maslov {
        /// Circles JSON file
        file: PathBuf,
    },
    /// Write the osculating-circle family of the rational normal curve
    Veronese {
        /// Number of osculating circles, sampled over the half-curve
        #[arg(long)]
        samples: u32,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a polygon to an SVG file
    Render {
        /// Polygon JSON file
        file: PathBuf,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Check { file } => check(&file),
        Command::Sample { k, seed, out } => sample(k, seed, &out),
        Command::Translate {
            file,
            r,
            frames,
            out,
        } => translate(&file, &r, frames, &out),
        Command::FlagsOf { file } => flags_of(&file),
        Command::PolygonOf { file } => polygon_of(&file),
        Command::Maslov { file } => maslov(&file),
        Command::Veronese { samples, out } => veronese(samples, &out),
        Command::Render { file, out } => render(&file, &out),
    }
}

fn read_polygon(path: &Path) -> Result<LegendrianPolygon> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    polygon_from_json(&text).with_context(|| format!("parsing polygon file {}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(file: &Path) -> Result<()> {
    let p = read_polygon(file)?;
    println!("vertices: {}", p.len());
    println!(
        "sign: {}",
        match p.sign() {
            ClosingSign::Plus => "+",
            ClosingSign::Minus => "-",
        }
    );
    println!("generic: {}", yes_no(p.is_generic()));
    println!("transversality: {}", p.transversality_class());
    println!("homotopy: {}", p.homotopy_class());
    match p.has_decreasing_curvature() {
        Ok(b) => println!("decreasing curvature: {}", yes_no(b)),
        Err(e) => println!("decreasing curvature: n/a ({e})"),
    }
    match polygon_to_flags(&p) {
        Ok(flags) => println!("positive: {}", yes_no(tuple_positive(&flags))),
        Err(e) => println!("positive: n/a ({e})"),
    }
    Ok(())
}

fn sample(k: usize, seed: u64, out: &Path) -> Result<()> {
    let flags = sample_positive_tuple(k, seed)?;
    let p = flags_to_polygon(&flags)?;
    let svg = render_polygon(&p)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for (name, contents) in [
        ("flags.json", flags_to_json(&flags)),
        ("polygon.json", polygon_to_json(&p)),
        ("polygon.svg", svg),
    ] {
        let path = out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn translate(file: &Path, r: &str, frames: u32, out: &Path) -> Result<()> {
    if frames == 0 {
        bail!("frames must be at least 1");
    }
    let p = read_polygon(file)?;
    let r = parse_rat(r).with_context(|| format!("parsing radius increment {r:?}"))?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for i in 1..=frames {
        let step = &r * &rat(i64::from(i), i64::from(frames));
        let q = p.apply_symplectic(&radial_translation_matrix(&step));
        let svg = render_polygon(&q)
            .with_context(|| format!("rendering frame {i} at r = {}", format_rat(&step)))?;
        let name = format!("frame_{i:03}.svg");
        let path = out.join(&name);
        fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
        println!(
            "frame {i}: r = {}, transversality: {}, wrote {}",
            format_rat(&step),
            q.transversality_class(),
            path.display()
        );
    }
    Ok(())
}

fn flags_of(file: &Path) -> Result<()> {
    let p = read_polygon(file)?;
    let flags = polygon_to_flags(&p)?;
    print!("{}", flags_to_json(&flags));
    Ok(())
}

fn polygon_of(file: &Path) -> Result<()> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let flags =
        flags_from_json(&text).with_context(|| format!("parsing flags file {}", file.display()))?;
    let p = flags_to_polygon(&flags)?;
    print!("{}", polygon_to_json(&p));
    Ok(())
}

fn maslov(file: &Path) -> Result<()> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let circles = circles_from_json(&text)
        .with_context(|| format!("parsing circles file {}", file.display()))?;
    let [c1, c2, c3] = circles.as_slice() else {
        bail!("expected exactly 3 circles, found {}", circles.len());
    };
    let index = maslov_of_circles(c1, c2, c3)?;
    println!("maslov: {index}");
    Ok(())
}

fn veronese(samples: u32, out: &Path) -> Result<()> {
    if samples == 0 {
        bail!("samples must be at least 1");
    }
    let circles: Vec<CoorientedCircle> = (1..=samples)
        .map(|i| osculating_circle(&rat(2 * i64::from(i), i64::from(samples))))
        .collect();
    let svg = render_circles(&circles)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for (name, contents) in [
        ("osculating.json", circles_to_json(&circles)),
        ("osculating.svg", svg),
    ] {
        let path = out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn render(file: &Path, out: &Path) -> Result<()> {
    let p = read_polygon(file)?;
    let svg = render_polygon(&p)?;
    fs::write(out, svg).with_context(|| format!("writing {}", out.display()))?;
    println!("wrote {}", out.display());
    Ok(())
}
