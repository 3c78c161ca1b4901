//! Batch command-line surface over the foldtile library.
//!
//! Exit codes: 0 success, 1 domain errors (failed walks, uncorrectable
//! words, verification failures), 2 usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use foldtile::ddc::{find_rich_copy, fold_b2, max_intersection, verify_ddc, InfiniteDdc};
use foldtile::ecc::{BurstCode, CodeGeometry, ErrorReport};
use foldtile::folding::{
    count_distinct_folded_rows, is_folding, morph_shape, walk_folded_row, Direction,
};
use foldtile::geometry::{compact_tile, fundamental_tile, hermite_lattices};
use foldtile::pra::{
    check_window_property, fold_sequence, m_sequence, window_equivalence_experiment,
};
use foldtile::shape_gallery::{
    hexagon_lattice, hexagon_shape, plan_rectangle, raster_circle, raster_polygon, Rational,
};
use foldtile::sidon::{bose, verify_b2};
use foldtile::{Error, Folding, Lattice, Point, Shape, Tiling};

#[derive(Parser)]
#[command(name = "foldtile", version, about = "Folding sequences into shapes via lattice tilings")]
struct Cli {
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect lattices and emit fundamental tiles
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Build and inspect shape files
    Shape {
        #[command(subcommand)]
        cmd: ShapeCmd,
    },
    /// Walk the folded-row of a tiling and direction
    Fold {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Test the folding criterion for a lattice and direction(s)
    Check {
        #[arg(long)]
        lattice: PathBuf,
        /// A direction like 1,0 or the word `all`
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// B2 (Sidon) sequences
    Sidon {
        #[command(subcommand)]
        cmd: SidonCmd,
    },
    /// Distinct-difference configurations
    Ddc {
        #[command(subcommand)]
        cmd: DdcCmd,
    },
    /// 2-burst-correcting codes
    Ecc {
        #[command(subcommand)]
        cmd: EccCmd,
    },
    /// Pseudo-random arrays
    Pra {
        #[command(subcommand)]
        cmd: PraCmd,
    },
    /// Searches and randomized suites
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long)]
    shape: PathBuf,
    /// Comma-separated ternary direction, canonicalized on input
    #[arg(long, allow_hyphen_values = true)]
    dir: String,
}

impl InstanceArgs {
    fn folding(&self) -> Result<Folding, Error> {
        let (tiling, dir) = self.tiling_and_dir()?;
        Folding::new(tiling, dir)
    }

    fn tiling_and_dir(&self) -> Result<(Tiling, Direction), Error> {
        let lattice = Lattice::from_text(&read(&self.lattice)?)?;
        let shape = Shape::from_text(&read(&self.shape)?)?;
        let dir = parse_dir(&self.dir)?;
        Ok((Tiling::new(lattice, shape)?, dir))
    }
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Dimension, volume, and Hermite normal form
    Info {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Emit a fundamental tile as a shape file
    Tile {
        #[arg(long)]
        lattice: PathBuf,
        /// Grow a compact tile by breadth-first search instead of the
        /// Hermite box
        #[arg(long)]
        compact: bool,
    },
}

#[derive(Subcommand)]
enum ShapeCmd {
    /// Axis-aligned box, e.g. --dims 3,5
    Box {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<i64>,
    },
    /// Quasi-hexagon raster with its tiling lattice
    Hexagon {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
        /// Print the tiling lattice instead of the shape
        #[arg(long)]
        lattice: bool,
    },
    /// Strict-interior raster of a regular polygon
    Polygon {
        /// Number of sides
        #[arg(long)]
        n: u32,
        #[arg(long)]
        radius: String,
        /// Rotation in radians
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        rotation: f64,
    },
    /// Strict-interior raster of a circle
    Circle {
        #[arg(long)]
        radius: String,
    },
    /// Cell count and bounding box of a shape file
    Info {
        #[arg(long)]
        shape: PathBuf,
    },
    /// Plan a rectangle with ratio close to gamma (alpha even,
    /// alpha*beta = p^2 - 1)
    Rectangle {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        p_max: u64,
    },
    /// One morph step: push cell p across the copy boundary
    Morph {
        #[command(flatten)]
        instance: InstanceArgs,
        /// The cell to push, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand)]
enum SidonCmd {
    /// The Bose B2 sequence of size q over Z_{q^2-1}
    Bose {
        #[arg(long)]
        q: u64,
    },
    /// Verify the B2 property of explicit residues
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(required = true)]
        elements: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum DdcCmd {
    /// Fold the Bose sequence of size q into the instance and verify
    Fold {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        q: u64,
    },
    /// Max intersection of two shapes over all translates
    Intersect {
        #[arg(long)]
        shape: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Richest translate of a target shape over the periodic extension
    Rich {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        target: PathBuf,
    },
}

#[derive(Args)]
struct EccGeometry {
    /// Box side lengths, e.g. 5,5
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["lattice", "shape", "dir"])]
    r#box: Option<Vec<i64>>,
    #[arg(long, requires_all = ["shape", "dir"])]
    lattice: Option<PathBuf>,
    #[arg(long)]
    shape: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    dir: Option<String>,
}

impl EccGeometry {
    fn build(&self, m: u32) -> Result<BurstCode, Error> {
        let geometry = match (&self.r#box, &self.lattice) {
            (Some(dims), None) => CodeGeometry::Box(dims.clone()),
            (None, Some(lat)) => {
                let instance = InstanceArgs {
                    lattice: lat.clone(),
                    shape: self.shape.clone().expect("clap enforces"),
                    dir: self.dir.clone().expect("clap enforces"),
                };
                CodeGeometry::Folded(Box::new(instance.folding()?))
            }
            _ => return Err(Error::Parse("give either --box or --lattice/--shape/--dir".into())),
        };
        BurstCode::build(geometry, m)
    }
}

#[derive(Subcommand)]
enum EccCmd {
    /// Dimensions, redundancy, and rank of the code
    Build {
        #[command(flatten)]
        geometry: EccGeometry,
        #[arg(long)]
        m: u32,
    },
    /// Systematic encoding of an info bit string
    Encode {
        #[command(flatten)]
        geometry: EccGeometry,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        info: String,
    },
    /// Decode a received bit string
    Decode {
        #[command(flatten)]
        geometry: EccGeometry,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        received: String,
    },
    /// Exhaustive syndrome and decoding self-check
    Verify {
        #[command(flatten)]
        geometry: EccGeometry,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Subcommand)]
enum PraCmd {
    /// One period of the degree-k m-sequence
    Mseq {
        #[arg(long)]
        k: u32,
    },
    /// Fold the degree-k m-sequence into the instance and print the grid
    Fold {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k: u32,
    },
    /// Check the k1 x k2 window property of the folded m-sequence
    Window {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
    },
    /// Fold the same sequence into the shape and its box counterpart and
    /// compare window checks
    Equivalence {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Largest number of distinct folded-rows per volume, exhaustively
    /// over Hermite-form 2D lattices
    FoldedRows {
        #[arg(long)]
        max_volume: i64,
    },
    /// Sample random translates of a folded Bose pattern and verify each
    Translates {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_dir(text: &str) -> Result<Direction, Error> {
    let (dir, negated) = Direction::parse(text)?;
    if negated {
        eprintln!("note: direction {text} canonicalized to {dir}");
    }
    Ok(dir)
}

fn parse_bits(text: &str) -> Result<Vec<u8>, Error> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bad bit '{c}'"))),
        })
        .collect()
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

/// Commands return their textual output; `false` means a domain-level
/// "no" answer that should exit 1.
fn run(command: &Command) -> Result<(String, bool), Error> {
    let mut out = String::new();
    let mut ok = true;
    match command {
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Info { lattice } => {
                let l = Lattice::from_text(&read(lattice)?)?;
                writeln!(out, "dim {}", l.dim()).unwrap();
                writeln!(out, "volume {}", l.volume()).unwrap();
                for (row, hrow) in l.basis().iter().zip(l.hnf()) {
                    writeln!(out, "basis {row:?} hnf {hrow:?}").unwrap();
                }
            }
            LatticeCmd::Tile { lattice, compact } => {
                let l = Lattice::from_text(&read(lattice)?)?;
                let tile = if *compact { compact_tile(&l) } else { fundamental_tile(&l) };
                out.push_str(&tile.to_text());
            }
        },
        Command::Shape { cmd } => match cmd {
            ShapeCmd::Box { dims } => out.push_str(&Shape::box_shape(dims)?.to_text()),
            ShapeCmd::Hexagon { alpha, beta, lattice } => {
                if *lattice {
                    out.push_str(&hexagon_lattice(*alpha, *beta)?.to_text());
                } else {
                    out.push_str(&hexagon_shape(*alpha, *beta)?.to_text());
                }
            }
            ShapeCmd::Polygon { n, radius, rotation } => {
                let r: Rational = radius.parse()?;
                out.push_str(&raster_polygon(*n, r, *rotation)?.to_text());
            }
            ShapeCmd::Circle { radius } => {
                let r: Rational = radius.parse()?;
                out.push_str(&raster_circle(r)?.to_text());
            }
            ShapeCmd::Info { shape } => {
                let s = Shape::from_text(&read(shape)?)?;
                let (lo, hi) = s.bounding_box();
                writeln!(out, "dim {}", s.dim()).unwrap();
                writeln!(out, "cells {}", s.len()).unwrap();
                writeln!(out, "bbox {lo} to {hi}").unwrap();
            }
            ShapeCmd::Rectangle { gamma, p_max } => {
                let g: Rational = gamma.parse()?;
                let plan = plan_rectangle(g, *p_max)?;
                writeln!(out, "alpha {}", plan.alpha).unwrap();
                writeln!(out, "beta {}", plan.beta).unwrap();
                writeln!(out, "prime {}", plan.prime).unwrap();
                writeln!(out, "ratio {} (target {})", plan.gamma_achieved, plan.gamma_target)
                    .unwrap();
            }
            ShapeCmd::Morph { instance, at } => {
                let folding = instance.folding()?;
                let coords: Result<Vec<i64>, _> =
                    at.split(',').map(|t| t.trim().parse()).collect();
                let p = Point::new(coords.map_err(|_| Error::Parse(format!("bad point '{at}'")))?);
                out.push_str(&morph_shape(&folding, &p)?.to_text());
            }
        },
        Command::Fold { instance } => {
            let (tiling, dir) = instance.tiling_and_dir()?;
            let row = walk_folded_row(&tiling, &dir)?;
            for (i, p) in row.order().iter().enumerate() {
                writeln!(out, "{i} {p}").unwrap();
            }
        }
        Command::Check { lattice, dir } => {
            let l = Lattice::from_text(&read(lattice)?)?;
            let dirs = if dir == "all" {
                Direction::all(l.dim())
            } else {
                vec![parse_dir(dir)?]
            };
            for d in dirs {
                let yes = is_folding(&l, &d)?;
                writeln!(out, "{d}: folding: {}", if yes { "yes" } else { "no" }).unwrap();
            }
        }
        Command::Sidon { cmd } => match cmd {
            SidonCmd::Bose { q } => {
                let e = bose(*q)?;
                writeln!(out, "n {}", e.modulus()).unwrap();
                writeln!(out, "m {}", e.len()).unwrap();
                let cells: Vec<String> = e.elements().iter().map(|x| x.to_string()).collect();
                writeln!(out, "elements {}", cells.join(",")).unwrap();
            }
            SidonCmd::Verify { n, elements } => {
                let yes = verify_b2(*n, elements)?;
                writeln!(out, "b2: {}", if yes { "yes" } else { "no" }).unwrap();
                ok = yes;
            }
        },
        Command::Ddc { cmd } => match cmd {
            DdcCmd::Fold { instance, q } => {
                let folding = instance.folding()?;
                let marks = bose(*q)?;
                let pattern = fold_b2(&folding, &marks)?;
                let yes = verify_ddc(&pattern);
                out.push_str(&pattern.render());
                writeln!(out, "dots {}", pattern.dots().len()).unwrap();
                writeln!(out, "ddc: {}", if yes { "yes" } else { "no" }).unwrap();
                writeln!(
                    out,
                    "asymptotic reference sqrt(|S|) = {:.3} (not a bound check)",
                    (folding.len() as f64).sqrt()
                )
                .unwrap();
                ok = yes;
            }
            DdcCmd::Intersect { shape, other } => {
                let s = Shape::from_text(&read(shape)?)?;
                let r = Shape::from_text(&read(other)?)?;
                let (delta, at) = max_intersection(&s, &r)?;
                writeln!(out, "delta {delta} at {at}").unwrap();
            }
            DdcCmd::Rich { instance, q, target } => {
                let folding = instance.folding()?;
                let base = folding.tiling().shape().clone();
                let ddc = InfiniteDdc::new(folding, bose(*q)?)?;
                let r = Shape::from_text(&read(target)?)?;
                let (delta, _) = max_intersection(&base, &r)?;
                let floor = (ddc.dot_count() * delta).div_ceil(base.len());
                let (offset, count) = find_rich_copy(&ddc, &r)?;
                writeln!(out, "delta {delta}").unwrap();
                writeln!(out, "floor {floor}").unwrap();
                writeln!(out, "richest {count} dots at {offset}").unwrap();
                ok = count >= floor;
            }
        },
        Command::Ecc { cmd } => match cmd {
            EccCmd::Build { geometry, m } => {
                let c = geometry.build(*m)?;
                writeln!(out, "field {}", c.field()).unwrap();
                writeln!(out, "positions {}", c.len()).unwrap();
                writeln!(out, "redundancy {}", c.redundancy()).unwrap();
                writeln!(out, "rank {}", c.rank()).unwrap();
                writeln!(out, "info-bits {}", c.info_len()).unwrap();
                let rr = c.redundancy_report()?;
                writeln!(out, "patterns {} trivial-bound {}", rr.pattern_count, rr.trivial_bound)
                    .unwrap();
            }
            EccCmd::Encode { geometry, m, info } => {
                let c = geometry.build(*m)?;
                let word = c.encode(&parse_bits(info)?)?;
                writeln!(out, "{}", bits_to_string(&word)).unwrap();
            }
            EccCmd::Decode { geometry, m, received } => {
                let c = geometry.build(*m)?;
                match c.decode(&parse_bits(received)?)? {
                    ErrorReport::None => writeln!(out, "no error").unwrap(),
                    ErrorReport::Single(p) => writeln!(out, "single error at {p}").unwrap(),
                    ErrorReport::Burst2 { first, axis } => {
                        writeln!(out, "2-burst at {first} along axis {axis}").unwrap()
                    }
                    ErrorReport::Uncorrectable => {
                        writeln!(out, "uncorrectable").unwrap();
                        ok = false;
                    }
                }
            }
            EccCmd::Verify { geometry, m } => {
                let c = geometry.build(*m)?;
                let s = c.verify_exhaustive()?;
                writeln!(
                    out,
                    "{} patterns, {} distinct syndromes, decode {}",
                    s.pattern_count,
                    s.distinct_syndromes,
                    if s.decode_ok { "OK" } else { "FAILED" }
                )
                .unwrap();
                ok = s.decode_ok && s.pattern_count == s.distinct_syndromes;
            }
        },
        Command::Pra { cmd } => match cmd {
            PraCmd::Mseq { k } => {
                let s = m_sequence(*k)?;
                writeln!(out, "feedback {:?}", s.feedback()).unwrap();
                writeln!(out, "{}", bits_to_string(s.bits())).unwrap();
            }
            PraCmd::Fold { instance, k } => {
                let folding = instance.folding()?;
                let seq = m_sequence(*k)?;
                let pattern = fold_sequence(folding, seq.bits())?;
                out.push_str(&pattern.render());
            }
            PraCmd::Window { instance, k1, k2 } => {
                let folding = instance.folding()?;
                let seq = m_sequence(k1 * k2)?;
                let pattern = fold_sequence(folding, seq.bits())?;
                let yes = check_window_property(&pattern, *k1, *k2)?;
                writeln!(out, "window {k1}x{k2}: {}", if yes { "yes" } else { "no" }).unwrap();
                ok = yes;
            }
            PraCmd::Equivalence { instance, k1, k2 } => {
                let lattice = Lattice::from_text(&read(&instance.lattice)?)?;
                let shape = Shape::from_text(&read(&instance.shape)?)?;
                let dir = parse_dir(&instance.dir)?;
                let (shape_ok, array_ok) =
                    window_equivalence_experiment(&lattice, &shape, &dir, *k1, *k2)?;
                writeln!(out, "shape window: {}", if shape_ok { "yes" } else { "no" }).unwrap();
                writeln!(out, "array window: {}", if array_ok { "yes" } else { "no" }).unwrap();
                writeln!(out, "agree: {}", if shape_ok == array_ok { "yes" } else { "no" })
                    .unwrap();
                ok = shape_ok == array_ok;
            }
        },
        Command::Experiment { cmd } => match cmd {
            ExperimentCmd::FoldedRows { max_volume } => {
                let mut overall = 0;
                for volume in 1..=*max_volume {
                    let mut best = 0;
                    let mut witness = None;
                    for l in hermite_lattices(2, volume) {
                        let t = Tiling::new(l.clone(), fundamental_tile(&l))?;
                        let count = count_distinct_folded_rows(&t);
                        if count > best {
                            best = count;
                            witness = Some(l);
                        }
                    }
                    let basis = witness.map(|l| format!("{:?}", l.basis())).unwrap_or_default();
                    writeln!(out, "volume {volume}: max distinct rows {best} {basis}").unwrap();
                    overall = overall.max(best);
                }
                writeln!(out, "overall max {overall} of 4").unwrap();
            }
            ExperimentCmd::Translates { instance, q, samples, seed } => {
                let folding = instance.folding()?;
                let shape = folding.tiling().shape().clone();
                let ddc = InfiniteDdc::new(folding, bose(*q)?)?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut all_ok = true;
                for _ in 0..*samples {
                    let offset = Point::new(vec![
                        rng.gen_range(-1000..=1000),
                        rng.gen_range(-1000..=1000),
                    ]);
                    let dots = ddc.dots_in_translate(&shape, &offset);
                    let good = dots.len() == ddc.dot_count()
                        && foldtile::ddc::distinct_differences(&dots);
                    if !good {
                        writeln!(out, "offset {offset}: FAILED").unwrap();
                        all_ok = false;
                    }
                }
                writeln!(
                    out,
                    "{samples} translates sampled (seed {seed}): {}",
                    if all_ok { "all verified" } else { "FAILURES" }
                )
                .unwrap();
                ok = all_ok;
            }
        },
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, ok)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
