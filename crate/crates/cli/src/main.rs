use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod run;

#[derive(Parser, Debug, Serialize)]
#[command(name = "kakeya", version, about = "Sweeps, needle constructions and topology checks for planar rigid motions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Raster cell size; each command has its own default.
    #[arg(long, global = true)]
    pub cell: Option<f64>,
    /// Minimum time samples per movement stage.
    #[arg(long, global = true, default_value_t = 64)]
    pub steps: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Where to write the JSON report (stdout when absent).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Where to write an SVG rendering.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Where to write the swept mask as a binary PGM, when the grid is small enough.
    #[arg(long, global = true)]
    pub pgm: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
enum Command {
    /// Raster sweep of a scene along a movement.
    Sweep {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        movement: PathBuf,
    },
    /// Perron tree of depth k over a triangle.
    Perron {
        #[arg(long, default_value_t = 5)]
        k: u32,
        /// Scene JSON with one triangle [b0, b1, apex]; the unit triangle by default.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Reverses a unit needle within area about eps.
    Needle {
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 3)]
        trees: usize,
        #[arg(long, default_value_t = 7)]
        k_max: u32,
    },
    /// Shifts a segment sideways within area about eps.
    Paljoin {
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        #[arg(long, default_value_t = 1.0)]
        offset: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Cantor-product set moved by a rotation about 0, a translation and a rotation about c.
    ExampleK2 {
        #[arg(long, default_value_t = 2)]
        depth: u32,
        /// RigidMotion JSON; R_{0,π/3} ∘ T_{(1,1)} by default.
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// Venetian-blind rectangle systems and their shadows.
    Venetian {
        #[arg(long, default_value_t = 4)]
        generations: u32,
        #[arg(long, default_value_t = 3)]
        slats: usize,
        /// Length of the final translation along the limit direction.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    /// Component test and sweep coverage for an obstacle moving in a disc.
    Obstruct {
        #[arg(long)]
        case: PathBuf,
    },
    /// Classifies a point cloud as point, segment, arc, circle or none of these.
    Classify {
        #[arg(long)]
        points: PathBuf,
        /// Fit tolerance; 1e-3 times the sample diameter by default.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Randomized checks of the motion-algebra and movement bounds.
    VerifyLemmas,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kakeya: {e}");
            ExitCode::from(2)
        }
    }
}
