use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "crkit", version, about = "Complex hyperbolic geometry toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for commands that sample at random.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Read angles in radians instead of turns.
    #[arg(long, global = true)]
    pub radians: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModelArg {
    Ball,
    Siegel,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum BranchArg {
    #[default]
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SurfaceArg {
    Torus,
    Paraboloid,
    Plane,
    EpCylinder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Loxodromic,
    RegularElliptic,
    ComplexReflection,
    ReflectionOnPoint,
    HorizontalParabolic,
    VerticalParabolic,
    ElliptoParabolic,
    Identity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MarkingArg {
    /// The usual longitude and meridian `(l0, m0)`.
    Usual,
    /// The figure-eight holonomy marking `(l, m)`.
    FigureEight,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FieldArg {
    Delta,
    F,
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// JSON file: three rows of three `[re, im]` pairs.
    #[arg(long, conflicts_with = "random")]
    pub matrix: Option<PathBuf>,
    /// Use a random group element drawn from `--seed`.
    #[arg(long)]
    pub random: bool,
    #[arg(long, value_enum, default_value = "ball")]
    pub model: ModelArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an element of SU(2,1).
    Classify {
        #[command(flatten)]
        input: MatrixInput,
        /// Also write the axis of a loxodromic element as CSV.
        #[arg(long)]
        axis: Option<PathBuf>,
        /// Samples on the axis.
        #[arg(long, default_value_t = 256)]
        axis_samples: usize,
    },
    /// Conjugate an element to its displayed normal form.
    NormalForm {
        #[command(flatten)]
        input: MatrixInput,
    },
    /// Sample a flow orbit as CSV `t,x,y,z` in Heisenberg coordinates.
    Orbit {
        /// elliptic | loxodromic | unipotent | ellipto-parabolic
        #[arg(long)]
        family: String,
        /// Comma-separated family parameters.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<f64>,
        /// Starting point `x,y,t` in Heisenberg coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<f64>,
        #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 512)]
        steps: usize,
        /// Report winding numbers of a closed elliptic orbit on stderr.
        #[arg(long)]
        winding: bool,
    },
    /// Mesh an invariant surface as OBJ.
    Surface {
        #[arg(long, value_enum)]
        family: SurfaceArg,
        /// `r` for tori, paraboloids and planes; the radius for cylinders.
        #[arg(long, allow_hyphen_values = true)]
        param: f64,
        /// Translation direction `re,im` for planes.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "1,0"
        )]
        direction: Vec<f64>,
        #[arg(long, default_value_t = 64)]
        res: usize,
        #[arg(long, default_value_t = 2.0)]
        extent: f64,
    },
    /// Sweep a circle by the flow of a unipotent element; OBJ output.
    Horotube {
        #[command(flatten)]
        input: MatrixInput,
        /// Circle centre `x,y,t` in Heisenberg coordinates.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0,0,0"
        )]
        center: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 32)]
        res: usize,
    },
    /// Gauss linking number of two closed polylines given as CSV with `x,y,z` columns.
    Linking {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// The unipotent representation, its form and residuals.
    Fig8Rho0,
    /// Evaluate a word in `g1, g2, g3` under a representation.
    Fig8Eval {
        /// For example `g1 g3^-1 g2`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Trace parameter `re,im`; without it the unipotent representation is used.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<f64>,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
    /// Grid scan of `Δ` and `f` as CSV.
    Fig8Scan {
        #[arg(long, default_value = "0:5", allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 200)]
        res: usize,
        /// Also write zero-level segments `x0,y0,x1,y1` of this field.
        #[arg(long, value_enum, requires = "contour_out")]
        contour: Option<FieldArg>,
        #[arg(long)]
        contour_out: Option<PathBuf>,
    },
    /// Classify the holonomy at `u` and derive the surgery outcome.
    Fig8Classify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["p", "n"])]
        u: Vec<f64>,
        #[arg(long, requires = "n", allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        n: Option<i64>,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        /// Orient `l` by the inverse holonomy.
        #[arg(long)]
        reversed: bool,
    },
    /// Rewrite a slope in another marking.
    SlopeChange {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        slope: Vec<i64>,
        #[arg(long, value_enum)]
        from: MarkingArg,
        #[arg(long, value_enum)]
        to: MarkingArg,
    },
    /// Surgery outcome for an isometry kind and elliptic type.
    Outcome {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Elliptic type `p,q,n`.
        #[arg(long = "type", value_delimiter = ',', allow_hyphen_values = true)]
        etype: Vec<i64>,
        #[arg(long)]
        reversed: bool,
    },
}
