use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "symopt", version, about = "Linear canonical transforms, phase-space tomography and wavelet analysis of sampled fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Output grid override; unset parts are taken from the input grid.
#[derive(Args, Debug, Clone, Default)]
pub struct GridArgs {
    /// Number of output samples per axis.
    #[arg(long)]
    pub n: Option<usize>,
    /// First output coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Output spacing.
    #[arg(long)]
    pub dx: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Input file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct ScaleArgs {
    /// Smallest scale μ.
    #[arg(long, default_value_t = 0.01)]
    pub mu_min: f64,
    /// Largest scale μ.
    #[arg(long, default_value_t = 100.0)]
    pub mu_max: f64,
    /// Number of log-spaced scales.
    #[arg(long, default_value_t = 96)]
    pub nmu: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized Fresnel transform of a CFLD1 field.
    Fresnel {
        #[command(flatten)]
        io: Io,
        /// Ray matrix "A B C D".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Treat the input as a momentum-space wavefunction.
        #[arg(long)]
        momentum: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fractional Fourier transform of order α.
    Frft {
        #[command(flatten)]
        io: Io,
        /// Order α in radians.
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Scaled fractional Fourier transform with scale fe.
    Sfrft {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        /// Scale parameter fe.
        #[arg(long)]
        fe: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Complex fractional Fourier transform of a CFLD2 field.
    Cfrft {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        /// Input scale μ of the scaled transform.
        #[arg(long)]
        mu: Option<f64>,
        /// Output scale ν of the scaled transform.
        #[arg(long)]
        nu: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Two-dimensional Collins transform of a CFLD2 field.
    Collins {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Realize the transform as a scaled CFrFT of this order.
        #[arg(long)]
        via_cfrft: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Hankel transform of a radial CFLD1 profile starting at r = 0.
    Hankel {
        #[command(flatten)]
        io: Io,
        /// Bessel order m.
        #[arg(long, default_value_t = 0)]
        order: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Circular harmonic decomposition; writes `m r re im` rows.
    Charmonics {
        #[command(flatten)]
        io: Io,
        /// Number of radii.
        #[arg(long, default_value_t = 64)]
        nr: usize,
        /// Largest |m|.
        #[arg(long, default_value_t = 8)]
        mmax: usize,
    },
    /// Wigner function of a CFLD1 state.
    Wigner {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Tomogram of a CFLD1 state.
    Tomogram {
        /// State file.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Output TOMO file.
        #[arg(long)]
        out: PathBuf,
        /// A single direction given by the ray matrix "A B C D".
        #[arg(long, allow_hyphen_values = true, conflicts_with = "angles")]
        matrix: Option<String>,
        /// Number of rotation angles over [0, π).
        #[arg(long)]
        angles: Option<usize>,
        /// Also project the Wigner function and report the largest residual.
        #[arg(long)]
        crosscheck: bool,
    },
    /// Filtered back-projection of a TOMO file.
    Invradon {
        #[command(flatten)]
        io: Io,
    },
    /// Husimi function with smoothing parameter κ.
    Husimi {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Compare against the wavelet route at a few points.
        #[arg(long)]
        crosscheck: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// p-q integration transform of a CFLD2 field.
    Pqxform {
        #[command(flatten)]
        io: Io,
        /// Apply the inverse transform.
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fractional Radon transform (or its inverse with --inverse).
    Fradon {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        order: f64,
        /// Number of projection angles over [0, π).
        #[arg(long, default_value_t = 128)]
        angles: usize,
        /// Read FRAD projections and reconstruct a CFLD2 field.
        #[arg(long)]
        inverse: bool,
    },
    /// Real wavelet transform; writes a WTMAP.
    Wt {
        #[command(flatten)]
        io: Io,
        /// Fock coefficients g_0 g_1 ... of the mother wavelet.
        #[arg(long, default_value = "0.5 0 -0.5", allow_hyphen_values = true)]
        wavelet: String,
        #[command(flatten)]
        scales: ScaleArgs,
        /// Also invert the map and write the reconstruction here.
        #[arg(long)]
        reconstruct: Option<PathBuf>,
    },
    /// Complex wavelet transform with a Laguerre-Gaussian mother wavelet.
    Cwt {
        #[command(flatten)]
        io: Io,
        /// Coefficients K_00 K_11 ... of the mother wavelet.
        #[arg(long, default_value = "0.5 0.5", allow_hyphen_values = true)]
        k: String,
        #[command(flatten)]
        scales: ScaleArgs,
        /// Zero-padding factor of the periodic grid.
        #[arg(long, default_value_t = 8)]
        pad: usize,
        /// Also invert the map and write the reconstruction here.
        #[arg(long)]
        reconstruct: Option<PathBuf>,
    },
    /// One symplectic wavelet coefficient.
    Swt {
        /// CFLD2 field.
        #[arg(long = "in")]
        input: PathBuf,
        /// Sampled mother wavelet (CFLD2).
        #[arg(long, conflicts_with = "k")]
        mother: Option<PathBuf>,
        /// Laguerre-Gaussian coefficients, used when no --mother is given.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// "re im" of s.
        #[arg(long, default_value = "1 0", allow_hyphen_values = true)]
        s: String,
        /// "re im" of r.
        #[arg(long, default_value = "0 0", allow_hyphen_values = true)]
        r: String,
        /// "re im" of the translation κ.
        #[arg(long, default_value = "0 0", allow_hyphen_values = true)]
        kappa: String,
    },
    /// Ray-matrix utilities.
    Abcd {
        /// Matrices "A B C D" multiplied in the order given; the last acts first.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        compose: Vec<String>,
        /// Also report the beam parameter of the vacuum behind the product.
        #[arg(long)]
        q: bool,
    },
    /// Runs the bundled invariant checks.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fresnel { .. } => "fresnel",
            Command::Frft { .. } => "frft",
            Command::Sfrft { .. } => "sfrft",
            Command::Cfrft { .. } => "cfrft",
            Command::Collins { .. } => "collins",
            Command::Hankel { .. } => "hankel",
            Command::Charmonics { .. } => "charmonics",
            Command::Wigner { .. } => "wigner",
            Command::Tomogram { .. } => "tomogram",
            Command::Invradon { .. } => "invradon",
            Command::Husimi { .. } => "husimi",
            Command::Pqxform { .. } => "pqxform",
            Command::Fradon { .. } => "fradon",
            Command::Wt { .. } => "wt",
            Command::Cwt { .. } => "cwt",
            Command::Swt { .. } => "swt",
            Command::Abcd { .. } => "abcd",
            Command::Selftest => "selftest",
        }
    }
}
