use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "orbigw", version, about = "Orbifold Gromov-Witten computations for weighted projective lines")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inertia stack census of P(a,b), or of P(w0,...,wn) with --wps.
    Census(CensusArgs),
    /// Quantum Chow ring of P(a,b).
    #[command(subcommand)]
    Ring(RingCommand),
    /// Riemann-Roch on twisted curves.
    #[command(subcommand)]
    Rr(RrCommand),
    /// Minimal-degree maps from footballs.
    #[command(subcommand)]
    Maps(MapsCommand),
    /// Genus-zero correlators.
    #[command(subcommand)]
    Correlator(CorrelatorCommand),
}

#[derive(Args, Debug)]
pub struct WeightsArg {
    /// Weights `a,b`.
    #[arg(long, value_parser = parse_pair)]
    pub weights: (u64, u64),
    /// Bezout pair `m,n` with `am + bn = gcd(a,b)`; defaults to the canonical one.
    #[arg(long, value_parser = parse_signed_pair, allow_hyphen_values = true)]
    pub bezout: Option<(i64, i64)>,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    #[command(flatten)]
    pub weights: WeightsArg,
    /// Keep powers of q up to this one.
    #[arg(long, default_value_t = 6)]
    pub truncate: u32,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, value_parser = parse_pair, required_unless_present = "wps")]
    pub weights: Option<(u64, u64)>,
    /// Weights of a higher-dimensional weighted projective space.
    #[arg(long, value_delimiter = ',', conflicts_with = "weights")]
    pub wps: Option<Vec<u64>>,
    /// In table output, write ages over this denominator (e.g. 12 gives `6/12`).
    #[arg(long)]
    pub denominator: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum RingCommand {
    /// Relations and grading.
    Present(RingArgs),
    /// Normal basis and sparse structure constants.
    Constants(RingArgs),
    /// Associativity, grading, pairing and other self-checks; exit 1 on failure.
    Verify {
        #[command(flatten)]
        ring: RingArgs,
        /// Seed for the randomized confluence check.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RrCommand {
    /// Euler characteristic of a sheaf class on a twisted curve.
    Chi {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Orders of the stacky markings.
        #[arg(long, value_delimiter = ',', default_values_t = Vec::<u64>::new())]
        orders: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        rank: i64,
        /// Degree, as `p/q`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        degree: String,
        /// Ages at the markings, as `p/q`; one per marking, default all zero.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ages: Option<Vec<String>>,
    },
    /// Sections of L_0^z0 L_inf^zinf (and torsion) on a football.
    H0 {
        #[arg(long, value_parser = parse_pair)]
        weights: (u64, u64),
        #[arg(long, allow_hyphen_values = true)]
        z0: i64,
        #[arg(long, allow_hyphen_values = true)]
        zinf: i64,
        /// Orders of extra markings.
        #[arg(long, value_delimiter = ',', default_values_t = Vec::<u64>::new())]
        orders: Vec<u64>,
        /// Exponents at the extra markings.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = Vec::<i64>::new())]
        torsion: Vec<i64>,
    },
    /// Virtual dimension of genus-zero maps to P(a,b).
    Vdim {
        #[command(flatten)]
        weights: WeightsArg,
        /// Degree in units of the generator.
        #[arg(long)]
        beta: u64,
        /// Marking sectors, e.g. `point0:1,point_inf:5,one_dim:0`.
        #[arg(long, value_delimiter = ',')]
        sectors: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MapsCommand {
    /// Line bundles realizing a degree-k map from C_{a,b,D}.
    Solve {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        degree: u64,
        #[arg(long, default_value_t = 1)]
        third_order: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// Evaluate to a number.
    Eval,
    String,
    Dilaton,
    Divisor,
}

#[derive(Args, Debug)]
pub struct TableArg {
    /// Correlator table in JSON lines; defaults to the ring seed.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CorrelatorCommand {
    /// Primary three-point correlators from the quantum ring, as JSON lines.
    Seed(RingArgs),
    /// Apply one equation to a correlator, or evaluate it.
    Reduce {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        table: TableArg,
        /// Insertions, e.g. `tau1(1@one_dim:0),pt@one_dim:0,1@point0:1`.
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<String>,
        #[arg(long, default_value_t = 0)]
        beta: u64,
        #[arg(long, value_enum, default_value_t = Rule::Eval)]
        rule: Rule,
    },
    /// WDVV residual for one quadruple, or for all of them with --sweep; exit 1 if nonzero.
    Wdvv {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        table: TableArg,
        /// Four classes, e.g. `1@one_dim:0,pt@one_dim:0,pt@one_dim:0,pt@one_dim:0`.
        #[arg(long, value_delimiter = ',', required_unless_present = "sweep")]
        four: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        extras: Vec<String>,
        #[arg(long, default_value_t = 0)]
        beta: u64,
        /// Check every quadruple with `beta <= --beta` and primary extras up to --max-points.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
    /// Reconstruct the P^1 table from its seed, as JSON lines.
    P1 {
        #[arg(long, default_value_t = 3)]
        max_beta: u64,
        /// Also check every WDVV residual; exit 1 if one is nonzero.
        #[arg(long)]
        check: bool,
    },
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((p(a)?, p(b)?))
}

fn parse_signed_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `m,n`, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((p(a)?, p(b)?))
}
