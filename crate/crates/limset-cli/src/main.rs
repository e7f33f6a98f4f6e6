//! `limset`: load shift systems and interval maps, run limit-set analyses,
//! and reproduce the bundled worked examples as pass/fail reports.
//!
//! Exit codes: 0 success, 2 parse/configuration error, 3 analysis error,
//! 4 worked-example check failure.

mod cmd;
mod output;
mod points;

use clap::{Parser, Subcommand};
use limset::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "limset",
    version,
    about = "limit sets, chain transitivity and shadowing"
)]
pub(crate) struct Cli {
    /// Directory for emitted artifacts (stdout when omitted)
    #[arg(long, global = true)]
    pub(crate) out: Option<PathBuf>,

    /// Seed for randomised constructions
    #[arg(long, global = true, default_value_t = 0)]
    pub(crate) seed: u64,

    /// Output format where a choice exists
    #[arg(long, global = true, default_value = "csv")]
    pub(crate) format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a subshift file; report language sizes and block graphs
    Sft {
        /// Subshift file: alphabet line, then one forbidden word per line
        #[arg(long)]
        file: PathBuf,
        /// Largest block-graph resolution to emit
        #[arg(long, default_value_t = 3)]
        res: u32,
    },
    /// Alpha/omega/gamma window sets of a described point
    Limits {
        /// Point expression (see the guide): `periodic ...`, `sched ...`, `two ...`
        #[arg(long)]
        point: String,
        /// Alphabet symbols, e.g. `012`
        #[arg(long)]
        alphabet: String,
        /// Which limit set to compute
        #[arg(long, default_value = "omega")]
        kind: String,
        /// Largest window length
        #[arg(long, default_value_t = 4)]
        res: u32,
    },
    /// Shadow a pseudo-orbit in a subshift
    Shadow {
        #[arg(long)]
        sft: PathBuf,
        /// Pseudo-orbit JSON record (direction, delta_exp, point names)
        #[arg(long, required_unless_present = "random")]
        po: Option<PathBuf>,
        /// Point library file (`name = expression` lines)
        #[arg(long, required_unless_present = "random")]
        points: Option<PathBuf>,
        /// Generate a seeded random pseudo-orbit of this length instead
        #[arg(long)]
        random: Option<usize>,
        /// Direction for --random (forward or backward)
        #[arg(long, default_value = "forward")]
        direction: String,
        /// Epsilon exponent: shadow at 2^-eps
        #[arg(long, default_value_t = 2)]
        eps: u32,
        /// Delta exponent for --random
        #[arg(long)]
        delta: Option<u32>,
    },
    /// Internal chain transitivity: maximal classes of a subshift
    Ict {
        #[arg(long)]
        sft: PathBuf,
        /// Resolution k (classes on (k+1)-windows)
        #[arg(long, default_value_t = 1)]
        res: u32,
    },
    /// Realise a window spec as the limit set of a point or full trajectory
    Construct {
        /// Subshift file providing the target language
        #[arg(long, required_unless_present = "spikes")]
        sft: Option<PathBuf>,
        /// Alternatively: spike symbols over --alphabet, e.g. `1,2`
        #[arg(long)]
        spikes: Option<String>,
        #[arg(long)]
        alphabet: Option<String>,
        /// Certified resolution K
        #[arg(long, default_value_t = 4)]
        res: u32,
        /// Symbol budget for the emitted prefix
        #[arg(long, default_value_t = 1 << 16)]
        horizon: usize,
        /// Build a full trajectory instead of a one-sided point
        #[arg(long)]
        two_sided: bool,
    },
    /// Exact interval-map analyses
    Interval {
        /// Map file: `lo,hi,loClosed,hiClosed,c0,c1,c2` per line
        #[arg(long)]
        map: PathBuf,
        /// Operation: eval, orbit, preimages, a1, a2, a3, box-graph,
        /// chain-recurrent, falsify
        #[arg(long)]
        op: String,
        /// Rational argument for eval/orbit/preimages/a1/a2/a3
        #[arg(long)]
        at: Option<String>,
        /// Orbit length
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Box width (chain-recurrent/box-graph) or resolution (a1/a2/a3)
        #[arg(long, default_value = "1/32")]
        grid: String,
        /// Image fattening for box graphs
        #[arg(long, default_value = "1/64")]
        fatten: String,
        /// Tree depth for a1/a2/a3
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Epsilon for falsify
        #[arg(long, default_value = "1/3")]
        eps: String,
        /// Delta for falsify
        #[arg(long, default_value = "1/64")]
        delta: String,
    },
    /// Re-run the bundled worked examples and check their documented claims
    VerifyPaper {
        /// Run only the checks of one example id (e.g. 5.2)
        #[arg(long)]
        only: Option<String>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::UnknownSymbol(_) | Error::Invalid(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sft { file, res } => cmd::sft(&cli, file, *res),
        Command::Limits {
            point,
            alphabet,
            kind,
            res,
        } => cmd::limits(&cli, point, alphabet, kind, *res),
        Command::Shadow {
            sft,
            po,
            points,
            random,
            direction,
            eps,
            delta,
        } => cmd::shadow(
            &cli,
            sft,
            po.as_deref(),
            points.as_deref(),
            *random,
            direction,
            *eps,
            *delta,
        ),
        Command::Ict { sft, res } => cmd::ict(&cli, sft, *res),
        Command::Construct {
            sft,
            spikes,
            alphabet,
            res,
            horizon,
            two_sided,
        } => cmd::construct(
            &cli,
            sft.as_deref(),
            spikes.as_deref(),
            alphabet.as_deref(),
            *res,
            *horizon,
            *two_sided,
        ),
        Command::Interval {
            map,
            op,
            at,
            horizon,
            grid,
            fatten,
            depth,
            eps,
            delta,
        } => cmd::interval(
            &cli,
            map,
            op,
            at.as_deref(),
            *horizon,
            grid,
            fatten,
            *depth,
            eps,
            delta,
        ),
        Command::VerifyPaper { only } => return cmd::verify_paper(&cli, only.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub(crate) use output::{Emitter, RunConfig};
