mod commands;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyaut::derivations::DEFAULT_LND_BOUND;
use polyaut::ffperm::{DEFAULT_MAX_DEGREE, DEFAULT_WORD_LENGTH};
use polyaut::Field;

use commands::ParityArgs;
use report::CommandResult;

/// Exact computations with polynomial automorphisms of affine space.
#[derive(Parser)]
#[command(name = "polyaut", version)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Coefficient field: Q, GF(p), GF(4), GF(8) or GF(9).
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exponential of a locally nilpotent derivation.
    Exp {
        /// `nagata` or a literal such as `[-2*Y; Z; 0]`.
        #[arg(long)]
        derivation: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Iteration bound for the nilpotency check.
        #[arg(long, default_value_t = DEFAULT_LND_BOUND)]
        bound: usize,
    },
    /// Every grading making a derivation homogeneous.
    Gradings {
        #[arg(long)]
        derivation: String,
    },
    /// Conjugate L*exp(lambda D) back to a diagonal map L.
    ShiftLinearize {
        /// Diagonal map, e.g. `(2*X, 2*Y, 2*Z)` or a preset.
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "nagata")]
        derivation: String,
        #[arg(long, default_value_t = DEFAULT_LND_BOUND)]
        bound: usize,
    },
    /// Polynomials of bounded degree with F*(p) = mu p.
    FixedSpace {
        /// Preset (`N`, `L2N`, `2N`), a literal `(f1, ..., fn)`, or a word.
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Print fixed-space dimensions for every degree bound up to this one.
        #[arg(long)]
        profile: Option<u32>,
        /// Number of variables when the map is given as a word.
        #[arg(long, default_value_t = 3)]
        vars: usize,
    },
    /// Sign of the permutations induced by random tame words over GF(q)^n.
    Parity {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Sample maps fixing the last coordinate (q = 2^m, n = 3).
        #[arg(long)]
        fiberwise: bool,
        #[arg(long, default_value_t = DEFAULT_WORD_LENGTH)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Run built-in checks.
    Verify {
        #[arg(default_value = "all", value_parser = ["all", "nagata", "gradings", "fixedspace", "parity", "tame"])]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Exp { .. } => "exp",
            Command::Gradings { .. } => "gradings",
            Command::ShiftLinearize { .. } => "shift-linearize",
            Command::FixedSpace { .. } => "fixed-space",
            Command::Parity { .. } => "parity",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cli: &Cli) -> polyaut::Result<CommandResult> {
    let field = || Field::from_name(&cli.field);
    match &cli.command {
        Command::Exp {
            derivation,
            lambda,
            bound,
        } => commands::exp(&field()?, derivation, lambda, *bound),
        Command::Gradings { derivation } => commands::gradings(&field()?, derivation),
        Command::ShiftLinearize {
            map,
            lambda,
            derivation,
            bound,
        } => commands::shift_linearize(&field()?, map, lambda, derivation, *bound),
        Command::FixedSpace {
            map,
            mu,
            degree,
            profile,
            vars,
        } => match profile {
            Some(dmax) => commands::profile(&field()?, map, *dmax, *vars),
            None => commands::fixed_space(&field()?, map, mu, *degree, *vars),
        },
        Command::Parity {
            q,
            n,
            samples,
            fiberwise,
            length,
            max_degree,
        } => commands::parity(&ParityArgs {
            q: *q,
            n: *n,
            samples: *samples,
            seed: cli.seed,
            fiberwise: *fiberwise,
            length: *length,
            max_degree: *max_degree,
        }),
        Command::Verify { suite } => Ok(verify::verify(suite)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).unwrap_or_else(|e| CommandResult::error(cli.command.name(), e.to_string()));
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&result.json).expect("serializable"));
    } else if result.json.get("error").is_some() {
        eprintln!("{}", result.text.trim_end());
    } else {
        print!("{}", result.text);
    }
    if result.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
