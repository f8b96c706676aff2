use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ortho_lattice::cli::{self, Outcome, EXIT_INPUT};
use ortho_lattice::Exec;

/// Decide whether a binary or ternary Construction-A lattice has an
/// orthogonal basis.
#[derive(Parser)]
#[command(name = "ortho-lattice", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide orthogonality of the lattice in FILE ("-" for stdin).
    Decide {
        file: PathBuf,
        /// Override the field order in the file header.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print a seeded instance.
    Gen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `orthogonal` or `code:k`.
        #[arg(long, default_value = "orthogonal")]
        kind: String,
    },
    /// Brute-force orthogonal basis search (n <= 8).
    Oracle { file: PathBuf },
    /// Closest lattice vector to the file's target.
    Cvp { file: PathBuf },
}

fn read_input(path: &PathBuf) -> Result<String, Outcome> {
    let res = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|e| Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {}: {e}\n", path.display()),
    })
}

fn dispatch(command: Command, exec: Exec) -> Outcome {
    let with_file = |path: &PathBuf, f: &dyn Fn(&str) -> Outcome| {
        read_input(path).map_or_else(|e| e, |s| f(&s))
    };
    match command {
        Command::Decide { file, q, json } => {
            with_file(&file, &|s| cli::run_decide(s, q, json, exec))
        }
        Command::Gen { q, n, seed, kind } => cli::run_gen(q, n, seed, &kind),
        Command::Oracle { file } => with_file(&file, &cli::run_oracle),
        Command::Cvp { file } => with_file(&file, &|s| cli::run_cvp(s, exec)),
    }
}

#[cfg(feature = "parallel")]
fn run(command: Command, threads: usize) -> Outcome {
    if threads == 1 {
        return dispatch(command, Exec::Sequential);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| dispatch(command, Exec::Parallel)),
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn run(command: Command, _threads: usize) -> Outcome {
    dispatch(command, Exec::Sequential)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = match cli::threads_from_env() {
        Ok(t) => run(args.command, t),
        Err(e) => e.into(),
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
