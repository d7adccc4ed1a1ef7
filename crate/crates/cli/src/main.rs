use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use design_forge_cli::commands;
use design_forge_core::arrays::ScanTarget;
use design_forge_core::design::RectangleKind;

#[derive(Parser)]
#[command(
    name = "design-forge",
    version,
    about = "Enumerate Youden, near Youden and 3-lambda Latin rectangles up to isotopism, \
             and derive triple/double/sesqui arrays from them"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Constant column intersections (integral lambda).
    Youden,
    /// Two adjacent intersection sizes (non-integral lambda).
    Nyr,
    /// Three adjacent intersection sizes around an integral lambda.
    #[value(name = "3lambda")]
    ThreeLambda,
}

impl From<KindArg> for RectangleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Youden => RectangleKind::Youden,
            KindArg::Nyr => RectangleKind::NearYouden,
            KindArg::ThreeLambda => RectangleKind::ThreeLambda,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Triple,
    Double,
    Sesqui,
    #[value(name = "sesqui-t")]
    SesquiT,
    All,
}

impl TargetArg {
    fn targets(self) -> Vec<ScanTarget> {
        match self {
            TargetArg::Triple => vec![ScanTarget::Triple],
            TargetArg::Double => vec![ScanTarget::Double],
            TargetArg::Sesqui => vec![ScanTarget::Sesqui],
            TargetArg::SesquiT => vec![ScanTarget::SesquiTranspose],
            TargetArg::All => vec![
                ScanTarget::Triple,
                ScanTarget::Double,
                ScanTarget::Sesqui,
                ScanTarget::SesquiTranspose,
            ],
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustively enumerate isotopism classes and report counts by
    /// autotopism group order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Worker count (default: DESIGN_FORGE_JOBS, else all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Prefix length at which the search tree is split into jobs.
        #[arg(long)]
        split_depth: Option<usize>,
        /// Write the catalog of canonical representatives here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the summary here instead of stdout.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Also count self-conjugate classes (doubles canonicalization work).
        #[arg(long)]
        self_conjugate: bool,
    },
    /// Classify each rectangle in a catalog file and report its
    /// intersection/covering structure.
    Check {
        file: PathBuf,
        /// Verify every rectangle has this kind; exit 1 otherwise.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Also report autotopism group orders.
        #[arg(long)]
        aut: bool,
    },
    /// Apply the column-removal/role-swap construction to every column of
    /// every rectangle and count compatible arrays.
    Scan {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Fold transposed arrays into one class when emitting blocks.
        #[arg(long)]
        fold_transposes: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Develop a first column cyclically (column j adds j mod n).
    Develop {
        #[arg(long)]
        n: usize,
        /// Comma-separated residues, e.g. 0,1,3.
        #[arg(long)]
        first_column: String,
    },
    /// Re-enumerate with the brute-force oracle and diff against a catalog.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Catalog file to verify.
        #[arg(long)]
        catalog: PathBuf,
        /// Override the size guard (runtimes explode quickly).
        #[arg(long)]
        allow_large: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Enumerate { n, k, kind, jobs, split_depth, out, summary, self_conjugate } => {
            commands::cmd_enumerate(
                n,
                k,
                kind.into(),
                jobs,
                split_depth,
                out,
                summary,
                self_conjugate,
            )
        }
        Cmd::Check { file, kind, aut } => {
            commands::cmd_check(&file, kind.map(Into::into), aut)
        }
        Cmd::Scan { file, target, fold_transposes, out } => {
            commands::cmd_scan(&file, &target.targets(), fold_transposes, out.as_deref())
        }
        Cmd::Develop { n, first_column } => commands::cmd_develop(n, &first_column),
        Cmd::Oracle { n, k, kind, catalog, allow_large } => {
            commands::cmd_oracle(n, k, kind.into(), &catalog, allow_large)
        }
    };
    ExitCode::from(code)
}
