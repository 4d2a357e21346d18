use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectravoid::{CollisionClass, DetSign, StructureClass, StructureKind};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "spectravoid",
    version,
    about = "Eigenvalue crossings and avoided crossings on structured matrix curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Track the spectrum along a random curve and report close approaches
    Track(TrackArgs),
    /// Sample an ensemble and write the minimal gaps of every sample
    Gaps(GapsArgs),
    /// Estimate the codimension of a collision class from sampled gaps
    Codim(CodimArgs),
    /// Print ambient dimensions and codimensions of every structure
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Symmetric,
    Hermitian,
    SkewSymmetric,
    SkewHermitian,
    Orthogonal,
    Unitary,
    RectReal,
    RectComplex,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Symmetric => StructureKind::Symmetric,
            Structure::Hermitian => StructureKind::Hermitian,
            Structure::SkewSymmetric => StructureKind::SkewSymmetric,
            Structure::SkewHermitian => StructureKind::SkewHermitian,
            Structure::Orthogonal => StructureKind::Orthogonal,
            Structure::Unitary => StructureKind::Unitary,
            Structure::RectReal => StructureKind::RectReal,
            Structure::RectComplex => StructureKind::RectComplex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveChoice {
    Pencil,
    Polar,
    Cayley,
    /// Exponential path; expect collisions that are artifacts of the map
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Collision {
    Generic,
    Zero,
    PlusOne,
    MinusOne,
}

impl From<Collision> for CollisionClass {
    fn from(c: Collision) -> Self {
        match c {
            Collision::Generic => CollisionClass::PairGeneric,
            Collision::Zero => CollisionClass::AtZero,
            Collision::PlusOne => CollisionClass::AtPlusOne,
            Collision::MinusOne => CollisionClass::AtMinusOne,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct StructureArgs {
    #[arg(long, value_enum)]
    pub structure: Structure,
    /// Matrix size (columns for the rectangular kinds)
    #[arg(long)]
    pub n: usize,
    /// Rows, rectangular kinds only
    #[arg(long)]
    pub m: Option<usize>,
    /// Band half-width, linear square kinds only
    #[arg(long)]
    pub bandwidth: Option<usize>,
    /// Determinant sign, orthogonal only
    #[arg(long, allow_hyphen_values = true)]
    pub det: Option<i32>,
}

#[derive(Debug, Clone, Args)]
pub struct TrackArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    /// Defaults to pencil for linear structures and polar for the groups
    #[arg(long, value_enum)]
    pub curve: Option<CurveChoice>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t_max: f64,
    /// Initial number of grid nodes
    #[arg(long, default_value_t = 401)]
    pub grid: usize,
    #[arg(long)]
    pub seed: u64,
    /// Branch data; events go next to it as `<stem>.events.json`
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GapsArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Written to stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CodimArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, value_enum, default_value_t = Collision::Generic)]
    pub collision: Collision,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.1)]
    pub tail_fraction: f64,
    /// Report copy; the report is always printed
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Plain text when absent
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl StructureArgs {
    pub fn class(&self) -> CliResult<StructureClass> {
        let kind = StructureKind::from(self.structure);
        let mut class = if kind.is_rectangular() {
            let m = self.m.ok_or_else(|| CliError::Invalid(format!("--m is required for {kind}")))?;
            StructureClass::rect(kind, m, self.n)?
        } else {
            if self.m.is_some() {
                return Err(CliError::Invalid(format!("--m applies only to rectangular structures, not {kind}")));
            }
            StructureClass::new(kind, self.n)?
        };
        if let Some(k) = self.bandwidth {
            class = class.with_bandwidth(k)?;
        }
        if let Some(d) = self.det {
            class = class.with_det_sign(DetSign::from_i32(d)?)?;
        }
        Ok(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("spectravoid").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn orthogonal_with_negative_det() {
        let cli = parse(&["codim", "--structure", "orthogonal", "--n", "6", "--det", "-1", "--seed", "1"]);
        let Command::Codim(a) = cli.command else { panic!() };
        let class = a.structure.class().unwrap();
        assert_eq!(class.det_sign(), Some(DetSign::Minus));
    }

    #[test]
    fn rect_needs_m() {
        let cli = parse(&["gaps", "--structure", "rect-complex", "--n", "4", "--seed", "1"]);
        let Command::Gaps(a) = cli.command else { panic!() };
        assert!(matches!(a.structure.class(), Err(CliError::Invalid(_))));
    }

    #[test]
    fn det_on_symmetric_rejected() {
        let cli = parse(&["gaps", "--structure", "symmetric", "--n", "4", "--det", "1", "--seed", "1"]);
        let Command::Gaps(a) = cli.command else { panic!() };
        assert!(a.structure.class().is_err());
    }

    #[test]
    fn negative_range() {
        let cli =
            parse(&["track", "--structure", "symmetric", "--n", "3", "--t-min", "-3", "--seed", "1", "--out", "x.csv"]);
        let Command::Track(a) = cli.command else { panic!() };
        assert_eq!((a.t_min, a.t_max, a.grid), (-3.0, 1.0, 401));
    }
}
