use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifsa_core::harness::{SubsetSpace, TheoremId};
use ifsa_core::{Implication, StructureMode, TruthValue};

#[derive(Debug, Parser)]
#[command(
    name = "ifsa",
    version,
    about = "Graded substructures of intuitionistic fuzzy semiautomata over finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate or construct group documents.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Validate machines and evaluate words.
    #[command(subcommand)]
    Machine(MachineCmd),
    /// Evaluate one graded condition and report its degree.
    Check(CheckArgs),
    /// Search an instance grid or sample for theorem counterexamples.
    Verify(VerifyArgs),
    /// Push a subset forward or pull it back along a homomorphism.
    #[command(subcommand)]
    Hom(HomCmd),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Check that a group document (or family name) is a valid group.
    Validate {
        /// Path to a group document, or a family such as `cyclic:4`.
        group: String,
    },
    /// Write the Cayley table of a standard family.
    Make {
        /// `cyclic:N`, `dihedral:N`, `klein4`, `symmetric:N`, or products `G*H`.
        family: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MachineCmd {
    /// Validate a machine document and print its structural degrees.
    Validate {
        machine: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print `A*(from, word, to)` and `B*(from, word, to)`.
    Run {
        machine: PathBuf,
        #[arg(long)]
        from: String,
        /// Space-separated symbols; empty for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        to: String,
    },
    /// Print the extended matrices of a word.
    Extend {
        machine: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Subgroup,
    Normal,
    Identity,
    Subsemi,
    Kernel,
    Epsilon,
    SubsemiStar,
    KernelStar,
}

impl CheckKind {
    pub fn needs_machine(self) -> bool {
        !matches!(self, CheckKind::Subgroup | CheckKind::Normal | CheckKind::Identity)
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub kind: CheckKind,
    /// A group (document path or family) for subset checks, or a machine
    /// document for the automaton checks.
    pub target: String,
    /// Subset document.
    pub subset: PathBuf,
    /// Threshold for the verdict; defaults to the machine's lambda.
    #[arg(long, value_parser = parse_lambda)]
    pub lambda: Option<TruthValue>,
    #[arg(long, default_value_t = ifsa_core::machine::DEFAULT_MAX_LEN)]
    pub max_len: usize,
    #[arg(long, value_enum, default_value_t = ImplicationArg::Lukasiewicz)]
    pub implication: ImplicationArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_theorem)]
    pub theorem: TheoremId,
    /// Group of states: a family such as `klein4` or a group document path.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub denominator: u32,
    #[arg(long, default_value_t = 1)]
    pub alphabet: usize,
    #[arg(long, default_value_t = ifsa_core::machine::DEFAULT_MAX_LEN)]
    pub max_len: usize,
    /// Keep only machines of this structure (`none` keeps all).
    #[arg(long, value_parser = parse_structure, default_value = "none")]
    pub structure: StructureMode,
    /// Subsets paired with each machine; defaults per theorem.
    #[arg(long, value_parser = parse_subsets)]
    pub subsets: Option<SubsetSpace>,
    /// Draw this many random instances instead of enumerating the grid.
    #[arg(long)]
    pub samples: Option<u64>,
    /// With `--samples`, draw distinct grid instances instead of free random ones.
    #[arg(long, requires = "samples")]
    pub grid_sample: bool,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Evaluation cap on the number of instances.
    #[arg(long, default_value_t = ifsa_core::harness::DEFAULT_CAP)]
    pub cap: u64,
    /// Corrupt word composition (negative control).
    #[arg(long)]
    pub mutate: bool,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = ImplicationArg::Lukasiewicz)]
    pub implication: ImplicationArg,
    /// Also write a JUnit XML summary here.
    #[arg(long)]
    pub junit: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum HomCmd {
    /// Image of a subset of the source group.
    Image {
        hom: PathBuf,
        subset: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Preimage of a subset of the target group.
    Preimage {
        hom: PathBuf,
        subset: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Junit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImplicationArg {
    Lukasiewicz,
    Goedel,
}

impl From<ImplicationArg> for Implication {
    fn from(a: ImplicationArg) -> Self {
        match a {
            ImplicationArg::Lukasiewicz => Implication::Lukasiewicz,
            ImplicationArg::Goedel => Implication::Goedel,
        }
    }
}

fn parse_lambda(s: &str) -> Result<TruthValue, String> {
    let v: TruthValue = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_zero() {
        return Err("lambda must lie in (0,1]".into());
    }
    Ok(v)
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_structure(s: &str) -> Result<StructureMode, String> {
    s.parse()
}

fn parse_subsets(s: &str) -> Result<SubsetSpace, String> {
    s.parse().map_err(|e| format!("{e}"))
}
