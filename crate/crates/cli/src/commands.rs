use std::fs;
use std::path::{Path, PathBuf};

use ifsa_core::harness::{
    search_counterexamples, GridParams, GridSampleParams, HarnessError, SamplerParams, SearchConfig, Source,
    SourceParams,
};
use ifsa_core::ifs::{hom_image, hom_preimage, identity_report_with, normal_report_with, subgroup_report_with};
use ifsa_core::machine::structural_report;
use ifsa_core::{
    CarrierKind, DegreeReport, Evaluator, Family, FiniteGroup, GroupDoc, GroupError, GroupHomomorphism, GroupSpec,
    HomomorphismDoc, IFSubset, IfsDoc, IfsError, Implication, Machine, MachineDoc, MachineError,
};
use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::args::{CheckArgs, CheckKind, Command, Format, GroupCmd, HomCmd, MachineCmd, OutputArgs, VerifyArgs};

/// Anything that maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Ifs(#[from] IfsError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Findings,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Findings => 3,
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Group(c) => group(c),
        Command::Machine(c) => machine(c),
        Command::Check(a) => check(a),
        Command::Verify(a) => verify(a),
        Command::Hom(c) => hom(c),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

/// A family name, or else a path to a group document.
fn group_spec(arg: &str) -> Result<GroupSpec, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(GroupSpec::Table(read_json::<GroupDoc>(path)?));
    }
    arg.parse::<Family>()?;
    Ok(GroupSpec::Family(arg.to_string()))
}

fn load_machine(path: &Path) -> Result<Machine, CliError> {
    Ok(Machine::from_doc(&read_json::<MachineDoc>(path)?)?)
}

fn load_subset(path: &Path) -> Result<IFSubset, CliError> {
    Ok(IFSubset::from_doc(&read_json::<IfsDoc>(path)?)?)
}

fn group(cmd: GroupCmd) -> Result<Outcome, CliError> {
    match cmd {
        GroupCmd::Validate { group } => {
            let g = group_spec(&group)?.resolve()?;
            println!(
                "valid group {}: order {}, identity {}, {}",
                g.name(),
                g.order(),
                g.element_name(g.identity()),
                if g.is_abelian() { "abelian" } else { "non-abelian" }
            );
        }
        GroupCmd::Make { family, output } => {
            let g = family.parse::<Family>()?.build()?;
            let json = serde_json::to_string_pretty(&g.to_doc()).expect("group doc serializes");
            emit(&json, output.as_deref())?;
        }
    }
    Ok(Outcome::Pass)
}

fn render_report(r: &DegreeReport, out: &OutputArgs) -> Result<Outcome, CliError> {
    let text = match out.format {
        Format::Json => r.to_json(),
        Format::Text => r.to_string(),
        Format::Junit => return Err(CliError::Usage("junit output is only available for verify".into())),
    };
    emit(&text, out.output.as_deref())?;
    Ok(match r.verdict() {
        Some(false) => Outcome::Fail,
        _ => Outcome::Pass,
    })
}

fn machine(cmd: MachineCmd) -> Result<Outcome, CliError> {
    match cmd {
        MachineCmd::Validate { machine, out } => {
            let m = load_machine(&machine)?;
            let report = structural_report(&m).at_lambda(m.lambda());
            render_report(&report, &out)
        }
        MachineCmd::Run { machine, from, word, to } => {
            let m = load_machine(&machine)?;
            let w = m.parse_word(&word)?;
            let (mu, nu) = m.run_degree(m.state(&from)?, &w, m.state(&to)?)?;
            println!("mu={mu} nu={nu}");
            Ok(Outcome::Pass)
        }
        MachineCmd::Extend { machine, word, out } => {
            let m = load_machine(&machine)?;
            let w = m.parse_word(&word)?;
            let p = m.extend_word(&w)?;
            let text = match out.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "word": m.format_word(&w),
                    "mu": p.a_star.rows(),
                    "nu": p.b_star.rows(),
                }))
                .expect("matrices serialize"),
                Format::Text => format!("word: {}\nA*:\n{}B*:\n{}", m.format_word(&w), p.a_star, p.b_star),
                Format::Junit => return Err(CliError::Usage("junit output is only available for verify".into())),
            };
            emit(&text, out.output.as_deref())?;
            Ok(Outcome::Pass)
        }
    }
}

fn check(a: CheckArgs) -> Result<Outcome, CliError> {
    let subset = load_subset(&a.subset)?;
    let imp: Implication = a.implication.into();
    let (report, default_lambda) = if a.kind.needs_machine() {
        let m = load_machine(Path::new(&a.target))?;
        let ev = Evaluator { implication: imp, ..Default::default() };
        let r = match a.kind {
            CheckKind::Subsemi => ev.subsemi(&m, &subset)?,
            CheckKind::Kernel => ev.kernel(&m, &subset)?,
            CheckKind::Epsilon => ev.kernel_epsilon(&m, &subset)?,
            CheckKind::SubsemiStar => ev.subsemi_star(&m, &subset, a.max_len)?,
            CheckKind::KernelStar => ev.kernel_star(&m, &subset, a.max_len)?,
            _ => unreachable!("group-level checks take a group"),
        };
        (r, Some(m.lambda()))
    } else {
        let g: FiniteGroup = group_spec(&a.target)?.resolve()?;
        let r = match a.kind {
            CheckKind::Subgroup => subgroup_report_with(&g, &subset, imp)?,
            CheckKind::Normal => normal_report_with(&g, &subset, imp)?,
            CheckKind::Identity => identity_report_with(&g, &subset, imp)?,
            _ => unreachable!("automaton checks take a machine"),
        };
        (r, None)
    };
    let report = match a.lambda.or(default_lambda) {
        Some(l) => report.at_lambda(l),
        None => report,
    };
    render_report(&report, &a.out)
}

fn verify(a: VerifyArgs) -> Result<Outcome, CliError> {
    let group = group_spec(&a.group)?;
    let grid = || GridParams {
        group: group.clone(),
        alphabet: a.alphabet,
        denominator: a.denominator,
        structure: a.structure,
        subsets: a.subsets.unwrap_or(a.theorem.default_subsets()),
    };
    let params = match (a.samples, a.grid_sample) {
        (None, _) => SourceParams::Grid(grid()),
        (Some(count), true) => SourceParams::GridSample(GridSampleParams { grid: grid(), count, seed: a.seed }),
        (Some(count), false) => SourceParams::Sampler(SamplerParams {
            group: group.clone(),
            alphabet: a.alphabet,
            denominator: a.denominator,
            count,
            seed: a.seed,
        }),
    };
    let source = Source::build(params, a.cap)?;
    let cfg =
        SearchConfig { max_len: a.max_len, mutate: a.mutate, implication: a.implication.into(), workers: a.workers };
    let report = search_counterexamples(a.theorem, &source, &cfg)?;
    let text = match a.out.format {
        Format::Text => report.to_string(),
        Format::Json => report.to_json(),
        Format::Junit => report.to_junit(),
    };
    emit(&text, a.out.output.as_deref())?;
    if a.out.output.is_some() {
        println!("counterexamples: {}", report.hard_failures);
        println!("findings: {}", report.findings);
    }
    if let Some(p) = &a.junit {
        fs::write(p, report.to_junit()).map_err(|source| CliError::Io { path: p.clone(), source })?;
    }
    Ok(match report.exit_code() {
        0 => Outcome::Pass,
        3 => Outcome::Findings,
        _ => Outcome::Fail,
    })
}

fn hom(cmd: HomCmd) -> Result<Outcome, CliError> {
    let (hom, subset, output, image) = match cmd {
        HomCmd::Image { hom, subset, output } => (hom, subset, output, true),
        HomCmd::Preimage { hom, subset, output } => (hom, subset, output, false),
    };
    let f = GroupHomomorphism::from_doc(&read_json::<HomomorphismDoc>(&hom)?)?;
    let s = load_subset(&subset)?;
    let t = if image { hom_image(&f, &s)? } else { hom_preimage(&f, &s)? };
    let json = serde_json::to_string_pretty(&t.to_doc(CarrierKind::Group)).expect("subset doc serializes");
    emit(&json, output.as_deref())?;
    Ok(Outcome::Pass)
}
