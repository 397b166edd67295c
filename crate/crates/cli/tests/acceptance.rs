//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every comparison is exact: degrees are
//! rationals, so the tolerance on every count and degree is zero.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use ifsa_core::harness::{
    check, replay, search_counterexamples, GridParams, GridSampleParams, SamplerParams, SearchConfig, SearchReport,
    Source, SourceParams, SubsetSpace, TheoremId, DEFAULT_CAP,
};
use ifsa_core::substructures::replay_witness;
use ifsa_core::{Evaluator, GroupSpec, StructureMode};

/// Exact comparisons only; recorded for the log.
const TOLERANCE: &str = "exact (0)";
const MAX_LEN: usize = 4;
const SEED: u64 = 42;
/// Seeded subsample of the klein4 D=2 structured grid used for the
/// subset-dependent criteria; the full grid has about 3.4 million instances.
const KLEIN4_D2_SAMPLE: u64 = 20_000;

fn grid(group: &str, d: u32, structure: StructureMode, subsets: SubsetSpace) -> SourceParams {
    SourceParams::Grid(GridParams {
        group: GroupSpec::Family(group.into()),
        alphabet: 1,
        denominator: d,
        structure,
        subsets,
    })
}

fn sampler(group: &str, d: u32, count: u64) -> SourceParams {
    SourceParams::Sampler(SamplerParams {
        group: GroupSpec::Family(group.into()),
        alphabet: 2,
        denominator: d,
        count,
        seed: SEED,
    })
}

fn label(p: &SourceParams) -> String {
    match p {
        SourceParams::Grid(g) => format!("{} D={} {:?}/{:?}", family(&g.group), g.denominator, g.structure, g.subsets),
        SourceParams::Sampler(s) => format!("{} D={} sample {}", family(&s.group), s.denominator, s.count),
        SourceParams::GridSample(s) => {
            format!(
                "{} D={} {:?}/{:?} grid-sample {}",
                family(&s.grid.group),
                s.grid.denominator,
                s.grid.structure,
                s.grid.subsets,
                s.count
            )
        }
    }
}

fn family(g: &GroupSpec) -> String {
    match g {
        GroupSpec::Family(f) => f.clone(),
        GroupSpec::Table(t) => t.name.clone(),
    }
}

/// Machine-only grids for the extension law.
fn extension_grids() -> Vec<SourceParams> {
    vec![
        grid("cyclic:2", 1, StructureMode::None, SubsetSpace::Total),
        grid("cyclic:2", 2, StructureMode::None, SubsetSpace::Total),
        grid("klein4", 1, StructureMode::ProductSubgroup, SubsetSpace::Total),
        grid("klein4", 2, StructureMode::ProductSubgroup, SubsetSpace::Total),
    ]
}

/// `(machine, subset)` instance sets for the subset-dependent criteria.
fn instance_sets() -> Vec<SourceParams> {
    vec![
        grid("cyclic:2", 1, StructureMode::None, SubsetSpace::All),
        grid("cyclic:2", 2, StructureMode::None, SubsetSpace::All),
        grid("klein4", 1, StructureMode::ProductSubgroup, SubsetSpace::All),
        SourceParams::GridSample(GridSampleParams {
            grid: GridParams {
                group: GroupSpec::Family("klein4".into()),
                alphabet: 1,
                denominator: 2,
                structure: StructureMode::ProductSubgroup,
                subsets: SubsetSpace::Subgroups,
            },
            count: KLEIN4_D2_SAMPLE,
            seed: SEED,
        }),
        sampler("symmetric:3", 4, 1000),
        sampler("cyclic:4", 4, 1000),
    ]
}

fn run(theorem: TheoremId, params: &SourceParams, mutate: bool) -> SearchReport {
    let source = Source::build(params.clone(), DEFAULT_CAP).expect("source builds");
    let cfg = SearchConfig { max_len: MAX_LEN, mutate, ..Default::default() };
    search_counterexamples(theorem, &source, &cfg).expect("search runs")
}

fn hard(r: &SearchReport, name: &str) -> u64 {
    r.checks.iter().find(|c| c.check == name).map_or(0, |c| c.hard)
}

fn applicable(r: &SearchReport, name: &str) -> u64 {
    r.checks.iter().find(|c| c.check == name).map_or(0, |c| c.applicable)
}

struct Suite {
    failed: Vec<String>,
    /// Reports keyed by (theorem, source label), shared across criteria.
    cache: BTreeMap<(String, String), SearchReport>,
}

impl Suite {
    fn report(&mut self, theorem: TheoremId, params: &SourceParams) -> &SearchReport {
        let key = (theorem.to_string(), label(params));
        self.cache.entry(key).or_insert_with(|| run(theorem, params, false))
    }

    fn verdict(&mut self, id: &str, ok: bool, detail: String) {
        println!("{} {id}: {detail} [tolerance: {TOLERANCE}]", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(id.to_string());
        }
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ifsa"))
}

/// Runs `ifsa verify ...` and returns (exit code, stdout).
fn verify_cli(args: &[&str]) -> (i32, String) {
    let out = bin().arg("verify").args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn without_header(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    v.as_object_mut().expect("object").remove("header");
    v
}

fn main() {
    let started = Instant::now();
    let mut s = Suite { failed: Vec::new(), cache: BTreeMap::new() };

    // 1. Concatenation law, exact equality on the exhaustive grids.
    {
        let t = Instant::now();
        let mut total = 0;
        let mut bad = 0;
        let mut parts = Vec::new();
        for p in extension_grids() {
            let r = s.report(TheoremId::Extension, &p);
            total += r.instances_examined;
            bad += hard(r, check::CONCAT);
            parts.push(format!("{}: {}", label(&p), r.instances_examined));
        }
        let secs = t.elapsed().as_secs_f64();
        s.verdict(
            "C1 concatenation law",
            bad == 0 && total > 0 && secs < 60.0,
            format!("{bad} counterexamples over {total} machines ({}) in {secs:.1}s", parts.join(", ")),
        );
    }

    // 2. Consistency preserved by word extension.
    {
        let mut sets = extension_grids();
        sets.push(sampler("symmetric:3", 4, 1000));
        let mut total = 0;
        let mut bad = 0;
        for p in &sets {
            let r = s.report(TheoremId::Extension, p);
            total += r.instances_examined;
            bad += hard(r, check::CONSISTENCY);
        }
        s.verdict("C2 consistency preservation", bad == 0, format!("{bad} violations over {total} machines"));
    }

    let sets = instance_sets();
    let examined: u64 = sets.iter().map(|p| s.report(TheoremId::Identity, p).instances_examined).sum();

    // 3. Degree-1 soundness of the starred and implied conditions.
    {
        let mut bad = 0;
        let mut premises = [0u64; 3];
        let claims = [
            (TheoremId::SubsemiStar, check::SUBSEMI_STAR_ONE),
            (TheoremId::KernelStar, check::KERNEL_STAR_ONE),
            (TheoremId::KernelSubsemi, check::KERNEL_SUBSEMI_ONE),
        ];
        for p in &sets {
            for (k, (t, name)) in claims.iter().enumerate() {
                let r = s.report(*t, p);
                bad += hard(r, name);
                premises[k] += applicable(r, name);
            }
        }
        s.verdict(
            "C3 degree-1 soundness",
            bad == 0 && premises.iter().all(|&n| n > 0),
            format!(
                "{bad} violations over {examined} instances; degree-1 premises held on {} (subsemi), {} (kernel), {} (kernel+epsilon+structure)",
                premises[0], premises[1], premises[2]
            ),
        );
    }

    // 4. Identity condition against the subgroup degree.
    {
        let mut bad = 0;
        let mut premise = 0;
        for p in &sets {
            let r = s.report(TheoremId::Identity, p);
            bad += hard(r, check::IDENTITY_ONE) + hard(r, check::IDENTITY_CHAIN);
            premise += applicable(r, check::IDENTITY_ONE);
        }
        s.verdict(
            "C4 identity condition",
            bad == 0 && premise > 0,
            format!("{bad} violations over {examined} instances ({premise} with subgroup degree 1)"),
        );
    }

    // 5. Classical oracle agreement; the D=1 grids are entirely crisp.
    {
        let mut bad = 0;
        for p in &sets {
            let r = s.report(TheoremId::Identity, p);
            bad +=
                hard(r, check::ORACLE_SUBGROUP) + hard(r, check::ORACLE_NORMAL_ABELIAN) + hard(r, check::ORACLE_CRISP);
        }
        let crisp: u64 = sets.iter().map(|p| applicable(s.report(TheoremId::Identity, p), check::ORACLE_CRISP)).sum();
        s.verdict(
            "C5 classical oracle",
            bad == 0 && crisp > 0,
            format!("{bad} disagreements over {examined} instances ({crisp} crisp)"),
        );
    }

    // 6. Subset-instantiation law.
    {
        let mut bad = 0;
        for p in &sets {
            bad += hard(s.report(TheoremId::KernelSubsemi, p), check::SUBSET_LAW);
        }
        s.verdict("C6 subset-instantiation law", bad == 0, format!("{bad} violations over {examined} instances"));
    }

    // 7. Negative controls: corrupted composition must be caught.
    {
        let ext = run(TheoremId::Extension, &extension_grids()[1], true);
        let star = run(TheoremId::SubsemiStar, &sets[0], true);
        let kstar = run(TheoremId::KernelStar, &sets[0], true);
        let (code, _) = verify_cli(&["thm-ext", "--group", "cyclic:2", "--denominator", "1", "--mutate"]);
        let ok = ext.hard_failures > 0 && star.hard_failures + kstar.hard_failures > 0 && code == 1;
        s.verdict(
            "C7 negative controls",
            ok,
            format!(
                "mutated thm-ext: {} counterexamples; mutated starred checks: {} + {}; CLI exit {code}",
                ext.hard_failures, star.hard_failures, kstar.hard_failures
            ),
        );
    }

    // 8. Determinism across repeats and worker counts.
    {
        let runs: [&[&str]; 2] = [
            &["thm-kernel-star", "--group", "symmetric:3", "--denominator", "4", "--samples", "200", "--alphabet", "2"],
            &["thm-subsemi-star", "--group", "cyclic:2", "--denominator", "2", "--mutate"],
        ];
        let mut ok = true;
        let mut compared = 0;
        for args in runs {
            let mut seen: Option<serde_json::Value> = None;
            for workers in ["1", "3", "1"] {
                let mut full: Vec<&str> = args.to_vec();
                full.extend(["--format", "json", "--workers", workers]);
                let (_, out) = verify_cli(&full);
                let v = without_header(&out);
                match &seen {
                    None => seen = Some(v),
                    Some(first) => {
                        ok &= *first == v;
                        compared += 1;
                    }
                }
            }
        }
        s.verdict("C8 determinism", ok, format!("{compared} repeated runs byte-identical outside the header"));
    }

    // 9. Findings ledger at D=2 with replayable witnesses.
    {
        let mut ok = true;
        let mut lines = Vec::new();
        let mut replayed = 0;
        for theorem in ["thm-subsemi-star", "thm-kernel-star"] {
            for extra in
                [&["--group", "cyclic:2"][..], &["--group", "symmetric:3", "--samples", "1000", "--alphabet", "2"][..]]
            {
                let mut args = vec![theorem, "--denominator", "2", "--format", "json"];
                args.extend_from_slice(extra);
                let (code, out) = verify_cli(&args);
                let r: SearchReport = serde_json::from_str(&out).expect("report parses");
                let expected = if r.hard_failures > 0 {
                    1
                } else if r.findings > 0 {
                    3
                } else {
                    0
                };
                ok &= code == expected && r.hard_failures == 0;
                for cx in &r.counterexamples {
                    let cfg = SearchConfig { max_len: r.max_len, ..Default::default() };
                    ok &= replay(r.theorem, cx, &cfg).expect("replays") == cx.violations;
                    let (m, sub) = cx.instance().expect("documents load");
                    for v in &cx.violations {
                        ok &= !v.witnesses.is_empty();
                        for w in &v.witnesses {
                            let (a, c, d) = replay_witness(&m, &sub, w, Evaluator::default()).expect("witness replays");
                            ok &= (a, c, d) == (w.antecedent, w.consequent, w.degree) && d < v.claimed;
                            replayed += 1;
                        }
                    }
                }
                lines.push(format!("{theorem} {}: exit {code}, findings {}", extra[1], r.findings));
            }
        }
        s.verdict("C9 findings ledger", ok, format!("{}; {replayed} witnesses replayed", lines.join("; ")));
    }

    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if !s.failed.is_empty() {
        eprintln!("failed: {}", s.failed.join(", "));
        std::process::exit(1);
    }
}
