//! Subcommand implementations.

use std::fmt::Write as _;

use kradon_core::lemma_lab::{
    keyint_witness, sharpness_witness, sweep_downsets, sweep_keyint, sweep_transversal_bound, thresholds, LemmaKind,
    SweepReport, Thresholds,
};
use kradon_core::solvers::{max_cross_with, CrossInstance, Guardrails, Mode, Strategy};
use kradon_core::verify::{
    ekr_boundary, ekr_boundary_grid, hunt_akgen, hunt_akgen_sampled, hunt_chvatal, hunt_chvatal_sampled,
    hunt_kamat_graphs, hunt_kamatgen, hunt_kamatgen_sampled, verify_large_k_case, verify_powerset_formulas,
    verify_prod_theorem, verify_sum_large_mu, verify_sum_theorem, HuntReport, SampleSpec, TheoremKind,
    VerdictRecord,
};
use kradon_core::{HereditaryFamily, LevelSelector, SetFamily};
use serde::Serialize;
use serde_json::json;

use crate::input::{bad, parse_range, parse_selector, parse_selectors, read_host, read_text};
use crate::{
    Cli, Command, Conjecture, FamilyCmd, HostArgs, HuntArgs, InstanceArgs, LemmaArgs, ModeArg, Outcome, SolveArgs,
    StrategyArg, TheoremArgs, ThresholdsArgs, VerifyCmd, WitnessCmd,
};

pub fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Thresholds(a) => cmd_thresholds(a),
        Command::Family { cmd: FamilyCmd::Info(h) } => cmd_family_info(h),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify { cmd: VerifyCmd::Lemma(a) } => cmd_verify_lemma(a, cli.seed),
        Command::Verify { cmd: VerifyCmd::Theorem(a) } => cmd_verify_theorem(a),
        Command::Hunt(a) => cmd_hunt(a, cli.seed),
        Command::Witness { cmd } => cmd_witness(cmd),
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<serde_json::Value> {
    Ok(serde_json::to_value(value)?)
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Sum => Mode::Sum,
        ModeArg::Product => Mode::Product,
    }
}

fn build_instance(a: &InstanceArgs) -> anyhow::Result<CrossInstance> {
    let host = read_host(&a.host)?;
    let selectors = parse_selectors(&a.levels, a.k)?;
    Ok(CrossInstance::new(host, a.t, selectors, mode(a.mode))?)
}

// ---- thresholds --------------------------------------------------------------

fn cmd_thresholds(a: &ThresholdsArgs) -> anyhow::Result<Outcome> {
    let rows: Vec<Thresholds> = match (a.r, a.t) {
        (Some(r), Some(t)) => vec![thresholds(r, t)?],
        (None, None) => (1..=a.max_r)
            .flat_map(|r| (1..=r).map(move |t| (r, t)))
            .map(|(r, t)| thresholds(r, t))
            .collect::<Result<_, _>>()?,
        _ => return bad("give both --r and --t, or neither for the full table"),
    };
    let mut text = format!(
        "{:>3} {:>3} {:>6} {:>12} {:>12} {:>6} {:>12} {:>12}\n",
        "r", "t", "m", "n_S", "n_P", "akr", "mu_levels", "mu_crude"
    );
    for th in &rows {
        let _ = writeln!(
            text,
            "{:>3} {:>3} {:>6} {:>12} {:>12} {:>6} {:>12} {:>12}",
            th.r, th.t, th.m, th.n_sum, th.n_prod, th.akr, th.frankl_mu, th.crude_mu
        );
    }
    Ok(Outcome {
        text,
        json: to_json(&rows)?,
        finding: false,
    })
}

// ---- family info -------------------------------------------------------------

#[derive(Serialize)]
struct FamilyInfo {
    ground: usize,
    members: usize,
    level_sizes: Vec<usize>,
    mu: usize,
    bases: SetFamily,
}

fn family_info(h: &HereditaryFamily) -> FamilyInfo {
    FamilyInfo {
        ground: h.ground().get(),
        members: h.members().len(),
        level_sizes: h.level_sizes(),
        mu: h.mu(),
        bases: h.bases().clone(),
    }
}

fn cmd_family_info(args: &HostArgs) -> anyhow::Result<Outcome> {
    let h = read_host(args)?;
    let info = family_info(&h);
    let mut text = String::new();
    let _ = writeln!(text, "ground: {}", info.ground);
    let _ = writeln!(text, "members: {}", info.members);
    let levels: Vec<String> = info
        .level_sizes
        .iter()
        .enumerate()
        .map(|(s, n)| format!("{s}:{n}"))
        .collect();
    let _ = writeln!(text, "levels: {}", levels.join(" "));
    let _ = writeln!(text, "mu: {}", info.mu);
    let _ = writeln!(text, "bases ({}): {}", info.bases.len(), info.bases);
    Ok(Outcome {
        text,
        json: to_json(&info)?,
        finding: false,
    })
}

// ---- solve -------------------------------------------------------------------

fn cmd_solve(a: &SolveArgs) -> anyhow::Result<Outcome> {
    let instance = build_instance(&a.instance)?;
    let strategy = match a.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::ClosedSets => Strategy::ClosedSets,
        StrategyArg::BranchAndBound => Strategy::BranchAndBound,
        StrategyArg::BruteForce => Strategy::BruteForce,
    };
    let report = max_cross_with(&instance, strategy, &Guardrails::from_env()?)?;
    Ok(Outcome {
        text: report.to_text(),
        json: to_json(&report)?,
        finding: false,
    })
}

// ---- verify lemma ------------------------------------------------------------

fn sweep_text(rep: &SweepReport, seed: Option<u64>) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "lemma: {}  n: {}", rep.lemma, rep.n);
    if let Some(seed) = seed {
        let _ = writeln!(text, "seed: {seed}");
    }
    let _ = writeln!(text, "families: {}", rep.families);
    let _ = writeln!(text, "checks: {}", rep.checks);
    let _ = writeln!(text, "hypothesis not met: {}", rep.hypothesis_not_met);
    let _ = writeln!(text, "violations: {}", rep.violations.len());
    for v in &rep.violations {
        let _ = writeln!(text, "  {} [{}]: {}", v.family, v.parameters, v.outcome);
    }
    text
}

fn cmd_verify_lemma(a: &LemmaArgs, seed: u64) -> anyhow::Result<Outcome> {
    let Some(lemma) = LemmaKind::parse(&a.name) else {
        let names: Vec<&str> = LemmaKind::ALL.iter().map(|k| k.name()).collect();
        return bad(format!("unknown lemma `{}`; expected one of {}", a.name, names.join(", ")));
    };
    let (report, seed) = match lemma {
        LemmaKind::Keyint => (sweep_keyint(a.n, a.t)?, None),
        LemmaKind::TransversalBound => (sweep_transversal_bound(a.n, a.samples, seed)?, Some(seed)),
        _ => (sweep_downsets(lemma, a.n)?, None),
    };
    Ok(Outcome {
        text: sweep_text(&report, seed),
        json: to_json(&report)?,
        finding: !report.is_clean(),
    })
}

// ---- verify theorem ----------------------------------------------------------

fn records_outcome(records: Vec<VerdictRecord>) -> anyhow::Result<Outcome> {
    let finding = records.iter().any(VerdictRecord::is_finding);
    let mut text: String = records.iter().map(VerdictRecord::to_text).collect();
    let findings = records.iter().filter(|r| r.is_finding()).count();
    let _ = writeln!(text, "records: {}  findings: {}", records.len(), findings);
    Ok(Outcome {
        text,
        json: to_json(&records)?,
        finding,
    })
}

fn cmd_verify_theorem(a: &TheoremArgs) -> anyhow::Result<Outcome> {
    let Some(kind) = TheoremKind::parse(&a.name) else {
        let names: Vec<&str> = TheoremKind::ALL.iter().map(|k| k.name()).collect();
        return bad(format!("unknown theorem `{}`; expected one of {}", a.name, names.join(", ")));
    };
    let instance = || -> anyhow::Result<CrossInstance> {
        let selectors = parse_selectors(&a.levels, a.k)?;
        Ok(CrossInstance::new(read_host(&a.host)?, a.t, selectors, mode(a.mode))?)
    };
    let records = match kind {
        TheoremKind::Sum => vec![verify_sum_theorem(&instance()?, &Guardrails::from_env()?)?],
        TheoremKind::Product => vec![verify_prod_theorem(&instance()?, &Guardrails::from_env()?)?],
        TheoremKind::LargeMuSum => vec![verify_sum_large_mu(&instance()?, &Guardrails::from_env()?)?],
        TheoremKind::LargeK => vec![verify_large_k_case(&instance()?)?],
        TheoremKind::Powerset => {
            let Some(n) = a.n else {
                return bad("powerset needs --n");
            };
            let selectors = parse_selectors(&a.levels, a.k)?;
            vec![verify_powerset_formulas(n, &selectors, a.t, mode(a.mode))?]
        }
        TheoremKind::EkrBoundary => match (a.grid, a.n, a.r) {
            (Some(g), None, None) => ekr_boundary_grid(g)?,
            (None, Some(n), Some(r)) => vec![ekr_boundary(n, r, a.t)?],
            _ => return bad("ekr-boundary needs either --grid N or --n N --r R [--t T]"),
        },
    };
    records_outcome(records)
}

// ---- hunt --------------------------------------------------------------------

fn cmd_hunt(a: &HuntArgs, seed: u64) -> anyhow::Result<Outcome> {
    let spec = match a.samples {
        Some(samples) => Some(SampleSpec {
            n: a.n,
            samples,
            seed,
            bases: parse_range(&a.bases)?,
            sizes: match &a.sizes {
                Some(s) => parse_range(s)?,
                None => (1, a.n),
            },
        }),
        None => None,
    };
    let selector = match &a.levels {
        Some(l) => parse_selector(l)?,
        None => LevelSelector::single(a.r),
    };
    eprintln!(
        "hunting {:?} on n={}{}",
        a.conjecture,
        a.n,
        spec.map_or_else(|| " (exhaustive)".to_string(), |s| format!(" ({} samples, seed {})", s.samples, s.seed))
    );
    let report: HuntReport = match (a.conjecture, &spec) {
        (Conjecture::Chvatal, None) => hunt_chvatal(a.n)?,
        (Conjecture::Chvatal, Some(s)) => hunt_chvatal_sampled(s)?,
        (Conjecture::Kamatgen, None) => hunt_kamatgen(a.n, a.r)?,
        (Conjecture::Kamatgen, Some(s)) => hunt_kamatgen_sampled(s, a.r)?,
        (Conjecture::KamatGraph, None) => hunt_kamat_graphs(a.n, a.r)?,
        (Conjecture::KamatGraph, Some(_)) => return bad("kamat-graph hunts are exhaustive only"),
        (Conjecture::Akgen, None) => hunt_akgen(a.n, a.r, a.t, &selector)?,
        (Conjecture::Akgen, Some(s)) => hunt_akgen_sampled(s, a.r, a.t, &selector)?,
    };
    if let Some(path) = &a.findings {
        std::fs::write(path, report.findings_jsonl())?;
    }
    eprintln!("done: {} instances, {} findings", report.instances, report.findings.len());
    Ok(Outcome {
        text: report.to_text(),
        json: to_json(&report)?,
        finding: !report.findings.is_empty(),
    })
}

// ---- witness -----------------------------------------------------------------

fn cmd_witness(cmd: &WitnessCmd) -> anyhow::Result<Outcome> {
    match cmd {
        WitnessCmd::Sharpness { r, t } => {
            let w = sharpness_witness(*r, *t)?;
            Ok(Outcome {
                text: w.family.to_text(),
                json: to_json(&w)?,
                finding: false,
            })
        }
        WitnessCmd::Keyint { input, t } => {
            let family = SetFamily::parse_text(&read_text(input)?)?;
            let w = keyint_witness(&family, *t)?;
            let mut text = String::new();
            let _ = writeln!(text, "p: {}", w.p);
            for s in &w.sets {
                let _ = writeln!(text, "set: {s}");
            }
            let _ = writeln!(text, "union ({}): {}", w.union.len(), w.union);
            let _ = writeln!(text, "intersection ({}): {}", w.intersection.len(), w.intersection);
            let _ = writeln!(text, "bound m: {}", w.bound_m);
            Ok(Outcome {
                text,
                json: json!({ "t": t, "witness": w }),
                finding: false,
            })
        }
    }
}
