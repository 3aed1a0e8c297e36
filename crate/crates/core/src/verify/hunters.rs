//! Conjecture hunters: exhaustive over downsets (or graphs) on small ground
//! sets, sampled beyond. Checks run in parallel; results are merged in
//! enumeration order, so reports do not depend on the worker count.

use std::fmt::Write as _;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::recheck;
use super::{Statement, VerdictRecord};
use crate::error::{Error, Result};
use crate::family::{GroundSize, SetFamily};
use crate::hereditary::{all_downsets, independence_family, random_hereditary, Graph, HereditaryFamily, LevelSelector};
use crate::solvers::{
    enumerate_optima, largest_non_star, max_t_intersecting, solve_cross, CrossInstance, Guardrails, Mode,
    StarCatalog, Strategy,
};

/// Counts for one statement over a hunt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub statement: Statement,
    /// Instances satisfying the statement's hypotheses.
    pub hypothesis_met: u64,
    /// ... whose conclusion was confirmed.
    pub held: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntReport {
    pub hunt: String,
    pub parameters: String,
    /// Seed of a sampled hunt.
    pub seed: Option<u64>,
    /// Instances visited.
    pub instances: u64,
    /// Sampled instances beyond the solver guardrails or the member cap.
    pub skipped: u64,
    pub tallies: Vec<Tally>,
    /// Re-verified counterexamples, in enumeration order.
    pub findings: Vec<VerdictRecord>,
}

impl HuntReport {
    /// Findings as JSON lines.
    pub fn findings_jsonl(&self) -> String {
        self.findings.iter().map(|r| r.to_json_line() + "\n").collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hunt: {}  {}", self.hunt, self.parameters);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "instances: {}  skipped: {}", self.instances, self.skipped);
        for t in &self.tallies {
            let _ = writeln!(
                out,
                "{}: hypothesis met {}, held {}, failed {}",
                t.statement,
                t.hypothesis_met,
                t.held,
                t.hypothesis_met - t.held
            );
        }
        let _ = writeln!(out, "findings: {}", self.findings.len());
        for f in &self.findings {
            out.push_str(&f.to_text());
        }
        out
    }
}

/// Parameters of a sampled hunt: sample `i` draws from stream `i` of `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    /// Inclusive range for the number of bases.
    pub bases: (usize, usize),
    /// Inclusive range for base sizes.
    pub sizes: (usize, usize),
}

impl SampleSpec {
    fn describe(&self) -> String {
        format!(
            "n={} samples={} bases={}..{} sizes={}..{}",
            self.n, self.samples, self.bases.0, self.bases.1, self.sizes.0, self.sizes.1
        )
    }

    fn validate(&self) -> Result<()> {
        GroundSize::new(self.n)?;
        if self.bases.0 == 0 || self.bases.0 > self.bases.1 {
            return Err(Error::malformed(format!("base count range {}..{}", self.bases.0, self.bases.1)));
        }
        if self.sizes.0 > self.sizes.1 || self.sizes.1 > self.n {
            return Err(Error::malformed(format!(
                "base size range {}..{} not within 0..{}",
                self.sizes.0, self.sizes.1, self.n
            )));
        }
        Ok(())
    }

    fn sample(&self, i: u64) -> Result<HereditaryFamily> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(i);
        let count = rng.gen_range(self.bases.0..=self.bases.1);
        random_hereditary(self.n, count, self.sizes, rng.gen())
    }
}

/// Sampled families with more members than this are skipped by the clique-based hunters.
pub const SAMPLE_MEMBER_CAP: usize = 96;

/// Largest vertex count for the exhaustive graph hunt (`2^15` labelled graphs at 6).
pub const MAX_GRAPH_VERTICES: usize = 6;

/// Per-instance result: `None` when skipped.
type Checked = Option<Vec<VerdictRecord>>;

fn merge(hunt: &str, parameters: String, seed: Option<u64>, statements: &[Statement], results: Vec<Checked>) -> HuntReport {
    let mut tallies: Vec<Tally> = statements
        .iter()
        .map(|&statement| Tally {
            statement,
            hypothesis_met: 0,
            held: 0,
        })
        .collect();
    let mut findings = Vec::new();
    let mut skipped = 0;
    for records in &results {
        let Some(records) = records else {
            skipped += 1;
            continue;
        };
        for rec in records {
            let tally = tallies
                .iter_mut()
                .find(|t| t.statement == rec.statement)
                .expect("statement is tallied");
            if rec.hypothesis_met {
                tally.hypothesis_met += 1;
                if rec.conclusion_holds == Some(true) {
                    tally.held += 1;
                }
            }
            if rec.is_finding() {
                findings.push(rec.clone());
            }
        }
    }
    HuntReport {
        hunt: hunt.to_string(),
        parameters,
        seed,
        instances: results.len() as u64,
        skipped,
        tallies,
        findings,
    }
}

/// Treats a solver size limit as a skipped sample.
fn skip_oversized(r: Result<Vec<VerdictRecord>>) -> Result<Checked> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeLimit { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_exhaustive<F>(n: usize, check: F) -> Result<Vec<Checked>>
where
    F: Fn(&HereditaryFamily) -> Result<Vec<VerdictRecord>> + Sync,
{
    let downsets = all_downsets(n)?;
    downsets.par_iter().map(|h| check(h).map(Some)).collect()
}

fn run_sampled<F>(spec: &SampleSpec, member_cap: Option<usize>, check: F) -> Result<Vec<Checked>>
where
    F: Fn(&HereditaryFamily) -> Result<Vec<VerdictRecord>> + Sync,
{
    spec.validate()?;
    (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let h = spec.sample(i)?;
            if member_cap.is_some_and(|cap| h.members().len() > cap) {
                return Ok(None);
            }
            skip_oversized(check(&h))
        })
        .collect()
}

// ---- Chvátal: every downset has the 1-star property -------------------------

/// Whether a largest intersecting subfamily of `h` is as small as its largest star.
pub fn check_chvatal(h: &HereditaryFamily) -> Result<VerdictRecord> {
    let f = h.members();
    let catalog = StarCatalog::for_family(&f, h.level(1), 1);
    let (size, best) = max_t_intersecting(&f, 1);
    let holds = size == catalog.best;
    if !holds {
        recheck::intersecting_beats_stars(&f, &best, 1)?;
    }
    Ok(VerdictRecord {
        statement: Statement::Chvatal,
        instance: h.describe(),
        hypothesis_met: true,
        conclusion_holds: Some(holds),
        details: json!({
            "largest_intersecting": size,
            "largest_star": catalog.best,
            "witness": (!holds).then(|| best.to_string()),
        }),
    })
}

pub fn hunt_chvatal(n: usize) -> Result<HuntReport> {
    let results = run_exhaustive(n, |h| Ok(vec![check_chvatal(h)?]))?;
    Ok(merge("chvatal", format!("n={n} exhaustive"), None, &[Statement::Chvatal], results))
}

pub fn hunt_chvatal_sampled(spec: &SampleSpec) -> Result<HuntReport> {
    let results = run_sampled(spec, Some(SAMPLE_MEMBER_CAP), |h| Ok(vec![check_chvatal(h)?]))?;
    Ok(merge("chvatal", spec.describe(), Some(spec.seed), &[Statement::Chvatal], results))
}

// ---- Cross-intersecting sums on H^(r) ---------------------------------------

/// For `μ(H) >= 2r`: the largest cross-intersecting sum over `H^{(r)}` is at
/// most `|H^{(r)}|` (`bound` names the statement); for `μ(H) > 2r` the bound is
/// attained only by `(H^{(r)}, ∅)` and `(∅, H^{(r)})`.
pub fn check_kamatgen(
    h: &HereditaryFamily,
    r: usize,
    bound: Statement,
    guardrails: &Guardrails,
) -> Result<Vec<VerdictRecord>> {
    let mu = h.mu();
    let level = h.level(r).clone();
    let instance = h.describe();
    if r == 0 || mu < 2 * r {
        let skip = |statement| VerdictRecord {
            statement,
            instance: instance.clone(),
            hypothesis_met: false,
            conclusion_holds: None,
            details: json!({ "mu": mu, "r": r }),
        };
        return Ok(vec![skip(bound), skip(Statement::KamatgenUnique)]);
    }
    let inst = CrossInstance::uniform(h.clone(), 1, LevelSelector::single(r), 2, Mode::Sum)?;
    let solution = solve_cross(&inst, Strategy::Auto, guardrails)?;
    let full = level.len() as u128;
    let bound_holds = solution.value <= full;
    if !bound_holds {
        recheck::cross_feasible(inst.families(), &solution.witness, 1)?;
        recheck::ensure(
            solution.witness.iter().map(SetFamily::len).sum::<usize>() as u128 > full,
            "witness does not exceed |H^(r)|",
        )?;
    }

    let mut optima = 0u64;
    let mut stray: Option<Vec<SetFamily>> = None;
    if solution.value == full && full > 0 {
        let _ = enumerate_optima(&inst, full, guardrails, |w| {
            optima += 1;
            if recheck::realizes_single_full(inst.families(), w) {
                ControlFlow::Continue(())
            } else {
                stray = Some(w.to_vec());
                ControlFlow::Break(())
            }
        })?;
    }
    let unique_met = mu > 2 * r;
    let unique_holds = bound_holds && stray.is_none();
    if unique_met && bound_holds {
        if let Some(w) = &stray {
            recheck::cross_feasible(inst.families(), w, 1)?;
            recheck::ensure(
                w.iter().map(SetFamily::len).sum::<usize>() as u128 == full,
                "stray witness does not attain |H^(r)|",
            )?;
        }
    }

    let witness_text = |w: &[SetFamily]| recheck::witness_text(w);
    Ok(vec![
        VerdictRecord {
            statement: bound,
            instance: instance.clone(),
            hypothesis_met: true,
            conclusion_holds: Some(bound_holds),
            details: json!({
                "mu": mu,
                "r": r,
                "level_size": full,
                "optimum": solution.value,
                "witness": (!bound_holds).then(|| witness_text(&solution.witness)),
            }),
        },
        VerdictRecord {
            statement: Statement::KamatgenUnique,
            instance,
            hypothesis_met: unique_met,
            conclusion_holds: Some(unique_holds),
            details: json!({
                "mu": mu,
                "r": r,
                "level_size": full,
                "optima_checked": optima,
                "other_optimum": stray.as_deref().map(witness_text),
            }),
        },
    ])
}

fn kamatgen_statements(bound: Statement) -> [Statement; 2] {
    [bound, Statement::KamatgenUnique]
}

pub fn hunt_kamatgen(n: usize, r: usize) -> Result<HuntReport> {
    let g = Guardrails::from_env()?;
    let results = run_exhaustive(n, |h| check_kamatgen(h, r, Statement::Kamatgen, &g))?;
    Ok(merge(
        "kamatgen",
        format!("n={n} r={r} exhaustive"),
        None,
        &kamatgen_statements(Statement::Kamatgen),
        results,
    ))
}

pub fn hunt_kamatgen_sampled(spec: &SampleSpec, r: usize) -> Result<HuntReport> {
    let g = Guardrails::from_env()?;
    let results = run_sampled(spec, None, |h| check_kamatgen(h, r, Statement::Kamatgen, &g))?;
    Ok(merge(
        "kamatgen",
        format!("{} r={r}", spec.describe()),
        Some(spec.seed),
        &kamatgen_statements(Statement::Kamatgen),
        results,
    ))
}

/// Every labelled graph on `[n]` (`n <= 6`), through its independence family.
pub fn hunt_kamat_graphs(n: usize, r: usize) -> Result<HuntReport> {
    GroundSize::new(n)?;
    if n > MAX_GRAPH_VERTICES {
        return Err(Error::SizeLimit {
            limit: "vertex count for the exhaustive graph hunt",
            value: n,
            cap: MAX_GRAPH_VERTICES,
        });
    }
    let g = Guardrails::from_env()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let results: Vec<Checked> = (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            let graph = Graph::new(n, edges)?;
            let h = independence_family(&graph);
            let mut records = check_kamatgen(&h, r, Statement::KamatGraph, &g)?;
            for rec in &mut records {
                rec.instance = format!("graph {} edges [{}]", n, edge_list(&graph));
            }
            Ok(Some(records))
        })
        .collect::<Result<_>>()?;
    Ok(merge(
        "kamat-graph",
        format!("n={n} r={r} exhaustive over labelled graphs"),
        None,
        &kamatgen_statements(Statement::KamatGraph),
        results,
    ))
}

fn edge_list(g: &Graph) -> String {
    g.edges()
        .iter()
        .map(|&(u, v)| format!("{}-{}", u + 1, v + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---- t-star property of level unions -----------------------------------------

/// For `μ(H) >= (t+1)(r-t+1)` and `S ⊆ [t, r]`: `⋃_{s∈S} H^{(s)}` has the
/// `t`-star property, strictly when `μ(H) > (t+1)(r-t+1)` or `S ≠ {r}`.
pub fn check_akgen(h: &HereditaryFamily, r: usize, t: usize, selector: &LevelSelector) -> Result<Vec<VerdictRecord>> {
    if t == 0 || t > r {
        return Err(Error::precondition(format!("need 1 <= t <= r, got t={t} r={r}")));
    }
    let mu = h.mu();
    let threshold = (t + 1) * (r - t + 1);
    let in_range = selector.is_within(t, r);
    let met = in_range && mu >= threshold;
    let strict_met = met && (mu > threshold || selector.levels() != [r]);
    let instance = format!("{} S={selector} r={r} t={t}", h.describe());
    if !met {
        let skip = |statement| VerdictRecord {
            statement,
            instance: instance.clone(),
            hypothesis_met: false,
            conclusion_holds: None,
            details: json!({ "mu": mu, "threshold": threshold }),
        };
        return Ok(vec![skip(Statement::Akgen), skip(Statement::AkgenStrict)]);
    }
    let f = h.expand_levels(selector);
    let catalog = StarCatalog::for_family(&f, h.level(t), t);
    let (size, best) = max_t_intersecting(&f, t);
    let property = size == catalog.best;
    let non_star = largest_non_star(&f, t);
    let strict = size == 0 || (property && non_star.is_none());
    if !property {
        recheck::intersecting_beats_stars(&f, &best, t)?;
    }
    if strict_met && !strict {
        recheck::non_star_as_large_as_stars(&f, non_star.as_ref().unwrap_or(&best), t)?;
    }
    Ok(vec![
        VerdictRecord {
            statement: Statement::Akgen,
            instance: instance.clone(),
            hypothesis_met: true,
            conclusion_holds: Some(property),
            details: json!({
                "mu": mu,
                "threshold": threshold,
                "largest_intersecting": size,
                "largest_star": catalog.best,
                "witness": (!property).then(|| best.to_string()),
            }),
        },
        VerdictRecord {
            statement: Statement::AkgenStrict,
            instance,
            hypothesis_met: strict_met,
            conclusion_holds: Some(strict),
            details: json!({
                "mu": mu,
                "threshold": threshold,
                "non_star_optimum": non_star.map(|w| w.to_string()),
            }),
        },
    ])
}

const AKGEN: [Statement; 2] = [Statement::Akgen, Statement::AkgenStrict];

pub fn hunt_akgen(n: usize, r: usize, t: usize, selector: &LevelSelector) -> Result<HuntReport> {
    let results = run_exhaustive(n, |h| check_akgen(h, r, t, selector))?;
    Ok(merge(
        "akgen",
        format!("n={n} r={r} t={t} S={selector} exhaustive"),
        None,
        &AKGEN,
        results,
    ))
}

pub fn hunt_akgen_sampled(spec: &SampleSpec, r: usize, t: usize, selector: &LevelSelector) -> Result<HuntReport> {
    let results = run_sampled(spec, Some(SAMPLE_MEMBER_CAP), |h| check_akgen(h, r, t, selector))?;
    Ok(merge(
        "akgen",
        format!("{} r={r} t={t} S={selector}", spec.describe()),
        Some(spec.seed),
        &AKGEN,
        results,
    ))
}
