//! Optimum reports: predicted values, equality-case classification, regime flags.

use serde::Serialize;

use super::cross::{solve_cross, CrossInstance, Guardrails, Mode, Strategy};
use super::stars::StarCatalog;
use crate::error::Result;
use crate::family::{ElementSet, SetFamily};
use crate::hereditary::LevelSelector;
use crate::lemma_lab::thresholds::{meets_large_mu_sum, thresholds};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Which extremal configuration a witness realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// `(F_1⟨T⟩, …, F_k⟨T⟩)` for a common largest-star center `T`.
    CommonStar,
    /// One family is a largest `F_j`, all others empty.
    SingleFull,
    /// The witness is one of the two configurations and both attain the optimum.
    Tie,
    OtherExtremal,
}

/// Objective values of the configurations the equality cases name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationValues {
    /// Every family replaced by a largest star of itself (`Σ` or `Π` of best star sizes).
    pub star_total: u128,
    /// The same stars around one common center; `None` when `⋂ 𝒯_i = ∅`.
    pub common_star: Option<u128>,
    /// A largest `F_j` with all other families empty.
    pub single_full: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    /// `max{Σ_i |F_i⟨T_i⟩|, |F_1|, …, |F_k|}` (sum) or `Π_i |F_i⟨T_i⟩|` (product).
    pub value: u128,
    pub configurations: ConfigurationValues,
}

/// Where `μ(H)` sits relative to the thresholds at `r = max S_i`; all false when `t > r`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegimeFlags {
    pub mu_meets_ns: bool,
    pub mu_meets_np: bool,
    /// `μ >= max{n_S, (k^{1/t}+1) r}`.
    pub mu_meets_large_mu_sum: bool,
    /// `μ >= (t+1)(r-t+1)`.
    pub akr_regime: bool,
}

impl RegimeFlags {
    pub fn of(mu: usize, r: usize, t: usize, k: usize) -> Self {
        match thresholds(r, t) {
            Ok(th) => RegimeFlags {
                mu_meets_ns: mu as u128 >= th.n_sum,
                mu_meets_np: mu as u128 >= th.n_prod,
                mu_meets_large_mu_sum: meets_large_mu_sum(mu, r, t, k).unwrap_or(false),
                akr_regime: mu as u128 >= th.akr,
            },
            Err(_) => RegimeFlags::default(),
        }
    }

    pub fn for_instance(instance: &CrossInstance) -> Self {
        Self::of(instance.host().mu(), instance.r(), instance.t(), instance.k())
    }
}

/// Star catalogs of every `F_i` over the centers `H^{(t)}`.
pub fn instance_catalogs(instance: &CrossInstance) -> Vec<StarCatalog> {
    let centers = instance.host().level(instance.t());
    instance
        .families()
        .iter()
        .map(|f| StarCatalog::for_family(f, centers, instance.t()))
        .collect()
}

/// `⋂_i 𝒯_i` in canonical order.
pub fn common_centers(catalogs: &[StarCatalog]) -> Vec<ElementSet> {
    let Some((first, rest)) = catalogs.split_first() else {
        return Vec::new();
    };
    first
        .best_centers
        .iter()
        .copied()
        .filter(|&c| rest.iter().all(|cat| cat.is_best(c)))
        .collect()
}

/// Value predicted for the optimum together with the configuration values.
pub fn predicted_optimum(instance: &CrossInstance, catalogs: &[StarCatalog]) -> Prediction {
    let mode = instance.mode();
    let star_total = mode.value(catalogs.iter().map(|c| c.best));
    let largest = instance.families().iter().map(|f| f.len()).max().unwrap_or(0) as u128;
    let single_full = match mode {
        Mode::Sum => largest,
        Mode::Product => 0,
    };
    let common_star = (!common_centers(catalogs).is_empty()).then_some(star_total);
    let value = match mode {
        Mode::Sum => star_total.max(single_full),
        Mode::Product => star_total,
    };
    Prediction {
        value,
        configurations: ConfigurationValues {
            star_total,
            common_star,
            single_full,
        },
    }
}

/// The common center `T` with `witness = (F_i⟨T⟩)_i`, if any.
pub fn common_star_center(instance: &CrossInstance, catalogs: &[StarCatalog], witness: &[SetFamily]) -> Option<ElementSet> {
    common_centers(catalogs).into_iter().find(|&c| {
        instance
            .families()
            .iter()
            .zip(witness)
            .all(|(f, a)| f.star(c) == *a)
    })
}

/// Whether the witness is a largest `F_j` with every other family empty.
pub fn is_single_full(instance: &CrossInstance, witness: &[SetFamily]) -> bool {
    let largest = instance.families().iter().map(|f| f.len()).max().unwrap_or(0);
    instance.families().iter().enumerate().any(|(j, f)| {
        f.len() == largest
            && witness[j] == *f
            && witness.iter().enumerate().all(|(i, a)| i == j || a.is_empty())
    })
}

/// Classifies an optimal witness against the equality configurations.
pub fn classify_optimum(
    instance: &CrossInstance,
    catalogs: &[StarCatalog],
    witness: &[SetFamily],
    optimum: u128,
) -> Classification {
    let prediction = predicted_optimum(instance, catalogs);
    let cs = common_star_center(instance, catalogs, witness).is_some();
    let sf = is_single_full(instance, witness);
    let both_attain = prediction.configurations.common_star == Some(optimum)
        && prediction.configurations.single_full == optimum;
    match (cs, sf) {
        _ if (cs || sf) && both_attain => Classification::Tie,
        (true, _) => Classification::CommonStar,
        (false, true) => Classification::SingleFull,
        (false, false) => Classification::OtherExtremal,
    }
}

/// Exact optimum of a cross instance with its analysis.
#[derive(Clone, Debug, Serialize)]
pub struct OptimumReport {
    pub schema_version: u32,
    pub mode: Mode,
    pub k: usize,
    pub t: usize,
    pub selectors: Vec<LevelSelector>,
    pub mu: usize,
    pub family_sizes: Vec<usize>,
    pub optimum: u128,
    pub prediction: u128,
    pub configuration_values: ConfigurationValues,
    pub classification: Classification,
    pub common_center_exists: bool,
    pub regime_flags: RegimeFlags,
    pub strategy: Strategy,
    /// One block per family in family text format.
    pub witness: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub witness_families: Vec<SetFamily>,
}

/// Solves with [`Strategy::Auto`] under the environment's guardrails.
pub fn max_cross(instance: &CrossInstance) -> Result<OptimumReport> {
    max_cross_with(instance, Strategy::Auto, &Guardrails::from_env()?)
}

pub fn max_cross_with(instance: &CrossInstance, strategy: Strategy, guardrails: &Guardrails) -> Result<OptimumReport> {
    let solution = solve_cross(instance, strategy, guardrails)?;
    let catalogs = instance_catalogs(instance);
    let prediction = predicted_optimum(instance, &catalogs);
    let classification = classify_optimum(instance, &catalogs, &solution.witness, solution.value);
    let regime_flags = RegimeFlags::for_instance(instance);
    let common = common_centers(&catalogs);

    let mut notes = Vec::new();
    if instance.selectors().iter().any(|s| s.min_level() < instance.t()) {
        notes.push(format!(
            "some selector has a level below t = {}; such members only fit alongside empty families",
            instance.t()
        ));
    }
    if classification == Classification::OtherExtremal {
        let c = prediction.configurations;
        if c.common_star == Some(solution.value) {
            notes.push("a common-star configuration also attains the optimum".into());
        }
        if instance.mode() == Mode::Sum && c.single_full == solution.value {
            notes.push("a single full family also attains the optimum".into());
        }
    }
    let below = match instance.mode() {
        Mode::Sum => !regime_flags.mu_meets_ns,
        Mode::Product => !regime_flags.mu_meets_np,
    };
    if below {
        notes.push(format!(
            "below the {} regime: mu = {} is under the threshold at r = {}, t = {}",
            match instance.mode() {
                Mode::Sum => "n_S",
                Mode::Product => "n_P",
            },
            instance.host().mu(),
            instance.r(),
            instance.t()
        ));
    }
    if solution.value > prediction.value {
        notes.push(format!(
            "optimum {} exceeds the predicted value {}",
            solution.value, prediction.value
        ));
    }
    if let Some(first) = common.first() {
        notes.push(format!("common largest-star centers: {} (first {first})", common.len()));
    }

    Ok(OptimumReport {
        schema_version: REPORT_SCHEMA_VERSION,
        mode: instance.mode(),
        k: instance.k(),
        t: instance.t(),
        selectors: instance.selectors().to_vec(),
        mu: instance.host().mu(),
        family_sizes: instance.families().iter().map(|f| f.len()).collect(),
        optimum: solution.value,
        prediction: prediction.value,
        configuration_values: prediction.configurations,
        classification,
        common_center_exists: !common.is_empty(),
        regime_flags,
        strategy: solution.strategy,
        witness: solution.witness.iter().map(|w| w.to_text()).collect(),
        notes,
        witness_families: solution.witness,
    })
}

impl OptimumReport {
    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let sel: Vec<String> = self.selectors.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "mode: {}  k: {}  t: {}  mu: {}", self.mode, self.k, self.t, self.mu);
        let _ = writeln!(out, "selectors: {}", sel.join(" "));
        let _ = writeln!(out, "family sizes: {:?}", self.family_sizes);
        let _ = writeln!(out, "optimum: {}", self.optimum);
        let _ = writeln!(out, "prediction: {}", self.prediction);
        let c = &self.configuration_values;
        let _ = writeln!(
            out,
            "configurations: star_total={} common_star={} single_full={}",
            c.star_total,
            c.common_star.map_or_else(|| "none".to_string(), |v| v.to_string()),
            c.single_full
        );
        let _ = writeln!(out, "classification: {:?}", self.classification);
        let _ = writeln!(out, "common center exists: {}", self.common_center_exists);
        let f = &self.regime_flags;
        let _ = writeln!(
            out,
            "regime: mu>=n_S {}  mu>=n_P {}  large-mu sum {}  akr {}",
            f.mu_meets_ns, f.mu_meets_np, f.mu_meets_large_mu_sum, f.akr_regime
        );
        let _ = writeln!(out, "strategy: {}", self.strategy);
        for (i, w) in self.witness_families.iter().enumerate() {
            let _ = writeln!(out, "A_{} ({} sets): {}", i + 1, w.len(), w);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{are_cross_t_intersecting, test_util::*};
    use crate::hereditary::HereditaryFamily;

    fn pow(n: usize) -> HereditaryFamily {
        HereditaryFamily::power_set(ground(n))
    }

    fn report(n: usize, k: usize, mode: Mode) -> OptimumReport {
        let inst = CrossInstance::uniform(pow(n), 1, LevelSelector::single(2), k, mode).unwrap();
        max_cross_with(&inst, Strategy::Auto, &Guardrails::default()).unwrap()
    }

    #[test]
    fn named_reports() {
        let r = report(4, 3, Mode::Sum);
        assert_eq!((r.optimum, r.prediction), (9, 9));
        assert_eq!(r.configuration_values.single_full, 6);
        // The lexicographically least optimum is three copies of the triangle.
        assert_eq!(r.classification, Classification::OtherExtremal);
        assert!(r.notes.iter().any(|n| n.contains("common-star")));
        assert!(!r.regime_flags.mu_meets_ns);
        assert!(r.regime_flags.akr_regime);
        assert!(are_cross_t_intersecting(&r.witness_families, 1).unwrap());

        let r = report(5, 2, Mode::Sum);
        assert_eq!((r.optimum, r.prediction), (10, 10));
        assert_eq!(r.configuration_values.star_total, 8);
        assert_eq!(r.classification, Classification::SingleFull);

        let r = report(4, 2, Mode::Product);
        assert_eq!((r.optimum, r.prediction), (9, 9));
        assert_eq!(r.classification, Classification::OtherExtremal);
        assert!(r.notes.iter().any(|n| n.contains("below the n_P regime")));
    }

    #[test]
    fn predictions_in_regime() {
        let inst = CrossInstance::uniform(pow(14), 1, LevelSelector::single(2), 2, Mode::Sum).unwrap();
        let cats = instance_catalogs(&inst);
        assert_eq!(predicted_optimum(&inst, &cats).value, 91);
        let flags = RegimeFlags::for_instance(&inst);
        assert!(flags.mu_meets_ns && flags.mu_meets_np && flags.mu_meets_large_mu_sum);
        let inst = CrossInstance::uniform(pow(14), 1, LevelSelector::single(2), 8, Mode::Sum).unwrap();
        let cats = instance_catalogs(&inst);
        assert_eq!(predicted_optimum(&inst, &cats).value, 104);
        // (8 + 1)·2 = 18 > 14.
        assert!(!RegimeFlags::for_instance(&inst).mu_meets_large_mu_sum);
        let inst = inst.with_mode(Mode::Product);
        assert_eq!(predicted_optimum(&inst, &instance_catalogs(&inst)).value, 13u128.pow(8));
    }

    #[test]
    fn classification_cases() {
        let inst = CrossInstance::uniform(pow(4), 1, LevelSelector::single(2), 3, Mode::Sum).unwrap();
        let cats = instance_catalogs(&inst);
        let f = &inst.families()[0];
        let star = f.star(set(&[1]));
        let three = vec![star.clone(), star.clone(), star];
        assert_eq!(classify_optimum(&inst, &cats, &three, 9), Classification::CommonStar);
        let empty = SetFamily::empty(ground(4));
        let full = vec![f.clone(), empty.clone(), empty];
        assert_eq!(classify_optimum(&inst, &cats, &full, 6), Classification::SingleFull);

        // k = 2 on 2^[4]: stars give 3 + 3 = 6 = |F|.
        let inst = CrossInstance::uniform(pow(4), 1, LevelSelector::single(2), 2, Mode::Sum).unwrap();
        let cats = instance_catalogs(&inst);
        let star = inst.families()[0].star(set(&[2]));
        assert_eq!(classify_optimum(&inst, &cats, &[star.clone(), star], 6), Classification::Tie);
    }

    #[test]
    fn flags_undefined_when_t_exceeds_r() {
        assert_eq!(RegimeFlags::of(10, 1, 2, 2), RegimeFlags::default());
    }

    #[test]
    fn report_serializes_in_field_order() {
        let r = report(4, 2, Mode::Product);
        let json = serde_json::to_string(&r).unwrap();
        let keys = ["schema_version", "mode", "k", "t", "selectors", "optimum", "prediction", "configuration_values", "classification", "regime_flags", "witness"];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(!json.contains("witness_families"));
    }
}
