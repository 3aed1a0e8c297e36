//! Exact checks of the counting inequalities for hereditary families.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, SubsetsOfSize};
use crate::error::{Error, Result};
use crate::family::{ElementSet, SetFamily};
use crate::hereditary::{quotient, HereditaryFamily, LevelSelector};
use crate::solvers::StarCatalog;

/// Result of checking one inequality instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LemmaOutcome {
    /// The instance lies outside the hypotheses; nothing is claimed.
    HypothesisNotMet { reason: String },
    Checked(Check),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(serialize_with = "as_string")]
    pub lhs: BigRational,
    #[serde(serialize_with = "as_string")]
    pub rhs: BigRational,
    /// The set the check was made at, when the statement is existential.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<ElementSet>,
}

fn as_string<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl LemmaOutcome {
    fn not_met(reason: impl Into<String>) -> Self {
        LemmaOutcome::HypothesisNotMet { reason: reason.into() }
    }

    fn compare(lhs: BigRational, rhs: BigRational, strict: bool, center: Option<ElementSet>) -> Self {
        let holds = if strict { lhs > rhs } else { lhs >= rhs };
        LemmaOutcome::Checked(Check {
            holds,
            lhs,
            rhs,
            center,
        })
    }

    pub fn hypothesis_met(&self) -> bool {
        matches!(self, LemmaOutcome::Checked(_))
    }

    /// `Some(holds)` when the hypotheses are met.
    pub fn holds(&self) -> Option<bool> {
        match self {
            LemmaOutcome::Checked(c) => Some(c.holds),
            LemmaOutcome::HypothesisNotMet { .. } => None,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.holds() == Some(false)
    }
}

impl fmt::Display for LemmaOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaOutcome::HypothesisNotMet { reason } => write!(f, "hypothesis not met: {reason}"),
            LemmaOutcome::Checked(c) => write!(
                f,
                "{} (lhs {}, rhs {})",
                if c.holds { "holds" } else { "VIOLATED" },
                c.lhs,
                c.rhs
            ),
        }
    }
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn binom(n: usize, k: usize) -> BigRational {
    int(binomial(n as u64, k as u64))
}

/// `|H^{(q)}| >= C(μ-p, q-p) / C(q, q-p) · |H^{(p)}|` for `0 <= p < q <= μ - p`.
pub fn verify_sperner_ratio(h: &HereditaryFamily, p: usize, q: usize) -> LemmaOutcome {
    let mu = h.mu();
    if p >= q || q + p > mu {
        return LemmaOutcome::not_met(format!("need 0 <= p < q <= mu - p, got p = {p}, q = {q}, mu = {mu}"));
    }
    let lhs = int(h.level(q).len());
    let rhs = binom(mu - p, q - p) / binom(q, q - p) * int(h.level(p).len());
    LemmaOutcome::compare(lhs, rhs, false, None)
}

/// `|F⟨T1⟩| > C(μ-r, t2-t1) / C(r-t1, t2-t1) · |F⟨T2⟩|` with `F = ⋃_{s ∈ S} H^{(s)}`,
/// `r = max S`, `0 <= t1 < t2 <= min S`, `μ >= 2r - t1`, `T1 ⊂ T2` and `F⟨T2⟩ ≠ ∅`.
pub fn verify_star_ratio(
    h: &HereditaryFamily,
    selector: &LevelSelector,
    t1: usize,
    t2: usize,
    set1: ElementSet,
    set2: ElementSet,
) -> LemmaOutcome {
    let f = h.expand_levels(selector);
    star_ratio_on(h.mu(), &f, selector, t1, t2, set1, set2)
}

pub(crate) fn star_ratio_on(
    mu: usize,
    f: &SetFamily,
    selector: &LevelSelector,
    t1: usize,
    t2: usize,
    set1: ElementSet,
    set2: ElementSet,
) -> LemmaOutcome {
    let r = selector.max_level();
    if t1 >= t2 || t2 > selector.min_level() {
        return LemmaOutcome::not_met(format!("need 0 <= t1 < t2 <= min S, got t1 = {t1}, t2 = {t2}, S = {selector}"));
    }
    if mu + t1 < 2 * r {
        return LemmaOutcome::not_met(format!("need mu >= 2r - t1, got mu = {mu}, r = {r}, t1 = {t1}"));
    }
    if set1.len() != t1 || set2.len() != t2 || !set1.is_subset_of(set2) {
        return LemmaOutcome::not_met(format!("need a {t1}-set inside a {t2}-set, got {set1} and {set2}"));
    }
    let star2 = f.star(set2).len();
    if star2 == 0 {
        return LemmaOutcome::not_met(format!("the star of {set2} is empty"));
    }
    let lhs = int(f.star(set1).len());
    let rhs = binom(mu - r, t2 - t1) / binom(r - t1, t2 - t1) * int(star2);
    LemmaOutcome::compare(lhs, rhs, true, None)
}

/// `|F| > C(μ-r, t) / C(r, t) · |L|` for a largest `t`-star `L`, when `1 <= t <= min S`
/// and `μ >= 2r`.
pub fn verify_family_vs_star(h: &HereditaryFamily, selector: &LevelSelector, t: usize) -> LemmaOutcome {
    let r = selector.max_level();
    let mu = h.mu();
    if t == 0 || t > selector.min_level() {
        return LemmaOutcome::not_met(format!("need 1 <= t <= min S, got t = {t}, S = {selector}"));
    }
    if mu < 2 * r {
        return LemmaOutcome::not_met(format!("need mu >= 2r, got mu = {mu}, r = {r}"));
    }
    let f = h.expand_levels(selector);
    let best = StarCatalog::for_family(&f, h.level(t), t).best;
    let rhs = binom(mu - r, t) / binom(r, t) * int(best);
    LemmaOutcome::compare(int(f.len()), rhs, true, None)
}

/// Some `T ∈ C(X, t)` has `|A| < (r-t)/(μ-r) · C(|X|, t+1) · |F⟨T⟩|`, when
/// `S ⊆ [t+1, r]`, `μ >= 2r - t`, `∅ ≠ A ⊆ F` and `X` is a `(t+1)`-transversal of `A`.
///
/// The check is made at a `T` with the largest star (earliest canonically on ties).
pub fn verify_transversal_bound(
    h: &HereditaryFamily,
    selector: &LevelSelector,
    t: usize,
    a: &SetFamily,
    x: ElementSet,
) -> LemmaOutcome {
    let f = h.expand_levels(selector);
    transversal_bound_on(h.mu(), &f, selector, t, a, x)
}

pub(crate) fn transversal_bound_on(
    mu: usize,
    f: &SetFamily,
    selector: &LevelSelector,
    t: usize,
    a: &SetFamily,
    x: ElementSet,
) -> LemmaOutcome {
    let r = selector.max_level();
    if selector.min_level() < t + 1 {
        return LemmaOutcome::not_met(format!("need S within [t+1, r], got S = {selector}, t = {t}"));
    }
    if mu + t < 2 * r {
        return LemmaOutcome::not_met(format!("need mu >= 2r - t, got mu = {mu}, r = {r}, t = {t}"));
    }
    if a.is_empty() {
        return LemmaOutcome::not_met("A is empty");
    }
    if !a.is_subfamily_of(f) {
        return LemmaOutcome::not_met("A is not contained in F");
    }
    if let Some(bad) = a.iter().find(|s| s.intersection(x).len() < t + 1) {
        return LemmaOutcome::not_met(format!("{x} is not a (t+1)-transversal: it misses {bad}"));
    }
    let center = SubsetsOfSize::new(x.bits(), t)
        .map(ElementSet::from_bits)
        .map(|c| (f.star(c).len(), c))
        .max_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)))
        .expect("x has at least t + 1 elements");
    let rhs = int(r - t) / int(mu - r) * binom(x.len(), t + 1) * int(center.0);
    let lhs = int(a.len());
    LemmaOutcome::Checked(Check {
        holds: lhs < rhs,
        lhs,
        rhs,
        center: Some(center.1),
    })
}

/// `μ({F \ X : F ∈ f⟨X⟩}) >= μ(f) - |X|` for a non-empty star.
pub fn verify_mu_quotient(f: &SetFamily, x: ElementSet) -> LemmaOutcome {
    let Ok(q) = quotient(f, x) else {
        return LemmaOutcome::not_met(format!("the star of {x} is empty"));
    };
    let mu_f = f.mu().expect("a non-empty star makes f non-empty");
    let mu_q = q.mu().expect("quotient of a non-empty star is non-empty");
    LemmaOutcome::compare(int(mu_q), int(mu_f as i64 - x.len() as i64), false, None)
}

/// Counts of `r`-subsets of `[n]` meeting `[t+2]` in at least `t+1` elements versus `C(n-t, r-t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdCount {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub lhs: u128,
    pub rhs: u128,
    pub strict: bool,
    /// `n < (t+1)(r-t+1)`, where `lhs > rhs` is expected.
    pub in_range: bool,
}

/// Largest `C(n, r)` enumerated by [`below_threshold_count`].
pub const MAX_COUNT_ENUMERATION: u128 = 50_000_000;

/// Enumerates `C([n], r)` directly, for `t < r < n`.
pub fn below_threshold_count(n: usize, r: usize, t: usize) -> Result<ThresholdCount> {
    if !(t < r && r < n) || n > 64 {
        return Err(Error::malformed(format!("need t < r < n <= 64, got n = {n}, r = {r}, t = {t}")));
    }
    let total = binomial(n as u64, r as u64);
    if total > MAX_COUNT_ENUMERATION {
        return Err(Error::SizeLimit {
            limit: "r-subsets enumerated for the threshold count",
            value: usize::try_from(total).unwrap_or(usize::MAX),
            cap: MAX_COUNT_ENUMERATION as usize,
        });
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let head = (1u64 << (t + 2)) - 1;
    let lhs = SubsetsOfSize::new(full, r)
        .filter(|s| (s & head).count_ones() as usize > t)
        .count() as u128;
    let rhs = binomial((n - t) as u64, (r - t) as u64);
    Ok(ThresholdCount {
        n,
        r,
        t,
        lhs,
        rhs,
        strict: lhs > rhs,
        in_range: n < (t + 1) * (r - t + 1),
    })
}
