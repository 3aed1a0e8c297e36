//! Exhaustive and sampled sweeps of the lemma checks, parallel and deterministic.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::inequalities::{
    star_ratio_on, transversal_bound_on, verify_family_vs_star, verify_mu_quotient, verify_sperner_ratio,
    LemmaOutcome,
};
use super::keyint::{check_keyint_hypotheses, keyint_check_exhaustive, keyint_witness, transversal_core};
use crate::combinatorics::SubsetsOfSize;
use crate::error::{Error, Result};
use crate::family::{ElementSet, GroundSize, SetFamily};
use crate::hereditary::{all_downsets, random_hereditary, HereditaryFamily, LevelSelector};

/// Lemmas with a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKind {
    Sperner,
    StarRatio,
    FamilyVsStar,
    MuQuotient,
    TransversalBound,
    Keyint,
}

impl LemmaKind {
    pub const ALL: [LemmaKind; 6] = [
        LemmaKind::Sperner,
        LemmaKind::StarRatio,
        LemmaKind::FamilyVsStar,
        LemmaKind::MuQuotient,
        LemmaKind::TransversalBound,
        LemmaKind::Keyint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::Sperner => "sperner",
            LemmaKind::StarRatio => "star-ratio",
            LemmaKind::FamilyVsStar => "family-vs-star",
            LemmaKind::MuQuotient => "mu-quotient",
            LemmaKind::TransversalBound => "transversal-bound",
            LemmaKind::Keyint => "keyint",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One instance where a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub family: String,
    pub parameters: String,
    pub outcome: LemmaOutcome,
}

/// Aggregate of one sweep; violations are in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub lemma: LemmaKind,
    pub n: usize,
    /// Families (downsets, subfamilies or samples) visited.
    pub families: u64,
    /// Instances whose hypotheses were met and which were checked.
    pub checks: u64,
    pub hypothesis_not_met: u64,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    checks: u64,
    not_met: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn record(&mut self, family: impl FnOnce() -> String, parameters: impl FnOnce() -> String, outcome: LemmaOutcome) {
        match outcome.holds() {
            None => self.not_met += 1,
            Some(true) => self.checks += 1,
            Some(false) => {
                self.checks += 1;
                self.violations.push(Violation {
                    family: family(),
                    parameters: parameters(),
                    outcome,
                });
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.not_met += other.not_met;
        self.violations.extend(other.violations);
        self
    }
}

fn finish(lemma: LemmaKind, n: usize, families: u64, tallies: Vec<Tally>) -> SweepReport {
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    SweepReport {
        lemma,
        n,
        families,
        checks: total.checks,
        hypothesis_not_met: total.not_met,
        violations: total.violations,
    }
}

/// Every selector inside `[1, n]`.
fn selectors(n: usize) -> Vec<LevelSelector> {
    LevelSelector::all_within(1, n)
}

fn sperner_on(h: &HereditaryFamily) -> Tally {
    let mut tally = Tally::default();
    let n = h.ground().get();
    for p in 0..=n {
        for q in p + 1..=n {
            tally.record(|| h.describe(), || format!("p={p} q={q}"), verify_sperner_ratio(h, p, q));
        }
    }
    tally
}

fn star_ratio_sweep_on(h: &HereditaryFamily) -> Tally {
    let mut tally = Tally::default();
    let mu = h.mu();
    for s in selectors(h.ground().get()) {
        let r = s.max_level();
        let f = h.expand_levels(&s);
        for t2 in 1..=s.min_level() {
            for t1 in 0..t2 {
                if mu + t1 < 2 * r {
                    tally.not_met += 1;
                    continue;
                }
                // F⟨T2⟩ ≠ ∅ forces T2 ∈ H.
                for &set2 in h.level(t2).iter() {
                    for bits in SubsetsOfSize::new(set2.bits(), t1) {
                        let set1 = ElementSet::from_bits(bits);
                        tally.record(
                            || h.describe(),
                            || format!("S={s} t1={t1} t2={t2} T1={set1} T2={set2}"),
                            star_ratio_on(mu, &f, &s, t1, t2, set1, set2),
                        );
                    }
                }
            }
        }
    }
    tally
}

fn family_vs_star_on(h: &HereditaryFamily) -> Tally {
    let mut tally = Tally::default();
    for s in selectors(h.ground().get()) {
        for t in 1..=s.min_level() {
            tally.record(|| h.describe(), || format!("S={s} t={t}"), verify_family_vs_star(h, &s, t));
        }
    }
    tally
}

fn mu_quotient_on(h: &HereditaryFamily) -> Tally {
    let mut tally = Tally::default();
    let members = h.members();
    for &x in members.iter() {
        tally.record(|| h.describe(), || format!("X={x}"), verify_mu_quotient(&members, x));
    }
    tally
}

/// Runs an exhaustive sweep over every non-empty downset on `[n]` (`n <= 5`).
///
/// `TransversalBound` and `Keyint` have their own drivers.
pub fn sweep_downsets(lemma: LemmaKind, n: usize) -> Result<SweepReport> {
    let check: fn(&HereditaryFamily) -> Tally = match lemma {
        LemmaKind::Sperner => sperner_on,
        LemmaKind::StarRatio => star_ratio_sweep_on,
        LemmaKind::FamilyVsStar => family_vs_star_on,
        LemmaKind::MuQuotient => mu_quotient_on,
        LemmaKind::TransversalBound | LemmaKind::Keyint => {
            return Err(Error::precondition(format!("{lemma} is not swept over downsets")));
        }
    };
    let downsets = all_downsets(n)?;
    let tallies: Vec<Tally> = downsets.par_iter().map(check).collect();
    Ok(finish(lemma, n, downsets.len() as u64, tallies))
}

/// Largest ground set whose full subfamily space is swept for the key lemma.
pub const MAX_KEYINT_GROUND: usize = 4;

/// Every subfamily of `2^{[n]}` meeting the hypotheses: the constructive witness
/// stays within bounds, the exhaustive search finds one, and every
/// `t`-transversal in `2^{[n]}` meets the witness union in `t + 1` elements.
pub fn sweep_keyint(n: usize, t: usize) -> Result<SweepReport> {
    let ground = GroundSize::new(n)?;
    if n > MAX_KEYINT_GROUND {
        return Err(Error::SizeLimit {
            limit: "ground size for the subfamily sweep",
            value: n,
            cap: MAX_KEYINT_GROUND,
        });
    }
    let pool = SetFamily::new(ground, (0..1u64 << n).map(ElementSet::from_bits))?;
    let cells = pool.len();
    let tallies: Vec<Tally> = (0u64..1 << cells)
        .into_par_iter()
        .map(|mask| {
            let a = SetFamily::new(
                ground,
                (0..cells).filter(|i| mask >> i & 1 == 1).map(|i| pool.members()[i]),
            )
            .expect("members fit");
            keyint_instance(&a, t, &pool)
        })
        .collect();
    Ok(finish(LemmaKind::Keyint, n, 1 << cells, tallies))
}

fn keyint_instance(a: &SetFamily, t: usize, pool: &SetFamily) -> Tally {
    let mut tally = Tally::default();
    if check_keyint_hypotheses(a, t).is_err() {
        tally.not_met += 1;
        return tally;
    }
    let r = a.iter().map(|s| s.len()).max().unwrap_or(0);
    let witness = keyint_witness(a, t).expect("hypotheses checked");
    let bounded = witness.within_bounds(r, t);
    let exhaustive = keyint_check_exhaustive(a, t).expect("hypotheses checked");
    let core = transversal_core(a, t, pool).expect("hypotheses checked");
    let holds = bounded && exhaustive && core.ok;
    tally.record(
        || a.to_string(),
        || format!("t={t}"),
        flag_outcome(holds, [bounded, exhaustive, core.ok]),
    );
    tally
}

/// A yes/no check as an outcome: lhs counts the passing parts out of rhs.
fn flag_outcome<const N: usize>(holds: bool, parts: [bool; N]) -> LemmaOutcome {
    use num_rational::BigRational;
    let passed = parts.iter().filter(|&&b| b).count();
    LemmaOutcome::Checked(super::inequalities::Check {
        holds,
        lhs: BigRational::from_integer(passed.into()),
        rhs: BigRational::from_integer(N.into()),
        center: None,
    })
}

/// Seeded random instances of the transversal bound on `[n]`; sample `i` uses
/// stream `i` of the seed, so results do not depend on the worker count.
pub fn sweep_transversal_bound(n: usize, samples: u64, seed: u64) -> Result<SweepReport> {
    GroundSize::new(n)?;
    if n > 10 {
        return Err(Error::SizeLimit {
            limit: "ground size for sampled transversal-bound checks",
            value: n,
            cap: 10,
        });
    }
    let tallies: Vec<Tally> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            transversal_sample(n, &mut rng)
        })
        .collect::<Result<_>>()?;
    Ok(finish(LemmaKind::TransversalBound, n, samples, tallies))
}

fn transversal_sample(n: usize, rng: &mut ChaCha8Rng) -> Result<Tally> {
    let mut tally = Tally::default();
    let lo = rng.gen_range(1..=n);
    let h = random_hereditary(n, rng.gen_range(1..=4), (lo, n), rng.gen())?;
    let mu = h.mu();
    let t = rng.gen_range(0..=2usize);
    // Admissible r: t + 1 <= r and 2r - t <= mu.
    let r_hi = (mu + t) / 2;
    if r_hi < t + 1 {
        tally.not_met += 1;
        return Ok(tally);
    }
    let r = rng.gen_range(t + 1..=r_hi);
    let levels: Vec<usize> = (t + 1..=r).filter(|&s| s == r || rng.gen_bool(0.5)).collect();
    let selector = LevelSelector::new(levels)?;
    let f = h.expand_levels(&selector);
    let x = ElementSet::from_bits(rng.gen::<u64>() & h.ground().full_mask());
    let eligible: Vec<ElementSet> = f.iter().copied().filter(|s| s.intersection(x).len() > t).collect();
    let a = SetFamily::new(h.ground(), eligible.into_iter().filter(|_| rng.gen_bool(0.5)))?;
    tally.record(
        || h.describe(),
        || format!("S={selector} t={t} A={a} X={x}"),
        transversal_bound_on(mu, &f, &selector, t, &a, x),
    );
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_sweeps_are_clean() {
        for lemma in [LemmaKind::Sperner, LemmaKind::StarRatio, LemmaKind::FamilyVsStar, LemmaKind::MuQuotient] {
            for n in 1..=4 {
                let rep = sweep_downsets(lemma, n).unwrap();
                assert!(rep.is_clean(), "{lemma} n={n}: {:?}", rep.violations.first());
                assert_eq!(rep.families, [0, 2, 5, 19, 167][n]);
            }
        }
        assert!(sweep_downsets(LemmaKind::Keyint, 3).is_err());
    }

    #[test]
    fn sweeps_count_checks() {
        let rep = sweep_downsets(LemmaKind::Sperner, 2).unwrap();
        // 2^[2] is the only downset with mu = 2; (p,q) = (0,1), (0,2) qualify there.
        // Each other downset has mu <= 1 and only (0,1) when mu = 1.
        assert!(rep.checks > 0 && rep.hypothesis_not_met > 0);
        let rep = sweep_downsets(LemmaKind::FamilyVsStar, 4).unwrap();
        assert!(rep.checks > 0);
    }

    #[test]
    fn keyint_sweep_small() {
        for t in 1..=2 {
            let rep = sweep_keyint(3, t).unwrap();
            assert!(rep.is_clean());
            assert_eq!(rep.families, 256);
            assert_eq!(rep.checks + rep.hypothesis_not_met, 256);
        }
        assert!(sweep_keyint(5, 1).is_err());
    }

    #[test]
    fn transversal_samples_are_clean_and_deterministic() {
        let a = sweep_transversal_bound(6, 300, 11).unwrap();
        assert!(a.is_clean());
        assert!(a.checks > 50);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| sweep_transversal_bound(6, 300, 11).unwrap());
        assert_eq!(a, b);
    }
}
