//! Exact maximum sum / product of cross-`t`-intersecting subfamilies.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::clique::{search_best, search_equal, CompatGraph, Objective};
use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::family::{t_intersects, SetFamily};
use crate::hereditary::{HereditaryFamily, LevelSelector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sum,
    Product,
}

impl Mode {
    fn objective(self) -> Objective {
        match self {
            Mode::Sum => Objective::Sum,
            Mode::Product => Objective::Product,
        }
    }

    /// Objective value of per-family sizes.
    pub fn value(self, sizes: impl IntoIterator<Item = usize>) -> u128 {
        let it = sizes.into_iter().map(|s| s as u128);
        match self {
            Mode::Sum => it.sum(),
            Mode::Product => it.product(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sum => "sum",
            Mode::Product => "product",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Pick the cheapest exact method that fits the guardrails.
    Auto,
    /// Closed sets of the transversal Galois connection (`k = 2` only).
    ClosedSets,
    /// Maximum-weight clique search on the compatibility graph.
    BranchAndBound,
    /// Subfamilies of the first `k - 1` families; the last one is taken maximal.
    BruteForce,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::ClosedSets => "closed_sets",
            Strategy::BranchAndBound => "branch_and_bound",
            Strategy::BruteForce => "brute_force",
        })
    }
}

/// Size caps for the exact strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Guardrails {
    /// Largest `|F_i|` for closed-set enumeration.
    pub closed_family: usize,
    /// Closed sets enumerated before giving up.
    pub closed_sets: usize,
    /// Largest `Σ|F_i|` for branch-and-bound.
    pub bnb_total: usize,
    /// Largest `|F_i|` for subset brute force.
    pub brute_family: usize,
    /// Largest `k` for subset brute force.
    pub brute_k: usize,
}

impl Default for Guardrails {
    fn default() -> Self {
        Guardrails {
            closed_family: 2000,
            closed_sets: 2_000_000,
            bnb_total: 30,
            brute_family: 20,
            brute_k: 3,
        }
    }
}

impl Guardrails {
    /// Defaults overridden by `KRADON_GUARDRAIL_{CLOSED_FAMILY,CLOSED_SETS,BNB_TOTAL,BRUTE_FAMILY,BRUTE_K}`.
    pub fn from_env() -> Result<Self> {
        let mut g = Guardrails::default();
        let fields: [(&str, &mut usize); 5] = [
            ("KRADON_GUARDRAIL_CLOSED_FAMILY", &mut g.closed_family),
            ("KRADON_GUARDRAIL_CLOSED_SETS", &mut g.closed_sets),
            ("KRADON_GUARDRAIL_BNB_TOTAL", &mut g.bnb_total),
            ("KRADON_GUARDRAIL_BRUTE_FAMILY", &mut g.brute_family),
            ("KRADON_GUARDRAIL_BRUTE_K", &mut g.brute_k),
        ];
        for (name, slot) in fields {
            if let Ok(raw) = std::env::var(name) {
                *slot = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::malformed(format!("{name}={raw} is not a non-negative integer")))?;
            }
        }
        // Brute-force masks are 32-bit.
        g.brute_family = g.brute_family.min(32);
        Ok(g)
    }
}

/// `k` level unions `F_i = ⋃_{s ∈ S_i} H^{(s)}` of one host and an objective.
#[derive(Clone, Debug)]
pub struct CrossInstance {
    host: HereditaryFamily,
    t: usize,
    selectors: Vec<LevelSelector>,
    mode: Mode,
    families: Vec<SetFamily>,
}

impl CrossInstance {
    /// Selectors may contain levels below `t`; such members can only appear
    /// when every other family is empty.
    pub fn new(host: HereditaryFamily, t: usize, selectors: Vec<LevelSelector>, mode: Mode) -> Result<Self> {
        if selectors.len() < 2 {
            return Err(Error::malformed(format!(
                "need k >= 2 families, got {}",
                selectors.len()
            )));
        }
        if t == 0 {
            return Err(Error::malformed("t must be at least 1"));
        }
        let n = host.ground().get();
        if let Some(s) = selectors.iter().find(|s| s.max_level() > n) {
            return Err(Error::malformed(format!(
                "selector {s} exceeds the ground size {n}"
            )));
        }
        let families = selectors.iter().map(|s| host.expand_levels(s)).collect();
        Ok(CrossInstance {
            host,
            t,
            selectors,
            mode,
            families,
        })
    }

    /// `k` copies of one selector.
    pub fn uniform(host: HereditaryFamily, t: usize, selector: LevelSelector, k: usize, mode: Mode) -> Result<Self> {
        Self::new(host, t, vec![selector; k], mode)
    }

    pub fn host(&self) -> &HereditaryFamily {
        &self.host
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.selectors.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn selectors(&self) -> &[LevelSelector] {
        &self.selectors
    }

    /// The expanded `F_1, …, F_k`.
    pub fn families(&self) -> &[SetFamily] {
        &self.families
    }

    /// `r`: the largest selected level.
    pub fn r(&self) -> usize {
        self.selectors.iter().map(|s| s.max_level()).max().unwrap_or(0)
    }

    /// Same families, other objective.
    pub fn with_mode(&self, mode: Mode) -> Self {
        CrossInstance {
            mode,
            ..self.clone()
        }
    }

    fn total_size(&self) -> usize {
        self.families.iter().map(|f| f.len()).sum()
    }

    fn largest_family(&self) -> usize {
        self.families.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Splits a sorted global vertex index sequence into subfamilies.
    fn witness_from_key(&self, key: &[usize]) -> Vec<SetFamily> {
        let mut offset = 0;
        self.families
            .iter()
            .map(|f| {
                let start = offset;
                let end = start + f.len();
                offset = end;
                let members = key
                    .iter()
                    .filter(|&&v| v >= start && v < end)
                    .map(|&v| f.members()[v - start]);
                SetFamily::new(f.ground(), members).expect("members fit")
            })
            .collect()
    }

    fn empty_witness(&self) -> Vec<SetFamily> {
        self.families.iter().map(|f| SetFamily::empty(f.ground())).collect()
    }
}

/// Exact optimum of an instance with its canonical witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSolution {
    pub value: u128,
    /// `A_1, …, A_k`; the lexicographically least optimum over the concatenated
    /// member indices of `F_1, …, F_k`, or all empty when the optimum is 0.
    pub witness: Vec<SetFamily>,
    pub strategy: Strategy,
}

/// Solves `instance` exactly with the requested strategy.
pub fn solve_cross(instance: &CrossInstance, strategy: Strategy, guardrails: &Guardrails) -> Result<CrossSolution> {
    if instance.mode == Mode::Product && instance.families.iter().any(|f| f.is_empty()) {
        return Ok(CrossSolution {
            value: 0,
            witness: instance.empty_witness(),
            strategy,
        });
    }
    let (value, key, used) = match strategy {
        Strategy::Auto => solve_auto(instance, guardrails)?,
        Strategy::ClosedSets => {
            check_closed(instance, guardrails)?;
            let (v, key) = closed_sets(instance, guardrails.closed_sets).ok_or(Error::SizeLimit {
                limit: "closed-set count",
                value: guardrails.closed_sets.saturating_add(1),
                cap: guardrails.closed_sets,
            })?;
            (v, key, Strategy::ClosedSets)
        }
        Strategy::BranchAndBound => {
            check_bnb(instance, guardrails)?;
            let (v, key) = branch_and_bound(instance);
            (v, key, Strategy::BranchAndBound)
        }
        Strategy::BruteForce => {
            check_brute(instance, guardrails)?;
            let (v, key) = brute_force(instance);
            (v, key, Strategy::BruteForce)
        }
    };
    let witness = if value == 0 {
        instance.empty_witness()
    } else {
        instance.witness_from_key(&key)
    };
    Ok(CrossSolution {
        value,
        witness,
        strategy: used,
    })
}

fn solve_auto(instance: &CrossInstance, g: &Guardrails) -> Result<(u128, Vec<usize>, Strategy)> {
    if instance.k() == 2 && check_closed(instance, g).is_ok() {
        if let Some((v, key)) = closed_sets(instance, g.closed_sets) {
            return Ok((v, key, Strategy::ClosedSets));
        }
    }
    if instance.k() >= 3 && check_bnb(instance, g).is_ok() {
        let (v, key) = branch_and_bound(instance);
        return Ok((v, key, Strategy::BranchAndBound));
    }
    if check_brute(instance, g).is_ok() {
        let (v, key) = brute_force(instance);
        return Ok((v, key, Strategy::BruteForce));
    }
    if instance.k() == 2 {
        check_bnb(instance, g)?;
        let (v, key) = branch_and_bound(instance);
        return Ok((v, key, Strategy::BranchAndBound));
    }
    Err(check_bnb(instance, g).expect_err("branch-and-bound was ruled out"))
}

fn check_closed(instance: &CrossInstance, g: &Guardrails) -> Result<()> {
    if instance.k() != 2 {
        return Err(Error::precondition("closed-set enumeration needs k = 2"));
    }
    limit("family size for closed-set enumeration", instance.largest_family(), g.closed_family)
}

fn check_bnb(instance: &CrossInstance, g: &Guardrails) -> Result<()> {
    limit("total family size for branch-and-bound", instance.total_size(), g.bnb_total)
}

fn check_brute(instance: &CrossInstance, g: &Guardrails) -> Result<()> {
    limit("family count for subset brute force", instance.k(), g.brute_k)?;
    limit(
        "family size for subset brute force",
        instance.largest_family(),
        g.brute_family.min(32),
    )
}

fn limit(name: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::SizeLimit {
            limit: name,
            value,
            cap,
        })
    } else {
        Ok(())
    }
}

fn branch_and_bound(instance: &CrossInstance) -> (u128, Vec<usize>) {
    let graph = CompatGraph::cross(&instance.families, instance.t);
    search_best(&graph, instance.mode.objective())
}

/// Compatibility rows between two families: `rows[x]` marks the members of `to`
/// that `t`-intersect member `x` of `from`.
fn cross_rows(from: &SetFamily, to: &SetFamily, t: usize) -> Vec<BitRow> {
    from.iter()
        .map(|&a| {
            let mut row = BitRow::zeros(to.len());
            for (j, &b) in to.iter().enumerate() {
                if t_intersects(a, b, t) {
                    row.set(j);
                }
            }
            row
        })
        .collect()
}

fn transversal_rows(rows: &[BitRow], chosen: &BitRow, width: usize) -> BitRow {
    let mut out = BitRow::ones(width);
    for x in chosen.iter_ones() {
        out.and_assign(&rows[x]);
    }
    out
}

/// `T1(T2(a))` with `T2(x) = t_transversals(f2, x, t)` and `T1(y) = t_transversals(f1, y, t)`.
pub fn transversal_closure(a: &SetFamily, f1: &SetFamily, f2: &SetFamily, t: usize) -> SetFamily {
    f1.t_transversals(&f2.t_transversals(a, t), t)
}

/// Closed sets of `A ↦ T_a(T_b(A))` over the universe `F_a`, in lectic order
/// (NextClosure). Stops with `None` after `cap` closed sets.
struct Lattice {
    rows_ab: Vec<BitRow>,
    rows_ba: Vec<BitRow>,
    width_a: usize,
    width_b: usize,
}

impl Lattice {
    fn polar(&self, a: &BitRow) -> BitRow {
        transversal_rows(&self.rows_ab, a, self.width_b)
    }

    fn closure(&self, a: &BitRow) -> BitRow {
        transversal_rows(&self.rows_ba, &self.polar(a), self.width_a)
    }

    fn for_each_closed<F>(&self, cap: usize, mut visit: F) -> Option<ControlFlow<()>>
    where
        F: FnMut(&BitRow, &BitRow) -> ControlFlow<()>,
    {
        let m = self.width_a;
        let mut current = self.closure(&BitRow::zeros(m));
        let mut count = 0usize;
        loop {
            count += 1;
            if count > cap {
                return None;
            }
            if visit(&current, &self.polar(&current)).is_break() {
                return Some(ControlFlow::Break(()));
            }
            let mut advanced = false;
            for i in (0..m).rev() {
                if current.get(i) {
                    continue;
                }
                let mut seed = current.prefix(i);
                seed.set(i);
                let next = self.closure(&seed);
                if next.prefix(i) == current.prefix(i) {
                    current = next;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Some(ControlFlow::Continue(()));
            }
        }
    }
}

/// The lattice over the smaller family and a flag for "universe is `F_2`".
fn lattice(instance: &CrossInstance) -> (Lattice, bool) {
    let (f1, f2) = (&instance.families[0], &instance.families[1]);
    let swapped = f2.len() < f1.len();
    let (fa, fb) = if swapped { (f2, f1) } else { (f1, f2) };
    (
        Lattice {
            rows_ab: cross_rows(fa, fb, instance.t),
            rows_ba: cross_rows(fb, fa, instance.t),
            width_a: fa.len(),
            width_b: fb.len(),
        },
        swapped,
    )
}

fn pair_key(a1: &BitRow, a2: &BitRow, offset: usize) -> Vec<usize> {
    a1.iter_ones().chain(a2.iter_ones().map(|j| j + offset)).collect()
}

fn closed_sets(instance: &CrossInstance, cap: usize) -> Option<(u128, Vec<usize>)> {
    let (lat, swapped) = lattice(instance);
    let offset = instance.families[0].len();
    let mut best: (u128, Vec<usize>) = (0, Vec::new());
    let _ = lat.for_each_closed(cap, |a, b| {
        let (a1, a2) = if swapped { (b, a) } else { (a, b) };
        let value = instance.mode.value([a1.count(), a2.count()]);
        if value > 0 && value >= best.0 {
            let key = pair_key(a1, a2, offset);
            if value > best.0 || key < best.1 {
                best = (value, key);
            }
        }
        ControlFlow::Continue(())
    })?;
    Some(best)
}

/// Enumerates `A_1 ⊆ F_1, …, A_{k-1}` with each feasible given the earlier ones,
/// taking `A_k` maximal.
fn brute_force(instance: &CrossInstance) -> (u128, Vec<usize>) {
    let fams = &instance.families;
    let k = fams.len();
    let t = instance.t;
    // rows[i][j][x]: members of F_j compatible with member x of F_i.
    let rows: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    fams[i]
                        .iter()
                        .map(|&a| {
                            fams[j]
                                .iter()
                                .enumerate()
                                .filter(|&(_, &b)| t_intersects(a, b, t))
                                .fold(0u32, |m, (y, _)| m | 1 << y)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let full = |len: usize| if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
    let allowed: Vec<u32> = fams.iter().map(|f| full(f.len())).collect();
    let offsets: Vec<usize> = fams
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.len();
            Some(o)
        })
        .collect();

    struct Ctx<'a> {
        mode: Mode,
        rows: &'a [Vec<Vec<u32>>],
        offsets: &'a [usize],
        chosen: Vec<u32>,
        best: (u128, Vec<usize>),
    }

    fn key_of(chosen: &[u32], offsets: &[usize]) -> Vec<usize> {
        chosen
            .iter()
            .zip(offsets)
            .flat_map(|(&m, &o)| (0..32).filter(move |b| m >> b & 1 == 1).map(move |b| b + o))
            .collect()
    }

    fn go(ctx: &mut Ctx<'_>, i: usize, allowed: &[u32]) {
        let k = allowed.len();
        if i == k - 1 {
            ctx.chosen.push(allowed[i]);
            let value = ctx.mode.value(ctx.chosen.iter().map(|m| m.count_ones() as usize));
            if value > 0 && value >= ctx.best.0 {
                let key = key_of(&ctx.chosen, ctx.offsets);
                if value > ctx.best.0 || key < ctx.best.1 {
                    ctx.best = (value, key);
                }
            }
            ctx.chosen.pop();
            return;
        }
        let space = allowed[i];
        let mut sub = space;
        loop {
            let mut next = allowed.to_vec();
            let mut bits = sub;
            while bits != 0 {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (j, slot) in next.iter_mut().enumerate().skip(i + 1) {
                    *slot &= ctx.rows[i][j][x];
                }
            }
            ctx.chosen.push(sub);
            go(ctx, i + 1, &next);
            ctx.chosen.pop();
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & space;
        }
    }

    let mut ctx = Ctx {
        mode: instance.mode,
        rows: &rows,
        offsets: &offsets,
        chosen: Vec::with_capacity(k),
        best: (0, Vec::new()),
    };
    go(&mut ctx, 0, &allowed);
    ctx.best
}

/// Visits every optimal witness whose objective equals `value` (which must be
/// positive), for `k = 2` through the closed-set lattice and otherwise by
/// clique enumeration.
pub fn enumerate_optima<F>(
    instance: &CrossInstance,
    value: u128,
    guardrails: &Guardrails,
    mut visit: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[SetFamily]) -> ControlFlow<()>,
{
    if value == 0 {
        return Err(Error::precondition("optima of value 0 are not enumerated"));
    }
    if instance.k() == 2 && check_closed(instance, guardrails).is_ok() {
        // An optimal pair has each side equal to the transversal family of the other.
        let (lat, swapped) = lattice(instance);
        let offset = instance.families[0].len();
        let flow = lat.for_each_closed(guardrails.closed_sets, |a, b| {
            let (a1, a2) = if swapped { (b, a) } else { (a, b) };
            if instance.mode.value([a1.count(), a2.count()]) == value {
                visit(&instance.witness_from_key(&pair_key(a1, a2, offset)))
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(flow) = flow {
            return Ok(flow);
        }
    }
    check_bnb(instance, guardrails)?;
    let graph = CompatGraph::cross(&instance.families, instance.t);
    Ok(search_equal(&graph, instance.mode.objective(), value, |clique| {
        visit(&instance.witness_from_key(clique))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{are_cross_t_intersecting, test_util::*};

    fn pow(n: usize) -> HereditaryFamily {
        HereditaryFamily::power_set(ground(n))
    }

    fn solve_all(inst: &CrossInstance) -> Vec<CrossSolution> {
        let g = Guardrails {
            bnb_total: 64,
            ..Guardrails::default()
        };
        let mut out = vec![
            solve_cross(inst, Strategy::BranchAndBound, &g).unwrap(),
            solve_cross(inst, Strategy::BruteForce, &g).unwrap(),
        ];
        if inst.k() == 2 {
            out.push(solve_cross(inst, Strategy::ClosedSets, &g).unwrap());
        }
        out
    }

    fn assert_strategies_agree(inst: &CrossInstance) -> CrossSolution {
        let all = solve_all(inst);
        for s in &all[1..] {
            assert_eq!((s.value, &s.witness), (all[0].value, &all[0].witness), "{:?}", s.strategy);
        }
        assert!(are_cross_t_intersecting(&all[0].witness, inst.t()).unwrap());
        all[0].clone()
    }

    #[test]
    fn named_optima() {
        let s2 = LevelSelector::single(2);
        let inst = CrossInstance::uniform(pow(4), 1, s2.clone(), 3, Mode::Sum).unwrap();
        assert_eq!(assert_strategies_agree(&inst).value, 9);
        let inst = CrossInstance::uniform(pow(5), 1, s2.clone(), 2, Mode::Sum).unwrap();
        let sol = assert_strategies_agree(&inst);
        assert_eq!(sol.value, 10);
        assert_eq!(sol.witness[0].len(), 10);
        assert!(sol.witness[1].is_empty());
        let inst = CrossInstance::uniform(pow(4), 1, s2, 2, Mode::Product).unwrap();
        assert_eq!(assert_strategies_agree(&inst).value, 9);
    }

    #[test]
    fn auto_picks_by_shape() {
        let s2 = LevelSelector::single(2);
        let g = Guardrails::default();
        let inst = CrossInstance::uniform(pow(4), 1, s2.clone(), 2, Mode::Sum).unwrap();
        assert_eq!(solve_cross(&inst, Strategy::Auto, &g).unwrap().strategy, Strategy::ClosedSets);
        let inst = CrossInstance::uniform(pow(4), 1, s2.clone(), 3, Mode::Sum).unwrap();
        assert_eq!(solve_cross(&inst, Strategy::Auto, &g).unwrap().strategy, Strategy::BranchAndBound);
        let inst = CrossInstance::uniform(pow(6), 1, s2, 4, Mode::Sum).unwrap();
        assert!(matches!(
            solve_cross(&inst, Strategy::Auto, &g),
            Err(Error::SizeLimit { cap: 30, value: 60, .. })
        ));
    }

    #[test]
    fn product_with_empty_family_is_zero() {
        let h = HereditaryFamily::from_bases(ground(3), [set(&[1])]).unwrap();
        let inst = CrossInstance::new(h, 1, vec![LevelSelector::single(1), LevelSelector::single(2)], Mode::Product).unwrap();
        let sol = solve_cross(&inst, Strategy::Auto, &Guardrails::default()).unwrap();
        assert_eq!(sol.value, 0);
        assert!(sol.witness.iter().all(|w| w.is_empty()));
    }

    #[test]
    fn levels_below_t() {
        let inst = CrossInstance::new(pow(3), 2, vec![LevelSelector::range(0, 2), LevelSelector::single(2)], Mode::Sum).unwrap();
        let sol = assert_strategies_agree(&inst);
        // The full H^{(≤2)} of [3] has 7 members; pairs alone give 3 + 3 = 6.
        assert_eq!(sol.value, 7);
        let prod = assert_strategies_agree(&inst.with_mode(Mode::Product));
        assert!(prod.witness.iter().all(|w| w.iter().all(|s| s.len() >= 2)));
    }

    #[test]
    fn rejects_bad_instances() {
        let s = LevelSelector::single(2);
        assert!(CrossInstance::uniform(pow(4), 1, s.clone(), 1, Mode::Sum).is_err());
        assert!(CrossInstance::uniform(pow(4), 0, s, 2, Mode::Sum).is_err());
        assert!(CrossInstance::uniform(pow(4), 1, LevelSelector::single(5), 2, Mode::Sum).is_err());
    }

    #[test]
    fn closure_examples() {
        let f = crate::family::all_subsets_of_size(ground(5), 2);
        let a = fam(5, &[&[1, 2], &[1, 3]]);
        // T2(a) = {12,13,14,15,23}; only 12 and 13 meet all five, so a is closed.
        assert_eq!(f.t_transversals(&a, 1), fam(5, &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[1, 5]]));
        assert_eq!(transversal_closure(&a, &f, &f, 1), a);
        let b = fam(5, &[&[1, 2], &[1, 3], &[1, 4]]);
        assert_eq!(transversal_closure(&b, &f, &f, 1), fam(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]));
        let empty = SetFamily::empty(ground(5));
        assert_eq!(transversal_closure(&empty, &f, &f, 1), f.t_transversals(&f, 1));
        assert_eq!(transversal_closure(&f, &f, &f, 1), f);
    }

    /// Optimal pairs by enumerating all pairs of subfamilies.
    fn brute_optimal_pairs(inst: &CrossInstance, value: u128) -> Vec<Vec<SetFamily>> {
        let (f1, f2) = (&inst.families()[0], &inst.families()[1]);
        let pick = |f: &SetFamily, m: u32| {
            SetFamily::new(f.ground(), f.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, s)| *s)).unwrap()
        };
        let mut out = Vec::new();
        for m1 in 0u32..1 << f1.len() {
            for m2 in 0u32..1 << f2.len() {
                let pair = vec![pick(f1, m1), pick(f2, m2)];
                if inst.mode().value([pair[0].len(), pair[1].len()]) == value
                    && are_cross_t_intersecting(&pair, inst.t()).unwrap()
                {
                    out.push(pair);
                }
            }
        }
        out.sort_by_key(|p| format!("{p:?}"));
        out
    }

    #[test]
    fn optima_enumeration() {
        let s2 = LevelSelector::single(2);
        let inst = CrossInstance::uniform(pow(4), 1, s2, 2, Mode::Product).unwrap();
        let want = brute_optimal_pairs(&inst, 9);
        // Stars and triangles with themselves, plus mixed closed pairs such as
        // ({12,13,24}, {12,14,23}).
        assert_eq!(want.len(), 20);
        for closed_family in [2000, 0] {
            let g = Guardrails {
                closed_family,
                ..Guardrails::default()
            };
            let mut seen = Vec::new();
            let _ = enumerate_optima(&inst, 9, &g, |w| {
                seen.push(w.to_vec());
                ControlFlow::Continue(())
            })
            .unwrap();
            seen.sort_by_key(|p| format!("{p:?}"));
            assert_eq!(seen, want);
        }
    }

    mod props {
        use super::*;
        use crate::hereditary::random_hereditary;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn strategies_agree(seed in 0u64..10_000, k in 2usize..4, t in 1usize..3, lo in 1usize..3, product: bool) {
                let h = random_hereditary(5, 3, (2, 4), seed).unwrap();
                let sel = LevelSelector::range(lo, 3);
                let mode = if product { Mode::Product } else { Mode::Sum };
                let inst = CrossInstance::uniform(h, t, sel, k, mode).unwrap();
                prop_assume!(inst.families().iter().all(|f| f.len() <= 10));
                assert_strategies_agree(&inst);
            }

            #[test]
            fn closure_is_extensive_monotone_idempotent(seed in 0u64..10_000, mask in 0u32..1024, extra in 0u32..1024) {
                let h = random_hereditary(5, 3, (2, 4), seed).unwrap();
                let f = h.expand_levels(&LevelSelector::range(1, 3));
                let pick = |m: u32| SetFamily::new(f.ground(), f.iter().enumerate().filter(|(i, _)| *i < 10 && m >> i & 1 == 1).map(|(_, s)| *s)).unwrap();
                let a = pick(mask);
                let b = pick(mask | extra);
                let ca = transversal_closure(&a, &f, &f, 1);
                prop_assert!(a.is_subfamily_of(&ca));
                prop_assert_eq!(transversal_closure(&ca, &f, &f, 1), ca.clone());
                prop_assert!(ca.is_subfamily_of(&transversal_closure(&b, &f, &f, 1)));
                // Closing A_1 keeps (A_1, T2(A_1)) feasible and never shrinks it.
                let t2 = f.t_transversals(&ca, 1);
                prop_assert!(are_cross_t_intersecting(&[ca.clone(), t2], 1).unwrap());
            }
        }
    }
}
