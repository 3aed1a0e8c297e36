//! Few members of a non-trivial family with a small union and no `t` common elements.

use serde::Serialize;

use super::thresholds::union_bound;
use crate::error::{Degenerate, Error, Result};
use crate::family::{ElementSet, GroundSize, SetFamily};

/// `p` members of a family, their union and intersection, and the bound `m(r,t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessBundle {
    /// Members in the order the procedure chose them.
    pub sets: Vec<ElementSet>,
    pub p: usize,
    pub union: ElementSet,
    pub intersection: ElementSet,
    /// `m(r,t)` with `r` the largest member size.
    pub bound_m: u128,
}

impl WitnessBundle {
    fn new(sets: Vec<ElementSet>, bound_m: u128) -> Self {
        let union = sets.iter().copied().fold(ElementSet::EMPTY, ElementSet::union);
        let intersection = sets
            .iter()
            .copied()
            .reduce(ElementSet::intersection)
            .unwrap_or(ElementSet::EMPTY);
        WitnessBundle {
            p: sets.len(),
            sets,
            union,
            intersection,
            bound_m,
        }
    }

    pub fn family(&self, ground: GroundSize) -> SetFamily {
        SetFamily::new(ground, self.sets.iter().copied()).expect("members fit")
    }

    /// `2 <= p <= max{2, r-t+2}`, `|⋂| < t` and `|⋃| <= m(r,t)`.
    pub fn within_bounds(&self, r: usize, t: usize) -> bool {
        self.p >= 2
            && self.p <= max_parts(r, t)
            && self.intersection.len() < t
            && self.union.len() as u128 <= self.bound_m
    }
}

/// `max{2, r-t+2}`.
pub fn max_parts(r: usize, t: usize) -> usize {
    (r + 2).saturating_sub(t).max(2)
}

fn largest_size(a: &SetFamily) -> usize {
    a.iter().map(|s| s.len()).max().unwrap_or(0)
}

/// At least two members and not a trivial `t`-intersecting family.
pub fn check_keyint_hypotheses(a: &SetFamily, t: usize) -> Result<()> {
    match a.len() {
        0 => Err(Error::Degenerate(Degenerate::Empty)),
        1 => Err(Error::Degenerate(Degenerate::Singleton)),
        _ if a.is_trivial_t_intersecting(t)? => Err(Error::Degenerate(Degenerate::Trivial)),
        _ => Ok(()),
    }
}

/// The constructive descent: a violating pair if `a` is not `t`-intersecting,
/// otherwise the first two members followed by members that shrink the running
/// intersection (each time the one minimizing the new intersection, earliest in
/// canonical order on ties) until it drops below `t`.
pub fn keyint_witness(a: &SetFamily, t: usize) -> Result<WitnessBundle> {
    check_keyint_hypotheses(a, t)?;
    let m = union_bound(largest_size(a), t);
    let members = a.members();
    for (i, &x) in members.iter().enumerate() {
        if let Some(&y) = members[i + 1..].iter().find(|&&y| x.intersection(y).len() < t) {
            return Ok(WitnessBundle::new(vec![x, y], m));
        }
    }
    let mut sets = vec![members[0], members[1]];
    let mut running = members[0].intersection(members[1]);
    while running.len() >= t {
        let next = members
            .iter()
            .copied()
            .filter(|s| !running.is_subset_of(*s))
            .min_by_key(|s| running.intersection(*s).len())
            .expect("a non-trivial family has a member missing the running intersection");
        running = running.intersection(next);
        sets.push(next);
    }
    Ok(WitnessBundle::new(sets, m))
}

/// Searches all `p`-subsets, `2 <= p <= max{2, r-t+2}`, for a witness within
/// the bounds; returns the first in lexicographic index order.
pub fn keyint_search_exhaustive(a: &SetFamily, t: usize) -> Result<Option<WitnessBundle>> {
    check_keyint_hypotheses(a, t)?;
    let r = largest_size(a);
    let m = union_bound(r, t);
    let mut search = Subsets {
        members: a.members(),
        t,
        pmax: max_parts(r, t),
        union_cap: m as usize,
        chosen: Vec::new(),
        best: None,
        minimize: false,
    };
    search.run(0, ElementSet::EMPTY, ElementSet::EMPTY);
    Ok(search.best.map(|sets| WitnessBundle::new(sets, m)))
}

/// Whether some admissible witness exists (the lemma says it always does).
pub fn keyint_check_exhaustive(a: &SetFamily, t: usize) -> Result<bool> {
    Ok(keyint_search_exhaustive(a, t)?.is_some())
}

/// An admissible choice of members (`p` within bounds, `|⋂| < t`) of least union.
pub fn keyint_min_union(a: &SetFamily, t: usize) -> Result<Option<WitnessBundle>> {
    check_keyint_hypotheses(a, t)?;
    let r = largest_size(a);
    let mut search = Subsets {
        members: a.members(),
        t,
        pmax: max_parts(r, t),
        union_cap: usize::MAX,
        chosen: Vec::new(),
        best: None,
        minimize: true,
    };
    search.run(0, ElementSet::EMPTY, ElementSet::EMPTY);
    Ok(search.best.map(|sets| WitnessBundle::new(sets, union_bound(r, t))))
}

struct Subsets<'a> {
    members: &'a [ElementSet],
    t: usize,
    pmax: usize,
    union_cap: usize,
    chosen: Vec<ElementSet>,
    best: Option<Vec<ElementSet>>,
    minimize: bool,
}

impl Subsets<'_> {
    /// Returns true to stop.
    fn run(&mut self, start: usize, union: ElementSet, inter: ElementSet) -> bool {
        for i in start..self.members.len() {
            let s = self.members[i];
            let u = union.union(s);
            if u.len() > self.union_cap {
                continue;
            }
            let x = if self.chosen.is_empty() { s } else { inter.intersection(s) };
            self.chosen.push(s);
            if self.chosen.len() >= 2 && x.len() < self.t {
                // Supersets only grow the union, so stop extending here.
                self.best = Some(self.chosen.clone());
                if !self.minimize {
                    return true;
                }
                self.union_cap = u.len().saturating_sub(1);
            } else if self.chosen.len() < self.pmax && self.run(i + 1, u, x) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// `C = ⋃` of the constructive witness, and whether every `t`-transversal of
/// `a` in `pool` meets `C` in at least `t + 1` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalCore {
    pub core: ElementSet,
    pub ok: bool,
    pub transversals: usize,
    /// First transversal meeting `C` in at most `t` elements, if any.
    pub counterexample: Option<ElementSet>,
}

pub fn transversal_core(a: &SetFamily, t: usize, pool: &SetFamily) -> Result<TransversalCore> {
    let core = keyint_witness(a, t)?.union;
    let transversals = pool.t_transversals(a, t);
    let counterexample = transversals
        .iter()
        .copied()
        .find(|b| b.intersection(core).len() < t + 1);
    Ok(TransversalCore {
        core,
        ok: counterexample.is_none(),
        transversals: transversals.len(),
        counterexample,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpnessBranch {
    /// Two disjoint `r`-sets, used when `2r` exceeds the construction's union.
    DisjointPair,
    /// The `r - t + 2` sets `A_0, …, A_{r-t+1}`.
    Construction,
}

/// A non-trivial family of `r`-sets whose union has exactly `m(r,t)` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpnessWitness {
    pub r: usize,
    pub t: usize,
    pub branch: SharpnessBranch,
    pub family: SetFamily,
}

/// Builds the extremal family for `1 <= t <= r` on the ground set `[m(r,t)]`.
///
/// Labels: `x_{0,1..r}` are `1..r`, then `x_{i,j}` (`1 <= j <= i <= r-t`) in
/// row-major order, then `y_1..y_{r-t-1}`.
pub fn sharpness_witness(r: usize, t: usize) -> Result<SharpnessWitness> {
    if t == 0 || t > r {
        return Err(Error::malformed(format!(
            "sharpness witness needs 1 <= t <= r, got r = {r}, t = {t}"
        )));
    }
    let m = union_bound(r, t);
    let ground = GroundSize::new(usize::try_from(m).unwrap_or(usize::MAX))?;
    let d = r - t;
    let construction_union = (d * (d + 5) / 2 + t - 1) as u128;
    let (branch, sets) = if 2 * r as u128 <= construction_union && r >= t + 2 {
        let x0 = |j: usize| j - 1;
        // x_{i,j} for 1 <= j <= i sits after the r elements of row 0 and rows 1..i-1.
        let xi = |i: usize, j: usize| r + (i - 1) * i / 2 + (j - 1);
        let y = |j: usize| r + d * (d + 1) / 2 + (j - 1);
        let mut sets = vec![ElementSet::from_elements((1..=r).map(x0))?];
        for i in 1..=d {
            sets.push(ElementSet::from_elements(
                (1..=r - i).map(x0).chain((1..=i).map(|j| xi(i, j))),
            )?);
        }
        sets.push(ElementSet::from_elements(
            (1..t)
                .map(x0)
                .chain([x0(t + 1), xi(d, 1)])
                .chain((1..d).map(y)),
        )?);
        (SharpnessBranch::Construction, sets)
    } else {
        let first = ElementSet::from_elements(0..r)?;
        let second = ElementSet::from_elements(r..2 * r)?;
        (SharpnessBranch::DisjointPair, vec![first, second])
    };
    Ok(SharpnessWitness {
        r,
        t,
        branch,
        family: SetFamily::new(ground, sets)?,
    })
}
