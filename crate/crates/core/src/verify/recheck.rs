//! Independent re-checks of candidate findings using plain family predicates
//! (no solver, no star catalogs).

use crate::error::{Error, Result};
use crate::family::{all_subsets_of_size, are_cross_t_intersecting, ElementSet, SetFamily};

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unverified(msg.into()))
}

/// Largest `|F⟨T⟩|` over every `t`-subset `T` of the ground set.
pub(super) fn largest_star_size(f: &SetFamily, t: usize) -> usize {
    all_subsets_of_size(f.ground(), t)
        .iter()
        .map(|&c| f.iter().filter(|s| c.is_subset_of(**s)).count())
        .max()
        .unwrap_or(0)
}

fn check_subfamily(a: &SetFamily, f: &SetFamily, what: &str) -> Result<()> {
    if a.is_subfamily_of(f) {
        Ok(())
    } else {
        fail(format!("{what} is not a subfamily of the host family"))
    }
}

/// `a ⊆ f` is `t`-intersecting and larger than every `t`-star of `f`.
pub(super) fn intersecting_beats_stars(f: &SetFamily, a: &SetFamily, t: usize) -> Result<()> {
    check_subfamily(a, f, "witness")?;
    if !a.is_t_intersecting(t) {
        return fail("witness is not t-intersecting");
    }
    let star = largest_star_size(f, t);
    if a.len() <= star {
        return fail(format!("witness size {} does not exceed the largest star {star}", a.len()));
    }
    Ok(())
}

/// `a ⊆ f` is `t`-intersecting, not a `t`-star, and at least as large as every `t`-star.
pub(super) fn non_star_as_large_as_stars(f: &SetFamily, a: &SetFamily, t: usize) -> Result<()> {
    check_subfamily(a, f, "witness")?;
    if !a.is_t_intersecting(t) {
        return fail("witness is not t-intersecting");
    }
    if a.is_empty() || a.common_intersection()?.len() >= t {
        return fail("witness is contained in a t-star");
    }
    let star = largest_star_size(f, t);
    if a.len() < star {
        return fail(format!("witness size {} is below the largest star {star}", a.len()));
    }
    Ok(())
}

/// `witness[i] ⊆ families[i]` and the witness is cross-`t`-intersecting.
pub(super) fn cross_feasible(families: &[SetFamily], witness: &[SetFamily], t: usize) -> Result<()> {
    if families.len() != witness.len() {
        return fail("witness has the wrong number of families");
    }
    for (i, (a, f)) in witness.iter().zip(families).enumerate() {
        check_subfamily(a, f, &format!("A_{}", i + 1))?;
    }
    if !are_cross_t_intersecting(witness, t)? {
        return fail("witness is not cross-t-intersecting");
    }
    Ok(())
}

/// Some `t`-set `T` is a largest-star center of every `F_i` and `A_i = F_i⟨T⟩`.
pub(super) fn realizes_common_star(families: &[SetFamily], witness: &[SetFamily], t: usize) -> bool {
    let Some(first) = families.first() else {
        return false;
    };
    let best: Vec<usize> = families.iter().map(|f| largest_star_size(f, t)).collect();
    all_subsets_of_size(first.ground(), t).iter().any(|&c| {
        families
            .iter()
            .zip(witness)
            .zip(&best)
            .all(|((f, a), &b)| f.star(c).len() == b && f.star(c) == *a)
    })
}

/// One `A_j` equals a largest `F_j` and every other `A_i` is empty.
pub(super) fn realizes_single_full(families: &[SetFamily], witness: &[SetFamily]) -> bool {
    let largest = families.iter().map(SetFamily::len).max().unwrap_or(0);
    (0..families.len()).any(|j| {
        families[j].len() == largest
            && witness[j] == families[j]
            && witness.iter().enumerate().all(|(i, a)| i == j || a.is_empty())
    })
}

pub(super) fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

/// Text blocks of a witness, one per family.
pub(super) fn witness_text(witness: &[SetFamily]) -> Vec<String> {
    witness.iter().map(|w| w.to_string()).collect()
}

pub(super) fn sets_text(sets: &[ElementSet]) -> Vec<String> {
    sets.iter().map(|s| s.to_string()).collect()
}
