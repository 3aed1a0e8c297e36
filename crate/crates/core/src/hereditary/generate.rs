use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HereditaryFamily;
use crate::combinatorics::{checked_binomial, SubsetsOfSize};
use crate::error::{Error, Result};
use crate::family::{ElementSet, GroundSize};

/// Largest ground set for exhaustive downset enumeration: 7580 non-empty
/// downsets at 5, but 7 828 353 at 6.
pub const MAX_EXHAUSTIVE_GROUND: usize = 5;

/// Visits every non-empty downset on `[n]` exactly once, returning the count.
///
/// Downsets are produced from the non-empty antichains of `2^{[n]}`, found by
/// depth-first search over subsets in canonical order.
pub fn enumerate_downsets<F>(n: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&HereditaryFamily),
{
    let ground = GroundSize::new(n)?;
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(Error::SizeLimit {
            limit: "exhaustive downset enumeration ground size (sample with random_hereditary instead)",
            value: n,
            cap: MAX_EXHAUSTIVE_GROUND,
        });
    }
    let mut elements: Vec<ElementSet> = (0..1u64 << n).map(ElementSet::from_bits).collect();
    elements.sort_unstable();
    let comparable: Vec<u64> = elements
        .iter()
        .map(|&a| {
            elements.iter().enumerate().fold(0u64, |acc, (j, &b)| {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    acc | 1u64 << j
                } else {
                    acc
                }
            })
        })
        .collect();

    let mut count = 0u64;
    let mut chosen = Vec::with_capacity(elements.len());
    let mut emit = |chosen: &[ElementSet]| {
        let h = HereditaryFamily::from_bases(ground, chosen.iter().copied())
            .expect("non-empty antichain");
        visit(&h);
        count += 1;
    };
    antichains(&elements, &comparable, 0, 0, &mut chosen, &mut emit);
    Ok(count)
}

fn antichains(
    elements: &[ElementSet],
    comparable: &[u64],
    start: usize,
    blocked: u64,
    chosen: &mut Vec<ElementSet>,
    emit: &mut impl FnMut(&[ElementSet]),
) {
    for i in start..elements.len() {
        if blocked >> i & 1 == 1 {
            continue;
        }
        chosen.push(elements[i]);
        emit(chosen);
        antichains(elements, comparable, i + 1, blocked | comparable[i], chosen, emit);
        chosen.pop();
    }
}

/// Every non-empty downset on `[n]`, in enumeration order.
pub fn all_downsets(n: usize) -> Result<Vec<HereditaryFamily>> {
    let mut out = Vec::new();
    enumerate_downsets(n, |h| out.push(h.clone()))?;
    Ok(out)
}

const MAX_RANDOM_BASES: usize = 1 << 16;

/// Seeded random downset on `[n]` from `base_count` distinct bases whose sizes
/// lie in `[sizes.0, sizes.1]`; fewer bases are used when fewer candidates exist.
pub fn random_hereditary(
    n: usize,
    base_count: usize,
    sizes: (usize, usize),
    seed: u64,
) -> Result<HereditaryFamily> {
    let ground = GroundSize::new(n)?;
    let (lo, hi) = sizes;
    if lo > hi || hi > n {
        return Err(Error::malformed(format!(
            "base size range [{lo}, {hi}] is not within [0, {n}]"
        )));
    }
    if base_count == 0 || base_count > MAX_RANDOM_BASES {
        return Err(Error::malformed(format!(
            "base count {base_count} outside 1..={MAX_RANDOM_BASES}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let available: Option<u128> = (lo..=hi)
        .map(|s| checked_binomial(n as u64, s as u64))
        .try_fold(0u128, |acc, c| acc.checked_add(c?));

    let bases: Vec<ElementSet> = match available {
        Some(total) if total <= MAX_RANDOM_BASES as u128 => {
            let mut pool: Vec<ElementSet> = (lo..=hi)
                .flat_map(|s| SubsetsOfSize::new(ground.full_mask(), s))
                .map(ElementSet::from_bits)
                .collect();
            let take = base_count.min(pool.len());
            let (picked, _) = pool.partial_shuffle(&mut rng, take);
            picked.to_vec()
        }
        _ => {
            let mut picked = BTreeSet::new();
            let mut order: Vec<usize> = (0..n).collect();
            while picked.len() < base_count {
                let size = rng.gen_range(lo..=hi);
                let (chosen, _) = order.partial_shuffle(&mut rng, size);
                picked.insert(ElementSet::from_elements(chosen.iter().copied())?);
            }
            picked.into_iter().collect()
        }
    };
    HereditaryFamily::from_bases(ground, bases)
}
