use std::ops::ControlFlow;

use serde::Serialize;

use super::clique::{search_best, search_equal, CompatGraph, Objective};
use crate::error::{Error, Result};
use crate::family::{ElementSet, SetFamily};
use crate::hereditary::{HereditaryFamily, LevelSelector};

/// Largest `t`-intersecting subfamily: its size and the lexicographically
/// least optimum in canonical order.
pub fn max_t_intersecting(f: &SetFamily, t: usize) -> (usize, SetFamily) {
    let (eligible, graph) = intersection_graph(f, t);
    let (size, clique) = search_best(&graph, Objective::Sum);
    let witness = SetFamily::new(f.ground(), clique.iter().map(|&i| eligible[i]))
        .expect("members fit the ground set");
    (size as usize, witness)
}

fn intersection_graph(f: &SetFamily, t: usize) -> (Vec<ElementSet>, CompatGraph) {
    // A member smaller than t cannot t-intersect itself.
    let eligible: Vec<ElementSet> = f.iter().copied().filter(|s| s.len() >= t).collect();
    let graph = CompatGraph::intersecting(&eligible, t);
    (eligible, graph)
}

/// Star sizes `|F⟨T⟩|` over a set of candidate centers, with the largest ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCatalog {
    pub t: usize,
    /// Every candidate center with its star size, in canonical order.
    pub centers: Vec<(ElementSet, usize)>,
    /// Size of a largest star; 0 when there are no centers.
    pub best: usize,
    /// The centers attaining `best` (the set `𝒯`).
    pub best_centers: Vec<ElementSet>,
}

impl StarCatalog {
    /// Catalog of `f` over the given centers.
    pub fn for_family(f: &SetFamily, centers: &SetFamily, t: usize) -> Self {
        let sized: Vec<(ElementSet, usize)> = centers
            .iter()
            .map(|&c| (c, f.iter().filter(|s| c.is_subset_of(**s)).count()))
            .collect();
        let best = sized.iter().map(|&(_, n)| n).max().unwrap_or(0);
        let best_centers = sized.iter().filter(|&&(_, n)| n == best).map(|&(c, _)| c).collect();
        StarCatalog {
            t,
            centers: sized,
            best,
            best_centers,
        }
    }

    /// Catalog over every `t`-set contained in a member of `f`; other `t`-sets have empty stars.
    pub fn of(f: &SetFamily, t: usize) -> Self {
        let centers = SetFamily::new(
            f.ground(),
            f.iter()
                .filter(|s| s.len() >= t)
                .flat_map(|s| crate::combinatorics::SubsetsOfSize::new(s.bits(), t))
                .map(ElementSet::from_bits),
        )
        .expect("subsets of members fit");
        Self::for_family(f, &centers, t)
    }

    pub fn size_of(&self, center: ElementSet) -> Option<usize> {
        self.centers
            .binary_search_by(|(c, _)| c.cmp(&center))
            .ok()
            .map(|i| self.centers[i].1)
    }

    pub fn is_best(&self, center: ElementSet) -> bool {
        self.best_centers.binary_search(&center).is_ok()
    }
}

/// Catalog of `⋃_{s ∈ S} H^{(s)}` over the centers `H^{(t)}`.
pub fn star_catalog(h: &HereditaryFamily, selector: &LevelSelector, t: usize) -> Result<StarCatalog> {
    if t > selector.min_level() {
        return Err(Error::precondition(format!(
            "t = {t} exceeds the smallest selected level {}",
            selector.min_level()
        )));
    }
    Ok(StarCatalog::for_family(
        &h.expand_levels(selector),
        h.level(t),
        t,
    ))
}

/// Some largest `t`-intersecting subfamily of `f` is a `t`-star.
pub fn has_t_star_property(f: &SetFamily, t: usize, catalog: &StarCatalog) -> bool {
    max_t_intersecting(f, t).0 == catalog.best
}

/// Every largest `t`-intersecting subfamily of `f` is a `t`-star.
///
/// With no non-empty `t`-intersecting subfamily at all the property holds vacuously.
pub fn has_strict_t_star_property(f: &SetFamily, t: usize, catalog: &StarCatalog) -> bool {
    let (size, _) = max_t_intersecting(f, t);
    size == 0 || (size == catalog.best && largest_non_star(f, t).is_none())
}

/// The first largest `t`-intersecting subfamily (in search order) that is not
/// a `t`-star, i.e. has fewer than `t` common elements.
pub fn largest_non_star(f: &SetFamily, t: usize) -> Option<SetFamily> {
    let (eligible, graph) = intersection_graph(f, t);
    let (size, _) = search_best(&graph, Objective::Sum);
    if size == 0 {
        return None;
    }
    let mut found = None;
    let _ = search_equal(&graph, Objective::Sum, size, |clique| {
        let common = clique
            .iter()
            .map(|&i| eligible[i])
            .reduce(ElementSet::intersection)
            .unwrap_or(ElementSet::EMPTY);
        if common.len() < t {
            found = Some(clique.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map(|clique| {
        SetFamily::new(f.ground(), clique.into_iter().map(|i| eligible[i])).expect("members fit the ground set")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{all_subsets_of_size, test_util::*};

    /// Largest t-intersecting subfamily by enumerating all subfamilies.
    fn brute_max(f: &SetFamily, t: usize) -> usize {
        let m = f.members();
        (0u64..1 << m.len())
            .filter(|mask| {
                let sub = SetFamily::new(f.ground(), (0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i])).unwrap();
                sub.is_t_intersecting(t)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn max_t_intersecting_examples() {
        let f = all_subsets_of_size(ground(4), 2);
        let (size, w) = max_t_intersecting(&f, 1);
        assert_eq!(size, 3);
        assert_eq!(size, brute_max(&f, 1));
        // {12,13,23} precedes {12,13,14} canonically.
        assert_eq!(w, fam(4, &[&[1, 2], &[1, 3], &[2, 3]]));
        let f = all_subsets_of_size(ground(4), 3);
        assert_eq!(max_t_intersecting(&f, 2), (4, f.clone()));
        assert_eq!(brute_max(&f, 2), 4);
        assert_eq!(max_t_intersecting(&SetFamily::empty(ground(3)), 1).0, 0);
    }

    #[test]
    fn small_members_are_excluded() {
        let f = fam(3, &[&[1], &[1, 2]]);
        assert_eq!(max_t_intersecting(&f, 2), (1, fam(3, &[&[1, 2]])));
    }

    #[test]
    fn catalog_examples() {
        let p6 = HereditaryFamily::power_set(ground(6));
        let c = star_catalog(&p6, &LevelSelector::single(2), 1).unwrap();
        assert_eq!(c.best, 5);
        assert_eq!(c.best_centers.len(), 6);
        assert!(c.centers.iter().all(|&(_, n)| n == 5));

        let h = HereditaryFamily::from_bases(ground(5), [set(&[1, 2, 3]), set(&[4, 5])]).unwrap();
        let c = star_catalog(&h, &LevelSelector::single(2), 1).unwrap();
        assert_eq!(c.size_of(set(&[1])), Some(2));
        assert_eq!(c.size_of(set(&[4])), Some(1));
        assert_eq!(c.best_centers, vec![set(&[1]), set(&[2]), set(&[3])]);

        let p4 = HereditaryFamily::power_set(ground(4));
        let c = star_catalog(&p4, &LevelSelector::new([2, 3]).unwrap(), 1).unwrap();
        assert!(c.centers.iter().all(|&(_, n)| n == 6));

        assert!(star_catalog(&p4, &LevelSelector::single(1), 2).is_err());
    }

    #[test]
    fn star_property_examples() {
        let f = all_subsets_of_size(ground(4), 2);
        let c = StarCatalog::of(&f, 1);
        assert!(has_t_star_property(&f, 1, &c));
        assert!(!has_strict_t_star_property(&f, 1, &c));
        assert_eq!(largest_non_star(&f, 1).unwrap().len(), 3);

        let f = all_subsets_of_size(ground(5), 2);
        let c = StarCatalog::of(&f, 1);
        assert!(has_t_star_property(&f, 1, &c));
        assert!(has_strict_t_star_property(&f, 1, &c));
        assert_eq!(largest_non_star(&f, 1), None);

        let f = all_subsets_of_size(ground(4), 3);
        let c = StarCatalog::of(&f, 2);
        assert!(!has_t_star_property(&f, 2, &c));
        assert!(!has_strict_t_star_property(&f, 2, &c));
    }

    #[test]
    fn strict_property_is_vacuous_without_candidates() {
        let f = fam(3, &[&[1]]);
        let c = StarCatalog::of(&f, 2);
        assert!(has_strict_t_star_property(&f, 2, &c));
        assert!(has_t_star_property(&f, 2, &c));
    }
}
