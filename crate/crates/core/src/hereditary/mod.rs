//! Hereditary families (downsets) represented by their bases.

mod generate;
mod graph;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use generate::{all_downsets, enumerate_downsets, random_hereditary, MAX_EXHAUSTIVE_GROUND};
pub use graph::{independence_family, Graph};

use crate::combinatorics::SubsetsOfSize;
use crate::error::{Error, Result};
use crate::family::{parse_family_lines, push_set_line, ElementSet, GroundSize, SetFamily};

/// A downset `2^{X_1} ∪ … ∪ 2^{X_k}` stored as the antichain of its bases.
///
/// Levels are expanded on demand and cached; each cache slot is written at
/// most once, so shared readers see either nothing or a complete level.
#[derive(Clone)]
pub struct HereditaryFamily {
    bases: SetFamily,
    mu: usize,
    levels: Vec<OnceLock<SetFamily>>,
    empty: SetFamily,
}

impl HereditaryFamily {
    /// Reduces `sets` to its maximal members. The base `∅` alone gives `{∅}` with `μ = 0`.
    pub fn from_bases<I: IntoIterator<Item = ElementSet>>(ground: GroundSize, sets: I) -> Result<Self> {
        let all = SetFamily::new(ground, sets)?;
        if all.is_empty() {
            return Err(Error::malformed("a hereditary family needs at least one base"));
        }
        let bases = all.bases();
        let mu = bases.iter().map(|b| b.len()).min().unwrap_or(0);
        Ok(HereditaryFamily {
            bases,
            mu,
            levels: (0..=ground.get()).map(|_| OnceLock::new()).collect(),
            empty: SetFamily::empty(ground),
        })
    }

    /// `2^{[n]}`.
    pub fn power_set(ground: GroundSize) -> Self {
        Self::from_bases(ground, [ground.full_set()]).expect("full set fits")
    }

    pub fn ground(&self) -> GroundSize {
        self.bases.ground()
    }

    pub fn bases(&self) -> &SetFamily {
        &self.bases
    }

    /// Size of a smallest base.
    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.bases.iter().any(|&b| set.is_subset_of(b))
    }

    /// `H^{(r)}`, expanded from the bases and cached.
    pub fn level(&self, r: usize) -> &SetFamily {
        match self.levels.get(r) {
            Some(slot) => slot.get_or_init(|| self.expand_level(r)),
            None => &self.empty,
        }
    }

    fn expand_level(&self, r: usize) -> SetFamily {
        let mut members: Vec<ElementSet> = Vec::new();
        for base in self.bases.iter().filter(|b| b.len() >= r) {
            members.extend(SubsetsOfSize::new(base.bits(), r).map(ElementSet::from_bits));
        }
        members.sort_unstable();
        members.dedup();
        SetFamily::from_canonical(self.ground(), members)
    }

    /// `⋃_{s ∈ S} H^{(s)}` in canonical order.
    pub fn expand_levels(&self, selector: &LevelSelector) -> SetFamily {
        // Canonical order sorts by size first, so ascending levels concatenate.
        let members = selector
            .levels()
            .iter()
            .flat_map(|&s| self.level(s).members().iter().copied())
            .collect();
        SetFamily::from_canonical(self.ground(), members)
    }

    /// `H^{(≤ r)}`.
    pub fn level_at_most(&self, r: usize) -> SetFamily {
        let top = r.min(self.ground().get());
        self.expand_levels(&LevelSelector::range(0, top))
    }

    /// Every member of the downset.
    pub fn members(&self) -> SetFamily {
        self.level_at_most(self.bases.iter().map(|b| b.len()).max().unwrap_or(0))
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        let top = self.bases.iter().map(|b| b.len()).max().unwrap_or(0);
        (0..=top).map(|r| self.level(r).len()).collect()
    }

    /// Short single-line description, e.g. `n=4 bases={1,2,3},{3,4}`.
    pub fn describe(&self) -> String {
        let bases: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        format!("n={} bases={}", self.ground(), bases.join(","))
    }

    /// File form: `ground N`, then one base per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("ground {}\n", self.ground());
        for b in &self.bases {
            push_set_line(&mut out, *b);
        }
        out
    }

    /// Reads the file form; set lines may carry a leading `base` keyword.
    pub fn parse_text(text: &str) -> Result<Self> {
        let (ground, sets) = parse_family_lines(text, "ground", true)?;
        Self::from_bases(ground, sets)
    }
}

impl PartialEq for HereditaryFamily {
    fn eq(&self, other: &Self) -> bool {
        self.bases == other.bases
    }
}

impl Eq for HereditaryFamily {}

impl fmt::Debug for HereditaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HereditaryFamily")
            .field("bases", &self.bases)
            .field("mu", &self.mu)
            .finish()
    }
}

/// A non-empty set of level indices `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LevelSelector {
    levels: Vec<usize>,
}

impl LevelSelector {
    pub fn new<I: IntoIterator<Item = usize>>(levels: I) -> Result<Self> {
        let mut levels: Vec<usize> = levels.into_iter().collect();
        levels.sort_unstable();
        levels.dedup();
        if levels.is_empty() {
            return Err(Error::malformed("a level selector must be non-empty"));
        }
        Ok(LevelSelector { levels })
    }

    pub fn single(s: usize) -> Self {
        LevelSelector { levels: vec![s] }
    }

    /// `[lo, hi]`; callers guarantee `lo <= hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        LevelSelector {
            levels: (lo..=hi).collect(),
        }
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn min_level(&self) -> usize {
        self.levels[0]
    }

    /// `r = max S`.
    pub fn max_level(&self) -> usize {
        *self.levels.last().expect("non-empty")
    }

    /// `S ⊆ [lo, hi]`.
    pub fn is_within(&self, lo: usize, hi: usize) -> bool {
        self.min_level() >= lo && self.max_level() <= hi
    }

    /// Every non-empty selector contained in `[lo, hi]`.
    pub fn all_within(lo: usize, hi: usize) -> Vec<LevelSelector> {
        if lo > hi {
            return Vec::new();
        }
        let width = hi - lo + 1;
        (1u64..1 << width)
            .map(|m| LevelSelector {
                levels: (0..width).filter(|i| m >> i & 1 == 1).map(|i| lo + i).collect(),
            })
            .collect()
    }
}

impl TryFrom<Vec<usize>> for LevelSelector {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        LevelSelector::new(v)
    }
}

impl From<LevelSelector> for Vec<usize> {
    fn from(s: LevelSelector) -> Self {
        s.levels
    }
}

impl fmt::Display for LevelSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Downward closed, and `∅ ∈ f` whenever `f` is non-empty.
pub fn is_hereditary(f: &SetFamily) -> bool {
    // Closure under single-element deletion implies closure under subsets.
    f.iter()
        .all(|&s| s.elements().all(|e| f.contains(s.without(e))))
}

/// Maximal members of `f`.
pub fn bases_of(f: &SetFamily) -> SetFamily {
    f.bases()
}

/// `{F \ X : F ∈ f⟨X⟩}`; requires a non-empty star.
pub fn quotient(f: &SetFamily, x: ElementSet) -> Result<SetFamily> {
    let star = f.star(x);
    if star.is_empty() {
        return Err(Error::precondition(format!("the star of {x} is empty")));
    }
    SetFamily::new(f.ground(), star.iter().map(|s| s.difference(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::family::test_util::*;

    #[test]
    fn from_bases_examples() {
        let h = HereditaryFamily::from_bases(ground(4), [set(&[1, 2, 3]), set(&[3, 4])]).unwrap();
        assert_eq!(h.bases().len(), 2);
        assert_eq!(h.mu(), 2);
        let h = HereditaryFamily::from_bases(ground(4), [set(&[1, 2, 3]), set(&[1, 2])]).unwrap();
        assert_eq!(h.bases(), &fam(4, &[&[1, 2, 3]]));
        assert_eq!(h.mu(), 3);
        let p = HereditaryFamily::power_set(ground(7));
        assert_eq!(p.mu(), 7);
        assert!(HereditaryFamily::from_bases(ground(3), []).is_err());
    }

    #[test]
    fn empty_base_gives_trivial_downset() {
        let h = HereditaryFamily::from_bases(ground(3), [ElementSet::EMPTY]).unwrap();
        assert_eq!(h.mu(), 0);
        assert_eq!(h.members(), fam(3, &[&[]]));
    }

    #[test]
    fn is_hereditary_examples() {
        let f = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        assert!(is_hereditary(&f));
        assert_eq!(bases_of(&f), fam(2, &[&[1, 2]]));
        assert!(!is_hereditary(&fam(2, &[&[1, 2]])));
        let g = fam(3, &[&[], &[1], &[3], &[1, 3], &[2]]);
        assert!(is_hereditary(&g));
        assert_eq!(bases_of(&g), fam(3, &[&[2], &[1, 3]]));
        assert!(is_hereditary(&fam(3, &[])));
    }

    #[test]
    fn expand_levels_examples() {
        let p = HereditaryFamily::power_set(ground(4));
        assert_eq!(p.expand_levels(&LevelSelector::single(2)).len(), 6);
        let h = HereditaryFamily::from_bases(ground(4), [set(&[1, 2, 3]), set(&[3, 4])]).unwrap();
        assert_eq!(
            h.expand_levels(&LevelSelector::single(2)),
            fam(4, &[&[1, 2], &[1, 3], &[2, 3], &[3, 4]])
        );
        assert_eq!(h.expand_levels(&LevelSelector::single(0)), fam(4, &[&[]]));
        assert!(h.level(9).is_empty());
    }

    #[test]
    fn power_set_level_sizes() {
        let p = HereditaryFamily::power_set(ground(9));
        for s in 0..=9 {
            assert_eq!(p.level(s).len() as u128, binomial(9, s as u64));
        }
    }

    #[test]
    fn bases_round_trip() {
        let h = HereditaryFamily::from_bases(ground(5), [set(&[1, 2, 3]), set(&[3, 4]), set(&[5])]).unwrap();
        let all = h.members();
        assert!(is_hereditary(&all));
        let again = HereditaryFamily::from_bases(ground(5), bases_of(&all).members().to_vec()).unwrap();
        assert_eq!(again.members(), all);
        assert_eq!(again, h);
        assert!(all.iter().all(|&s| h.contains(s)));
    }

    #[test]
    fn quotient_examples() {
        let p3 = HereditaryFamily::power_set(ground(3)).members();
        let q = quotient(&p3, set(&[1])).unwrap();
        let expected = HereditaryFamily::from_bases(ground(3), [set(&[2, 3])]).unwrap().members();
        assert_eq!(q, expected);
        let q = quotient(&fam(3, &[&[1, 2], &[1, 3], &[2, 3]]), set(&[1])).unwrap();
        assert_eq!(q, fam(3, &[&[2], &[3]]));
        assert!(matches!(
            quotient(&fam(5, &[&[1, 2], &[3, 4]]), set(&[5])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let h = HereditaryFamily::from_bases(ground(5), [set(&[1, 2, 3]), set(&[3, 4])]).unwrap();
        assert_eq!(HereditaryFamily::parse_text(&h.to_text()).unwrap(), h);
        let keyworded = "ground 5\nbase 1 2 3\nbase 3 4\n";
        assert_eq!(HereditaryFamily::parse_text(keyworded).unwrap(), h);
    }

    #[test]
    fn selector_basics() {
        let s = LevelSelector::new([3, 1, 3]).unwrap();
        assert_eq!(s.levels(), &[1, 3]);
        assert_eq!((s.min_level(), s.max_level()), (1, 3));
        assert!(LevelSelector::new([]).is_err());
        assert_eq!(LevelSelector::all_within(1, 3).len(), 7);
        assert_eq!(s.to_string(), "{1,3}");
    }
}
