//! Ground sets, element sets and canonical set families.
//!
//! Elements are stored 0-based as bits of a `u64`; every textual rendering is
//! 1-based, so the ground set `{0, .., n-1}` prints as `[n]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set; one machine word per set.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_GROUND).contains(&n) {
            Ok(GroundSize(n as u8))
        } else {
            Err(Error::malformed(format!(
                "ground size {n} outside 1..={MAX_GROUND}"
            )))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Mask with the low `n` bits set.
    pub fn full_mask(self) -> u64 {
        if self.0 as usize == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    pub fn full_set(self) -> ElementSet {
        ElementSet::from_bits(self.full_mask())
    }
}

impl fmt::Display for GroundSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of the ground set.
///
/// Ordered by size first, then by the numeric value of the bit mask, so that
/// a sorted family lists its levels as contiguous runs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    bits: u64,
}

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet { bits: 0 };

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet { bits }
    }

    /// Builds a set from 0-based element indices.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e >= MAX_GROUND {
                return Err(Error::malformed(format!("element index {e} is out of range")));
            }
            bits |= 1u64 << e;
        }
        Ok(ElementSet { bits })
    }

    /// Builds a set from 1-based element ids, as written in files and reports.
    pub fn from_one_based(elements: &[usize]) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::malformed("element ids are 1-based"));
        }
        Self::from_elements(elements.iter().map(|e| e - 1))
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_GROUND);
        ElementSet { bits: 1u64 << e }
    }

    pub const fn bits(self) -> u64 {
        self.bits
    }

    pub const fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.bits >> e & 1 == 1
    }

    pub const fn is_subset_of(self, other: ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub const fn union(self, other: ElementSet) -> ElementSet {
        ElementSet::from_bits(self.bits | other.bits)
    }

    pub const fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet::from_bits(self.bits & other.bits)
    }

    pub const fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet::from_bits(self.bits & !other.bits)
    }

    pub const fn intersection_len(self, other: ElementSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    pub fn with(self, e: usize) -> ElementSet {
        ElementSet::from_bits(self.bits | 1u64 << e)
    }

    pub fn without(self, e: usize) -> ElementSet {
        ElementSet::from_bits(self.bits & !(1u64 << e))
    }

    /// Whether the set fits in a ground set of size `n`.
    pub fn fits(self, ground: GroundSize) -> bool {
        self.bits & !ground.full_mask() == 0
    }

    /// 0-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// Largest 0-based element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.bits != 0).then(|| 63 - self.bits.leading_zeros() as usize)
    }
}

/// `|a ∩ b| ≥ t`.
pub fn t_intersects(a: ElementSet, b: ElementSet, t: usize) -> bool {
    a.intersection_len(b) >= t
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        f.write_str("}")
    }
}

/// Serialized as the ascending list of 1-based element ids.
impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements().map(|e| e + 1))
    }
}

/// A duplicate-free family of sets over one ground set, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Deduplicates and sorts `sets`; fails if a set does not fit in the ground set.
    pub fn new<I: IntoIterator<Item = ElementSet>>(ground: GroundSize, sets: I) -> Result<Self> {
        let mut members: Vec<ElementSet> = sets.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.fits(ground)) {
            return Err(Error::malformed(format!(
                "set {bad} does not fit in ground set of size {ground}"
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    pub fn empty(ground: GroundSize) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    /// Caller guarantees the members are canonical, fit, and are distinct.
    pub(crate) fn from_canonical(ground: GroundSize, members: Vec<ElementSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|s| s.fits(ground)));
        SetFamily { ground, members }
    }

    /// Filters a canonical family; order is preserved.
    fn filtered(&self, keep: impl Fn(ElementSet) -> bool) -> SetFamily {
        SetFamily {
            ground: self.ground,
            members: self.members.iter().copied().filter(|&s| keep(s)).collect(),
        }
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.members.binary_search(&set).ok()
    }

    pub fn contains(&self, set: ElementSet) -> bool {
        self.index_of(set).is_some()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }

    /// `F⟨T⟩`: the members containing `center`.
    pub fn star(&self, center: ElementSet) -> SetFamily {
        self.filtered(|s| center.is_subset_of(s))
    }

    fn level_range(&self, r: usize) -> std::ops::Range<usize> {
        let lo = self.members.partition_point(|s| s.len() < r);
        let hi = self.members.partition_point(|s| s.len() <= r);
        lo..hi
    }

    /// Members of size exactly `r`.
    pub fn level(&self, r: usize) -> SetFamily {
        SetFamily::from_canonical(self.ground, self.members[self.level_range(r)].to_vec())
    }

    /// Members of size at most `r`.
    pub fn level_at_most(&self, r: usize) -> SetFamily {
        let hi = self.members.partition_point(|s| s.len() <= r);
        SetFamily::from_canonical(self.ground, self.members[..hi].to_vec())
    }

    /// Every ordered pair, including a member with itself, shares `t` elements.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.members.iter().enumerate().all(|(i, &a)| {
            a.len() >= t && self.members[i + 1..].iter().all(|&b| t_intersects(a, b, t))
        })
    }

    /// `⋂ F`; the empty family has no common intersection.
    pub fn common_intersection(&self) -> Result<ElementSet> {
        let mut it = self.members.iter().copied();
        let first = it
            .next()
            .ok_or_else(|| Error::precondition("common intersection of an empty family"))?;
        Ok(it.fold(first, ElementSet::intersection))
    }

    /// `|⋂ F| ≥ t`; the empty family is neither trivial nor non-trivial.
    pub fn is_trivial_t_intersecting(&self, t: usize) -> Result<bool> {
        Ok(self.common_intersection()?.len() >= t)
    }

    pub fn union_of_members(&self) -> ElementSet {
        self.members
            .iter()
            .copied()
            .fold(ElementSet::EMPTY, ElementSet::union)
    }

    /// Members of `self` (the pool) that `t`-intersect every member of `f`.
    pub fn t_transversals(&self, f: &SetFamily, t: usize) -> SetFamily {
        self.filtered(|b| f.iter().all(|&a| t_intersects(a, b, t)))
    }

    /// Maximal members (the bases of the family).
    pub fn bases(&self) -> SetFamily {
        // A member can only be contained in a strictly larger one, which sorts later.
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|&(i, &a)| {
                !self.members[i + 1..]
                    .iter()
                    .any(|&b| b.len() > a.len() && a.is_subset_of(b))
            })
            .map(|(_, &a)| a)
            .collect();
        SetFamily::from_canonical(self.ground, members)
    }

    /// Size of a smallest base; `None` for the empty family.
    pub fn mu(&self) -> Option<usize> {
        self.bases().iter().map(|s| s.len()).min()
    }

    /// Merge of two families over the same ground set.
    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.ground != other.ground {
            return Err(Error::malformed("families over different ground sets"));
        }
        let mut members = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.members[i].cmp(&other.members[j]) {
                Ordering::Less => {
                    members.push(self.members[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    members.push(other.members[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    members.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        members.extend_from_slice(&self.members[i..]);
        members.extend_from_slice(&other.members[j..]);
        Ok(SetFamily::from_canonical(self.ground, members))
    }

    /// Sizes of the levels `0..=max size`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let top = self.members.last().map_or(0, |s| s.len());
        (0..=top).map(|r| self.level_range(r).len()).collect()
    }

    /// Canonical text rendering: `ground N`, then one set per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("ground {}\n", self.ground);
        for s in &self.members {
            push_set_line(&mut out, *s);
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<SetFamily> {
        let (ground, sets) = parse_family_lines(text, "ground", false)?;
        SetFamily::new(ground, sets)
    }
}

pub(crate) fn push_set_line(out: &mut String, s: ElementSet) {
    if s.is_empty() {
        out.push('-');
    } else {
        for (i, e) in s.elements().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&(e + 1).to_string());
        }
    }
    out.push('\n');
}

/// Shared reader for `ground N` headed files; `allow_base_keyword` accepts an
/// optional leading `base` token on set lines.
pub(crate) fn parse_family_lines(
    text: &str,
    header: &str,
    allow_base_keyword: bool,
) -> Result<(GroundSize, Vec<ElementSet>)> {
    let mut ground: Option<GroundSize> = None;
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let Some(n) = ground else {
            let mut words = line.split_whitespace();
            if words.next() != Some(header) {
                return Err(parse_err(format!("expected `{header} N` header")));
            }
            let n: usize = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| parse_err("missing ground size".into()))?;
            if words.next().is_some() {
                return Err(parse_err("trailing tokens after ground size".into()));
            }
            ground = Some(GroundSize::new(n).map_err(|e| parse_err(e.to_string()))?);
            continue;
        };
        let mut body = line;
        if allow_base_keyword {
            if let Some(rest) = body.strip_prefix("base") {
                if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                    body = rest.trim();
                }
            }
        }
        if body == "-" {
            sets.push(ElementSet::EMPTY);
            continue;
        }
        let mut bits = 0u64;
        let mut prev = 0usize;
        for word in body.split_whitespace() {
            let e: usize = word
                .parse()
                .map_err(|_| parse_err(format!("`{word}` is not an element id")))?;
            if e == 0 || e > n.get() {
                return Err(parse_err(format!("element {e} outside [1, {n}]")));
            }
            if e <= prev {
                return Err(parse_err("element ids must be strictly ascending".into()));
            }
            prev = e;
            bits |= 1u64 << (e - 1);
        }
        if bits == 0 {
            return Err(parse_err("empty line body; write `-` for the empty set".into()));
        }
        sets.push(ElementSet::from_bits(bits));
    }
    let ground = ground.ok_or_else(|| Error::malformed(format!("missing `{header} N` header")))?;
    Ok((ground, sets))
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.ground)?;
        f.debug_list().entries(&self.members).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as the list of members in canonical order.
impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.members)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Whether the families are pairwise cross-`t`-intersecting.
pub fn are_cross_t_intersecting(families: &[SetFamily], t: usize) -> Result<bool> {
    if families.len() < 2 {
        return Err(Error::precondition(
            "cross-intersection needs at least two families",
        ));
    }
    let ground = families[0].ground();
    if families.iter().any(|f| f.ground() != ground) {
        return Err(Error::malformed("families over different ground sets"));
    }
    for (i, fi) in families.iter().enumerate() {
        for fj in &families[i + 1..] {
            let ok = fi
                .iter()
                .all(|&a| fj.iter().all(|&b| t_intersects(a, b, t)));
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All `size`-subsets of the ground set, as a canonical family.
pub fn all_subsets_of_size(ground: GroundSize, size: usize) -> SetFamily {
    let members: Vec<ElementSet> = crate::combinatorics::SubsetsOfSize::new(ground.full_mask(), size)
        .map(ElementSet::from_bits)
        .collect();
    SetFamily::new(ground, members).expect("subsets fit the ground set")
}
