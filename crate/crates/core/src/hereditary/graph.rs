use std::fmt::Write as _;

use super::HereditaryFamily;
use crate::error::{Error, Result};
use crate::family::{ElementSet, GroundSize};

/// A simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ground: GroundSize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 0-based edges; loops and repeated edges are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let ground = GroundSize::new(n)?;
        let mut adjacency = vec![0u64; n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::malformed(format!(
                    "edge {} {} outside [1, {n}]",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::malformed(format!("loop at vertex {}", u + 1)));
            }
            if adjacency[u] >> v & 1 == 1 {
                return Err(Error::malformed(format!("duplicate edge {} {}", u + 1, v + 1)));
            }
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph {
            ground,
            edges: list,
            adjacency,
        })
    }

    /// Same as [`Graph::new`] with 1-based vertex ids.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(Error::malformed("vertex ids are 1-based"));
        }
        Self::new(n, edges.iter().map(|&(u, v)| (u - 1, v - 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.get()
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    /// Edges as sorted 0-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adjacency[v]
    }

    /// Reads `graph N` followed by one `u v` edge per line (1-based).
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            let Some(size) = n else {
                match words.as_slice() {
                    ["graph", w] => {
                        let size: usize = w
                            .parse()
                            .map_err(|_| parse_err(format!("`{w}` is not a vertex count")))?;
                        GroundSize::new(size).map_err(|e| parse_err(e.to_string()))?;
                        n = Some(size);
                        continue;
                    }
                    _ => return Err(parse_err("expected `graph N` header".into())),
                }
            };
            let [u, v] = words.as_slice() else {
                return Err(parse_err("an edge line holds exactly two vertex ids".into()));
            };
            let id = |w: &str| -> Result<usize> {
                match w.parse::<usize>() {
                    Ok(x) if (1..=size).contains(&x) => Ok(x - 1),
                    _ => Err(parse_err(format!("`{w}` is not a vertex in [1, {size}]"))),
                }
            };
            edges.push((id(u)?, id(v)?));
        }
        let n = n.ok_or_else(|| Error::malformed("missing `graph N` header"))?;
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.ground);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }
}

/// `I_G`: the downset of independent sets, built from the maximal ones.
pub fn independence_family(g: &Graph) -> HereditaryFamily {
    let full = g.ground.full_mask();
    // Maximal independent sets are the maximal cliques of the complement.
    let complement: Vec<u64> = (0..g.vertex_count())
        .map(|v| full & !g.adjacency[v] & !(1u64 << v))
        .collect();
    let mut bases = Vec::new();
    bron_kerbosch(&complement, 0, full, 0, &mut bases);
    HereditaryFamily::from_bases(g.ground, bases.into_iter().map(ElementSet::from_bits))
        .expect("every graph has a maximal independent set")
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = {
        let mut cand = p | x;
        let mut best = (0u32, cand.trailing_zeros() as usize);
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let c = (p & adj[u]).count_ones();
            if c > best.0 {
                best = (c, u);
            }
        }
        best.1
    };
    let mut todo = p & !adj[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::test_util::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_one_based(3, &[(1, 2)]).unwrap();
        let h = independence_family(&g);
        assert_eq!(h.bases(), &fam(3, &[&[1, 3], &[2, 3]]));
        assert_eq!(h.mu(), 2);
    }

    #[test]
    fn edgeless_is_power_set() {
        let g = Graph::new(3, []).unwrap();
        let h = independence_family(&g);
        assert_eq!(h, HereditaryFamily::power_set(ground(3)));
        assert_eq!(h.mu(), 3);
    }

    #[test]
    fn triangle() {
        let g = Graph::from_one_based(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let h = independence_family(&g);
        assert_eq!(h.bases(), &fam(3, &[&[1], &[2], &[3]]));
        assert_eq!(h.mu(), 1);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::from_one_based(3, &[(1, 1)]).is_err());
        assert!(Graph::from_one_based(3, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::from_one_based(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::parse_text("# path\ngraph 4\n1 2\n3 2\n\n3 4\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        assert!(matches!(
            Graph::parse_text("graph 3\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Graph::parse_text("ground 3\n").is_err());
    }

    fn independent_by_brute_force(g: &Graph) -> Vec<u64> {
        let n = g.vertex_count();
        (0u64..1 << n)
            .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || g.neighbours(v) & s == 0))
            .collect()
    }

    proptest! {
        #[test]
        fn members_are_exactly_independent_sets(n in 1usize..=7, raw in prop::collection::vec((0usize..7, 0usize..7), 0..12)) {
            let mut seen = std::collections::BTreeSet::new();
            let edges: Vec<(usize, usize)> = raw
                .into_iter()
                .filter(|&(u, v)| u < n && v < n && u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .filter(|&e| seen.insert(e))
                .collect();
            let g = Graph::new(n, edges.clone()).unwrap();
            let h = independence_family(&g);
            let mut got: Vec<u64> = h.members().iter().map(|s| s.bits()).collect();
            got.sort_unstable();
            prop_assert_eq!(got, independent_by_brute_force(&g));
        }
    }
}
