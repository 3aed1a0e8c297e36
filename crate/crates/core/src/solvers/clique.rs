//! Bitset branch-and-bound over compatibility graphs.
//!
//! Vertices are visited in ascending index order and a vertex is always tried
//! before it is skipped, so the search tree is walked in lexicographic order of
//! sorted index sequences. Recording only strict improvements therefore yields
//! the lexicographically least optimum.

use std::ops::ControlFlow;

use crate::bits::BitRow;
use crate::family::{t_intersects, ElementSet, SetFamily};

/// Objective over cliques whose vertices are split into parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Objective {
    /// Clique size.
    Sum,
    /// Product of the per-part vertex counts.
    Product,
}

pub(crate) struct CompatGraph {
    adj: Vec<BitRow>,
    part: Vec<usize>,
    part_rows: Vec<BitRow>,
}

impl CompatGraph {
    /// One part; `u ~ v` iff the sets `t`-intersect. Callers drop sets smaller than `t`.
    pub fn intersecting(members: &[ElementSet], t: usize) -> Self {
        let n = members.len();
        let mut adj = vec![BitRow::zeros(n); n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate().skip(i + 1) {
                if t_intersects(a, b, t) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
        CompatGraph {
            adj,
            part: vec![0; n],
            part_rows: vec![BitRow::ones(n)],
        }
    }

    /// Disjoint union of the families; same-part vertices are always adjacent,
    /// vertices in different parts are adjacent iff their sets `t`-intersect.
    pub fn cross(families: &[SetFamily], t: usize) -> Self {
        let vertices: Vec<(usize, ElementSet)> = families
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.iter().map(move |&s| (i, s)))
            .collect();
        let n = vertices.len();
        let mut adj = vec![BitRow::zeros(n); n];
        let mut part_rows = vec![BitRow::zeros(n); families.len()];
        for (u, &(pu, a)) in vertices.iter().enumerate() {
            part_rows[pu].set(u);
            for (v, &(pv, b)) in vertices.iter().enumerate().skip(u + 1) {
                if pu == pv || t_intersects(a, b, t) {
                    adj[u].set(v);
                    adj[v].set(u);
                }
            }
        }
        CompatGraph {
            adj,
            part: vertices.iter().map(|&(p, _)| p).collect(),
            part_rows,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn parts(&self) -> usize {
        self.part_rows.len()
    }

    /// Greedy colouring of `p` in index order; the colour count bounds any clique inside `p`.
    fn colour_bound(&self, p: &BitRow) -> usize {
        let mut uncoloured = p.clone();
        let mut colours = 0;
        while !uncoloured.is_empty() {
            colours += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                class.clear(v);
                uncoloured.clear(v);
                class.and_not_assign(&self.adj[v]);
            }
        }
        colours
    }

    fn value(&self, objective: Objective, counts: &[usize]) -> u128 {
        match objective {
            Objective::Sum => counts.iter().map(|&c| c as u128).sum(),
            Objective::Product => counts.iter().map(|&c| c as u128).product(),
        }
    }

    /// Upper bound on the objective over all cliques extending the current one by
    /// vertices of `p`.
    fn bound(&self, objective: Objective, counts: &[usize], p: &BitRow) -> u128 {
        let budget = self.colour_bound(p);
        match objective {
            Objective::Sum => (counts.iter().sum::<usize>() + budget) as u128,
            Objective::Product => {
                // Water-filling: raise the smallest factor that still has candidates.
                let mut vals: Vec<usize> = counts.to_vec();
                let mut room: Vec<usize> = self.part_rows.iter().map(|row| row.and(p).count()).collect();
                for _ in 0..budget {
                    let pick = (0..vals.len())
                        .filter(|&i| room[i] > 0)
                        .min_by_key(|&i| vals[i]);
                    match pick {
                        Some(i) => {
                            vals[i] += 1;
                            room[i] -= 1;
                        }
                        None => break,
                    }
                }
                vals.iter().map(|&c| c as u128).product()
            }
        }
    }
}

struct Search<'g> {
    g: &'g CompatGraph,
    objective: Objective,
    clique: Vec<usize>,
    counts: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g CompatGraph, objective: Objective) -> Self {
        Search {
            g,
            objective,
            clique: Vec::new(),
            counts: vec![0; g.parts()],
        }
    }

    fn push(&mut self, v: usize) {
        self.clique.push(v);
        self.counts[self.g.part[v]] += 1;
    }

    fn pop(&mut self) {
        let v = self.clique.pop().expect("non-empty clique");
        self.counts[self.g.part[v]] -= 1;
    }

    fn best(&mut self, p: BitRow, best: &mut (u128, Vec<usize>)) {
        let value = self.g.value(self.objective, &self.counts);
        if value > best.0 {
            *best = (value, self.clique.clone());
        }
        let mut p = p;
        while let Some(v) = p.first() {
            if self.g.bound(self.objective, &self.counts, &p) <= best.0 {
                return;
            }
            p.clear(v);
            self.push(v);
            self.best(p.and(&self.g.adj[v]), best);
            self.pop();
        }
    }

    fn equal<F>(&mut self, p: BitRow, target: u128, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.g.value(self.objective, &self.counts) == target {
            visit(&self.clique)?;
            if target > 0 {
                // Every extension strictly increases a positive sum or product.
                return ControlFlow::Continue(());
            }
        }
        let mut p = p;
        while let Some(v) = p.first() {
            if self.g.bound(self.objective, &self.counts, &p) < target {
                return ControlFlow::Continue(());
            }
            p.clear(v);
            self.push(v);
            let next = p.and(&self.g.adj[v]);
            let flow = self.equal(next, target, visit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Optimal value and the lexicographically least optimal clique (sorted indices).
pub(crate) fn search_best(g: &CompatGraph, objective: Objective) -> (u128, Vec<usize>) {
    let mut best = (0u128, Vec::new());
    Search::new(g, objective).best(BitRow::ones(g.vertex_count()), &mut best);
    best
}

/// Visits every clique whose value equals `target`, in lexicographic order.
pub(crate) fn search_equal<F>(g: &CompatGraph, objective: Objective, target: u128, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    Search::new(g, objective).equal(BitRow::ones(g.vertex_count()), target, &mut visit)
}
