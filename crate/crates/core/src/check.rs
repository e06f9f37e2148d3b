//! Deciding `(k,u)`-intersecting status.
//!
//! A family is `(k,u)`-intersecting exactly when its disjointness graph (edge
//! between two members meeting in fewer than `u` elements) has no `k`-clique.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::params::{check_arity, check_u};

/// Graph on member indices; `i ~ j` iff `|F_i ∩ F_j| < u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessGraph {
    adj: Vec<FixedBitSet>,
}

impl DisjointnessGraph {
    pub fn new(family: &SetFamily, u: usize) -> Result<Self> {
        check_u(u, family.uniformity())?;
        let members = family.members();
        let order = members.len();
        let mut adj = vec![FixedBitSet::with_capacity(order); order];
        for i in 0..order {
            for j in i + 1..order {
                if members[i].intersection_size(&members[j]) < u {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Ok(Self { adj })
    }

    /// Arbitrary simple graph; self-loops and duplicate edges are ignored.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(order); order];
        for (a, b) in edges {
            assert!(a < order && b < order, "edge ({a},{b}) out of range");
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        Self { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|a| self.adj[a].ones().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn full_mask(&self) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.order());
        m.insert_range(..);
        m
    }

    /// Smallest-last vertex order on the vertices of `mask`, and the degeneracy.
    pub fn degeneracy_order_in(&self, mask: &FixedBitSet) -> (Vec<usize>, usize) {
        let mut alive = mask.clone();
        let mut deg: Vec<usize> = (0..self.order())
            .map(|v| if alive.contains(v) { self.adj[v].intersection_count(&alive) } else { 0 })
            .collect();
        let mut removed = Vec::with_capacity(alive.count_ones(..));
        let mut degeneracy = 0;
        while let Some(v) = alive.ones().min_by_key(|&v| (deg[v], v)) {
            degeneracy = degeneracy.max(deg[v]);
            alive.remove(v);
            for w in self.adj[v].intersection(&alive) {
                deg[w] -= 1;
            }
            removed.push(v);
        }
        // the peeling order lists low-degree vertices first; searching in this
        // order keeps each vertex's set of later neighbours at most `degeneracy`
        (removed, degeneracy)
    }

    /// Whether the subgraph induced by `mask` contains a `k`-clique.
    pub fn has_clique_in(&self, mask: &FixedBitSet, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let size = mask.count_ones(..);
        if size < k {
            return false;
        }
        if k == 1 {
            return true;
        }
        let (order, degeneracy) = self.degeneracy_order_in(mask);
        if degeneracy + 1 < k {
            return false;
        }
        let mut later = mask.clone();
        let mut earlier = FixedBitSet::with_capacity(self.order());
        let mut best = 0;
        for v in order {
            later.remove(v);
            let mut p = self.adj[v].clone();
            p.intersect_with(&later);
            let mut x = self.adj[v].clone();
            x.intersect_with(&earlier);
            if self.pivot_search(1, p, x, k, &mut best) {
                return true;
            }
            earlier.insert(v);
        }
        false
    }

    pub fn has_clique(&self, k: usize) -> bool {
        self.has_clique_in(&self.full_mask(), k)
    }

    /// Size of the largest clique inside `mask`.
    pub fn clique_number_in(&self, mask: &FixedBitSet) -> usize {
        let (order, _) = self.degeneracy_order_in(mask);
        let mut later = mask.clone();
        let mut earlier = FixedBitSet::with_capacity(self.order());
        let mut best = 0;
        for v in order {
            later.remove(v);
            let mut p = self.adj[v].clone();
            p.intersect_with(&later);
            let mut x = self.adj[v].clone();
            x.intersect_with(&earlier);
            self.pivot_search(1, p, x, usize::MAX, &mut best);
            earlier.insert(v);
        }
        best
    }

    pub fn clique_number(&self) -> usize {
        self.clique_number_in(&self.full_mask())
    }

    /// Bron–Kerbosch with Tomita pivoting. Returns true as soon as a clique of
    /// size `target` is seen; `best` tracks the largest clique size reached.
    fn pivot_search(
        &self,
        size: usize,
        mut p: FixedBitSet,
        mut x: FixedBitSet,
        target: usize,
        best: &mut usize,
    ) -> bool {
        *best = (*best).max(size);
        if size >= target {
            return true;
        }
        let p_count = p.count_ones(..);
        // best < target here, so this also prunes branches that cannot reach target
        if p_count == 0 || size + p_count <= *best {
            return false;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&w| (self.adj[w].intersection_count(&p), std::cmp::Reverse(w)))
            .expect("p is nonempty");
        let branch: Vec<usize> = p.difference(&self.adj[pivot]).collect();
        for v in branch {
            let mut np = p.clone();
            np.intersect_with(&self.adj[v]);
            let mut nx = x.clone();
            nx.intersect_with(&self.adj[v]);
            if self.pivot_search(size + 1, np, nx, target, best) {
                return true;
            }
            p.remove(v);
            x.insert(v);
        }
        false
    }

    /// Lexicographically least `k`-clique (as an increasing index tuple) inside `mask`.
    pub fn least_clique_in(&self, mask: &FixedBitSet, k: usize) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        if !self.has_clique_in(mask, k) {
            return None;
        }
        let mut chosen = Vec::with_capacity(k);
        if self.lex_extend(mask, k, &mut chosen) {
            Some(chosen)
        } else {
            unreachable!("clique exists but lexicographic search found none")
        }
    }

    pub fn least_clique(&self, k: usize) -> Option<Vec<usize>> {
        self.least_clique_in(&self.full_mask(), k)
    }

    fn lex_extend(&self, cand: &FixedBitSet, need: usize, chosen: &mut Vec<usize>) -> bool {
        for v in cand.ones() {
            if need == 1 {
                chosen.push(v);
                return true;
            }
            let mut next = self.adj[v].clone();
            next.intersect_with(cand);
            next.remove_range(..v + 1);
            if next.count_ones(..) + 1 < need {
                continue;
            }
            // skip branches that provably contain no clique of the needed size
            if !self.has_clique_in(&next, need - 1) {
                continue;
            }
            chosen.push(v);
            if self.lex_extend(&next, need - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// `k` member indices, increasing, pairwise meeting in fewer than `u` elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub indices: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, idx) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

pub fn disjointness_graph(family: &SetFamily, u: usize) -> Result<DisjointnessGraph> {
    DisjointnessGraph::new(family, u)
}

/// True iff among any `k` distinct members some two meet in at least `u` elements.
pub fn is_intersecting(family: &SetFamily, k: usize, u: usize) -> Result<bool> {
    check_arity("k", k)?;
    check_u(u, family.uniformity())?;
    if family.len() < k {
        return Ok(true);
    }
    Ok(!DisjointnessGraph::new(family, u)?.has_clique(k))
}

/// Lexicographically least `k` pairwise-far members, if any exist.
pub fn find_witness(family: &SetFamily, k: usize, u: usize) -> Result<Option<Witness>> {
    check_arity("k", k)?;
    check_u(u, family.uniformity())?;
    if family.len() < k {
        return Ok(None);
    }
    let g = DisjointnessGraph::new(family, u)?;
    Ok(g.least_clique(k).map(|indices| Witness { indices }))
}

/// Outcome of checking a decomposition against a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Union of parts equals the family.
    pub covers: bool,
    /// No member index appears twice.
    pub disjoint: bool,
    /// Every part is `(ℓ,u)`-intersecting.
    pub parts_ok: bool,
    /// Part count does not exceed the supplied bound.
    pub within_bound: bool,
    pub part_count: usize,
    pub bound: u64,
    pub failing_part: Option<usize>,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.covers && self.parts_ok && self.within_bound
    }
}

/// Checks cover, per-part `(ℓ,u)` status and the part count against `bound`.
pub fn verify_decomposition(
    family: &SetFamily,
    decomposition: &Decomposition,
    ell: usize,
    u: usize,
    bound: u64,
) -> Result<VerificationReport> {
    let graph = DisjointnessGraph::new(family, u)?;
    verify_with_graph(&graph, decomposition, ell, bound)
}

pub(crate) fn verify_with_graph(
    graph: &DisjointnessGraph,
    decomposition: &Decomposition,
    ell: usize,
    bound: u64,
) -> Result<VerificationReport> {
    check_arity("ell", ell)?;
    let order = graph.order();
    let mut seen = FixedBitSet::with_capacity(order);
    let mut disjoint = true;
    let mut failing_part = None;
    let mut witness = None;
    for (pi, part) in decomposition.parts.iter().enumerate() {
        let mut mask = FixedBitSet::with_capacity(order);
        for &idx in part {
            if idx >= order {
                return Err(Error::Structure(format!(
                    "part {pi} references member {idx}, family has {order}"
                )));
            }
            if seen.put(idx) {
                disjoint = false;
            }
            mask.insert(idx);
        }
        if failing_part.is_none() {
            if let Some(indices) = graph.least_clique_in(&mask, ell) {
                failing_part = Some(pi);
                witness = Some(Witness { indices });
            }
        }
    }
    let part_count = decomposition.parts.len();
    Ok(VerificationReport {
        covers: seen.count_ones(..) == order,
        disjoint,
        parts_ok: failing_part.is_none(),
        within_bound: (part_count as u64) <= bound,
        part_count,
        bound,
        failing_part,
        witness,
    })
}
