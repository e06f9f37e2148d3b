//! Exact minimum partitions into `(ℓ,u)`-intersecting parts.
//!
//! A part is `(ℓ,u)`-intersecting iff it induces no `ℓ`-clique in the
//! disjointness graph, so the minimum is the least number of `K_ℓ`-free
//! vertex classes. Covers and partitions give the same minimum because the
//! property is closed under taking subfamilies.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::check::DisjointnessGraph;
use crate::decompose::{pigeonhole_merge, scattered_kernel, trace_cover, Decomposition};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::params::check_arity;

/// Default member-count cap for the exact routines.
pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub minimum: usize,
    /// The lexicographically least optimal assignment, parts numbered by first member.
    pub optimal_parts: Decomposition,
    /// Search nodes visited.
    pub explored: u64,
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::Capacity {
            what: "family size",
            size,
            cap,
        });
    }
    Ok(())
}

/// Exact minimum with the default cap.
pub fn min_cover_exact(family: &SetFamily, ell: usize, u: usize) -> Result<OracleResult> {
    min_cover_exact_capped(family, ell, u, DEFAULT_ORACLE_CAP)
}

pub fn min_cover_exact_capped(
    family: &SetFamily,
    ell: usize,
    u: usize,
    cap: usize,
) -> Result<OracleResult> {
    check_arity("ell", ell)?;
    check_cap(family.len(), cap)?;
    let graph = DisjointnessGraph::new(family, u)?;
    let mut upper = family.len().div_ceil(ell - 1);
    if !family.is_empty() {
        let kernel = scattered_kernel(family, u)?;
        let cover = trace_cover(family, &kernel, u)?;
        upper = upper.min(pigeonhole_merge(&cover, ell)?.len());
    }
    Ok(min_partition(&graph, ell, upper))
}

/// Exact minimum number of `K_ℓ`-free classes of an arbitrary graph.
pub fn min_partition_graph(graph: &DisjointnessGraph, ell: usize, cap: usize) -> Result<OracleResult> {
    check_arity("ell", ell)?;
    check_cap(graph.order(), cap)?;
    Ok(min_partition(graph, ell, graph.order().div_ceil(ell - 1)))
}

/// `upper` must be achievable.
fn min_partition(graph: &DisjointnessGraph, ell: usize, upper: usize) -> OracleResult {
    let order = graph.order();
    if order == 0 {
        return OracleResult {
            minimum: 0,
            optimal_parts: Decomposition::default(),
            explored: 0,
        };
    }
    // a clique of size ω needs ⌈ω / (ℓ-1)⌉ classes
    let lower = graph.clique_number().div_ceil(ell - 1).max(1);

    let (mut vertex_order, _) = graph.degeneracy_order_in(&graph.full_mask());
    vertex_order.reverse();
    let mut search = Search {
        graph,
        ell,
        order: &vertex_order,
        limit: upper,
        lower,
        found: None,
        explored: 0,
    };
    let mut parts = Vec::new();
    let mut labels = vec![0; order];
    search.run(0, &mut parts, &mut labels, false);
    let minimum = search
        .found
        .as_ref()
        .and_then(|l| l.iter().max())
        .map_or(upper, |&m| m + 1);
    let phase_one = search.explored;

    // second pass in member order pins the lexicographically least witness
    let natural: Vec<usize> = (0..order).collect();
    let mut lex = Search {
        graph,
        ell,
        order: &natural,
        limit: minimum,
        lower: minimum,
        found: None,
        explored: 0,
    };
    let mut parts = Vec::new();
    let mut labels = vec![0; order];
    lex.run(0, &mut parts, &mut labels, true);
    let labels = lex.found.expect("a partition with the minimum count exists");

    let mut out = vec![Vec::new(); minimum];
    for (v, &l) in labels.iter().enumerate() {
        out[l].push(v);
    }
    OracleResult {
        minimum,
        optimal_parts: Decomposition::from_parts(out),
        explored: phase_one + lex.explored,
    }
}

struct Search<'a> {
    graph: &'a DisjointnessGraph,
    ell: usize,
    order: &'a [usize],
    /// Solutions must use at most this many parts; tightened on improvement.
    limit: usize,
    lower: usize,
    found: Option<Vec<usize>>,
    explored: u64,
}

impl Search<'_> {
    fn fits(&self, part: &FixedBitSet, v: usize) -> bool {
        if self.ell == 2 {
            return part.is_disjoint(self.graph.neighbors(v));
        }
        let mut near = part.clone();
        near.intersect_with(self.graph.neighbors(v));
        !self.graph.has_clique_in(&near, self.ell - 1)
    }

    /// Returns true when the search can stop. With `first_only`, stops at the
    /// first complete assignment; otherwise keeps improving until `lower` is met.
    fn run(
        &mut self,
        depth: usize,
        parts: &mut Vec<FixedBitSet>,
        labels: &mut [usize],
        first_only: bool,
    ) -> bool {
        self.explored += 1;
        if depth == self.order.len() {
            self.found = Some(labels.to_vec());
            if first_only || parts.len() <= self.lower {
                self.limit = parts.len();
                return true;
            }
            self.limit = parts.len() - 1;
            return false;
        }
        let v = self.order[depth];
        for p in 0..parts.len() {
            if parts.len() > self.limit {
                break;
            }
            if !self.fits(&parts[p], v) {
                continue;
            }
            parts[p].insert(v);
            labels[v] = p;
            let stop = self.run(depth + 1, parts, labels, first_only);
            parts[p].remove(v);
            if stop {
                return true;
            }
        }
        if parts.len() < self.limit {
            let mut fresh = FixedBitSet::with_capacity(self.graph.order());
            fresh.insert(v);
            parts.push(fresh);
            labels[v] = parts.len() - 1;
            let stop = self.run(depth + 1, parts, labels, first_only);
            parts.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Exact chromatic number, by DSATUR-ordered `c`-colourability tests for
/// increasing `c` starting at the clique number.
pub fn chromatic_number(graph: &DisjointnessGraph) -> Result<usize> {
    chromatic_number_capped(graph, DEFAULT_ORACLE_CAP)
}

pub fn chromatic_number_capped(graph: &DisjointnessGraph, cap: usize) -> Result<usize> {
    check_cap(graph.order(), cap)?;
    let n = graph.order();
    if n == 0 {
        return Ok(0);
    }
    let mut colours = graph.clique_number().max(1);
    loop {
        let mut assigned = vec![usize::MAX; n];
        if colourable(graph, colours, &mut assigned, 0) {
            return Ok(colours);
        }
        colours += 1;
    }
}

fn colourable(graph: &DisjointnessGraph, colours: usize, assigned: &mut [usize], done: usize) -> bool {
    let n = graph.order();
    if done == n {
        return true;
    }
    // most saturated uncoloured vertex, ties to higher degree then lower index
    let mut pick = None;
    let mut pick_key = (0usize, 0usize);
    for v in 0..n {
        if assigned[v] != usize::MAX {
            continue;
        }
        let mut seen = vec![false; colours];
        let mut sat = 0;
        for w in graph.neighbors(v).ones() {
            let c = assigned[w];
            if c != usize::MAX && !seen[c] {
                seen[c] = true;
                sat += 1;
            }
        }
        let key = (sat, graph.degree(v));
        if pick.is_none() || key > pick_key {
            pick = Some(v);
            pick_key = key;
        }
    }
    let v = pick.expect("an uncoloured vertex remains");
    let used = assigned.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    // colours beyond the first unused one are interchangeable
    for c in 0..colours.min(used + 1) {
        if graph.neighbors(v).ones().any(|w| assigned[w] == c) {
            continue;
        }
        assigned[v] = c;
        if colourable(graph, colours, assigned, done + 1) {
            return true;
        }
        assigned[v] = usize::MAX;
    }
    false
}
