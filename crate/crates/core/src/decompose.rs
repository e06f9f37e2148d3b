//! Splitting a `(k,u)`-intersecting family into `(ℓ,u)`-intersecting parts.
//!
//! The pipeline has three stages:
//!
//! 1. [`scattered_kernel`]: a greedy maximal set of members pairwise meeting in
//!    fewer than `u` elements. Maximality means every member meets some kernel
//!    member in at least `u` elements; a `(k,u)`-intersecting family cannot
//!    hold `k` such members, so the kernel has at most `k - 1` of them.
//! 2. [`trace_cover`]: every member contains some `u`-subset (trace) of a kernel
//!    member. Members sharing a trace pairwise meet in at least `u` elements, so
//!    each trace class is `(2,u)`-intersecting.
//! 3. [`pigeonhole_merge`]: any `ℓ - 1` trace classes together contain no `ℓ`
//!    pairwise-far members, so consecutive blocks of `ℓ - 1` classes merge.
//!
//! The part count is at most `⌈(k - 1) · C(s,u) / (ℓ - 1)⌉`, see [`theorem_bound`].

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::check::{verify_with_graph, DisjointnessGraph, VerificationReport, Witness};
use crate::count::{binomial, div_ceil, CountScalar};
use crate::error::{domain, Error, Result};
use crate::family::SetFamily;
use crate::params::{check_arity, check_u, BoundParams};
use crate::set::MemberSet;

/// `⌈(k - 1) · C(s,u) / (ℓ - 1)⌉` in the count type `T`.
pub fn theorem_bound_in<T: CountScalar>(p: &BoundParams) -> Result<T> {
    p.validate()?;
    let lift = |v: usize| {
        T::from_usize(v).ok_or_else(|| Error::Overflow(format!("{v} does not fit the count type")))
    };
    let c: T = binomial(p.s as u64, p.u as u64)?;
    let num = lift(p.k - 1)?
        .checked_mul(&c)
        .ok_or_else(|| Error::Overflow(format!("(k-1)*C(s,u) for {p:?}")))?;
    Ok(div_ceil(num, lift(p.ell - 1)?))
}

/// `⌈(k - 1) · C(s,u) / (ℓ - 1)⌉` as a machine count.
pub fn theorem_bound(p: &BoundParams) -> Result<crate::Count> {
    theorem_bound_in(p)
}

/// Member indices pairwise meeting in fewer than `u` elements, maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kernel {
    pub indices: Vec<usize>,
}

impl Kernel {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Greedy scan in canonical order: keep a member iff it is far from every kept one.
pub fn scattered_kernel(family: &SetFamily, u: usize) -> Result<Kernel> {
    check_u(u, family.uniformity())?;
    let members = family.members();
    let mut indices: Vec<usize> = Vec::new();
    for (i, m) in members.iter().enumerate() {
        if indices.iter().all(|&j| members[j].intersection_size(m) < u) {
            indices.push(i);
        }
    }
    Ok(Kernel { indices })
}

/// The `u`-subsets of kernel members, and each member's first containing trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCover {
    pub traces: Vec<MemberSet>,
    /// `assignment[i]` indexes into `traces`.
    pub assignment: Vec<usize>,
}

impl TraceCover {
    /// Member indices per trace, in trace order; some may be empty.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.traces.len()];
        for (member, &t) in self.assignment.iter().enumerate() {
            classes[t].push(member);
        }
        classes
    }
}

pub fn trace_cover(family: &SetFamily, kernel: &Kernel, u: usize) -> Result<TraceCover> {
    check_u(u, family.uniformity())?;
    let mut traces: Vec<MemberSet> = Vec::new();
    for &ki in &kernel.indices {
        let member = family
            .members()
            .get(ki)
            .ok_or_else(|| Error::Structure(format!("kernel index {ki} out of range")))?;
        traces.extend(member.u_subsets(u)?);
    }
    traces.sort();
    traces.dedup();
    let assignment = family
        .members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            traces
                .iter()
                .position(|t| t.is_subset(m))
                .ok_or(Error::KernelCoverage { member: i })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TraceCover { traces, assignment })
}

/// A partition of member indices with per-part provenance.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Decomposition {
    /// Each part lists member indices in increasing order.
    pub parts: Vec<Vec<usize>>,
    /// Traces merged into each part; empty when the part has no trace origin.
    pub labels: Vec<Vec<MemberSet>>,
}

impl Decomposition {
    /// Parts without provenance.
    pub fn from_parts(parts: Vec<Vec<usize>>) -> Self {
        let labels = vec![Vec::new(); parts.len()];
        Self { parts, labels }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every member, for a partition of `0..order`.
    pub fn part_of(&self, order: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; order];
        for (pi, part) in self.parts.iter().enumerate() {
            for &m in part {
                if m < order {
                    out[m] = Some(pi);
                }
            }
        }
        out
    }
}

/// Unions consecutive blocks of at most `ℓ - 1` nonempty trace classes.
pub fn pigeonhole_merge(cover: &TraceCover, ell: usize) -> Result<Decomposition> {
    check_arity("ell", ell)?;
    let block = ell - 1;
    let nonempty: Vec<(usize, Vec<usize>)> = cover
        .classes()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .collect();
    let mut d = Decomposition::default();
    for chunk in nonempty.chunks(block) {
        let mut part: Vec<usize> = chunk.iter().flat_map(|(_, c)| c.iter().copied()).collect();
        part.sort_unstable();
        d.parts.push(part);
        d.labels
            .push(chunk.iter().map(|(t, _)| cover.traces[*t].clone()).collect());
    }
    Ok(d)
}

/// Intermediate objects of one [`decompose`] run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRun {
    pub kernel: Kernel,
    pub trace_count: usize,
    pub decomposition: Decomposition,
    pub bound: u64,
}

fn check_family_params(family: &SetFamily, p: &BoundParams) -> Result<()> {
    p.validate()?;
    if p.s != family.uniformity() {
        return Err(domain(format!(
            "params say s={}, family is {}-uniform",
            p.s,
            family.uniformity()
        )));
    }
    Ok(())
}

/// Kernel, trace cover and merge, after checking the `(k,u)` hypothesis.
pub fn decompose_run(family: &SetFamily, p: &BoundParams) -> Result<DecompositionRun> {
    check_family_params(family, p)?;
    let bound = theorem_bound(p)?;
    let graph = DisjointnessGraph::new(family, p.u)?;
    if let Some(indices) = graph.least_clique(p.k) {
        return Err(Error::NotIntersecting(Witness { indices }));
    }
    let kernel = scattered_kernel(family, p.u)?;
    let cover = trace_cover(family, &kernel, p.u)?;
    let decomposition = pigeonhole_merge(&cover, p.ell)?;
    Ok(DecompositionRun {
        kernel,
        trace_count: cover.traces.len(),
        decomposition,
        bound,
    })
}

pub fn decompose(family: &SetFamily, p: &BoundParams) -> Result<Decomposition> {
    decompose_run(family, p).map(|r| r.decomposition)
}

/// Greedily merges later parts into earlier ones while the union stays `(ℓ,u)`-intersecting.
pub fn compact(
    family: &SetFamily,
    d: &Decomposition,
    ell: usize,
    u: usize,
) -> Result<Decomposition> {
    let graph = DisjointnessGraph::new(family, u)?;
    let report = verify_with_graph(&graph, d, ell, u64::MAX)?;
    if !(report.covers && report.disjoint && report.parts_ok) {
        return Err(Error::Structure(format!(
            "input is not a valid partition into ({ell},{u})-intersecting parts"
        )));
    }
    let order = graph.order();
    let mut masks: Vec<FixedBitSet> = Vec::new();
    let mut out = Decomposition::default();
    for (part, label) in d.parts.iter().zip(&d.labels) {
        let mut mask = FixedBitSet::with_capacity(order);
        mask.extend(part.iter().copied());
        let target = masks.iter().position(|m| {
            let mut union = m.clone();
            union.union_with(&mask);
            !graph.has_clique_in(&union, ell)
        });
        match target {
            Some(i) => {
                masks[i].union_with(&mask);
                out.parts[i] = masks[i].ones().collect();
                out.labels[i].extend(label.iter().cloned());
            }
            None => {
                masks.push(mask);
                out.parts.push(part.clone());
                out.labels.push(label.clone());
            }
        }
    }
    Ok(out)
}

/// Text form: a `parts= bound= verified=` header, one `part i:` line per
/// part, then one provenance comment per part.
pub fn format_decomposition(
    d: &Decomposition,
    bound: u64,
    verified: bool,
    family: Option<&SetFamily>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "parts={} bound={} verified={}", d.len(), bound, verified);
    for (i, part) in d.parts.iter().enumerate() {
        let _ = write!(out, "part {i}:");
        for m in part {
            let _ = write!(out, " {m}");
        }
        out.push('\n');
        if let Some(f) = family {
            for &m in part {
                let _ = writeln!(out, "  {m} {}", f.member(m));
            }
        }
    }
    for (i, label) in d.labels.iter().enumerate() {
        if label.is_empty() {
            continue;
        }
        let _ = write!(out, "# part {i} traces:");
        for t in label {
            let _ = write!(out, " {t}");
        }
        out.push('\n');
    }
    out
}

/// Machine-readable mirror of [`format_decomposition`].
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDocument {
    pub parts_count: usize,
    pub bound: u64,
    pub verified: bool,
    pub parts: Vec<Vec<usize>>,
    pub traces: Vec<Vec<Vec<usize>>>,
    pub kernel: Option<Vec<usize>>,
    pub constructive_parts: Option<usize>,
    pub report: Option<VerificationReport>,
}

impl DecompositionDocument {
    pub fn new(d: &Decomposition, bound: u64, verified: bool) -> Self {
        Self {
            parts_count: d.len(),
            bound,
            verified,
            parts: d.parts.clone(),
            traces: d
                .labels
                .iter()
                .map(|l| l.iter().map(MemberSet::to_vec).collect())
                .collect(),
            kernel: None,
            constructive_parts: None,
            report: None,
        }
    }
}
