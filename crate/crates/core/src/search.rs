//! Bounded search for `(k,u)`-intersecting families that need many parts.
//!
//! Any single family certifies a lower bound on the worst case for its
//! parameters, so results here are lower-bound probes only.
//!
//! Exhaustive mode enumerates families up to relabelling of the ground set.
//! A family is represented by the increasing list of the canonical ranks of
//! its members; it is kept only if that list is lexicographically least over
//! all ground-set permutations. Removing the highest-rank member of such a
//! family leaves a family with the same property, so depth-first extension by
//! higher ranks reaches exactly one representative per orbit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::is_intersecting;
use crate::count::binomial;
use crate::decompose::theorem_bound;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::oracle::{min_cover_exact_capped, DEFAULT_ORACLE_CAP};
use crate::params::BoundParams;
use crate::set::MemberSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node budget: families visited (exhaustive) or evaluated (randomized).
    pub budget: u64,
    pub seed: u64,
    pub exhaustive: bool,
    /// Largest `C(n,s)` accepted in exhaustive mode.
    pub exhaustive_member_cap: usize,
    /// Largest `C(n,s)` accepted in randomized mode.
    pub candidate_cap: usize,
    /// Largest `n` accepted in exhaustive mode (the canonical test is `n!`).
    pub exhaustive_ground_cap: usize,
    pub oracle_cap: usize,
    pub restarts: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            seed: 0,
            exhaustive: false,
            exhaustive_member_cap: 20,
            candidate_cap: 4096,
            exhaustive_ground_cap: 8,
            oracle_cap: DEFAULT_ORACLE_CAP,
            restarts: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub best_value: usize,
    #[serde(serialize_with = "family_text")]
    pub witness_family: SetFamily,
    pub families_examined: u64,
    pub budget_exhausted: bool,
    pub seed: u64,
    pub exhaustive: bool,
}

fn family_text<S: serde::Serializer>(f: &SetFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(f.members().iter().map(MemberSet::to_vec))
}

/// All `s`-subsets of `[0, n)` in canonical order.
fn all_members(n: usize, s: usize) -> Vec<MemberSet> {
    if s > n {
        return Vec::new();
    }
    let ground = MemberSet::from_elements(0..n);
    if n == 0 {
        return vec![MemberSet::empty()];
    }
    ground.u_subsets(s).expect("s <= n")
}

pub fn extremal_search(n: usize, p: &BoundParams, config: &SearchConfig) -> Result<SearchReport> {
    p.validate()?;
    let bound = theorem_bound(p)? as usize;
    let candidates_count: u128 = binomial(n as u64, p.s as u64)?;
    if candidates_count == 0 {
        return Err(Error::Domain(format!("no {}-subsets of a {n}-element set", p.s)));
    }
    let report = if config.exhaustive {
        if candidates_count > config.exhaustive_member_cap as u128 {
            return Err(Error::Capacity {
                what: "C(n,s) for exhaustive search",
                size: usize::try_from(candidates_count).unwrap_or(usize::MAX),
                cap: config.exhaustive_member_cap,
            });
        }
        if n > config.exhaustive_ground_cap {
            return Err(Error::Capacity {
                what: "ground-set size for exhaustive search",
                size: n,
                cap: config.exhaustive_ground_cap,
            });
        }
        Exhaustive::new(n, p, config).run()?
    } else {
        if candidates_count > config.candidate_cap as u128 {
            return Err(Error::Capacity {
                what: "C(n,s) for randomized search",
                size: usize::try_from(candidates_count).unwrap_or(usize::MAX),
                cap: config.candidate_cap,
            });
        }
        randomized(n, p, config)?
    };
    if report.best_value > bound {
        return Err(Error::InvariantViolation(format!(
            "family needs {} parts, above the bound {bound}",
            report.best_value
        )));
    }
    Ok(report)
}

struct Incumbent {
    value: usize,
    family: Vec<usize>,
}

impl Incumbent {
    fn offer(&mut self, value: usize, family: &[usize]) {
        if value > self.value {
            self.value = value;
            self.family = family.to_vec();
        }
    }
}

fn family_from_ranks(n: usize, s: usize, members: &[MemberSet], ranks: &[usize]) -> SetFamily {
    SetFamily::new(s, n, ranks.iter().map(|&r| members[r].clone())).expect("candidates are valid members")
}

struct Exhaustive<'a> {
    n: usize,
    p: &'a BoundParams,
    config: &'a SearchConfig,
    members: Vec<MemberSet>,
    /// `perm_action[σ][r]`: rank of the image of member `r` under permutation `σ`.
    perm_action: Vec<Vec<usize>>,
    examined: u64,
    exhausted: bool,
    best: Incumbent,
}

impl<'a> Exhaustive<'a> {
    fn new(n: usize, p: &'a BoundParams, config: &'a SearchConfig) -> Self {
        let members = all_members(n, p.s);
        let mut perm_action = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let action = members
                .iter()
                .map(|m| {
                    let image = m.map_elements(|e| perm[e]);
                    members.binary_search(&image).expect("image is an s-subset")
                })
                .collect();
            perm_action.push(action);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Self {
            n,
            p,
            config,
            members,
            perm_action,
            examined: 0,
            exhausted: false,
            best: Incumbent {
                value: 0,
                family: Vec::new(),
            },
        }
    }

    fn is_canonical(&self, ranks: &[usize]) -> bool {
        let mut image = Vec::with_capacity(ranks.len());
        for action in &self.perm_action[1..] {
            image.clear();
            image.extend(ranks.iter().map(|&r| action[r]));
            image.sort_unstable();
            if image.as_slice() < ranks {
                return false;
            }
        }
        true
    }

    fn run(mut self) -> Result<SearchReport> {
        let mut ranks = Vec::new();
        self.extend(&mut ranks)?;
        Ok(SearchReport {
            best_value: self.best.value,
            witness_family: family_from_ranks(self.n, self.p.s, &self.members, &self.best.family),
            families_examined: self.examined,
            budget_exhausted: self.exhausted,
            seed: self.config.seed,
            exhaustive: true,
        })
    }

    fn extend(&mut self, ranks: &mut Vec<usize>) -> Result<()> {
        let start = ranks.last().map_or(0, |&r| r + 1);
        for r in start..self.members.len() {
            if self.examined >= self.config.budget {
                self.exhausted = true;
                return Ok(());
            }
            ranks.push(r);
            if self.is_canonical(ranks) {
                let family = family_from_ranks(self.n, self.p.s, &self.members, ranks);
                // subfamilies of a non-intersecting family are never needed:
                // every extension stays non-intersecting
                if is_intersecting(&family, self.p.k, self.p.u)? {
                    self.examined += 1;
                    if family.len() <= self.config.oracle_cap {
                        let value =
                            min_cover_exact_capped(&family, self.p.ell, self.p.u, self.config.oracle_cap)?
                                .minimum;
                        self.best.offer(value, ranks);
                    }
                    self.extend(ranks)?;
                }
            }
            ranks.pop();
        }
        Ok(())
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Random maximal families, improved by remove-and-refill moves.
fn randomized(n: usize, p: &BoundParams, config: &SearchConfig) -> Result<SearchReport> {
    let members = all_members(n, p.s);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut examined = 0u64;
    let mut best = Incumbent {
        value: 0,
        family: Vec::new(),
    };
    let restarts = config.restarts.max(1);
    let per_restart = (config.budget / restarts as u64).max(1);
    let mut exhausted = false;

    let evaluate = |ranks: &[usize]| -> Result<usize> {
        let f = family_from_ranks(n, p.s, &members, ranks);
        Ok(min_cover_exact_capped(&f, p.ell, p.u, config.oracle_cap)?.minimum)
    };

    'restarts: for _ in 0..restarts {
        let mut current = fill(n, p, &members, Vec::new(), config.oracle_cap, &mut rng)?;
        let mut value = evaluate(&current)?;
        examined += 1;
        best.offer(value, &current);
        for _ in 1..per_restart {
            if examined >= config.budget {
                exhausted = true;
                break 'restarts;
            }
            let mut next = current.clone();
            if !next.is_empty() {
                let drop = rng.gen_range(1..=next.len().min(3));
                for _ in 0..drop {
                    let at = rng.gen_range(0..next.len());
                    next.swap_remove(at);
                }
            }
            let next = fill(n, p, &members, next, config.oracle_cap, &mut rng)?;
            let next_value = evaluate(&next)?;
            examined += 1;
            best.offer(next_value, &next);
            if next_value >= value {
                current = next;
                value = next_value;
            }
        }
    }
    // randomized runs only stop on the budget
    exhausted |= examined >= config.budget;
    let mut family = best.family.clone();
    family.sort_unstable();
    Ok(SearchReport {
        best_value: best.value,
        witness_family: family_from_ranks(n, p.s, &members, &family),
        families_examined: examined,
        budget_exhausted: exhausted,
        seed: config.seed,
        exhaustive: false,
    })
}

/// Adds candidates in random order while the family stays `(k,u)`-intersecting.
fn fill(
    n: usize,
    p: &BoundParams,
    members: &[MemberSet],
    mut ranks: Vec<usize>,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..members.len()).filter(|r| !ranks.contains(r)).collect();
    order.shuffle(rng);
    for r in order {
        if ranks.len() >= cap {
            break;
        }
        ranks.push(r);
        if !is_intersecting(&family_from_ranks(n, p.s, members, &ranks), p.k, p.u)? {
            ranks.pop();
        }
    }
    Ok(ranks)
}
