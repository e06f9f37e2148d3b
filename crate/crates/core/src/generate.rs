//! Seeded family generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`, so a given spec yields the same family on every platform.
//! Distinct subsets are drawn with Floyd's sampling over subset ranks in the
//! combinatorial number system.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::is_intersecting;
use crate::count::binomial;
use crate::error::{domain, Result};
use crate::family::SetFamily;
use crate::params::{check_u, BoundParams};
use crate::set::MemberSet;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Random,
    Star,
    ScatteredStars,
    Sunflower,
    Complete,
}

/// Everything a generator needs; unused fields are ignored by each kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub s: usize,
    pub count: usize,
    pub u: usize,
    pub k: usize,
    pub per_star: usize,
    pub core_size: usize,
    pub petal_size: usize,
    pub petals: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<SetFamily> {
        match self.kind {
            GenKind::Random => gen_random(self.n, self.s, self.count, self.seed),
            GenKind::Star => gen_star(self.n, self.s, self.u, self.count, self.seed),
            GenKind::ScatteredStars => {
                gen_scattered_stars(self.n, self.s, self.u, self.k, self.per_star, self.seed)
            }
            GenKind::Sunflower => {
                gen_sunflower(self.core_size, self.petal_size, self.petals, self.seed)
            }
            GenKind::Complete => gen_complete(self.n, self.s),
        }
    }
}

/// Subset of `[0, n)` with the given rank among `s`-subsets in canonical order.
fn unrank(n: usize, s: usize, mut rank: u128) -> MemberSet {
    let mut out = Vec::with_capacity(s);
    let mut next = 0;
    for remaining in (1..=s).rev() {
        let mut e = next;
        loop {
            // subsets whose smallest remaining element is `e`
            let block: u128 = binomial((n - e - 1) as u64, (remaining - 1) as u64)
                .expect("fits since the total count fits");
            if rank < block {
                break;
            }
            rank -= block;
            e += 1;
        }
        out.push(e);
        next = e + 1;
    }
    MemberSet::from_elements(out)
}

/// `count` distinct `s`-subsets of `[0, n)`, not in any particular order.
fn distinct_subsets(n: usize, s: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<MemberSet>> {
    let total: u128 = binomial(n as u64, s as u64)?;
    if count as u128 > total {
        return Err(domain(format!("count {count} exceeds C({n},{s}) = {total}")));
    }
    // Floyd: for j in total-count .. total pick t in [0, j]; take j on collision
    let mut picked: BTreeSet<u128> = BTreeSet::new();
    let mut order = Vec::with_capacity(count);
    for j in (total - count as u128)..total {
        let t = rng.gen_range(0..=j);
        let r = if picked.insert(t) { t } else { picked.insert(j); j };
        order.push(r);
    }
    Ok(order.into_iter().map(|r| unrank(n, s, r)).collect())
}

/// `count` distinct uniformly random `s`-subsets of `[0, n)`.
pub fn gen_random(n: usize, s: usize, count: usize, seed: u64) -> Result<SetFamily> {
    if s == 0 || s > n {
        return Err(domain(format!("need 1 <= s <= n, got s={s} n={n}")));
    }
    let mut rng = rng_from_seed(seed);
    let members = distinct_subsets(n, s, count, &mut rng)?;
    SetFamily::new(s, n, members)
}

/// All members contain the core `{0, …, u-1}`.
pub fn gen_star(n: usize, s: usize, u: usize, count: usize, seed: u64) -> Result<SetFamily> {
    if s == 0 || s > n {
        return Err(domain(format!("need 1 <= s <= n, got s={s} n={n}")));
    }
    check_u(u, s)?;
    let mut rng = rng_from_seed(seed);
    let tails = distinct_subsets(n - u, s - u, count, &mut rng)?;
    let members = tails
        .into_iter()
        .map(|t| MemberSet::from_elements((0..u).chain(t.elements().map(|e| e + u))));
    SetFamily::new(s, n, members)
}

/// `k - 1` stars on disjoint blocks of `⌊n / (k-1)⌋` elements, `per_star` members each.
pub fn gen_scattered_stars(
    n: usize,
    s: usize,
    u: usize,
    k: usize,
    per_star: usize,
    seed: u64,
) -> Result<SetFamily> {
    if k < 2 {
        return Err(domain(format!("k={k} must be at least 2")));
    }
    if s == 0 {
        return Err(domain("s must be at least 1"));
    }
    check_u(u, s)?;
    let stars = k - 1;
    if n < stars * s {
        return Err(domain(format!("n={n} is below (k-1)*s = {}", stars * s)));
    }
    let block = n / stars;
    let room: u128 = binomial((block - u) as u64, (s - u) as u64)?;
    if per_star as u128 > room {
        return Err(domain(format!(
            "per_star={per_star} exceeds the {room} members available per star"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut members = Vec::with_capacity(stars * per_star);
    for star in 0..stars {
        let base = star * block;
        for tail in distinct_subsets(block - u, s - u, per_star, &mut rng)? {
            members.push(MemberSet::from_elements(
                (base..base + u).chain(tail.elements().map(|e| base + u + e)),
            ));
        }
    }
    SetFamily::new(s, n, members)
}

/// Common core of `core_size` elements plus `petals` disjoint petals, with
/// ground-set labels shuffled by the seed.
pub fn gen_sunflower(core_size: usize, petal_size: usize, petals: usize, seed: u64) -> Result<SetFamily> {
    let s = core_size + petal_size;
    if s == 0 {
        return Err(domain("core_size + petal_size must be positive"));
    }
    if petals == 0 {
        return Err(domain("petals must be positive"));
    }
    let n = core_size + petals * petal_size;
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng_from_seed(seed));
    let members = (0..petals).map(|p| {
        let petal = core_size + p * petal_size..core_size + (p + 1) * petal_size;
        MemberSet::from_elements((0..core_size).chain(petal).map(|e| labels[e]))
    });
    SetFamily::new(s, n, members)
}

/// Every `s`-subset of `[0, n)`.
pub fn gen_complete(n: usize, s: usize) -> Result<SetFamily> {
    if s == 0 || s > n {
        return Err(domain(format!("need 1 <= s <= n, got s={s} n={n}")));
    }
    let members = MemberSet::from_elements(0..n).u_subsets(s)?;
    SetFamily::new(s, n, members)
}

/// How an intersecting instance was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    ScatteredStars,
    FilteredRandom,
}

/// Draws a `(k,u)`-intersecting family over `[0, n)` with at most `max_size`
/// members. Scattered stars are used when asked for and feasible; otherwise
/// random families are drawn until one passes, up to `retries` attempts.
/// Returns `None` when every attempt fails.
pub fn intersecting_instance(
    p: &BoundParams,
    n: usize,
    max_size: usize,
    construction: Construction,
    retries: usize,
    seed: u64,
) -> Result<Option<(SetFamily, Construction)>> {
    p.validate()?;
    if p.s > n || max_size == 0 {
        return Ok(None);
    }
    let mut rng = rng_from_seed(seed);
    if construction == Construction::ScatteredStars && n >= (p.k - 1) * p.s {
        let block = n / (p.k - 1);
        let room: u128 = binomial((block - p.u) as u64, (p.s - p.u) as u64)?;
        let per_cap = (max_size / (p.k - 1)).min(usize::try_from(room).unwrap_or(usize::MAX));
        if per_cap >= 1 {
            let per_star = rng.gen_range(1..=per_cap);
            let f = gen_scattered_stars(n, p.s, p.u, p.k, per_star, rng.gen())?;
            return Ok(Some((f, Construction::ScatteredStars)));
        }
    }
    let total: u128 = binomial(n as u64, p.s as u64)?;
    let max_count = usize::try_from(total.min(max_size as u128)).expect("bounded by max_size");
    for _ in 0..retries {
        let count = rng.gen_range(1..=max_count);
        let f = gen_random(n, p.s, count, rng.gen())?;
        if is_intersecting(&f, p.k, p.u)? {
            return Ok(Some((f, Construction::FilteredRandom)));
        }
    }
    Ok(None)
}
