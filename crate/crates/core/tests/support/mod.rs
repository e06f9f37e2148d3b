//! Brute-force reference implementations.
//!
//! Everything here works on plain sorted `Vec<usize>` member lists and
//! exhaustive enumeration, sharing no code with the library's bitset and
//! clique-search paths.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

pub type Lists = Vec<Vec<usize>>;

pub fn lists_of(f: &kufam::SetFamily) -> Lists {
    f.members().iter().map(|m| m.to_vec()).collect()
}

/// `|a ∩ b|` for sorted slices, by merging.
pub fn meet(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// All `k`-combinations of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn pairwise_far(f: &[Vec<usize>], idx: &[usize], u: usize) -> bool {
    idx.iter()
        .enumerate()
        .all(|(a, &i)| idx[a + 1..].iter().all(|&j| meet(&f[i], &f[j]) < u))
}

/// Lexicographically first `k` pairwise-far members, by enumerating all tuples.
pub fn naive_witness(f: &[Vec<usize>], k: usize, u: usize) -> Option<Vec<usize>> {
    combinations(f.len(), k)
        .into_iter()
        .find(|c| pairwise_far(f, c, u))
}

pub fn naive_is_intersecting(f: &[Vec<usize>], k: usize, u: usize) -> bool {
    naive_witness(f, k, u).is_none()
}

/// Largest pairwise-far subfamily, over all subsets.
pub fn naive_clique_number(f: &[Vec<usize>], u: usize) -> usize {
    let n = f.len();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter_map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            pairwise_far(f, &idx, u).then_some(idx.len())
        })
        .max()
        .unwrap_or(0)
}

/// Minimum number of `(ℓ,u)`-intersecting parts, over every set partition.
pub fn bell_min_partition(f: &[Vec<usize>], ell: usize, u: usize) -> usize {
    let n = f.len();
    if n == 0 {
        return 0;
    }
    let mut labels = vec![0usize; n];
    let mut best = usize::MAX;
    fn rec(
        i: usize,
        used: usize,
        labels: &mut Vec<usize>,
        f: &[Vec<usize>],
        ell: usize,
        u: usize,
        best: &mut usize,
    ) {
        if i == labels.len() {
            let ok = (0..used).all(|p| {
                let part: Lists = (0..labels.len())
                    .filter(|&v| labels[v] == p)
                    .map(|v| f[v].clone())
                    .collect();
                naive_is_intersecting(&part, ell, u)
            });
            if ok {
                *best = (*best).min(used);
            }
            return;
        }
        for p in 0..=used {
            labels[i] = p;
            rec(i + 1, used.max(p + 1), labels, f, ell, u, best);
        }
    }
    rec(0, 0, &mut labels, f, ell, u, &mut best);
    best
}

/// Smallest `c` admitting a proper colouring, by trying all `c^n` assignments.
pub fn brute_chromatic(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    if n == 0 {
        return 0;
    }
    for c in 1..=n {
        let total = (c as u64).pow(n as u32);
        for code in 0..total {
            let mut colour = vec![0usize; n];
            let mut x = code;
            for slot in colour.iter_mut() {
                *slot = (x % c as u64) as usize;
                x /= c as u64;
            }
            let proper = (0..n).all(|a| (a + 1..n).all(|b| !adjacent(a, b) || colour[a] != colour[b]));
            if proper {
                return c;
            }
        }
    }
    unreachable!()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(s,u)` as `s! / (u! (s-u)!)` in arbitrary precision.
pub fn big_binomial(s: u64, u: u64) -> BigUint {
    if u > s {
        return BigUint::default();
    }
    factorial(s) / (factorial(u) * factorial(s - u))
}

/// `⌈(k-1)/(ℓ-1) · C(s,u)⌉` through exact rational arithmetic.
pub fn rational_bound(s: u64, k: u64, u: u64, ell: u64) -> u64 {
    let c = BigRational::from_integer(big_binomial(s, u).into());
    let ratio = BigRational::new((k - 1).into(), (ell - 1).into());
    (ratio * c).ceil().to_integer().to_u64().unwrap()
}

/// True iff `kernel` is pairwise far and every member meets some kernel member in ≥ u.
pub fn is_maximal_scattered(f: &[Vec<usize>], kernel: &[usize], u: usize) -> bool {
    pairwise_far(f, kernel, u) && f.iter().all(|m| kernel.iter().any(|&i| meet(m, &f[i]) >= u))
}

/// All maximal scattered index sets, by subset enumeration.
pub fn all_maximal_scattered(f: &[Vec<usize>], u: usize) -> Vec<Vec<usize>> {
    let n = f.len();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|idx| is_maximal_scattered(f, idx, u))
        .collect()
}
