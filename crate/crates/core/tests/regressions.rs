//! Worked examples, each cross-checked against a brute-force oracle before
//! the expected value is pinned.

mod support;

use kufam::*;
use support::*;

fn fam(s: usize, lists: &[&[usize]]) -> SetFamily {
    SetFamily::from_lists(s, lists.iter().map(|l| l.iter().copied())).unwrap()
}

#[test]
fn four_cycle_is_3_1_intersecting() {
    let f = fam(2, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
    let brute = naive_is_intersecting(&lists_of(&f), 3, 1);
    assert!(brute);
    assert_eq!(is_intersecting(&f, 3, 1).unwrap(), brute);
}

#[test]
fn least_witness_matches_tuple_enumeration() {
    let f = fam(2, &[&[1, 2], &[2, 3], &[4, 5], &[6, 7]]);
    let brute = naive_witness(&lists_of(&f), 3, 1);
    assert_eq!(brute, Some(vec![0, 2, 3]));
    assert_eq!(find_witness(&f, 3, 1).unwrap().map(|w| w.indices), brute);
}

#[test]
fn greedy_kernel_is_a_maximal_scattered_set() {
    let f = fam(2, &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
    let all = all_maximal_scattered(&lists_of(&f), 1);
    let k = scattered_kernel(&f, 1).unwrap();
    assert!(all.contains(&k.indices));
    // members {1,2} and {3,4}
    assert_eq!(k.indices, vec![0, 3]);
    assert_eq!(f.member(0).to_vec(), vec![1, 2]);
    assert_eq!(f.member(3).to_vec(), vec![3, 4]);
}

#[test]
fn two_star_family_end_to_end() {
    let f = fam(2, &[&[1, 2], &[1, 3], &[4, 5], &[4, 6]]);
    let p = BoundParams::new(2, 3, 1, 2).unwrap();
    let bound = theorem_bound(&p).unwrap();
    assert_eq!(bound, rational_bound(2, 3, 1, 2));
    assert_eq!(bound, 4);

    let d = decompose(&f, &p).unwrap();
    assert_eq!(d.parts, vec![vec![0, 1], vec![2, 3]]);
    assert!(verify_decomposition(&f, &d, 2, 1, bound).unwrap().is_valid());

    let exact = bell_min_partition(&lists_of(&f), 2, 1);
    assert_eq!(exact, 2);
    assert_eq!(min_cover_exact(&f, 2, 1).unwrap().minimum, exact);
}

#[test]
fn three_disjoint_pairs_need_two_parts_for_ell_3() {
    let f = fam(2, &[&[1, 2], &[3, 4], &[5, 6]]);
    let exact = bell_min_partition(&lists_of(&f), 3, 1);
    assert_eq!(exact, 2);
    assert_eq!(min_cover_exact(&f, 3, 1).unwrap().minimum, exact);
}

#[test]
fn stars_decompose_into_one_part() {
    for seed in 0..10 {
        let f = gen_star(9, 3, 2, 5, seed).unwrap();
        let p = BoundParams::new(3, 4, 2, 3).unwrap();
        assert_eq!(decompose(&f, &p).unwrap().len(), 1);
        assert_eq!(bell_min_partition(&lists_of(&f), 2, 2), 1);
    }
}

#[test]
fn two_stars_do_not_compact_for_ell_2() {
    let f = fam(2, &[&[1, 2], &[1, 3], &[4, 5], &[4, 6]]);
    assert!(!naive_is_intersecting(&lists_of(&f), 2, 1));
    let d = decompose(&f, &BoundParams::new(2, 3, 1, 2).unwrap()).unwrap();
    assert_eq!(compact(&f, &d, 2, 1).unwrap().len(), 2);
}

/// Largest exact minimum over every `(k,u)`-intersecting family of `s`-subsets of `[0,n)`.
fn brute_extremal(n: usize, s: usize, k: usize, u: usize, ell: usize) -> usize {
    let all = combinations(n, s);
    let m = all.len();
    let mut best = 0;
    for mask in 1u32..1 << m {
        let f: Lists = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
        if !naive_is_intersecting(&f, k, u) {
            continue;
        }
        let value = if ell == 2 {
            brute_chromatic(f.len(), |a, b| meet(&f[a], &f[b]) < u)
        } else {
            bell_min_partition(&f, ell, u)
        };
        best = best.max(value);
    }
    best
}

const EXTREMAL_N4_S2_K3_U1_L2: usize = 2;
const EXTREMAL_N5_S2_K3_U1_L2: usize = 3;

#[test]
fn exhaustive_search_values_are_pinned() {
    let p = BoundParams::new(2, 3, 1, 2).unwrap();
    let cfg = SearchConfig {
        exhaustive: true,
        ..SearchConfig::default()
    };
    for (n, pinned) in [(4, EXTREMAL_N4_S2_K3_U1_L2), (5, EXTREMAL_N5_S2_K3_U1_L2)] {
        assert_eq!(brute_extremal(n, 2, 3, 1, 2), pinned, "oracle at n={n}");
        let r = extremal_search(n, &p, &cfg).unwrap();
        assert_eq!(r.best_value, pinned, "search at n={n}");
        assert!(!r.budget_exhausted);
        assert!(naive_is_intersecting(&lists_of(&r.witness_family), 3, 1));
        assert_eq!(
            brute_chromatic(r.witness_family.len(), |a, b| {
                meet(&lists_of(&r.witness_family)[a], &lists_of(&r.witness_family)[b]) < 1
            }),
            pinned
        );
    }
}

#[test]
fn small_exhaustive_search_with_ell_3() {
    let p = BoundParams::new(2, 4, 1, 3).unwrap();
    let cfg = SearchConfig {
        exhaustive: true,
        ..SearchConfig::default()
    };
    let r = extremal_search(5, &p, &cfg).unwrap();
    assert_eq!(r.best_value, brute_extremal(5, 2, 4, 1, 3));
    assert!(r.best_value as u64 <= theorem_bound(&p).unwrap());
}
