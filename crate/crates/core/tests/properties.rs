mod support;

use kufam::*;
use proptest::prelude::*;
use support::*;

/// (family, u) with at most `max_len` members.
fn family_strategy(max_len: usize) -> impl Strategy<Value = (SetFamily, usize)> {
    (1usize..=4)
        .prop_flat_map(|s| (Just(s), s..=s + 6))
        .prop_flat_map(move |(s, n)| {
            let total = binomial::<u64>(n as u64, s as u64).unwrap() as usize;
            (Just(s), Just(n), 0..=total.min(max_len), any::<u64>(), 1..=s)
        })
        .prop_map(|(s, n, count, seed, u)| (gen_random(n, s, count, seed).unwrap(), u))
}

fn params_strategy() -> impl Strategy<Value = BoundParams> {
    (1usize..=6, 3usize..=6).prop_flat_map(|(s, k)| {
        (1..=s, 2..k).prop_map(move |(u, ell)| BoundParams::new(s, k, u, ell).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip((f, _u) in family_strategy(30)) {
        let text = f.to_text();
        let back = SetFamily::parse(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn intersection_size_agrees_with_merge((f, _u) in family_strategy(12)) {
        let l = lists_of(&f);
        for (i, a) in f.members().iter().enumerate() {
            prop_assert_eq!(a.intersection_size(a), f.uniformity());
            for (j, b) in f.members().iter().enumerate() {
                prop_assert_eq!(intersection_size(a, b), meet(&l[i], &l[j]));
                prop_assert_eq!(intersection_size(a, b), intersection_size(b, a));
            }
        }
    }

    #[test]
    fn u_subsets_are_distinct_and_counted((f, u) in family_strategy(3)) {
        for m in f.members() {
            let subs = u_subsets(m, u).unwrap();
            prop_assert_eq!(subs.len() as u64, binomial::<u64>(m.len() as u64, u as u64).unwrap());
            prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(subs.iter().all(|x| x.len() == u && x.is_subset(m)));
        }
    }

    #[test]
    fn binomial_routes_agree(s in 0u64..90, u in 0u64..90) {
        let big = big_binomial(s, u);
        match binomial::<u64>(s, u) {
            Ok(v) => prop_assert_eq!(num_bigint::BigUint::from(v), big.clone()),
            Err(Error::Overflow(_)) => prop_assert!(big > num_bigint::BigUint::from(u64::MAX)),
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
        prop_assert_eq!(num_bigint::BigUint::from(binomial::<u128>(s, u).unwrap()), big.clone());
        prop_assert_eq!(binomial::<num_bigint::BigUint>(s, u).unwrap(), big);
    }

    #[test]
    fn bound_matches_rational_route(p in params_strategy()) {
        let b = theorem_bound(&p).unwrap();
        prop_assert_eq!(b, rational_bound(p.s as u64, p.k as u64, p.u as u64, p.ell as u64));
        prop_assert!(b >= 1);
    }

    #[test]
    fn checker_matches_clique_enumeration((f, u) in family_strategy(13), k in 2usize..6) {
        let l = lists_of(&f);
        let omega = naive_clique_number(&l, u);
        let g = disjointness_graph(&f, u).unwrap();
        prop_assert_eq!(g.clique_number(), omega);
        prop_assert_eq!(is_intersecting(&f, k, u).unwrap(), omega < k);
        let w = find_witness(&f, k, u).unwrap();
        prop_assert_eq!(w.is_none(), omega < k);
        prop_assert_eq!(w.map(|w| w.indices), naive_witness(&l, k, u));
    }

    #[test]
    fn graph_edges_follow_threshold((f, u) in family_strategy(14)) {
        let g = disjointness_graph(&f, u).unwrap();
        for i in 0..f.len() {
            prop_assert!(!g.has_edge(i, i));
            for j in 0..f.len() {
                if i != j {
                    prop_assert_eq!(g.has_edge(i, j), f.member(i).intersection_size(f.member(j)) < u);
                    prop_assert_eq!(g.has_edge(i, j), g.has_edge(j, i));
                }
            }
        }
    }

    #[test]
    fn monotone_in_k_u_and_subfamilies((f, u) in family_strategy(14), k in 2usize..5, keep in any::<u64>()) {
        if is_intersecting(&f, k, u).unwrap() {
            prop_assert!(is_intersecting(&f, k + 1, u).unwrap());
            if u >= 2 {
                prop_assert!(is_intersecting(&f, k, u - 1).unwrap());
            }
            let sub: Vec<usize> = (0..f.len()).filter(|i| keep >> (i % 64) & 1 == 1).collect();
            prop_assert!(is_intersecting(&f.subfamily(&sub), k, u).unwrap());
        }
    }

    #[test]
    fn kernel_is_maximal_scattered((f, u) in family_strategy(14)) {
        let k = scattered_kernel(&f, u).unwrap();
        prop_assert!(is_maximal_scattered(&lists_of(&f), &k.indices, u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn decomposition_meets_the_bound(p in params_strategy(), n_extra in 0usize..6, seed in any::<u64>()) {
        let n = (p.s + n_extra).max(p.s);
        let Some((f, _)) = intersecting_instance(&p, n, 30, Construction::FilteredRandom, 32, seed).unwrap() else {
            return Ok(());
        };
        let run = decompose_run(&f, &p).unwrap();
        let d = &run.decomposition;
        prop_assert!(run.kernel.len() < p.k);
        prop_assert!(run.trace_count as u64 <= run.kernel.len() as u64 * binomial::<u64>(p.s as u64, p.u as u64).unwrap());

        let report = verify_decomposition(&f, d, p.ell, p.u, run.bound).unwrap();
        prop_assert!(report.is_valid() && report.disjoint, "{report:?}");
        prop_assert!(d.len() <= f.len().min(run.bound as usize));
        prop_assert!(d.parts.iter().all(|part| !part.is_empty()));

        // every trace class shares its trace
        let cover = trace_cover(&f, &run.kernel, p.u).unwrap();
        for (t, class) in cover.classes().iter().enumerate() {
            let sub = f.subfamily(class);
            prop_assert!(class.iter().all(|&m| cover.traces[t].is_subset(f.member(m))));
            prop_assert!(sub.len() < 2 || is_intersecting(&sub, 2, p.u).unwrap());
        }

        // same input bytes, same output
        let again = decompose(&SetFamily::parse(f.to_text().as_bytes()).unwrap(), &p).unwrap();
        prop_assert_eq!(&again, d);

        let c = compact(&f, d, p.ell, p.u).unwrap();
        prop_assert!(c.len() <= d.len());
        let rc = verify_decomposition(&f, &c, p.ell, p.u, run.bound).unwrap();
        prop_assert!(rc.is_valid() && rc.disjoint);
    }

    #[test]
    fn kernel_reaches_k_on_far_members(p in params_strategy()) {
        // k pairwise-disjoint members force a kernel of size at least k
        let f = SetFamily::new(
            p.s,
            p.k * p.s,
            (0..p.k).map(|i| MemberSet::from_elements(i * p.s..(i + 1) * p.s)),
        ).unwrap();
        prop_assert!(scattered_kernel(&f, p.u).unwrap().len() >= p.k);
        let is_not_intersecting = matches!(decompose(&f, &p), Err(Error::NotIntersecting(_)));
        prop_assert!(is_not_intersecting);
    }

    #[test]
    fn oracle_sandwich_and_brute_force((f, u) in family_strategy(8), ell in 2usize..5) {
        let l = lists_of(&f);
        let r = min_cover_exact(&f, ell, u).unwrap();
        prop_assert_eq!(r.minimum, bell_min_partition(&l, ell, u));
        prop_assert_eq!(r.optimal_parts.len(), r.minimum);
        let report = verify_decomposition(&f, &r.optimal_parts, ell, u, r.minimum as u64).unwrap();
        prop_assert!(report.is_valid() && report.disjoint);
        if ell == 2 {
            let g = disjointness_graph(&f, u).unwrap();
            prop_assert_eq!(chromatic_number(&g).unwrap(), r.minimum);
            prop_assert_eq!(brute_chromatic(l.len(), |a, b| meet(&l[a], &l[b]) < u), r.minimum);
        }
        let omega = naive_clique_number(&l, u);
        let k = omega.max(ell) + 1;
        if let Ok(p) = BoundParams::new(f.uniformity(), k, u, ell) {
            let d = decompose(&f, &p).unwrap();
            prop_assert!(r.minimum <= d.len());
            prop_assert!(d.len() as u64 <= theorem_bound(&p).unwrap());
        }
    }

    #[test]
    fn oracle_witness_is_lexicographically_least((f, u) in family_strategy(7), ell in 2usize..4) {
        // restricted-growth labelling of the oracle's parts
        let r = min_cover_exact(&f, ell, u).unwrap();
        let labels: Vec<usize> = r.optimal_parts.part_of(f.len()).into_iter().map(Option::unwrap).collect();
        let l = lists_of(&f);
        let n = l.len();
        // enumerate restricted-growth strings in lexicographic order; the first
        // valid one with the minimum number of blocks must equal the oracle's
        let mut rgs = vec![0usize; n];
        let first = loop {
            let used = rgs.iter().max().map_or(0, |m| m + 1);
            if used == r.minimum {
                let ok = (0..used).all(|p| {
                    let part: Lists = (0..n).filter(|&v| rgs[v] == p).map(|v| l[v].clone()).collect();
                    naive_is_intersecting(&part, ell, u)
                });
                if ok {
                    break rgs.clone();
                }
            }
            // next restricted-growth string
            let mut i = n;
            loop {
                if i <= 1 { unreachable!("minimum partition exists"); }
                i -= 1;
                let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for x in rgs[i + 1..].iter_mut() { *x = 0; }
                    break;
                }
            }
        };
        prop_assert_eq!(labels, first);
    }

    #[test]
    fn generator_guarantees(seed in any::<u64>(), s in 1usize..5, extra in 0usize..4, k in 3usize..6) {
        for u in 1..=s {
            let n = s + extra + 1;
            let room = binomial::<u64>((n - u) as u64, (s - u) as u64).unwrap() as usize;
            let star = gen_star(n, s, u, room.min(6), seed).unwrap();
            prop_assert!(is_intersecting(&star, 2, u).unwrap());

            let n = (k - 1) * s + extra;
            let block = n / (k - 1);
            let per = binomial::<u64>((block - u) as u64, (s - u) as u64).unwrap() as usize;
            let f = gen_scattered_stars(n, s, u, k, per.min(3), seed).unwrap();
            prop_assert!(is_intersecting(&f, k, u).unwrap());
            prop_assert!(!is_intersecting(&f, k - 1, u).unwrap());
            prop_assert_eq!(scattered_kernel(&f, u).unwrap().len(), k - 1);
            prop_assert_eq!(SetFamily::parse(f.to_text().as_bytes()).unwrap(), f);

            for core in 0..=s {
                let flower = gen_sunflower(core, s - core, 3, seed).unwrap();
                prop_assert_eq!(is_intersecting(&flower, 2, u).unwrap(), u <= core || flower.len() < 2);
            }
        }
    }
}
