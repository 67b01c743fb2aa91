use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use permarray::bounds::{propagate_bounds, BoundRecord, BoundTag, Window};
use permarray::contraction::{contract, contraction_drop, drops_by_three};
use permarray::distance::{
    group_hd, hd_to_cyclic, hd_to_cyclic_cosets, pa_hd, pairwise_hd, poly_hd, GroupDistance,
};
use permarray::group::{
    gen_agammal1, gen_agl1, gen_cyclic, gen_pgammal2, gen_pgl2, poly_to_perm, MaterializedGroup,
};
use permarray::pa_file::{parse_pa, serialize_pa, PaFile};
use permarray::search::{coset_search, gv_bound, random_permutation, seeded_rng, verify_search_output};
use permarray::{FPoly, FieldElement, FieldSpec, Mode, PermArray, Permutation, SearchConfig};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (perm(n), perm(n)))
}

fn perm_triple(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hamming_is_a_bi_invariant_metric((a, b, c) in perm_triple(12)) {
        let d = |x: &Permutation, y: &Permutation| x.hamming(y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert_ne!(d(&a, &b), 1);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        let left = |x: &Permutation| c.compose(x).unwrap();
        let right = |x: &Permutation| x.compose(&c).unwrap();
        prop_assert_eq!(d(&left(&a), &left(&b)), d(&a, &b));
        prop_assert_eq!(d(&right(&a), &right(&b)), d(&a, &b));
        // hd(a, b) is the support of a^-1 b
        prop_assert_eq!(a.inverse().compose(&b).unwrap().support_size(), d(&a, &b));
    }

    #[test]
    fn inverse_and_cycles((a, b) in perm_pair(15)) {
        let n = a.degree();
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let ab = a.compose(&b).unwrap();
        for i in 0..n {
            prop_assert_eq!(ab.apply(i), b.apply(a.apply(i)));
        }
        let cd = a.cycle_decomposition();
        let total: usize = cd.cycles.iter().map(Vec::len).sum();
        prop_assert_eq!(total, n);
        let by_hist: usize = cd.histogram.iter().map(|(len, count)| len * count).sum();
        prop_assert_eq!(by_hist, n);
        prop_assert_eq!(cd.fixed_points().len(), n - a.support_size());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), a);
    }

    #[test]
    fn cyclic_fast_path_matches_brute_force((pi, reps) in (2usize..=10).prop_flat_map(|n| (perm(n), prop::collection::vec(perm(n), 1..5)))) {
        let n = pi.degree();
        let brute = |r: &Permutation| {
            (0..n)
                .map(|j| pi.hamming(&r.compose(&Permutation::rotation(n, j)).unwrap()).unwrap())
                .min()
                .unwrap()
        };
        let (d, hist) = hd_to_cyclic(&pi);
        prop_assert_eq!(d, brute(&Permutation::identity(n)));
        for (j, &v) in hist.d.iter().enumerate() {
            prop_assert_eq!(v as usize, pi.hamming(&Permutation::rotation(n, j)).unwrap());
        }
        let want = reps.iter().map(brute).min().unwrap();
        prop_assert_eq!(hd_to_cyclic_cosets(&pi, &reps).unwrap(), want);
    }

    #[test]
    fn contraction_drops_at_most_three((a, b) in (5usize..=10).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assume!(a != b);
        let drop = contraction_drop(&a, &b).unwrap();
        prop_assert!(drop <= 3);
        prop_assert_eq!(drop == 3, drops_by_three(&a, &b).unwrap());
        let (ca, cb) = (contract(&a).unwrap(), contract(&b).unwrap());
        prop_assert_eq!(ca.degree(), a.degree() - 1);
        prop_assert_eq!(a.hamming(&b).unwrap() - ca.hamming(&cb).unwrap(), drop);
    }

    #[test]
    fn bound_propagation_is_idempotent_and_monotone(
        raw in prop::collection::vec((4usize..=14, 2usize..=14, 1u64..100_000), 0..8)
    ) {
        let records: Vec<BoundRecord> = raw
            .into_iter()
            .filter(|&(n, d, _)| d <= n)
            .map(|(n, d, s)| BoundRecord::new(n, d, s, BoundTag::V))
            .collect();
        let window = Window { n: 3..=15, d: 2..=15 };
        let once = propagate_bounds(&records, &window);
        prop_assert_eq!(&propagate_bounds(&once, &window), &once);
        for r in &records {
            let cell = once.iter().find(|x| x.n == r.n && x.d == r.d).unwrap();
            prop_assert!(cell.size >= r.size);
        }
        // every derived cell respects the rules it came from
        for r in &once {
            if let Some(up) = once.iter().find(|x| x.n == r.n && x.d == r.d + 1) {
                prop_assert!(r.size >= up.size);
            }
            if let Some(left) = once.iter().find(|x| x.n + 1 == r.n && x.d == r.d) {
                prop_assert!(r.size >= left.size);
            }
        }
    }
}

fn small_groups() -> Vec<MaterializedGroup> {
    let f = |q| FieldSpec::from_order(q).unwrap();
    let mut out = Vec::new();
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        out.push(gen_agl1(&f(q)));
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 11] {
        out.push(gen_pgl2(&f(q)));
    }
    for q in [4, 8, 9, 16, 25] {
        out.push(gen_agammal1(&f(q)));
    }
    for q in [4, 8, 9] {
        out.push(gen_pgammal2(&f(q)));
    }
    for n in [3, 6, 10, 12] {
        out.push(gen_cyclic(n).unwrap());
    }
    assert!(out.iter().all(|g| g.order() <= 2000));
    out
}

#[test]
fn group_oracles_agree_with_brute_force() {
    let mut rng = seeded_rng(11);
    for g in small_groups() {
        let n = g.degree();
        let fast = GroupDistance::new(&g);
        let slow = GroupDistance::without_fast_path(&g);
        for _ in 0..40 {
            let pi = random_permutation(&mut rng, n);
            let brute = g
                .elements()
                .iter()
                .map(|e| pi.hamming(e).unwrap())
                .min()
                .unwrap();
            let (d, idx) = fast.nearest(&pi);
            assert_eq!(d, brute, "{}", g.descriptor());
            assert_eq!(pi.hamming(&g.elements()[idx]).unwrap(), d);
            assert_eq!(slow.nearest(&pi).0, brute);
            for floor in [brute, brute + 1] {
                let got = fast.distance_at_least(&pi, floor);
                assert_eq!(got, (brute >= floor).then_some(brute));
            }
        }
        if g.order() <= 400 {
            assert_eq!(
                group_hd(&g).unwrap().min_distance,
                pairwise_hd(g.elements()).unwrap().min_distance,
                "{}",
                g.descriptor()
            );
        }
    }
}

#[test]
fn coset_shortcut_matches_pairwise_scan() {
    let mut rng = seeded_rng(12);
    let f = |q| FieldSpec::from_order(q).unwrap();
    let bases = [
        Arc::new(gen_agl1(&f(5))),
        Arc::new(gen_agl1(&f(7))),
        Arc::new(gen_pgl2(&f(5))),
        Arc::new(gen_cyclic(7).unwrap()),
        Arc::new(gen_agammal1(&f(8))),
    ];
    let mut checked = 0;
    while checked < 150 {
        let base = &bases[checked % bases.len()];
        let k = 1 + checked % 4;
        let reps: Vec<_> = (0..k).map(|_| random_permutation(&mut rng, base.degree())).collect();
        let Ok(pa) = PermArray::new(base.clone(), reps, 0) else { continue };
        let shortcut = pa_hd(&pa, Mode::CosetShortcut).unwrap();
        let exact = pa_hd(&pa, Mode::ExactPairwise).unwrap();
        assert_eq!(shortcut.min_distance, exact.min_distance);
        let (i, j) = shortcut.witness;
        assert_eq!(
            pa.element(i).hamming(&pa.element(j)).unwrap(),
            shortcut.min_distance
        );
        checked += 1;
    }
}

#[test]
fn poly_hd_matches_permutation_distance() {
    let mut rng = seeded_rng(13);
    use rand::Rng;
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
        let f = FieldSpec::from_order(q).unwrap();
        let k = f.degree();
        let p = f.characteristic() as usize;
        for _ in 0..100 {
            let pick = |rng: &mut permarray::search::SearchRng| {
                let a = f.element(rng.gen_range(1..q as u32)).unwrap();
                let b = f.element(rng.gen_range(0..q as u32)).unwrap();
                let i = rng.gen_range(0..k);
                (a, b, i)
            };
            let (a1, b1, i1) = pick(&mut rng);
            let (a2, b2, i2) = pick(&mut rng);
            if (a1, b1, i1) == (a2, b2, i2) {
                continue;
            }
            let poly = |a: FieldElement, b: FieldElement, i: u32| {
                f.poly_add(&FPoly::monomial(a, p.pow(i)), &FPoly::constant(b))
            };
            let want = poly_to_perm(&f, a1, b1, i1)
                .unwrap()
                .hamming(&poly_to_perm(&f, a2, b2, i2).unwrap())
                .unwrap();
            let got = poly_hd(&f, &poly(a1, b1, i1), &poly(a2, b2, i2)).unwrap();
            assert_eq!(got, want, "GF({q})");
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic greedy code over all of `S_n`.
fn greedy_code_size(n: usize, d: usize) -> usize {
    let mut code: Vec<Vec<u32>> = Vec::new();
    let mut v: Vec<u32> = (0..n as u32).collect();
    loop {
        let far = code.iter().all(|c| {
            let mut diff = 0;
            for (x, y) in c.iter().zip(&v) {
                if x != y {
                    diff += 1;
                    if diff >= d {
                        return true;
                    }
                }
            }
            false
        });
        if far {
            code.push(v.clone());
        }
        if !next_permutation(&mut v) {
            return code.len();
        }
    }
}

#[test]
fn gv_never_exceeds_a_greedy_code() {
    let factorial = |n: usize| (1..=n as u64).product::<u64>();
    let mut compared = 0;
    for n in 5..=10 {
        for d in 2..=n {
            let gv = gv_bound(n, d).unwrap();
            let bound: u64 = gv.bound.clone().try_into().unwrap();
            if d == 2 {
                // distinct permutations are always 2 apart
                assert_eq!(gv.bound, BigUint::from(factorial(n)));
                continue;
            }
            // keep the brute force affordable
            if factorial(n).saturating_mul(bound) > 150_000_000 {
                continue;
            }
            let greedy = greedy_code_size(n, d) as u64;
            assert!(bound <= greedy, "n={n} d={d}: gv {bound} > greedy {greedy}");
            compared += 1;
        }
    }
    assert!(compared >= 15, "only {compared} cases compared");
}

#[test]
fn random_permutations_are_reproducible_and_uniform() {
    let golden = random_permutation(&mut seeded_rng(2024), 8);
    assert_eq!(golden.to_string(), GOLDEN_2024_8);

    // chi-square over S_3 with 5 degrees of freedom; 20.5 is the 0.001 tail
    let mut rng = seeded_rng(1);
    let trials = 60_000;
    let mut counts = std::collections::HashMap::new();
    for _ in 0..trials {
        *counts.entry(random_permutation(&mut rng, 3)).or_insert(0u32) += 1;
    }
    assert_eq!(counts.len(), 6);
    let expected = trials as f64 / 6.0;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi2 < 20.5, "chi2 = {chi2}");
}

const GOLDEN_2024_8: &str = "4 1 0 6 3 5 2 7";

#[test]
fn pa_files_round_trip() {
    let mut rng = seeded_rng(14);
    let f = |q| FieldSpec::from_order(q).unwrap();
    let bases = [
        Arc::new(gen_agl1(&f(7))),
        Arc::new(gen_pgl2(&f(4))),
        Arc::new(gen_cyclic(6).unwrap()),
        Arc::new(gen_agammal1(&f(9))),
    ];
    for (t, base) in bases.iter().cycle().take(40).enumerate() {
        let reps: Vec<_> = (0..t % 4).map(|_| random_permutation(&mut rng, base.degree())).collect();
        let Ok(mut pa) = PermArray::new(base.clone(), reps, t % 5) else { continue };
        if t % 3 == 0 {
            pa.seed = Some(t as u64);
            pa.note = Some(format!("case {t}"));
        }
        let text = serialize_pa(&PaFile::from_perm_array(&pa));
        let parsed = parse_pa(&text).unwrap();
        assert_eq!(serialize_pa(&parsed), text);
        let back = parsed.to_perm_array(None).unwrap();
        assert_eq!(back.reps(), pa.reps());
        assert_eq!(back.claimed_d(), pa.claimed_d());
        assert_eq!(back.base().descriptor(), pa.base().descriptor());
        assert_eq!((back.seed, back.note.clone()), (pa.seed, pa.note.clone()));
    }
}

#[test]
fn search_output_always_verifies() {
    let f = |q| FieldSpec::from_order(q).unwrap();
    for (base, d) in [
        (gen_agl1(&f(7)), 4),
        (gen_pgl2(&f(8)), 5),
        (gen_cyclic(7).unwrap(), 5),
        (gen_agl1(&f(8)), 5),
    ] {
        let base = Arc::new(base);
        for seed in 0..3 {
            let mut cfg = SearchConfig::new(d, seed);
            cfg.max_candidates = 2000;
            cfg.max_cosets = Some(10);
            cfg.require_tight = seed != 2;
            let pa = coset_search(base.clone(), &cfg, None, |_| {}).unwrap();
            let report = verify_search_output(&pa, 5000).unwrap();
            assert!(report.min_distance >= d);
            if cfg.require_tight {
                assert_eq!(report.min_distance, d);
            }
        }
    }
}
