use necklace_core::constructions::{boundary, horn, simplex, spine};
use necklace_core::iso::{check_iso, find_iso, find_iso_marked};
use necklace_core::necklace::pair_poset;
use necklace_core::product::Product;
use necklace_core::report::{parse_sset, sset_json};
use necklace_core::sset::Sset;
use necklace_core::DeltaMap;
use proptest::prelude::*;

/// A weakly increasing map `[src] -> [tgt]`.
fn map_between(src: usize, tgt: usize) -> impl Strategy<Value = DeltaMap> {
    proptest::collection::vec(0..=tgt, src + 1).prop_map(move |mut img| {
        img.sort_unstable();
        DeltaMap::new(tgt, &img)
    })
}

fn delta_map(max: usize) -> impl Strategy<Value = DeltaMap> {
    (0..=max, 0..=max).prop_flat_map(|(src, tgt)| map_between(src, tgt))
}

/// Composable `[k] -> [l] -> [m]`.
fn composable(max: usize) -> impl Strategy<Value = (usize, DeltaMap, DeltaMap)> {
    (0..=max, 0..=max, 0..=max).prop_flat_map(|(m, l, k)| (Just(m), map_between(l, m), map_between(k, l)))
}

fn small_sset() -> impl Strategy<Value = Sset<1>> {
    prop_oneof![
        (0usize..=4).prop_map(simplex),
        (1usize..=4).prop_map(boundary),
        (1usize..=4).prop_map(spine),
        (2usize..=4).prop_flat_map(|k| (Just(k), 0..=k)).prop_map(|(k, t)| horn(k, t).unwrap()),
    ]
}

/// Strict chains of length `k + 1` in the grid `[p] × [q]`, counted by brute force.
fn grid_chains(p: usize, q: usize, k: usize) -> usize {
    let pts: Vec<(usize, usize)> = (0..=p).flat_map(|a| (0..=q).map(move |b| (a, b))).collect();
    fn go(pts: &[(usize, usize)], last: (usize, usize), left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        pts.iter().filter(|&&(a, b)| a >= last.0 && b >= last.1 && (a, b) != last).map(|&x| go(pts, x, left - 1)).sum()
    }
    pts.iter().map(|&x| go(&pts, x, k)).sum()
}

proptest! {
    #[test]
    fn epi_mono_factorization_recomposes(f in delta_map(5)) {
        let (e, m) = f.epi_mono();
        prop_assert!(e.is_surjective());
        prop_assert!(m.is_injective());
        prop_assert_eq!(m.compose(&e), f);
    }

    #[test]
    fn degeneracy_words_round_trip(f in delta_map(5)) {
        let (e, _) = f.epi_mono();
        let w = e.degeneracy_word();
        prop_assert!(w.windows(2).all(|p| p[0] > p[1]));
        prop_assert_eq!(DeltaMap::from_degeneracy_word(e.tgt(), &w), Some(e));
    }

    #[test]
    fn acting_is_functorial((m, f, g) in composable(3)) {
        let x = simplex(m);
        let top = x.gens_of_dim([m]).next().unwrap();
        let s = x.id_nf(top);
        let once = x.act(&s, &[f.compose(&g)]);
        let twice = x.act(&x.act(&s, &[f.clone()]), &[g.clone()]);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn product_of_simplices_counts_grid_chains(p in 0usize..=3, q in 0usize..=2) {
        let (a, b) = (simplex(p), simplex(q));
        let prod = Product::new(&[&a, &b]).unwrap();
        let counts = prod.sset.nd_counts();
        for (k, &n) in counts.iter().enumerate() {
            prop_assert_eq!(n, grid_chains(p, q, k));
        }
        prop_assert_eq!(counts.len(), p + q + 1);
    }

    #[test]
    fn sset_json_round_trips(x in small_sset()) {
        let text = serde_json::to_string(&sset_json(&x)).unwrap();
        let back = parse_sset(&text).unwrap();
        let iso = find_iso(&x, &back);
        prop_assert!(iso.as_ref().is_some_and(|f| check_iso(f, &x, &back)));
    }

    #[test]
    fn relabelling_is_found_and_respects_marks(x in small_sset(), seed in any::<u64>()) {
        let n = x.num_gens();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = x.permuted(&perm);
        let f = find_iso(&x, &y).unwrap();
        prop_assert!(check_iso(&f, &x, &y));
        // a single marked generator must go to its relabelled copy
        let mx: Vec<bool> = (0..n).map(|g| g == 0).collect();
        let my: Vec<bool> = (0..n).map(|g| g == perm[0]).collect();
        let f = find_iso_marked(&x, &y, &mx, &my, 1_000_000).unwrap().unwrap();
        prop_assert_eq!(f.images[0].gen, perm[0]);
        if n > 1 {
            let two: Vec<bool> = (0..n).map(|g| g == perm[0] || g == perm[1]).collect();
            prop_assert!(find_iso_marked(&x, &y, &mx, &two, 1_000_000).unwrap().is_none());
        }
    }

    #[test]
    fn pair_poset_size_is_a_subset_sum(m in 0usize..=4, i in 0usize..=4) {
        prop_assume!(i <= m);
        let want: usize = (0u64..1 << (m - i)).map(|s| 1usize << s.count_ones()).sum();
        prop_assert_eq!(pair_poset(i, m).unwrap().len(), want);
    }
}
