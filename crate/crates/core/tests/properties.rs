use bellcheck::gallery::{random_model, random_ns_tables, SizeCaps};
use bellcheck::locality::{check_bell_locality, check_bell_locality_events};
use bellcheck::polytope::{chsh_facet_membership, lhv_membership, LhvVerdict};
use bellcheck::{CausalSite, ModelFile, PastSelector, Region};
use proptest::prelude::*;

/// Up to ten points with random edges `i -> j` for `i < j`.
fn site() -> impl Strategy<Value = CausalSite> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rel.push((i, j));
                    }
                    k += 1;
                }
            }
            CausalSite::new((0..n).map(|i| format!("p{i}")).collect(), &rel).unwrap()
        })
    })
}

fn region_of(site: &CausalSite, mask: u16) -> Region {
    Region::from_points(site.len(), (0..site.len()).filter(|i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn order_is_a_partial_order(s in site()) {
        let n = s.len();
        for x in 0..n {
            prop_assert!(s.precedes(x, x));
            for y in 0..n {
                if x != y && s.precedes(x, y) {
                    prop_assert!(!s.precedes(y, x));
                }
                for z in 0..n {
                    if s.precedes(x, y) && s.precedes(y, z) {
                        prop_assert!(s.precedes(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn covering_relations_regenerate_the_order(s in site()) {
        let again = CausalSite::new(s.names().to_vec(), &s.covering_relations()).unwrap();
        for x in 0..s.len() {
            for y in 0..s.len() {
                prop_assert_eq!(s.precedes(x, y), again.precedes(x, y));
            }
        }
    }

    #[test]
    fn light_cones_are_closures(s in site(), mask in any::<u16>()) {
        let r = region_of(&s, mask);
        let past = s.causal_past(&r).unwrap();
        let future = s.causal_future(&r).unwrap();
        prop_assert!(r.is_subset(&past) && r.is_subset(&future));
        prop_assert_eq!(s.causal_past(&past).unwrap(), past);
        prop_assert_eq!(s.causal_future(&future).unwrap(), future);
    }

    #[test]
    fn past_selectors_nest(s in site(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (i, j) = (i.index(s.len()), j.index(s.len()));
        prop_assume!(i != j);
        let a = Region::from_points(s.len(), [i]);
        let b = Region::from_points(s.len(), [j]);
        if s.comparable(i, j) {
            prop_assert!(s.resolve_past(&a, &b, &PastSelector::JointPast).is_err());
            return Ok(());
        }
        let get = |sel| s.resolve_past(&a, &b, &sel).unwrap();
        let mutual = get(PastSelector::MutualPast);
        let joint = get(PastSelector::JointPast);
        let pa = get(PastSelector::PastOfA);
        let pb = get(PastSelector::PastOfB);
        prop_assert!(mutual.is_subset(&pa) && mutual.is_subset(&pb));
        prop_assert_eq!(pa.union(&pb), joint.clone());
        prop_assert!(joint.is_disjoint(&a.union(&b)));
    }

    #[test]
    fn blocking_by_everything_between(s in site(), mx in any::<u16>(), my in any::<u16>()) {
        let x = region_of(&s, mx);
        let y = region_of(&s, my).difference(&x);
        let between = s.causal_future(&x).unwrap()
            .intersection(&s.causal_past(&y).unwrap())
            .difference(&x.union(&y));
        let direct = x.points().any(|p| y.points().any(|q| s.covering_relations().contains(&(p, q))));
        prop_assert_eq!(s.blocks(&between, &x, &y), !direct);
        prop_assert!(s.blocks(&s.empty_region(), &x, &y) || x.points().any(|p| y.points().any(|q| s.precedes(p, q))));
    }

    #[test]
    fn random_models_round_trip(seed in any::<u64>()) {
        let file = random_model(seed, &SizeCaps::default()).unwrap();
        let again = ModelFile::from_json(&file.to_json_pretty()).unwrap();
        prop_assert_eq!(&again, &file);
        prop_assert_eq!(file.canonical().unwrap().digest().unwrap(), file.digest().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn atom_and_event_bell_agree(seed in any::<u64>()) {
        let caps = SizeCaps { max_points: 5, max_histories: 16, max_generators: 6 };
        let loaded = random_model(seed, &caps).unwrap().build().unwrap();
        let s = loaded.scenario.as_ref().unwrap();
        for sel in [PastSelector::JointPast, PastSelector::MutualPast, s.past.clone()] {
            let atoms = check_bell_locality(&loaded.model, &s.wing_a, &s.wing_b, &sel).unwrap();
            let events = check_bell_locality_events(&loaded.model, &s.wing_a, &s.wing_b, &sel).unwrap();
            prop_assert_eq!(atoms.verdict(), events.verdict());
        }
    }
}

#[test]
fn lp_and_facets_agree_on_seeded_tables() {
    for (i, t) in random_ns_tables(99, 300).iter().enumerate() {
        let verdict = lhv_membership(t);
        assert_eq!(verdict.is_local(), chsh_facet_membership(t), "table {i}");
        if let LhvVerdict::Local(d) = verdict {
            assert_eq!(&d.reconstruct(), t, "table {i}");
        }
    }
}
