use piles::battery::{instance_rng, random_pile, random_rigid_epi};
use piles::catalog::{catalog, groups_up_to_order_8, CatalogKind};
use piles::group::Subgroup;
use piles::pile::{check_epi, check_rigid, connect, fiber_product, quotient_pile, standard_extension, PileMorphism};
use proptest::prelude::*;
use rand::seq::SliceRandom;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn standard_extension_realizes_its_family(seed in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 1..4)) {
        let groups = groups_up_to_order_8();
        let mut rng = instance_rng(seed, 0);
        let g = groups.choose(&mut rng).unwrap().group.clone();
        let subs = g.all_subgroups();
        let reps: Vec<(String, Subgroup)> =
            picks.iter().enumerate().map(|(i, &k)| (format!("t{i}"), subs[k % subs.len()].clone())).collect();
        let ext = standard_extension(&g, &reps).unwrap();
        prop_assert_eq!(ext.pile.space().orbits().len(), reps.len());
        for ((_, h), &t) in reps.iter().zip(&ext.base_points) {
            prop_assert_eq!(ext.pile.stab(t).members().to_vec(), h.members().to_vec());
        }
    }

    #[test]
    fn quotient_rigidity_matches_trivial_meets(seed in any::<u64>(), k in any::<usize>()) {
        let rp = random_pile(&mut instance_rng(seed, 1), &groups_up_to_order_8(), 6);
        let normals = rp.pile.group().normal_subgroups();
        let n = &normals[k % normals.len()];
        let (_, m) = quotient_pile(&rp.pile, n).unwrap();
        let rigid = check_epi(&m).and_then(|e| check_rigid(&e)).is_ok();
        let meets = rp.pile.space().points().all(|t| rp.pile.stab(t).intersect(n).is_trivial());
        prop_assert_eq!(rigid, meets);
    }

    #[test]
    fn pulling_back_along_the_identity_changes_nothing(seed in any::<u64>()) {
        let groups = catalog(2, CatalogKind::P3).unwrap();
        let alpha = random_rigid_epi(&mut instance_rng(seed, 2), &groups, 5, 2);
        let id = PileMorphism::identity(alpha.target());
        let fp = fiber_product(&alpha, &id).unwrap();
        let b = alpha.source();
        prop_assert_eq!(fp.pile.group().order(), b.group().order());
        prop_assert_eq!(fp.pile.size(), b.size());
        prop_assert!(fp.p.group_map().is_injective() && fp.p.group_map().is_surjective());
        let mut img = fp.p.space_map().to_vec();
        img.sort();
        prop_assert_eq!(img, (0..b.size()).collect::<Vec<_>>());
        prop_assert!(check_rigid(&check_epi(&fp.alpha_hat).unwrap()).is_ok());
    }

    #[test]
    fn connecting_map_is_forced(seed in any::<u64>(), k in any::<usize>(), l in any::<usize>()) {
        let rp = random_pile(&mut instance_rng(seed, 3), &groups_up_to_order_8(), 6);
        let normals = rp.pile.group().normal_subgroups();
        let n = normals[k % normals.len()].clone();
        let m = n.join(&normals[l % normals.len()]);
        let (_, psi) = quotient_pile(&rp.pile, &n).unwrap();
        let (_, phi) = quotient_pile(&rp.pile, &m).unwrap();
        let alpha = connect(&phi, &psi).unwrap();
        for g in rp.pile.group().elements() {
            prop_assert_eq!(alpha.apply_elem(psi.apply_elem(g)), phi.apply_elem(g));
        }
        for t in rp.pile.space().points() {
            prop_assert_eq!(alpha.apply_point(psi.apply_point(t)), phi.apply_point(t));
        }
    }
}
