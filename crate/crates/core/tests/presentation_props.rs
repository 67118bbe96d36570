use piles::catalog::{catalog, groups_up_to_order_8, CatalogKind};
use piles::presentation::{free_product, hom_count, Presentation};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_multiply_over_free_products(i in 0usize..14, j in 0usize..14, free in 0usize..2) {
        let small = groups_up_to_order_8();
        let (a, b) = (&small[i % small.len()], &small[j % small.len()]);
        let p = Presentation::of_group(&a.name, &a.group);
        let q = free_product(&[Presentation::of_group(&b.name, &b.group), Presentation::free(free)]);
        let both = free_product(&[p.clone(), q.clone()]);
        for r in catalog(2, CatalogKind::P3).unwrap() {
            prop_assert_eq!(hom_count(&both, &r.group), hom_count(&p, &r.group) * hom_count(&q, &r.group));
        }
    }

    #[test]
    fn a_group_counts_its_homs(i in 0usize..14, t in 0usize..9) {
        let small = groups_up_to_order_8();
        let g = &small[i % small.len()];
        let cat = catalog(2, CatalogKind::P3).unwrap();
        let q = &cat[t % cat.len()].group;
        prop_assert_eq!(hom_count(&Presentation::of_group(&g.name, &g.group), q), g.group.homs_to(q).len() as u128);
    }
}
