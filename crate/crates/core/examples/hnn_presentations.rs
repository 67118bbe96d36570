//! Pile HNN-extensions compared by homomorphism counts.

use piles::catalog::{by_name, catalog, CatalogKind};
use piles::group::Subgroup;
use piles::pile::standard_extension;
use piles::presentation::{
    build_hnn_prime_for_pile, build_phnn, hnn_to_phnn_kernel, hom_count, hom_profile, mod_l_prediction, mod_l_quotient,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cat = catalog(2, CatalogKind::P3)?;
    let c4 = by_name("C4")?;
    let half = Subgroup::new(&c4, &[0, 2])?;
    let ext = standard_extension(&c4, &[("a".into(), half), ("b".into(), c4.trivial_subgroup())])?;
    let pile = ext.pile;
    let rho = c4.identity_hom();

    let phnn = build_phnn(&pile, &rho)?;
    println!("pHNN: {} factors, {} stable letters, {} relators", phnn.factors().len(), phnn.free_count(), phnn.relators().len());
    let profile = hom_profile(&phnn, &cat);
    for (name, n) in &profile.entries {
        println!("  |Hom(pHNN, {name})| = {n}");
    }

    let hnn = build_hnn_prime_for_pile(&pile, &ext.base_points, &rho, rho.target())?;
    println!("HNN' on the base points agrees: {}", hom_profile(&hnn, &cat) == profile);

    let (full, words) = hnn_to_phnn_kernel(&pile, &ext.base_points, &rho)?;
    let cut = full.quotient_by_closure(&words)?;
    println!("HNN' on all points modulo {} kernel words agrees: {}", words.len(), hom_profile(&cut, &cat) == profile);

    let mod_l = mod_l_quotient(&phnn, 1)?;
    let pred = mod_l_prediction(&pile);
    println!("mod L matches G/<stabilizers> * F(orbits): {}", hom_profile(&mod_l, &cat) == hom_profile(&pred, &cat));
    println!("|Hom(mod L, D4)| = {}", hom_count(&mod_l, &by_name("D4")?));
    Ok(())
}
