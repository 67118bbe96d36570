//! Standard extensions, quotients, rigidity and fibered products.

use piles::catalog::by_name;
use piles::pile::{check_epi, check_rigid, fiber_product, quotient_pile, standard_extension};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d4 = by_name("D4")?;
    let reflection = d4.subgroup_generated(&[4])?;
    let ext = standard_extension(&d4, &[("free".into(), d4.trivial_subgroup()), ("mirror".into(), reflection)])?;
    println!("standard extension: {} points, base points {:?}", ext.pile.size(), ext.base_points);

    for n in d4.normal_subgroups() {
        let (q, m) = quotient_pile(&ext.pile, &n)?;
        let rigid = check_epi(&m).and_then(|e| check_rigid(&e)).is_ok();
        println!("mod {:?}: group order {}, {} points, rigid {}", n.members(), q.group().order(), q.size(), rigid);
    }

    // Pull a rigid quotient back along itself.
    let center = d4.normal_subgroups().into_iter().find(|n| n.order() == 2).unwrap();
    let regular = standard_extension(&d4, &[("t".into(), d4.trivial_subgroup())])?.pile;
    let (_, alpha) = quotient_pile(&regular, &center)?;
    let fp = fiber_product(&alpha, &alpha)?;
    let rigid = check_rigid(&check_epi(&fp.alpha_hat)?).is_ok();
    println!("fibered product: group order {}, {} points, pulled back edge rigid {}", fp.pile.group().order(), fp.pile.size(), rigid);
    Ok(())
}
