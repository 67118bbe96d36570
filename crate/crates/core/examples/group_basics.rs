//! Multiplication tables, subgroups, quotients and homomorphisms.

use piles::catalog::by_name;
use piles::group::{cyclic, Subgroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d4 = by_name("D4")?;
    println!("D4: order {}, abelian {}", d4.order(), d4.is_abelian());

    let subs = d4.all_subgroups();
    let normals = d4.normal_subgroups();
    println!("{} subgroups, {} normal", subs.len(), normals.len());

    let center = normals.iter().find(|n| n.order() == 2).expect("D4 has a center of order 2");
    let (q, pi) = d4.quotient(center)?;
    println!("D4 / Z(D4) has order {}, projection {:?}", q.order(), pi.map());

    // Homs C4 -> D4 are determined by the image of a generator.
    let c4 = cyclic(4);
    let homs = c4.homs_to(&d4);
    println!("|Hom(C4, D4)| = {}", homs.len());
    let injective = homs.iter().filter(|h| h.is_injective()).count();
    println!("{injective} of them are injective");

    let h = Subgroup::new(&d4, &[0, 2])?;
    println!("<2> is normal: {}, index {}", h.is_normal(), h.index());
    Ok(())
}
