//! Stabilizers, blocks and stabilizer-aligned refinements of a G-set.

use piles::catalog::by_name;
use piles::gset::{is_g_partition, refine_to_g_partition, stabilizer_aligned_g_partition, GSet, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d4 = by_name("D4")?;
    let subs = d4.all_subgroups();
    let order2: Vec<_> = subs.iter().filter(|s| s.order() == 2).cloned().collect();
    // Two coset spaces of order-2 subgroups, side by side.
    let (s, base) = GSet::coset_space(&d4, &order2[..2]);
    println!("{} points, base points {:?}, orbits {:?}", s.size(), base, s.orbits());

    for t in s.points() {
        println!("  stab({t}) = {:?}", s.stabilizer(t)?.members());
    }

    let halves = Partition::from_labels(s.points().map(|t| t < s.size() / 2));
    println!("halves form a G-partition: {}", is_g_partition(&s, &halves));

    let pairs = Partition::from_labels(s.points().map(|t| t / 2));
    let refined = refine_to_g_partition(&s, &pairs);
    println!("refined {:?} to {:?}", pairs.blocks(), refined.blocks());

    let (aligned, witnesses) = stabilizer_aligned_g_partition(&s, &pairs);
    for (block, w) in aligned.blocks().iter().zip(&witnesses) {
        println!("  block {:?}: setwise stabilizer equals stab({w})", block);
    }
    Ok(())
}
