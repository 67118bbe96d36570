//! Pile embedding problems: brute force, the group-level route, and basic piles.

use piles::battery::{instance_rng, random_basic_instance, random_pile_ep};
use piles::catalog::{catalog, CatalogKind};
use piles::embedding::{
    check_basic_solution, check_pile_solution, solve_basic_pile_ep, solve_pile_ep_bruteforce, solve_pile_ep_via_pairs,
    Solution,
};
use piles::pile::{check_epi, check_rigid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let groups = catalog(2, CatalogKind::P3)?;
    for i in 0..6 {
        let ep = random_pile_ep(&mut instance_rng(1, i), &groups, &groups, 4, 2);
        let b = ep.alpha().source();
        print!("EP {i}: |G|={} |A|={} |B|={} ", ep.phi().source().group().order(), ep.alpha().target().group().order(), b.group().order());
        match solve_pile_ep_bruteforce(&ep)? {
            Solution::Solved(gamma) => {
                check_pile_solution(&ep, &gamma)?;
                print!("solved, gamma = {:?}", gamma.group_map().map());
            }
            Solution::Unsolvable { candidates } => print!("unsolvable after {candidates} candidates"),
        }
        match solve_pile_ep_via_pairs(&ep) {
            Ok(s) => println!("; through pairs: solved {}", s.is_solved()),
            Err(e) => println!("; through pairs: {e}"),
        }
    }

    let inst = random_basic_instance(&mut instance_rng(1, 99), &groups, &groups, 6, 8);
    let cert = check_rigid(&check_epi(&inst.alpha)?)?;
    let sol = solve_basic_pile_ep(&inst.basic, &inst.phi, &cert)?;
    check_basic_solution(&inst.basic, &inst.phi, &inst.alpha, &sol)?;
    println!("basic pile with {} factors and free rank {} lifts: {:?}", inst.basic.factors.len(), inst.basic.free_rank, sol.points);
    Ok(())
}
