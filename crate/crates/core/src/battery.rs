//! Seeded random instances: piles, rigid epimorphisms, embedding problems
//! and basic-pile problems.
//!
//! Instance `i` of a battery draws from its own ChaCha stream, so instances
//! can be generated in parallel and re-run one at a time.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::NamedGroup;
use crate::embedding::{BasicPile, BasicPileMap, PileEmbeddingProblem};
use crate::group::{FiniteGroup, GroupHom, Subgroup};
use crate::gset::{GSet, Point};
use crate::pile::{quotient_pile, rigid_certificate, standard_extension, Pile, PileMorphism};

pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Renumbers the points of `s` by `perm` (old point `t` becomes `perm[t]`).
pub fn relabel(s: &GSet, perm: &[Point]) -> GSet {
    let mut rows = vec![Vec::new(); s.size()];
    for t in s.points() {
        rows[perm[t]] = s.group().elements().map(|g| perm[s.act(t, g)]).collect();
    }
    GSet::new(s.group(), rows).expect("relabeling preserves the action")
}

/// A random pile together with an orbit transversal.
#[derive(Clone, Debug)]
pub struct RandomPile {
    pub group_name: String,
    pub pile: Pile,
    pub transversal: Vec<Point>,
}

/// Stitches random coset spaces `H\G` together until the space would exceed
/// `max_space`, then renumbers the points at random.
pub fn random_pile<R: Rng>(rng: &mut R, groups: &[NamedGroup], max_space: usize) -> RandomPile {
    let ng = groups.choose(rng).expect("nonempty catalog");
    let subs = ng.group.all_subgroups();
    let target = rng.gen_range(1..=max_space.max(1));
    let reps = stitch(rng, &subs, target, |_| true);
    build_random_pile(rng, &ng.name, &ng.group, &reps)
}

fn stitch<R: Rng>(rng: &mut R, subs: &[Subgroup], room: usize, allowed: impl Fn(&Subgroup) -> bool) -> Vec<Subgroup> {
    let mut reps = Vec::new();
    let mut left = room;
    loop {
        let fitting: Vec<&Subgroup> = subs.iter().filter(|h| h.index() <= left && allowed(h)).collect();
        let Some(h) = fitting.choose(rng) else { break };
        left -= h.index();
        reps.push((*h).clone());
        if left == 0 || rng.gen_bool(0.35) {
            break;
        }
    }
    reps
}

fn build_random_pile<R: Rng>(rng: &mut R, name: &str, g: &FiniteGroup, reps: &[Subgroup]) -> RandomPile {
    let labeled: Vec<(String, Subgroup)> = reps.iter().enumerate().map(|(i, h)| (format!("t{i}"), h.clone())).collect();
    let ext = standard_extension(g, &labeled).expect("subgroups of g");
    let mut perm: Vec<Point> = ext.pile.space().points().collect();
    perm.shuffle(rng);
    RandomPile {
        group_name: name.to_string(),
        pile: Pile::new(relabel(ext.pile.space(), &perm)),
        transversal: ext.base_points.iter().map(|&b| perm[b]).collect(),
    }
}

/// `α: (B, Y) → (B/K, Y/K)` with `K` normal and meeting every stabilizer
/// trivially, which makes `α` rigid. Each orbit of `Y` is repeated up to
/// `copies` times.
pub fn random_rigid_epi<R: Rng>(rng: &mut R, groups: &[NamedGroup], max_space: usize, copies: usize) -> PileMorphism {
    let ng = groups.choose(rng).expect("nonempty catalog");
    let b = &ng.group;
    let subs = b.all_subgroups();
    let room = max_space.max(1);
    let normals: Vec<Subgroup> = b
        .normal_subgroups()
        .into_iter()
        .filter(|k| subs.iter().any(|h| h.index() <= room && h.intersect(k).is_trivial()))
        .collect();
    let k = normals.choose(rng).expect("trivial subgroup is normal").clone();
    let fits = |h: &Subgroup| h.intersect(&k).is_trivial();
    let least = subs.iter().filter(|h| fits(h)).map(|h| h.index()).min().expect("k admits a complement");
    let target = rng.gen_range(least..=room);
    let base = stitch(rng, &subs, target, fits);
    let mut reps = Vec::new();
    let mut used = 0;
    for h in base {
        let n = rng.gen_range(1..=copies.max(1));
        for _ in 0..n {
            if used + h.index() > max_space * copies.max(1) {
                break;
            }
            used += h.index();
            reps.push(h.clone());
        }
    }
    let source = build_random_pile(rng, &ng.name, b, &reps).pile;
    let (_, alpha) = quotient_pile(&source, &k).expect("k is normal");
    debug_assert!(rigid_certificate(&alpha).is_ok());
    alpha
}

/// A random pile morphism `φ: G → A` with `G` drawn from `groups`.
pub fn random_morphism_into<R: Rng>(rng: &mut R, a: &Pile, groups: &[NamedGroup], max_space: usize) -> PileMorphism {
    let ng = groups.choose(rng).expect("nonempty catalog");
    let g = &ng.group;
    let homs = g.homs_to(a.group());
    let phi = homs.choose(rng).expect("trivial hom exists").clone();
    let subs = g.all_subgroups();
    let mut left = rng.gen_range(1..=max_space.max(1));
    let mut reps: Vec<(Subgroup, Point)> = Vec::new();
    while a.size() > 0 {
        let options: Vec<(&Subgroup, Point)> = subs
            .iter()
            .filter(|h| h.index() <= left)
            .flat_map(|h| a.space().points().map(move |x| (h, x)))
            .filter(|(h, x)| phi.image_of(h).is_subset_of(&a.stab(*x)))
            .collect();
        let Some(&(h, x)) = options.choose(rng) else { break };
        left -= h.index();
        reps.push((h.clone(), x));
        if left == 0 || rng.gen_bool(0.35) {
            break;
        }
    }
    let hs: Vec<Subgroup> = reps.iter().map(|(h, _)| h.clone()).collect();
    let built = build_random_pile(rng, &ng.name, g, &hs);
    let source = built.pile;
    let mut map = vec![usize::MAX; source.size()];
    for (&base, (_, x)) in built.transversal.iter().zip(&reps) {
        for e in g.elements() {
            map[source.act(base, e)] = a.act(*x, phi.apply(e));
        }
    }
    PileMorphism::new(&source, a, phi, map).expect("orbit maps are equivariant")
}

/// A random pile embedding problem: a rigid `α: B → A` and `φ: G → A`.
pub fn random_pile_ep<R: Rng>(
    rng: &mut R,
    cover_groups: &[NamedGroup],
    source_groups: &[NamedGroup],
    max_space: usize,
    copies: usize,
) -> PileEmbeddingProblem {
    let alpha = random_rigid_epi(rng, cover_groups, max_space, copies);
    let phi = random_morphism_into(rng, alpha.target(), source_groups, max_space);
    PileEmbeddingProblem::new(phi, alpha).expect("generated alpha is rigid")
}

/// A basic pile with factors drawn from `groups` and a morphism into the
/// target of `alpha`.
#[derive(Clone, Debug)]
pub struct BasicInstance {
    pub basic: BasicPile,
    pub phi: BasicPileMap,
    pub alpha: PileMorphism,
}

pub fn random_basic_instance<R: Rng>(
    rng: &mut R,
    factor_groups: &[NamedGroup],
    cover_groups: &[NamedGroup],
    max_space: usize,
    max_target_order: usize,
) -> BasicInstance {
    let mut alpha = random_rigid_epi(rng, cover_groups, max_space, 1);
    while alpha.target().group().order() > max_target_order {
        alpha = random_rigid_epi(rng, cover_groups, max_space, 1);
    }
    let a = alpha.target().clone();
    let basic = random_basic_pile(rng, factor_groups, 3, 2);
    let mut factor_homs = Vec::new();
    let mut points = Vec::new();
    for (_, f) in &basic.factors {
        let x = rng.gen_range(0..a.size());
        let stab = a.stab(x);
        let homs: Vec<GroupHom> =
            f.homs_to(a.group()).into_iter().filter(|h| h.image().is_subset_of(&stab)).collect();
        factor_homs.push(homs.choose(rng).expect("trivial hom fixes x").clone());
        points.push(x);
    }
    let free_images = (0..basic.free_rank).map(|_| rng.gen_range(0..a.group().order())).collect();
    BasicInstance { basic, phi: BasicPileMap { factor_homs, free_images, points }, alpha }
}

/// Up to `max_factors` factors (at least one) and free rank up to `max_rank`.
pub fn random_basic_pile<R: Rng>(rng: &mut R, groups: &[NamedGroup], max_factors: usize, max_rank: usize) -> BasicPile {
    let n = rng.gen_range(1..=max_factors.max(1));
    let factors = (0..n)
        .map(|i| {
            let ng = groups.choose(rng).expect("nonempty catalog");
            (format!("x{i}"), ng.group.clone())
        })
        .collect();
    BasicPile { factors, free_rank: rng.gen_range(0..=max_rank) }
}

/// A hom `ρ: G → L` with `L` from `groups`, injective on every subgroup in
/// `stabs`. Falls back to the identity of `G` when none is found.
pub fn random_rho<R: Rng>(rng: &mut R, g: &FiniteGroup, stabs: &[Subgroup], groups: &[NamedGroup]) -> (String, GroupHom) {
    let mut order: Vec<&NamedGroup> = groups.iter().collect();
    order.shuffle(rng);
    for ng in order {
        let good: Vec<GroupHom> =
            g.homs_to(&ng.group).into_iter().filter(|h| stabs.iter().all(|s| h.is_injective_on(s))).collect();
        if let Some(h) = good.choose(rng) {
            return (ng.name.clone(), h.clone());
        }
    }
    ("G".into(), g.identity_hom())
}

/// One injective hom into `L` per factor of a basic pile, with `L` from `groups`.
pub fn random_basic_rho<R: Rng>(rng: &mut R, b: &BasicPile, groups: &[NamedGroup]) -> Option<(String, Vec<GroupHom>)> {
    let mut order: Vec<&NamedGroup> = groups.iter().collect();
    order.shuffle(rng);
    for ng in order {
        let mut maps = Vec::new();
        for (_, f) in &b.factors {
            let inj: Vec<GroupHom> = f.homs_to(&ng.group).into_iter().filter(|h| h.is_injective()).collect();
            match inj.choose(rng) {
                Some(h) => maps.push(h.clone()),
                None => break,
            }
        }
        if maps.len() == b.factors.len() {
            return Some((ng.name.clone(), maps));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogKind};
    use crate::pile::check_rigid;

    #[test]
    fn batteries_are_reproducible() {
        let cat = catalog(2, CatalogKind::P3).unwrap();
        let a = random_pile(&mut instance_rng(7, 3), &cat, 6);
        let b = random_pile(&mut instance_rng(7, 3), &cat, 6);
        assert_eq!(a.pile, b.pile);
        assert_eq!(a.transversal, b.transversal);
    }

    #[test]
    fn random_piles_have_transversals() {
        let cat = catalog(2, CatalogKind::P3).unwrap();
        for i in 0..50 {
            let p = random_pile(&mut instance_rng(1, i), &cat, 6);
            assert!(p.pile.size() <= 6);
            let idx = p.pile.space().orbit_index();
            let mut hit: Vec<usize> = p.transversal.iter().map(|&t| idx[t]).collect();
            hit.sort_unstable();
            assert_eq!(hit, (0..p.pile.space().orbits().len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn random_epis_are_rigid_and_problems_valid() {
        let p3 = catalog(2, CatalogKind::P3).unwrap();
        let p4 = catalog(2, CatalogKind::P4).unwrap();
        for i in 0..40 {
            let rng = &mut instance_rng(2, i);
            let alpha = random_rigid_epi(rng, &p4, 6, 2);
            assert!(check_rigid(&alpha.check_epi().unwrap()).is_ok());
            let phi = random_morphism_into(rng, alpha.target(), &p3, 6);
            assert_eq!(phi.target(), alpha.target());
        }
    }

    #[test]
    fn basic_instances_are_valid() {
        let p3 = catalog(2, CatalogKind::P3).unwrap();
        let p4 = catalog(2, CatalogKind::P4).unwrap();
        for i in 0..40 {
            let inst = random_basic_instance(&mut instance_rng(3, i), &p3, &p4, 6, 8);
            assert!(inst.alpha.target().group().order() <= 8);
            crate::embedding::check_basic_map(&inst.basic, &inst.phi, inst.alpha.target()).unwrap();
        }
    }
}
