//! Finite piles `(G, T)` and their morphisms.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, Subgroup, IDENTITY};
use crate::gset::{stabilizer_aligned_g_partition, GSet, GSetError, Partition, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PileError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error("group map does not run between the piles' groups")]
    GroupMismatch,
    #[error("space map has {got} entries, expected {expected}")]
    SpaceMapLength { got: usize, expected: usize },
    #[error("space map sends point {point} to {image}, outside the target space")]
    SpaceMapOutOfRange { point: Point, image: Point },
    #[error("not equivariant at point {point}, element {elem}")]
    NotEquivariant { point: Point, elem: Elem },
    #[error("group map is not surjective (misses {0})")]
    NotSurjectiveOnGroups(Elem),
    #[error("space map is not surjective (misses point {0})")]
    NotSurjectiveOnPoints(Point),
    #[error("no point over {0} whose stabilizer maps onto the stabilizer of {0}")]
    NoStabilizerWitness(Point),
    #[error("group map is not injective on the stabilizer of {0}")]
    StabilizerNotInjective(Point),
    #[error("stabilizer of {0} does not map onto the stabilizer of its image")]
    StabilizerNotOnto(Point),
    #[error("orbits {0} and {1} have the same image orbit")]
    OrbitMapNotInjective(usize, usize),
    #[error("morphisms have different target piles")]
    MismatchedTarget,
    #[error("morphisms have different source piles")]
    MismatchedSource,
    #[error("kernel not contained: {0} is killed by psi but not by phi")]
    KernelNotContained(Elem),
    #[error("fibers not finer: points {0} and {1} share a psi-fiber but not a phi-fiber")]
    FibersNotFiner(Point, Point),
    #[error("stabilizers of distinct points {0} and {1} intersect nontrivially")]
    StabilizersNotDisjoint(Point, Point),
    #[error("partition does not match the space")]
    PartitionMismatch,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// A finite group acting on a finite space on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pile {
    space: GSet,
}

impl Pile {
    pub fn new(space: GSet) -> Self {
        Pile { space }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.space.group()
    }

    pub fn space(&self) -> &GSet {
        &self.space
    }

    pub fn size(&self) -> usize {
        self.space.size()
    }

    pub fn stab(&self, t: Point) -> Subgroup {
        self.space.stab(t)
    }

    pub fn act(&self, t: Point, g: Elem) -> Point {
        self.space.act(t, g)
    }

    /// The pile `(1, {*})`.
    pub fn point() -> Self {
        Pile { space: GSet::trivial(&FiniteGroup::trivial(), 1) }
    }

    /// True iff distinct points have trivially intersecting stabilizers.
    pub fn first_overlapping_stabilizers(&self) -> Option<(Point, Point)> {
        let stabs: Vec<Subgroup> = self.space.points().map(|t| self.stab(t)).collect();
        for t in self.space.points() {
            for u in t + 1..self.size() {
                if !stabs[t].intersect(&stabs[u]).is_trivial() {
                    return Some((t, u));
                }
            }
        }
        None
    }
}

/// An equivariant pair of maps between piles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PileMorphism {
    source: Pile,
    target: Pile,
    group_map: GroupHom,
    space_map: Vec<Point>,
}

impl PileMorphism {
    /// Validates shapes and equivariance `space_map(t^b) = space_map(t)^{group_map(b)}`.
    pub fn new(
        source: &Pile,
        target: &Pile,
        group_map: GroupHom,
        space_map: Vec<Point>,
    ) -> Result<Self, PileError> {
        if group_map.source() != source.group() || group_map.target() != target.group() {
            return Err(PileError::GroupMismatch);
        }
        if space_map.len() != source.size() {
            return Err(PileError::SpaceMapLength { got: space_map.len(), expected: source.size() });
        }
        if let Some((point, &image)) = space_map.iter().enumerate().find(|(_, &y)| y >= target.size()) {
            return Err(PileError::SpaceMapOutOfRange { point, image });
        }
        for point in source.space().points() {
            for elem in source.group().elements() {
                let lhs = space_map[source.act(point, elem)];
                let rhs = target.act(space_map[point], group_map.apply(elem));
                if lhs != rhs {
                    return Err(PileError::NotEquivariant { point, elem });
                }
            }
        }
        Ok(PileMorphism { source: source.clone(), target: target.clone(), group_map, space_map })
    }

    pub fn identity(p: &Pile) -> Self {
        PileMorphism {
            source: p.clone(),
            target: p.clone(),
            group_map: p.group().identity_hom(),
            space_map: p.space().points().collect(),
        }
    }

    /// The unique morphism to the one-point pile.
    pub fn to_point(p: &Pile) -> Self {
        let target = Pile::point();
        let group_map = p.group().trivial_hom_to(target.group());
        PileMorphism { source: p.clone(), target, group_map, space_map: vec![0; p.size()] }
    }

    pub fn source(&self) -> &Pile {
        &self.source
    }

    pub fn target(&self) -> &Pile {
        &self.target
    }

    pub fn group_map(&self) -> &GroupHom {
        &self.group_map
    }

    pub fn space_map(&self) -> &[Point] {
        &self.space_map
    }

    pub fn apply_point(&self, t: Point) -> Point {
        self.space_map[t]
    }

    pub fn apply_elem(&self, g: Elem) -> Elem {
        self.group_map.apply(g)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PileMorphism) -> Result<PileMorphism, PileError> {
        if self.target != other.source {
            return Err(PileError::MismatchedTarget);
        }
        Ok(PileMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            group_map: self.group_map.then(&other.group_map)?,
            space_map: self.space_map.iter().map(|&y| other.space_map[y]).collect(),
        })
    }

    /// The partition of the source space into fibers of the space map.
    pub fn fibers(&self) -> Partition {
        Partition::from_labels(self.space_map.iter().copied())
    }

    pub fn check_epi(&self) -> Result<EpiCertificate, PileError> {
        check_epi(self)
    }
}

/// A pile epimorphism together with, for every target point `x`, a point `y`
/// over it with `α(B_y) = A_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiCertificate {
    pub morphism: PileMorphism,
    pub witness: Vec<Point>,
}

/// A rigid epimorphism: stabilizers map isomorphically and orbits biject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidCertificate {
    pub epi: EpiCertificate,
    /// Target orbit index of every source orbit (orbits ordered by least point).
    pub orbit_map: Vec<usize>,
}

impl RigidCertificate {
    pub fn morphism(&self) -> &PileMorphism {
        &self.epi.morphism
    }
}

pub fn check_morphism(
    source: &Pile,
    target: &Pile,
    group_map: GroupHom,
    space_map: Vec<Point>,
) -> Result<PileMorphism, PileError> {
    PileMorphism::new(source, target, group_map, space_map)
}

pub fn check_epi(m: &PileMorphism) -> Result<EpiCertificate, PileError> {
    let a = m.target();
    let b = m.source();
    let image = m.group_map().image();
    if let Some(missing) = a.group().elements().find(|&x| !image.contains(x)) {
        return Err(PileError::NotSurjectiveOnGroups(missing));
    }
    let mut over: Vec<Vec<Point>> = vec![Vec::new(); a.size()];
    for y in b.space().points() {
        over[m.apply_point(y)].push(y);
    }
    if let Some(x) = over.iter().position(Vec::is_empty) {
        return Err(PileError::NotSurjectiveOnPoints(x));
    }
    let mut witness = Vec::with_capacity(a.size());
    for (x, ys) in over.iter().enumerate() {
        let ax = a.stab(x);
        let y = ys
            .iter()
            .copied()
            .find(|&y| m.group_map().image_of(&b.stab(y)) == ax)
            .ok_or(PileError::NoStabilizerWitness(x))?;
        witness.push(y);
    }
    Ok(EpiCertificate { morphism: m.clone(), witness })
}

pub fn check_rigid(e: &EpiCertificate) -> Result<RigidCertificate, PileError> {
    let m = &e.morphism;
    let b = m.source();
    let a = m.target();
    for y in b.space().points() {
        let by = b.stab(y);
        if !m.group_map().is_injective_on(&by) {
            return Err(PileError::StabilizerNotInjective(y));
        }
        if m.group_map().image_of(&by) != a.stab(m.apply_point(y)) {
            return Err(PileError::StabilizerNotOnto(y));
        }
    }
    let target_orbit = a.space().orbit_index();
    let mut orbit_map = Vec::new();
    let mut first_with: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, orbit) in b.space().orbits().iter().enumerate() {
        let img = target_orbit[m.apply_point(orbit[0])];
        if let Some(&j) = first_with.get(&img) {
            return Err(PileError::OrbitMapNotInjective(j, i));
        }
        first_with.insert(img, i);
        orbit_map.push(img);
    }
    Ok(RigidCertificate { epi: e.clone(), orbit_map })
}

/// Epi and rigidity in one step.
pub fn rigid_certificate(m: &PileMorphism) -> Result<RigidCertificate, PileError> {
    check_rigid(&check_epi(m)?)
}

/// A standard extension together with its labels and their base points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardExtension {
    pub pile: Pile,
    pub labels: Vec<String>,
    pub base_points: Vec<Point>,
}

/// Points are pairs (label, right coset `G_t g`), acted on by right multiplication.
pub fn standard_extension(g: &FiniteGroup, reps: &[(String, Subgroup)]) -> Result<StandardExtension, PileError> {
    if reps.iter().any(|(_, h)| h.parent() != g) {
        return Err(PileError::GroupMismatch);
    }
    let subs: Vec<Subgroup> = reps.iter().map(|(_, h)| h.clone()).collect();
    let (space, base_points) = GSet::coset_space(g, &subs);
    Ok(StandardExtension {
        pile: Pile::new(space),
        labels: reps.iter().map(|(l, _)| l.clone()).collect(),
        base_points,
    })
}

/// `(G/N, T/N)` with the quotient morphism. Points of `T/N` are numbered by
/// the least point of each `N`-orbit.
pub fn quotient_pile(p: &Pile, n: &Subgroup) -> Result<(Pile, PileMorphism), PileError> {
    if n.parent() != p.group() {
        return Err(PileError::GroupMismatch);
    }
    let (q, proj) = p.group().quotient(n)?;
    let mut orbit_of = vec![usize::MAX; p.size()];
    let mut reps = Vec::new();
    for t in p.space().points() {
        if orbit_of[t] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(t);
        for &x in n.members() {
            orbit_of[p.act(t, x)] = idx;
        }
    }
    // A representative of each coset.
    let mut lift = vec![usize::MAX; q.order()];
    for g in p.group().elements().rev() {
        lift[proj.apply(g)] = g;
    }
    let m = reps.len();
    let k = q.order();
    let mut action = vec![0; m * k];
    for (i, &t) in reps.iter().enumerate() {
        for c in q.elements() {
            action[i * k + c] = orbit_of[p.act(t, lift[c])];
        }
    }
    let target = Pile::new(GSet::from_flat_unchecked(&q, m, action));
    let morphism = PileMorphism { source: p.clone(), target: target.clone(), group_map: proj, space_map: orbit_of };
    Ok((target, morphism))
}

/// `Ñ`: the normal closure of `⟨N ∩ G_t | t ∈ T⟩`.
pub fn tilde_closure(p: &Pile, n: &Subgroup) -> Result<Subgroup, PileError> {
    if n.parent() != p.group() {
        return Err(PileError::GroupMismatch);
    }
    n.check_normal()?;
    let mut gens = Vec::new();
    for t in p.space().points() {
        gens.extend(n.intersect(&p.stab(t)).members().iter().copied().filter(|&x| x != IDENTITY));
    }
    gens.sort_unstable();
    gens.dedup();
    Ok(p.group().normal_closure(&gens)?)
}

/// `B̂ = B ×_A Â` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub pile: Pile,
    /// `p: B̂ → B`.
    pub p: PileMorphism,
    /// `α̂: B̂ → Â`.
    pub alpha_hat: PileMorphism,
    /// Group element `i` of `B̂` is the pair `group_pairs[i] = (b, â)`.
    pub group_pairs: Vec<(Elem, Elem)>,
    /// Point `i` of `B̂` is the pair `point_pairs[i] = (y, x̂)`.
    pub point_pairs: Vec<(Point, Point)>,
}

/// Pairs are listed lexicographically, so `(1, 1)` is the identity.
pub fn fiber_product(alpha: &PileMorphism, phi0: &PileMorphism) -> Result<FiberProduct, PileError> {
    if alpha.target() != phi0.target() {
        return Err(PileError::MismatchedTarget);
    }
    let b = alpha.source();
    let ah = phi0.source();
    let group_pairs: Vec<(Elem, Elem)> = b
        .group()
        .elements()
        .flat_map(|x| ah.group().elements().map(move |y| (x, y)))
        .filter(|&(x, y)| alpha.apply_elem(x) == phi0.apply_elem(y))
        .collect();
    let gindex: BTreeMap<(Elem, Elem), Elem> = group_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = group_pairs.len();
    let mut table = vec![0; n * n];
    for (i, &(b1, a1)) in group_pairs.iter().enumerate() {
        for (j, &(b2, a2)) in group_pairs.iter().enumerate() {
            table[i * n + j] = gindex[&(b.group().mul(b1, b2), ah.group().mul(a1, a2))];
        }
    }
    let group = FiniteGroup::from_flat_unchecked(n, table);
    let point_pairs: Vec<(Point, Point)> = b
        .space()
        .points()
        .flat_map(|y| ah.space().points().map(move |x| (y, x)))
        .filter(|&(y, x)| alpha.apply_point(y) == phi0.apply_point(x))
        .collect();
    let pindex: BTreeMap<(Point, Point), Point> = point_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let m = point_pairs.len();
    let mut action = vec![0; m * n];
    for (i, &(y, x)) in point_pairs.iter().enumerate() {
        for (g, &(bb, aa)) in group_pairs.iter().enumerate() {
            action[i * n + g] = pindex[&(b.act(y, bb), ah.act(x, aa))];
        }
    }
    let pile = Pile::new(GSet::from_flat_unchecked(&group, m, action));
    let p = PileMorphism {
        source: pile.clone(),
        target: b.clone(),
        group_map: GroupHom::new_unchecked(&group, b.group(), group_pairs.iter().map(|p| p.0).collect()),
        space_map: point_pairs.iter().map(|p| p.0).collect(),
    };
    let alpha_hat = PileMorphism {
        source: pile.clone(),
        target: ah.clone(),
        group_map: GroupHom::new_unchecked(&group, ah.group(), group_pairs.iter().map(|p| p.1).collect()),
        space_map: point_pairs.iter().map(|p| p.1).collect(),
    };
    Ok(FiberProduct { pile, p, alpha_hat, group_pairs, point_pairs })
}

fn surjective_or_err(m: &PileMorphism) -> Result<(), PileError> {
    let image = m.group_map().image();
    if let Some(missing) = m.target().group().elements().find(|&x| !image.contains(x)) {
        return Err(PileError::NotSurjectiveOnGroups(missing));
    }
    let mut hit = vec![false; m.target().size()];
    for &y in m.space_map() {
        hit[y] = true;
    }
    if let Some(x) = hit.iter().position(|&h| !h) {
        return Err(PileError::NotSurjectiveOnPoints(x));
    }
    Ok(())
}

/// The unique `α: B → A` with `α ∘ ψ = φ`, for `ψ: G → B` surjective.
pub fn connect(phi: &PileMorphism, psi: &PileMorphism) -> Result<PileMorphism, PileError> {
    if phi.source() != psi.source() {
        return Err(PileError::MismatchedSource);
    }
    surjective_or_err(psi)?;
    let g = phi.source();
    if let Some(k) = g
        .group()
        .elements()
        .find(|&x| psi.apply_elem(x) == IDENTITY && phi.apply_elem(x) != IDENTITY)
    {
        return Err(PileError::KernelNotContained(k));
    }
    let b = psi.target();
    let mut group_map = vec![usize::MAX; b.group().order()];
    for x in g.group().elements() {
        let slot = &mut group_map[psi.apply_elem(x)];
        if *slot == usize::MAX {
            *slot = phi.apply_elem(x);
        }
    }
    let mut space_map = vec![usize::MAX; b.size()];
    let mut first = vec![usize::MAX; b.size()];
    for t in g.space().points() {
        let y = psi.apply_point(t);
        if space_map[y] == usize::MAX {
            space_map[y] = phi.apply_point(t);
            first[y] = t;
        } else if space_map[y] != phi.apply_point(t) {
            return Err(PileError::FibersNotFiner(first[y], t));
        }
    }
    let hom = GroupHom::new_unchecked(b.group(), phi.target().group(), group_map);
    let alpha = PileMorphism { source: b.clone(), target: phi.target().clone(), group_map: hom, space_map };
    debug_assert!(PileMorphism::new(alpha.source(), alpha.target(), alpha.group_map.clone(), alpha.space_map.clone()).is_ok());
    Ok(alpha)
}

/// Output of [`decompose`]: `φ = α ∘ ψ` through a finite pile `B`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pile: Pile,
    pub psi: PileMorphism,
    pub alpha: PileMorphism,
    /// The normal subgroup `Ker ψ`.
    pub kernel: Subgroup,
    /// Witness points of `B`'s blocks in `T/Ker ψ`.
    pub witnesses: Vec<Point>,
}

/// Factors `φ` through `B = (G/N, Y)`.
///
/// `N` is the largest normal subgroup (least member list on ties) with
/// `N ≤ n0 ∩ Ker φ` whose orbits refine `x`. `Y` is a stabilizer-aligned
/// partition of `T/N` refining both `x` and the fibers of `φ`.
pub fn decompose(phi: &PileMorphism, n0: &Subgroup, x: &Partition) -> Result<Decomposition, PileError> {
    let g = phi.source();
    if n0.parent() != g.group() {
        return Err(PileError::GroupMismatch);
    }
    n0.check_normal()?;
    if x.blocks().iter().map(Vec::len).sum::<usize>() != g.size() || x.blocks().iter().flatten().any(|&t| t >= g.size()) {
        return Err(PileError::PartitionMismatch);
    }
    let bound = n0.intersect(&phi.group_map().kernel());
    let block_of = x.block_of(g.size());
    let valid = |n: &Subgroup| {
        n.is_subset_of(&bound)
            && g.space().points().all(|t| n.members().iter().all(|&m| block_of[g.act(t, m)] == block_of[t]))
    };
    let mut best: Option<Subgroup> = None;
    for n in g.group().normal_subgroups() {
        if valid(&n) && best.as_ref().is_none_or(|b| n.order() > b.order()) {
            best = Some(n);
        }
    }
    let n = best.expect("the trivial subgroup is always valid");
    let (q, qmap) = quotient_pile(g, &n)?;
    // Labels on T/N: (x-block, φ-image), constant on N-orbits.
    let mut label = vec![(0, 0); q.size()];
    for t in g.space().points() {
        label[qmap.apply_point(t)] = (block_of[t], phi.apply_point(t));
    }
    let target_partition = Partition::from_labels(label);
    let (y, witnesses) = stabilizer_aligned_g_partition(q.space(), &target_partition);
    let b = Pile::new(q.space().block_action(&y));
    let block_of_q = y.block_of(q.size());
    let psi = PileMorphism {
        source: g.clone(),
        target: b.clone(),
        group_map: qmap.group_map().clone(),
        space_map: qmap.space_map().iter().map(|&s| block_of_q[s]).collect(),
    };
    let alpha = connect(phi, &psi)?;
    Ok(Decomposition { pile: b, psi, alpha, kernel: n, witnesses })
}

/// Output of [`separate_fibers`]: `φ = φ0 ∘ φ̂`.
#[derive(Clone, Debug)]
pub struct SeparatedFibers {
    pub pile: Pile,
    pub phi_hat: PileMorphism,
    pub phi0: PileMorphism,
    /// The normal subgroup used to bound `Ker φ̂`.
    pub bound: Subgroup,
}

/// First pair of points with distinct `φ0`-images whose stabilizers
/// intersect outside `Ker φ0`.
pub fn intersection_violation(phi0: &PileMorphism) -> Option<(Point, Point)> {
    let a = phi0.source();
    let ker = phi0.group_map().kernel();
    let stabs: Vec<Subgroup> = a.space().points().map(|t| a.stab(t)).collect();
    for x1 in a.space().points() {
        for x2 in a.space().points() {
            if phi0.apply_point(x1) != phi0.apply_point(x2) && !stabs[x1].intersect(&stabs[x2]).is_subset_of(&ker) {
                return Some((x1, x2));
            }
        }
    }
    None
}

/// Factors `φ` so that points of `Â` with distinct images have stabilizers
/// meeting inside `Ker φ0`.
///
/// Requires pairwise trivially intersecting point stabilizers in the source.
pub fn separate_fibers(phi: &PileMorphism) -> Result<SeparatedFibers, PileError> {
    let g = phi.source();
    if let Some((t, u)) = g.first_overlapping_stabilizers() {
        return Err(PileError::StabilizersNotDisjoint(t, u));
    }
    let group = g.group();
    let ker = phi.group_map().kernel();
    let stabs: Vec<Subgroup> = g.space().points().map(|t| g.stab(t)).collect();
    let pairs: Vec<(Point, Point)> = g
        .space()
        .points()
        .flat_map(|a| g.space().points().map(move |b| (a, b)))
        .filter(|&(a, b)| phi.apply_point(a) != phi.apply_point(b))
        .collect();
    let mut normals = group.normal_subgroups();
    normals.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members().cmp(b.members())));
    let product = |h: &Subgroup, n: &Subgroup| -> Subgroup { h.join(n) };
    let bound = normals
        .into_iter()
        .find(|n| {
            pairs.iter().all(|&(a, b)| product(&stabs[a], n).intersect(&product(&stabs[b], n)).is_subset_of(&ker))
        })
        .expect("the trivial subgroup always qualifies");
    let d = decompose(phi, &bound, &Partition::whole(g.size()))?;
    if let Some((x1, x2)) = intersection_violation(&d.alpha) {
        return Err(PileError::Invariant(format!(
            "stabilizers of {x1} and {x2} meet outside the kernel after separation"
        )));
    }
    Ok(SeparatedFibers { pile: d.pile, phi_hat: d.psi, phi0: d.alpha, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn label(s: &str) -> String {
        s.to_string()
    }

    fn regular(n: usize) -> Pile {
        Pile::new(GSet::regular(&cyclic(n)))
    }

    #[test]
    fn identity_is_a_rigid_epi() {
        let p = regular(4);
        let id = PileMorphism::identity(&p);
        let cert = rigid_certificate(&id).unwrap();
        assert_eq!(cert.epi.witness, vec![0, 1, 2, 3]);
    }

    #[test]
    fn swap_breaking_map_is_rejected() {
        let p = regular(2);
        let err = PileMorphism::new(&p, &p, p.group().identity_hom(), vec![0, 0]).unwrap_err();
        assert_eq!(err, PileError::NotEquivariant { point: 0, elem: 1 });
    }

    #[test]
    fn constant_map_to_fixed_point() {
        let c2 = cyclic(2);
        let target = Pile::new(GSet::new(&c2, vec![vec![0, 1], vec![1, 0], vec![2, 2]]).unwrap());
        let source = regular(2);
        let triv = c2.trivial_hom_to(&c2);
        assert!(PileMorphism::new(&source, &target, triv.clone(), vec![2, 2]).is_ok());
        assert!(PileMorphism::new(&source, &target, c2.identity_hom(), vec![2, 2]).is_ok());
        assert!(PileMorphism::new(&source, &target, c2.identity_hom(), vec![0, 0]).is_err());
    }

    #[test]
    fn subpile_inclusion_is_not_epi() {
        let c2 = cyclic(2);
        let small = Pile::new(GSet::trivial(&c2, 1));
        let big = Pile::new(GSet::trivial(&c2, 2));
        let m = PileMorphism::new(&small, &big, c2.identity_hom(), vec![0]).unwrap();
        assert_eq!(check_epi(&m).unwrap_err(), PileError::NotSurjectiveOnPoints(1));
    }

    #[test]
    fn standard_extension_examples() {
        let c2 = cyclic(2);
        let e = standard_extension(&c2, &[(label("t"), c2.whole())]).unwrap();
        assert_eq!(e.pile.size(), 1);
        assert!(e.pile.stab(0).is_whole());
        let e = standard_extension(&c2, &[(label("t"), c2.trivial_subgroup())]).unwrap();
        assert_eq!(e.pile.size(), 2);
        assert_eq!(e.pile.act(0, 1), 1);
        let c4 = cyclic(4);
        let h = c4.subgroup_generated(&[2]).unwrap();
        let e = standard_extension(&c4, &[(label("t"), h)]).unwrap();
        assert_eq!(e.pile.size(), 2);
        assert!(e.pile.space().points().all(|t| e.pile.stab(t).order() == 2));
    }

    #[test]
    fn quotient_pile_examples() {
        let p = regular(4);
        let (q, m) = quotient_pile(&p, &p.group().trivial_subgroup()).unwrap();
        assert_eq!(q.size(), 4);
        assert!(rigid_certificate(&m).is_ok());
        let (q, _) = quotient_pile(&p, &p.group().whole()).unwrap();
        assert_eq!((q.group().order(), q.size()), (1, 1));
        let h = p.group().subgroup_generated(&[2]).unwrap();
        let (q, m) = quotient_pile(&p, &h).unwrap();
        assert_eq!((q.group().order(), q.size()), (2, 2));
        assert_eq!(q.act(0, 1), 1);
        assert!(rigid_certificate(&m).is_ok());
    }

    #[test]
    fn quotient_through_fixed_point_is_not_rigid() {
        let c2 = cyclic(2);
        let p = Pile::new(GSet::trivial(&c2, 1));
        let (_, m) = quotient_pile(&p, &c2.whole()).unwrap();
        let e = check_epi(&m).unwrap();
        assert_eq!(check_rigid(&e).unwrap_err(), PileError::StabilizerNotInjective(0));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let d4 = crate::catalog::by_name("D4").unwrap();
        let p = Pile::new(GSet::regular(&d4));
        let s = d4.subgroup_generated(&[4]).unwrap();
        assert!(matches!(quotient_pile(&p, &s), Err(PileError::Group(GroupError::NotNormal { .. }))));
    }

    #[test]
    fn tilde_closure_examples() {
        let c2 = cyclic(2);
        let free = regular(2);
        assert!(tilde_closure(&free, &c2.whole()).unwrap().is_trivial());
        let fixed = Pile::new(GSet::trivial(&c2, 1));
        assert!(tilde_closure(&fixed, &c2.whole()).unwrap().is_whole());
    }

    #[test]
    fn fiber_product_over_point() {
        let p2 = regular(2);
        let to_point = PileMorphism::to_point(&p2);
        let fp = fiber_product(&to_point, &to_point).unwrap();
        assert_eq!(fp.pile.group().order(), 4);
        assert_eq!(fp.pile.size(), 4);
        let square_a = fp.p.then(&to_point).unwrap();
        let square_b = fp.alpha_hat.then(&to_point).unwrap();
        assert_eq!(square_a.space_map(), square_b.space_map());
        assert_eq!(square_a.group_map().map(), square_b.group_map().map());
    }

    #[test]
    fn fiber_product_with_identity_leg() {
        let b = regular(4);
        let h = b.group().subgroup_generated(&[2]).unwrap();
        let (_, alpha) = quotient_pile(&b, &h).unwrap();
        let id = PileMorphism::identity(alpha.target());
        let fp = fiber_product(&alpha, &id).unwrap();
        assert_eq!(fp.pile.group().order(), 4);
        assert_eq!(fp.pile.size(), 4);
        assert!(fp.p.group_map().is_injective() && fp.p.group_map().is_surjective());
        assert!(rigid_certificate(&fp.alpha_hat).is_ok());
    }

    #[test]
    fn connect_examples() {
        let p = regular(4);
        let h = p.group().subgroup_generated(&[2]).unwrap();
        let (_, phi) = quotient_pile(&p, &h).unwrap();
        let id = PileMorphism::identity(&p);
        assert_eq!(connect(&phi, &id).unwrap(), phi);
        let alpha = connect(&phi, &phi).unwrap();
        assert_eq!(alpha, PileMorphism::identity(phi.target()));
        // φ injective, ψ collapsing.
        assert_eq!(connect(&id, &phi).unwrap_err(), PileError::KernelNotContained(2));
    }

    #[test]
    fn connect_reports_coarse_fibers() {
        let c2 = cyclic(2);
        let t = Pile::new(GSet::trivial(&c2, 2));
        let one = Pile::new(GSet::trivial(&c2, 1));
        let psi = PileMorphism::new(&t, &one, c2.identity_hom(), vec![0, 0]).unwrap();
        let phi = PileMorphism::identity(&t);
        assert_eq!(connect(&phi, &psi).unwrap_err(), PileError::FibersNotFiner(0, 1));
    }

    fn check_decomposition(phi: &PileMorphism, n0: &Subgroup, x: &Partition, d: &Decomposition) {
        assert!(d.psi.group_map().kernel().is_subset_of(n0));
        assert!(d.psi.fibers().refines(x));
        assert!(d.psi.fibers().refines(&phi.fibers()));
        check_epi(&d.psi).unwrap();
        let composite = d.psi.then(&d.alpha).unwrap();
        assert_eq!(&composite, phi);
    }

    #[test]
    fn decompose_examples() {
        let p = regular(4);
        let phi = PileMorphism::to_point(&p);
        let triv = p.group().trivial_subgroup();
        let d = decompose(&phi, &triv, &Partition::whole(4)).unwrap();
        assert!(d.psi.group_map().is_injective());
        check_decomposition(&phi, &triv, &Partition::whole(4), &d);
        let whole = p.group().whole();
        let x = Partition::singletons(4);
        let d = decompose(&phi, &whole, &x).unwrap();
        assert_eq!(d.psi.fibers(), Partition::singletons(4));
        check_decomposition(&phi, &whole, &x, &d);
        let d = decompose(&phi, &whole, &Partition::whole(4)).unwrap();
        assert_eq!(d.pile.group().order(), 1);
        check_decomposition(&phi, &whole, &Partition::whole(4), &d);
    }

    #[test]
    fn separate_fibers_examples() {
        let p = regular(4);
        let phi = PileMorphism::identity(&p);
        let s = separate_fibers(&phi).unwrap();
        assert_eq!(s.phi_hat.then(&s.phi0).unwrap(), phi);
        let c2 = cyclic(2);
        let fixed = Pile::new(GSet::trivial(&c2, 2));
        assert_eq!(
            separate_fibers(&PileMorphism::identity(&fixed)).unwrap_err(),
            PileError::StabilizersNotDisjoint(0, 1)
        );
    }
}
