//! Embedding problems for pairs and piles, and their solvers.
//!
//! Every search runs over generator images in lexicographic order and the
//! first valid candidate wins.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::group::{search_homs, Elem, FiniteGroup, GroupError, GroupHom, Subgroup};
use crate::gset::{stabilizer_aligned_g_partition, GSetError, Partition, Point};
use crate::pile::{
    connect, fiber_product, quotient_pile, rigid_certificate, separate_fibers, tilde_closure, Pile, PileError,
    PileMorphism, RigidCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error(transparent)]
    Pile(#[from] PileError),
    #[error("alpha is not surjective")]
    NotEpi,
    #[error("subgroups do not live in the expected groups")]
    FamilyMismatch,
    #[error("phi does not map family member {0} into any member of the target family")]
    FamilyNotMapped(usize),
    #[error("family member {0} has no local lift through alpha")]
    NoLocalLift(usize),
    #[error("alpha ∘ psi differs from phi at {0}")]
    NotCommuting(Elem),
    #[error("no point y over phi({0}) whose stabilizer contains psi(G_{0})")]
    NoWitness(Point),
    #[error("factor {0} is not a p-group for p = {1}")]
    NotPGroup(String, usize),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("phi does not factor through the quotient: {0}")]
    DoesNotFactor(String),
    #[error("solution does not kill {0} of the closure")]
    KernelNotKilled(Elem),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// For each generator of `g`, the elements of `alpha`'s source lying over its
/// `phi`-image whose order divides the generator's order.
fn lift_candidates(g: &FiniteGroup, gens: &[Elem], phi: &GroupHom, alpha: &GroupHom) -> Vec<Vec<Elem>> {
    let b = alpha.source();
    gens.iter()
        .map(|&s| {
            let o = g.element_order(s);
            b.elements()
                .filter(|&x| alpha.apply(x) == phi.apply(s) && o % b.element_order(x) == 0)
                .collect()
        })
        .collect()
}

/// Visits every `γ: G → B` with `α ∘ γ = φ` in lexicographic order.
pub fn search_lifts(
    phi: &GroupHom,
    alpha: &GroupHom,
    visit: impl FnMut(&GroupHom) -> ControlFlow<()>,
) -> Result<usize, EmbeddingError> {
    if phi.target() != alpha.target() {
        return Err(EmbeddingError::InvalidProblem("phi and alpha have different targets".into()));
    }
    let g = phi.source();
    let gens = g.generators();
    let candidates = lift_candidates(g, &gens, phi, alpha);
    Ok(search_homs(g, &gens, alpha.source(), &candidates, visit)?)
}

fn first_missed(h: &GroupHom) -> Option<Elem> {
    let image = h.image();
    h.target().elements().find(|&x| !image.contains(x))
}

/// Outcome of a search: a solution, or the number of candidates that were
/// examined without finding one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<T> {
    Solved(T),
    Unsolvable { candidates: usize },
}

impl<T> Solution<T> {
    pub fn solved(&self) -> Option<&T> {
        match self {
            Solution::Solved(s) => Some(s),
            Solution::Unsolvable { .. } => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Solution::Solved(_))
    }
}

/// `(φ: (G, 𝒢) → (A, 𝒜), α: (B, ℬ) → (A, 𝒜))`.
#[derive(Clone, Debug)]
pub struct PairEmbeddingProblem {
    family: Vec<Subgroup>,
    phi: GroupHom,
    alpha: GroupHom,
    family_b: Vec<Subgroup>,
    family_a: Vec<Subgroup>,
}

impl PairEmbeddingProblem {
    /// Checks that `α` is onto, that `φ` respects the families, and that each
    /// member of `𝒢` has a local lift into a member of `ℬ`.
    pub fn new(
        family: Vec<Subgroup>,
        phi: GroupHom,
        alpha: GroupHom,
        family_b: Vec<Subgroup>,
        family_a: Vec<Subgroup>,
    ) -> Result<Self, EmbeddingError> {
        if phi.target() != alpha.target()
            || family.iter().any(|s| s.parent() != phi.source())
            || family_b.iter().any(|s| s.parent() != alpha.source())
            || family_a.iter().any(|s| s.parent() != alpha.target())
        {
            return Err(EmbeddingError::FamilyMismatch);
        }
        if first_missed(&alpha).is_some() {
            return Err(EmbeddingError::NotEpi);
        }
        for (i, gamma) in family.iter().enumerate() {
            let image = phi.image_of(gamma);
            if !family_a.iter().any(|d| image.is_subset_of(d)) {
                return Err(EmbeddingError::FamilyNotMapped(i));
            }
            if !has_local_lift(gamma, &phi, &alpha, &family_b)? {
                return Err(EmbeddingError::NoLocalLift(i));
            }
        }
        Ok(PairEmbeddingProblem { family, phi, alpha, family_b, family_a })
    }

    pub fn family(&self) -> &[Subgroup] {
        &self.family
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn family_b(&self) -> &[Subgroup] {
        &self.family_b
    }

    pub fn family_a(&self) -> &[Subgroup] {
        &self.family_a
    }

    /// True iff `γ` lifts `φ` and sends each member of `𝒢` into a member of `ℬ`.
    pub fn is_solution(&self, gamma: &GroupHom) -> bool {
        gamma.source() == self.phi.source()
            && gamma.target() == self.alpha.source()
            && self.phi.source().elements().all(|g| self.alpha.apply(gamma.apply(g)) == self.phi.apply(g))
            && self.respects_family(gamma)
    }

    fn respects_family(&self, gamma: &GroupHom) -> bool {
        self.family.iter().all(|s| {
            let image = gamma.image_of(s);
            self.family_b.iter().any(|d| image.is_subset_of(d))
        })
    }
}

fn has_local_lift(
    gamma: &Subgroup,
    phi: &GroupHom,
    alpha: &GroupHom,
    family_b: &[Subgroup],
) -> Result<bool, EmbeddingError> {
    let restricted = phi.restrict(gamma);
    let h = restricted.source().clone();
    let gens = h.generators();
    let base = lift_candidates(&h, &gens, &restricted, alpha);
    for delta in family_b {
        let candidates: Vec<Vec<Elem>> =
            base.iter().map(|c| c.iter().copied().filter(|&b| delta.contains(b)).collect()).collect();
        let mut found = false;
        search_homs(&h, &gens, alpha.source(), &candidates, |_| {
            found = true;
            ControlFlow::Break(())
        })?;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Lexicographically first `γ: G → B` with `α ∘ γ = φ` respecting the families.
pub fn solve_pair_ep(ep: &PairEmbeddingProblem) -> Result<Solution<GroupHom>, EmbeddingError> {
    let mut found = None;
    let examined = search_lifts(&ep.phi, &ep.alpha, |gamma| {
        if ep.respects_family(gamma) {
            found = Some(gamma.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(match found {
        Some(g) => Solution::Solved(g),
        None => Solution::Unsolvable { candidates: examined },
    })
}

/// `(φ: G → A, α: B → A)` with `α` a rigid epimorphism.
#[derive(Clone, Debug)]
pub struct PileEmbeddingProblem {
    phi: PileMorphism,
    alpha: RigidCertificate,
}

impl PileEmbeddingProblem {
    pub fn new(phi: PileMorphism, alpha: PileMorphism) -> Result<Self, EmbeddingError> {
        if phi.target() != alpha.target() {
            return Err(PileError::MismatchedTarget.into());
        }
        let alpha = rigid_certificate(&alpha)?;
        Ok(PileEmbeddingProblem { phi, alpha })
    }

    pub fn phi(&self) -> &PileMorphism {
        &self.phi
    }

    pub fn alpha(&self) -> &PileMorphism {
        self.alpha.morphism()
    }

    pub fn certificate(&self) -> &RigidCertificate {
        &self.alpha
    }

    /// The pair problem on the stabilizer families of the three piles.
    pub fn to_pair(&self) -> Result<PairEmbeddingProblem, EmbeddingError> {
        let family = |p: &Pile| -> Vec<Subgroup> {
            let set: BTreeSet<Vec<Elem>> = p.space().points().map(|t| p.stab(t).members().to_vec()).collect();
            set.into_iter().map(|m| Subgroup::new(p.group(), &m).expect("stabilizer")).collect()
        };
        PairEmbeddingProblem::new(
            family(self.phi.source()),
            self.phi.group_map().clone(),
            self.alpha().group_map().clone(),
            family(self.alpha().source()),
            family(self.alpha().target()),
        )
    }
}

/// Independent check that `gamma` solves the pile problem.
pub fn check_pile_solution(ep: &PileEmbeddingProblem, gamma: &PileMorphism) -> Result<(), String> {
    let checked = PileMorphism::new(
        ep.phi().source(),
        ep.alpha().source(),
        gamma.group_map().clone(),
        gamma.space_map().to_vec(),
    )
    .map_err(|e| e.to_string())?;
    GroupHom::new(checked.source().group(), checked.target().group(), checked.group_map().map().to_vec())
        .map_err(|e| e.to_string())?;
    let composite = checked.then(ep.alpha()).map_err(|e| e.to_string())?;
    if composite.group_map().map() != ep.phi().group_map().map() {
        return Err("alpha ∘ gamma differs from phi on groups".into());
    }
    if composite.space_map() != ep.phi().space_map() {
        return Err("alpha ∘ gamma differs from phi on points".into());
    }
    Ok(())
}

/// Settings for [`complete_to_pile_morphism`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionConfig {
    /// Partition of the source space the fibers should refine.
    pub target_partition: Option<Partition>,
    /// Required number of points per stabilizer value in the target.
    pub multiplicity_floor: usize,
}

impl CompletionConfig {
    pub fn plain() -> Self {
        Self::default()
    }

    /// The floor is the number of parts of the stabilizer-aligned partition refining `p`.
    pub fn refining(source: &Pile, p: Partition) -> Self {
        let (aligned, _) = stabilizer_aligned_g_partition(source.space(), &p);
        CompletionConfig { multiplicity_floor: aligned.len(), target_partition: Some(p) }
    }

    /// True iff every stabilizer value in `target` is carried by at least
    /// `multiplicity_floor` points.
    pub fn floor_satisfied(&self, target: &Pile) -> bool {
        let stabs: Vec<Vec<Elem>> = target.space().points().map(|y| target.stab(y).members().to_vec()).collect();
        stabs.iter().all(|s| stabs.iter().filter(|u| *u == s).count() >= self.multiplicity_floor)
    }
}

/// A completed morphism; `refines` records whether the fibers refine the
/// configured partition (absent when none was configured).
#[derive(Clone, Debug)]
pub struct Completion {
    pub morphism: PileMorphism,
    pub refines: Option<bool>,
}

const REFINEMENT_BUDGET: usize = 200_000;

/// Extends `ψ: G → B` (with `α ∘ ψ = φ`) to a pile morphism.
///
/// For every point `t` the admissible images are the `y` with `α(y) = φ(t)`
/// and `ψ(G_t) ≤ B_y`; the least point of each orbit takes an admissible `y`
/// and the rest of the orbit follows by `t^g ↦ y^{ψ(g)}`. With a target
/// partition the choice per orbit is searched so that no two points in
/// different blocks share an image; if no such choice exists the plain
/// completion is returned with `refines = Some(false)`.
pub fn complete_to_pile_morphism(
    psi: &GroupHom,
    phi: &PileMorphism,
    alpha: &PileMorphism,
    cfg: &CompletionConfig,
) -> Result<Completion, EmbeddingError> {
    let g = phi.source();
    let b = alpha.source();
    if psi.source() != g.group() || psi.target() != b.group() || phi.target() != alpha.target() {
        return Err(EmbeddingError::InvalidProblem("maps do not fit together".into()));
    }
    if let Some(x) = g.group().elements().find(|&x| alpha.apply_elem(psi.apply(x)) != phi.apply_elem(x)) {
        return Err(EmbeddingError::NotCommuting(x));
    }
    let orbits = g.space().orbits();
    let mut admissible: Vec<Vec<Point>> = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let t = orbit[0];
        let image = psi.image_of(&g.stab(t));
        let ys: Vec<Point> = b
            .space()
            .points()
            .filter(|&y| alpha.apply_point(y) == phi.apply_point(t) && image.is_subset_of(&b.stab(y)))
            .collect();
        if ys.is_empty() {
            // Report the least point of the source without a witness.
            let bad = g
                .space()
                .points()
                .find(|&s| {
                    let im = psi.image_of(&g.stab(s));
                    !b.space()
                        .points()
                        .any(|y| alpha.apply_point(y) == phi.apply_point(s) && im.is_subset_of(&b.stab(y)))
                })
                .unwrap_or(t);
            return Err(EmbeddingError::NoWitness(bad));
        }
        admissible.push(ys);
    }
    let propagate = |space_map: &mut Vec<Point>, r: Point, y: Point| {
        for x in g.group().elements() {
            space_map[g.act(r, x)] = b.act(y, psi.apply(x));
        }
    };
    let build = |choice: &[Point]| -> Result<PileMorphism, EmbeddingError> {
        let mut space_map = vec![0; g.size()];
        for (orbit, &y) in orbits.iter().zip(choice) {
            propagate(&mut space_map, orbit[0], y);
        }
        Ok(PileMorphism::new(g, b, psi.clone(), space_map)?)
    };
    let Some(partition) = &cfg.target_partition else {
        let choice: Vec<Point> = admissible.iter().map(|ys| ys[0]).collect();
        return Ok(Completion { morphism: build(&choice)?, refines: None });
    };
    if partition.blocks().iter().map(Vec::len).sum::<usize>() != g.size() {
        return Err(EmbeddingError::InvalidProblem("partition does not cover the source space".into()));
    }
    let block_of = partition.block_of(g.size());
    let mut owner: Vec<Option<usize>> = vec![None; b.size()];
    let mut choice = Vec::with_capacity(orbits.len());
    let mut budget = REFINEMENT_BUDGET;
    let found = refine_search(
        &orbits,
        &admissible,
        &block_of,
        &|r, y| g.group().elements().map(|x| (g.act(r, x), b.act(y, psi.apply(x)))).collect(),
        &mut owner,
        &mut choice,
        &mut budget,
    );
    if found {
        let morphism = build(&choice)?;
        let ok = morphism.fibers().refines(partition);
        if !ok {
            return Err(EmbeddingError::Invariant("refinement search returned coarse fibers".into()));
        }
        Ok(Completion { morphism, refines: Some(true) })
    } else {
        let plain: Vec<Point> = admissible.iter().map(|ys| ys[0]).collect();
        let morphism = build(&plain)?;
        let refines = morphism.fibers().refines(partition);
        Ok(Completion { morphism, refines: Some(refines) })
    }
}

/// Depth-first choice of one admissible image per orbit, rejecting any image
/// point already claimed by a different partition block.
fn refine_search(
    orbits: &[Vec<Point>],
    admissible: &[Vec<Point>],
    block_of: &[usize],
    images: &dyn Fn(Point, Point) -> Vec<(Point, Point)>,
    owner: &mut Vec<Option<usize>>,
    choice: &mut Vec<Point>,
    budget: &mut usize,
) -> bool {
    let i = choice.len();
    if i == orbits.len() {
        return true;
    }
    for &y in &admissible[i] {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let pairs = images(orbits[i][0], y);
        let mut claimed = Vec::new();
        let mut ok = true;
        for &(s, img) in &pairs {
            match owner[img] {
                Some(blk) if blk != block_of[s] => {
                    ok = false;
                    break;
                }
                Some(_) => {}
                None => {
                    owner[img] = Some(block_of[s]);
                    claimed.push(img);
                }
            }
        }
        if ok {
            choice.push(y);
            if refine_search(orbits, admissible, block_of, images, owner, choice, budget) {
                return true;
            }
            choice.pop();
        }
        for img in claimed {
            owner[img] = None;
        }
    }
    false
}

/// True iff every orbit of the source admits an image `y` from the
/// admissible set with `t^{ψ⁻¹(B_y)}` inside the block of `t` in the
/// `G`-refinement of `p`, the chosen `y` lying in pairwise distinct `B`-orbits.
///
/// This is the hypothesis under which witnesses from distinct orbits make
/// the fibers refine `p`.
pub fn distinct_orbit_choice_exists(
    psi: &GroupHom,
    phi: &PileMorphism,
    alpha: &PileMorphism,
    p: &Partition,
) -> bool {
    let g = phi.source();
    let b = alpha.source();
    let q = crate::gset::refine_to_g_partition(g.space(), &p.meet(&phi.fibers()));
    let block_of = q.block_of(g.size());
    let b_orbit = b.space().orbit_index();
    let orbits = g.space().orbits();
    let options: Vec<Vec<usize>> = orbits
        .iter()
        .map(|orbit| {
            let t = orbit[0];
            let image = psi.image_of(&g.stab(t));
            let mut set = BTreeSet::new();
            for y in b.space().points() {
                if alpha.apply_point(y) != phi.apply_point(t) || !image.is_subset_of(&b.stab(y)) {
                    continue;
                }
                let pre = psi.preimage_of(&b.stab(y));
                if pre.members().iter().all(|&x| block_of[g.act(t, x)] == block_of[t]) {
                    set.insert(b_orbit[y]);
                }
            }
            set.into_iter().collect()
        })
        .collect();
    // Bipartite matching of source orbits to target orbits.
    let mut matched: Vec<Option<usize>> = vec![None; b.space().orbits().len()];
    fn augment(i: usize, options: &[Vec<usize>], seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for &o in &options[i] {
            if seen[o] {
                continue;
            }
            seen[o] = true;
            if matched[o].is_none_or(|j| augment(j, options, seen, matched)) {
                matched[o] = Some(i);
                return true;
            }
        }
        false
    }
    (0..options.len()).all(|i| {
        let mut seen = vec![false; matched.len()];
        augment(i, &options, &mut seen, &mut matched)
    })
}

/// Enumerates lifts of `φ` through `α` and completes the first one that admits a completion.
pub fn solve_pile_ep_bruteforce(ep: &PileEmbeddingProblem) -> Result<Solution<PileMorphism>, EmbeddingError> {
    let mut found = None;
    let mut failure = None;
    let examined = search_lifts(ep.phi().group_map(), ep.alpha().group_map(), |psi| {
        match complete_to_pile_morphism(psi, ep.phi(), ep.alpha(), &CompletionConfig::plain()) {
            Ok(c) => {
                found = Some(c.morphism);
                ControlFlow::Break(())
            }
            Err(EmbeddingError::NoWitness(_)) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(match found {
        Some(m) => Solution::Solved(m),
        None => Solution::Unsolvable { candidates: examined },
    })
}

/// Solves through the pair problem of a cartesian square.
///
/// Factor `φ = φ0 ∘ φ̂` with separated fibers, pull `α` back along `φ0`,
/// solve the pair problem for `(φ̂, α̂)`, push the solution down with `p`
/// and complete it. Needs pairwise trivially intersecting stabilizers in
/// the source.
pub fn solve_pile_ep_via_pairs(ep: &PileEmbeddingProblem) -> Result<Solution<PileMorphism>, EmbeddingError> {
    let sep = separate_fibers(ep.phi())?;
    let square = fiber_product(ep.alpha(), &sep.phi0)?;
    let lifted = PileEmbeddingProblem::new(sep.phi_hat.clone(), square.alpha_hat.clone())
        .map_err(|e| EmbeddingError::Invariant(format!("pulled-back edge is not rigid: {e}")))?;
    let pair = match lifted.to_pair() {
        Ok(p) => p,
        Err(EmbeddingError::NoLocalLift(_)) => return Ok(Solution::Unsolvable { candidates: 0 }),
        Err(e) => return Err(e),
    };
    let psi_hat = match solve_pair_ep(&pair)? {
        Solution::Solved(h) => h,
        Solution::Unsolvable { candidates } => return Ok(Solution::Unsolvable { candidates }),
    };
    let psi = psi_hat.then(square.p.group_map())?;
    match complete_to_pile_morphism(&psi, ep.phi(), ep.alpha(), &CompletionConfig::plain()) {
        Ok(c) => Ok(Solution::Solved(c.morphism)),
        Err(EmbeddingError::NoWitness(t)) => {
            Err(EmbeddingError::Invariant(format!("pair solution does not complete at point {t}")))
        }
        Err(e) => Err(e),
    }
}

/// `F(r) ⨿ (⨿_x G_x)` acting on the standard extension of the labels `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicPile {
    pub factors: Vec<(String, FiniteGroup)>,
    pub free_rank: usize,
}

impl BasicPile {
    /// With `prime = Some(p)` every factor must be a `p`-group.
    pub fn new(
        factors: Vec<(String, FiniteGroup)>,
        free_rank: usize,
        prime: Option<usize>,
    ) -> Result<Self, EmbeddingError> {
        if let Some(p) = prime {
            if let Some((label, _)) = factors.iter().find(|(_, g)| !g.is_p_group(p)) {
                return Err(EmbeddingError::NotPGroup(label.clone(), p));
            }
        }
        Ok(BasicPile { factors, free_rank })
    }
}

/// A morphism out of a basic pile: one hom per factor, images of the free
/// generators, and the image point of every label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicPileMap {
    pub factor_homs: Vec<GroupHom>,
    pub free_images: Vec<Elem>,
    pub points: Vec<Point>,
}

/// Checks that `m` defines a morphism from the basic pile into `target`:
/// shapes match and `φ_x(G_x)` fixes the image of label `x`.
pub fn check_basic_map(g: &BasicPile, m: &BasicPileMap, target: &Pile) -> Result<(), EmbeddingError> {
    let bad = |s: String| Err(EmbeddingError::InvalidProblem(s));
    if m.factor_homs.len() != g.factors.len() || m.points.len() != g.factors.len() {
        return bad("one hom and one point per factor expected".into());
    }
    if m.free_images.len() != g.free_rank {
        return bad(format!("{} free images for rank {}", m.free_images.len(), g.free_rank));
    }
    if let Some(&e) = m.free_images.iter().find(|&&e| e >= target.group().order()) {
        return bad(format!("free image {e} out of range"));
    }
    for ((label, factor), (h, &x)) in g.factors.iter().zip(m.factor_homs.iter().zip(&m.points)) {
        if h.source() != factor || h.target() != target.group() {
            return bad(format!("hom for factor {label} has the wrong source or target"));
        }
        GroupHom::new(factor, target.group(), h.map().to_vec())?;
        if x >= target.size() {
            return bad(format!("point {x} for factor {label} out of range"));
        }
        if !h.image().is_subset_of(&target.stab(x)) {
            return bad(format!("factor {label} does not fix its point {x}"));
        }
    }
    Ok(())
}

/// Lifts a morphism out of a basic pile through a rigid epimorphism.
///
/// Label `x` goes to the certificate's witness `y` over its image point and
/// `γ_x = (α|_{B_y})⁻¹ ∘ φ_x`; each free generator goes to its least `α`-preimage.
pub fn solve_basic_pile_ep(
    g: &BasicPile,
    phi: &BasicPileMap,
    alpha: &RigidCertificate,
) -> Result<BasicPileMap, EmbeddingError> {
    let a = alpha.morphism().target();
    let b = alpha.morphism().source();
    let am = alpha.morphism();
    check_basic_map(g, phi, a)?;
    let mut factor_homs = Vec::with_capacity(g.factors.len());
    let mut points = Vec::with_capacity(g.factors.len());
    for ((_, factor), (h, &x)) in g.factors.iter().zip(phi.factor_homs.iter().zip(&phi.points)) {
        let y = alpha.epi.witness[x];
        let by = b.stab(y);
        let mut inverse = vec![usize::MAX; a.group().order()];
        for &e in by.members() {
            inverse[am.apply_elem(e)] = e;
        }
        let map: Vec<Elem> = factor.elements().map(|e| inverse[h.apply(e)]).collect();
        if map.contains(&usize::MAX) {
            return Err(EmbeddingError::Invariant(format!("stabilizer of {y} does not cover A_{x}")));
        }
        factor_homs.push(GroupHom::new(factor, b.group(), map)?);
        points.push(y);
    }
    let free_images = phi
        .free_images
        .iter()
        .map(|&e| b.group().elements().find(|&x| am.apply_elem(x) == e).ok_or(EmbeddingError::NotEpi))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasicPileMap { factor_homs, free_images, points })
}

/// Independent check that `sol` lifts `phi` through `alpha`.
pub fn check_basic_solution(
    g: &BasicPile,
    phi: &BasicPileMap,
    alpha: &PileMorphism,
    sol: &BasicPileMap,
) -> Result<(), String> {
    check_basic_map(g, sol, alpha.source()).map_err(|e| e.to_string())?;
    for (i, (h, l)) in phi.factor_homs.iter().zip(&sol.factor_homs).enumerate() {
        if h.source().elements().any(|e| alpha.apply_elem(l.apply(e)) != h.apply(e)) {
            return Err(format!("factor {i}: alpha ∘ gamma differs from phi"));
        }
    }
    for (i, (&e, &l)) in phi.free_images.iter().zip(&sol.free_images).enumerate() {
        if alpha.apply_elem(l) != e {
            return Err(format!("free generator {i}: alpha ∘ gamma differs from phi"));
        }
    }
    for (i, (&x, &y)) in phi.points.iter().zip(&sol.points).enumerate() {
        if alpha.apply_point(y) != x {
            return Err(format!("label {i}: alpha ∘ gamma differs from phi on points"));
        }
    }
    Ok(())
}

/// The problem moved to `G/Ñ`.
#[derive(Clone, Debug)]
pub struct QuotientTransfer {
    pub tilde: Subgroup,
    pub projection: PileMorphism,
    pub problem: PileEmbeddingProblem,
}

impl QuotientTransfer {
    /// Factors a solution of the original problem through `G/Ñ`, checking
    /// that it kills `Ñ`.
    pub fn descend(&self, gamma: &PileMorphism) -> Result<PileMorphism, EmbeddingError> {
        if let Some(&k) = self.tilde.members().iter().find(|&&k| gamma.apply_elem(k) != 0) {
            return Err(EmbeddingError::KernelNotKilled(k));
        }
        Ok(connect(gamma, &self.projection)?)
    }

    /// Pulls a solution over `G/Ñ` back to `G`.
    pub fn lift(&self, gamma_bar: &PileMorphism) -> Result<PileMorphism, EmbeddingError> {
        Ok(self.projection.then(gamma_bar)?)
    }
}

/// Transports `(φ, α)` over `G` to `(φ_N, α)` over `G/Ñ`, where
/// `Ñ = ⟨N ∩ G_t | t ∈ T⟩`. Requires `φ` to factor through the quotient.
pub fn quotient_ep_transfer(ep: &PileEmbeddingProblem, n: &Subgroup) -> Result<QuotientTransfer, EmbeddingError> {
    let g = ep.phi().source();
    let tilde = tilde_closure(g, n)?;
    let (_, projection) = quotient_pile(g, &tilde)?;
    let phi_n = connect(ep.phi(), &projection).map_err(|e| match e {
        PileError::KernelNotContained(k) => EmbeddingError::DoesNotFactor(format!("phi({k}) is not trivial")),
        PileError::FibersNotFiner(s, t) => {
            EmbeddingError::DoesNotFactor(format!("points {s} and {t} are identified but have different images"))
        }
        other => other.into(),
    })?;
    let problem = PileEmbeddingProblem::new(phi_n, ep.alpha().clone())?;
    Ok(QuotientTransfer { tilde, projection, problem })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::gset::GSet;
    use crate::pile::standard_extension;

    fn regular(n: usize) -> Pile {
        Pile::new(GSet::regular(&cyclic(n)))
    }

    #[test]
    fn pair_identity_alpha() {
        let c4 = cyclic(4);
        let phi = c4.identity_hom();
        let ep = PairEmbeddingProblem::new(vec![c4.whole()], phi.clone(), phi.clone(), vec![c4.whole()], vec![c4.whole()])
            .unwrap();
        assert_eq!(solve_pair_ep(&ep).unwrap(), Solution::Solved(phi));
    }

    #[test]
    fn pair_trivial_source() {
        let one = FiniteGroup::trivial();
        let c2 = cyclic(2);
        let phi = one.trivial_hom_to(&c2);
        let alpha = c2.identity_hom();
        let ep = PairEmbeddingProblem::new(vec![], phi, alpha, vec![], vec![]).unwrap();
        let sol = solve_pair_ep(&ep).unwrap();
        assert_eq!(sol.solved().unwrap().map(), &[0]);
    }

    #[test]
    fn pair_lexicographic_choice() {
        let c2 = cyclic(2);
        let one = FiniteGroup::trivial();
        let phi = c2.trivial_hom_to(&one);
        let alpha = c2.trivial_hom_to(&one);
        let ep = PairEmbeddingProblem::new(vec![c2.whole()], phi, alpha, vec![c2.whole()], vec![one.whole()]).unwrap();
        assert_eq!(solve_pair_ep(&ep).unwrap().solved().unwrap().map(), &[0, 0]);
    }

    #[test]
    fn pair_local_lift_is_checked() {
        // C2 → C2 identity can not lift into the trivial subgroup of C4 → C2.
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let alpha = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        let err = PairEmbeddingProblem::new(
            vec![c2.whole()],
            c2.identity_hom(),
            alpha,
            vec![c4.trivial_subgroup()],
            vec![c2.whole()],
        )
        .unwrap_err();
        assert_eq!(err, EmbeddingError::NoLocalLift(0));
    }

    #[test]
    fn pair_unsolvable_counts_candidates() {
        // C2 → C2 identity through C4 → C2 has no lift at all.
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let alpha = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        let ep = PairEmbeddingProblem::new(vec![], c2.identity_hom(), alpha, vec![], vec![]).unwrap();
        assert_eq!(solve_pair_ep(&ep).unwrap(), Solution::Unsolvable { candidates: 0 });
    }

    #[test]
    fn completion_single_fixed_point() {
        let c2 = cyclic(2);
        let src = Pile::new(GSet::trivial(&c2, 1));
        let tgt = Pile::new(GSet::trivial(&c2, 2));
        let phi = PileMorphism::to_point(&src);
        let alpha = PileMorphism::to_point(&tgt);
        let c = complete_to_pile_morphism(&c2.identity_hom(), &phi, &alpha, &CompletionConfig::plain()).unwrap();
        assert_eq!(c.morphism.space_map(), &[0]);
    }

    #[test]
    fn completion_without_witness() {
        let c2 = cyclic(2);
        let src = Pile::new(GSet::trivial(&c2, 1));
        let tgt = regular(2);
        let phi = PileMorphism::to_point(&src);
        let alpha = PileMorphism::to_point(&tgt);
        let err = complete_to_pile_morphism(&c2.identity_hom(), &phi, &alpha, &CompletionConfig::plain()).unwrap_err();
        assert_eq!(err, EmbeddingError::NoWitness(0));
    }

    #[test]
    fn completion_along_free_orbit() {
        let c2 = cyclic(2);
        let src = regular(2);
        let tgt = Pile::new(GSet::new(&c2, vec![vec![0, 0], vec![1, 2], vec![2, 1]]).unwrap());
        let phi = PileMorphism::to_point(&src);
        let alpha = PileMorphism::to_point(&tgt);
        let c = complete_to_pile_morphism(&c2.identity_hom(), &phi, &alpha, &CompletionConfig::plain()).unwrap();
        // Least admissible point is the fixed point 0.
        assert_eq!(c.morphism.space_map(), &[0, 0]);
        let cfg = CompletionConfig::refining(&src, Partition::singletons(2));
        let c = complete_to_pile_morphism(&c2.identity_hom(), &phi, &alpha, &cfg).unwrap();
        assert_eq!(c.morphism.space_map(), &[1, 2]);
        assert_eq!(c.refines, Some(true));
    }

    #[test]
    fn refinement_can_be_impossible() {
        // ψ is trivial, so the orbit {0, 1} always collapses to one point.
        let c2 = cyclic(2);
        let one = FiniteGroup::trivial();
        let src = regular(2);
        let tgt = Pile::new(GSet::trivial(&one, 3));
        let phi = PileMorphism::to_point(&src);
        let alpha = PileMorphism::to_point(&tgt);
        let cfg = CompletionConfig::refining(&src, Partition::singletons(2));
        assert!(cfg.floor_satisfied(&tgt));
        let psi = c2.trivial_hom_to(&one);
        let c = complete_to_pile_morphism(&psi, &phi, &alpha, &cfg).unwrap();
        assert_eq!(c.refines, Some(false));
        assert!(!distinct_orbit_choice_exists(&psi, &phi, &alpha, &Partition::singletons(2)));
    }

    #[test]
    fn bruteforce_identity_alpha() {
        let p = regular(4);
        let phi = PileMorphism::identity(&p);
        let ep = PileEmbeddingProblem::new(phi.clone(), phi.clone()).unwrap();
        let sol = solve_pile_ep_bruteforce(&ep).unwrap();
        assert_eq!(sol.solved(), Some(&phi));
        check_pile_solution(&ep, sol.solved().unwrap()).unwrap();
        assert_eq!(solve_pile_ep_via_pairs(&ep).unwrap().solved(), Some(&phi));
    }

    #[test]
    fn bruteforce_unsolvable() {
        // C2 acting regularly over the point cannot lift to C4 → C2 with a free orbit.
        let c4 = cyclic(4);
        let b = Pile::new(GSet::regular(&c4));
        let h = c4.subgroup_generated(&[2]).unwrap();
        let (a, alpha) = quotient_pile(&b, &h).unwrap();
        let phi = PileMorphism::new(&regular(2), &a, GroupHom::new(&cyclic(2), a.group(), vec![0, 1]).unwrap(), vec![0, 1])
            .unwrap();
        let ep = PileEmbeddingProblem::new(phi, alpha).unwrap();
        let sol = solve_pile_ep_bruteforce(&ep).unwrap();
        assert!(matches!(sol, Solution::Unsolvable { .. }));
        assert!(!solve_pile_ep_via_pairs(&ep).unwrap().is_solved());
    }

    #[test]
    fn basic_pile_identity_alpha() {
        let c2 = cyclic(2);
        let g = BasicPile::new(vec![("x".into(), c2.clone())], 0, Some(2)).unwrap();
        let a = Pile::new(GSet::trivial(&c2, 1));
        let phi = BasicPileMap { factor_homs: vec![c2.identity_hom()], free_images: vec![], points: vec![0] };
        let alpha = PileMorphism::identity(&a);
        let cert = rigid_certificate(&alpha).unwrap();
        let sol = solve_basic_pile_ep(&g, &phi, &cert).unwrap();
        assert_eq!(sol, phi);
        check_basic_solution(&g, &phi, &alpha, &sol).unwrap();
    }

    #[test]
    fn basic_pile_free_generator() {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let g = BasicPile::new(vec![], 1, Some(2)).unwrap();
        let b = Pile::new(GSet::regular(&c4));
        let (a, alpha) = quotient_pile(&b, &c4.subgroup_generated(&[2]).unwrap()).unwrap();
        assert_eq!(a.group().order(), c2.order());
        let phi = BasicPileMap { factor_homs: vec![], free_images: vec![1], points: vec![] };
        let cert = rigid_certificate(&alpha).unwrap();
        let sol = solve_basic_pile_ep(&g, &phi, &cert).unwrap();
        assert_eq!(sol.free_images, vec![1]);
    }

    #[test]
    fn basic_pile_trivial_target() {
        let c2 = cyclic(2);
        let one = FiniteGroup::trivial();
        let g = BasicPile::new(vec![("x".into(), c2.clone())], 0, Some(2)).unwrap();
        let a = Pile::point();
        let b = Pile::new(GSet::trivial(&one, 2));
        let alpha = PileMorphism::to_point(&b);
        let cert = rigid_certificate(&alpha).unwrap_err();
        // Two orbits over one: not rigid. Use a one-point B instead.
        assert!(matches!(cert, PileError::OrbitMapNotInjective(0, 1)));
        let alpha = PileMorphism::identity(&a);
        let cert = rigid_certificate(&alpha).unwrap();
        let phi = BasicPileMap { factor_homs: vec![c2.trivial_hom_to(&one)], free_images: vec![], points: vec![0] };
        let sol = solve_basic_pile_ep(&g, &phi, &cert).unwrap();
        assert_eq!(sol.factor_homs[0].map(), &[0, 0]);
    }

    #[test]
    fn basic_pile_rejects_wrong_prime() {
        let err = BasicPile::new(vec![("x".into(), cyclic(3))], 0, Some(2)).unwrap_err();
        assert_eq!(err, EmbeddingError::NotPGroup("x".into(), 2));
    }

    #[test]
    fn quotient_transfer_trivial_n() {
        let p = regular(4);
        let phi = PileMorphism::to_point(&p);
        let ep = PileEmbeddingProblem::new(phi, PileMorphism::identity(&Pile::point())).unwrap();
        let qt = quotient_ep_transfer(&ep, &p.group().trivial_subgroup()).unwrap();
        assert!(qt.tilde.is_trivial());
        assert_eq!(qt.problem.phi().source().size(), 4);
    }

    #[test]
    fn quotient_transfer_kills_stabilizers() {
        let c4 = cyclic(4);
        let h = c4.subgroup_generated(&[2]).unwrap();
        let e = standard_extension(&c4, &[("t".into(), h.clone())]).unwrap();
        let phi = PileMorphism::to_point(&e.pile);
        let ep = PileEmbeddingProblem::new(phi, PileMorphism::identity(&Pile::point())).unwrap();
        let qt = quotient_ep_transfer(&ep, &c4.whole()).unwrap();
        assert_eq!(qt.tilde, h);
        let q = qt.problem.phi().source();
        assert!(q.space().points().all(|t| q.stab(t).is_trivial()));
        let gamma = solve_pile_ep_bruteforce(&ep).unwrap().solved().unwrap().clone();
        let down = qt.descend(&gamma).unwrap();
        check_pile_solution(&qt.problem, &down).unwrap();
        assert_eq!(qt.lift(&down).unwrap(), gamma);
    }

    #[test]
    fn quotient_transfer_needs_factoring() {
        let c2 = cyclic(2);
        let p = Pile::new(GSet::trivial(&c2, 1));
        let phi = PileMorphism::identity(&p);
        let ep = PileEmbeddingProblem::new(phi.clone(), phi).unwrap();
        assert!(matches!(quotient_ep_transfer(&ep, &c2.whole()), Err(EmbeddingError::DoesNotFactor(_))));
    }
}
