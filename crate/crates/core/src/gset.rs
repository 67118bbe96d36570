//! Finite right actions of a group on a point set.
//!
//! Points are `0..size`; `act(t, g)` is `t^g`. Partitions are stored in a
//! normal form: blocks sorted internally and ordered by their least point.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup, Subgroup, IDENTITY};

pub type Point = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GSetError {
    #[error("action has {got} rows, expected {expected}")]
    RowCount { got: usize, expected: usize },
    #[error("row {point} has {got} entries, expected one per group element ({expected})")]
    RowLength { point: Point, got: usize, expected: usize },
    #[error("point {index} out of range for a space of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("identity moves point {0}")]
    IdentityMoves(Point),
    #[error("not a right action: (t^g)^h != t^(gh) at t={point}, g={g}, h={h}")]
    NotAnAction { point: Point, g: Elem, h: Elem },
    #[error("empty point set")]
    EmptySet,
    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("point {0} lies in two blocks")]
    Overlap(Point),
    #[error("point {0} is in no block")]
    Uncovered(Point),
}

/// A finite right `G`-set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    group: FiniteGroup,
    size: usize,
    action: Vec<Point>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet(|G|={}, size {}, {:?})", self.group.order(), self.size, self.rows())
    }
}

impl GSet {
    /// Validates an action table given as one row per point.
    pub fn new(group: &FiniteGroup, rows: Vec<Vec<Point>>) -> Result<Self, GSetError> {
        let size = rows.len();
        let n = group.order();
        for (point, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GSetError::RowLength { point, got: r.len(), expected: n });
            }
            if let Some(&index) = r.iter().find(|&&x| x >= size) {
                return Err(GSetError::IndexOutOfRange { index, size });
            }
        }
        let action: Vec<Point> = rows.into_iter().flatten().collect();
        let s = GSet { group: group.clone(), size, action };
        s.check_axioms()?;
        Ok(s)
    }

    pub(crate) fn from_flat_unchecked(group: &FiniteGroup, size: usize, action: Vec<Point>) -> Self {
        let s = GSet { group: group.clone(), size, action };
        debug_assert!(s.check_axioms().is_ok());
        s
    }

    fn check_axioms(&self) -> Result<(), GSetError> {
        for t in 0..self.size {
            if self.act(t, IDENTITY) != t {
                return Err(GSetError::IdentityMoves(t));
            }
        }
        for t in 0..self.size {
            for g in self.group.elements() {
                let tg = self.act(t, g);
                for h in self.group.elements() {
                    if self.act(tg, h) != self.act(t, self.group.mul(g, h)) {
                        return Err(GSetError::NotAnAction { point: t, g, h });
                    }
                }
            }
        }
        Ok(())
    }

    /// `size` points, every element acting trivially.
    pub fn trivial(group: &FiniteGroup, size: usize) -> Self {
        let action = (0..size).flat_map(|t| std::iter::repeat_n(t, group.order())).collect();
        GSet { group: group.clone(), size, action }
    }

    /// The right regular action on the group's own elements.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let action = (0..n).flat_map(|t| (0..n).map(move |g| (t, g))).map(|(t, g)| group.mul(t, g)).collect();
        GSet { group: group.clone(), size: n, action }
    }

    /// Disjoint union of right coset spaces `H_i \ G`.
    ///
    /// Points of each summand are numbered by the least element of their
    /// coset, so the coset `H_i` itself comes first. Returns the space and
    /// the index of each summand's base point.
    pub fn coset_space(group: &FiniteGroup, subgroups: &[Subgroup]) -> (GSet, Vec<Point>) {
        let n = group.order();
        let mut point_of: Vec<Vec<Point>> = Vec::new();
        let mut bases = Vec::new();
        let mut reps: Vec<(usize, Elem)> = Vec::new();
        for (i, h) in subgroups.iter().enumerate() {
            let mut coset = vec![usize::MAX; n];
            bases.push(reps.len());
            for g in group.elements() {
                if coset[g] != usize::MAX {
                    continue;
                }
                let idx = reps.len();
                reps.push((i, g));
                for &x in h.members() {
                    coset[group.mul(x, g)] = idx;
                }
            }
            point_of.push(coset);
        }
        let size = reps.len();
        let mut action = vec![0; size * n];
        for (p, &(i, g)) in reps.iter().enumerate() {
            for s in group.elements() {
                action[p * n + s] = point_of[i][group.mul(g, s)];
            }
        }
        (GSet { group: group.clone(), size, action }, bases)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.size
    }

    #[inline]
    pub fn act(&self, t: Point, g: Elem) -> Point {
        self.action[t * self.group.order() + g]
    }

    pub fn rows(&self) -> Vec<Vec<Point>> {
        if self.group.order() == 0 {
            return Vec::new();
        }
        self.action.chunks(self.group.order()).map(<[Point]>::to_vec).collect()
    }

    fn check_point(&self, t: Point) -> Result<(), GSetError> {
        if t >= self.size {
            return Err(GSetError::IndexOutOfRange { index: t, size: self.size });
        }
        Ok(())
    }

    /// `G_t`.
    pub fn stabilizer(&self, t: Point) -> Result<Subgroup, GSetError> {
        self.check_point(t)?;
        Ok(self.stab(t))
    }

    pub(crate) fn stab(&self, t: Point) -> Subgroup {
        let members: Vec<Elem> = self.group.elements().filter(|&g| self.act(t, g) == t).collect();
        Subgroup::new(&self.group, &members).expect("stabilizers are subgroups")
    }

    /// `{g : Z^g = Z}`.
    pub fn setwise_stabilizer(&self, z: &[Point]) -> Result<Subgroup, GSetError> {
        if z.is_empty() {
            return Err(GSetError::EmptySet);
        }
        for &t in z {
            self.check_point(t)?;
        }
        Ok(self.set_stab(z))
    }

    pub(crate) fn set_stab(&self, z: &[Point]) -> Subgroup {
        let set: BTreeSet<Point> = z.iter().copied().collect();
        let members: Vec<Elem> = self
            .group
            .elements()
            .filter(|&g| set.iter().all(|&t| set.contains(&self.act(t, g))))
            .collect();
        Subgroup::new(&self.group, &members).expect("setwise stabilizers are subgroups")
    }

    /// `Z^g`, sorted.
    pub fn translate(&self, z: &[Point], g: Elem) -> Vec<Point> {
        let mut out: Vec<Point> = z.iter().map(|&t| self.act(t, g)).collect();
        out.sort_unstable();
        out
    }

    pub fn orbit(&self, t: Point) -> Vec<Point> {
        let set: BTreeSet<Point> = self.group.elements().map(|g| self.act(t, g)).collect();
        set.into_iter().collect()
    }

    /// Orbits ordered by their least point.
    pub fn orbits(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for t in self.points() {
            if !seen[t] {
                let o = self.orbit(t);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// Least point of each orbit.
    pub fn orbit_representatives(&self) -> Vec<Point> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }

    /// Orbit index of every point.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.size];
        for (i, o) in self.orbits().iter().enumerate() {
            for &t in o {
                idx[t] = i;
            }
        }
        idx
    }

    /// The induced action on the blocks of a `G`-partition.
    pub fn block_action(&self, p: &Partition) -> GSet {
        let block_of = p.block_of(self.size);
        let n = self.group.order();
        let mut action = vec![0; p.len() * n];
        for (b, block) in p.blocks().iter().enumerate() {
            for g in self.group.elements() {
                action[b * n + g] = block_of[self.act(block[0], g)];
            }
        }
        GSet::from_flat_unchecked(&self.group, p.len(), action)
    }
}

/// A partition of `0..size` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<Point>>,
}

impl Partition {
    /// Validates and normalizes a block list.
    pub fn new(size: usize, blocks: Vec<Vec<Point>>) -> Result<Self, GSetError> {
        let mut seen = vec![false; size];
        for b in &blocks {
            if b.is_empty() {
                return Err(GSetError::EmptyBlock);
            }
            for &t in b {
                if t >= size {
                    return Err(GSetError::IndexOutOfRange { index: t, size });
                }
                if std::mem::replace(&mut seen[t], true) {
                    return Err(GSetError::Overlap(t));
                }
            }
        }
        if let Some(t) = seen.iter().position(|&s| !s) {
            return Err(GSetError::Uncovered(t));
        }
        Ok(Self::normalized(blocks))
    }

    pub(crate) fn normalized(mut blocks: Vec<Vec<Point>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// Groups points by a key; blocks come out in normal form.
    pub fn from_labels<K: Ord>(labels: impl IntoIterator<Item = K>) -> Self {
        let mut by: BTreeMap<K, Vec<Point>> = BTreeMap::new();
        for (t, k) in labels.into_iter().enumerate() {
            by.entry(k).or_default().push(t);
        }
        Self::normalized(by.into_values().collect())
    }

    pub fn singletons(size: usize) -> Self {
        Partition { blocks: (0..size).map(|t| vec![t]).collect() }
    }

    /// One block holding every point (no blocks when `size == 0`).
    pub fn whole(size: usize) -> Self {
        if size == 0 {
            Partition { blocks: Vec::new() }
        } else {
            Partition { blocks: vec![(0..size).collect()] }
        }
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index of every point.
    pub fn block_of(&self, size: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; size];
        for (i, b) in self.blocks.iter().enumerate() {
            for &t in b {
                idx[t] = i;
            }
        }
        idx
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let size = self.blocks.iter().map(|b| b.len()).sum();
        let of = coarser.block_of(size);
        self.blocks.iter().all(|b| b.iter().all(|&t| of[t] == of[b[0]]))
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let size = self.blocks.iter().map(|b| b.len()).sum();
        let a = self.block_of(size);
        let b = other.block_of(size);
        Partition::from_labels((0..size).map(|t| (a[t], b[t])))
    }
}

/// Every block is sent by every group element onto itself or onto a set disjoint from it.
pub fn is_g_partition(s: &GSet, p: &Partition) -> bool {
    p.blocks().iter().all(|block| {
        let set: BTreeSet<Point> = block.iter().copied().collect();
        s.group().elements().all(|g| {
            let img = s.translate(block, g);
            img == *block || img.iter().all(|t| !set.contains(t))
        })
    })
}

/// The common refinement of all translates `p^g`.
///
/// This is the coarsest `G`-partition finer than `p`; when `p` already is
/// a `G`-partition it comes back unchanged.
pub fn refine_to_g_partition(s: &GSet, p: &Partition) -> Partition {
    let block_of = p.block_of(s.size());
    let g = s.group();
    // t lies in B^h iff t^(h⁻¹) lies in B.
    Partition::from_labels(
        s.points().map(|t| g.elements().map(|h| block_of[s.act(t, g.inv(h))]).collect::<Vec<_>>()),
    )
}

/// A `G`-partition finer than `p` whose blocks each carry a witness point `t_i`
/// with `Stab_G(T_i) = G_{t_i}`.
///
/// Starts from [`refine_to_g_partition`]. A block whose setwise stabilizer is
/// already a point stabilizer is kept whole. Otherwise, inside the block `X`
/// with `S = Stab_G(X)`, take a maximal point stabilizer `Γ` (the one of the
/// least point), let `C(Γ)` be the points with stabilizer exactly `Γ`, and cut
/// out a fundamental domain of `N_S(Γ)` on `C(Γ)` together with its
/// `S`-translates; recurse on the rest. Blocks in one `G`-orbit are handled
/// once and transported by translation.
pub fn stabilizer_aligned_g_partition(s: &GSet, p: &Partition) -> (Partition, Vec<Point>) {
    let q = refine_to_g_partition(s, p);
    let stabs: Vec<Subgroup> = s.points().map(|t| s.stab(t)).collect();
    let mut covered = vec![false; q.len()];
    let block_of = q.block_of(s.size());
    let mut out: Vec<(Vec<Point>, Point)> = Vec::new();
    for (bi, block) in q.blocks().iter().enumerate() {
        if covered[bi] {
            continue;
        }
        let stab = s.set_stab(block);
        let pieces = split_block(s, &stabs, &stab, block.clone());
        let mut seen_translates = BTreeSet::new();
        for g in s.group().elements() {
            let image_block = block_of[s.act(block[0], g)];
            if !seen_translates.insert(image_block) {
                continue;
            }
            covered[image_block] = true;
            for (piece, w) in &pieces {
                out.push((s.translate(piece, g), s.act(*w, g)));
            }
        }
    }
    out.sort_by_key(|(b, _)| b[0]);
    let witnesses = out.iter().map(|(_, w)| *w).collect();
    (Partition { blocks: out.into_iter().map(|(b, _)| b).collect() }, witnesses)
}

/// Splits an `S`-invariant set `x` with `Stab_G(x) = S` into an `S`-partition
/// whose pieces have point-stabilizer witnesses.
fn split_block(
    s: &GSet,
    stabs: &[Subgroup],
    stab: &Subgroup,
    x: Vec<Point>,
) -> Vec<(Vec<Point>, Point)> {
    if x.is_empty() {
        return Vec::new();
    }
    if let Some(&t) = x.iter().find(|&&t| stabs[t] == *stab) {
        return vec![(x, t)];
    }
    let gamma = x
        .iter()
        .map(|&t| &stabs[t])
        .find(|g| !x.iter().any(|&u| stabs[u].order() > g.order() && g.is_subset_of(&stabs[u])))
        .expect("a finite family has maximal members")
        .clone();
    let c_gamma: Vec<Point> = x.iter().copied().filter(|&t| stabs[t] == gamma).collect();
    let normalizer = gamma.normalizer().intersect(stab);
    // One point from each N_S(Γ)-orbit on C(Γ).
    let mut domain = Vec::new();
    let mut hit = BTreeSet::new();
    for &t in &c_gamma {
        if hit.contains(&t) {
            continue;
        }
        domain.push(t);
        for &n in normalizer.members() {
            hit.insert(s.act(t, n));
        }
    }
    let mut pieces = Vec::new();
    let mut used = BTreeSet::new();
    for &g in stab.members() {
        let piece = s.translate(&domain, g);
        if used.insert(piece.clone()) {
            pieces.push((piece, s.act(domain[0], g)));
        }
    }
    let taken: BTreeSet<Point> = pieces.iter().flat_map(|(b, _)| b.iter().copied()).collect();
    let rest: Vec<Point> = x.into_iter().filter(|t| !taken.contains(t)).collect();
    pieces.extend(split_block(s, stabs, stab, rest));
    pieces
}

/// Independent check of the three output conditions of
/// [`stabilizer_aligned_g_partition`]. Returns a description of the first failure.
pub fn check_stabilizer_aligned(
    s: &GSet,
    input: &Partition,
    output: &Partition,
    witnesses: &[Point],
) -> Result<(), String> {
    if output.blocks().iter().map(Vec::len).sum::<usize>() != s.size() {
        return Err("output does not cover the space".into());
    }
    if !is_g_partition(s, output) {
        return Err("output is not a G-partition".into());
    }
    if !output.refines(input) {
        return Err("output is not finer than the input".into());
    }
    if witnesses.len() != output.len() {
        return Err("one witness per block expected".into());
    }
    for (block, &w) in output.blocks().iter().zip(witnesses) {
        if !block.contains(&w) {
            return Err(format!("witness {w} is not in block {block:?}"));
        }
        if s.set_stab(block) != s.stab(w) {
            return Err(format!("Stab({block:?}) differs from the stabilizer of {w}"));
        }
    }
    Ok(())
}

/// All `G`-sets of size at most `max_size` up to isomorphism, as disjoint
/// unions of coset spaces over conjugacy-class representatives of subgroups.
/// Includes the empty `G`-set.
pub fn gsets_up_to_isomorphism(group: &FiniteGroup, max_size: usize) -> Vec<GSet> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for h in group.all_subgroups() {
        if h.index() > max_size {
            continue;
        }
        let conjugate_seen = reps
            .iter()
            .any(|r| r.order() == h.order() && group.elements().any(|g| r.conjugate(g) == h));
        if !conjugate_seen {
            reps.push(h);
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        group: &FiniteGroup,
        reps: &[Subgroup],
        start: usize,
        room: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<GSet>,
    ) {
        let subs: Vec<Subgroup> = chosen.iter().map(|&i| reps[i].clone()).collect();
        out.push(GSet::coset_space(group, &subs).0);
        for i in start..reps.len() {
            if reps[i].index() <= room {
                chosen.push(i);
                go(group, reps, i, room - reps[i].index(), chosen, out);
                chosen.pop();
            }
        }
    }
    go(group, &reps, 0, max_size, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    /// C2 acting on four points by swapping 0 and 1.
    fn swap_first_two(extra_fixed: usize) -> GSet {
        let c2 = cyclic(2);
        let mut rows = vec![vec![0, 1], vec![1, 0]];
        for t in 2..2 + extra_fixed {
            rows.push(vec![t, t]);
        }
        GSet::new(&c2, rows).unwrap()
    }

    #[test]
    fn rejects_bad_actions() {
        let c2 = cyclic(2);
        assert_eq!(GSet::new(&c2, vec![vec![1, 0], vec![0, 1]]), Err(GSetError::IdentityMoves(0)));
        let c3 = cyclic(3);
        // 1 swaps the points but 1·1 = 2 fixes them.
        let err = GSet::new(&c3, vec![vec![0, 1, 0], vec![1, 0, 1]]).unwrap_err();
        assert!(matches!(err, GSetError::NotAnAction { .. }));
    }

    #[test]
    fn stabilizer_examples() {
        let c2 = cyclic(2);
        assert!(GSet::trivial(&c2, 3).stabilizer(1).unwrap().is_whole());
        assert!(GSet::regular(&c2).stabilizer(0).unwrap().is_trivial());
        let s = swap_first_two(2);
        assert!(s.stabilizer(2).unwrap().is_whole());
        assert!(s.stabilizer(7).is_err());
    }

    #[test]
    fn setwise_stabilizer_examples() {
        let s = swap_first_two(2);
        assert!(s.setwise_stabilizer(&[0, 1, 2, 3]).unwrap().is_whole());
        assert_eq!(s.setwise_stabilizer(&[0]).unwrap(), s.stabilizer(0).unwrap());
        assert!(s.setwise_stabilizer(&[0, 1]).unwrap().is_whole());
        assert_eq!(s.setwise_stabilizer(&[]), Err(GSetError::EmptySet));
    }

    #[test]
    fn g_partition_examples() {
        let c2 = cyclic(2);
        assert!(is_g_partition(&GSet::trivial(&c2, 3), &Partition::singletons(3)));
        assert!(is_g_partition(&swap_first_two(0), &Partition::singletons(2)));
        let p = Partition::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(!is_g_partition(&swap_first_two(1), &p));
    }

    #[test]
    fn partition_validation() {
        assert_eq!(Partition::new(2, vec![vec![0], vec![]]), Err(GSetError::EmptyBlock));
        assert_eq!(Partition::new(2, vec![vec![0, 1], vec![1]]), Err(GSetError::Overlap(1)));
        assert_eq!(Partition::new(2, vec![vec![0]]), Err(GSetError::Uncovered(1)));
    }

    #[test]
    fn refinement_examples() {
        let s = swap_first_two(0);
        let whole = Partition::whole(2);
        assert_eq!(refine_to_g_partition(&s, &whole), whole);
        // (0 1)(2 3) on four points, p = {{0,2},{1,3}} is already invariant.
        let c2 = cyclic(2);
        let s = GSet::new(&c2, vec![vec![0, 1], vec![1, 0], vec![2, 3], vec![3, 2]]).unwrap();
        let p = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let r = refine_to_g_partition(&s, &p);
        assert!(is_g_partition(&s, &r));
        assert!(r.refines(&p));
        assert_eq!(r, p);
        let p = Partition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let r = refine_to_g_partition(&s, &p);
        assert_eq!(r, Partition::new(4, vec![vec![0], vec![1], vec![2, 3]]).unwrap());
    }

    #[test]
    fn refinement_of_empty_space() {
        let s = GSet::trivial(&cyclic(2), 0);
        let p = Partition::new(0, vec![]).unwrap();
        assert!(refine_to_g_partition(&s, &p).is_empty());
        let (q, w) = stabilizer_aligned_g_partition(&s, &p);
        assert!(q.is_empty() && w.is_empty());
    }

    #[test]
    fn aligned_partition_trivial_group() {
        let s = GSet::trivial(&FiniteGroup::trivial(), 4);
        let p = Partition::new(4, vec![vec![0, 3], vec![1, 2]]).unwrap();
        let (q, w) = stabilizer_aligned_g_partition(&s, &p);
        assert_eq!(q, p);
        assert_eq!(w, vec![0, 1]);
    }

    #[test]
    fn aligned_partition_swap_with_fixed_points() {
        let s = swap_first_two(2);
        let p = Partition::whole(4);
        let (q, w) = stabilizer_aligned_g_partition(&s, &p);
        check_stabilizer_aligned(&s, &p, &q, &w).unwrap();
        // {0,1} is moved setwise only by elements fixing 2 and 3, so the
        // whole space keeps stabilizer G = G_2 and is one block.
        assert_eq!(q, p);
        assert_eq!(w, vec![2]);
    }

    #[test]
    fn aligned_partition_regular_c4() {
        let s = GSet::regular(&cyclic(4));
        let p = Partition::whole(4);
        let (q, w) = stabilizer_aligned_g_partition(&s, &p);
        check_stabilizer_aligned(&s, &p, &q, &w).unwrap();
        assert!(q.blocks().iter().all(|b| s.set_stab(b).is_trivial()));
        assert_eq!(q, Partition::singletons(4));
    }

    #[test]
    fn block_action_on_orbits() {
        let s = GSet::regular(&cyclic(4));
        let p = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let b = s.block_action(&p);
        assert_eq!(b.size(), 2);
        assert_eq!(b.act(0, 1), 1);
        assert_eq!(b.act(0, 2), 0);
    }

    #[test]
    fn coset_space_base_points() {
        let c4 = cyclic(4);
        let h = c4.subgroup_generated(&[2]).unwrap();
        let (s, bases) = GSet::coset_space(&c4, &[h.clone(), c4.trivial_subgroup()]);
        assert_eq!(s.size(), 6);
        assert_eq!(bases, vec![0, 2]);
        assert_eq!(s.stab(0), h);
        assert!(s.stab(2).is_trivial());
        assert_eq!(s.orbits().len(), 2);
    }

    #[test]
    fn gset_enumeration_counts() {
        // C2 has two transitive sets (sizes 1 and 2); with room 3:
        // {}, {1}, {1,1}, {1,1,1}, {1,2}, {2}.
        assert_eq!(gsets_up_to_isomorphism(&cyclic(2), 3).len(), 6);
    }
}
