//! Finite groups stored as multiplication tables.
//!
//! Every group in this crate bottoms out in a [`FiniteGroup`]: a validated
//! Cayley table over the indices `0..order` with `0` as the identity.
//! Subgroups are sorted member lists and homomorphisms are full element maps.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use thiserror::Error;

/// Index of a group element.
pub type Elem = usize;

/// The identity element of every group.
pub const IDENTITY: Elem = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("multiplication table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("not a Latin square: cell ({row}, {col}) repeats value {value}")]
    NotLatinSquare { row: usize, col: usize, value: Elem },
    #[error("element 0 is not the identity: mul[{row}][{col}] = {value}")]
    NoIdentity { row: usize, col: usize, value: Elem },
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("subgroup is not normal: conjugate of {elem} by {by} leaves it")]
    NotNormal { elem: Elem, by: Elem },
    #[error("generators do not generate the source group (closure has order {closure}, group has order {order})")]
    GensDoNotGenerate { closure: usize, order: usize },
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotAHomomorphism { a: Elem, b: Elem },
    #[error("map does not send the identity to the identity")]
    IdentityNotPreserved,
    #[error("map has {got} entries, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("label list has {got} entries, expected {expected}")]
    LabelCount { got: usize, expected: usize },
    #[error("element set is not closed: its span also contains {extra}")]
    NotClosed { extra: Elem },
    #[error("homomorphisms cannot be composed: target of the first is not the source of the second")]
    NotComposable,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct GroupData {
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

/// A finite group given by its multiplication table.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

impl FiniteGroup {
    /// Validates a raw table and builds the group.
    pub fn from_table(rows: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        validate_table(&rows)?;
        let order = rows.len();
        let table: Vec<Elem> = rows.into_iter().flatten().collect();
        Ok(Self::from_flat_unchecked(order, table))
    }

    /// Validates a raw table and attaches display labels.
    pub fn from_table_with_labels(
        rows: Vec<Vec<Elem>>,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        if labels.len() != rows.len() {
            return Err(GroupError::LabelCount { got: labels.len(), expected: rows.len() });
        }
        Ok(Self::from_table(rows)?.with_labels(labels))
    }

    /// Builds a group from a table produced by a trusted construction.
    ///
    /// Callers guarantee the group axioms; debug builds still check them.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![IDENTITY; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == IDENTITY {
                    inverses[a] = b;
                    break;
                }
            }
        }
        let g = FiniteGroup {
            data: Arc::new(GroupData { order, table, inverses, labels: None }),
        };
        #[cfg(debug_assertions)]
        if order <= 24 {
            validate_table(&g.rows()).expect("trusted construction produced an invalid table");
        }
        g
    }

    pub fn with_labels(self, labels: Vec<String>) -> Self {
        let d = &self.data;
        FiniteGroup {
            data: Arc::new(GroupData {
                order: d.order,
                table: d.table.clone(),
                inverses: d.inverses.clone(),
                labels: Some(labels),
            }),
        }
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inverses[a]
    }

    /// Right conjugate `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: Elem, mut k: usize) -> Elem {
        let mut acc = IDENTITY;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.data.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.data.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.data.table.chunks(self.order()).map(<[Elem]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Returns `Some(p)` when the order is a power of the prime `p` (order 1 gives `None`).
    pub fn prime_power_base(&self) -> Option<usize> {
        let n = self.order();
        if n < 2 {
            return None;
        }
        let p = (2..=n).find(|d| n % d == 0)?;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }

    /// True iff the order is a power of `p`; the trivial group counts.
    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.clone(), vec![IDENTITY])
    }

    pub(crate) fn check_elems(&self, elems: &[Elem]) -> Result<(), GroupError> {
        match elems.iter().find(|&&e| e >= self.order()) {
            Some(&index) => Err(GroupError::IndexOutOfRange { index, order: self.order() }),
            None => Ok(()),
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Result<Subgroup, GroupError> {
        self.check_elems(gens)?;
        Ok(self.closure(gens))
    }

    pub(crate) fn closure(&self, gens: &[Elem]) -> Subgroup {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[IDENTITY] = true;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let members = (0..n).filter(|&e| seen[e]).collect();
        Subgroup::from_sorted(self.clone(), members)
    }

    /// Normal closure of `s`: the subgroup generated by all conjugates of `s`.
    pub fn normal_closure(&self, s: &[Elem]) -> Result<Subgroup, GroupError> {
        self.check_elems(s)?;
        let conjugates: BTreeSet<Elem> = s
            .iter()
            .flat_map(|&x| self.elements().map(move |g| (x, g)))
            .map(|(x, g)| self.conj(x, g))
            .collect();
        let conjugates: Vec<Elem> = conjugates.into_iter().collect();
        Ok(self.closure(&conjugates))
    }

    /// A deterministic generating set: scan elements in index order and keep
    /// each one not already in the span of the kept ones.
    pub fn generators(&self) -> Vec<Elem> {
        self.whole().generators()
    }

    /// Every subgroup, sorted by order and then by member list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<Vec<Elem>> = HashSet::new();
        let mut frontier = vec![self.trivial_subgroup()];
        found.insert(vec![IDENTITY]);
        let mut all = vec![self.trivial_subgroup()];
        while let Some(h) = frontier.pop() {
            for x in self.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators();
                gens.push(x);
                let k = self.closure(&gens);
                if found.insert(k.members().to_vec()) {
                    frontier.push(k.clone());
                    all.push(k);
                }
            }
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups().into_iter().filter(Subgroup::is_normal).collect()
    }

    /// Quotient by a normal subgroup together with the projection.
    ///
    /// Cosets are numbered by their smallest element, so the coset of the
    /// identity is `0`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
        n.check_normal()?;
        let order = self.order();
        let mut coset_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &m in n.members() {
                coset_of[self.mul(m, x)] = idx;
            }
        }
        let q = reps.len();
        let mut table = vec![0; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.mul(a, b)];
            }
        }
        let quotient = FiniteGroup::from_flat_unchecked(q, table);
        let proj = GroupHom { source: self.clone(), target: quotient.clone(), map: coset_of };
        Ok((quotient, proj))
    }

    /// Direct product; the pair `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (self.order(), other.order());
        let n = m * k;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.mul(x / k, y / k);
                let b = other.mul(x % k, y % k);
                table[x * n + y] = a * k + b;
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }

    /// All homomorphisms into `target`; see [`enumerate_homs`].
    pub fn homs_to(&self, target: &FiniteGroup) -> Vec<GroupHom> {
        enumerate_homs(self, &self.generators(), target)
            .expect("canonical generators always generate")
    }

    pub fn identity_hom(&self) -> GroupHom {
        GroupHom { source: self.clone(), target: self.clone(), map: self.elements().collect() }
    }

    pub fn trivial_hom_to(&self, target: &FiniteGroup) -> GroupHom {
        GroupHom { source: self.clone(), target: target.clone(), map: vec![IDENTITY; self.order()] }
    }
}

/// Checks the group axioms for a raw table, reporting the first violation.
pub fn validate_table(rows: &[Vec<Elem>]) -> Result<(), GroupError> {
    let n = rows.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(GroupError::NotSquare { row, len: r.len(), order: n });
        }
        if let Some(&index) = r.iter().find(|&&v| v >= n) {
            return Err(GroupError::IndexOutOfRange { index, order: n });
        }
    }
    for (row, r) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for (col, &value) in r.iter().enumerate() {
            if std::mem::replace(&mut seen[value], true) {
                return Err(GroupError::NotLatinSquare { row, col, value });
            }
        }
    }
    for col in 0..n {
        let mut seen = vec![false; n];
        for (row, r) in rows.iter().enumerate() {
            let value = r[col];
            if std::mem::replace(&mut seen[value], true) {
                return Err(GroupError::NotLatinSquare { row, col, value });
            }
        }
    }
    for x in 0..n {
        if rows[0][x] != x {
            return Err(GroupError::NoIdentity { row: 0, col: x, value: rows[0][x] });
        }
        if rows[x][0] != x {
            return Err(GroupError::NoIdentity { row: x, col: 0, value: rows[x][0] });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = rows[a][b];
            for c in 0..n {
                if rows[ab][c] != rows[a][rows[b][c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    for a in 0..n {
        let right = (0..n).find(|&b| rows[a][b] == IDENTITY);
        match right {
            Some(b) if rows[b][a] == IDENTITY => {}
            _ => return Err(GroupError::NoInverse(a)),
        }
    }
    Ok(())
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Subgroup {
    pub(crate) fn from_sorted(parent: FiniteGroup, members: Vec<Elem>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, members }
    }

    /// Builds a subgroup from an element set, checking closure.
    pub fn new(parent: &FiniteGroup, elems: &[Elem]) -> Result<Self, GroupError> {
        parent.check_elems(elems)?;
        let members: BTreeSet<Elem> = elems.iter().copied().collect();
        let closure = parent.closure(&members.iter().copied().collect::<Vec<_>>());
        if let Some(&extra) = closure.members().iter().find(|e| !members.contains(e)) {
            return Err(GroupError::NotClosed { extra });
        }
        Ok(closure)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        self.parent.closure(&gens)
    }

    /// The conjugate subgroup `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let mut members: Vec<Elem> = self.members.iter().map(|&x| self.parent.conj(x, g)).collect();
        members.sort_unstable();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    pub fn normalizer(&self) -> Subgroup {
        let members = self
            .parent
            .elements()
            .filter(|&g| self.members.iter().all(|&x| self.contains(self.parent.conj(x, g))))
            .collect();
        Subgroup::from_sorted(self.parent.clone(), members)
    }

    pub fn is_normal(&self) -> bool {
        self.check_normal().is_ok()
    }

    pub fn check_normal(&self) -> Result<(), GroupError> {
        let gens = self.parent.generators();
        for &elem in &self.members {
            for &by in &gens {
                if !self.contains(self.parent.conj(elem, by)) {
                    return Err(GroupError::NotNormal { elem, by });
                }
            }
        }
        Ok(())
    }

    /// Deterministic generating set (greedy over members in index order).
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.parent.closure(&[]);
        for &x in &self.members {
            if !span.contains(x) {
                gens.push(x);
                span = self.parent.closure(&gens);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// The subgroup as a group in its own right, with the embedding into the parent.
    ///
    /// Element `i` of the returned group is `members()[i]`.
    pub fn to_group(&self) -> (FiniteGroup, GroupHom) {
        let k = self.order();
        let pos = |x: Elem| self.members.binary_search(&x).expect("closed subgroup");
        let mut table = vec![0; k * k];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * k + j] = pos(self.parent.mul(a, b));
            }
        }
        let g = FiniteGroup::from_flat_unchecked(k, table);
        let emb = GroupHom { source: g.clone(), target: self.parent.clone(), map: self.members.clone() };
        (g, emb)
    }
}

/// A homomorphism between finite groups, stored as a full element map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<Elem>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom{:?}", self.map)
    }
}

impl GroupHom {
    /// Validates the homomorphism property exhaustively.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::LengthMismatch { got: map.len(), expected: source.order() });
        }
        target.check_elems(&map)?;
        if map[IDENTITY] != IDENTITY {
            return Err(GroupError::IdentityNotPreserved);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), map })
    }

    pub(crate) fn new_unchecked(source: &FiniteGroup, target: &FiniteGroup, map: Vec<Elem>) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), map }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self.source.elements().filter(|&x| self.map[x] == IDENTITY).collect();
        Subgroup::from_sorted(self.source.clone(), members)
    }

    pub fn image(&self) -> Subgroup {
        let set: BTreeSet<Elem> = self.map.iter().copied().collect();
        Subgroup::from_sorted(self.target.clone(), set.into_iter().collect())
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, s: &Subgroup) -> Subgroup {
        let set: BTreeSet<Elem> = s.members().iter().map(|&x| self.map[x]).collect();
        Subgroup::from_sorted(self.target.clone(), set.into_iter().collect())
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage_of(&self, s: &Subgroup) -> Subgroup {
        let members = self.source.elements().filter(|&x| s.contains(self.map[x])).collect();
        Subgroup::from_sorted(self.source.clone(), members)
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// True iff the kernel meets `s` trivially.
    pub fn is_injective_on(&self, s: &Subgroup) -> bool {
        s.members().iter().all(|&x| x == IDENTITY || self.map[x] != IDENTITY)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != other.source {
            return Err(GroupError::NotComposable);
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), map })
    }

    /// Restriction to a subgroup, as a hom out of the subgroup's own group.
    pub fn restrict(&self, s: &Subgroup) -> GroupHom {
        let (g, emb) = s.to_group();
        let map = emb.map.iter().map(|&x| self.map[x]).collect();
        GroupHom { source: g, target: self.target.clone(), map }
    }
}

/// Breadth-first words in `gens`: the visiting order and, per element, its
/// `(parent, generator position)` with the root at the identity.
fn bfs_words(g: &FiniteGroup, gens: &[Elem]) -> Result<(Vec<Elem>, Vec<(Elem, usize)>), GroupError> {
    let n = g.order();
    let mut word = vec![(usize::MAX, usize::MAX); n];
    word[IDENTITY] = (IDENTITY, 0);
    let mut order = vec![IDENTITY];
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if word[y].0 == usize::MAX {
                word[y] = (x, k);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    if order.len() != n {
        return Err(GroupError::GensDoNotGenerate { closure: order.len(), order: n });
    }
    Ok((order, word))
}

/// Every homomorphism `source → target`.
///
/// Each source element is expressed once as a breadth-first word in `gens`;
/// every assignment of generator images is extended along those words and
/// kept iff `map(a·s) = map(a)·map(s)` for all `a` and every generator `s`,
/// which is equivalent to the full homomorphism property. Output is in
/// lexicographic order of the generator-image tuple.
pub fn enumerate_homs(
    source: &FiniteGroup,
    gens: &[Elem],
    target: &FiniteGroup,
) -> Result<Vec<GroupHom>, GroupError> {
    source.check_elems(gens)?;
    let candidates = order_compatible_images(source, gens, target);
    let mut out = Vec::new();
    search_homs(source, gens, target, &candidates, |h| {
        out.push(h.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// For each generator, the target elements whose order divides its order.
pub fn order_compatible_images(source: &FiniteGroup, gens: &[Elem], target: &FiniteGroup) -> Vec<Vec<Elem>> {
    gens.iter()
        .map(|&s| {
            let o = source.element_order(s);
            target.elements().filter(|&t| o % target.element_order(t) == 0).collect()
        })
        .collect()
}

/// Visits the homomorphisms whose `i`-th generator image lies in
/// `candidates[i]`, in lexicographic order of the candidate lists, until
/// `visit` breaks. Returns the number of image tuples examined.
pub fn search_homs(
    source: &FiniteGroup,
    gens: &[Elem],
    target: &FiniteGroup,
    candidates: &[Vec<Elem>],
    mut visit: impl FnMut(&GroupHom) -> ControlFlow<()>,
) -> Result<usize, GroupError> {
    source.check_elems(gens)?;
    for c in candidates {
        target.check_elems(c)?;
    }
    assert_eq!(candidates.len(), gens.len(), "one candidate list per generator");
    let (seq, parents) = bfs_words(source, gens)?;
    let k = gens.len();
    let n = source.order();
    let mut examined = 0;
    if candidates.iter().any(Vec::is_empty) {
        return Ok(examined);
    }
    let mut pick = vec![0usize; k];
    let mut map = vec![IDENTITY; n];
    loop {
        examined += 1;
        let imgs: Vec<Elem> = (0..k).map(|i| candidates[i][pick[i]]).collect();
        for &x in seq.iter().skip(1) {
            let (p, gi) = parents[x];
            map[x] = target.mul(map[p], imgs[gi]);
        }
        let ok = source.elements().all(|a| {
            gens.iter()
                .zip(&imgs)
                .all(|(&s, &img)| map[source.mul(a, s)] == target.mul(map[a], img))
        });
        if ok && visit(&GroupHom::new_unchecked(source, target, map.clone())).is_break() {
            return Ok(examined);
        }
        // Odometer, last generator fastest.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(examined);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Cyclic group of order `n`, element `k` standing for the `k`-th power of a generator.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0);
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_flat_unchecked(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// D4 = <r, s | r^4, s^2, srs = r^-1>, element r^i s^j at index i + 4j.
    fn d4() -> FiniteGroup {
        let idx = |i: usize, j: usize| (i % 4) + 4 * j;
        let mut rows = vec![vec![0; 8]; 8];
        for a in 0..8 {
            for b in 0..8 {
                let (i1, j1) = (a % 4, a / 4);
                let (i2, j2) = (b % 4, b / 4);
                // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1 + j2)
                let i = if j1 == 0 { i1 + i2 } else { i1 + 4 - i2 };
                rows[a][b] = idx(i, (j1 + j2) % 2);
            }
        }
        FiniteGroup::from_table(rows).unwrap()
    }

    #[test]
    fn validates_small_tables() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0]]).unwrap().order(), 1);
        assert_eq!(c2().order(), 2);
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NotLatinSquare { row: 1, col: 1, value: 1 })
        );
    }

    #[test]
    fn rejects_identity_not_at_zero() {
        let err = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NoIdentity { .. }));
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // A loop of order 5 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(rows), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn rejects_ragged_table() {
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]]),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
    }

    #[test]
    fn generated_subgroups() {
        let c4 = cyclic(4);
        assert_eq!(c4.subgroup_generated(&[2]).unwrap().members(), &[0, 2]);
        assert_eq!(c4.subgroup_generated(&[]).unwrap().members(), &[0]);
        assert_eq!(c2().subgroup_generated(&[1]).unwrap().members(), &[0, 1]);
        assert!(matches!(c4.subgroup_generated(&[9]), Err(GroupError::IndexOutOfRange { .. })));
    }

    #[test]
    fn normal_closure_examples() {
        let c4 = cyclic(4);
        assert_eq!(c4.normal_closure(&[2]).unwrap(), c4.subgroup_generated(&[2]).unwrap());
        let d = d4();
        // r^2 is central.
        assert_eq!(d.normal_closure(&[2]).unwrap().members(), &[0, 2]);
        // a reflection s has conjugates s, r^2 s.
        assert_eq!(d.normal_closure(&[4]).unwrap().members(), &[0, 2, 4, 6]);
        assert!(d.normal_closure(&[]).unwrap().is_trivial());
    }

    #[test]
    fn quotient_examples() {
        let c4 = cyclic(4);
        let n = c4.subgroup_generated(&[2]).unwrap();
        let (q, proj) = c4.quotient(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.map(), &[0, 1, 0, 1]);
        let (q, proj) = c4.quotient(&c4.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(proj.is_injective());
        let (q, _) = c4.quotient(&c4.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let d = d4();
        let s = d.subgroup_generated(&[4]).unwrap();
        assert!(matches!(d.quotient(&s), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn hom_counts() {
        assert_eq!(c2().homs_to(&c2()).len(), 2);
        assert_eq!(cyclic(4).homs_to(&c2()).len(), 2);
        assert_eq!(FiniteGroup::trivial().homs_to(&d4()).len(), 1);
        assert_eq!(c2().homs_to(&d4()).len(), 6);
        let c4 = cyclic(4);
        assert!(matches!(enumerate_homs(&c4, &[2], &c2()), Err(GroupError::GensDoNotGenerate { .. })));
    }

    #[test]
    fn homs_are_lexicographic() {
        let homs = cyclic(4).homs_to(&cyclic(4));
        let imgs: Vec<Elem> = homs.iter().map(|h| h.apply(1)).collect();
        assert_eq!(imgs, vec![0, 1, 2, 3]);
    }

    #[test]
    fn injectivity_on_subgroups() {
        let c4 = cyclic(4);
        let sub = c4.subgroup_generated(&[2]).unwrap();
        assert!(c4.identity_hom().is_injective_on(&sub));
        assert!(!c4.trivial_hom_to(&c2()).is_injective_on(&sub));
        let (_, proj) = c4.quotient(&sub).unwrap();
        assert!(!proj.is_injective_on(&sub));
    }

    #[test]
    fn subgroup_lattice_of_d4() {
        let d = d4();
        let subs = d.all_subgroups();
        assert_eq!(subs.len(), 10);
        assert_eq!(d.normal_subgroups().len(), 6);
    }

    #[test]
    fn subgroup_to_group_roundtrip() {
        let d = d4();
        let s = d.subgroup_generated(&[1]).unwrap();
        let (g, emb) = s.to_group();
        assert_eq!(g.order(), 4);
        assert!(GroupHom::new(&g, &d, emb.map().to_vec()).is_ok());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(cyclic(8).prime_power_base(), Some(2));
        assert_eq!(cyclic(6).prime_power_base(), None);
        assert!(FiniteGroup::trivial().is_p_group(3));
    }
}
