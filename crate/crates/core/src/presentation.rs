//! Presentations over free products of finite groups and free letters, the
//! HNN builders, and homomorphism counting into finite groups.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::NamedGroup;
use crate::embedding::BasicPile;
use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, Subgroup, IDENTITY};
use crate::gset::Point;
use crate::pile::{Pile, PileMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("relator {relator}, letter {position}: {reason}")]
    InvalidWord { relator: usize, position: usize, reason: String },
    #[error("phi_{0} is not injective")]
    PhiNotInjective(String),
    #[error("map for {0} is not a homomorphism on its subgroup")]
    InvalidMap(String),
    #[error("rho is not injective on the stabilizer of {0}")]
    RhoNotInjectiveOn(String),
    #[error("point list does not meet orbit {0}")]
    NotTransversal(usize),
    #[error("factor index {0} out of range")]
    BadFactorIndex(usize),
    #[error("square does not commute at {0}")]
    SquareDoesNotCommute(Elem),
    #[error("relator {0} is not sent to a relation of the target")]
    RelatorNotPreserved(usize),
    #[error("maps do not fit: {0}")]
    Mismatch(String),
}

/// A generator of `⨿ factors ⨿ F(free letters)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Letter {
    Factor { factor: usize, elem: Elem },
    Free {
        #[serde(rename = "free")]
        letter: usize,
        exp: i8,
    },
}

impl Letter {
    pub fn factor(factor: usize, elem: Elem) -> Self {
        Letter::Factor { factor, elem }
    }

    pub fn free(letter: usize) -> Self {
        Letter::Free { letter, exp: 1 }
    }

    pub fn free_inv(letter: usize) -> Self {
        Letter::Free { letter, exp: -1 }
    }
}

/// A word in the letters; stored as given, never reduced.
pub type Word = Vec<Letter>;

/// `(⨿ factors ⨿ F(k)) / ⟨⟨relators⟩⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    factors: Vec<FiniteGroup>,
    factor_names: Vec<String>,
    free_labels: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        factors: Vec<(String, FiniteGroup)>,
        free_labels: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let (factor_names, factors) = factors.into_iter().unzip();
        let p = Presentation { factors, factor_names, free_labels, relators: Vec::new() };
        for (i, w) in relators.iter().enumerate() {
            p.check_word(i, w)?;
        }
        Ok(Presentation { relators, ..p })
    }

    pub fn trivial() -> Self {
        Presentation { factors: Vec::new(), factor_names: Vec::new(), free_labels: Vec::new(), relators: Vec::new() }
    }

    pub fn of_group(name: &str, g: &FiniteGroup) -> Self {
        Presentation { factors: vec![g.clone()], factor_names: vec![name.to_string()], ..Self::trivial() }
    }

    /// The free group on `n` letters `x0, x1, ...`.
    pub fn free(n: usize) -> Self {
        Presentation { free_labels: (0..n).map(|i| format!("x{i}")).collect(), ..Self::trivial() }
    }

    pub fn factors(&self) -> &[FiniteGroup] {
        &self.factors
    }

    pub fn factor_names(&self) -> &[String] {
        &self.factor_names
    }

    pub fn free_count(&self) -> usize {
        self.free_labels.len()
    }

    pub fn free_labels(&self) -> &[String] {
        &self.free_labels
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn check_word(&self, relator: usize, w: &[Letter]) -> Result<(), PresentationError> {
        for (position, l) in w.iter().enumerate() {
            let reason = match *l {
                Letter::Factor { factor, .. } if factor >= self.factors.len() => format!("no factor {factor}"),
                Letter::Factor { factor, elem } if elem >= self.factors[factor].order() => {
                    format!("element {elem} out of range for factor {factor}")
                }
                Letter::Free { letter, .. } if letter >= self.free_count() => format!("no free letter {letter}"),
                Letter::Free { exp, .. } if exp != 1 && exp != -1 => format!("exponent {exp} is not ±1"),
                _ => continue,
            };
            return Err(PresentationError::InvalidWord { relator, position, reason });
        }
        Ok(())
    }

    /// Appends the words as relators: the quotient by their normal closure.
    pub fn quotient_by_closure(&self, words: &[Word]) -> Result<Presentation, PresentationError> {
        let mut out = self.clone();
        for (i, w) in words.iter().enumerate() {
            self.check_word(self.relators.len() + i, w)?;
            out.relators.push(w.clone());
        }
        Ok(out)
    }
}

/// Concatenates factors, free letters and relators, reindexing letters.
pub fn free_product(parts: &[Presentation]) -> Presentation {
    let mut out = Presentation::trivial();
    for p in parts {
        let (df, dl) = (out.factors.len(), out.free_count());
        out.factors.extend(p.factors.iter().cloned());
        out.factor_names.extend(p.factor_names.iter().cloned());
        out.free_labels.extend(p.free_labels.iter().cloned());
        out.relators.extend(p.relators.iter().map(|w| {
            w.iter()
                .map(|l| match *l {
                    Letter::Factor { factor, elem } => Letter::Factor { factor: factor + df, elem },
                    Letter::Free { letter, exp } => Letter::Free { letter: letter + dl, exp },
                })
                .collect()
        }));
    }
    out
}

/// Checks a map given on the members of `sub` and returns it as a hom out of `sub`'s own group.
fn subgroup_map(label: &str, sub: &Subgroup, images: &[Elem], target: &FiniteGroup) -> Result<GroupHom, PresentationError> {
    let (h, _) = sub.to_group();
    GroupHom::new(&h, target, images.to_vec()).map_err(|_| PresentationError::InvalidMap(label.to_string()))
}

/// `HNN(G, T, 𝒢, φ)`: relators `t⁻¹ g t φ_t(g)⁻¹` for generators `g` of each `G_t`.
///
/// `phi` lists, for every stable letter, the images of the members of `G_t` in order.
pub fn build_hnn(base: &FiniteGroup, stable: &[(String, Subgroup, Vec<Elem>)]) -> Result<Presentation, PresentationError> {
    let mut relators = Vec::new();
    let mut labels = Vec::new();
    for (i, (label, sub, images)) in stable.iter().enumerate() {
        if sub.parent() != base {
            return Err(PresentationError::Mismatch(format!("G_{label} is not a subgroup of the base")));
        }
        let phi = subgroup_map(label, sub, images, base)?;
        if !phi.is_injective() {
            return Err(PresentationError::PhiNotInjective(label.clone()));
        }
        for g in sub.generators() {
            let pos = sub.members().binary_search(&g).expect("generator is a member");
            relators.push(vec![
                Letter::free_inv(i),
                Letter::factor(0, g),
                Letter::free(i),
                Letter::factor(0, base.inv(phi.apply(pos))),
            ]);
        }
        labels.push(label.clone());
    }
    Presentation::new(vec![("G".into(), base.clone())], labels, relators)
}

/// A stable letter of an HNN′-extension: its label, the factor holding `G_t`, and `G_t`.
#[derive(Clone, Debug)]
pub struct StableLetter {
    pub label: String,
    pub factor: usize,
    pub subgroup: Subgroup,
}

/// `HNN′(G, T0, ρ, L)` over a presented `G`: adds `L` as a factor and one free
/// letter per stable letter, with relators `t⁻¹ g t ρ(g)⁻¹` for generators `g` of `G_t`.
///
/// `rho` holds one hom into `L` per factor of `g`.
pub fn build_hnn_prime(
    g: &Presentation,
    rho: &[GroupHom],
    l: &FiniteGroup,
    stable: &[StableLetter],
) -> Result<Presentation, PresentationError> {
    if rho.len() != g.factors.len() {
        return Err(PresentationError::Mismatch(format!("{} rho maps for {} factors", rho.len(), g.factors.len())));
    }
    for (r, f) in rho.iter().zip(&g.factors) {
        if r.source() != f || r.target() != l {
            return Err(PresentationError::Mismatch("rho does not run from a factor to L".into()));
        }
    }
    let lf = g.factors.len();
    let mut out = free_product(&[g.clone(), Presentation::of_group("L", l)]);
    let base_free = out.free_count();
    for (i, s) in stable.iter().enumerate() {
        let f = g.factors.get(s.factor).ok_or(PresentationError::BadFactorIndex(s.factor))?;
        if s.subgroup.parent() != f {
            return Err(PresentationError::Mismatch(format!("G_{} is not a subgroup of factor {}", s.label, s.factor)));
        }
        if !rho[s.factor].is_injective_on(&s.subgroup) {
            return Err(PresentationError::RhoNotInjectiveOn(s.label.clone()));
        }
        let t = base_free + i;
        for x in s.subgroup.generators() {
            out.relators.push(vec![
                Letter::free_inv(t),
                Letter::factor(s.factor, x),
                Letter::free(t),
                Letter::factor(lf, l.inv(rho[s.factor].apply(x))),
            ]);
        }
        out.free_labels.push(s.label.clone());
    }
    Ok(out)
}

/// `HNN′(G, T0, ρ, L)` for a finite pile, with one stable letter per point of `t0`.
pub fn build_hnn_prime_for_pile(
    p: &Pile,
    t0: &[Point],
    rho: &GroupHom,
    l: &FiniteGroup,
) -> Result<Presentation, PresentationError> {
    let stable = t0
        .iter()
        .map(|&t| {
            if t >= p.size() {
                return Err(PresentationError::Mismatch(format!("point {t} out of range")));
            }
            Ok(StableLetter { label: format!("t{t}"), factor: 0, subgroup: p.stab(t) })
        })
        .collect::<Result<Vec<_>, _>>()?;
    build_hnn_prime(&Presentation::of_group("G", p.group()), std::slice::from_ref(rho), l, &stable)
}

/// The word `(t^{•g})⁻¹ g⁻¹ t ρ(g)` in `G ⨿ L ⨿ F(T)` with `G`, `L` as factors 0, 1.
fn phnn_word(p: &Pile, rho: &GroupHom, t: Point, g: Elem, free_offset: usize) -> Word {
    vec![
        Letter::free_inv(free_offset + p.act(t, g)),
        Letter::factor(0, p.group().inv(g)),
        Letter::free(free_offset + t),
        Letter::factor(1, rho.apply(g)),
    ]
}

/// `pHNN(G, T, ρ, L)`: factors `[G, L]`, one free letter per point, and the
/// relator `(t^{•g})⁻¹ g⁻¹ t ρ(g)` for every point `t` and generator `g` of `G`.
pub fn build_phnn(p: &Pile, rho: &GroupHom) -> Result<Presentation, PresentationError> {
    if rho.source() != p.group() {
        return Err(PresentationError::Mismatch("rho does not start at the pile's group".into()));
    }
    for t in p.space().points() {
        if !rho.is_injective_on(&p.stab(t)) {
            return Err(PresentationError::RhoNotInjectiveOn(format!("t{t}")));
        }
    }
    let gens = p.group().generators();
    let mut relators = Vec::new();
    for t in p.space().points() {
        for &g in &gens {
            relators.push(phnn_word(p, rho, t, g, 0));
        }
    }
    Presentation::new(
        vec![("G".into(), p.group().clone()), ("L".into(), rho.target().clone())],
        p.space().points().map(|t| format!("t{t}")).collect(),
        relators,
    )
}

/// `HNN′(G, T, ρ, L)` on all points together with the words
/// `(t^{•g})⁻¹ g⁻¹ t ρ(g)`, `t ∈ T0`, `g ≠ 1`, whose normal closure is the
/// kernel of the map onto `pHNN(G, T, ρ, L)`. `T0` must meet every orbit.
pub fn hnn_to_phnn_kernel(
    p: &Pile,
    t0: &[Point],
    rho: &GroupHom,
) -> Result<(Presentation, Vec<Word>), PresentationError> {
    if let Some(&t) = t0.iter().find(|&&t| t >= p.size()) {
        return Err(PresentationError::Mismatch(format!("point {t} out of range")));
    }
    let orbit = p.space().orbit_index();
    let hit: BTreeSet<usize> = t0.iter().map(|&t| orbit[t]).collect();
    if let Some(o) = (0..p.space().orbits().len()).find(|o| !hit.contains(o)) {
        return Err(PresentationError::NotTransversal(o));
    }
    let all: Vec<Point> = p.space().points().collect();
    let hnn = build_hnn_prime_for_pile(p, &all, rho, rho.target())?;
    // In HNN′ the factors are [G, L] and letter i is point i.
    let words = t0
        .iter()
        .flat_map(|&t| p.group().elements().skip(1).map(move |g| (t, g)))
        .map(|(t, g)| phnn_word(p, rho, t, g, 0))
        .collect();
    Ok((hnn, words))
}

/// Kills every element of factor `l_factor`.
pub fn mod_l_quotient(p: &Presentation, l_factor: usize) -> Result<Presentation, PresentationError> {
    let l = p.factors.get(l_factor).ok_or(PresentationError::BadFactorIndex(l_factor))?;
    let words: Vec<Word> = l.elements().skip(1).map(|e| vec![Letter::factor(l_factor, e)]).collect();
    p.quotient_by_closure(&words)
}

/// `(G/⟨G_t⟩) ⨿ F(T/G)`.
pub fn mod_l_prediction(p: &Pile) -> Presentation {
    let gens: Vec<Elem> = p.space().points().flat_map(|t| p.stab(t).members().to_vec()).collect();
    let k = p.group().normal_closure(&gens).expect("stabilizer elements are in range");
    let (q, _) = p.group().quotient(&k).expect("normal closure is normal");
    free_product(&[Presentation::of_group("G/K", &q), Presentation::free(p.space().orbits().len())])
}

/// The presentation `⨿ G_x ⨿ F(r)` of a basic pile's group.
pub fn basic_pile_presentation(b: &BasicPile) -> Presentation {
    let mut p = Presentation {
        factors: b.factors.iter().map(|(_, g)| g.clone()).collect(),
        factor_names: b.factors.iter().map(|(n, _)| n.clone()).collect(),
        ..Presentation::trivial()
    };
    p.free_labels = (0..b.free_rank).map(|i| format!("f{i}")).collect();
    p
}

/// `pHNN` of a basic pile, realized as `HNN′` on its labels (the labels are
/// an orbit transversal of the standard extension).
pub fn basic_pile_phnn(b: &BasicPile, rho: &[GroupHom], l: &FiniteGroup) -> Result<Presentation, PresentationError> {
    let stable: Vec<StableLetter> = b
        .factors
        .iter()
        .enumerate()
        .map(|(i, (label, g))| StableLetter { label: label.clone(), factor: i, subgroup: g.whole() })
        .collect();
    build_hnn_prime(&basic_pile_presentation(b), rho, l, &stable)
}

/// `L ⨿ (G/⟨G_t⟩) ⨿ F(T/G)` for a basic pile, that is `L ⨿ F(r + |T0|)`.
pub fn basic_pile_structure_prediction(b: &BasicPile, l: &FiniteGroup) -> Presentation {
    free_product(&[Presentation::of_group("L", l), Presentation::free(b.free_rank + b.factors.len())])
}

/// A homomorphism between presentations given on generators.
#[derive(Clone, Debug)]
pub struct PresentationHom {
    pub source: Presentation,
    pub target: Presentation,
    /// For each source factor: the target factor and the hom into it.
    pub factor_maps: Vec<(usize, GroupHom)>,
    /// Image word of each free letter.
    pub free_images: Vec<Word>,
}

impl PresentationHom {
    /// Image of a word, letter by letter.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        for l in w {
            match *l {
                Letter::Factor { factor, elem } => {
                    let (tf, h) = &self.factor_maps[factor];
                    out.push(Letter::factor(*tf, h.apply(elem)));
                }
                Letter::Free { letter, exp } => {
                    let img = &self.free_images[letter];
                    if exp == 1 {
                        out.extend(img.iter().copied());
                    } else {
                        out.extend(img.iter().rev().map(|l| invert_letter(l, &self.target)));
                    }
                }
            }
        }
        out
    }
}

fn invert_letter(l: &Letter, p: &Presentation) -> Letter {
    match *l {
        Letter::Factor { factor, elem } => Letter::factor(factor, p.factors[factor].inv(elem)),
        Letter::Free { letter, exp } => Letter::Free { letter, exp: -exp },
    }
}

/// True iff `w` is `(t'^{•g'})⁻¹ g'⁻¹ t' ρ(g')` for some point `t'` and element `g'`.
fn is_phnn_relation(w: &[Letter], p: &Pile, rho: &GroupHom) -> bool {
    match w {
        [Letter::Free { letter: a, exp: -1 }, Letter::Factor { factor: 0, elem: x }, Letter::Free { letter: b, exp: 1 }, Letter::Factor { factor: 1, elem: y }] =>
        {
            let g = p.group().inv(*x);
            *b < p.size() && *a == p.act(*b, g) && *y == rho.apply(g)
        }
        _ => false,
    }
}

/// The map `pHNN(G, T, ρ, L) → pHNN(G', T', ρ', L')` induced by a pile
/// morphism `ψ` and `λ: L → L'` with `λ ∘ ρ = ρ' ∘ ψ_G`. Every relator's
/// image is checked to be a relation instance of the target.
pub fn induced_hom(
    psi: &PileMorphism,
    rho: &GroupHom,
    rho_prime: &GroupHom,
    lambda: &GroupHom,
) -> Result<PresentationHom, PresentationError> {
    if lambda.source() != rho.target() || lambda.target() != rho_prime.target() {
        return Err(PresentationError::Mismatch("lambda does not run from L to L'".into()));
    }
    if let Some(g) = psi
        .source()
        .group()
        .elements()
        .find(|&g| lambda.apply(rho.apply(g)) != rho_prime.apply(psi.apply_elem(g)))
    {
        return Err(PresentationError::SquareDoesNotCommute(g));
    }
    let source = build_phnn(psi.source(), rho)?;
    let target = build_phnn(psi.target(), rho_prime)?;
    let hom = PresentationHom {
        factor_maps: vec![(0, psi.group_map().clone()), (1, lambda.clone())],
        free_images: psi.space_map().iter().map(|&y| vec![Letter::free(y)]).collect(),
        source,
        target,
    };
    for (i, r) in hom.source.relators.iter().enumerate() {
        if !is_phnn_relation(&hom.apply(r), psi.target(), rho_prime) {
            return Err(PresentationError::RelatorNotPreserved(i));
        }
    }
    Ok(hom)
}

/// `|Hom(P, Q)|`.
pub fn hom_count(p: &Presentation, q: &FiniteGroup) -> u128 {
    let domains: Vec<Vec<GroupHom>> = p.factors.iter().map(|f| f.homs_to(q)).collect();
    count_with_domains(p, q, &domains)
}

/// Counts assignments with factor `i` ranging over `domains[i]` and free
/// letters over `Q`, under which every relator evaluates to the identity.
pub fn count_with_domains(p: &Presentation, q: &FiniteGroup, domains: &[Vec<GroupHom>]) -> u128 {
    Counter::new(p, q, domains, false).count()
}

/// True iff [`count_with_domains`] would be nonzero; stops at the first assignment.
pub fn exists_with_domains(p: &Presentation, q: &FiniteGroup, domains: &[Vec<GroupHom>]) -> bool {
    Counter::new(p, q, domains, true).count() > 0
}

#[derive(Clone, Copy)]
enum Var {
    Factor(usize),
    Free(usize),
}

struct Step {
    var: Var,
    /// Relator and letter position that determine this free letter.
    solve: Option<(usize, usize)>,
    checks: Vec<usize>,
}

struct Counter<'a> {
    p: &'a Presentation,
    q: &'a FiniteGroup,
    domains: Vec<Vec<Vec<Elem>>>,
    stop_at_first: bool,
}

#[derive(Clone)]
struct Assignment {
    factor: Vec<usize>,
    free: Vec<Elem>,
}

impl<'a> Counter<'a> {
    fn new(p: &'a Presentation, q: &'a FiniteGroup, domains: &[Vec<GroupHom>], stop_at_first: bool) -> Self {
        let domains = domains.iter().map(|d| d.iter().map(|h| h.map().to_vec()).collect()).collect();
        Counter { p, q, domains, stop_at_first }
    }

    fn var_id(&self, v: Var) -> usize {
        match v {
            Var::Factor(f) => f,
            Var::Free(x) => self.p.factors.len() + x,
        }
    }

    fn letter_var(&self, l: &Letter) -> usize {
        match *l {
            Letter::Factor { factor, .. } => factor,
            Letter::Free { letter, .. } => self.p.factors.len() + letter,
        }
    }

    fn count(&self) -> u128 {
        let nf = self.p.factors.len();
        let nv = nf + self.p.free_count();
        let relators: Vec<usize> = (0..self.p.relators.len()).filter(|&r| !self.p.relators[r].is_empty()).collect();
        // Components of the variable graph.
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut in_relator = vec![false; nv];
        for &r in &relators {
            let vars: Vec<usize> = self.p.relators[r].iter().map(|l| self.letter_var(l)).collect();
            for &v in &vars {
                in_relator[v] = true;
                let (a, b) = (find(&mut parent, vars[0]), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let mut total: u128 = 1;
        for v in 0..nv {
            if !in_relator[v] {
                total *= if v < nf { self.domains[v].len() as u128 } else { self.q.order() as u128 };
            }
        }
        let mut roots: Vec<usize> = (0..nv).filter(|&v| in_relator[v]).map(|v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        for root in roots {
            if total == 0 {
                return 0;
            }
            let vars: Vec<usize> = (0..nv).filter(|&v| in_relator[v] && find(&mut parent, v) == root).collect();
            let rels: Vec<usize> = relators
                .iter()
                .copied()
                .filter(|&r| find(&mut parent, self.letter_var(&self.p.relators[r][0])) == root)
                .collect();
            total *= self.count_component(&vars, &rels);
        }
        total
    }

    fn plan(&self, vars: &[usize], rels: &[usize]) -> Vec<Step> {
        let nf = self.p.factors.len();
        let to_var = |v: usize| if v < nf { Var::Factor(v) } else { Var::Free(v - nf) };
        let rel_vars: Vec<BTreeSet<usize>> =
            rels.iter().map(|&r| self.p.relators[r].iter().map(|l| self.letter_var(l)).collect()).collect();
        let mut placed: BTreeSet<usize> = BTreeSet::new();
        let mut steps: Vec<Step> = Vec::new();
        while placed.len() < vars.len() {
            let mut solved = None;
            'search: for &v in vars.iter().filter(|v| **v >= nf && !placed.contains(v)) {
                for (k, &r) in rels.iter().enumerate() {
                    let w = &self.p.relators[r];
                    let occurrences: Vec<usize> =
                        (0..w.len()).filter(|&i| self.letter_var(&w[i]) == v).collect();
                    if occurrences.len() == 1 && rel_vars[k].iter().all(|u| *u == v || placed.contains(u)) {
                        solved = Some((v, r, occurrences[0]));
                        break 'search;
                    }
                }
            }
            let (v, solve) = match solved {
                Some((v, r, pos)) => (v, Some((r, pos))),
                None => {
                    let score = |v: usize| {
                        let touching = rel_vars
                            .iter()
                            .filter(|s| s.contains(&v) && s.iter().any(|u| placed.contains(u)))
                            .count();
                        let size = if v < nf { self.domains[v].len() } else { self.q.order() };
                        (std::cmp::Reverse(touching), v >= nf, size, v)
                    };
                    let v = vars.iter().copied().filter(|v| !placed.contains(v)).min_by_key(|&v| score(v)).unwrap();
                    (v, None)
                }
            };
            placed.insert(v);
            steps.push(Step { var: to_var(v), solve, checks: Vec::new() });
        }
        let position: std::collections::BTreeMap<usize, usize> =
            steps.iter().enumerate().map(|(i, s)| (self.var_id(s.var), i)).collect();
        for (k, &r) in rels.iter().enumerate() {
            let last = rel_vars[k].iter().map(|v| position[v]).max().expect("nonempty relator");
            if steps[last].solve.map(|(sr, _)| sr) != Some(r) {
                steps[last].checks.push(r);
            }
        }
        steps
    }

    fn letter_value(&self, a: &Assignment, l: &Letter) -> Elem {
        match *l {
            Letter::Factor { factor, elem } => self.domains[factor][a.factor[factor]][elem],
            Letter::Free { letter, exp } => {
                let x = a.free[letter];
                if exp == 1 {
                    x
                } else {
                    self.q.inv(x)
                }
            }
        }
    }

    fn eval(&self, a: &Assignment, w: &[Letter]) -> Elem {
        w.iter().fold(IDENTITY, |acc, l| self.q.mul(acc, self.letter_value(a, l)))
    }

    fn count_component(&self, vars: &[usize], rels: &[usize]) -> u128 {
        let steps = self.plan(vars, rels);
        let init = Assignment { factor: vec![0; self.p.factors.len()], free: vec![IDENTITY; self.p.free_count()] };
        let first = &steps[0];
        let first_domain = match first.var {
            Var::Factor(f) => self.domains[f].len(),
            Var::Free(_) => self.q.order(),
        };
        let branch = |value: usize| {
            let mut a = init.clone();
            self.set(&mut a, first.var, value);
            if first.checks.iter().all(|&r| self.eval(&a, &self.p.relators[r]) == IDENTITY) {
                self.descend(&steps, 1, &mut a)
            } else {
                0
            }
        };
        if self.stop_at_first {
            return (0..first_domain).into_par_iter().any(|v| branch(v) > 0) as u128;
        }
        (0..first_domain).into_par_iter().map(branch).sum()
    }

    fn set(&self, a: &mut Assignment, v: Var, value: usize) {
        match v {
            Var::Factor(f) => a.factor[f] = value,
            Var::Free(x) => a.free[x] = value,
        }
    }

    fn descend(&self, steps: &[Step], i: usize, a: &mut Assignment) -> u128 {
        if i == steps.len() {
            return 1;
        }
        let step = &steps[i];
        let ok = |a: &Assignment| step.checks.iter().all(|&r| self.eval(a, &self.p.relators[r]) == IDENTITY);
        if let (Some((r, pos)), Var::Free(x)) = (step.solve, step.var) {
            let w = &self.p.relators[r];
            let u = self.eval(a, &w[..pos]);
            let v = self.eval(a, &w[pos + 1..]);
            let Letter::Free { exp, .. } = w[pos] else { unreachable!("solved letters are free") };
            // u x^e v = 1.
            a.free[x] = if exp == 1 { self.q.inv(self.q.mul(v, u)) } else { self.q.mul(v, u) };
            return if ok(a) { self.descend(steps, i + 1, a) } else { 0 };
        }
        let size = match step.var {
            Var::Factor(f) => self.domains[f].len(),
            Var::Free(_) => self.q.order(),
        };
        let mut total = 0;
        for value in 0..size {
            self.set(a, step.var, value);
            if ok(a) {
                total += self.descend(steps, i + 1, a);
                if self.stop_at_first && total > 0 {
                    return total;
                }
            }
        }
        total
    }
}

/// `hom_count` over every catalog group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountProfile {
    pub entries: Vec<(String, u128)>,
}

impl HomCountProfile {
    /// Index of the first entry where the profiles differ.
    pub fn first_difference(&self, other: &HomCountProfile) -> Option<usize> {
        if self.entries.len() != other.entries.len() {
            return Some(self.entries.len().min(other.entries.len()));
        }
        self.entries.iter().zip(&other.entries).position(|(a, b)| a != b)
    }
}

pub fn hom_profile(p: &Presentation, catalog: &[NamedGroup]) -> HomCountProfile {
    let entries = catalog.par_iter().map(|ng| (ng.name.clone(), hom_count(p, &ng.group))).collect();
    HomCountProfile { entries }
}

/// A homomorphism from a presented group to a catalog group that is
/// injective on factor 0.
#[derive(Clone, Debug)]
pub struct ZetaWitness {
    pub target: String,
    pub on_factor: GroupHom,
}

/// Searches the catalog in order for a hom out of `p` injective on factor 0.
pub fn zeta_witness(p: &Presentation, catalog: &[NamedGroup]) -> Option<ZetaWitness> {
    let g = p.factors.first()?;
    for ng in catalog {
        if ng.group.order() < g.order() {
            continue;
        }
        let mut domains: Vec<Vec<GroupHom>> = p.factors.iter().map(|f| f.homs_to(&ng.group)).collect();
        let injective: Vec<GroupHom> = domains[0].iter().filter(|h| h.is_injective()).cloned().collect();
        for sigma in injective {
            domains[0] = vec![sigma.clone()];
            if exists_with_domains(p, &ng.group, &domains) {
                return Some(ZetaWitness { target: ng.name.clone(), on_factor: sigma });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogKind};
    use crate::group::cyclic;
    use crate::gset::GSet;

    fn c2p() -> Presentation {
        Presentation::of_group("C2", &cyclic(2))
    }

    #[test]
    fn letters_serialize_in_the_documented_shape() {
        let w = vec![Letter::factor(0, 1), Letter::free_inv(2)];
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"[{"factor":0,"elem":1},{"free":2,"exp":-1}]"#);
        let back: Word = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn invalid_words_are_rejected() {
        let err = Presentation::new(vec![], vec!["x".into()], vec![vec![Letter::factor(0, 0)]]).unwrap_err();
        assert!(matches!(err, PresentationError::InvalidWord { relator: 0, position: 0, .. }));
        let err = Presentation::new(vec![], vec!["x".into()], vec![vec![Letter::Free { letter: 0, exp: 2 }]]).unwrap_err();
        assert!(matches!(err, PresentationError::InvalidWord { .. }));
    }

    #[test]
    fn hom_count_examples() {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        assert_eq!(hom_count(&c2p(), &c2), 2);
        assert_eq!(hom_count(&Presentation::free(1), &c4), 4);
        assert_eq!(hom_count(&free_product(&[c2p(), c2p()]), &c4), 4);
        assert_eq!(hom_count(&Presentation::trivial(), &c4), 1);
    }

    #[test]
    fn relators_cut_counts() {
        // <x | x^2> into C4 has two homs.
        let p = Presentation::new(vec![], vec!["x".into()], vec![vec![Letter::free(0), Letter::free(0)]]).unwrap();
        assert_eq!(hom_count(&p, &cyclic(4)), 2);
        // <x, y | x y x⁻¹ y⁻¹> into D4 counts commuting pairs: 8 · |classes| = 40.
        let comm = vec![Letter::free(0), Letter::free(1), Letter::free_inv(0), Letter::free_inv(1)];
        let p = Presentation::new(vec![], vec!["x".into(), "y".into()], vec![comm]).unwrap();
        let d4 = crate::catalog::by_name("D4").unwrap();
        assert_eq!(hom_count(&p, &d4), 40);
    }

    #[test]
    fn free_product_examples() {
        assert_eq!(free_product(&[c2p()]), c2p());
        assert_eq!(free_product(&[Presentation::trivial(), Presentation::trivial()]), Presentation::trivial());
        let p = free_product(&[c2p(), c2p()]);
        assert_eq!(p.factors().len(), 2);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn hnn_examples() {
        let c2 = cyclic(2);
        assert_eq!(build_hnn(&c2, &[]).unwrap(), Presentation::of_group("G", &c2));
        let p = build_hnn(&c2, &[("t".into(), c2.trivial_subgroup(), vec![0])]).unwrap();
        assert_eq!((p.free_count(), p.relators().len()), (1, 0));
        // ⟨C2, t | t⁻¹ g t g⁻¹⟩ = C2 × Z: count into C4 is 2 · 4.
        let p = build_hnn(&c2, &[("t".into(), c2.whole(), vec![0, 1])]).unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(hom_count(&p, &cyclic(4)), 8);
        let d4 = crate::catalog::by_name("D4").unwrap();
        // Pairs (g, t) in D4 with g² = 1 and t centralizing g: 8 + 4 · 4 = 24... counted by brute force.
        let brute = d4
            .elements()
            .filter(|&g| d4.mul(g, g) == 0)
            .map(|g| d4.elements().filter(|&t| d4.mul(t, g) == d4.mul(g, t)).count() as u128)
            .sum::<u128>();
        assert_eq!(hom_count(&p, &d4), brute);
        let err = build_hnn(&c2, &[("t".into(), c2.whole(), vec![0, 0])]).unwrap_err();
        assert_eq!(err, PresentationError::PhiNotInjective("t".into()));
    }

    #[test]
    fn hnn_prime_examples() {
        let c2 = cyclic(2);
        let g = Presentation::of_group("G", &c2);
        let p = build_hnn_prime(&g, &[c2.identity_hom()], &c2, &[]).unwrap();
        assert_eq!(p, free_product(&[g.clone(), Presentation::of_group("L", &c2)]));
        let s = StableLetter { label: "t".into(), factor: 0, subgroup: c2.whole() };
        let p = build_hnn_prime(&g, &[c2.identity_hom()], &c2, &[s.clone()]).unwrap();
        // ⟨C2, C2, t | g^t = ρ(g)⟩: σ_L determined by σ_G and t, so |Hom(C2,Q)| · |Q|.
        for q in catalog(2, CatalogKind::P3).unwrap() {
            assert_eq!(hom_count(&p, &q.group), c2.homs_to(&q.group).len() as u128 * q.group.order() as u128);
        }
        let err = build_hnn_prime(&g, &[c2.trivial_hom_to(&c2)], &c2, &[s]).unwrap_err();
        assert_eq!(err, PresentationError::RhoNotInjectiveOn("t".into()));
    }

    #[test]
    fn phnn_examples() {
        let c2 = cyclic(2);
        let empty = Pile::new(GSet::trivial(&c2, 0));
        let p = build_phnn(&empty, &c2.identity_hom()).unwrap();
        assert!(p.relators().is_empty() && p.free_count() == 0);
        let one = FiniteGroup::trivial();
        let triv = Pile::new(GSet::trivial(&one, 3));
        let p = build_phnn(&triv, &one.trivial_hom_to(&c2)).unwrap();
        assert_eq!(p.free_count(), 3);
        let c4 = cyclic(4);
        assert_eq!(hom_count(&p, &c4), 2 * 64);
        let reg = Pile::new(GSet::regular(&c2));
        let p = build_phnn(&reg, &c2.identity_hom()).unwrap();
        // Expected: C2 ⨿ C2 ⨿ F(1).
        for q in catalog(2, CatalogKind::P3).unwrap() {
            let h = c2.homs_to(&q.group).len() as u128;
            assert_eq!(hom_count(&p, &q.group), h * h * q.group.order() as u128, "{}", q.name);
        }
    }

    #[test]
    fn kernel_words_examples() {
        let c2 = cyclic(2);
        let reg = Pile::new(GSet::regular(&c2));
        let (_, words) = hnn_to_phnn_kernel(&reg, &[0], &c2.identity_hom()).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(hnn_to_phnn_kernel(&reg, &[], &c2.identity_hom()).unwrap_err(), PresentationError::NotTransversal(0));
    }

    #[test]
    fn mod_l_fixed_point_instance() {
        let c2 = cyclic(2);
        let p = Pile::new(GSet::trivial(&c2, 1));
        let phnn = build_phnn(&p, &c2.identity_hom()).unwrap();
        let quotient = mod_l_quotient(&phnn, 1).unwrap();
        let cat = catalog(2, CatalogKind::P3).unwrap();
        let profile = hom_profile(&quotient, &cat);
        let counts: Vec<u128> = profile.entries.iter().map(|e| e.1).collect();
        assert_eq!(counts, vec![1, 2, 4, 4, 8, 8, 8, 8, 8]);
        assert_eq!(profile, hom_profile(&mod_l_prediction(&p), &cat));
        assert_eq!(mod_l_quotient(&phnn, 5).unwrap_err(), PresentationError::BadFactorIndex(5));
    }

    #[test]
    fn induced_hom_identity_and_failure() {
        let c2 = cyclic(2);
        let reg = Pile::new(GSet::regular(&c2));
        let id = PileMorphism::identity(&reg);
        let h = induced_hom(&id, &c2.identity_hom(), &c2.identity_hom(), &c2.identity_hom()).unwrap();
        for r in h.source.relators() {
            assert_eq!(&h.apply(r), r);
        }
        let err = induced_hom(&id, &c2.identity_hom(), &c2.identity_hom(), &c2.trivial_hom_to(&c2)).unwrap_err();
        assert_eq!(err, PresentationError::SquareDoesNotCommute(1));
    }

    #[test]
    fn profile_is_multiplicative_and_ignores_trivial_parts() {
        let cat = catalog(2, CatalogKind::P3).unwrap();
        let a = c2p();
        let b = Presentation::free(1);
        let prod = hom_profile(&free_product(&[a.clone(), b.clone()]), &cat);
        let (pa, pb) = (hom_profile(&a, &cat), hom_profile(&b, &cat));
        for ((x, y), z) in pa.entries.iter().zip(&pb.entries).zip(&prod.entries) {
            assert_eq!(x.1 * y.1, z.1);
        }
        assert_eq!(hom_profile(&free_product(&[a.clone(), Presentation::trivial()]), &cat), pa);
        assert!(hom_profile(&Presentation::trivial(), &cat).entries.iter().all(|e| e.1 == 1));
    }

    #[test]
    fn zeta_witness_for_fixed_point() {
        let c2 = cyclic(2);
        let p = Pile::new(GSet::trivial(&c2, 1));
        let phnn = build_phnn(&p, &c2.identity_hom()).unwrap();
        let w = zeta_witness(&phnn, &catalog(2, CatalogKind::P4).unwrap()).unwrap();
        assert_eq!(w.target, "C2");
        assert!(w.on_factor.is_injective());
    }
}
