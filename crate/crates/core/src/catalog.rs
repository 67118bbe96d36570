//! Small p-group catalogs used as targets for homomorphism counting.
//!
//! `p3` holds every group of order dividing `p³` (nine groups for each
//! prime). `p4` adds the fourteen groups of order 16 and is only available
//! for `p = 2`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{cyclic, Elem, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("catalog p4 is only available for p = 2 (got p = {0})")]
    P4NeedsTwo(usize),
    #[error("unknown catalog {0:?} (expected p3 or p4)")]
    UnknownCatalog(String),
    #[error("no group named {0:?} in the catalog")]
    UnknownGroup(String),
}

/// Which catalog to count against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    P3,
    P4,
}

impl FromStr for CatalogKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p3" => Ok(CatalogKind::P3),
            "p4" => Ok(CatalogKind::P4),
            other => Err(CatalogError::UnknownCatalog(other.to_string())),
        }
    }
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CatalogKind::P3 => "p3",
            CatalogKind::P4 => "p4",
        })
    }
}

/// A named catalog group.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Group generated by `a` of order `m` and `x` with `x a x⁻¹ = a^k` and `x^n = a^s`.
///
/// Element `a^i x^j` has index `i + m j`. Requires `k^n ≡ 1` and `k s ≡ s (mod m)`.
pub fn metacyclic(m: usize, n: usize, k: usize, s: usize) -> FiniteGroup {
    let order = m * n;
    let kpow: Vec<usize> = (0..n).scan(1usize, |acc, _| {
        let cur = *acc;
        *acc = *acc * k % m;
        Some(cur)
    }).collect();
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (i1, j1) = (x % m, x / m);
        for y in 0..order {
            let (i2, j2) = (y % m, y / m);
            let mut i = i1 + i2 * kpow[j1];
            let mut j = j1 + j2;
            if j >= n {
                j -= n;
                i += s;
            }
            table[x * order + y] = i % m + m * j;
        }
    }
    FiniteGroup::from_flat_unchecked(order, table)
}

/// Semidirect product `N ⋊ C_n` where the generator of `C_n` acts by `aut`.
///
/// `aut` is an automorphism of `N` (as an element permutation) with
/// `aut^n = id`. The pair `(x, j)` has index `x + |N| j` and
/// `(x, j)(y, j') = (x · aut^j(y), j + j')`.
pub fn semidirect_cyclic(normal: &FiniteGroup, n: usize, aut: &[Elem]) -> FiniteGroup {
    let m = normal.order();
    let mut powers = vec![normal.elements().collect::<Vec<_>>()];
    for j in 1..n {
        let prev = &powers[j - 1];
        powers.push(prev.iter().map(|&y| aut[y]).collect());
    }
    let order = m * n;
    let mut table = vec![0; order * order];
    for a in 0..order {
        let (x, j1) = (a % m, a / m);
        for b in 0..order {
            let (y, j2) = (b % m, b / m);
            let z = normal.mul(x, powers[j1][y]);
            table[a * order + b] = z + m * ((j1 + j2) % n);
        }
    }
    FiniteGroup::from_flat_unchecked(order, table)
}

fn abelian(factors: &[usize]) -> FiniteGroup {
    factors
        .iter()
        .map(|&n| cyclic(n))
        .reduce(|a, b| a.direct_product(&b))
        .unwrap_or_else(FiniteGroup::trivial)
}

/// `C_p × C_p ⋊ C_p` with `a ↦ ab, b ↦ b`; Heisenberg group for odd `p`, `D4` for `p = 2`.
fn heisenberg(p: usize) -> FiniteGroup {
    let n = cyclic(p).direct_product(&cyclic(p));
    // (i, j) has index i * p + j.
    let aut: Vec<Elem> = (0..p * p).map(|x| {
        let (i, j) = (x / p, x % p);
        i * p + (i + j) % p
    }).collect();
    semidirect_cyclic(&n, p, &aut)
}

fn named(name: &str, group: FiniteGroup) -> NamedGroup {
    NamedGroup { name: name.to_string(), group }
}

/// Every group of order dividing `p³`.
pub fn groups_dividing_p3(p: usize) -> Result<Vec<NamedGroup>, CatalogError> {
    if !is_prime(p) {
        return Err(CatalogError::NotPrime(p));
    }
    let c = |n: usize| format!("C{n}");
    let mut out = vec![
        named("C1", FiniteGroup::trivial()),
        named(&c(p), cyclic(p)),
        named(&c(p * p), cyclic(p * p)),
        named(&format!("C{p}xC{p}"), abelian(&[p, p])),
        named(&c(p * p * p), cyclic(p * p * p)),
        named(&format!("C{}xC{p}", p * p), abelian(&[p * p, p])),
        named(&format!("C{p}xC{p}xC{p}"), abelian(&[p, p, p])),
    ];
    if p == 2 {
        out.push(named("D4", metacyclic(4, 2, 3, 0)));
        out.push(named("Q8", metacyclic(4, 2, 3, 2)));
    } else {
        out.push(named(&format!("Heis{p}"), heisenberg(p)));
        out.push(named(&format!("M{}", p * p * p), metacyclic(p * p, p, 1 + p, 0)));
    }
    Ok(out)
}

/// The fourteen groups of order 16.
pub fn groups_of_order_16() -> Vec<NamedGroup> {
    let c4c2 = cyclic(4).direct_product(&cyclic(2));
    // In C4 × C2 the pair (i, j) has index 2i + j.
    let idx = |i: usize, j: usize| 2 * (i % 4) + j % 2;
    let twist: Vec<Elem> = (0..8).map(|x| idx(x / 2, x / 2 + x % 2)).collect();
    let central: Vec<Elem> = (0..8).map(|x| idx(x / 2 + 2 * (x % 2), x % 2)).collect();
    vec![
        named("C16", cyclic(16)),
        named("C4xC4", abelian(&[4, 4])),
        named("C2^2:C4", semidirect_cyclic(&c4c2, 2, &twist)),
        named("C4:C4", metacyclic(4, 4, 3, 0)),
        named("C8xC2", abelian(&[8, 2])),
        named("M16", metacyclic(8, 2, 5, 0)),
        named("D8", metacyclic(8, 2, 7, 0)),
        named("SD16", metacyclic(8, 2, 3, 0)),
        named("Q16", metacyclic(8, 2, 7, 4)),
        named("C4xC2xC2", abelian(&[4, 2, 2])),
        named("D4xC2", metacyclic(4, 2, 3, 0).direct_product(&cyclic(2))),
        named("Q8xC2", metacyclic(4, 2, 3, 2).direct_product(&cyclic(2))),
        named("C4oD4", semidirect_cyclic(&c4c2, 2, &central)),
        named("C2^4", abelian(&[2, 2, 2, 2])),
    ]
}

/// Every group of order at most 8, one per isomorphism class.
pub fn groups_up_to_order_8() -> Vec<NamedGroup> {
    vec![
        named("C1", FiniteGroup::trivial()),
        named("C2", cyclic(2)),
        named("C3", cyclic(3)),
        named("C4", cyclic(4)),
        named("C2xC2", abelian(&[2, 2])),
        named("C5", cyclic(5)),
        named("C6", cyclic(6)),
        named("S3", metacyclic(3, 2, 2, 0)),
        named("C7", cyclic(7)),
        named("C8", cyclic(8)),
        named("C4xC2", abelian(&[4, 2])),
        named("C2xC2xC2", abelian(&[2, 2, 2])),
        named("D4", metacyclic(4, 2, 3, 0)),
        named("Q8", metacyclic(4, 2, 3, 2)),
    ]
}

/// The requested catalog for prime `p`.
pub fn catalog(p: usize, kind: CatalogKind) -> Result<Vec<NamedGroup>, CatalogError> {
    let mut out = groups_dividing_p3(p)?;
    if kind == CatalogKind::P4 {
        if p != 2 {
            return Err(CatalogError::P4NeedsTwo(p));
        }
        out.extend(groups_of_order_16());
    }
    Ok(out)
}

/// Looks a group up by catalog name (for example `C2`, `D4`, `Q16`).
pub fn by_name(name: &str) -> Result<FiniteGroup, CatalogError> {
    let order16 = groups_of_order_16();
    let mut pool: Vec<NamedGroup> = Vec::new();
    for p in [2, 3, 5, 7] {
        pool.extend(groups_dividing_p3(p).expect("prime"));
    }
    pool.extend(order16);
    pool.extend(groups_up_to_order_8());
    pool.into_iter()
        .find(|g| g.name == name)
        .map(|g| g.group)
        .ok_or_else(|| CatalogError::UnknownGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::validate_table;

    /// Cheap isomorphism invariants: sorted element orders, center size,
    /// commutator subgroup size and subgroup counts.
    fn invariants(g: &FiniteGroup) -> (Vec<usize>, usize, usize, usize, usize) {
        let mut orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        let center = g
            .elements()
            .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
            .count();
        let comms: Vec<Elem> = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)))
            .collect();
        let derived = g.subgroup_generated(&comms).unwrap().order();
        let subs = g.all_subgroups();
        let normal = subs.iter().filter(|s| s.is_normal()).count();
        (orders, center, derived, subs.len(), normal)
    }

    #[test]
    fn p3_catalogs_are_valid_and_distinct() {
        for p in [2, 3] {
            let cat = groups_dividing_p3(p).unwrap();
            assert_eq!(cat.len(), 9);
            let mut seen = Vec::new();
            for ng in &cat {
                validate_table(&ng.group.rows()).unwrap();
                assert!(ng.group.is_p_group(p), "{}", ng.name);
                let inv = (ng.group.order(), invariants(&ng.group));
                assert!(!seen.contains(&inv), "duplicate {}", ng.name);
                seen.push(inv);
            }
        }
    }

    #[test]
    fn order_16_groups_are_valid_and_distinct() {
        let cat = groups_of_order_16();
        assert_eq!(cat.len(), 14);
        let mut seen = Vec::new();
        for ng in &cat {
            assert_eq!(ng.group.order(), 16, "{}", ng.name);
            validate_table(&ng.group.rows()).unwrap();
            let inv = invariants(&ng.group);
            assert!(!seen.contains(&inv), "duplicate {}", ng.name);
            seen.push(inv);
        }
    }

    #[test]
    fn named_groups_have_expected_shape() {
        let q8 = by_name("Q8").unwrap();
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
        let d4 = by_name("D4").unwrap();
        assert_eq!(d4.elements().filter(|&x| d4.element_order(x) == 2).count(), 5);
        assert!(!by_name("Heis3").unwrap().is_abelian());
        assert!(matches!(by_name("nope"), Err(CatalogError::UnknownGroup(_))));
    }

    #[test]
    fn catalog_kinds() {
        assert_eq!(catalog(2, CatalogKind::P4).unwrap().len(), 23);
        assert_eq!(catalog(3, CatalogKind::P4).unwrap_err(), CatalogError::P4NeedsTwo(3));
        assert_eq!(catalog(4, CatalogKind::P3).unwrap_err(), CatalogError::NotPrime(4));
    }
}
