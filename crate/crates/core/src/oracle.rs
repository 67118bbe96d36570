//! Brute-force checkers that work directly on action and multiplication
//! tables. They share no code with the algorithms they check.

use std::collections::BTreeSet;

use crate::group::{Elem, FiniteGroup};
use crate::gset::{GSet, Point};
use crate::pile::Pile;

fn translate(s: &GSet, z: &[Point], g: Elem) -> BTreeSet<Point> {
    z.iter().map(|&t| s.act(t, g)).collect()
}

/// `{g : Z^g = Z}` by scanning every element.
pub fn setwise_stabilizer(s: &GSet, z: &[Point]) -> Vec<Elem> {
    let set: BTreeSet<Point> = z.iter().copied().collect();
    s.group().elements().filter(|&g| translate(s, z, g) == set).collect()
}

pub fn point_stabilizer(s: &GSet, t: Point) -> Vec<Elem> {
    s.group().elements().filter(|&g| s.act(t, g) == t).collect()
}

/// Every translate of `z` equals `z` or misses it.
pub fn is_block(s: &GSet, z: &[Point]) -> bool {
    let set: BTreeSet<Point> = z.iter().copied().collect();
    s.group().elements().all(|g| {
        let img = translate(s, z, g);
        img == set || img.is_disjoint(&set)
    })
}

/// Nonempty subsets of `0..n` as sorted point lists.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<Point>> {
    (1u32..(1 << n)).map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect()).collect()
}

/// Every set partition of `0..n`, each as a list of blocks.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<Point>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<Point>>, out: &mut Vec<Vec<Vec<Point>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

pub fn is_g_partition(s: &GSet, blocks: &[Vec<Point>]) -> bool {
    blocks.iter().all(|b| is_block(s, b))
}

/// Every block of `finer` lies inside a block of `coarser`.
pub fn refines(finer: &[Vec<Point>], coarser: &[Vec<Point>]) -> bool {
    finer.iter().all(|b| coarser.iter().any(|c| b.iter().all(|t| c.contains(t))))
}

/// Disjoint nonempty blocks covering `0..n`.
pub fn is_partition_of(n: usize, blocks: &[Vec<Point>]) -> bool {
    let mut seen = vec![false; n];
    for b in blocks {
        if b.is_empty() {
            return false;
        }
        for &t in b {
            if t >= n || seen[t] {
                return false;
            }
            seen[t] = true;
        }
    }
    seen.into_iter().all(|x| x)
}

/// Checks the three conditions on a stabilizer-aligned refinement: a
/// `G`-partition, finer than `input`, and `Stab(T_i) = G_{t_i}` with `t_i ∈ T_i`.
pub fn check_aligned(s: &GSet, input: &[Vec<Point>], output: &[Vec<Point>], witnesses: &[Point]) -> Result<(), String> {
    if !is_partition_of(s.size(), output) {
        return Err("output is not a partition".into());
    }
    if !is_g_partition(s, output) {
        return Err("output is not a G-partition".into());
    }
    if !refines(output, input) {
        return Err("output does not refine the input".into());
    }
    if witnesses.len() != output.len() {
        return Err("one witness per block expected".into());
    }
    for (b, &t) in output.iter().zip(witnesses) {
        if !b.contains(&t) {
            return Err(format!("witness {t} is outside its block"));
        }
        if setwise_stabilizer(s, b) != point_stabilizer(s, t) {
            return Err(format!("block {b:?} has a different stabilizer than {t}"));
        }
    }
    Ok(())
}

/// Some block point realizes the block's setwise stabilizer.
pub fn has_aligned_witness(s: &GSet, block: &[Point]) -> bool {
    let st = setwise_stabilizer(s, block);
    block.iter().any(|&t| point_stabilizer(s, t) == st)
}

/// Full homomorphism check on the tables.
pub fn is_hom(g: &FiniteGroup, h: &FiniteGroup, map: &[Elem]) -> bool {
    map.len() == g.order()
        && map.iter().all(|&x| x < h.order())
        && g.elements().all(|a| g.elements().all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

/// Checks that raw maps form a pile morphism `source → target`.
pub fn is_pile_morphism(source: &Pile, target: &Pile, group_map: &[Elem], space_map: &[Point]) -> Result<(), String> {
    if !is_hom(source.group(), target.group(), group_map) {
        return Err("group map is not a homomorphism".into());
    }
    if space_map.len() != source.size() || space_map.iter().any(|&y| y >= target.size()) {
        return Err("space map has the wrong shape".into());
    }
    for t in 0..source.size() {
        for g in source.group().elements() {
            if space_map[source.act(t, g)] != target.act(space_map[t], group_map[g]) {
                return Err(format!("not equivariant at point {t}, element {g}"));
            }
        }
    }
    Ok(())
}

/// Checks `γ: G → B` with `α ∘ γ = φ` on groups and points.
pub fn check_lift(
    g: &Pile,
    b: &Pile,
    phi: (&[Elem], &[Point]),
    alpha: (&[Elem], &[Point]),
    gamma: (&[Elem], &[Point]),
) -> Result<(), String> {
    is_pile_morphism(g, b, gamma.0, gamma.1)?;
    if let Some(e) = g.group().elements().find(|&e| alpha.0[gamma.0[e]] != phi.0[e]) {
        return Err(format!("alpha ∘ gamma differs from phi at element {e}"));
    }
    if let Some(t) = (0..g.size()).find(|&t| alpha.1[gamma.1[t]] != phi.1[t]) {
        return Err(format!("alpha ∘ gamma differs from phi at point {t}"));
    }
    Ok(())
}

/// Two points share an image only if they share a block of `p`.
pub fn fibers_refine(space_map: &[Point], blocks: &[Vec<Point>]) -> bool {
    let block_of = |t: Point| blocks.iter().position(|b| b.contains(&t));
    (0..space_map.len()).all(|s| (0..space_map.len()).all(|t| space_map[s] != space_map[t] || block_of(s) == block_of(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn blocks_of_a_swap() {
        let c2 = cyclic(2);
        let s = GSet::new(&c2, vec![vec![0, 1], vec![1, 0], vec![2, 2]]).unwrap();
        assert!(is_block(&s, &[0]));
        assert!(is_block(&s, &[0, 1]));
        assert!(!is_block(&s, &[0, 2]));
        assert_eq!(setwise_stabilizer(&s, &[0, 1]), vec![0, 1]);
    }
}
