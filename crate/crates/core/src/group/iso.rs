//! Generating sets, homomorphism extension, isomorphism search.

use super::{Elem, FiniteGroup, GroupMorphism};

const UNSET: Elem = Elem::MAX;

/// A small generating set, sorted by descending element order.
///
/// Exhaustive over sizes 1 and 2 (and 3 up to order 64), greedy beyond.
pub fn small_generating_set(g: &FiniteGroup) -> Vec<Elem> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    let mut by_order: Vec<Elem> = g.elements().filter(|&x| x != g.identity()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    if let Some(&x) = by_order.iter().find(|&&x| g.element_order(x) as usize == n) {
        return vec![x];
    }
    for (i, &a) in by_order.iter().enumerate() {
        for &b in &by_order[i + 1..] {
            if g.subgroup_generated(&[a, b]).order() == n {
                return vec![a, b];
            }
        }
    }
    if n <= 64 {
        for (i, &a) in by_order.iter().enumerate() {
            for (j, &b) in by_order.iter().enumerate().skip(i + 1) {
                for &c in &by_order[j + 1..] {
                    if g.subgroup_generated(&[a, b, c]).order() == n {
                        return vec![a, b, c];
                    }
                }
            }
        }
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut current = g.subgroup_generated(&[]);
    while current.order() < n {
        let x = *by_order.iter().find(|&&x| !current.contains(x)).expect("group is finite");
        gens.push(x);
        current = g.subgroup_generated(&gens);
    }
    gens
}

/// Extends `gens[i] -> images[i]` multiplicatively over the subgroup
/// generated by `gens`. Returns the partial map (unreached entries are
/// `Elem::MAX`) or `None` when the assignment is not consistent, i.e. when
/// it does not define a homomorphism on that subgroup.
pub fn extend_to_hom(g: &FiniteGroup, gens: &[Elem], h: &FiniteGroup, images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![UNSET; g.order()];
    map[g.identity() as usize] = h.identity();
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x as usize];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match map[y as usize] {
                UNSET => {
                    map[y as usize] = fy;
                    queue.push(y);
                }
                v if v != fy => return None,
                _ => {}
            }
        }
    }
    Some(map)
}

/// Every isomorphism `g -> h` (all of them when `first_only` is false).
fn search(g: &FiniteGroup, h: &FiniteGroup, first_only: bool) -> Vec<GroupMorphism> {
    let mut out = Vec::new();
    if g.order() != h.order() {
        return out;
    }
    let gens = small_generating_set(g);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| h.elements().filter(|&y| h.element_order(y) == g.element_order(s)).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    backtrack(g, h, &gens, &candidates, &mut images, first_only, &mut out);
    out
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    images: &mut Vec<Elem>,
    first_only: bool,
    out: &mut Vec<GroupMorphism>,
) {
    let depth = images.len();
    if depth == gens.len() {
        let map = extend_to_hom(g, gens, h, images).expect("checked at the previous level");
        let m = GroupMorphism::new(map);
        if m.is_bijective(h.order()) {
            out.push(m);
        }
        return;
    }
    for &y in &candidates[depth] {
        images.push(y);
        if let Some(partial) = extend_to_hom(g, &gens[..=depth], h, images) {
            // injectivity on the partial domain
            let mut seen = vec![false; h.order()];
            let injective = partial
                .iter()
                .filter(|&&v| v != UNSET)
                .all(|&v| !std::mem::replace(&mut seen[v as usize], true));
            if injective {
                backtrack(g, h, gens, candidates, images, first_only, out);
                if first_only && !out.is_empty() {
                    images.pop();
                    return;
                }
            }
        }
        images.pop();
    }
}

fn invariants_match(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order()
        && g.is_abelian() == h.is_abelian()
        && g.order_census() == h.order_census()
        && g.center().order() == h.center().order()
}

/// An isomorphism `g -> h`, if one exists.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMorphism> {
    if !invariants_match(g, h) {
        return None;
    }
    search(g, h, true).into_iter().next()
}

/// All isomorphisms `g -> h`.
pub fn isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupMorphism> {
    if !invariants_match(g, h) {
        return Vec::new();
    }
    search(g, h, false)
}
