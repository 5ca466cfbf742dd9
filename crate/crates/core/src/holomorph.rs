//! The holomorph `Hol(N) = N ⋊ Aut(N)` as lazy pair arithmetic, and the
//! search for its regular subgroups.
//!
//! A regular subgroup meets every coset `{n} x Aut(N)` exactly once, so it
//! is stored as the vector `f` with `(a, f[a])` its element above `a`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::morphisms::{AutIdx, AutomorphismGroup};

pub type HolElem = (Elem, AutIdx);

const UNSET: AutIdx = AutIdx::MAX;

#[derive(Clone, Debug)]
pub struct HolGroup {
    base: FiniteGroup,
    aut: AutomorphismGroup,
}

impl HolGroup {
    pub fn new(base: FiniteGroup, aut: AutomorphismGroup) -> Result<Self> {
        if aut.base_order() != base.order() {
            return Err(Error::AutNotClosed);
        }
        // every listed map must be an automorphism and the list closed
        for g in aut.generators() {
            for x in aut.elements() {
                let c: Vec<Elem> = aut.perm(x).iter().map(|&y| aut.apply(g, y)).collect();
                if aut.index_of(&c).is_none() {
                    return Err(Error::AutNotClosed);
                }
            }
        }
        Ok(HolGroup { base, aut })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn aut(&self) -> &AutomorphismGroup {
        &self.aut
    }

    pub fn order(&self) -> usize {
        self.base.order() * self.aut.order()
    }

    pub fn identity(&self) -> HolElem {
        (self.base.identity(), 0)
    }

    /// `(u, f)(v, g) = (u · f(v), f ∘ g)`.
    #[inline]
    pub fn mul(&self, x: HolElem, y: HolElem) -> HolElem {
        (self.base.mul(x.0, self.aut.apply(x.1, y.0)), self.aut.compose(x.1, y.1))
    }

    #[inline]
    pub fn inv(&self, x: HolElem) -> HolElem {
        let fi = self.aut.inverse(x.1);
        (self.aut.apply(fi, self.base.inv(x.0)), fi)
    }

    /// Conjugation by the automorphism `phi`: `(u, f) ↦ (φ(u), φ f φ⁻¹)`.
    #[inline]
    pub fn conj_aut(&self, phi: AutIdx, x: HolElem) -> HolElem {
        let pi = self.aut.inverse(phi);
        (self.aut.apply(phi, x.0), self.aut.compose(self.aut.compose(phi, x.1), pi))
    }

    /// `N` embedded as `{(n, id)}`.
    pub fn translations(&self) -> RegularSubgroup {
        RegularSubgroup {
            f: vec![0; self.base.order()],
        }
    }
}

/// A regular subgroup of a holomorph, as the automorphism paired with each
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularSubgroup {
    pub f: Vec<AutIdx>,
}

impl RegularSubgroup {
    /// Validates that `elements` is a regular subgroup of `hol`.
    pub fn from_elements(hol: &HolGroup, elements: &[HolElem]) -> Result<Self> {
        let n = hol.base().order();
        if elements.len() != n {
            return Err(Error::NotRegular(format!("{} elements for {n} points", elements.len())));
        }
        let mut f = vec![UNSET; n];
        for &(a, g) in elements {
            hol.base().check_index(a)?;
            if g as usize >= hol.aut().order() {
                return Err(Error::NotRegular(format!("automorphism index {g} out of range")));
            }
            if f[a as usize] != UNSET {
                return Err(Error::NotRegular(format!("two elements above point {a}")));
            }
            f[a as usize] = g;
        }
        let h = RegularSubgroup { f };
        h.check_closed(hol)?;
        Ok(h)
    }

    pub fn check_closed(&self, hol: &HolGroup) -> Result<()> {
        if self.f.len() != hol.base().order() {
            return Err(Error::NotRegular("wrong length".into()));
        }
        for a in hol.base().elements() {
            for b in hol.base().elements() {
                let (c, h) = hol.mul((a, self.f[a as usize]), (b, self.f[b as usize]));
                if self.f[c as usize] != h {
                    return Err(Error::NotRegular(format!("product of points {a} and {b} leaves the set")));
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> impl Iterator<Item = HolElem> + '_ {
        self.f.iter().enumerate().map(|(a, &g)| (a as Elem, g))
    }

    /// `Φ_φ(H) = {(φ(u), φ f_u φ⁻¹)}`.
    pub fn conjugate(&self, hol: &HolGroup, phi: AutIdx) -> RegularSubgroup {
        let mut f = vec![0; self.f.len()];
        for x in self.elements() {
            let (u, g) = hol.conj_aut(phi, x);
            f[u as usize] = g;
        }
        RegularSubgroup { f }
    }

    /// Automorphisms `φ` of `N` with `Φ_φ(H) = H`.
    pub fn normalizing_automorphisms(&self, hol: &HolGroup) -> Vec<AutIdx> {
        hol.aut()
            .elements()
            .filter(|&phi| self.elements().all(|x| {
                let (u, g) = hol.conj_aut(phi, x);
                self.f[u as usize] == g
            }))
            .collect()
    }

    /// True when no automorphism conjugate of `H` is lexicographically
    /// smaller; exactly one member of each conjugacy class passes.
    pub fn is_class_minimal(&self, hol: &HolGroup) -> bool {
        let aut = hol.aut();
        let n = self.f.len();
        for phi in aut.elements().skip(1) {
            let pi = aut.inverse(phi);
            for x in 0..n as Elem {
                let u = aut.apply(pi, x);
                let w = aut.compose(aut.compose(phi, self.f[u as usize]), pi);
                let v = self.f[x as usize];
                if w < v {
                    return false;
                }
                if w > v {
                    break;
                }
            }
        }
        true
    }

    /// Smallest member of the conjugacy class under `Aut(N)`.
    pub fn class_minimum(&self, hol: &HolGroup) -> RegularSubgroup {
        hol.aut()
            .elements()
            .map(|phi| self.conjugate(hol, phi))
            .min()
            .expect("Aut(N) contains the identity")
    }

    pub fn is_conjugate_to(&self, hol: &HolGroup, other: &RegularSubgroup) -> Option<AutIdx> {
        hol.aut().elements().find(|&phi| {
            self.elements().all(|x| {
                let (u, g) = hol.conj_aut(phi, x);
                other.f[u as usize] == g
            })
        })
    }

    /// The group `{(a, f_a)}` tabulated on the point set: `a ∘ b = a · f_a(b)`.
    pub fn circ_table(&self, hol: &HolGroup) -> Vec<Elem> {
        let n = self.f.len();
        let mut t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = hol.base().mul(a as Elem, hol.aut().apply(self.f[a], b as Elem));
            }
        }
        t
    }
}

/// Tuning and limits for the regular-subgroup search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Points in the order they are filled; defaults to descending element
    /// order. Must be a permutation of the non-identity points.
    pub point_order: Option<Vec<Elem>>,
    pub deadline: Option<Instant>,
}

/// Outcome of an enumeration.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub found: u64,
}

/// Points ordered by descending element order, with an optional anchor
/// element placed first.
pub fn default_point_order(n: &FiniteGroup, anchor: Option<Elem>) -> Vec<Elem> {
    let mut pts: Vec<Elem> = n.elements().filter(|&x| x != n.identity() && Some(x) != anchor).collect();
    pts.sort_by_key(|&x| (std::cmp::Reverse(n.element_order(x)), x));
    if let Some(a) = anchor {
        pts.insert(0, a);
    }
    pts
}

struct Dfs<'a> {
    hol: &'a HolGroup,
    order: &'a [Elem],
    asg: Vec<AutIdx>,
    points: Vec<Elem>,
    gens: Vec<HolElem>,
    nodes: u64,
    shared_nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    deadline: Option<Instant>,
}

impl<'a> Dfs<'a> {
    fn new(hol: &'a HolGroup, order: &'a [Elem], shared: &'a AtomicU64, abort: &'a AtomicBool, deadline: Option<Instant>) -> Self {
        let n = hol.base().order();
        let mut asg = vec![UNSET; n];
        asg[hol.base().identity() as usize] = 0;
        Dfs {
            hol,
            order,
            asg,
            points: vec![hol.base().identity()],
            gens: Vec::new(),
            nodes: 0,
            shared_nodes: shared,
            abort,
            deadline,
        }
    }

    /// Adds `g` and closes. On success returns how many points were added;
    /// on conflict restores the previous state and returns `None`.
    fn push(&mut self, g: HolElem) -> Option<usize> {
        let start = self.points.len();
        self.gens.push(g);
        let n = self.asg.len();
        let ok = 'close: {
            if self.asg[g.0 as usize] != UNSET {
                break 'close self.asg[g.0 as usize] == g.1;
            }
            self.asg[g.0 as usize] = g.1;
            self.points.push(g.0);
            // old points only need the new generator; new ones need all
            let mut i = 0;
            while i < self.points.len() {
                let x = self.points[i];
                let xe = (x, self.asg[x as usize]);
                let from = if i < start { self.gens.len() - 1 } else { 0 };
                for k in from..self.gens.len() {
                    let y = self.hol.mul(xe, self.gens[k]);
                    match self.asg[y.0 as usize] {
                        UNSET => {
                            self.asg[y.0 as usize] = y.1;
                            self.points.push(y.0);
                        }
                        v if v != y.1 => break 'close false,
                        _ => {}
                    }
                }
                i += 1;
            }
            n % self.points.len() == 0
        };
        if ok {
            Some(self.points.len() - start)
        } else {
            self.pop_to(start);
            None
        }
    }

    fn pop_to(&mut self, len: usize) {
        for &x in &self.points[len..] {
            self.asg[x as usize] = UNSET;
        }
        self.points.truncate(len);
        self.gens.pop();
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            self.shared_nodes.fetch_add(4096, Ordering::Relaxed);
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.abort.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn run<F: FnMut(&[AutIdx])>(&mut self, cursor: usize, found: &mut F) {
        if !self.tick() {
            return;
        }
        if self.points.len() == self.asg.len() {
            found(&self.asg);
            return;
        }
        let mut c = cursor;
        while self.asg[self.order[c] as usize] != UNSET {
            c += 1;
        }
        let x = self.order[c];
        for f in self.hol.aut().elements() {
            let mark = self.points.len();
            if self.push((x, f)).is_some() {
                self.run(c + 1, found);
                self.pop_to(mark);
            }
        }
    }
}

/// Depth-first enumeration of all regular subgroups of `hol`, always
/// extending at the first unassigned point so that every subgroup is
/// produced exactly once. `visit` runs on each complete subgroup and its
/// results are collected in a deterministic order.
pub fn search_regular_subgroups<T, F>(hol: &HolGroup, opts: &SearchOptions, visit: F) -> Result<(Vec<T>, SearchStats)>
where
    T: Send,
    F: Fn(&[AutIdx]) -> Option<T> + Sync,
{
    let base = hol.base();
    let order = match &opts.point_order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            let expected: Vec<Elem> = base.elements().filter(|&x| x != base.identity()).collect();
            if sorted != expected {
                return Err(Error::Internal("point order is not a permutation of the non-identity points".into()));
            }
            o.clone()
        }
        None => default_point_order(base, None),
    };
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    if base.order() == 1 {
        let out = visit(&[0]).into_iter().collect();
        return Ok((out, SearchStats { nodes: 1, found: 1 }));
    }
    let first = order[0];
    let branches: Vec<(Vec<T>, u64, u64)> = hol
        .aut()
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|f| {
            let mut dfs = Dfs::new(hol, &order, &nodes, &abort, opts.deadline);
            let mut out = Vec::new();
            let mut found = 0u64;
            if opts.deadline.is_some_and(|d| Instant::now() >= d) {
                abort.store(true, Ordering::Relaxed);
            }
            if !abort.load(Ordering::Relaxed) && dfs.push((first, f)).is_some() {
                dfs.run(1, &mut |v: &[AutIdx]| {
                    found += 1;
                    if let Some(t) = visit(v) {
                        out.push(t);
                    }
                });
            }
            (out, dfs.nodes, found)
        })
        .collect();
    let mut stats = SearchStats::default();
    let mut out = Vec::new();
    for (v, n, f) in branches {
        stats.nodes += n;
        stats.found += f;
        out.extend(v);
    }
    if abort.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            nodes: stats.nodes,
            found: stats.found,
        });
    }
    Ok((out, stats))
}

/// Every regular subgroup of `hol`, sorted.
pub fn all_regular_subgroups(hol: &HolGroup, opts: &SearchOptions) -> Result<Vec<RegularSubgroup>> {
    let (mut v, _) = search_regular_subgroups(hol, opts, |f| Some(RegularSubgroup { f: f.to_vec() }))?;
    v.sort();
    Ok(v)
}

/// One regular subgroup per `Aut(N)`-conjugacy class (the lexicographically
/// smallest member), sorted.
pub fn regular_subgroup_representatives(hol: &HolGroup, opts: &SearchOptions) -> Result<(Vec<RegularSubgroup>, SearchStats)> {
    let (mut v, stats) = search_regular_subgroups(hol, opts, |f| {
        let h = RegularSubgroup { f: f.to_vec() };
        h.is_class_minimal(hol).then_some(h)
    })?;
    v.sort();
    Ok((v, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::morphisms::automorphism_group;
    use std::collections::HashSet;

    fn hol(g: FiniteGroup) -> HolGroup {
        let aut = automorphism_group(&g).unwrap();
        HolGroup::new(g, aut).unwrap()
    }

    #[test]
    fn holomorph_orders() {
        assert_eq!(hol(cyclic(12)).order(), 48);
        assert_eq!(hol(alternating4()).order(), 288);
        assert_eq!(hol(cyclic(2)).order(), 2);
    }

    #[test]
    fn translations_are_regular() {
        let h = hol(dihedral(6));
        h.translations().check_closed(&h).unwrap();
    }

    #[test]
    fn inverse_and_associativity_on_samples() {
        let h = hol(alternating4());
        let els: Vec<HolElem> = (0..12).flat_map(|a| (0..24).map(move |f| (a, f))).step_by(7).collect();
        for &x in &els {
            assert_eq!(h.mul(x, h.inv(x)), h.identity());
            for &y in &els {
                for &z in els.iter().step_by(5) {
                    assert_eq!(h.mul(h.mul(x, y), z), h.mul(x, h.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn every_subgroup_found_once_and_closed() {
        for g in small_groups(12).unwrap() {
            let h = hol(g);
            let all = all_regular_subgroups(&h, &SearchOptions::default()).unwrap();
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for r in &all {
                r.check_closed(&h).unwrap();
            }
            // point order must not matter
            let mut rev: Vec<Elem> = default_point_order(h.base(), None);
            rev.reverse();
            let other = all_regular_subgroups(
                &h,
                &SearchOptions {
                    point_order: Some(rev),
                    deadline: None,
                },
            )
            .unwrap();
            assert_eq!(all, other);
        }
    }

    #[test]
    fn minimal_members_match_explicit_orbits() {
        for g in small_groups(12).unwrap() {
            let h = hol(g);
            let all = all_regular_subgroups(&h, &SearchOptions::default()).unwrap();
            let mut mins: Vec<RegularSubgroup> = all.iter().map(|r| r.class_minimum(&h)).collect();
            mins.sort();
            mins.dedup();
            let (reps, _) = regular_subgroup_representatives(&h, &SearchOptions::default()).unwrap();
            assert_eq!(reps, mins);
            // orbit-stabilizer over the classes recovers the full list
            let total: usize = reps.iter().map(|r| h.aut().order() / r.normalizing_automorphisms(&h).len()).sum();
            assert_eq!(total, all.len());
        }
    }

    #[test]
    fn rejects_non_regular_sets() {
        let h = hol(cyclic(4));
        assert!(RegularSubgroup::from_elements(&h, &[(0, 0), (1, 0), (2, 0)]).is_err());
        assert!(RegularSubgroup::from_elements(&h, &[(0, 0), (0, 1), (2, 0), (3, 0)]).is_err());
        // {(a, f_a)} with f_1 the inversion map is not closed
        assert!(RegularSubgroup::from_elements(&h, &[(0, 0), (1, 1), (2, 0), (3, 0)]).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let h = hol(dihedral(6));
        let opts = SearchOptions {
            point_order: None,
            deadline: Some(Instant::now()),
        };
        // a deadline in the past aborts at the first check or finishes;
        // either way a complete result is never wrong
        match all_regular_subgroups(&h, &opts) {
            Ok(v) => assert!(!v.is_empty()),
            Err(e) => assert!(matches!(e, Error::BudgetExceeded { .. })),
        }
    }
}
