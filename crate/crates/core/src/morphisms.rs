//! Automorphism groups, characters into cyclic groups, and orbit/stabilizer
//! bookkeeping for group actions.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{self, cyclic, extend_to_hom, gcd, Elem, FiniteGroup, Subgroup, MATERIALIZE_LIMIT};

/// Largest group for which automorphisms are found by brute-force search.
pub const BRUTE_FORCE_AUT_LIMIT: usize = 200;

/// Index of an automorphism inside an [`AutomorphismGroup`].
pub type AutIdx = u32;

/// Automorphisms of a base group stored as permutations of its elements.
/// Index 0 is always the identity map.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    base_order: usize,
    perms: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, AutIdx>,
    /// `structure.mul(i, j)` is the index of `perms[i] ∘ perms[j]`.
    structure: Option<FiniteGroup>,
    inverses: Vec<AutIdx>,
}

impl AutomorphismGroup {
    /// Wraps a set of automorphisms, checking that it is a group under
    /// composition.
    pub fn from_perms(base: &FiniteGroup, mut perms: Vec<Vec<Elem>>) -> Result<Self> {
        for p in &perms {
            let m = group::GroupMorphism::new(p.clone());
            if !m.is_bijective(base.order()) || !m.is_homomorphism(base, base) {
                return Err(Error::NotAHomomorphism("automorphism list contains a non-automorphism".into()));
            }
        }
        perms.sort();
        perms.dedup();
        let identity: Vec<Elem> = base.elements().collect();
        if perms.first() != Some(&identity) {
            return Err(Error::AutNotClosed);
        }
        let index: HashMap<Vec<Elem>, AutIdx> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as AutIdx)).collect();
        let n = perms.len();
        let compose_index = |i: usize, j: usize| -> Result<AutIdx> {
            let c: Vec<Elem> = perms[j].iter().map(|&x| perms[i][x as usize]).collect();
            index.get(&c).copied().ok_or(Error::AutNotClosed)
        };
        let structure = if n <= MATERIALIZE_LIMIT {
            let mut table = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = compose_index(i, j)?;
                }
            }
            Some(FiniteGroup::from_table(format!("Aut({})", base.name()), n, table).map_err(|_| Error::AutNotClosed)?)
        } else {
            None
        };
        let mut aut = AutomorphismGroup {
            base_order: base.order(),
            perms,
            index,
            structure,
            inverses: Vec::new(),
        };
        aut.inverses = (0..n)
            .map(|i| {
                let mut inv = vec![0; aut.base_order];
                for (x, &y) in aut.perms[i].iter().enumerate() {
                    inv[y as usize] = x as Elem;
                }
                aut.index.get(&inv).copied().ok_or(Error::AutNotClosed)
            })
            .collect::<Result<_>>()?;
        if aut.structure.is_none() {
            // closure on generators is enough for a finite set containing them
            let gens = aut.generators();
            for i in 0..n {
                for &g in &gens {
                    aut.compose_slow(i as AutIdx, g).ok_or(Error::AutNotClosed)?;
                }
            }
        }
        Ok(aut)
    }

    /// Wraps automorphisms whose composition table is already known
    /// (`table[i * n + j]` is the index of `perms[i] ∘ perms[j]`). Index 0
    /// must be the identity map. Above [`MATERIALIZE_LIMIT`] pass `None`;
    /// composition then goes through the permutation index.
    pub fn with_composition(base: &FiniteGroup, perms: Vec<Vec<Elem>>, table: Option<Vec<AutIdx>>) -> Result<Self> {
        let n = perms.len();
        let identity: Vec<Elem> = base.elements().collect();
        if perms.first() != Some(&identity) {
            return Err(Error::AutNotClosed);
        }
        let index: HashMap<Vec<Elem>, AutIdx> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as AutIdx)).collect();
        if index.len() != n {
            return Err(Error::AutNotClosed);
        }
        let structure = match table {
            Some(t) if t.len() == n * n => Some(
                FiniteGroup::from_table(format!("Aut({})", base.name()), n, t).map_err(|_| Error::AutNotClosed)?,
            ),
            Some(_) => return Err(Error::AutNotClosed),
            None => None,
        };
        let mut aut = AutomorphismGroup {
            base_order: base.order(),
            perms,
            index,
            structure,
            inverses: Vec::new(),
        };
        aut.inverses = match &aut.structure {
            Some(s) => (0..n as AutIdx).map(|i| s.inv(i)).collect(),
            None => (0..n)
                .map(|i| {
                    let mut inv = vec![0; aut.base_order];
                    for (x, &y) in aut.perms[i].iter().enumerate() {
                        inv[y as usize] = x as Elem;
                    }
                    aut.index.get(&inv).copied().ok_or(Error::AutNotClosed)
                })
                .collect::<Result<_>>()?,
        };
        Ok(aut)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn perm(&self, i: AutIdx) -> &[Elem] {
        &self.perms[i as usize]
    }

    pub fn perms(&self) -> &[Vec<Elem>] {
        &self.perms
    }

    #[inline]
    pub fn apply(&self, i: AutIdx, x: Elem) -> Elem {
        self.perms[i as usize][x as usize]
    }

    pub fn index_of(&self, perm: &[Elem]) -> Option<AutIdx> {
        self.index.get(perm).copied()
    }

    fn compose_slow(&self, i: AutIdx, j: AutIdx) -> Option<AutIdx> {
        let c: Vec<Elem> = self.perms[j as usize].iter().map(|&x| self.apply(i, x)).collect();
        self.index_of(&c)
    }

    /// Index of `perm(i) ∘ perm(j)`.
    #[inline]
    pub fn compose(&self, i: AutIdx, j: AutIdx) -> AutIdx {
        match &self.structure {
            Some(s) => s.mul(i, j),
            None => self.compose_slow(i, j).expect("closed"),
        }
    }

    #[inline]
    pub fn inverse(&self, i: AutIdx) -> AutIdx {
        self.inverses[i as usize]
    }

    pub fn structure(&self) -> Option<&FiniteGroup> {
        self.structure.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = AutIdx> {
        0..self.perms.len() as AutIdx
    }

    /// Generators of the whole automorphism group.
    pub fn generators(&self) -> Vec<AutIdx> {
        self.generators_of(&(0..self.order() as AutIdx).collect::<Vec<_>>())
    }

    /// A generating set for a subgroup given by its element list.
    pub fn generators_of(&self, subgroup: &[AutIdx]) -> Vec<AutIdx> {
        let mut gens = Vec::new();
        let mut span = vec![0 as AutIdx];
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for &g in subgroup {
            if inside[g as usize] {
                continue;
            }
            gens.push(g);
            span = self.close(&gens);
            inside.iter_mut().for_each(|b| *b = false);
            for &x in &span {
                inside[x as usize] = true;
            }
        }
        let _ = span;
        gens
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn close(&self, gens: &[AutIdx]) -> Vec<AutIdx> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.compose(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Conjugate subgroup `t⁻¹ S t`, sorted.
    pub fn conjugate_subgroup(&self, s: &[AutIdx], t: AutIdx) -> Vec<AutIdx> {
        let ti = self.inverse(t);
        let mut out: Vec<AutIdx> = s.iter().map(|&x| self.compose(self.compose(ti, x), t)).collect();
        out.sort_unstable();
        out
    }

    /// The subgroup as a `Subgroup` of the structure table, when available.
    pub fn as_subgroup(&self, elems: &[AutIdx]) -> Option<Subgroup> {
        let s = self.structure.as_ref()?;
        Subgroup::new(s, elems.to_vec()).ok()
    }
}

/// Every automorphism of `g`, by backtracking over generator images.
pub fn automorphism_group(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    if g.order() > BRUTE_FORCE_AUT_LIMIT {
        return Err(Error::SizeLimit {
            what: "brute-force automorphism search",
            order: g.order(),
            limit: BRUTE_FORCE_AUT_LIMIT,
        });
    }
    let perms = group::isomorphisms(g, g).into_iter().map(|m| m.map).collect();
    AutomorphismGroup::from_perms(g, perms)
}

/// Homomorphism into the cyclic group of order `modulus`, stored as the
/// exponent of a fixed generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character {
    pub modulus: u32,
    pub exponents: Vec<u32>,
}

impl Character {
    pub fn trivial(order: usize, modulus: u32) -> Self {
        Character {
            modulus,
            exponents: vec![0; order],
        }
    }

    pub fn value(&self, x: Elem) -> u32 {
        self.exponents[x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Order of the image.
    pub fn order(&self) -> u32 {
        let g = self.exponents.iter().fold(self.modulus as u64, |acc, &e| gcd(acc, e as u64));
        (self.modulus as u64 / g) as u32
    }

    pub fn kernel(&self) -> Vec<Elem> {
        (0..self.exponents.len() as Elem).filter(|&x| self.value(x) == 0).collect()
    }

    pub fn kernel_size(&self) -> usize {
        self.exponents.iter().filter(|&&e| e == 0).count()
    }

    /// `self ∘ perm`.
    pub fn precompose(&self, perm: &[Elem]) -> Character {
        Character {
            modulus: self.modulus,
            exponents: perm.iter().map(|&x| self.exponents[x as usize]).collect(),
        }
    }

    /// Reads the character in a larger cyclic group `C_{modulus * k}`.
    pub fn lift(&self, new_modulus: u32) -> Character {
        assert_eq!(new_modulus % self.modulus, 0);
        let k = new_modulus / self.modulus;
        Character {
            modulus: new_modulus,
            exponents: self.exponents.iter().map(|&e| e * k).collect(),
        }
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        self.exponents.len() == g.order()
            && self.value(g.identity()) == 0
            && g.elements().all(|a| {
                g.elements()
                    .all(|b| self.value(g.mul(a, b)) == (self.value(a) + self.value(b)) % self.modulus)
            })
    }

    /// Values on the named generators of `g`, as `name=e/m` pieces.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        let parts: Vec<String> = g
            .generator_hints()
            .iter()
            .map(|(name, x)| format!("{name}->{}/{}", self.value(*x), self.modulus))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(",")
        }
    }
}

/// Every character `G -> C_m`.
#[derive(Clone, Debug)]
pub struct CharacterSpace {
    pub modulus: u32,
    pub characters: Vec<Character>,
    index: HashMap<Vec<u32>, usize>,
}

impl CharacterSpace {
    pub fn from_characters(modulus: u32, characters: Vec<Character>) -> Self {
        let index = characters
            .iter()
            .enumerate()
            .map(|(i, c)| (c.exponents.clone(), i))
            .collect();
        CharacterSpace {
            modulus,
            characters,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn position(&self, c: &Character) -> Option<usize> {
        if c.modulus != self.modulus {
            return None;
        }
        self.index.get(&c.exponents).copied()
    }

    pub fn trivial_index(&self) -> usize {
        self.characters.iter().position(|c| c.is_trivial()).expect("trivial character present")
    }
}

/// All homomorphisms `G -> C_m`, ordered lexicographically by the exponents
/// assigned to a fixed small generating set.
pub fn homs_to_cyclic(g: &FiniteGroup, m: u32) -> CharacterSpace {
    let target = cyclic(m as usize);
    let gens = group::small_generating_set(g);
    let options: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s) as u64;
            (0..m).filter(|&e| (e as u64 * o) % m as u64 == 0).collect()
        })
        .collect();
    let mut characters = Vec::new();
    let mut images = vec![0; gens.len()];
    enumerate_images(g, &gens, &target, &options, 0, &mut images, &mut characters, m);
    CharacterSpace::from_characters(m, characters)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_images(
    g: &FiniteGroup,
    gens: &[Elem],
    target: &FiniteGroup,
    options: &[Vec<Elem>],
    depth: usize,
    images: &mut Vec<Elem>,
    out: &mut Vec<Character>,
    m: u32,
) {
    if depth == gens.len() {
        if let Some(map) = extend_to_hom(g, gens, target, images) {
            out.push(Character {
                modulus: m,
                exponents: map,
            });
        }
        return;
    }
    for &e in &options[depth] {
        images[depth] = e;
        if extend_to_hom(g, &gens[..=depth], target, &images[..=depth]).is_some() {
            enumerate_images(g, gens, target, options, depth + 1, images, out, m);
        }
    }
}

/// `|Hom(G, C_m)|` from the abelianization: product of `gcd(q, m)` over its
/// elementary divisors.
pub fn hom_count_formula(g: &FiniteGroup, m: u32) -> u64 {
    g.abelian_invariants().iter().map(|&q| gcd(q, m as u64)).product()
}

/// Orbits of a right action of a finite group on points `0..n`.
#[derive(Clone, Debug)]
pub struct ActionOrbits {
    /// Each orbit sorted, orbits ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer of each orbit's smallest member, as sorted element lists
    /// of the acting group.
    pub stabilizers: Vec<Vec<AutIdx>>,
    pub acting_order: usize,
    orbit_of: Vec<usize>,
    /// `transversal[x] = t` with `rep · t = x`.
    transversal: Vec<AutIdx>,
}

impl ActionOrbits {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, point: usize) -> usize {
        self.orbit_of[point]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.orbits.iter().map(|o| o[0])
    }

    /// Stabilizer of an arbitrary point, obtained by conjugating the
    /// stored stabilizer of its orbit representative.
    pub fn stabilizer_of(&self, aut: &AutomorphismGroup, point: usize) -> Vec<AutIdx> {
        let o = self.orbit_of[point];
        aut.conjugate_subgroup(&self.stabilizers[o], self.transversal[point])
    }
}

/// Orbits and stabilizers of `acting` (a listed group) on the
/// points `0..n_points`, where `act(g, x)` is `x · g` and
/// `x · (g ∘ h) = (x · g) · h`. The orbit count is cross-checked against
/// Burnside's lemma.
pub fn orbits_and_stabilizers<F>(
    acting: &[AutIdx],
    n_points: usize,
    act: F,
) -> Result<ActionOrbits>
where
    F: Fn(AutIdx, usize) -> Option<usize>,
{
    let mut images = vec![0usize; acting.len() * n_points];
    for (gi, &g) in acting.iter().enumerate() {
        for x in 0..n_points {
            let y = act(g, x).filter(|&y| y < n_points).ok_or(Error::ActionNotClosed)?;
            images[gi * n_points + x] = y;
        }
    }
    let mut orbit_of = vec![usize::MAX; n_points];
    let mut transversal = vec![0; n_points];
    let mut orbits = Vec::new();
    let mut stabilizers = Vec::new();
    for rep in 0..n_points {
        if orbit_of[rep] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut stab = Vec::new();
        for (gi, &g) in acting.iter().enumerate() {
            let y = images[gi * n_points + rep];
            if orbit_of[y] == usize::MAX {
                orbit_of[y] = id;
                transversal[y] = g;
                orbit.push(y);
            } else if orbit_of[y] != id {
                return Err(Error::NotAHomomorphism("orbits overlap".into()));
            }
            if y == rep {
                stab.push(g);
            }
        }
        orbit.sort_unstable();
        if orbit.len() * stab.len() != acting.len() {
            return Err(Error::NotAHomomorphism(format!(
                "orbit-stabilizer fails: {} * {} != {}",
                orbit.len(),
                stab.len(),
                acting.len()
            )));
        }
        stab.sort_unstable();
        orbits.push(orbit);
        stabilizers.push(stab);
    }
    let fixed: usize = (0..acting.len())
        .map(|gi| (0..n_points).filter(|&x| images[gi * n_points + x] == x).count())
        .sum();
    if fixed % acting.len() != 0 || fixed / acting.len() != orbits.len() {
        return Err(Error::BurnsideMismatch {
            direct: orbits.len(),
            burnside: format!("{fixed}/{}", acting.len()),
        });
    }
    Ok(ActionOrbits {
        orbits,
        stabilizers,
        acting_order: acting.len(),
        orbit_of,
        transversal,
    })
}

/// Orbits of a subgroup of `Aut(G)` on a character space under
/// `σ ↦ σ ∘ g`.
pub fn character_orbits(aut: &AutomorphismGroup, acting: &[AutIdx], space: &CharacterSpace) -> Result<ActionOrbits> {
    orbits_and_stabilizers(acting, space.len(), |g, x| {
        space.position(&space.characters[x].precompose(aut.perm(g)))
    })
}

/// `Σ_σ`: automorphisms fixing `σ` under precomposition.
pub fn character_stabilizer(aut: &AutomorphismGroup, sigma: &Character) -> Vec<AutIdx> {
    aut.elements().filter(|&g| sigma.precompose(aut.perm(g)) == *sigma).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn hint_aut(g: &FiniteGroup, aut: &AutomorphismGroup, k: i64) -> AutIdx {
        // power map x -> x^k on a cyclic group
        let perm: Vec<Elem> = g.elements().map(|x| g.pow(x, k)).collect();
        aut.index_of(&perm).unwrap()
    }

    #[test]
    fn aut_orders() {
        assert_eq!(automorphism_group(&cyclic(12)).unwrap().order(), 4);
        assert_eq!(automorphism_group(&cyclic(2)).unwrap().order(), 1);
        assert_eq!(automorphism_group(&direct_product_of_cyclics(&[6, 2])).unwrap().order(), 12);
        assert_eq!(automorphism_group(&dihedral(6)).unwrap().order(), 12);
        assert_eq!(automorphism_group(&dicyclic12()).unwrap().order(), 12);
        let a4 = automorphism_group(&alternating4()).unwrap();
        assert_eq!(a4.order(), 24);
        assert!(are_isomorphic(a4.structure().unwrap(), &symmetric4()).is_some());
    }

    #[test]
    fn aut_c6xc2_is_d12() {
        let aut = automorphism_group(&direct_product_of_cyclics(&[6, 2])).unwrap();
        assert!(are_isomorphic(aut.structure().unwrap(), &dihedral(6)).is_some());
        let aut = automorphism_group(&dihedral(6)).unwrap();
        assert!(are_isomorphic(aut.structure().unwrap(), &dihedral(6)).is_some());
    }

    #[test]
    fn g5_g7_generate_aut_c12() {
        let c = cyclic(12);
        let aut = automorphism_group(&c).unwrap();
        let g5 = hint_aut(&c, &aut, 5);
        let g7 = hint_aut(&c, &aut, 7);
        let s = aut.as_subgroup(&aut.close(&[g5, g7])).unwrap();
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn aut_size_limit() {
        let g = cyclic(256);
        assert!(matches!(automorphism_group(&g), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn from_perms_rejects_non_closed_set() {
        let c = cyclic(5);
        let id: Vec<Elem> = c.elements().collect();
        let doubling: Vec<Elem> = c.elements().map(|x| c.pow(x, 2)).collect();
        assert_eq!(
            AutomorphismGroup::from_perms(&c, vec![id, doubling]).unwrap_err(),
            Error::AutNotClosed
        );
    }

    #[test]
    fn hom_counts() {
        let a4 = alternating4();
        let h = homs_to_cyclic(&a4, 3);
        assert_eq!(h.len(), 3);
        for c in h.characters.iter().filter(|c| !c.is_trivial()) {
            assert_eq!(c.kernel_size(), 4);
        }
        assert_eq!(homs_to_cyclic(&dihedral(6), 2).len(), 4);
        assert_eq!(homs_to_cyclic(&dicyclic12(), 1).len(), 1);
        for g in small_groups(12).unwrap() {
            for m in [1, 2, 3, 4, 6, 12] {
                let h = homs_to_cyclic(&g, m);
                assert_eq!(h.len() as u64, hom_count_formula(&g, m), "{} m={m}", g.name());
                assert!(h.characters.iter().all(|c| c.is_homomorphism(&g)));
            }
        }
    }

    #[test]
    fn c12_orbit_table() {
        let c = cyclic(12);
        let aut = automorphism_group(&c).unwrap();
        let h = homs_to_cyclic(&c, 12);
        let all: Vec<AutIdx> = aut.elements().collect();
        let orbits = character_orbits(&aut, &all, &h).unwrap();
        assert_eq!(orbits.count(), 6);
        let g5 = hint_aut(&c, &aut, 5);
        let g7 = hint_aut(&c, &aut, 7);
        let mut by_order: Vec<(u32, usize, Vec<AutIdx>)> = orbits
            .orbits
            .iter()
            .zip(&orbits.stabilizers)
            .map(|(o, s)| (h.characters[o[0]].order(), o.len(), s.clone()))
            .collect();
        by_order.sort();
        let sorted = |mut v: Vec<AutIdx>| {
            v.sort();
            v
        };
        assert_eq!(by_order[2], (3, 2, sorted(vec![0, g7])));
        assert_eq!(by_order[3], (4, 2, sorted(vec![0, g5])));
        assert_eq!(by_order[4], (6, 2, sorted(vec![0, g7])));
        assert_eq!(by_order[5], (12, 4, vec![0]));
    }

    #[test]
    fn a4_characters_form_one_orbit() {
        let a4 = alternating4();
        let aut = automorphism_group(&a4).unwrap();
        let h = homs_to_cyclic(&a4, 3);
        let all: Vec<AutIdx> = aut.elements().collect();
        let orbits = character_orbits(&aut, &all, &h).unwrap();
        assert_eq!(orbits.count(), 2);
        let nontrivial = orbits.orbits.iter().position(|o| o.len() == 2).unwrap();
        let stab = &orbits.stabilizers[nontrivial];
        assert_eq!(stab.len(), 12);
        let inner = aut.as_subgroup(stab).unwrap();
        let s = aut.structure().unwrap().subgroup_as_group(&inner, "stab");
        assert!(are_isomorphic(&s, &alternating4()).is_some());
    }

    #[test]
    fn conjugated_stabilizers_match_direct_computation() {
        for g in small_groups(12).unwrap() {
            let aut = automorphism_group(&g).unwrap();
            let all: Vec<AutIdx> = aut.elements().collect();
            let h = homs_to_cyclic(&g, 12);
            let orbits = character_orbits(&aut, &all, &h).unwrap();
            for (x, c) in h.characters.iter().enumerate() {
                assert_eq!(orbits.stabilizer_of(&aut, x), character_stabilizer(&aut, c));
            }
        }
    }

    #[test]
    fn singleton_space_has_full_stabilizer() {
        let g = dihedral(6);
        let aut = automorphism_group(&g).unwrap();
        let h = homs_to_cyclic(&g, 1);
        let all: Vec<AutIdx> = aut.elements().collect();
        let orbits = character_orbits(&aut, &all, &h).unwrap();
        assert_eq!(orbits.count(), 1);
        assert_eq!(orbits.stabilizers[0].len(), 12);
    }

    #[test]
    fn action_must_close() {
        let g = cyclic(3);
        let aut = automorphism_group(&g).unwrap();
        let all: Vec<AutIdx> = aut.elements().collect();
        let err = orbits_and_stabilizers(&all, 2, |_, x| Some(x + 1)).unwrap_err();
        assert_eq!(err, Error::ActionNotClosed);
    }
}
