//! Skew braces, their correspondence with regular subgroups of the
//! holomorph, and per-brace data used by the counting pipeline.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{are_isomorphic, Elem, FiniteGroup};
use crate::holomorph::{regular_subgroup_representatives, HolGroup, RegularSubgroup, SearchOptions};
use crate::morphisms::{automorphism_group, AutIdx, CharacterSpace};

/// Largest additive group for the unrestricted class search.
pub const FULL_SEARCH_LIMIT: usize = 30;

/// A set with two group laws on the same indices `0..n`, identity 0 in both.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    add: FiniteGroup,
    circ: Vec<Elem>,
    lambda: Vec<Vec<Elem>>,
}

/// The first thing that goes wrong when checking the brace axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BraceViolation {
    /// `a∘(b·c) != (a∘b)·a⁻¹·(a∘c)`
    Relation { a: Elem, b: Elem, c: Elem },
    NotAGroup(String),
}

impl SkewBrace {
    /// Builds a brace from an additive group and a `∘`-table without
    /// checking anything; see [`verify_brace`].
    pub fn from_tables_unchecked(add: FiniteGroup, circ: Vec<Elem>) -> Self {
        let n = add.order();
        let lambda = (0..n)
            .map(|a| {
                let ai = add.inv(a as Elem);
                (0..n).map(|b| add.mul(ai, circ[a * n + b])).collect()
            })
            .collect();
        SkewBrace { add, circ, lambda }
    }

    pub fn new(add: FiniteGroup, circ: Vec<Elem>) -> Result<Self> {
        if circ.len() != add.order() * add.order() || circ.iter().any(|&x| x as usize >= add.order()) {
            return Err(Error::InconsistentPresentation("circle table has the wrong shape".into()));
        }
        let b = SkewBrace::from_tables_unchecked(add, circ);
        match verify_brace(&b) {
            Ok(()) => Ok(b),
            Err(v) => Err(Error::Internal(format!("not a skew brace: {v:?}"))),
        }
    }

    /// The trivial brace `a∘b = a·b`.
    pub fn trivial(g: &FiniteGroup) -> Self {
        SkewBrace::from_tables_unchecked(g.clone(), g.table().to_vec())
    }

    pub fn size(&self) -> usize {
        self.add.order()
    }

    pub fn add(&self) -> &FiniteGroup {
        &self.add
    }

    #[inline]
    pub fn circ(&self, a: Elem, b: Elem) -> Elem {
        self.circ[a as usize * self.size() + b as usize]
    }

    pub fn circ_table(&self) -> &[Elem] {
        &self.circ
    }

    /// `λ_a(b) = a⁻¹·(a∘b)`.
    pub fn lambda(&self, a: Elem) -> &[Elem] {
        &self.lambda[a as usize]
    }

    /// `(B, ∘)` as a group.
    pub fn mul_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_table(format!("({},o)", self.add.name()), self.size(), self.circ.clone())
    }

    /// Inverse for `∘`.
    pub fn circ_inv(&self, a: Elem) -> Elem {
        (0..self.size() as Elem).find(|&b| self.circ(a, b) == 0).expect("circle inverse")
    }

    /// The regular subgroup `{(a, λ_a)}` of `Hol(B, ·)`.
    pub fn regular_subgroup(&self, hol: &HolGroup) -> Result<RegularSubgroup> {
        let f = self
            .lambda
            .iter()
            .map(|l| {
                hol.aut()
                    .index_of(l)
                    .ok_or_else(|| Error::NotRegular("λ-map is not an automorphism".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = RegularSubgroup { f };
        g.check_closed(hol)?;
        Ok(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.circ == self.add.table()
    }

    /// JSON dump with both tables, the λ-maps and optional labels.
    pub fn to_json(&self, add_label: &str, mul_label: &str) -> serde_json::Value {
        let n = self.size();
        let rows = |t: &[Elem]| -> Vec<Vec<Elem>> { t.chunks(n).map(|r| r.to_vec()).collect() };
        serde_json::json!({
            "size": n,
            "add_label": add_label,
            "mul_label": mul_label,
            "add": rows(self.add.table()),
            "mul": rows(&self.circ),
            "lambda": self.lambda,
        })
    }
}

/// Checks both group laws and every instance of the brace relation.
pub fn verify_brace(b: &SkewBrace) -> std::result::Result<(), BraceViolation> {
    let n = b.size();
    let add = b.add();
    for a in 0..n as Elem {
        let ai = add.inv(a);
        for x in 0..n as Elem {
            let ax = b.circ(a, x);
            for y in 0..n as Elem {
                let lhs = b.circ(a, add.mul(x, y));
                let rhs = add.mul(add.mul(ax, ai), b.circ(a, y));
                if lhs != rhs {
                    return Err(BraceViolation::Relation { a, b: x, c: y });
                }
            }
        }
    }
    add.verify_axioms().map_err(|e| BraceViolation::NotAGroup(format!("additive: {e}")))?;
    let mul = FiniteGroup::from_table("mul", n, b.circ_table().to_vec())
        .map_err(|e| BraceViolation::NotAGroup(format!("multiplicative: {e}")))?;
    if mul.identity() != add.identity() {
        return Err(BraceViolation::NotAGroup("identities differ".into()));
    }
    mul.verify_axioms().map_err(|e| BraceViolation::NotAGroup(format!("multiplicative: {e}")))?;
    Ok(())
}

/// `a∘b = a·f_a(b)` for the element `(a, f_a)` of `G` above `a`.
pub fn brace_from_regular(hol: &HolGroup, g: &RegularSubgroup) -> Result<SkewBrace> {
    g.check_closed(hol)?;
    Ok(SkewBrace::from_tables_unchecked(hol.base().clone(), g.circ_table(hol)))
}

/// `{g ∈ Aut(E) : Φ_g(F) = F}`.
pub fn brace_automorphisms(hol: &HolGroup, f: &RegularSubgroup) -> Vec<AutIdx> {
    f.normalizing_automorphisms(hol)
}

/// Characters `σ` of `(E, ·)` with `σ ∘ λ_a = σ` for every `a`, i.e.
/// `π₂(F) ⊆ Σ_σ`. Returned as indices into `space`. The result is checked
/// against the equivalent description "σ is also a `∘`-homomorphism".
pub fn brace_characters(hol: &HolGroup, f: &RegularSubgroup, space: &CharacterSpace) -> Result<Vec<usize>> {
    let aut = hol.aut();
    let mut maps: Vec<AutIdx> = f.f.clone();
    maps.sort_unstable();
    maps.dedup();
    let by_stabilizer: Vec<usize> = (0..space.len())
        .filter(|&i| {
            let s = &space.characters[i];
            maps.iter().all(|&l| s.precompose(aut.perm(l)) == *s)
        })
        .collect();
    let n = hol.base().order();
    let circ = f.circ_table(hol);
    let by_circ: Vec<usize> = (0..space.len())
        .filter(|&i| {
            let s = &space.characters[i];
            (0..n).all(|a| {
                (0..n).all(|b| s.value(circ[a * n + b]) == (s.value(a as Elem) + s.value(b as Elem)) % s.modulus)
            })
        })
        .collect();
    if by_stabilizer != by_circ {
        return Err(Error::Internal("the two descriptions of brace characters disagree".into()));
    }
    Ok(by_stabilizer)
}

/// Fingerprint used to shortcut isomorphism tests.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    order: usize,
    abelian: bool,
    census: Vec<(u32, usize)>,
    center: usize,
    derived: usize,
}

pub fn fingerprint(g: &FiniteGroup) -> GroupFingerprint {
    GroupFingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        census: g.order_census().into_iter().collect(),
        center: g.center().order(),
        derived: g.derived_subgroup().order(),
    }
}

/// Pairwise non-isomorphic groups of one order, with a labelling cache.
#[derive(Debug)]
pub struct GroupCatalog {
    pub order: usize,
    pub groups: Vec<FiniteGroup>,
    prints: Vec<GroupFingerprint>,
    cache: Mutex<HashMap<Vec<Elem>, usize>>,
}

impl Clone for GroupCatalog {
    fn clone(&self) -> Self {
        GroupCatalog::new(self.groups.clone()).expect("already validated")
    }
}

impl GroupCatalog {
    /// Fails if two members are isomorphic or orders differ.
    pub fn new(groups: Vec<FiniteGroup>) -> Result<Self> {
        let order = groups.first().map_or(0, |g| g.order());
        if groups.iter().any(|g| g.order() != order) {
            return Err(Error::Internal("catalog mixes orders".into()));
        }
        let prints: Vec<GroupFingerprint> = groups.iter().map(fingerprint).collect();
        for i in 0..groups.len() {
            for j in 0..i {
                if prints[i] == prints[j] && are_isomorphic(&groups[i], &groups[j]).is_some() {
                    return Err(Error::Internal(format!(
                        "catalog members {} and {} are isomorphic",
                        groups[j].name(),
                        groups[i].name()
                    )));
                }
            }
        }
        Ok(GroupCatalog {
            order,
            groups,
            prints,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Index of the member isomorphic to `g`.
    pub fn label(&self, g: &FiniteGroup) -> Result<usize> {
        if let Some(&i) = self.cache.lock().expect("cache").get(g.table()) {
            return Ok(i);
        }
        let fp = fingerprint(g);
        let candidates: Vec<usize> = (0..self.groups.len()).filter(|&i| self.prints[i] == fp).collect();
        let found = if candidates.len() == 1 {
            Some(candidates[0])
        } else {
            candidates.into_iter().find(|&i| are_isomorphic(g, &self.groups[i]).is_some())
        };
        let i = found.ok_or(Error::NotInCatalog(self.order))?;
        self.cache.lock().expect("cache").insert(g.table().to_vec(), i);
        Ok(i)
    }

    pub fn names(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.name().to_string()).collect()
    }
}

/// One conjugacy class of regular subgroups, i.e. one brace.
#[derive(Clone, Debug)]
pub struct RegularClass {
    pub rep: RegularSubgroup,
    /// Catalog index of the multiplicative group.
    pub label: usize,
}

/// Conjugacy classes of regular subgroups of `hol`, labelled by the
/// isomorphism type of the subgroup.
pub fn regular_subgroup_classes_in(hol: &HolGroup, catalog: &GroupCatalog, opts: &SearchOptions) -> Result<Vec<RegularClass>> {
    let (reps, _) = regular_subgroup_representatives(hol, opts)?;
    reps.into_iter()
        .map(|rep| {
            let mul = FiniteGroup::from_table("G", hol.base().order(), rep.circ_table(hol))?;
            Ok(RegularClass {
                label: catalog.label(&mul)?,
                rep,
            })
        })
        .collect()
}

/// Conjugacy classes of regular subgroups of `Hol(N)` for `|N| ≤ 30`.
pub fn regular_subgroup_classes(n: &FiniteGroup, catalog: &GroupCatalog) -> Result<(HolGroup, Vec<RegularClass>)> {
    if n.order() > FULL_SEARCH_LIMIT {
        return Err(Error::SizeLimit {
            what: "full regular-subgroup search",
            order: n.order(),
            limit: FULL_SEARCH_LIMIT,
        });
    }
    let hol = HolGroup::new(n.clone(), automorphism_group(n)?)?;
    let classes = regular_subgroup_classes_in(&hol, catalog, &SearchOptions::default())?;
    Ok((hol, classes))
}

/// Canonical identity of a brace: the two catalog labels and the smallest
/// `∘`-table over relabelings by `Aut(B, ·)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraceKey {
    pub add_label: usize,
    pub mul_label: usize,
    pub table: Vec<Elem>,
}

pub fn brace_key(b: &SkewBrace, hol: &HolGroup, add_label: usize, mul_label: usize) -> BraceKey {
    let n = b.size();
    let aut = hol.aut();
    let table = aut
        .elements()
        .map(|phi| {
            let mut t = vec![0; n * n];
            for x in 0..n as Elem {
                for y in 0..n as Elem {
                    t[aut.apply(phi, x) as usize * n + aut.apply(phi, y) as usize] = aut.apply(phi, b.circ(x, y));
                }
            }
            t
        })
        .min()
        .expect("identity automorphism");
    BraceKey {
        add_label,
        mul_label,
        table,
    }
}

/// A brace of the size-`n` catalog together with the data the counting
/// pipeline needs.
#[derive(Clone, Debug)]
pub struct CatalogBrace {
    pub add_label: usize,
    pub mul_label: usize,
    pub hol: std::sync::Arc<HolGroup>,
    pub f: RegularSubgroup,
    pub brace: SkewBrace,
}

/// Every brace of size `n` whose additive group lies in `catalog`, ordered
/// by (additive label, multiplicative label, representative).
pub fn brace_catalog(catalog: &GroupCatalog) -> Result<Vec<CatalogBrace>> {
    let mut out = Vec::new();
    for (i, e) in catalog.groups.iter().enumerate() {
        let (hol, classes) = regular_subgroup_classes(e, catalog)?;
        let hol = std::sync::Arc::new(hol);
        let mut classes = classes;
        classes.sort_by(|a, b| (a.label, &a.rep).cmp(&(b.label, &b.rep)));
        for c in classes {
            let brace = brace_from_regular(&hol, &c.rep)?;
            out.push(CatalogBrace {
                add_label: i,
                mul_label: c.label,
                hol: hol.clone(),
                f: c.rep,
                brace,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::morphisms::homs_to_cyclic;

    fn catalog12() -> GroupCatalog {
        GroupCatalog::new(small_groups(12).unwrap()).unwrap()
    }

    #[test]
    fn size_twelve_table() {
        let cat = catalog12();
        let mut table = [[0usize; 5]; 5];
        for b in brace_catalog(&cat).unwrap() {
            table[b.add_label][b.mul_label] += 1;
        }
        let expected = [
            [1, 1, 0, 2, 1],
            [1, 1, 1, 1, 1],
            [0, 2, 4, 0, 2],
            [2, 2, 0, 4, 2],
            [2, 2, 0, 4, 2],
        ];
        assert_eq!(table, expected);
    }

    #[test]
    fn trivial_brace_checks() {
        for g in small_groups(12).unwrap() {
            let b = SkewBrace::trivial(&g);
            assert_eq!(verify_brace(&b), Ok(()));
            assert!(b.lambda.iter().all(|l| l.iter().enumerate().all(|(i, &x)| x as usize == i)));
        }
    }

    #[test]
    fn perturbed_table_is_caught() {
        let g = dihedral(6);
        let mut t = g.table().to_vec();
        let n = g.order();
        // swap two entries in row 3
        t.swap(3 * n + 4, 3 * n + 5);
        let b = SkewBrace::from_tables_unchecked(g, t);
        assert!(verify_brace(&b).is_err());
    }

    #[test]
    fn translations_give_trivial_brace() {
        let g = alternating4();
        let hol = HolGroup::new(g.clone(), automorphism_group(&g).unwrap()).unwrap();
        let b = brace_from_regular(&hol, &hol.translations()).unwrap();
        assert!(b.is_trivial());
    }

    fn hol_c12() -> (FiniteGroup, HolGroup) {
        let c = cyclic(12);
        let hol = HolGroup::new(c.clone(), automorphism_group(&c).unwrap()).unwrap();
        (c, hol)
    }

    fn power_aut(hol: &HolGroup, k: i64) -> AutIdx {
        let g = hol.base();
        let perm: Vec<Elem> = g.elements().map(|x| g.pow(x, k)).collect();
        hol.aut().index_of(&perm).unwrap()
    }

    fn generated(hol: &HolGroup, gens: &[(Elem, AutIdx)]) -> RegularSubgroup {
        let mut els = vec![hol.identity()];
        let mut i = 0;
        while i < els.len() {
            for &g in gens {
                let y = hol.mul(els[i], g);
                if !els.contains(&y) {
                    els.push(y);
                }
            }
            i += 1;
        }
        RegularSubgroup::from_elements(hol, &els).unwrap()
    }

    #[test]
    fn c12_dicyclic_realization() {
        let (c, hol) = hol_c12();
        let g5 = power_aut(&hol, 5);
        let c4 = c.pow(1, 4);
        let c3 = c.pow(1, 3);
        let h = generated(&hol, &[(c4, 0), (c3, g5)]);
        let b = brace_from_regular(&hol, &h).unwrap();
        assert_eq!(verify_brace(&b), Ok(()));
        assert!(are_isomorphic(&b.mul_group().unwrap(), &dicyclic12()).is_some());
    }

    #[test]
    fn c12_c6xc2_realization() {
        let (c, hol) = hol_c12();
        let g7 = power_aut(&hol, 7);
        let h = generated(&hol, &[(1, g7), (c.pow(1, 6), 0)]);
        let b = brace_from_regular(&hol, &h).unwrap();
        assert!(are_isomorphic(&b.mul_group().unwrap(), &direct_product_of_cyclics(&[6, 2])).is_some());
    }

    #[test]
    fn c12_translations_normal() {
        let (_, hol) = hol_c12();
        assert_eq!(brace_automorphisms(&hol, &hol.translations()).len(), 4);
        let space = homs_to_cyclic(hol.base(), 12);
        assert_eq!(brace_characters(&hol, &hol.translations(), &space).unwrap().len(), 12);
    }

    #[test]
    fn dic12_brace_automorphisms() {
        // E = Dic12, F = <(y, g2 g1)> with g1: x->x^2, y->y^3 and g2: x->x, y->xy^3
        let e = dicyclic12();
        let hol = HolGroup::new(e.clone(), automorphism_group(&e).unwrap()).unwrap();
        let x = e.hint("x").unwrap();
        let y = e.hint("y").unwrap();
        let aut_from_images = |ix: Elem, iy: Elem| -> AutIdx {
            let map = extend_to_hom(&e, &[x, y], &e, &[ix, iy]).unwrap();
            hol.aut().index_of(&map).unwrap()
        };
        let y3 = e.pow(y, 3);
        let g1 = aut_from_images(e.mul(x, x), y3);
        let g2 = aut_from_images(x, e.mul(x, y3));
        assert_eq!(hol.aut().structure().unwrap().element_order(g2), 6);
        let g2g1 = hol.aut().compose(g2, g1);
        let f = generated(&hol, &[(y, g2g1)]);
        let autb = brace_automorphisms(&hol, &f);
        let g2cubed = hol.aut().compose(g2, hol.aut().compose(g2, g2));
        let mut expected = hol.aut().close(&[g2cubed, g2g1]);
        expected.sort();
        assert_eq!(autb, expected);
        assert_eq!(autb.len(), 4);
    }

    #[test]
    fn c6xc2_characters_for_cyclic_realization() {
        let e = direct_product_of_cyclics(&[6, 2]);
        let cat = catalog12();
        let (hol, classes) = regular_subgroup_classes(&e, &cat).unwrap();
        let cls = classes.iter().find(|c| c.label == 0).unwrap();
        let space = homs_to_cyclic(&e, 6);
        let chars = brace_characters(&hol, &cls.rep, &space).unwrap();
        // a class of the cyclic realization: characters killing some
        // involution; six of the twelve characters survive
        assert_eq!(chars.len(), 6);
    }

    #[test]
    fn lambda_is_a_homomorphism_of_circle() {
        let cat = catalog12();
        for cb in brace_catalog(&cat).unwrap() {
            let b = &cb.brace;
            let aut = cb.hol.aut();
            for a in 0..12 {
                for c in 0..12 {
                    let lhs = cb.f.f[b.circ(a, c) as usize];
                    let rhs = aut.compose(cb.f.f[a as usize], cb.f.f[c as usize]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
