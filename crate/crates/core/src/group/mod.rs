//! Small finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..order`. Every constructor in this module
//! places the identity at index 0. Tables are materialized up to
//! [`MATERIALIZE_LIMIT`] elements; larger structures such as holomorphs are
//! handled through pair arithmetic elsewhere and never tabulated.

mod iso;
mod presets;

pub use iso::{are_isomorphic, extend_to_hom, isomorphisms, small_generating_set};
pub use presets::{
    alternating4, cyclic, cyclic_named, dicyclic12, dicyclic_q8, dihedral, direct_product_of_cyclics,
    make_group, small_groups, symmetric3, symmetric4, GroupSpec,
};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Element index.
pub type Elem = u32;

pub const MATERIALIZE_LIMIT: usize = 2048;

/// Finite group stored as a Cayley table, `table[a * order + b] = a * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    generator_hints: Vec<(String, Elem)>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table and validates the
    /// identity and inverse invariants. Associativity is checked for tables
    /// of order at most 256; call [`FiniteGroup::verify_axioms`] for larger
    /// ones.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InconsistentPresentation("empty group".into()));
        }
        if order > MATERIALIZE_LIMIT {
            return Err(Error::SizeLimit {
                what: "materialized Cayley table",
                order,
                limit: MATERIALIZE_LIMIT,
            });
        }
        if table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InconsistentPresentation("table has the wrong shape".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::InconsistentPresentation("no identity".into()))? as Elem;
        let mut inverses = vec![0; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| table[x * order + y] == identity && table[y * order + x] == identity)
                .ok_or_else(|| Error::InconsistentPresentation(format!("element {x} has no inverse")))?;
            inverses[x] = inv as Elem;
        }
        let mut group = FiniteGroup {
            name: name.into(),
            order,
            table,
            identity,
            inverses,
            orders: Vec::new(),
            generator_hints: Vec::new(),
        };
        if order <= 256 {
            group.verify_axioms()?;
        }
        group.orders = (0..order as Elem).map(|x| group.compute_order(x)).collect();
        Ok(group)
    }

    /// Closes `gens` under `mul` and tabulates the result. The identity gets
    /// index 0 and generators follow in the order given.
    pub fn generated_by<T, F>(name: impl Into<String>, identity: T, gens: &[T], mul: F) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut cursor = 0;
        while cursor < elems.len() {
            for g in gens {
                let y = mul(&elems[cursor], g);
                if !index.contains_key(&y) {
                    if elems.len() >= MATERIALIZE_LIMIT {
                        return Err(Error::SizeLimit {
                            what: "materialized Cayley table",
                            order: elems.len() + 1,
                            limit: MATERIALIZE_LIMIT,
                        });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            cursor += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = mul(a, b);
                table[i * n + j] = *index
                    .get(&c)
                    .ok_or_else(|| Error::InconsistentPresentation("relations fail to close".into()))?
                    as Elem;
            }
        }
        let group = FiniteGroup::from_table(name, n, table)?;
        Ok((group, elems))
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table("C1", 1, vec![0]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn compute_order(&self, a: Elem) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    /// Multiset of element orders, as order -> count.
    pub fn order_census(&self) -> BTreeMap<u32, usize> {
        let mut census = BTreeMap::new();
        for &o in &self.orders {
            *census.entry(o).or_insert(0) += 1;
        }
        census
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as Elem).all(|a| (a..self.order as Elem).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.iter().any(|&o| o as usize == self.order)
    }

    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order as Elem)
            .filter(|&a| (0..self.order as Elem).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect();
        Subgroup::from_sorted(self.order, elements)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let mut commutators = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                commutators.push(c);
            }
        }
        commutators.sort_unstable();
        commutators.dedup();
        self.subgroup_generated(&commutators)
    }

    /// Exhaustive check of the group axioms over all elements and triples.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order as Elem;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InconsistentPresentation(format!("identity fails at {x}")));
            }
            if self.mul(x, self.inv(x)) != self.identity {
                return Err(Error::InconsistentPresentation(format!("inverse fails at {x}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InconsistentPresentation(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn generator_hints(&self) -> &[(String, Elem)] {
        &self.generator_hints
    }

    pub fn with_hints(mut self, hints: Vec<(String, Elem)>) -> Self {
        self.generator_hints = hints;
        self
    }

    pub fn hint(&self, name: &str) -> Option<Elem> {
        self.generator_hints.iter().find(|(n, _)| n == name).map(|&(_, e)| e)
    }

    /// Evaluates a word in the named generators, e.g. `r^2 s`, `x*y^-1`, `1`.
    pub fn word(&self, text: &str) -> Result<Elem> {
        let mut acc = self.identity;
        let cleaned = text.replace('*', " ");
        for token in cleaned.split_whitespace() {
            if token == "1" || token == "e" || token == "Id" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| Error::MalformedSpec(text.into()))?),
                None => (token, 1),
            };
            let g = self.hint(base).ok_or_else(|| Error::MalformedSpec(format!("unknown generator `{base}` in `{text}`")))?;
            acc = self.mul(acc, self.pow(g, exp));
        }
        Ok(acc)
    }

    pub fn check_index(&self, x: Elem) -> Result<()> {
        if (x as usize) < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x as usize,
                order: self.order,
            })
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut elems = vec![self.identity];
        let mut queue: VecDeque<Elem> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup::from_sorted(self.order, elems)
    }

    pub fn try_subgroup_generated(&self, gens: &[Elem]) -> Result<Subgroup> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(self.subgroup_generated(gens))
    }

    /// Tabulates a subgroup as a group in its own right. Element `i` of the
    /// result corresponds to `sub.elements()[i]`.
    pub fn subgroup_as_group(&self, sub: &Subgroup, name: impl Into<String>) -> FiniteGroup {
        let els = sub.elements();
        let pos: HashMap<Elem, Elem> = els.iter().enumerate().map(|(i, &e)| (e, i as Elem)).collect();
        let n = els.len();
        let mut table = vec![0; n * n];
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                table[i * n + j] = pos[&self.mul(a, b)];
            }
        }
        // identity may not be at index 0 after sorting; relabel so it is
        let mut g = FiniteGroup::from_table(name, n, table).expect("subgroup is a group");
        if g.identity != 0 {
            g = g.relabel_identity_first();
        }
        g
    }

    fn relabel_identity_first(&self) -> FiniteGroup {
        let e = self.identity;
        let perm: Vec<Elem> = (0..self.order as Elem)
            .map(|x| if x == 0 { e } else if x == e { 0 } else { x })
            .collect();
        self.relabel(&perm)
    }

    /// Returns the isomorphic group obtained by renaming element `x` to
    /// `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteGroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] as usize * n + perm[b] as usize] = perm[self.table[a * n + b] as usize];
            }
        }
        let hints = self
            .generator_hints
            .iter()
            .map(|(s, e)| (s.clone(), perm[*e as usize]))
            .collect();
        FiniteGroup::from_table(self.name.clone(), n, table)
            .expect("relabeling preserves the axioms")
            .with_hints(hints)
    }

    /// Direct product on pairs; element `(g, h)` has index `g + |G| * h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
        let action = vec![(0..g.order as Elem).collect::<Vec<_>>(); h.order];
        semidirect_product(g, h, &action)
    }

    /// Elements of order dividing `k`.
    pub fn torsion_count(&self, k: u64) -> usize {
        self.orders.iter().filter(|&&o| k % o as u64 == 0).count()
    }

    /// Quotient by a normal subgroup, with the projection map.
    pub fn quotient(&self, normal: &Subgroup, name: impl Into<String>) -> Result<(FiniteGroup, Vec<Elem>)> {
        let mut coset_of = vec![Elem::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            reps.push(x);
            for &h in normal.elements() {
                let y = self.mul(x, h);
                if coset_of[y as usize] != Elem::MAX && coset_of[y as usize] != c {
                    return Err(Error::Internal("cosets overlap".into()));
                }
                coset_of[y as usize] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        // coset products must not depend on representatives
        for a in self.elements() {
            for b in self.elements() {
                let expect = table[coset_of[a as usize] as usize * m + coset_of[b as usize] as usize];
                if coset_of[self.mul(a, b) as usize] != expect {
                    return Err(Error::InconsistentPresentation("subgroup is not normal".into()));
                }
            }
        }
        Ok((FiniteGroup::from_table(name, m, table)?, coset_of))
    }

    /// Invariant factors of the abelianization as elementary divisors
    /// (prime powers), sorted.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let derived = self.derived_subgroup();
        let (ab, _) = self.quotient(&derived, "ab").expect("derived subgroup is normal");
        ab.elementary_divisors()
    }

    /// Elementary divisors of an abelian group, from torsion counts.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n = self.order as u64;
        let mut q = 2;
        while n > 1 {
            if n % q == 0 {
                let mut top = 0;
                while n % q == 0 {
                    n /= q;
                    top += 1;
                }
                // s_j = log_q |A[q^j]|
                let mut prev = 0u32;
                let mut ranks = Vec::new();
                for j in 1..=top {
                    let count = self.torsion_count(q.pow(j)) as u64;
                    let s = (count as f64).log(q as f64).round() as u32;
                    ranks.push(s - prev);
                    prev = s;
                }
                // ranks[j-1] = number of cyclic factors of order >= q^j
                for j in 1..=top as usize {
                    let at_least = ranks[j - 1];
                    let more = if j < top as usize { ranks[j] } else { 0 };
                    for _ in 0..(at_least - more) {
                        out.push(q.pow(j as u32));
                    }
                }
            }
            q += 1;
        }
        out.sort_unstable();
        out
    }
}

/// Semidirect product `kernel ⋊ quotient` where `action[q]` is the
/// automorphism of the kernel (as a permutation of its indices) attached to
/// `q`. Pairs `(k, q)` get index `k + |K| * q`; the product is
/// `(k, q)(k', q') = (k * action[q](k'), q q')`.
pub fn semidirect_product(kernel: &FiniteGroup, quotient: &FiniteGroup, action: &[Vec<Elem>]) -> Result<FiniteGroup> {
    let nk = kernel.order();
    let nq = quotient.order();
    if action.len() != nq || action.iter().any(|p| p.len() != nk) {
        return Err(Error::NotAHomomorphism("action has the wrong shape".into()));
    }
    for (q, perm) in action.iter().enumerate() {
        let mut seen = vec![false; nk];
        for &x in perm {
            if x as usize >= nk || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::NotAHomomorphism(format!("action of {q} is not a bijection")));
            }
        }
        for a in kernel.elements() {
            for b in kernel.elements() {
                if perm[kernel.mul(a, b) as usize] != kernel.mul(perm[a as usize], perm[b as usize]) {
                    return Err(Error::NotAHomomorphism(format!("action of {q} is not an automorphism")));
                }
            }
        }
    }
    for q1 in quotient.elements() {
        for q2 in quotient.elements() {
            let composite = &action[quotient.mul(q1, q2) as usize];
            for k in kernel.elements() {
                if composite[k as usize] != action[q1 as usize][action[q2 as usize][k as usize] as usize] {
                    return Err(Error::NotAHomomorphism(format!("action fails at ({q1}, {q2})")));
                }
            }
        }
    }
    let n = nk * nq;
    if n > MATERIALIZE_LIMIT {
        return Err(Error::SizeLimit {
            what: "materialized Cayley table",
            order: n,
            limit: MATERIALIZE_LIMIT,
        });
    }
    let mut table = vec![0; n * n];
    for q1 in 0..nq {
        for k1 in 0..nk {
            let x = k1 + nk * q1;
            for q2 in 0..nq {
                let q = quotient.mul(q1 as Elem, q2 as Elem) as usize;
                for k2 in 0..nk {
                    let k = kernel.mul(k1 as Elem, action[q1][k2]) as usize;
                    table[x * n + k2 + nk * q2] = (k + nk * q) as Elem;
                }
            }
        }
    }
    let name = format!("{}:{}", kernel.name(), quotient.name());
    let mut hints: Vec<(String, Elem)> = kernel.generator_hints().to_vec();
    for (s, q) in quotient.generator_hints() {
        let label = if hints.iter().any(|(t, _)| t == s) { format!("{s}'") } else { s.clone() };
        hints.push((label, nk as Elem * q));
    }
    Ok(FiniteGroup::from_table(name, n, table)?.with_hints(hints))
}

/// Sorted set of elements of a parent group, closed under the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn from_sorted(parent_order: usize, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent_order, elements }
    }

    /// Validates closure in `parent` before wrapping.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        for &x in &elements {
            parent.check_index(x)?;
        }
        let sub = Subgroup::from_sorted(parent.order(), elements);
        if !sub.contains(parent.identity())
            || sub
                .elements
                .iter()
                .any(|&a| !sub.contains(parent.inv(a)) || sub.elements.iter().any(|&b| !sub.contains(parent.mul(a, b))))
        {
            return Err(Error::InconsistentPresentation("subset is not a subgroup".into()));
        }
        Ok(sub)
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// Map between two groups, stored as an index array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMorphism {
    pub map: Vec<Elem>,
}

impl GroupMorphism {
    pub fn new(map: Vec<Elem>) -> Self {
        GroupMorphism { map }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.map.len() == source.order()
            && self.map.iter().all(|&y| (y as usize) < target.order())
            && source.elements().all(|a| {
                source
                    .elements()
                    .all(|b| self.apply(source.mul(a, b)) == target.mul(self.apply(a), self.apply(b)))
            })
    }

    pub fn is_bijective(&self, target_order: usize) -> bool {
        if self.map.len() != target_order {
            return false;
        }
        let mut seen = vec![false; target_order];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_table_rejects_non_group() {
        // 2x2 table with no inverse for element 1
        let err = FiniteGroup::from_table("bad", 2, vec![0, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::InconsistentPresentation(_)));
    }

    #[test]
    fn subgroup_generated_by_nothing_is_trivial() {
        let g = alternating4();
        let s = g.subgroup_generated(&[]);
        assert_eq!(s.elements(), &[g.identity()]);
    }

    #[test]
    fn subgroup_generated_rejects_bad_index() {
        let g = cyclic(4);
        assert!(matches!(g.try_subgroup_generated(&[7]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn cyclic_rho_generates_order_three() {
        let g = alternating4();
        let rho = g.hint("rho").unwrap();
        assert_eq!(g.subgroup_generated(&[rho]).order(), 3);
    }

    #[test]
    fn quotient_by_center_of_d12() {
        let d = dihedral(6);
        let z = d.center();
        assert_eq!(z.order(), 2);
        let (q, _) = d.quotient(&z, "D12/Z").unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = symmetric3();
        let s = s3.hint("s").unwrap();
        let h = s3.subgroup_generated(&[s]);
        assert!(s3.quotient(&h, "x").is_err());
    }

    #[test]
    fn abelian_invariants_of_small_groups() {
        assert_eq!(cyclic(12).abelian_invariants(), vec![3, 4]);
        assert_eq!(direct_product_of_cyclics(&[6, 2]).abelian_invariants(), vec![2, 2, 3]);
        assert_eq!(alternating4().abelian_invariants(), vec![3]);
        assert_eq!(dihedral(6).abelian_invariants(), vec![2, 2]);
        assert_eq!(dicyclic12().abelian_invariants(), vec![4]);
    }

    #[test]
    fn word_evaluation() {
        let d = dihedral(6);
        let r = d.hint("r").unwrap();
        let s = d.hint("s").unwrap();
        assert_eq!(d.word("r^2 s").unwrap(), d.mul(d.mul(r, r), s));
        assert_eq!(d.word("s r s").unwrap(), d.pow(r, 5));
        assert_eq!(d.word("r^-1").unwrap(), d.pow(r, 5));
        assert!(d.word("q").is_err());
    }
}
