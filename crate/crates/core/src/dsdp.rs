//! Double semidirect products of braces, automorphisms of `Z_p ⋊_σ E` in
//! closed form, and the pair of regular subgroups `G(σ,τ)`, `G(σ,τ)′`.
//!
//! Points of `N = Z_p ⋊_σ E` are pairs `(m, a)` stored at index `m + p·a`.
//! A character `σ` with values in `C_d` (d | p−1) acts on `Z_p` through the
//! unit `ζ^{σ(a)(p−1)/d}`, `ζ` the least primitive root mod `p`.

use std::collections::HashMap;

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::group::{cyclic_named, MATERIALIZE_LIMIT, semidirect_product, small_generating_set, Elem, FiniteGroup, GroupMorphism};
use crate::holomorph::{HolGroup, RegularSubgroup};
use crate::morphisms::{automorphism_group, character_stabilizer, AutIdx, AutomorphismGroup, Character};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    Ok((2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots"))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Characters into `Z_p^*` read as actual units mod `p`.
#[derive(Clone, Debug)]
pub struct UnitMap {
    p: u64,
    zeta: u64,
}

impl UnitMap {
    pub fn new(p: u64) -> Result<Self> {
        Ok(UnitMap { p, zeta: primitive_root(p)? })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn check(&self, c: &Character) -> Result<()> {
        if (self.p - 1) % c.modulus as u64 != 0 {
            return Err(Error::NotAHomomorphism(format!(
                "character values in C{} do not embed in Z{}^*",
                c.modulus, self.p
            )));
        }
        Ok(())
    }

    /// `c(x)` as a unit.
    pub fn unit(&self, c: &Character, x: Elem) -> u64 {
        let step = (self.p - 1) / c.modulus as u64;
        pow_mod(self.zeta, c.value(x) as u64 * step, self.p)
    }

    /// Exponent `e` with `ζ^e = u`.
    pub fn log(&self, u: u64) -> Option<u64> {
        let mut x = 1;
        for e in 0..self.p - 1 {
            if x == u % self.p {
                return Some(e);
            }
            x = x * self.zeta % self.p;
        }
        None
    }

    /// Reads a map `g -> Z_p^*` back as a character with values in `C_d`.
    pub fn character(&self, units: &[u64], d: u32) -> Option<Character> {
        let step = (self.p - 1) / d as u64;
        let exponents = units
            .iter()
            .map(|&u| {
                let e = self.log(u)?;
                (e % step == 0).then_some((e / step) as u32)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Character { modulus: d, exponents })
    }
}

/// `Z_p ⋊_σ E`, with `Z_p` generated by `z` and `E`'s generators kept.
pub fn zp_semidirect(p: u64, e: &FiniteGroup, sigma: &Character) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e.order() as u64 % p == 0 {
        return Err(Error::PrimeDividesOrder { p, n: e.order() as u64 });
    }
    if !sigma.is_homomorphism(e) {
        return Err(Error::NotAHomomorphism("σ is not a character of E".into()));
    }
    let units = UnitMap::new(p)?;
    units.check(sigma)?;
    let zp = cyclic_named(p as usize, "z");
    let action: Vec<Vec<Elem>> = e
        .elements()
        .map(|a| {
            let u = units.unit(sigma, a);
            (0..p).map(|m| (u * m % p) as Elem).collect()
        })
        .collect();
    let g = semidirect_product(&zp, e, &action)?;
    let name = if sigma.is_trivial() {
        format!("Z{p}x{}", e.name())
    } else {
        format!("Z{p}:{}", e.name())
    };
    Ok(g.with_name(name))
}

/// The automorphism `(m, a) ↦ (k·m + γ_i(a), lam(a))` of `Z_p ⋊_σ E`, with
/// `γ_i(a) = i − σ(a)·i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectAut {
    pub k: u64,
    pub i: u64,
    pub lam: AutIdx,
}

/// `Aut(Z_p ⋊_σ E)` in closed form: `k ∈ Z_p^*`, `i ∈ Z_p` (only `i = 0`
/// when `σ = 1`, since then every coboundary vanishes) and `lam ∈ Σ_σ`.
#[derive(Clone, Debug)]
pub struct StructuredAut {
    pub p: u64,
    pub sigma: Character,
    units: UnitMap,
    base: FiniteGroup,
    aut_e: AutomorphismGroup,
    /// `Σ_σ` as indices into `Aut(E)`, identity first.
    stabilizer: Vec<AutIdx>,
    stab_pos: HashMap<AutIdx, usize>,
    shifts: u64,
    group: AutomorphismGroup,
}

impl StructuredAut {
    pub fn group(&self) -> &AutomorphismGroup {
        &self.group
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn aut_e(&self) -> &AutomorphismGroup {
        &self.aut_e
    }

    pub fn units(&self) -> &UnitMap {
        &self.units
    }

    /// `|Σ_σ|`.
    pub fn s(&self) -> usize {
        self.stabilizer.len()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn element(&self, idx: AutIdx) -> SemidirectAut {
        let s = self.stabilizer.len() as u64;
        let idx = idx as u64;
        let lam = self.stabilizer[(idx % s) as usize];
        let rest = idx / s;
        let i = rest % self.shifts;
        let k = rest / self.shifts + 1;
        SemidirectAut { k, i, lam }
    }

    /// Index of `(k, i, lam)`, `None` when it is not an automorphism.
    pub fn index(&self, x: &SemidirectAut) -> Option<AutIdx> {
        let p = self.p;
        let k = x.k % p;
        let i = x.i % p;
        if k == 0 || (self.shifts == 1 && i != 0) {
            return None;
        }
        let l = *self.stab_pos.get(&x.lam)? as u64;
        Some((((k - 1) * self.shifts + i) * self.stabilizer.len() as u64 + l) as AutIdx)
    }

    pub fn apply(&self, x: &SemidirectAut, point: Elem) -> Elem {
        let p = self.p;
        let (m, a) = (point as u64 % p, point as u64 / p);
        let s = self.units.unit(&self.sigma, a as Elem);
        let gamma = (x.i + p * p - s * x.i % p) % p;
        let m2 = (x.k * m + gamma) % p;
        let a2 = self.aut_e.apply(x.lam, a as Elem) as u64;
        (m2 + p * a2) as Elem
    }
}

/// `Aut(Z_p ⋊_σ E)` built from units, coboundaries and `Σ_σ ⊆ Aut(E)`.
pub fn aut_of_semidirect(p: u64, sigma: &Character, e: &FiniteGroup) -> Result<StructuredAut> {
    let base = zp_semidirect(p, e, sigma)?;
    let aut_e = automorphism_group(e)?;
    let stabilizer = character_stabilizer(&aut_e, sigma);
    debug_assert_eq!(stabilizer.first(), Some(&0));
    let stab_pos: HashMap<AutIdx, usize> = stabilizer.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let shifts = if sigma.is_trivial() { 1 } else { p };
    let s = stabilizer.len();
    let total = (p as usize - 1) * shifts as usize * s;
    let mut sa = StructuredAut {
        p,
        sigma: sigma.clone(),
        units: UnitMap::new(p)?,
        base: base.clone(),
        aut_e,
        stabilizer,
        stab_pos,
        shifts,
        group: AutomorphismGroup::from_perms(&base, vec![base.elements().collect()])?,
    };
    let elems: Vec<SemidirectAut> = (0..total as AutIdx).map(|i| sa.element(i)).collect();
    let perms: Vec<Vec<Elem>> = elems
        .iter()
        .map(|x| base.elements().map(|pt| sa.apply(x, pt)).collect())
        .collect();
    for perm in &perms {
        if !GroupMorphism::new(perm.clone()).is_bijective(base.order()) {
            return Err(Error::Internal("structured automorphism is not a bijection".into()));
        }
    }
    // (k,i,λ)∘(k',i',λ') = (kk', k·i' + i, λλ')
    let table = if total <= MATERIALIZE_LIMIT {
        let mut table = vec![0 as AutIdx; total * total];
        for (x, ex) in elems.iter().enumerate() {
            for (y, ey) in elems.iter().enumerate() {
                let c = SemidirectAut {
                    k: ex.k * ey.k % p,
                    i: (ex.k * ey.i + ex.i) % p,
                    lam: sa.aut_e.compose(ex.lam, ey.lam),
                };
                table[x * total + y] = sa.index(&c).ok_or(Error::AutNotClosed)?;
            }
        }
        Some(table)
    } else {
        None
    };
    // spot-check homomorphism property on generators of N
    let gens = small_generating_set(&base);
    for perm in &perms {
        for &g in &gens {
            for h in base.elements() {
                if perm[base.mul(g, h) as usize] != base.mul(perm[g as usize], perm[h as usize]) {
                    return Err(Error::Internal("structured map is not a homomorphism".into()));
                }
            }
        }
    }
    sa.group = AutomorphismGroup::with_composition(&base, perms, table)?;
    Ok(sa)
}

/// Input to [`double_semidirect`]: `σ[b]` and `τ[b]` are brace automorphisms
/// of `A` given as permutations of its indices.
#[derive(Clone, Debug)]
pub struct DsdpSpec {
    pub a: SkewBrace,
    pub b: SkewBrace,
    pub sigma: Vec<Vec<Elem>>,
    pub tau: Vec<Vec<Elem>>,
}

impl DsdpSpec {
    pub fn new(a: SkewBrace, b: SkewBrace, sigma: Vec<Vec<Elem>>, tau: Vec<Vec<Elem>>) -> Result<Self> {
        let (na, nb) = (a.size(), b.size());
        if sigma.len() != nb || tau.len() != nb {
            return Err(Error::NotAHomomorphism("σ and τ need one map per element of B".into()));
        }
        for (name, maps) in [("σ", &sigma), ("τ", &tau)] {
            for m in maps.iter() {
                if m.len() != na || !GroupMorphism::new(m.clone()).is_bijective(na) {
                    return Err(Error::NotAHomomorphism(format!("{name} contains a non-bijection")));
                }
                for x in 0..na as Elem {
                    for y in 0..na as Elem {
                        let add_ok = m[a.add().mul(x, y) as usize] == a.add().mul(m[x as usize], m[y as usize]);
                        let circ_ok = m[a.circ(x, y) as usize] == a.circ(m[x as usize], m[y as usize]);
                        if !add_ok || !circ_ok {
                            return Err(Error::NotAHomomorphism(format!("{name} contains a non-automorphism of A")));
                        }
                    }
                }
            }
        }
        let composes = |maps: &[Vec<Elem>], op: &dyn Fn(Elem, Elem) -> Elem| {
            (0..nb as Elem).all(|b1| {
                (0..nb as Elem).all(|b2| {
                    let c = &maps[op(b1, b2) as usize];
                    (0..na).all(|x| c[x] == maps[b1 as usize][maps[b2 as usize][x] as usize])
                })
            })
        };
        if !composes(&sigma, &|x, y| b.add().mul(x, y)) {
            return Err(Error::NotAHomomorphism("σ is not a homomorphism on (B,·)".into()));
        }
        if !composes(&tau, &|x, y| b.circ(x, y)) {
            return Err(Error::NotAHomomorphism("τ is not a homomorphism on (B,∘)".into()));
        }
        Ok(DsdpSpec { a, b, sigma, tau })
    }

    /// `A` = trivial brace `Z_p`, `σ` and `τ` acting by units.
    pub fn over_zp(p: u64, b: SkewBrace, sigma: &Character, tau: &Character) -> Result<Self> {
        let units = UnitMap::new(p)?;
        units.check(sigma)?;
        units.check(tau)?;
        let zp = cyclic_named(p as usize, "z");
        let maps = |c: &Character| -> Vec<Vec<Elem>> {
            (0..b.size() as Elem)
                .map(|x| {
                    let u = units.unit(c, x);
                    (0..p).map(|m| (u * m % p) as Elem).collect()
                })
                .collect()
        };
        let (s, t) = (maps(sigma), maps(tau));
        DsdpSpec::new(SkewBrace::trivial(&zp), b, s, t)
    }
}

/// First `(a, b₁, b₂)` (lexicographically) where
/// `λ_a τ(b₁) σ(b₂) ≠ σ((b₁∘b₂)·b₁⁻¹) λ_a τ(b₁)` as maps on `A`, or `None`
/// when the compatibility condition holds.
///
/// A pass over generator pairs runs first as a cheap filter; the full pass
/// always runs, and witnesses always come from it.
pub fn check_dsdp_condition(spec: &DsdpSpec) -> Option<(Elem, Elem, Elem)> {
    let (a, b) = (&spec.a, &spec.b);
    let fails = |x: Elem, b1: Elem, b2: Elem| -> bool {
        let lam = a.lambda(x);
        let t1 = &spec.tau[b1 as usize];
        let s2 = &spec.sigma[b2 as usize];
        let c = b.add().mul(b.circ(b1, b2), b.add().inv(b1));
        let sc = &spec.sigma[c as usize];
        (0..a.size()).any(|y| lam[t1[s2[y] as usize] as usize] != sc[lam[t1[y] as usize] as usize])
    };
    let na = a.size() as Elem;
    let nb = b.size() as Elem;
    let gens = small_generating_set(b.add());
    let quick_fail = (0..na).any(|x| gens.iter().any(|&b1| gens.iter().any(|&b2| fails(x, b1, b2))));
    let full = (0..na)
        .flat_map(|x| (0..nb).flat_map(move |b1| (0..nb).map(move |b2| (x, b1, b2))))
        .find(|&(x, b1, b2)| fails(x, b1, b2));
    debug_assert!(!quick_fail || full.is_some());
    full
}

/// The brace on `A × B` with `(a,b)·(a',b') = (a·σ(b)(a'), b·b')` and
/// `(a,b)∘(a',b') = (a∘τ(b)(a'), b∘b')`; the pair sits at `a + |A|·b`.
pub fn double_semidirect(spec: &DsdpSpec) -> Result<SkewBrace> {
    if let Some((a, b1, b2)) = check_dsdp_condition(spec) {
        return Err(Error::DsdpCondition {
            a: a as usize,
            b1: b1 as usize,
            b2: b2 as usize,
        });
    }
    let add = semidirect_product(spec.a.add(), spec.b.add(), &spec.sigma)?;
    let (na, nb) = (spec.a.size(), spec.b.size());
    let n = na * nb;
    let mut circ = vec![0; n * n];
    for x in 0..n {
        let (a1, b1) = (x % na, x / na);
        for y in 0..n {
            let (a2, b2) = (y % na, y / na);
            let a = spec.a.circ(a1 as Elem, spec.tau[b1][a2]);
            let b = spec.b.circ(b1 as Elem, b2 as Elem);
            circ[x * n + y] = a + (na as Elem) * b;
        }
    }
    SkewBrace::new(add, circ)
}

/// `G(σ,τ)`, `G(σ,τ)′` together with the holomorph they live in.
#[derive(Clone, Debug)]
pub struct GPair {
    pub aut: StructuredAut,
    pub hol: HolGroup,
    pub g: RegularSubgroup,
    pub g_prime: RegularSubgroup,
}

/// Builds `G(σ,τ)` and `G(σ,τ)′` inside `Hol(Z_p ⋊_σ E)` from a brace
/// realized as the regular subgroup `f` of `Hol(E)`. `τ` is a character of
/// the group `{(a, λ_a)}`, evaluated on the point `a`.
///
/// - `G(σ,τ)`: above `(m, a)` sits `(σ(a)⁻¹τ(a), 0, λ_a)`;
/// - `G(σ,τ)′`: above `(σ(a)·m, a)` sits `(τ(a), −m, λ_a)`.
pub fn build_g_pair(p: u64, hol_e: &HolGroup, f: &RegularSubgroup, sigma: &Character, tau: &Character) -> Result<GPair> {
    let aut = aut_of_semidirect(p, sigma, hol_e.base())?;
    let hol = HolGroup::new(aut.base().clone(), aut.group().clone())?;
    let (g, g_prime) = g_pair_in(&aut, &hol, hol_e, f, tau)?;
    Ok(GPair { aut, hol, g, g_prime })
}

/// [`build_g_pair`] against an already built `Aut(N)` and `Hol(N)`.
pub fn g_pair_in(
    aut: &StructuredAut,
    hol: &HolGroup,
    hol_e: &HolGroup,
    f: &RegularSubgroup,
    tau: &Character,
) -> Result<(RegularSubgroup, RegularSubgroup)> {
    let e = hol_e.base();
    let p = aut.p;
    let sigma = &aut.sigma;
    let circ = f.circ_table(hol_e);
    let mul = FiniteGroup::from_table("F", e.order(), circ)?;
    if !tau.is_homomorphism(&mul) {
        return Err(Error::NotAHomomorphism("τ is not a character of the multiplicative group".into()));
    }
    aut.units().check(tau)?;
    let mut lam_pos = Vec::with_capacity(e.order());
    for a in e.elements() {
        let perm = hol_e.aut().perm(f.f[a as usize]);
        let idx = aut
            .aut_e()
            .index_of(perm)
            .ok_or_else(|| Error::Internal("λ-map missing from Aut(E)".into()))?;
        if sigma.precompose(aut.aut_e().perm(idx)) != *sigma {
            return Err(Error::NotABraceCharacter(format!("λ_{a} does not fix σ")));
        }
        lam_pos.push(idx);
    }
    let units = aut.units();
    let n = aut.base().order();
    let mut g = vec![0; n];
    let mut g_prime = vec![0; n];
    for a in e.elements() {
        let s = units.unit(sigma, a);
        let t = units.unit(tau, a);
        let lam = lam_pos[a as usize];
        for m in 0..p {
            let point = (m + p * a as u64) as usize;
            g[point] = aut
                .index(&SemidirectAut {
                    k: inv_mod(s, p) * t % p,
                    i: 0,
                    lam,
                })
                .expect("valid structured automorphism");
            let shifted = (s * m % p + p * a as u64) as usize;
            let i = if sigma.is_trivial() { 0 } else { (p - m) % p };
            g_prime[shifted] = aut.index(&SemidirectAut { k: t, i, lam }).expect("valid structured automorphism");
        }
    }
    let g = RegularSubgroup { f: g };
    let g_prime = RegularSubgroup { f: g_prime };
    g.check_closed(hol)?;
    g_prime.check_closed(hol)?;
    Ok((g, g_prime))
}

/// `σ`, `τ` and the size-`n` brace read off a brace on `Z_p ⋊ E` laid out as
/// `m + p·a`: `σ(a)` from `(0,a)·z·(0,a)⁻¹`, `τ(a)` from the same
/// conjugation under `∘`, and the brace on the points `(0, a)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub sigma: Character,
    pub tau: Character,
    pub small: SkewBrace,
}

pub fn decompose(brace: &SkewBrace, p: u64, modulus: u32) -> Result<Decomposition> {
    let n_total = brace.size() as u64;
    if n_total % p != 0 {
        return Err(Error::PrimeDividesOrder { p, n: n_total });
    }
    let n = (n_total / p) as usize;
    let units = UnitMap::new(p)?;
    let add = brace.add();
    let z: Elem = 1;
    let in_p = |x: Elem| (x as u64) < p;
    let q = |a: usize| (p as usize * a) as Elem;
    // both subsets must be closed under both laws
    for x in 0..p as Elem {
        for y in 0..p as Elem {
            if !in_p(add.mul(x, y)) || !in_p(brace.circ(x, y)) {
                return Err(Error::Internal("Z_p is not a sub-brace".into()));
            }
        }
    }
    let mut add_t = vec![0; n * n];
    let mut circ_t = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let s = add.mul(q(a), q(b)) as u64;
            let c = brace.circ(q(a), q(b)) as u64;
            if s % p != 0 || c % p != 0 {
                return Err(Error::Internal("complement is not a sub-brace".into()));
            }
            add_t[a * n + b] = (s / p) as Elem;
            circ_t[a * n + b] = (c / p) as Elem;
        }
    }
    let small_add = FiniteGroup::from_table(format!("({})_n", add.name()), n, add_t)?;
    let small = SkewBrace::new(small_add, circ_t)?;
    let mut su = Vec::with_capacity(n);
    let mut tu = Vec::with_capacity(n);
    for a in 0..n {
        let x = q(a);
        let sc = add.mul(add.mul(x, z), add.inv(x));
        let tc = brace.circ(brace.circ(x, z), brace.circ_inv(x));
        if !in_p(sc) || !in_p(tc) {
            return Err(Error::Internal("Z_p is not normal".into()));
        }
        su.push(sc as u64);
        tu.push(tc as u64);
    }
    let sigma = units
        .character(&su, modulus)
        .ok_or_else(|| Error::Internal("σ does not take values in the given modulus".into()))?;
    let tau = units
        .character(&tu, modulus)
        .ok_or_else(|| Error::Internal("τ does not take values in the given modulus".into()))?;
    Ok(Decomposition { sigma, tau, small })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::verify_brace;
    use crate::group::{alternating4, are_isomorphic, cyclic, dihedral};
    use crate::morphisms::homs_to_cyclic;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(13).unwrap(), 2);
        assert!(primitive_root(12).is_err());
    }

    #[test]
    fn semidirect_orders() {
        let c12 = cyclic(12);
        let chars = homs_to_cyclic(&c12, 12);
        for s in &chars.characters {
            let g = zp_semidirect(13, &c12, s).unwrap();
            assert_eq!(g.order(), 156);
            assert_eq!(g.is_abelian(), s.is_trivial());
        }
        assert!(matches!(
            zp_semidirect(5, &cyclic(10), &Character::trivial(10, 4)),
            Err(Error::PrimeDividesOrder { .. })
        ));
    }

    #[test]
    fn structured_aut_orders() {
        let c12 = cyclic(12);
        let chars = homs_to_cyclic(&c12, 12);
        let triv = &chars.characters[chars.trivial_index()];
        assert_eq!(aut_of_semidirect(13, triv, &c12).unwrap().order(), 48);
        let faithful = chars.characters.iter().find(|c| c.order() == 12).unwrap();
        assert_eq!(aut_of_semidirect(13, faithful, &c12).unwrap().order(), 156);
        let a4 = alternating4();
        let chars = homs_to_cyclic(&a4, 6);
        let s3 = chars.characters.iter().find(|c| c.order() == 3).unwrap();
        assert_eq!(aut_of_semidirect(7, s3, &a4).unwrap().order(), 504);
    }

    #[test]
    fn trivial_sigma_gives_semidirect_brace() {
        let c12 = cyclic(12);
        let b = SkewBrace::trivial(&c12);
        let chars = homs_to_cyclic(&c12, 12);
        let triv = chars.characters[chars.trivial_index()].clone();
        let tau = chars.characters.iter().find(|c| c.order() == 12).unwrap();
        let spec = DsdpSpec::over_zp(13, b, &triv, tau).unwrap();
        assert!(check_dsdp_condition(&spec).is_none());
        let br = double_semidirect(&spec).unwrap();
        assert!(verify_brace(&br).is_ok());
        assert!(br.add().is_abelian());
        let mul = br.mul_group().unwrap();
        assert!(!mul.is_abelian());
        assert!(are_isomorphic(&mul, &zp_semidirect(13, &c12, tau).unwrap()).is_some());
    }

    #[test]
    fn order_four_character_both_sides() {
        let c4 = cyclic(4);
        let chars = homs_to_cyclic(&c4, 4);
        let s = chars.characters.iter().find(|c| c.order() == 4).unwrap();
        let spec = DsdpSpec::over_zp(5, SkewBrace::trivial(&c4), s, s).unwrap();
        let br = double_semidirect(&spec).unwrap();
        let target = zp_semidirect(5, &c4, s).unwrap();
        assert!(are_isomorphic(br.add(), &target).is_some());
        assert!(are_isomorphic(&br.mul_group().unwrap(), &target).is_some());
    }

    #[test]
    fn dihedral_sign_character_fails_on_c12_realization() {
        // some brace (D12, C12) has λ-maps that move the (−1,−1) character
        let d12 = dihedral(6);
        let aut = automorphism_group(&d12).unwrap();
        let hol = HolGroup::new(d12.clone(), aut).unwrap();
        let subs = crate::holomorph::all_regular_subgroups(&hol, &Default::default()).unwrap();
        let chars = homs_to_cyclic(&d12, 12);
        let r = d12.hint("r").unwrap();
        let s = d12.hint("s").unwrap();
        let minus = chars
            .characters
            .iter()
            .find(|c| c.value(r) == 6 && c.value(s) == 6)
            .unwrap();
        let mut seen_failure = false;
        for g in &subs {
            let b = crate::brace::brace_from_regular(&hol, g).unwrap();
            if !b.mul_group().unwrap().is_cyclic() {
                continue;
            }
            let t = Character::trivial(12, 12);
            let spec = DsdpSpec::over_zp(13, b.clone(), minus, &t).unwrap();
            let circ_hom = (0..12).all(|x| {
                (0..12).all(|y| minus.value(b.circ(x, y)) == (minus.value(x) + minus.value(y)) % 12)
            });
            assert_eq!(check_dsdp_condition(&spec).is_none(), circ_hom);
            seen_failure |= !circ_hom;
        }
        assert!(seen_failure);
    }
}
