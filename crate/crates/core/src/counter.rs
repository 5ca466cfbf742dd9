//! Counting skew braces of size `np` from the braces of size `n`.
//!
//! For each brace `B` of size `n` (additive `E`, multiplicative `F`):
//! characters `σ` of `E` with `π₂(F) ⊆ Σ_σ`, orbits of `Aut(B)` on them,
//! and for each orbit representative the orbits of `A_σ = Aut(B) ∩ Σ_σ` on
//! `H = Hom((B,∘), Z_p^*)`. The trivial orbit contributes once, every other
//! one twice (`G(σ,τ)` and `G(σ,τ)′`).

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{brace_automorphisms, brace_catalog, brace_characters, CatalogBrace, GroupCatalog};
use crate::dsdp::is_prime;
use crate::error::{Error, Result};
use crate::group::{are_isomorphic, dihedral, gcd, small_groups, Elem, FiniteGroup};
use crate::morphisms::{
    automorphism_group, homs_to_cyclic, orbits_and_stabilizers, ActionOrbits, AutIdx, AutomorphismGroup, Character,
    CharacterSpace,
};

/// A concrete prime, or a residue class of primes modulo 12.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "lowercase")]
pub enum PrimeSpec {
    Concrete(u64),
    Residue(u64),
}

impl PrimeSpec {
    /// Order of the cyclic group characters of an order-`n` group land in.
    pub fn modulus(&self, n: u64) -> Result<u32> {
        match *self {
            PrimeSpec::Concrete(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if p < 3 {
                    return Err(Error::InvalidPrimeSpec(format!("p = {p} must be odd")));
                }
                if n % p == 0 {
                    return Err(Error::PrimeDividesOrder { p, n });
                }
                Ok(gcd(n, p - 1) as u32)
            }
            PrimeSpec::Residue(r) => {
                if ![1, 5, 7, 11].contains(&r) {
                    return Err(Error::InvalidPrimeSpec(format!("residue {r} is not a unit class mod 12")));
                }
                if 12 % n != 0 {
                    return Err(Error::InvalidPrimeSpec(format!("residue classes mod 12 need n | 12, got n = {n}")));
                }
                Ok(gcd(n, gcd(12, r - 1)) as u32)
            }
        }
    }
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSpec::Concrete(p) => write!(f, "p={p}"),
            PrimeSpec::Residue(r) => write!(f, "p≡{r} (mod 12)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    /// No divisor `d > 1` of `n` is `1 mod p`, so the Sylow `p`-subgroup of
    /// every group of order `np` is normal.
    HoldsBySylow,
    Unknown,
}

pub fn hypothesis_check(n: u64, p: u64) -> Result<Hypothesis> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n % p == 0 {
        return Err(Error::PrimeDividesOrder { p, n });
    }
    let clash = (2..=n).any(|d| n % d == 0 && d % p == 1);
    Ok(if clash { Hypothesis::Unknown } else { Hypothesis::HoldsBySylow })
}

/// Isomorphism type of `Z_p ⋊_σ X`: the base `X`, `|Ker σ|` and a tag
/// separating orbits with equal kernel size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureLabel {
    pub base: String,
    pub base_rank: usize,
    pub k: usize,
    pub base_order: usize,
    pub tag: Option<String>,
    /// False for a bare group of order `n` (no `Z_p` part).
    #[serde(default = "yes")]
    pub extension: bool,
}

fn yes() -> bool {
    true
}

impl StructureLabel {
    /// The group itself, as a label for size-`n` tables.
    pub fn plain(g: &FiniteGroup, rank: usize) -> Self {
        StructureLabel {
            base: g.name().into(),
            base_rank: rank,
            k: g.order(),
            base_order: g.order(),
            tag: None,
            extension: false,
        }
    }

    fn sort_key(&self) -> (usize, std::cmp::Reverse<usize>, Option<&str>) {
        (self.base_rank, std::cmp::Reverse(self.k), self.tag.as_deref())
    }

    pub fn is_direct(&self) -> bool {
        self.k == self.base_order
    }

    /// The kernel part alone, e.g. `6c` or `x` for the direct product.
    pub fn short(&self) -> String {
        if self.is_direct() {
            "x".into()
        } else {
            format!("{}{}", self.k, self.tag.as_deref().unwrap_or(""))
        }
    }
}

impl Ord for StructureLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for StructureLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StructureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.extension {
            write!(f, "{}", self.base)
        } else if self.is_direct() {
            write!(f, "Zp x {}", self.base)
        } else {
            write!(f, "Zp :{} {}", self.short(), self.base)
        }
    }
}

/// Labels of every `Aut(X)`-orbit of characters `X -> C_{exp X}`.
#[derive(Clone, Debug)]
pub struct LabelTable {
    group: FiniteGroup,
    aut: AutomorphismGroup,
    space: CharacterSpace,
    orbits: ActionOrbits,
    labels: Vec<StructureLabel>,
}

fn kernel_tag(g: &FiniteGroup, kernel: &[Elem]) -> String {
    let sub = crate::group::Subgroup::from_sorted(g.order(), kernel.to_vec());
    let k = g.subgroup_as_group(&sub, "K");
    if k.is_cyclic() {
        "c".into()
    } else if k.order() % 2 == 0 && k.order() >= 6 && are_isomorphic(&k, &dihedral(k.order() / 2)).is_some() {
        "d".into()
    } else if k.is_abelian() {
        "a".into()
    } else {
        "n".into()
    }
}

impl LabelTable {
    pub fn new(group: &FiniteGroup, rank: usize) -> Result<Self> {
        let aut = automorphism_group(group)?;
        let space = homs_to_cyclic(group, group.exponent() as u32);
        let all: Vec<AutIdx> = aut.elements().collect();
        let orbits = crate::morphisms::character_orbits(&aut, &all, &space)?;
        let mut by_k: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (o, orbit) in orbits.orbits.iter().enumerate() {
            by_k.entry(space.characters[orbit[0]].kernel_size()).or_default().push(o);
        }
        let mut labels = vec![None; orbits.count()];
        for (k, os) in by_k {
            if os.len() == 1 {
                labels[os[0]] = Some(StructureLabel {
                    base: group.name().into(),
                    base_rank: rank,
                    k,
                    base_order: group.order(),
                    tag: None,
                    extension: true,
                });
                continue;
            }
            let mut tagged: Vec<(String, usize)> = os
                .iter()
                .map(|&o| (kernel_tag(group, &space.characters[orbits.orbits[o][0]].kernel()), o))
                .collect();
            tagged.sort();
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for (t, _) in &tagged {
                *counts.entry(t.clone()).or_default() += 1;
            }
            let mut seen: BTreeMap<String, usize> = BTreeMap::new();
            for (t, o) in tagged {
                let tag = if counts[&t] > 1 {
                    let i = seen.entry(t.clone()).or_default();
                    *i += 1;
                    format!("{t}{i}")
                } else {
                    t
                };
                labels[o] = Some(StructureLabel {
                    base: group.name().into(),
                    base_rank: rank,
                    k,
                    base_order: group.order(),
                    tag: Some(tag),
                    extension: true,
                });
            }
        }
        Ok(LabelTable {
            group: group.clone(),
            aut,
            space,
            orbits,
            labels: labels.into_iter().map(|l| l.expect("every orbit labelled")).collect(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Label of a character of this table's group (any modulus).
    pub fn label(&self, c: &Character) -> Result<&StructureLabel> {
        let m = self.space.modulus as u64;
        let exponents = c
            .exponents
            .iter()
            .map(|&e| {
                let num = e as u64 * m;
                (num % c.modulus as u64 == 0).then_some((num / c.modulus as u64) as u32)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("character does not factor through the exponent".into()))?;
        let lifted = Character {
            modulus: self.space.modulus,
            exponents,
        };
        let pos = self
            .space
            .position(&lifted)
            .ok_or_else(|| Error::Internal("character missing from label table".into()))?;
        Ok(&self.labels[self.orbits.orbit_of(pos)])
    }

    /// Labels realizable by characters with values in `C_m`.
    pub fn labels_at(&self, m: u32) -> Vec<StructureLabel> {
        let mut v: Vec<StructureLabel> = self
            .orbits
            .orbits
            .iter()
            .enumerate()
            .filter(|(_, o)| m % self.space.characters[o[0]].order() == 0)
            .map(|(i, _)| self.labels[i].clone())
            .collect();
        v.sort();
        v
    }

    pub fn aut(&self) -> &AutomorphismGroup {
        &self.aut
    }
}

/// Label for the orbit of `sigma`, a character of `table.group()`.
pub fn label_structures(table: &LabelTable, sigma: &Character) -> Result<StructureLabel> {
    table.label(sigma).cloned()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixCell {
    pub add_label: String,
    pub mul_label: String,
    pub add: StructureLabel,
    pub mul: StructureLabel,
    pub count: u64,
}

/// One `Aut(B)`-orbit of brace characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaOrbit {
    /// Representative, as exponents of the images of `E`'s elements.
    pub sigma: Vec<u32>,
    pub label: String,
    pub orbit_size: usize,
    /// `|A_σ| = |Aut(B) ∩ Σ_σ|`.
    pub a_sigma_order: usize,
    pub tau_orbits: usize,
    /// 1 or 2 times `tau_orbits`.
    pub braces: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceBreakdown {
    pub add_base: String,
    pub mul_base: String,
    /// Position among the braces with the same additive and multiplicative
    /// groups.
    pub index: usize,
    pub aut_order: usize,
    pub brace_characters: usize,
    pub sigma_orbits: Vec<SigmaOrbit>,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: u64,
    /// `None` for plain size-`n` tables.
    pub prime: Option<PrimeSpec>,
    pub modulus: u32,
    /// Names of the order-`n` groups, in table order.
    pub bases: Vec<String>,
    pub add_axis: Vec<StructureLabel>,
    pub mul_axis: Vec<StructureLabel>,
    /// Nonzero cells only, sorted by (additive, multiplicative) label.
    pub matrix: Vec<MatrixCell>,
    pub per_brace: Vec<BraceBreakdown>,
    pub additive_structures: u64,
    pub total: u64,
}

impl CountReport {
    pub fn cell(&self, add: &StructureLabel, mul: &StructureLabel) -> u64 {
        self.matrix
            .iter()
            .find(|c| &c.add == add && &c.mul == mul)
            .map_or(0, |c| c.count)
    }

    /// Counts summed over kernels: rows and columns are the base groups.
    pub fn base_matrix(&self) -> Vec<Vec<u64>> {
        let b = self.bases.len();
        let mut m = vec![vec![0; b]; b];
        for c in &self.matrix {
            m[c.add.base_rank][c.mul.base_rank] += c.count;
        }
        m
    }

    /// Kernel-resolved table for one pair of bases: rows are the additive
    /// labels over `e`, columns the multiplicative labels over `f`.
    pub fn sub_table(&self, e: usize, f: usize) -> (Vec<StructureLabel>, Vec<StructureLabel>, Vec<Vec<u64>>) {
        let rows: Vec<StructureLabel> = self.add_axis.iter().filter(|l| l.base_rank == e).cloned().collect();
        let cols: Vec<StructureLabel> = self.mul_axis.iter().filter(|l| l.base_rank == f).cloned().collect();
        let table = rows
            .iter()
            .map(|r| cols.iter().map(|c| self.cell(r, c)).collect())
            .collect();
        (rows, cols, table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Which member of each `σ`-orbit is used to count `τ`-orbits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RepChoice {
    #[default]
    First,
    Last,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CountOptions {
    /// Count even when [`hypothesis_check`] cannot establish the hypothesis.
    pub override_hypothesis: bool,
    pub representatives: RepChoice,
}

/// Braces of size `n` with their label tables.
pub struct SizeData {
    pub n: u64,
    pub catalog: GroupCatalog,
    pub tables: Vec<LabelTable>,
    pub braces: Vec<CatalogBrace>,
    /// `iso[b]` maps the catalog group of brace `b`'s multiplicative group
    /// into `(B,∘)`.
    iso: Vec<Vec<Elem>>,
}

impl SizeData {
    pub fn new(n: u64) -> Result<Self> {
        let groups = small_groups(n as usize).ok_or(Error::NoCatalog(n as usize))?;
        let catalog = GroupCatalog::new(groups)?;
        let tables = catalog
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| LabelTable::new(g, i))
            .collect::<Result<Vec<_>>>()?;
        let braces = brace_catalog(&catalog)?;
        let iso = braces
            .iter()
            .map(|b| {
                let mul = b.brace.mul_group()?;
                let m = are_isomorphic(&catalog.groups[b.mul_label], &mul)
                    .ok_or_else(|| Error::Internal("multiplicative group label is wrong".into()))?;
                Ok(catalog.groups[b.mul_label].elements().map(|x| m.apply(x)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SizeData {
            n,
            catalog,
            tables,
            braces,
            iso,
        })
    }
}

fn check_hypothesis(n: u64, prime: PrimeSpec, opts: &CountOptions) -> Result<()> {
    match prime {
        // residue classes: established for every p ≥ 7 with n | 12
        PrimeSpec::Residue(_) => Ok(()),
        PrimeSpec::Concrete(p) => match hypothesis_check(n, p)? {
            Hypothesis::HoldsBySylow => Ok(()),
            Hypothesis::Unknown if opts.override_hypothesis => Ok(()),
            Hypothesis::Unknown => Err(Error::HypothesisUnknown { n, p }),
        },
    }
}

pub fn count_np(n: u64, prime: PrimeSpec) -> Result<CountReport> {
    count_np_with(n, prime, &CountOptions::default())
}

pub fn count_np_with(n: u64, prime: PrimeSpec, opts: &CountOptions) -> Result<CountReport> {
    check_hypothesis(n, prime, opts)?;
    prime.modulus(n)?;
    let data = SizeData::new(n)?;
    count_np_in(&data, prime, opts)
}

struct BraceCount {
    breakdown: BraceBreakdown,
    cells: Vec<(StructureLabel, StructureLabel, u64)>,
    additive: u64,
}

fn count_brace(data: &SizeData, b: usize, m: u32, opts: &CountOptions) -> Result<BraceCount> {
    let cb = &data.braces[b];
    let aut = cb.hol.aut();
    let e_table = &data.tables[cb.add_label];
    let f_table = &data.tables[cb.mul_label];
    let space = homs_to_cyclic(e_table.group(), m);
    // characters σ with π₂(F) ⊆ Σ_σ
    let sigmas: Vec<usize> = brace_characters(&cb.hol, &cb.f, &space)?;
    let sigma_pos: BTreeMap<&[u32], usize> = sigmas
        .iter()
        .enumerate()
        .map(|(i, &s)| (space.characters[s].exponents.as_slice(), i))
        .collect();
    // Aut(B)
    let autb = brace_automorphisms(&cb.hol, &cb.f);
    // Aut(B)-orbits on those characters
    let s_orbits = orbits_and_stabilizers(&autb, sigmas.len(), |g, x| {
        let c = space.characters[sigmas[x]].precompose(aut.perm(g));
        sigma_pos.get(c.exponents.as_slice()).copied()
    })?;
    // A_σ-orbits on Hom((B,∘), C_m) per orbit representative
    let mul = cb.brace.mul_group()?;
    let h = homs_to_cyclic(&mul, m);
    let iso = &data.iso[b];
    let mut cells = Vec::new();
    let mut sigma_orbits = Vec::new();
    for (o, orbit) in s_orbits.orbits.iter().enumerate() {
        let rep = match opts.representatives {
            RepChoice::First => orbit[0],
            RepChoice::Last => *orbit.last().expect("orbits are nonempty"),
        };
        let sigma = &space.characters[sigmas[rep]];
        let a_sigma = if rep == orbit[0] {
            s_orbits.stabilizers[o].clone()
        } else {
            let mut s = s_orbits.stabilizer_of(aut, rep);
            s.sort_unstable();
            s
        };
        let t_orbits = orbits_and_stabilizers(&a_sigma, h.len(), |g, x| {
            h.position(&h.characters[x].precompose(aut.perm(g)))
        })?;
        let factor = if sigma.is_trivial() { 1 } else { 2 };
        let add_label = e_table.label(sigma)?.clone();
        for t in t_orbits.representatives() {
            let tau = &h.characters[t];
            let transported = tau.precompose(iso);
            let mul_label = f_table.label(&transported)?.clone();
            cells.push((add_label.clone(), mul_label, factor));
        }
        sigma_orbits.push(SigmaOrbit {
            sigma: sigma.exponents.clone(),
            label: add_label.to_string(),
            orbit_size: orbit.len(),
            a_sigma_order: a_sigma.len(),
            tau_orbits: t_orbits.count(),
            braces: factor * t_orbits.count() as u64,
        });
    }
    let total = sigma_orbits.iter().map(|s| s.braces).sum();
    let index = data.braces[..b]
        .iter()
        .filter(|x| x.add_label == cb.add_label && x.mul_label == cb.mul_label)
        .count();
    Ok(BraceCount {
        additive: s_orbits.count() as u64,
        breakdown: BraceBreakdown {
            add_base: e_table.group().name().into(),
            mul_base: f_table.group().name().into(),
            index,
            aut_order: autb.len(),
            brace_characters: sigmas.len(),
            sigma_orbits,
            total,
        },
        cells,
    })
}

/// [`count_np`] over a precomputed size-`n` catalog.
pub fn count_np_in(data: &SizeData, prime: PrimeSpec, opts: &CountOptions) -> Result<CountReport> {
    let n = data.n;
    check_hypothesis(n, prime, opts)?;
    let m = prime.modulus(n)?;
    let counts = (0..data.braces.len())
        .into_par_iter()
        .map(|b| count_brace(data, b, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut matrix: BTreeMap<(StructureLabel, StructureLabel), u64> = BTreeMap::new();
    let mut per_brace = Vec::new();
    let mut additive = 0;
    for c in counts {
        for (a, f, k) in c.cells {
            *matrix.entry((a, f)).or_default() += k;
        }
        additive += c.additive;
        per_brace.push(c.breakdown);
    }
    let matrix: Vec<MatrixCell> = matrix
        .into_iter()
        .map(|((add, mul), count)| MatrixCell {
            add_label: add.to_string(),
            mul_label: mul.to_string(),
            add,
            mul,
            count,
        })
        .collect();
    let total = matrix.iter().map(|c| c.count).sum();
    let axis: Vec<StructureLabel> = data.tables.iter().flat_map(|t| t.labels_at(m)).collect();
    Ok(CountReport {
        n,
        prime: Some(prime),
        modulus: m,
        bases: data.catalog.names(),
        add_axis: axis.clone(),
        mul_axis: axis,
        matrix,
        per_brace,
        additive_structures: additive,
        total,
    })
}

/// Both closed forms for the number of additive structures and of braces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideTotals {
    pub additive_count: u64,
    pub total_count: u64,
}

fn exact_div(num: u64, den: u64, what: &str) -> Result<u64> {
    if den == 0 || num % den != 0 {
        return Err(Error::FormulaMismatch(format!("{what}: {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Evaluates the stabilizer-sum and fixed-point forms, independently of the
/// orbit machinery used by [`count_np`], and checks them against each other
/// and against the enumeration.
pub fn burnside_totals(n: u64, prime: PrimeSpec) -> Result<BurnsideTotals> {
    burnside_totals_with(n, prime, &CountOptions::default())
}

pub fn burnside_totals_with(n: u64, prime: PrimeSpec, opts: &CountOptions) -> Result<BurnsideTotals> {
    check_hypothesis(n, prime, opts)?;
    prime.modulus(n)?;
    let data = SizeData::new(n)?;
    burnside_totals_in(&data, prime, opts)
}

pub fn burnside_totals_in(data: &SizeData, prime: PrimeSpec, opts: &CountOptions) -> Result<BurnsideTotals> {
    let m = prime.modulus(data.n)?;
    let mut stab_form = (0u64, 0u64);
    let mut fix_form = (0u64, 0u64);
    for cb in &data.braces {
        let aut = cb.hol.aut();
        let e = &data.catalog.groups[cb.add_label];
        let circ = cb.brace.circ_table();
        let nn = e.order();
        let hom_b: Vec<Character> = homs_to_cyclic(e, m)
            .characters
            .into_iter()
            .filter(|s| {
                (0..nn).all(|a| (0..nn).all(|b| s.value(circ[a * nn + b]) == (s.value(a as Elem) + s.value(b as Elem)) % m))
            })
            .collect();
        let autb: Vec<AutIdx> = aut
            .elements()
            .filter(|&g| {
                let p = aut.perm(g);
                (0..nn).all(|a| (0..nn).all(|b| circ[p[a] as usize * nn + p[b] as usize] == p[circ[a * nn + b] as usize]))
            })
            .collect();
        let acts = |g: AutIdx, s: &Character| s.precompose(aut.perm(g));
        let stab_sum: u64 = hom_b
            .iter()
            .map(|s| autb.iter().filter(|&&g| acts(g, s) == *s).count() as u64)
            .sum();
        let fix_sum: u64 = autb
            .iter()
            .map(|&g| hom_b.iter().filter(|s| acts(g, s) == **s).count() as u64)
            .sum();
        stab_form.0 += exact_div(stab_sum, autb.len() as u64, "additive stabilizer form")?;
        fix_form.0 += exact_div(fix_sum, autb.len() as u64, "additive fixed-point form")?;
        // representatives: first member of each orbit in list order
        let mut covered = vec![false; hom_b.len()];
        let mul = cb.brace.mul_group()?;
        let h = homs_to_cyclic(&mul, m).characters;
        for i in 0..hom_b.len() {
            if covered[i] {
                continue;
            }
            let sigma = &hom_b[i];
            for &g in &autb {
                let img = acts(g, sigma);
                let j = hom_b.iter().position(|s| *s == img).ok_or(Error::ActionNotClosed)?;
                covered[j] = true;
            }
            let a_sigma: Vec<AutIdx> = autb.iter().copied().filter(|&g| acts(g, sigma) == *sigma).collect();
            let factor = if sigma.is_trivial() { 1 } else { 2 };
            let s_tau: u64 = h
                .iter()
                .map(|t| a_sigma.iter().filter(|&&g| acts(g, t) == *t).count() as u64)
                .sum();
            let f_tau: u64 = a_sigma
                .iter()
                .map(|&g| h.iter().filter(|t| acts(g, t) == **t).count() as u64)
                .sum();
            stab_form.1 += factor * exact_div(s_tau, a_sigma.len() as u64, "total stabilizer form")?;
            fix_form.1 += factor * exact_div(f_tau, a_sigma.len() as u64, "total fixed-point form")?;
        }
    }
    if stab_form != fix_form {
        return Err(Error::FormulaMismatch(format!(
            "stabilizer form {stab_form:?} vs fixed-point form {fix_form:?}"
        )));
    }
    let report = count_np_in(data, prime, opts)?;
    if (report.additive_structures, report.total) != stab_form {
        return Err(Error::FormulaMismatch(format!(
            "formulas give {stab_form:?}, enumeration gives ({}, {})",
            report.additive_structures, report.total
        )));
    }
    Ok(BurnsideTotals {
        additive_count: stab_form.0,
        total_count: stab_form.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_examples() {
        assert_eq!(hypothesis_check(12, 7).unwrap(), Hypothesis::HoldsBySylow);
        assert_eq!(hypothesis_check(4, 5).unwrap(), Hypothesis::HoldsBySylow);
        assert_eq!(hypothesis_check(12, 5).unwrap(), Hypothesis::Unknown);
        assert_eq!(hypothesis_check(12, 11).unwrap(), Hypothesis::Unknown);
        assert!(matches!(hypothesis_check(12, 3), Err(Error::PrimeDividesOrder { .. })));
    }

    #[test]
    fn unknown_hypothesis_needs_override() {
        assert!(matches!(
            count_np(12, PrimeSpec::Concrete(5)),
            Err(Error::HypothesisUnknown { n: 12, p: 5 })
        ));
    }

    #[test]
    fn moduli() {
        assert_eq!(PrimeSpec::Residue(1).modulus(12).unwrap(), 12);
        assert_eq!(PrimeSpec::Residue(5).modulus(12).unwrap(), 4);
        assert_eq!(PrimeSpec::Residue(7).modulus(12).unwrap(), 6);
        assert_eq!(PrimeSpec::Residue(11).modulus(12).unwrap(), 2);
        assert_eq!(PrimeSpec::Concrete(5).modulus(4).unwrap(), 4);
        assert!(PrimeSpec::Residue(3).modulus(12).is_err());
        assert!(PrimeSpec::Residue(1).modulus(5).is_err());
    }

    #[test]
    fn dihedral_kernel_tags() {
        let d12 = dihedral(6);
        let t = LabelTable::new(&d12, 3).unwrap();
        let chars = homs_to_cyclic(&d12, 2);
        let r = d12.hint("r").unwrap();
        let s = d12.hint("s").unwrap();
        let find = |vr, vs| chars.characters.iter().find(|c| c.value(r) == vr && c.value(s) == vs).unwrap();
        let cyc = t.label(find(0, 1)).unwrap();
        assert_eq!((cyc.k, cyc.tag.as_deref()), (6, Some("c")));
        let dih = t.label(find(1, 1)).unwrap();
        assert_eq!((dih.k, dih.tag.as_deref()), (6, Some("d")));
        assert_eq!(t.label(find(1, 0)).unwrap(), dih);
        let triv = t.label(find(0, 0)).unwrap();
        assert!(triv.is_direct() && triv.tag.is_none());
    }
}
