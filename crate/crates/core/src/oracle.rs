//! Independent brute-force count: conjugacy classes of regular subgroups of
//! `Hol(N)` for every `N` of the given order, labelled by the isomorphism
//! type of the subgroup. Uses the brute-force automorphism search and the
//! generic holomorph search only.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::brace::{GroupCatalog, FULL_SEARCH_LIMIT};
use crate::counter::{CountReport, LabelTable, PrimeSpec, StructureLabel};
use crate::dsdp::zp_semidirect;
use crate::error::{Error, Result};
use crate::group::{gcd, small_groups, FiniteGroup};
use crate::holomorph::{default_point_order, regular_subgroup_representatives, HolGroup, SearchOptions};
use crate::morphisms::{automorphism_group, character_orbits, homs_to_cyclic, AutIdx};

/// Largest order handled by the pruned search.
pub const PRUNED_SEARCH_LIMIT: usize = 84;

/// A group catalog whose members carry the labels used in reports.
#[derive(Clone, Debug)]
pub struct LabelledCatalog {
    pub catalog: GroupCatalog,
    pub labels: Vec<StructureLabel>,
    /// `Some(p)` for catalogs of order `np` with `Z_p` at index 1.
    pub prime: Option<u64>,
    pub n: u64,
}

impl LabelledCatalog {
    pub fn new(groups: Vec<FiniteGroup>, labels: Vec<StructureLabel>, prime: Option<u64>) -> Result<Self> {
        if groups.len() != labels.len() {
            return Err(Error::Internal("one label per catalog member".into()));
        }
        let order = groups.first().map_or(0, |g| g.order()) as u64;
        let n = prime.map_or(order, |p| order / p);
        Ok(LabelledCatalog {
            catalog: GroupCatalog::new(groups)?,
            labels,
            prime,
            n,
        })
    }

    /// The groups of order `n` under their own names.
    pub fn plain(n: usize) -> Result<Self> {
        let groups = small_groups(n).ok_or(Error::NoCatalog(n))?;
        let labels = groups.iter().enumerate().map(|(i, g)| StructureLabel::plain(g, i)).collect();
        LabelledCatalog::new(groups, labels, None)
    }

    pub fn order(&self) -> usize {
        self.catalog.order
    }
}

/// `{Z_p ⋊_σ E}` over groups `E` of order `n` and `Aut(E)`-orbit
/// representatives `σ`, deduplicated up to isomorphism. Valid as a list of
/// all groups of order `np` when their Sylow `p`-subgroups are normal.
pub fn np_catalog(n: u64, p: u64) -> Result<LabelledCatalog> {
    let m = PrimeSpec::Concrete(p).modulus(n)?;
    let bases = small_groups(n as usize).ok_or(Error::NoCatalog(n as usize))?;
    let mut groups: Vec<FiniteGroup> = Vec::new();
    let mut labels = Vec::new();
    for (rank, e) in bases.iter().enumerate() {
        let table = LabelTable::new(e, rank)?;
        let space = homs_to_cyclic(e, m);
        let all: Vec<AutIdx> = table.aut().elements().collect();
        let orbits = character_orbits(table.aut(), &all, &space)?;
        for rep in orbits.representatives() {
            let sigma = &space.characters[rep];
            let label = table.label(sigma)?.clone();
            let g = zp_semidirect(p, e, sigma)?.with_name(label.to_string());
            if groups.iter().any(|h| crate::group::are_isomorphic(h, &g).is_some()) {
                continue;
            }
            groups.push(g);
            labels.push(label);
        }
    }
    LabelledCatalog::new(groups, labels, Some(p))
}

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Anchor the search at the `Z_p` generator and allow orders up to
    /// [`PRUNED_SEARCH_LIMIT`].
    pub pruned: bool,
    pub budget: Option<Duration>,
}

/// Counts braces with additive group in `catalog`, one conjugacy class of
/// regular subgroups at a time.
pub fn enumerate_braces_bruteforce(order: usize, catalog: &LabelledCatalog, opts: &OracleOptions) -> Result<CountReport> {
    if catalog.order() != order {
        return Err(Error::NoCatalog(order));
    }
    let limit = if opts.pruned { PRUNED_SEARCH_LIMIT } else { FULL_SEARCH_LIMIT };
    if order > limit {
        return Err(Error::SizeLimit {
            what: if opts.pruned { "pruned regular-subgroup search" } else { "full regular-subgroup search" },
            order,
            limit,
        });
    }
    let deadline = opts.budget.map(|b| Instant::now() + b);
    let per_group = catalog
        .catalog
        .groups
        .par_iter()
        .map(|n| {
            let hol = HolGroup::new(n.clone(), automorphism_group(n)?)?;
            let point_order = (opts.pruned && catalog.prime.is_some()).then(|| default_point_order(n, Some(1)));
            let search = SearchOptions { point_order, deadline };
            let (reps, _) = regular_subgroup_representatives(&hol, &search)?;
            reps.iter()
                .map(|g| {
                    let mul = FiniteGroup::from_table("G", order, g.circ_table(&hol))?;
                    catalog.catalog.label(&mul)
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cells: BTreeMap<(StructureLabel, StructureLabel), u64> = BTreeMap::new();
    for (a, muls) in per_group.iter().enumerate() {
        for &b in muls {
            *cells
                .entry((catalog.labels[a].clone(), catalog.labels[b].clone()))
                .or_default() += 1;
        }
    }
    let matrix: Vec<crate::counter::MatrixCell> = cells
        .into_iter()
        .map(|((add, mul), count)| crate::counter::MatrixCell {
            add_label: add.to_string(),
            mul_label: mul.to_string(),
            add,
            mul,
            count,
        })
        .collect();
    let mut axis = catalog.labels.clone();
    axis.sort();
    let bases = match catalog.prime {
        Some(_) => small_groups(catalog.n as usize)
            .ok_or(Error::NoCatalog(catalog.n as usize))?
            .iter()
            .map(|g| g.name().to_string())
            .collect(),
        None => catalog.catalog.names(),
    };
    Ok(CountReport {
        n: catalog.n,
        prime: catalog.prime.map(PrimeSpec::Concrete),
        modulus: catalog.prime.map_or(1, |p| gcd(catalog.n, p - 1) as u32),
        bases,
        add_axis: axis.clone(),
        mul_axis: axis,
        total: matrix.iter().map(|c| c.count).sum(),
        matrix,
        per_brace: Vec::new(),
        additive_structures: per_group.iter().filter(|m| !m.is_empty()).count() as u64,
    })
}

/// A cell on which two reports disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub add_label: String,
    pub mul_label: String,
    pub a: u64,
    pub b: u64,
}

/// Cells with different counts; empty iff the matrices agree.
pub fn compare_reports(a: &CountReport, b: &CountReport) -> Result<Vec<CellDiff>> {
    if a.n != b.n {
        return Err(Error::IncompatibleReports(format!("n = {} vs n = {}", a.n, b.n)));
    }
    let order = |r: &CountReport| match r.prime {
        Some(PrimeSpec::Concrete(p)) => Some(p),
        _ => None,
    };
    if a.prime.is_some() != b.prime.is_some() || (order(a).is_some() && order(b).is_some() && order(a) != order(b)) {
        return Err(Error::IncompatibleReports("different primes".into()));
    }
    let mut cells: BTreeMap<(StructureLabel, StructureLabel), (u64, u64)> = BTreeMap::new();
    for c in &a.matrix {
        cells.entry((c.add.clone(), c.mul.clone())).or_default().0 += c.count;
    }
    for c in &b.matrix {
        cells.entry((c.add.clone(), c.mul.clone())).or_default().1 += c.count;
    }
    Ok(cells
        .into_iter()
        .filter(|(_, (x, y))| x != y)
        .map(|((add, mul), (x, y))| CellDiff {
            add_label: add.to_string(),
            mul_label: mul.to_string(),
            a: x,
            b: y,
        })
        .collect())
}
