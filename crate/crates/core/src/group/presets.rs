//! Named groups and the textual group-spec syntax.

use std::fmt;

use super::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// Cyclic group of order `n` generated by `c`, with `c^i` at index `i`.
pub fn cyclic(n: usize) -> FiniteGroup {
    cyclic_named(n, "c")
}

pub fn cyclic_named(n: usize, gen: &str) -> FiniteGroup {
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as Elem).collect();
    let hints = if n > 1 { vec![(gen.to_string(), 1)] } else { Vec::new() };
    FiniteGroup::from_table(format!("C{n}"), n, table)
        .expect("cyclic table")
        .with_hints(hints)
}

/// `C_{n1} x C_{n2} x ...`; generators are `a`, `b`, `c`, ... in order.
pub fn direct_product_of_cyclics(orders: &[usize]) -> FiniteGroup {
    const NAMES: [&str; 4] = ["a", "b", "c", "d"];
    assert!(orders.len() <= NAMES.len());
    let identity = vec![0usize; orders.len()];
    let gens: Vec<Vec<usize>> = (0..orders.len())
        .map(|i| {
            let mut v = identity.clone();
            v[i] = 1 % orders[i];
            v
        })
        .collect();
    let (g, elems) = FiniteGroup::generated_by("", identity, &gens, |x, y| {
        x.iter().zip(y).zip(orders).map(|((a, b), n)| (a + b) % n).collect()
    })
    .expect("abelian product closes");
    let name = orders.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x");
    let hints = gens
        .iter()
        .enumerate()
        .filter(|(i, _)| orders[*i] > 1)
        .map(|(i, v)| (NAMES[i].to_string(), elems.iter().position(|e| e == v).unwrap() as Elem))
        .collect();
    g.with_name(name).with_hints(hints)
}

type Perm = Vec<u8>;

fn compose(f: &Perm, g: &Perm) -> Perm {
    // (f ∘ g)(x) = f(g(x))
    g.iter().map(|&x| f[x as usize]).collect()
}

fn perm_group(name: &str, degree: usize, gens: &[(&str, Perm)]) -> FiniteGroup {
    let identity: Perm = (0..degree as u8).collect();
    let perms: Vec<Perm> = gens.iter().map(|(_, p)| p.clone()).collect();
    let (g, _) = FiniteGroup::generated_by(name, identity, &perms, compose).expect("permutation group");
    let hints = gens.iter().enumerate().map(|(i, (n, _))| (n.to_string(), (i + 1) as Elem)).collect();
    g.with_hints(hints)
}

/// A4 on points 1..4 with `rho = (1,2,3)` and `mu = (1,2)(3,4)`.
pub fn alternating4() -> FiniteGroup {
    perm_group("A4", 4, &[("rho", vec![1, 2, 0, 3]), ("mu", vec![1, 0, 3, 2])])
}

pub fn symmetric3() -> FiniteGroup {
    perm_group("S3", 3, &[("r", vec![1, 2, 0]), ("s", vec![1, 0, 2])])
}

pub fn symmetric4() -> FiniteGroup {
    perm_group("S4", 4, &[("t", vec![1, 2, 3, 0]), ("s", vec![1, 0, 2, 3])])
}

/// Dihedral group of order `2m`: `r^m = s^2 = 1`, `s r s = r^-1`.
pub fn dihedral(m: usize) -> FiniteGroup {
    // (i, j) ~ r^i s^j
    let (g, _) = FiniteGroup::generated_by(format!("D{}", 2 * m), (0usize, 0usize), &[(1 % m, 0), (0, 1)], |x, y| {
        let i = if x.1 == 0 { x.0 + y.0 } else { x.0 + m - y.0 };
        (i % m, (x.1 + y.1) % 2)
    })
    .expect("dihedral closes");
    g.with_hints(vec![("r".into(), 1), ("s".into(), 2)])
}

/// Dic12 as `C3 ⋊ C4`: `x^3 = y^4 = 1`, `y x y^-1 = x^2`.
pub fn dicyclic12() -> FiniteGroup {
    let (g, _) = FiniteGroup::generated_by("Dic12", (0usize, 0usize), &[(1, 0), (0, 1)], |u, v| {
        let i = if u.1 % 2 == 0 { u.0 + v.0 } else { u.0 + 3 - v.0 };
        (i % 3, (u.1 + v.1) % 4)
    })
    .expect("Dic12 closes");
    g.with_hints(vec![("x".into(), 1), ("y".into(), 2)])
}

/// Quaternion group as `Dic8`: `i^4 = 1`, `j^2 = i^2`, `j i j^-1 = i^-1`.
pub fn dicyclic_q8() -> FiniteGroup {
    // (k, e) ~ i^k j^e with j^2 = i^2
    let (g, _) = FiniteGroup::generated_by("Q8", (0usize, 0usize), &[(1, 0), (0, 1)], |u, v| {
        let k = if u.1 == 0 { u.0 + v.0 } else { u.0 + 4 - v.0 };
        let carry = if u.1 == 1 && v.1 == 1 { 2 } else { 0 };
        ((k + carry) % 4, (u.1 + v.1) % 2)
    })
    .expect("Q8 closes");
    g.with_hints(vec![("i".into(), 1), ("j".into(), 2)])
}

/// One representative per isomorphism class, for the orders where a small
/// hand-written catalog is available.
pub fn small_groups(n: usize) -> Option<Vec<FiniteGroup>> {
    let groups = match n {
        1 => vec![FiniteGroup::trivial()],
        2 | 3 | 5 | 7 | 11 | 13 => vec![cyclic(n)],
        4 => vec![cyclic(4), direct_product_of_cyclics(&[2, 2])],
        6 => vec![cyclic(6), symmetric3()],
        8 => vec![
            cyclic(8),
            direct_product_of_cyclics(&[4, 2]),
            direct_product_of_cyclics(&[2, 2, 2]),
            dihedral(4),
            dicyclic_q8(),
        ],
        9 => vec![cyclic(9), direct_product_of_cyclics(&[3, 3])],
        10 => vec![cyclic(10), dihedral(5)],
        12 => vec![
            cyclic(12),
            direct_product_of_cyclics(&[6, 2]),
            alternating4(),
            dihedral(6),
            dicyclic12(),
        ],
        _ => return None,
    };
    Some(groups)
}

/// Parsed group constructor expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    CyclicProduct(Vec<usize>),
    Alternating4,
    Symmetric3,
    Symmetric4,
    Dihedral(usize),
    Dicyclic12,
    Quaternion8,
    /// `Z_p ⋊_σ E` with σ the `sigma`-th character of `Hom(E, C_{p-1})`.
    Semidirect { p: u64, quotient: Box<GroupSpec>, sigma: usize },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::MalformedSpec(text.to_string());
        if let Some(inner) = s.strip_prefix("sd(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner);
            if parts.len() != 3 {
                return Err(bad());
            }
            let p = match GroupSpec::parse(parts[0])? {
                GroupSpec::Cyclic(p) => p as u64,
                _ => return Err(bad()),
            };
            let quotient = Box::new(GroupSpec::parse(parts[1])?);
            let sigma = parts[2]
                .strip_prefix("sigma=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(bad)?;
            return Ok(GroupSpec::Semidirect { p, quotient, sigma });
        }
        if let Some(k) = s.strip_prefix("Cn(").and_then(|r| r.strip_suffix(')')) {
            return k.parse().ok().filter(|&k| k > 0).map(GroupSpec::Cyclic).ok_or_else(bad);
        }
        match s.as_str() {
            "A4" => return Ok(GroupSpec::Alternating4),
            "S3" => return Ok(GroupSpec::Symmetric3),
            "S4" => return Ok(GroupSpec::Symmetric4),
            "Dic12" => return Ok(GroupSpec::Dicyclic12),
            "Q8" => return Ok(GroupSpec::Quaternion8),
            _ => {}
        }
        if let Some(k) = s.strip_prefix('D') {
            let order: usize = k.parse().map_err(|_| bad())?;
            if order < 4 || order % 2 == 1 {
                return Err(bad());
            }
            return Ok(GroupSpec::Dihedral(order / 2));
        }
        if s.starts_with('C') {
            let orders = s
                .split('x')
                .map(|f| f.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()).filter(|&n| n > 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            return match orders.len() {
                1 => Ok(GroupSpec::Cyclic(orders[0])),
                2..=4 => Ok(GroupSpec::CyclicProduct(orders)),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::CyclicProduct(v) => {
                let parts: Vec<String> = v.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            GroupSpec::Alternating4 => write!(f, "A4"),
            GroupSpec::Symmetric3 => write!(f, "S3"),
            GroupSpec::Symmetric4 => write!(f, "S4"),
            GroupSpec::Dihedral(m) => write!(f, "D{}", 2 * m),
            GroupSpec::Dicyclic12 => write!(f, "Dic12"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Semidirect { p, quotient, sigma } => write!(f, "sd(C{p}, {quotient}, sigma={sigma})"),
        }
    }
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    Ok(match spec {
        GroupSpec::Cyclic(n) if *n > super::MATERIALIZE_LIMIT => {
            return Err(Error::SizeLimit {
                what: "materialized Cayley table",
                order: *n,
                limit: super::MATERIALIZE_LIMIT,
            })
        }
        GroupSpec::Cyclic(1) => FiniteGroup::trivial(),
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::CyclicProduct(v) => {
            let order: usize = v.iter().product();
            if order > super::MATERIALIZE_LIMIT {
                return Err(Error::SizeLimit {
                    what: "materialized Cayley table",
                    order,
                    limit: super::MATERIALIZE_LIMIT,
                });
            }
            direct_product_of_cyclics(v)
        }
        GroupSpec::Alternating4 => alternating4(),
        GroupSpec::Symmetric3 => symmetric3(),
        GroupSpec::Symmetric4 => symmetric4(),
        GroupSpec::Dihedral(m) => dihedral(*m),
        GroupSpec::Dicyclic12 => dicyclic12(),
        GroupSpec::Quaternion8 => dicyclic_q8(),
        GroupSpec::Semidirect { p, quotient, sigma } => {
            let e = make_group(quotient)?;
            let chars = crate::morphisms::homs_to_cyclic(&e, (*p - 1) as u32);
            let s = chars
                .characters
                .get(*sigma)
                .ok_or_else(|| Error::MalformedSpec(format!("{spec}: only {} characters", chars.characters.len())))?;
            crate::dsdp::zp_semidirect(*p, &e, s)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_census() {
        let g = alternating4();
        let census: Vec<_> = g.order_census().into_iter().collect();
        assert_eq!(census, vec![(1, 1), (2, 3), (3, 8)]);
        assert_eq!(g.element_order(g.hint("rho").unwrap()), 3);
        assert_eq!(g.element_order(g.hint("mu").unwrap()), 2);
    }

    #[test]
    fn dic12_relations_and_single_involution() {
        let g = dicyclic12();
        let x = g.hint("x").unwrap();
        let y = g.hint("y").unwrap();
        assert_eq!(g.element_order(x), 3);
        assert_eq!(g.element_order(y), 4);
        assert_eq!(g.conj(y, x), g.mul(x, x));
        assert_eq!(g.order_census()[&2], 1);
    }

    #[test]
    fn d12_relations() {
        let g = dihedral(6);
        let r = g.hint("r").unwrap();
        let s = g.hint("s").unwrap();
        assert_eq!(g.element_order(r), 6);
        assert_eq!(g.element_order(s), 2);
        assert_eq!(g.conj(s, r), g.inv(r));
        assert_eq!(g.order_census()[&2], 7);
    }

    #[test]
    fn c6xc2_generators() {
        let g = direct_product_of_cyclics(&[6, 2]);
        assert_eq!(g.element_order(g.hint("a").unwrap()), 6);
        assert_eq!(g.element_order(g.hint("b").unwrap()), 2);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn q8_census() {
        let g = dicyclic_q8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.order_census()[&4], 6);
        assert_eq!(g.order_census()[&2], 1);
    }

    #[test]
    fn c1_is_trivial() {
        let g = make_group(&GroupSpec::parse("C1").unwrap()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["C12", "C6xC2", "A4", "D12", "Dic12", "sd(C13, C12, sigma=3)", "Q8", "C2xC2xC2"] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
        assert_eq!(GroupSpec::parse("Cn(7)").unwrap(), GroupSpec::Cyclic(7));
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "X9", "D7", "C", "Cn(0)", "sd(C5, C4)", "sd(A4, C4, sigma=1)", "C0"] {
            assert!(matches!(GroupSpec::parse(text), Err(Error::MalformedSpec(_))), "{text}");
        }
    }

    #[test]
    fn oversized_cyclic_is_rejected() {
        assert!(matches!(make_group(&GroupSpec::Cyclic(5000)), Err(Error::SizeLimit { .. })));
    }
}
