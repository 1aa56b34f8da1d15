//! Group family expressions such as `C_{p*q}×C_2`, `D_p⋊C_2` or `(C_6×C_2)⋊C_2`.
//!
//! ```text
//! family := term ( op term )*          left associative
//! op     := "×" | "x" | "⋊" [ "_" int ] | ":"
//! term   := "(" family ")" | "C_" sub | "D_" sub | "A4" | "S4" | "A5" | "G"
//! sub    := int | name | "{" expr "}"
//! ```
//!
//! `⋊` stands for any semidirect product, including the direct one. `G` is
//! the ambient group a subgroup is compared against.

use std::cell::OnceCell;
use std::fmt;

use super::{cyclic, dihedral, direct_product, is_isomorphic, named, Group, NamedGroup, Subgroup};
use crate::error::{Error, Result};
use crate::expr::{is_prime, parse_expr, Cursor, Params};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Named(NamedGroup),
    Whole,
    Direct(Box<Family>, Box<Family>),
    Semidirect(Box<Family>, Box<Family>),
}

impl Family {
    pub fn parse(text: &str, params: &Params) -> Result<Family> {
        let mut cur = Cursor::new(text);
        let f = parse_family(&mut cur, params)?;
        if !cur.at_end() {
            return Err(Error::Expr(format!(
                "trailing input in family `{text}` at {}",
                cur.pos()
            )));
        }
        Ok(f)
    }

    /// No wildcard products and no `G`.
    pub fn is_concrete(&self) -> bool {
        match self {
            Family::Cyclic(_) | Family::Dihedral(_) | Family::Named(_) => true,
            Family::Whole | Family::Semidirect(..) => false,
            Family::Direct(a, b) => a.is_concrete() && b.is_concrete(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Family::Cyclic(n) => Some(*n),
            Family::Dihedral(n) => Some(2 * n),
            Family::Named(k) => Some(k.order()),
            Family::Whole => None,
            Family::Direct(a, b) | Family::Semidirect(a, b) => Some(a.order()? * b.order()?),
        }
    }

    pub fn build(&self) -> Result<Group> {
        match self {
            Family::Cyclic(n) => cyclic(*n, "g"),
            Family::Dihedral(n) => dihedral(*n, "r", "s"),
            Family::Named(k) => named(*k, "tau", "alpha"),
            Family::Direct(a, b) => direct_product(&a.build()?, &b.build()?),
            _ => Err(Error::Expr(format!("`{self}` is not a concrete group"))),
        }
    }

    /// Whether `h` (a subgroup of a group of order `whole`) belongs to the family.
    pub fn matches(&self, h: &Group, whole: usize) -> Result<bool> {
        Matcher::new(h).matches(self, whole)
    }

    fn is_compound(&self) -> bool {
        matches!(self, Family::Direct(..) | Family::Semidirect(..))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, x: &Family, wrap: bool| {
            if wrap && x.is_compound() {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        match self {
            Family::Cyclic(n) => write!(f, "C_{n}"),
            Family::Dihedral(n) => write!(f, "D_{n}"),
            Family::Named(k) => f.write_str(k.name()),
            Family::Whole => f.write_str("G"),
            Family::Direct(a, b) => {
                part(f, a, matches!(**a, Family::Semidirect(..)))?;
                f.write_str("×")?;
                part(f, b, true)
            }
            Family::Semidirect(a, b) => {
                part(f, a, true)?;
                f.write_str("⋊")?;
                part(f, b, true)
            }
        }
    }
}

fn parse_family(cur: &mut Cursor<'_>, params: &Params) -> Result<Family> {
    let mut acc = parse_term(cur, params)?;
    loop {
        if cur.eat("×") || cur.eat("x") {
            let rhs = parse_term(cur, params)?;
            acc = Family::Direct(Box::new(acc), Box::new(rhs));
        } else if cur.eat("⋊") || cur.eat(":") {
            if cur.peek_raw() == Some('_') {
                cur.bump();
                cur.unsigned()?;
            }
            let rhs = parse_term(cur, params)?;
            acc = Family::Semidirect(Box::new(acc), Box::new(rhs));
        } else {
            return Ok(acc);
        }
    }
}

fn subscript(cur: &mut Cursor<'_>, params: &Params) -> Result<usize> {
    cur.eat("_");
    let v = if cur.eat("{") {
        let e = parse_expr(cur)?;
        cur.expect("}")?;
        e.eval(params)?
    } else if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        cur.unsigned()? as i64
    } else {
        let pos = cur.pos();
        let name = cur
            .ident()
            .ok_or_else(|| Error::syntax(pos, "expected a subscript"))?;
        *params
            .get(&name)
            .ok_or_else(|| Error::Expr(format!("unbound parameter `{name}`")))?
    };
    usize::try_from(v)
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Expr(format!("subscript {v} is not positive")))
}

fn parse_term(cur: &mut Cursor<'_>, params: &Params) -> Result<Family> {
    if cur.eat("(") {
        let f = parse_family(cur, params)?;
        cur.expect(")")?;
        return Ok(f);
    }
    for (names, kind) in [
        (&["A_4", "A4"][..], NamedGroup::A4),
        (&["S_4", "S4", "Σ_4", "Σ4"][..], NamedGroup::S4),
        (&["A_5", "A5"][..], NamedGroup::A5),
    ] {
        if names.iter().any(|n| cur.eat(n)) {
            return Ok(Family::Named(kind));
        }
    }
    if cur.eat("C") {
        return Ok(Family::Cyclic(subscript(cur, params)?));
    }
    if cur.eat("D") {
        return Ok(Family::Dihedral(subscript(cur, params)?));
    }
    if cur.eat("G") {
        return Ok(Family::Whole);
    }
    Err(Error::syntax(cur.pos(), "expected a group family"))
}

struct Matcher<'a> {
    g: &'a Group,
    normals: OnceCell<Vec<Subgroup>>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a Group) -> Self {
        Matcher {
            g,
            normals: OnceCell::new(),
        }
    }

    fn normals(&self) -> &[Subgroup] {
        self.normals.get_or_init(|| self.g.normal_subgroups())
    }

    fn matches(&self, f: &Family, whole: usize) -> Result<bool> {
        let n = self.g.order();
        if let Some(o) = f.order() {
            if o != n {
                return Ok(false);
            }
        }
        match f {
            Family::Whole => Ok(n == whole),
            _ if f.is_concrete() => Ok(is_isomorphic(self.g, &f.build()?)?.is_some()),
            Family::Semidirect(a, b) => {
                for k in self.normals() {
                    if !self.fits(a, k.order())?
                        || !Matcher::new(&self.g.induced(k)).matches(a, whole)?
                    {
                        continue;
                    }
                    if self.has_complement(k, b, whole)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Family::Direct(a, b) => {
                let normals = self.normals();
                for k in normals {
                    if !self.fits(a, k.order())?
                        || !Matcher::new(&self.g.induced(k)).matches(a, whole)?
                    {
                        continue;
                    }
                    for l in normals {
                        if l.order() * k.order() == n
                            && k.intersection_order(l) == 1
                            && Matcher::new(&self.g.induced(l)).matches(b, whole)?
                        {
                            return Ok(true);
                        }
                    }
                }
                Ok(false)
            }
            _ => unreachable!("concrete families handled above"),
        }
    }

    fn fits(&self, f: &Family, order: usize) -> Result<bool> {
        Ok(match f.order() {
            Some(o) => o == order,
            None => order > 1 && order < self.g.order() && self.g.order().is_multiple_of(order),
        })
    }

    /// A subgroup `H ∈ f` with `H ∩ K = 1` and `|H||K| = |G|`.
    fn has_complement(&self, k: &Subgroup, f: &Family, whole: usize) -> Result<bool> {
        let g = self.g;
        let m = g.order() / k.order();
        if f.order().is_some_and(|o| o != m) {
            return Ok(false);
        }
        let outside: Vec<usize> = (0..g.order()).filter(|&x| !k.contains(x)).collect();
        let mut tried = std::collections::BTreeSet::new();
        let mut check = |gens: &[usize]| -> Result<bool> {
            let h = g.subgroup_generated(gens);
            if h.order() != m
                || h.intersection_order(k) != 1
                || !tried.insert(h.elements().to_vec())
            {
                return Ok(false);
            }
            Matcher::new(&g.induced(&h)).matches(f, whole)
        };
        if m == 1 {
            return check(&[]);
        }
        for (i, &x) in outside.iter().enumerate() {
            if !m.is_multiple_of(g.element_order(x)) {
                continue;
            }
            if g.element_order(x) == m {
                if check(&[x])? {
                    return Ok(true);
                }
                continue;
            }
            for &y in &outside[i + 1..] {
                if m.is_multiple_of(g.element_order(y)) && check(&[x, y])? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// `D_1` or `D_2` appears, which read better as cyclic products.
fn small_dihedral(s: &str) -> bool {
    s.match_indices("D_").any(|(i, _)| {
        let digits: String = s[i + 2..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        digits.parse::<usize>().is_ok_and(|m| m < 3)
    })
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn first_match(g: &Group, candidates: &[String]) -> Option<String> {
    let none = Params::new();
    let m = Matcher::new(g);
    for c in candidates {
        let f = Family::parse(c, &none).expect("catalogue entries parse");
        if let Ok(true) = m.matches(&f, g.order()) {
            return Some(f.to_string());
        }
    }
    None
}

fn spherical_candidates(n: usize) -> Vec<String> {
    let mut c = Vec::new();
    if n.is_multiple_of(2) {
        c.push(format!("D_{}", n / 2));
        c.push(format!("C_{}×C_2", n / 2));
    }
    if n.is_multiple_of(4) {
        c.push(format!("D_{}⋊C_2", n / 4));
    }
    for (order, name) in [(24, "A4×C_2"), (24, "S4"), (48, "S4×C_2"), (120, "A5×C_2")] {
        if n == order {
            c.push(name.to_string());
        }
    }
    c
}

/// Name of `g` within the finite groups acting on the sphere, if it is one.
pub fn spherical_name(g: &Group) -> Option<String> {
    first_match(g, &spherical_candidates(g.order()))
}

fn trivial_factor(s: &str) -> bool {
    s.contains("C_1×") || s.contains("C_1)") || s.ends_with("×C_1") || s.contains("×C_1×")
}

/// Best-matching family name, trying the classification families first.
pub fn identify_family(g: &Group) -> String {
    let n = g.order();
    let mut c = Vec::new();
    if n.is_multiple_of(2) && n >= 4 {
        c.push(format!("C_{}×C_2", n / 2));
    }
    if n.is_multiple_of(2) && n >= 6 {
        c.push(format!("D_{}", n / 2));
    }
    if n.is_multiple_of(4) && n >= 8 {
        c.push(format!("D_{}×C_2", n / 4));
        c.push(format!("D_{}⋊C_2", n / 4));
    }
    let primes: Vec<usize> = divisors(n)
        .into_iter()
        .filter(|&a| a > 2 && is_prime(a as i64))
        .collect();
    for &a in &primes {
        if n.is_multiple_of(2 * a) && n / (2 * a) >= 2 {
            let b = n / (2 * a);
            c.push(format!("(C_{a}⋊C_{b})×C_2"));
            c.push(format!("(C_{a}⋊C_{b})⋊C_2"));
        }
        if n.is_multiple_of(4 * a) && n / (4 * a) >= 2 {
            let b = n / (4 * a);
            c.push(format!("(C_{a}⋊D_{b})×C_2"));
            c.push(format!("(C_{a}⋊D_{b})⋊C_2"));
        }
        if n == 24 * a {
            c.push(format!("C_{a}⋊S4"));
            c.push(format!("D_{a}×A4"));
            c.push(format!("C_{a}×S4"));
            c.push(format!("C_{}×A4", 2 * a));
        }
        if n == 48 * a {
            c.push(format!("D_{a}×S4"));
            c.push(format!("C_{}×S4", 2 * a));
        }
        if n == 120 * a {
            c.push(format!("D_{a}×A5"));
            c.push(format!("C_{}×A5", 2 * a));
        }
    }
    c.extend(spherical_candidates(n));
    if n.is_multiple_of(4) {
        c.push(format!("C_{}×C_2×C_2", n / 4));
        c.push(format!("D_{}×C_2×C_2", n / 8));
    }
    if n.is_multiple_of(8) {
        c.push(format!("C_{}×C_2×C_2×C_2", n / 8));
    }
    if n.is_multiple_of(16) {
        c.push(format!("D_{}×C_2×C_2×C_2", n / 16));
    }
    if n == 12 || n == 60 {
        c.push(if n == 12 { "A4" } else { "A5" }.to_string());
    }
    c.push(format!("C_{n}"));
    c.retain(|s| !s.contains("_0") && !small_dihedral(s) && !trivial_factor(s));
    // concrete names before wildcards, which also cover direct products
    c.sort_by_key(|s| s.contains('⋊'));
    first_match(g, &c).unwrap_or_else(|| "unrecognized".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::semidirect;

    fn p(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn parse_and_render() {
        let f = Family::parse("C_{p*q}×C_2", &p(&[("p", 3), ("q", 5)])).unwrap();
        assert_eq!(f.to_string(), "C_15×C_2");
        assert_eq!(f.order(), Some(30));
        let f = Family::parse("(C_6 x C_2) ⋊_2 C_2", &Params::new()).unwrap();
        assert_eq!(f.to_string(), "(C_6×C_2)⋊C_2");
        assert!(!f.is_concrete());
        assert_eq!(
            Family::parse("D_p", &p(&[("p", 3)])).unwrap(),
            Family::Dihedral(3)
        );
        assert_eq!(
            Family::parse("Σ_4", &Params::new()).unwrap(),
            Family::Named(NamedGroup::S4)
        );
        assert!(Family::parse("D_q", &Params::new()).is_err());
        assert!(Family::parse("C_3 ×", &Params::new()).is_err());
        assert!(Family::parse("C_{p-3}", &p(&[("p", 3)])).is_err());
    }

    #[test]
    fn identify_examples() {
        assert_eq!(identify_family(&dihedral(3, "r", "s").unwrap()), "D_3");
        assert_eq!(identify_family(&cyclic(30, "g").unwrap()), "C_15×C_2");
        let d3c2 =
            direct_product(&dihedral(3, "r", "s").unwrap(), &cyclic(2, "z").unwrap()).unwrap();
        assert_eq!(identify_family(&d3c2), "D_6");
        assert_eq!(
            identify_family(&named(NamedGroup::S4, "t", "a").unwrap()),
            "S4"
        );
        assert_eq!(
            identify_family(&named(NamedGroup::A5, "t", "a").unwrap()),
            "A5"
        );
        // C_7 ⋊ C_3 is in no listed family of order 21
        let c7 = cyclic(7, "a").unwrap();
        let f21 = semidirect(&c7, &cyclic(3, "b").unwrap(), &[vec![c7.pow(1, 2)]]).unwrap();
        assert_eq!(identify_family(&f21), "unrecognized");
    }

    #[test]
    fn wildcard_semidirect() {
        let none = Params::new();
        let d3c2 =
            direct_product(&dihedral(3, "r", "s").unwrap(), &cyclic(2, "z").unwrap()).unwrap();
        // direct products count as semidirect ones
        assert!(Family::parse("D_3⋊C_2", &none)
            .unwrap()
            .matches(&d3c2, 12)
            .unwrap());
        assert!(Family::parse("C_3⋊C_4", &none)
            .unwrap()
            .matches(&dihedral(6, "r", "s").unwrap(), 12)
            .is_ok());
        let dic3 = {
            let c3 = cyclic(3, "a").unwrap();
            semidirect(&c3, &cyclic(4, "b").unwrap(), &[vec![c3.inv(1)]]).unwrap()
        };
        assert!(Family::parse("C_3⋊C_4", &none)
            .unwrap()
            .matches(&dic3, 12)
            .unwrap());
        assert!(!Family::parse("D_3⋊C_2", &none)
            .unwrap()
            .matches(&dic3, 12)
            .unwrap());
        assert!(Family::parse("G", &none)
            .unwrap()
            .matches(&dic3, 12)
            .unwrap());
        assert!(!Family::parse("G", &none)
            .unwrap()
            .matches(&dic3, 24)
            .unwrap());
    }

    #[test]
    fn spherical_examples() {
        assert_eq!(
            spherical_name(&dihedral(5, "r", "s").unwrap()).as_deref(),
            Some("D_5")
        );
        let s4c2 = direct_product(
            &named(NamedGroup::S4, "t", "a").unwrap(),
            &cyclic(2, "z").unwrap(),
        )
        .unwrap();
        assert_eq!(spherical_name(&s4c2).as_deref(), Some("S4×C_2"));
        let c7 = cyclic(7, "a").unwrap();
        let f21 = semidirect(&c7, &cyclic(3, "b").unwrap(), &[vec![c7.pow(1, 2)]]).unwrap();
        assert_eq!(spherical_name(&f21), None);
    }
}
