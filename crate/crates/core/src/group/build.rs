//! Table constructions. Element indices follow lexicographic order of the
//! exponent (or component) tuples, so index 0 is always the identity.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{Group, MAX_ORDER, UNSET};
use crate::error::{Error, Result};

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::TooLarge {
            order: n,
            bound: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

fn power_label(name: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn join_labels(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a} {b}"),
    }
}

pub fn cyclic(n: usize, name: &str) -> Result<Group> {
    if n == 0 {
        return Err(Error::Construction("cyclic group of order 0".into()));
    }
    check_order(n)?;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let labels = (0..n).map(|k| power_label(name, k)).collect();
    let gens = if n > 1 {
        vec![(name.to_string(), 1)]
    } else {
        vec![(name.to_string(), 0)]
    };
    Group::from_table(table, labels, gens)
}

/// `D_n` of order `2n`; element `r^a s^b` has index `a + n·b`.
pub fn dihedral(n: usize, rotation: &str, reflection: &str) -> Result<Group> {
    if n == 0 {
        return Err(Error::Construction("dihedral group D_0".into()));
    }
    check_order(2 * n)?;
    let m = 2 * n;
    let mut table = vec![0u32; m * m];
    for x in 0..m {
        let (a1, b1) = (x % n, x / n);
        for y in 0..m {
            let (a2, b2) = (y % n, y / n);
            // r^a1 s^b1 r^a2 s^b2 = r^(a1 ± a2) s^(b1+b2)
            let a = if b1 == 0 {
                (a1 + a2) % n
            } else {
                (a1 + n - a2) % n
            };
            table[x * m + y] = (a + n * ((b1 + b2) % 2)) as u32;
        }
    }
    let labels = (0..m)
        .map(|x| {
            let r = power_label(rotation, x % n);
            if x < n {
                r
            } else {
                join_labels(&r, reflection)
            }
        })
        .collect();
    let gens = vec![(rotation.to_string(), 1 % n), (reflection.to_string(), n)];
    Group::from_table(table, labels, gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedGroup {
    A4,
    S4,
    A5,
}

impl NamedGroup {
    pub fn order(self) -> usize {
        match self {
            NamedGroup::A4 => 12,
            NamedGroup::S4 => 24,
            NamedGroup::A5 => 60,
        }
    }

    /// `(points, ord α, ord ατ, even permutations only)` for `⟨τ, α | τ², α^a, (ατ)^c⟩`.
    fn shape(self) -> (usize, usize, usize, bool) {
        match self {
            NamedGroup::A4 => (4, 3, 3, true),
            NamedGroup::S4 => (4, 3, 4, false),
            NamedGroup::A5 => (5, 5, 3, true),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGroup::A4 => "A4",
            NamedGroup::S4 => "S4",
            NamedGroup::A5 => "A5",
        }
    }
}

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply b first, then a
    b.iter().map(|&x| a[x as usize]).collect()
}

fn perm_order(a: &Perm) -> usize {
    let id: Perm = (0..a.len() as u8).collect();
    let mut x = a.clone();
    let mut k = 1;
    while x != id {
        x = compose(&x, a);
        k += 1;
    }
    k
}

fn permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &Perm) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Elements reachable from the identity, in breadth-first order over `gens`.
fn perm_closure(gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id: Perm = (0..gens[0].len() as u8).collect();
    let mut seen = HashMap::from([(id.clone(), 0usize)]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = compose(&out[i], g);
            if !seen.contains_key(&y) {
                if out.len() == limit {
                    return None;
                }
                seen.insert(y.clone(), out.len());
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

type PermTable = (Vec<u32>, Vec<Vec<usize>>);

/// Table and breadth-first words for the permutation group on `[τ, α]`.
fn perm_group(kind: NamedGroup) -> &'static PermTable {
    static CACHE: [OnceLock<PermTable>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[kind as usize].get_or_init(|| {
        let (points, a_ord, prod_ord, even) = kind.shape();
        let perms: Vec<Perm> = permutations(points)
            .into_iter()
            .filter(|p| !even || is_even(p))
            .collect();
        let target = kind.order();
        let mut found = None;
        'search: for tau in perms.iter().filter(|p| perm_order(p) == 2) {
            for alpha in perms.iter().filter(|p| perm_order(p) == a_ord) {
                if perm_order(&compose(alpha, tau)) != prod_ord {
                    continue;
                }
                if let Some(elems) = perm_closure(&[tau.clone(), alpha.clone()], target) {
                    if elems.len() == target {
                        found = Some((tau.clone(), alpha.clone()));
                        break 'search;
                    }
                }
            }
        }
        let (tau, alpha) = found.expect("generating pair exists");
        let gens = [tau, alpha];
        // breadth-first with word tracking
        let id: Perm = (0..points as u8).collect();
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut elems = vec![id];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut i = 0;
        while i < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let y = compose(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    let mut w = words[i].clone();
                    w.push(gi);
                    words.push(w);
                    elems.push(y);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])] as u32;
            }
        }
        (table, words)
    })
}

fn word_label(word: &[usize], names: &[&str]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        parts.push(power_label(names[word[i]], j - i));
        i = j;
    }
    parts.join(" ")
}

/// `A4`, `S4` or `A5` on generators `τ` (order 2) and `α` as in `⟨τ, α | τ², α^a, (ατ)^c⟩`.
pub fn named(kind: NamedGroup, tau: &str, alpha: &str) -> Result<Group> {
    let (table, words) = perm_group(kind);
    let labels = words.iter().map(|w| word_label(w, &[tau, alpha])).collect();
    let gens = vec![(tau.to_string(), 1), (alpha.to_string(), 2)];
    Group::from_table(table.clone(), labels, gens)
}

pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (na, nb) = (a.order(), b.order());
    check_order(na * nb)?;
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (x1, x2) = (x / nb, x % nb);
        for y in 0..n {
            let (y1, y2) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(x1, y1) * nb + b.mul(x2, y2)) as u32;
        }
    }
    let labels = (0..n)
        .map(|x| join_labels(a.label(x / nb), b.label(x % nb)))
        .collect();
    let mut gens: Vec<(String, usize)> = a
        .generators()
        .iter()
        .map(|(s, g)| (s.clone(), g * nb))
        .collect();
    gens.extend(b.generators().iter().map(|(s, g)| (s.clone(), *g)));
    Group::from_table(table, labels, gens)
}

/// `N ⋊ H` where `h n h⁻¹ = act_h(n)`.
///
/// `action[k]` lists the images of `N`'s named generators under the `k`-th
/// named generator of `H`. Each must extend to an automorphism of `N`, and the
/// assignment must extend to a homomorphism `H → Aut(N)`.
pub fn semidirect(n: &Group, h: &Group, action: &[Vec<usize>]) -> Result<Group> {
    let (nn, nh) = (n.order(), h.order());
    check_order(nn * nh)?;
    let n_gens: Vec<usize> = n.generators().iter().map(|&(_, g)| g).collect();
    let h_gens: Vec<usize> = h.generators().iter().map(|&(_, g)| g).collect();
    if action.len() != h_gens.len() {
        return Err(Error::Construction(
            "action must list every acting generator".into(),
        ));
    }
    let mut autos: Vec<Vec<u32>> = Vec::new();
    for (k, images) in action.iter().enumerate() {
        if images.len() != n_gens.len() {
            return Err(Error::Construction(
                "action must map every normal generator".into(),
            ));
        }
        let map = n.extend_hom(&n_gens, images, n).ok_or_else(|| {
            Error::Construction(format!(
                "action of {} is not a homomorphism",
                h.generators()[k].0
            ))
        })?;
        let map: Vec<u32> = map
            .into_iter()
            .map(|v| v.map(|x| x as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Construction("normal generators do not generate".into()))?;
        let mut hit = vec![false; nn];
        for &v in &map {
            hit[v as usize] = true;
        }
        if hit.iter().any(|&b| !b) {
            return Err(Error::Construction(format!(
                "action of {} is not bijective",
                h.generators()[k].0
            )));
        }
        autos.push(map);
    }
    // A(hy) = A(h)∘A(y), checked for consistency over the whole of H
    let mut per_h: Vec<Option<Vec<u32>>> = vec![None; nh];
    per_h[0] = Some((0..nn as u32).collect());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ax = per_h[x].clone().expect("visited");
        for (k, &g) in h_gens.iter().enumerate() {
            let y = h.mul(x, g);
            let ay: Vec<u32> = autos[k].iter().map(|&v| ax[v as usize]).collect();
            match &per_h[y] {
                None => {
                    per_h[y] = Some(ay);
                    queue.push_back(y);
                }
                Some(prev) if *prev != ay => {
                    return Err(Error::Construction(
                        "action is not a homomorphism of the acting group".into(),
                    ));
                }
                _ => {}
            }
        }
    }
    let per_h: Vec<Vec<u32>> = per_h
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Construction("acting generators do not generate".into()))?;
    let total = nn * nh;
    let mut table = vec![UNSET; total * total];
    for x in 0..total {
        let (n1, h1) = (x / nh, x % nh);
        for y in 0..total {
            let (n2, h2) = (y / nh, y % nh);
            let nprod = n.mul(n1, per_h[h1][n2] as usize);
            table[x * total + y] = (nprod * nh + h.mul(h1, h2)) as u32;
        }
    }
    let labels = (0..total)
        .map(|x| join_labels(n.label(x / nh), h.label(x % nh)))
        .collect();
    let mut gens: Vec<(String, usize)> = n
        .generators()
        .iter()
        .map(|(s, g)| (s.clone(), g * nh))
        .collect();
    gens.extend(h.generators().iter().map(|(s, g)| (s.clone(), *g)));
    Group::from_table(table, labels, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_presentations_hold() {
        for kind in [NamedGroup::A4, NamedGroup::S4, NamedGroup::A5] {
            let g = named(kind, "tau", "alpha").unwrap();
            assert_eq!(g.order(), kind.order());
            assert!(g.is_associative());
            let (_, a, c, _) = kind.shape();
            let tau = g.generator("tau").unwrap();
            let alpha = g.generator("alpha").unwrap();
            assert_eq!(g.element_order(tau), 2);
            assert_eq!(g.element_order(alpha), a);
            assert_eq!(g.element_order(g.mul(alpha, tau)), c);
            assert_eq!(g.subgroup_generated(&[tau, alpha]).order(), kind.order());
        }
    }

    #[test]
    fn products_are_groups() {
        let c15 = cyclic(15, "phihat").unwrap();
        let c2 = cyclic(2, "sigma").unwrap();
        let g = direct_product(&c15, &c2).unwrap();
        assert_eq!(g.order(), 30);
        assert!(g.is_abelian());
        assert!(g.is_associative());
        assert_eq!(g.label(g.generator("sigma").unwrap()), "sigma");

        // C_3 ⋊ C_2 with inversion is D_3
        let c3 = cyclic(3, "phi").unwrap();
        let inv = c3.inv(1);
        let d = semidirect(&c3, &c2, &[vec![inv]]).unwrap();
        assert!(d.is_associative());
        assert!(!d.is_abelian());
    }

    #[test]
    fn bad_actions_are_rejected() {
        let c3 = cyclic(3, "phi").unwrap();
        let c2 = cyclic(2, "sigma").unwrap();
        // φ ↦ 1 is not bijective
        assert!(semidirect(&c3, &c2, &[vec![0]]).is_err());
        // an order-3 automorphism cannot come from C_2: C_7 with φ ↦ φ²
        let c7 = cyclic(7, "phi").unwrap();
        assert!(semidirect(&c7, &c2, &[vec![c7.pow(1, 2)]]).is_err());
        let c4 = cyclic(4, "a").unwrap();
        // φ ↦ φ² on C_4 is not a homomorphism onto
        assert!(semidirect(&c4, &c2, &[vec![2]]).is_err());
    }

    #[test]
    fn too_large() {
        assert!(matches!(cyclic(20_000, "g"), Err(Error::TooLarge { .. })));
    }
}
