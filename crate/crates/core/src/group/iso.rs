use std::collections::BTreeMap;

use super::Group;
use crate::error::{Error, Result};

/// Largest order accepted by [`is_isomorphic`].
pub const ISO_BOUND: usize = 2000;

/// Isomorphism-invariant summary used as a prefilter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: usize,
    pub center: usize,
    /// `(element order, class size) → number of elements`
    pub profile: BTreeMap<(usize, usize), usize>,
}

impl Invariants {
    pub fn of(g: &Group) -> Self {
        let mut profile = BTreeMap::new();
        let mut center = 0;
        for class in g.conjugacy_classes() {
            if class.len() == 1 {
                center += 1;
            }
            *profile
                .entry((g.element_order(class[0]), class.len()))
                .or_insert(0) += class.len();
        }
        Invariants {
            order: g.order(),
            center,
            profile,
        }
    }
}

/// Witness: images of a generating set, plus the full element map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub generators: Vec<(usize, usize)>,
    pub map: Vec<usize>,
}

fn class_sizes(g: &Group) -> Vec<usize> {
    let mut size = vec![0; g.order()];
    for class in g.conjugacy_classes() {
        for &x in &class {
            size[x] = class.len();
        }
    }
    size
}

fn search(
    src: &Group,
    dst: &Group,
    gens: &[usize],
    cands: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let i = images.len();
    if i == gens.len() {
        let map = src.extend_hom(gens, images, dst)?;
        return map.into_iter().collect();
    }
    for &c in &cands[i] {
        // products with earlier generators must keep their orders
        if (0..i).any(|j| {
            src.element_order(src.mul(gens[j], gens[i])) != dst.element_order(dst.mul(images[j], c))
        }) {
            continue;
        }
        images.push(c);
        let ok = match src.extend_hom(&gens[..=i], images, dst) {
            Some(map) => {
                let mut hit = vec![false; dst.order()];
                map.iter()
                    .flatten()
                    .all(|&y| !std::mem::replace(&mut hit[y], true))
            }
            None => false,
        };
        if ok {
            if let Some(found) = search(src, dst, gens, cands, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// An injective homomorphism `k → g`, if one exists.
pub fn find_embedding(k: &Group, g: &Group) -> Option<Vec<usize>> {
    if !g.order().is_multiple_of(k.order()) {
        return None;
    }
    let gens = k.generating_set(&(0..k.order()).collect::<Vec<_>>());
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..g.order())
                .filter(|&y| orders[y] == k.element_order(x))
                .collect()
        })
        .collect();
    search(k, g, &gens, &cands, &mut Vec::new())
}

/// Backtracking isomorphism test after an invariant prefilter.
pub fn is_isomorphic(a: &Group, b: &Group) -> Result<Option<Isomorphism>> {
    for g in [a, b] {
        if g.order() > ISO_BOUND {
            return Err(Error::TooLarge {
                order: g.order(),
                bound: ISO_BOUND,
            });
        }
    }
    if a.order() != b.order() || Invariants::of(a) != Invariants::of(b) {
        return Ok(None);
    }
    let gens = a.generating_set(&(0..a.order()).collect::<Vec<_>>());
    let (sa, sb) = (class_sizes(a), class_sizes(b));
    let ob: Vec<usize> = (0..b.order()).map(|y| b.element_order(y)).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let key = (a.element_order(x), sa[x]);
            (0..b.order()).filter(|&y| (ob[y], sb[y]) == key).collect()
        })
        .collect();
    Ok(
        search(a, b, &gens, &cands, &mut Vec::new()).map(|map| Isomorphism {
            generators: gens.iter().map(|&g| (g, map[g])).collect(),
            map,
        }),
    )
}
