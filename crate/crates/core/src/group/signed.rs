use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{cyclic, dihedral, direct_product, Group, Subgroup};
use crate::error::{Error, Result};
use crate::signature::require_odd_prime;

/// The two order-`2p` targets of real cyclic p-gonal actions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "D_p")]
    Dihedral,
    #[serde(rename = "C_2p")]
    Cyclic,
}

impl Target {
    pub fn label(self, p: u32) -> String {
        match self {
            Target::Dihedral => format!("D_{p}"),
            Target::Cyclic => format!("C_{}", 2 * p),
        }
    }
}

/// A group with an orientation character and a distinguished element `φ` of order `p`.
#[derive(Debug, Clone)]
pub struct SignedGroup {
    group: Group,
    reversing: Vec<bool>,
    phi: usize,
    p: u32,
    name: String,
}

impl SignedGroup {
    /// Orientation is generated by declaring which named generators reverse it.
    pub fn new(
        group: Group,
        anticonformal: &[usize],
        phi: usize,
        p: u32,
        name: impl Into<String>,
    ) -> Result<Self> {
        let n = group.order();
        let gens: Vec<(usize, bool)> = group
            .generators()
            .iter()
            .map(|&(_, g)| (g, anticonformal.contains(&g)))
            .collect();
        let mut sign: Vec<Option<bool>> = vec![None; n];
        sign[0] = Some(false);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let sx = sign[x].expect("visited");
            for &(g, rev) in &gens {
                let y = group.mul(x, g);
                match sign[y] {
                    None => {
                        sign[y] = Some(sx ^ rev);
                        queue.push_back(y);
                    }
                    Some(sy) if sy != (sx ^ rev) => {
                        return Err(Error::Recipe(
                            "anticonformal generators do not define a character".into(),
                        ));
                    }
                    _ => {}
                }
            }
        }
        let reversing: Vec<bool> = sign
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Recipe("named generators do not generate the group".into()))?;
        if reversing.iter().filter(|&&r| r).count() * 2 != n {
            return Err(Error::Recipe(
                "orientation character does not have an index-2 kernel".into(),
            ));
        }
        if group.element_order(phi) != p as usize {
            return Err(Error::Recipe(format!(
                "p-gonality element has order {}, expected {p}",
                group.element_order(phi)
            )));
        }
        if reversing[phi] {
            return Err(Error::Recipe("p-gonality element is anticonformal".into()));
        }
        let sg = SignedGroup {
            group,
            reversing,
            phi,
            p,
            name: name.into(),
        };
        if !sg.group.is_normal(&sg.phi_subgroup()) {
            return Err(Error::Recipe("the p-gonality group is not normal".into()));
        }
        Ok(sg)
    }

    /// `D_p = ⟨r, s⟩` with every reflection anticonformal and `φ = r`.
    pub fn dihedral_target(p: u32) -> Result<Self> {
        require_odd_prime(p)?;
        let g = dihedral(p as usize, "r", "s")?;
        let s = g.generator("s").expect("reflection");
        let r = g.generator("r").expect("rotation");
        SignedGroup::new(g, &[s], r, p, format!("dp:{p}"))
    }

    /// `C_2p = ⟨r⟩ × ⟨s⟩` with `s` anticonformal and `φ = r`.
    pub fn cyclic_target(p: u32) -> Result<Self> {
        require_odd_prime(p)?;
        let g = direct_product(&cyclic(p as usize, "r")?, &cyclic(2, "s")?)?;
        let s = g.generator("s").expect("involution");
        let r = g.generator("r").expect("rotation");
        SignedGroup::new(g, &[s], r, p, format!("c2p:{p}"))
    }

    pub fn target(p: u32, t: Target) -> Result<Self> {
        match t {
            Target::Dihedral => Self::dihedral_target(p),
            Target::Cyclic => Self::cyclic_target(p),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_reversing(&self, g: usize) -> bool {
        self.reversing[g]
    }

    /// `w(g) ∈ {+1, −1}`
    pub fn sign(&self, g: usize) -> i8 {
        if self.reversing[g] {
            -1
        } else {
            1
        }
    }

    pub fn phi_subgroup(&self) -> Subgroup {
        self.group.subgroup_generated(&[self.phi])
    }

    pub fn conformal_subgroup(&self) -> Subgroup {
        let elems: Vec<usize> = (0..self.order()).filter(|&g| !self.reversing[g]).collect();
        let gens = self.group.generating_set(&elems);
        self.group.subgroup_generated(&gens)
    }

    pub fn is_anticonformal_involution(&self, g: usize) -> bool {
        self.reversing[g] && self.group.element_order(g) == 2
    }

    pub fn anticonformal_involutions(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| self.is_anticonformal_involution(g))
            .collect()
    }

    /// Which of the two order-`2p` targets this is, if any.
    pub fn target_kind(&self) -> Option<Target> {
        if self.order() != 2 * self.p as usize {
            return None;
        }
        Some(if self.group.is_abelian() {
            Target::Cyclic
        } else {
            Target::Dihedral
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        let d = SignedGroup::dihedral_target(5).unwrap();
        assert_eq!(d.order(), 10);
        assert_eq!(d.anticonformal_involutions().len(), 5);
        assert_eq!(d.conformal_subgroup().order(), 5);
        assert_eq!(d.target_kind(), Some(Target::Dihedral));
        let c = SignedGroup::cyclic_target(3).unwrap();
        assert_eq!(c.anticonformal_involutions().len(), 1);
        assert_eq!(c.target_kind(), Some(Target::Cyclic));
        assert!(SignedGroup::dihedral_target(4).is_err());
    }

    #[test]
    fn character_must_be_consistent() {
        let g = dihedral(3, "r", "s").unwrap();
        let r = g.generator("r").unwrap();
        // r has odd order, so it cannot reverse orientation
        assert!(SignedGroup::new(g.clone(), &[r], r, 3, "bad").is_err());
        let s = g.generator("s").unwrap();
        assert!(SignedGroup::new(g.clone(), &[s], s, 3, "bad").is_err());
        assert!(SignedGroup::new(g, &[], r, 3, "bad").is_err());
    }

    #[test]
    fn character_is_multiplicative() {
        let d = SignedGroup::dihedral_target(7).unwrap();
        let g = d.group();
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(d.sign(g.mul(a, b)), d.sign(a) * d.sign(b));
            }
        }
    }
}
