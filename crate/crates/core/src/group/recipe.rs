//! Declarative group recipes (TOML), realized as [`SignedGroup`]s.
//!
//! ```toml
//! phi = "phihat^{q}"
//! anticonformal = ["sigma"]
//! aliases = { tau = "sigma phihat^{p*q/2}" }
//!
//! [group]
//! kind = "direct"
//! factors = [
//!     { kind = "cyclic", n = "p*q", gen = "phihat" },
//!     { kind = "cyclic", n = 2, gen = "sigma" },
//! ]
//! ```
//!
//! `kind` is one of `cyclic {n, gen}`, `dihedral {n, rotation, reflection}`,
//! `named {group = "A4"|"S4"|"A5", tau, alpha}`, `direct {factors}` and
//! `semidirect {normal, acting, action}`. In a semidirect product
//! `action.<h>.<x>` is the word for `h x h⁻¹`; unlisted generators are fixed.
//! Integers may be given as expressions in the parameters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    cyclic, dihedral, direct_product, eval_word, named, semidirect, Group, NamedGroup, SignedGroup,
};
use crate::error::{Error, Result};
use crate::expr::{eval_str, Params};

/// Integer literal or expression over the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Expr(String),
}

impl Num {
    pub fn eval(&self, params: &Params) -> Result<i64> {
        match self {
            Num::Int(v) => Ok(*v),
            Num::Expr(s) => eval_str(s, params),
        }
    }

    fn positive(&self, params: &Params) -> Result<usize> {
        let v = self.eval(params)?;
        usize::try_from(v)
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Recipe(format!("size {self} evaluates to {v}, not positive")))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Int(v) => write!(f, "{v}"),
            Num::Expr(s) => f.write_str(s),
        }
    }
}

fn default_rotation() -> String {
    "r".into()
}

fn default_reflection() -> String {
    "s".into()
}

fn default_tau() -> String {
    "tau".into()
}

fn default_alpha() -> String {
    "alpha".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Cyclic {
        n: Num,
        gen: String,
    },
    Dihedral {
        n: Num,
        #[serde(default = "default_rotation")]
        rotation: String,
        #[serde(default = "default_reflection")]
        reflection: String,
    },
    Named {
        group: NamedGroup,
        #[serde(default = "default_tau")]
        tau: String,
        #[serde(default = "default_alpha")]
        alpha: String,
    },
    Direct {
        factors: Vec<Recipe>,
    },
    Semidirect {
        normal: Box<Recipe>,
        acting: Box<Recipe>,
        #[serde(default)]
        action: BTreeMap<String, BTreeMap<String, String>>,
    },
}

impl Recipe {
    /// Upper bound on the order, computed before any table is built.
    pub fn order(&self, params: &Params) -> Result<usize> {
        Ok(match self {
            Recipe::Cyclic { n, .. } => n.positive(params)?,
            Recipe::Dihedral { n, .. } => 2 * n.positive(params)?,
            Recipe::Named { group, .. } => group.order(),
            Recipe::Direct { factors } => {
                let mut acc = 1usize;
                for f in factors {
                    acc = acc.saturating_mul(f.order(params)?);
                }
                acc
            }
            Recipe::Semidirect { normal, acting, .. } => {
                normal.order(params)?.saturating_mul(acting.order(params)?)
            }
        })
    }

    pub fn build(&self, params: &Params) -> Result<Group> {
        let order = self.order(params)?;
        if order > super::MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                bound: super::MAX_ORDER,
            });
        }
        match self {
            Recipe::Cyclic { n, gen } => cyclic(n.positive(params)?, gen),
            Recipe::Dihedral {
                n,
                rotation,
                reflection,
            } => dihedral(n.positive(params)?, rotation, reflection),
            Recipe::Named { group, tau, alpha } => named(*group, tau, alpha),
            Recipe::Direct { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Recipe("direct product with no factors".into()))?;
                let mut acc = first.build(params)?;
                for f in it {
                    acc = direct_product(&acc, &f.build(params)?)?;
                }
                Ok(acc)
            }
            Recipe::Semidirect {
                normal,
                acting,
                action,
            } => {
                let n = normal.build(params)?;
                let h = acting.build(params)?;
                let none = BTreeMap::new();
                for (hname, images) in action {
                    if h.generator(hname).is_none() {
                        return Err(Error::Recipe(format!(
                            "action names unknown acting generator `{hname}`"
                        )));
                    }
                    for x in images.keys() {
                        if n.generator(x).is_none() {
                            return Err(Error::Recipe(format!(
                                "action names unknown normal generator `{x}`"
                            )));
                        }
                    }
                }
                let mut table = Vec::new();
                for (hname, _) in h.generators() {
                    let images = action.get(hname);
                    let mut row = Vec::new();
                    for (xname, x) in n.generators() {
                        row.push(match images.and_then(|m| m.get(xname)) {
                            Some(w) => eval_word(&n, w, &none, params)?,
                            None => *x,
                        });
                    }
                    table.push(row);
                }
                semidirect(&n, &h, &table)
            }
        }
    }
}

/// A recipe plus orientation data and the p-gonality word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecipe {
    pub group: Recipe,
    #[serde(default)]
    pub anticonformal: Vec<String>,
    pub phi: String,
    /// Defaults to the parameter `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Num>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

impl GroupRecipe {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Recipe(e.to_string()))
    }

    pub fn realize(&self, params: &Params, name: impl Into<String>) -> Result<SignedGroup> {
        let group = self.group.build(params)?;
        let mut anti = Vec::new();
        for a in &self.anticonformal {
            anti.push(
                group
                    .generator(a)
                    .ok_or_else(|| Error::Recipe(format!("`{a}` is not a named generator")))?,
            );
        }
        let phi = eval_word(&group, &self.phi, &self.aliases, params)?;
        let p = match &self.p {
            Some(n) => n.eval(params)?,
            None => *params
                .get("p")
                .ok_or_else(|| Error::Recipe("no value for p".into()))?,
        };
        let p = u32::try_from(p).map_err(|_| Error::Recipe(format!("p = {p} out of range")))?;
        SignedGroup::new(group, &anti, phi, p, name)
    }

    /// Evaluate a word in the realized group, with this recipe's aliases.
    pub fn word(&self, group: &SignedGroup, text: &str, params: &Params) -> Result<usize> {
        eval_word(group.group(), text, &self.aliases, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn cyclic_times_two() {
        let r = GroupRecipe::from_toml(
            r#"
            phi = "phihat^{q}"
            anticonformal = ["sigma"]
            [group]
            kind = "direct"
            factors = [{ kind = "cyclic", n = "p*q", gen = "phihat" }, { kind = "cyclic", n = 2, gen = "sigma" }]
            "#,
        )
        .unwrap();
        let g = r.realize(&params(&[("p", 3), ("q", 5)]), "1a").unwrap();
        assert_eq!(g.order(), 30);
        assert_eq!(g.conformal_subgroup().order(), 15);
        assert_eq!(g.anticonformal_involutions().len(), 1);
    }

    #[test]
    fn dihedral_with_reflections_reversing() {
        let r = GroupRecipe::from_toml(
            r#"
            phi = "phihat^5"
            anticonformal = ["sigma"]
            p = 3
            group = { kind = "dihedral", n = 15, rotation = "phihat", reflection = "sigma" }
            "#,
        )
        .unwrap();
        let g = r.realize(&Params::new(), "1b").unwrap();
        assert_eq!(g.order(), 30);
        assert_eq!(
            g.conformal_subgroup().elements(),
            g.group().subgroup_generated(&[1]).elements()
        );
        assert_eq!(g.anticonformal_involutions().len(), 15);
    }

    #[test]
    fn exceptional_order_72() {
        let r = GroupRecipe::from_toml(
            r#"
            phi = "phihat^3"
            anticonformal = ["sigma"]
            p = 3
            [group]
            kind = "semidirect"
            acting = { kind = "cyclic", n = 2, gen = "sigma" }
            action.sigma = { phihat = "phihat^-1", tau2 = "tau1 tau2" }
            [group.normal]
            kind = "semidirect"
            normal = { kind = "direct", factors = [{ kind = "cyclic", n = 2, gen = "tau1" }, { kind = "cyclic", n = 2, gen = "tau2" }] }
            acting = { kind = "cyclic", n = 9, gen = "phihat" }
            action.phihat = { tau1 = "tau2", tau2 = "tau1 tau2" }
            "#,
        )
        .unwrap();
        let g = r.realize(&Params::new(), "E1").unwrap();
        assert_eq!(g.order(), 72);
        assert!(g.group().is_associative());
    }

    #[test]
    fn recipe_errors() {
        let bad_phi = GroupRecipe::from_toml(
            r#"
            phi = "g^2"
            anticonformal = ["s"]
            p = 3
            group = { kind = "direct", factors = [{ kind = "cyclic", n = 3, gen = "g" }, { kind = "cyclic", n = 2, gen = "s" }] }
            "#,
        )
        .unwrap();
        assert!(bad_phi.realize(&Params::new(), "x").is_ok());
        let wrong_order = GroupRecipe {
            p: Some(Num::Int(5)),
            ..bad_phi.clone()
        };
        assert!(wrong_order.realize(&Params::new(), "x").is_err());
        let no_anti = GroupRecipe {
            anticonformal: vec![],
            ..bad_phi.clone()
        };
        assert!(no_anti.realize(&Params::new(), "x").is_err());
        let unknown = GroupRecipe {
            anticonformal: vec!["zz".into()],
            ..bad_phi
        };
        assert!(unknown.realize(&Params::new(), "x").is_err());
        assert!(GroupRecipe::from_toml("phi = 3").is_err());
    }
}
