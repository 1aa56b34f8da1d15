use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{identify_family, SignedGroup, Subgroup, Target};

/// One conjugacy class of anticonformal involutions.
#[derive(Debug, Clone)]
pub struct SymmetryClass {
    /// Least member.
    pub representative: usize,
    pub members: Vec<usize>,
    pub pair_type: Target,
    /// `N_G(⟨σ⟩)`
    pub n_sigma: Subgroup,
    /// `N_G(⟨φ,σ⟩)`
    pub n_phi_sigma: Subgroup,
    pub names: NormalizerNames,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizerNames {
    pub n_sigma: String,
    pub n_phi_sigma: String,
}

/// Type of `⟨φ,σ⟩` for an anticonformal involution `σ`.
pub fn pair_type(g: &SignedGroup, sigma: usize) -> Result<Target> {
    let grp = g.group();
    let phi = g.phi();
    let conj = grp.conj(sigma, phi);
    if conj == phi {
        Ok(Target::Cyclic)
    } else if conj == grp.inv(phi) {
        Ok(Target::Dihedral)
    } else {
        Err(Error::Hypothesis(format!(
            "{} conjugates φ = {} to {}, neither φ nor φ⁻¹",
            grp.label(sigma),
            grp.label(phi),
            grp.label(conj)
        )))
    }
}

/// Anticonformal involutions split into conjugacy classes, ordered by least member.
pub fn classify_symmetries(g: &SignedGroup) -> Result<Vec<SymmetryClass>> {
    let grp = g.group();
    let mut seen = vec![false; grp.order()];
    let mut out = Vec::new();
    for x in g.anticonformal_involutions() {
        if seen[x] {
            continue;
        }
        let mut members = grp.class_of(x);
        members.sort_unstable();
        for &m in &members {
            seen[m] = true;
        }
        let representative = members[0];
        let pt = pair_type(g, representative)?;
        let n_sigma = grp.normalizer(&grp.subgroup_generated(&[representative]));
        let n_phi_sigma = grp.normalizer(&grp.subgroup_generated(&[g.phi(), representative]));
        let names = NormalizerNames {
            n_sigma: name_of(g, &n_sigma),
            n_phi_sigma: name_of(g, &n_phi_sigma),
        };
        out.push(SymmetryClass {
            representative,
            members,
            pair_type: pt,
            n_sigma,
            n_phi_sigma,
            names,
        });
    }
    Ok(out)
}

fn name_of(g: &SignedGroup, h: &Subgroup) -> String {
    if h.order() == g.order() {
        return "G".into();
    }
    identify_family(&g.group().induced(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Params;
    use crate::group::GroupRecipe;

    fn realize(toml: &str, p: i64, q: i64) -> SignedGroup {
        let params: Params = [("p".to_string(), p), ("q".to_string(), q)]
            .into_iter()
            .collect();
        GroupRecipe::from_toml(toml)
            .unwrap()
            .realize(&params, "t")
            .unwrap()
    }

    const CYCLIC: &str = r#"
        phi = "phihat^{q}"
        anticonformal = ["sigma"]
        group = { kind = "direct", factors = [{ kind = "cyclic", n = "p*q", gen = "phihat" }, { kind = "cyclic", n = 2, gen = "sigma" }] }
    "#;

    const DIHEDRAL: &str = r#"
        phi = "phihat^{q}"
        anticonformal = ["sigma"]
        group = { kind = "dihedral", n = "p*q", rotation = "phihat", reflection = "sigma" }
    "#;

    #[test]
    fn c15_times_c2() {
        let g = realize(CYCLIC, 3, 5);
        let cls = classify_symmetries(&g).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].pair_type, Target::Cyclic);
        assert_eq!(cls[0].n_sigma.order(), 30);
        assert_eq!(cls[0].n_phi_sigma.order(), 30);
        assert_eq!(cls[0].names.n_sigma, "G");
    }

    #[test]
    fn c6_times_c2_two_classes() {
        let g = realize(CYCLIC, 3, 2);
        let cls = classify_symmetries(&g).unwrap();
        assert_eq!(cls.len(), 2);
        let sigma = g.group().generator("sigma").unwrap();
        assert!(cls.iter().any(|c| c.members == vec![sigma]));
        assert!(cls.iter().all(|c| c.n_sigma.order() == 12));
    }

    #[test]
    fn d15_one_class() {
        let g = realize(DIHEDRAL, 3, 5);
        let cls = classify_symmetries(&g).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].members.len(), 15);
        assert_eq!(cls[0].pair_type, Target::Dihedral);
        assert_eq!(cls[0].n_sigma.order(), 2);
        assert_eq!(cls[0].n_phi_sigma.order(), 6);
        assert_eq!(cls[0].names.n_phi_sigma, "D_3");
    }

    #[test]
    fn pair_types() {
        let d = realize(DIHEDRAL, 3, 5);
        let s = d.group().generator("sigma").unwrap();
        assert_eq!(pair_type(&d, s).unwrap(), Target::Dihedral);
        let c = realize(CYCLIC, 3, 5);
        let s = c.group().generator("sigma").unwrap();
        assert_eq!(pair_type(&c, s).unwrap(), Target::Cyclic);
    }

    #[test]
    fn no_symmetries_is_empty() {
        let g = realize(
            r#"
            phi = "g"
            anticonformal = ["h"]
            group = { kind = "direct", factors = [{ kind = "cyclic", n = "p", gen = "g" }, { kind = "cyclic", n = 4, gen = "h" }] }
            "#,
            3,
            1,
        );
        assert!(classify_symmetries(&g).unwrap().is_empty());
    }
}
