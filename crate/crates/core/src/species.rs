//! Species of a symmetry read off a surface-kernel epimorphism onto `D_p` or `C_2p`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::epi::{enumerate_surface_kernel_epis, EnumerateOptions, EpiRecord, SurfaceKernelEpi};
use crate::error::{Error, Result};
use crate::group::{SignedGroup, Target};
use crate::signature::{real_cyclic_signatures, require_odd_prime, GeneratorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Separating,
    #[serde(rename = "-")]
    NonSeparating,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Separating => "+",
            Sign::NonSeparating => "-",
        })
    }
}

/// `sp(σ) = ±k`, or `0` when there are no ovals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SpeciesResult {
    pub ovals: u32,
    pub sign: Option<Sign>,
}

impl SpeciesResult {
    pub fn new(ovals: u32, sign: Sign) -> Self {
        if ovals == 0 {
            SpeciesResult { ovals, sign: None }
        } else {
            SpeciesResult {
                ovals,
                sign: Some(sign),
            }
        }
    }

    pub fn value(&self) -> i64 {
        match self.sign {
            Some(Sign::Separating) => self.ovals as i64,
            Some(Sign::NonSeparating) => -(self.ovals as i64),
            None => 0,
        }
    }
}

impl fmt::Display for SpeciesResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Some(s) => write!(f, "{s}{}", self.ovals),
            None => f.write_str("0"),
        }
    }
}

fn target_of(epi: &SurfaceKernelEpi, sigma: usize) -> Result<Target> {
    let t = epi.target();
    let kind = t
        .target_kind()
        .ok_or_else(|| Error::Species(format!("target {} is neither D_p nor C_2p", t.name())))?;
    if sigma >= t.order() || !t.is_anticonformal_involution(sigma) {
        return Err(Error::Species(
            "σ is not an anticonformal involution".into(),
        ));
    }
    let sig = epi.signature();
    if sig.genus() != 0 || sig.period_cycles().len() != 1 {
        return Err(Error::Species(format!(
            "signature {sig} is not of the form (0,+,[..],{{(..)}})"
        )));
    }
    Ok(kind)
}

fn connector(epi: &SurfaceKernelEpi) -> usize {
    epi.image(GeneratorKind::Connector { index: 0 })
        .expect("one period cycle")
}

/// Sign by the proper-period, connector and two-involution conditions.
pub fn three_condition_sign(epi: &SurfaceKernelEpi) -> Sign {
    let mut refl = epi.reflection_images();
    refl.sort_unstable();
    refl.dedup();
    if !epi.signature().proper_periods().is_empty() || connector(epi) != 0 || refl.len() > 2 {
        Sign::NonSeparating
    } else {
        Sign::Separating
    }
}

pub fn species(epi: &SurfaceKernelEpi, sigma: usize) -> Result<SpeciesResult> {
    let kind = target_of(epi, sigma)?;
    let cycle_empty = epi.signature().period_cycles()[0].is_empty();
    let ovals = if cycle_empty && connector(epi) == 0 {
        epi.target().p()
    } else {
        1
    };
    let sign = match kind {
        Target::Cyclic => Sign::Separating,
        Target::Dihedral => three_condition_sign(epi),
    };
    Ok(SpeciesResult::new(ovals, sign))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchreierEdge {
    pub from: usize,
    pub to: usize,
    pub generator: String,
    pub reflection: bool,
}

/// Right cosets of `⟨σ⟩` joined by right multiplication with each generator image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchreierGraph {
    pub vertices: usize,
    pub edges: Vec<SchreierEdge>,
}

impl SchreierGraph {
    pub fn new(epi: &SurfaceKernelEpi, sigma: usize) -> Self {
        let g = epi.target().group();
        let action = crate::epi::coset_action(epi, &g.subgroup_generated(&[sigma]));
        let mut edges = Vec::new();
        for ((name, perm), gen) in action
            .permutations
            .iter()
            .zip(&epi.presentation().generators)
        {
            for (from, &to) in perm.iter().enumerate() {
                // each undirected edge of an involution is seen from both ends
                if gen.kind.is_reflection() && to < from {
                    continue;
                }
                edges.push(SchreierEdge {
                    from,
                    to,
                    generator: name.clone(),
                    reflection: gen.kind.is_reflection(),
                });
            }
        }
        SchreierGraph {
            vertices: action.cosets.len(),
            edges,
        }
    }

    /// Whether some closed walk crosses an odd number of non-loop reflection edges.
    pub fn has_odd_cycle(&self) -> bool {
        let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); self.vertices];
        for e in self.edges.iter().filter(|e| e.from != e.to) {
            let parity = e.reflection as u8;
            adj[e.from].push((e.to, parity));
            adj[e.to].push((e.from, parity));
        }
        let mut colour: Vec<Option<u8>> = vec![None; self.vertices];
        for start in 0..self.vertices {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v].expect("coloured");
                for &(w, par) in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(cv ^ par);
                            queue.push_back(w);
                        }
                        Some(cw) if cw != cv ^ par => return true,
                        _ => {}
                    }
                }
            }
        }
        false
    }
}

/// Cross-check of the `D_p` sign through the coset graph of `⟨σ⟩`.
pub fn schreier_sign_test(epi: &SurfaceKernelEpi, sigma: usize) -> Result<Sign> {
    if target_of(epi, sigma)? != Target::Dihedral {
        return Err(Error::Species(
            "the coset-graph test applies to D_p targets only".into(),
        ));
    }
    Ok(if SchreierGraph::new(epi, sigma).has_odd_cycle() {
        Sign::NonSeparating
    } else {
        Sign::Separating
    })
}

/// Species allowed for `(p, g)` with `g ≥ (p−1)²+1`.
pub fn allowed_species(p: u32, g: u32) -> Result<BTreeSet<i64>> {
    require_odd_prime(p)?;
    let bound = (p as u64 - 1).pow(2) + 1;
    if (g as u64) < bound {
        return Err(Error::Hypothesis(format!(
            "g = {g} is below (p-1)^2+1 = {bound}"
        )));
    }
    let p = p as i64;
    Ok(if g % 2 == 1 {
        BTreeSet::from([-1, -p])
    } else {
        BTreeSet::from([1, -1, p, -p])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flag {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "FINDING")]
    Finding,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Consistent => "CONSISTENT",
            Flag::Finding => "FINDING",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpeciesRecord {
    pub signature: String,
    pub target: String,
    pub sigma: String,
    pub species: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schreier_sign: Option<Sign>,
    pub flag: Flag,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
    pub epi: EpiRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureSweep {
    pub signature: String,
    pub family: String,
    pub target: String,
    pub epis: usize,
    /// species value → number of epis
    pub species: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Summary {
    pub epis: usize,
    pub consistent: usize,
    pub findings: usize,
    pub species_seen: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub p: u32,
    pub g: u32,
    pub allowed: Vec<i64>,
    pub sweeps: Vec<SignatureSweep>,
    pub summary: Theorem2Summary,
    pub records: Vec<SpeciesRecord>,
}

impl Theorem2Report {
    pub fn findings(&self) -> impl Iterator<Item = &SpeciesRecord> {
        self.records.iter().filter(|r| r.flag == Flag::Finding)
    }

    pub fn render_text(&self) -> String {
        let allowed: Vec<String> = self.allowed.iter().map(|v| format!("{v:+}")).collect();
        let mut out = format!(
            "p = {}, g = {}, allowed species {{{}}}\n",
            self.p,
            self.g,
            allowed.join(", ")
        );
        for s in &self.sweeps {
            let counts: Vec<String> = s.species.iter().map(|(k, n)| format!("{k}: {n}")).collect();
            let line = format!(
                "  {:<32} {:<5} {:>6} epis  {}",
                s.signature,
                s.target,
                s.epis,
                counts.join(", ")
            );
            out += line.trim_end();
            out.push('\n');
        }
        for r in self.findings() {
            out += &format!(
                "  FINDING {} species {}: {}\n    {}\n",
                r.target,
                r.species,
                r.reasons.join("; "),
                r.epi
            );
        }
        out += &format!(
            "{} epis, {} consistent, {} findings\n",
            self.summary.epis, self.summary.consistent, self.summary.findings
        );
        out
    }
}

fn record(epi: &SurfaceKernelEpi, allowed: &BTreeSet<i64>) -> Result<SpeciesRecord> {
    let sigma = epi
        .image(GeneratorKind::Reflection { cycle: 0, index: 0 })
        .expect("reflection");
    let sp = species(epi, sigma)?;
    let t = epi.target();
    let kind = t.target_kind().expect("checked by species");
    let mut reasons = Vec::new();
    if !allowed.contains(&sp.value()) {
        reasons.push(format!("species {sp} is not allowed"));
    }
    if sp.ovals == 0 {
        reasons.push("no ovals".to_string());
    }
    let schreier = match kind {
        Target::Dihedral => {
            let s = schreier_sign_test(epi, sigma)?;
            if Some(s) != sp.sign {
                reasons.push(format!(
                    "coset-graph sign {s} differs from the three-condition sign"
                ));
            }
            Some(s)
        }
        Target::Cyclic => {
            if sp.sign != Some(Sign::Separating) {
                reasons.push("C_2p target with sign -".to_string());
            }
            None
        }
    };
    Ok(SpeciesRecord {
        signature: epi.signature().to_string(),
        target: kind.label(t.p()),
        sigma: t.group().label(sigma).to_string(),
        species: sp.to_string(),
        schreier_sign: schreier,
        flag: if reasons.is_empty() {
            Flag::Consistent
        } else {
            Flag::Finding
        },
        reasons,
        epi: epi.record(),
    })
}

/// Species of `θ(c_{1,0})` for every epi onto `D_p` and `C_2p` over every real signature.
pub fn verify_theorem2(p: u32, g: u32, options: EnumerateOptions) -> Result<Theorem2Report> {
    let allowed = allowed_species(p, g)?;
    let targets =
        [Target::Dihedral, Target::Cyclic].map(|t| SignedGroup::target(p, t).map(Arc::new));
    let mut sweeps = Vec::new();
    let mut records = Vec::new();
    for (sig, family) in real_cyclic_signatures(p, g)? {
        for t in &targets {
            let t = t.as_ref().map_err(Clone::clone)?;
            let epis = enumerate_surface_kernel_epis(&sig, Arc::clone(t), options)?;
            let mut counts = BTreeMap::new();
            for e in &epis {
                let r = record(e, &allowed)?;
                *counts.entry(r.species.clone()).or_insert(0) += 1;
                records.push(r);
            }
            sweeps.push(SignatureSweep {
                signature: sig.to_string(),
                family: family.as_str().to_string(),
                target: t.target_kind().expect("target").label(p),
                epis: epis.len(),
                species: counts,
            });
        }
    }
    let findings = records.iter().filter(|r| r.flag == Flag::Finding).count();
    let seen: BTreeSet<i64> = records
        .iter()
        .map(|r| r.species.parse::<i64>().expect("species text"))
        .collect();
    Ok(Theorem2Report {
        p,
        g,
        allowed: allowed.into_iter().collect(),
        sweeps,
        summary: Theorem2Summary {
            epis: records.len(),
            consistent: records.len() - findings,
            findings,
            species_seen: seen.into_iter().collect(),
        },
        records,
    })
}
