use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify_symmetries, pair_type, SymmetryClass};
use super::{Ledger, LedgerEntry, Variant};
use crate::error::{Error, Result};
use crate::expr::Params;
use crate::group::{spherical_name, Family, SignedGroup, Subgroup, Target};

/// Parameter ranges for a full run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub primes: Vec<u32>,
    /// `q` runs over `2..=q_max`.
    pub q_max: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            primes: vec![3, 5],
            q_max: 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessItem {
    pub role: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Element labels generating the subgroup, or the element itself.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub items: Vec<WitnessItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    /// Which normalizer matched, for normalizer claims.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub family: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub size: usize,
    pub pair_type: Target,
    pub n_sigma: SubgroupSummary,
    pub n_phi_sigma: SubgroupSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralChecks {
    /// Multiplicative with a kernel of index 2.
    pub orientation_character: bool,
    /// `⟨φ⟩` normal of order `p`.
    pub phi_normal: bool,
    /// Name of `G/⟨φ⟩` among the spherical groups, or `unrecognized`.
    pub quotient: String,
    pub quotient_spherical: bool,
    pub pair_type_constant: bool,
    pub classes_partition: bool,
    pub normalizers_contain: bool,
}

impl StructuralChecks {
    pub fn ok(&self) -> bool {
        self.orientation_character
            && self.phi_normal
            && self.quotient_spherical
            && self.pair_type_constant
            && self.classes_partition
            && self.normalizers_contain
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub order: usize,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub structure: StructuralChecks,
    pub classes: Vec<ClassSummary>,
    pub claims: Vec<ClaimRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub params: Params,
    /// Parameters outside the budget, used because none inside were admissible.
    pub extended: bool,
    pub clause: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub variants: Vec<VariantReport>,
}

impl CaseReport {
    pub fn claims(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.variants.iter().flat_map(|v| v.claims.iter())
    }

    pub fn all_match(&self) -> bool {
        self.error.is_none() && self.claims().all(|c| c.verdict == Verdict::Match)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub claims: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub errors: usize,
    pub structural_failures: usize,
    pub cases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub budget: Budget,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(budget: Budget, cases: Vec<CaseReport>) -> Self {
        let mut s = Summary {
            runs: cases.len(),
            claims: 0,
            matches: 0,
            mismatches: 0,
            errors: 0,
            structural_failures: 0,
            cases: Vec::new(),
        };
        for c in &cases {
            if c.error.is_some() {
                s.errors += 1;
            }
            for v in &c.variants {
                if !v.structure.ok() {
                    s.structural_failures += 1;
                }
            }
            for cl in c.claims() {
                s.claims += 1;
                match cl.verdict {
                    Verdict::Match => s.matches += 1,
                    Verdict::Mismatch => s.mismatches += 1,
                }
            }
            if !s.cases.contains(&c.case) {
                s.cases.push(c.case.clone());
            }
        }
        VerificationReport {
            budget,
            cases,
            summary: s,
        }
    }

    pub fn has_mismatch(&self) -> bool {
        self.summary.mismatches > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&render_case(c));
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} runs, {} claims, {} MATCH, {} MISMATCH, {} errors, {} structural failures",
            s.runs, s.claims, s.matches, s.mismatches, s.errors, s.structural_failures
        );
        let _ = writeln!(out, "cases: {}", s.cases.join(" "));
        out
    }
}

fn render_params(p: &Params) -> String {
    let mut keys: Vec<&String> = p.keys().collect();
    keys.sort_by_key(|k| (k.as_str() != "p", k.as_str() != "q", k.as_str()));
    keys.iter()
        .map(|k| format!("{k}={}", p[*k]))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Plain-text block for one case run.
pub fn render_case(c: &CaseReport) -> String {
    let mut out = String::new();
    let _ = write!(out, "case {} {}", c.case, render_params(&c.params));
    if c.extended {
        out.push_str(" (extended)");
    }
    out.push('\n');
    if let Some(e) = &c.error {
        let _ = writeln!(out, "  ERROR {e}");
    }
    for v in &c.variants {
        let _ = write!(out, "  group");
        if let Some(n) = &v.variant {
            let _ = write!(out, " {n}");
        }
        let _ = writeln!(
            out,
            " of order {}, G/⟨φ⟩ = {}, structure {}",
            v.order,
            v.structure.quotient,
            if v.structure.ok() { "ok" } else { "FAILED" }
        );
        for cl in &v.claims {
            let _ = write!(
                out,
                "  {:<8}  {}: expected {}, computed {}",
                cl.verdict.as_str(),
                cl.claim,
                cl.expected,
                cl.computed
            );
            if let Some(via) = &cl.via {
                let _ = write!(out, " (via {via})");
            }
            out.push('\n');
            if let Some(w) = &cl.witness {
                for it in &w.items {
                    let _ = write!(out, "            witness {} order {}", it.role, it.order);
                    if let Some(f) = &it.family {
                        let _ = write!(out, " {f}");
                    }
                    let _ = writeln!(out, " ⟨{}⟩", it.generators.join(", "));
                }
            }
        }
    }
    out
}

fn element(g: &SignedGroup, role: &str, x: usize) -> WitnessItem {
    WitnessItem {
        role: role.into(),
        order: g.group().element_order(x),
        family: None,
        generators: vec![g.group().label(x).to_string()],
    }
}

fn subgroup(g: &SignedGroup, role: &str, h: &Subgroup, family: &str) -> WitnessItem {
    let grp = g.group();
    WitnessItem {
        role: role.into(),
        order: h.order(),
        family: Some(family.into()),
        generators: grp
            .generating_set(h.elements())
            .into_iter()
            .map(|x| grp.label(x).to_string())
            .collect(),
    }
}

fn structural(g: &SignedGroup, classes: &[SymmetryClass]) -> StructuralChecks {
    let grp = g.group();
    let n = grp.order();
    let mut multiplicative = true;
    'outer: for a in 0..n {
        for b in 0..n {
            if g.sign(grp.mul(a, b)) != g.sign(a) * g.sign(b) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let phi = g.phi_subgroup();
    let phi_normal = phi.order() == g.p() as usize && grp.is_normal(&phi);
    let quotient = if phi_normal {
        grp.quotient(&phi).ok().and_then(|q| spherical_name(&q))
    } else {
        None
    };
    let mut seen = vec![false; n];
    let mut disjoint = true;
    for c in classes {
        for &m in &c.members {
            disjoint &= !seen[m];
            seen[m] = true;
        }
    }
    let total: usize = classes.iter().map(|c| c.members.len()).sum();
    StructuralChecks {
        orientation_character: multiplicative && g.conformal_subgroup().order() * 2 == n,
        phi_normal,
        quotient_spherical: quotient.is_some(),
        quotient: quotient.unwrap_or_else(|| "unrecognized".into()),
        pair_type_constant: classes.iter().all(|c| {
            c.members
                .iter()
                .all(|&m| pair_type(g, m).ok() == Some(c.pair_type))
        }),
        classes_partition: disjoint && total == g.anticonformal_involutions().len(),
        normalizers_contain: classes.iter().all(|c| {
            c.n_sigma.contains(c.representative)
                && c.n_phi_sigma.contains(c.representative)
                && c.n_phi_sigma.contains(g.phi())
        }),
    }
}

impl ClassSummary {
    pub fn of(g: &SignedGroup, c: &SymmetryClass) -> Self {
        ClassSummary {
            representative: g.group().label(c.representative).to_string(),
            size: c.members.len(),
            pair_type: c.pair_type,
            n_sigma: SubgroupSummary {
                order: c.n_sigma.order(),
                family: c.names.n_sigma.clone(),
            },
            n_phi_sigma: SubgroupSummary {
                order: c.n_phi_sigma.order(),
                family: c.names.n_phi_sigma.clone(),
            },
        }
    }
}

fn check_variant(entry: &LedgerEntry, variant: &Variant, params: &Params) -> Result<VariantReport> {
    let g = variant.recipe.realize(params, entry.id.clone())?;
    let grp = g.group();
    let n = g.order();
    let classes = classify_symmetries(&g)?;
    let structure = structural(&g, &classes);
    let exp = variant
        .expectation(params)?
        .ok_or_else(|| Error::Ledger(format!("case `{}`: no expectation applies", entry.id)))?;
    let expected_classes = exp.classes.eval(params)?;
    if expected_classes < 1 {
        return Err(Error::Ledger(format!(
            "case `{}` expects {expected_classes} classes",
            entry.id
        )));
    }
    let p = g.p();
    let mut claims = Vec::new();

    let count_ok = classes.len() as i64 == expected_classes;
    claims.push(ClaimRecord {
        claim: "symmetry classes".into(),
        expected: expected_classes.to_string(),
        computed: classes.len().to_string(),
        verdict: Verdict::of(count_ok),
        via: None,
        witness: (!count_ok).then(|| Witness {
            items: classes
                .iter()
                .map(|c| WitnessItem {
                    role: format!("class of size {}", c.members.len()),
                    order: grp.element_order(c.representative),
                    family: None,
                    generators: vec![grp.label(c.representative).to_string()],
                })
                .collect(),
        }),
    });

    let mut used: Vec<(usize, &str)> = Vec::new();
    for rep in &exp.rep {
        let w = variant.recipe.word(&g, &rep.word, params)?;
        let class = classes
            .iter()
            .position(|c| c.members.binary_search(&w).is_ok());
        let clash = class.and_then(|k| used.iter().find(|(j, _)| *j == k).map(|(_, s)| *s));
        let (ok, computed) = match (class, clash) {
            (None, _) => (
                false,
                format!(
                    "{} is not an anticonformal involution (order {}, sign {})",
                    grp.label(w),
                    grp.element_order(w),
                    g.sign(w)
                ),
            ),
            (Some(k), Some(other)) => (false, format!("class {} already holds `{other}`", k + 1)),
            (Some(k), None) => (
                true,
                format!("class {} of size {}", k + 1, classes[k].members.len()),
            ),
        };
        claims.push(ClaimRecord {
            claim: format!("representative `{}`", rep.word),
            expected: "a class of its own".into(),
            computed,
            verdict: Verdict::of(ok),
            via: None,
            witness: (!ok).then(|| Witness {
                items: vec![element(&g, &rep.word, w)],
            }),
        });
        if let Some(k) = class {
            used.push((k, rep.word.as_str()));
        }

        let family = Family::parse(&rep.normalizer, params)?;
        let Some(k) = class else {
            claims.push(ClaimRecord {
                claim: format!("normalizer of `{}`", rep.word),
                expected: family.to_string(),
                computed: "no symmetry class".into(),
                verdict: Verdict::Mismatch,
                via: None,
                witness: Some(Witness {
                    items: vec![element(&g, &rep.word, w)],
                }),
            });
            continue;
        };
        let c = &classes[k];
        let on_pair = family.matches(&grp.induced(&c.n_phi_sigma), n)?;
        let on_sigma = family.matches(&grp.induced(&c.n_sigma), n)?;
        let via = match (on_pair, on_sigma) {
            (true, true) => Some("both".to_string()),
            (true, false) => Some("N_G(⟨φ,σ⟩)".to_string()),
            (false, true) => Some("N_G(⟨σ⟩)".to_string()),
            (false, false) => None,
        };
        let ok = via.is_some();
        claims.push(ClaimRecord {
            claim: format!("normalizer of `{}`", rep.word),
            expected: family.to_string(),
            computed: format!(
                "N_G(⟨φ,σ⟩) = {} of order {}, N_G(⟨σ⟩) = {} of order {}",
                c.names.n_phi_sigma,
                c.n_phi_sigma.order(),
                c.names.n_sigma,
                c.n_sigma.order()
            ),
            verdict: Verdict::of(ok),
            via,
            witness: (!ok).then(|| Witness {
                items: vec![
                    element(&g, "σ", c.representative),
                    subgroup(&g, "N_G(⟨φ,σ⟩)", &c.n_phi_sigma, &c.names.n_phi_sigma),
                    subgroup(&g, "N_G(⟨σ⟩)", &c.n_sigma, &c.names.n_sigma),
                ],
            }),
        });

        if let Some(want) = rep.pair {
            let got = pair_type(&g, w)?;
            let ok = got == want;
            let conj = grp.conj(w, g.phi());
            claims.push(ClaimRecord {
                claim: format!("⟨φ,`{}`⟩", rep.word),
                expected: want.label(p),
                computed: got.label(p),
                verdict: Verdict::of(ok),
                via: None,
                witness: (!ok).then(|| Witness {
                    items: vec![
                        element(&g, "φ", g.phi()),
                        element(&g, &rep.word, w),
                        element(&g, "σφσ", conj),
                    ],
                }),
            });
        }
    }

    Ok(VariantReport {
        variant: variant.name.clone(),
        order: n,
        generators: grp.generators().iter().map(|(s, _)| s.clone()).collect(),
        note: exp.note.clone(),
        structure,
        classes: classes.iter().map(|c| ClassSummary::of(&g, c)).collect(),
        claims,
    })
}

fn run(entry: &LedgerEntry, params: &Params, extended: bool) -> Result<CaseReport> {
    let variants = entry
        .variant
        .iter()
        .map(|v| check_variant(entry, v, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(CaseReport {
        case: entry.id.clone(),
        params: params.clone(),
        extended,
        clause: entry.clause.clone(),
        error: None,
        variants,
    })
}

/// Checks one case at one parameter tuple.
pub fn verify_case(ledger: &Ledger, id: &str, params: &Params) -> Result<CaseReport> {
    let entry = ledger.entry(id)?;
    let mut params = params.clone();
    if !entry.uses_q() {
        params.remove("q");
    }
    if !entry.admits(&params)? {
        return Err(Error::Hypothesis(format!(
            "parameters {} lie outside the domain of case `{id}`",
            render_params(&params)
        )));
    }
    let extended = entry
        .p_fallback
        .is_some_and(|p| params.get("p") == Some(&p));
    run(entry, &params, extended)
}

/// Every case over every in-budget tuple, in ledger order.
pub fn verify_all(ledger: &Ledger, budget: &Budget, jobs: usize) -> Result<VerificationReport> {
    let mut work: Vec<(&LedgerEntry, std::result::Result<super::Tuple, String>)> = Vec::new();
    for entry in ledger.entries() {
        match entry.tuples(budget) {
            Ok(ts) => work.extend(ts.into_iter().map(|t| (entry, Ok(t)))),
            Err(e) => work.push((entry, Err(e.to_string()))),
        }
    }
    let one = |(entry, t): &(&LedgerEntry, std::result::Result<super::Tuple, String>)| {
        let failed = |params: Params, extended: bool, e: String| CaseReport {
            case: entry.id.clone(),
            params,
            extended,
            clause: entry.clause.clone(),
            error: Some(e),
            variants: Vec::new(),
        };
        match t {
            Ok(t) => run(entry, &t.params, t.extended)
                .unwrap_or_else(|e| failed(t.params.clone(), t.extended, e.to_string())),
            Err(e) => failed(Params::new(), false, e.clone()),
        }
    };
    let all: Vec<CaseReport> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Construction(e.to_string()))?;
        pool.install(|| work.par_iter().map(one).collect())
    } else {
        work.iter().map(one).collect()
    };
    Ok(VerificationReport::new(budget.clone(), all))
}
