//! The case ledger for automorphism groups of real cyclic p-gonal surfaces,
//! stored as data and checked against brute-force classification.
//!
//! The bundled file is `data/ledger.toml`; see its header for the schema.

mod classify;
mod verify;

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_str, is_prime, Params};
use crate::group::{GroupRecipe, Num, SignedGroup, Target};

pub use classify::{classify_symmetries, pair_type, NormalizerNames, SymmetryClass};
pub use verify::{
    render_case, verify_all, verify_case, Budget, CaseReport, ClaimRecord, ClassSummary,
    StructuralChecks, SubgroupSummary, Summary, VariantReport, Verdict, VerificationReport,
    Witness, WitnessItem,
};

const BUNDLED: &str = include_str!("../../data/ledger.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanVar {
    pub name: String,
    pub from: Num,
    /// Inclusive.
    pub to: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepExpectation {
    pub word: String,
    /// Family expression for the normalizer.
    pub normalizer: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Target>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub when: Option<String>,
    pub classes: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub rep: Vec<RepExpectation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variant {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub recipe: GroupRecipe,
    pub expect: Vec<Expectation>,
}

impl Variant {
    /// First expectation whose `when` holds.
    pub fn expectation(&self, params: &Params) -> Result<Option<&Expectation>> {
        for e in &self.expect {
            match &e.when {
                None => return Ok(Some(e)),
                Some(w) if eval_str(w, params)? != 0 => return Ok(Some(e)),
                Some(_) => {}
            }
        }
        Ok(None)
    }
}

fn default_params() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerEntry {
    pub id: String,
    /// Structured statement of the case.
    pub clause: String,
    #[serde(default = "default_params")]
    pub params: Vec<String>,
    /// Restricts `p` regardless of the budget.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_values: Option<Vec<i64>>,
    /// Used when no budget prime is admissible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_fallback: Option<i64>,
    #[serde(default)]
    pub scan: Vec<ScanVar>,
    #[serde(default, rename = "where", skip_serializing_if = "Option::is_none")]
    pub constraint: Option<String>,
    pub variant: Vec<Variant>,
}

/// A parameter tuple, flagged when it comes from `p_fallback`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple {
    pub params: Params,
    pub extended: bool,
}

impl LedgerEntry {
    pub fn uses_q(&self) -> bool {
        self.params.iter().any(|s| s == "q")
    }

    /// Whether `params` lies in the domain (scan ranges included).
    pub fn admits(&self, params: &Params) -> Result<bool> {
        let Some(&p) = params.get("p") else {
            return Ok(false);
        };
        if !is_prime(p) || p < 3 {
            return Ok(false);
        }
        if let Some(v) = &self.p_values {
            if !v.contains(&p) {
                return Ok(false);
            }
        }
        if self.uses_q() && params.get("q").is_none_or(|&q| q < 1) {
            return Ok(false);
        }
        for s in &self.scan {
            let Some(&v) = params.get(&s.name) else {
                return Ok(false);
            };
            if v < s.from.eval(params)? || v > s.to.eval(params)? {
                return Ok(false);
            }
        }
        match &self.constraint {
            Some(w) => Ok(eval_str(w, params)? != 0),
            None => Ok(true),
        }
    }

    /// The group of a variant (the first when `variant` is `None`) at `params`.
    pub fn realize(&self, params: &Params, variant: Option<&str>) -> Result<SignedGroup> {
        if !self.admits(params)? {
            return Err(Error::Hypothesis(format!(
                "parameters lie outside the domain of case `{}`",
                self.id
            )));
        }
        let v = match variant {
            None => &self.variant[0],
            Some(name) => self
                .variant
                .iter()
                .find(|v| v.name.as_deref() == Some(name))
                .ok_or_else(|| {
                    Error::Ledger(format!("case `{}` has no variant `{name}`", self.id))
                })?,
        };
        let name = match &v.name {
            Some(n) => format!("{} ({n})", self.id),
            None => self.id.clone(),
        };
        v.recipe.realize(params, name)
    }

    /// Every in-budget tuple, in lexicographic scan order.
    pub fn tuples(&self, budget: &Budget) -> Result<Vec<Tuple>> {
        let primes: Vec<i64> = budget
            .primes
            .iter()
            .map(|&p| p as i64)
            .filter(|p| self.p_values.as_ref().is_none_or(|v| v.contains(p)))
            .collect();
        let out = self.tuples_over(&primes, budget)?;
        if out.is_empty() && !budget.primes.is_empty() {
            if let Some(p) = self.p_fallback {
                return Ok(self
                    .tuples_over(&[p], budget)?
                    .into_iter()
                    .map(|t| Tuple {
                        extended: true,
                        ..t
                    })
                    .collect());
            }
        }
        Ok(out)
    }

    fn tuples_over(&self, primes: &[i64], budget: &Budget) -> Result<Vec<Tuple>> {
        let qs: Vec<Option<i64>> = if self.uses_q() {
            (2..=budget.q_max as i64).map(Some).collect()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for &p in primes {
            for &q in &qs {
                let mut base = Params::new();
                base.insert("p".into(), p);
                if let Some(q) = q {
                    base.insert("q".into(), q);
                }
                self.scan_from(0, &mut base, &mut out)?;
            }
        }
        Ok(out)
    }

    fn scan_from(&self, k: usize, params: &mut Params, out: &mut Vec<Tuple>) -> Result<()> {
        let Some(s) = self.scan.get(k) else {
            let keep = match &self.constraint {
                Some(w) => eval_str(w, params)? != 0,
                None => true,
            };
            if keep {
                out.push(Tuple {
                    params: params.clone(),
                    extended: false,
                });
            }
            return Ok(());
        };
        let (lo, hi) = (s.from.eval(params)?, s.to.eval(params)?);
        for v in lo..=hi {
            params.insert(s.name.clone(), v);
            self.scan_from(k + 1, params, out)?;
        }
        params.remove(&s.name);
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LedgerFile {
    case: Vec<LedgerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn bundled() -> Result<Self> {
        Self::from_toml(BUNDLED)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Ledger(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: LedgerFile = toml::from_str(text).map_err(|e| Error::Ledger(e.to_string()))?;
        let mut ids = BTreeSet::new();
        for e in &file.case {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::Ledger(format!("duplicate case id `{}`", e.id)));
            }
            if e.variant.is_empty() {
                return Err(Error::Ledger(format!("case `{}` has no variant", e.id)));
            }
            if let Some(v) = e.variant.iter().find(|v| v.expect.is_empty()) {
                return Err(Error::Ledger(format!(
                    "case `{}` variant `{}` has no expectation",
                    e.id,
                    v.name.as_deref().unwrap_or("-")
                )));
            }
        }
        Ok(Ledger { entries: file.case })
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&LedgerEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::Ledger(format!("no case `{id}`")))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }
}

/// The bundled ledger's entries.
pub fn ledger_entries() -> Result<Vec<LedgerEntry>> {
    Ok(Ledger::bundled()?.entries)
}
