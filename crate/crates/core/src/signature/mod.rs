//! NEC and Fuchsian signatures.

mod area;
mod families;
mod parse;
mod presentation;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use area::{area_in, kernel_surface_genus_in, rh_index_in, Scalar};
pub use families::{
    cyclic_p_gonal_signature, real_cyclic_signatures, require_odd_prime, TargetFamily,
};
pub use presentation::{
    CanonicalPresentation, Generator, GeneratorKind, Letter, Relator, RelatorKind,
};

use crate::error::{Error, Result};
use crate::ExactArea;

/// Signature `(h; ±; [m_1..m_r]; {(n_11..n_1s_1), .., (n_k1..n_ks_k)})`.
///
/// A Fuchsian signature is the orientable case with no period cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecSignature {
    orientable: bool,
    genus: u32,
    proper_periods: Vec<u32>,
    period_cycles: Vec<Vec<u32>>,
}

/// One reason a signature fails [`NecSignature::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PeriodBelowTwo {
        index: usize,
        value: u32,
    },
    LinkPeriodBelowTwo {
        cycle: usize,
        index: usize,
        value: u32,
    },
    NonOrientableGenusZero,
    NonPositiveArea(ExactArea),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PeriodBelowTwo { index, value } => {
                write!(f, "proper period #{} is {value}, below 2", index + 1)
            }
            Violation::LinkPeriodBelowTwo {
                cycle,
                index,
                value,
            } => write!(
                f,
                "link period #{} of cycle #{} is {value}, below 2",
                index + 1,
                cycle + 1
            ),
            Violation::NonOrientableGenusZero => write!(f, "non-orientable signature with genus 0"),
            Violation::NonPositiveArea(a) => write!(f, "non-positive area {a}"),
        }
    }
}

impl NecSignature {
    pub fn new(
        orientable: bool,
        genus: u32,
        proper_periods: Vec<u32>,
        period_cycles: Vec<Vec<u32>>,
    ) -> Self {
        NecSignature {
            orientable,
            genus,
            proper_periods,
            period_cycles,
        }
    }

    /// Fuchsian signature `(h; [m_1..m_r])`.
    pub fn fuchsian(genus: u32, proper_periods: Vec<u32>) -> Self {
        Self::new(true, genus, proper_periods, Vec::new())
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn proper_periods(&self) -> &[u32] {
        &self.proper_periods
    }

    pub fn period_cycles(&self) -> &[Vec<u32>] {
        &self.period_cycles
    }

    pub fn is_fuchsian(&self) -> bool {
        self.orientable && self.period_cycles.is_empty()
    }

    /// μ/2π as an exact rational.
    pub fn area(&self) -> ExactArea {
        area_in::<i64>(self)
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (index, &value) in self.proper_periods.iter().enumerate() {
            if value < 2 {
                out.push(Violation::PeriodBelowTwo { index, value });
            }
        }
        for (cycle, links) in self.period_cycles.iter().enumerate() {
            for (index, &value) in links.iter().enumerate() {
                if value < 2 {
                    out.push(Violation::LinkPeriodBelowTwo {
                        cycle,
                        index,
                        value,
                    });
                }
            }
        }
        if !self.orientable && self.genus == 0 {
            out.push(Violation::NonOrientableGenusZero);
        }
        let a = self.area();
        if a <= ExactArea::from_integer(0) {
            out.push(Violation::NonPositiveArea(a));
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn canonical_presentation(&self) -> CanonicalPresentation {
        CanonicalPresentation::of(self)
    }

    /// Genus of a surface kernel of index `group_order`, via Riemann–Hurwitz.
    pub fn kernel_surface_genus(&self, group_order: u64) -> Result<u64> {
        let g = kernel_surface_genus_in::<i64>(self, group_order)?;
        Ok(g as u64)
    }
}

impl FromStr for NecSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_signature(s)
    }
}

impl fmt::Display for NecSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_signature(self))
    }
}

impl Serialize for NecSignature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn parse_signature(text: &str) -> Result<NecSignature> {
    parse::parse_signature(text)
}

pub fn format_signature(sig: &NecSignature) -> String {
    parse::format_signature(sig)
}

/// `[Γ : Γ']` from the two areas.
pub fn rh_index(sub: ExactArea, sup: ExactArea) -> Result<ExactArea> {
    rh_index_in(sub, sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> NecSignature {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(sig("(0,+,[3,3],{(3,3,3,3)})").validate().is_ok());
        let v = sig("(0,+,[-],{(-)})").validate().unwrap_err();
        assert_eq!(
            v,
            vec![Violation::NonPositiveArea(ExactArea::from_integer(-1))]
        );
        let v = NecSignature::fuchsian(0, vec![1, 3, 3, 3])
            .validate()
            .unwrap_err();
        assert!(v.contains(&Violation::PeriodBelowTwo { index: 0, value: 1 }));
        let v = NecSignature::new(false, 0, vec![3, 3, 3, 3], vec![])
            .validate()
            .unwrap_err();
        assert!(v.contains(&Violation::NonOrientableGenusZero));
    }

    #[test]
    fn kernel_genus_examples() {
        assert_eq!(
            sig("(0,+,[3,3],{(3,3,3,3)})")
                .kernel_surface_genus(6)
                .unwrap(),
            6
        );
        assert_eq!(
            sig("(0,+,[3,3,3],{(-)})").kernel_surface_genus(6).unwrap(),
            4
        );
        assert_eq!(sig("(0,[3,3,3,3])").kernel_surface_genus(3).unwrap(), 2);
        // 2 * 2/3 = 4/3 is not an even integer shift
        assert!(sig("(0,[3,3,3,3])").kernel_surface_genus(2).is_err());
    }
}
