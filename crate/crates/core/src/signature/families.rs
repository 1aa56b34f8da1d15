use serde::Serialize;

use super::NecSignature;
use crate::error::{Error, Result};
use crate::expr::is_prime;

/// Which order-2p targets a signature can be realized over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetFamily {
    DihedralOrCyclic,
    CyclicOnly,
}

impl TargetFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            TargetFamily::DihedralOrCyclic => "D_p|C_2p",
            TargetFamily::CyclicOnly => "C_2p",
        }
    }
}

pub fn require_odd_prime(p: u32) -> Result<()> {
    if p > 2 && is_prime(p as i64) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("p = {p} is not an odd prime")))
    }
}

fn require_hyperbolic(g: u32) -> Result<()> {
    if g >= 2 {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("genus {g} is below 2")))
    }
}

/// `(0,[p^u])` with `(p−1)(u−2) = 2g`.
pub fn cyclic_p_gonal_signature(p: u32, g: u32) -> Result<NecSignature> {
    require_odd_prime(p)?;
    require_hyperbolic(g)?;
    let (p, g) = (p as u64, g as u64);
    if (2 * g) % (p - 1) != 0 {
        return Err(Error::NoSignature(format!(
            "{} does not divide 2g = {}",
            p - 1,
            2 * g
        )));
    }
    let u = 2 * g / (p - 1) + 2;
    Ok(NecSignature::fuchsian(0, vec![p as u32; u as usize]))
}

/// All `(0,+,[p^u],{(p^v)})` with `v ≥ 1` and `(p−1)(2u+v−2) = 2g`, by ascending `u`,
/// followed by `(0,+,[p^u],{(-)})` with `(p−1)(u−1) = g` when that has a solution.
pub fn real_cyclic_signatures(p: u32, g: u32) -> Result<Vec<(NecSignature, TargetFamily)>> {
    require_odd_prime(p)?;
    require_hyperbolic(g)?;
    let (p64, g64) = (p as u64, g as u64);
    let mut out = Vec::new();
    if (2 * g64) % (p64 - 1) == 0 {
        let total = 2 * g64 / (p64 - 1) + 2;
        let mut u = 0;
        while 2 * u < total {
            let v = total - 2 * u;
            out.push((
                NecSignature::new(true, 0, vec![p; u as usize], vec![vec![p; v as usize]]),
                TargetFamily::DihedralOrCyclic,
            ));
            u += 1;
        }
    }
    if g64 % (p64 - 1) == 0 {
        let u = g64 / (p64 - 1) + 1;
        out.push((
            NecSignature::new(true, 0, vec![p; u as usize], vec![vec![]]),
            TargetFamily::CyclicOnly,
        ));
    }
    Ok(out)
}
