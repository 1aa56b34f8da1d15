use std::sync::Arc;

use rayon::prelude::*;

use super::SurfaceKernelEpi;
use crate::error::{Error, Result};
use crate::group::SignedGroup;
use crate::signature::{CanonicalPresentation, GeneratorKind, NecSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Largest accepted product of per-generator candidate counts.
    pub budget: u128,
    /// Worker threads; `1` searches sequentially.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            budget: 1 << 40,
            jobs: 1,
        }
    }
}

/// One check performed right after a generator is assigned.
#[derive(Debug, Clone)]
enum Check {
    /// `θ(c_prev) θ(c_cur)` has order `n`.
    Link { prev: usize, cur: usize, n: usize },
    /// `c_first e^{-1} c_last e = 1`.
    Closing { first: usize, last: usize, e: usize },
    /// `x_1 ⋯ x_r e_1 ⋯ e_k = 1` over these positions.
    Long(Vec<usize>),
}

struct Plan {
    presentation: CanonicalPresentation,
    candidates: Vec<Vec<usize>>,
    checks: Vec<Vec<Check>>,
}

fn plan(sig: &NecSignature, target: &SignedGroup) -> Result<Plan> {
    if sig.genus() != 0 {
        return Err(Error::Hypothesis(format!(
            "enumeration needs genus 0, got {sig}"
        )));
    }
    let pres = sig.canonical_presentation();
    let g = target.group();
    let n = g.order();
    let conformal: Vec<usize> = (0..n).filter(|&x| !target.is_reversing(x)).collect();
    let involutions = target.anticonformal_involutions();
    let mut candidates = Vec::new();
    for gen in &pres.generators {
        candidates.push(match gen.kind {
            GeneratorKind::Elliptic { index } => {
                let m = sig.proper_periods()[index] as usize;
                conformal
                    .iter()
                    .copied()
                    .filter(|&x| g.element_order(x) == m)
                    .collect()
            }
            GeneratorKind::Connector { .. } => conformal.clone(),
            GeneratorKind::Reflection { .. } => involutions.clone(),
            _ => unreachable!("genus 0 has no hyperbolic generators"),
        });
    }
    let mut checks: Vec<Vec<Check>> = vec![Vec::new(); pres.generators.len()];
    let pos = |k| pres.position(k).expect("generator present");
    for (cycle, links) in sig.period_cycles().iter().enumerate() {
        for (j, &m) in links.iter().enumerate() {
            let cur = pos(GeneratorKind::Reflection {
                cycle,
                index: j + 1,
            });
            let prev = pos(GeneratorKind::Reflection { cycle, index: j });
            checks[cur].push(Check::Link {
                prev,
                cur,
                n: m as usize,
            });
        }
        let last = pos(GeneratorKind::Reflection {
            cycle,
            index: links.len(),
        });
        let first = pos(GeneratorKind::Reflection { cycle, index: 0 });
        checks[last].push(Check::Closing {
            first,
            last,
            e: pos(GeneratorKind::Connector { index: cycle }),
        });
    }
    let long: Vec<usize> = pres
        .generators
        .iter()
        .enumerate()
        .filter(|(_, gen)| {
            matches!(
                gen.kind,
                GeneratorKind::Elliptic { .. } | GeneratorKind::Connector { .. }
            )
        })
        .map(|(i, _)| i)
        .collect();
    if let Some(&i) = long.last() {
        checks[i].push(Check::Long(long.clone()))
    }
    Ok(Plan {
        presentation: pres,
        candidates,
        checks,
    })
}

/// Product of candidate counts over all generators.
pub fn search_space_estimate(sig: &NecSignature, target: &SignedGroup) -> Result<u128> {
    let plan = plan(sig, target)?;
    Ok(plan
        .candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128)))
}

fn passes(target: &SignedGroup, checks: &[Check], images: &[usize]) -> bool {
    let g = target.group();
    checks.iter().all(|c| match *c {
        Check::Link { prev, cur, n } => g.element_order(g.mul(images[prev], images[cur])) == n,
        Check::Closing { first, last, e } => {
            let ei = images[e];
            g.mul(g.mul(images[first], g.inv(ei)), g.mul(images[last], ei)) == 0
        }
        Check::Long(ref positions) => {
            positions.iter().fold(0, |acc, &i| g.mul(acc, images[i])) == 0
        }
    })
}

fn dfs(plan: &Plan, target: &SignedGroup, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let i = images.len();
    if i == plan.candidates.len() {
        if target.group().subgroup_generated(images).order() == target.order() {
            out.push(images.clone());
        }
        return;
    }
    for &c in &plan.candidates[i] {
        images.push(c);
        if passes(target, &plan.checks[i], images) {
            dfs(plan, target, images, out);
        }
        images.pop();
    }
}

/// Every surface-kernel epimorphism `Δ(sig) → G`, sorted by image tuple.
pub fn enumerate_surface_kernel_epis(
    sig: &NecSignature,
    target: Arc<SignedGroup>,
    options: EnumerateOptions,
) -> Result<Vec<SurfaceKernelEpi>> {
    let plan = plan(sig, &target)?;
    let estimate = plan
        .candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if estimate > options.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            limit: options.budget,
        });
    }
    let mut found: Vec<Vec<usize>> = if plan.candidates.is_empty() {
        Vec::new()
    } else if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Construction(e.to_string()))?;
        pool.install(|| {
            plan.candidates[0]
                .par_iter()
                .map(|&c| {
                    let mut out = Vec::new();
                    let mut images = vec![c];
                    if passes(&target, &plan.checks[0], &images) {
                        dfs(&plan, &target, &mut images, &mut out);
                    }
                    out
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        })
    } else {
        let mut out = Vec::new();
        dfs(&plan, &target, &mut Vec::new(), &mut out);
        out
    };
    found.sort();
    found.dedup();
    Ok(found
        .into_iter()
        .map(|images| {
            SurfaceKernelEpi::new_unchecked(
                sig.clone(),
                plan.presentation.clone(),
                Arc::clone(&target),
                images,
            )
        })
        .collect())
}
