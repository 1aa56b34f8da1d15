//! Surface-kernel epimorphisms from NEC groups onto finite signed groups.

mod search;
mod theta;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use search::{enumerate_surface_kernel_epis, search_space_estimate, EnumerateOptions};
pub use theta::{theta1, theta2, theta3, ConnectorImage};

use crate::error::{Error, Result};
use crate::group::{SignedGroup, Subgroup};
use crate::signature::{CanonicalPresentation, GeneratorKind, NecSignature, Relator, RelatorKind};

/// First condition a candidate assignment fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum KernelViolation {
    Arity {
        expected: usize,
        found: usize,
    },
    Orientation {
        generator: String,
        expected: i8,
    },
    Torsion {
        word: String,
        expected: u32,
        found: usize,
    },
    Relator {
        relator: String,
    },
    NotSurjective {
        generated: usize,
        order: usize,
    },
}

impl fmt::Display for KernelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelViolation::Arity { expected, found } => {
                write!(f, "expected {expected} generator images, got {found}")
            }
            KernelViolation::Orientation {
                generator,
                expected,
            } => {
                write!(
                    f,
                    "orientation: image of {generator} must have sign {expected:+}"
                )
            }
            KernelViolation::Torsion {
                word,
                expected,
                found,
            } => {
                write!(
                    f,
                    "torsion: image of {word} has order {found}, expected {expected}"
                )
            }
            KernelViolation::Relator { relator } => {
                write!(f, "relator {relator} is not the identity")
            }
            KernelViolation::NotSurjective { generated, order } => {
                write!(
                    f,
                    "not surjective: images generate {generated} of {order} elements"
                )
            }
        }
    }
}

fn eval_relator_base(target: &SignedGroup, rel: &Relator, images: &[usize]) -> usize {
    let g = target.group();
    rel.base.iter().fold(0, |acc, l| {
        let x = images[l.generator];
        g.mul(acc, if l.inverse { g.inv(x) } else { x })
    })
}

/// Checks, in order: orientation, torsion, long relator, cycle closing, surjectivity.
pub fn check_surface_kernel(
    sig: &NecSignature,
    target: &SignedGroup,
    images: &[usize],
) -> std::result::Result<(), KernelViolation> {
    let pres = sig.canonical_presentation();
    check_with(&pres, target, images)
}

fn check_with(
    pres: &CanonicalPresentation,
    target: &SignedGroup,
    images: &[usize],
) -> std::result::Result<(), KernelViolation> {
    let g = target.group();
    if images.len() != pres.generators.len() || images.iter().any(|&x| x >= g.order()) {
        return Err(KernelViolation::Arity {
            expected: pres.generators.len(),
            found: images.len(),
        });
    }
    for (gen, &x) in pres.generators.iter().zip(images) {
        if target.is_reversing(x) != gen.reverses_orientation {
            let expected = if gen.reverses_orientation { -1 } else { 1 };
            return Err(KernelViolation::Orientation {
                generator: gen.name.clone(),
                expected,
            });
        }
    }
    for rel in &pres.relators {
        let torsion = matches!(
            rel.kind,
            RelatorKind::EllipticPower { .. }
                | RelatorKind::ReflectionSquare { .. }
                | RelatorKind::Link { .. }
        );
        if !torsion {
            continue;
        }
        let found = g.element_order(eval_relator_base(target, rel, images));
        if found != rel.exponent as usize {
            let mut word = pres.render(&Relator {
                exponent: 1,
                ..rel.clone()
            });
            if rel.base.len() > 1 {
                word = format!("({word})");
            }
            return Err(KernelViolation::Torsion {
                word,
                expected: rel.exponent,
                found,
            });
        }
    }
    let ordered = pres
        .relators
        .iter()
        .filter(|r| r.kind == RelatorKind::Long)
        .chain(
            pres.relators
                .iter()
                .filter(|r| matches!(r.kind, RelatorKind::CycleClosing { .. })),
        );
    for rel in ordered {
        let v = eval_relator_base(target, rel, images);
        if g.pow(v, rel.exponent as i64) != 0 {
            return Err(KernelViolation::Relator {
                relator: pres.render(rel),
            });
        }
    }
    let generated = g.subgroup_generated(images).order();
    if generated != g.order() {
        return Err(KernelViolation::NotSurjective {
            generated,
            order: g.order(),
        });
    }
    Ok(())
}

/// A validated surface-kernel epimorphism `θ: Δ → G`.
#[derive(Debug, Clone)]
pub struct SurfaceKernelEpi {
    signature: NecSignature,
    presentation: CanonicalPresentation,
    target: Arc<SignedGroup>,
    images: Vec<usize>,
}

impl SurfaceKernelEpi {
    /// `images` are listed in canonical generator order.
    pub fn new(
        signature: NecSignature,
        target: Arc<SignedGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        let presentation = signature.canonical_presentation();
        check_with(&presentation, &target, &images)
            .map_err(|v| Error::NotASurfaceKernel(v.to_string()))?;
        Ok(SurfaceKernelEpi {
            signature,
            presentation,
            target,
            images,
        })
    }

    pub(crate) fn new_unchecked(
        signature: NecSignature,
        presentation: CanonicalPresentation,
        target: Arc<SignedGroup>,
        images: Vec<usize>,
    ) -> Self {
        SurfaceKernelEpi {
            signature,
            presentation,
            target,
            images,
        }
    }

    pub fn signature(&self) -> &NecSignature {
        &self.signature
    }

    pub fn presentation(&self) -> &CanonicalPresentation {
        &self.presentation
    }

    pub fn target(&self) -> &SignedGroup {
        &self.target
    }

    pub fn target_arc(&self) -> &Arc<SignedGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, kind: GeneratorKind) -> Option<usize> {
        self.presentation.position(kind).map(|i| self.images[i])
    }

    /// Images of all reflection generators, in canonical order.
    pub fn reflection_images(&self) -> Vec<usize> {
        self.presentation
            .generators
            .iter()
            .zip(&self.images)
            .filter(|(g, _)| g.kind.is_reflection())
            .map(|(_, &x)| x)
            .collect()
    }

    pub fn kernel_genus(&self) -> Result<u64> {
        kernel_genus(self)
    }

    pub fn record(&self) -> EpiRecord {
        let g = self.target.group();
        EpiRecord {
            signature: self.signature.to_string(),
            group: self.target.name().to_string(),
            images: self
                .presentation
                .generators
                .iter()
                .zip(&self.images)
                .map(|(gen, &x)| GeneratorImage {
                    generator: gen.name.clone(),
                    image: g.label(x).to_string(),
                })
                .collect(),
        }
    }
}

impl PartialEq for SurfaceKernelEpi {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.target.name() == other.target.name()
            && self.images == other.images
    }
}

impl Eq for SurfaceKernelEpi {}

/// Serializable view of an epimorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpiRecord {
    pub signature: String,
    pub group: String,
    pub images: Vec<GeneratorImage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

impl fmt::Display for EpiRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}:", self.signature, self.group)?;
        for gi in &self.images {
            write!(f, " {}={}", gi.generator, gi.image)?;
        }
        Ok(())
    }
}

/// Riemann–Hurwitz genus of `ker θ`.
pub fn kernel_genus(epi: &SurfaceKernelEpi) -> Result<u64> {
    epi.signature
        .kernel_surface_genus(epi.target.order() as u64)
}

/// Right-coset action of the generator images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetAction {
    /// Cosets `Hx`, each sorted, ordered by least element.
    pub cosets: Vec<Vec<usize>>,
    /// `(generator, π)` with `Hx · θ(gen) = cosets[π[i]]` for `Hx = cosets[i]`.
    pub permutations: Vec<(String, Vec<usize>)>,
}

pub fn coset_action(epi: &SurfaceKernelEpi, h: &Subgroup) -> CosetAction {
    let g = epi.target.group();
    let mut index = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..g.order() {
        if index[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = h.elements().iter().map(|&y| g.mul(y, x)).collect();
        c.sort_unstable();
        for &y in &c {
            index[y] = cosets.len();
        }
        cosets.push(c);
    }
    let permutations = epi
        .presentation
        .generators
        .iter()
        .zip(&epi.images)
        .map(|(gen, &t)| {
            (
                gen.name.clone(),
                cosets.iter().map(|c| index[g.mul(c[0], t)]).collect(),
            )
        })
        .collect();
    CosetAction {
        cosets,
        permutations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Arc<SignedGroup> {
        Arc::new(SignedGroup::dihedral_target(3).unwrap())
    }

    #[test]
    fn violations_are_reported_in_order() {
        let t = d3();
        let g = t.group();
        let (r, s) = (g.generator("r").unwrap(), g.generator("s").unwrap());
        let sig: NecSignature = "(0,+,[3],{(-)})".parse().unwrap();
        // x1, e1, c1,0
        assert!(matches!(
            check_surface_kernel(&sig, &t, &[r, 0]),
            Err(KernelViolation::Arity { .. })
        ));
        assert!(matches!(
            check_surface_kernel(&sig, &t, &[s, 0, s]),
            Err(KernelViolation::Orientation { .. })
        ));
        assert_eq!(
            check_surface_kernel(&sig, &t, &[0, 0, s]),
            Err(KernelViolation::Torsion {
                word: "x1".into(),
                expected: 3,
                found: 1
            })
        );
        assert!(matches!(
            check_surface_kernel(&sig, &t, &[r, 0, s]),
            Err(KernelViolation::Relator { .. })
        ));
        let ri = g.inv(r);
        assert_eq!(
            check_surface_kernel(&sig, &t, &[r, ri, s]),
            Err(KernelViolation::Relator {
                relator: "c1,0 e1^-1 c1,0 e1".into()
            })
        );
    }

    #[test]
    fn surjectivity_is_checked() {
        let t = Arc::new(SignedGroup::dihedral_target(3).unwrap());
        let s = t.group().generator("s").unwrap();
        let sig: NecSignature = "(0,+,[-],{(2,2)})".parse().unwrap();
        let err = check_surface_kernel(&sig, &t, &[0, s, s, s]).unwrap_err();
        // (s s) has order 1, caught as torsion before surjectivity
        assert!(matches!(err, KernelViolation::Torsion { .. }));
    }

    #[test]
    fn coset_action_of_reflection_subgroup() {
        let epi = theta2(3, 4).unwrap();
        let g = epi.target().group();
        let s = g.generator("s").unwrap();
        let act = coset_action(&epi, &g.subgroup_generated(&[s]));
        assert_eq!(act.cosets.len(), 3);
        let first = &act
            .permutations
            .iter()
            .find(|(n, _)| n == "c1,0")
            .unwrap()
            .1;
        // s fixes the coset ⟨s⟩
        assert_eq!(first[0], 0);
        let whole = coset_action(&epi, &g.whole());
        assert!(whole.permutations.iter().all(|(_, p)| p == &vec![0]));
        let e1 = theta1(3, 5).unwrap();
        let act = coset_action(&e1, &g.subgroup_generated(&[s]));
        let x1 = &act.permutations.iter().find(|(n, _)| n == "x1").unwrap().1;
        assert!(x1.iter().enumerate().all(|(i, &j)| i != j));
    }

    #[test]
    fn records_name_every_generator() {
        let epi = theta1(3, 5).unwrap();
        let rec = epi.record();
        assert_eq!(rec.signature, "(0,+,[3,3],{(3,3,3)})");
        let names: Vec<&str> = rec.images.iter().map(|i| i.generator.as_str()).collect();
        assert_eq!(names, ["x1", "x2", "e1", "c1,0", "c1,1", "c1,2", "c1,3"]);
        assert_eq!(rec.images[0].image, "r");
    }
}
