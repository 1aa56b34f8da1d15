use std::fmt;

use serde::Serialize;

use super::NecSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeneratorKind {
    Elliptic { index: usize },
    Connector { index: usize },
    Reflection { cycle: usize, index: usize },
    HyperbolicA { index: usize },
    HyperbolicB { index: usize },
    Glide { index: usize },
}

impl GeneratorKind {
    /// Reflections and glides reverse orientation.
    pub fn reverses_orientation(self) -> bool {
        matches!(
            self,
            GeneratorKind::Reflection { .. } | GeneratorKind::Glide { .. }
        )
    }

    pub fn is_reflection(self) -> bool {
        matches!(self, GeneratorKind::Reflection { .. })
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based in text, 0-based internally (except reflection j, which starts at 0)
        match *self {
            GeneratorKind::Elliptic { index } => write!(f, "x{}", index + 1),
            GeneratorKind::Connector { index } => write!(f, "e{}", index + 1),
            GeneratorKind::Reflection { cycle, index } => write!(f, "c{},{}", cycle + 1, index),
            GeneratorKind::HyperbolicA { index } => write!(f, "a{}", index + 1),
            GeneratorKind::HyperbolicB { index } => write!(f, "b{}", index + 1),
            GeneratorKind::Glide { index } => write!(f, "d{}", index + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub name: String,
    pub reverses_orientation: bool,
}

/// A generator (by position in the presentation) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn plain(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RelatorKind {
    EllipticPower {
        index: usize,
    },
    ReflectionSquare {
        cycle: usize,
        index: usize,
    },
    /// `(c_{cycle,index-1} c_{cycle,index})^n`
    Link {
        cycle: usize,
        index: usize,
    },
    CycleClosing {
        cycle: usize,
    },
    Long,
}

/// `base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub kind: RelatorKind,
    pub base: Vec<Letter>,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalPresentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

impl CanonicalPresentation {
    pub(super) fn of(sig: &NecSignature) -> Self {
        let mut kinds = Vec::new();
        let r = sig.proper_periods().len();
        let cycles = sig.period_cycles();
        kinds.extend((0..r).map(|index| GeneratorKind::Elliptic { index }));
        kinds.extend((0..cycles.len()).map(|index| GeneratorKind::Connector { index }));
        for (cycle, links) in cycles.iter().enumerate() {
            kinds.extend((0..=links.len()).map(|index| GeneratorKind::Reflection { cycle, index }));
        }
        let h = sig.genus() as usize;
        if sig.orientable() {
            for index in 0..h {
                kinds.push(GeneratorKind::HyperbolicA { index });
                kinds.push(GeneratorKind::HyperbolicB { index });
            }
        } else {
            kinds.extend((0..h).map(|index| GeneratorKind::Glide { index }));
        }
        let generators: Vec<Generator> = kinds
            .iter()
            .map(|&kind| Generator {
                kind,
                name: kind.to_string(),
                reverses_orientation: kind.reverses_orientation(),
            })
            .collect();
        let pos = |k: GeneratorKind| {
            kinds
                .iter()
                .position(|&g| g == k)
                .expect("generator present")
        };

        let mut relators = Vec::new();
        for (index, &m) in sig.proper_periods().iter().enumerate() {
            relators.push(Relator {
                kind: RelatorKind::EllipticPower { index },
                base: vec![Letter::plain(pos(GeneratorKind::Elliptic { index }))],
                exponent: m,
            });
        }
        for (cycle, links) in cycles.iter().enumerate() {
            for index in 0..=links.len() {
                relators.push(Relator {
                    kind: RelatorKind::ReflectionSquare { cycle, index },
                    base: vec![Letter::plain(pos(GeneratorKind::Reflection {
                        cycle,
                        index,
                    }))],
                    exponent: 2,
                });
            }
        }
        for (cycle, links) in cycles.iter().enumerate() {
            for (j, &n) in links.iter().enumerate() {
                let index = j + 1;
                relators.push(Relator {
                    kind: RelatorKind::Link { cycle, index },
                    base: vec![
                        Letter::plain(pos(GeneratorKind::Reflection {
                            cycle,
                            index: index - 1,
                        })),
                        Letter::plain(pos(GeneratorKind::Reflection { cycle, index })),
                    ],
                    exponent: n,
                });
            }
        }
        for (cycle, links) in cycles.iter().enumerate() {
            let e = pos(GeneratorKind::Connector { index: cycle });
            relators.push(Relator {
                kind: RelatorKind::CycleClosing { cycle },
                base: vec![
                    Letter::plain(pos(GeneratorKind::Reflection { cycle, index: 0 })),
                    Letter::inv(e),
                    Letter::plain(pos(GeneratorKind::Reflection {
                        cycle,
                        index: links.len(),
                    })),
                    Letter::plain(e),
                ],
                exponent: 1,
            });
        }
        let mut long: Vec<Letter> = (0..r)
            .map(|index| Letter::plain(pos(GeneratorKind::Elliptic { index })))
            .collect();
        long.extend(
            (0..cycles.len()).map(|index| Letter::plain(pos(GeneratorKind::Connector { index }))),
        );
        for index in 0..h {
            if sig.orientable() {
                let a = pos(GeneratorKind::HyperbolicA { index });
                let b = pos(GeneratorKind::HyperbolicB { index });
                long.extend([
                    Letter::plain(a),
                    Letter::plain(b),
                    Letter::inv(a),
                    Letter::inv(b),
                ]);
            } else {
                let d = pos(GeneratorKind::Glide { index });
                long.extend([Letter::plain(d), Letter::plain(d)]);
            }
        }
        relators.push(Relator {
            kind: RelatorKind::Long,
            base: long,
            exponent: 1,
        });
        CanonicalPresentation {
            generators,
            relators,
        }
    }

    pub fn position(&self, kind: GeneratorKind) -> Option<usize> {
        self.generators.iter().position(|g| g.kind == kind)
    }

    pub fn render(&self, relator: &Relator) -> String {
        let word: Vec<String> = relator
            .base
            .iter()
            .map(|l| {
                let name = &self.generators[l.generator].name;
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect();
        let word = word.join(" ");
        match (relator.exponent, relator.base.len()) {
            (1, _) => word,
            (n, 1) => format!("{word}^{n}"),
            (n, _) => format!("({word})^{n}"),
        }
    }
}
