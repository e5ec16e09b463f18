//! Built-in validated examples and seeded generators.

pub mod build;
pub mod random;
pub mod suite;

pub use build::*;
pub use random::*;
pub use suite::*;

use crate::entwining::{from_doi_hopf, DoiHopfDatum, Entwining};
use crate::error::{Error, Result};
use crate::exactlin::{Field, LinMap};
use crate::ringext::RingExtension;
use crate::smash::{entwining_to_factorization, Factorization};
use crate::structures::{AlgebraData, BialgebraData, CoalgebraData, ValidationReport};

/// One structure of any supported kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Algebra(AlgebraData),
    Coalgebra(CoalgebraData),
    Bialgebra(BialgebraData),
    DoiHopf(DoiHopfDatum),
    Entwining(Entwining),
    Factorization(Factorization),
    Extension(RingExtension),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Coalgebra(_) => "coalgebra",
            Payload::Bialgebra(_) => "bialgebra",
            Payload::DoiHopf(_) => "doi_hopf",
            Payload::Entwining(_) => "entwining",
            Payload::Factorization(_) => "factorization",
            Payload::Extension(_) => "ring_extension",
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Payload::Algebra(x) => x.field(),
            Payload::Coalgebra(x) => x.field(),
            Payload::Bialgebra(x) => x.field(),
            Payload::DoiHopf(x) => x.h.field(),
            Payload::Entwining(x) => x.field(),
            Payload::Factorization(x) => x.field(),
            Payload::Extension(x) => x.field(),
        }
    }

    /// Every applicable validator, including those of the constituents.
    pub fn check(&self) -> ValidationReport {
        match self {
            Payload::Algebra(x) => x.check(),
            Payload::Coalgebra(x) => x.check(),
            Payload::Bialgebra(x) => x.check(),
            Payload::DoiHopf(x) => x.check(),
            Payload::Entwining(x) => {
                let mut r = ValidationReport::new("entwining structure");
                r.absorb(x.a().check());
                r.absorb(x.c().check());
                r.absorb(x.check());
                r
            }
            Payload::Factorization(x) => {
                let mut r = ValidationReport::new("factorization structure");
                r.absorb(x.b().check());
                r.absorb(x.a().check());
                r.absorb(x.check());
                r
            }
            Payload::Extension(x) => {
                let mut r = ValidationReport::new("algebra extension");
                r.absorb(x.base().check());
                r.absorb(x.top().check());
                r.absorb(x.check());
                r
            }
        }
    }

    /// The entwining carried by the payload, if any.
    pub fn entwining(&self) -> Option<Entwining> {
        match self {
            Payload::Entwining(e) => Some(e.clone()),
            Payload::DoiHopf(d) => from_doi_hopf(d).ok(),
            _ => None,
        }
    }
}

/// A named, validated corpus structure.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub field: Field,
    pub payload: Payload,
    pub note: &'static str,
}

struct Registered {
    name: &'static str,
    note: &'static str,
    make: fn(Field) -> Payload,
}

fn ent(e: Entwining) -> Payload {
    Payload::Entwining(e)
}

const REGISTRY: &[Registered] = &[
    Registered {
        name: "k",
        note: "ground field",
        make: |f| Payload::Algebra(trivial_algebra(f)),
    },
    Registered {
        name: "kC2",
        note: "group algebra of C2",
        make: |f| Payload::Algebra(group_algebra(f, 2)),
    },
    Registered {
        name: "kC3",
        note: "group algebra of C3",
        make: |f| Payload::Algebra(group_algebra(f, 3)),
    },
    Registered {
        name: "M2",
        note: "2x2 matrices",
        make: |f| Payload::Algebra(matrix_algebra(f)),
    },
    Registered {
        name: "kDN",
        note: "k[x]/(x^2)",
        make: |f| Payload::Algebra(dual_numbers_algebra(f)),
    },
    Registered {
        name: "GL2",
        note: "two group-like elements",
        make: |f| Payload::Coalgebra(grouplike_coalgebra(f, 2)),
    },
    Registered {
        name: "GL3",
        note: "three group-like elements",
        make: |f| Payload::Coalgebra(grouplike_coalgebra(f, 3)),
    },
    Registered {
        name: "DN",
        note: "dual-numbers coalgebra",
        make: |f| Payload::Coalgebra(dual_numbers_coalgebra(f)),
    },
    Registered {
        name: "kC2-bialgebra",
        note: "group bialgebra of C2",
        make: |f| Payload::Bialgebra(group_bialgebra(f, 2)),
    },
    Registered {
        name: "sweedler",
        note: "Sweedler 4-dim Hopf algebra; valid in every characteristic",
        make: |f| Payload::Bialgebra(sweedler_bialgebra(f)),
    },
    Registered {
        name: "flip-k-GL2",
        note: "A=k, C=GL2, flip",
        make: |f| {
            ent(Entwining::flip(
                trivial_algebra(f),
                grouplike_coalgebra(f, 2),
            ))
        },
    },
    Registered {
        name: "flip-k-DN",
        note: "A=k, C=DN, flip; Frobenius but not separable",
        make: |f| {
            ent(Entwining::flip(
                trivial_algebra(f),
                dual_numbers_coalgebra(f),
            ))
        },
    },
    Registered {
        name: "flip-kC2-GL2",
        note: "A=kC2, C=GL2, flip",
        make: |f| {
            ent(Entwining::flip(
                group_algebra(f, 2),
                grouplike_coalgebra(f, 2),
            ))
        },
    },
    Registered {
        name: "flip-M2-DN",
        note: "A=M2, C=DN, flip",
        make: |f| {
            ent(Entwining::flip(
                matrix_algebra(f),
                dual_numbers_coalgebra(f),
            ))
        },
    },
    Registered {
        name: "doihopf-kC2",
        note: "regular Doi-Hopf datum (kC2, kC2, kC2)",
        make: |f| {
            ent(doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(
                f, 2,
            ))))
        },
    },
    Registered {
        name: "doihopf-graded-M2",
        note: "M2 graded by C2 over kC2, C=kC2",
        make: |f| Payload::DoiHopf(graded_matrix_doi_hopf(f)),
    },
    Registered {
        name: "doihopf-sweedler",
        note: "regular Doi-Hopf datum over the Sweedler algebra",
        make: |f| {
            ent(doi_hopf_entwining(&regular_doi_hopf(&sweedler_bialgebra(
                f,
            ))))
        },
    },
    Registered {
        name: "smash-flip-kC2",
        note: "B=A=kC2 with the flip",
        make: |f| {
            Payload::Factorization(Factorization::flip(
                group_algebra(f, 2),
                group_algebra(f, 2),
            ))
        },
    },
    Registered {
        name: "smash-doihopf-kC2",
        note: "factorization of the regular kC2 Doi-Hopf entwining",
        make: |f| {
            let e = doi_hopf_entwining(&regular_doi_hopf(&group_bialgebra(f, 2)));
            Payload::Factorization(entwining_to_factorization(&e).expect("dictionary"))
        },
    },
    Registered {
        name: "ext-k-kC2",
        note: "k -> kC2",
        make: |f| Payload::Extension(RingExtension::over_scalars(group_algebra(f, 2))),
    },
    Registered {
        name: "ext-k-kC3",
        note: "k -> kC3",
        make: |f| Payload::Extension(RingExtension::over_scalars(group_algebra(f, 3))),
    },
    Registered {
        name: "ext-k-M2",
        note: "k -> M2",
        make: |f| Payload::Extension(RingExtension::over_scalars(matrix_algebra(f))),
    },
    Registered {
        name: "ext-k-kDN",
        note: "k -> k[x]/(x^2)",
        make: |f| Payload::Extension(RingExtension::over_scalars(dual_numbers_algebra(f))),
    },
    Registered {
        name: "ext-id-kC2",
        note: "identity of kC2",
        make: |f| Payload::Extension(RingExtension::identity(group_algebra(f, 2))),
    },
    Registered {
        name: "ext-kC2-M2",
        note: "kC2 -> M2, g -> diag(1,-1)",
        make: |f| Payload::Extension(diagonal_group_in_matrices(f)),
    },
];

/// Registered entry names, in listing order.
pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name).collect()
}

/// Builds and validates a named entry.
pub fn builtin(name: &str, field: Field) -> Result<CorpusEntry> {
    let reg = REGISTRY
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Contract(format!("unknown corpus entry `{name}`")))?;
    let payload = (reg.make)(field);
    payload.check().into_result()?;
    Ok(CorpusEntry {
        name: reg.name,
        field,
        payload,
        note: reg.note,
    })
}

/// Every entry over `field`.
pub fn all(field: Field) -> Vec<CorpusEntry> {
    names()
        .into_iter()
        .map(|n| builtin(n, field).expect("builtin entries are valid"))
        .collect()
}

/// Named entwinings, including those induced by Doi-Hopf data.
pub fn entwinings(field: Field) -> Vec<(&'static str, Entwining)> {
    all(field)
        .into_iter()
        .filter_map(|e| e.payload.entwining().map(|x| (e.name, x)))
        .collect()
}

pub fn extensions(field: Field) -> Vec<(&'static str, RingExtension)> {
    all(field)
        .into_iter()
        .filter_map(|e| match e.payload {
            Payload::Extension(x) => Some((e.name, x)),
            _ => None,
        })
        .collect()
}

/// Named factorizations, plus the ones induced by every entwining.
pub fn factorizations(field: Field) -> Vec<(String, Factorization)> {
    let mut out = Vec::new();
    for e in all(field) {
        match &e.payload {
            Payload::Factorization(x) => out.push((e.name.to_string(), x.clone())),
            p => {
                if let Some(w) = p.entwining() {
                    let x = entwining_to_factorization(&w).expect("dictionary");
                    out.push((format!("{}-dictionary", e.name), x));
                }
            }
        }
    }
    out
}

/// A structure with one constant changed so that a unit or counit law must fail.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub entry: &'static str,
    pub label: String,
    pub payload: Payload,
}

fn bump(m: &LinMap, row: usize, col: usize) -> LinMap {
    let mut out = m.clone();
    let v = m.get(row, col) + &m.field().one();
    out.set(row, col, v);
    out
}

fn algebra_mutations(a: &AlgebraData) -> Vec<(String, AlgebraData)> {
    let n = a.dim();
    if a.unit().get(0, 0).is_one() && (1..n).all(|i| a.unit().get(i, 0).is_zero()) {
        // unit is e0: perturb e0·ej
        (0..n)
            .map(|j| {
                let k = (j + 1) % n;
                let m = bump(a.mult(), k, j);
                (
                    format!("mult[0][{j}][{k}]"),
                    AlgebraData::new(m, a.unit().clone()).expect("shape"),
                )
            })
            .collect()
    } else {
        (0..n)
            .map(|k| {
                let u = bump(a.unit(), k, 0);
                (
                    format!("unit[{k}]"),
                    AlgebraData::new(a.mult().clone(), u).expect("shape"),
                )
            })
            .collect()
    }
}

fn coalgebra_mutations(c: &CoalgebraData) -> Vec<(String, CoalgebraData)> {
    (0..c.dim())
        .map(|i| {
            let e = bump(c.counit(), 0, i);
            (
                format!("counit[{i}]"),
                CoalgebraData::new(c.comult().clone(), e).expect("shape"),
            )
        })
        .collect()
}

/// Deterministic list of invalid single-constant mutations of the corpus over `field`.
pub fn mutations(field: Field) -> Vec<Mutation> {
    let mut out = Vec::new();
    for entry in all(field) {
        let name = entry.name;
        let mut push = |label: String, payload: Payload| {
            out.push(Mutation {
                entry: name,
                label,
                payload,
            })
        };
        match &entry.payload {
            Payload::Algebra(a) => {
                for (l, m) in algebra_mutations(a) {
                    push(l, Payload::Algebra(m));
                }
            }
            Payload::Coalgebra(c) => {
                for (l, m) in coalgebra_mutations(c) {
                    push(l, Payload::Coalgebra(m));
                }
            }
            Payload::Bialgebra(h) => {
                for (l, c) in coalgebra_mutations(&h.coalgebra) {
                    push(
                        l,
                        Payload::Bialgebra(BialgebraData {
                            algebra: h.algebra.clone(),
                            coalgebra: c,
                        }),
                    );
                }
            }
            Payload::DoiHopf(d) => {
                // ρ(1) = 1⊗1 breaks when the coefficient of e_k⊗1 moves
                let unit_col = (0..d.a.dim())
                    .find(|&i| !d.a.unit().get(i, 0).is_zero())
                    .unwrap_or(0);
                for k in 0..d.a.dim() {
                    let mut m = d.clone();
                    m.coaction = bump(&d.coaction, k * d.h.dim(), unit_col);
                    push(format!("coaction[{unit_col}][{k}][0]"), Payload::DoiHopf(m));
                }
            }
            Payload::Entwining(e) => {
                if !e.a().unit().get(0, 0).is_one()
                    || (1..e.na()).any(|i| !e.a().unit().get(i, 0).is_zero())
                {
                    continue;
                }
                // ψ(c⊗1) = 1⊗c breaks when the coefficient of 1⊗c moves
                let (na, nc) = (e.na(), e.nc());
                for c in 0..nc {
                    let psi = bump(e.psi(), c, c * na);
                    let bad =
                        Entwining::unchecked(e.a().clone(), e.c().clone(), psi).expect("shape");
                    push(format!("psi[{c}][0][0][{c}]"), Payload::Entwining(bad));
                }
            }
            Payload::Factorization(x) => {
                // R(a⊗1) = 1⊗a with B unital at e0
                let (na, nb) = (x.na(), x.nb());
                for a in 0..na {
                    let r = bump(x.rmap(), a, a * nb);
                    let bad =
                        Factorization::unchecked(x.b().clone(), x.a().clone(), r).expect("shape");
                    push(format!("rmap[{a}][0][0][{a}]"), Payload::Factorization(bad));
                }
            }
            Payload::Extension(x) => {
                let ns = x.top().dim();
                let one = (0..x.base().dim())
                    .find(|&i| !x.base().unit().get(i, 0).is_zero())
                    .unwrap_or(0);
                let k = ns - 1;
                let i = bump(x.map(), k, one);
                let bad =
                    RingExtension::unchecked(x.base().clone(), x.top().clone(), i).expect("shape");
                push(format!("map[{one}][{k}]"), Payload::Extension(bad));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_enough_entries() {
        assert!(names().len() >= 12);
        let f = Field::prime(2).unwrap();
        let e = builtin("kC2", f).unwrap();
        assert!(matches!(&e.payload, Payload::Algebra(a) if a.dim() == 2));
        assert!(builtin("nope", f).is_err());
    }

    #[test]
    fn doihopf_entry_sends_gg_to_g1() {
        let e = builtin("doihopf-kC2", Field::Rational).unwrap();
        let Payload::Entwining(e) = e.payload else {
            panic!("not an entwining")
        };
        assert!(e.psi_table()[1][1][1][0].is_one());
    }

    #[test]
    fn every_mutation_is_rejected() {
        for f in [
            Field::Rational,
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
        ] {
            let ms = mutations(f);
            assert!(ms.len() >= 30);
            for m in ms {
                assert!(
                    !m.payload.check().is_valid(),
                    "{} {} accepted",
                    m.entry,
                    m.label
                );
            }
        }
    }
}
