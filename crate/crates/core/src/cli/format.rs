//! JSON structure files: scalars as strings, nested tables of structure constants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Payload;
use crate::entwining::{DoiHopfDatum, Entwining};
use crate::exactlin::{Field, LinMap, Scalar};
use crate::ringext::RingExtension;
use crate::smash::Factorization;
use crate::structures::{AlgebraData, BialgebraData, CoalgebraData, StructureError};

type Table1 = Vec<String>;
type Table2 = Vec<Vec<String>>;
type Table3 = Vec<Vec<Vec<String>>>;
type Table4 = Vec<Vec<Vec<Vec<String>>>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    /// `mult[i][j][k]`: coefficient of `e_k` in `e_i·e_j`.
    pub mult: Table3,
    pub unit: Table1,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraJson {
    /// `comult[i][j][k]`: coefficient of `e_j⊗e_k` in `Δ(e_i)`.
    pub comult: Table3,
    pub counit: Table1,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraJson {
    pub algebra: AlgebraJson,
    pub coalgebra: CoalgebraJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntwiningJson {
    pub algebra: AlgebraJson,
    pub coalgebra: CoalgebraJson,
    /// `psi[c][a][a2][c2]`: coefficient of `e_a2⊗e_c2` in `ψ(e_c⊗e_a)`.
    pub psi: Table4,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoiHopfJson {
    pub bialgebra: BialgebraJson,
    pub algebra: AlgebraJson,
    pub coalgebra: CoalgebraJson,
    /// `coaction[a][a2][h]`: coefficient of `e_a2⊗e_h` in `ρ(e_a)`.
    pub coaction: Table3,
    /// `action[c][h][c2]`: coefficient of `e_c2` in `e_c·e_h`.
    pub action: Table3,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationJson {
    pub b: AlgebraJson,
    pub a: AlgebraJson,
    /// `rmap[a][b][b2][a2]`: coefficient of `e_b2⊗e_a2` in `R(e_a⊗e_b)`.
    pub rmap: Table4,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingExtensionJson {
    pub base: AlgebraJson,
    pub top: AlgebraJson,
    /// `map[r][s]`: coefficient of `e_s` in `i(e_r)`.
    pub map: Table2,
}

/// One structure file. Only the field is mandatory.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebra: Option<CoalgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bialgebra: Option<BialgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entwining: Option<EntwiningJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doi_hopf: Option<DoiHopfJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring_extension: Option<RingExtensionJson>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Path { path: String, message: String },
    #[error("the file declares no structure")]
    Empty,
}

fn at(path: &str, message: impl ToString) -> InputError {
    InputError::Path {
        path: path.to_string(),
        message: message.to_string(),
    }
}

fn parse1(f: Field, path: &str, t: &Table1) -> Result<Vec<Scalar>, InputError> {
    t.iter()
        .enumerate()
        .map(|(i, s)| Scalar::parse(f, s).map_err(|e| at(&format!("{path}[{i}]"), e)))
        .collect()
}

fn parse2(f: Field, path: &str, t: &Table2) -> Result<Vec<Vec<Scalar>>, InputError> {
    t.iter()
        .enumerate()
        .map(|(i, x)| parse1(f, &format!("{path}[{i}]"), x))
        .collect()
}

fn parse3(f: Field, path: &str, t: &Table3) -> Result<Vec<Vec<Vec<Scalar>>>, InputError> {
    t.iter()
        .enumerate()
        .map(|(i, x)| parse2(f, &format!("{path}[{i}]"), x))
        .collect()
}

fn parse4(f: Field, path: &str, t: &Table4) -> Result<Vec<Vec<Vec<Vec<Scalar>>>>, InputError> {
    t.iter()
        .enumerate()
        .map(|(i, x)| parse3(f, &format!("{path}[{i}]"), x))
        .collect()
}

fn shape(path: &str, e: StructureError) -> InputError {
    at(path, e)
}

/// Checks that a nested table is a full box with the given side lengths.
fn boxed<T>(path: &str, t: &[Vec<T>], rows: usize, cols: usize) -> Result<(), InputError> {
    if t.len() != rows || t.iter().any(|r| r.len() != cols) {
        return Err(at(path, format!("expected a {rows}x{cols} table")));
    }
    Ok(())
}

fn algebra(f: Field, path: &str, j: &AlgebraJson) -> Result<AlgebraData, InputError> {
    let m = parse3(f, &format!("{path}.mult"), &j.mult)?;
    let u = parse1(f, &format!("{path}.unit"), &j.unit)?;
    AlgebraData::from_tables(f, &m, &u).map_err(|e| shape(path, e))
}

fn coalgebra(f: Field, path: &str, j: &CoalgebraJson) -> Result<CoalgebraData, InputError> {
    let d = parse3(f, &format!("{path}.comult"), &j.comult)?;
    let e = parse1(f, &format!("{path}.counit"), &j.counit)?;
    CoalgebraData::from_tables(f, &d, &e).map_err(|e| shape(path, e))
}

fn bialgebra(f: Field, path: &str, j: &BialgebraJson) -> Result<BialgebraData, InputError> {
    let a = algebra(f, &format!("{path}.algebra"), &j.algebra)?;
    let c = coalgebra(f, &format!("{path}.coalgebra"), &j.coalgebra)?;
    BialgebraData::new(a, c).map_err(|e| shape(path, e))
}

fn all_boxed3<T>(path: &str, t: &[Vec<Vec<T>>], dims: [usize; 3]) -> Result<(), InputError> {
    if t.len() != dims[0] {
        return Err(at(path, format!("expected {} entries", dims[0])));
    }
    for (i, x) in t.iter().enumerate() {
        boxed(&format!("{path}[{i}]"), x, dims[1], dims[2])?;
    }
    Ok(())
}

impl StructureFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let file: StructureFile = serde_json::from_str(text).map_err(|e| InputError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if let Field::Prime { p } = file.field {
            Field::prime(p).map_err(|e| at("field.p", e))?;
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    /// Shape-checked payloads in declaration order; axioms are not checked here.
    pub fn payloads(&self) -> Result<Vec<Payload>, InputError> {
        let f = self.field;
        let mut out = Vec::new();
        if let Some(j) = &self.algebra {
            out.push(Payload::Algebra(algebra(f, "algebra", j)?));
        }
        if let Some(j) = &self.coalgebra {
            out.push(Payload::Coalgebra(coalgebra(f, "coalgebra", j)?));
        }
        if let Some(j) = &self.bialgebra {
            out.push(Payload::Bialgebra(bialgebra(f, "bialgebra", j)?));
        }
        if let Some(j) = &self.entwining {
            let a = algebra(f, "entwining.algebra", &j.algebra)?;
            let c = coalgebra(f, "entwining.coalgebra", &j.coalgebra)?;
            let t = parse4(f, "entwining.psi", &j.psi)?;
            let psi = Entwining::psi_from_table(f, a.dim(), c.dim(), &t)
                .map_err(|e| shape("entwining.psi", e))?;
            let e = Entwining::unchecked(a, c, psi).map_err(|e| shape("entwining", e))?;
            out.push(Payload::Entwining(e));
        }
        if let Some(j) = &self.doi_hopf {
            let h = bialgebra(f, "doi_hopf.bialgebra", &j.bialgebra)?;
            let a = algebra(f, "doi_hopf.algebra", &j.algebra)?;
            let c = coalgebra(f, "doi_hopf.coalgebra", &j.coalgebra)?;
            let (nh, na, nc) = (h.dim(), a.dim(), c.dim());
            let rho = parse3(f, "doi_hopf.coaction", &j.coaction)?;
            all_boxed3("doi_hopf.coaction", &rho, [na, na, nh])?;
            let act = parse3(f, "doi_hopf.action", &j.action)?;
            all_boxed3("doi_hopf.action", &act, [nc, nh, nc])?;
            let coaction =
                LinMap::from_fn(f, &[na], &[na, nh], |r, c| rho[c][r / nh][r % nh].clone());
            let action = LinMap::from_fn(f, &[nc, nh], &[nc], |r, col| {
                act[col / nh][col % nh][r].clone()
            });
            out.push(Payload::DoiHopf(DoiHopfDatum {
                h,
                a,
                coaction,
                c,
                action,
            }));
        }
        if let Some(j) = &self.factorization {
            let b = algebra(f, "factorization.b", &j.b)?;
            let a = algebra(f, "factorization.a", &j.a)?;
            let (nb, na) = (b.dim(), a.dim());
            let t = parse4(f, "factorization.rmap", &j.rmap)?;
            all_boxed3("factorization.rmap", &t, [na, nb, nb])?;
            for (i, x) in t.iter().enumerate() {
                for (k, y) in x.iter().enumerate() {
                    boxed(&format!("factorization.rmap[{i}][{k}]"), y, nb, na)?;
                }
            }
            let rmap = LinMap::from_fn(f, &[na, nb], &[nb, na], |r, c| {
                t[c / nb][c % nb][r / na][r % na].clone()
            });
            let x = Factorization::unchecked(b, a, rmap).map_err(|e| shape("factorization", e))?;
            out.push(Payload::Factorization(x));
        }
        if let Some(j) = &self.ring_extension {
            let r = algebra(f, "ring_extension.base", &j.base)?;
            let s = algebra(f, "ring_extension.top", &j.top)?;
            let t = parse2(f, "ring_extension.map", &j.map)?;
            boxed("ring_extension.map", &t, r.dim(), s.dim())?;
            let i = LinMap::from_fn(f, &[r.dim()], &[s.dim()], |row, c| t[c][row].clone());
            let x = RingExtension::unchecked(r, s, i).map_err(|e| shape("ring_extension", e))?;
            out.push(Payload::Extension(x));
        }
        if out.is_empty() {
            return Err(InputError::Empty);
        }
        Ok(out)
    }

    /// File holding exactly one payload.
    pub fn from_payload(p: &Payload) -> Self {
        let mut file = StructureFile {
            field: p.field(),
            algebra: None,
            coalgebra: None,
            bialgebra: None,
            entwining: None,
            doi_hopf: None,
            factorization: None,
            ring_extension: None,
        };
        match p {
            Payload::Algebra(a) => file.algebra = Some(algebra_json(a)),
            Payload::Coalgebra(c) => file.coalgebra = Some(coalgebra_json(c)),
            Payload::Bialgebra(h) => file.bialgebra = Some(bialgebra_json(h)),
            Payload::Entwining(e) => {
                file.entwining = Some(EntwiningJson {
                    algebra: algebra_json(e.a()),
                    coalgebra: coalgebra_json(e.c()),
                    psi: strings4(&e.psi_table()),
                })
            }
            Payload::DoiHopf(d) => {
                let (nh, na, nc) = (d.h.dim(), d.a.dim(), d.c.dim());
                file.doi_hopf = Some(DoiHopfJson {
                    bialgebra: bialgebra_json(&d.h),
                    algebra: algebra_json(&d.a),
                    coalgebra: coalgebra_json(&d.c),
                    coaction: grid3([na, na, nh], |a, a2, h| {
                        d.coaction.get(a2 * nh + h, a).to_string()
                    }),
                    action: grid3([nc, nh, nc], |c, h, c2| {
                        d.action.get(c2, c * nh + h).to_string()
                    }),
                })
            }
            Payload::Factorization(x) => {
                let (na, nb) = (x.na(), x.nb());
                let r = x.rmap();
                file.factorization = Some(FactorizationJson {
                    b: algebra_json(x.b()),
                    a: algebra_json(x.a()),
                    rmap: (0..na)
                        .map(|a| {
                            grid3([nb, nb, na], |b, b2, a2| {
                                r.get(b2 * na + a2, a * nb + b).to_string()
                            })
                        })
                        .collect(),
                })
            }
            Payload::Extension(x) => {
                let i = x.map();
                file.ring_extension = Some(RingExtensionJson {
                    base: algebra_json(x.base()),
                    top: algebra_json(x.top()),
                    map: (0..i.cols())
                        .map(|c| (0..i.rows()).map(|r| i.get(r, c).to_string()).collect())
                        .collect(),
                })
            }
        }
        file
    }
}

fn grid3(dims: [usize; 3], f: impl Fn(usize, usize, usize) -> String) -> Table3 {
    (0..dims[0])
        .map(|i| {
            (0..dims[1])
                .map(|j| (0..dims[2]).map(|k| f(i, j, k)).collect())
                .collect()
        })
        .collect()
}

fn strings1(v: &[Scalar]) -> Table1 {
    v.iter().map(Scalar::to_string).collect()
}

fn strings3(t: &[Vec<Vec<Scalar>>]) -> Table3 {
    t.iter()
        .map(|x| x.iter().map(|y| strings1(y)).collect())
        .collect()
}

fn strings4(t: &[Vec<Vec<Vec<Scalar>>>]) -> Table4 {
    t.iter().map(|x| strings3(x)).collect()
}

fn algebra_json(a: &AlgebraData) -> AlgebraJson {
    AlgebraJson {
        mult: strings3(&a.mult_table()),
        unit: strings1(a.unit().coeffs()),
    }
}

fn coalgebra_json(c: &CoalgebraData) -> CoalgebraJson {
    CoalgebraJson {
        comult: strings3(&c.comult_table()),
        counit: strings1(&c.counit_vec()),
    }
}

fn bialgebra_json(h: &BialgebraData) -> BialgebraJson {
    BialgebraJson {
        algebra: algebra_json(&h.algebra),
        coalgebra: coalgebra_json(&h.coalgebra),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{all, builtin};

    #[test]
    fn every_entry_round_trips_through_json() {
        for f in [Field::Rational, Field::prime(3).unwrap()] {
            for e in all(f) {
                let text = StructureFile::from_payload(&e.payload).to_json();
                let back = StructureFile::from_json(&text).unwrap().payloads().unwrap();
                assert_eq!(back, vec![e.payload.clone()], "{}", e.name);
            }
        }
    }

    #[test]
    fn bad_scalar_is_path_addressed() {
        let e = builtin("kC2", Field::Rational).unwrap();
        let text = StructureFile::from_payload(&e.payload)
            .to_json()
            .replacen("\"1\"", "\"1/0\"", 1);
        let err = StructureFile::from_json(&text)
            .unwrap()
            .payloads()
            .unwrap_err();
        assert!(err.to_string().starts_with("algebra.mult["), "{err}");
    }

    #[test]
    fn composite_modulus_is_rejected() {
        let err = StructureFile::from_json(r#"{"field":{"kind":"Fp","p":4}}"#).unwrap_err();
        assert!(err.to_string().contains("field.p"));
    }

    #[test]
    fn malformed_json_reports_line() {
        let err = StructureFile::from_json("{\n\"field\": ").unwrap_err();
        assert!(matches!(err, InputError::Json { line: 2, .. }));
    }
}
