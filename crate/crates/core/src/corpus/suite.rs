//! The cross-module equivalence suite over the corpus.

use rayon::prelude::*;
use serde::Serialize;

use crate::actforget::Actforget;
use crate::coforget::{Coforget, Strategy};
use crate::entwining::{
    adjunction_check, std_object_ac, std_object_astar_c, std_object_ca, std_object_cstar_a,
    Entwining,
};
use crate::error::Result;
use crate::exactlin::Field;
use crate::ringext::{Extension, RingExtension};
use crate::search::{SearchConfig, Verdict};
use crate::smash::{
    cross_check_against, entwining_to_factorization, factorization_to_entwining, Factorization,
};
use crate::structures::AlgebraData;

use super::{all, mutations, Payload};

/// One cell of the pass/fail matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub entry: String,
    pub field: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Replaces one corpus entry with a mutated copy before running.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Injection {
    pub field: Field,
    /// Index into `mutations(field)`.
    pub index: usize,
}

fn routes_agree<W, V>(a: Result<Verdict<W>>, b: Result<Verdict<V>>) -> (bool, String) {
    match (a, b) {
        (Ok(x), Ok(y)) => {
            let ok = x.kind() == y.kind() && x.kind() != "unknown";
            (ok, format!("witness={} isomorphism={}", x.kind(), y.kind()))
        }
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    }
}

fn entwining_rows(e: &Entwining, cfg: &SearchConfig) -> Vec<(&'static str, bool, String)> {
    let mut out = Vec::new();
    let mut entwined = None;
    out.push(match Coforget::new(e) {
        Ok(x) => {
            let witness = x.frobenius(Strategy::Witness, cfg);
            if let Ok(v) = &witness {
                entwined = Some(v.shape());
            }
            let (ok, d) = routes_agree(witness, x.frobenius(Strategy::Isomorphism, cfg));
            ("coforget-routes", ok, d)
        }
        Err(err) => ("coforget-routes", false, err.to_string()),
    });
    out.push(match Actforget::new(e) {
        Ok(x) => {
            let (ok, d) = routes_agree(
                x.frobenius(Strategy::Witness, cfg),
                x.frobenius(Strategy::Isomorphism, cfg),
            );
            ("actforget-routes", ok, d)
        }
        Err(err) => ("actforget-routes", false, err.to_string()),
    });
    out.push(match dictionary_round_trip(e) {
        Ok(()) => ("dictionary", true, "identity both ways".into()),
        Err(err) => ("dictionary", false, err.to_string()),
    });
    let cross = match entwined {
        Some(v) => cross_check_against(e, v, cfg),
        None => Err(crate::Error::Verification(
            "entwined Frobenius verdict unavailable".into(),
        )),
    };
    out.push(match cross {
        Ok(c) => (
            "cross-check",
            c.agree() && c.entwined.kind() != "unknown",
            format!("entwined={} smash={}", c.entwined.kind(), c.smash.kind()),
        ),
        Err(err) => ("cross-check", false, err.to_string()),
    });
    let objects = [
        std_object_ac(e),
        std_object_ca(e),
        std_object_cstar_a(e),
        std_object_astar_c(e),
    ];
    out.push(
        match objects
            .into_iter()
            .collect::<std::result::Result<Vec<_>, _>>()
        {
            Ok(objs) => {
                let r = adjunction_check(e, &objs);
                (
                    "adjunctions",
                    r.is_valid(),
                    format!("{} objects, {} failures", objs.len(), r.failures.len()),
                )
            }
            Err(err) => ("adjunctions", false, err.to_string()),
        },
    );
    out
}

/// `ψ → R → ψ` and `R → ψ → R` are identities.
pub fn dictionary_round_trip(e: &Entwining) -> Result<()> {
    let x = entwining_to_factorization(e)?;
    let back = factorization_to_entwining(&x, e.c())?;
    if back != *e {
        return Err(crate::Error::Verification(
            "psi -> R -> psi is not the identity".into(),
        ));
    }
    if entwining_to_factorization(&back)? != x {
        return Err(crate::Error::Verification(
            "R -> psi -> R is not the identity".into(),
        ));
    }
    Ok(())
}

/// Smash multiplication is associative and unital exactly when the factorization axioms hold.
pub fn smash_equivalence(x: &Factorization) -> (bool, String) {
    let axioms = x.check().is_valid();
    let (mult, unit) = x.smash_tables();
    let algebra = AlgebraData::new(mult, unit)
        .map(|a| a.check().is_valid())
        .unwrap_or(false);
    (
        axioms == algebra,
        format!("axioms={axioms} algebra={algebra}"),
    )
}

fn extension_rows(x: &RingExtension, cfg: &SearchConfig) -> Vec<(&'static str, bool, String)> {
    let row = match Extension::new(x) {
        Ok(ext) => {
            let (ok, d) = routes_agree(
                ext.frobenius(Strategy::Witness, cfg),
                ext.frobenius(Strategy::Isomorphism, cfg),
            );
            ("ext-routes", ok, d)
        }
        Err(err) => ("ext-routes", false, err.to_string()),
    };
    vec![row]
}

fn rows_for(payload: &Payload, cfg: &SearchConfig) -> Vec<(&'static str, bool, String)> {
    let report = payload.check();
    let valid = report.is_valid();
    let detail = if valid {
        "valid".to_string()
    } else {
        let mut axioms: Vec<&str> = report.failures.iter().map(|f| f.axiom.as_str()).collect();
        axioms.dedup();
        axioms.join("; ")
    };
    let mut rows = vec![("validate", valid, detail)];
    if !valid {
        return rows;
    }
    match payload {
        Payload::Extension(x) => rows.extend(extension_rows(x, cfg)),
        Payload::Factorization(x) => {
            let (ok, d) = smash_equivalence(x);
            rows.push(("smash-associativity", ok, d));
        }
        p => {
            if let Some(e) = p.entwining() {
                rows.extend(entwining_rows(&e, cfg));
                match entwining_to_factorization(&e) {
                    Ok(x) => {
                        let (ok, d) = smash_equivalence(&x);
                        rows.push(("smash-associativity", ok, d));
                    }
                    Err(err) => rows.push(("smash-associativity", false, err.to_string())),
                }
            }
        }
    }
    rows
}

/// Runs every check on every entry over each field, in a fixed order.
pub fn run_suite(fields: &[Field], cfg: &SearchConfig, inject: Option<Injection>) -> SuiteReport {
    let mut tasks: Vec<(Field, String, Payload)> = Vec::new();
    for &f in fields {
        let mutated = inject
            .filter(|i| i.field == f)
            .and_then(|i| mutations(f).into_iter().nth(i.index));
        for entry in all(f) {
            let payload = match &mutated {
                Some(m) if m.entry == entry.name => m.payload.clone(),
                _ => entry.payload,
            };
            tasks.push((f, entry.name.to_string(), payload));
        }
    }
    let run = |(f, name, payload): &(Field, String, Payload)| -> Vec<SuiteRow> {
        rows_for(payload, cfg)
            .into_iter()
            .map(|(check, pass, detail)| SuiteRow {
                entry: name.clone(),
                field: f.label(),
                check: check.to_string(),
                pass,
                detail,
            })
            .collect()
    };
    let nested: Vec<Vec<SuiteRow>> = if cfg.parallel {
        tasks.par_iter().map(run).collect()
    } else {
        tasks.iter().map(run).collect()
    };
    let rows: Vec<SuiteRow> = nested.into_iter().flatten().collect();
    let passed = rows.iter().filter(|r| r.pass).count();
    SuiteReport {
        failed: rows.len() - passed,
        passed,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_corpus_passes_and_injection_fails() {
        let f2 = Field::prime(2).unwrap();
        let cfg = SearchConfig::default();
        let clean = run_suite(&[f2], &cfg, None);
        let failing: Vec<_> = clean.rows.iter().filter(|r| !r.pass).collect();
        assert!(failing.is_empty(), "{failing:?}");
        let bad = run_suite(
            &[f2],
            &cfg,
            Some(Injection {
                field: f2,
                index: 0,
            }),
        );
        assert!(bad.failed >= 1);
    }
}
