//! Analysis reports: verdict, witnesses and their independent re-checks.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::actforget::{self, Actforget};
use crate::coforget::{self, Coforget, Strategy};
use crate::entwining::Entwining;
use crate::error::Result;
use crate::exactlin::LinMap;
use crate::ringext::{Extension, RingExtension};
use crate::search::{NoReason, SearchConfig, Verdict};
use crate::smash::{cross_check_frobenius, Factorization, SmashOverA, SmashReport};
use crate::structures::ValidationReport;

use super::{EXIT_FAIL, EXIT_PASS, EXIT_UNKNOWN};

/// Questions accepted by `analyze`, with the payload kind they need.
pub const QUESTIONS: &[(&str, &str, &str)] = &[
    ("F-sep", "entwining", "forgetting the coaction is separable"),
    ("G-sep", "entwining", "tensoring with C is separable"),
    (
        "FG-frob",
        "entwining",
        "forgetting the coaction and tensoring with C form a Frobenius pair",
    ),
    ("Fp-sep", "entwining", "forgetting the action is separable"),
    ("Gp-sep", "entwining", "tensoring with A is separable"),
    (
        "FpGp-frob",
        "entwining",
        "forgetting the action and tensoring with A form a Frobenius pair",
    ),
    (
        "cross-check",
        "entwining",
        "the coaction question agrees with the smash product over A",
    ),
    ("ext-split", "ring_extension", "the extension is split"),
    ("ext-sep", "ring_extension", "the extension is separable"),
    ("ext-frob", "ring_extension", "the extension is Frobenius"),
    (
        "smash-over-A",
        "factorization",
        "the smash product over A is split, separable, Frobenius",
    ),
    (
        "smash-over-B",
        "factorization",
        "the smash product over B is split, separable, Frobenius",
    ),
];

pub fn question(id: &str) -> Option<(&'static str, &'static str, &'static str)> {
    QUESTIONS.iter().copied().find(|q| q.0 == id)
}

/// Dense matrix of a map, rows indexed by the codomain.
pub fn map_json(m: &LinMap) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect();
    json!({ "dom": m.dom(), "cod": m.cod(), "matrix": rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub question: String,
    pub claim: String,
    pub field: String,
    /// `yes`, `no` or `unknown`.
    pub verdict: String,
    pub reason: Option<Value>,
    pub witnesses: BTreeMap<String, Value>,
    /// Independent re-checks of the witnesses; every entry must be `true`.
    pub checks: BTreeMap<String, bool>,
    pub details: BTreeMap<String, String>,
    pub seed: u64,
    pub enum_budget: u64,
    pub trials: u64,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    fn new(id: &str, field: String, cfg: &SearchConfig) -> Self {
        let claim = question(id).map_or("", |q| q.2);
        Report {
            question: id.to_string(),
            claim: claim.to_string(),
            field,
            verdict: String::new(),
            reason: None,
            witnesses: BTreeMap::new(),
            checks: BTreeMap::new(),
            details: BTreeMap::new(),
            seed: cfg.seed,
            enum_budget: cfg.enum_budget,
            trials: cfg.trials,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timing_ms: None,
        }
    }

    fn set_verdict<W>(&mut self, v: &Verdict<W>) {
        self.verdict = v.kind().to_string();
        self.reason = match v {
            Verdict::Yes(_) => None,
            Verdict::No(r) => Some(reason_json(r)),
            Verdict::Unknown { candidates, seed } => {
                Some(json!({ "candidates": candidates, "seed": seed }))
            }
        };
    }

    fn witness(&mut self, name: &str, m: &LinMap) {
        self.witnesses.insert(name.to_string(), map_json(m));
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    fn check_report(&mut self, name: &str, r: &ValidationReport) {
        self.check(name, r.is_valid());
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    /// 0 yes, 1 no or failed re-check, 3 unknown.
    pub fn exit_code(&self) -> i32 {
        if !self.checks_pass() {
            return EXIT_FAIL;
        }
        match self.verdict.as_str() {
            "yes" => EXIT_PASS,
            "unknown" => EXIT_UNKNOWN,
            _ => EXIT_FAIL,
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "question: {} ({})\nfield: {}\nverdict: {}\n",
            self.question, self.claim, self.field, self.verdict
        );
        if let Some(r) = &self.reason {
            s += &format!("reason: {r}\n");
        }
        for (k, v) in &self.details {
            s += &format!("{k}: {v}\n");
        }
        for (k, v) in &self.witnesses {
            s += &format!("witness {k}: {} -> {}\n", v["dom"], v["cod"]);
        }
        for (k, v) in &self.checks {
            s += &format!("check {k}: {}\n", if *v { "ok" } else { "FAILED" });
        }
        if let Some(t) = self.timing_ms {
            s += &format!("timing_ms: {t}\n");
        }
        s
    }
}

fn reason_json(r: &NoReason) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn all_zero(ms: &[LinMap]) -> bool {
    ms.iter().all(LinMap::is_zero)
}

fn eps_one(e: &Entwining) -> LinMap {
    e.c().counit().on(0, e.a().unit())
}

pub fn analyze_entwining(id: &str, e: &Entwining, cfg: &SearchConfig) -> Result<Report> {
    let mut rep = Report::new(id, e.field().label(), cfg);
    match id {
        "F-sep" => {
            let v = Coforget::new(e)?.f_separable()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(t) = &v {
                rep.witness("theta", t);
                rep.check(
                    "theta conditions vanish",
                    all_zero(&coforget::theta_residuals(e, t)),
                );
                rep.check(
                    "theta after comultiplication is counit times unit",
                    e.c().comult().then(t) == eps_one(e),
                );
            }
        }
        "G-sep" => {
            let v = Coforget::new(e)?.g_separable()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(z) = &v {
                rep.witness("z", z);
                rep.check(
                    "z commutes with A",
                    all_zero(&coforget::casimir_residuals(e, z)),
                );
                rep.check(
                    "counit of z is the unit",
                    z.on(1, e.c().counit()) == *e.a().unit(),
                );
            }
        }
        "FG-frob" => {
            let x = Coforget::new(e)?;
            let v = x.frobenius(Strategy::Witness, cfg)?;
            rep.set_verdict(&v);
            if let Verdict::Yes(w) = &v {
                for (k, m) in [
                    ("theta", &w.theta),
                    ("z", &w.z),
                    ("phi", &w.phi),
                    ("phibar", &w.phibar),
                ] {
                    rep.witness(k, m);
                }
                rep.check_report("frobenius witness", &x.verify(w));
                let db = x.dual_basis_ac(&w.theta, &w.z)?;
                rep.check("dual basis resolves the identity", db.resolves_identity(e));
            }
        }
        "Fp-sep" => {
            let v = Actforget::new(e)?.fprime_separable()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(t) = &v {
                rep.witness("theta", t);
                rep.check(
                    "theta condition vanishes",
                    all_zero(&actforget::theta_residuals(e, t)),
                );
                let at_one = LinMap::identity_on(e.field(), &[e.nc()], 1, e.a().unit());
                rep.check(
                    "theta on the unit is the counit",
                    at_one.then(t) == *e.c().counit(),
                );
            }
        }
        "Gp-sep" => {
            let v = Actforget::new(e)?.gprime_separable()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(w) = &v {
                rep.witness("casimir", w);
                rep.check(
                    "casimir conditions vanish",
                    all_zero(&actforget::casimir_residuals(e, w)),
                );
                rep.check(
                    "product of the casimir is counit times unit",
                    w.then(e.a().mult()) == eps_one(e),
                );
            }
        }
        "FpGp-frob" => {
            let x = Actforget::new(e)?;
            let v = x.frobenius(Strategy::Witness, cfg)?;
            rep.set_verdict(&v);
            if let Verdict::Yes(w) = &v {
                for (k, m) in [
                    ("theta", &w.theta),
                    ("casimir", &w.casimir),
                    ("omega", &w.omega),
                    ("omegabar", &w.omegabar),
                ] {
                    rep.witness(k, m);
                }
                rep.check_report("frobenius witness", &x.verify(w));
            }
        }
        "cross-check" => {
            let c = cross_check_frobenius(e, cfg)?;
            let decided = c.entwined.kind() != "unknown" && c.smash.kind() != "unknown";
            rep.verdict = if !decided {
                "unknown"
            } else if c.agree() {
                "yes"
            } else {
                "no"
            }
            .to_string();
            rep.details
                .insert("entwined".into(), c.entwined.kind().into());
            rep.details.insert("smash".into(), c.smash.kind().into());
        }
        _ => {
            return Err(crate::Error::Contract(format!(
                "`{id}` is not an entwining question"
            )))
        }
    }
    Ok(rep)
}

pub fn analyze_extension(id: &str, x: &RingExtension, cfg: &SearchConfig) -> Result<Report> {
    let ext = Extension::new(x)?;
    let mut rep = Report::new(id, x.field().label(), cfg);
    match id {
        "ext-split" => {
            let v = ext.split()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(g) = &v {
                rep.witness("expectation", g);
                rep.check("expectation is a bimodule map", ext.v1().contains(g));
                rep.check(
                    "expectation of 1 is 1",
                    x.top().unit().then(g) == *x.base().unit(),
                );
            }
        }
        "ext-sep" => {
            let v = ext.separable()?;
            rep.set_verdict(&v);
            if let Verdict::Yes(c) = &v {
                rep.witness("casimir", c);
                rep.witness("casimir_representative", &ext.lift(c));
                rep.check("casimir commutes with S", ext.w1().contains(c));
                rep.check(
                    "casimir multiplies to 1",
                    ext.lift(c).then(x.top().mult()) == *x.top().unit(),
                );
            }
        }
        "ext-frob" => {
            let v = ext.frobenius(Strategy::Witness, cfg)?;
            rep.set_verdict(&v);
            if let Verdict::Yes(w) = &v {
                rep.witness("expectation", &w.expectation);
                rep.witness("casimir", &w.casimir);
                rep.witness("casimir_representative", &ext.lift(&w.casimir));
                rep.check_report("frobenius witness", &ext.verify(w));
                let db = ext.dual_basis_s(&w.expectation, &w.casimir)?;
                rep.check("dual basis resolves the identity", db.resolves_identity(x));
            }
        }
        _ => {
            return Err(crate::Error::Contract(format!(
                "`{id}` is not an extension question"
            )))
        }
    }
    Ok(rep)
}

fn smash_details(rep: &mut Report, r: &SmashReport) {
    rep.details.insert("split".into(), r.split.kind().into());
    rep.details
        .insert("separable".into(), r.separable.kind().into());
    rep.details
        .insert("frobenius".into(), r.frobenius.kind().into());
    rep.details
        .insert("extension".into(), r.extension.join(","));
}

pub fn analyze_factorization(id: &str, x: &Factorization, cfg: &SearchConfig) -> Result<Report> {
    let mut rep = Report::new(id, x.field().label(), cfg);
    let target = match id {
        "smash-over-A" => x.clone(),
        "smash-over-B" => {
            x.op_dual_isomorphism()?;
            rep.check("op-dual swap is an algebra isomorphism", true);
            x.op_dual()
        }
        _ => {
            return Err(crate::Error::Contract(format!(
                "`{id}` is not a factorization question"
            )))
        }
    };
    let s = SmashOverA::new(&target)?;
    let r = s.report(cfg)?;
    smash_details(&mut rep, &r);
    rep.set_verdict(&r.frobenius);
    let (ub, ua) = (target.b().unit(), target.a().unit());
    if let Verdict::Yes(k) = &r.split {
        rep.witness("split_kappa", k);
        rep.check("split kappa is admissible", s.v3().contains(k));
        rep.check("split kappa of 1 is 1", ub.then(k) == *ua);
    }
    if let Verdict::Yes(c) = &r.separable {
        rep.witness("separability_casimir", c);
        rep.check("separability casimir is admissible", s.w3().contains(c));
        rep.check(
            "separability casimir multiplies to 1",
            c.on(0, target.b().mult()) == ub.tensor(ua),
        );
    }
    if let Verdict::Yes(w) = &r.frobenius {
        rep.witness("frobenius_kappa", &w.kappa);
        rep.witness("frobenius_casimir", &w.casimir);
        rep.check_report("frobenius witness", &s.verify(w));
    }
    rep.check("agrees with the extension over A", r.consistent());
    Ok(rep)
}
