use anyhow::Result;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use spine::enumeration::{order_of, Outcome};
use spine::homology::{abelian_invariants, abelianization_order, Order};
use spine::polyhedra::{build_scheme, odd_f_obstruction, quotient, spine_decision, supported, validate_scheme};
use spine::presentations::{build_family, FamilySpec};
use spine::whitehead::{is_planar, match_family_pattern, planarity_criterion_g, whitehead_graph, PatternType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub f: usize,
    pub stages: Vec<Stage>,
    pub verdict: String,
    pub passed: bool,
}

impl CertifyReport {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = json!(1);
        v
    }

    pub fn csv_header() -> &'static str {
        "k,l,n,f,planar,criterion,pattern,abelian_order,theorem,scheme,obstruction,order,verdict,passed"
    }

    pub fn csv_row(&self) -> String {
        let val = |name: &str| {
            self.stage(name).map_or(String::new(), |s| match (&s.status, &s.value) {
                (Status::Skipped, _) => "skipped".into(),
                (_, Value::String(t)) => t.clone(),
                (_, Value::Null) => String::new(),
                (_, v) => v.to_string(),
            })
        };
        let planarity = self.stage("planarity").map(|s| &s.value);
        let planar = planarity.and_then(|v| v.get("generic")).map_or(String::new(), Value::to_string);
        let criterion = planarity.and_then(|v| v.get("criterion")).map_or(String::new(), Value::to_string);
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.l,
            self.n,
            self.f,
            planar,
            criterion,
            val("pattern"),
            val("abelianization"),
            val("theorem"),
            val("scheme"),
            val("obstruction"),
            val("enumeration"),
            self.verdict,
            self.passed
        )
    }

    pub fn text(&self) -> String {
        let mut out = format!("G({},{},{},{})\n", self.k, self.l, self.n, self.f);
        for s in &self.stages {
            let status = match s.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!("  {:<15} {:<8} {}\n", s.name, status, s.detail));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

fn stage(name: &'static str, ok: bool, detail: String, value: Value) -> Stage {
    Stage { name, status: if ok { Status::Pass } else { Status::Fail }, detail, value }
}

fn skipped(name: &'static str, detail: String) -> Stage {
    Stage { name, status: Status::Skipped, detail, value: Value::Null }
}

fn order_text(o: &Order) -> String {
    o.to_string()
}

pub fn certify(k: usize, l: usize, n: usize, f: usize, enumerate: Option<usize>) -> Result<CertifyReport> {
    let spec = FamilySpec::G { k, l, n, f };
    let p = build_family(spec)?;
    let g = whitehead_graph(&p);
    let mut stages = Vec::new();

    let planar = is_planar(&g);
    let criterion = planarity_criterion_g(k, l, n, f).ok();
    let detail = match criterion {
        Some(c) => format!("generic {planar}, criterion {c}"),
        None => format!("generic {planar}, criterion not stated for n < 4"),
    };
    stages.push(stage(
        "planarity",
        criterion.map_or(true, |c| c == planar),
        detail,
        json!({ "generic": planar, "criterion": criterion }),
    ));

    let pattern = match_family_pattern(&g, spec);
    let expects_pattern = n % 2 == 0 && (f * k) % n == 0;
    stages.push(stage(
        "pattern",
        !expects_pattern || pattern != PatternType::None,
        format!("{pattern}"),
        json!(pattern.to_string()),
    ));

    let by_resultant = abelianization_order(&p);
    let invariants = abelian_invariants(&p);
    let by_snf = invariants.order();
    stages.push(stage(
        "abelianization",
        by_resultant == by_snf,
        format!("|Res| = {}, SNF {} ({})", order_text(&by_resultant), order_text(&by_snf), invariants),
        json!(order_text(&by_resultant)),
    ));

    let decision = spine_decision(k, l, n, f);
    stages.push(match &decision {
        Ok(d) => stage("theorem", true, if *d { "spine".into() } else { "not a spine".into() }, json!(d)),
        Err(e) => skipped("theorem", format!("outside theorem scope: {e}")),
    });

    let mut certified = false;
    if supported(spec).is_ok() {
        let s = build_scheme(spec)?;
        let report = validate_scheme(&s, &p);
        let q = quotient(&s)?;
        let cells = (q.vertices, q.edges, q.faces, q.cells);
        certified = report.passed() && q.euler_characteristic == 0 && cells == (1, n, n, 1);
        stages.push(stage(
            "scheme",
            certified && decision == Ok(true),
            format!("{q}; validation {}", if report.passed() { "ok" } else { "failed" }),
            json!(format!("chi={}", q.euler_characteristic)),
        ));
    } else {
        stages.push(skipped("scheme", "no polyhedron for these parameters".into()));
    }

    match odd_f_obstruction(k, l, n, f) {
        Ok(o) => stages.push(stage(
            "obstruction",
            o.duplicated_face_index % 2 == 0,
            format!("face index {} appears twice", o.duplicated_face_index),
            json!(o.duplicated_face_index),
        )),
        Err(_) => stages.push(skipped("obstruction", "not applicable".into())),
    }

    if let Some(cap) = enumerate {
        match order_of(&p, cap)? {
            Outcome::Finite(o) => {
                let divides = by_resultant.finite().map_or(false, |a| BigInt::from(o) % a == BigInt::from(0));
                stages.push(stage(
                    "enumeration",
                    divides,
                    format!("order {o}"),
                    json!(o.to_string()),
                ));
            }
            Outcome::Exceeded => stages.push(skipped("enumeration", format!("EXCEEDED at {cap} cosets"))),
        }
    }

    let verdict = if certified {
        "spine"
    } else if !planar || decision == Ok(false) {
        "not a spine"
    } else if decision.is_err() {
        "outside theorem scope"
    } else {
        "undetermined"
    };
    let passed = stages.iter().all(|s| s.status != Status::Fail);
    Ok(CertifyReport { k, l, n, f, stages, verdict: verdict.into(), passed })
}
