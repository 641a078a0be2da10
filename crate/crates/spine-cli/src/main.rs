//! `spine`: command-line access to the presentation, Whitehead, homology, polyhedron and
//! enumeration tools.

mod certify;
mod input;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use spine::enumeration::{coset_enumerate_auto, coset_enumerate_with, Enumerable, EnumerationOptions, Outcome, Strategy};
use spine::homology::{
    abelian_invariants, abelianization_order, lemma42_closed_forms, representer_polynomial, resultant, resultant_split,
    FractionalParams, IntPolynomial,
};
use spine::polyhedra::{
    build_scheme, edge_orbits, heegaard_h, lens_space_diagram, quotient, rho_quotient, validate_scheme,
    FacePairingScheme,
};
use spine::presentations::build_family;
use spine::whitehead::{face_census, is_planar, match_family_pattern, planar_embedding, whitehead_graph};

use crate::certify::{certify, CertifyReport};
use crate::input::Presentation;

#[derive(Parser)]
#[command(name = "spine", version, about = "Cyclic presentations, Whitehead graphs and face-pairing spines")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the relators of a family member (`H:r,n`, `G:k,l,n,f`, `F:k,l,n`).
    Family { spec: String },
    /// Whitehead graph, planarity, pattern type and face census.
    Whitehead {
        presentation: String,
        /// Clamp multiplicities to 1.
        #[arg(long)]
        reduced: bool,
        /// Emit Graphviz DOT only.
        #[arg(long)]
        dot: bool,
        /// Face-degree census of a planar embedding.
        #[arg(long)]
        census: bool,
    },
    /// Abelian invariants by Smith normal form, checked against the resultant.
    Abelian { presentation: String },
    /// Exact resultant of two integer polynomials (coefficients lowest degree first).
    Resultant {
        /// e.g. `1,2,-1` for 1 + 2t - t^2
        p: String,
        /// Second polynomial.
        #[arg(long, conflicts_with = "n")]
        q: Option<String>,
        /// Use q = t^n - 1.
        #[arg(long)]
        n: Option<usize>,
        /// With --n (even): also print Res(p, t^{n/2} - 1) and Res(p, t^{n/2} + 1).
        #[arg(long, requires = "n")]
        split: bool,
    },
    /// Closed forms for G(k,l,n,0) and G(k,l,n,n/2) against direct resultants.
    Lemma42 { k: usize, l: usize, n: usize },
    /// Build or check face-pairing schemes.
    Scheme {
        #[command(subcommand)]
        action: SchemeAction,
    },
    /// Heegaard diagram of H(r,n) and its quotient by the order-n rotation.
    Heegaard { r: usize, n: usize },
    /// Todd–Coxeter coset enumeration (also accepts `E:k,l,n,f` for a shift extension).
    Enumerate {
        presentation: String,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// `hlt`, `felsch`, or `auto` (HLT, then Felsch).
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Dump the deduction log.
        #[arg(long)]
        trace: bool,
    },
    /// Run every check on G(k,l,n,f).
    Certify {
        k: usize,
        l: usize,
        n: usize,
        f: usize,
        /// Also enumerate cosets.
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Certify over a parameter grid and print CSV.
    Sweep {
        /// Ranges like `1..4` or lists like `1,3,5`.
        #[arg(long, default_value = "1..4")]
        k: String,
        #[arg(long, default_value = "1..4")]
        l: String,
        #[arg(long, default_value = "4..12")]
        n: String,
        /// Defaults to every f in 0..n.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SchemeAction {
    /// Construct the polyhedron for a supported family member and print scheme JSON.
    Build {
        spec: String,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<String>,
        /// Emit the boundary 1-skeleton as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Validate a scheme file against a presentation and report the quotient.
    Verify {
        file: String,
        /// Presentation the faces should spell.
        #[arg(long)]
        spec: String,
        /// Write a certificate JSON here.
        #[arg(long)]
        certificate: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(json_mode: bool, value: Value, text: impl FnOnce() -> String) {
    if json_mode {
        let mut v = value;
        v["schema"] = json!(1);
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        print!("{}", text());
    }
}

/// Returns whether every checked property held.
fn run(cli: Cli) -> Result<bool> {
    let js = cli.json;
    match cli.command {
        Command::Family { spec } => {
            let spec = input::family(&spec)?;
            let p = build_family(spec)?;
            let rels = p.relators();
            emit(js, json!({ "spec": spec.to_string(), "rank": p.rank(), "word": p.defining_word(), "relators": rels }), || {
                let mut s = format!("{spec}: {} relators\n", p.rank());
                for (i, w) in rels.iter().enumerate() {
                    s.push_str(&format!("  r{i} = {w}\n"));
                }
                s
            });
            Ok(true)
        }
        Command::Whitehead { presentation, reduced, dot, census } => {
            let (spec, p) = input::cyclic(&presentation)?;
            let full = whitehead_graph(&p);
            let g = if reduced { full.reduced() } else { full.clone() };
            if dot {
                print!("{}", g.to_dot());
                return Ok(true);
            }
            let planar = is_planar(&g);
            let pattern = spec.map(|s| match_family_pattern(&full, s).to_string());
            let faces = if census && planar {
                let rs = planar_embedding(&g).context("planar graph without an embedding")?;
                Some(face_census(&rs)?)
            } else {
                None
            };
            let edges: Vec<Value> = g
                .edges()
                .iter()
                .map(|(&(a, b), &m)| json!({ "a": a.to_string(), "b": b.to_string(), "multiplicity": m }))
                .collect();
            let census_json = faces.as_ref().map(|c| {
                c.0.iter().map(|(d, k)| (d.to_string(), json!(k))).collect::<serde_json::Map<String, Value>>()
            });
            emit(
                js,
                json!({ "edges": edges, "planar": planar, "pattern": pattern, "loops": g.loops().len(), "census": census_json }),
                || {
                    let mut s = String::new();
                    for (&(a, b), &m) in g.edges() {
                        s.push_str(&format!("{a} -- {b}  x{m}\n"));
                    }
                    s.push_str(&format!("planar: {}\n", if planar { "yes" } else { "no (non-planar)" }));
                    if let Some(p) = &pattern {
                        s.push_str(&format!("pattern: {p}\n"));
                    }
                    if let Some(c) = &faces {
                        let parts: Vec<String> = c.0.iter().map(|(d, k)| format!("{k} x {d}-gon")).collect();
                        s.push_str(&format!("census: {} faces: {}\n", c.face_count(), parts.join(", ")));
                    } else if census {
                        s.push_str("census: none (non-planar)\n");
                    }
                    s
                },
            );
            Ok(true)
        }
        Command::Abelian { presentation } => {
            let (_, p) = input::cyclic(&presentation)?;
            let inv = abelian_invariants(&p);
            let by_snf = inv.order();
            let by_res = abelianization_order(&p);
            let agree = by_snf == by_res;
            emit(
                js,
                json!({
                    "torsion": inv.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "free_rank": inv.free_rank,
                    "order": by_snf.to_string(),
                    "resultant_order": by_res.to_string(),
                    "agree": agree,
                    "polynomial": representer_polynomial(&p).coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
                || format!("{inv}\norder {by_snf} (resultant {by_res}){}\n", if agree { "" } else { "  MISMATCH" }),
            );
            Ok(agree)
        }
        Command::Resultant { p, q, n, split } => {
            let pp = IntPolynomial::from_i64(&input::coefficients(&p)?);
            let qq = match (&q, n) {
                (Some(q), _) => IntPolynomial::from_i64(&input::coefficients(q)?),
                (None, Some(n)) => IntPolynomial::binomial(n, -1),
                (None, None) => bail!("give --q or --n"),
            };
            let r = resultant(&pp, &qq)?;
            let halves = if split {
                let n = n.expect("clap requires n");
                if n % 2 != 0 {
                    bail!("--split needs an even n");
                }
                Some(resultant_split(&pp, n)?)
            } else {
                None
            };
            emit(
                js,
                json!({
                    "p": pp.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "q": qq.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "resultant": r.to_string(),
                    "split": halves.as_ref().map(|(a, b)| json!({ "minus": a.to_string(), "plus": b.to_string() })),
                }),
                || {
                    let mut s = format!("Res({pp}, {qq}) = {r}\n");
                    if let Some((a, b)) = &halves {
                        s.push_str(&format!("t^(n/2)-1 factor {a}, t^(n/2)+1 factor {b}\n"));
                    }
                    s
                },
            );
            Ok(true)
        }
        Command::Lemma42 { k, l, n } => {
            let rec = lemma42_closed_forms(FractionalParams::new(k, l), n)?;
            let holds = rec.holds();
            emit(
                js,
                json!({
                    "k": k, "l": l, "n": n,
                    "res_f0_plus": rec.res_f0_plus.to_string(),
                    "direct_f0_plus": rec.direct_f0_plus.to_string(),
                    "res_fhalf_plus": rec.res_fhalf_plus.to_string(),
                    "direct_fhalf_plus": rec.direct_fhalf_plus.to_string(),
                    "res_fhalf_plus_corrected": rec.res_fhalf_plus_corrected.to_string(),
                    "res_common_minus": rec.res_common_minus.to_string(),
                    "direct_fhalf_minus": rec.direct_fhalf_minus.to_string(),
                    "holds": holds,
                    "holds_corrected": rec.holds_corrected(),
                    "distinguishes": rec.distinguishes(),
                }),
                || {
                    format!(
                        "f = 0:   closed {} direct {}\nf = n/2: closed {} direct {} (corrected {})\nminus factors {} / {}\nclosed forms hold: {}\nabelianizations differ: {}\n",
                        rec.res_f0_plus,
                        rec.direct_f0_plus,
                        rec.res_fhalf_plus,
                        rec.direct_fhalf_plus,
                        rec.res_fhalf_plus_corrected,
                        rec.res_common_minus,
                        rec.direct_fhalf_minus,
                        holds,
                        rec.distinguishes()
                    )
                },
            );
            Ok(holds)
        }
        Command::Scheme { action } => scheme(js, action),
        Command::Heegaard { r, n } => {
            let d = heegaard_h(r, n)?;
            let q = rho_quotient(&d, r);
            let lens = lens_space_diagram(r);
            let ok = q.as_ref().map_or(false, |q| *q == lens);
            emit(
                js,
                json!({
                    "diagram": d,
                    "quotient": q.as_ref().ok(),
                    "quotient_error": q.as_ref().err().map(|e| e.to_string()),
                    "lens_space": ok,
                }),
                || {
                    let mut s = format!("{d}");
                    match &q {
                        Ok(q) => s.push_str(&format!("quotient:\n{q}")),
                        Err(e) => s.push_str(&format!("quotient failed: {e}\n")),
                    }
                    s.push_str(&format!("quotient is L({r},1): {ok}\n"));
                    s
                },
            );
            Ok(ok)
        }
        Command::Enumerate { presentation, max_cosets, strategy, trace } => {
            let rels = match input::presentation(&presentation)? {
                Presentation::Cyclic { p, .. } => p.enumeration_relators(),
                Presentation::Extension(e) => e.enumeration_relators(),
            };
            let cap = input::max_cosets(max_cosets)?;
            let run = match strategy.as_str() {
                "auto" => coset_enumerate_auto(&rels, cap, trace)?,
                "hlt" => coset_enumerate_with(&rels, EnumerationOptions { max_cosets: cap, trace, strategy: Strategy::Hlt })?,
                "felsch" => {
                    coset_enumerate_with(&rels, EnumerationOptions { max_cosets: cap, trace, strategy: Strategy::Felsch })?
                }
                other => bail!("unknown strategy `{other}`"),
            };
            let order = run.outcome.order().map(|o| o.to_string());
            emit(
                js,
                json!({
                    "outcome": if order.is_some() { "FINITE" } else { "EXCEEDED" },
                    "order": order,
                    "strategy": run.strategy.to_string(),
                    "max_cosets": cap,
                    "live": run.stats.live,
                    "total": run.stats.total,
                    "max_live": run.stats.max_live,
                    "coincidences": run.stats.coincidences,
                    "trace": if trace { Some(run.log.iter().map(|e| e.to_string()).collect::<Vec<_>>()) } else { None },
                }),
                || {
                    let mut s = match run.outcome {
                        Outcome::Finite(o) => format!("FINITE {o}\n"),
                        Outcome::Exceeded => "EXCEEDED\n".into(),
                    };
                    s.push_str(&format!(
                        "strategy {}, live {}, total {}, max live {}, coincidences {}\n",
                        run.strategy, run.stats.live, run.stats.total, run.stats.max_live, run.stats.coincidences
                    ));
                    if trace {
                        for e in &run.log {
                            s.push_str(&format!("{e}\n"));
                        }
                    }
                    s
                },
            );
            Ok(true)
        }
        Command::Certify { k, l, n, f, enumerate, max_cosets } => {
            let cap = if enumerate { Some(input::max_cosets(max_cosets)?) } else { None };
            let report = certify(k, l, n, f, cap)?;
            if js {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                print!("{}", report.text());
            }
            Ok(report.passed)
        }
        Command::Sweep { k, l, n, f, enumerate, max_cosets } => {
            let cap = if enumerate { Some(input::max_cosets(max_cosets)?) } else { None };
            let (ks, ls, ns) = (input::range(&k)?, input::range(&l)?, input::range(&n)?);
            let fs = f.as_deref().map(input::range).transpose()?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "{}", CertifyReport::csv_header())?;
            let mut all = true;
            for &n in &ns {
                for &k in &ks {
                    for &l in &ls {
                        let f_values: Vec<usize> = match &fs {
                            Some(v) => v.iter().copied().filter(|&f| f < n).collect(),
                            None => (0..n).collect(),
                        };
                        for f in f_values {
                            let report = certify(k, l, n, f, cap)?;
                            all &= report.passed;
                            writeln!(out, "{}", report.csv_row())?;
                            out.flush()?;
                        }
                    }
                }
            }
            Ok(all)
        }
    }
}

fn scheme(js: bool, action: SchemeAction) -> Result<bool> {
    match action {
        SchemeAction::Build { spec, out, dot } => {
            let spec = input::family(&spec)?;
            let s = build_scheme(spec)?;
            let text = if dot { s.to_dot() } else { s.to_json() + "\n" };
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {path}"))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        SchemeAction::Verify { file, spec, certificate } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {file}"))?;
            let s = FacePairingScheme::from_json(&text).with_context(|| format!("parsing {file}"))?;
            let (_, p) = input::cyclic(&spec)?;
            let report = validate_scheme(&s, &p);
            let orbits = if report.passed() { edge_orbits(&s).ok() } else { None };
            let q = if report.passed() { quotient(&s).ok() } else { None };
            let chi_zero = q.as_ref().map_or(false, |q| q.euler_characteristic == 0);
            let passed = report.passed() && orbits.is_some() && chi_zero;
            let cert = json!({
                "schema": 1,
                "checks": report.checks,
                "cells": q.as_ref().map(|q| json!({ "V": q.vertices, "E": q.edges, "F": q.faces, "C": q.cells })),
                "euler_characteristic": q.as_ref().map(|q| q.euler_characteristic),
                "orbits": orbits.as_ref().map(|os| os.iter().map(|o| o.render(&s)).collect::<Vec<_>>()),
                "passed": passed,
            });
            if let Some(path) = certificate {
                std::fs::write(&path, serde_json::to_string_pretty(&cert)? + "\n")
                    .with_context(|| format!("writing {path}"))?;
            }
            emit(js, cert, || {
                let mut t = format!("{report}");
                if let Some(q) = &q {
                    t.push_str(&format!("{q}\n"));
                }
                if let Some(os) = &orbits {
                    for o in os {
                        t.push_str(&format!("{}\n", o.render(&s)));
                    }
                }
                t.push_str(&format!("seifert-threlfall: {}\n", if passed { "pass" } else { "fail" }));
                t
            });
            Ok(passed)
        }
    }
}
