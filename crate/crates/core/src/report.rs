//! Deterministic check reports and the named verification suites.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    affine_example_checks, annihilator_inclusion_witness, check_res_exact, check_sing_surj, d4_dot_chain, e8_dot_chain,
    joyful_check, minimal_type_sequence, negative_fundamental, radical_sequence, transport_ses_through_ind_minimal,
};
use crate::cartan::{dot_reflect, height, offset_cmp, presets, CartanDatum, Offset, ParabolicType, Weight};
use crate::error::{Error, Result};
use crate::gla::{build_graded_lie, GradedLie};
use crate::pind::functor_identities;
use crate::wmod::{simple, verma, Character, Window};
use crate::ENGINE_VERSION;

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: Value,
    pub verdict: bool,
    pub witness: Value,
    pub caveats: Vec<String>,
}

impl CheckRecord {
    fn new(check: &str, inputs: Value, verdict: bool, witness: Value) -> Self {
        CheckRecord { check: check.into(), inputs, verdict, witness, caveats: vec![] }
    }

    fn failed(check: &str, inputs: Value, err: &Error) -> Self {
        CheckRecord {
            check: check.into(),
            inputs,
            verdict: false,
            witness: Value::Null,
            caveats: vec![err.to_string()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub engine: String,
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One line per record: verdict, check name, inputs.
    pub fn to_rows(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let verdict = if r.verdict { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict}\t{}\t{}\n", r.check, r.inputs));
            for c in &r.caveats {
                out.push_str(&format!("\tcaveat: {c}\n"));
            }
        }
        out.push_str(&format!("{}\t{}\n", if self.passed { "PASS" } else { "FAIL" }, self.suite));
        out
    }
}

/// Offset-sorted `{offset, dim}` rows.
pub fn character_rows(c: &Character) -> Value {
    let mut v: Vec<(&Offset, &usize)> = c.iter().collect();
    v.sort_by(|a, b| offset_cmp(a.0, b.0));
    Value::Array(v.into_iter().map(|(o, d)| json!({"offset": o, "dim": d})).collect())
}

pub const SUITES: [&str; 5] =
    ["res-ind-identities", "minimal-type", "joyful", "affine-examples", "annihilator-witness"];

/// Knobs shared by the suites.
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Box depth for the finite and affine rank-2 fixtures.
    pub depth: Option<i64>,
}

type Job = Box<dyn Fn() -> CheckRecord + Send + Sync>;

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let jobs = match name {
        "res-ind-identities" => res_ind_jobs(opts),
        "minimal-type" => minimal_type_jobs(opts),
        "joyful" => joyful_jobs(opts),
        "affine-examples" => affine_jobs(),
        "annihilator-witness" => annihilator_jobs(opts),
        other => return Err(Error::UnknownSuite(other.into())),
    };
    let records: Vec<CheckRecord> = jobs.par_iter().map(|j| j()).collect();
    let passed = records.iter().all(|r| r.verdict);
    Ok(SuiteReport { engine: ENGINE_VERSION.into(), suite: name.into(), records, passed })
}

pub fn run_all(opts: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, opts)).collect()
}

fn lie(d: &CartanDatum, h: usize) -> Arc<GradedLie> {
    Arc::new(build_graded_lie(d, h).expect("bundled fixtures build"))
}

fn xi_json(xi: &ParabolicType) -> Value {
    json!(xi.iter().collect::<Vec<_>>())
}

fn weight_json(w: &Weight) -> Value {
    json!({"evals": w.evals.iter().map(|q| q.to_string()).collect::<Vec<_>>(), "offset": w.offset})
}

/// Height cutoff that covers a box of the given depth.
fn box_cutoff(rank: usize, depth: i64) -> usize {
    (rank as i64 * depth).max(1) as usize
}

/// `(name, datum, Ξ list, weights)` fixtures for the functor identities.
fn res_ind_fixtures() -> Vec<(&'static str, CartanDatum, Vec<ParabolicType>, Vec<Weight>)> {
    let p = |n: usize, v: &[usize]| ParabolicType::new(n, v.iter().copied()).expect("in range");
    vec![
        ("sl2", presets::a1(), vec![p(1, &[]), p(1, &[0])], vec![Weight::from_ints(&[2]), Weight::from_ints(&[-3])]),
        (
            "sl3",
            presets::a2(),
            vec![p(2, &[]), p(2, &[0]), p(2, &[0, 1])],
            vec![Weight::from_ints(&[1, 1]), Weight::from_ints(&[-1, -1]), Weight::from_ints(&[0, 2])],
        ),
        (
            "affine-sl2",
            presets::affine_a1(),
            vec![p(2, &[]), p(2, &[1])],
            vec![Weight::from_ints(&[-2, 1]), Weight::from_ints(&[1, 1])],
        ),
    ]
}

fn res_ind_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let depth = opts.depth.unwrap_or(3);
    let mut jobs: Vec<Job> = Vec::new();
    for (name, datum, xis, weights) in res_ind_fixtures() {
        let n = datum.rank();
        let l = lie(&datum, box_cutoff(n, depth));
        for xi in xis {
            for lam in &weights {
                for kind in ["verma", "simple"] {
                    let (l, xi, lam) = (Arc::clone(&l), xi.clone(), lam.clone());
                    jobs.push(Box::new(move || {
                        let inputs = json!({"algebra": name, "xi": xi_json(&xi), "weight": weight_json(&lam), "module": kind, "depth": depth});
                        let w = Window::boxed(&vec![0; n], depth);
                        let run = || -> Result<CheckRecord> {
                            let m = match kind {
                                "verma" => verma(&l, &lam, &xi, &w)?.module,
                                _ => simple(&l, &lam, &xi, &w)?,
                            };
                            let r = functor_identities(&m, &xi, &w)?;
                            let witness: serde_json::Map<String, Value> =
                                r.all().iter().map(|(k, c)| (k.to_string(), json!(c.passed()))).collect();
                            Ok(CheckRecord::new("res-ind-identities", inputs.clone(), r.passed(), Value::Object(witness)))
                        };
                        run().unwrap_or_else(|e| CheckRecord::failed("res-ind-identities", inputs.clone(), &e))
                    }));
                }
            }
        }
    }
    jobs
}

fn minimal_type_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let cases: Vec<(&'static str, CartanDatum, usize, Weight, i64)> = vec![
        ("sl3", presets::a2(), 0, Weight::from_ints(&[1, 1]), opts.depth.unwrap_or(5)),
        ("sl2", presets::a1(), 0, Weight::from_ints(&[2]), opts.depth.unwrap_or(5)),
        ("affine-sl2", presets::affine_a1(), 1, Weight::from_ints(&[-4, 2]), opts.depth.unwrap_or(4)),
    ];
    cases
        .into_iter()
        .map(|(name, datum, i, lam, depth)| -> Job {
            Box::new(move || {
                let n = datum.rank();
                let inputs = json!({"algebra": name, "index": i, "weight": weight_json(&lam), "depth": depth});
                let l = lie(&datum, box_cutoff(n, depth));
                match minimal_type_sequence(&l, i, &lam, &Window::boxed(&vec![0; n], depth)) {
                    Ok(c) => CheckRecord::new(
                        "minimal-type",
                        inputs,
                        c.holds(),
                        json!({
                            "factors": c.factors.iter().map(|(o, m)| json!({"offset": o, "multiplicity": m})).collect::<Vec<_>>(),
                            "exact": c.exact,
                            "top_generates": c.generated == c.middle,
                            "singular_inside_sub": c.singular_inside_sub,
                            "middle": character_rows(&c.middle),
                        }),
                    ),
                    Err(e) => CheckRecord::failed("minimal-type", inputs, &e),
                }
            })
        })
        .collect()
}

fn joyful_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let depth = opts.depth.unwrap_or(5);
    let xi = ParabolicType::new(2, [0]).expect("in range");
    let mut jobs: Vec<Job> = Vec::new();
    for lam in [Weight::from_ints(&[1, 1]), Weight::from_ints(&[-1, -1])] {
        let xi = xi.clone();
        jobs.push(Box::new(move || {
            let inputs = json!({"algebra": "sl3", "xi": xi_json(&xi), "weight": weight_json(&lam), "depth": depth});
            let l = lie(&presets::a2(), 3);
            let w = Window::boxed(&[0, 0], depth);
            let run = || -> Result<CheckRecord> {
                let j = joyful_check(&l, &lam, &xi, &w)?;
                let s = check_sing_surj(&l, &lam, &xi, &w)?;
                let witness = json!({
                    "joyful": j.holds,
                    "sing_surj": s.holds,
                    "rows": j.rows,
                });
                let mut r = CheckRecord::new("joyful", inputs.clone(), j.holds && s.holds, witness);
                if !j.boundary.is_empty() {
                    r.caveats.push(format!("{} boundary offsets outside the safe core", j.boundary.len()));
                }
                Ok(r)
            };
            run().unwrap_or_else(|e| CheckRecord::failed("joyful", inputs.clone(), &e))
        }));
    }
    jobs.push(Box::new(move || {
        let xi = ParabolicType::new(2, [0]).expect("in range");
        let lam = Weight::from_ints(&[1, 1]);
        let inputs = json!({"algebra": "sl3", "xi": xi_json(&xi), "weight": weight_json(&lam), "depth": depth, "sequence": "levi-verma"});
        let l = lie(&presets::a2(), 3);
        let w = Window::boxed(&[0, 0], depth);
        let run = || -> Result<CheckRecord> {
            let mx = verma(&l, &lam, &xi, &w)?.module;
            let ses = radical_sequence(&mx, &lam.offset)?;
            let sub_top = dot_reflect(l.datum(), &lam, 0).expect("integral").offset;
            let t = transport_ses_through_ind_minimal(&ses, &xi, &w, &sub_top, &lam.offset)?;
            let r = check_res_exact(&t.induced, &lam.offset, &xi)?;
            Ok(CheckRecord::new(
                "transport",
                inputs.clone(),
                t.exactness.verdict && t.j_minus_surjective && t.restriction_recovers && r.verdict,
                json!({
                    "exact": t.exactness.verdict,
                    "j_minus_surjective": t.j_minus_surjective,
                    "restriction_recovers": t.restriction_recovers,
                    "restricted_exact": r.verdict,
                }),
            ))
        };
        run().unwrap_or_else(|e| CheckRecord::failed("transport", inputs.clone(), &e))
    }));
    jobs
}

fn affine_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let d4 = lie(&presets::affine_d4(), 3);
    for k in [0usize, 1, 3, 4] {
        let l = Arc::clone(&d4);
        jobs.push(Box::new(move || affine_record("affine-D4", &l, 2, k, d4_dot_chain())));
    }
    let e8 = lie(&presets::affine_e8(), 3);
    jobs.push(Box::new(move || affine_record("affine-E8", &e8, 4, 2, e8_dot_chain())));
    jobs
}

fn affine_record(
    name: &str,
    l: &Arc<GradedLie>,
    fundamental: usize,
    k: usize,
    chain: Vec<crate::analysis::DotEquality>,
) -> CheckRecord {
    let n = l.rank();
    let lam = negative_fundamental(n, fundamental);
    let inputs = json!({"algebra": name, "xi": [k], "weight": weight_json(&lam), "window": "height<=2"});
    let w = Window::height_bounded(&vec![0; n], 2);
    match affine_example_checks(l, &lam, k, &w, &chain) {
        Ok(r) => CheckRecord::new(
            "affine-examples",
            inputs,
            r.passed(),
            json!({
                "generators": r.generators,
                "dot_chain": r.dot_chain.iter().map(|(d, ok)| json!({"lhs": d.lhs, "rhs": d.rhs, "root": d.root, "coefficient": d.coefficient, "holds": ok})).collect::<Vec<_>>(),
                "minimal_total_dim_by_height": (0..=2).map(|h| r.minimal_dims.iter().filter(|(o, _)| height(o) == h).map(|(_, d)| d).sum::<usize>()).collect::<Vec<_>>(),
            }),
        ),
        Err(e) => CheckRecord::failed("affine-examples", inputs, &e),
    }
}

fn annihilator_jobs(opts: &SuiteOptions) -> Vec<Job> {
    let depth = opts.depth.unwrap_or(5);
    let cases: Vec<(Vec<usize>, &'static str)> = vec![(vec![0], "s1"), (vec![], "id")];
    cases
        .into_iter()
        .map(|(word, label)| -> Job {
            Box::new(move || {
                let l = lie(&presets::a2(), 3);
                let xi = ParabolicType::new(2, [0]).expect("in range");
                let top = Weight::from_ints(&[1, 1]);
                let lam = dot_reflect(l.datum(), &top, 0).expect("integral");
                let inputs = json!({"algebra": "sl3", "xi": xi_json(&xi), "weight": weight_json(&lam), "word": label, "depth": depth});
                match annihilator_inclusion_witness(&l, &lam, &xi, &word, &Window::boxed(&[0, 0], depth)) {
                    Ok(r) => CheckRecord::new(
                        "annihilator-witness",
                        inputs,
                        r.injective,
                        json!({"source_top": r.source_top, "target_top": r.target_top, "ranks": r.ranks}),
                    ),
                    Err(e) => CheckRecord::failed("annihilator-witness", inputs, &e),
                }
            })
        })
        .collect()
}
