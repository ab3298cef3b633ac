//! Verb implementations. Each returns the report text and whether every
//! check it ran passed.

use std::sync::Arc;

use clap::ValueEnum;
use minind_core::analysis::minimal_type_sequence;
use minind_core::cartan::{height, offset_cmp, sub_offsets, Offset, ParabolicType, Weight};
use minind_core::gla::{tables, GradedLie};
use minind_core::linalg::Mat;
use minind_core::pind::{ind_minimal, ind_shriek, ind_star_trunc, j_minus_subspace, j_plus};
use minind_core::report::{character_rows, run_suite, SuiteOptions, SuiteReport, SUITES};
use minind_core::wmod::{character, coverma_trunc, simple, subspace_dims, verma, Character, WeightModule};
use minind_core::{Error, Result};
use serde_json::{json, Value};

use crate::cache;
use crate::config::{Format, JobConfig};

pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Verma,
    Simple,
    Coverma,
    IndShriek,
    IndMinimal,
    IndStar,
    JMinus,
    JPlus,
}

/// The `l_Ξ`-module fed to the induction functors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LeviModule {
    Verma,
    Simple,
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn offset_text(o: &[i64]) -> String {
    o.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn sorted(c: &Character) -> Vec<(&Offset, &usize)> {
    let mut v: Vec<_> = c.iter().collect();
    v.sort_by(|a, b| offset_cmp(a.0, b.0));
    v
}

fn weight_json(w: &Weight) -> Value {
    json!({"evals": w.evals.iter().map(|q| q.to_string()).collect::<Vec<_>>(), "offset": w.offset})
}

fn xi_labels(cfg: &JobConfig, xi: &ParabolicType) -> Vec<String> {
    xi.iter().map(|i| cfg.datum.labels()[i].clone()).collect()
}

fn descriptor(cfg: &JobConfig) -> Value {
    json!({
        "cartan": cfg.datum.matrix(),
        "labels": cfg.datum.labels(),
        "height": cfg.height,
        "depth": cfg.depth,
        "xi": xi_labels(cfg, &cfg.xi),
        "weight": weight_json(&cfg.weight),
    })
}

fn lie(cfg: &JobConfig) -> Result<Arc<GradedLie>> {
    Ok(Arc::new(cache::graded_lie(&cfg.datum, cfg.height, cfg.cache.as_deref())?.0))
}

/// The algebra, provided its cutoff covers every height the window reaches.
fn lie_for_window(cfg: &JobConfig) -> Result<Arc<GradedLie>> {
    let g = lie(cfg)?;
    let depth_of = |o: &Offset| height(&sub_offsets(o, &cfg.weight.offset));
    if let Some(deep) = cfg.window().iter().find(|o| !g.covers_height(depth_of(o))) {
        return Err(Error::TruncationOverflow { offset: deep.clone(), height: depth_of(deep), cutoff: cfg.height });
    }
    Ok(g)
}

pub fn algebra_info(cfg: &JobConfig) -> Result<Outcome> {
    let g = lie(cfg)?;
    let roots = g.root_datum().roots();
    Ok(Outcome::pass(match cfg.format {
        Format::Json => pretty(&json!({
            "rank": cfg.datum.rank(),
            "labels": cfg.datum.labels(),
            "cartan": cfg.datum.matrix(),
            "symmetrizer": cfg.datum.symmetrizer(),
            "height": cfg.height,
            "roots": roots.iter().map(|(b, m)| json!({"root": b, "multiplicity": m})).collect::<Vec<_>>(),
        })),
        Format::Rows => {
            let mut out = format!(
                "rank\t{}\nlabels\t{}\nsymmetrizer\t{}\nheight\t{}\n",
                cfg.datum.rank(),
                cfg.datum.labels().join(","),
                offset_text(cfg.datum.symmetrizer()),
                cfg.height
            );
            out.push_str(&format!("positive roots\t{}\n", roots.len()));
            for (b, m) in &roots {
                out.push_str(&format!("{}\t{m}\n", offset_text(b)));
            }
            out
        }
    }))
}

pub fn roots(cfg: &JobConfig) -> Result<Outcome> {
    let g = lie(cfg)?;
    let roots = g.root_datum().roots();
    Ok(Outcome::pass(match cfg.format {
        Format::Json => {
            pretty(&Value::Array(roots.iter().map(|(b, m)| json!({"root": b, "multiplicity": m})).collect()))
        }
        Format::Rows => roots.iter().map(|(b, m)| format!("{}\t{m}\n", offset_text(b))).collect(),
    }))
}

fn levi_module(g: &Arc<GradedLie>, cfg: &JobConfig, kind: LeviModule) -> Result<WeightModule> {
    let w = cfg.window();
    match kind {
        LeviModule::Verma => Ok(verma(g, &cfg.weight, &cfg.xi, &w)?.module),
        LeviModule::Simple => simple(g, &cfg.weight, &cfg.xi, &w),
    }
}

pub fn character_of(cfg: &JobConfig, kind: ModuleKind, levi: LeviModule) -> Result<Character> {
    let g = lie_for_window(cfg)?;
    let w = cfg.window();
    let full = ParabolicType::full(cfg.datum.rank());
    Ok(match kind {
        ModuleKind::Verma => character(&verma(&g, &cfg.weight, &full, &w)?.module),
        ModuleKind::Simple => character(&simple(&g, &cfg.weight, &full, &w)?),
        ModuleKind::Coverma => character(&coverma_trunc(&g, &cfg.weight, &full, &w)?),
        ModuleKind::IndShriek => character(&ind_shriek(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?.module),
        ModuleKind::IndStar => character(&ind_star_trunc(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?),
        ModuleKind::IndMinimal => character(&ind_minimal(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?.module),
        ModuleKind::JMinus => {
            let m = ind_minimal(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?;
            let mut c = subspace_dims(&j_minus_subspace(&m));
            for o in w.iter() {
                c.entry(o.clone()).or_insert(0);
            }
            c
        }
        ModuleKind::JPlus => character(&j_plus(&ind_minimal(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?)?.0),
    })
}

pub fn character_cmd(cfg: &JobConfig, kind: ModuleKind, levi: LeviModule) -> Result<Outcome> {
    let c = character_of(cfg, kind, levi)?;
    Ok(Outcome::pass(match cfg.format {
        Format::Json => {
            let module = kind.to_possible_value().expect("named").get_name().to_string();
            pretty(&json!({"input": descriptor(cfg), "module": module, "rows": character_rows(&c)}))
        }
        Format::Rows => sorted(&c).into_iter().map(|(o, d)| format!("{}\t{d}\n", offset_text(o))).collect(),
    }))
}

fn mat_json(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i).iter().map(|q| q.to_string()).collect::<Vec<_>>())).collect())
}

pub fn induce_cmd(cfg: &JobConfig, levi: LeviModule, emit_matrix: bool) -> Result<Outcome> {
    let g = lie_for_window(cfg)?;
    let w = cfg.window();
    let m = ind_minimal(&levi_module(&g, cfg, levi)?, &cfg.xi, &w)?;
    let jm = subspace_dims(&j_minus_subspace(&m));
    let jp = character(&j_plus(&m)?.0);
    let rows: Vec<Value> = w
        .ordered()
        .into_iter()
        .map(|o| {
            json!({
                "offset": o,
                "ind_shriek": m.shriek.module.dim(&o),
                "ind_minimal": m.module.dim(&o),
                "ind_star": m.star.dim(&o),
                "j_minus": jm.get(&o).copied().unwrap_or(0),
                "j_plus": jp.get(&o).copied().unwrap_or(0),
                "canonical_rank": m.canonical.block(&o).rank(),
            })
        })
        .collect();
    let text = match cfg.format {
        Format::Json => {
            let mut v = json!({"input": descriptor(cfg), "rows": rows});
            if emit_matrix {
                let blocks: Vec<Value> = w
                    .ordered()
                    .into_iter()
                    .map(|o| json!({"offset": o, "matrix": mat_json(&m.canonical.block(&o))}))
                    .collect();
                v["canonical_blocks"] = Value::Array(blocks);
            }
            pretty(&v)
        }
        Format::Rows => {
            let keys = ["ind_shriek", "ind_minimal", "ind_star", "j_minus", "j_plus", "canonical_rank"];
            let mut out = format!("offset\t{}\n", keys.join("\t"));
            for r in &rows {
                let o: Vec<i64> = serde_json::from_value(r["offset"].clone()).expect("offsets");
                let cells: Vec<String> = keys.iter().map(|k| r[*k].to_string()).collect();
                out.push_str(&format!("{}\t{}\n", offset_text(&o), cells.join("\t")));
            }
            if emit_matrix {
                for o in w.ordered() {
                    let b = m.canonical.block(&o);
                    out.push_str(&format!("block\t{}\t{}x{}\n", offset_text(&o), b.rows(), b.cols()));
                    for i in 0..b.rows() {
                        let cells: Vec<String> = b.row(i).iter().map(|q| q.to_string()).collect();
                        out.push_str(&format!("\t{}\n", cells.join("\t")));
                    }
                }
            }
            out
        }
    };
    Ok(Outcome::pass(text))
}

pub fn verify_cmd(suite: &str, depth: Option<i64>, format: Format) -> Result<Outcome> {
    let opts = SuiteOptions { depth };
    let reports: Vec<SuiteReport> = if suite == "all" {
        SUITES.iter().map(|s| run_suite(s, &opts)).collect::<Result<_>>()?
    } else {
        vec![run_suite(suite, &opts)?]
    };
    let passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Rows => reports.iter().map(SuiteReport::to_rows).collect(),
    };
    Ok(Outcome { text, passed })
}

pub fn minimal_type_cmd(cfg: &JobConfig, index: &str) -> Result<Outcome> {
    let i = cfg.datum.label_index(index)?;
    let g = lie_for_window(cfg)?;
    let c = minimal_type_sequence(&g, i, &cfg.weight, &cfg.window())?;
    let witness = json!({
        "top": c.top,
        "sub_top": c.sub_top,
        "factors": c.factors.iter().map(|(o, m)| json!({"offset": o, "multiplicity": m})).collect::<Vec<_>>(),
        "exact": c.exact,
        "top_generates": c.generated == c.middle,
        "singular_inside_sub": c.singular_inside_sub,
        "middle": character_rows(&c.middle),
    });
    let passed = c.holds();
    let text = match cfg.format {
        Format::Json => {
            pretty(&json!({"input": descriptor(cfg), "index": index, "verdict": passed, "witness": witness}))
        }
        Format::Rows => {
            let mut out = format!("{}\tminimal-type\tindex {index}\n", if passed { "PASS" } else { "FAIL" });
            out.push_str(&format!("top\t{}\nsub_top\t{}\n", offset_text(&c.top), offset_text(&c.sub_top)));
            for (o, m) in &c.factors {
                out.push_str(&format!("factor\t{}\t{m}\n", offset_text(o)));
            }
            out.push_str(&format!(
                "exact\t{}\ntop_generates\t{}\nsingular_inside_sub\t{}\n",
                c.exact,
                c.generated == c.middle,
                c.singular_inside_sub
            ));
            for (o, d) in sorted(&c.middle) {
                out.push_str(&format!("middle\t{}\t{d}\n", offset_text(o)));
            }
            out
        }
    };
    Ok(Outcome { text, passed })
}

pub fn dump_tables(cfg: &JobConfig) -> Result<Outcome> {
    Ok(Outcome::pass(tables::dump(&*lie(cfg)?)))
}
