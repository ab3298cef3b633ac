//! Acceptance run: one line per criterion with its wall time against a
//! pinned limit. Exits non-zero if any criterion fails or runs over.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::props;
use minind_core::analysis::{
    affine_example_checks, annihilator_inclusion_witness, check_sing_surj, d4_dot_chain, e8_dot_chain, joyful_check,
    minimal_type_sequence, negative_fundamental,
};
use minind_core::cartan::{dot_reflect, presets, CartanDatum, Offset, ParabolicType, Weight};
use minind_core::pind::{functor_identities, ind_minimal};
use minind_core::report::{run_all, SuiteOptions};
use minind_core::wmod::{
    image_subspace, radical_subspace, simple, singular_vectors, submodule_generated, subspaces_equal, verma, Window,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn p(n: usize, v: &[usize]) -> ParabolicType {
    ParabolicType::new(n, v.iter().copied()).unwrap()
}

fn c1_affine_multiplicities() -> Outcome {
    let d = presets::affine_a1();
    let g = props::lie(&d, 8);
    let oracle = common::denominator_multiplicities(d.matrix(), 8);
    let mut roots = 0;
    for (b, m) in &oracle {
        let expected = i64::from((b[0] - b[1]).abs() <= 1);
        ensure!(*m == expected, "oracle gives {m} at {b:?}");
        ensure!(g.multiplicity(b) as i64 == *m, "engine gives {} at {b:?}, oracle {m}", g.multiplicity(b));
        roots += *m;
    }
    Ok(format!("{} candidates, {roots} roots", oracle.len()))
}

fn c2_sl3_substrate() -> Outcome {
    let g = props::lie(&presets::a2(), 6);
    let roots: Vec<Offset> = g.root_datum().roots().into_iter().map(|r| r.0).collect();
    ensure!(roots == vec![vec![1, 0], vec![0, 1], vec![1, 1]], "positive roots {roots:?}");
    let lam = Weight::from_ints(&[2, -1]);
    let w = Window::height_bounded(&lam.offset, 6);
    let m = verma(&g, &lam, &ParabolicType::full(2), &w).map_err(|e| e.to_string())?.module;
    for b in w.iter() {
        ensure!(m.dim(b) == common::sl3_kostant(b), "dim {} at {b:?}", m.dim(b));
    }
    Ok(format!("{} offsets of height <= 6", w.len()))
}

fn c3_functor_identities() -> Outcome {
    let cases: Vec<(&str, CartanDatum, Vec<ParabolicType>, Vec<Weight>)> = vec![
        ("sl2", presets::a1(), vec![p(1, &[]), p(1, &[0])], vec![Weight::from_ints(&[2]), Weight::from_ints(&[-3])]),
        (
            "sl3",
            presets::a2(),
            vec![p(2, &[]), p(2, &[0]), p(2, &[0, 1])],
            vec![Weight::from_ints(&[1, 1]), Weight::from_ints(&[-1, -1])],
        ),
        (
            "affine sl2",
            presets::affine_a1(),
            vec![p(2, &[]), p(2, &[1]), p(2, &[0, 1])],
            vec![Weight::from_ints(&[-2, 1]), Weight::from_ints(&[1, 1])],
        ),
    ];
    let mut fixtures = 0;
    for (name, d, xis, weights) in cases {
        let n = d.rank();
        let g = props::lie(&d, 3 * n);
        let w = Window::boxed(&vec![0; n], 3);
        for xi in &xis {
            for lam in &weights {
                let modules = [
                    verma(&g, lam, xi, &w).map_err(|e| e.to_string())?.module,
                    simple(&g, lam, xi, &w).map_err(|e| e.to_string())?,
                ];
                for m in &modules {
                    let r = functor_identities(m, xi, &w).map_err(|e| e.to_string())?;
                    for (id, c) in r.all() {
                        ensure!(
                            c.passed(),
                            "{id} fails on {name} Ξ={:?} λ={:?}: {:?}",
                            xi.iter().collect::<Vec<_>>(),
                            lam.evals,
                            c.failures
                        );
                    }
                    fixtures += 1;
                }
            }
        }
    }
    Ok(format!("{fixtures} fixtures x 5 identities"))
}

fn c4_minimal_induction_of_simples() -> Outcome {
    let cases = [
        ("sl3", presets::a2(), p(2, &[0]), vec![1, 1]),
        ("sl3", presets::a2(), p(2, &[0]), vec![-1, -1]),
        ("affine sl2", presets::affine_a1(), p(2, &[1]), vec![2, 1]),
    ];
    let mut offsets = 0;
    for (name, d, xi, lam) in cases {
        let n = d.rank();
        let g = props::lie(&d, 5 * n);
        let w = Window::boxed(&vec![0; n], 5);
        let weight = Weight::from_ints(&lam);
        let levi = simple(&g, &weight, &xi, &w).map_err(|e| e.to_string())?;
        let induced = ind_minimal(&levi, &xi, &w).map_err(|e| e.to_string())?.module;
        let mut oracle = common::ShapovalovOracle::new(d.matrix(), &lam);
        for b in w.iter() {
            let expected = oracle.simple_dim(b);
            ensure!(induced.dim(b) == expected, "{name} λ={lam:?}: dim {} at {b:?}, oracle {expected}", induced.dim(b));
            offsets += 1;
        }
    }
    Ok(format!("{offsets} offsets against the word-basis Gram ranks"))
}

fn c5_minimal_type() -> Outcome {
    let g = props::lie(&presets::a2(), 10);
    let lam = Weight::from_ints(&[1, 1]);
    let c = minimal_type_sequence(&g, 0, &lam, &Window::boxed(&[0, 0], 5)).map_err(|e| e.to_string())?;
    let sub = dot_reflect(g.datum(), &lam, 0).unwrap().offset;
    ensure!(c.factors == vec![(lam.offset.clone(), 1), (sub.clone(), 1)], "factors {:?}", c.factors);
    ensure!(c.generated == c.middle, "top vector does not generate");
    ensure!(c.exact, "sequence not exact");
    ensure!(c.singular_inside_sub, "a singular vector at {sub:?} escapes the sub");
    ensure!(c.holds(), "certificate rejected");
    Ok(format!("factors L(0,0), L({},{}); non-split", sub[0], sub[1]))
}

fn c6_joyful() -> Outcome {
    let g = props::lie(&presets::a2(), 10);
    let lam = Weight::from_ints(&[1, 1]);
    let w = Window::boxed(&[0, 0], 5);
    let xi = p(2, &[0]);
    let j = joyful_check(&g, &lam, &xi, &w).map_err(|e| e.to_string())?;
    ensure!(j.holds, "joyful_check fails");
    let s = check_sing_surj(&g, &lam, &xi, &w).map_err(|e| e.to_string())?;
    ensure!(s.holds, "check_sing_surj fails");

    let v = verma(&g, &lam, &ParabolicType::full(2), &w).map_err(|e| e.to_string())?;
    let gens: Vec<(Offset, Vec<_>)> = w
        .iter()
        .filter(|o| **o != lam.offset)
        .flat_map(|o| {
            let s = singular_vectors(&v.module, o);
            (0..s.cols()).map(|c| (o.clone(), s.column(c))).collect::<Vec<_>>()
        })
        .collect();
    let generated = image_subspace(&submodule_generated(&v.module, &gens));
    ensure!(
        subspaces_equal(&generated, &radical_subspace(&v), &w.ordered()),
        "singular vectors do not generate the radical"
    );
    for xi in [p(2, &[]), p(2, &[0]), p(2, &[1]), p(2, &[0, 1])] {
        ensure!(
            joyful_check(&g, &lam, &xi, &w).map_err(|e| e.to_string())?.holds,
            "not joyful for Ξ={:?}",
            xi.iter().collect::<Vec<_>>()
        );
    }
    Ok(format!("radical generated by {} singular vectors; joyful for all 4 parabolic types", gens.len()))
}

fn c7_affine_examples() -> Outcome {
    let start = Instant::now();
    let e8 = presets::affine_e8();
    let lam = negative_fundamental(9, 4);
    for eq in e8_dot_chain() {
        ensure!(eq.holds(&e8, &lam), "E8 equality {:?} = {:?} fails", eq.lhs, eq.rhs);
    }
    let chain_time = start.elapsed();
    ensure!(chain_time < Duration::from_secs(1), "E8 chain took {chain_time:?}");

    let g = props::lie(&presets::affine_d4(), 3);
    let w = Window::height_bounded(&[0; 5], 2);
    let lam = negative_fundamental(5, 2);
    for k in [0usize, 1, 3, 4] {
        let r = affine_example_checks(&g, &lam, k, &w, &d4_dot_chain()).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "D4 checks fail for Ξ={{{k}}}: {:?}", r.generators);
    }
    Ok(format!(
        "8 E8 equalities in {:.3}s; D4 generator checks for Ξ = {{0}},{{1}},{{3}},{{4}}",
        chain_time.as_secs_f64()
    ))
}

fn c8_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        props::gram_sample(rng.gen(), rng.gen(), rng.gen(), rng.gen(), rng.gen())?;
        props::tau_sample(rng.gen(), rng.gen(), rng.gen(), rng.gen())?;
    }
    props::jacobi_all()?;
    let fixtures = props::induced_fixtures();
    for (n, xi, w) in &fixtures {
        props::j_minus_properties(n, xi, w)?;
        props::unit_injective(n, xi, w)?;
    }
    props::transport_pairs(&mut rng, 20)?;
    Ok(format!("1000 Gram/τ samples, Jacobi, {} induced fixtures, 20 transport pairs", fixtures.len()))
}

fn c9_annihilator() -> Outcome {
    let g = props::lie(&presets::a2(), 10);
    let xi = p(2, &[0]);
    let lam = dot_reflect(g.datum(), &Weight::from_ints(&[1, 1]), 0).unwrap();
    let r =
        annihilator_inclusion_witness(&g, &lam, &xi, &[0], &Window::boxed(&[0, 0], 5)).map_err(|e| e.to_string())?;
    ensure!(r.injective, "not injective: {:?}", r.ranks);
    Ok(format!("injective on {} offsets", r.ranks.len()))
}

fn c10_determinism() -> Outcome {
    let render = || -> Result<String, String> {
        Ok(run_all(&SuiteOptions::default()).map_err(|e| e.to_string())?.iter().map(|r| r.to_json()).collect())
    };
    let (a, b) = (render()?, render()?);
    ensure!(a == b, "reports differ");
    ensure!(!a.contains("\"verdict\": false"), "a suite check fails");
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("root multiplicities, affine sl2, H=8", c1_affine_multiplicities, 10),
        ("sl3 roots and Kostant counts", c2_sl3_substrate, 5),
        ("restriction-induction identities", c3_functor_identities, 60),
        ("minimal induction of Levi simples", c4_minimal_induction_of_simples, 120),
        ("minimal-type certificate, sl3", c5_minimal_type, 60),
        ("joyfulness and singular generation", c6_joyful, 60),
        ("affine E8 and D4 fragments", c7_affine_examples, 120),
        ("property suites", c8_properties, 120),
        ("annihilator-inclusion witness", c9_annihilator, 30),
        ("determinism of verify reports", c10_determinism, 120),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {name}: {detail} ({:.2}s / {limit}s)", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
