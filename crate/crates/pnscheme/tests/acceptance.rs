//! One line per acceptance criterion. Runs without the libtest harness so the report
//! is printed in order; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::checks::{check_elimination, check_groebner};
use common::{all_expansions, fixture, fixtures_with_prefix, mll_corpus, random_ideal};
use pnscheme::hilbert::{d_binomial_expansion, gotzmann_number, hilbert_function, macaulay_bracket, macaulay_diff_set, Grading};
use pnscheme::invariance::{check_invariance, church_power, mll_bridge, normal_semantics};
use pnscheme::net::{church_cut_against_zero, letter, validate_shallow, Rule};
use pnscheme::poly::{dehomogenize, ideal_equal, ideal_from_strs, Limits, MonomialOrder};
use pnscheme::reduction::Strategy;
use pnscheme::scheme::{net_ideal, SchemeOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const WORKED_EXAMPLE_LIMIT: Duration = Duration::from_secs(10);
const POWER_LAW_LIMIT: Duration = Duration::from_secs(60);
const HILBERT_LIMIT: Duration = Duration::from_secs(5);
const MACAULAY_LIMIT: Duration = Duration::from_secs(30);
const INVARIANCE_LIMIT: Duration = Duration::from_secs(5 * 60);
const GROEBNER_LIMIT: Duration = Duration::from_secs(2 * 60);
const BRIDGE_LIMIT: Duration = Duration::from_secs(60);

const RANDOM_IDEALS: usize = 200;
const RANDOM_SEED: u64 = 0x5eed;
const FIXTURES_PER_KIND: usize = 5;
const FUEL: usize = 500;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_example() -> Outcome {
    let net = church_cut_against_zero(2);
    let (ideal, _) = net_ideal(&net, &SchemeOptions::default()).map_err(|e| e.to_string())?;
    let ours = dehomogenize(&ideal, |v| v.ends_with('\''));
    let localized = ideal_from_strs(&[
        "a - b", "c - d", "e - f", "n - o", "g_1 - b", "g_2 - c", "h_1 - d", "h_2 - e", "m_1 - n", "m_2 - o",
        "g_2 - i_y1 - i_y2*g_1 - i_y3*g_1*g_2", "h_2 - j_y1 - j_y2*h_1 - j_y3*h_1*h_2",
        "l_y1", "l_y2 - 1", "l_y3",
        "l_y1 - k_y1", "l_y2 - k_y2", "l_y3 - k_y3",
        "i_y1 - k_y1", "i_y2 - k_y2", "i_y3 - k_y3",
        "j_y1 - k_y1", "j_y2 - k_y2", "j_y3 - k_y3",
    ])
    .map_err(|e| e.to_string())?;
    ensure(ideal_equal(&ours, &localized, Limits::default()).map_err(|e| e.to_string())?, || "localized system differs".into())?;
    let s = normal_semantics(&net, &SchemeOptions::default(), Limits::default()).map_err(|e| e.to_string())?;
    ensure(s.conclusion_vars == ["a", "f"], || format!("conclusion variables {:?}", s.conclusion_vars))?;
    ensure(s.basis_text() == ["a - f"], || format!("basis {:?}", s.basis_text()))?;
    Ok("basis {a - f}".into())
}

fn power_law() -> Outcome {
    let mut shown = Vec::new();
    for n in 0..=3 {
        let p = church_power(n, Limits::default()).map_err(|e| format!("n={n}: {e}"))?;
        shown.push(p.relation);
    }
    Ok(shown.join("; "))
}

fn hilbert_example() -> Outcome {
    let ideal = ideal_from_strs(&["m_1*m_2' - m_1'*m_2"]).map_err(|e| e.to_string())?;
    let table = hilbert_function(&ideal, &Grading::from_primed_pairs(&ideal.ring), 8).map_err(|e| e.to_string())?;
    let expected: Vec<u64> = (0..=8).map(|d| 2 * d + 1).collect();
    ensure(table == expected, || format!("table {table:?}"))?;
    let g = gotzmann_number(&table).map_err(|e| e.to_string())?;
    ensure(g.gotzmann == 2, || format!("Gotzmann number {}", g.gotzmann))?;
    Ok(format!("h = {table:?}, Gotzmann number {}", g.gotzmann))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn macaulay() -> Outcome {
    let e = d_binomial_expansion(27, 4).map_err(|e| e.to_string())?;
    ensure(e == [(6, 4), (5, 3), (2, 2), (1, 1)], || format!("27 expands as {e:?}"))?;
    ensure(macaulay_diff_set(27, 4).ok() == Some(vec![2, 2, 0, 0]), || "difference set of 27".into())?;
    let mut checked = 0;
    for d in 1..=6u32 {
        for c in 1..=5000u64 {
            let e = d_binomial_expansion(c, d).map_err(|e| e.to_string())?;
            let decreasing = e.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1);
            let tail = e.last().is_some_and(|&(k, i)| i >= 1 && k >= i as u64);
            let sum: u64 = e.iter().map(|&(k, i)| binom(k, i as u64)).sum();
            ensure(e[0].1 == d && decreasing && tail && sum == c, || format!("expansion of {c} at {d}: {e:?}"))?;
            if c <= 300 && d <= 4 {
                ensure(all_expansions(c, d) == [e.clone()], || format!("{c} at {d} has another expansion"))?;
            }
            let up = macaulay_bracket(c, d).map_err(|e| e.to_string())?;
            ensure(macaulay_diff_set(up, d + 1).ok() == macaulay_diff_set(c, d).ok(), || format!("bracket identity at ({c}, {d})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (c, d) pairs"))
}

fn invariance() -> Outcome {
    let opts = SchemeOptions::default();
    let mut runs = 0;
    for prefix in ["axcut", "tensorpar", "bangquest", "weakbang", "ctrbang"] {
        let names = fixtures_with_prefix(prefix);
        ensure(names.len() >= FIXTURES_PER_KIND, || format!("only {} {prefix} fixtures", names.len()))?;
        for name in names {
            let net = fixture(&name);
            for strategy in [Strategy::Leftmost, Strategy::ByKind] {
                for steps in [Some(1), None] {
                    let r = check_invariance(&net, strategy, steps, FUEL, &opts, Limits::default()).map_err(|e| format!("{name}: {e}"))?;
                    ensure(r.equal, || format!("{name} ({strategy:?}, {steps:?}): {:?} vs {:?}", r.before.basis, r.after_renamed))?;
                    runs += 1;
                }
            }
        }
    }
    for n in 1..=3 {
        for strategy in [Strategy::Leftmost, Strategy::ByKind] {
            let r = check_invariance(&church_cut_against_zero(n), strategy, None, FUEL, &opts, Limits::default()).map_err(|e| format!("n={n}: {e}"))?;
            let expected = [format!("a - {}", letter(2 * n + 1))];
            ensure(r.equal && r.after_renamed == expected, || format!("composite n={n}: {:?}", r.after_renamed))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} comparisons"))
}

fn groebner() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for k in 0..RANDOM_IDEALS {
        let ideal = random_ideal(&mut rng);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            check_groebner(&ideal, &order).map_err(|e| format!("ideal {k} ({order:?}): {e}"))?;
        }
        check_elimination(&ideal).map_err(|e| format!("ideal {k}: {e}"))?;
    }
    Ok(format!("{RANDOM_IDEALS} ideals, seed {RANDOM_SEED:#x}"))
}

fn bridge() -> Outcome {
    let corpus = mll_corpus();
    ensure(corpus.len() == 10, || format!("corpus has {} nets", corpus.len()))?;
    for (name, net) in &corpus {
        let b = mll_bridge(net, Limits::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(b.equal, || format!("{name}: routes differ"))?;
    }
    Ok(format!("{} nets", corpus.len()))
}

fn structural() -> Outcome {
    let shallow = validate_shallow(&fixture("promotion_cut"));
    ensure(shallow.shallow, || format!("promotion_cut rejected: {:?}", shallow.violations))?;
    let nested = validate_shallow(&fixture("nested_box"));
    ensure(!nested.shallow && nested.violates(Rule::NestedBox), || format!("nested_box: {:?}", nested.violations))?;
    let path = validate_shallow(&fixture("path_failure"));
    ensure(!path.shallow && path.violates(Rule::NearlyLinear), || format!("path_failure: {:?}", path.violations))?;
    Ok("shallow / NestedBox / NearlyLinear".into())
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 8] = [
        ("worked example", Some(WORKED_EXAMPLE_LIMIT), worked_example),
        ("church power law", Some(POWER_LAW_LIMIT), power_law),
        ("hilbert example", Some(HILBERT_LIMIT), hilbert_example),
        ("macaulay calculus", Some(MACAULAY_LIMIT), macaulay),
        ("cut invariance", Some(INVARIANCE_LIMIT), invariance),
        ("groebner soundness", Some(GROEBNER_LIMIT), groebner),
        ("mll bridge", Some(BRIDGE_LIMIT), bridge),
        ("structural validation", None, structural),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        let budget = limit.map_or(String::new(), |l| format!(" / {l:?}"));
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({took:.2?}{budget}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({took:.2?}{budget}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
