//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use gimpl_core::domination::{dominates, find_dominator, undominated};
use gimpl_core::reductions::coloring::{
    brute_coloring, coloring_forward_promise, coloring_to_exact, decode_coloring, ColoringInstance,
};
use gimpl_core::reductions::graphical::{
    decode_cover_graphical, x3c_forward_promise_graphical, x3c_to_graphical, T,
};
use gimpl_core::reductions::two_player::{
    decode_cover_2p, x3c_forward_promise_2p, x3c_to_two_player,
};
use gimpl_core::reductions::x3c::{brute_x3c, gen_x3c, Force, X3CInstance};
use gimpl_core::sample::{is_degenerate, random_counts, random_game, random_region};
use gimpl_core::{
    cost, fixtures, is_equitable, is_pne, min_budget_solve, oracle_min_budget, oracle_zero_cost,
    region_payment_max, solve_exact, undominated_region, verify, Error, ExtValue, Game, GameForm,
    Mode, PaymentPromise, RectRegion, Violation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(1);
const BUDGET_3: Duration = Duration::from_secs(1);
const BUDGET_4: Duration = Duration::from_secs(30);
const BUDGET_5: Duration = Duration::from_secs(60);
const BUDGET_6: Duration = Duration::from_secs(60);
const BUDGET_7: Duration = Duration::from_secs(120);
const BUDGET_8: Duration = Duration::from_secs(120);
const BUDGET_9: Duration = Duration::from_secs(120);
const BUDGET_10: Duration = Duration::from_secs(120);
const BUDGET_11: Duration = Duration::from_secs(10);

const GAMES_4: usize = 2000;
const INSTANCES_5: usize = 500;
const MAPPINGS_5: u128 = 10_000;
const PAIRS_6: usize = 1000;
const INSTANCES_7: usize = 300;
const X3C_SEEDS_8: u64 = 5;
const MAPPINGS_11: u128 = 100_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn run(
    id: &str,
    title: &str,
    budget: Duration,
    f: impl FnOnce() -> Outcome,
    failures: &mut Vec<String>,
) {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let ok = out.ok && took <= budget;
    let timing = if took <= budget {
        String::new()
    } else {
        format!(" [over time budget {budget:?}]")
    };
    println!(
        "{} {id:>3} {title}: {} ({:.2?} of {budget:?}){timing}",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took
    );
    if !ok {
        failures.push(id.to_string());
    }
}

fn mapping_space(counts: &[usize], region: &RectRegion) -> u128 {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            (region.set(i).len() as u128).saturating_pow((c - region.set(i).len()) as u32)
        })
        .fold(1u128, |a, b| a.saturating_mul(b))
}

fn c1_worked_example() -> Outcome {
    let g = fixtures::ex1();
    let star = undominated_region(&g.view(None).unwrap());
    let analyze = star.sets() == [vec![0, 1], vec![0, 1]];
    let o = fixtures::ex1_region();
    let v = fixtures::ex1_promise();
    let c_v = cost(&g, &v).unwrap();
    let ok_v = verify(&g, &v, &o, &ExtValue::ratio(11, 10), Mode::Subset)
        .unwrap()
        .holds;
    let w = fixtures::ex1_promise_cheap();
    let c_w = cost(&g, &w).unwrap();
    let ok_w = verify(&g, &w, &o, &ExtValue::int(1), Mode::Subset)
        .unwrap()
        .holds;
    let exact_w = verify(&g, &w, &o, &ExtValue::int(1), Mode::Exact)
        .unwrap()
        .holds;
    let ok = analyze
        && c_v == ExtValue::ratio(11, 10)
        && ok_v
        && c_w == ExtValue::int(1)
        && ok_w
        && !exact_w;
    outcome(
        ok,
        format!(
            "X* = {:?}, cost(V) = {c_v}, cost(V') = {c_w}, V' exact = {exact_w}",
            star.sets()
        ),
    )
}

fn c2_solver_example() -> Outcome {
    let r = min_budget_solve(&fixtures::ex1(), &fixtures::ex1_region()).unwrap();
    let ok = r.delta == ExtValue::int(1) && r.mapping.image(0, 1) == Some(0);
    outcome(ok, format!("delta = {}, mapping {}", r.delta, r.mapping))
}

fn c3_counterexample() -> Outcome {
    let r = verify(
        &fixtures::ce1(),
        &PaymentPromise::new(2),
        &fixtures::ce1_region(),
        &ExtValue::zero(),
        Mode::Exact,
    )
    .unwrap();
    let ok = !r.holds
        && r.violation
            == Some(Violation::Missing {
                player: 0,
                strategy: 1,
            });
    outcome(
        ok,
        format!("holds = {}, violation {:?}", r.holds, r.violation),
    )
}

/// Raw-definition recheck of a weak-dominance witness.
fn witness_holds(g: &Game, i: usize, x: usize, y: usize, strict_at: &[usize]) -> bool {
    let mut strict = false;
    for p in g.space().iter() {
        if p[i] != x {
            continue;
        }
        let mut q = p.clone();
        q[i] = y;
        let (ux, uy) = (g.utility(i, &p), g.utility(i, &q));
        if ux < uy {
            return false;
        }
        let ctx: Vec<usize> = p
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &s)| s)
            .collect();
        if ux > uy && ctx == strict_at {
            strict = true;
        }
    }
    strict
}

fn c4_domination_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = 0usize;
    let mut checks = 0usize;
    for _ in 0..GAMES_4 {
        let n = rng.gen_range(2..=3);
        let counts = random_counts(&mut rng, n, 2, 4);
        let g = random_game(&mut rng, &counts, 4);
        let view = g.view(None).unwrap();
        for (i, &c) in counts.iter().enumerate() {
            let mut dom = vec![vec![false; c]; c];
            for x in 0..c {
                for y in (0..c).filter(|&y| y != x) {
                    if let Some(w) = dominates(&view, i, x, y).unwrap() {
                        dom[x][y] = true;
                        checks += 1;
                        if !witness_holds(&g, i, x, y, &w.strict_at) {
                            violations += 1;
                        }
                    }
                }
            }
            for x in 0..c {
                for y in 0..c {
                    if dom[x][y] && dom[y][x] {
                        violations += 1;
                    }
                    for z in 0..c {
                        if x != z && dom[x][y] && dom[y][z] && !dom[x][z] {
                            violations += 1;
                        }
                    }
                }
            }
            let und = undominated(&view, i);
            if und.is_empty() {
                violations += 1;
            }
            for y in (0..c).filter(|y| !und.contains(y)) {
                match find_dominator(&view, i, y) {
                    Ok(d) if und.contains(&d) && dom[d][y] => {}
                    _ => violations += 1,
                }
            }
        }
    }
    outcome(
        violations == 0,
        format!("{GAMES_4} games, {checks} witnesses, {violations} violations"),
    )
}

fn c5_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut done, mut agree, mut degenerate) = (0usize, 0usize, 0usize);
    let mut first_bad = None;
    while done < INSTANCES_5 {
        let n = rng.gen_range(2..=3);
        let counts = random_counts(&mut rng, n, 2, 4);
        let region = random_region(&mut rng, &counts, 3);
        if mapping_space(&counts, &region) > MAPPINGS_5 {
            continue;
        }
        let g = random_game(&mut rng, &counts, 6);
        done += 1;
        let matched = match (
            min_budget_solve(&g, &region),
            oracle_min_budget(&g, &region),
        ) {
            (Ok(s), Ok(o)) => s.delta == o.delta && o.all_optimal_mappings.contains(&s.mapping),
            (Err(Error::DegenerateRegion { .. }), Err(Error::DegenerateRegion { .. })) => {
                degenerate += 1;
                true
            }
            _ => false,
        };
        if matched {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(done);
        }
    }
    outcome(
        agree == done,
        format!(
            "{agree}/{done} agree ({degenerate} degenerate on both sides){}",
            first_bad
                .map(|k| format!(", first mismatch at #{k}"))
                .unwrap_or_default()
        ),
    )
}

fn c6_zero_cost_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut done, mut agree, mut pne) = (0usize, 0usize, 0usize);
    while done < PAIRS_6 {
        let n = rng.gen_range(2..=3);
        let counts = random_counts(&mut rng, n, 2, 4);
        let region = random_region(&mut rng, &counts, 3);
        let g = random_game(&mut rng, &counts, 4);
        if is_degenerate(&g, &region) {
            continue;
        }
        done += 1;
        let a = is_pne(&g.view(None).unwrap(), &region).unwrap().holds;
        let b = oracle_zero_cost(&g, &region).unwrap();
        let c = min_budget_solve(&g, &region).unwrap().delta.is_zero();
        pne += a as usize;
        agree += (a == b && b == c) as usize;
    }
    outcome(
        agree == done,
        format!("{agree}/{done} agree ({pne} are PNE)"),
    )
}

fn c7_exactification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut done, mut good) = (0usize, 0usize);
    while done < INSTANCES_7 {
        let n = rng.gen_range(2..=3);
        let counts = random_counts(&mut rng, n, 3, 5);
        let region = random_region(&mut rng, &counts, 2);
        let g = random_game(&mut rng, &counts, 6);
        if !is_equitable(&g, &region).unwrap().equitable {
            continue;
        }
        done += 1;
        let r = solve_exact(&g, &region).unwrap();
        let exact = verify(&g, &r.promise, &region, &r.delta, Mode::Exact)
            .unwrap()
            .holds;
        let preserved = region_payment_max(&g, &r.promise, &region).unwrap() == r.delta;
        good += (exact && preserved && r.exactified) as usize;
    }
    outcome(
        good == done,
        format!("{good}/{done} exact with region maximum preserved"),
    )
}

fn x3c_corpus() -> Vec<X3CInstance> {
    let mut out = vec![X3CInstance::forced()];
    for n_hat in [2, 3] {
        for force in [Force::Yes, Force::No, Force::Any] {
            for seed in 0..X3C_SEEDS_8 {
                out.push(gen_x3c(n_hat, seed, force).unwrap());
            }
        }
    }
    out
}

fn c8a_pne_matches_cover(corpus: &[X3CInstance]) -> Outcome {
    let (mut agree, mut yes, mut yes_pne) = (0usize, 0usize, 0usize);
    for inst in corpus {
        let red = x3c_to_two_player(inst).unwrap();
        let pne = is_pne(&red.game.view(None).unwrap(), &red.region)
            .unwrap()
            .holds;
        let cover = brute_x3c(inst).is_some();
        yes += cover as usize;
        yes_pne += (cover && pne) as usize;
        agree += (pne == cover) as usize;
    }
    outcome(
        agree == corpus.len(),
        format!(
            "{agree}/{} agree; {yes} yes-instances, {yes_pne} of them with O a PNE",
            corpus.len()
        ),
    )
}

fn c8b_forward_and_decode(corpus: &[X3CInstance]) -> Outcome {
    let (mut yes, mut good) = (0usize, 0usize);
    for inst in corpus {
        let Some(cover) = brute_x3c(inst) else {
            continue;
        };
        yes += 1;
        let red = x3c_to_two_player(inst).unwrap();
        let v = x3c_forward_promise_2p(inst, &cover).unwrap();
        let holds = verify(&red.game, &v, &red.region, &ExtValue::zero(), Mode::Subset)
            .unwrap()
            .holds;
        let decoded = decode_cover_2p(&red.game, &v)
            .map(|c| c.validate(inst).is_ok())
            .unwrap_or(false);
        good += (holds && decoded) as usize;
    }
    outcome(
        yes > 0 && good == yes,
        format!("{good}/{yes} yes-instances verify at budget 0 and decode"),
    )
}

fn c9_graphical_forward() -> Outcome {
    let mut corpus = vec![X3CInstance::forced()];
    corpus.extend((0..X3C_SEEDS_8).map(|s| gen_x3c(2, s, Force::Yes).unwrap()));
    let mut good = 0;
    for inst in &corpus {
        let cover = brute_x3c(inst).unwrap();
        let red = x3c_to_graphical(inst).unwrap();
        let v = x3c_forward_promise_graphical(inst, &cover, &red.budget).unwrap();
        let r = verify(&red.game, &v, &red.region, &red.budget, Mode::Subset).unwrap();
        let m = inst.num_elements();
        let single = (m..2 * m).all(|p| r.undominated_region.set(p).len() == 1);
        let consistent =
            (0..m).all(|j| (r.undominated_region.set(m + j) == [T]) == cover.contains(j));
        let decoded = decode_cover_graphical(&red.game, &v)
            .map(|c| c.validate(inst).is_ok())
            .unwrap_or(false);
        good += (r.holds && single && consistent && decoded) as usize;
    }
    outcome(
        good == corpus.len(),
        format!("{good}/{} planted instances", corpus.len()),
    )
}

fn c10_coloring_forward() -> Outcome {
    let graphs = [
        ("K3", ColoringInstance::complete(3)),
        ("P4", ColoringInstance::path(4)),
        ("C5", ColoringInstance::cycle(5)),
        ("Petersen", ColoringInstance::petersen()),
    ];
    let mut good = 0;
    for (_, graph) in &graphs {
        let Some(phi) = brute_coloring(graph) else {
            continue;
        };
        let red = coloring_to_exact(graph).unwrap();
        let v = coloring_forward_promise(graph, &phi).unwrap();
        let holds = verify(&red.game, &v, &red.region, &ExtValue::int(1), Mode::Exact)
            .unwrap()
            .holds;
        let decoded = decode_coloring(&red.game, &v)
            .ok()
            .and_then(|d| d.coloring.map(|c| graph.check_coloring(&c).is_ok()))
            .unwrap_or(false);
        good += (holds && decoded) as usize;
    }
    let k4_none = brute_coloring(&ColoringInstance::complete(4)).is_none();
    outcome(
        good == graphs.len() && k4_none,
        format!(
            "{good}/{} graphs round-trip, K4 uncolorable = {k4_none}",
            graphs.len()
        ),
    )
}

fn c11_runtime_sanity() -> Outcome {
    let shapes: [(&[usize], &[usize]); 3] = [
        (&[9, 9], &[2, 3]),
        (&[7, 7, 7], &[2, 2, 2]),
        (&[5, 5, 5, 5], &[2, 2, 2, 2]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = Duration::ZERO;
    let mut sizes = Vec::new();
    for (counts, sizes_o) in shapes {
        let region = RectRegion::new(sizes_o.iter().map(|&k| (0..k).collect()).collect());
        let size = mapping_space(counts, &region);
        assert!(size <= MAPPINGS_11);
        sizes.push(size);
        let g = random_game(&mut rng, counts, 20);
        let start = Instant::now();
        min_budget_solve(&g, &region).unwrap();
        worst = worst.max(start.elapsed());
    }
    outcome(
        worst < BUDGET_11,
        format!("|F| = {sizes:?}, slowest solve {worst:.2?}"),
    )
}

fn main() {
    let mut failures = Vec::new();
    let f = &mut failures;
    run("1", "worked example", BUDGET_1, c1_worked_example, f);
    run(
        "2",
        "solver on the worked example",
        BUDGET_2,
        c2_solver_example,
        f,
    );
    run(
        "3",
        "all-zero promise on CE1 is not exact",
        BUDGET_3,
        c3_counterexample,
        f,
    );
    run(
        "4",
        "domination properties",
        BUDGET_4,
        c4_domination_properties,
        f,
    );
    run(
        "5",
        "solver agrees with the oracle",
        BUDGET_5,
        c5_oracle_equivalence,
        f,
    );
    run(
        "6",
        "PNE, zero-cost oracle and solver agree",
        BUDGET_6,
        c6_zero_cost_equivalence,
        f,
    );
    run("7", "exactification", BUDGET_7, c7_exactification, f);
    let corpus = x3c_corpus();
    let start = Instant::now();
    run(
        "8a",
        "X3C two-player: is_pne(O) == cover exists",
        BUDGET_8,
        || c8a_pne_matches_cover(&corpus),
        f,
    );
    let rest = BUDGET_8.saturating_sub(start.elapsed());
    run(
        "8b",
        "X3C two-player: forward promise and decoder",
        rest,
        || c8b_forward_and_decode(&corpus),
        f,
    );
    run(
        "9",
        "X3C graphical: forward promise and decoder",
        BUDGET_9,
        c9_graphical_forward,
        f,
    );
    run(
        "10",
        "3-coloring: forward promise and decoder",
        BUDGET_10,
        c10_coloring_forward,
        f,
    );
    run(
        "11",
        "runtime sanity bound",
        BUDGET_11,
        c11_runtime_sanity,
        f,
    );
    if failures.is_empty() {
        println!("all criteria passed");
    } else {
        println!("failed criteria: {}", failures.join(", "));
        std::process::exit(1);
    }
}
