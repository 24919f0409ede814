use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gimpl_core::reductions::{
    brute_coloring, brute_x3c, coloring_forward_promise, coloring_to_exact, decode_coloring,
    decode_cover_2p, decode_cover_graphical, gen_x3c, x3c_forward_promise_2p,
    x3c_forward_promise_graphical, x3c_from_graphical, x3c_from_two_player, x3c_to_graphical,
    x3c_to_two_player, ColoringInstance, ExactCover, Force, X3CInstance,
};
use gimpl_core::{
    cost, find_dominator, is_equitable, is_pne, min_budget_solve_with, oracle_min_budget,
    parse_instance, solve_exact_with, to_document, undominated, verify, write_instance, AnyGame,
    DominatorMapping, Error, ExtValue, GameForm, Instance, Mode, PaymentPromise, PneWitness,
    RectRegion, SolveOptions, Violation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gimpl", version, about = "Payment promises for finite games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Undominated strategies of the (modified) game and the promise's cost.
    Analyze { file: PathBuf },
    /// Check the document's promise against its region and budget.
    Verify {
        file: PathBuf,
        /// Require the undominated region to equal the desired one.
        #[arg(long)]
        exact: bool,
    },
    /// Minimum-budget promise for the document's region.
    Solve {
        file: PathBuf,
        /// Turn the promise into an exact implementation (equitable games only).
        #[arg(long)]
        exactify: bool,
        /// Worker threads; 0 uses every available processor.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Whether the region can be implemented at zero cost.
    Pne {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive search over dominator mappings.
    Oracle { file: PathBuf },
    /// Generate reduction instances.
    #[command(subcommand)]
    Gen(Gen),
    /// Recover a combinatorial solution from a reduced game and its promise.
    Decode {
        #[arg(long, value_enum)]
        kind: DecodeKind,
        file: PathBuf,
    },
}

#[derive(Args)]
struct Output {
    /// Write the produced instance document here instead of embedding it in the report.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// Random exact-cover instance reduced to a game.
    X3c {
        #[arg(long = "n")]
        n_hat: usize,
        #[arg(long, env = "GIMPL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ForceArg::Any)]
        force: ForceArg,
        #[arg(long, value_enum, default_value_t = Target::TwoP)]
        target: Target,
        /// Attach the forward promise built from a brute-forced cover.
        #[arg(long)]
        promise: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Graph reduced to an exact-implementation game.
    Coloring {
        /// Edge list: one `u v` pair per line, `#` starts a comment.
        #[arg(long)]
        edges: PathBuf,
        /// Vertex count; defaults to one past the largest endpoint.
        #[arg(long)]
        vertices: Option<usize>,
        /// Attach the forward promise built from a brute-forced coloring.
        #[arg(long)]
        promise: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ForceArg {
    Yes,
    No,
    Any,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "2p")]
    TwoP,
    Graphical,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecodeKind {
    X3c2p,
    X3cgraph,
    Coloring,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Yes,
    No,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Error => "error",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 2,
            Status::Error => 1,
        }
    }
}

struct Report {
    status: Status,
    payload: Value,
}

impl Report {
    fn yes(payload: Value) -> Self {
        Report {
            status: Status::Yes,
            payload,
        }
    }

    fn no(payload: Value) -> Self {
        Report {
            status: Status::No,
            payload,
        }
    }

    fn when(holds: bool, payload: Value) -> Self {
        if holds {
            Report::yes(payload)
        } else {
            Report::no(payload)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(cli.command).unwrap_or_else(|e| {
        eprintln!("gimpl: {e:#}");
        Report {
            status: Status::Error,
            payload: json!({ "error": format!("{e:#}") }),
        }
    });
    let mut out = match report.payload {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    out.insert("status".into(), json!(report.status.label()));
    println!(
        "{}",
        serde_json::to_string_pretty(&Value::Object(out)).expect("json output")
    );
    ExitCode::from(report.status.code())
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::Analyze { file } => analyze(&load(&file)?),
        Command::Verify { file, exact } => verify_cmd(&load(&file)?, exact),
        Command::Solve {
            file,
            exactify,
            jobs,
            out,
        } => solve(&load(&file)?, exactify, jobs, &out),
        Command::Pne { file, out } => pne(&load(&file)?, &out),
        Command::Oracle { file } => oracle(&load(&file)?),
        Command::Gen(Gen::X3c {
            n_hat,
            seed,
            force,
            target,
            promise,
            out,
        }) => gen_x3c_cmd(n_hat, seed, force, target, promise, &out),
        Command::Gen(Gen::Coloring {
            edges,
            vertices,
            promise,
            out,
        }) => gen_coloring(&edges, vertices, promise, &out),
        Command::Decode { kind, file } => decode(kind, &load(&file)?),
    }
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn need_region(inst: &Instance) -> anyhow::Result<&RectRegion> {
    inst.region
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no region"))
}

fn promise_or_zero(inst: &Instance) -> PaymentPromise {
    inst.promise
        .clone()
        .unwrap_or_else(|| PaymentPromise::new(inst.game.num_players()))
}

fn name<G: GameForm + ?Sized>(game: &G, player: usize, strategy: usize) -> &str {
    &game.players()[player].strategies[strategy]
}

fn names<G: GameForm + ?Sized>(game: &G, player: usize, set: &[usize]) -> Vec<String> {
    set.iter()
        .map(|&s| name(game, player, s).to_string())
        .collect()
}

fn region_json<G: GameForm + ?Sized>(game: &G, region: &RectRegion) -> Value {
    let sets: Vec<Value> = (0..game.num_players())
        .map(|i| json!({ "player": game.players()[i].name, "strategies": names(game, i, region.set(i)) }))
        .collect();
    Value::Array(sets)
}

fn mapping_json<G: GameForm + ?Sized>(game: &G, f: &DominatorMapping) -> Value {
    f.entries()
        .iter()
        .map(|e| {
            json!({
                "player": game.players()[e.player].name,
                "undesired": name(game, e.player, e.undesired),
                "desired": name(game, e.player, e.desired),
            })
        })
        .collect()
}

fn margins_json(margins: &[(u128, u128)]) -> Value {
    margins
        .iter()
        .map(|(o, rest)| json!([o.to_string(), rest.to_string()]))
        .collect()
}

/// Embeds the document in the report, or writes it to `--output`.
fn emit(payload: &mut Value, inst: &Instance, out: &Output) -> anyhow::Result<()> {
    let slot = match &out.output {
        Some(path) => {
            fs::write(path, write_instance(inst))
                .with_context(|| format!("writing {}", path.display()))?;
            json!(path.display().to_string())
        }
        None => serde_json::to_value(to_document(inst))?,
    };
    let key = if out.output.is_some() {
        "output"
    } else {
        "instance"
    };
    payload
        .as_object_mut()
        .expect("object payload")
        .insert(key.into(), slot);
    Ok(())
}

/// Undominated and dominated strategies per player, each dominated one with its smallest dominator.
fn domination_json<G: GameForm + ?Sized>(
    game: &G,
    promise: Option<&PaymentPromise>,
) -> anyhow::Result<Value> {
    let view = game.view(promise)?;
    let mut players = Vec::new();
    for i in 0..game.num_players() {
        let keep = undominated(&view, i);
        let dominated: Vec<Value> = (0..game.strategy_counts()[i])
            .filter(|s| !keep.contains(s))
            .map(|s| {
                let by = find_dominator(&view, i, s)?;
                Ok(json!({ "strategy": name(game, i, s), "by": name(game, i, by) }))
            })
            .collect::<Result<_, Error>>()?;
        players.push(json!({
            "name": game.players()[i].name,
            "undominated": names(game, i, &keep),
            "dominated": dominated,
        }));
    }
    Ok(Value::Array(players))
}

fn analyze(inst: &Instance) -> anyhow::Result<Report> {
    let game = &inst.game;
    let mut payload = json!({
        "kind": if game.is_graphical() { "graphical" } else { "normal" },
        "players": domination_json(game, None)?,
    });
    if let Some(promise) = &inst.promise {
        payload["promised"] = json!({
            "players": domination_json(game, Some(promise))?,
            "cost": cost(game, promise)?.to_string(),
        });
    }
    if let Some(region) = &inst.region {
        let eq = is_equitable(game, region)?;
        let pne = is_pne(&game.view(None)?, region)?;
        payload["region"] = json!({
            "sets": region_json(game, region),
            "equitable": eq.equitable,
            "margins": margins_json(&eq.margins),
            "pne": pne.holds,
        });
    }
    Ok(Report::yes(payload))
}

fn verify_cmd(inst: &Instance, exact: bool) -> anyhow::Result<Report> {
    let region = need_region(inst)?;
    let budget = inst
        .budget
        .clone()
        .ok_or_else(|| anyhow!("instance has no budget"))?;
    let mode = if exact { Mode::Exact } else { Mode::Subset };
    let game = &inst.game;
    let r = verify(game, &promise_or_zero(inst), region, &budget, mode)?;
    let violation = r.violation.as_ref().map(|v| {
        let (kind, player, strategy) = match *v {
            Violation::Undesired { player, strategy } => ("undesired", player, strategy),
            Violation::Missing { player, strategy } => ("missing", player, strategy),
        };
        json!({ "kind": kind, "player": game.players()[player].name, "strategy": name(game, player, strategy) })
    });
    Ok(Report::when(
        r.holds,
        json!({
            "mode": if exact { "exact" } else { "subset" },
            "cost": r.cost.to_string(),
            "budget": r.budget.to_string(),
            "within_budget": r.within_budget,
            "undominated": region_json(game, &r.undominated_region),
            "violation": violation,
        }),
    ))
}

fn solve(inst: &Instance, exactify: bool, jobs: usize, out: &Output) -> anyhow::Result<Report> {
    let region = need_region(inst)?;
    let game = inst.game.to_normal()?;
    let opts = SolveOptions { jobs };
    let res = if exactify {
        solve_exact_with(&game, region, opts)
    } else {
        min_budget_solve_with(&game, region, opts)
    };
    let res = match res {
        Ok(res) => res,
        Err(Error::NotEquitable { margins }) => {
            return Ok(Report::no(
                json!({ "reason": "not equitable", "margins": margins_json(&margins) }),
            ));
        }
        Err(e @ Error::DegenerateRegion { .. }) => {
            return Ok(Report::no(json!({ "reason": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let mut payload = json!({
        "delta": res.delta.to_string(),
        "mapping": mapping_json(&game, &res.mapping),
        "exactified": res.exactified,
    });
    let doc = Instance::new(game)
        .with_region(region.clone())
        .with_budget(res.delta)
        .with_promise(res.promise);
    emit(&mut payload, &doc, out)?;
    Ok(Report::yes(payload))
}

fn pne(inst: &Instance, out: &Output) -> anyhow::Result<Report> {
    let region = need_region(inst)?;
    let game = &inst.game;
    let report = is_pne(&game.view(None)?, region)?;
    let witness = match &report.witness {
        PneWitness::Defection { player, strategy } => json!({
            "kind": "defection",
            "player": game.players()[*player].name,
            "strategy": name(game, *player, *strategy),
        }),
        PneWitness::Counters { counters } => json!({
            "kind": "counters",
            "counters": counters
                .iter()
                .map(|c| json!({
                    "player": game.players()[c.player].name,
                    "strategy": name(game, c.player, c.strategy),
                    "counter": name(game, c.player, c.counter),
                }))
                .collect::<Vec<_>>(),
        }),
    };
    let mut payload = json!({ "pne": report.holds, "witness": witness });
    if report.holds {
        let promise = gimpl_core::zero_cost_promise(game, region)?;
        let doc = Instance::new(game.clone())
            .with_region(region.clone())
            .with_budget(ExtValue::zero())
            .with_promise(promise);
        emit(&mut payload, &doc, out)?;
    }
    Ok(Report::when(report.holds, payload))
}

fn oracle(inst: &Instance) -> anyhow::Result<Report> {
    let region = need_region(inst)?;
    let game = inst.game.to_normal()?;
    let res = match oracle_min_budget(&game, region) {
        Ok(res) => res,
        Err(e @ Error::DegenerateRegion { .. }) => {
            return Ok(Report::no(json!({ "reason": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let landscape: Vec<Value> = res
        .per_mapping_costs
        .iter()
        .map(|(f, d)| json!({ "mapping": mapping_json(&game, f), "delta": d.to_string() }))
        .collect();
    let list = |fs: &[DominatorMapping]| {
        fs.iter()
            .map(|f| mapping_json(&game, f))
            .collect::<Vec<_>>()
    };
    Ok(Report::yes(json!({
        "delta": res.delta.to_string(),
        "optimal": list(&res.all_optimal_mappings),
        "unattainable": list(&res.unattainable),
        "landscape": landscape,
    })))
}

fn x3c_json(inst: &X3CInstance, cover: Option<&ExactCover>) -> Value {
    json!({
        "n_hat": inst.n_hat(),
        "sets": inst.sets(),
        "cover": cover.map(|c| &c.sets),
    })
}

fn gen_x3c_cmd(
    n_hat: usize,
    seed: u64,
    force: ForceArg,
    target: Target,
    promise: bool,
    out: &Output,
) -> anyhow::Result<Report> {
    let force = match force {
        ForceArg::Yes => Force::Yes,
        ForceArg::No => Force::No,
        ForceArg::Any => Force::Any,
    };
    let x3c = gen_x3c(n_hat, seed, force)?;
    let cover = brute_x3c(&x3c);
    let mut payload = json!({ "seed": seed, "x3c": x3c_json(&x3c, cover.as_ref()) });
    if promise && cover.is_none() {
        payload["reason"] = json!("no exact cover, so no forward promise");
        return Ok(Report::no(payload));
    }
    let doc = match target {
        Target::TwoP => {
            let red = x3c_to_two_player(&x3c)?;
            let doc = Instance::new(red.game)
                .with_region(red.region)
                .with_budget(red.budget);
            match &cover {
                Some(c) if promise => doc.with_promise(x3c_forward_promise_2p(&x3c, c)?),
                _ => doc,
            }
        }
        Target::Graphical => {
            let red = x3c_to_graphical(&x3c)?;
            let forward = match &cover {
                Some(c) if promise => Some(x3c_forward_promise_graphical(&x3c, c, &red.budget)?),
                _ => None,
            };
            let doc = Instance::new(red.game)
                .with_region(red.region)
                .with_budget(red.budget);
            match forward {
                Some(v) => doc.with_promise(v),
                None => doc,
            }
        }
    };
    emit(&mut payload, &doc, out)?;
    Ok(Report::yes(payload))
}

fn read_edges(path: &Path) -> anyhow::Result<Vec<(usize, usize)>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut edges = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ends: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        let [u, v] = ends.as_slice() else {
            bail!(
                "{}:{}: expected two vertices, got {line:?}",
                path.display(),
                n + 1
            );
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .with_context(|| format!("{}:{}: bad vertex {s:?}", path.display(), n + 1))
        };
        edges.push((parse(u)?, parse(v)?));
    }
    Ok(edges)
}

fn gen_coloring(
    path: &Path,
    vertices: Option<usize>,
    promise: bool,
    out: &Output,
) -> anyhow::Result<Report> {
    let edges = read_edges(path)?;
    let n = vertices.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    let graph = ColoringInstance::new(n, edges)?;
    let phi = brute_coloring(&graph);
    let mut payload = json!({ "vertices": n, "edges": graph.edges, "coloring": phi });
    if promise && phi.is_none() {
        payload["reason"] = json!("graph is not 3-colorable, so no forward promise");
        return Ok(Report::no(payload));
    }
    let red = coloring_to_exact(&graph)?;
    let mut doc = Instance::new(red.game)
        .with_region(red.region)
        .with_budget(red.budget);
    if let (true, Some(phi)) = (promise, &phi) {
        doc = doc.with_promise(coloring_forward_promise(&graph, phi)?);
    }
    emit(&mut payload, &doc, out)?;
    Ok(Report::yes(payload))
}

fn decode(kind: DecodeKind, inst: &Instance) -> anyhow::Result<Report> {
    let promise = inst
        .promise
        .as_ref()
        .ok_or_else(|| anyhow!("instance has no promise"))?;
    let result = match (kind, &inst.game) {
        (DecodeKind::X3c2p, AnyGame::Normal(g)) => decode_cover_2p(g, promise)
            .map(|c| x3c_json(&x3c_from_two_player(g).expect("decoded game parses"), Some(&c))),
        (DecodeKind::X3cgraph, AnyGame::Graphical(g)) => decode_cover_graphical(g, promise)
            .map(|c| x3c_json(&x3c_from_graphical(g).expect("decoded game parses"), Some(&c))),
        (DecodeKind::Coloring, AnyGame::Normal(g)) => {
            decode_coloring(g, promise).map(|graph| json!({ "vertices": graph.vertices, "edges": graph.edges, "coloring": graph.coloring }))
        }
        (DecodeKind::X3cgraph, _) => bail!("x3cgraph decoding needs a graphical game"),
        _ => bail!("this decoder needs a normal-form game"),
    };
    match result {
        Ok(payload) => Ok(Report::yes(payload)),
        Err(e @ (Error::Decode(_) | Error::InvalidCover(_) | Error::InvalidColoring(_))) => {
            Ok(Report::no(json!({ "reason": e.to_string() })))
        }
        Err(e) => Err(e.into()),
    }
}
