use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use wmst::adversaries::{gen_eta2_game, gen_ftp_lb, gen_general_lb_game, gen_ro_lb, random_instance, AdversarialGame};
use wmst::io::{read_instance, write_instance};
use wmst::random_order::{exact_estimate, mc_estimate, ratio_report, trial_rng, RoEstimate, CSV_HEADER, EXACT_MAX_EDGES};
use wmst::weight::{format_fraction, parse_weight};
use wmst::{
    campaigns, error_report, opt, run, AlgorithmKind, ArrivalOrder, FollowThePredictions, GreedyFollowThePredictions,
    Instance, OnlineAlgorithm, Rational, RunOptions, Weight,
};

use crate::config::ExperimentConfig;
use crate::{Alg, Command, Family, GenArgs, RoArgs, RunArgs, SelftestArgs, SweepArgs};

/// Runs a subcommand; `Ok(false)` means a requested validation failed.
pub fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Run(args) => run_cmd(args),
        Command::Ro(args) => ro(args),
        Command::Sweep(args) => sweep(args),
        Command::Selftest(args) => selftest(args),
    }
}

fn rational(name: &str, text: &str) -> Result<Rational> {
    parse_weight(text).with_context(|| format!("invalid --{name}"))
}

fn required<T>(value: Option<T>, name: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("{family} requires --{name}"))
}

fn sibling(path: &Path, extension: &str) -> PathBuf {
    path.with_extension(extension)
}

fn show(w: &Rational) -> String {
    format!("{} ({})", format_fraction(w), wmst::random_order::format_decimal(w.as_f64()))
}

fn print_report(instance: &Instance) {
    let r = error_report(instance);
    println!("n: {}", instance.graph().n());
    println!("m: {}", instance.graph().m());
    println!("opt: {}", format_fraction(&r.opt_actual));
    println!("opt_predicted: {}", format_fraction(&r.opt_predicted));
    println!("eta1: {}", format_fraction(&r.eta1));
    println!("eta2: {}", format_fraction(&r.eta2));
    println!("eta: {}", format_fraction(&r.eta));
    println!("epsilon: {}", format_fraction(&r.epsilon));
}

fn gen(args: GenArgs) -> Result<bool> {
    let family = clap::ValueEnum::to_possible_value(&args.family).map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut config = ExperimentConfig {
        command: "gen",
        family: Some(args.family),
        output: Some(args.out.display().to_string()),
        checked: args.checked,
        ..Default::default()
    };
    let options = RunOptions { checked: args.checked };
    let mut game: Option<AdversarialGame<Rational>> = None;
    let mut side_order: Option<ArrivalOrder> = None;
    let instance = match args.family {
        Family::FtpLb => {
            let k = rational("k", &required(args.k.clone(), "k", &family)?)?;
            let l = required(args.l, "l", &family)?;
            config.k = Some(format_fraction(&k));
            config.l = Some(l.to_string());
            let lb = gen_ftp_lb(&k, l)?;
            side_order = Some(lb.defeating_order);
            lb.instance
        }
        Family::RoLb => {
            let k = rational("k", &required(args.k.clone(), "k", &family)?)?;
            let delta = rational("delta", &required(args.delta.clone(), "delta", &family)?)?;
            let l = required(args.l, "l", &family)?;
            config.k = Some(format_fraction(&k));
            config.delta = Some(format_fraction(&delta));
            config.l = Some(l.to_string());
            gen_ro_lb(&k, &delta, l)?
        }
        Family::GeneralLb => {
            let k: usize = required(args.k.clone(), "k", &family)?.parse().context("--k must be an integer")?;
            let l = required(args.l, "l", &family)?;
            config.k = Some(k.to_string());
            config.l = Some(l.to_string());
            config.alg = Some(AlgorithmKind::from(args.alg).name().into());
            let g = gen_general_lb_game(k, l, AlgorithmKind::from(args.alg).build::<Rational>(), options)?;
            let instance = g.instance.clone();
            game = Some(g);
            instance
        }
        Family::Eta2 => {
            let k: i64 = required(args.k.clone(), "k", &family)?.parse().context("--k must be an integer")?;
            let big_k = args.big_k.unwrap_or(10 * k);
            config.k = Some(k.to_string());
            config.big_k = Some(big_k);
            config.alg = Some(AlgorithmKind::from(args.alg).name().into());
            let g = gen_eta2_game(k, big_k, AlgorithmKind::from(args.alg).build::<Rational>(), options)?;
            let instance = g.instance.clone();
            game = Some(g);
            instance
        }
        Family::Random => {
            let n = required(args.n, "n", &family)?;
            let p = rational("edge-prob", &args.edge_prob)?;
            let noise = rational("noise", &args.noise)?;
            config.n = Some(n.to_string());
            config.edge_prob = Some(format_fraction(&p));
            config.noise = Some(format_fraction(&noise));
            config.seed = Some(args.seed);
            random_instance(n, &p, &noise, args.seed)?
        }
    };
    println!("{}", config.line());
    write_instance(&args.out, &instance)?;
    println!("instance: {}", args.out.display());
    if let Some(order) = side_order {
        let path = sibling(&args.out, "order");
        std::fs::write(&path, order.to_text())?;
        println!("defeating order: {}", path.display());
    }
    if let Some(g) = &game {
        let order_path = sibling(&args.out, "order");
        let trace_path = sibling(&args.out, "trace");
        std::fs::write(&order_path, g.order.to_text())?;
        std::fs::write(&trace_path, g.trace.to_text())?;
        println!("order: {}", order_path.display());
        println!("trace: {}", trace_path.display());
    }
    print_report(&instance);
    if let Some(g) = &game {
        let o = opt(instance.graph(), instance.actual());
        println!("game cost ({}): {}", g.trace.algorithm, show(&g.trace.cost));
        println!("game gap: {}", show(&(g.trace.cost.clone() - o.clone())));
        println!("game ratio: {}", show(&(g.trace.cost.clone() / o)));
    }
    Ok(true)
}

fn parse_order(spec: &str, m: usize) -> Result<ArrivalOrder> {
    if spec == "id" {
        return Ok(ArrivalOrder::identity(m));
    }
    if let Some(seed) = spec.strip_prefix("seed:") {
        let seed: u64 = seed.parse().with_context(|| format!("bad seed in order spec {spec:?}"))?;
        return Ok(ArrivalOrder::random(m, &mut trial_rng(seed, 0)));
    }
    if let Some(file) = spec.strip_prefix("given:") {
        let text = std::fs::read_to_string(file).with_context(|| format!("reading order file {file}"))?;
        return Ok(ArrivalOrder::parse(&text, m)?);
    }
    bail!("order must be \"id\", \"seed:<u64>\" or \"given:<file>\", got {spec:?}")
}

fn run_cmd(args: RunArgs) -> Result<bool> {
    let instance: Instance = read_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let kind = AlgorithmKind::from(args.alg);
    let config = ExperimentConfig {
        command: "run",
        alg: Some(kind.name().into()),
        instance: Some(args.instance.display().to_string()),
        order: Some(args.order.clone()),
        output: args.trace_out.as_ref().map(|p| p.display().to_string()),
        checked: args.checked,
        ..Default::default()
    };
    let order = parse_order(&args.order, instance.graph().m())?;
    let trace = run(kind.build::<Rational>(), &instance, &order, RunOptions { checked: args.checked })?;
    if let Some(path) = &args.trace_out {
        std::fs::write(path, trace.to_text())?;
    }
    let r = error_report(&instance);
    let bound = r.opt_actual.clone() + r.eta.clone() + r.eta.clone();
    let holds = trace.cost <= bound;
    println!("{}", config.line());
    println!("algorithm: {}", trace.algorithm);
    println!("cost: {}", show(&trace.cost));
    println!("opt: {}", show(&r.opt_actual));
    println!("eta: {}", show(&r.eta));
    println!("epsilon: {}", show(&r.epsilon));
    println!("ratio: {}", show(&(trace.cost.clone() / r.opt_actual.clone())));
    println!("swaps: {}", trace.swap_count());
    println!(
        "cost <= OPT + 2*eta ({}): {}",
        format_fraction(&bound),
        if holds { "holds" } else { "VIOLATED" }
    );
    Ok(holds)
}

fn estimate_with<A, F>(factory: F, instance: &Instance, exact: bool, trials: u64, seed: u64, options: RunOptions) -> Result<RoEstimate<Rational>>
where
    A: OnlineAlgorithm<Rational> + Clone,
    F: Fn() -> A + Sync,
{
    Ok(if exact {
        exact_estimate(factory, instance, options)?
    } else {
        mc_estimate(factory, instance, trials, seed, options)?
    })
}

fn estimate(alg: Alg, instance: &Instance, exact: bool, trials: u64, seed: u64, options: RunOptions) -> Result<RoEstimate<Rational>> {
    match alg {
        Alg::Ftp => estimate_with(FollowThePredictions::new, instance, exact, trials, seed, options),
        Alg::Gftp => estimate_with(GreedyFollowThePredictions::new, instance, exact, trials, seed, options),
    }
}

fn ro(args: RoArgs) -> Result<bool> {
    let instance: Instance = read_instance(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let id = args.id.clone().unwrap_or_else(|| {
        args.instance.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    });
    let config = ExperimentConfig {
        command: "ro",
        alg: Some(AlgorithmKind::from(args.alg).name().into()),
        instance: Some(args.instance.display().to_string()),
        trials: (!args.exact).then_some(args.trials),
        seed: (!args.exact).then_some(args.seed),
        exact: Some(args.exact),
        checked: args.checked,
        ..Default::default()
    };
    let est = estimate(args.alg, &instance, args.exact, args.trials, args.seed, RunOptions { checked: args.checked })?;
    let report = ratio_report(&id, est);
    println!("{}", config.line());
    println!("{CSV_HEADER}");
    println!("{}", report.to_csv_row());
    if report.flagged() {
        eprintln!("warning: measured ratio exceeds a reference upper bound by more than 3 standard errors");
    }
    Ok(!report.flagged())
}

fn sweep_grid(args: &SweepArgs) -> Result<Vec<(String, Instance)>> {
    let usage = |what: &str| anyhow!("empty grid: {what}");
    let mut grid = Vec::new();
    match args.family {
        Family::FtpLb => {
            if args.k.is_empty() || args.l.is_empty() {
                return Err(usage("ftp-lb needs --k and --l lists"));
            }
            for k in &args.k {
                let k = rational("k", k)?;
                for &l in &args.l {
                    let id = format!("ftp-lb[k={};l={l}]", format_fraction(&k));
                    grid.push((id, gen_ftp_lb(&k, l)?.instance));
                }
            }
        }
        Family::RoLb => {
            if args.k.is_empty() || args.l.is_empty() || args.delta.is_empty() {
                return Err(usage("ro-lb needs --k, --l and --delta lists"));
            }
            for k in &args.k {
                let k = rational("k", k)?;
                for d in &args.delta {
                    let delta = rational("delta", d)?;
                    for &l in &args.l {
                        let id = format!("ro-lb[k={};delta={};l={l}]", format_fraction(&k), format_fraction(&delta));
                        grid.push((id, gen_ro_lb(&k, &delta, l)?));
                    }
                }
            }
        }
        Family::Random => {
            if args.n.is_empty() || args.instances == 0 {
                return Err(usage("random needs a --n list and --instances ≥ 1"));
            }
            let p = rational("edge-prob", &args.edge_prob)?;
            let noise = rational("noise", &args.noise)?;
            for &n in &args.n {
                for i in 0..args.instances {
                    let seed = args.seed.wrapping_add(i);
                    let id = format!("random[n={n};seed={seed}]");
                    grid.push((id, random_instance(n, &p, &noise, seed)?));
                }
            }
        }
        Family::GeneralLb | Family::Eta2 => {
            bail!("sweep supports ftp-lb, ro-lb and random; adaptive games depend on the opponent, use gen")
        }
    }
    Ok(grid)
}

fn sweep(args: SweepArgs) -> Result<bool> {
    if args.algs.is_empty() {
        bail!("empty grid: --algs needs at least one algorithm");
    }
    let grid = sweep_grid(&args)?;
    let config = ExperimentConfig {
        command: "sweep",
        family: Some(args.family),
        alg: Some(args.algs.iter().map(|a| AlgorithmKind::from(*a).name()).collect::<Vec<_>>().join(",")),
        k: (!args.k.is_empty()).then(|| args.k.join(",")),
        l: (!args.l.is_empty()).then(|| args.l.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        delta: (!args.delta.is_empty()).then(|| args.delta.join(",")),
        n: (!args.n.is_empty()).then(|| args.n.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        edge_prob: (args.family == Family::Random).then(|| args.edge_prob.clone()),
        noise: (args.family == Family::Random).then(|| args.noise.clone()),
        instances: (args.family == Family::Random).then_some(args.instances),
        trials: Some(args.trials),
        seed: Some(args.seed),
        exact: Some(args.exact),
        output: args.out.as_ref().map(|p| p.display().to_string()),
        ..Default::default()
    };
    let jobs: Vec<(&String, &Instance, Alg)> = grid
        .iter()
        .flat_map(|(id, inst)| args.algs.iter().map(move |&a| (id, inst, a)))
        .collect();
    // collected in grid order regardless of completion order
    let rows: Vec<_> = jobs
        .par_iter()
        .map(|&(id, inst, alg)| {
            let exact = args.exact && inst.graph().m() <= EXACT_MAX_EDGES;
            estimate(alg, inst, exact, args.trials, args.seed, RunOptions::default()).map(|e| ratio_report(id, e))
        })
        .collect::<Result<_>>()?;
    let mut out = String::new();
    writeln!(out, "{}", config.line())?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in &rows {
        writeln!(out, "{}", r.to_csv_row())?;
    }
    match &args.out {
        Some(path) => {
            std::fs::write(path, &out)?;
            println!("{}", config.line());
            println!("{} rows written to {}", rows.len(), path.display());
        }
        None => print!("{out}"),
    }
    let flagged = rows.iter().filter(|r| r.flagged()).count();
    if flagged > 0 {
        eprintln!("warning: {flagged} rows exceed a reference upper bound by more than 3 standard errors");
    }
    Ok(flagged == 0)
}

fn selftest(args: SelftestArgs) -> Result<bool> {
    let config = ExperimentConfig {
        command: "selftest",
        scale: Some(args.scale),
        seed: Some(args.seed),
        checked: args.checked,
        ..Default::default()
    };
    println!("{}", config.line());
    let reports = campaigns::full_suite(args.scale, args.seed, args.checked);
    for r in &reports {
        println!("{} {r}", if r.passed() { "PASS" } else { "FAIL" });
    }
    let ok = reports.iter().all(|r| r.passed());
    println!("selftest: {}", if ok { "all campaigns passed" } else { "FAILED" });
    Ok(ok)
}
