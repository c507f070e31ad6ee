use std::fs;

use anyhow::{Context, Result};
use lcsim::bounds::{bounds_table, BOUNDS_CSV_HEADER};
use lcsim::hypothesis::{self, TestParams};
use lcsim::montecarlo::{fit_power_law, histogram, variance_scan, SCAN_CSV_HEADER, SCAN_CSV_SCHEMA};
use lcsim::seqgen::{
    DistributionSpec, MixtureSpec, PairSpec, DEFAULT_LADDER_SEGMENTS, DEFAULT_MIXTURE_PIECES,
};
use lcsim::{lcs_backtrack, lcs_dp, Engine, Error, RngHandle};
use serde_json::{json, Value};

use crate::args::{
    BoundsArgs, CalibrateArgs, Cli, Command, GeneratorArgs, GeneratorKind, LcsArgs, ParamArgs,
    PowerArgs, SimulateArgs, TableFormat, TestArgs,
};
use crate::manifest::Output;
use crate::seqfile::Alphabet;

pub const TEST_SCHEMA: &str = "lcsim.test/1";
pub const POWER_SCHEMA: &str = "lcsim.power/1";
pub const PARAMS_SCHEMA: &str = "lcsim.params/1";
pub const HIST_SCHEMA: &str = "lcsim.hist/1";
pub const BOUNDS_SCHEMA: &str = "lcsim.bounds/1";

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(msg.into()).into()
}

/// Runs one subcommand and returns the parameter set for the manifest.
pub fn dispatch(cli: &Cli, seed: u64, out: &mut Output) -> Result<Value> {
    let engine: Engine = cli.global.engine.into();
    match &cli.command {
        Command::Lcs(a) => cmd_lcs(a, out),
        Command::Simulate(a) => cmd_simulate(a, seed, engine, out),
        Command::Calibrate(a) => cmd_calibrate(a, seed, engine, out),
        Command::Test(a) => cmd_test(a, seed, engine, out),
        Command::Power(a) => cmd_power(a, seed, engine, out),
        Command::Bounds(a) => cmd_bounds(a, out),
    }
}

fn cmd_lcs(args: &LcsArgs, out: &mut Output) -> Result<Value> {
    let alphabet = Alphabet::parse(&args.alphabet)?;
    let a = alphabet.read_file(&args.file_a)?;
    let b = alphabet.read_file(&args.file_b)?;
    let engine: Engine = args.algorithm.into();
    let length = engine.lcs(&a, &b)?;
    if args.check {
        let oracle = lcs_dp(&a, &b)?;
        if oracle != length {
            anyhow::bail!("{engine} gave {length} but the DP oracle gave {oracle}");
        }
    }
    out.line(&length.to_string())?;
    if args.witness {
        let w = lcs_backtrack(&a, &b)?;
        out.line(&alphabet.encode(&w))?;
    }
    Ok(json!({
        "command": "lcs",
        "algorithm": engine.name(),
        "alphabet": args.alphabet,
        "len_a": a.len(),
        "len_b": b.len(),
        "witness": args.witness,
        "check": args.check,
    }))
}

pub fn parse_grid(spec: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().replace([',', '_'], "").parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| invalid(format!("bad grid '{spec}': {e}")))?;
    match nums.as_slice() {
        [start, step, stop] if *step > 0 && start <= stop => {
            Ok((*start..=*stop).step_by(*step).collect())
        }
        [single] => Ok(vec![*single]),
        _ => Err(invalid(format!("grid must look like start:step:stop, got '{spec}'"))),
    }
}

fn parse_list<T: std::str::FromStr>(spec: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|e| invalid(format!("bad {what} '{p}': {e}")))
        })
        .collect()
}

fn cmd_simulate(args: &SimulateArgs, seed: u64, engine: Engine, out: &mut Output) -> Result<Value> {
    let dist = match &args.dist {
        Some(d) => DistributionSpec::new(parse_list(d, "probability")?)?,
        None => DistributionSpec::uniform(args.k)?,
    };
    let grid = match (&args.grid, &args.n) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(n)) => parse_list(n, "length")?,
        (None, None) => return Err(invalid("give the lengths with --grid or --n")),
    };
    out.line(&format!("# schema: {SCAN_CSV_SCHEMA}"))?;
    out.line(SCAN_CSV_HEADER)?;
    let rows = variance_scan(&grid, &dist, args.reps, RngHandle::new(seed), engine, |stats| {
        out.line(&stats.csv_row()).map_err(|e| Error::Internal(e.to_string()))
    })?;

    let mut fit_json = Value::Null;
    if rows.len() >= 2 {
        let points: Vec<(f64, f64)> = rows.iter().map(|s| (s.n as f64, s.variance)).collect();
        match fit_power_law(&points) {
            Ok(fit) => {
                let line = format!(
                    "# fit: variance = {} * n^{} (r_squared = {}, points = {})",
                    fit.intercept_coeff, fit.slope, fit.r_squared, fit.points_used
                );
                out.line(&line)?;
                eprintln!("{}", line.trim_start_matches("# "));
                fit_json = serde_json::to_value(fit)?;
            }
            Err(e) => eprintln!("no fit: {e}"),
        }
    }
    Ok(json!({
        "command": "simulate",
        "dist": dist.probs(),
        "grid": grid,
        "reps": args.reps,
        "engine": engine.name(),
        "fit": fit_json,
    }))
}

fn cmd_calibrate(args: &CalibrateArgs, seed: u64, engine: Engine, out: &mut Output) -> Result<Value> {
    let params = hypothesis::calibrate(
        args.n_cal,
        args.reps,
        args.k,
        args.alpha,
        RngHandle::new(seed),
        engine,
    )?;
    let doc = json!({
        "schema": PARAMS_SCHEMA,
        "gamma_star": params.gamma_star,
        "c": params.c,
        "alpha": params.alpha,
        "n_cal": params.n_cal,
        "reps_cal": params.reps_cal,
        "seed": params.seed,
        "alphabet_size": args.k,
        "engine": engine.name(),
    });
    out.line(&serde_json::to_string_pretty(&doc)?)?;
    Ok(json!({ "command": "calibrate", "k": args.k, "n_cal": args.n_cal, "reps": args.reps }))
}

fn load_params(args: &ParamArgs) -> Result<(TestParams, &'static str)> {
    let (params, source) = match (&args.params, args.gamma_star, args.c) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let params: TestParams = serde_json::from_str(&text)
                .map_err(|e| invalid(format!("parsing {}: {e}", path.display())))?;
            (params, "file")
        }
        (None, Some(g), Some(c)) => (
            TestParams { gamma_star: g, c, ..TestParams::published_k4() },
            "flags",
        ),
        _ => (TestParams::published_k4(), "published"),
    };
    let params = match args.alpha {
        Some(alpha) => params.with_alpha(alpha)?,
        None => {
            params.validate()?;
            params
        }
    };
    Ok((params, source))
}

fn build_generator(kind: GeneratorKind, g: &GeneratorArgs) -> Result<PairSpec> {
    let spec = match kind {
        GeneratorKind::Null => PairSpec::uniform(g.n, g.k)?,
        GeneratorKind::Identical => PairSpec::Identical { n: g.n, alphabet_size: g.k },
        GeneratorKind::AltCommon => {
            let m_len = g.m_len.ok_or_else(|| invalid("--m-len is required for alt-common"))?;
            PairSpec::AltCommon {
                n: g.n,
                m_len,
                segments: g.segments.unwrap_or(DEFAULT_LADDER_SEGMENTS),
                alphabet_size: g.k,
            }
        }
        GeneratorKind::AltMixture => {
            let p: Vec<f64> = parse_list(&g.mix, "mixture probability")?;
            let [both, x_only, y_only, neither] = p[..] else {
                return Err(invalid("--mix needs four probabilities"));
            };
            PairSpec::AltMixture {
                n: g.n,
                m_len: g.m_len.unwrap_or(g.n / 2),
                segments: g.segments.unwrap_or(DEFAULT_MIXTURE_PIECES),
                mix: MixtureSpec::new(both, x_only, y_only, neither)?,
                length: g.mixture_length.into(),
                alphabet_size: g.k,
            }
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn params_json(p: &TestParams) -> Value {
    json!({
        "gamma_star": p.gamma_star,
        "c": p.c,
        "alpha": p.alpha,
        "n_cal": p.n_cal,
        "reps_cal": p.reps_cal,
        "seed": p.seed,
    })
}

fn cmd_test(args: &TestArgs, seed: u64, engine: Engine, out: &mut Output) -> Result<Value> {
    let (params, source) = load_params(&args.params)?;
    let (result, n, generator) = match (&args.generate, &args.file_a, &args.file_b) {
        (Some(kind), _, _) => {
            let spec = build_generator(*kind, &args.gen)?;
            let (x, y) = spec.generate(&mut RngHandle::new(seed).rng())?;
            let lc = engine.lcs(&x, &y)?;
            let result = hypothesis::decide(lc, spec.len(), &params)?;
            (result, spec.len(), Some(spec))
        }
        (None, Some(fa), Some(fb)) => {
            let alphabet = Alphabet::parse(&args.alphabet)?;
            let x = alphabet.read_file(fa)?;
            let y = alphabet.read_file(fb)?;
            (hypothesis::run_test(&x, &y, &params, engine)?, x.len(), None)
        }
        _ => return Err(invalid("give two sequence files or --generate")),
    };
    let doc = json!({
        "schema": TEST_SCHEMA,
        "lc_obs": result.lc_obs,
        "s": result.statistic_s,
        "critical_value": result.critical_value,
        "reject": result.reject_null,
        "n": n,
        "params": params_json(&params),
    });
    out.line(&serde_json::to_string_pretty(&doc)?)?;
    Ok(json!({
        "command": "test",
        "params_source": source,
        "generator": generator,
        "engine": engine.name(),
    }))
}

fn cmd_power(args: &PowerArgs, seed: u64, engine: Engine, out: &mut Output) -> Result<Value> {
    let (params, source) = load_params(&args.params)?;
    let spec = build_generator(args.alt, &args.gen)?;
    let est = hypothesis::power_estimate(&spec, &params, args.reps, RngHandle::new(seed), engine)?;
    let doc = json!({
        "schema": POWER_SCHEMA,
        "p": est.p,
        "reps": est.reps,
        "non_rejections": est.non_rejections,
        "critical_value": est.critical_value,
        "generator": spec,
        "params": params_json(&params),
        "engine": engine.name(),
        "seed": seed,
    });
    out.line(&serde_json::to_string_pretty(&doc)?)?;

    if let Some(path) = &args.hist_out {
        let hist = histogram(&est.statistics, args.bins)?;
        let mut text = format!("# schema: {HIST_SCHEMA}\nbin_left,bin_right,count\n");
        for (left, right, count) in hist.bins() {
            text.push_str(&format!("{left},{right},{count}\n"));
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(json!({ "command": "power", "params_source": source, "reps": args.reps, "bins": args.bins }))
}

pub fn parse_range(spec: &str) -> Result<(u32, u32)> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|e| invalid(format!("bad range '{spec}': {e}")))
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        Ok((parse(lo)?, parse(hi.trim_start_matches('='))?))
    } else {
        let v = parse(spec)?;
        Ok((v, v))
    }
}

fn cmd_bounds(args: &BoundsArgs, out: &mut Output) -> Result<Value> {
    let (m_min, m_max) = parse_range(&args.m)?;
    let rows = bounds_table(args.k, m_min, m_max)?;
    match args.format {
        TableFormat::Csv => {
            out.line(&format!("# schema: {BOUNDS_SCHEMA}"))?;
            out.line(BOUNDS_CSV_HEADER)?;
            for row in &rows {
                out.line(&row.csv_row())?;
            }
        }
        TableFormat::Table => {
            out.line(&format!("{:>4} {:>4} {:>12} {:>12}", "k", "m", "upper", "lower"))?;
            for row in &rows {
                let lower = row.lower_bound.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into());
                out.line(&format!("{:>4} {:>4} {:>12.6} {:>12}", row.k, row.m, row.upper_bound, lower))?;
            }
        }
    }
    Ok(json!({ "command": "bounds", "k": args.k, "m_min": m_min, "m_max": m_max }))
}
