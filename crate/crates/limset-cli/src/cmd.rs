use crate::points::{parse_left_tail, parse_library, parse_point, PointExpr};
use crate::{Cli, Emitter, RunConfig};
use limset::construct::{build_full_trajectory, build_limit_point};
use limset::error::{Error, Result};
use limset::gallery;
use limset::interval::{
    box_graph, chain_recurrent_outer, falsify_shadowing, neg_limit_a1, neg_limit_trajectories,
    NegLimitMode, PiecewiseMap, Rat,
};
use limset::limits::{
    alpha_windows, enumerate_maximal_ict, gamma_windows, ict_singletons, omega_windows,
    omega_windows_two_sided, SetSpec,
};
use limset::rng::SplitMix64;
use limset::shadowing::{
    random_pseudo_orbit, shadow_backward, shadow_forward, shadow_two_sided, verify_pseudo_orbit,
    Direction, PseudoOrbit,
};
use limset::symbolic::{block_graph, Alphabet, SeqPoint, Sft, TwoSidedPoint};
use serde::Deserialize;
use serde_json::json;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

fn load_sft(path: &Path) -> Result<Sft> {
    Sft::parse(&crate::output::read_file(path)?)
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.parse()
}

pub fn sft(cli: &Cli, file: &Path, res: u32) -> Result<()> {
    let sft = load_sft(file)?;
    let mut config = RunConfig::new("sft");
    config.push("file", file.display());
    config.push("res", res);
    let em = Emitter::new(cli.out.clone(), config)?;

    let mut sizes = String::from("L,count\n");
    for l in 1..=(res as usize + 1) {
        sizes.push_str(&format!("{l},{}\n", sft.language(l)?.len()));
    }
    em.emit_text("language-sizes.csv", "#", &sizes)?;
    for l in 1..=(res as usize + 1) {
        let ws = limset::limits::WindowSet::new(sft.alphabet().clone(), l, sft.language(l)?)?;
        em.emit_text(&format!("language-L{l}.txt"), "#", &ws.to_text())?;
    }
    if !sft.pruned_symbols().is_empty() {
        let names: Vec<&str> = sft
            .pruned_symbols()
            .iter()
            .map(|&s| sft.alphabet().name(s))
            .collect();
        println!(
            "pruned symbols (in no bi-infinite sequence): {}",
            names.join(" ")
        );
    }
    let g = block_graph(
        &sft.language(res as usize + 1)?,
        res as usize + 1,
        Some(&sft.language(res as usize + 2)?),
    )?;
    em.emit_text(
        &format!("block-graph-k{res}.dot"),
        "//",
        &g.to_dot(sft.alphabet(), &format!("blocks_k{res}")),
    )?;
    Ok(())
}

pub fn limits(cli: &Cli, point: &str, alphabet: &str, kind: &str, res: u32) -> Result<()> {
    let ab = Alphabet::of_chars(alphabet);
    let mut config = RunConfig::new("limits");
    config.push("point", point);
    config.push("alphabet", alphabet);
    config.push("kind", kind);
    config.push("res", res);
    let em = Emitter::new(cli.out.clone(), config)?;

    for l in 1..=(res as usize) {
        let ws = match kind {
            "omega" => match parse_point(&ab, point)? {
                PointExpr::OneSided(p) => omega_windows(&ab, &p, l)?,
                PointExpr::TwoSided(p) => omega_windows_two_sided(&ab, &p, l)?,
            },
            "alpha" => match parse_point(&ab, point)? {
                PointExpr::TwoSided(p) => alpha_windows(&ab, &p.left, l)?,
                PointExpr::OneSided(_) => {
                    // the expression describes the backward coordinate stream
                    alpha_windows(&ab, &parse_left_tail(&ab, point)?, l)?
                }
            },
            "gamma" => match parse_point(&ab, point)? {
                PointExpr::TwoSided(p) => gamma_windows(&ab, &p, l)?,
                PointExpr::OneSided(_) => {
                    return Err(Error::Invalid(
                        "gamma needs a two-sided point (`two [..] c [..]`)".into(),
                    ))
                }
            },
            other => return Err(Error::Invalid(format!("unknown kind `{other}`"))),
        };
        let body = format!("# provenance={}\n{}", ws.provenance().tag(), ws.to_text());
        em.emit_text(&format!("windows-{kind}-L{l}.txt"), "#", &body)?;
    }
    Ok(())
}

#[derive(Deserialize)]
struct PoFile {
    direction: String,
    delta_exp: u32,
    points: Vec<String>,
    #[serde(default)]
    start: Option<i64>,
}

fn parse_direction(s: &str) -> Result<Direction> {
    match s {
        "forward" => Ok(Direction::Forward),
        "backward" => Ok(Direction::Backward),
        "two-sided" => Ok(Direction::TwoSided),
        other => Err(Error::Invalid(format!("unknown direction `{other}`"))),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn shadow(
    cli: &Cli,
    sft_path: &Path,
    po_path: Option<&Path>,
    lib_path: Option<&Path>,
    random: Option<usize>,
    direction: &str,
    eps: u32,
    delta: Option<u32>,
) -> Result<()> {
    let sft = load_sft(sft_path)?;
    let ab = sft.alphabet().clone();
    let dir = parse_direction(direction)?;
    let mut config = RunConfig::new("shadow");
    config.push("sft", sft_path.display());
    config.push("eps", eps);
    config.push("seed", cli.seed);

    if let Some(len) = random {
        let delta_exp = delta.unwrap_or(eps + sft.memory() as u32);
        config.push("random", len);
        config.push("direction", direction);
        config.push("delta_exp", delta_exp);
        let em = Emitter::new(cli.out.clone(), config)?;
        let mut rng = SplitMix64::new(cli.seed);
        let po = random_pseudo_orbit(&sft, &mut rng, len, delta_exp, dir)?;
        return emit_one_sided_shadow(&em, &ab, &sft, &po, dir, eps);
    }

    let po_path = po_path.expect("clap enforces --po without --random");
    let lib_path = lib_path.expect("clap enforces --points without --random");
    config.push("po", po_path.display());
    config.push("points", lib_path.display());
    let em = Emitter::new(cli.out.clone(), config)?;
    let record: PoFile =
        serde_json::from_str(&crate::output::read_file(po_path)?).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("bad pseudo-orbit json: {e}"),
        })?;
    let dir = parse_direction(&record.direction)?;
    let library = parse_library(&ab, &crate::output::read_file(lib_path)?)?;
    let lookup = |name: &str| -> Result<&PointExpr> {
        library
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Invalid(format!("point `{name}` not in the library")))
    };
    match dir {
        Direction::TwoSided => {
            let mut entries: Vec<TwoSidedPoint> = Vec::new();
            for name in &record.points {
                match lookup(name)? {
                    PointExpr::TwoSided(p) => entries.push(p.clone()),
                    _ => return Err(Error::Invalid(format!("point `{name}` is one-sided"))),
                }
            }
            let po = PseudoOrbit::two_sided(record.start.unwrap_or(0), entries, record.delta_exp)?;
            let got = shadow_two_sided(&sft, &po, eps)?;
            em.emit_json(
                "shadow-certificate.json",
                json!({
                    "direction": "two-sided",
                    "epsilon": got.cert.epsilon().to_string(),
                    "range": [got.cert.range.0, got.cert.range.1],
                    "depths": got.cert.depths,
                    "shadow_central_window": ab.fmt_word(&got.shadow.window(-16, 33)),
                }),
            )
        }
        _ => {
            let mut entries: Vec<SeqPoint> = Vec::new();
            for name in &record.points {
                match lookup(name)? {
                    PointExpr::OneSided(p) => entries.push(p.clone()),
                    _ => return Err(Error::Invalid(format!("point `{name}` is two-sided"))),
                }
            }
            let po = match dir {
                Direction::Forward => PseudoOrbit::forward(entries, record.delta_exp)?,
                _ => PseudoOrbit::backward(entries, record.delta_exp)?,
            };
            emit_one_sided_shadow(&em, &ab, &sft, &po, dir, eps)
        }
    }
}

fn emit_one_sided_shadow(
    em: &Emitter,
    ab: &Arc<Alphabet>,
    sft: &Sft,
    po: &PseudoOrbit<SeqPoint>,
    dir: Direction,
    eps: u32,
) -> Result<()> {
    let verdict = verify_pseudo_orbit(po)?;
    if !verdict.is_ok() {
        return Err(Error::Invalid(format!(
            "pseudo-orbit delta check failed: {verdict:?}"
        )));
    }
    match dir {
        Direction::Forward => {
            let got = shadow_forward(sft, po, eps)?;
            em.emit_json(
                "shadow-certificate.json",
                json!({
                    "direction": "forward",
                    "epsilon": got.cert.epsilon().to_string(),
                    "range": [got.cert.range.0, got.cert.range.1],
                    "depths": got.cert.depths,
                    "shadow_prefix": ab.fmt_word(&got.shadow.window(0, po.len() + 16)),
                }),
            )
        }
        Direction::Backward => {
            let got = shadow_backward(sft, po, eps)?;
            let deep = po.len() as u64 + 8;
            em.emit_json(
                "shadow-certificate.json",
                json!({
                    "direction": "backward",
                    "epsilon": got.cert.epsilon().to_string(),
                    "range": [got.cert.range.0, got.cert.range.1],
                    "depths": got.cert.depths,
                    "trajectory_window": ab.fmt_word(&got.trajectory.point_window(deep, 0, 2 * deep as usize)),
                }),
            )
        }
        Direction::TwoSided => unreachable!("handled by the caller"),
    }
}

pub fn ict(cli: &Cli, sft_path: &Path, res: u32) -> Result<()> {
    let sft = load_sft(sft_path)?;
    let mut config = RunConfig::new("ict");
    config.push("sft", sft_path.display());
    config.push("res", res);
    let em = Emitter::new(cli.out.clone(), config)?;

    let classes = enumerate_maximal_ict(&sft, res)?;
    let singles = ict_singletons(&sft, res)?;
    let mut body = format!("# maximal classes at resolution {res}: {}\n", classes.len());
    for (i, c) in classes.iter().enumerate() {
        body.push_str(&format!("# class {i}\n{}", c.to_text()));
    }
    body.push_str(&format!("# fixed-point singletons: {}\n", singles.len()));
    for s in &singles {
        body.push_str(&s.to_text());
    }
    em.emit_text("ict-classes.txt", "#", &body)?;
    if cli.format == "dot" {
        let g = block_graph(
            &sft.language(res as usize + 1)?,
            res as usize + 1,
            Some(&sft.language(res as usize + 2)?),
        )?;
        em.emit_text(
            &format!("block-graph-k{res}.dot"),
            "//",
            &g.to_dot(sft.alphabet(), &format!("blocks_k{res}")),
        )?;
    }
    Ok(())
}

pub fn construct(
    cli: &Cli,
    sft_path: Option<&Path>,
    spikes: Option<&str>,
    alphabet: Option<&str>,
    res: u32,
    horizon: usize,
    two_sided: bool,
) -> Result<()> {
    let (ab, spec, desc): (Arc<Alphabet>, SetSpec, String) = match (sft_path, spikes) {
        (Some(path), None) => {
            let sft = load_sft(path)?;
            let ab = sft.alphabet().clone();
            (ab, SetSpec::Language(sft), path.display().to_string())
        }
        (None, Some(list)) => {
            let ab = Alphabet::of_chars(alphabet.unwrap_or("012"));
            let spikes: Vec<&str> = list.split(',').collect();
            (
                ab.clone(),
                gallery::spike_spec(&ab, &spikes),
                format!("spikes:{list}"),
            )
        }
        _ => {
            return Err(Error::Invalid(
                "give exactly one of --sft or --spikes".into(),
            ))
        }
    };
    let mut config = RunConfig::new("construct");
    config.push("target", &desc);
    config.push("res", res);
    config.push("horizon", horizon);
    config.push("two_sided", two_sided);
    let em = Emitter::new(cli.out.clone(), config)?;

    if two_sided {
        let f = build_full_trajectory(&ab, &spec, res, horizon)?;
        let radius = (horizon / 2).min(512);
        em.emit_text(
            "trajectory-window.txt",
            "#",
            &format!(
                "{}\n",
                ab.fmt_word(&f.point.window(-(radius as i64), 2 * radius))
            ),
        )?;
        em.emit_json(
            "realization-certificate.json",
            json!({
                "resolution": f.omega_cert.resolution,
                "omega": cert_json(&f.omega_cert),
                "alpha": cert_json(&f.alpha_cert),
            }),
        )?;
    } else {
        let r = build_limit_point(&ab, &spec, res, horizon)?;
        em.emit_text(
            "stream.txt",
            "#",
            &format!("{}\n", ab.fmt_word(&r.point.window(0, horizon))),
        )?;
        em.emit_json(
            "realization-certificate.json",
            json!({
                "resolution": r.cert.resolution,
                "omega": cert_json(&r.cert),
            }),
        )?;
    }
    Ok(())
}

fn cert_json(cert: &limset::construct::RealizationCert) -> serde_json::Value {
    json!({
        "all_ok": cert.all_ok(),
        "coverage": cert.coverage.iter().map(|(k, ok)| json!([k, ok])).collect::<Vec<_>>(),
        "membership": cert.membership.iter().map(|(l, ok)| json!([l, ok])).collect::<Vec<_>>(),
        "limit_match": cert.limit_match.iter().map(|(l, ok)| json!([l, ok])).collect::<Vec<_>>(),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn interval(
    cli: &Cli,
    map_path: &Path,
    op: &str,
    at: Option<&str>,
    horizon: usize,
    grid: &str,
    fatten: &str,
    depth: usize,
    eps: &str,
    delta: &str,
) -> Result<()> {
    let map = PiecewiseMap::parse(&crate::output::read_file(map_path)?)?;
    let mut config = RunConfig::new("interval");
    config.push("map", map_path.display());
    config.push("op", op);
    let need_at = || -> Result<Rat> {
        at.map(parse_rat)
            .transpose()?
            .ok_or_else(|| Error::Invalid(format!("--op {op} needs --at")))
    };
    match op {
        "eval" => {
            let x = need_at()?;
            config.push("at", &x);
            let em = Emitter::new(cli.out.clone(), config)?;
            em.emit_text("eval.txt", "#", &format!("{}\n", map.eval(&x)?))
        }
        "orbit" => {
            let x = need_at()?;
            config.push("at", &x);
            config.push("horizon", horizon);
            let em = Emitter::new(cli.out.clone(), config)?;
            let mut body = String::from("i,value\n");
            for (i, v) in map.orbit(&x, horizon)?.iter().enumerate() {
                body.push_str(&format!("{i},{v}\n"));
            }
            em.emit_text("orbit.csv", "#", &body)
        }
        "preimages" => {
            let y = need_at()?;
            config.push("at", &y);
            let em = Emitter::new(cli.out.clone(), config)?;
            let p = map.preimages(&y)?;
            let mut body = String::new();
            for x in &p.points {
                body.push_str(&format!("point,{x}\n"));
            }
            for iv in &p.intervals {
                body.push_str(&format!("interval,{iv}\n"));
            }
            if p.is_empty() {
                body.push_str("empty\n");
            }
            em.emit_text("preimages.txt", "#", &body)
        }
        "a1" | "a2" | "a3" => {
            let x = need_at()?;
            let res = parse_rat(grid)?;
            config.push("at", &x);
            config.push("depth", depth);
            config.push("res", &res);
            let em = Emitter::new(cli.out.clone(), config)?;
            let rep = match op {
                "a1" => neg_limit_a1(&map, &x, depth, &res)?,
                "a2" => neg_limit_trajectories(&map, &x, NegLimitMode::Branches, depth, &res)?,
                _ => neg_limit_trajectories(&map, &x, NegLimitMode::Nodes, depth, &res)?,
            };
            em.emit_text(&format!("{op}-boxes.csv"), "#", &rep.to_csv())
        }
        "box-graph" => {
            let h = parse_rat(grid)?;
            let f = parse_rat(fatten)?;
            config.push("grid", &h);
            config.push("fatten", &f);
            let em = Emitter::new(cli.out.clone(), config)?;
            let g = box_graph(&map, &h, &f)?;
            let mut body = "digraph boxes {\n".to_string();
            for i in 0..g.grid.count() {
                for t in g.successors(i) {
                    body.push_str(&format!("  b{i} -> b{t};\n"));
                }
            }
            body.push_str("}\n");
            em.emit_text("box-graph.dot", "//", &body)
        }
        "chain-recurrent" => {
            let h = parse_rat(grid)?;
            let f = parse_rat(fatten)?;
            config.push("grid", &h);
            config.push("fatten", &f);
            let em = Emitter::new(cli.out.clone(), config)?;
            let rep = chain_recurrent_outer(&map, &h, &f)?;
            em.emit_text("chain-recurrent-boxes.csv", "#", &rep.to_csv())
        }
        "falsify" => {
            let e = parse_rat(eps)?;
            let d = parse_rat(delta)?;
            config.push("eps", &e);
            config.push("delta", &d);
            let em = Emitter::new(cli.out.clone(), config)?;
            let cert = falsify_shadowing(&map, &e, &d)?;
            let obligations = cert.verify(&map)?;
            em.emit_json(
                "falsification-certificate.json",
                json!({
                    "epsilon": e.to_string(),
                    "delta": d.to_string(),
                    "start": cert.start.to_string(),
                    "entries": cert.pseudo_orbit.entries.iter().map(Rat::to_string).collect::<Vec<_>>(),
                    "obligations": obligations
                        .iter()
                        .map(|(ob, ok)| json!({"obligation": ob.describe(), "holds": ok}))
                        .collect::<Vec<_>>(),
                    "conclusion": cert.conclusion(),
                }),
            )
        }
        other => Err(Error::Invalid(format!("unknown interval op `{other}`"))),
    }
}

pub fn verify_paper(cli: &Cli, only: Option<&str>) -> ExitCode {
    if let Some(id) = only {
        if !gallery::example_ids().contains(&id) {
            eprintln!(
                "error: unknown example id `{id}` (known: {:?})",
                gallery::example_ids()
            );
            return ExitCode::from(2);
        }
    }
    let checks = match gallery::run_checks(only) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let mut failures = 0usize;
    let mut divergences = 0usize;
    println!(
        "{:<6} {:<26} {:<8} claim / computed",
        "id", "check", "status"
    );
    for c in &checks {
        let status = match c.status {
            gallery::CheckStatus::Pass => "PASS",
            gallery::CheckStatus::Fail => {
                failures += 1;
                "FAIL"
            }
            gallery::CheckStatus::Diverges => {
                divergences += 1;
                "DIVERGES"
            }
        };
        println!("{:<6} {:<26} {:<8} {}", c.example, c.name, status, c.claim);
        println!("{:<6} {:<26} {:<8} -> {}", "", "", "", c.computed);
    }
    println!(
        "{} checks: {} passed, {failures} failed, {divergences} documented divergences",
        checks.len(),
        checks.len() - failures - divergences,
    );
    if let Some(dir) = &cli.out {
        let mut config = RunConfig::new("verify-paper");
        config.push("only", only.unwrap_or("all"));
        if let Ok(em) = Emitter::new(Some(dir.clone()), config) {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "example": c.example,
                        "check": c.name,
                        "status": format!("{:?}", c.status),
                        "claim": c.claim,
                        "computed": c.computed,
                    })
                })
                .collect();
            let _ = em.emit_json("verify-paper.json", json!({ "checks": rows }));
        }
    }
    if failures > 0 {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}
