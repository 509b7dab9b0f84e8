use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use recolor::coloring::{verify_coloring, verify_sequence, Violation};
use recolor::generators::{gen_coloring, gen_path, gen_random_connected, gen_split, gen_st, rng};
use recolor::io::{ColoringJson, ListsJson, SequenceJson, TsMovesJson};
use recolor::oracle::reconfig_reachable;
use recolor::reductions::{
    lcol_to_split, lcr_to_split, lift_plain_sequence, lift_split_sequence, lift_ts_sequence, list_to_plain,
    list_to_plain_artifact, project_plain_sequence, project_recoloring_sequence, project_split_sequence,
    reduce_palette, restrict_artifact, rst_to_list_artifact, Maps, OutInstance, ReductionArtifact,
};
use recolor::sliding_tokens::{ts_reachable, verify_ts_sequence, StInstance};
use recolor::solvers::{choose_solver, solve as run_solver, Decision, Solver};
use recolor::{Graph, OracleBudget, ReconfigInstance};

use crate::{Direction, GenWhat, ReduceKind, SolverArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

pub type Outcome = Result<(Verdict, Value)>;

pub struct Context {
    pub budget: OracleBudget,
    pub seed: u64,
    output: Option<PathBuf>,
}

impl Context {
    pub fn new(budget: Option<usize>, seed: u64, output: Option<PathBuf>) -> Context {
        let budget = budget.map(OracleBudget::states).unwrap_or_default();
        Context { budget, seed, output }
    }

    pub fn emit(&self, report: &Value) -> Result<()> {
        let text = serde_json::to_string_pretty(report)? + "\n";
        match &self.output {
            Some(path) => write_text(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn labelled(g: &Graph, v: &Violation) -> Value {
    match *v {
        Violation::Conflict { u, v } => json!({ "kind": "conflict", "u": g.label(u), "v": g.label(v) }),
        Violation::OffList { v, color } => json!({ "kind": "off_list", "v": g.label(v), "color": color }),
    }
}

// ─── verify ─────────────────────────────────────────────────────────────────

pub fn verify(
    _ctx: &Context,
    files: &[PathBuf],
    d: Option<usize>,
    k: Option<u32>,
    lists: Option<PathBuf>,
    sequence: Option<PathBuf>,
) -> Outcome {
    if let Some(seq_path) = sequence {
        let [inst_path] = files else { bail!("sequence mode takes exactly one instance file") };
        let inst: ReconfigInstance = read(inst_path)?;
        if d.is_some_and(|d| d != inst.d) || k.is_some_and(|k| k != inst.k) {
            bail!("--d/--k disagree with the instance ({}, {})", inst.d, inst.k);
        }
        let seq = read::<SequenceJson>(&seq_path)?.resolve(&inst.graph)?;
        let rep = verify_sequence(&inst, &seq)?;
        let report = json!({
            "ok": rep.ok,
            "steps": seq.len(),
            "first_bad_step": rep.first_bad_step,
            "failure": rep.failure,
        });
        return Ok((Verdict::from_bool(rep.ok), report));
    }
    let [graph_path, col_path] = files else { bail!("coloring mode takes GRAPH COLORING") };
    let (Some(d), Some(k)) = (d, k) else { bail!("--d and --k are required to check a coloring") };
    let g: Graph = read(graph_path)?;
    let col = read::<ColoringJson>(col_path)?.resolve(&g)?.with_k(k)?;
    let lists = lists.map(|p| read::<ListsJson>(&p)?.resolve(&g).map_err(anyhow::Error::from)).transpose()?;
    let rep = verify_coloring(&g, d, k, &col, lists.as_ref())?;
    let violations: Vec<Value> = rep.violations.iter().map(|v| labelled(&g, v)).collect();
    Ok((Verdict::from_bool(rep.valid), json!({ "valid": rep.valid, "violations": violations })))
}

// ─── solve and oracle ───────────────────────────────────────────────────────

fn solver_of(arg: SolverArg) -> Solver {
    match arg {
        SolverArg::Auto => Solver::Auto,
        SolverArg::Path => Solver::Path,
        SolverArg::Diameter => Solver::Diameter,
        SolverArg::Split => Solver::Split,
        SolverArg::Oracle => Solver::Oracle,
    }
}

pub fn solve(ctx: &Context, path: &Path, solver: SolverArg, emit: Option<PathBuf>) -> Outcome {
    let inst: ReconfigInstance = read(path)?;
    let solver = match solver_of(solver) {
        Solver::Auto => choose_solver(&inst),
        s => s,
    };
    let out = run_solver(&inst, solver, ctx.budget)?;
    let sequence = out.sequence.as_ref().map(|s| SequenceJson::from_sequence(&inst.graph, s));
    if let (Some(file), Some(seq)) = (&emit, &sequence) {
        write_json(file, seq)?;
    }
    let report = json!({
        "decision": out.decision,
        "solver": solver,
        "sequence": sequence,
        "certificate": out.certificate,
    });
    Ok((Verdict::from_bool(out.decision == Decision::Yes), report))
}

pub fn oracle(ctx: &Context, path: &Path, tokens: bool) -> Outcome {
    if tokens {
        let st = read_st(path)?;
        let r = ts_reachable(&st, ctx.budget)?;
        let moves = r.moves.as_ref().map(|m| TsMovesJson::from_moves(&st.graph, m));
        let report = json!({ "reachable": r.reachable, "states": r.states, "moves": moves });
        return Ok((Verdict::from_bool(r.reachable), report));
    }
    let inst: ReconfigInstance = read(path)?;
    let r = reconfig_reachable(&inst, ctx.budget)?;
    let sequence = r.shortest.as_ref().map(|s| SequenceJson::from_sequence(&inst.graph, s));
    let report = json!({ "reachable": r.reachable, "states": r.states, "sequence": sequence });
    Ok((Verdict::from_bool(r.reachable), report))
}

// ─── reduce ─────────────────────────────────────────────────────────────────

/// Reads a bundle if the file is one, else a plain list instance.
fn bundle_or_instance(path: &Path) -> Result<std::result::Result<ReductionArtifact, ReconfigInstance>> {
    let value: Value = read(path)?;
    if value.get("maps").is_some() {
        Ok(Ok(serde_json::from_value(value).with_context(|| format!("bad bundle {}", path.display()))?))
    } else {
        Ok(Err(serde_json::from_value(value).with_context(|| format!("bad instance {}", path.display()))?))
    }
}

/// A token instance, or the output of a `restrict-st` bundle.
fn read_st(path: &Path) -> Result<StInstance> {
    let value: Value = read(path)?;
    if value.get("maps").is_none() {
        return serde_json::from_value(value).with_context(|| format!("bad token instance {}", path.display()));
    }
    let art: ReductionArtifact = serde_json::from_value(value).with_context(|| format!("bad bundle {}", path.display()))?;
    match art.instance {
        OutInstance::St(st) => Ok(st),
        _ => bail!("bundle {} does not hold a token instance", path.display()),
    }
}

pub fn reduce(_ctx: &Context, kind: ReduceKind, input: &Path, out: &Path, d: Option<usize>, l: Option<u32>) -> Outcome {
    let art = match kind {
        ReduceKind::RestrictSt => restrict_artifact(&read_st(input)?)?,
        ReduceKind::RstToList => {
            let d = d.context("rst-to-list needs --d")?;
            rst_to_list_artifact(&read_st(input)?, d)?
        }
        ReduceKind::ListToPlain => match bundle_or_instance(input)? {
            Ok(bundle) => list_to_plain_artifact(&bundle)?,
            Err(inst) => list_to_plain(&inst)?,
        },
        ReduceKind::ReducePalette => {
            let Ok(bundle) = bundle_or_instance(input)? else { bail!("reduce-palette needs a bundle from the pipeline") };
            match bundle.maps {
                Maps::RstToList(_) => reduce_palette(&list_to_plain_artifact(&bundle)?)?,
                _ => reduce_palette(&bundle)?,
            }
        }
        ReduceKind::LcolToSplit => {
            let l = l.context("lcol-to-split needs --l")?;
            lcol_to_split(&read(input)?, l)?
        }
        ReduceKind::LcrToSplit => {
            let inst: ReconfigInstance = read(input)?;
            if inst.d != 1 {
                bail!("lcr-to-split takes a proper coloring instance (d = 1), got d = {}", inst.d);
            }
            lcr_to_split(&inst.graph, &inst.alpha, &inst.beta, l.unwrap_or(inst.k))?
        }
    };
    let text = serde_json::to_string_pretty(&art)? + "\n";
    let back: ReductionArtifact = serde_json::from_str(&text).context("bundle does not read back")?;
    if back != art {
        bail!("bundle changed on a write/read roundtrip");
    }
    write_text(out, &text)?;
    let vertices = match &art.instance {
        OutInstance::St(st) => st.graph.n(),
        OutInstance::Reconfig(r) => r.graph.n(),
        OutInstance::Colorability(c) => c.graph.n(),
    };
    let report = json!({ "kind": art.maps.kind(), "meta": art.meta, "vertices": vertices, "bundle": out });
    Ok((Verdict::Yes, report))
}

// ─── map-sequence ───────────────────────────────────────────────────────────

pub fn map_sequence(_ctx: &Context, bundle: &Path, seq_path: &Path, dir: Direction, out: Option<PathBuf>) -> Outcome {
    let art: ReductionArtifact = read(bundle)?;
    let target = art.reconfig();
    let (written, verified, extra) = match (&art.maps, dir) {
        (Maps::RstToList(maps), Direction::Lift) => {
            let moves = read::<TsMovesJson>(seq_path)?.resolve(&maps.source.graph)?;
            let inst = target.context("bundle has no coloring instance")?;
            let seq = lift_ts_sequence(&art, &moves)?;
            let ok = verify_sequence(inst, &seq)?.ok;
            (serde_json::to_value(SequenceJson::from_sequence(&inst.graph, &seq))?, ok, Value::Null)
        }
        (Maps::RstToList(maps), Direction::Project) => {
            let inst = target.context("bundle has no coloring instance")?;
            let seq = read::<SequenceJson>(seq_path)?.resolve(&inst.graph)?;
            let moves = project_recoloring_sequence(&art, &seq)?;
            let ok = verify_ts_sequence(&maps.source, &moves).is_ok();
            (serde_json::to_value(TsMovesJson::from_moves(&maps.source.graph, &moves))?, ok, Value::Null)
        }
        (Maps::ListToPlain(maps) | Maps::ReducePalette(maps), dir) => {
            let inst = target.context("bundle has no coloring instance")?;
            let (from, to) = match dir {
                Direction::Lift => (&maps.source, inst),
                Direction::Project => (inst, &maps.source),
            };
            let seq = read::<SequenceJson>(seq_path)?.resolve(&from.graph)?;
            let mapped = match dir {
                Direction::Lift => lift_plain_sequence(&art, &seq)?,
                Direction::Project => project_plain_sequence(&art, &seq)?,
            };
            let ok = verify_sequence(to, &mapped)?.ok;
            (serde_json::to_value(SequenceJson::from_sequence(&to.graph, &mapped))?, ok, Value::Null)
        }
        (Maps::Split(maps), dir) if maps.alpha.is_some() => {
            let inst = target.context("bundle has no coloring instance")?;
            let source = ReconfigInstance::new(
                maps.source.clone(),
                1,
                maps.l,
                maps.alpha.clone().expect("checked"),
                maps.beta.clone().context("bundle has no beta")?,
                None,
            )?;
            match dir {
                Direction::Lift => {
                    let seq = read::<SequenceJson>(seq_path)?.resolve(&source.graph)?;
                    let up = lift_split_sequence(&art, &seq)?;
                    let ok = verify_sequence(inst, &up)?.ok;
                    (serde_json::to_value(SequenceJson::from_sequence(&inst.graph, &up))?, ok, Value::Null)
                }
                Direction::Project => {
                    let seq = read::<SequenceJson>(seq_path)?.resolve(&inst.graph)?;
                    let pr = project_split_sequence(&art, &seq)?;
                    let ok = verify_sequence(&source, &pr.sequence)?.ok;
                    let states = serde_json::to_value(&pr.states)?;
                    (serde_json::to_value(SequenceJson::from_sequence(&source.graph, &pr.sequence))?, ok, states)
                }
            }
        }
        _ => bail!("bundles of kind {} carry no sequence correspondence", art.maps.kind()),
    };
    if let Some(file) = &out {
        write_json(file, &written)?;
    }
    let mut report = json!({ "kind": art.maps.kind(), "verified": verified, "sequence": written });
    if !extra.is_null() {
        report["states"] = extra;
    }
    Ok((Verdict::from_bool(verified), report))
}

// ─── gen ────────────────────────────────────────────────────────────────────

pub fn gen(ctx: &Context, what: GenWhat) -> Outcome {
    let seed = ctx.seed;
    let value = match what {
        GenWhat::Path { n } => serde_json::to_value(gen_path(n)?)?,
        GenWhat::Split { clique, indep, p } => serde_json::to_value(gen_split(clique, indep, p, seed)?)?,
        GenWhat::Connected { n, p } => serde_json::to_value(gen_random_connected(n, p, seed)?)?,
        GenWhat::St { triangles, edges } => serde_json::to_value(gen_st(triangles, edges, seed)?)?,
        GenWhat::Instance { graph, d, k } => {
            let g: Graph = read(&graph)?;
            let mut r = rng(seed);
            let a = gen_coloring(&g, d, k, None, &mut r).context("no (d,k)-coloring found")?;
            let b = gen_coloring(&g, d, k, None, &mut r).context("no (d,k)-coloring found")?;
            serde_json::to_value(ReconfigInstance::new(g, d, k, a, b, None)?)?
        }
    };
    Ok((Verdict::Yes, value))
}
