mod model;

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use medial_ldc::bimonoid::{
    enumerate_bimonoids, fox_round_trip, mu_zero_equals_mu_one_all, par_bimonoid, tensor_bimonoid,
    validate_bimonoid, PCohBimonoid, PosetalCLDC, UniversalChecker, UniversalOptions,
};
use medial_ldc::coherence::{catalog, find_check, sweep_with, SweepConfig};
use medial_ldc::formula::{check_derivation, denote, interpret_derivation, render, validate_2, Derivation};
use medial_ldc::palgebra::validate_posetal_smldc;
use medial_ldc::pcoh::{probe_representatives, validate_morphism, validate_object, PCoh, PCohObject};
use medial_ldc::{Error, Violation};
use serde_json::{json, Value};

use model::{read_json, Model};

/// How a command ended, mapped onto exit codes 0, 1 and 2.
pub enum Fail {
    /// Semantic failure; the report is still printed.
    Check(Value),
    /// Unreadable, malformed or dangling input.
    Input(String),
}

#[derive(Parser)]
#[command(name = "medial-ldc", version, about = "Check medial linearly distributive structure on finite models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate every algebra, object and morphism in a model file.
    Validate { model: PathBuf },
    /// Run the coherence catalog over the probe objects of an algebra.
    Coherence {
        model: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only this check.
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Check a derivation and print its end formula.
    Derive {
        derivation: PathBuf,
        /// Model file supplying objects for the atoms.
        #[arg(long, requires = "assign")]
        interpret: Option<PathBuf>,
        /// Atom assignment such as `a=top,b=bot`, naming objects of the model.
        #[arg(long, requires = "interpret")]
        assign: Option<String>,
    },
    /// Bimonoid enumeration and the cartesian checks.
    Bimonoid {
        model: PathBuf,
        #[command(subcommand)]
        op: BimonoidOp,
    },
}

#[derive(Subcommand)]
enum BimonoidOp {
    /// List the bimonoid structures on each chosen object.
    Enumerate(Carriers),
    /// Validate tensor and par products of every pair of bimonoids.
    Product(Carriers),
    /// Check that tensor is a product of bimonoids, with the bimonoids themselves as probes.
    Universal(Carriers),
    /// Round trip through bimonoids in the algebra read as a thin category.
    Fox {
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Compare the two comparison arrows on all quadruples of bimonoids.
    Mu01(Carriers),
}

#[derive(clap::Args)]
struct Carriers {
    /// Carrier object; repeat for several. Defaults to the named objects over the algebra,
    /// or to every iso class of size at most 2 if there are none.
    #[arg(long = "object")]
    objects: Vec<String>,
    #[arg(long)]
    algebra: Option<String>,
}

fn violations_json(v: &[Violation]) -> Value {
    json!(v)
}

fn cmd_validate(path: &Path) -> Result<Value, Fail> {
    let m = Model::load(path)?;
    let mut ok = true;
    let mut algebras = serde_json::Map::new();
    for (name, a) in &m.algebras {
        let v = validate_posetal_smldc(a).map_err(|e| Fail::Input(format!("algebra `{name}`: {e}")))?;
        ok &= v.is_empty();
        algebras.insert(name.clone(), violations_json(&v));
    }
    let mut objects = serde_json::Map::new();
    for (name, _, o) in &m.objects {
        let v = validate_object(o);
        ok &= v.is_empty();
        objects.insert(name.clone(), violations_json(&v));
    }
    let mut morphisms = serde_json::Map::new();
    for (name, f) in &m.morphisms {
        let v = validate_morphism(f);
        ok &= v.is_empty();
        morphisms.insert(name.clone(), violations_json(&v));
    }
    let report = json!({"valid": ok, "algebras": algebras, "objects": objects, "morphisms": morphisms});
    if ok {
        Ok(report)
    } else {
        Err(Fail::Check(report))
    }
}

fn cmd_coherence(path: &Path, max_size: usize, seed: u64, check: Option<&str>, algebra: Option<&str>) -> Result<Value, Fail> {
    let m = Model::load(path)?;
    let (_, alg) = m.algebra(algebra)?;
    let model = m.pcoh(alg);
    let checks = match check {
        Some(name) => vec![find_check(name).ok_or_else(|| Fail::Input(format!("unknown check `{name}`")))?],
        None => catalog(),
    };
    if check.is_some() && checks[0].needs_compact() && model.algebra.top != model.algebra.bot {
        return Err(Fail::Input(format!("{} needs top equal to bottom", checks[0].name)));
    }
    let r = sweep_with(&model, max_size, seed, &checks, &SweepConfig::default());
    let report = serde_json::to_value(&r).expect("sweep reports serialize");
    if r.all_pass() {
        Ok(report)
    } else {
        Err(Fail::Check(report))
    }
}

fn parse_assign(text: &str, m: &Model) -> Result<HashMap<String, PCohObject>, Fail> {
    let mut out = HashMap::new();
    for part in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (atom, obj) = part
            .split_once('=')
            .ok_or_else(|| Fail::Input(format!("assignment `{part}` is not atom=object")))?;
        let (_, _, o) = m.object(obj.trim())?;
        out.insert(atom.trim().to_string(), o.clone());
    }
    Ok(out)
}

fn cmd_derive(path: &Path, interpret: Option<&Path>, assign: Option<&str>) -> Result<Value, Fail> {
    let d: Derivation = read_json(path)?;
    let end = match check_derivation(&d) {
        Ok(end) => end,
        Err(Error::Step { index, reason }) => {
            return Err(Fail::Check(json!({"start": render(&d.start), "step": index, "error": reason.to_string()})))
        }
        Err(e) => return Err(Fail::Input(e.to_string())),
    };
    let mut report = json!({"start": render(&d.start), "end": render(&end), "steps": d.steps.len()});
    let (Some(mpath), Some(assign)) = (interpret, assign) else {
        return Ok(report);
    };
    let m = Model::load(mpath)?;
    let assign = parse_assign(assign, &m)?;
    let Some(alg) = assign.values().next().map(|o| o.algebra().clone()) else {
        return Err(Fail::Input("empty assignment".into()));
    };
    if assign.values().any(|o| !std::sync::Arc::ptr_eq(o.algebra(), &alg)) {
        return Err(Fail::Input("assigned objects live over different algebras".into()));
    }
    let sound = validate_2(&d.start, &end);
    report["valid_2"] = json!(sound);
    let model = PCoh::new(alg.clone());
    for f in [&d.start, &end] {
        denote(&model, &assign, f).map_err(|e| Fail::Input(e.to_string()))?;
    }
    let f = match interpret_derivation(&alg, &assign, &d) {
        Ok(f) => f,
        Err(e) => {
            report["error"] = json!(e.to_string());
            return Err(Fail::Check(report));
        }
    };
    let violations = validate_morphism(&f);
    report["morphism"] = json!({
        "src": f.src.to_json(),
        "tgt": f.tgt.to_json(),
        "rel": f.rel.to_table(),
        "violations": violations,
    });
    if sound && violations.is_empty() {
        Ok(report)
    } else {
        Err(Fail::Check(report))
    }
}

/// Carrier objects chosen on the command line, in the algebra they share.
fn carriers(m: &Model, c: &Carriers) -> Result<(PCoh, Vec<(String, PCohObject)>), Fail> {
    let (alg_name, alg) = match (c.algebra.as_deref(), c.objects.first()) {
        (None, Some(o)) => {
            let (_, a, _) = m.object(o)?;
            m.algebra(Some(a))?
        }
        (a, _) => m.algebra(a)?,
    };
    let mut out = Vec::new();
    for name in &c.objects {
        let (_, a, o) = m.object(name)?;
        if *a != alg_name {
            return Err(Fail::Input(format!("object `{name}` is over `{a}`, not `{alg_name}`")));
        }
        out.push((name.clone(), o.clone()));
    }
    if c.objects.is_empty() {
        out = m
            .objects
            .iter()
            .filter(|(_, a, _)| *a == alg_name)
            .map(|(n, _, o)| (n.clone(), o.clone()))
            .collect();
    }
    if out.is_empty() {
        out = probe_representatives(&alg, 2)
            .into_iter()
            .enumerate()
            .map(|(i, o)| (format!("#{i}"), o))
            .collect();
    }
    Ok((m.pcoh(alg), out))
}

fn bimonoids_on(model: &PCoh, objs: &[(String, PCohObject)]) -> Result<Vec<(String, Vec<PCohBimonoid>)>, Fail> {
    objs.iter()
        .map(|(n, o)| {
            enumerate_bimonoids(model, o)
                .map(|bs| (n.clone(), bs))
                .map_err(|e| Fail::Input(format!("object `{n}`: {e}")))
        })
        .collect()
}

fn input<T>(r: medial_ldc::Result<T>) -> Result<T, Fail> {
    r.map_err(|e| Fail::Input(e.to_string()))
}

fn verdict(ok: bool, report: Value) -> Result<Value, Fail> {
    if ok {
        Ok(report)
    } else {
        Err(Fail::Check(report))
    }
}

fn cmd_bimonoid(path: &Path, op: &BimonoidOp) -> Result<Value, Fail> {
    let m = Model::load(path)?;
    match op {
        BimonoidOp::Enumerate(c) => {
            let (model, objs) = carriers(&m, c)?;
            let mut reports = Vec::new();
            let mut ok = true;
            for (name, bs) in bimonoids_on(&model, &objs)? {
                let mut failing = 0;
                for b in &bs {
                    if !input(validate_bimonoid(&model, b))?.is_valid() {
                        failing += 1;
                    }
                }
                ok &= failing == 0;
                let structures: Vec<Value> = bs
                    .iter()
                    .map(|b| {
                        json!({
                            "delta": b.delta.rel.to_table(),
                            "counit": b.counit.rel.to_table(),
                            "mult": b.mult.rel.to_table(),
                            "unit": b.unit.rel.to_table(),
                        })
                    })
                    .collect();
                let obj = &objs.iter().find(|o| o.0 == name).expect("carrier listed").1;
                reports.push(json!({
                    "object": {"name": name, "value": obj.to_json()},
                    "bimonoids": bs.len(),
                    "laws": {"checked": bs.len(), "failing": failing},
                    "structures": structures,
                }));
            }
            verdict(ok, Value::Array(reports))
        }
        BimonoidOp::Product(c) => {
            let (model, objs) = carriers(&m, c)?;
            let set: Vec<PCohBimonoid> = bimonoids_on(&model, &objs)?.into_iter().flat_map(|x| x.1).collect();
            let mut failing = Vec::new();
            for (i, x) in set.iter().enumerate() {
                for (j, y) in set.iter().enumerate() {
                    for (op, b) in [("tensor", tensor_bimonoid(&model, x, y)), ("par", par_bimonoid(&model, x, y))] {
                        let r = input(validate_bimonoid(&model, &input(b)?))?;
                        if !r.is_valid() {
                            failing.push(json!({"op": op, "pair": [i, j], "laws": r.failing}));
                        }
                    }
                }
            }
            let names: Vec<&str> = objs.iter().map(|o| o.0.as_str()).collect();
            let report = json!({
                "object": names,
                "bimonoids": set.len(),
                "laws": {"products": 2 * set.len() * set.len(), "failing": failing},
            });
            verdict(failing.is_empty(), report)
        }
        BimonoidOp::Universal(c) => {
            let (model, objs) = carriers(&m, c)?;
            let set: Vec<PCohBimonoid> = bimonoids_on(&model, &objs)?.into_iter().flat_map(|x| x.1).collect();
            let checker = input(UniversalChecker::new(&model, &set))?;
            let opts = UniversalOptions { mutate_pairing: m.file.mutate_pairing };
            let (mut cases, mut failures) = (0, Vec::new());
            for i in 0..set.len() {
                for j in 0..set.len() {
                    let r = input(checker.check(i, j, opts))?;
                    cases += r.cases;
                    failures.extend(r.failures.into_iter().map(|f| format!("({i}, {j}) {f}")));
                }
            }
            let names: Vec<&str> = objs.iter().map(|o| o.0.as_str()).collect();
            let shown: Vec<&String> = failures.iter().take(20).collect();
            let report = json!({
                "object": names,
                "bimonoids": set.len(),
                "laws": {"cases": cases, "failed": failures.len(), "failures": shown},
            });
            verdict(failures.is_empty(), report)
        }
        BimonoidOp::Fox { algebra } => {
            let (name, alg) = m.algebra(algebra.as_deref())?;
            let cldc = input(PosetalCLDC::new((*alg).clone()))?;
            let r = input(fox_round_trip(&cldc))?;
            let report = json!({
                "object": name,
                "bimonoids": r.bimonoids_per_element.iter().sum::<usize>(),
                "laws": r,
            });
            verdict(r.pass(), report)
        }
        BimonoidOp::Mu01(c) => {
            let (model, objs) = carriers(&m, c)?;
            let set: Vec<PCohBimonoid> = bimonoids_on(&model, &objs)?.into_iter().flat_map(|x| x.1).collect();
            let r = input(mu_zero_equals_mu_one_all(&model, &set))?;
            let names: Vec<&str> = objs.iter().map(|o| o.0.as_str()).collect();
            let shown: Vec<&[usize; 4]> = r.failing.iter().take(20).collect();
            let report = json!({
                "object": names,
                "bimonoids": set.len(),
                "laws": {"quadruples": r.quadruples, "failed": r.failing.len(), "failing": shown},
            });
            verdict(r.failing.is_empty(), report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Validate { model } => cmd_validate(model),
        Cmd::Coherence {
            model,
            max_size,
            seed,
            check,
            algebra,
        } => cmd_coherence(model, *max_size, *seed, check.as_deref(), algebra.as_deref()),
        Cmd::Derive {
            derivation,
            interpret,
            assign,
        } => cmd_derive(derivation, interpret.as_deref(), assign.as_deref()),
        Cmd::Bimonoid { model, op } => cmd_bimonoid(model, op),
    };
    let emit = |v: &Value| {
        let text = serde_json::to_string_pretty(v).expect("json values serialize");
        let _ = writeln!(std::io::stdout(), "{text}");
    };
    match res {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Fail::Check(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
