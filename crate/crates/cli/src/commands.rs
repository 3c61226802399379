//! Command definitions and their implementations.
//!
//! Every command produces an [`Outcome`]: an exit code (0 affirmative,
//! 1 negative or counterexample), a human-readable text and a JSON
//! document. Input errors are reported as [`Failure`] (exit code 2).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use autfree_core::analysis::{
    check_cancellative, check_equidivisible, check_hom_extension, check_length_function, Counterexample, Property,
    PropertyReport, Side,
};
use autfree_core::free::{
    adding_machine, build_r_hat_semigroup, free_semigroup_automaton, with_identity_state, StubProvider,
};
use autfree_core::monoid::{self, MonoidArtifacts, PresentationVerdict};
use autfree_core::ops;
use autfree_core::pcp::{format_solution, parse_solution};
use autfree_core::semigroup::{self, SemigroupArtifacts};
use autfree_core::word_problem::{decide_equal, enumerate_relations, Decision, Relation};
use autfree_core::{LetterId, StateId, Transducer};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dot::export_dot;
use crate::format::{self, AutomatonDoc, FormatError, Instance};
use crate::{show, split_symbols};

#[derive(Parser, Debug)]
#[command(name = "autfree", version, about = "Workbench for automaton semigroups and PCP reductions")]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that an automaton file describes a complete deterministic automaton.
    Validate { file: PathBuf },
    /// Apply a state sequence to a word.
    Act {
        file: PathBuf,
        /// Comma-separated state sequence; the rightmost state reads first.
        #[arg(long, allow_hyphen_values = true)]
        states: String,
        /// Comma-separated input word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Print the residual state sequence instead of the output word.
        #[arg(long)]
        dual: bool,
    },
    /// Decide whether two state sequences are equal (exit 0) or not (exit 1).
    Decide { file: PathBuf, left: String, right: String },
    /// List all relations between sequences of length at most the bound.
    Relations {
        file: PathBuf,
        #[arg(long)]
        bound: usize,
    },
    #[command(subcommand)]
    Build(BuildCommand),
    /// Composition: `second` reads the output of `first`.
    Compose {
        second: PathBuf,
        first: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The k-th power of an automaton.
    Power {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The dual automaton.
    Dual {
        file: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Union of automata over compatible alphabets.
    Union {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Build the relation witnessing a solution of an instance.
    Witness {
        instance: PathBuf,
        /// Tile indices, e.g. `12` or `1,12`.
        #[arg(long)]
        solution: String,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
    /// Read a solution off a relation with differing marker projections.
    Extract {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        reduction: ReductionArgs,
    },
    #[command(subcommand)]
    Check(CheckCommand),
    /// Bounded search for counterexamples to algebraic properties.
    Analyze(AnalyzeArgs),
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Args, Debug)]
pub struct OutArgs {
    /// Write the result to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReductionArgs {
    /// Use the monoid reduction.
    #[arg(long)]
    pub monoid: bool,
    /// Padding symbol for unpadded instances (monoid reduction).
    #[arg(long, default_value = "e")]
    pub padding: String,
}

#[derive(Subcommand, Debug)]
pub enum BuildCommand {
    /// The two-state adding machine.
    AddingMachine {
        #[command(flatten)]
        out: OutArgs,
    },
    /// The automaton generating the free semigroup over an alphabet.
    Free {
        #[arg(long)]
        alphabet: String,
        /// Add an identity state with this name.
        #[arg(long)]
        with_identity: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The free generating automaton over words of length 1..=len and an index set.
    Rhat {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        index: String,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReduceCommand {
    /// The semigroup automaton of a PCP instance.
    Semigroup {
        instance: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The monoid automaton of a padded instance.
    Monoid {
        instance: PathBuf,
        #[arg(long, default_value = "e")]
        padding: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Look for relations of the monoid automaton that break the marker projection.
    FreePresentation {
        instance: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long, default_value = "e")]
        padding: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExportCommand {
    /// Graphviz rendering of an automaton.
    Dot {
        file: PathBuf,
        /// Export the dual automaton.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Cancellative,
    Equidivisible,
    Length,
    Hom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub check: CheckKind,
    #[arg(long)]
    pub bound: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub side: SideArg,
    /// JSON object mapping state names to weights.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Require that only sequences acting as the identity have weight 0.
    #[arg(long)]
    pub proper: bool,
    /// JSON object mapping state names to target state sequences.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Target automaton of the map.
    #[arg(long)]
    pub target: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json }
    }
}

/// An input or usage error.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| FormatError::Io(path.display().to_string(), e).into())
}

fn load_automaton(path: &Path) -> Res<Transducer> {
    format::parse_automaton(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Res<Instance> {
    format::parse_instance(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn states(t: &Transducer, s: &str) -> Res<Vec<StateId>> {
    Ok(t.parse_states(&split_symbols(s))?)
}

fn letters(t: &Transducer, s: &str) -> Res<Vec<LetterId>> {
    Ok(t.parse_word(&split_symbols(s))?)
}

fn automaton_outcome(t: &Transducer, symbols: Option<Vec<(&'static str, String)>>, out: &OutArgs) -> Res<Outcome> {
    let text = match &symbols {
        Some(s) => format::write_artifact(t, s),
        None => format::write_automaton(t),
    };
    let mut doc = AutomatonDoc::from_transducer(t);
    doc.symbols = symbols.map(|s| s.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    let json = serde_json::to_value(&doc)?;
    write_or_print(text, json, out)
}

fn write_or_print(text: String, json: Value, out: &OutArgs) -> Res<Outcome> {
    match &out.output {
        None => Ok(Outcome::new(0, text, json)),
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            let p = path.display().to_string();
            Ok(Outcome::new(0, format!("wrote {p}\n"), json!({ "written": p })))
        }
    }
}

fn relation_json(t: &Transducer, r: &Relation) -> Value {
    json!({ "left": t.state_names(&r.left), "right": t.state_names(&r.right) })
}

fn relation_text(t: &Transducer, r: &Relation) -> String {
    format!("{} = {}", show(&t.state_names(&r.left)), show(&t.state_names(&r.right)))
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Act { file, states: p, word, dual } => {
            let t = load_automaton(file)?;
            let p = states(&t, p)?;
            let u = letters(&t, word)?;
            let (output, residual) = t.run(&p, &u);
            let (output, residual) = (t.letter_names(&output), t.state_names(&residual));
            let text = if *dual { show(&residual) } else { show(&output) };
            Ok(Outcome::new(0, text + "\n", json!({ "output": output, "residual": residual })))
        }
        Command::Decide { file, left, right } => {
            let t = load_automaton(file)?;
            let (p, q) = (states(&t, left)?, states(&t, right)?);
            Ok(match decide_equal(&t, &p, &q) {
                Decision::Equal => Outcome::new(0, "equal\n".into(), json!({ "equal": true, "separator": null })),
                Decision::Separated(u) => {
                    let word = t.letter_names(&u);
                    let (a, b) = (t.letter_names(&t.act(&p, &u)), t.letter_names(&t.act(&q, &u)));
                    let text = format!("separated by {}: {} vs {}\n", show(&word), show(&a), show(&b));
                    let json = json!({ "equal": false, "separator": word, "left_output": a, "right_output": b });
                    Outcome::new(1, text, json)
                }
            })
        }
        Command::Relations { file, bound } => {
            let t = load_automaton(file)?;
            if *bound == 0 {
                return Err(Failure("bound must be at least 1".into()));
            }
            let rels = enumerate_relations(&t, *bound);
            let mut text = String::new();
            for r in &rels {
                writeln!(text, "{}", relation_text(&t, r)).unwrap();
            }
            if rels.is_empty() {
                writeln!(text, "no relations up to length {bound}").unwrap();
            }
            let json = json!({
                "bound": bound,
                "relations": rels.iter().map(|r| relation_json(&t, r)).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(i32::from(!rels.is_empty()), text, json))
        }
        Command::Build(b) => build(b),
        Command::Compose { second, first, out } => {
            let t = ops::compose(&load_automaton(second)?, &load_automaton(first)?)?;
            automaton_outcome(&t, None, out)
        }
        Command::Power { file, k, out } => automaton_outcome(&ops::power(&load_automaton(file)?, *k)?, None, out),
        Command::Dual { file, out } => automaton_outcome(&ops::dual(&load_automaton(file)?)?, None, out),
        Command::Union { files, out } => {
            let parts = files.iter().map(|f| load_automaton(f)).collect::<Res<Vec<_>>>()?;
            automaton_outcome(&ops::union_all(parts.iter())?, None, out)
        }
        Command::Reduce(ReduceCommand::Semigroup { instance, out }) => {
            let art = semigroup_artifacts(&load_instance(instance)?)?;
            automaton_outcome(&art.automaton, Some(art.symbol_table()), out)
        }
        Command::Reduce(ReduceCommand::Monoid { instance, padding, out }) => {
            let art = monoid_artifacts(&load_instance(instance)?, padding)?;
            automaton_outcome(&art.automaton, Some(art.symbol_table()), out)
        }
        Command::Witness { instance, solution, reduction } => witness(instance, solution, reduction),
        Command::Extract { instance, left, right, reduction } => extract(instance, left, right, reduction),
        Command::Check(CheckCommand::FreePresentation { instance, bound, padding }) => {
            let art = monoid_artifacts(&load_instance(instance)?, padding)?;
            Ok(match art.check_free_presentation(*bound)? {
                PresentationVerdict::ConsistentUpTo(k) => Outcome::new(
                    0,
                    format!("no relation breaks the marker projection up to length {k}\n"),
                    json!({ "bound": k, "violation": null }),
                ),
                PresentationVerdict::Violation(r) => Outcome::new(
                    1,
                    format!("violation: {}\n", relation_text(&art.automaton, &r)),
                    json!({ "bound": bound, "violation": relation_json(&art.automaton, &r) }),
                ),
            })
        }
        Command::Analyze(args) => analyze(args),
        Command::Export(ExportCommand::Dot { file, dual, out }) => {
            let mut t = load_automaton(file)?;
            if *dual {
                t = ops::dual(&t)?;
            }
            let text = export_dot(&t);
            let json = json!({ "dot": text });
            write_or_print(text, json, out)
        }
    }
}

fn validate(file: &Path) -> Res<Outcome> {
    let raw = format::parse_raw(&read(file)?).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
    let report = raw.validate();
    let json = json!({
        "valid": report.is_ok(),
        "states": raw.states.len(),
        "letters": raw.alphabet.len(),
        "problems": if report.is_ok() { Value::Null } else { Value::String(report.to_string()) },
    });
    Ok(if report.is_ok() {
        Outcome::new(0, format!("ok: {} states, {} letters\n", raw.states.len(), raw.alphabet.len()), json)
    } else {
        Outcome::new(1, format!("invalid: {report}\n"), json)
    })
}

fn build(b: &BuildCommand) -> Res<Outcome> {
    match b {
        BuildCommand::AddingMachine { out } => automaton_outcome(&adding_machine(), None, out),
        BuildCommand::Free { alphabet, with_identity, out } => {
            let mut t = free_semigroup_automaton(&split_symbols(alphabet))?;
            if let Some(id) = with_identity {
                t = with_identity_state(&t, id)?;
            }
            automaton_outcome(&t, None, out)
        }
        BuildCommand::Rhat { lambda, index, len, out } => {
            let rhat = build_r_hat_semigroup(&split_symbols(lambda), &split_symbols(index), *len, &StubProvider)?;
            automaton_outcome(&rhat.automaton, None, out)
        }
    }
}

fn semigroup_artifacts(inst: &Instance) -> Res<SemigroupArtifacts> {
    match inst {
        Instance::Pcp(p) => Ok(semigroup::build(p, &StubProvider)?),
        Instance::Epcp(_) => Err(Failure("the semigroup reduction needs an unpadded instance".into())),
    }
}

fn monoid_artifacts(inst: &Instance, padding: &str) -> Res<MonoidArtifacts> {
    Ok(monoid::build(&inst.to_epcp(padding)?)?)
}

enum Artifacts {
    Semigroup(SemigroupArtifacts),
    Monoid(MonoidArtifacts),
}

impl Artifacts {
    fn load(instance: &Path, args: &ReductionArgs) -> Res<Self> {
        let inst = load_instance(instance)?;
        Ok(if args.monoid {
            Artifacts::Monoid(monoid_artifacts(&inst, &args.padding)?)
        } else {
            Artifacts::Semigroup(semigroup_artifacts(&inst)?)
        })
    }

    fn automaton(&self) -> &Transducer {
        match self {
            Artifacts::Semigroup(a) => &a.automaton,
            Artifacts::Monoid(a) => &a.automaton,
        }
    }
}

fn witness(instance: &Path, solution: &str, args: &ReductionArgs) -> Res<Outcome> {
    let art = Artifacts::load(instance, args)?;
    let word = parse_solution(solution)?;
    let rel = match &art {
        Artifacts::Semigroup(a) => a.witness_relation(&word),
        Artifacts::Monoid(a) => a.witness_relation(&word),
    };
    let rel = match rel {
        Ok(r) => r,
        Err(autfree_core::Error::NotASolution(s)) => {
            return Ok(Outcome::new(
                1,
                format!("`{s}` is not a solution\n"),
                json!({ "solution": s, "is_solution": false }),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let t = art.automaton();
    let equal = decide_equal(t, &rel.left, &rel.right).is_equal();
    let text = format!("{}{}\n", relation_text(t, &rel), if equal { "" } else { " (NOT verified)" });
    let json = json!({
        "solution": format_solution(&word),
        "is_solution": true,
        "relation": relation_json(t, &rel),
        "verified": equal,
    });
    Ok(Outcome::new(if equal { 0 } else { 1 }, text, json))
}

fn extract(instance: &Path, left: &str, right: &str, args: &ReductionArgs) -> Res<Outcome> {
    let art = Artifacts::load(instance, args)?;
    let t = art.automaton();
    let (p, q) = (states(t, left)?, states(t, right)?);
    let word = match &art {
        Artifacts::Semigroup(a) => a.extract_solution(&p, &q)?,
        Artifacts::Monoid(a) => a.extract_solution(&p, &q)?,
    };
    let s = format_solution(&word);
    Ok(Outcome::new(0, format!("{s}\n"), json!({ "solution": s, "indices": word })))
}

fn state_table<'a>(t: &Transducer, v: &'a Value, what: &str) -> Res<Vec<&'a Value>> {
    let obj = v.as_object().ok_or_else(|| Failure(format!("{what} must be a JSON object")))?;
    if let Some(k) = obj.keys().find(|k| t.state(k).is_none()) {
        return Err(Failure(format!("{what}: unknown state `{k}`")));
    }
    t.states().iter().map(|s| obj.get(s).ok_or_else(|| Failure(format!("{what}: no entry for state `{s}`")))).collect()
}

fn analyze(args: &AnalyzeArgs) -> Res<Outcome> {
    let t = load_automaton(&args.file)?;
    let k = args.bound;
    let mut weights = None;
    let mut target = None;
    let report = match args.check {
        CheckKind::Cancellative => {
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
                SideArg::Both => Side::Both,
            };
            check_cancellative(&t, k, side)?
        }
        CheckKind::Equidivisible => check_equidivisible(&t, k)?,
        CheckKind::Length => {
            let path = args.weights.as_ref().ok_or_else(|| Failure("--weights is required".into()))?;
            let doc = load_json(path)?;
            let w = state_table(&t, &doc, "weights")?
                .into_iter()
                .map(|v| v.as_u64().ok_or_else(|| Failure("weights must be non-negative integers".into())))
                .collect::<Res<Vec<u64>>>()?;
            let r = check_length_function(&t, &w, k, args.proper)?;
            weights = Some(w);
            r
        }
        CheckKind::Hom => {
            let (Some(map), Some(tp)) = (&args.map, &args.target) else {
                return Err(Failure("--map and --target are required".into()));
            };
            let t2 = load_automaton(tp)?;
            let doc = load_json(map)?;
            let m = state_table(&t, &doc, "map")?
                .into_iter()
                .map(|v| match v {
                    Value::String(s) => states(&t2, s),
                    Value::Array(a) => {
                        let names: Option<Vec<&str>> = a.iter().map(|x| x.as_str()).collect();
                        let names = names.ok_or_else(|| Failure("map entries must be strings".into()))?;
                        Ok(t2.parse_states(&names)?)
                    }
                    _ => Err(Failure("map entries must be strings or arrays".into())),
                })
                .collect::<Res<Vec<_>>>()?;
            let r = check_hom_extension(&t, &t2, &m, k)?;
            target = Some(t2);
            r
        }
    };
    let verified = report.counterexample().map(|c| c.recheck(&t, target.as_ref(), weights.as_deref()));
    Ok(report_outcome(&t, target.as_ref(), &report, verified))
}

fn property_name(p: Property) -> String {
    match p {
        Property::Cancellative(side) => format!("cancellative-{}", side_name(side)),
        Property::Equidivisible => "equidivisible".into(),
        Property::LengthFunction { proper: false } => "length".into(),
        Property::LengthFunction { proper: true } => "proper-length".into(),
        Property::HomExtension => "hom".into(),
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
        Side::Both => "both",
    }
}

fn report_outcome(
    t: &Transducer,
    target: Option<&Transducer>,
    report: &PropertyReport,
    verified: Option<bool>,
) -> Outcome {
    let name = property_name(report.property);
    let Some(c) = report.counterexample() else {
        return Outcome::new(
            0,
            format!("{name}: no counterexample up to {}\n", report.bound),
            json!({ "property": name, "bound": report.bound, "counterexample": null }),
        );
    };
    let s = |p: &[StateId]| t.state_names(p);
    let w = |u: &[LetterId]| t.letter_names(u);
    let (detail, doc) = match c {
        Counterexample::Cancellation { side, s: x, t: a, t_prime: b, separator } => (
            format!(
                "{} cancellation fails: s = {}, t = {}, t' = {} (t, t' separated by {})",
                side_name(*side),
                show(&s(x)),
                show(&s(a)),
                show(&s(b)),
                show(&w(separator))
            ),
            json!({ "kind": "cancellation", "side": side_name(*side), "s": s(x), "t": s(a),
                    "t_prime": s(b), "separator": w(separator) }),
        ),
        Counterexample::Division { s1, s2, s1_prime, s2_prime, x_bound } => (
            format!(
                "{} · {} = {} · {} with no middle factor of length at most {x_bound}",
                show(&s(s1)),
                show(&s(s2)),
                show(&s(s1_prime)),
                show(&s(s2_prime))
            ),
            json!({ "kind": "division", "s1": s(s1), "s2": s(s2), "s1_prime": s(s1_prime),
                    "s2_prime": s(s2_prime), "x_bound": x_bound }),
        ),
        Counterexample::Weight { left, right, left_weight, right_weight } => (
            format!("{} = {} but the weights are {left_weight} and {right_weight}", show(&s(left)), show(&s(right))),
            json!({ "kind": "weight", "left": s(left), "right": s(right), "left_weight": left_weight,
                    "right_weight": right_weight }),
        ),
        Counterexample::ZeroWeight { p, separator } => (
            format!("{} has weight 0 but moves {}", show(&s(p)), show(&w(separator))),
            json!({ "kind": "zero_weight", "p": s(p), "separator": w(separator) }),
        ),
        Counterexample::Homomorphism { left, right, image_left, image_right, separator } => {
            let t2 = target.expect("hom counterexamples come with a target");
            let (il, ir) = (t2.state_names(image_left), t2.state_names(image_right));
            let sep = t2.letter_names(separator);
            (
                format!(
                    "{} = {} but the images {} and {} are separated by {}",
                    show(&s(left)),
                    show(&s(right)),
                    show(&il),
                    show(&ir),
                    show(&sep)
                ),
                json!({ "kind": "homomorphism", "left": s(left), "right": s(right), "image_left": il,
                        "image_right": ir, "separator": sep }),
            )
        }
    };
    let mut doc = doc;
    doc["verified"] = json!(verified);
    Outcome::new(
        1,
        format!("{name}: counterexample at bound {}: {detail}\n", report.bound),
        json!({ "property": name, "bound": report.bound, "counterexample": doc }),
    )
}
