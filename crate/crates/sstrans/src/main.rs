//! Command-line front end: parse machines, dispatch the calculus
//! operations, emit plain-text or JSON reports and DOT graphs, and run the
//! acceptance suite.

use clap::{Parser, Subcommand};
use serde_json::json;
use sstrans::dynamics::{apply, pi_action, Annotation, BiInfiniteSeq};
use sstrans::format::{
    export_dot_det, parse_machine, serialize_det, serialize_initial, serialize_nd, Machine,
};
use sstrans::images::{default_remainder_bound, image_antichain, in_hn, invert};
use sstrans::lift::lift_to_initial;
use sstrans::machine::DetTransducer;
use sstrans::markers::{
    marker_automorphism, search_marker_pairs, validate_conveyor, ConveyorRule,
    ConveyorSystem, MarkerPair,
};
use sstrans::minimize::{minimize, minimized_product, Minimized};
use sstrans::reverse::{default_rec_bound, mrec, rec, rev, rev_automorphism, rev_sig};
use sstrans::signatures::{
    generator, in_dn_with_witness, in_kn, in_ln, in_on, in_onr, sig, sig_k, sig_omega,
};
use sstrans::suite::all_criteria;
use sstrans::sync::{core, default_max_k, sync_level};
use sstrans::word::Word;
use sstrans::{Error, Result};
use std::collections::HashMap;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "sstrans",
    version,
    about = "Workbench for the calculus of strongly synchronizing transducers"
)]
struct Cli {
    /// Emit a structured JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a machine file and certify strong synchronization.
    Validate { file: PathBuf },
    /// Minimal representative of a deterministic machine.
    Minimize {
        file: PathBuf,
        /// Emit a DOT graph instead of the machine file.
        #[arg(long)]
        dot: bool,
    },
    /// Product of two machines (first applied first).
    Product {
        a: PathBuf,
        b: PathBuf,
        /// Restrict to the core before printing.
        #[arg(long)]
        core: bool,
        /// Minimize (implies --core).
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Minimized inverse of an invertible machine.
    Invert {
        file: PathBuf,
        /// Remainder-exploration budget (default: machine-derived).
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Synchronization level and the core states.
    Sync {
        file: PathBuf,
        /// Largest level to try (default: machine-derived).
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Core of a machine.
    Core {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Image antichain of a state.
    Image {
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The signature homomorphism (mod n−1).
    Sig { file: PathBuf },
    /// The signature into the monoid M_n.
    Sigw { file: PathBuf },
    /// The level-k signature of an annotated machine (mod n^k−1).
    Sigk {
        file: PathBuf,
        #[arg(long)]
        k: u32,
        /// Comma-separated annotation values in state order (default: all 0).
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Membership in one of the groups On, Onr, Ln, Kn, Dn, Hn.
    Member {
        file: PathBuf,
        #[arg(long)]
        group: String,
        /// The r of O_{n,r} (required for --group Onr).
        #[arg(long)]
        r: Option<u64>,
    },
    /// The generator T(d, e) with d·e = n.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Reverse-arrows machine (non-deterministic).
    Rev { file: PathBuf },
    /// Deterministic recovery of a non-deterministic machine.
    Rec {
        file: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
        /// Minimize the recovered machine.
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        dot: bool,
    },
    /// The reverse automorphism mrec(rev(T)).
    Revaut {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// The signature of the reverse automorphism image.
    Revsig { file: PathBuf },
    /// Probe: does rev_sig(T) equal sig(T⁻¹) on this O_n element?
    #[command(name = "probe-q1")]
    ProbeQ1 { file: PathBuf },
    /// Apply an annotated machine to a bi-infinite sequence literal.
    Apply {
        file: PathBuf,
        /// Sequence literal, e.g. "(0)^-inf . 1,1 . (0,1)^inf @ 0".
        #[arg(long)]
        seq: String,
        /// Annotation values in state order (default: canonical).
        #[arg(long)]
        alpha: Option<String>,
    },
    /// The Π-action on prime rotation classes of bounded length.
    Pi {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
    },
    /// Marker automorphism machine of a marker pair.
    Marker {
        /// Marker word a, comma-separated letters.
        #[arg(long)]
        a: String,
        /// Marker word b, comma-separated letters.
        #[arg(long)]
        b: String,
        /// Alphabet size.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate valid marker pairs of a given length.
    MarkerSearch {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Conveyor-belt automorphism from a spec file.
    Conveyor {
        /// Spec file: `w`, repeated `u`, and a `rule` directive.
        #[arg(long)]
        spec: PathBuf,
        /// Alphabet size.
        #[arg(long)]
        n: u32,
        /// Tuple length for the bijectivity validation sweep.
        #[arg(long, default_value_t = 3)]
        check: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Lift a D_n machine to an initialised transducer on the r-rooted space.
    Lift {
        file: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Run the full acceptance suite.
    Suite,
}

fn read_machine(path: &PathBuf) -> Result<Machine> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    parse_machine(&text)
}

fn read_det(path: &PathBuf) -> Result<DetTransducer> {
    Ok(read_machine(path)?.det()?.0)
}

/// Default bound override from the environment.
fn env_bound() -> Option<usize> {
    std::env::var("SSTRANS_BOUND").ok().and_then(|s| s.parse().ok())
}

fn remainder_bound(flag: Option<usize>, t: &DetTransducer) -> usize {
    flag.or_else(env_bound).unwrap_or_else(|| default_remainder_bound(t))
}

fn parse_alpha(t: &DetTransducer, alpha: &str) -> Result<Annotation> {
    let values = alpha
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Format(format!("bad annotation list {alpha:?}")))?;
    if values.len() != t.state_count() {
        return Err(Error::Format(format!(
            "annotation lists {} values for {} states",
            values.len(),
            t.state_count()
        )));
    }
    Annotation::new(t, values)
}

fn annotation_json(t: &DetTransducer, a: &Annotation) -> serde_json::Value {
    json!(t
        .states()
        .map(|q| (t.name(q).to_string(), a.value(q)))
        .collect::<HashMap<_, _>>())
}

fn annotation_line(t: &DetTransducer, a: &Annotation) -> String {
    let parts: Vec<String> = t
        .states()
        .map(|q| format!("{}={}", t.name(q), a.value(q)))
        .collect();
    format!("# annotation {}", parts.join(" "))
}

/// Prints a deterministic machine as a file, DOT graph, or JSON document.
fn emit_det(json_mode: bool, dot: bool, t: &DetTransducer, ann: Option<&Annotation>) {
    if json_mode {
        let mut doc = json!({ "machine": serialize_det(t, None) });
        if let Some(a) = ann {
            doc["annotation"] = annotation_json(t, a);
        }
        println!("{doc}");
    } else if dot {
        print!("{}", export_dot_det(t));
    } else {
        print!("{}", serialize_det(t, None));
        if let Some(a) = ann {
            println!("{}", annotation_line(t, a));
        }
    }
}

fn emit_line(json_mode: bool, plain: String, doc: serde_json::Value) {
    if json_mode {
        println!("{doc}");
    } else {
        println!("{plain}");
    }
}

fn parse_conveyor_spec(text: &str) -> Result<ConveyorSystem> {
    let mut w: Option<Word> = None;
    let mut u: Vec<Word> = Vec::new();
    let mut rule: Option<ConveyorRule> = None;
    let mut block_delta: Option<usize> = None;
    let mut table: HashMap<Vec<Option<usize>>, usize> = HashMap::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Format(format!("spec line {}: {msg}", lineno + 1));
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "w" => {
                w = Some(Word::parse(parts.next().ok_or_else(|| err("missing word"))?)?);
            }
            "u" => {
                u.push(Word::parse(parts.next().ok_or_else(|| err("missing word"))?)?);
            }
            "rule" => match parts.next().ok_or_else(|| err("missing rule form"))? {
                "letterwise" => {
                    let perm = parts
                        .map(|s| s.parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| err("letterwise rule needs block indices"))?;
                    rule = Some(ConveyorRule::Letterwise(perm));
                }
                "block" => {
                    let d = parts
                        .next()
                        .ok_or_else(|| err("block rule needs a radius"))?
                        .parse::<usize>()
                        .map_err(|_| err("bad block radius"))?;
                    block_delta = Some(d);
                }
                other => return Err(err(&format!("unknown rule form {other:?}"))),
            },
            "map" => {
                let delta =
                    block_delta.ok_or_else(|| err("map before `rule block <delta>`"))?;
                let fields: Vec<&str> = parts.collect();
                if fields.len() != 2 * delta + 2 {
                    return Err(err(&format!(
                        "map needs {} context entries and one output",
                        2 * delta + 1
                    )));
                }
                let context = fields[..fields.len() - 1]
                    .iter()
                    .map(|s| {
                        if *s == "-" {
                            Ok(None)
                        } else {
                            s.parse::<usize>().map(Some).map_err(|_| err("bad map entry"))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                let out = fields[fields.len() - 1]
                    .parse::<usize>()
                    .map_err(|_| err("bad map output"))?;
                table.insert(context, out);
            }
            other => return Err(err(&format!("unknown directive {other:?}"))),
        }
    }

    if let Some(delta) = block_delta {
        rule = Some(ConveyorRule::Block { delta, table });
    }
    let w = w.ok_or_else(|| Error::Format("spec is missing the w directive".into()))?;
    let rule = rule.ok_or_else(|| Error::Format("spec is missing the rule directive".into()))?;
    ConveyorSystem::new(w, u, rule)
}

fn sig_line(prefix: &str, s: &sstrans::signatures::SigValue) -> String {
    format!("{prefix} = {} (mod {})", s.residue(), s.modulus())
}

fn run(cli: Cli) -> Result<()> {
    let jm = cli.json;
    match cli.cmd {
        Cmd::Validate { file } => {
            let m = read_machine(&file)?;
            match m {
                Machine::Det(t, _) => {
                    let cert = sync_level(&t, default_max_k(&t))?;
                    emit_line(
                        jm,
                        format!(
                            "deterministic machine: alphabet={} states={} sync_level={}",
                            t.alphabet().size(),
                            t.state_count(),
                            cert.level()
                        ),
                        json!({
                            "kind": "deterministic",
                            "alphabet": t.alphabet().size(),
                            "states": t.state_count(),
                            "sync_level": cert.level(),
                        }),
                    );
                }
                Machine::Nondet(t) => {
                    emit_line(
                        jm,
                        format!(
                            "non-deterministic machine: alphabet={} states={} edges={}",
                            t.alphabet().size(),
                            t.state_count(),
                            t.edges().len()
                        ),
                        json!({
                            "kind": "non-deterministic",
                            "alphabet": t.alphabet().size(),
                            "states": t.state_count(),
                            "edges": t.edges().len(),
                        }),
                    );
                }
            }
        }
        Cmd::Minimize { file, dot } => {
            let t = read_det(&file)?;
            match minimize(&t)? {
                Minimized::Det(m) => emit_det(jm, dot, &m, None),
                Minimized::Zx(x) => emit_line(
                    jm,
                    format!("degenerate: the image is the single point ({x})^inf"),
                    json!({ "degenerate": x.to_string() }),
                ),
            }
        }
        Cmd::Product { a, b, core: want_core, minimize: want_min, dot } => {
            let (ta, tb) = (read_det(&a)?, read_det(&b)?);
            if want_min {
                match minimized_product(&ta, &tb)? {
                    Minimized::Det(m) => emit_det(jm, dot, &m, None),
                    Minimized::Zx(x) => emit_line(
                        jm,
                        format!("degenerate: the image is the single point ({x})^inf"),
                        json!({ "degenerate": x.to_string() }),
                    ),
                }
            } else {
                let p = ta.product(&tb)?;
                let p = if want_core { core(&p)? } else { p };
                emit_det(jm, dot, &p, None);
            }
        }
        Cmd::Invert { file, bound, dot } => {
            let t = read_det(&file)?;
            let inv = invert(&t, remainder_bound(bound, &t))?;
            emit_det(jm, dot, &inv, None);
        }
        Cmd::Sync { file, max_k } => {
            let t = read_det(&file)?;
            let cert = sync_level(&t, max_k.or_else(env_bound).unwrap_or_else(|| default_max_k(&t)))?;
            let c = core(&t)?;
            let names: Vec<&str> = c.names().iter().map(String::as_str).collect();
            emit_line(
                jm,
                format!("level={} core_states=[{}]", cert.level(), names.join(", ")),
                json!({ "level": cert.level(), "core_states": names }),
            );
        }
        Cmd::Core { file, dot } => {
            let t = read_det(&file)?;
            emit_det(jm, dot, &core(&t)?, None);
        }
        Cmd::Image { file, state, bound } => {
            let t = read_det(&file)?;
            let q = t
                .state_by_name(&state)
                .ok_or_else(|| Error::Format(format!("unknown state {state:?}")))?;
            let a = image_antichain(&t, q, remainder_bound(bound, &t))?;
            let words: Vec<String> = a.words().iter().map(|w| w.to_string()).collect();
            emit_line(
                jm,
                format!("im({state}) = [{}] depth={}", words.join(", "), a.depth()),
                json!({ "state": state, "antichain": words, "depth": a.depth() }),
            );
        }
        Cmd::Sig { file } => {
            let s = sig(&read_det(&file)?)?;
            emit_line(
                jm,
                sig_line("sig", &s),
                json!({ "residue": s.residue(), "modulus": s.modulus() }),
            );
        }
        Cmd::Sigw { file } => {
            let s = sig_omega(&read_det(&file)?)?;
            emit_line(jm, format!("sig_w = {s}"), json!({ "class": s.to_string() }));
        }
        Cmd::Sigk { file, k, alpha } => {
            let t = read_det(&file)?;
            let ann = match alpha {
                Some(a) => parse_alpha(&t, &a)?,
                None => Annotation::canonical(&t)?,
            };
            let v = sig_k(&t, ann.values(), k)?;
            let m = (t.alphabet().size() as u64).pow(k) - 1;
            emit_line(
                jm,
                format!("sig_{k} = {v} (mod {m})"),
                json!({ "k": k, "residue": v, "modulus": m }),
            );
        }
        Cmd::Member { file, group, r } => {
            let t = read_det(&file)?;
            let (verdict, witness): (bool, Option<String>) = match group.to_lowercase().as_str() {
                "on" => (in_on(&t), None),
                "onr" => {
                    let r = r.ok_or_else(|| Error::Format("--group Onr needs --r".into()))?;
                    (in_onr(&t, r)?, None)
                }
                "ln" => (in_ln(&t), None),
                "kn" => (in_kn(&t)?, None),
                "dn" => in_dn_with_witness(&t)?,
                "hn" => (in_hn(&t)?, None),
                other => {
                    return Err(Error::Format(format!(
                        "unknown group {other:?} (expected On, Onr, Ln, Kn, Dn, Hn)"
                    )))
                }
            };
            let plain = match &witness {
                Some(w) if !verdict => format!("false (witness state {w})"),
                _ => verdict.to_string(),
            };
            emit_line(jm, plain, json!({ "group": group, "member": verdict, "witness": witness }));
        }
        Cmd::Gen { n, d, e, dot } => {
            emit_det(jm, dot, &generator(n, d, e)?, None);
        }
        Cmd::Rev { file } => {
            let t = read_det(&file)?;
            let r = rev(&t)?;
            if jm {
                println!("{}", json!({ "machine": serialize_nd(&r) }));
            } else {
                print!("{}", serialize_nd(&r));
            }
        }
        Cmd::Rec { file, bound, minimize: want_min, dot } => {
            let nd = read_machine(&file)?.nondet()?;
            let b = bound.or_else(env_bound).unwrap_or_else(|| default_rec_bound(&nd));
            if want_min {
                match mrec(&nd, b)? {
                    Minimized::Det(m) => emit_det(jm, dot, &m, None),
                    Minimized::Zx(x) => emit_line(
                        jm,
                        format!("degenerate: the image is the single point ({x})^inf"),
                        json!({ "degenerate": x.to_string() }),
                    ),
                }
            } else {
                emit_det(jm, dot, &rec(&nd, b)?, None);
            }
        }
        Cmd::Revaut { file, dot } => {
            emit_det(jm, dot, &rev_automorphism(&read_det(&file)?)?, None);
        }
        Cmd::Revsig { file } => {
            let s = rev_sig(&read_det(&file)?)?;
            emit_line(
                jm,
                sig_line("rev_sig", &s),
                json!({ "residue": s.residue(), "modulus": s.modulus() }),
            );
        }
        Cmd::ProbeQ1 { file } => {
            let t = read_det(&file)?;
            if !in_on(&t) {
                return Err(Error::Domain("probe-q1 needs an O_n element".into()));
            }
            let lhs = rev_sig(&t)?;
            let inv = invert(&t, remainder_bound(None, &t))?;
            let rhs = sig(&inv)?;
            emit_line(
                jm,
                format!(
                    "rev_sig = {} (mod {}), sig of inverse = {} (mod {}): {}",
                    lhs.residue(),
                    lhs.modulus(),
                    rhs.residue(),
                    rhs.modulus(),
                    if lhs == rhs { "agree" } else { "disagree" }
                ),
                json!({
                    "rev_sig": lhs.residue(),
                    "sig_of_inverse": rhs.residue(),
                    "modulus": lhs.modulus(),
                    "agree": lhs == rhs,
                }),
            );
        }
        Cmd::Apply { file, seq, alpha } => {
            let t = read_det(&file)?;
            let ann = match alpha {
                Some(a) => parse_alpha(&t, &a)?,
                None => Annotation::canonical(&t)?,
            };
            let x = BiInfiniteSeq::parse(&seq)?;
            let y = apply(&t, &ann, &x)?;
            emit_line(jm, format!("{y}"), json!({ "result": y.to_string() }));
        }
        Cmd::Pi { file, maxlen } => {
            let t = read_det(&file)?;
            let pairs = pi_action(&t, maxlen)?;
            if jm {
                let arr: Vec<serde_json::Value> = pairs
                    .iter()
                    .map(|(a, b)| json!([a.rep().to_string(), b.rep().to_string()]))
                    .collect();
                println!("{}", json!(arr));
            } else {
                for (a, b) in pairs {
                    println!("{a} -> {b}");
                }
            }
        }
        Cmd::Marker { a, b, n, dot } => {
            let pair = MarkerPair::new(Word::parse(&a)?, Word::parse(&b)?)?;
            let (t, ann) = marker_automorphism(&pair, n)?;
            emit_det(jm, dot, &t, Some(&ann));
        }
        Cmd::MarkerSearch { n, l, count } => {
            let pairs = search_marker_pairs(n, l, count)?;
            if jm {
                let arr: Vec<serde_json::Value> = pairs
                    .iter()
                    .map(|p| json!([p.a().to_string(), p.b().to_string()]))
                    .collect();
                println!("{}", json!(arr));
            } else {
                for p in &pairs {
                    println!("({}, {})", p.a(), p.b());
                }
                println!("{} pair(s)", pairs.len());
            }
        }
        Cmd::Conveyor { spec, n, check, dot } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| Error::Format(format!("cannot read {}: {e}", spec.display())))?;
            let c = parse_conveyor_spec(&text)?;
            validate_conveyor(&c, check)?;
            let (t, ann) = sstrans::markers::conveyor_automorphism(&c, n)?;
            emit_det(jm, dot, &t, Some(&ann));
        }
        Cmd::Lift { file, r, dot } => {
            let t = read_det(&file)?;
            let l = lift_to_initial(&t, r)?;
            if jm {
                println!(
                    "{}",
                    json!({ "r": l.r(), "machine": serialize_initial(l.init()) })
                );
            } else if dot {
                print!("{}", export_dot_det(&l.init().base));
            } else {
                println!("# lift onto the {r}-rooted space");
                print!("{}", serialize_initial(l.init()));
            }
        }
        Cmd::Suite => {
            let mut failures = 0usize;
            let mut results = Vec::new();
            for (i, (label, check)) in all_criteria().into_iter().enumerate() {
                let outcome = check();
                let ok = outcome.is_ok();
                if !jm {
                    match &outcome {
                        Ok(()) => println!("criterion {:2} ({label}): pass", i + 1),
                        Err(msg) => println!("criterion {:2} ({label}): FAIL — {msg}", i + 1),
                    }
                }
                results.push(json!({
                    "criterion": i + 1,
                    "label": label,
                    "pass": ok,
                    "message": outcome.err(),
                }));
                if !ok {
                    failures += 1;
                }
            }
            if jm {
                println!("{}", json!(results));
            }
            if failures > 0 {
                return Err(Error::Domain(format!("{failures} criterion(s) failed")));
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
