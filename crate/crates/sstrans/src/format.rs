//! Text and DOT serialization of machines.
//!
//! The text format is line-oriented; `#` starts a comment and blank lines
//! are ignored:
//!
//! ```text
//! alphabet 2
//! states a1 a2
//! initial a1          # optional
//! edge a1 0 a1 0      # edge <src> <input> <dst> <output>
//! edge a1 1 a2 -      # "-" is the empty word
//! ...
//! ```
//!
//! Deterministic files use `edge` with a single-letter input and must have
//! exactly one edge per (state, letter). Non-deterministic files use
//! `ndedge` and permit word inputs. Words are comma-separated decimal
//! letters.

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, InitialDetTransducer, StateId};
use crate::nd::{NdEdge, NondetTransducer};
use crate::word::{Alphabet, Word};
use std::fmt::Write as _;

/// A parsed machine file.
#[derive(Debug, Clone)]
pub enum Machine {
    Det(DetTransducer, Option<StateId>),
    Nondet(NondetTransducer),
}

impl Machine {
    pub fn det(self) -> Result<(DetTransducer, Option<StateId>)> {
        match self {
            Machine::Det(t, init) => Ok((t, init)),
            Machine::Nondet(_) => Err(Error::Format(
                "expected a deterministic machine, found ndedge directives".into(),
            )),
        }
    }

    pub fn nondet(self) -> Result<NondetTransducer> {
        match self {
            Machine::Nondet(t) => Ok(t),
            Machine::Det(t, _) => Ok(NondetTransducer::from_det(&t)),
        }
    }
}

/// Parses the text format.
pub fn parse_machine(text: &str) -> Result<Machine> {
    let mut alphabet: Option<Alphabet> = None;
    let mut names: Vec<String> = Vec::new();
    let mut initial: Option<String> = None;
    struct RawEdge {
        src: String,
        input: Word,
        dst: String,
        output: Word,
        nd: bool,
    }
    let mut raw: Vec<RawEdge> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().unwrap();
        let err = |msg: &str| Error::Format(format!("line {}: {msg}", lineno + 1));
        match directive {
            "alphabet" => {
                let n: u32 = parts
                    .next()
                    .ok_or_else(|| err("missing alphabet size"))?
                    .parse()
                    .map_err(|_| err("bad alphabet size"))?;
                alphabet = Some(Alphabet::new(n)?);
            }
            "states" => {
                names = parts.map(str::to_string).collect();
                if names.is_empty() {
                    return Err(err("states directive needs at least one state"));
                }
            }
            "initial" => {
                initial = Some(
                    parts
                        .next()
                        .ok_or_else(|| err("missing initial state"))?
                        .to_string(),
                );
            }
            "edge" | "ndedge" => {
                let mut field = || parts.next().ok_or_else(|| {
                    Error::Format(format!(
                        "line {}: edge needs <src> <input> <dst> <output>",
                        lineno + 1
                    ))
                });
                let src = field()?.to_string();
                let input = Word::parse(field()?)?;
                let dst = field()?.to_string();
                let output = Word::parse(field()?)?;
                raw.push(RawEdge {
                    src,
                    input,
                    dst,
                    output,
                    nd: directive == "ndedge",
                });
            }
            other => return Err(err(&format!("unknown directive {other:?}"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::Format("missing alphabet directive".into()))?;
    if names.is_empty() {
        return Err(Error::Format("missing states directive".into()));
    }
    let id_of = |nm: &str| -> Result<StateId> {
        names
            .iter()
            .position(|s| s == nm)
            .ok_or_else(|| Error::Format(format!("unknown state {nm:?}")))
    };
    let initial_id = initial.as_deref().map(id_of).transpose()?;

    if raw.iter().any(|e| e.nd) {
        if raw.iter().any(|e| !e.nd) {
            return Err(Error::Format("cannot mix edge and ndedge directives".into()));
        }
        let edges = raw
            .into_iter()
            .map(|e| {
                Ok(NdEdge {
                    input: e.input,
                    src: id_of(&e.src)?,
                    dst: id_of(&e.dst)?,
                    output: e.output,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Machine::Nondet(NondetTransducer::new(alphabet, names, edges)?));
    }

    let n = alphabet.size() as usize;
    let mut table: Vec<Vec<Option<(StateId, Word)>>> = vec![vec![None; n]; names.len()];
    for e in raw {
        let src = id_of(&e.src)?;
        let dst = id_of(&e.dst)?;
        if e.input.len() != 1 {
            return Err(Error::Format(format!(
                "deterministic edge from {} must have a single input letter, got {}",
                e.src, e.input
            )));
        }
        let x = e.input.letters()[0];
        if !alphabet.contains(x) {
            return Err(Error::Format(format!("input letter {x} out of alphabet")));
        }
        if table[src][x as usize].is_some() {
            return Err(Error::Format(format!(
                "duplicate edge for ({}, {x})",
                e.src
            )));
        }
        table[src][x as usize] = Some((dst, e.output));
    }
    let mut edges = Vec::with_capacity(names.len());
    for (q, row) in table.into_iter().enumerate() {
        let mut out_row = Vec::with_capacity(n);
        for (x, cell) in row.into_iter().enumerate() {
            out_row.push(cell.ok_or_else(|| {
                Error::Format(format!("missing edge for ({}, {x})", names[q]))
            })?);
        }
        edges.push(out_row);
    }
    Ok(Machine::Det(
        DetTransducer::new(alphabet, names, edges)?,
        initial_id,
    ))
}

/// Serializes a deterministic machine (optionally with an initial state).
pub fn serialize_det(t: &DetTransducer, initial: Option<StateId>) -> String {
    let mut s = String::new();
    writeln!(s, "alphabet {}", t.alphabet().size()).unwrap();
    writeln!(s, "states {}", t.names().join(" ")).unwrap();
    if let Some(q0) = initial {
        writeln!(s, "initial {}", t.name(q0)).unwrap();
    }
    for q in t.states() {
        for x in t.alphabet().letters() {
            writeln!(
                s,
                "edge {} {x} {} {}",
                t.name(q),
                t.name(t.step(q, x)),
                t.output(q, x)
            )
            .unwrap();
        }
    }
    s
}

pub fn serialize_initial(t: &InitialDetTransducer) -> String {
    serialize_det(&t.base, Some(t.initial))
}

/// Serializes a non-deterministic machine.
pub fn serialize_nd(t: &NondetTransducer) -> String {
    let mut s = String::new();
    writeln!(s, "alphabet {}", t.alphabet().size()).unwrap();
    writeln!(s, "states {}", t.names().join(" ")).unwrap();
    let mut edges: Vec<&NdEdge> = t.edges().iter().collect();
    edges.sort_by_key(|e| (e.src, e.input.clone(), e.dst, e.output.clone()));
    for e in edges {
        writeln!(
            s,
            "ndedge {} {} {} {}",
            t.name(e.src),
            e.input,
            t.name(e.dst),
            e.output
        )
        .unwrap();
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT export: one node per state, edges labeled `in|out`, stable order.
pub fn export_dot_det(t: &DetTransducer) -> String {
    let mut s = String::from("digraph transducer {\n  rankdir=LR;\n");
    for q in t.states() {
        writeln!(s, "  \"{}\";", dot_escape(t.name(q))).unwrap();
    }
    for q in t.states() {
        for x in t.alphabet().letters() {
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{x}|{}\"];",
                dot_escape(t.name(q)),
                dot_escape(t.name(t.step(q, x))),
                t.output(q, x)
            )
            .unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// DOT export for non-deterministic machines.
pub fn export_dot_nd(t: &NondetTransducer) -> String {
    let mut s = String::from("digraph transducer {\n  rankdir=LR;\n");
    for q in 0..t.state_count() {
        writeln!(s, "  \"{}\";", dot_escape(t.name(q))).unwrap();
    }
    let mut edges: Vec<&NdEdge> = t.edges().iter().collect();
    edges.sort_by_key(|e| (e.src, e.input.clone(), e.dst, e.output.clone()));
    for e in edges {
        writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}|{}\"];",
            dot_escape(t.name(e.src)),
            dot_escape(t.name(e.dst)),
            e.input,
            e.output
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_round_trip() {
        let s = DetTransducer::sigma(3);
        let text = serialize_det(&s, None);
        let (parsed, init) = parse_machine(&text).unwrap().det().unwrap();
        assert_eq!(parsed, s);
        assert_eq!(init, None);
    }

    #[test]
    fn initial_round_trip() {
        let s = DetTransducer::sigma(2);
        let text = serialize_det(&s, Some(1));
        let (_, init) = parse_machine(&text).unwrap().det().unwrap();
        assert_eq!(init, Some(1));
    }

    #[test]
    fn nd_round_trip() {
        let nd = NondetTransducer::from_det(&DetTransducer::sigma(2));
        let text = serialize_nd(&nd);
        let parsed = parse_machine(&text).unwrap().nondet().unwrap();
        assert_eq!(serialize_nd(&parsed), text);
    }

    #[test]
    fn format_errors() {
        assert!(parse_machine("states q\nedge q 0 q 0\n").is_err()); // no alphabet
        assert!(parse_machine("alphabet 2\nstates q\nedge q 0 q 0\n").is_err()); // missing letter 1
        assert!(parse_machine("alphabet 2\nstates q\nedge q 0 q 0\nedge q 1 q 1\nedge q 1 q 0\n").is_err());
        assert!(parse_machine("alphabet 2\nstates q\nbogus\n").is_err());
    }

    #[test]
    fn comments_and_blanks() {
        let text = "# a machine\nalphabet 2\n\nstates q # one state\nedge q 0 q 0\nedge q 1 q 1\n";
        let (t, _) = parse_machine(text).unwrap().det().unwrap();
        assert_eq!(t.state_count(), 1);
    }

    #[test]
    fn dot_shapes() {
        let id = DetTransducer::identity(2);
        let dot = export_dot_det(&id);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("label=\"0|0\""));
    }
}
