//! Non-deterministic transducers: finite edge sets with word input and
//! word output labels. These carry the reverse machine `rev(T)` and the
//! non-deterministic inverse view.

use crate::error::{Error, Result};
use crate::machine::{DetTransducer, StateId};
use crate::word::{Alphabet, Word};

/// One edge of a non-deterministic transducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdEdge {
    pub input: Word,
    pub src: StateId,
    pub dst: StateId,
    pub output: Word,
}

/// A non-deterministic transducer. Validation rejects circuits whose
/// concatenated input is empty and circuits whose concatenated output is
/// empty (the two non-degeneracy conditions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetTransducer {
    alphabet: Alphabet,
    names: Vec<String>,
    edges: Vec<NdEdge>,
    /// Edge indices grouped by source state, so per-state edge lookups do
    /// not scan the whole edge list.
    out: Vec<Vec<usize>>,
}

fn out_index(state_count: usize, edges: &[NdEdge]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); state_count];
    for (i, e) in edges.iter().enumerate() {
        out[e.src].push(i);
    }
    out
}

impl NondetTransducer {
    pub fn new(alphabet: Alphabet, names: Vec<String>, edges: Vec<NdEdge>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Invalid("machine needs at least one state".into()));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for nm in &names {
                if !seen.insert(nm) {
                    return Err(Error::Invalid(format!("duplicate state name {nm:?}")));
                }
            }
        }
        for e in &edges {
            if e.src >= names.len() || e.dst >= names.len() {
                return Err(Error::Invalid("edge endpoint out of range".into()));
            }
            e.input.check_alphabet(alphabet)?;
            e.output.check_alphabet(alphabet)?;
        }
        let out = out_index(names.len(), &edges);
        let t = NondetTransducer { alphabet, names, edges, out };
        t.check_no_silent_circuit(true)?;
        t.check_no_silent_circuit(false)?;
        Ok(t)
    }

    /// Rejects circuits with empty concatenated label on the chosen side.
    fn check_no_silent_circuit(&self, input_side: bool) -> Result<()> {
        let m = self.names.len();
        let mut adj: Vec<Vec<StateId>> = vec![Vec::new(); m];
        for e in &self.edges {
            let silent = if input_side { e.input.is_empty() } else { e.output.is_empty() };
            if silent {
                adj[e.src].push(e.dst);
            }
        }
        let mut color = vec![0u8; m];
        for start in 0..m {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = 1;
            while let Some(top) = stack.last_mut() {
                let q = top.0;
                if top.1 >= adj[q].len() {
                    color[q] = 2;
                    stack.pop();
                    continue;
                }
                let d = adj[q][top.1];
                top.1 += 1;
                match color[d] {
                    0 => {
                        color[d] = 1;
                        stack.push((d, 0));
                    }
                    1 => {
                        return Err(Error::Invalid(format!(
                            "degenerate non-deterministic machine: ε-{} circuit through {}",
                            if input_side { "input" } else { "output" },
                            self.names[d]
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|s| s == name)
    }

    pub fn edges(&self) -> &[NdEdge] {
        &self.edges
    }

    pub fn edges_from(&self, q: StateId) -> impl Iterator<Item = (usize, &NdEdge)> {
        self.out[q].iter().map(move |&i| (i, &self.edges[i]))
    }

    /// True iff every state has at least one outgoing edge (needed by the
    /// path machinery, which assumes every finite path extends).
    pub fn every_state_has_out_edge(&self) -> bool {
        let mut has = vec![false; self.state_count()];
        for e in &self.edges {
            has[e.src] = true;
        }
        has.into_iter().all(|b| b)
    }

    /// A deterministic machine viewed non-deterministically: one edge per
    /// (state, letter) with single-letter input.
    pub fn from_det(t: &DetTransducer) -> NondetTransducer {
        let edges = t
            .states()
            .flat_map(|q| {
                t.alphabet().letters().map(move |x| NdEdge {
                    input: Word::single(x),
                    src: q,
                    dst: t.step(q, x),
                    output: t.output(q, x).clone(),
                })
            })
            .collect::<Vec<_>>();
        let out = out_index(t.state_count(), &edges);
        NondetTransducer {
            alphabet: t.alphabet(),
            names: t.names().to_vec(),
            edges,
            out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silent_circuits_rejected() {
        let a = Alphabet::new(2).unwrap();
        let e = |i: &str, s, d, o: &str| NdEdge {
            input: Word::parse(i).unwrap(),
            src: s,
            dst: d,
            output: Word::parse(o).unwrap(),
        };
        // ε-input self-loop
        assert!(NondetTransducer::new(a, vec!["q".into()], vec![e("-", 0, 0, "0")]).is_err());
        // ε-output circuit of length 2
        assert!(NondetTransducer::new(
            a,
            vec!["q".into(), "r".into()],
            vec![e("0", 0, 1, "-"), e("1", 1, 0, "-")]
        )
        .is_err());
        // fine otherwise
        assert!(NondetTransducer::new(
            a,
            vec!["q".into()],
            vec![e("0,1", 0, 0, "1")]
        )
        .is_ok());
    }

    #[test]
    fn det_view() {
        let s = DetTransducer::sigma(2);
        let nd = NondetTransducer::from_det(&s);
        assert_eq!(nd.edges().len(), 4);
        assert!(nd.every_state_has_out_edge());
    }
}
