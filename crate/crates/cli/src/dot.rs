//! Graphviz export.

use std::fmt::Write;

use autfree_core::Transducer;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state and one edge `p -> q` labelled `a/b` per transition.
pub fn export_dot(t: &Transducer) -> String {
    let mut s = String::from("digraph automaton {\n\trankdir=LR;\n");
    for p in t.states() {
        writeln!(s, "\t{};", quote(p)).unwrap();
    }
    for (p, a, b, q) in t.transitions() {
        let label = format!("{}/{}", t.letter_name(a), t.letter_name(b));
        writeln!(s, "\t{} -> {} [label={}];", quote(t.state_name(p)), quote(t.state_name(q)), quote(&label)).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use autfree_core::free::adding_machine;

    #[test]
    fn adding_machine_graph() {
        let dot = export_dot(&adding_machine());
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("\t\"q\" -> \"id\" [label=\"0/1\"];\n"));
        assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("->") && !l.contains('=')).count(), 2);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
