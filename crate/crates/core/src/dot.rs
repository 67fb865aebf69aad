//! Graphviz output: the Hasse diagram, with the symmetry drawn as dashed
//! edges and its fixed points doubly outlined.

use std::fmt::Write;

use crate::algebra::FinAlgebra;
use crate::spec_file::SpecFile;
use crate::suites::{build, BuildError};
use crate::symmetric::SymAlgebra;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn hasse_dot(name: &str, base: &FinAlgebra, sym: Option<&SymAlgebra>) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for x in base.elements() {
        let fixed = sym.is_some_and(|s| s.t(x) == x);
        let extra = if fixed { ", peripheries=2" } else { "" };
        writeln!(out, "  n{x} [label={}{extra}];", quote(base.label(x))).unwrap();
    }
    for (lo, hi) in base.covers() {
        writeln!(out, "  n{lo} -- n{hi};").unwrap();
    }
    if let Some(s) = sym {
        for x in base.elements().filter(|&x| s.t(x) > x) {
            writeln!(out, "  n{x} -- n{} [style=dashed];", s.t(x)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(spec: &SpecFile) -> Result<String, BuildError> {
    let b = build(spec)?;
    Ok(hasse_dot(&b.name, &b.base, b.sym.as_ref()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_file::parse_spec;

    fn counts(text: &str) -> (usize, usize, usize) {
        let d = export_dot(&parse_spec(text).unwrap()).unwrap();
        let nodes = d.lines().filter(|l| l.contains("[label=")).count();
        let dashed = d.lines().filter(|l| l.contains("dashed")).count();
        let edges = d.lines().filter(|l| l.contains(" -- ")).count() - dashed;
        (nodes, edges, dashed)
    }

    #[test]
    fn small_diagrams() {
        assert_eq!(counts("kind=signed ground=1"), (3, 2, 1));
        assert_eq!(counts("kind=product factors=boolean:1"), (2, 1, 0));
        assert_eq!(counts("kind=multicube sizes=1"), (4, 3, 1));
    }

    #[test]
    fn fixed_points_are_marked_and_output_is_stable() {
        let spec = parse_spec("kind=signed ground=1").unwrap();
        let d = export_dot(&spec).unwrap();
        assert_eq!(d, export_dot(&spec).unwrap());
        assert_eq!(d.matches("peripheries=2").count(), 1);
        assert!(d.contains(r#"[label="<1|>"]"#));
    }
}
