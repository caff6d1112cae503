//! Text formats: the DIMACS-flavored graph format and the coloring format.
//!
//! Graph files: optional `c …` comment lines, one `p edge <n> <m>` header,
//! then m lines `e <u> <v>` with 1 ≤ u < v ≤ n and no duplicates. The writer
//! emits edges sorted lexicographically, so `read(write(g)) == g` and
//! `write(read(t))` equals `t` up to edge reordering and dropped comments.
//!
//! Coloring files: one line `colors <n> <palette>`, then n lines
//! `<vertex> <color>` with 1-indexed vertices and 0-indexed colors.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem header"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(Error::parse(lineno, "expected header `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex count"))?;
                declared_edges = fields[3]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid edge count"))?;
                graph = Some(Graph::edgeless(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(lineno, "edge before `p edge` header"))?;
                if fields.len() != 3 {
                    return Err(Error::parse(lineno, "expected edge line `e <u> <v>`"));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex index"))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "invalid vertex index"))?;
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop at vertex {u}")));
                }
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(Error::parse(
                        lineno,
                        format!("vertex index outside 1..={}", g.n()),
                    ));
                }
                if u > v {
                    return Err(Error::parse(
                        lineno,
                        "edge endpoints must satisfy u < v",
                    ));
                }
                let (u0, v0) = (u - 1, v - 1);
                if g.has_edge(u0, v0) {
                    return Err(Error::parse(lineno, format!("duplicate edge ({u},{v})")));
                }
                g.add_edge_unchecked(u0, v0);
                seen_edges += 1;
            }
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("unrecognized line type `{other}`"),
                ));
            }
        }
    }

    let g = graph.ok_or_else(|| Error::parse(last_line, "missing `p edge` header"))?;
    if seen_edges != declared_edges {
        return Err(Error::parse(
            last_line,
            format!("header declares {declared_edges} edges, found {seen_edges}"),
        ));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(16 + 12 * edges.len());
    out.push_str(&format!("p edge {} {}\n", g.n(), edges.len()));
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn read_coloring(text: &str) -> Result<Coloring> {
    let mut lines = text.lines().enumerate();
    let (mut lineno, header) = loop {
        match lines.next() {
            Some((idx, raw)) => {
                let line = raw.trim();
                if line.is_empty() {
                    continue;
                }
                break (idx + 1, line);
            }
            None => return Err(Error::parse(1, "missing `colors` header")),
        }
    };

    let fields: Vec<&str> = header.split_ascii_whitespace().collect();
    if fields.len() != 3 || fields[0] != "colors" {
        return Err(Error::parse(lineno, "expected header `colors <n> <palette>`"));
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| Error::parse(lineno, "invalid vertex count"))?;
    let palette: u32 = fields[2]
        .parse()
        .map_err(|_| Error::parse(lineno, "invalid palette size"))?;

    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (idx, raw) in lines {
        lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(lineno, "expected `<vertex> <color>`"));
        }
        let v: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lineno, "invalid vertex index"))?;
        let c: u32 = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, "invalid color id"))?;
        if v == 0 || v > n {
            return Err(Error::parse(lineno, format!("vertex index outside 1..={n}")));
        }
        if c >= palette {
            return Err(Error::parse(
                lineno,
                format!("color {c} outside palette 0..{palette}"),
            ));
        }
        if colors[v - 1].is_some() {
            return Err(Error::parse(lineno, format!("vertex {v} colored twice")));
        }
        colors[v - 1] = Some(c);
    }

    let assignment: Vec<u32> = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::parse(lineno, format!("vertex {} uncolored", v + 1))))
        .collect::<Result<_>>()?;

    let coloring = Coloring::from_colors(assignment)
        .map_err(|e| Error::parse(lineno, format!("invalid coloring: {e}")))?;
    if coloring.palette() != palette {
        return Err(Error::parse(
            lineno,
            format!(
                "header declares palette {palette}, colors in use imply {}",
                coloring.palette()
            ),
        ));
    }
    Ok(coloring)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::with_capacity(24 + 8 * c.len());
    out.push_str(&format!("colors {} {}\n", c.len(), c.palette()));
    for v in 0..c.len() {
        out.push_str(&format!("{} {}\n", v + 1, c.color(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_k3() {
        let text = "c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn round_trip_identity() {
        let g = crate::graph::gen_random_graph(
            &crate::graph::GenParams::new(40, 0.3, 11).unwrap(),
        );
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn writer_normalizes_edge_order() {
        let text = "p edge 4 3\ne 1 2\ne 1 3\ne 2 4\n";
        let g = read_graph(text).unwrap();
        assert_eq!(write_graph(&g), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = read_graph("p edge 3 1\ne 1 1\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("self-loop"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        assert!(matches!(
            read_graph("p edge 3 1\ne 1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_graph("p edge 3 2\ne 1 2\ne 1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_graph("p edge 3 1\ne 2 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(read_graph("p edgee 3 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            read_graph("p edge 3 2\ne 1 2\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn coloring_round_trip() {
        let c = Coloring::from_colors(vec![0, 1, 0, 2]).unwrap();
        let text = write_coloring(&c);
        assert_eq!(text, "colors 4 3\n1 0\n2 1\n3 0\n4 2\n");
        assert_eq!(read_coloring(&text).unwrap(), c);
    }

    #[test]
    fn coloring_rejects_sparse_palette() {
        // Palette says 3 but only colors {0,2} are used.
        let text = "colors 3 3\n1 0\n2 2\n3 0\n";
        assert!(read_coloring(text).is_err());
    }
}
