//! Reader and writer for the plain-text alist sparse-matrix format.
//!
//! Layout (whitespace-separated decimal integers, newline-terminated):
//!
//! ```text
//! n m
//! max_col_deg max_row_deg
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based check indices per variable, zero-padded to max_col_deg>
//! <m lines: 1-based variable indices per check, zero-padded to max_row_deg>
//! ```
//!
//! Zeros are padding, not edges. Indices are 1-based on disk and 0-based in
//! memory.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{TannerGraph, TannerGraphBuilder};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlistError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: expected integer, got {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: {msg}")]
    DegreeMismatch { line: usize, msg: String },
    #[error("line {line}: index {index} out of range 1..={max}")]
    IndexOutOfRange { line: usize, index: usize, max: usize },
    #[error("line {line}: duplicate edge between variable {var} and check {check}")]
    ParallelEdge { line: usize, var: usize, check: usize },
    #[error("line {line}: adjacency lists disagree: {msg}")]
    Inconsistent { line: usize, msg: String },
    #[error("unexpected end of input at line {line}")]
    UnexpectedEof { line: usize },
}

struct Lines<'a> {
    inner: std::str::Lines<'a>,
    lineno: usize,
}

impl<'a> Lines<'a> {
    fn next_nonempty(&mut self) -> Option<(usize, &'a str)> {
        for line in self.inner.by_ref() {
            self.lineno += 1;
            if !line.trim().is_empty() {
                return Some((self.lineno, line));
            }
        }
        None
    }
}

fn parse_ints(lineno: usize, line: &str) -> Result<Vec<usize>, AlistError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| AlistError::BadInteger { line: lineno, token: tok.to_string() })
        })
        .collect()
}

/// Parses alist text into a [`TannerGraph`].
///
/// Index lines may be zero-padded to the declared maximum degree or carry
/// exactly the declared degree; either way the nonzero entries must match
/// the degree line. The check-side block is validated against the
/// variable-side block entry by entry.
pub fn load_alist(text: &str) -> Result<TannerGraph, AlistError> {
    let mut lines = Lines { inner: text.lines(), lineno: 0 };
    let eof = |l: &Lines| AlistError::UnexpectedEof { line: l.lineno };

    let (ln, header) = lines.next_nonempty().ok_or_else(|| eof(&lines))?;
    let header = parse_ints(ln, header)?;
    let [n, m] = header[..] else {
        return Err(AlistError::MalformedHeader {
            line: ln,
            msg: format!("expected 'n m', got {} fields", header.len()),
        });
    };

    let (ln, maxdeg) = lines.next_nonempty().ok_or_else(|| eof(&lines))?;
    let maxdeg = parse_ints(ln, maxdeg)?;
    let [max_col, max_row] = maxdeg[..] else {
        return Err(AlistError::MalformedHeader {
            line: ln,
            msg: format!("expected 'max_col_deg max_row_deg', got {} fields", maxdeg.len()),
        });
    };

    let read_degrees = |lines: &mut Lines, count: usize, what: &str, cap: usize| {
        let (ln, line) = lines.next_nonempty().ok_or(AlistError::UnexpectedEof { line: lines.lineno })?;
        let degs = parse_ints(ln, line)?;
        if degs.len() != count {
            return Err(AlistError::DegreeMismatch {
                line: ln,
                msg: format!("expected {count} {what} degrees, got {}", degs.len()),
            });
        }
        if let Some(&d) = degs.iter().find(|&&d| d > cap) {
            return Err(AlistError::DegreeMismatch {
                line: ln,
                msg: format!("{what} degree {d} exceeds declared maximum {cap}"),
            });
        }
        Ok(degs)
    };
    let col_degs = read_degrees(&mut lines, n, "column", max_col)?;
    let row_degs = read_degrees(&mut lines, m, "row", max_row)?;

    let read_block = |lines: &mut Lines, count: usize, degs: &[usize], max_deg: usize, max_index: usize| {
        let mut block = Vec::with_capacity(count);
        for i in 0..count {
            let (ln, line) =
                lines.next_nonempty().ok_or(AlistError::UnexpectedEof { line: lines.lineno })?;
            let entries = parse_ints(ln, line)?;
            if entries.len() != max_deg && entries.len() != degs[i] {
                return Err(AlistError::DegreeMismatch {
                    line: ln,
                    msg: format!(
                        "expected {} entries (or {} padded), got {}",
                        degs[i],
                        max_deg,
                        entries.len()
                    ),
                });
            }
            let nonzero: Vec<usize> = entries.iter().copied().filter(|&x| x != 0).collect();
            if nonzero.len() != degs[i] {
                return Err(AlistError::DegreeMismatch {
                    line: ln,
                    msg: format!("declared degree {} but {} nonzero entries", degs[i], nonzero.len()),
                });
            }
            if let Some(&x) = nonzero.iter().find(|&&x| x > max_index) {
                return Err(AlistError::IndexOutOfRange { line: ln, index: x, max: max_index });
            }
            block.push((ln, nonzero));
        }
        Ok(block)
    };
    let var_block = read_block(&mut lines, n, &col_degs, max_col, m)?;
    let check_block = read_block(&mut lines, m, &row_degs, max_row, n)?;

    let mut builder = TannerGraphBuilder::new(n, m);
    for (v, (ln, checks)) in var_block.iter().enumerate() {
        let mut seen = checks.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(AlistError::ParallelEdge { line: *ln, var: v, check: w[0] - 1 });
        }
        for &c in checks {
            builder.add_edge(v, c - 1).expect("indices validated above");
        }
    }
    let graph = builder.seal().expect("duplicates rejected above");

    // Cross-validate the check-side block against the mirrored adjacency.
    for (c, (ln, vars)) in check_block.iter().enumerate() {
        let mut listed: Vec<usize> = vars.iter().map(|&v| v - 1).collect();
        listed.sort_unstable();
        if listed.windows(2).any(|w| w[0] == w[1]) {
            return Err(AlistError::Inconsistent {
                line: *ln,
                msg: format!("check {c} lists a variable twice"),
            });
        }
        if listed != graph.check_vars(c) {
            return Err(AlistError::Inconsistent {
                line: *ln,
                msg: format!("check {c} lists variables {listed:?} but column block implies {:?}",
                    graph.check_vars(c)),
            });
        }
    }
    Ok(graph)
}

/// Serializes a graph to alist text, zero-padding every index line to the
/// maximum degree of its side. `load_alist(save_alist(g))` reproduces `g`
/// exactly.
pub fn save_alist(graph: &TannerGraph) -> String {
    let n = graph.n_vars();
    let m = graph.n_checks();
    let max_col = (0..n).map(|v| graph.var_degree(v)).max().unwrap_or(0);
    let max_row = (0..m).map(|c| graph.check_degree(c)).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{max_col} {max_row}");
    let degree_line = |out: &mut String, degs: Vec<usize>| {
        let strs: Vec<String> = degs.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "{}", strs.join(" "));
    };
    degree_line(&mut out, (0..n).map(|v| graph.var_degree(v)).collect());
    degree_line(&mut out, (0..m).map(|c| graph.check_degree(c)).collect());
    let index_line = |out: &mut String, indices: &[usize], width: usize| {
        let mut cells: Vec<String> = indices.iter().map(|&x| (x + 1).to_string()).collect();
        cells.resize(width, "0".to_string());
        let _ = writeln!(out, "{}", cells.join(" "));
    };
    for v in 0..n {
        index_line(&mut out, graph.var_checks(v), max_col);
    }
    for c in 0..m {
        index_line(&mut out, graph.check_vars(c), max_row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn six_ring_round_trip() {
        let g = fixtures::six_ring();
        let text = save_alist(&g);
        let header: Vec<&str> = text.lines().take(2).collect();
        assert_eq!(header, vec!["3 3", "2 2"]);
        assert_eq!(load_alist(&text).unwrap(), g);
    }

    #[test]
    fn zero_is_padding_not_an_edge() {
        // Variable 1 has degree 1; its line is padded with a 0.
        let text = "2 2\n2 1\n2 1\n2 1\n1 2\n1 0\n1 2\n1 0\n";
        let g = load_alist(text).unwrap();
        assert_eq!(g.var_checks(0), &[0, 1]);
        assert_eq!(g.var_checks(1), &[0]);
    }

    #[test]
    fn duplicate_pair_is_parallel_edge() {
        // Single variable listing check 2 twice.
        let text = "1 3\n3 1\n3\n1 1 1\n1 2 2\n1\n1\n1\n";
        match load_alist(text) {
            Err(AlistError::ParallelEdge { var: 0, check: 1, .. }) => {}
            other => panic!("expected parallel edge, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_blocks_rejected() {
        // Column block says v0-{c0}, v1-{c1}; row block swaps them.
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n";
        assert!(matches!(load_alist(text), Err(AlistError::Inconsistent { .. })));
    }

    #[test]
    fn malformed_header_reports_line() {
        assert!(matches!(
            load_alist("3\n"),
            Err(AlistError::MalformedHeader { line: 1, .. })
        ));
    }
}
