//! Text formats: edge lists and CSV matrices.
//!
//! Edge list: the first non-comment line holds the vertex count `n`, every
//! following line one `u v` pair (0-indexed). `#` starts a comment and blank
//! lines are ignored.
//!
//! CSV: one row per line, comma separated, `#` comment lines allowed. Frames
//! are written one vector per row. Numbers are printed with 17 significant
//! digits in the style of C's `%.17g`, which round-trips every `f64`.

use serde::Serializer;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::graph::Graph;
use crate::linalg::Matrix;

/// Version marker written at the top of every text output.
pub const FORMAT_HEADER: &str = "# graph-frames v1";

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last = line_no;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match n {
            None => {
                let [tok] = tokens[..] else {
                    return Err(parse_err(
                        line_no,
                        format!("expected vertex count, got {body:?}"),
                    ));
                };
                let count: usize = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid vertex count {tok:?}")))?;
                if count == 0 {
                    return Err(parse_err(line_no, "vertex count must be positive"));
                }
                n = Some(count);
            }
            Some(count) => {
                let [a, b] = tokens[..] else {
                    return Err(parse_err(line_no, format!("expected `u v`, got {body:?}")));
                };
                let vertex = |t: &str| -> Result<usize> {
                    t.parse()
                        .map_err(|_| parse_err(line_no, format!("invalid vertex {t:?}")))
                };
                let (u, v) = (vertex(a)?, vertex(b)?);
                if u >= count || v >= count {
                    return Err(parse_err(
                        line_no,
                        format!("edge ({u}, {v}) out of range for n = {count}"),
                    ));
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
                }
                pairs.push((u, v));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(last + 1, "missing vertex count"))?;
    Graph::from_edge_list(n, &pairs)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{FORMAT_HEADER}\n{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// `%.17g`-style formatting: 17 significant digits, trailing zeros dropped,
/// exponent form only for very large or small magnitudes.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };

    if !(-4..17).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    if exp < 0 {
        let zeros = "0".repeat((-exp - 1) as usize);
        return format!("{sign}0.{zeros}{digits}");
    }
    let int_len = exp as usize + 1;
    if digits.len() <= int_len {
        format!("{sign}{digits}{}", "0".repeat(int_len - digits.len()))
    } else {
        let (int, frac) = digits.split_at(int_len);
        format!("{sign}{int}.{frac}")
    }
}

pub fn rows_to_csv<R: AsRef<[f64]>>(rows: &[R]) -> String {
    let mut out = format!("{FORMAT_HEADER}\n");
    for r in rows {
        let cells: Vec<String> = r.as_ref().iter().map(|&x| format_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses a rectangular CSV of reals. Fails on ragged rows, non-numeric
/// cells, and input without any row.
pub fn rows_from_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last = line_no;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let row = body
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                cell.parse::<f64>()
                    .map_err(|_| parse_err(line_no, format!("non-numeric cell {cell:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(parse_err(
                    line_no,
                    format!("row has {} columns, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(last + 1, "no rows"));
    }
    Ok(rows)
}

pub fn frame_to_csv(f: &Frame) -> String {
    rows_to_csv(f.vectors())
}

pub fn frame_from_csv(text: &str) -> Result<Frame> {
    Frame::new(rows_from_csv(text)?)
}

pub fn matrix_to_csv(m: &Matrix) -> String {
    rows_to_csv(&m.to_rows())
}

pub fn matrix_from_csv(text: &str) -> Result<Matrix> {
    Matrix::from_rows(&rows_from_csv(text)?)
}

/// Serializes a matrix as a list of rows.
pub fn serialize_matrix<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    m.to_rows().serialize(s)
}
