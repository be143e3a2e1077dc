//! Line-oriented text formats for graded modules and monomial matrices.
//!
//! Both formats start with exactly one `field` line and one `vars` line.
//! `#` starts a comment; blank lines are ignored. Serialization is
//! canonical and bit-exact: parsing a serialized value and serializing it
//! again reproduces the same bytes.
//!
//! Module files:
//! ```text
//! field F2|F<p>|Q
//! vars <n>
//! component <d1> ... <dn> <dim>
//! map <d1> ... <dn> <axis:1..n> <entries row-major>
//! ```
//! A `map` line carries the matrix of `X_axis` out of the component at
//! `(d1 .. dn)`, with `dim(g+e_axis) x dim(g)` scalar entries. Maps
//! between nonzero components that are not listed are zero; maps touching
//! zero components must not appear. Zero maps are omitted on output.
//!
//! Matrix files:
//! ```text
//! field F2|F<p>|Q
//! vars <n>
//! rows <r>
//! cols <s>
//! rowdeg <d1> ... <dn>    (r lines, in order)
//! coldeg <d1> ... <dn>    (s lines, in order)
//! entry <i> <j> <scalar>  (0-based; omitted entries are zero)
//! ```
//! Entries violating the support condition are rejected at parse time;
//! the serializer emits entries in row-major order, omitting zeros.

use crate::degree::Degree;
use crate::field::FieldSpec;
use crate::matrix::DenseMatrix;
use crate::module::GradedModuleData;
use crate::monmat::MonomialMatrix;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

/// What a file contains, detected from its keywords.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FileKind {
    Module,
    Matrix,
}

type Line<'a> = (usize, Vec<&'a str>);

/// Non-comment lines with their 1-based line numbers.
fn logical_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.is_empty() {
                None
            } else {
                Some((k + 1, fields))
            }
        })
        .collect()
}

/// Decide whether a file holds a module or a matrix. A file with only the
/// `field` and `vars` header is the zero module.
pub fn detect_kind(text: &str) -> FileKind {
    for (_, fields) in logical_lines(text) {
        match fields[0] {
            "rows" | "cols" | "rowdeg" | "coldeg" | "entry" => return FileKind::Matrix,
            "component" | "map" => return FileKind::Module,
            _ => {}
        }
    }
    FileKind::Module
}

/// Parse the common `field` / `vars` header; returns the remaining lines.
fn parse_header(text: &str) -> Result<(FieldSpec, usize, Vec<Line<'_>>), ParseError> {
    let lines = logical_lines(text);
    let mut it = lines.into_iter();
    let Some((ln, fields)) = it.next() else {
        return err(1, "empty file: expected a `field` line");
    };
    if fields[0] != "field" || fields.len() != 2 {
        return err(ln, "expected `field F<p>` or `field Q` as the first line");
    }
    let field = FieldSpec::parse_token(fields[1]).map_err(|e| ParseError {
        line: ln,
        msg: e.to_string(),
    })?;
    let Some((ln, fields)) = it.next() else {
        return err(ln, "expected a `vars <n>` line after `field`");
    };
    if fields[0] != "vars" || fields.len() != 2 {
        return err(ln, "expected `vars <n>` as the second line");
    }
    let n: usize = match fields[1].parse() {
        Ok(v) if v >= 1 => v,
        _ => return err(ln, "variable count must be a positive integer"),
    };
    Ok((field, n, it.collect()))
}

fn parse_degree(ln: usize, fields: &[&str], n: usize) -> Result<Degree, ParseError> {
    if fields.len() != n {
        return err(ln, format!("expected {n} degree coordinates"));
    }
    let mut coords = Vec::with_capacity(n);
    for f in fields {
        match f.parse::<i64>() {
            Ok(v) => coords.push(v),
            Err(_) => return err(ln, format!("bad degree coordinate `{f}`")),
        }
    }
    Ok(Degree::new(coords))
}

/// Parse a graded module file.
pub fn parse_module(text: &str) -> Result<GradedModuleData, ParseError> {
    let (field, n, rest) = parse_header(text)?;
    let mut components: BTreeMap<Degree, usize> = BTreeMap::new();
    let mut map_lines: Vec<(usize, Degree, usize, Vec<String>)> = Vec::new();

    for (ln, fields) in &rest {
        let ln = *ln;
        match fields[0] {
            "component" => {
                if fields.len() != n + 2 {
                    return err(ln, format!("expected `component <{n} coords> <dim>`"));
                }
                let deg = parse_degree(ln, &fields[1..=n], n)?;
                let dim: usize = match fields[n + 1].parse() {
                    Ok(v) if v >= 1 => v,
                    _ => return err(ln, "component dimension must be a positive integer"),
                };
                if components.insert(deg.clone(), dim).is_some() {
                    return err(ln, format!("duplicate component at {deg}"));
                }
            }
            "map" => {
                if fields.len() < n + 2 {
                    return err(ln, format!("expected `map <{n} coords> <axis> <entries>`"));
                }
                let deg = parse_degree(ln, &fields[1..=n], n)?;
                let axis: usize = match fields[n + 1].parse() {
                    Ok(v) if (1..=n).contains(&v) => v,
                    _ => return err(ln, format!("axis must lie in 1..{n}")),
                };
                let entries = fields[n + 2..].iter().map(|s| s.to_string()).collect();
                map_lines.push((ln, deg, axis - 1, entries));
            }
            "field" | "vars" => {
                return err(ln, format!("`{}` may only appear in the header", fields[0]))
            }
            other => return err(ln, format!("unknown keyword `{other}` in module file")),
        }
    }

    let mut maps = BTreeMap::new();
    for (ln, deg, axis, entry_text) in map_lines {
        let dim_g = components.get(&deg).copied().unwrap_or(0);
        let target = deg.add(&Degree::unit(n, axis));
        let dim_t = components.get(&target).copied().unwrap_or(0);
        if dim_g == 0 || dim_t == 0 {
            return err(
                ln,
                format!("map at {deg} axis {} touches a zero component", axis + 1),
            );
        }
        if entry_text.len() != dim_t * dim_g {
            return err(
                ln,
                format!(
                    "map at {deg} axis {} needs {} entries ({dim_t}x{dim_g}), got {}",
                    axis + 1,
                    dim_t * dim_g,
                    entry_text.len()
                ),
            );
        }
        let mut entries = Vec::with_capacity(entry_text.len());
        for s in &entry_text {
            let v = field.parse_scalar(s).map_err(|e| ParseError {
                line: ln,
                msg: e.to_string(),
            })?;
            entries.push(v);
        }
        let mat = DenseMatrix::new(field, dim_t, dim_g, entries);
        if maps.insert((deg.clone(), axis), mat).is_some() {
            return err(ln, format!("duplicate map at {deg} axis {}", axis + 1));
        }
    }
    Ok(GradedModuleData::from_parts(field, n, components, maps))
}

/// Serialize a graded module canonically: components in lexicographic
/// order, then nonzero maps in (degree, axis) order.
pub fn serialize_module(m: &GradedModuleData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", m.field().token());
    let _ = writeln!(out, "vars {}", m.nvars());
    let coords = |d: &Degree| {
        d.coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (g, dim) in m.components() {
        let _ = writeln!(out, "component {} {dim}", coords(g));
    }
    for ((g, axis), mat) in m.maps() {
        if mat.is_zero() {
            continue;
        }
        let mut line = format!("map {} {}", coords(g), axis + 1);
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                let _ = write!(line, " {}", mat.get(i, j));
            }
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

/// Parse a monomial matrix file; entries violating the support condition
/// are rejected.
pub fn parse_matrix(text: &str) -> Result<MonomialMatrix, ParseError> {
    let (field, n, rest) = parse_header(text)?;
    let mut it = rest.into_iter();

    let mut take_count = |keyword: &str| -> Result<usize, ParseError> {
        match it.next() {
            Some((ln, fields)) if fields[0] == keyword && fields.len() == 2 => {
                fields[1].parse().map_err(|_| ParseError {
                    line: ln,
                    msg: format!("bad `{keyword}` count"),
                })
            }
            Some((ln, _)) => err(ln, format!("expected `{keyword} <count>`")),
            None => err(0, format!("missing `{keyword}` line")),
        }
    };
    let r = take_count("rows")?;
    let s = take_count("cols")?;

    let mut row_degrees = Vec::with_capacity(r);
    let mut col_degrees = Vec::with_capacity(s);
    let mut entries = DenseMatrix::zeros(field, r, s);
    let mut seen: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();

    for (ln, fields) in it {
        match fields[0] {
            "rowdeg" => {
                if !col_degrees.is_empty() {
                    return err(ln, "rowdeg lines must precede coldeg lines");
                }
                if row_degrees.len() == r {
                    return err(ln, format!("more than {r} rowdeg lines"));
                }
                row_degrees.push(parse_degree(ln, &fields[1..], n)?);
            }
            "coldeg" => {
                if row_degrees.len() < r {
                    return err(ln, "coldeg lines must follow all rowdeg lines");
                }
                if col_degrees.len() == s {
                    return err(ln, format!("more than {s} coldeg lines"));
                }
                col_degrees.push(parse_degree(ln, &fields[1..], n)?);
            }
            "entry" => {
                if row_degrees.len() < r || col_degrees.len() < s {
                    return err(ln, "entry lines must follow all degree lines");
                }
                if fields.len() != 4 {
                    return err(ln, "expected `entry <row> <col> <scalar>`");
                }
                let i: usize = fields[1].parse().map_err(|_| ParseError {
                    line: ln,
                    msg: "bad row index".into(),
                })?;
                let j: usize = fields[2].parse().map_err(|_| ParseError {
                    line: ln,
                    msg: "bad column index".into(),
                })?;
                if i >= r || j >= s {
                    return err(ln, format!("entry index ({i}, {j}) out of range"));
                }
                if !seen.insert((i, j)) {
                    return err(ln, format!("duplicate entry at ({i}, {j})"));
                }
                let v = field.parse_scalar(fields[3]).map_err(|e| ParseError {
                    line: ln,
                    msg: e.to_string(),
                })?;
                if !v.is_zero() && !col_degrees[j].leq(&row_degrees[i]) {
                    return err(
                        ln,
                        format!(
                            "entry ({i}, {j}) violates the support condition: {} is not below {}",
                            col_degrees[j], row_degrees[i]
                        ),
                    );
                }
                entries.set(i, j, v);
            }
            other => return err(ln, format!("unknown keyword `{other}` in matrix file")),
        }
    }
    if row_degrees.len() != r {
        return err(
            0,
            format!("expected {r} rowdeg lines, got {}", row_degrees.len()),
        );
    }
    if col_degrees.len() != s {
        return err(
            0,
            format!("expected {s} coldeg lines, got {}", col_degrees.len()),
        );
    }
    Ok(MonomialMatrix::new(n, row_degrees, col_degrees, entries))
}

/// Serialize a monomial matrix: header, degree lines in order, then the
/// nonzero entries in row-major order.
pub fn serialize_matrix(m: &MonomialMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", m.field().token());
    let _ = writeln!(out, "vars {}", m.nvars());
    let _ = writeln!(out, "rows {}", m.nrows());
    let _ = writeln!(out, "cols {}", m.ncols());
    let coords = |d: &Degree| {
        d.coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for d in m.row_degrees() {
        let _ = writeln!(out, "rowdeg {}", coords(d));
    }
    for d in m.col_degrees() {
        let _ = writeln!(out, "coldeg {}", coords(d));
    }
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let v = m.entries().get(i, j);
            if !v.is_zero() {
                let _ = writeln!(out, "entry {i} {j} {v}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::fixtures::two_parameter_example;
    use crate::monmat::fixtures::two_parameter_presentation;

    const EXAMPLE_MODULE: &str = "\
# two-parameter example over F2
field F2
vars 2

component 1 0 1
component 0 1 1
component 2 0 1
component 1 1 2
component 2 1 1
map 1 0 1 1       # X1 step
map 1 0 2 1 0
map 0 1 1 0 1
map 1 1 1 1 1
map 2 0 2 1
";

    #[test]
    fn module_file_parses_to_the_fixture() {
        let m = parse_module(EXAMPLE_MODULE).unwrap();
        assert_eq!(m, two_parameter_example());
        assert_eq!(m.validate(), Ok(()));
    }

    #[test]
    fn module_round_trip_is_bit_exact() {
        let m = parse_module(EXAMPLE_MODULE).unwrap();
        let text = serialize_module(&m);
        let again = parse_module(&text).unwrap();
        assert_eq!(again, m);
        assert_eq!(serialize_module(&again), text);
    }

    #[test]
    fn zero_module_file() {
        let m = parse_module("field F5\nvars 3\n").unwrap();
        assert!(m.is_zero());
        assert_eq!(m.nvars(), 3);
        assert_eq!(serialize_module(&m), "field F5\nvars 3\n");
    }

    #[test]
    fn module_errors_carry_line_numbers() {
        let bad = "field F2\nvars 2\ncomponent 1 0\n";
        let e = parse_module(bad).unwrap_err();
        assert_eq!(e.line, 3);

        let bad = "field F2\nvars 2\ncomponent 0 0 1\nmap 0 0 3 1\n";
        let e = parse_module(bad).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("axis"));

        let bad = "field F2\nvars 2\nwidget 1\n";
        let e = parse_module(bad).unwrap_err();
        assert!(e.msg.contains("unknown keyword"));

        let bad = "vars 2\nfield F2\n";
        assert!(parse_module(bad).is_err());

        // map between components that are not both present
        let bad = "field F2\nvars 1\ncomponent 0 1\nmap 0 1 1\n";
        let e = parse_module(bad).unwrap_err();
        assert!(e.msg.contains("zero component"));

        // wrong entry count
        let bad = "field F2\nvars 1\ncomponent 0 2\ncomponent 1 1\nmap 0 1 1\n";
        let e = parse_module(bad).unwrap_err();
        assert!(e.msg.contains("needs 2 entries"));
    }

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let a = two_parameter_presentation();
        let text = serialize_matrix(&a);
        let again = parse_matrix(&text).unwrap();
        assert_eq!(again, a);
        assert_eq!(serialize_matrix(&again), text);
    }

    #[test]
    fn empty_matrix_file() {
        let text = "field Q\nvars 2\nrows 0\ncols 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.nrows(), 0);
        assert_eq!(m.ncols(), 0);
        assert_eq!(serialize_matrix(&m), text);
    }

    #[test]
    fn matrix_parser_rejects_support_violations() {
        let text = "\
field F2
vars 2
rows 1
cols 1
rowdeg 0 0
coldeg 1 0
entry 0 0 1
";
        let e = parse_matrix(text).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(e.msg.contains("support condition"));
        // a zero entry in the same position is fine
        let ok = text.replace("entry 0 0 1", "entry 0 0 0");
        assert!(parse_matrix(&ok).is_ok());
    }

    #[test]
    fn matrix_parser_rejects_duplicates_and_bad_indices() {
        let base = "field F2\nvars 1\nrows 2\ncols 1\nrowdeg 0\nrowdeg 1\ncoldeg 0\n";
        let dup = format!("{base}entry 0 0 1\nentry 0 0 1\n");
        assert!(parse_matrix(&dup).unwrap_err().msg.contains("duplicate"));
        let oob = format!("{base}entry 2 0 1\n");
        assert!(parse_matrix(&oob).unwrap_err().msg.contains("out of range"));
    }

    #[test]
    fn rational_entries_round_trip() {
        let text = "\
field Q
vars 1
rows 2
cols 2
rowdeg 0
rowdeg 1
coldeg 0
coldeg 0
entry 0 0 -1/2
entry 1 1 7
";
        let m = parse_matrix(text).unwrap();
        assert_eq!(serialize_matrix(&m), text);
    }

    #[test]
    fn kind_detection() {
        assert_eq!(detect_kind(EXAMPLE_MODULE), FileKind::Module);
        assert_eq!(
            detect_kind("field F2\nvars 2\nrows 0\ncols 0\n"),
            FileKind::Matrix
        );
        assert_eq!(detect_kind("field F2\nvars 2\n"), FileKind::Module);
    }
}
