//! Plain-text matrix files.
//!
//! Ring matrices:
//!
//! ```text
//! rq-matrix q=1 rows=1 cols=4
//! 0 1 2 3
//! ```
//!
//! Binary matrices use `binary-matrix rows=<r> cols=<c>` followed by one
//! `0`/`1` string per row. Blank lines and lines starting with `#` are skipped.

use rqcodes_core::{BinaryMatrix, BitVec, Error, Generator, Result, RingSpec, RqMatrix};

pub fn write_rq_matrix(m: &RqMatrix) -> String {
    let mut out = format!("rq-matrix q={} rows={} cols={}\n", m.ring().q(), m.rows(), m.cols());
    if m.rows() > 0 && m.cols() > 0 {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

pub fn write_binary_matrix(m: &BinaryMatrix) -> String {
    let mut out = format!("binary-matrix rows={} cols={}\n", m.rows(), m.cols());
    if m.rows() > 0 && m.cols() > 0 {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

pub fn write_generator(g: &Generator) -> String {
    match g {
        Generator::Ring(m) => write_rq_matrix(m),
        Generator::Binary(m) => write_binary_matrix(m),
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Reads `key=value` fields of a header line in the given order.
fn header_fields<const N: usize>(line: &str, tag: &str, keys: [&str; N]) -> Result<[u64; N]> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(parse_err(format!("expected a `{tag}` header")));
    }
    let mut out = [0u64; N];
    for (slot, key) in out.iter_mut().zip(keys) {
        let field = parts.next().ok_or_else(|| parse_err(format!("header is missing {key}=")))?;
        let value = field
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .ok_or_else(|| parse_err(format!("expected {key}=<n>, found {field:?}")))?;
        *slot = value.parse().map_err(|_| parse_err(format!("{key} is not a number: {value:?}")))?;
    }
    if let Some(extra) = parts.next() {
        return Err(parse_err(format!("unexpected header field {extra:?}")));
    }
    Ok(out)
}

pub fn parse_rq_matrix(text: &str) -> Result<RqMatrix> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| parse_err("empty matrix file"))?;
    let [q, rows, cols] = header_fields(header, "rq-matrix", ["q", "rows", "cols"])?;
    let ring = RingSpec::new(u32::try_from(q).map_err(|_| parse_err("q out of range"))?, None)?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
    let mut seen = 0;
    for (no, line) in lines {
        let before = entries.len();
        for tok in line.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| parse_err(format!("line {no}: not a decimal element: {tok:?}")))?;
            entries.push(ring.element(v)?);
        }
        if entries.len() - before != cols {
            return Err(parse_err(format!("line {no}: expected {cols} entries, found {}", entries.len() - before)));
        }
        seen += 1;
    }
    if seen != rows && !(cols == 0 && seen == 0) {
        return Err(parse_err(format!("expected {rows} rows, found {seen}")));
    }
    RqMatrix::new(ring, rows, cols, entries)
}

pub fn parse_binary_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut lines = content_lines(text);
    let (_, header) = lines.next().ok_or_else(|| parse_err("empty matrix file"))?;
    let [rows, cols] = header_fields(header, "binary-matrix", ["rows", "cols"])?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut out = Vec::new();
    for (no, line) in lines {
        let v = BitVec::parse(line).map_err(|e| parse_err(format!("line {no}: {e}")))?;
        if v.len() != cols {
            return Err(parse_err(format!("line {no}: expected {cols} bits, found {}", v.len())));
        }
        out.push(v);
    }
    if out.len() != rows && !(cols == 0 && out.is_empty()) {
        return Err(parse_err(format!("expected {rows} rows, found {}", out.len())));
    }
    if out.is_empty() {
        return Ok(BinaryMatrix::zeros(rows, cols));
    }
    BinaryMatrix::new(out, cols)
}

/// Parses either matrix kind, chosen by the header tag.
pub fn parse_generator(text: &str) -> Result<Generator> {
    let first = content_lines(text).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("binary-matrix") {
        parse_binary_matrix(text).map(Generator::Binary)
    } else {
        parse_rq_matrix(text).map(Generator::Ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rqcodes_core::constructions::{binary_simplex_beta, simplex_beta_generator};
    use rqcodes_core::Limits;

    #[test]
    fn ring_round_trip() {
        let g = simplex_beta_generator(2, 2, &Limits::default()).unwrap();
        let text = write_rq_matrix(&g);
        assert!(text.starts_with("rq-matrix q=2 rows=2 cols=24\n"));
        assert_eq!(parse_rq_matrix(&text).unwrap(), g);
    }

    #[test]
    fn binary_round_trip() {
        let g = binary_simplex_beta(3, &Limits::default()).unwrap();
        let text = write_binary_matrix(&g);
        assert_eq!(parse_binary_matrix(&text).unwrap(), g);
        assert_eq!(parse_generator(&text).unwrap(), Generator::Binary(g));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rq_matrix("rq-matrix q=1 rows=1 cols=2\n0 4\n").is_err());
        assert!(parse_rq_matrix("rq-matrix q=1 rows=2 cols=2\n0 1\n").is_err());
        assert!(parse_rq_matrix("rq-matrix q=1 rows=1\n0\n").is_err());
        assert!(parse_rq_matrix("matrix q=1 rows=1 cols=1\n0\n").is_err());
        assert!(parse_binary_matrix("binary-matrix rows=1 cols=3\n0101\n").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let m = parse_rq_matrix("# from a notebook\nrq-matrix q=1 rows=1 cols=2\n\n3 2\n").unwrap();
        assert_eq!(m.to_string(), "3 2");
    }
}
