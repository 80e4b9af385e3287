//! Plain-text generator matrices.
//!
//! ```text
//! # any comment line is kept as metadata
//! # modulus 1 1 0 1 1 0 0 0 1
//! 4 5 2
//! 1 g 0 g^2 1
//! 0 1 g g g^2
//! ```
//!
//! The header is `q n k`. Over a prime field each symbol is the residue
//! `0..p-1`. Otherwise `0` is zero and `g^e` is the e-th power of the
//! field's primitive element (`1` and `g` are accepted for `g^0`, `g^1`).
//! A `# modulus c_0 ... c_m` line selects a non-default defining polynomial.

use tracecodes::{Elem, Error, Field, GfMatrix, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub generator: GfMatrix,
    /// Comment lines without the leading `#`, trimmed.
    pub metadata: Vec<String>,
}

fn symbol(f: &Field, x: Elem) -> String {
    if f.m() == 1 {
        return x.0.to_string();
    }
    match f.log(x) {
        None => "0".into(),
        Some(e) => format!("g^{e}"),
    }
}

pub fn serialize_code(g: &GfMatrix, metadata: &[String]) -> String {
    let f = g.field();
    let mut out = String::new();
    for m in metadata {
        if !m.starts_with("modulus") {
            out.push_str(&format!("# {m}\n"));
        }
    }
    let modulus: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("# modulus {}\n", modulus.join(" ")));
    out.push_str(&format!("{} {} {}\n", f.order(), g.cols(), g.rows()));
    for i in 0..g.rows() {
        let row: Vec<String> = g.row(i).iter().map(|&x| symbol(f, x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn malformed(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::MalformedFile {
        line,
        column,
        message: message.into(),
    }
}

/// q = p^m with p prime, or None.
fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut x, mut m) = (q, 0);
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    (x == 1).then_some((p as u32, m))
}

fn parse_symbol(f: &Field, tok: &str, line: usize, col: usize) -> Result<Elem> {
    if f.m() == 1 {
        let v: u32 = tok
            .parse()
            .map_err(|_| malformed(line, col, format!("bad residue {tok:?}")))?;
        if v >= f.p() {
            return Err(malformed(line, col, format!("{v} is not below {}", f.p())));
        }
        return Ok(Elem(v));
    }
    let e: u64 = match tok {
        "0" => return Ok(Elem::ZERO),
        "1" => 0,
        "g" => 1,
        _ => tok
            .strip_prefix("g^")
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| malformed(line, col, format!("bad symbol {tok:?}")))?,
    };
    Ok(f.exp(e))
}

pub fn parse_code(text: &str) -> Result<CodeFile> {
    let mut metadata = Vec::new();
    let mut modulus: Option<Vec<u32>> = None;
    let mut header: Option<(usize, Field, usize, usize)> = None;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("modulus") {
                let coeffs: std::result::Result<Vec<u32>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                modulus = Some(coeffs.map_err(|_| malformed(line, 1, "bad modulus line"))?);
            }
            metadata.push(c.to_string());
            continue;
        }
        // 1-based column of each token
        let toks: Vec<(usize, &str)> = tokens(raw).collect();
        match &header {
            None => {
                if toks.len() != 3 {
                    return Err(malformed(line, 1, "header must be `q n k`"));
                }
                let mut v = [0u64; 3];
                for (slot, &(col, t)) in v.iter_mut().zip(&toks) {
                    *slot = t
                        .parse()
                        .map_err(|_| malformed(line, col, format!("bad integer {t:?}")))?;
                }
                let (p, m) = prime_power(v[0]).ok_or_else(|| {
                    malformed(line, toks[0].0, format!("{} is not a prime power", v[0]))
                })?;
                let field = Field::new(p, m, modulus.as_deref())?;
                header = Some((line, field, v[1] as usize, v[2] as usize));
            }
            Some((_, f, n, k)) => {
                if rows.len() == *k {
                    return Err(malformed(line, 1, format!("more than {k} rows")));
                }
                if toks.len() != *n {
                    return Err(malformed(
                        line,
                        toks.get(*n).map_or(raw.len() + 1, |t| t.0),
                        format!("expected {n} symbols, found {}", toks.len()),
                    ));
                }
                let row = toks
                    .iter()
                    .map(|&(col, t)| parse_symbol(f, t, line, col))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
        }
    }
    let Some((hline, f, n, k)) = header else {
        return Err(malformed(text.lines().count().max(1), 1, "missing header"));
    };
    if rows.len() != k {
        return Err(malformed(
            hline,
            5,
            format!("header says {k} rows, found {}", rows.len()),
        ));
    }
    let generator = GfMatrix::from_rows(&f, n, rows)?;
    Ok(CodeFile {
        generator,
        metadata,
    })
}

fn tokens(raw: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in raw.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &raw[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &raw[s..]));
    }
    out.into_iter()
}
