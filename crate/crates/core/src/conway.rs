//! Conway polynomial table: loading, lookup, and computation.
//!
//! The shipped table lives in `data/conway.txt`, one entry per line as
//! `p m c_0 c_1 ... c_m` (coefficients low-to-high, monic). The
//! `TRACECODES_CONWAY` environment variable points the default table at a
//! different file.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly_fp;

/// Environment variable overriding the default Conway data file.
pub const CONWAY_ENV: &str = "TRACECODES_CONWAY";

const SHIPPED: &str = include_str!("../data/conway.txt");

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConwayTable {
    entries: BTreeMap<(u32, u32), Vec<u32>>,
}

impl ConwayTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| {
                        Error::ConwayData(format!("line {}: bad integer {tok:?}", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?;
            if nums.len() < 4 {
                return Err(Error::ConwayData(format!(
                    "line {}: too few fields",
                    lineno + 1
                )));
            }
            let (p, m) = (nums[0], nums[1]);
            let coeffs = nums[2..].to_vec();
            if coeffs.len() != m as usize + 1 || coeffs[m as usize] != 1 {
                return Err(Error::ConwayData(format!(
                    "line {}: expected {} monic coefficients",
                    lineno + 1,
                    m + 1
                )));
            }
            if coeffs.iter().any(|&c| c >= p) {
                return Err(Error::ConwayData(format!(
                    "line {}: coefficient out of range for p={p}",
                    lineno + 1
                )));
            }
            entries.insert((p, m), coeffs);
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConwayData(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The table compiled into the library.
    pub fn shipped() -> Self {
        Self::parse(SHIPPED).expect("shipped Conway table is well formed")
    }

    pub fn get(&self, p: u32, m: u32) -> Option<&[u32]> {
        self.entries.get(&(p, m)).map(Vec::as_slice)
    }

    pub fn insert(&mut self, p: u32, m: u32, coeffs: Vec<u32>) {
        self.entries.insert((p, m), coeffs);
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &[u32])> {
        self.entries.iter().map(|(&(p, m), c)| (p, m, c.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, m, coeffs) in self.iter() {
            out.push_str(&format!("{p} {m}"));
            for c in coeffs {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The process-wide table: the file named by `TRACECODES_CONWAY` if set,
/// otherwise the shipped data.
pub fn default_table() -> &'static ConwayTable {
    static TABLE: OnceLock<ConwayTable> = OnceLock::new();
    TABLE.get_or_init(|| match std::env::var_os(CONWAY_ENV) {
        Some(path) => ConwayTable::load(Path::new(&path))
            .unwrap_or_else(|e| panic!("cannot load {CONWAY_ENV}: {e}")),
        None => ConwayTable::shipped(),
    })
}

/// Whether `f` satisfies the Conway conditions other than minimality:
/// primitive, and compatible with every proper-subfield entry in `lower`.
pub fn is_conway_compatible(p: u32, f: &[u32], lower: &ConwayTable) -> Option<bool> {
    let m = poly_fp::degree(f)? as u32;
    if !poly_fp::is_irreducible(f, p) || !poly_fp::x_is_primitive(f, p) {
        return Some(false);
    }
    let big = (p as u128).pow(m) - 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let sub_poly = lower.get(p, d)?;
        let y = poly_fp::powmod(&[0, 1], big / ((p as u128).pow(d) - 1), f, p);
        // Horner evaluation of the subfield polynomial at y, modulo f.
        let mut acc: Vec<u32> = Vec::new();
        for &c in sub_poly.iter().rev() {
            acc = poly_fp::mulmod(&acc, &y, f, p);
            acc = poly_fp::sub(&acc, &[(p - c) % p], p);
        }
        if !poly_fp::rem(&acc, f, p).is_empty() {
            return Some(false);
        }
    }
    Some(true)
}

/// Searches the Conway ordering for the least compatible primitive
/// polynomial of degree `m`. Entries for all proper divisors of `m` must be
/// present in `lower`.
pub fn compute_conway(p: u32, m: u32, lower: &ConwayTable) -> Option<Vec<u32>> {
    let total = (p as u128).pow(m);
    for counter in 0..total {
        // digits[j] is the Conway-order symbol attached to X^j; the symbol of
        // X^{m-1} is the most significant.
        let mut digits = vec![0u32; m as usize];
        let mut c = counter;
        for j in 0..m as usize {
            digits[j] = (c % p as u128) as u32;
            c /= p as u128;
        }
        if m >= 2 && digits[0] == 0 {
            continue;
        }
        let mut f: Vec<u32> = (0..m as usize)
            .map(|j| {
                if (m as usize - j).is_multiple_of(2) {
                    digits[j]
                } else {
                    (p - digits[j]) % p
                }
            })
            .collect();
        f.push(1);
        if is_conway_compatible(p, &f, lower)? {
            return Some(f);
        }
    }
    None
}
