//! Table presets t1-t6: which codes to build and the parameters printed
//! for them in the published tables, for side-by-side comparison.

use std::ops::RangeInclusive;

use serde::Serialize;
use tracecodes::distance::{minimum_distance, DistanceResult};
use tracecodes::duality::{euclidean_dual, HermitianContext};
use tracecodes::quantum::{
    certify_quantum_distance, derive_classical, find_derivation, search_classical_record,
    trace_stabilizer_with, ClassicalCode, Derivation, StabilizerParams,
};
use tracecodes::tracecode::{PointKind, TraceSpec};
use tracecodes::GfMatrix;

use crate::catalog::{now, CodeRecord, Family, ENGINE_VERSION};
use crate::CliError;

pub const PRESETS: [&str; 6] = ["t1", "t2", "t3", "t4", "t5", "t6"];

#[derive(Clone, Debug)]
pub struct Refine {
    pub budget: u64,
    /// Random information sets tried for an upper-bound witness.
    pub trials: u64,
    pub seed: u64,
    /// Skip codes whose (quantum: self-orthogonal code's) dimension exceeds this.
    pub max_codim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Printed {
    pub n: usize,
    pub k: usize,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub record: CodeRecord,
    pub printed: Option<Printed>,
    /// Self-orthogonality verified by a Gram check (stabilizer rows built
    /// from matrices).
    pub gram_certified: Option<bool>,
    pub beyond_bound: bool,
    /// Dimension of the self-orthogonal code, or of the classical code.
    pub codim: Option<usize>,
    pub distance: Option<DistanceResult>,
}

impl TableRow {
    pub fn nk_match(&self) -> Option<bool> {
        let p = self.printed.as_ref()?;
        Some(p.n == self.record.n && p.k == self.record.k)
    }

    pub fn d_match(&self) -> Option<bool> {
        Some(self.printed.as_ref()?.d == self.record.d_designed)
    }
}

/// Fixed CSV/JSON schema.
#[derive(Clone, Debug, Serialize)]
pub struct CsvRow {
    pub n: usize,
    pub k: usize,
    pub d_designed: u64,
    pub d_lb: Option<u64>,
    pub d_ub: Option<u64>,
    pub provenance: String,
}

impl From<&TableRow> for CsvRow {
    fn from(r: &TableRow) -> Self {
        CsvRow {
            n: r.record.n,
            k: r.record.k,
            d_designed: r.record.d_designed,
            d_lb: r.record.d_lb,
            d_ub: r.record.d_ub,
            provenance: r.record.provenance.clone(),
        }
    }
}

type Cells = &'static [(usize, usize, u64)];

struct QuantumBlock {
    p: u32,
    s: u32,
    r: u32,
    kind: PointKind,
    ts: RangeInclusive<usize>,
    printed: Cells,
}

const T3_64: Cells = &[
    (64, 58, 3),
    (64, 54, 4),
    (64, 50, 5),
    (64, 48, 6),
    (64, 44, 7),
    (64, 40, 8),
    (64, 36, 9),
    (64, 34, 10),
    (64, 30, 11),
    (64, 26, 12),
    (64, 22, 13),
    (64, 20, 14),
];
const T3_63: Cells = &[
    (63, 59, 3),
    (63, 55, 4),
    (63, 51, 5),
    (63, 49, 6),
    (63, 45, 7),
    (63, 41, 8),
    (63, 37, 9),
    (63, 35, 10),
    (63, 31, 11),
    (63, 27, 12),
    (63, 23, 13),
    (63, 21, 14),
];
const T3_192: Cells = &[
    (192, 186, 3),
    (192, 182, 4),
    (192, 178, 5),
    (192, 174, 6),
    (192, 170, 7),
    (192, 166, 8),
    (192, 162, 9),
    (192, 158, 10),
    (192, 154, 11),
    (192, 150, 12),
    (192, 146, 13),
    (192, 21, 14),
];
const T4_242: Cells = &[
    (242, 220, 5),
    (242, 214, 6),
    (242, 208, 7),
    (242, 202, 8),
    (242, 196, 10),
    (242, 190, 11),
    (242, 184, 12),
    (242, 178, 13),
    (242, 172, 14),
    (242, 166, 15),
    (242, 160, 16),
    (242, 154, 17),
];
const T4_243: Cells = &[
    (243, 225, 5),
    (243, 219, 6),
    (243, 213, 7),
    (243, 207, 8),
    (243, 201, 9),
    (243, 195, 11),
    (243, 189, 12),
    (243, 183, 13),
    (243, 177, 14),
    (243, 171, 15),
    (243, 165, 16),
    (243, 159, 17),
];
const T4_486: Cells = &[
    (486, 466, 5),
    (486, 460, 6),
    (486, 454, 7),
    (486, 448, 8),
    (486, 442, 9),
    (486, 436, 11),
    (486, 430, 12),
    (486, 424, 13),
    (486, 418, 14),
    (486, 412, 15),
    (486, 406, 16),
    (486, 400, 17),
];
const T5_124: Cells = &[
    (124, 108, 5),
    (124, 106, 6),
    (124, 102, 7),
    (124, 98, 8),
    (124, 94, 9),
    (124, 90, 10),
    (124, 88, 11),
    (124, 84, 12),
    (124, 80, 13),
    (124, 76, 14),
    (124, 72, 15),
    (124, 70, 16),
];
const T5_125: Cells = &[
    (125, 111, 5),
    (125, 107, 6),
    (125, 105, 7),
    (125, 101, 8),
    (125, 97, 9),
    (125, 93, 10),
    (125, 89, 11),
    (125, 87, 12),
    (125, 83, 13),
    (125, 79, 14),
    (125, 75, 15),
    (125, 71, 16),
];
const T5_500: Cells = &[
    (500, 462, 11),
    (500, 458, 12),
    (500, 454, 12),
    (500, 450, 14),
    (500, 446, 15),
    (500, 442, 16),
    (500, 438, 17),
    (500, 434, 18),
    (500, 430, 19),
    (500, 426, 20),
    (500, 422, 21),
    (500, 418, 22),
];
const T6_342: Cells = &[
    (342, 326, 5),
    (342, 322, 6),
    (342, 318, 7),
    (342, 316, 8),
    (342, 312, 9),
    (342, 308, 10),
    (342, 304, 11),
    (342, 300, 12),
    (342, 296, 13),
    (342, 292, 14),
    (342, 290, 15),
    (342, 286, 16),
    (342, 282, 17),
    (342, 278, 18),
    (342, 274, 19),
    (342, 270, 20),
];
const T6_2058: Cells = &[
    (2058, 2020, 11),
    (2058, 2016, 12),
    (2058, 2012, 12),
    (2058, 2008, 14),
    (2058, 2004, 15),
    (2058, 2000, 16),
    (2058, 1996, 17),
    (2058, 1992, 18),
    (2058, 1988, 19),
    (2058, 1984, 20),
    (2058, 1980, 21),
    (2058, 1976, 22),
    (2058, 1972, 23),
    (2058, 1968, 24),
    (2058, 1964, 25),
    (2058, 1960, 26),
];

fn blocks(preset: &str) -> Vec<QuantumBlock> {
    use PointKind::*;
    let b = |p, s, r, kind, ts, printed| QuantumBlock {
        p,
        s,
        r,
        kind,
        ts,
        printed,
    };
    match preset {
        "t3" => vec![
            b(2, 2, 4, TraceRoots, 1..=12, T3_64),
            b(2, 2, 4, TraceRootsNonzero, 1..=12, T3_63),
            b(2, 2, 4, Complement, 1..=12, T3_192),
        ],
        "t4" => vec![
            b(3, 1, 3, TraceRootsNonzero, 4..=15, T4_242),
            b(3, 1, 3, TraceRoots, 3..=14, T4_243),
            b(3, 1, 3, Complement, 3..=14, T4_486),
        ],
        "t5" => vec![
            b(5, 1, 2, TraceRootsNonzero, 4..=15, T5_124),
            b(5, 1, 2, TraceRoots, 3..=14, T5_125),
            b(5, 1, 2, Complement, 9..=20, T5_500),
        ],
        "t6" => vec![
            b(7, 1, 2, TraceRootsNonzero, 4..=19, T6_342),
            b(7, 1, 2, Complement, 9..=24, T6_2058),
        ],
        _ => Vec::new(),
    }
}

pub fn stabilizer_record(
    spec: &TraceSpec,
    t: Option<usize>,
    kind: Option<PointKind>,
    params: &StabilizerParams,
) -> CodeRecord {
    CodeRecord {
        family: Family::Stabilizer,
        p: spec.p(),
        s: spec.s(),
        r: spec.r(),
        t,
        points_kind: kind.map(|k| k.name().to_string()),
        derivations: params.derivations.clone(),
        n: params.n,
        k: params.k,
        q: params.q,
        d_designed: params.distance_designed,
        d_lb: params.distance_lb,
        d_ub: params.distance_ub,
        provenance: params.provenance(),
        timestamp: now(),
        engine_version: ENGINE_VERSION.to_string(),
    }
}

pub fn classical_record(
    spec: &TraceSpec,
    kind: Option<PointKind>,
    code: &ClassicalCode,
) -> CodeRecord {
    CodeRecord {
        family: Family::Classical,
        p: spec.p(),
        s: spec.s(),
        r: spec.r(),
        t: None,
        points_kind: kind.map(|k| k.name().to_string()),
        derivations: code.derivations.clone(),
        n: code.n,
        k: code.k,
        q: code.q,
        d_designed: code.d_designed,
        d_lb: None,
        d_ub: None,
        provenance: code.provenance(),
        timestamp: now(),
        engine_version: ENGINE_VERSION.to_string(),
    }
}

/// Exact quantum distance of the stabilizer code from self-orthogonal `c`,
/// within the refine budget.
pub fn refine_quantum(
    params: &mut StabilizerParams,
    c: &GfMatrix,
    ctx: &HermitianContext,
    refine: &Refine,
) -> Result<Option<DistanceResult>, CliError> {
    if refine.max_codim.is_some_and(|m| c.rows() > m) {
        return Ok(None);
    }
    let res = certify_quantum_distance(
        c,
        ctx,
        refine.budget,
        params.distance_designed,
        refine.trials,
        refine.seed,
    )?;
    params.absorb_distance(&res);
    Ok(Some(res))
}

fn quantum_rows(preset: &str, refine: Option<&Refine>) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();
    for block in blocks(preset) {
        let spec = TraceSpec::new(block.p, block.s, block.r)?;
        let ctx = HermitianContext::new(spec.sub_field())?;
        for (i, t) in block.ts.clone().enumerate() {
            let mut ts = trace_stabilizer_with(&spec, t, block.kind, true)?;
            let dim = ts.code.dimension();
            let distance = match refine {
                Some(rf) => refine_quantum(&mut ts.params, ts.code.generator(), &ctx, rf)?,
                None => None,
            };
            let printed = block.printed.get(i).map(|&(n, k, d)| Printed { n, k, d });
            rows.push(TableRow {
                record: stabilizer_record(&spec, Some(t), Some(block.kind), &ts.params),
                printed,
                gram_certified: Some(true),
                beyond_bound: ts.beyond_bound,
                codim: Some(dim),
                distance,
            });
        }
    }
    Ok(rows)
}

/// Classical record families: (designed d, printed base, shortening steps,
/// printed cells along the chain).
const T1_FAMILIES: [(u64, (usize, usize), usize, Cells); 3] = [
    (
        16,
        (128, 85),
        6,
        &[
            (127, 84, 16),
            (126, 83, 16),
            (125, 82, 16),
            (124, 81, 16),
            (123, 80, 16),
            (122, 79, 16),
        ],
    ),
    (
        20,
        (128, 79),
        23,
        &[
            (127, 78, 20),
            (126, 77, 20),
            (125, 76, 20),
            (124, 75, 20),
            (123, 74, 20),
            (122, 73, 20),
            (121, 72, 20),
            (120, 71, 20),
            (105, 56, 20),
        ],
    ),
    (
        22,
        (128, 75),
        20,
        &[(127, 74, 22), (126, 73, 22), (108, 55, 22)],
    ),
];

fn t1_rows(refine: Option<&Refine>) -> Result<Vec<TableRow>, CliError> {
    let spec = TraceSpec::new(2, 1, 4)?;
    let kinds = [PointKind::TraceRoots, PointKind::Complement];
    let mut rows = Vec::new();
    for (d, (bn, bk), steps, cells) in T1_FAMILIES {
        let modulus = spec.cosets().modulus();
        let Some(rec) = search_classical_record(&spec, &kinds, d, modulus)? else {
            return Err(CliError::Unreachable(format!(
                "no [{bn}, {bk}, {d}] record found"
            )));
        };
        let dual = euclidean_dual(rec.code.generator());
        let label = format!(
            "dual_subcode(p=2,s=1,r=4,points={},delta={})",
            rec.kind,
            rec.delta.len()
        );
        let mut code =
            ClassicalCode::from_generator(&dual, rec.code.designed_dual_distance(), &label);
        let printed_at = |n: usize, k: usize| {
            if (n, k) == (bn, bk) {
                return Some(Printed { n, k, d });
            }
            cells
                .iter()
                .find(|c| (c.0, c.1) == (n, k))
                .map(|&(n, k, d)| Printed { n, k, d })
        };
        for step in 0..=steps {
            if step > 0 {
                code = derive_classical(&code, &Derivation::Shorten { coord: code.n - 1 })?;
            }
            let mut record = classical_record(&spec, Some(rec.kind), &code);
            let mut distance = None;
            if let (Some(rf), Some(g)) = (refine, &code.generator) {
                if !rf.max_codim.is_some_and(|m| code.k > m) {
                    let res = minimum_distance(g, rf.budget)?;
                    record.d_lb = Some((res.lb as u64).max(code.d_designed));
                    record.d_ub = Some(res.ub as u64);
                    distance = Some(res);
                }
            }
            rows.push(TableRow {
                printed: printed_at(code.n, code.k),
                record,
                gram_certified: None,
                beyond_bound: false,
                codim: Some(code.k),
                distance,
            });
        }
    }
    Ok(rows)
}

const T2_BASES: RangeInclusive<usize> = 6..=9;
const T2_BASE_CELLS: Cells = &[(128, 80, 10), (128, 72, 11), (128, 66, 12), (128, 58, 14)];
const T2_CELLS: Cells = &[
    (128, 79, 10),
    (127, 80, 9),
    (128, 71, 11),
    (128, 65, 12),
    (128, 64, 12),
    (128, 63, 12),
    (128, 57, 14),
    (128, 56, 14),
    (128, 55, 14),
    (127, 58, 13),
    (127, 57, 13),
    (127, 56, 13),
];

fn t2_rows(refine: Option<&Refine>) -> Result<Vec<TableRow>, CliError> {
    let spec = TraceSpec::new(2, 1, 4)?;
    let ctx = HermitianContext::new(spec.sub_field())?;
    let mut bases = Vec::new();
    let mut rows = Vec::new();
    for (t, &(n, k, d)) in T2_BASES.zip(T2_BASE_CELLS) {
        let mut ts = trace_stabilizer_with(&spec, t, PointKind::TraceRoots, false)?;
        let distance = match refine {
            Some(rf) => refine_quantum(&mut ts.params, ts.code.generator(), &ctx, rf)?,
            None => None,
        };
        rows.push(TableRow {
            record: stabilizer_record(&spec, Some(t), Some(PointKind::TraceRoots), &ts.params),
            printed: Some(Printed { n, k, d }),
            gram_certified: Some(true),
            beyond_bound: ts.beyond_bound,
            codim: Some(ts.code.dimension()),
            distance,
        });
        bases.push(ts.params);
    }
    for &(n, k, d) in T2_CELLS {
        let printed = Some(Printed { n, k, d });
        let Some(hit) = find_derivation(&bases, n, k, d, 16) else {
            return Err(CliError::Unreachable(format!(
                "[[{n}, {k}, {d}]] from the t = 6..9 bases"
            )));
        };
        rows.push(TableRow {
            record: stabilizer_record(&spec, None, Some(PointKind::TraceRoots), &hit),
            printed,
            gram_certified: None,
            beyond_bound: false,
            codim: None,
            distance: None,
        });
    }
    Ok(rows)
}

pub fn run_preset(name: &str, refine: Option<&Refine>) -> Result<Vec<TableRow>, CliError> {
    match name {
        "t1" => t1_rows(refine),
        "t2" => t2_rows(refine),
        "t3" | "t4" | "t5" | "t6" => quantum_rows(name, refine),
        _ => Err(CliError::Usage(format!("unknown preset {name:?}"))),
    }
}
