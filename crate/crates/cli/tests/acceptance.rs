//! Acceptance checks 1-10, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`). Exits nonzero when a check
//! fails other than the ones listed in `KNOWN`, whose failure mode is also
//! pinned: a known check that starts passing, or fails differently, is an
//! error too.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracecodes::cosets::ExponentSet;
use tracecodes::distance::{exact_distance_enum, low_weight_search};
use tracecodes::duality::{euclidean_dual, hermitian_dual, hermitian_gram, HermitianContext};
use tracecodes::quantum::{mds_stabilizer, trace_stabilizer};
use tracecodes::subfield::{subfield_subcode, subfield_subcode_delsarte};
use tracecodes::tracecode::{
    contains_top_monomial, evaluate_code, newton_power_sums, power_sum, trace_roots, EvalPointSet,
    PointKind, TraceSpec,
};
use tracecodes_cli::presets::{run_preset, Refine, TableRow};

const AES: [u32; 9] = [1, 1, 0, 1, 1, 0, 0, 0, 1];
const LWS_SEED: u64 = 2024;

/// Criterion 8 fails on the length-63 rows only; see `check_8`.
const KNOWN: &[u32] = &[8];

struct Outcome {
    pass: bool,
    /// For a check that may fail without failing the run (stochastic ones).
    flag_only: bool,
    detail: String,
    /// Set when the failure matches the documented failure mode.
    known_mode: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            flag_only: false,
            detail: detail.into(),
            known_mode: false,
        }
    }
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

/// (2,1,4): Δ^σ(6) and the code at all of GF(256).
fn golden_full(spec: &TraceSpec) -> (usize, usize, usize, u64) {
    let delta = spec.cosets().delta_sigma(6).unwrap();
    let code = subfield_subcode(spec, &delta, &EvalPointSet::new(spec, PointKind::Full)).unwrap();
    (
        delta.len(),
        code.len(),
        code.dual_dimension(),
        code.designed_dual_distance(),
    )
}

/// (rank, surplus relation seen, dual dim, designed d, Gram zero, stabilizer n, k, d, q).
type Golden = (usize, bool, usize, u64, bool, (usize, usize, u64, u64));

fn golden_roots(spec: &TraceSpec) -> Golden {
    let delta = spec.cosets().delta_sigma(6).unwrap();
    let code = subfield_subcode(spec, &delta, &trace_roots(spec)).unwrap();
    let lifts = code.lift_matrix();
    let labels = tracecodes::subfield::trace_lift_basis(spec, &delta).unwrap();
    let rows_of = |a: u64| -> Vec<usize> {
        (0..labels.len())
            .filter(|&i| labels.labels()[i].0 == a)
            .collect()
    };
    let surplus = rows_of(1)
        .iter()
        .any(|&i| rows_of(2).iter().any(|&j| lifts.row(i) == lifts.row(j)));
    let ctx = HermitianContext::new(spec.sub_field()).unwrap();
    let gram_zero =
        ctx.conj_exponent() == 1 && hermitian_gram(code.generator(), &ctx).unwrap().is_zero();
    let st = trace_stabilizer(spec, 6, PointKind::TraceRoots)
        .unwrap()
        .params;
    (
        code.dimension(),
        surplus && lifts.rows() == code.dimension() + 1,
        code.dual_dimension(),
        code.designed_dual_distance(),
        gram_zero,
        (st.n, st.k, st.distance_designed, st.q),
    )
}

fn check_1() -> Outcome {
    let start = Instant::now();
    let spec = TraceSpec::new(2, 1, 4).unwrap();
    let got = golden_full(&spec);
    let el = start.elapsed();
    Outcome::new(
        got == (25, 256, 231, 10) && within(el, 5),
        format!(
            "|Δ^σ(6)| = {}, dual [{}, {}, >={}]_4 in {el:.2?}",
            got.0, got.1, got.2, got.3
        ),
    )
}

fn check_2() -> Outcome {
    let start = Instant::now();
    let spec = TraceSpec::new(2, 1, 4).unwrap();
    let g = golden_roots(&spec);
    let el = start.elapsed();
    let (n, k, d, q) = g.5;
    Outcome::new(
        g.0 == 24 && g.1 && g.2 == 104 && g.3 == 10 && g.4 && (n, k, d, q) == (128, 80, 10, 2) && within(el, 30),
        format!(
            "rank {}, surplus relation {}, dual dim {}, designed {}, Gram zero {}, [[{n}, {k}, >={d}]]_{q} in {el:.2?}",
            g.0, g.1, g.2, g.3, g.4
        ),
    )
}

fn check_3() -> Outcome {
    let start = Instant::now();
    let spec = TraceSpec::new(2, 1, 4).unwrap();
    let delta = spec.cosets().delta_sigma(6).unwrap();
    let code = subfield_subcode(&spec, &delta, &trace_roots(&spec)).unwrap();
    let dual = euclidean_dual(code.generator());
    let hit = low_weight_search(&dual, 10, 10_000_000, LWS_SEED);
    let el = start.elapsed();
    let mut out = match &hit {
        Some(h) => Outcome::new(
            h.weight == 10 && dual.row_space_contains(&h.codeword).unwrap() && within(el, 600),
            format!(
                "[{}, {}] code: weight {} codeword after {} trials (seed {LWS_SEED}) in {el:.2?}",
                dual.cols(),
                dual.rows(),
                h.weight,
                h.trials
            ),
        ),
        None => Outcome::new(
            false,
            format!("no weight-10 codeword in 10^7 trials ({el:.2?})"),
        ),
    };
    out.flag_only = true;
    out
}

fn check_4() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (p, s, n) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 2)] {
        let spec = TraceSpec::new(p, s, s * n).unwrap();
        let big_n = spec.big_n();
        let newton = newton_power_sums(&spec, 2 * big_n);
        for k in 1..=2 * big_n {
            let direct = power_sum(&spec, k);
            let rec = spec.big_field().from_int(newton[k as usize] as i64);
            let law = match k.cmp(&(big_n - 1)) {
                std::cmp::Ordering::Less => direct.is_zero(),
                std::cmp::Ordering::Equal => direct == tracecodes::Elem::ONE,
                std::cmp::Ordering::Greater => true,
            };
            if direct != rec || !law {
                bad.push(format!("({p},{s},{n}) k={k}"));
            }
        }
    }
    let el = start.elapsed();
    Outcome::new(
        bad.is_empty() && within(el, 60),
        format!(
            "5 towers, k up to 2N, {} disagreements {} in {el:.2?}",
            bad.len(),
            bad.join(" ")
        ),
    )
}

fn check_5() -> Outcome {
    let spec = TraceSpec::new(2, 1, 3).unwrap();
    let points = trace_roots(&spec);
    let big_n = spec.big_n();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut rank_bad = 0;
    for _ in 0..100 {
        let size = rng.gen_range(1..=big_n);
        let members: Vec<u64> = (0..size).map(|_| rng.gen_range(0..big_n)).collect();
        let delta = ExponentSet::new(members);
        let code = evaluate_code(&points, &delta).unwrap();
        if code.dimension() != delta.len() {
            rank_bad += 1;
        }
    }
    let mut top_bad = 0;
    for k in 0..=spec.n_total() - 2 {
        if contains_top_monomial(&spec, k).unwrap() != !power_sum(&spec, k).is_zero() {
            top_bad += 1;
        }
    }
    Outcome::new(
        rank_bad == 0 && top_bad == 0,
        format!(
            "rank = |Δ| failed {rank_bad}/100; top monomial vs power sum failed {top_bad}/{}",
            spec.n_total() - 1
        ),
    )
}

fn check_6() -> Outcome {
    let start = Instant::now();
    let spec = TraceSpec::new(2, 1, 2).unwrap();
    let ctx = HermitianContext::new(spec.big_field()).unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for t in 0..3u64 {
        let m = mds_stabilizer(&spec, t).unwrap();
        let included = hermitian_gram(m.code.generator(), &ctx).unwrap().is_zero();
        let dual = hermitian_dual(m.code.generator(), &ctx).unwrap();
        let d = exact_distance_enum(&dual, u64::MAX).unwrap();
        let p = &m.params;
        let good = included
            && d.exact
            && d.lb as u64 == t + 2
            && (p.n, p.k, p.distance_designed, p.q) == (8, 8 - 2 * t as usize - 2, t + 2, 4)
            && p.is_mds();
        ok &= good;
        parts.push(format!("t={t}: {} (dual d = {})", p, d.lb));
    }
    let el = start.elapsed();
    Outcome::new(
        ok && within(el, 300),
        format!("{} in {el:.2?}", parts.join(", ")),
    )
}

fn check_7() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for (p, s, n) in [(2, 1, 4), (2, 2, 2), (3, 1, 2)] {
        let spec = TraceSpec::new(p, s, s * n).unwrap();
        for kind in [PointKind::TraceRoots, PointKind::Complement] {
            let points = EvalPointSet::new(&spec, kind);
            for t in 0..=spec.max_admissible_t() {
                let delta = spec.cosets().delta_sigma(t).unwrap();
                let lifted = subfield_subcode(&spec, &delta, &points).unwrap();
                let big = evaluate_code(&points, &delta).unwrap();
                let dels = subfield_subcode_delsarte(big.generator(), spec.embedding()).unwrap();
                cases += 1;
                if !lifted.generator().same_row_space(&dels).unwrap() {
                    bad.push(format!("({p},{s},{n}) {kind} t={t}"));
                }
            }
        }
    }
    let el = start.elapsed();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{cases} (spec, points, t) cases, {} differ {} in {el:.2?}",
            bad.len(),
            bad.join(" ")
        ),
    )
}

fn check_8() -> Outcome {
    let start = Instant::now();
    let refine = Refine {
        budget: 100_000_000,
        trials: 2000,
        seed: 1,
        max_codim: Some(8),
    };
    let mut rows: Vec<TableRow> = run_preset("t3", Some(&refine))
        .unwrap()
        .into_iter()
        .filter(|r| r.record.n == 64 || r.record.n == 63)
        .collect();
    rows.extend(run_preset("t4", Some(&refine)).unwrap());
    let el = start.elapsed();

    let nk_bad = rows.iter().filter(|r| r.nk_match() != Some(true)).count();
    let gram_bad = rows
        .iter()
        .filter(|r| r.gram_certified != Some(true))
        .count();
    let small: Vec<&TableRow> = rows
        .iter()
        .filter(|r| r.codim.is_some_and(|c| c <= 8))
        .collect();
    let exact_ok = small.iter().all(|r| {
        r.distance.as_ref().is_some_and(|d| d.exact) && r.record.d_lb == Some(r.record.d_designed)
    });
    let d_bad: Vec<&TableRow> = rows.iter().filter(|r| r.d_match() != Some(true)).collect();
    // the documented failure: every length-63 row prints d one above ours,
    // and the exactly computed ones confirm ours
    let all_63_plus_one = d_bad
        .iter()
        .all(|r| r.record.n == 63 && r.printed.as_ref().unwrap().d == r.record.d_designed + 1);
    let known_mode =
        nk_bad == 0 && gram_bad == 0 && exact_ok && d_bad.len() == 12 && all_63_plus_one;
    let exact63: Vec<String> = small
        .iter()
        .filter(|r| r.record.n == 63)
        .map(|r| format!("[[63,{},{}]]", r.record.k, r.record.d_lb.unwrap_or(0)))
        .collect();
    let mut out = Outcome::new(
        nk_bad == 0 && gram_bad == 0 && exact_ok && d_bad.is_empty() && within(el, 900),
        format!(
            "{} rows: (n,k) mismatches {nk_bad}, Gram failures {gram_bad}, d mismatches {} \
             (all length 63 with printed = designed + 1: {all_63_plus_one}), {} rows with codim <= 8 \
             exact = designed: {exact_ok}; exact length-63 distances {} in {el:.2?}",
            rows.len(),
            d_bad.len(),
            small.len(),
            exact63.join(" ")
        ),
    );
    out.known_mode = known_mode;
    out
}

fn check_9() -> Outcome {
    let start = Instant::now();
    let t1 = run_preset("t1", None).unwrap();
    let t2 = run_preset("t2", None).unwrap();
    let el = start.elapsed();
    let base = &t1[0].record;
    let first = &t1[1].record;
    let base_ok = base.n == 128 && base.k >= 85 && base.d_designed >= 16;
    let first_ok = (first.n, first.k, first.d_designed) == (127, 84, 16);
    let t1_ok = t1
        .iter()
        .all(|r| r.nk_match() != Some(false) && r.d_match() != Some(false));
    let t1_printed = t1.iter().filter(|r| r.printed.is_some()).count();
    let t2_ok = t2
        .iter()
        .all(|r| r.nk_match() == Some(true) && r.d_match() == Some(true));
    Outcome::new(
        base_ok && first_ok && t1_ok && t2_ok && within(el, 600),
        format!(
            "record [{}, {}, >={}]_4, first shortening [{}, {}, >={}]; {t1_printed} printed classical rows match: {t1_ok}; \
             {} quantum rows reached: {t2_ok} in {el:.2?}",
            base.n,
            base.k,
            base.d_designed,
            first.n,
            first.k,
            first.d_designed,
            t2.len()
        ),
    )
}

fn check_10() -> Outcome {
    let start = Instant::now();
    let conway = TraceSpec::new(2, 1, 4).unwrap();
    let alt = TraceSpec::with_moduli(2, 1, 4, Some(&AES), None).unwrap();
    let a = (golden_full(&conway), golden_roots(&conway));
    let b = (golden_full(&alt), golden_roots(&alt));
    let el = start.elapsed();
    Outcome::new(
        a == b && alt.big_field().modulus() == AES && !alt.big_field().is_conway(),
        format!(
            "Conway vs x^8+x^4+x^3+x+1: identical = {} in {el:.2?}",
            a == b
        ),
    )
}

fn main() {
    // `cargo test` passes harness flags such as --nocapture; only a filter
    // listing criterion numbers is honoured
    let wanted: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let checks: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "coset/dimension golden values", check_1),
        (2, "trace-roots golden values", check_2),
        (3, "weight-10 witness", check_3),
        (4, "power-sum law", check_4),
        (5, "dimension and top-monomial properties", check_5),
        (6, "quantum MDS family", check_6),
        (7, "trace lift vs Delsarte", check_7),
        (8, "table reproduction t3/t4", check_8),
        (9, "derivation arithmetic t1/t2", check_9),
        (10, "construction invariance", check_10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in checks {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let o = check();
        let status = match (o.pass, o.flag_only) {
            (true, _) => "PASS",
            (false, true) => "FLAG",
            (false, false) => "FAIL",
        };
        println!("{status} criterion {id:>2} ({name}): {}", o.detail);
        let known = KNOWN.contains(&id);
        match (o.pass || o.flag_only, known) {
            (false, false) => unexpected.push(format!("criterion {id} failed")),
            (true, true) if !o.flag_only => {
                unexpected.push(format!("criterion {id} now passes; update KNOWN"))
            }
            (false, true) if !o.known_mode => {
                unexpected.push(format!("criterion {id} failed in an undocumented way"))
            }
            _ => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcomes: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
