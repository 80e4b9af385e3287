//! Stabilizer code parameters from Hermitian self-orthogonal codes, and the
//! parameter arithmetic of shortening, puncturing and taking subcodes.

use serde::{Deserialize, Serialize};

use crate::cosets::ExponentSet;
use crate::distance::{distance_from_checks, low_weight_search_outside, DistanceResult, Method};
use crate::duality::{hermitian_gram, HermitianContext};
use crate::error::{Error, Result};
use crate::matgf::GfMatrix;
use crate::subfield::{delta_for, designed_dual_distance, subfield_subcode, SubfieldCode};
use crate::tracecode::{
    evaluate_code, trace_roots, EvalPointSet, EvaluationCode, PointKind, TraceSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Shorten { coord: usize },
    Puncture { coord: usize },
    Subcode { delta_k: usize },
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Derivation::Shorten { coord } => write!(f, "shorten({coord})"),
            Derivation::Puncture { coord } => write!(f, "puncture({coord})"),
            Derivation::Subcode { delta_k } => write!(f, "subcode({delta_k})"),
        }
    }
}

/// `construction > step > ...`, with runs written compactly: successive
/// shortenings/puncturings of the last coordinate as `shorten(127..105)`,
/// successive subcodes summed.
pub fn provenance(construction: &str, steps: &[Derivation]) -> String {
    let mut s = construction.to_string();
    let mut i = 0;
    while i < steps.len() {
        let mut j = i + 1;
        let text = match steps[i] {
            Derivation::Subcode { delta_k } => {
                let mut total = delta_k;
                while let Some(Derivation::Subcode { delta_k }) = steps.get(j) {
                    total += delta_k;
                    j += 1;
                }
                Derivation::Subcode { delta_k: total }.to_string()
            }
            Derivation::Shorten { coord: first } | Derivation::Puncture { coord: first } => {
                let same = |a: &Derivation, c: usize| match (a, &steps[i]) {
                    (Derivation::Shorten { coord }, Derivation::Shorten { .. })
                    | (Derivation::Puncture { coord }, Derivation::Puncture { .. }) => {
                        *coord + 1 == c
                    }
                    _ => false,
                };
                let mut last = first;
                while let Some(next) = steps.get(j).filter(|n| same(n, last)) {
                    last = match next {
                        Derivation::Shorten { coord } | Derivation::Puncture { coord } => *coord,
                        Derivation::Subcode { .. } => unreachable!(),
                    };
                    j += 1;
                }
                let name = if matches!(steps[i], Derivation::Shorten { .. }) {
                    "shorten"
                } else {
                    "puncture"
                };
                if last == first {
                    format!("{name}({first})")
                } else {
                    format!("{name}({first}..{last})")
                }
            }
        };
        s.push_str(" > ");
        s.push_str(&text);
        i = j;
    }
    s
}

/// [[n, k, d]]_q with the distance split into designed, lower and upper bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerParams {
    pub n: usize,
    pub k: usize,
    pub distance_designed: u64,
    pub distance_lb: Option<u64>,
    pub distance_ub: Option<u64>,
    pub q: u64,
    pub construction: String,
    pub derivations: Vec<Derivation>,
}

impl StabilizerParams {
    /// Best certified lower bound on the distance.
    pub fn distance_lower(&self) -> u64 {
        self.distance_lb.unwrap_or(0).max(self.distance_designed)
    }

    /// k = n - 2(d - 1) with d the designed distance.
    pub fn is_mds(&self) -> bool {
        self.k + 2 * (self.distance_designed as usize).saturating_sub(1) == self.n
    }

    pub fn provenance(&self) -> String {
        provenance(&self.construction, &self.derivations)
    }

    pub fn absorb_distance(&mut self, r: &DistanceResult) {
        let lb = r.lb as u64;
        let ub = r.ub as u64;
        self.distance_lb = Some(self.distance_lb.map_or(lb, |x| x.max(lb)));
        self.distance_ub = Some(self.distance_ub.map_or(ub, |x| x.min(ub)));
    }
}

impl std::fmt::Display for StabilizerParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}, ", self.n, self.k)?;
        match (self.distance_lb, self.distance_ub) {
            (Some(a), Some(b)) if a == b => write!(f, "{a}")?,
            _ => write!(f, ">={}", self.distance_lower())?,
        }
        write!(f, "]]_{}", self.q)
    }
}

/// [[n, 2k - n, >= d]]_q from an [n, k] code C over GF(q^2) with C^⊥h ⊆ C.
/// `certified` records whether that inclusion was verified.
pub fn stabilizer_from_classical(
    k: usize,
    n: usize,
    d: u64,
    q: u64,
    certified: bool,
    construction: &str,
) -> Result<StabilizerParams> {
    if !certified {
        return Err(Error::NotDualContaining(construction.to_string()));
    }
    if k > n || 2 * k < n {
        return Err(Error::NotDualContaining(format!(
            "{construction}: dimension {k} cannot contain its dual at length {n}"
        )));
    }
    Ok(StabilizerParams {
        n,
        k: 2 * k - n,
        distance_designed: if k == n { 1 } else { d },
        distance_lb: None,
        distance_ub: None,
        q,
        construction: construction.to_string(),
        derivations: Vec::new(),
    })
}

/// Codes over GF(q^{2n}) from Δ(t) = {0, ..., t} at the trace roots.
#[derive(Clone, Debug)]
pub struct MdsStabilizer {
    pub params: StabilizerParams,
    pub code: EvaluationCode,
}

pub fn mds_stabilizer(spec: &TraceSpec, t: u64) -> Result<MdsStabilizer> {
    let bound = spec.trace_bound();
    if t >= bound {
        return Err(Error::BoundViolated(format!(
            "t = {t} but B(q, n) = {bound}"
        )));
    }
    let code = evaluate_code(&trace_roots(spec), &ExponentSet::consecutive(t))?;
    let ctx = HermitianContext::new(spec.big_field())?;
    let certified = hermitian_gram(code.generator(), &ctx)?.is_zero();
    let n = code.len();
    let dual_dim = n - code.dimension();
    let qn = spec.q().pow(spec.n());
    let params = stabilizer_from_classical(
        dual_dim,
        n,
        t + 2,
        qn,
        certified,
        &format!("mds(p={},s={},r={},t={t})", spec.p(), spec.s(), spec.r()),
    )?;
    Ok(MdsStabilizer { params, code })
}

/// Stabilizer code from the subfield code of Δ^σ(t).
#[derive(Clone, Debug)]
pub struct TraceStabilizer {
    pub params: StabilizerParams,
    pub code: SubfieldCode,
    pub t: usize,
    pub kind: PointKind,
    /// a_t >= B(q, n): self-orthogonality is not guaranteed a priori and was
    /// only established by the Gram check.
    pub beyond_bound: bool,
}

/// Gram check on the unreduced lift rows, then on the reduced basis.
pub fn certify_self_orthogonal(code: &SubfieldCode, ctx: &HermitianContext) -> Result<bool> {
    Ok(hermitian_gram(code.lift_matrix(), ctx)?.is_zero()
        && hermitian_gram(code.generator(), ctx)?.is_zero())
}

pub fn trace_stabilizer(spec: &TraceSpec, t: usize, kind: PointKind) -> Result<TraceStabilizer> {
    trace_stabilizer_with(spec, t, kind, false)
}

/// With `allow_beyond_bound`, indices with a_t >= B(q, n) are attempted and
/// accepted exactly when the Gram matrix vanishes.
pub fn trace_stabilizer_with(
    spec: &TraceSpec,
    t: usize,
    kind: PointKind,
    allow_beyond_bound: bool,
) -> Result<TraceStabilizer> {
    let delta = delta_for(spec, t, kind)?;
    let a_t = spec.cosets().coset(t).rep();
    let bound = spec.trace_bound();
    let beyond_bound = a_t >= bound;
    if beyond_bound && !allow_beyond_bound {
        return Err(Error::BoundViolated(format!(
            "a_{t} = {a_t} but B(q, n) = {bound}"
        )));
    }
    let points = EvalPointSet::new(spec, kind);
    let code = subfield_subcode(spec, &delta, &points)?;
    let ctx = HermitianContext::new(spec.sub_field())?;
    let label = format!(
        "trace(p={},s={},r={},t={t},points={kind})",
        spec.p(),
        spec.s(),
        spec.r()
    );
    if !certify_self_orthogonal(&code, &ctx)? {
        return Err(Error::CertificationFailed(label));
    }
    let params = stabilizer_from_classical(
        code.dual_dimension(),
        code.len(),
        code.designed_dual_distance(),
        spec.q(),
        true,
        &label,
    )?;
    Ok(TraceStabilizer {
        params,
        code,
        t,
        kind,
        beyond_bound,
    })
}

/// Minimum weight of C^⊥h \ C for a self-orthogonal C over GF(q^2).
pub fn quantum_distance(
    c: &GfMatrix,
    ctx: &HermitianContext,
    budget: u64,
) -> Result<DistanceResult> {
    let checks = c.frobenius_map(ctx.conj_exponent() as u64);
    distance_from_checks(&checks, Some(c), budget)
}

/// [`quantum_distance`], and when the budget stops it at level `lb`, a
/// randomized search for a weight-`lb` vector of C^⊥h outside C. A hit
/// closes the gap, since every lighter candidate was already ruled out.
/// The search only runs once enumeration has reached `designed`; below it
/// no such vector can exist.
pub fn certify_quantum_distance(
    c: &GfMatrix,
    ctx: &HermitianContext,
    budget: u64,
    designed: u64,
    trials: u64,
    seed: u64,
) -> Result<DistanceResult> {
    let mut res = quantum_distance(c, ctx, budget)?;
    if res.exact || (res.lb as u64) < designed || trials == 0 {
        return Ok(res);
    }
    let dual = c.frobenius_map(ctx.conj_exponent() as u64).kernel();
    if let Some(hit) = low_weight_search_outside(&dual, Some(c), res.lb, trials, seed) {
        res.ub = hit.weight;
        res.exact = hit.weight == res.lb;
        res.witness = Some(hit.codeword);
        res.method = Method::SearchPlusWitness;
    }
    Ok(res)
}

/// Minimum distance of C^⊥h (a lower bound for the quantum distance).
pub fn hermitian_dual_distance(
    c: &GfMatrix,
    ctx: &HermitianContext,
    budget: u64,
) -> Result<DistanceResult> {
    let checks = c.frobenius_map(ctx.conj_exponent() as u64);
    distance_from_checks(&checks, None, budget)
}

pub fn derive(params: &StabilizerParams, step: &Derivation) -> Result<StabilizerParams> {
    let mut out = params.clone();
    match *step {
        Derivation::Shorten { .. } => {
            return Err(Error::InvalidDerivation(
                "shortening is not a stabilizer propagation rule here".into(),
            ))
        }
        Derivation::Puncture { coord } => {
            if coord >= params.n || params.n < 2 {
                return Err(Error::InvalidDerivation(format!(
                    "coordinate {coord} of {}",
                    params.n
                )));
            }
            if params.k >= params.n {
                return Err(Error::InvalidDerivation(
                    "cannot puncture a trivial code".into(),
                ));
            }
            out.n -= 1;
            out.distance_designed = params.distance_designed.saturating_sub(1).max(1);
            out.distance_lb = params.distance_lb.map(|d| d.saturating_sub(1).max(1));
            out.distance_ub = None;
        }
        Derivation::Subcode { delta_k } => {
            if delta_k > params.k {
                return Err(Error::InvalidDerivation(format!(
                    "cannot drop {delta_k} from k = {}",
                    params.k
                )));
            }
            out.k -= delta_k;
            out.distance_ub = None;
        }
    }
    out.derivations.push(step.clone());
    Ok(out)
}

/// A classical linear code with a designed distance and, when known, a
/// generator matrix.
#[derive(Clone, Debug)]
pub struct ClassicalCode {
    pub n: usize,
    pub k: usize,
    pub d_designed: u64,
    pub q: u64,
    pub generator: Option<GfMatrix>,
    pub construction: String,
    pub derivations: Vec<Derivation>,
}

impl ClassicalCode {
    pub fn from_generator(g: &GfMatrix, d_designed: u64, construction: &str) -> Self {
        let basis = g.row_basis();
        Self {
            n: basis.cols(),
            k: basis.rows(),
            d_designed,
            q: g.field().order() as u64,
            generator: Some(basis),
            construction: construction.to_string(),
            derivations: Vec::new(),
        }
    }

    pub fn provenance(&self) -> String {
        provenance(&self.construction, &self.derivations)
    }
}

/// Classical shortening, puncturing and subcodes. When a generator matrix
/// is present the derived matrix is built as well and k is read off it.
pub fn derive_classical(code: &ClassicalCode, step: &Derivation) -> Result<ClassicalCode> {
    let mut out = code.clone();
    out.derivations.push(step.clone());
    match *step {
        Derivation::Shorten { coord } | Derivation::Puncture { coord } if coord >= code.n => {
            return Err(Error::InvalidDerivation(format!(
                "coordinate {coord} of {}",
                code.n
            )))
        }
        Derivation::Shorten { coord } => {
            if code.k == 0 {
                return Err(Error::InvalidDerivation(
                    "cannot shorten a zero code".into(),
                ));
            }
            out.n -= 1;
            out.k -= 1;
            if let Some(g) = &code.generator {
                let sh = shorten_matrix(g, coord);
                out.k = sh.rows();
                out.generator = Some(sh);
            }
        }
        Derivation::Puncture { coord } => {
            out.n -= 1;
            out.d_designed = code.d_designed.saturating_sub(1).max(1);
            if let Some(g) = &code.generator {
                let pu = g.delete_column(coord).row_basis();
                out.k = pu.rows();
                out.generator = Some(pu);
            }
        }
        Derivation::Subcode { delta_k } => {
            if delta_k > code.k {
                return Err(Error::InvalidDerivation(format!(
                    "cannot drop {delta_k} from k = {}",
                    code.k
                )));
            }
            out.k -= delta_k;
            if let Some(g) = &code.generator {
                let keep: Vec<usize> = (0..g.rows() - delta_k).collect();
                out.generator = Some(g.select_rows(&keep));
            }
        }
    }
    Ok(out)
}

/// Codewords vanishing at `coord`, with that coordinate removed.
pub fn shorten_matrix(g: &GfMatrix, coord: usize) -> GfMatrix {
    let f = g.field();
    let basis = g.row_basis();
    let Some(pivot) = (0..basis.rows()).find(|&i| !basis.get(i, coord).is_zero()) else {
        return basis.delete_column(coord);
    };
    let inv = f.inv(basis.get(pivot, coord));
    let prow: Vec<_> = basis.row(pivot).iter().map(|&x| f.mul(inv, x)).collect();
    let mut rows = Vec::with_capacity(basis.rows() - 1);
    for i in (0..basis.rows()).filter(|&i| i != pivot) {
        let c = basis.get(i, coord);
        let row: Vec<_> = basis
            .row(i)
            .iter()
            .zip(&prow)
            .map(|(&x, &y)| f.sub(x, f.mul(c, y)))
            .collect();
        rows.push(row);
    }
    GfMatrix::from_rows(f, basis.cols(), rows)
        .expect("rows have the original width")
        .delete_column(coord)
}

/// Breadth-first search for a derivation chain from one of `bases` to
/// exactly (n, k) whose designed distance is at least `d`, using puncturing
/// and subcodes, at most `max_steps` steps.
pub fn find_derivation(
    bases: &[StabilizerParams],
    n: usize,
    k: usize,
    d: u64,
    max_steps: usize,
) -> Option<StabilizerParams> {
    let mut frontier: Vec<StabilizerParams> = bases.to_vec();
    for _ in 0..=max_steps {
        if let Some(hit) = frontier
            .iter()
            .find(|p| p.n == n && p.k == k && p.distance_designed >= d)
        {
            return Some(hit.clone());
        }
        let mut next = Vec::new();
        for p in &frontier {
            if p.n > n {
                if let Ok(x) = derive(p, &Derivation::Puncture { coord: p.n - 1 }) {
                    next.push(x);
                }
            }
            if p.k > k {
                if let Ok(x) = derive(p, &Derivation::Subcode { delta_k: 1 }) {
                    next.push(x);
                }
            }
        }
        next.sort_by(|a, b| (a.n, a.k, b.distance_designed).cmp(&(b.n, b.k, a.distance_designed)));
        next.dedup_by(|a, b| a.n == b.n && a.k == b.k);
        frontier = next;
    }
    None
}

/// Result of [`search_classical_record`].
#[derive(Clone, Debug)]
pub struct ClassicalRecord {
    pub kind: PointKind,
    pub delta: ExponentSet,
    pub code: SubfieldCode,
}

impl ClassicalRecord {
    /// The dual of the subfield code, an [n, n - dim, >= d] code.
    pub fn dual_params(&self) -> (usize, usize, u64) {
        (
            self.code.len(),
            self.code.dual_dimension(),
            self.code.designed_dual_distance(),
        )
    }
}

/// Among the smallest coset-closed Δ containing a run {c, ..., c + d - 2}
/// (c = 0 only, when the point set contains 0), find the one whose subfield
/// code has the largest dual dimension. Runs are scanned for c < `max_start`.
pub fn search_classical_record(
    spec: &TraceSpec,
    kinds: &[PointKind],
    designed_d: u64,
    max_start: u64,
) -> Result<Option<ClassicalRecord>> {
    let cosets = spec.cosets();
    let modulus = cosets.modulus();
    let mut best: Option<ClassicalRecord> = None;
    for &kind in kinds {
        let points = EvalPointSet::new(spec, kind);
        let starts: Vec<u64> = if kind.contains_zero() {
            vec![0]
        } else {
            (0..max_start.min(modulus)).collect()
        };
        let mut seen: Vec<ExponentSet> = Vec::new();
        for c in starts {
            let run = ExponentSet::new((0..designed_d - 1).map(|i| (c + i) % modulus));
            let mut delta = cosets.closure(&run);
            if kind == PointKind::TraceRootsNonzero && delta.contains(0) {
                delta = delta.without(&cosets.union([0]));
            }
            if seen.contains(&delta) {
                continue;
            }
            seen.push(delta.clone());
            if designed_dual_distance(spec, &delta, kind) < designed_d {
                continue;
            }
            let code = subfield_subcode(spec, &delta, &points)?;
            let better = best
                .as_ref()
                .is_none_or(|b| code.dual_dimension() > b.code.dual_dimension());
            if better {
                best = Some(ClassicalRecord { kind, delta, code });
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{exact_distance_enum, DEFAULT_BUDGET};
    use crate::duality::hermitian_dual;

    #[test]
    fn example_128() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let ts = trace_stabilizer(&spec, 6, PointKind::TraceRoots).unwrap();
        assert_eq!(
            (ts.params.n, ts.params.k, ts.params.distance_designed),
            (128, 80, 10)
        );
        assert_eq!(ts.params.q, 2);
        assert!(!ts.beyond_bound);
        let full = trace_stabilizer(&spec, 6, PointKind::Full).unwrap();
        assert_eq!((full.params.n, full.params.k), (256, 206));
    }

    #[test]
    fn mds_family() {
        let spec = TraceSpec::new(2, 1, 2).unwrap();
        assert_eq!(spec.trace_bound(), 3);
        let ctx = HermitianContext::new(spec.big_field()).unwrap();
        for t in 0..3u64 {
            let m = mds_stabilizer(&spec, t).unwrap();
            assert_eq!(m.params.n, 8);
            assert_eq!(m.params.k, 8 - 2 * t as usize - 2);
            assert_eq!(m.params.distance_designed, t + 2);
            assert!(m.params.is_mds());
            let dual = hermitian_dual(m.code.generator(), &ctx).unwrap();
            let d = exact_distance_enum(&dual, DEFAULT_BUDGET).unwrap();
            assert_eq!(d.ub as u64, t + 2);
        }
        assert!(matches!(
            mds_stabilizer(&spec, 3),
            Err(Error::BoundViolated(_))
        ));
    }

    #[test]
    fn from_classical() {
        let p = stabilizer_from_classical(104, 128, 10, 2, true, "x").unwrap();
        assert_eq!((p.n, p.k), (128, 80));
        let p = stabilizer_from_classical(231, 256, 10, 2, true, "x").unwrap();
        assert_eq!(p.k, 206);
        let p = stabilizer_from_classical(9, 9, 5, 2, true, "x").unwrap();
        assert_eq!((p.k, p.distance_designed), (9, 1));
        assert!(matches!(
            stabilizer_from_classical(104, 128, 10, 2, false, "x"),
            Err(Error::NotDualContaining(_))
        ));
    }

    #[test]
    fn derivation_rules() {
        let base = stabilizer_from_classical(104, 128, 10, 2, true, "base").unwrap();
        let p = derive(&base, &Derivation::Puncture { coord: 0 }).unwrap();
        assert_eq!((p.n, p.k, p.distance_designed), (127, 80, 9));
        let s = derive(&base, &Derivation::Subcode { delta_k: 1 }).unwrap();
        assert_eq!((s.n, s.k, s.distance_designed), (128, 79, 10));
        assert!(matches!(
            derive(&base, &Derivation::Shorten { coord: 0 }),
            Err(Error::InvalidDerivation(_))
        ));
        assert!(derive(&base, &Derivation::Subcode { delta_k: 81 }).is_err());
        let hit = find_derivation(&[base], 127, 78, 9, 4).unwrap();
        assert_eq!(hit.derivations.len(), 3);
    }

    #[test]
    fn classical_shortening_materializes() {
        let spec = TraceSpec::new(2, 1, 2).unwrap();
        let g = crate::tracecode::evaluate_code(&trace_roots(&spec), &ExponentSet::consecutive(3))
            .unwrap();
        let c = ClassicalCode::from_generator(g.generator(), 5, "rs");
        let mut cur = c.clone();
        for i in 0..3 {
            cur = derive_classical(&cur, &Derivation::Shorten { coord: 0 }).unwrap();
            assert_eq!((cur.n, cur.k), (8 - i - 1, 4 - i - 1));
        }
        let sub = derive_classical(&c, &Derivation::Subcode { delta_k: 2 }).unwrap();
        assert_eq!(sub.generator.unwrap().rank(), 2);
        let d0 = exact_distance_enum(c.generator.as_ref().unwrap(), 1 << 20)
            .unwrap()
            .ub;
        let sh = derive_classical(&c, &Derivation::Shorten { coord: 3 }).unwrap();
        let d1 = exact_distance_enum(sh.generator.as_ref().unwrap(), 1 << 20)
            .unwrap()
            .ub;
        assert!(d1 >= d0);
    }

    #[test]
    fn quantum_distance_small() {
        let spec = TraceSpec::new(2, 2, 4).unwrap();
        let ts = trace_stabilizer(&spec, 1, PointKind::TraceRoots).unwrap();
        assert_eq!(
            (ts.params.n, ts.params.k, ts.params.distance_designed),
            (64, 58, 3)
        );
        let ctx = HermitianContext::new(spec.sub_field()).unwrap();
        let qd = quantum_distance(ts.code.generator(), &ctx, DEFAULT_BUDGET).unwrap();
        assert!(qd.exact);
        assert!(qd.ub as u64 >= 3);
    }
}
