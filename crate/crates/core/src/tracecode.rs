//! Trace polynomials, their roots, and evaluation codes over GF(p^{2r}).

use std::sync::Arc;

use crate::cosets::{cyclotomic_cosets, trace_bound, CosetFamily, ExponentSet};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, SubfieldEmbedding};
use crate::matgf::GfMatrix;

/// Parameters (p, s, r) with s | r together with the fields they live in.
///
/// n = r/s, q = p^s, big field GF(p^{2r}) = GF(q^{2n}), subfield GF(p^{2s}).
#[derive(Clone, Debug)]
pub struct TraceSpec {
    p: u32,
    s: u32,
    r: u32,
    big: Field,
    sub: Field,
    embedding: SubfieldEmbedding,
    cosets: Arc<CosetFamily>,
}

impl TraceSpec {
    pub fn new(p: u32, s: u32, r: u32) -> Result<Self> {
        Self::with_moduli(p, s, r, None, None)
    }

    /// Same as [`TraceSpec::new`] but with explicit moduli for the big field
    /// and/or the subfield instead of the Conway defaults.
    pub fn with_moduli(
        p: u32,
        s: u32,
        r: u32,
        big_modulus: Option<&[u32]>,
        sub_modulus: Option<&[u32]>,
    ) -> Result<Self> {
        if s == 0 || r == 0 || !r.is_multiple_of(s) {
            return Err(Error::InvalidTower { s, r });
        }
        let big = Field::new(p, 2 * r, big_modulus)?;
        let sub = Field::new(p, 2 * s, sub_modulus)?;
        if !big.has_log_tables() {
            return Err(Error::FieldTooLarge(p, 2 * r));
        }
        let embedding = SubfieldEmbedding::new(&sub, &big)?;
        let cosets = Arc::new(cyclotomic_cosets(p, s, r)?);
        Ok(Self {
            p,
            s,
            r,
            big,
            sub,
            embedding,
            cosets,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// r / s
    pub fn n(&self) -> u32 {
        self.r / self.s
    }

    /// p^s
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    /// N = q^{2n-1}, the number of trace roots.
    pub fn big_n(&self) -> u64 {
        (self.p as u64).pow(2 * self.r - self.s)
    }

    /// N^T = p^{2r}
    pub fn n_total(&self) -> u64 {
        (self.p as u64).pow(2 * self.r)
    }

    /// N^C = N^T - N
    pub fn n_complement(&self) -> u64 {
        self.n_total() - self.big_n()
    }

    pub fn big_field(&self) -> &Field {
        &self.big
    }

    pub fn sub_field(&self) -> &Field {
        &self.sub
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    pub fn cosets(&self) -> &CosetFamily {
        &self.cosets
    }

    /// B(q, n)
    pub fn trace_bound(&self) -> u64 {
        trace_bound(self.q(), self.n())
    }

    /// Largest t with a_t < B(q, n).
    pub fn max_admissible_t(&self) -> usize {
        self.cosets.max_admissible_t(self.q(), self.n())
    }

    /// tr(a) = a + a^q + ... + a^{q^{2n-1}}, as an element of the big field.
    pub fn trace(&self, a: Elem) -> Elem {
        self.big.relative_trace(a, self.s).expect("s divides 2r")
    }

    /// Exponents j with a nonzero coefficient in tr(X): 1, q, ..., q^{2n-1}.
    pub fn trace_support(&self) -> Vec<u64> {
        let q = self.q();
        (0..2 * self.n()).map(|i| q.pow(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PointKind {
    /// Z, the roots of the trace polynomial.
    #[serde(rename = "z")]
    TraceRoots,
    /// Z \ {0}
    #[serde(rename = "z_minus_zero")]
    TraceRootsNonzero,
    /// Z^T, the whole big field.
    #[serde(rename = "zt")]
    Full,
    /// Z^C, elements with nonzero trace.
    #[serde(rename = "zc")]
    Complement,
}

impl PointKind {
    pub fn name(self) -> &'static str {
        match self {
            PointKind::TraceRoots => "z",
            PointKind::TraceRootsNonzero => "z_minus_zero",
            PointKind::Full => "zt",
            PointKind::Complement => "zc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "z" => Some(PointKind::TraceRoots),
            "z_minus_zero" | "z0" => Some(PointKind::TraceRootsNonzero),
            "zt" => Some(PointKind::Full),
            "zc" => Some(PointKind::Complement),
            _ => None,
        }
    }

    pub fn contains_zero(self) -> bool {
        matches!(self, PointKind::TraceRoots | PointKind::Full)
    }
}

impl std::fmt::Display for PointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluation points in canonical order: 0 first when present, then
/// ascending discrete logarithm.
#[derive(Clone, Debug)]
pub struct EvalPointSet {
    spec: TraceSpec,
    kind: PointKind,
    points: Vec<Elem>,
}

impl EvalPointSet {
    pub fn new(spec: &TraceSpec, kind: PointKind) -> Self {
        let big = spec.big_field();
        let mut points = Vec::new();
        let keep = |a: Elem| {
            let zero_trace = spec.trace(a).is_zero();
            match kind {
                PointKind::TraceRoots | PointKind::TraceRootsNonzero => zero_trace,
                PointKind::Full => true,
                PointKind::Complement => !zero_trace,
            }
        };
        if kind.contains_zero() {
            points.push(Elem::ZERO);
        }
        for i in 0..big.order() as u64 - 1 {
            let a = big.exp(i);
            if keep(a) {
                points.push(a);
            }
        }
        Self {
            spec: spec.clone(),
            kind,
            points,
        }
    }

    pub fn spec(&self) -> &TraceSpec {
        &self.spec
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.points.first() == Some(&Elem::ZERO)
    }

    /// Discrete logs of the points, `None` for 0.
    pub fn logs(&self) -> Vec<Option<u32>> {
        let big = self.spec.big_field();
        self.points.iter().map(|&a| big.log(a)).collect()
    }
}

pub fn trace_roots(spec: &TraceSpec) -> EvalPointSet {
    EvalPointSet::new(spec, PointKind::TraceRoots)
}

pub fn complement_points(spec: &TraceSpec) -> EvalPointSet {
    EvalPointSet::new(spec, PointKind::Complement)
}

pub fn full_points(spec: &TraceSpec) -> EvalPointSet {
    EvalPointSet::new(spec, PointKind::Full)
}

/// The code spanned by ev(X^a), a in Δ, over the big field.
#[derive(Clone, Debug)]
pub struct EvaluationCode {
    points: EvalPointSet,
    delta: ExponentSet,
    generator: GfMatrix,
}

impl EvaluationCode {
    pub fn points(&self) -> &EvalPointSet {
        &self.points
    }

    pub fn delta(&self) -> &ExponentSet {
        &self.delta
    }

    /// Rows ev(X^a) for a in Δ ascending; not row reduced.
    pub fn generator(&self) -> &GfMatrix {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }
}

fn check_exponents(spec: &TraceSpec, delta: &ExponentSet) -> Result<()> {
    if delta.is_empty() {
        return Err(Error::EmptyDelta);
    }
    let max = spec.n_total() - 2;
    match delta.max() {
        Some(e) if e > max => Err(Error::ExponentOutOfRange { exponent: e, max }),
        _ => Ok(()),
    }
}

pub fn evaluate_code(points: &EvalPointSet, delta: &ExponentSet) -> Result<EvaluationCode> {
    let spec = points.spec();
    check_exponents(spec, delta)?;
    let big = spec.big_field();
    let m = points.len();
    let mut data = Vec::with_capacity(delta.len() * m);
    for &a in delta.members() {
        data.extend(points.points().iter().map(|&x| big.pow(x, a)));
    }
    let generator = GfMatrix::new(big, delta.len(), m, data)?;
    Ok(EvaluationCode {
        points: points.clone(),
        delta: delta.clone(),
        generator,
    })
}

/// A polynomial with coefficients in GF(p), stored as (exponent, coefficient)
/// with nonzero coefficients and ascending exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoly {
    p: u32,
    terms: Vec<(u64, u32)>,
}

impl PrimePoly {
    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    pub fn coefficient(&self, e: u64) -> u32 {
        self.terms
            .binary_search_by_key(&e, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        debug_assert_eq!(field.p(), self.p);
        self.terms.iter().fold(Elem::ZERO, |acc, &(e, c)| {
            field.add(acc, field.mul(field.from_int(c as i64), field.pow(x, e)))
        })
    }
}

/// The representative of X^k modulo tr(X) of degree < N.
pub fn reduce_mod_trace(spec: &TraceSpec, k: u64) -> Result<PrimePoly> {
    let max = spec.n_total() - 2;
    if k > max {
        return Err(Error::ExponentOutOfRange { exponent: k, max });
    }
    let p = spec.p() as u64;
    let n = spec.big_n();
    if k < n {
        return Ok(PrimePoly {
            p: spec.p(),
            terms: vec![(k, 1)],
        });
    }
    // lower terms of tr(X), i.e. tr(X) - X^N
    let mut lower = spec.trace_support();
    lower.pop();
    let mut coef = vec![0u64; k as usize + 1];
    coef[k as usize] = 1;
    for i in (n..=k).rev() {
        let c = coef[i as usize];
        if c == 0 {
            continue;
        }
        coef[i as usize] = 0;
        let shift = i - n;
        for &j in &lower {
            let slot = &mut coef[(shift + j) as usize];
            *slot = (*slot + p - c) % p;
        }
    }
    let terms = coef
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| (e as u64, c as u32))
        .collect();
    Ok(PrimePoly { p: spec.p(), terms })
}

/// Whether the reduced representative of X^k has a nonzero X^{N-1} term.
pub fn contains_top_monomial(spec: &TraceSpec, k: u64) -> Result<bool> {
    Ok(reduce_mod_trace(spec, k)?.coefficient(spec.big_n() - 1) != 0)
}

/// Σ_{α ∈ Z} α^k computed over the big field (0^k = 0 for k ≥ 1).
pub fn power_sum(spec: &TraceSpec, k: u64) -> Elem {
    let big = spec.big_field();
    let mut acc = Elem::ZERO;
    for i in 0..big.order() as u64 - 1 {
        let a = big.exp(i);
        if spec.trace(a).is_zero() {
            acc = big.add(acc, big.exp(i * k));
        }
    }
    if k == 0 {
        acc = big.add(acc, Elem::ONE);
    }
    acc
}

/// Power sums s_1, ..., s_kmax of the roots of tr(X) via Newton's identities,
/// as residues mod p. Index 0 of the result is unused and set to 0.
pub fn newton_power_sums(spec: &TraceSpec, kmax: u64) -> Vec<u32> {
    let p = spec.p() as u64;
    let m = spec.big_n();
    // tr(X) = X^m + Σ_i c_i X^{m-i}; c_i = 1 for i in m - {1, q, ..., q^{2n-2}}
    let mut support = spec.trace_support();
    support.pop();
    let lags: Vec<u64> = support.iter().map(|&j| m - j).collect();
    let mut s = vec![0u64; kmax as usize + 1];
    for k in 1..=kmax {
        let mut acc = 0u64;
        for &i in &lags {
            if i < k {
                acc += s[(k - i) as usize];
            } else if i == k {
                acc += k % p;
            }
        }
        s[k as usize] = (p - acc % p) % p;
    }
    s.into_iter().map(|x| x as u32).collect()
}

pub fn newton_power_sum(spec: &TraceSpec, k: u64) -> u32 {
    newton_power_sums(spec, k)[k as usize]
}
