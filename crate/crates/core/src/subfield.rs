//! Trace lifts and subfield-subcodes over GF(p^{2s}).

use crate::cosets::ExponentSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, SubfieldEmbedding};
use crate::matgf::GfMatrix;
use crate::tracecode::{EvalPointSet, PointKind, TraceSpec};

/// Sparse polynomial over the big field, terms sorted by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    terms: Vec<(u64, Elem)>,
}

impl SparsePoly {
    pub fn new(mut terms: Vec<(u64, Elem)>) -> Self {
        terms.retain(|t| !t.1.is_zero());
        terms.sort_unstable_by_key(|t| t.0);
        Self { terms }
    }

    pub fn terms(&self) -> &[(u64, Elem)] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.0).collect()
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, &(e, c)| {
            field.add(acc, field.mul(c, field.pow(x, e)))
        })
    }

    /// f^{p^k} as a function on GF(p^m), exponents reduced mod p^m - 1.
    /// Exponents must lie in [0, p^m - 2].
    pub fn frobenius(&self, field: &Field, k: u64) -> Self {
        let modulus = field.order() as u64 - 1;
        let mult = crate::gf::pow_mod(field.p() as u64, k, modulus);
        Self::new(
            self.terms
                .iter()
                .map(|&(e, c)| (e * mult % modulus, field.frobenius(c, k)))
                .collect(),
        )
    }
}

/// Basis 𝒯_a(β_a^l X^a) of the polynomial functions with exponents in a
/// coset-closed Δ that evaluate into GF(p^{2s}).
#[derive(Clone, Debug)]
pub struct TraceLiftBasis {
    delta: ExponentSet,
    elements: Vec<SparsePoly>,
    /// (coset representative a, l) for each element
    labels: Vec<(u64, usize)>,
}

impl TraceLiftBasis {
    pub fn delta(&self) -> &ExponentSet {
        &self.delta
    }

    pub fn elements(&self) -> &[SparsePoly] {
        &self.elements
    }

    pub fn labels(&self) -> &[(u64, usize)] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The default β for a coset of size i: g^{(p^{2r}-1)/(p^{2si}-1)}, a
/// generator of GF(p^{2si})^* inside the big field.
pub fn default_beta(spec: &TraceSpec, coset_size: usize) -> Elem {
    let big = spec.big_field();
    let sub_order = (spec.p() as u64).pow(2 * spec.s() * coset_size as u32) - 1;
    big.exp((big.order() as u64 - 1) / sub_order)
}

pub fn trace_lift_basis(spec: &TraceSpec, delta: &ExponentSet) -> Result<TraceLiftBasis> {
    trace_lift_basis_with_beta(spec, delta, |i| default_beta(spec, i))
}

/// As [`trace_lift_basis`] with a caller-chosen primitive element of
/// GF(p^{2s·i}) for each coset size i.
pub fn trace_lift_basis_with_beta(
    spec: &TraceSpec,
    delta: &ExponentSet,
    beta: impl Fn(usize) -> Elem,
) -> Result<TraceLiftBasis> {
    let cosets = spec.cosets();
    if !cosets.is_union_of_cosets(delta) {
        return Err(Error::DeltaNotCosetClosed);
    }
    let big = spec.big_field();
    let modulus = cosets.modulus();
    let base = cosets.base();
    let frob_k = 2 * spec.s() as u64;
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    for t in cosets.indices_in(delta) {
        let coset = cosets.coset(t);
        let a = coset.rep();
        if a == 0 {
            elements.push(SparsePoly::new(vec![(0, Elem::ONE)]));
            labels.push((0, 0));
            continue;
        }
        let i_a = coset.size();
        let b = beta(i_a);
        for l in 0..i_a {
            let mut coeff = big.pow(b, l as u64);
            let mut e = a;
            let mut terms = Vec::with_capacity(i_a);
            for _ in 0..i_a {
                terms.push((e, coeff));
                coeff = big.frobenius(coeff, frob_k);
                e = e * base % modulus;
            }
            elements.push(SparsePoly::new(terms));
            labels.push((a, l));
        }
    }
    Ok(TraceLiftBasis {
        delta: delta.clone(),
        elements,
        labels,
    })
}

/// Evaluation code over GF(p^{2s}) spanned by the trace-lift basis.
#[derive(Clone, Debug)]
pub struct SubfieldCode {
    points_kind: PointKind,
    delta: ExponentSet,
    lifts: GfMatrix,
    basis: GfMatrix,
    designed_dual_distance: u64,
}

impl SubfieldCode {
    pub fn points_kind(&self) -> PointKind {
        self.points_kind
    }

    pub fn delta(&self) -> &ExponentSet {
        &self.delta
    }

    /// Evaluations of the trace-lift basis, one row per basis polynomial.
    pub fn lift_matrix(&self) -> &GfMatrix {
        &self.lifts
    }

    /// Row-reduced generator matrix.
    pub fn generator(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.lifts.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.cols() == 0
    }

    /// |Δ|, the bound on the dimension.
    pub fn designed_dim_bound(&self) -> usize {
        self.delta.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn dual_dimension(&self) -> usize {
        self.len() - self.dimension()
    }

    /// BCH-type lower bound on the minimum distance of the dual code.
    pub fn designed_dual_distance(&self) -> u64 {
        self.designed_dual_distance
    }

    pub fn embedded_generator(&self, emb: &SubfieldEmbedding) -> GfMatrix {
        self.basis.map_into(emb.sup(), |x| emb.embed(x))
    }
}

/// Lower bound on the dual distance of any code whose big-field span is
/// the evaluation code of Δ at the given points.
///
/// With 0 among the points only the run 0, 1, ..., b-1 counts; otherwise
/// any cyclic run of consecutive exponents does.
pub fn designed_dual_distance(spec: &TraceSpec, delta: &ExponentSet, kind: PointKind) -> u64 {
    let run = if kind.contains_zero() {
        delta.initial_run()
    } else {
        delta.longest_cyclic_run(spec.n_total() - 1)
    };
    run + 1
}

/// Δ^σ(t), without the coset {0} for the point set Z \ {0}.
pub fn delta_for(spec: &TraceSpec, t: usize, kind: PointKind) -> Result<ExponentSet> {
    let cosets = spec.cosets();
    cosets.delta_sigma(t)?;
    Ok(match kind {
        PointKind::TraceRootsNonzero => cosets.union(1..=t),
        _ => cosets.union(0..=t),
    })
}

pub fn subfield_subcode(
    spec: &TraceSpec,
    delta: &ExponentSet,
    points: &EvalPointSet,
) -> Result<SubfieldCode> {
    let basis = trace_lift_basis(spec, delta)?;
    subfield_subcode_from_basis(spec, &basis, points)
}

pub fn subfield_subcode_from_basis(
    spec: &TraceSpec,
    basis: &TraceLiftBasis,
    points: &EvalPointSet,
) -> Result<SubfieldCode> {
    let big = spec.big_field();
    let emb = spec.embedding();
    let m = points.len();
    let mut data = Vec::with_capacity(basis.len() * m);
    for f in basis.elements() {
        for &x in points.points() {
            let y = f.eval(big, x);
            let y = emb
                .try_project(y)
                .expect("trace lifts evaluate into the subfield");
            data.push(y);
        }
    }
    let lifts = GfMatrix::new(spec.sub_field(), basis.len(), m, data)?;
    let reduced = lifts.row_basis();
    Ok(SubfieldCode {
        points_kind: points.kind(),
        delta: basis.delta().clone(),
        designed_dual_distance: designed_dual_distance(spec, basis.delta(), points.kind()),
        lifts,
        basis: reduced,
    })
}

/// Rows Tr(b_i h) for each row h of `h` and each b_i in {1, g, ..., g^{d-1}},
/// where d = [sup : sub] and g is the primitive element of the big field.
pub fn trace_rows(h: &GfMatrix, emb: &SubfieldEmbedding) -> GfMatrix {
    let big = emb.sup();
    let d = (big.m() / emb.sub().m()) as usize;
    let cols = h.cols();
    let mut data = Vec::with_capacity(h.rows() * d * cols);
    for row in h.row_iter() {
        for i in 0..d {
            let b = big.exp(i as u64);
            data.extend(row.iter().map(|&x| emb.trace(big.mul(b, x))));
        }
    }
    GfMatrix::new(emb.sub(), h.rows() * d, cols, data).expect("shape is consistent")
}

/// C ∩ GF(p^{m'})^n computed as the dual of the trace code of C^⊥.
pub fn subfield_subcode_delsarte(
    generator: &GfMatrix,
    emb: &SubfieldEmbedding,
) -> Result<GfMatrix> {
    if generator.field() != emb.sup() {
        return Err(Error::FieldMismatch);
    }
    let h = generator.kernel();
    let traced = trace_rows(&h, emb);
    Ok(traced.kernel().row_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tracecode::{evaluate_code, full_points, trace_roots};

    #[test]
    fn lift_examples() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let delta = spec.cosets().delta_sigma(2).unwrap();
        let basis = trace_lift_basis(&spec, &delta).unwrap();
        assert_eq!(basis.len(), 9);
        let lifts_of = |a: u64| -> Vec<Vec<u64>> {
            basis
                .elements()
                .iter()
                .zip(basis.labels())
                .filter(|(_, l)| l.0 == a)
                .map(|(f, _)| f.exponents())
                .collect()
        };
        assert_eq!(lifts_of(0), vec![vec![0]]);
        assert_eq!(lifts_of(1)[0], vec![1, 4, 16, 64]);
        assert_eq!(lifts_of(2)[0], vec![2, 8, 32, 128]);
        // the l = 0 lift has all coefficients 1
        let f = &basis.elements()[1];
        assert!(f.terms().iter().all(|t| t.1 == Elem::ONE));
    }

    #[test]
    fn lifts_are_frobenius_fixed() {
        for (p, s, r, t) in [(2, 1, 4, 8), (3, 1, 2, 6), (2, 2, 4, 5)] {
            let spec = TraceSpec::new(p, s, r).unwrap();
            let delta = spec.cosets().delta_sigma(t).unwrap();
            let basis = trace_lift_basis(&spec, &delta).unwrap();
            assert_eq!(basis.len(), delta.len());
            for f in basis.elements() {
                assert_eq!(&f.frobenius(spec.big_field(), 2 * s as u64), f);
            }
        }
    }

    #[test]
    fn rejects_open_delta() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let err = trace_lift_basis(&spec, &ExponentSet::new([0, 1, 4])).unwrap_err();
        assert_eq!(err, Error::DeltaNotCosetClosed);
    }

    #[test]
    fn trace_root_relation() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let z = trace_roots(&spec);
        let delta = spec.cosets().delta_sigma(6).unwrap();
        let code = subfield_subcode(&spec, &delta, &z).unwrap();
        assert_eq!(code.designed_dim_bound(), 25);
        assert_eq!(code.dimension(), 24);
        assert_eq!(code.dual_dimension(), 104);
        assert_eq!(code.designed_dual_distance(), 10);
        let lifts = code.lift_matrix();
        // rows 1 and 5 are 𝒯_1(X) and 𝒯_2(X); their sum is tr(X)
        assert_eq!(lifts.row(1), lifts.row(5));
        let full = subfield_subcode(&spec, &delta, &full_points(&spec)).unwrap();
        assert_eq!(full.dimension(), 25);
        assert_eq!(full.dual_dimension(), 231);
    }

    #[test]
    fn rows_lie_in_big_code() {
        let spec = TraceSpec::new(3, 1, 2).unwrap();
        let z = trace_roots(&spec);
        let delta = spec.cosets().delta_sigma(3).unwrap();
        let code = subfield_subcode(&spec, &delta, &z).unwrap();
        let big = evaluate_code(&z, &delta).unwrap();
        let embedded = code.embedded_generator(spec.embedding());
        assert!(big.generator().contains_row_space(&embedded).unwrap());
        assert!(code.dimension() <= code.designed_dim_bound());
    }

    #[test]
    fn delsarte_agrees() {
        for (p, s, r) in [(2, 1, 4), (3, 1, 2), (2, 2, 4)] {
            let spec = TraceSpec::new(p, s, r).unwrap();
            for kind in [PointKind::TraceRoots, PointKind::Complement] {
                let pts = EvalPointSet::new(&spec, kind);
                for t in [1, spec.max_admissible_t()] {
                    let delta = delta_for(&spec, t, kind).unwrap();
                    let code = subfield_subcode(&spec, &delta, &pts).unwrap();
                    let big = evaluate_code(&pts, &delta).unwrap();
                    let del = subfield_subcode_delsarte(big.generator(), spec.embedding()).unwrap();
                    assert!(del.same_row_space(code.generator()).unwrap());
                }
            }
        }
    }

    #[test]
    fn beta_choice_is_irrelevant() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let z = trace_roots(&spec);
        let delta = spec.cosets().delta_sigma(6).unwrap();
        let a = subfield_subcode(&spec, &delta, &z).unwrap();
        // β^7 is again primitive in GF(2^{2i}) for i in {1, 2, 4}
        let basis = trace_lift_basis_with_beta(&spec, &delta, |i| {
            spec.big_field().pow(default_beta(&spec, i), 7)
        })
        .unwrap();
        let b = subfield_subcode_from_basis(&spec, &basis, &z).unwrap();
        assert!(a.generator().same_row_space(b.generator()).unwrap());
    }

    #[test]
    fn delsarte_degenerate_cases() {
        let spec = TraceSpec::new(2, 1, 2).unwrap();
        let emb = spec.embedding();
        let big = spec.big_field();
        let full = GfMatrix::identity(big, 5);
        assert_eq!(subfield_subcode_delsarte(&full, emb).unwrap().rank(), 5);
        let zero = GfMatrix::zeros(big, 1, 5);
        assert_eq!(subfield_subcode_delsarte(&zero, emb).unwrap().rank(), 0);
    }
}
