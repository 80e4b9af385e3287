//! Euclidean and Hermitian duals and self-orthogonality checks.

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matgf::GfMatrix;

/// GF(p^{2e}) with the conjugation x -> x^{p^e}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianContext {
    field: Field,
    conj_exponent: u32,
}

impl HermitianContext {
    /// Requires an even extension degree.
    pub fn new(field: &Field) -> Result<Self> {
        if !field.m().is_multiple_of(2) {
            return Err(Error::InvalidDegree);
        }
        Ok(Self {
            field: field.clone(),
            conj_exponent: field.m() / 2,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conj_exponent(&self) -> u32 {
        self.conj_exponent
    }

    pub fn conj(&self, x: crate::gf::Elem) -> crate::gf::Elem {
        self.field.frobenius(x, self.conj_exponent as u64)
    }
}

/// G · conj(G)^T
pub fn hermitian_gram(g: &GfMatrix, ctx: &HermitianContext) -> Result<GfMatrix> {
    if g.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    g.matmul(&g.conj_transpose(ctx.conj_exponent as u64))
}

pub fn is_hermitian_self_orthogonal(g: &GfMatrix, ctx: &HermitianContext) -> bool {
    hermitian_gram(g, ctx).map(|m| m.is_zero()).unwrap_or(false)
}

/// Basis of {v : G v^T = 0}.
pub fn euclidean_dual(g: &GfMatrix) -> GfMatrix {
    g.kernel()
}

/// Basis of {v : Σ_j g_j conj(v_j) = 0 for every row g}.
pub fn hermitian_dual(g: &GfMatrix, ctx: &HermitianContext) -> Result<GfMatrix> {
    if g.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(g.kernel().frobenius_map(ctx.conj_exponent as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::ExponentSet;
    use crate::gf::Elem;
    use crate::tracecode::{evaluate_code, trace_roots, TraceSpec};
    use rand::{Rng, SeedableRng};

    fn gf(p: u32, m: u32) -> Field {
        Field::new(p, m, None).unwrap()
    }

    #[test]
    fn all_ones_gram() {
        let f = gf(2, 2);
        let ctx = HermitianContext::new(&f).unwrap();
        for m in [3usize, 4] {
            let g = GfMatrix::new(&f, 1, m, vec![Elem::ONE; m]).unwrap();
            let gram = hermitian_gram(&g, &ctx).unwrap();
            assert_eq!(gram.get(0, 0), f.from_int(m as i64));
        }
        assert!(is_hermitian_self_orthogonal(
            &GfMatrix::zeros(&f, 2, 5),
            &ctx
        ));
        let g = GfMatrix::new(&f, 1, 1, vec![Elem::ONE]).unwrap();
        assert!(!is_hermitian_self_orthogonal(&g, &ctx));
        assert_eq!(
            HermitianContext::new(&gf(2, 3)).unwrap_err(),
            Error::InvalidDegree
        );
    }

    #[test]
    fn monomial_rows_at_trace_roots() {
        let spec = TraceSpec::new(2, 1, 4).unwrap();
        let code = evaluate_code(&trace_roots(&spec), &ExponentSet::consecutive(14)).unwrap();
        let ctx = HermitianContext::new(spec.big_field()).unwrap();
        assert_eq!(ctx.conj_exponent(), 4);
        assert!(hermitian_gram(code.generator(), &ctx).unwrap().is_zero());
        let spec = TraceSpec::new(2, 1, 2).unwrap();
        let code = evaluate_code(&trace_roots(&spec), &ExponentSet::consecutive(1)).unwrap();
        let ctx = HermitianContext::new(spec.big_field()).unwrap();
        assert!(is_hermitian_self_orthogonal(code.generator(), &ctx));
    }

    #[test]
    fn duals() {
        let f = gf(2, 2);
        let ctx = HermitianContext::new(&f).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(rows..10);
            let data = (0..rows * cols)
                .map(|_| Elem(rng.gen_range(0..4)))
                .collect();
            let g = GfMatrix::new(&f, rows, cols, data).unwrap();
            let h = hermitian_dual(&g, &ctx).unwrap();
            assert_eq!(h.rows() + g.rank(), cols);
            // every pair (row of G, row of H) is Hermitian-orthogonal
            assert!(g.matmul(&h.conj_transpose(1)).unwrap().is_zero());
            let hh = hermitian_dual(&h, &ctx).unwrap();
            assert!(hh.same_row_space(&g).unwrap());
            let e = euclidean_dual(&g);
            assert!(g.matmul(&e.transpose()).unwrap().is_zero());
        }
        let full = GfMatrix::identity(&f, 4);
        assert_eq!(hermitian_dual(&full, &ctx).unwrap().rows(), 0);
        let zero = GfMatrix::zeros(&f, 1, 4);
        assert_eq!(hermitian_dual(&zero, &ctx).unwrap().rank(), 4);
    }
}
