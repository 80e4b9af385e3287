//! Library results against brute-force oracles on small towers.

use proptest::prelude::*;
use tracecodes::cosets::{cyclotomic_cosets, trace_bound};
use tracecodes::distance::{distance_from_checks, weight};
use tracecodes::duality::HermitianContext;
use tracecodes::quantum::{provenance, quantum_distance, trace_stabilizer, Derivation};
use tracecodes::subfield::subfield_subcode;
use tracecodes::tracecode::{evaluate_code, trace_roots, EvalPointSet, PointKind, TraceSpec};
use tracecodes::{Elem, Field, GfMatrix};

/// Every F-linear combination of the rows of `g`.
fn all_codewords(g: &GfMatrix) -> Vec<Vec<Elem>> {
    let f = g.field();
    let q = f.order() as usize;
    let k = g.rows();
    let n = g.cols();
    let mut out = Vec::with_capacity(q.pow(k as u32));
    for idx in 0..q.pow(k as u32) {
        let mut v = vec![Elem::ZERO; n];
        let mut x = idx;
        for i in 0..k {
            let c = Elem((x % q) as u32);
            x /= q;
            for (vj, &gj) in v.iter_mut().zip(g.row(i)) {
                *vj = f.add(*vj, f.mul(c, gj));
            }
        }
        out.push(v);
    }
    out
}

#[test]
fn subfield_dimension_by_counting() {
    // count big-field codewords with every entry in the subfield
    let spec = TraceSpec::new(2, 1, 2).unwrap();
    let big = spec.big_field();
    for kind in [PointKind::TraceRoots, PointKind::Complement] {
        let points = EvalPointSet::new(&spec, kind);
        for t in 0..3 {
            let delta = spec.cosets().delta_sigma(t).unwrap();
            let code = evaluate_code(&points, &delta).unwrap();
            if code.dimension() > 4 {
                continue;
            }
            let inside = all_codewords(&code.generator().row_basis())
                .into_iter()
                .filter(|v| v.iter().all(|&x| big.in_subfield(x, 2)))
                .count();
            let sub = subfield_subcode(&spec, &delta, &points).unwrap();
            assert_eq!(4usize.pow(sub.dimension() as u32), inside, "{kind} t={t}");
        }
    }
}

#[test]
fn trace_roots_by_definition() {
    for (p, s, r) in [(2, 1, 2), (3, 1, 1), (2, 1, 3), (2, 2, 2)] {
        let spec = TraceSpec::new(p, s, r).unwrap();
        let f = spec.big_field();
        let q = (p as u64).pow(s);
        let expected: Vec<Elem> = (0..f.order())
            .map(Elem)
            .filter(|&x| {
                let mut acc = Elem::ZERO;
                let mut y = x;
                for _ in 0..2 * r / s {
                    acc = f.add(acc, y);
                    y = f.pow(y, q);
                }
                acc.is_zero()
            })
            .collect();
        let mut got = trace_roots(&spec).points().to_vec();
        got.sort_by_key(|e| e.0);
        assert_eq!(got, expected, "({p},{s},{r})");
        assert_eq!(got.len() as u64, spec.big_n());
    }
}

#[test]
fn quantum_distance_by_enumeration() {
    // (2,1,2): codes of length 8 over GF(4)
    let spec = TraceSpec::new(2, 1, 2).unwrap();
    let ctx = HermitianContext::new(spec.sub_field()).unwrap();
    for t in 0..=spec.max_admissible_t() {
        let ts = trace_stabilizer(&spec, t, PointKind::TraceRoots).unwrap();
        let c = ts.code.generator();
        let checks = c.frobenius_map(1);
        let dual = checks.kernel();
        let best = all_codewords(&dual)
            .into_iter()
            .filter(|v| !c.row_space_contains(v).unwrap())
            .map(|v| weight(&v))
            .min();
        let got = quantum_distance(c, &ctx, 1 << 30);
        match best {
            Some(b) => {
                let got = got.unwrap();
                assert!(got.exact);
                assert_eq!(got.lb, b, "t={t}");
                assert!(got.lb as u64 >= ts.params.distance_designed);
            }
            None => assert!(got.is_err()),
        }
    }
}

#[test]
fn bound_formula() {
    for (q, n) in [(2u64, 4u32), (3, 2), (4, 2), (3, 3), (5, 2), (7, 2)] {
        let half = (q - 1) / 2;
        let middle: u64 = (1..n).map(|i| q.pow(i)).sum();
        assert_eq!(trace_bound(q, n), q.pow(n) - half * middle - 1);
    }
}

#[test]
fn compact_provenance() {
    let steps: Vec<Derivation> = (120..128)
        .rev()
        .map(|c| Derivation::Shorten { coord: c })
        .collect();
    assert_eq!(provenance("x", &steps), "x > shorten(127..120)");
    let steps = vec![
        Derivation::Puncture { coord: 127 },
        Derivation::Subcode { delta_k: 1 },
        Derivation::Subcode { delta_k: 2 },
        Derivation::Puncture { coord: 3 },
    ];
    assert_eq!(
        provenance("x", &steps),
        "x > puncture(127) > subcode(3) > puncture(3)"
    );
}

fn small_tower() -> impl Strategy<Value = (u32, u32, u32)> {
    prop_oneof![
        Just((2, 1, 1)),
        Just((2, 1, 2)),
        Just((2, 1, 3)),
        Just((2, 1, 4)),
        Just((2, 2, 2)),
        Just((2, 2, 4)),
        Just((3, 1, 1)),
        Just((3, 1, 2)),
        Just((5, 1, 1)),
        Just((5, 1, 2)),
        Just((7, 1, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cosets_partition_and_close((p, s, r) in small_tower(), t in 0usize..40) {
        let fam = cyclotomic_cosets(p, s, r).unwrap();
        let modulus = fam.modulus();
        let mut seen = vec![0u8; modulus as usize];
        for c in fam.cosets() {
            prop_assert_eq!(c.rep(), c.members()[0]);
            prop_assert_eq!(((r / s) as usize) % c.size(), 0);
            for &m in c.members() {
                seen[m as usize] += 1;
                prop_assert!(c.members().contains(&(m * fam.base() % modulus)));
            }
        }
        prop_assert!(seen.iter().all(|&x| x == 1));
        let t = t.min(fam.len() - 1);
        let delta = fam.delta_sigma(t).unwrap();
        prop_assert!(delta.is_closed_under(fam.base(), modulus));
        let sizes: usize = (0..=t).map(|i| fam.coset(i).size()).sum();
        prop_assert_eq!(delta.len(), sizes);
    }

    #[test]
    fn syndrome_search_matches_enumeration(seed in any::<u64>(), k in 1usize..4, extra in 1usize..5) {
        use rand::{Rng, SeedableRng};
        let f = Field::new(2, 2, None).unwrap();
        let n = k + extra;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let data = (0..k * n).map(|_| Elem(rng.gen_range(0..4))).collect();
        let g = GfMatrix::new(&f, k, n, data).unwrap();
        let best = all_codewords(&g).into_iter().map(|v| weight(&v)).filter(|&w| w > 0).min();
        let got = distance_from_checks(&g.kernel(), None, u64::MAX);
        match best {
            Some(b) => {
                let got = got.unwrap();
                prop_assert!(got.exact);
                prop_assert_eq!(got.lb, b);
            }
            None => prop_assert!(got.is_err()),
        }
    }
}
