//! Minimum distance of linear codes over small fields.
//!
//! Four engines:
//! - [`exact_distance_enum`] walks every projective message.
//! - [`brouwer_zimmermann`] enumerates low-weight messages over several
//!   (partial) information sets and stops once the lower bound meets the
//!   best weight seen.
//! - [`low_weight_search`] samples random information sets (Lee–Brickell
//!   with two-row combinations) and only ever yields upper bounds.
//! - [`distance_from_checks`] searches for small dependent column sets of
//!   a parity-check matrix; suited to codes of small codimension, and able
//!   to skip codewords of a given subcode.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matgf::GfMatrix;

/// Default work budget, in codeword (or syndrome) evaluations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Enumeration,
    BrouwerZimmermann,
    LowWeightSearch,
    SyndromeSearch,
    /// Exhaustive lower levels plus a randomized witness at the next weight.
    SearchPlusWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub lb: usize,
    pub ub: usize,
    pub exact: bool,
    pub witness: Option<Vec<Elem>>,
    pub work_spent: u64,
    pub method: Method,
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[inline]
fn axpy(f: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    if c.is_zero() {
        return;
    }
    if c == Elem::ONE {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = f.add(*d, s);
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = f.add(*d, f.mul(c, s));
        }
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Number of projective messages of weight exactly w in dimension k over GF(q).
fn projective_count(k: u64, w: u64, q: u64) -> u128 {
    if w == 0 {
        return 0;
    }
    binom(k, w).saturating_mul(((q - 1) as u128).saturating_pow(w as u32 - 1))
}

/// Whether `v` is a nonzero codeword of the row space of `g`.
pub fn verify_witness(g: &GfMatrix, v: &[Elem]) -> bool {
    v.len() == g.cols() && weight(v) > 0 && g.row_space_contains(v).unwrap_or(false)
}

/// Exhaustive search over all (q^k - 1)/(q - 1) projective messages.
pub fn exact_distance_enum(g: &GfMatrix, budget: u64) -> Result<DistanceResult> {
    let f = g.field();
    let basis = g.row_basis();
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        return Err(Error::ZeroDimensionalCode);
    }
    let q = f.order() as u64;
    let needed = ((q as u128).checked_pow(k as u32).unwrap_or(u128::MAX) - 1) / (q as u128 - 1);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut best = n + 1;
    let mut witness = Vec::new();
    let mut work = 0u64;
    let mut c = vec![Elem::ZERO; n];
    for lead in 0..k {
        c.copy_from_slice(basis.row(lead));
        let tails = k - lead - 1;
        let mut digits = vec![0u32; tails];
        loop {
            work += 1;
            let w = weight(&c);
            if w < best {
                best = w;
                witness = c.clone();
            }
            let mut carried_out = true;
            for d in 0..tails {
                let old = digits[d];
                let new = (old + 1) % q as u32;
                digits[d] = new;
                let step = f.sub(Elem(new), Elem(old));
                axpy(f, &mut c, step, basis.row(lead + 1 + d));
                if new != 0 {
                    carried_out = false;
                    break;
                }
            }
            if carried_out {
                break;
            }
        }
    }
    Ok(DistanceResult {
        lb: best,
        ub: best,
        exact: true,
        witness: Some(witness),
        work_spent: work,
        method: Method::Enumeration,
    })
}

/// Visits every projective combination of exactly `w` rows (first
/// coefficient 1). The callback returns false to stop early.
fn for_each_combination(
    f: &Field,
    rows: &GfMatrix,
    w: usize,
    visit: &mut dyn FnMut(&[Elem], &[(usize, Elem)]) -> bool,
) -> bool {
    let n = rows.cols();
    let mut partial = vec![vec![Elem::ZERO; n]; w + 1];
    let mut chosen: Vec<(usize, Elem)> = Vec::with_capacity(w);
    let nonzero: Vec<Elem> = (1..f.order()).map(Elem).collect();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &Field,
        rows: &GfMatrix,
        nonzero: &[Elem],
        start: usize,
        depth: usize,
        w: usize,
        partial: &mut Vec<Vec<Elem>>,
        chosen: &mut Vec<(usize, Elem)>,
        visit: &mut dyn FnMut(&[Elem], &[(usize, Elem)]) -> bool,
    ) -> bool {
        if depth == w {
            return visit(&partial[w], chosen);
        }
        let k = rows.rows();
        for i in start..=k - (w - depth) {
            let coeffs: &[Elem] = if depth == 0 { &nonzero[..1] } else { nonzero };
            for &c in coeffs {
                let (lo, hi) = partial.split_at_mut(depth + 1);
                hi[0].copy_from_slice(&lo[depth]);
                axpy(f, &mut hi[0], c, rows.row(i));
                chosen.push((i, c));
                let go_on = rec(
                    f,
                    rows,
                    nonzero,
                    i + 1,
                    depth + 1,
                    w,
                    partial,
                    chosen,
                    visit,
                );
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    if w == 0 || w > rows.rows() {
        return true;
    }
    rec(f, rows, &nonzero, 0, 0, w, &mut partial, &mut chosen, visit)
}

struct InfoSet {
    matrix: GfMatrix,
    rank: usize,
}

fn information_sets(basis: &GfMatrix) -> Vec<InfoSet> {
    let n = basis.cols();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let remaining: Vec<usize> = (0..n).filter(|&j| !used[j]).collect();
        if remaining.is_empty() {
            break;
        }
        let mut order = remaining.clone();
        order.extend((0..n).filter(|&j| used[j]));
        let (r, pivots) = basis.select_columns(&order).rref();
        let rank = pivots.iter().filter(|&&p| p < remaining.len()).count();
        if rank == 0 {
            break;
        }
        for &p in pivots.iter().filter(|&&p| p < remaining.len()) {
            used[order[p]] = true;
        }
        let mut inverse = vec![0usize; n];
        for (pos, &col) in order.iter().enumerate() {
            inverse[col] = pos;
        }
        let matrix = r
            .select_rows(&(0..basis.rows()).collect::<Vec<_>>())
            .select_columns(&inverse);
        sets.push(InfoSet { matrix, rank });
    }
    sets
}

/// Brouwer–Zimmermann style search. Returns an inexact result with the best
/// bounds so far if the budget would be exceeded by the next weight level.
pub fn brouwer_zimmermann(g: &GfMatrix, budget: u64) -> Result<DistanceResult> {
    let f = g.field();
    let basis = g.row_basis();
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        return Err(Error::ZeroDimensionalCode);
    }
    let q = f.order() as u64;
    let sets = information_sets(&basis);
    let mut ub = n + 1;
    let mut witness: Option<Vec<Elem>> = None;
    for s in &sets {
        for row in s.matrix.row_iter() {
            let w = weight(row);
            if w > 0 && w < ub {
                ub = w;
                witness = Some(row.to_vec());
            }
        }
    }
    let mut lb = 1usize;
    let mut work = 0u64;
    let bound_after = |w: usize| -> usize {
        sets.iter()
            .map(|s| (w + 1).saturating_sub(k - s.rank))
            .sum()
    };
    let mut w = 1usize;
    while lb < ub && w <= k {
        for s in &sets {
            let cost = projective_count(k as u64, w as u64, q);
            if work as u128 + cost > budget as u128 {
                return Ok(DistanceResult {
                    lb,
                    ub,
                    exact: false,
                    witness,
                    work_spent: work,
                    method: Method::BrouwerZimmermann,
                });
            }
            work += cost as u64;
            for_each_combination(f, &s.matrix, w, &mut |c, _| {
                let wt = weight(c);
                if wt < ub {
                    ub = wt;
                    witness = Some(c.to_vec());
                }
                true
            });
        }
        lb = lb.max(bound_after(w)).min(ub);
        w += 1;
    }
    if w > k {
        lb = ub;
    }
    Ok(DistanceResult {
        lb,
        ub,
        exact: lb == ub,
        witness,
        work_spent: work,
        method: Method::BrouwerZimmermann,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowWeightWitness {
    pub codeword: Vec<Elem>,
    pub weight: usize,
    /// Number of information sets sampled, including the successful one.
    pub trials: u64,
}

/// Randomized search for a nonzero codeword of weight at most `target_w`.
/// Each trial draws a random information set and checks every single row
/// and every pair of rows of the corresponding systematic generator.
pub fn low_weight_search(
    g: &GfMatrix,
    target_w: usize,
    trials: u64,
    seed: u64,
) -> Option<LowWeightWitness> {
    low_weight_search_outside(g, None, target_w, trials, seed)
}

/// Same as [`low_weight_search`], skipping codewords in the row space of
/// `exclude`.
pub fn low_weight_search_outside(
    g: &GfMatrix,
    exclude: Option<&GfMatrix>,
    target_w: usize,
    trials: u64,
    seed: u64,
) -> Option<LowWeightWitness> {
    let f = g.field();
    let excl = exclude.map(|e| e.rref());
    let outside = |v: &[Elem]| match &excl {
        Some((r, p)) => !in_rref_span(f, r, p, v),
        None => true,
    };
    let basis = g.row_basis();
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 || target_w == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    let nonzero: Vec<Elem> = (1..f.order()).map(Elem).collect();
    let mut buf = vec![Elem::ZERO; n];
    for trial in 1..=trials {
        perm.shuffle(&mut rng);
        let (r, _) = basis.select_columns(&perm).rref();
        let found = |v: &[Elem]| -> Option<LowWeightWitness> {
            let mut codeword = vec![Elem::ZERO; n];
            for (pos, &col) in perm.iter().enumerate() {
                codeword[col] = v[pos];
            }
            outside(&codeword).then(|| LowWeightWitness {
                weight: weight(&codeword),
                codeword,
                trials: trial,
            })
        };
        for i in 0..k {
            if weight(r.row(i)) <= target_w {
                if let Some(x) = found(r.row(i)) {
                    return Some(x);
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                for &c in &nonzero {
                    buf.copy_from_slice(r.row(i));
                    axpy(f, &mut buf, c, r.row(j));
                    // two identity positions are always nonzero
                    let w = weight(&buf);
                    if w <= target_w {
                        if let Some(x) = found(&buf) {
                            return Some(x);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Reduces `v` against an RREF matrix; true if `v` lies in its row space.
fn in_rref_span(f: &Field, rref: &GfMatrix, pivots: &[usize], v: &[Elem]) -> bool {
    let mut w = v.to_vec();
    for (i, &p) in pivots.iter().enumerate() {
        let c = w[p];
        if !c.is_zero() {
            axpy(f, &mut w, f.neg(c), rref.row(i));
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// First nonzero entry scaled to 1, with the scale: v = scale · normalized.
fn normalize(f: &Field, v: &[Elem]) -> Option<(Vec<u32>, Elem)> {
    let lead = *v.iter().find(|x| !x.is_zero())?;
    let inv = f.inv(lead);
    Some((v.iter().map(|&x| f.mul(inv, x).0).collect(), lead))
}

/// Minimum weight of a vector in ker(h) that is not in the row space of
/// `exclude` (when given). Searches weights 1, 2, ... by combining w - 1
/// columns of `h` and looking up a proportional final column.
pub fn distance_from_checks(
    h: &GfMatrix,
    exclude: Option<&GfMatrix>,
    budget: u64,
) -> Result<DistanceResult> {
    let f = h.field();
    let n = h.cols();
    let hb = h.row_basis();
    let c = hb.rows();
    if c == n {
        return Err(Error::ZeroDimensionalCode);
    }
    if let Some(e) = exclude {
        if e.contains_row_space(&hb.kernel())? {
            return Err(Error::ZeroDimensionalCode);
        }
    }
    let excl = exclude.map(|e| e.rref());
    let q = f.order() as u64;
    let cols = hb.transpose();
    let mut lookup: HashMap<Vec<u32>, Vec<(usize, Elem)>> = HashMap::new();
    let mut zero_cols = Vec::new();
    for j in 0..n {
        match normalize(f, cols.row(j)) {
            Some((key, scale)) => lookup.entry(key).or_default().push((j, scale)),
            None => zero_cols.push(j),
        }
    }
    let accept = |v: &[Elem]| -> bool {
        match &excl {
            Some((r, p)) => !in_rref_span(f, r, p, v),
            None => true,
        }
    };
    let mut work = 0u64;
    for &j in &zero_cols {
        let mut v = vec![Elem::ZERO; n];
        v[j] = Elem::ONE;
        work += 1;
        if accept(&v) {
            return Ok(DistanceResult {
                lb: 1,
                ub: 1,
                exact: true,
                witness: Some(v),
                work_spent: work,
                method: Method::SyndromeSearch,
            });
        }
    }
    let max_w = if exclude.is_some() { n } else { (c + 1).min(n) };
    let pairs = PairTable::build(f, &cols, c);
    if let Some(t) = &pairs {
        work += t.entries.len() as u64;
    }
    for w in 2..=max_w {
        // with the pair table, w - 2 columns are enumerated and the last two
        // come from a sorted lookup on the packed syndrome
        let split = pairs.is_some() && w >= 3;
        let head = if split { w - 2 } else { w - 1 };
        let cost = projective_count(n as u64, head as u64, q);
        if work as u128 + cost > budget as u128 {
            return Ok(DistanceResult {
                lb: w,
                ub: n,
                exact: false,
                witness: None,
                work_spent: work,
                method: Method::SyndromeSearch,
            });
        }
        work += cost as u64;
        let mut hit: Option<Vec<Elem>> = None;
        let build = |chosen: &[(usize, Elem)], tail: &[(usize, Elem)]| {
            let mut v = vec![Elem::ZERO; n];
            for &(i, ci) in chosen.iter().chain(tail) {
                v[i] = ci;
            }
            v
        };
        if split {
            let t = pairs.as_ref().unwrap();
            let mut neg = vec![Elem::ZERO; c];
            for_each_combination(f, &cols, head, &mut |s, chosen| {
                let last = chosen.last().map_or(0, |x| x.0);
                for (d, &x) in neg.iter_mut().zip(s) {
                    *d = f.neg(x);
                }
                let key = t.pack(&neg);
                let from = t.entries.partition_point(|e| e.key < key);
                for e in t.entries[from..].iter().take_while(|e| e.key == key) {
                    if (e.i as usize) <= last {
                        continue;
                    }
                    let v = build(
                        chosen,
                        &[(e.i as usize, Elem(e.ci)), (e.j as usize, Elem(e.cj))],
                    );
                    if accept(&v) {
                        hit = Some(v);
                        return false;
                    }
                }
                true
            });
        } else {
            for_each_combination(f, &cols, w - 1, &mut |s, chosen| {
                let Some((key, mu)) = normalize(f, s) else {
                    return true;
                };
                let last = chosen.last().map_or(0, |t| t.0);
                if let Some(list) = lookup.get(&key) {
                    for &(j, lambda) in list {
                        if j <= last {
                            continue;
                        }
                        let v = build(chosen, &[(j, f.neg(f.div(mu, lambda)))]);
                        if accept(&v) {
                            hit = Some(v);
                            return false;
                        }
                    }
                }
                true
            });
        }
        if let Some(v) = hit {
            return Ok(DistanceResult {
                lb: w,
                ub: w,
                exact: true,
                witness: Some(v),
                work_spent: work,
                method: Method::SyndromeSearch,
            });
        }
    }
    Err(Error::ZeroDimensionalCode)
}

const PAIR_TABLE_LIMIT: u128 = 1 << 23;

struct PairEntry {
    key: u64,
    i: u32,
    j: u32,
    ci: u32,
    cj: u32,
}

/// Syndromes of every weight-2 combination a·h_i + b·h_j (i < j), packed
/// into a u64 and sorted.
struct PairTable {
    bits: u32,
    entries: Vec<PairEntry>,
}

impl PairTable {
    fn build(f: &Field, cols: &GfMatrix, c: usize) -> Option<Self> {
        let q = f.order() as u64;
        let bits = 64 - (q - 1).leading_zeros();
        let n = cols.rows() as u128;
        let size = n * n.saturating_sub(1) / 2 * ((q - 1) as u128).pow(2);
        if c == 0 || c as u32 * bits > 64 || size > PAIR_TABLE_LIMIT {
            return None;
        }
        let mut t = PairTable {
            bits,
            entries: Vec::with_capacity(size as usize),
        };
        let mut s = vec![Elem::ZERO; c];
        for i in 0..cols.rows() {
            for j in i + 1..cols.rows() {
                for a in 1..q as u32 {
                    for b in 1..q as u32 {
                        for (k, x) in s.iter_mut().enumerate() {
                            *x = f.add(
                                f.mul(Elem(a), cols.get(i, k)),
                                f.mul(Elem(b), cols.get(j, k)),
                            );
                        }
                        let key = t.pack(&s);
                        t.entries.push(PairEntry {
                            key,
                            i: i as u32,
                            j: j as u32,
                            ci: a,
                            cj: b,
                        });
                    }
                }
            }
        }
        t.entries.sort_unstable_by_key(|e| e.key);
        Some(t)
    }

    fn pack(&self, s: &[Elem]) -> u64 {
        s.iter()
            .fold(0u64, |acc, x| (acc << self.bits) | x.0 as u64)
    }
}

/// Picks an engine: full enumeration when affordable, the parity-check
/// search when the codimension is the smaller side, else Brouwer–Zimmermann.
pub fn minimum_distance(g: &GfMatrix, budget: u64) -> Result<DistanceResult> {
    let k = g.rank();
    if k == 0 {
        return Err(Error::ZeroDimensionalCode);
    }
    let q = g.field().order() as u128;
    let needed = q.checked_pow(k as u32).map(|x| (x - 1) / (q - 1));
    if matches!(needed, Some(x) if x <= budget as u128) {
        return exact_distance_enum(g, budget);
    }
    if g.cols() - k < k {
        let checked = distance_from_checks(&g.kernel(), None, budget)?;
        if checked.exact {
            return Ok(checked);
        }
    }
    brouwer_zimmermann(g, budget)
}
