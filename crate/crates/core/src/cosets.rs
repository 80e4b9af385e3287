//! Cyclotomic cosets of Z/(p^{2r} - 1) under multiplication by p^{2s}.
//!
//! Cosets are represented by their minimum element and ordered by it, so
//! `reps()[t]` is the t-th representative a_t with a_0 = 0. The singleton
//! {0} is kept as its own coset.

use crate::error::{Error, Result};

/// A set of exponents in [0, p^{2r} - 2], kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExponentSet {
    members: Vec<u64>,
    closed_under_base: bool,
}

impl ExponentSet {
    pub fn new(members: impl IntoIterator<Item = u64>) -> Self {
        let mut members: Vec<u64> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self {
            members,
            closed_under_base: false,
        }
    }

    /// {0, 1, ..., t}
    pub fn consecutive(t: u64) -> Self {
        Self::new(0..=t)
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn max(&self) -> Option<u64> {
        self.members.last().copied()
    }

    /// Set when the set was assembled from whole cosets.
    pub fn closed_under_base(&self) -> bool {
        self.closed_under_base
    }

    pub fn is_closed_under(&self, base: u64, modulus: u64) -> bool {
        self.members
            .iter()
            .all(|&x| self.contains(x * base % modulus))
    }

    pub fn without(&self, other: &ExponentSet) -> Self {
        Self {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| !other.contains(x))
                .collect(),
            closed_under_base: self.closed_under_base && other.closed_under_base,
        }
    }

    /// Length of the run 0, 1, ..., b-1 contained in the set.
    pub fn initial_run(&self) -> u64 {
        self.members
            .iter()
            .enumerate()
            .take_while(|&(i, &x)| x == i as u64)
            .count() as u64
    }

    /// Longest run of consecutive residues mod `modulus`, wrapping around.
    pub fn longest_cyclic_run(&self, modulus: u64) -> u64 {
        if self.members.is_empty() {
            return 0;
        }
        if self.members.len() as u64 >= modulus {
            return modulus;
        }
        let mut best = 0u64;
        let mut cur = 0u64;
        let mut prev: Option<u64> = None;
        for &x in &self.members {
            cur = match prev {
                Some(p) if x == p + 1 => cur + 1,
                _ => 1,
            };
            best = best.max(cur);
            prev = Some(x);
        }
        // join the tail run ending at modulus-1 with the head run at 0
        if self.contains(0) && self.contains(modulus - 1) {
            let head = self.initial_run();
            let tail = self
                .members
                .iter()
                .rev()
                .enumerate()
                .take_while(|&(i, &x)| x == modulus - 1 - i as u64)
                .count() as u64;
            best = best.max(head + tail);
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    rep: u64,
    members: Vec<u64>,
}

impl Coset {
    pub fn rep(&self) -> u64 {
        self.rep
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The minimal cyclotomic cosets of {0, ..., modulus - 1} under x -> base·x.
#[derive(Clone, Debug)]
pub struct CosetFamily {
    modulus: u64,
    base: u64,
    cosets: Vec<Coset>,
    index_of: Vec<u32>,
}

/// Cosets of Z/(p^{2r} - 1) under multiplication by p^{2s}; requires s | r.
pub fn cyclotomic_cosets(p: u32, s: u32, r: u32) -> Result<CosetFamily> {
    if s == 0 || r == 0 || !r.is_multiple_of(s) {
        return Err(Error::InvalidTower { s, r });
    }
    if !crate::poly_fp::is_prime(p as u64) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    let modulus = (p as u64)
        .checked_pow(2 * r)
        .ok_or(Error::FieldTooLarge(p, 2 * r))?
        - 1;
    let base = (p as u64).pow(2 * s) % modulus.max(1);
    Ok(CosetFamily::new(modulus, base))
}

impl CosetFamily {
    pub fn new(modulus: u64, base: u64) -> Self {
        let mut index_of = vec![u32::MAX; modulus as usize];
        let mut cosets = Vec::new();
        for x in 0..modulus {
            if index_of[x as usize] != u32::MAX {
                continue;
            }
            let idx = cosets.len() as u32;
            let mut members = Vec::new();
            let mut y = x;
            loop {
                index_of[y as usize] = idx;
                members.push(y);
                y = (y as u128 * base as u128 % modulus as u128) as u64;
                if y == x {
                    break;
                }
            }
            members.sort_unstable();
            cosets.push(Coset { rep: x, members });
        }
        Self {
            modulus,
            base,
            cosets,
            index_of,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn coset(&self, t: usize) -> &Coset {
        &self.cosets[t]
    }

    /// a_0 = 0 < a_1 < ... < a_z
    pub fn reps(&self) -> Vec<u64> {
        self.cosets.iter().map(|c| c.rep).collect()
    }

    /// Index t of the coset containing x.
    pub fn index_of(&self, x: u64) -> usize {
        self.index_of[(x % self.modulus) as usize] as usize
    }

    /// The union of the cosets with the given indices.
    pub fn union(&self, indices: impl IntoIterator<Item = usize>) -> ExponentSet {
        let mut set = ExponentSet::new(
            indices
                .into_iter()
                .flat_map(|t| self.cosets[t].members.iter().copied()),
        );
        set.closed_under_base = true;
        set
    }

    /// Δ^σ(t): the union of the first t + 1 cosets.
    pub fn delta_sigma(&self, t: usize) -> Result<ExponentSet> {
        if t >= self.cosets.len() {
            return Err(Error::IndexOutOfRange {
                index: t,
                max: self.cosets.len() - 1,
            });
        }
        Ok(self.union(0..=t))
    }

    /// The smallest union of cosets containing `set`.
    pub fn closure(&self, set: &ExponentSet) -> ExponentSet {
        let mut idx: Vec<usize> = set.members().iter().map(|&x| self.index_of(x)).collect();
        idx.sort_unstable();
        idx.dedup();
        self.union(idx)
    }

    pub fn is_union_of_cosets(&self, set: &ExponentSet) -> bool {
        set.members().iter().all(|&x| x < self.modulus)
            && set.is_closed_under(self.base, self.modulus)
    }

    /// Indices of the cosets making up a coset-closed set.
    pub fn indices_in(&self, set: &ExponentSet) -> Vec<usize> {
        let mut idx: Vec<usize> = set.members().iter().map(|&x| self.index_of(x)).collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }

    /// Largest t with a_t < trace_bound(q, n). Always at least 0.
    pub fn max_admissible_t(&self, q: u64, n: u32) -> usize {
        let b = trace_bound(q, n);
        self.cosets.iter().rposition(|c| c.rep < b).unwrap_or(0)
    }
}

/// q^n − ⌊(q−1)/2⌋(q^{n−1} + ... + q) − 1
pub fn trace_bound(q: u64, n: u32) -> u64 {
    let half = (q - 1) / 2;
    let middle: u64 = (1..n).map(|i| q.pow(i)).sum();
    q.pow(n) - half * middle - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orbits by brute force: x ~ y iff y = base^i x for some i.
    fn orbit_oracle(modulus: u64, base: u64, x: u64) -> Vec<u64> {
        let mut out: Vec<u64> = (0..64)
            .scan(x, |y, _| {
                let cur = *y;
                *y = *y * base % modulus;
                Some(cur)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn small_field_cosets() {
        let fam = cyclotomic_cosets(2, 1, 4).unwrap();
        assert_eq!(fam.modulus(), 255);
        assert_eq!(fam.base(), 4);
        assert_eq!(fam.coset(0).members(), &[0]);
        assert_eq!(fam.coset(1).members(), &[1, 4, 16, 64]);
        let c5 = fam.coset(fam.index_of(5));
        assert_eq!(c5.members(), &[5, 20, 65, 80]);
        assert_eq!(fam.coset(fam.index_of(3)).members(), &[3, 12, 48, 192]);
        assert_eq!(fam.coset(fam.index_of(6)).members(), &[6, 24, 96, 129]);
        assert_eq!(&fam.reps()[..8], &[0, 1, 2, 3, 5, 6, 7, 9]);
        for c in fam.cosets() {
            assert_eq!(c.members(), orbit_oracle(255, 4, c.rep()).as_slice());
        }
    }

    #[test]
    fn partition_and_size_divisibility() {
        for (p, s, r) in [
            (2, 1, 4),
            (2, 2, 4),
            (3, 1, 2),
            (3, 1, 3),
            (5, 1, 2),
            (7, 1, 2),
            (2, 1, 3),
        ] {
            let fam = cyclotomic_cosets(p, s, r).unwrap();
            let modulus = fam.modulus();
            let mut seen = vec![0u32; modulus as usize];
            let mut total = 0usize;
            for c in fam.cosets() {
                assert_eq!(c.rep(), c.members()[0]);
                assert_eq!((r / s) as usize % c.size(), 0);
                total += c.size();
                for &x in c.members() {
                    seen[x as usize] += 1;
                    assert!(c.members().contains(&(x * fam.base() % modulus)));
                }
            }
            assert_eq!(total as u64, modulus);
            assert!(seen.iter().all(|&k| k == 1));
            let reps = fam.reps();
            assert!(reps.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(
            cyclotomic_cosets(2, 3, 4).unwrap_err(),
            Error::InvalidTower { s: 3, r: 4 }
        );
    }

    #[test]
    fn delta_sigma_cardinalities() {
        let fam = cyclotomic_cosets(2, 1, 4).unwrap();
        let d6 = fam.delta_sigma(6).unwrap();
        assert_eq!(d6.len(), 25);
        assert!(d6.closed_under_base());
        assert!(d6.is_closed_under(4, 255));
        assert_eq!(fam.delta_sigma(0).unwrap().members(), &[0]);
        assert_eq!(fam.delta_sigma(1).unwrap().members(), &[0, 1, 4, 16, 64]);
        assert!(matches!(
            fam.delta_sigma(10_000),
            Err(Error::IndexOutOfRange { .. })
        ));
        for t in 0..fam.len() - 1 {
            let a = fam.delta_sigma(t).unwrap();
            let b = fam.delta_sigma(t + 1).unwrap();
            assert!(a.members().iter().all(|&x| b.contains(x)));
            assert_eq!(a.initial_run(), fam.reps()[t + 1]);
        }
    }

    #[test]
    fn trace_bound_values() {
        assert_eq!(trace_bound(2, 4), 15);
        assert_eq!(trace_bound(2, 1), 1);
        assert_eq!(trace_bound(3, 2), 5);
        assert_eq!(trace_bound(4, 2), 11);
        assert_eq!(trace_bound(3, 3), 14);
        assert_eq!(trace_bound(5, 2), 14);
        assert_eq!(trace_bound(7, 2), 27);
    }

    #[test]
    fn admissible_indices() {
        let fam = cyclotomic_cosets(2, 1, 4).unwrap();
        let reps = fam.reps();
        let t = fam.max_admissible_t(2, 4);
        assert!(reps[t] < 15 && reps[t + 1] >= 15);
        assert_eq!(reps[t], 14);
        assert!(t >= 6);
        let fam = cyclotomic_cosets(2, 1, 1).unwrap();
        assert_eq!(fam.max_admissible_t(2, 1), 0);
        let fam = cyclotomic_cosets(3, 1, 2).unwrap();
        assert_eq!(fam.modulus(), 80);
        let t = fam.max_admissible_t(3, 2);
        assert_eq!(&fam.reps()[..=t], &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn runs() {
        let s = ExponentSet::new([0, 1, 2, 5, 6, 7, 13, 14]);
        assert_eq!(s.initial_run(), 3);
        assert_eq!(s.longest_cyclic_run(15), 5);
        assert_eq!(s.longest_cyclic_run(100), 3);
        let fam = cyclotomic_cosets(2, 1, 4).unwrap();
        let c = fam.closure(&ExponentSet::new([3]));
        assert_eq!(c.members(), &[3, 12, 48, 192]);
        assert!(fam.is_union_of_cosets(&c));
        assert!(!fam.is_union_of_cosets(&ExponentSet::new([3, 12])));
    }
}
