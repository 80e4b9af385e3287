//! Finite fields GF(p^m) in polynomial-basis coordinates.
//!
//! An element is stored packed as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` are its coordinates on `1, X, ..., X^{m-1}` modulo the field's
//! modulus. Fields up to the table budget also carry exp/log tables with
//! respect to a fixed primitive element (the class of `X` whenever the
//! modulus is primitive, as Conway polynomials are), and, for odd `p`,
//! Zech logarithms so that addition never unpacks coordinates.

use std::fmt;
use std::sync::Arc;

use crate::conway::{default_table, ConwayTable};
use crate::error::{Error, Result};
use crate::poly_fp;

/// Default bound on the number of elements for which log tables are built.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element in packed polynomial-basis coordinates.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// exp[i] = g^i for 0 <= i < 2(q-1).
    exp: Vec<u32>,
    /// log[x] for x != 0, NO_LOG at 0.
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0. Empty for p = 2.
    zech: Vec<u32>,
}

struct FieldData {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    conway: bool,
    tables: Option<Tables>,
}

/// A finite field GF(p^m) together with its modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

impl Field {
    /// GF(p^m) with the given modulus, or the default Conway polynomial.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        Self::with_table(p, m, modulus, default_table(), DEFAULT_TABLE_BUDGET)
    }

    pub fn with_table(
        p: u32,
        m: u32,
        modulus: Option<&[u32]>,
        table: &ConwayTable,
        table_budget: u64,
    ) -> Result<Field> {
        if !poly_fp::is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= 1 << 31)
            .ok_or(Error::FieldTooLarge(p, m))? as u32;
        let (modulus, from_table) = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || f[m as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients ending in 1, got {f:?}",
                        m + 1
                    )));
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                if !poly_fp::is_irreducible(f, p) {
                    return Err(Error::ReducibleModulus(f.to_vec(), p));
                }
                (f.to_vec(), table.get(p, m) == Some(f))
            }
            None => {
                let f = table.get(p, m).ok_or(Error::MissingConwayEntry(p, m))?;
                if !poly_fp::is_irreducible(f, p) {
                    return Err(Error::ReducibleModulus(f.to_vec(), p));
                }
                (f.to_vec(), true)
            }
        };
        let mut data = FieldData {
            p,
            m,
            order,
            modulus,
            primitive: Elem::ZERO,
            conway: from_table,
            tables: None,
        };
        data.primitive = find_primitive(&data);
        if order as u64 <= table_budget {
            data.tables = Some(build_tables(&data));
        }
        Ok(Field(Arc::new(data)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, p^m.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The primitive element the log tables are taken with respect to.
    pub fn primitive(&self) -> Elem {
        self.0.primitive
    }

    /// Whether the modulus is the Conway polynomial for (p, m).
    pub fn is_conway(&self) -> bool {
        self.0.conway
    }

    pub fn has_log_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.order
    }

    /// All elements in packed order 0, 1, ..., q-1.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    /// The image of an integer under Z -> GF(p).
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        assert!(coords.len() <= self.0.m as usize);
        let mut v = 0u32;
        for &c in coords.iter().rev() {
            v = v * self.0.p + c % self.0.p;
        }
        Elem(v)
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        unpack(a.0, self.0.p, self.0.m)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        match &d.tables {
            Some(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let qm1 = d.order - 1;
                let diff = if lb >= la { lb - la } else { lb + qm1 - la };
                let z = t.zech[diff as usize];
                if z == NO_LOG {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(la + z) as usize])
                }
            }
            None => Elem(add_packed(a.0, b.0, d.p, d.m)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return a;
        }
        match &d.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + (d.order - 1) / 2) as usize]),
            None => {
                let coords: Vec<u32> = unpack(a.0, d.p, d.m)
                    .into_iter()
                    .map(|c| (d.p - c) % d.p)
                    .collect();
                Elem(pack(&coords, d.p))
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Elem(mul_slow(&self.0, a.0, b.0)),
        }
    }

    /// Multiplicative inverse. Panics on zero; see [`FieldElement::inv`] for
    /// the checked form.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Elem(t.exp[((self.0.order - 1 - l) % (self.0.order - 1)) as usize])
            }
            None => self.pow(a, self.0.order as u64 - 2),
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let qm1 = (self.0.order - 1) as u64;
        match &self.0.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((l * (e % qm1)) % qm1) as usize])
            }
            None => {
                let mut e = e % qm1;
                let mut base = a;
                let mut acc = Elem::ONE;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul(acc, base);
                    }
                    base = self.mul(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// a^{p^k}.
    pub fn frobenius(&self, a: Elem, k: u64) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let qm1 = (self.0.order - 1) as u64;
        if qm1 == 1 {
            return a;
        }
        self.pow(a, pow_mod(self.0.p as u64, k, qm1))
    }

    /// Discrete logarithm with respect to [`Field::primitive`]. `None` at zero.
    /// Requires log tables.
    pub fn log(&self, a: Elem) -> Option<u32> {
        let t = self.0.tables.as_ref().expect("log tables required");
        match t.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// g^i for the primitive element g.
    pub fn exp(&self, i: u64) -> Elem {
        let qm1 = (self.0.order - 1) as u64;
        match &self.0.tables {
            Some(t) => Elem(t.exp[(i % qm1) as usize]),
            None => self.pow(self.0.primitive, i),
        }
    }

    /// Whether `a` lies in the subfield GF(p^d), i.e. a^{p^d} = a.
    pub fn in_subfield(&self, a: Elem, d: u32) -> bool {
        self.frobenius(a, d as u64) == a
    }

    /// Relative trace a + a^{p^d} + ... + a^{p^{d(m/d - 1)}}, returned in this field.
    pub fn relative_trace(&self, a: Elem, d: u32) -> Result<Elem> {
        if d == 0 || !self.0.m.is_multiple_of(d) {
            return Err(Error::NonDivisorDegree {
                sub: d,
                sup: self.0.m,
            });
        }
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.0.m / d {
            acc = self.add(acc, x);
            x = self.frobenius(x, d as u64);
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> u64 {
        assert!(!a.is_zero());
        let mut ord = (self.0.order - 1) as u64;
        for l in poly_fp::prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == Elem::ONE {
                ord /= l;
            }
        }
        ord
    }

    /// Checked wrapper around a raw element.
    pub fn element(&self, a: Elem) -> FieldElement {
        assert!(self.contains(a), "element {a:?} outside {self}");
        FieldElement {
            field: self.clone(),
            value: a,
        }
    }
}

fn unpack(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0u32; m as usize];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

fn pack(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn add_packed(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn mul_slow(d: &FieldData, a: u32, b: u32) -> u32 {
    if d.p == 2 {
        let mut prod = 0u64;
        for i in 0..d.m {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        let modbits: u64 = d
            .modulus
            .iter()
            .enumerate()
            .map(|(i, &c)| (c as u64) << i)
            .sum();
        for i in (d.m..2 * d.m).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= modbits << (i - d.m);
            }
        }
        return prod as u32;
    }
    let pa = unpack(a, d.p, d.m);
    let pb = unpack(b, d.p, d.m);
    let mut r = poly_fp::mulmod(&pa, &pb, &d.modulus, d.p);
    r.resize(d.m as usize, 0);
    pack(&r, d.p)
}

fn pow_slow(d: &FieldData, a: u32, mut e: u64) -> u32 {
    let mut acc = 1u32;
    let mut base = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(d, acc, base);
        }
        base = mul_slow(d, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(d: &FieldData) -> Elem {
    let qm1 = (d.order - 1) as u64;
    if qm1 == 1 {
        return Elem::ONE;
    }
    let factors = poly_fp::prime_factors(qm1);
    let is_generator = |g: u32| factors.iter().all(|&l| pow_slow(d, g, qm1 / l) != 1);
    // The class of X first: it is primitive for Conway moduli.
    let x = if d.m == 1 {
        (d.p - d.modulus[0]) % d.p
    } else {
        d.p
    };
    if x != 0 && is_generator(x) {
        return Elem(x);
    }
    (2..d.order)
        .find(|&g| is_generator(g))
        .map(Elem)
        .expect("multiplicative group is cyclic")
}

fn build_tables(d: &FieldData) -> Tables {
    let qm1 = (d.order - 1) as usize;
    let mut exp = vec![0u32; 2 * qm1.max(1)];
    let mut log = vec![NO_LOG; d.order as usize];
    let g = d.primitive.0;
    let mut x = 1u32;
    for i in 0..qm1.max(1) {
        exp[i] = x;
        if i < qm1 || qm1 == 0 {
            log[x as usize] = i as u32;
        }
        x = mul_slow(d, x, g);
    }
    for i in qm1..2 * qm1 {
        exp[i] = exp[i - qm1];
    }
    if qm1 == 0 {
        exp.truncate(1);
    }
    let zech = if d.p == 2 {
        Vec::new()
    } else {
        (0..qm1)
            .map(|i| {
                let s = add_packed(1, exp[i], d.p, d.m);
                log[s as usize]
            })
            .collect()
    };
    Tables { exp, log, zech }
}

pub(crate) fn pow_mod(base: u64, mut e: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = base as u128 % modulus as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % modulus as u128;
        }
        b = b * b % modulus as u128;
        e >>= 1;
    }
    acc as u64
}

/// An element bound to its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> Self {
        Self {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.with(self.field.mul(self.value, inv.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.with(self.field.inv(self.value)))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, k: u64) -> Self {
        self.with(self.field.frobenius(self.value, k))
    }
}

/// The embedding GF(p^{m'}) -> GF(p^m) for m' | m.
#[derive(Clone)]
pub struct SubfieldEmbedding {
    sub: Field,
    sup: Field,
    image_of_sub_generator: Elem,
    forward: Vec<Elem>,
    backward: Vec<u32>,
}

impl fmt::Debug for SubfieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.sub, self.sup)
    }
}

impl SubfieldEmbedding {
    /// Sends the class of `X` in `sub` to a root of the sub modulus inside
    /// `sup`, scanning g^{j (p^m - 1)/(p^{m'} - 1)} for j = 1, 2, ...; for
    /// Conway moduli j = 1 already works.
    pub fn new(sub: &Field, sup: &Field) -> Result<Self> {
        if sub.p() != sup.p() {
            return Err(Error::FieldMismatch);
        }
        if !sup.m().is_multiple_of(sub.m()) {
            return Err(Error::NonDivisorDegree {
                sub: sub.m(),
                sup: sup.m(),
            });
        }
        if sup.order() as u64 > 1 << 24 {
            return Err(Error::FieldTooLarge(sup.p(), sup.m()));
        }
        let step = (sup.order() as u64 - 1) / (sub.order() as u64 - 1);
        let modulus = sub.modulus();
        let is_root = |y: Elem| {
            let mut acc = Elem::ZERO;
            for &c in modulus.iter().rev() {
                acc = sup.add(sup.mul(acc, y), sup.from_int(c as i64));
            }
            acc.is_zero()
        };
        let rho = (1..sub.order() as u64)
            .map(|j| sup.pow(sup.primitive(), j * step))
            .chain(std::iter::once(Elem::ZERO))
            .find(|&y| is_root(y))
            .expect("an irreducible polynomial of degree m' splits in GF(p^m)");
        let mut forward = Vec::with_capacity(sub.order() as usize);
        for a in sub.elements() {
            let mut acc = Elem::ZERO;
            for &c in sub.coords(a).iter().rev() {
                acc = sup.add(sup.mul(acc, rho), sup.from_int(c as i64));
            }
            forward.push(acc);
        }
        let mut backward = vec![u32::MAX; sup.order() as usize];
        for (i, &y) in forward.iter().enumerate() {
            backward[y.0 as usize] = i as u32;
        }
        let image_of_sub_generator = forward[sub.primitive().0 as usize];
        Ok(Self {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_sub_generator,
            forward,
            backward,
        })
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn image_of_sub_generator(&self) -> Elem {
        self.image_of_sub_generator
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.forward[a.0 as usize]
    }

    #[inline]
    pub fn try_project(&self, b: Elem) -> Option<Elem> {
        match self.backward[b.0 as usize] {
            u32::MAX => None,
            i => Some(Elem(i)),
        }
    }

    /// Relative trace from the big field onto the subfield, in subfield coordinates.
    pub fn trace(&self, a: Elem) -> Elem {
        let t = self
            .sup
            .relative_trace(a, self.sub.m())
            .expect("degree divides by construction");
        self.try_project(t).expect("trace lands in the subfield")
    }
}
