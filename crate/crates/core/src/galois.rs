//! Finite fields `GF(q)` for prime powers `2 <= q <= 2^16`.
//!
//! An element is stored as the integer `a_0 + a_1 p + ... + a_{m-1} p^{m-1}`
//! where `a_0 + a_1 x + ... + a_{m-1} x^{m-1}` is its residue modulo the
//! field's defining polynomial. For prime `q` this is just the residue mod
//! `q`.
//!
//! The defining polynomial is pinned: the monic irreducible polynomial of
//! degree `m` whose coefficient vector, read as a base-`p` integer, is
//! smallest. That gives `x^2 + x + 1` for `GF(4)`, `x^3 + x + 1` for `GF(8)`
//! and `x^4 + x + 1` for `GF(16)`. Multiplication goes through log/antilog
//! tables built over the smallest primitive element.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 1 << 16;

/// Factors `q = p^m`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q % d == 0)
        .unwrap_or(q);
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first.

fn digits(mut v: u32, p: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0; m];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo monic `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    let mut r = a.to_vec();
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - db;
            for (i, &bc) in b[..db].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * bc % p) % p;
            }
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, m: usize) -> Vec<u32> {
    (0..p.pow(m as u32))
        .map(|low| {
            let mut f = digits(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// The finite field `GF(q)` with precomputed log/antilog tables.
#[derive(Clone)]
pub struct Field {
    characteristic: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    // exp[i] = g^i for i in 0..2(q-1); log[exp[i]] = i
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::domain(format!(
                "field order {q} exceeds {MAX_ORDER}"
            )));
        }
        let (p, m) =
            prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        let modulus = default_modulus(p, m as usize);
        Ok(Self::with_modulus(p, m, modulus))
    }

    fn with_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(m);
        let mulmod = |a: u32, b: u32| {
            let r = poly_mulmod(
                &digits(a, p, m as usize),
                &digits(b, p, m as usize),
                &modulus,
                p,
            );
            undigits(&r, p)
        };
        let group = (q - 1) as usize;
        let order_of = |g: u32| {
            let (mut y, mut order) = (g, 1);
            while y != 1 {
                y = mulmod(y, g);
                order += 1;
            }
            order
        };
        let generator = (1..q)
            .find(|&g| order_of(g) == group)
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * group];
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..group {
            exp[i] = x;
            exp[i + group] = x;
            log[x as usize] = i as u32;
            x = mulmod(x, generator);
        }
        Self {
            characteristic: p,
            degree: m,
            order: q,
            modulus,
            generator,
            exp,
            log,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients of the defining polynomial, lowest degree first; monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn element(&self, value: u32) -> Result<FieldElement<'_>> {
        if value >= self.order {
            return Err(Error::domain(format!(
                "{value} is not an element of GF({})",
                self.order
            )));
        }
        Ok(FieldElement { field: self, value })
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement {
            field: self,
            value: 1,
        }
    }

    /// All elements in canonical integer order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        (0..self.order).map(move |value| FieldElement { field: self, value })
    }

    // Raw arithmetic on canonical integers. Arguments must be `< q`.

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut acc, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            acc += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        acc
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.characteristic;
        if p == 2 {
            return a;
        }
        let (mut a, mut acc, mut place) = (a, 0, 1);
        while a > 0 {
            acc += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        acc
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let group = self.order - 1;
        Some(self.exp[((group - self.log[a as usize]) % group) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = u64::from(self.order - 1);
        let l = u64::from(self.log[a as usize]) * (e % group) % group;
        self.exp[l as usize]
    }

    /// Horner evaluation of `sum_i coeffs[i] x^i`.
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

/// An element bound to its field.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    value: u32,
}

// Arithmetic is fallible (operands may come from different fields), so these
// are inherent methods rather than operator impls.
#[allow(clippy::should_implement_trait)]
impl<'f> FieldElement<'f> {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> &'f Field {
        self.field
    }

    fn same_field(self, other: Self) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with(self, value: u32) -> Self {
        Self {
            field: self.field,
            value,
        }
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or_else(|| Error::domain("zero has no multiplicative inverse"))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(*other).is_ok()
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.order)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Horner evaluation over bound elements; every operand must share one field.
pub fn eval_poly<'f>(coeffs: &[FieldElement<'f>], x: FieldElement<'f>) -> Result<FieldElement<'f>> {
    coeffs
        .iter()
        .rev()
        .try_fold(x.field().zero(), |acc, &c| acc.mul(x)?.add(c))
}
