//! Coefficient fields: the rationals and GF(p^m) with an explicit modulus.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Largest extension degree accepted for GF(p^m).
pub const MAX_EXTENSION_DEGREE: u32 = 12;
const TABLE_LIMIT: u64 = 256;

/// A field element. Finite-field elements are encoded as the integer
/// `sum c_i p^i` of their coefficient vector (least degree first).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Elem {
    Q(Rational),
    F(u64),
}

#[derive(Clone)]
pub struct FieldSpec(Kind);

#[derive(Clone)]
enum Kind {
    Rationals,
    Finite(Arc<Gf>),
}

struct Gf {
    p: u64,
    m: u32,
    /// Monic, length m + 1, least degree first.
    modulus: Vec<u64>,
    q: u64,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p), least degree first, no trailing zeros.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn pow_poly_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's irreducibility test for a monic polynomial over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u64;
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^k) mod f for k = 1..m
    let mut frob = Vec::with_capacity(m as usize + 1);
    let mut cur = x.clone();
    frob.push(cur.clone());
    for _ in 0..m {
        cur = fp_poly::pow_poly_mod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    if fp_poly::sub(&frob[m as usize], &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_divisors(m).into_iter().all(|d| {
        let h = fp_poly::sub(&frob[(m / d) as usize], &x, p);
        fp_poly::gcd(&h, f, p).len() == 1
    })
}

impl Gf {
    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.m as usize];
        let mut a = a;
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    fn raw_add(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn raw_neg(&self, a: u64) -> u64 {
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let d: Vec<u64> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        let prod = fp_poly::mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        let mut d = prod;
        d.resize(self.m as usize, 0);
        self.encode(&d)
    }

    fn raw_inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.m == 1 {
            return Some(fp_poly::pow_mod(a, self.p - 2, self.p));
        }
        // a^(q-2)
        let mut r = 1u64;
        let mut b = a;
        let mut e = self.q - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.raw_mul(r, b);
            }
            b = self.raw_mul(b, b);
            e >>= 1;
        }
        Some(r)
    }

    fn build_tables(&mut self) {
        if self.q > TABLE_LIMIT || self.m == 1 {
            return;
        }
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.raw_add(a as u64, b as u64) as u16;
                mul[a * q + b] = self.raw_mul(a as u64, b as u64) as u16;
            }
            inv[a] = self.raw_inv(a as u64).unwrap_or(0) as u16;
        }
        self.tables = Some(Tables { add, mul, inv });
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u64,
            None => self.raw_add(a, b),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u64,
            None => self.raw_mul(a, b),
        }
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.inv[a as usize] as u64),
            None => self.raw_inv(a),
        }
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        Self::finite(p, 1, None)
    }

    /// GF(p^m) presented as GF(p)[x]/(modulus). The modulus is monic of
    /// degree m, least degree first; it may be omitted when m = 1.
    pub fn finite(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("field characteristic {p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::input(format!("characteristic {p} exceeds 2^31")));
        }
        if m == 0 || m > MAX_EXTENSION_DEGREE {
            return Err(Error::input(format!(
                "extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let q = (0..m).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&v| v < 1 << 62));
        let q = q.ok_or_else(|| Error::input(format!("field order {p}^{m} too large")))?;
        let modulus = match modulus {
            None if m == 1 => vec![0, 1],
            None => return Err(Error::input("GF(p^m) with m > 1 requires a modulus")),
            Some(f) => {
                if f.len() != m as usize + 1 {
                    return Err(Error::input(format!(
                        "modulus has {} coefficients, expected {}",
                        f.len(),
                        m + 1
                    )));
                }
                if f[m as usize] != 1 {
                    return Err(Error::input("modulus must be monic"));
                }
                if let Some(c) = f.iter().find(|&&c| c >= p) {
                    return Err(Error::input(format!("modulus coefficient {c} not reduced mod {p}")));
                }
                if m == 1 {
                    vec![0, 1]
                } else {
                    if !is_irreducible(&f, p) {
                        return Err(Error::input(format!(
                            "modulus {f:?} is reducible over GF({p})"
                        )));
                    }
                    f
                }
            }
        };
        let mut gf = Gf { p, m, modulus, q, tables: None };
        gf.build_tables();
        Ok(FieldSpec(Kind::Finite(Arc::new(gf))))
    }

    /// GF(p^m) with the lexicographically least monic irreducible modulus.
    pub fn finite_default(p: u64, m: u32) -> Result<Self> {
        if m <= 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::input(format!("field characteristic {p} is not prime")));
        }
        let mut coeffs = vec![0u64; m as usize];
        loop {
            let mut f = coeffs.clone();
            f.push(1);
            if f[0] != 0 && is_irreducible(&f, p) {
                return Self::finite(p, m, Some(f));
            }
            // increment base-p counter
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Err(Error::input("no irreducible modulus found"));
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &self.0 {
            Kind::Rationals => 0,
            Kind::Finite(g) => g.p,
        }
    }

    /// Degree over the prime field (1 for the rationals).
    pub fn degree(&self) -> u32 {
        match &self.0 {
            Kind::Rationals => 1,
            Kind::Finite(g) => g.m,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match &self.0 {
            Kind::Rationals => None,
            Kind::Finite(g) => Some(g.q),
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &self.0 {
            Kind::Rationals => None,
            Kind::Finite(g) => Some(&g.modulus),
        }
    }

    pub fn zero(&self) -> Elem {
        match self.0 {
            Kind::Rationals => Elem::Q(Rational::zero()),
            Kind::Finite(_) => Elem::F(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self.0 {
            Kind::Rationals => Elem::Q(Rational::one()),
            Kind::Finite(_) => Elem::F(1),
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match &self.0 {
            Kind::Rationals => Elem::Q(Rational::from_int(n)),
            Kind::Finite(g) => Elem::F(n.rem_euclid(g.p as i64) as u64),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_zero(),
            Elem::F(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_one(),
            Elem::F(x) => *x == 1,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0, a, b) {
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x.add(y)),
            (Kind::Finite(g), Elem::F(x), Elem::F(y)) => Elem::F(g.add(*x, *y)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0, a) {
            (Kind::Rationals, Elem::Q(x)) => Elem::Q(x.neg()),
            (Kind::Finite(g), Elem::F(x)) => Elem::F(g.raw_neg(*x)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0, a, b) {
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x.sub(y)),
            (Kind::Finite(g), Elem::F(x), Elem::F(y)) => Elem::F(g.add(*x, g.raw_neg(*y))),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0, a, b) {
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x.mul(y)),
            (Kind::Finite(g), Elem::F(x), Elem::F(y)) => Elem::F(g.mul(*x, *y)),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match (&self.0, a) {
            (Kind::Rationals, Elem::Q(x)) => x.inv().map(Elem::Q),
            (Kind::Finite(g), Elem::F(x)) => g.inv(*x).map(Elem::F),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Whether `a` is a valid element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.0, a) {
            (Kind::Rationals, Elem::Q(_)) => true,
            (Kind::Finite(g), Elem::F(x)) => *x < g.q,
            _ => false,
        }
    }

    /// Coefficient vector (length m) of a finite-field element.
    pub fn coeffs(&self, a: &Elem) -> Option<Vec<u64>> {
        match (&self.0, a) {
            (Kind::Finite(g), Elem::F(x)) => Some(g.digits(*x)),
            _ => None,
        }
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<Elem> {
        match &self.0 {
            Kind::Finite(g) => {
                if c.len() != g.m as usize {
                    return Err(Error::input(format!(
                        "GF({}^{}) element needs {} coefficients, got {}",
                        g.p,
                        g.m,
                        g.m,
                        c.len()
                    )));
                }
                if let Some(x) = c.iter().find(|&&x| x >= g.p) {
                    return Err(Error::input(format!("coefficient {x} not reduced mod {}", g.p)));
                }
                Ok(Elem::F(g.encode(c)))
            }
            Kind::Rationals => Err(Error::input("coefficient vectors only describe finite-field elements")),
        }
    }

    /// All elements of a finite field in encoding order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Elem>> {
        self.order().map(|q| (0..q).map(Elem::F))
    }

    /// A uniformly random element (finite fields) or a random integer in
    /// `[-span, span]` (rationals).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, span: i64) -> Elem {
        match &self.0 {
            Kind::Rationals => Elem::Q(Rational::from_int(rng.gen_range(-span..=span))),
            Kind::Finite(g) => Elem::F(rng.gen_range(0..g.q)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, span: i64) -> Elem {
        loop {
            let e = self.random(rng, span);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    pub fn elem_to_json(&self, a: &Elem) -> Value {
        match a {
            Elem::Q(r) => {
                if r.is_integer() {
                    serde_json::from_str(&r.to_string()).unwrap_or_else(|_| Value::String(r.to_string()))
                } else {
                    Value::String(r.to_string())
                }
            }
            Elem::F(_) => Value::Array(
                self.coeffs(a)
                    .unwrap_or_default()
                    .into_iter()
                    .map(Value::from)
                    .collect(),
            ),
        }
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<Elem> {
        match &self.0 {
            Kind::Rationals => match v {
                Value::String(s) => s
                    .parse::<Rational>()
                    .map(Elem::Q)
                    .map_err(|e| Error::input(e.to_string())),
                Value::Number(n) => n
                    .to_string()
                    .parse::<Rational>()
                    .map(Elem::Q)
                    .map_err(|_| Error::input(format!("rational entries must be integers or \"a/b\" strings, got {n}"))),
                other => Err(Error::input(format!("bad rational entry {other}"))),
            },
            Kind::Finite(g) => match v {
                Value::Array(items) => {
                    let c = items
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .ok_or_else(|| Error::input(format!("bad GF coefficient {x}")))
                        })
                        .collect::<Result<Vec<u64>>>()?;
                    self.from_coeffs(&c)
                }
                Value::Number(n) if g.m == 1 => {
                    let x = n
                        .as_u64()
                        .ok_or_else(|| Error::input(format!("bad GF({}) entry {n}", g.p)))?;
                    if x >= g.p {
                        return Err(Error::input(format!("entry {x} not reduced mod {}", g.p)));
                    }
                    Ok(Elem::F(x))
                }
                other => Err(Error::input(format!("bad GF entry {other}"))),
            },
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Kind::Rationals, Kind::Rationals) => true,
            (Kind::Finite(a), Kind::Finite(b)) => a.p == b.p && a.m == b.m && a.modulus == b.modulus,
            _ => false,
        }
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Finite(g) if g.m == 1 => write!(f, "GF({})", g.p),
            Kind::Finite(g) => write!(f, "GF({}^{})", g.p, g.m),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldWire {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u64>>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match &self.0 {
            Kind::Rationals => FieldWire { kind: "Q".into(), p: None, m: None, modulus: None },
            Kind::Finite(g) => FieldWire {
                kind: "GF".into(),
                p: Some(g.p),
                m: Some(g.m),
                modulus: Some(g.modulus.clone()),
            },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = FieldWire::deserialize(d)?;
        match w.kind.as_str() {
            "Q" => Ok(FieldSpec::rationals()),
            "GF" => {
                let p = w.p.ok_or_else(|| serde::de::Error::custom("GF field needs \"p\""))?;
                FieldSpec::finite(p, w.m.unwrap_or(1), w.modulus).map_err(serde::de::Error::custom)
            }
            other => Err(serde::de::Error::custom(format!("unknown field kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf4() -> FieldSpec {
        FieldSpec::finite(2, 2, Some(vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(FieldSpec::finite(2, 2, Some(vec![1, 0, 1])).is_err());
        // x^2 + 1 is irreducible over GF(3)
        assert!(FieldSpec::finite(3, 2, Some(vec![1, 0, 1])).is_ok());
        assert!(FieldSpec::finite(4, 1, None).is_err());
    }

    #[test]
    fn default_modulus_is_irreducible() {
        let f = FieldSpec::finite_default(2, 8).unwrap();
        assert_eq!(f.order(), Some(256));
        let f = FieldSpec::finite_default(3, 5).unwrap();
        assert_eq!(f.modulus().unwrap().len(), 6);
    }

    #[test]
    fn gf4_multiplicative_group_has_order_three() {
        let f = gf4();
        for a in 1..4u64 {
            assert_eq!(f.pow(&Elem::F(a), 3), f.one());
        }
        // x * x = x + 1
        assert_eq!(f.mul(&Elem::F(2), &Elem::F(2)), Elem::F(3));
    }

    #[test]
    fn json_round_trip() {
        let f = gf4();
        let v = f.elem_to_json(&Elem::F(2));
        assert_eq!(v, serde_json::json!([0, 1]));
        assert_eq!(f.elem_from_json(&v).unwrap(), Elem::F(2));
        let q = FieldSpec::rationals();
        let half = Elem::Q(Rational::from_frac(1, 2));
        assert_eq!(q.elem_to_json(&half), serde_json::json!("1/2"));
        assert_eq!(q.elem_from_json(&serde_json::json!(3)).unwrap(), q.from_int(3));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"GF","p":2,"m":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    fn fields() -> Vec<FieldSpec> {
        vec![
            FieldSpec::prime(7).unwrap(),
            gf4(),
            FieldSpec::finite(3, 3, Some(vec![1, 2, 0, 1])).unwrap(),
            FieldSpec::finite_default(5, 4).unwrap(),
            FieldSpec::rationals(),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(seed in any::<u64>(), which in 0usize..5) {
            use rand::SeedableRng;
            let f = &fields()[which];
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = f.random(&mut rng, 50);
            let b = f.random(&mut rng, 50);
            let c = f.random(&mut rng, 50);
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !f.is_zero(&a) {
                let ai = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &ai), f.one());
            }
        }
    }
}
