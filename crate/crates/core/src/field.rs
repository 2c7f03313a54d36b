//! Exact arithmetic in GF(p) and GF(p^k).
//!
//! Elements are small handles ([`Fe`]) interpreted by a [`Field`]. The handle of
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is the base-p integer `sum c_i p^i`, so
//! residues are always stored canonically in `[0, p)` and every field element
//! has exactly one encoding. Multiplication goes through discrete log tables
//! built once per field.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Irreducible moduli used when the caller does not supply one (monic, low degree first).
const BUILTIN_MODULI: &[(u32, usize, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
];

/// Handle of an element of some [`Field`].
///
/// Handles carry no field tag. Values outside the field are rejected as
/// `ForeignElement` where inputs are checked, but a handle from another field
/// of the same or larger order cannot be told apart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Size limits enforced by [`Field::with_bounds`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldBounds {
    pub max_prime: u32,
    pub max_degree: usize,
}

impl Default for FieldBounds {
    fn default() -> Self {
        FieldBounds {
            max_prime: 13,
            max_degree: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

struct Inner {
    p: u32,
    k: usize,
    /// Monic modulus, low degree first; empty for prime fields.
    modulus: Vec<u32>,
    order: u32,
    /// `exp[i] = g^i` for a fixed primitive element g, doubled in length so
    /// that sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^k), cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Both low degree first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - c) * lead) % p;
            }
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
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

fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl Field {
    /// Builds GF(p^k) under the default size bounds.
    pub fn new(p: u32, k: usize, modulus: Option<&[u32]>) -> Result<Field> {
        Field::with_bounds(p, k, modulus, FieldBounds::default())
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn with_bounds(
        p: u32,
        k: usize,
        modulus: Option<&[u32]>,
        bounds: FieldBounds,
    ) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::UnsupportedField("extension degree must be at least 1".into()));
        }
        if p > bounds.max_prime || k > bounds.max_degree {
            return Err(Error::UnsupportedField(format!(
                "GF({p}^{k}) exceeds the configured bound p <= {}, k <= {}",
                bounds.max_prime, bounds.max_degree
            )));
        }
        let order = (p as u64).pow(k as u32);
        if order > (1 << 24) {
            return Err(Error::UnsupportedField(format!("order {order} too large")));
        }
        let modulus: Vec<u32> = if k == 1 {
            if let Some(m) = modulus {
                if !m.is_empty() {
                    return Err(Error::InvalidModulus(
                        "prime fields take no modulus".into(),
                    ));
                }
            }
            Vec::new()
        } else {
            let m = match modulus {
                Some(m) => m.to_vec(),
                None => BUILTIN_MODULI
                    .iter()
                    .find(|(bp, bk, _)| *bp == p && *bk == k)
                    .map(|(_, _, m)| m.to_vec())
                    .ok_or_else(|| {
                        Error::UnsupportedField(format!(
                            "no built-in modulus for GF({p}^{k}); supply one"
                        ))
                    })?,
            };
            if m.len() != k + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients for a degree-{k} modulus, got {}",
                    k + 1,
                    m.len()
                )));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidModulus(format!(
                    "coefficients must lie in [0, {p})"
                )));
            }
            if m[k] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus {
                    modulus: format_poly(&m, "x"),
                    p,
                });
            }
            m
        };
        let order = order as u32;
        let (exp, log) = Self::build_tables(p, k, &modulus, order);
        Ok(Field(Arc::new(Inner {
            p,
            k,
            modulus,
            order,
            exp,
            log,
        })))
    }

    fn build_tables(p: u32, k: usize, modulus: &[u32], order: u32) -> (Vec<u32>, Vec<u32>) {
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let decode = |mut v: u32| {
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect::<Vec<_>>()
        };
        let mul = |a: &[u32], b: &[u32]| -> Vec<u32> {
            if k == 1 {
                vec![a[0] * b[0] % p]
            } else {
                poly_mulmod(a, b, modulus, p)
            }
        };
        let group = order - 1;
        let factors = prime_factors(group);
        let pow = |base: &[u32], mut e: u32| {
            let mut acc = decode(1);
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(&acc, &b);
                }
                b = mul(&b, &b);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .map(decode)
            .find(|g| factors.iter().all(|&r| encode(&pow(g, group / r)) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = decode(1);
        for i in 0..group {
            let v = encode(&cur);
            exp.push(v);
            log[v as usize] = i;
            cur = mul(&cur, &generator);
        }
        for i in 0..group as usize {
            exp.push(exp[i]);
        }
        (exp, log)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Monic modulus (low degree first), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The class of `x` for extension fields.
    pub fn generator(&self) -> Option<Fe> {
        (self.0.k > 1).then_some(Fe(self.0.p))
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.0.order
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.0.k {
            return Err(Error::Dimension(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::ForeignElement {
                value: c,
                order: p,
            });
        }
        Ok(Fe(coeffs.iter().rev().fold(0, |acc, &d| acc * p + d)))
    }

    /// Length-k residue vector, low degree first.
    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// All elements in handle order (0, 1, ..., q-1).
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.order).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.0.order))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.0.order))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut scale) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fe((p - a.0) % p);
        }
        let mut x = a.0;
        let (mut out, mut scale) = (0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale *= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if self.0.k == 1 {
            return Fe(a.0 * b.0 % self.0.p);
        }
        let inner = &self.0;
        Fe(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &self.0;
        let group = inner.order - 1;
        Ok(Fe(inner.exp[((group - inner.log[a.0 as usize]) % group) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    /// Inverse of the integer `n` (nonzero mod p) as a field element.
    pub fn inv_int(&self, n: i64) -> Result<Fe> {
        self.inv(self.from_int(n))
    }

    /// Checked arithmetic: validates membership and divisors. Unary ops ignore `y`.
    pub fn arith(&self, x: Fe, y: Fe, op: ArithOp) -> Result<Fe> {
        for v in [x, y] {
            if !self.contains(v) {
                return Err(Error::ForeignElement {
                    value: v.0,
                    order: self.0.order,
                });
            }
        }
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Div => self.div(x, y)?,
            ArithOp::Neg => self.neg(x),
            ArithOp::Inv => self.inv(x)?,
            ArithOp::Pow(e) => self.pow(x, e),
        })
    }

    /// `"p"` for prime fields, `"p^k:c0,...,ck"` otherwise.
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            self.0.p.to_string()
        } else {
            let m: Vec<String> = self.0.modulus.iter().map(u32::to_string).collect();
            format!("{}^{}:{}", self.0.p, self.0.k, m.join(","))
        }
    }

    /// Parses `"p"`, `"p^k"` or `"p^k:c0,c1,...,ck"`.
    pub fn parse_spec(s: &str) -> Result<Field> {
        let s = s.trim();
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p_str, k_str) = match head.split_once('^') {
            Some((p, k)) => (p, Some(k)),
            None => (head, None),
        };
        let p: u32 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("expected a prime, found {p_str:?}")))?;
        let k: usize = match k_str {
            Some(k) => k.trim().parse().map_err(|_| {
                Error::parse(p_str.len() + 1, format!("expected an extension degree, found {k:?}"))
            })?,
            None => 1,
        };
        let modulus = match modulus {
            Some(m) => {
                let start = head.len() + 1;
                let mut coeffs = Vec::new();
                let mut pos = start;
                for part in m.split(',') {
                    let c: u32 = part.trim().parse().map_err(|_| {
                        Error::parse(pos, format!("expected a coefficient, found {part:?}"))
                    })?;
                    coeffs.push(c);
                    pos += part.len() + 1;
                }
                Some(coeffs)
            }
            None => None,
        };
        Field::new(p, k, modulus.as_deref())
    }

    /// Canonical text form: an integer for prime fields, a polynomial in `x`
    /// (highest degree first, e.g. `2x^2+x+1`) for extensions.
    pub fn format(&self, a: Fe) -> String {
        if self.0.k == 1 {
            a.0.to_string()
        } else {
            format_poly(&self.coeffs(a), "x")
        }
    }

    /// Parses an integer (any sign, reduced mod p) or a polynomial expression in `x`
    /// such as `x`, `2x+1`, `-x^2 + 3*x - 1`.
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut acc = self.zero();
        let mut first = true;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let read_int = |i: &mut usize| -> Option<u64> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            s[start..*i].parse().ok()
        };
        skip_ws(&mut i);
        if i == bytes.len() {
            return Err(Error::parse(0, "empty field element"));
        }
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(Error::parse(i, "expected '+' or '-'"));
            }
            first = false;
            let term_start = i;
            let coeff = read_int(&mut i);
            skip_ws(&mut i);
            let mut exponent = 0u64;
            let mut has_x = false;
            if i < bytes.len() && bytes[i] == b'*' {
                if coeff.is_none() {
                    return Err(Error::parse(i, "unexpected '*'"));
                }
                i += 1;
                skip_ws(&mut i);
                if i >= bytes.len() || bytes[i] != b'x' {
                    return Err(Error::parse(i, "expected 'x' after '*'"));
                }
            }
            if i < bytes.len() && bytes[i] == b'x' {
                has_x = true;
                i += 1;
                exponent = 1;
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    skip_ws(&mut i);
                    exponent =
                        read_int(&mut i).ok_or_else(|| Error::parse(i, "expected an exponent"))?;
                }
            }
            if coeff.is_none() && !has_x {
                return Err(Error::parse(term_start, "expected a number or 'x'"));
            }
            if has_x && self.0.k == 1 {
                return Err(Error::parse(
                    term_start,
                    "'x' is only meaningful in extension fields",
                ));
            }
            let c = coeff.map_or(self.one(), |c| self.from_int((c % self.0.p as u64) as i64));
            let mono = if has_x {
                self.pow(self.generator().expect("checked above"), exponent)
            } else {
                self.one()
            };
            let term = self.mul(c, mono);
            acc = if negative {
                self.sub(acc, term)
            } else {
                self.add(acc, term)
            };
            skip_ws(&mut i);
        }
        Ok(acc)
    }

    /// Parses a comma-separated list of field elements.
    pub fn parse_list(&self, s: &str) -> Result<Vec<Fe>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            out.push(self.parse_elem(part).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + offset,
                    msg,
                },
                other => other,
            })?);
            offset += part.len() + 1;
        }
        Ok(out)
    }
}
