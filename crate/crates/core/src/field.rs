//! Finite fields `F_q`, `q = p^s`, in a polynomial basis, and their
//! automorphisms `a -> a^(p^t)`.
//!
//! An element is stored as its index `sum c_i p^i`, where `c_i` is the
//! coefficient of `gen^i`. Multiplication goes through log/antilog tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::text;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element, meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct FieldInner {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus over `F_p`, ascending, length `s + 1`.
    modulus: Vec<u32>,
    gen_name: String,
    /// `exp[i] = w^i` for a primitive `w`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Full addition table, present for odd `p` and `q <= 256`.
    add_table: Option<Vec<u16>>,
    neg: Vec<u32>,
    /// `p^e mod (q - 1)` for `e < s`.
    pow_p: Vec<u64>,
}

/// Handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec_string())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn poly_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // remainder of `a` modulo the monic `m`, coefficients in F_p
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().unwrap_or(0);
        if c != 0 {
            let off = r.len() - dm;
            for (j, &mj) in m[..dm].iter().enumerate() {
                r[off + j] = (r[off + j] + (p - c) * mj % p) % p;
            }
        }
    }
    r
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn is_irreducible_mod_p(m: &[u32], p: u32) -> bool {
    let s = m.len() - 1;
    if s == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=s/2
    for d in 1..=s / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            let mut r = poly_mod_p(m, &div, p);
            trim(&mut r);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut x: u32, p: u32, s: u32) -> Vec<u32> {
    (0..s)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let s = (modulus.len() - 1) as u32;
    let da = digits(a, p, s);
    let db = digits(b, p, s);
    let mut prod = vec![0u32; 2 * s as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_mod_p(&prod, modulus, p);
    r.resize(s as usize, 0);
    undigits(&r, p)
}

/// First primitive monic polynomial of degree `s` over `F_p` in
/// lexicographic order of `(c_{s-1}, ..., c_0)`.
fn default_modulus(p: u32, s: u32) -> Vec<u32> {
    let q = p.pow(s);
    let count = (p as u64).pow(s);
    for idx in 0..count {
        let mut m = digits(idx as u32, p, s);
        if m[0] == 0 {
            continue;
        }
        m.push(1);
        if !is_irreducible_mod_p(&m, p) {
            continue;
        }
        // primitive iff the class of x has order q - 1
        let x = if s == 1 { (p - m[0]) % p } else { p };
        if multiplicative_order_slow(x, p, &m, q) == q - 1 {
            return m;
        }
    }
    unreachable!("a primitive polynomial exists for every degree")
}

fn multiplicative_order_slow(x: u32, p: u32, modulus: &[u32], q: u32) -> u32 {
    let mut acc = x;
    let mut k = 1;
    while acc != 1 {
        acc = slow_mul(acc, x, p, modulus);
        k += 1;
        if k > q {
            return 0;
        }
    }
    k
}

impl Field {
    /// Builds `F_{p^s}`. `modulus` is monic over `F_p`, ascending, of
    /// degree `s`; `None` picks the first primitive polynomial.
    pub fn new(p: u32, s: u32, modulus: Option<Vec<u32>>, gen_name: &str) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(s).filter(|&q| q <= MAX_ORDER as u64).ok_or_else(|| {
            Error::InvalidField(format!("field order {p}^{s} exceeds {MAX_ORDER}"))
        })? as u32;
        if gen_name.is_empty()
            || !gen_name.chars().all(|c| c.is_ascii_alphabetic())
            || gen_name == "x"
            || gen_name == "X"
        {
            return Err(Error::InvalidField(format!("bad generator name {gen_name:?}")));
        }
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                trim(&mut m);
                if m.len() != s as usize + 1 || m[s as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {s}"
                    )));
                }
                if !is_irreducible_mod_p(&m, p) {
                    return Err(Error::InvalidField("modulus is reducible".into()));
                }
                m
            }
            None => default_modulus(p, s),
        };
        // primitive element search
        let mut w = 0;
        for cand in 1..q {
            if multiplicative_order_slow(cand, p, &modulus, q) == q - 1 {
                w = cand;
                break;
            }
        }
        let n1 = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n1];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n1 {
            exp[i] = acc;
            exp[i + n1] = acc;
            log[acc as usize] = i as u32;
            acc = slow_mul(acc, w, p, &modulus);
        }
        let neg: Vec<u32> = (0..q)
            .map(|x| undigits(&digits(x, p, s).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p))
            .collect();
        let add_table = if p != 2 && q <= 256 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits(a, p, s);
                for b in 0..q {
                    let db = digits(b, p, s);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = undigits(&sum, p) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        let pow_p = (0..s).map(|e| (p as u64).pow(e) % (q as u64 - 1).max(1)).collect();
        Ok(Field(Arc::new(FieldInner {
            p,
            s,
            q,
            modulus,
            gen_name: gen_name.to_string(),
            exp,
            log,
            add_table,
            neg,
            pow_p,
        })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None, "a")
    }

    /// Parses `p=2,s=2,mod=x^2+x+1,gen=a`. `s` and `mod` may each be
    /// omitted if the other determines it; `gen` defaults to `a`.
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let mut p = None;
        let mut s = None;
        let mut modtext = None;
        let mut gen = "a".to_string();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected key=value, got {part:?}")))?;
            let v = v.trim();
            match k.trim() {
                "p" => p = Some(v.parse::<u32>().map_err(|_| Error::parse(format!("bad p {v:?}")))?),
                "s" => s = Some(v.parse::<u32>().map_err(|_| Error::parse(format!("bad s {v:?}")))?),
                "mod" => modtext = Some(v.to_string()),
                "gen" => gen = v.to_string(),
                other => return Err(Error::parse(format!("unknown field key {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::parse("field spec needs p"))?;
        let modulus = match &modtext {
            Some(t) => {
                let fp = Field::prime(p)?;
                let coeffs = text::parse_x_poly(&fp, t, "x")?;
                Some(coeffs.into_iter().map(|e| e.0).collect::<Vec<_>>())
            }
            None => None,
        };
        let s = match (s, &modulus) {
            (Some(s), _) => s,
            (None, Some(m)) => (m.len() as u32).saturating_sub(1),
            (None, None) => 1,
        };
        Field::new(p, s, modulus, &gen)
    }

    /// Canonical spec text, accepted by [`Field::parse_spec`].
    pub fn spec_string(&self) -> String {
        let mut m = String::new();
        let deg = self.0.s as usize;
        for e in (0..=deg).rev() {
            let c = self.0.modulus[e];
            if c == 0 {
                continue;
            }
            if !m.is_empty() {
                m.push('+');
            }
            let coef = if c == 1 && e > 0 { String::new() } else { c.to_string() };
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            let sep = if !coef.is_empty() && !mono.is_empty() { "*" } else { "" };
            m.push_str(&format!("{coef}{sep}{mono}"));
        }
        format!("p={},s={},mod={},gen={}", self.0.p, self.0.s, m, self.0.gen_name)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over `F_p`.
    pub fn s(&self) -> u32 {
        self.0.s
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn gen_name(&self) -> &str {
        &self.0.gen_name
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The root of the modulus defining the polynomial basis.
    pub fn gen(&self) -> Elem {
        if self.0.s == 1 {
            Elem((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            Elem(self.0.p)
        }
    }

    /// A fixed primitive element.
    pub fn primitive(&self) -> Elem {
        Elem(self.0.exp[1 % self.0.exp.len().max(1)])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its index in `0..q`.
    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.0.q {
            Ok(Elem(index))
        } else {
            Err(Error::domain(format!("index {index} out of range for F_{}", self.0.q)))
        }
    }

    /// All elements, zero first, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + 'static {
        (0..self.0.q).map(Elem)
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = Elem> + 'static {
        (1..self.0.q).map(Elem)
    }

    /// Coordinates over `F_p` in the basis `1, gen, ..., gen^(s-1)`.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.s)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Result<Elem> {
        if c.len() > self.0.s as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(Error::domain("coefficient vector out of range"));
        }
        Ok(Elem(undigits(c, self.0.p)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &self.0;
        if f.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if let Some(t) = &f.add_table {
            return Elem(t[(a.0 * f.q + b.0) as usize] as u32);
        }
        let (mut x, mut y, mut r, mut base) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            r += ((x % f.p + y % f.p) % f.p) * base;
            x /= f.p;
            y /= f.p;
            base *= f.p;
        }
        Elem(r)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
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
        let f = &self.0;
        Elem(f.exp[(f.log[a.0 as usize] + f.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let f = &self.0;
        let n1 = f.q - 1;
        Some(Elem(f.exp[((n1 - f.log[a.0 as usize]) % n1) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    /// `a^k` for any integer `k`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        if a.0 == 0 {
            return match k {
                0 => Ok(Elem::ONE),
                k if k > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n1 = (self.0.q - 1) as i64;
        let e = (self.0.log[a.0 as usize] as i64 * k.rem_euclid(n1)).rem_euclid(n1);
        Ok(Elem(self.0.exp[e as usize]))
    }

    /// `a^(p^e)`, with `e` taken modulo `s`.
    #[inline]
    pub fn frob(&self, a: Elem, e: i64) -> Elem {
        if a.0 == 0 || self.0.q == 2 {
            return a;
        }
        let f = &self.0;
        let e = e.rem_euclid(f.s as i64) as usize;
        let n1 = (f.q - 1) as u64;
        let l = (f.log[a.0 as usize] as u64 * f.pow_p[e]) % n1;
        Elem(f.exp[l as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n1 = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Ok(n1 / gcd(n1, l))
    }

    /// Text of an element in the generator basis, e.g. `a+1`.
    pub fn format(&self, a: Elem) -> String {
        let c = self.coefficients(a);
        let mut out = String::new();
        for e in (0..c.len()).rev() {
            let d = c[e];
            if d == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            let g = &self.0.gen_name;
            match (e, d) {
                (0, _) => out.push_str(&d.to_string()),
                (1, 1) => out.push_str(g),
                (1, _) => out.push_str(&format!("{d}*{g}")),
                (_, 1) => out.push_str(&format!("{g}^{e}")),
                _ => out.push_str(&format!("{d}*{g}^{e}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses an element expression such as `a^2+1` or `(a+1)*a`.
    pub fn parse_element(&self, s: &str) -> Result<Elem> {
        text::parse_element(self, s)
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// An element bundled with its field, for display and checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Elem,
}

impl FieldElement {
    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    fn same(&self, o: &FieldElement) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.add(self.value, o.value)))
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.mul(self.value, o.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(self.field.element(v))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// The automorphism `theta: a -> a^(p^t)` of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    field: Field,
    t: u32,
}

impl Automorphism {
    /// `t` is reduced modulo `s`, so `t = s` gives the identity.
    pub fn new(field: &Field, t: u32) -> Automorphism {
        Automorphism { field: field.clone(), t: t % field.s() }
    }

    pub fn identity(field: &Field) -> Automorphism {
        Automorphism::new(field, 0)
    }

    pub fn frobenius(field: &Field) -> Automorphism {
        Automorphism::new(field, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn exponent(&self) -> u32 {
        self.t
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0
    }

    /// Order of `theta` in the Galois group: `s / gcd(s, t)`.
    pub fn order(&self) -> u32 {
        let s = self.field.s() as u64;
        (s / gcd(s, self.t as u64)) as u32
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.field.frob(a, self.t as i64)
    }

    /// `theta^k(a)` for any integer `k`.
    #[inline]
    pub fn apply_pow(&self, a: Elem, k: i64) -> Elem {
        if self.t == 0 {
            return a;
        }
        self.field.frob(a, self.t as i64 * k.rem_euclid(self.order() as i64))
    }

    /// Checked application to an element that carries its field.
    pub fn apply_element(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.element(self.apply(a.value)))
    }

    pub fn inverse(&self) -> Automorphism {
        let s = self.field.s();
        Automorphism::new(&self.field, (s - self.t) % s)
    }

    /// `theta^k` as an automorphism.
    pub fn power(&self, k: i64) -> Automorphism {
        let s = self.field.s() as i64;
        Automorphism::new(&self.field, (self.t as i64 * k).rem_euclid(s) as u32)
    }

    pub fn fixes(&self, a: Elem) -> bool {
        self.apply(a) == a
    }

    /// Size of the fixed subfield, `p^gcd(s, t)`.
    pub fn fixed_subfield_order(&self) -> u32 {
        let g = gcd(self.field.s() as u64, self.t as u64) as u32;
        self.field.p().pow(g)
    }

    /// Elements of the fixed subfield, in index order.
    pub fn fixed_subfield(&self) -> Vec<Elem> {
        self.field.elements().filter(|&a| self.fixes(a)).collect()
    }
}
