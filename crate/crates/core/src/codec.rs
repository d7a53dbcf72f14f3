//! Systematic encoding and a Meggitt-type syndrome decoder for product
//! `T`-codes, working in the coordinates of `C_1 x ... x C_r`.
//!
//! A codeword of a component carries the message in its last `k`
//! coordinates, twisted by `theta^(n-k)`.

use std::collections::HashMap;

use crate::codes::{pi, pi_inv, weight, ModuleThetaCode, ProductTCode, DISTANCE_BUDGET};
use crate::error::{check_budget, Error, Result};
use crate::field::Elem;
use crate::matrix::Vector;
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

/// Default limit on syndrome table entries.
pub const TABLE_BUDGET: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodeMethod {
    /// `X^(n-k) m - (X^(n-k) m mod R g)`.
    Polynomial,
    /// `(-(m^theta^(n-k)) S, m^theta^(n-k))` from the parity check.
    Matrix,
}

/// How a shifted error pattern is shifted back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeggittMode {
    /// Apply `(Theta ∘ A)^-delta` to the pattern; always exact.
    PerComponent,
    /// Multiply by `t^delta` with `t X = 1 mod R f` and reduce afterwards;
    /// the result is checked against the syndrome.
    Literal,
}

fn split_lengths<'a>(v: &'a [Elem], lens: &[usize]) -> Result<Vec<&'a [Elem]>> {
    if v.len() != lens.iter().sum::<usize>() {
        return Err(Error::dim("word length differs from the code"));
    }
    let mut out = Vec::new();
    let mut off = 0;
    for &l in lens {
        out.push(&v[off..off + l]);
        off += l;
    }
    Ok(out)
}

/// Encodes one component message of length `k`.
pub fn encode_component(msg: &[Elem], code: &ModuleThetaCode, method: EncodeMethod) -> Result<Vector> {
    let (n, k) = (code.n(), code.k());
    if msg.len() != k {
        return Err(Error::dim(format!("message length {} for dimension {k}", msg.len())));
    }
    let th = code.theta();
    let r = n - k;
    match method {
        EncodeMethod::Polynomial => {
            let shifted = pi(th, msg).x_times(r);
            let rem = shifted.rem_right(code.g())?;
            pi_inv(&(&shifted - &rem), n)
        }
        EncodeMethod::Matrix => {
            let w: Vector = msg.iter().map(|&a| th.apply_pow(a, r as i64)).collect();
            let pc = code.parity_check()?;
            let f = code.field();
            let mut out: Vector = if k == 0 {
                vec![Elem::ZERO; r]
            } else {
                pc.s.vec_mul(&w)?.into_iter().map(|x| f.neg(x)).collect()
            };
            out.extend(w);
            Ok(out)
        }
    }
}

/// Encodes the concatenated component messages (total length `k`).
pub fn encode(msg: &[Elem], code: &ProductTCode, method: EncodeMethod) -> Result<Vector> {
    let ks: Vec<usize> = code.components().iter().map(|m| m.k()).collect();
    let parts = split_lengths(msg, &ks)?;
    let mut out = Vec::with_capacity(code.n());
    for (p, m) in parts.iter().zip(code.components()) {
        out.extend(encode_component(p, m, method)?);
    }
    Ok(out)
}

/// Recovers the message from an error-free codeword.
pub fn decode_plain(cw: &[Elem], code: &ProductTCode) -> Result<Vector> {
    let parts = split_lengths(cw, &code.lengths())?;
    let mut out = Vec::new();
    for (p, m) in parts.iter().zip(code.components()) {
        if !m.syndrome(p)?.is_zero() {
            return Err(Error::domain("word fails the parity check"));
        }
        let (n, k) = (m.n(), m.k());
        out.extend(p[n - k..].iter().map(|&a| m.theta().apply_pow(a, k as i64 - n as i64)));
    }
    Ok(out)
}

/// `pi(v_i) mod R g_i` for each component.
pub fn syndrome(v: &[Elem], code: &ProductTCode) -> Result<Vec<SkewPoly>> {
    let parts = split_lengths(v, &code.lengths())?;
    parts.iter().zip(code.components()).map(|(p, m)| m.syndrome(p)).collect()
}

/// Inner coordinates to the ambient space: `v C`.
pub fn to_ambient(v: &[Elem], code: &ProductTCode) -> Result<Vector> {
    code.c().vec_mul(v)
}

pub fn from_ambient(v: &[Elem], code: &ProductTCode) -> Result<Vector> {
    code.c().inverse()?.vec_mul(v)
}

#[derive(Clone, Debug)]
struct ComponentTable {
    distance: Option<usize>,
    radius: usize,
    entries: HashMap<Vec<u32>, Vector>,
}

/// Syndromes of correctable error patterns whose last coordinate is nonzero.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    tables: Vec<ComponentTable>,
}

fn key(s: &SkewPoly, len: usize) -> Vec<u32> {
    s.coeffs_padded(len).iter().map(|e| e.index()).collect()
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl SyndromeTable {
    pub fn build(code: &ProductTCode, budget: u64) -> Result<SyndromeTable> {
        let mut tables = Vec::new();
        for m in code.components() {
            tables.push(Self::build_component(m, budget)?);
        }
        Ok(SyndromeTable { tables })
    }

    fn build_component(m: &ModuleThetaCode, budget: u64) -> Result<ComponentTable> {
        let (n, k) = (m.n(), m.k());
        if k == 0 {
            return Ok(ComponentTable { distance: None, radius: 0, entries: HashMap::new() });
        }
        let d = m.min_distance(DISTANCE_BUDGET)?;
        let t = (d - 1) / 2;
        let q = m.field().order() as u128;
        let size: u128 = (1..=t as u128).map(|w| binom(n as u128 - 1, w - 1) * (q - 1).pow(w as u32)).sum();
        check_budget("syndrome table entries", size, budget as u128)?;
        let mut entries = HashMap::new();
        let units: Vec<Elem> = m.field().units().collect();
        for w in 1..=t {
            let mut pos = Vec::new();
            let mut err = Ok(());
            combos(n - 1, w - 1, 0, &mut pos, &mut |ps: &[usize]| {
                if err.is_err() {
                    return;
                }
                let mut all: Vec<usize> = ps.to_vec();
                all.push(n - 1);
                let mut vals = vec![0usize; all.len()];
                loop {
                    let mut e = vec![Elem::ZERO; n];
                    for (i, &p) in all.iter().enumerate() {
                        e[p] = units[vals[i]];
                    }
                    match m.syndrome(&e) {
                        Ok(s) => {
                            if entries.insert(key(&s, n - k), e).is_some() {
                                err = Err(Error::Certification("syndrome collision in table".into()));
                                return;
                            }
                        }
                        Err(x) => {
                            err = Err(x);
                            return;
                        }
                    }
                    let mut i = 0;
                    while i < vals.len() {
                        vals[i] += 1;
                        if vals[i] < units.len() {
                            break;
                        }
                        vals[i] = 0;
                        i += 1;
                    }
                    if i == vals.len() {
                        break;
                    }
                }
            });
            err?;
        }
        Ok(ComponentTable { distance: Some(d), radius: t, entries })
    }

    /// Minimum distance and correction radius of each component.
    pub fn parameters(&self) -> Vec<(Option<usize>, usize)> {
        self.tables.iter().map(|t| (t.distance, t.radius)).collect()
    }

    pub fn len(&self) -> usize {
        self.tables.iter().map(|t| t.entries.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        combos(n, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Corrects each component independently; returns the corrected word and
/// the error that was removed.
pub fn meggitt_decode(
    received: &[Elem],
    code: &ProductTCode,
    table: &SyndromeTable,
    mode: MeggittMode,
) -> Result<(Vector, Vector)> {
    let parts = split_lengths(received, &code.lengths())?;
    if table.tables.len() != code.components().len() {
        return Err(Error::dim("table was built for a different code"));
    }
    let mut out = Vec::with_capacity(received.len());
    for (i, (p, m)) in parts.iter().zip(code.components()).enumerate() {
        out.extend(decode_component(p, m, &table.tables[i], mode).map_err(|e| match e {
            Error::Uncorrectable(msg) => Error::Uncorrectable(format!("component {}: {msg}", i + 1)),
            other => other,
        })?);
    }
    let f = code.field();
    let err = received.iter().zip(&out).map(|(&a, &b)| f.sub(a, b)).collect();
    Ok((out, err))
}

fn decode_component(r: &[Elem], m: &ModuleThetaCode, t: &ComponentTable, mode: MeggittMode) -> Result<Vector> {
    let (n, k) = (m.n(), m.k());
    let f = m.field();
    if k == 0 {
        return Ok(vec![Elem::ZERO; n]);
    }
    let s = m.syndrome(r)?;
    if s.is_zero() {
        return Ok(r.to_vec());
    }
    let sub = |e: &[Elem]| -> Vector { r.iter().zip(e).map(|(&a, &b)| f.sub(a, b)).collect() };
    let mut sd = s.clone();
    for delta in 0..n {
        if delta > 0 {
            sd = sd.x_times(1).rem_right(m.g())?;
        }
        let Some(eb) = t.entries.get(&key(&sd, n - k)) else {
            continue;
        };
        let e = match mode {
            MeggittMode::PerComponent => {
                let tm = SemiLinearMap::from_polynomial(m.f())?;
                let a_inv = tm.matrix().inverse()?;
                let mut e = eb.clone();
                for _ in 0..delta {
                    e = tm.apply_inverse(&e, &a_inv)?;
                }
                e
            }
            MeggittMode::Literal => {
                let tinv = m.f().x_inverse()?;
                let mut tp = SkewPoly::one(m.theta());
                for _ in 0..delta {
                    tp = &tp * &tinv;
                }
                let e = pi_inv(&(&tp * &pi(m.theta(), eb)).rem_right(m.f())?, n)?;
                if m.syndrome(&e)? != s {
                    return Err(Error::Uncorrectable(format!(
                        "literal inverse shift by t^{delta} does not reproduce the syndrome"
                    )));
                }
                e
            }
        };
        if weight(&e) > t.radius {
            return Err(Error::Uncorrectable("shifted pattern exceeds the correction radius".into()));
        }
        return Ok(sub(&e));
    }
    Err(Error::Uncorrectable("syndrome matches no correctable pattern".into()))
}
