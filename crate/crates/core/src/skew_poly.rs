//! The skew polynomial ring `R = F_q[X; theta]`, where `X a = theta(a) X`.
//!
//! Coefficients are stored ascending with no trailing zeros, so the zero
//! polynomial is the empty vector and has degree `None`.
//!
//! Two divisions exist. `right_quotrem(a, b)` gives `a = q b + r` and
//! reduces modulo the left ideal `R b`; `left_quotrem(a, b)` gives
//! `a = b q + r` and reduces modulo the right ideal `b R`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_budget, Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::text;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly {
    theta: Automorphism,
    coeffs: Vec<Elem>,
}

/// Result of the right Euclidean algorithm: `s a + t b = gcd`.
#[derive(Clone, Debug)]
pub struct RightGcd {
    pub gcd: SkewPoly,
    pub s: SkewPoly,
    pub t: SkewPoly,
}

/// The shortest `m >= n` with `X^m - 1 = f q_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodData {
    pub f: SkewPoly,
    pub m: u64,
    pub q_f: SkewPoly,
}

/// Sign-convention checks attached to a period computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    /// `q_f` is fixed by `theta^(m mod ord theta)` coefficientwise.
    pub q_fixed: bool,
    /// No proper power of `theta` fixes all of `f`'s coefficients.
    pub m_hypothesis: bool,
    /// `ord theta` divides `m`.
    pub order_divides_m: bool,
}

impl CorollaryReport {
    pub fn passes(&self) -> bool {
        self.q_fixed && (!self.m_hypothesis || self.order_divides_m)
    }
}

fn trimmed(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|e| e.is_zero()) {
        v.pop();
    }
    v
}

impl SkewPoly {
    pub fn from_coeffs(theta: &Automorphism, coeffs: Vec<Elem>) -> SkewPoly {
        SkewPoly { theta: theta.clone(), coeffs: trimmed(coeffs) }
    }

    pub fn zero(theta: &Automorphism) -> SkewPoly {
        SkewPoly { theta: theta.clone(), coeffs: Vec::new() }
    }

    pub fn constant(theta: &Automorphism, c: Elem) -> SkewPoly {
        SkewPoly::from_coeffs(theta, vec![c])
    }

    pub fn one(theta: &Automorphism) -> SkewPoly {
        SkewPoly::constant(theta, Elem::ONE)
    }

    /// `c X^e`.
    pub fn monomial(theta: &Automorphism, c: Elem, e: usize) -> SkewPoly {
        let mut v = vec![Elem::ZERO; e + 1];
        v[e] = c;
        SkewPoly::from_coeffs(theta, v)
    }

    pub fn x(theta: &Automorphism) -> SkewPoly {
        SkewPoly::monomial(theta, Elem::ONE, 1)
    }

    /// `X^m - 1`.
    pub fn x_pow_minus_one(theta: &Automorphism, m: usize) -> SkewPoly {
        let f = theta.field();
        let mut v = vec![Elem::ZERO; m + 1];
        v[m] = Elem::ONE;
        v[0] = f.sub(v[0], Elem::ONE);
        SkewPoly::from_coeffs(theta, v)
    }

    /// Parses text like `x^3 + a*x + 1`; each term is coefficient times `x^k`.
    pub fn parse(theta: &Automorphism, s: &str) -> Result<SkewPoly> {
        let c = text::parse_x_poly(theta.field(), s, "x")?;
        Ok(SkewPoly::from_coeffs(theta, c))
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    pub fn field(&self) -> &Field {
        self.theta.field()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to length `n`.
    pub fn coeffs_padded(&self, n: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(n.max(v.len()), Elem::ZERO);
        v
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    fn same_ring(&self, o: &SkewPoly) -> Result<()> {
        if self.theta == o.theta {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, coeffs: Vec<Elem>) -> SkewPoly {
        SkewPoly::from_coeffs(&self.theta, coeffs)
    }

    pub fn try_add(&self, o: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(o)?;
        let f = self.field();
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(self.with((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect()))
    }

    pub fn try_sub(&self, o: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(o)?;
        let f = self.field();
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(self.with((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect()))
    }

    /// `(sum a_i X^i)(sum b_j X^j) = sum a_i theta^i(b_j) X^(i+j)`.
    pub fn try_mul(&self, o: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(SkewPoly::zero(&self.theta));
        }
        let f = self.field();
        let mut r = vec![Elem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        let mut tb: Vec<Elem> = o.coeffs.clone();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for b in tb.iter_mut() {
                    *b = self.theta.apply(*b);
                }
            }
            if a.is_zero() {
                continue;
            }
            for (j, &b) in tb.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Ok(self.with(r))
    }

    /// `c * self` (left scalar multiplication, coefficientwise).
    pub fn scale_left(&self, c: Elem) -> SkewPoly {
        let f = self.field();
        self.with(self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// `self * c`, which twists: coefficient `i` picks up `theta^i(c)`.
    pub fn scale_right(&self, c: Elem) -> SkewPoly {
        let f = self.field();
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| f.mul(a, self.theta.apply_pow(c, i as i64)))
                .collect(),
        )
    }

    /// Left-normalises to a monic polynomial; the left ideal is unchanged.
    pub fn monic(&self) -> Result<SkewPoly> {
        let l = self.field().inv(self.lead()).ok_or(Error::DivisionByZero)?;
        Ok(self.scale_left(l))
    }

    /// `self * X^k`: a plain shift.
    pub fn shift(&self, k: usize) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        self.with(v)
    }

    /// `X^k * self`: shift and apply `theta^k` to every coefficient.
    pub fn x_times(&self, k: usize) -> SkewPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem::ZERO; k];
        v.extend(self.coeffs.iter().map(|&a| self.theta.apply_pow(a, k as i64)));
        self.with(v)
    }

    /// Applies `theta^k` to every coefficient.
    pub fn twist(&self, k: i64) -> SkewPoly {
        self.with(self.coeffs.iter().map(|&a| self.theta.apply_pow(a, k)).collect())
    }

    /// `(q, r)` with `self = q * b + r` and `deg r < deg b`.
    pub fn right_quotrem(&self, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(b)?;
        let nb = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len().saturating_sub(nb)];
        // theta^e(lb)^-1 for each shift e, computed lazily
        while r.len() > nb {
            let d = r.len() - 1;
            let c = r[d];
            if !c.is_zero() {
                let e = d - nb;
                let u = f.div(c, self.theta.apply_pow(lb, e as i64))?;
                q[e] = u;
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    let t = f.mul(u, self.theta.apply_pow(bj, e as i64));
                    r[e + j] = f.sub(r[e + j], t);
                }
            }
            r.pop();
        }
        Ok((self.with(q), self.with(r)))
    }

    /// `(q, r)` with `self = b * q + r` and `deg r < deg b`.
    pub fn left_quotrem(&self, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(b)?;
        let nb = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len().saturating_sub(nb)];
        while r.len() > nb {
            let d = r.len() - 1;
            let c = r[d];
            if !c.is_zero() {
                let e = d - nb;
                let u = self.theta.apply_pow(f.div(c, lb)?, -(nb as i64));
                q[e] = u;
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    let t = f.mul(bj, self.theta.apply_pow(u, j as i64));
                    r[e + j] = f.sub(r[e + j], t);
                }
            }
            r.pop();
        }
        Ok((self.with(q), self.with(r)))
    }

    /// Remainder of `self` modulo the left ideal `R m`.
    pub fn rem_right(&self, m: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_quotrem(m)?.1)
    }

    /// Whether `self = q * g` for some `q`.
    pub fn is_right_divisible_by(&self, g: &SkewPoly) -> Result<bool> {
        Ok(self.right_quotrem(g)?.1.is_zero())
    }

    /// Greatest common right divisor with left cofactors, made monic.
    pub fn right_gcd(&self, b: &SkewPoly) -> Result<RightGcd> {
        self.same_ring(b)?;
        let th = &self.theta;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (SkewPoly::one(th), SkewPoly::zero(th));
        let (mut t0, mut t1) = (SkewPoly::zero(th), SkewPoly::one(th));
        while !r1.is_zero() {
            let (q, r) = r0.right_quotrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Ok(RightGcd { gcd: r0, s: s0, t: t0 });
        }
        let l = self.field().inv(r0.lead()).ok_or(Error::DivisionByZero)?;
        Ok(RightGcd { gcd: r0.scale_left(l), s: s0.scale_left(l), t: t0.scale_left(l) })
    }

    /// Monic least common left multiple: the monic generator of `R a ∩ R b`.
    pub fn left_lcm(&self, b: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(b)?;
        if self.is_zero() || b.is_zero() {
            return Ok(SkewPoly::zero(&self.theta));
        }
        let th = &self.theta;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (SkewPoly::one(th), SkewPoly::zero(th));
        while !r1.is_zero() {
            let (q, r) = r0.right_quotrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // s1 * a + t1 * b = 0 with s1 of minimal degree
        (&s1 * self).monic()
    }

    /// Monic right divisors `g` of degree `d` with `self = q g`, as `(g, q)`.
    /// Candidates with zero constant term are skipped unless asked for.
    pub fn right_divisors(
        &self,
        d: usize,
        include_zero_constant: bool,
        budget: u64,
    ) -> Result<Vec<(SkewPoly, SkewPoly)>> {
        let n = self.degree().ok_or(Error::DivisionByZero)?;
        if d > n {
            return Ok(Vec::new());
        }
        let f = self.field();
        let q = f.order() as u128;
        let count = q.checked_pow(d as u32).unwrap_or(u128::MAX);
        check_budget("right divisor candidates", count, budget as u128)?;
        let mut out = Vec::new();
        for idx in 0..count as u64 {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                c.push(Elem((x % q as u64) as u32));
                x /= q as u64;
            }
            c.push(Elem::ONE);
            if c[0].is_zero() && !include_zero_constant {
                continue;
            }
            let g = self.with(c);
            let (qt, r) = self.right_quotrem(&g)?;
            if r.is_zero() {
                out.push((g, qt));
            }
        }
        Ok(out)
    }

    /// Coefficients `f_i` with `monic(self) = X^n - sum f_i X^i`.
    pub fn companion_row(&self) -> Result<Vec<Elem>> {
        let m = self.monic()?;
        let n = m.degree().unwrap_or(0);
        let f = self.field();
        Ok((0..n).map(|i| f.neg(m.coeff(i))).collect())
    }

    /// `(-1)^n (X^n - sum f_i X^i)`, the sign-normalised associate.
    pub fn sign_normalized(&self) -> Result<SkewPoly> {
        let m = self.monic()?;
        let n = m.degree().unwrap_or(0);
        if n % 2 == 1 {
            Ok(-&m)
        } else {
            Ok(m)
        }
    }

    fn check_unit_constant(&self) -> Result<usize> {
        let n = self.degree().ok_or(Error::DivisionByZero)?;
        if n == 0 {
            return Err(Error::domain("polynomial must have positive degree"));
        }
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(n)
    }

    /// The shortest `m` with `X^m - 1 = self * q_f`, with `q_f`.
    ///
    /// Remainders of `X^i - 1` modulo the right ideal `self R` satisfy
    /// `r_{i+1} = (r_i X + X - 1) mod self R`, so each step costs `O(n)`.
    pub fn period(&self) -> Result<PeriodData> {
        let n = self.check_unit_constant()?;
        let f = self.field();
        let bound = (f.order() as u128).checked_pow(n as u32).map(|v| v + n as u128 - 2);
        let lead = self.lead();
        let neg_one = f.neg(Elem::ONE);
        // r holds n + 1 slots; r[n] is the overflow slot
        let mut r = vec![Elem::ZERO; n + 1];
        let mut i: u64 = 0;
        loop {
            i += 1;
            if let Some(b) = bound {
                if i as u128 > b {
                    return Err(Error::domain("period exceeds q^n + n - 2"));
                }
            }
            // r <- r X + X - 1
            for j in (1..=n).rev() {
                r[j] = r[j - 1];
            }
            r[0] = neg_one;
            r[1] = f.add(r[1], Elem::ONE);
            let c = r[n];
            if !c.is_zero() {
                let u = self.theta.apply_pow(f.div(c, lead)?, -(n as i64));
                for j in 0..=n {
                    let t = f.mul(self.coeffs[j], self.theta.apply_pow(u, j as i64));
                    r[j] = f.sub(r[j], t);
                }
            }
            if r.iter().all(|e| e.is_zero()) && i >= n as u64 {
                break;
            }
        }
        let xm = SkewPoly::x_pow_minus_one(&self.theta, i as usize);
        let (q_f, rem) = xm.left_quotrem(self)?;
        debug_assert!(rem.is_zero());
        Ok(PeriodData { f: self.clone(), m: i, q_f })
    }

    /// `1 - sum_{i=1}^n theta^i(f_{n-i}) X^i` for `monic(self) = X^n - sum f_i X^i`.
    pub fn star(&self) -> Result<SkewPoly> {
        let n = self.check_unit_constant()?;
        let fr = self.companion_row()?;
        let f = self.field();
        let mut c = vec![Elem::ZERO; n + 1];
        c[0] = Elem::ONE;
        for i in 1..=n {
            c[i] = f.neg(self.theta.apply_pow(fr[n - i], i as i64));
        }
        Ok(self.with(c))
    }

    /// The shortest `j >= 1` with `X^j - 1 = p * self.star()`.
    pub fn period_star(&self) -> Result<u64> {
        let n = self.check_unit_constant()?;
        let fs = self.star()?;
        let f = self.field();
        let bound = (f.order() as u128).checked_pow(n as u32).map(|v| v + n as u128 - 2);
        let lead = fs.lead();
        let neg_one = f.neg(Elem::ONE);
        let mut r = vec![Elem::ZERO; n + 1];
        let mut j: u64 = 0;
        loop {
            j += 1;
            if let Some(b) = bound {
                if j as u128 > b {
                    return Err(Error::domain("star period exceeds q^n + n - 2"));
                }
            }
            // r <- X r + X - 1
            for k in (1..=n).rev() {
                r[k] = self.theta.apply(r[k - 1]);
            }
            r[0] = neg_one;
            r[1] = f.add(r[1], Elem::ONE);
            let c = r[n];
            if !c.is_zero() {
                let u = f.div(c, lead)?;
                for k in 0..=n {
                    r[k] = f.sub(r[k], f.mul(u, fs.coeffs[k]));
                }
            }
            if r.iter().all(|e| e.is_zero()) {
                return Ok(j);
            }
        }
    }

    /// Least-degree `t` with `t X = 1` modulo `R self`.
    pub fn x_inverse(&self) -> Result<SkewPoly> {
        let n = self.check_unit_constant()?;
        let fr = self.companion_row()?;
        let f = self.field();
        // t X mod R f = sum_{i<n-1} t_i X^(i+1) + t_{n-1} sum f_j X^j
        let inv0 = f.inv(fr[0]).ok_or(Error::ZeroConstantTerm)?;
        let mut t = vec![Elem::ZERO; n];
        t[n - 1] = inv0;
        for j in 1..n {
            t[j - 1] = f.neg(f.mul(inv0, fr[j]));
        }
        let t = self.with(t);
        let check = (&t * &SkewPoly::x(&self.theta)).rem_right(self)?;
        if check != SkewPoly::one(&self.theta) {
            return Err(Error::Certification("x_inverse failed its check".into()));
        }
        Ok(t)
    }

    /// Runs the two sign-convention checks on a computed period.
    pub fn corollary_checks(pd: &PeriodData) -> Result<CorollaryReport> {
        let th = pd.f.theta();
        let s = th.order() as u64;
        let r = (pd.m % s) as i64;
        let q_fixed = pd.q_f.twist(r) == pd.q_f;
        let fr = pd.f.companion_row()?;
        let m_hypothesis = (1..s as i64).all(|t| fr.iter().any(|&c| th.apply_pow(c, t) != c));
        Ok(CorollaryReport { q_fixed, m_hypothesis, order_divides_m: pd.m.is_multiple_of(s) })
    }

    /// Period for `theta = id` through companion-matrix orders: with
    /// `p0 = ord det(A)` and `B = A^p0`, `m = p0 * lcm(orders of the
    /// rational-form blocks of B)`.
    pub fn period_commutative(&self, budget: u64) -> Result<u64> {
        if !self.theta.is_identity() {
            return Err(Error::domain("commutative period needs the identity automorphism"));
        }
        self.check_unit_constant()?;
        let a = crate::matrix::Matrix::companion(self)?;
        let p0 = self.field().mult_order(a.det()?)?;
        let b = a.pow(p0)?;
        let rcf = b.rational_canonical_form()?;
        let mut l = 1u64;
        for blk in &rcf.invariant_factors {
            let o = crate::matrix::Matrix::companion(blk)?.order(budget)?;
            l = crate::field::lcm(l, o);
        }
        Ok(l * p0)
    }

    /// Evaluates at a square matrix; only meaningful when `theta` is the identity.
    pub fn eval_matrix(&self, m: &crate::matrix::Matrix) -> Result<crate::matrix::Matrix> {
        if !self.theta.is_identity() {
            return Err(Error::domain("matrix evaluation needs the identity automorphism"));
        }
        m.eval_poly(&self.coeffs)
    }

    /// Text form, e.g. `x^3 + a*x + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = self.field();
        let mut first = true;
        for e in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[e];
            if c.is_zero() {
                continue;
            }
            if !first {
                out.write_str(" + ")?;
            }
            first = false;
            let ct = f.format(c);
            let ct = if ct.contains('+') && e > 0 { format!("({ct})") } else { ct };
            let mono = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            match (e, c == Elem::ONE) {
                (0, _) => out.write_str(&ct)?,
                (_, true) => out.write_str(&mono)?,
                _ => write!(out, "{ct}*{mono}")?,
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&SkewPoly> for &SkewPoly {
            type Output = SkewPoly;
            /// Panics if the operands live in different rings; use the
            /// `try_` method for a checked version.
            fn $m(self, o: &SkewPoly) -> SkewPoly {
                self.$imp(o).expect("skew polynomials over different rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        let f = self.field();
        self.with(self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}
