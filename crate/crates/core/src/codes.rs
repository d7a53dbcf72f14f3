//! Linear codes, module `theta`-codes `(Rg / Rf)` and product `T`-codes
//! `(C_1 x ... x C_r) C`.
//!
//! Coordinates of `F_q^n` are identified with `R / R f` by
//! `pi(c_0, ..., c_{n-1}) = sum c_i X^i`; then `pi(v T) = X pi(v) mod R f`
//! for `T = Theta ∘ companion(f)`.

use crate::error::{check_budget, Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::matrix::{in_span, Matrix, Vector};
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

/// Default limit on enumerated codewords.
pub const DISTANCE_BUDGET: u64 = 1 << 20;

/// A subspace of `F_q^n`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    gen: Matrix,
}

impl LinearCode {
    /// Row space of `m`; `m` may have dependent rows.
    pub fn from_generator(m: &Matrix) -> LinearCode {
        LinearCode { n: m.cols(), gen: m.row_space() }
    }

    pub fn from_rows(field: &Field, rows: &[Vector], n: usize) -> Result<LinearCode> {
        Ok(LinearCode::from_generator(&Matrix::from_rows_with_cols(field, rows, n)?))
    }

    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode { n, gen: Matrix::zeros(field, 0, n) }
    }

    pub fn full(field: &Field, n: usize) -> LinearCode {
        LinearCode { n, gen: Matrix::identity(field, n) }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical (reduced echelon) generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::dim("word length differs from the code length"));
        }
        in_span(&self.gen, v)
    }

    pub fn contains_code(&self, o: &LinearCode) -> Result<bool> {
        for r in o.gen.row_vectors() {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image under `v -> v A`.
    pub fn map(&self, a: &Matrix) -> Result<LinearCode> {
        if self.gen.rows() == 0 {
            return Ok(LinearCode::zero(self.field(), a.cols()));
        }
        Ok(LinearCode::from_generator(&self.gen.mul(a)?))
    }

    /// Calls `visit` on every codeword, zero included.
    pub fn for_each_codeword(&self, budget: u64, mut visit: impl FnMut(&[Elem])) -> Result<()> {
        let f = self.field();
        let q = f.order() as u128;
        let k = self.dim();
        let total = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        check_budget("codewords", total, budget as u128)?;
        let rows = self.gen.row_vectors();
        let mut digits = vec![0u32; k];
        let mut cw = vec![Elem::ZERO; self.n];
        visit(&cw);
        let qm1 = Elem(q as u32 - 1);
        for _ in 1..total {
            let mut i = 0;
            // odometer step, updating the word incrementally
            loop {
                let old = Elem(digits[i]);
                if digits[i] as u128 == q - 1 {
                    digits[i] = 0;
                    let d = f.neg(qm1);
                    for (c, &r) in cw.iter_mut().zip(&rows[i]) {
                        *c = f.add(*c, f.mul(d, r));
                    }
                    i += 1;
                } else {
                    digits[i] += 1;
                    let d = f.sub(Elem(digits[i]), old);
                    for (c, &r) in cw.iter_mut().zip(&rows[i]) {
                        *c = f.add(*c, f.mul(d, r));
                    }
                    break;
                }
            }
            visit(&cw);
        }
        Ok(())
    }

    pub fn codewords(&self, budget: u64) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        self.for_each_codeword(budget, |c| out.push(c.to_vec()))?;
        Ok(out)
    }

    /// Minimum Hamming weight of a nonzero codeword, by enumeration.
    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::domain("the zero code has no minimum distance"));
        }
        let mut best = self.n;
        self.for_each_codeword(budget, |c| {
            let w = weight(c);
            if w > 0 && w < best {
                best = w;
            }
        })?;
        Ok(best)
    }
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// `pi(v) = sum v_i X^i`.
pub fn pi(theta: &Automorphism, v: &[Elem]) -> SkewPoly {
    SkewPoly::from_coeffs(theta, v.to_vec())
}

/// Inverse of [`pi`], padded to length `n`.
pub fn pi_inv(p: &SkewPoly, n: usize) -> Result<Vector> {
    if p.degree().is_some_and(|d| d >= n) {
        return Err(Error::dim(format!("polynomial of degree {:?} does not fit in length {n}", p.degree())));
    }
    Ok(p.coeffs_padded(n))
}

/// Systematic matrices of a module code: `G = (-S | I_k)`, `H = (I_{n-k} | S^t)`.
#[derive(Clone, Debug)]
pub struct ParityCheck {
    pub s: Matrix,
    pub g: Matrix,
    pub h: Matrix,
}

/// The module `theta`-code `(Rg / Rf)`: all `p g` with `deg p < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleThetaCode {
    f: SkewPoly,
    g: SkewPoly,
}

impl ModuleThetaCode {
    /// `f` and `g` are made monic; `g` must right-divide `f`.
    pub fn new(f: &SkewPoly, g: &SkewPoly) -> Result<ModuleThetaCode> {
        if f.theta() != g.theta() {
            return Err(Error::FieldMismatch);
        }
        let nf = f.degree().ok_or(Error::DivisionByZero)?;
        if nf == 0 {
            return Err(Error::domain("f must have positive degree"));
        }
        if f.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if g.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let f = f.monic()?;
        let g = g.monic()?;
        if !f.is_right_divisible_by(&g)? {
            return Err(Error::domain(format!("{g} is not a right divisor of {f}")));
        }
        Ok(ModuleThetaCode { f, g })
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn g(&self) -> &SkewPoly {
        &self.g
    }

    pub fn theta(&self) -> &Automorphism {
        self.f.theta()
    }

    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn n(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn k(&self) -> usize {
        self.n() - self.g.degree().unwrap_or(0)
    }

    /// `T = Theta ∘ companion(f)`.
    pub fn semilinear_map(&self) -> Result<SemiLinearMap> {
        SemiLinearMap::from_polynomial(&self.f)
    }

    /// Rows `pi^-1(X^i g)` for `i < k`, i.e. `g (Theta ∘ A)^i`.
    pub fn generator_matrix(&self) -> Result<Matrix> {
        let n = self.n();
        let rows = (0..self.k()).map(|i| pi_inv(&self.g.x_times(i), n)).collect::<Result<Vec<_>>>()?;
        Matrix::from_rows_with_cols(self.field(), &rows, n)
    }

    pub fn linear_code(&self) -> Result<LinearCode> {
        Ok(LinearCode::from_generator(&self.generator_matrix()?))
    }

    /// `pi(v) mod R g`.
    pub fn syndrome(&self, v: &[Elem]) -> Result<SkewPoly> {
        if v.len() != self.n() {
            return Err(Error::dim("word length differs from the code length"));
        }
        pi(self.theta(), v).rem_right(&self.g)
    }

    pub fn parity_check(&self) -> Result<ParityCheck> {
        let (n, k) = (self.n(), self.k());
        let r = n - k;
        let fld = self.field();
        let mut s = Matrix::zeros(fld, k, r);
        for i in 0..k {
            let xp = SkewPoly::monomial(self.theta(), Elem::ONE, r + i);
            let rem = xp.rem_right(&self.g)?;
            for j in 0..r {
                s.set(i, j, rem.coeff(j));
            }
        }
        let g = s.neg().hstack(&Matrix::identity(fld, k))?;
        let h = Matrix::identity(fld, r).hstack(&s.transpose())?;
        Ok(ParityCheck { s, g, h })
    }

    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        self.linear_code()?.min_distance(budget)
    }
}

/// `(C_1 x ... x C_r) C` with `C` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTCode {
    components: Vec<ModuleThetaCode>,
    c: Matrix,
}

impl ProductTCode {
    pub fn new(components: Vec<ModuleThetaCode>, c: Matrix) -> Result<ProductTCode> {
        let first = components.first().ok_or_else(|| Error::domain("a product code needs a component"))?;
        let theta = first.theta().clone();
        if components.iter().any(|m| m.theta() != &theta) || c.field() != theta.field() {
            return Err(Error::FieldMismatch);
        }
        let n: usize = components.iter().map(|m| m.n()).sum();
        if c.rows() != n || c.cols() != n {
            return Err(Error::dim(format!("C must be {n}x{n}")));
        }
        if c.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(ProductTCode { components, c })
    }

    /// A single component with `C = I`.
    pub fn single(code: ModuleThetaCode) -> ProductTCode {
        let n = code.n();
        let c = Matrix::identity(code.field(), n);
        ProductTCode { components: vec![code], c }
    }

    pub fn components(&self) -> &[ModuleThetaCode] {
        &self.components
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn theta(&self) -> &Automorphism {
        self.components[0].theta()
    }

    pub fn field(&self) -> &Field {
        self.c.field()
    }

    pub fn n(&self) -> usize {
        self.c.rows()
    }

    pub fn k(&self) -> usize {
        self.components.iter().map(|m| m.k()).sum()
    }

    /// Component lengths `n_i`.
    pub fn lengths(&self) -> Vec<usize> {
        self.components.iter().map(|m| m.n()).collect()
    }

    /// `blockdiag(G_i) C`.
    pub fn generator_matrix(&self) -> Result<Matrix> {
        let gs = self.components.iter().map(|m| m.generator_matrix()).collect::<Result<Vec<_>>>()?;
        Matrix::block_diag(self.field(), &gs)?.mul(&self.c)
    }

    pub fn linear_code(&self) -> Result<LinearCode> {
        Ok(LinearCode::from_generator(&self.generator_matrix()?))
    }

    /// The code before applying `C`.
    pub fn inner_code(&self) -> Result<LinearCode> {
        let gs = self.components.iter().map(|m| m.generator_matrix()).collect::<Result<Vec<_>>>()?;
        Ok(LinearCode::from_generator(&Matrix::block_diag(self.field(), &gs)?))
    }

    /// `T = C^-1 (Theta ∘ diag(companion(f_i))) C`.
    pub fn semilinear_map(&self) -> Result<SemiLinearMap> {
        let blocks = self.components.iter().map(|m| Matrix::companion(m.f())).collect::<Result<Vec<_>>>()?;
        let d = Matrix::block_diag(self.field(), &blocks)?;
        let m = self.c.inverse()?.twist(self.theta(), 1)?.mul(&d)?.mul(&self.c)?;
        SemiLinearMap::new(self.theta(), m)
    }

    /// `blockdiag(H_i)`, a parity check of the inner code.
    pub fn block_parity_check(&self) -> Result<Matrix> {
        let hs = self.components.iter().map(|m| Ok(m.parity_check()?.h)).collect::<Result<Vec<_>>>()?;
        Matrix::block_diag(self.field(), &hs)
    }

    /// Splits a vector of the inner product space into components.
    pub fn split(&self, v: &[Elem]) -> Result<Vec<Vector>> {
        if v.len() != self.n() {
            return Err(Error::dim("word length differs from the code length"));
        }
        let mut out = Vec::new();
        let mut off = 0;
        for m in &self.components {
            out.push(v[off..off + m.n()].to_vec());
            off += m.n();
        }
        Ok(out)
    }

    /// Parses the descriptor format:
    ///
    /// ```text
    /// field p=2,s=2,mod=x^2+x+1,gen=a
    /// theta 1
    /// f=x^3+a*x+1; g=x+1
    /// C=1,0,0; 0,1,0; 0,0,1
    /// ```
    ///
    /// One `f=...; g=...` line per component; `C` defaults to the identity
    /// and `#` starts a comment.
    pub fn parse_descriptor(text: &str) -> Result<ProductTCode> {
        let mut field = None;
        let mut t = None;
        let mut comps: Vec<(String, String)> = Vec::new();
        let mut ctext = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = strip_key(line, "field") {
                field = Some(Field::parse_spec(rest)?);
            } else if let Some(rest) = strip_key(line, "theta").or_else(|| strip_key(line, "t")) {
                t = Some(rest.parse::<u32>().map_err(|_| Error::parse(format!("bad exponent {rest:?}")))?);
            } else if let Some(rest) = line.strip_prefix("C=") {
                ctext = Some(rest.to_string());
            } else if line.starts_with("f=") {
                let (fp, gp) = line
                    .split_once(';')
                    .ok_or_else(|| Error::parse(format!("expected 'f=...; g=...', got {line:?}")))?;
                let fp = fp.trim().strip_prefix("f=").unwrap_or("");
                let gp = gp
                    .trim()
                    .strip_prefix("g=")
                    .ok_or_else(|| Error::parse(format!("expected g= in {line:?}")))?;
                comps.push((fp.to_string(), gp.to_string()));
            } else {
                return Err(Error::parse(format!("unrecognised descriptor line {line:?}")));
            }
        }
        let field = field.ok_or_else(|| Error::parse("descriptor needs a field line"))?;
        let theta = Automorphism::new(&field, t.unwrap_or(0));
        let mut components = Vec::new();
        for (fp, gp) in comps {
            let f = SkewPoly::parse(&theta, &fp)?;
            let g = SkewPoly::parse(&theta, &gp)?;
            components.push(ModuleThetaCode::new(&f, &g)?);
        }
        let n: usize = components.iter().map(|m| m.n()).sum();
        let c = match ctext {
            Some(s) => Matrix::parse(&field, &s)?,
            None => Matrix::identity(&field, n),
        };
        ProductTCode::new(components, c)
    }

    pub fn to_descriptor(&self) -> String {
        let mut out = format!("field {}\ntheta {}\n", self.field().spec_string(), self.theta().exponent());
        for m in &self.components {
            out.push_str(&format!("f={}; g={}\n", m.f(), m.g()));
        }
        out.push_str(&format!("C={}\n", self.c.to_text()));
        out
    }
}

fn strip_key<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    let rest = rest.strip_prefix('=').or_else(|| rest.strip_prefix(' '))?;
    Some(rest.trim())
}
