//! Dense matrices over `F_q` acting on row vectors from the right.

use std::fmt;

use crate::error::{check_budget, Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::skew_poly::SkewPoly;
use crate::text;

pub type Vector = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form with pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// `M = C^-1 diag(companion(blocks)) C`; each block divides the previous.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub invariant_factors: Vec<SkewPoly>,
    pub c: Matrix,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but fixes the width, so zero rows give `0 x cols`.
    pub fn from_rows_with_cols(field: &Field, rows: &[Vector], cols: usize) -> Result<Matrix> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dim("ragged rows"));
        }
        let q = field.order();
        if rows.iter().flatten().any(|e| e.index() >= q) {
            return Err(Error::domain("entry outside the field"));
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    fn check_field(&self, o: &Matrix) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_field(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::dim("matrix sum shapes differ"));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix { data: self.data.iter().map(|&a| f.mul(c, a)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        self.check_field(o)?;
        if self.cols != o.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = &self.field;
        let mut r = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(r.get(i, j), f.mul(a, o.get(k, j)));
                    r.set(i, j, v);
                }
            }
        }
        Ok(r)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::dim(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("power of a non-square matrix"));
        }
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(result)
    }

    /// `sum c_i M^i` by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[Elem]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Applies `theta^k` to every entry.
    pub fn twist(&self, theta: &Automorphism, k: i64) -> Result<Matrix> {
        if theta.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { data: self.data.iter().map(|&a| theta.apply_pow(a, k)).collect(), ..self.clone() })
    }

    pub fn rref(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let fac = m.get(i, c);
                if fac.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(fac, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Nonzero rows of the reduced echelon form: canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let e = self.rref();
        let k = e.pivots.len();
        Matrix {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            data: e.matrix.data[..k * self.cols].to_vec(),
        }
    }

    /// Basis of `{x : x M = 0}`, in reduced echelon form.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().right_kernel_rows().row_space()
    }

    /// Rows spanning `{y : M y^t = 0}`.
    fn right_kernel_rows(&self) -> Matrix {
        let f = &self.field;
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (i, &pc) in e.pivots.iter().enumerate() {
                out.set(k, pc, f.neg(e.matrix.get(i, fc)));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, e.matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for i in c + 1..n {
                let fac = f.mul(m.get(i, c), inv);
                if fac.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(fac, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Some `x` with `x M = b`, if one exists.
    pub fn solve_left(&self, b: &[Elem]) -> Result<Option<Vector>> {
        if b.len() != self.cols {
            return Err(Error::dim("right-hand side length"));
        }
        // x M = b  <=>  M^t x^t = b^t
        let f = &self.field;
        let n = self.rows;
        let mut aug = Matrix::zeros(f, self.cols, n + 1);
        for i in 0..self.cols {
            for j in 0..n {
                aug.set(i, j, self.get(j, i));
            }
            aug.set(i, n, b[i]);
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![Elem::ZERO; n];
        for (i, &pc) in e.pivots.iter().enumerate() {
            x[pc] = e.matrix.get(i, n);
        }
        Ok(Some(x))
    }

    /// Least `k >= 1` with `M^k = I`.
    pub fn order(&self, budget: u64) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::dim("order of a non-square matrix"));
        }
        if self.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let id = Matrix::identity(&self.field, self.rows);
        let mut acc = self.clone();
        let mut k = 1u64;
        while acc != id {
            k += 1;
            check_budget("matrix order", k as u128, budget as u128)?;
            acc = acc.mul(self)?;
        }
        Ok(k)
    }

    /// Companion with superdiagonal ones and last row `(f_0, ..., f_{n-1})`,
    /// where `monic(f) = X^n - sum f_i X^i`.
    pub fn companion(f: &SkewPoly) -> Result<Matrix> {
        let row = f.companion_row()?;
        let n = row.len();
        let fld = f.field();
        let mut m = Matrix::zeros(fld, n, n);
        for i in 0..n.saturating_sub(1) {
            m.set(i, i + 1, Elem::ONE);
        }
        for (j, &c) in row.iter().enumerate() {
            m.set(n - 1, j, c);
        }
        Ok(m)
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Result<Matrix> {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if &b.field != field {
                return Err(Error::FieldMismatch);
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(m)
    }

    /// Stacks row blocks vertically.
    pub fn vstack(&self, o: &Matrix) -> Result<Matrix> {
        self.check_field(o)?;
        if self.cols != o.cols {
            return Err(Error::dim("vstack widths differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + o.rows, cols: self.cols, data })
    }

    /// Places blocks side by side.
    pub fn hstack(&self, o: &Matrix) -> Result<Matrix> {
        self.transpose().vstack(&o.transpose()).map(|m| m.transpose())
    }

    /// Columns `c0..c1`.
    pub fn columns(&self, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, c1 - c0);
        for i in 0..self.rows {
            for j in c0..c1 {
                m.set(i, j - c0, self.get(i, j));
            }
        }
        m
    }

    /// Parses `0,1,0; 0,0,1; 1,a,0`. Empty text gives a `0 x 0` matrix.
    pub fn parse(field: &Field, s: &str) -> Result<Matrix> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Matrix::zeros(field, 0, 0));
        }
        let rows = s
            .split(';')
            .map(|r| r.split(',').map(|e| text::parse_element(field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, &rows)
    }

    /// Text form accepted by [`Matrix::parse`].
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| self.field.format(e)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Basis of `{v : v M^i y = 0 for i < d}`, the usual invariant complement.
    fn krylov_annihilator(&self, y: &[Elem], d: usize) -> Result<Matrix> {
        let n = self.rows;
        let mut cols = Matrix::zeros(&self.field, n, d);
        let mut cur = y.to_vec();
        for k in 0..d {
            for i in 0..n {
                cols.set(i, k, cur[i]);
            }
            // cur <- M cur (column action)
            let mut nxt = vec![Elem::ZERO; n];
            for (i, o) in nxt.iter_mut().enumerate() {
                for (j, &c) in cur.iter().enumerate() {
                    *o = self.field.add(*o, self.field.mul(self.get(i, j), c));
                }
            }
            cur = nxt;
        }
        Ok(cols.left_kernel())
    }

    /// Rational canonical form over the field generated by the entries.
    pub fn rational_canonical_form(&self) -> Result<RationalForm> {
        if !self.is_square() {
            return Err(Error::dim("rational form of a non-square matrix"));
        }
        let id = Automorphism::identity(&self.field);
        let n = self.rows;
        if n == 0 {
            return Ok(RationalForm { invariant_factors: Vec::new(), c: self.clone() });
        }
        let step = |v: &Vector| self.vec_mul(v).expect("square");
        // vector whose local minimal polynomial is the minimal polynomial
        let mut best: Option<(Vector, SkewPoly)> = None;
        for i in 0..n {
            let mut e = vec![Elem::ZERO; n];
            e[i] = Elem::ONE;
            let pe = local_minpoly(&id, &e, step)?;
            best = Some(match best {
                None => (e, pe),
                Some((u, pu)) => combine_max(self, &id, (u, pu), (e, pe))?,
            });
        }
        let (v, mu) = best.expect("n > 0");
        let d = mu.degree().unwrap_or(0);
        let mut basis = Vec::with_capacity(d);
        let mut cur = v;
        for _ in 0..d {
            basis.push(cur.clone());
            cur = step(&cur);
        }
        let w = Matrix::from_rows_with_cols(&self.field, &basis, n)?;
        if d == n {
            return Ok(RationalForm { invariant_factors: vec![mu], c: w });
        }
        // functional y with w_j . y = delta_{j, d-1}
        let mut target = vec![Elem::ZERO; d];
        target[d - 1] = Elem::ONE;
        let y = w.transpose().solve_left(&target)?.ok_or(Error::Singular)?;
        let comp = self.krylov_annihilator(&y, d)?;
        // restriction of M to the complement, in its basis
        let mut rows = Vec::with_capacity(comp.rows);
        for r in comp.row_vectors() {
            let img = step(&r);
            rows.push(comp.solve_left(&img)?.ok_or_else(|| {
                Error::Certification("complement is not invariant".into())
            })?);
        }
        let restricted = Matrix::from_rows_with_cols(&self.field, &rows, comp.rows)?;
        let sub = restricted.rational_canonical_form()?;
        let c_rest = sub.c.mul(&comp)?;
        let mut factors = vec![mu];
        factors.extend(sub.invariant_factors);
        Ok(RationalForm { invariant_factors: factors, c: w.vstack(&c_rest)? })
    }

    /// Minimal polynomial (monic, identity automorphism).
    pub fn minimal_polynomial(&self) -> Result<SkewPoly> {
        let rcf = self.rational_canonical_form()?;
        Ok(rcf.invariant_factors.into_iter().next().unwrap_or_else(|| {
            SkewPoly::one(&Automorphism::identity(&self.field))
        }))
    }

    /// Characteristic polynomial `det(X I - M)`, monic.
    pub fn characteristic_polynomial(&self) -> Result<SkewPoly> {
        let rcf = self.rational_canonical_form()?;
        let mut acc = SkewPoly::one(&Automorphism::identity(&self.field));
        for p in &rcf.invariant_factors {
            acc = &acc * p;
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Basis of the cyclic space of `v` under `step`, plus the relation
/// `v T^d = sum c_i v T^i` closing it.
pub fn krylov(
    field: &Field,
    v: &[Elem],
    mut step: impl FnMut(&Vector) -> Vector,
) -> Result<(Vec<Vector>, Vec<Elem>)> {
    let n = v.len();
    let mut basis: Vec<Vector> = Vec::new();
    if v.iter().all(|e| e.is_zero()) {
        return Ok((basis, Vec::new()));
    }
    let mut cur = v.to_vec();
    loop {
        if !basis.is_empty() {
            let b = Matrix::from_rows_with_cols(field, &basis, n)?;
            if let Some(c) = b.solve_left(&cur)? {
                return Ok((basis, c));
            }
        }
        if basis.len() == n {
            return Err(Error::Certification("cyclic space exceeds the ambient dimension".into()));
        }
        let nxt = step(&cur);
        basis.push(cur);
        cur = nxt;
    }
}

/// Monic `X^d - sum c_i X^i` annihilating `v` under `step`.
pub fn local_minpoly(
    id: &Automorphism,
    v: &[Elem],
    step: impl FnMut(&Vector) -> Vector,
) -> Result<SkewPoly> {
    let f = id.field();
    let (basis, c) = krylov(f, v, step)?;
    let d = basis.len();
    let mut co: Vec<Elem> = c.iter().map(|&x| f.neg(x)).collect();
    co.resize(d, Elem::ZERO);
    co.push(Elem::ONE);
    Ok(SkewPoly::from_coeffs(id, co))
}

/// `v p(M)` without forming `p(M)`.
fn apply_poly_vec(m: &Matrix, p: &SkewPoly, v: &[Elem]) -> Result<Vector> {
    let f = m.field();
    let mut acc = vec![Elem::ZERO; v.len()];
    let mut cur = v.to_vec();
    for (i, &c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            cur = m.vec_mul(&cur)?;
        }
        for (a, &x) in acc.iter_mut().zip(&cur) {
            *a = f.add(*a, f.mul(c, x));
        }
    }
    Ok(acc)
}

fn exact_div(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly> {
    let (q, r) = a.right_quotrem(b)?;
    if !r.is_zero() {
        return Err(Error::Certification("inexact polynomial division".into()));
    }
    Ok(q)
}

/// From vectors with local minimal polynomials `a` and `b`, a vector whose
/// local minimal polynomial is `lcm(a, b)`. The coprime split uses only
/// gcds, so no factorisation or field extension is involved.
fn combine_max(
    m: &Matrix,
    id: &Automorphism,
    (u, a): (Vector, SkewPoly),
    (w, b): (Vector, SkewPoly),
) -> Result<(Vector, SkewPoly)> {
    let g = a.right_gcd(&b)?.gcd;
    let mut a1 = a.clone();
    let mut b1 = exact_div(&b, &g)?;
    loop {
        let h = a1.right_gcd(&b1)?.gcd;
        if h.degree() == Some(0) {
            break;
        }
        a1 = exact_div(&a1, &h)?;
        b1 = &b1 * &h;
    }
    let u1 = apply_poly_vec(m, &exact_div(&a, &a1)?, &u)?;
    let w1 = apply_poly_vec(m, &exact_div(&b, &b1)?, &w)?;
    let f = id.field();
    let v: Vector = u1.iter().zip(&w1).map(|(&x, &y)| f.add(x, y)).collect();
    Ok((v, (&a1 * &b1).monic()?))
}

/// Canonical basis (reduced echelon rows) of the span of `rows`.
pub fn span(field: &Field, rows: &[Vector], n: usize) -> Result<Matrix> {
    Ok(Matrix::from_rows_with_cols(field, rows, n)?.row_space())
}

/// Whether `v` lies in the row space of `basis`.
pub fn in_span(basis: &Matrix, v: &[Elem]) -> Result<bool> {
    if basis.rows() == 0 {
        return Ok(v.iter().all(|e| e.is_zero()));
    }
    Ok(basis.solve_left(v)?.is_some())
}

/// Row space of the intersection of two row spaces.
pub fn intersect(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let f = a.field();
    if a.rows() == 0 || b.rows() == 0 {
        return Ok(Matrix::zeros(f, 0, a.cols()));
    }
    let k = a.vstack(&b.neg())?.left_kernel();
    let coeffs = k.columns(0, a.rows());
    Ok(coeffs.mul(a)?.row_space())
}

/// Row space of the sum of two row spaces.
pub fn sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Ok(a.vstack(b)?.row_space())
}
