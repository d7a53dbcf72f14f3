//! The embedding `i: F_q^n -> F_q^(m_1 + ... + m_r)` of a product
//! `T`-code's ambient space into a product of `theta`-cyclic spaces.
//!
//! For one component, `i(v) = v Q` where row `j` of `Q` is
//! `q_f (Theta ∘ P)^j` and `P` is the `m`-cycle `(v P)_j = v_(j-1)`.
//! In polynomial terms `i` is `a(X) -> a(X) q_f` into `R / R(X^m - 1)`.

use crate::codes::{LinearCode, ProductTCode};
use crate::error::{Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::matrix::{Matrix, Vector};
use crate::skew_poly::{PeriodData, SkewPoly};

#[derive(Clone, Debug)]
pub struct EmbeddingData {
    theta: Automorphism,
    periods: Vec<PeriodData>,
    q_mats: Vec<Matrix>,
    q_hat: Matrix,
    c: Matrix,
    c_inv: Matrix,
    b: Matrix,
    rank: usize,
}

/// `Q` for one component: rows `q_f (Theta ∘ P)^j`, `j < n`.
pub fn q_matrix(pd: &PeriodData) -> Result<Matrix> {
    let n = pd.f.degree().unwrap_or(0);
    let m = pd.m as usize;
    let th = pd.f.theta();
    let mut rows = Vec::with_capacity(n);
    let mut cur = pd.q_f.coeffs_padded(m);
    for _ in 0..n {
        rows.push(cur.clone());
        cur = theta_p_step(th, &cur);
    }
    Matrix::from_rows_with_cols(th.field(), &rows, m)
}

/// `v (Theta ∘ P)`: apply `theta` and rotate one place to the right.
pub fn theta_p_step(theta: &Automorphism, v: &[Elem]) -> Vector {
    let m = v.len();
    (0..m).map(|j| theta.apply(v[(j + m - 1) % m])).collect()
}

impl EmbeddingData {
    /// Embedding for components `f_i` and the invertible matrix `C`.
    pub fn new(fs: &[SkewPoly], c: &Matrix) -> Result<EmbeddingData> {
        let first = fs.first().ok_or_else(|| Error::domain("embedding needs a component"))?;
        let theta = first.theta().clone();
        if fs.iter().any(|f| f.theta() != &theta) || c.field() != theta.field() {
            return Err(Error::FieldMismatch);
        }
        let periods = fs.iter().map(|f| f.monic()?.period()).collect::<Result<Vec<_>>>()?;
        let q_mats = periods.iter().map(q_matrix).collect::<Result<Vec<_>>>()?;
        let fld = theta.field().clone();
        let q_hat = Matrix::block_diag(&fld, &q_mats)?;
        if c.rows() != q_hat.rows() || c.cols() != q_hat.rows() {
            return Err(Error::dim("C does not match the component lengths"));
        }
        let c_inv = c.inverse()?;
        let ciq = c_inv.mul(&q_hat)?;
        let b = ciq.mul(&ciq.transpose())?;
        let rank = b.rank();
        Ok(EmbeddingData { theta, periods, q_mats, q_hat, c: c.clone(), c_inv, b, rank })
    }

    pub fn for_code(code: &ProductTCode) -> Result<EmbeddingData> {
        let fs: Vec<SkewPoly> = code.components().iter().map(|m| m.f().clone()).collect();
        EmbeddingData::new(&fs, code.c())
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    pub fn field(&self) -> &Field {
        self.theta.field()
    }

    pub fn periods(&self) -> &[PeriodData] {
        &self.periods
    }

    pub fn q_matrices(&self) -> &[Matrix] {
        &self.q_mats
    }

    pub fn q_hat(&self) -> &Matrix {
        &self.q_hat
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn c_inv(&self) -> &Matrix {
        &self.c_inv
    }

    /// `B = C^-1 Q Q^t (C^-1)^t`.
    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Per-component forms `B_i = Q_i Q_i^t`.
    pub fn component_forms(&self) -> Result<Vec<Matrix>> {
        self.q_mats.iter().map(|q| q.mul(&q.transpose())).collect()
    }

    pub fn n(&self) -> usize {
        self.c.rows()
    }

    /// `sum m_i`.
    pub fn m_total(&self) -> usize {
        self.periods.iter().map(|p| p.m as usize).sum()
    }

    /// `v C^-1 Q`.
    pub fn embed(&self, v: &[Elem]) -> Result<Vector> {
        self.q_hat.vec_mul(&self.c_inv.vec_mul(v)?)
    }

    /// `w (Theta ∘ P)` on each component block.
    pub fn shift(&self, w: &[Elem]) -> Result<Vector> {
        if w.len() != self.m_total() {
            return Err(Error::dim("vector does not match the embedded length"));
        }
        let mut out = Vec::with_capacity(w.len());
        let mut off = 0;
        for p in &self.periods {
            let m = p.m as usize;
            out.extend(theta_p_step(&self.theta, &w[off..off + m]));
            off += m;
        }
        Ok(out)
    }

    /// The image of the embedding as a code in `F_q^(sum m_i)`.
    pub fn image(&self) -> LinearCode {
        LinearCode::from_generator(&self.q_hat)
    }

    pub fn kernel_b(&self) -> LinearCode {
        LinearCode::from_generator(&self.b.left_kernel())
    }

    pub fn image_b(&self) -> LinearCode {
        LinearCode::from_generator(&self.b)
    }

    /// The condition that `ord theta` divides every `m_i`.
    pub fn hermitian_condition(&self) -> bool {
        let s = self.theta.order() as u64;
        self.periods.iter().all(|p| p.m % s == 0)
    }
}
