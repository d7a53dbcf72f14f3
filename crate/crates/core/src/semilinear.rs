//! `theta`-semilinear maps `T = Theta ∘ M` acting on row vectors:
//! `(v)T = (v^theta) M`, so `(c v)T = theta(c) (v)T`.
//!
//! Cyclic decomposition writes `T = C^-1 (Theta ∘ diag(M_1, ..., M_r)) C`
//! with companion blocks of non-increasing size. Rows of `C` are
//! `u_i, u_i T, ..., u_i T^(n_i - 1)` for each generator `u_i`.

use std::collections::HashSet;

use crate::error::{check_budget, Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::matrix::{krylov, span, Matrix, Vector};
use crate::skew_poly::SkewPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiLinearMap {
    theta: Automorphism,
    m: Matrix,
}

/// A certified cyclic decomposition.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub theta: Automorphism,
    pub generators: Vec<Vector>,
    pub c: Matrix,
    /// Monic `f_j = X^(n_j) - sum a_{j,i} X^i`; block `j` is its companion.
    pub polys: Vec<SkewPoly>,
    pub blocks: Vec<Matrix>,
}

impl SemiLinearMap {
    pub fn new(theta: &Automorphism, m: Matrix) -> Result<SemiLinearMap> {
        if theta.field() != m.field() {
            return Err(Error::FieldMismatch);
        }
        if !m.is_square() {
            return Err(Error::dim("semilinear map needs a square matrix"));
        }
        Ok(SemiLinearMap { theta: theta.clone(), m })
    }

    /// `Theta ∘ companion(f)`.
    pub fn from_polynomial(f: &SkewPoly) -> Result<SemiLinearMap> {
        SemiLinearMap::new(f.theta(), Matrix::companion(f)?)
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn field(&self) -> &Field {
        self.theta.field()
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn apply(&self, v: &[Elem]) -> Result<Vector> {
        let tv: Vector = v.iter().map(|&a| self.theta.apply(a)).collect();
        self.m.vec_mul(&tv)
    }

    /// `(v)T^k`.
    pub fn apply_pow(&self, v: &[Elem], k: usize) -> Result<Vector> {
        let mut cur = v.to_vec();
        for _ in 0..k {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// `(v)T^-1 = (v M^-1)^(theta^-1)`.
    pub fn apply_inverse(&self, v: &[Elem], m_inv: &Matrix) -> Result<Vector> {
        let w = m_inv.vec_mul(v)?;
        Ok(w.iter().map(|&a| self.theta.apply_pow(a, -1)).collect())
    }

    /// Ordered basis `v, vT, ..., vT^(d-1)` of the smallest invariant
    /// subspace containing `v`.
    pub fn cyclic_subspace(&self, v: &[Elem]) -> Result<Matrix> {
        if v.len() != self.dim() {
            return Err(Error::dim("vector length differs from the map dimension"));
        }
        let (basis, _) = krylov(self.field(), v, |x| self.apply(x).expect("square"))?;
        Matrix::from_rows_with_cols(self.field(), &basis, self.dim())
    }

    /// Whether the row space of `basis` is mapped into itself.
    pub fn is_invariant(&self, basis: &Matrix) -> Result<bool> {
        if basis.cols() != self.dim() {
            return Err(Error::dim("subspace lives in a different ambient space"));
        }
        let sp = basis.row_space();
        for r in sp.row_vectors() {
            if !crate::matrix::in_span(&sp, &self.apply(&r)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(!self.m.det()?.is_zero())
    }

    /// Cyclic decomposition. Uses the rational canonical form when every
    /// entry of `M` is fixed by `theta`, otherwise a search over cyclic
    /// vectors bounded by `budget` nodes.
    pub fn decompose(&self, budget: u64) -> Result<Decomposition> {
        if !self.is_invertible()? {
            return Err(Error::Singular);
        }
        let fixed = (0..self.dim())
            .all(|i| (0..self.dim()).all(|j| self.theta.fixes(self.m.get(i, j))));
        let (generators, c, polys) = if fixed {
            self.decompose_rational()?
        } else {
            self.decompose_search(budget)?
        };
        let blocks = polys.iter().map(Matrix::companion).collect::<Result<Vec<_>>>()?;
        let d = Decomposition { theta: self.theta.clone(), generators, c, polys, blocks };
        d.certify(self)?;
        Ok(d)
    }

    fn decompose_rational(&self) -> Result<(Vec<Vector>, Matrix, Vec<SkewPoly>)> {
        let rcf = self.m.rational_canonical_form()?;
        let mut gens = Vec::new();
        let mut row = 0;
        let mut polys = Vec::new();
        for p in &rcf.invariant_factors {
            gens.push(rcf.c.row(row).to_vec());
            row += p.degree().unwrap_or(0);
            polys.push(SkewPoly::from_coeffs(&self.theta, p.coeffs().to_vec()));
        }
        Ok((gens, rcf.c, polys))
    }

    fn decompose_search(&self, budget: u64) -> Result<(Vec<Vector>, Matrix, Vec<SkewPoly>)> {
        let f = self.field().clone();
        let n = self.dim();
        let q = f.order() as u128;
        let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
        check_budget("cyclic vector candidates", total, budget as u128)?;
        // fixed-subfield vectors first, then the rest, each in index order
        let mut order: Vec<Vector> = Vec::new();
        let mut rest: Vec<Vector> = Vec::new();
        for idx in 1..total as u64 {
            let mut v = Vec::with_capacity(n);
            let mut x = idx;
            for _ in 0..n {
                v.push(Elem((x % q as u64) as u32));
                x /= q as u64;
            }
            if v.iter().all(|&a| self.theta.fixes(a)) {
                order.push(v);
            } else {
                rest.push(v);
            }
        }
        order.extend(rest);
        let mut seen = HashSet::new();
        let mut cands: Vec<(usize, Vector, Matrix)> = Vec::new();
        for v in order {
            let cyc = self.cyclic_subspace(&v)?;
            let key: Vec<u32> = span(&f, &cyc.row_vectors(), n)?
                .row_vectors()
                .concat()
                .iter()
                .map(|e| e.index())
                .collect();
            if seen.insert(key) {
                cands.push((cyc.rows(), v, cyc));
            }
        }
        cands.sort_by_key(|c| std::cmp::Reverse(c.0));
        let mut nodes = 0u64;
        let mut chosen = Vec::new();
        if !search(&cands, 0, &Matrix::zeros(&f, 0, n), &mut chosen, &mut nodes, budget)? {
            return Err(Error::Certification("no cyclic decomposition found".into()));
        }
        let mut gens = Vec::new();
        let mut rows = Vec::new();
        let mut polys = Vec::new();
        for &i in &chosen {
            let (d, v, cyc) = &cands[i];
            let last = self.apply(cyc.row(d - 1))?;
            let a = cyc.solve_left(&last)?.ok_or_else(|| Error::Certification("cyclic basis not closed".into()))?;
            let mut co: Vec<Elem> = a.iter().map(|&x| f.neg(x)).collect();
            co.push(Elem::ONE);
            polys.push(SkewPoly::from_coeffs(&self.theta, co));
            gens.push(v.clone());
            rows.extend(cyc.row_vectors());
        }
        Ok((gens, Matrix::from_rows_with_cols(&f, &rows, n)?, polys))
    }
}

/// Depth-first search for cyclic subspaces forming a direct sum.
fn search(
    cands: &[(usize, Vector, Matrix)],
    start: usize,
    acc: &Matrix,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let n = acc.cols();
    if acc.rows() == n {
        return Ok(true);
    }
    for i in start..cands.len() {
        let (d, _, cyc) = &cands[i];
        if acc.rows() + d > n {
            continue;
        }
        *nodes += 1;
        check_budget("decomposition search nodes", *nodes as u128, budget as u128)?;
        let stacked = acc.vstack(cyc)?;
        if stacked.rank() != acc.rows() + d {
            continue;
        }
        chosen.push(i);
        if search(cands, i + 1, &stacked, chosen, nodes, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

impl Decomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rows()).collect()
    }

    pub fn block_diagonal(&self) -> Result<Matrix> {
        Matrix::block_diag(self.theta.field(), &self.blocks)
    }

    /// The map `C^-1 (Theta ∘ D) C`, whose matrix is `(C^-1)^theta D C`.
    pub fn reassemble(&self) -> Result<SemiLinearMap> {
        let cinv = self.c.inverse()?;
        let m = cinv.twist(&self.theta, 1)?.mul(&self.block_diagonal()?)?.mul(&self.c)?;
        SemiLinearMap::new(&self.theta, m)
    }

    /// Characteristic polynomials in the `(-1)^(n_j)` sign convention.
    pub fn sign_normalized_polys(&self) -> Result<Vec<SkewPoly>> {
        self.polys.iter().map(|p| p.sign_normalized()).collect()
    }

    /// Checks invertibility of `C`, block sizes and `T = C^-1 (Theta ∘ D) C`
    /// on the standard basis; both sides are semilinear, so this suffices.
    pub fn certify(&self, t: &SemiLinearMap) -> Result<()> {
        let sizes = self.sizes();
        if sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Certification("block sizes increase".into()));
        }
        if sizes.iter().sum::<usize>() != t.dim() {
            return Err(Error::Certification("block sizes do not fill the space".into()));
        }
        let r = self.reassemble()?;
        if r.matrix() != t.matrix() {
            return Err(Error::Certification("reassembly identity fails".into()));
        }
        Ok(())
    }
}

/// `A_k = A^(theta^(k-1)) ... A^theta A`, so that `(Theta ∘ A)^k = Theta^k ∘ A_k`.
pub fn twisted_powers(a: &Matrix, theta: &Automorphism, h: usize) -> Result<Vec<Matrix>> {
    let mut out: Vec<Matrix> = Vec::with_capacity(h);
    for k in 1..=h {
        let next = match out.last() {
            None => a.clone(),
            Some(prev) => a.twist(theta, k as i64 - 1)?.mul(prev)?,
        };
        out.push(next);
    }
    Ok(out)
}
