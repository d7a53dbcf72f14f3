//! Euclidean, quasi-Euclidean and Hermitian duals.
//!
//! The quasi-Euclidean product is `x ._* y = x B y^t` with `B` from an
//! [`EmbeddingData`]; the Hermitian product pairs `R_n` through the
//! conjugation `Phi(a X^i) = theta^-i(a) X^(m-i)` in `R / R(X^m - 1)`.

use crate::codes::{pi, pi_inv, LinearCode, ModuleThetaCode, ProductTCode};
use crate::embed::EmbeddingData;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::{Matrix, Vector};
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

/// `{x : x . c = 0 for all c in code}`.
pub fn euclidean_dual(code: &LinearCode) -> LinearCode {
    let f = code.field();
    if code.dim() == 0 {
        return LinearCode::full(f, code.len());
    }
    LinearCode::from_generator(&code.generator().transpose().left_kernel())
}

/// Euclidean dual of a product code with its parity-check matrix.
#[derive(Clone, Debug)]
pub struct ProductEuclideanDual {
    pub code: LinearCode,
    /// `blockdiag(H_i) (C^t)^-1`.
    pub parity_check: Matrix,
}

/// `(C_1^perp x ... x C_r^perp) (C^t)^-1`.
pub fn euclidean_dual_product(code: &ProductTCode) -> Result<ProductEuclideanDual> {
    let f = code.field();
    let ct_inv = code.c().transpose().inverse()?;
    let mut duals = Vec::new();
    for m in code.components() {
        let d = euclidean_dual(&m.linear_code()?);
        duals.push(d.generator().clone());
    }
    let gen = Matrix::block_diag(f, &duals)?;
    let dual = if gen.rows() == 0 {
        LinearCode::zero(f, code.n())
    } else {
        LinearCode::from_generator(&gen.mul(&ct_inv)?)
    };
    let h = code.block_parity_check()?;
    let parity_check = if h.rows() == 0 { h } else { h.mul(&ct_inv)? };
    Ok(ProductEuclideanDual { code: dual, parity_check })
}

/// `T' = Theta^-1 ∘ (M^t)^(theta^-1)`; duals of `T`-codes are `T'`-invariant.
pub fn dual_invariance_map(t: &SemiLinearMap) -> Result<SemiLinearMap> {
    let th = t.theta();
    SemiLinearMap::new(&th.inverse(), t.matrix().transpose().twist(th, -1)?)
}

/// `{x : x B c^t = 0 for all c in code}`.
pub fn quasi_euclidean_dual_form(code: &LinearCode, b: &Matrix) -> Result<LinearCode> {
    let n = code.len();
    if b.rows() != n || b.cols() != n {
        return Err(Error::dim(format!("form is {}x{}, code length is {n}", b.rows(), b.cols())));
    }
    if code.dim() == 0 {
        return Ok(LinearCode::full(code.field(), n));
    }
    let k = b.mul(&code.generator().transpose())?.left_kernel();
    Ok(LinearCode::from_generator(&k))
}

pub fn quasi_euclidean_dual(code: &LinearCode, ed: &EmbeddingData) -> Result<LinearCode> {
    quasi_euclidean_dual_form(code, ed.b())
}

/// How the twist in the dual generator `h^perp` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistReading {
    /// `h^perp = sum_j theta^j(h_(k-j)) X^j`, the skew reciprocal.
    SummationIndex,
    /// `h^perp = sum_j theta^i(h_(k-j)) X^j` with `i` the 1-based component index.
    ComponentIndex,
}

pub fn h_perp(h: &SkewPoly, reading: TwistReading, component: usize) -> SkewPoly {
    let k = h.degree().unwrap_or(0);
    let th = h.theta();
    let c = (0..=k)
        .map(|j| {
            let e = match reading {
                TwistReading::SummationIndex => j as i64,
                TwistReading::ComponentIndex => component as i64,
            };
            th.apply_pow(h.coeff(k - j), e)
        })
        .collect();
    SkewPoly::from_coeffs(th, c)
}

/// Dual generator of a product code, assembled from `h_i^perp` and checked
/// against [`quasi_euclidean_dual`]; a mismatch is reported, not returned.
pub fn quasi_dual_generator(code: &ProductTCode, ed: &EmbeddingData) -> Result<ProductTCode> {
    let d = quasi_dual_generator_with(code, ed, TwistReading::SummationIndex)?;
    let expect = quasi_euclidean_dual(&code.linear_code()?, ed)?;
    if d.linear_code()? != expect {
        return Err(Error::Certification(
            "dual generator disagrees with the quasi-Euclidean dual".into(),
        ));
    }
    Ok(d)
}

/// Dual generator under a chosen reading, without the consistency gate.
pub fn quasi_dual_generator_with(
    code: &ProductTCode,
    ed: &EmbeddingData,
    reading: TwistReading,
) -> Result<ProductTCode> {
    if !ed.hermitian_condition() {
        return Err(Error::domain("automorphism order does not divide every period"));
    }
    let mut comps = Vec::new();
    for (i, (m, pd)) in code.components().iter().zip(ed.periods()).enumerate() {
        let th = m.theta();
        let xm = SkewPoly::x_pow_minus_one(th, pd.m as usize);
        let gq = m.g() * &pd.q_f;
        let (h, r) = xm.left_quotrem(&gq)?;
        if !r.is_zero() {
            return Err(Error::Certification("X^m - 1 is not g q_f h".into()));
        }
        let hp = h_perp(&h, reading, i + 1);
        let l = hp.left_lcm(&pd.q_f)?;
        let big_g = l.right_gcd(&xm)?.gcd;
        let (g_star, r) = big_g.right_quotrem(&pd.q_f)?;
        if !r.is_zero() || g_star.is_zero() {
            return Err(Error::Certification(format!("q_f does not right-divide {big_g}")));
        }
        comps.push(ModuleThetaCode::new(m.f(), &g_star)?);
    }
    ProductTCode::new(comps, code.c().clone())
}

/// Hermitian structure; exists only when `ord theta` divides every `m_i`.
#[derive(Clone, Debug)]
pub struct HermitianContext {
    ed: EmbeddingData,
}

impl HermitianContext {
    pub fn new(ed: EmbeddingData) -> Result<HermitianContext> {
        if !ed.hermitian_condition() {
            return Err(Error::domain("automorphism order does not divide every period"));
        }
        Ok(HermitianContext { ed })
    }

    pub fn embedding(&self) -> &EmbeddingData {
        &self.ed
    }

    /// `Phi` on one component of `R / R(X^m - 1)`.
    pub fn phi(&self, comp: usize, p: &SkewPoly) -> Result<SkewPoly> {
        let m = self.period(comp)?;
        let th = p.theta();
        if p.degree().is_some_and(|d| d >= m) {
            return Err(Error::dim("element is not reduced modulo X^m - 1"));
        }
        let mut c = vec![Elem::ZERO; m];
        for (i, &a) in p.coeffs().iter().enumerate() {
            c[(m - i) % m] = th.apply_pow(a, -(i as i64));
        }
        Ok(SkewPoly::from_coeffs(th, c))
    }

    fn period(&self, comp: usize) -> Result<usize> {
        self.ed
            .periods()
            .get(comp)
            .map(|p| p.m as usize)
            .ok_or_else(|| Error::dim("component index out of range"))
    }

    /// `j(a) = a q_f` in `R / R(X^m - 1)`.
    pub fn j(&self, comp: usize, a: &SkewPoly) -> Result<SkewPoly> {
        let pd = &self.ed.periods()[comp];
        let ar = a.rem_right(&pd.f)?;
        fold(&(&ar * &pd.q_f), pd.m as usize)
    }

    /// `<a, b> = j(a) *_P j(b)` componentwise.
    pub fn product(&self, a: &[SkewPoly], b: &[SkewPoly]) -> Result<Vec<SkewPoly>> {
        let r = self.ed.periods().len();
        if a.len() != r || b.len() != r {
            return Err(Error::dim("tuple length differs from the number of components"));
        }
        (0..r)
            .map(|k| {
                let m = self.period(k)?;
                let pb = self.phi(k, &self.j(k, &b[k])?)?;
                fold(&(&self.j(k, &a[k])? * &pb), m)
            })
            .collect()
    }

    /// `pi(x C^-1)` split into components.
    pub fn polys_of(&self, x: &[Elem]) -> Result<Vec<SkewPoly>> {
        let y = self.ed.c_inv().vec_mul(x)?;
        let th = self.ed.theta();
        let mut out = Vec::new();
        let mut off = 0;
        for pd in self.ed.periods() {
            let n = pd.f.degree().unwrap_or(0);
            out.push(pi(th, &y[off..off + n]));
            off += n;
        }
        Ok(out)
    }

    /// Inverse of [`HermitianContext::polys_of`].
    pub fn vector_of(&self, ps: &[SkewPoly]) -> Result<Vector> {
        let mut y = Vec::new();
        for (p, pd) in ps.iter().zip(self.ed.periods()) {
            y.extend(pi_inv(p, pd.f.degree().unwrap_or(0))?);
        }
        self.ed.c().vec_mul(&y)
    }
}

/// Reduces modulo `R(X^m - 1)` by folding exponents modulo `m`.
fn fold(p: &SkewPoly, m: usize) -> Result<SkewPoly> {
    let f = p.field();
    let mut c = vec![Elem::ZERO; m];
    for (i, &a) in p.coeffs().iter().enumerate() {
        c[i % m] = f.add(c[i % m], a);
    }
    Ok(SkewPoly::from_coeffs(p.theta(), c))
}

/// `{x : <x(X), c(X)> = 0 for all c in code}`.
///
/// `<x, c>` is linear in `x` and `<x, l c>_h = theta^h(l) <x, c>_h`, so
/// testing a basis of the code suffices.
pub fn hermitian_dual(code: &ProductTCode, ctx: &HermitianContext) -> Result<LinearCode> {
    let f = code.field();
    let n = code.n();
    let gen = code.generator_matrix()?;
    let basis_polys: Vec<Vec<SkewPoly>> = (0..n)
        .map(|l| {
            let mut e = vec![Elem::ZERO; n];
            e[l] = Elem::ONE;
            ctx.polys_of(&e)
        })
        .collect::<Result<_>>()?;
    let mut cols: Vec<Vector> = vec![Vec::new(); n];
    for c in gen.row_vectors() {
        let cp = ctx.polys_of(&c)?;
        for (l, xp) in basis_polys.iter().enumerate() {
            let prod = ctx.product(xp, &cp)?;
            for (k, p) in prod.iter().enumerate() {
                let m = ctx.period(k)?;
                cols[l].extend(p.coeffs_padded(m));
            }
        }
    }
    let width = cols.first().map_or(0, |c| c.len());
    if width == 0 {
        return Ok(LinearCode::full(f, n));
    }
    let lin = Matrix::from_rows_with_cols(f, &cols, width)?;
    Ok(LinearCode::from_generator(&lin.left_kernel()))
}
