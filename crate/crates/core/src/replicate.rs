//! Pinned worked examples over `F_4 = F_2[a]`, `a^2 + a + 1 = 0`, with the
//! Frobenius automorphism unless stated. Each check recomputes its values
//! from scratch and compares them with the published ones.

use crate::codes::{LinearCode, ModuleThetaCode, DISTANCE_BUDGET};
use crate::duals::quasi_euclidean_dual_form;
use crate::embed::EmbeddingData;
use crate::error::Result;
use crate::field::{Automorphism, Field};
use crate::matrix::{self, Matrix};
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const F4_SPEC: &str = "p=2,s=2,mod=x^2+x+1,gen=a";

/// The four polynomials `f_0..f_3` of the `F_4^3` example.
pub const EXAMPLE_FS: [&str; 4] = ["x^3+x^2+1", "x^3+a^2*x^2+a^2*x+a", "x^3+x^2+a*x+a^2", "x^3+a^2"];

const EXAMPLE_QS: [&str; 4] = ["x^4+x^3+x^2+1", "x^3+a*x^2+a^2*x+a^2", "x^3+x^2+a*x+a", "x^3+a"];

const EXAMPLE_Q_MATS: [&str; 4] = [
    "1,0,1,1,1,0,0; 0,1,0,1,1,1,0; 0,0,1,0,1,1,1",
    "a^2,a^2,a,1,0,0; 0,a,a,a^2,1,0; 0,0,a^2,a^2,a,1",
    "a,a,1,1,0,0; 0,a^2,a^2,1,1,0; 0,0,a,a,1,1",
    "a,0,0,1,0,0; 0,a^2,0,0,1,0; 0,0,a,0,0,1",
];

const EXAMPLE_B_MATS: [&str; 4] = [
    "0,0,0; 0,0,0; 0,0,0",
    "a,1,a; 1,a^2,1; a,1,a",
    "0,a^2,0; a^2,0,a; 0,a,0",
    "a,0,0; 0,a^2,0; 0,0,a",
];

pub fn f4() -> Result<(Field, Automorphism)> {
    let f = Field::parse_spec(F4_SPEC)?;
    let th = Automorphism::frobenius(&f);
    Ok((f, th))
}

fn check(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match body() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e}") },
    }
}

fn period_of_cubic() -> Result<(bool, String)> {
    let (_, th) = f4()?;
    let f = SkewPoly::parse(&th, "x^3+a*x+1")?;
    let pd = f.period()?;
    let want = SkewPoly::parse(&th, "x^5+a^2*x^3+x^2+a*x+1")?;
    let ok = pd.m == 8 && pd.q_f == want;
    Ok((ok, format!("m={} q_f={}", pd.m, pd.q_f)))
}

fn left_division_x21() -> Result<(bool, String)> {
    let (_, th) = f4()?;
    let f = SkewPoly::parse(&th, "x^3+a*x+1")?;
    let (_, r) = SkewPoly::x_pow_minus_one(&th, 21).left_quotrem(&f)?;
    let ok = r == SkewPoly::parse(&th, "x^2+a^2*x+a")?;
    Ok((ok, format!("r={r}")))
}

fn companion_order() -> Result<(bool, String)> {
    let (_, th) = f4()?;
    let f = SkewPoly::parse(&th, "x^3+a*x+1")?;
    let ord = Matrix::companion(&f)?.order(1 << 20)?;
    let m = f.period()?.m;
    Ok((ord == 21 && m == 8, format!("order={ord} m={m}")))
}

fn quintic_periods() -> Result<(bool, String)> {
    let (_, th) = f4()?;
    let m1 = SkewPoly::parse(&th, "x^5+x^3+x^2+1")?.period()?.m;
    let m2 = SkewPoly::parse(&th, "x^5+x^2+1")?.period()?.m;
    let rep = SkewPoly::parse(&th, "x^5+x^3+x^2+1")?.period()?;
    let cor = SkewPoly::corollary_checks(&rep)?;
    let ok = m1 == 12 && m2 == 31 && !cor.m_hypothesis && cor.order_divides_m;
    Ok((ok, format!("m={m1},{m2}")))
}

fn example_periods() -> Result<(bool, String)> {
    let (_, th) = f4()?;
    let mut ok = true;
    let mut ms = Vec::new();
    for (fs, qs) in EXAMPLE_FS.iter().zip(EXAMPLE_QS) {
        let pd = SkewPoly::parse(&th, fs)?.period()?;
        ok &= pd.q_f == SkewPoly::parse(&th, qs)?;
        ms.push(pd.m);
    }
    ok &= ms == [7, 6, 6, 6];
    Ok((ok, format!("m={ms:?}")))
}

fn example_matrices() -> Result<(bool, String)> {
    let (fld, th) = f4()?;
    let mut ok = true;
    let mut ranks = Vec::new();
    for i in 0..4 {
        let f = SkewPoly::parse(&th, EXAMPLE_FS[i])?;
        let ed = EmbeddingData::new(&[f], &Matrix::identity(&fld, 3))?;
        ok &= ed.q_hat() == &Matrix::parse(&fld, EXAMPLE_Q_MATS[i])?;
        ok &= ed.b() == &Matrix::parse(&fld, EXAMPLE_B_MATS[i])?;
        ranks.push(ed.rank());
    }
    ok &= ranks == [0, 1, 2, 3];
    Ok((ok, format!("ranks={ranks:?}")))
}

fn self_orthogonal_cyclic() -> Result<(bool, String)> {
    let (fld, th) = f4()?;
    let q0 = Matrix::parse(&fld, EXAMPLE_Q_MATS[0])?;
    let code = LinearCode::from_generator(&q0);
    let d = code.min_distance(DISTANCE_BUDGET)?;
    let gram = q0.mul(&q0.transpose())?;
    let module = ModuleThetaCode::new(&SkewPoly::x_pow_minus_one(&th, 7), &SkewPoly::parse(&th, EXAMPLE_QS[0])?)?;
    // g = (x+1)(x^3+x+1): the even-weight subcode of the binary Hamming
    // code, so every nonzero codeword has weight 4. The published value is 3.
    let ok = d == 4 && gram.is_zero() && code.dim() == 3 && module.linear_code()? == code;
    Ok((ok, format!("[7,{}] d={d} (published d=3)", code.dim())))
}

fn non_module_code_with_module_dual() -> Result<(bool, String)> {
    let (fld, th) = f4()?;
    let f2 = SkewPoly::parse(&th, EXAMPLE_FS[2])?;
    let t = SemiLinearMap::from_polynomial(&f2)?;
    let b2 = Matrix::parse(&fld, EXAMPLE_B_MATS[2])?;
    let ker = b2.left_kernel();
    let ker_ok = LinearCode::from_generator(&ker) == LinearCode::from_generator(&Matrix::parse(&fld, "a^2,0,1")?);
    let c = Matrix::parse(&fld, "0,1,0; 0,0,1")?;
    let image = t.apply(c.row(1))?;
    let moved = image == Matrix::parse(&fld, "a^2,a,1")?.row(0);
    let not_invariant = !t.is_invariant(&c)?;
    let direct = matrix::intersect(&c, &ker)?.rows() == 0 && matrix::sum(&c, &ker)?.rank() == 3;
    let star = quasi_euclidean_dual_form(&LinearCode::from_generator(&c), &b2)?;
    let star_invariant = t.is_invariant(star.generator())?;
    let ok = ker_ok && moved && not_invariant && direct && star_invariant;
    Ok((ok, format!("dim C*={}", star.dim())))
}

fn diagonal_invariant_line() -> Result<(bool, String)> {
    let (fld, th) = f4()?;
    let e = Matrix::parse(&fld, "0,1,0; 0,0,1; 1,0,0")?;
    let d = Matrix::block_diag(&fld, &[e.clone(), e])?;
    let t = SemiLinearMap::new(&th, d)?;
    let ones = Matrix::parse(&fld, "1,1,1,1,1,1")?;
    let invariant = t.is_invariant(&ones)?;
    let dim = t.cyclic_subspace(ones.row(0))?.rows();
    // A one-dimensional product C_1 x C_2 has a zero factor, so its
    // generator vanishes on one half.
    let row = ones.row(0);
    let not_product = row[..3].iter().any(|e| !e.is_zero()) && row[3..].iter().any(|e| !e.is_zero());
    Ok((invariant && dim == 1 && not_product, format!("dim={dim}")))
}

/// Runs every pinned check in a fixed order.
pub fn run_all() -> Vec<Check> {
    vec![
        check("period-cubic-f4", period_of_cubic),
        check("left-division-x21", left_division_x21),
        check("companion-order-vs-period", companion_order),
        check("quintic-periods", quintic_periods),
        check("cubic-periods-and-cofactors", example_periods),
        check("q-and-b-matrices", example_matrices),
        check("self-orthogonal-cyclic-7-3", self_orthogonal_cyclic),
        check("non-module-code-module-dual", non_module_code_with_module_dual),
        check("diagonal-invariant-line", diagonal_invariant_line),
    ]
}
