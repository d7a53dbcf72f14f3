//! Searching for invariant codes: twisted powers, the determinant form
//! `F_h(x) = det(A_h x_h + ... + A_1 x_1 + I x_0)`, projective zero-locus
//! scans, kernels through gcds, shortening and the distance table.
//!
//! The scan is a construction method: it produces invariant codes from
//! seed vectors over the fixed subfield and makes no claim to find all.

use std::collections::{BTreeMap, BTreeSet};

use crate::codes::{LinearCode, DISTANCE_BUDGET};
use crate::error::{check_budget, Error, Result};
use crate::field::{Automorphism, Elem, Field};
use crate::matrix::{Matrix, Vector};
pub use crate::semilinear::twisted_powers;
use crate::semilinear::SemiLinearMap;
use crate::skew_poly::SkewPoly;

/// Default limit on scanned projective points.
pub const SCAN_BUDGET: u64 = 1 << 20;

/// `sum A_j x_j + I x_0` for twisted powers `A_1..A_h`.
pub fn pencil(powers: &[Matrix], point: &[Elem]) -> Result<Matrix> {
    if point.len() != powers.len() + 1 {
        return Err(Error::dim("point has the wrong number of coordinates"));
    }
    let n = powers.first().map_or(0, |a| a.rows());
    let f = powers.first().map(|a| a.field().clone()).ok_or_else(|| Error::domain("need h >= 1"))?;
    let mut acc = Matrix::identity(&f, n).scale(point[0]);
    for (a, &x) in powers.iter().zip(&point[1..]) {
        acc = acc.add(&a.scale(x))?;
    }
    Ok(acc)
}

/// `F_h` at a point.
pub fn fh_eval(powers: &[Matrix], point: &[Elem]) -> Result<Elem> {
    pencil(powers, point)?.det()
}

/// Points of `P^h(F_q)` with first nonzero coordinate `1`, in
/// lexicographic order.
pub fn projective_points(field: &Field, h: usize, budget: u64) -> Result<Vec<Vector>> {
    let q = field.order() as u128;
    let count = (q.pow(h as u32 + 1) - 1) / (q - 1);
    check_budget("projective points", count, budget as u128)?;
    let mut out = Vec::with_capacity(count as usize);
    for lead in 0..=h {
        let tail = h - lead;
        let total = q.pow(tail as u32);
        for idx in 0..total as u64 {
            let mut p = vec![Elem::ZERO; h + 1];
            p[lead] = Elem::ONE;
            let mut x = idx;
            for j in (lead + 1..=h).rev() {
                p[j] = Elem((x % q as u64) as u32);
                x /= q as u64;
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// A zero of `F_h` with the left kernel of the pencil and the part of that
/// kernel with coordinates in the fixed subfield.
#[derive(Clone, Debug)]
pub struct ZeroPoint {
    pub point: Vector,
    pub kernel: Matrix,
    pub fixed_kernel: Matrix,
}

/// Coordinates over the fixed subfield in the basis `1, w, ..., w^(e-1)`.
struct SubfieldCoords {
    e: usize,
    table: Vec<Vec<Elem>>,
}

impl SubfieldCoords {
    fn new(theta: &Automorphism) -> SubfieldCoords {
        let f = theta.field();
        let sub = theta.fixed_subfield();
        let e = theta.order() as usize;
        let w = f.primitive();
        let powers: Vec<Elem> = (0..e).map(|i| f.pow(w, i as i64).expect("nonzero")).collect();
        let mut table = vec![Vec::new(); f.order() as usize];
        let total = (sub.len() as u64).pow(e as u32);
        for idx in 0..total {
            let mut x = idx;
            let mut coords = Vec::with_capacity(e);
            let mut val = Elem::ZERO;
            for &pw in &powers {
                let c = sub[(x % sub.len() as u64) as usize];
                x /= sub.len() as u64;
                val = f.add(val, f.mul(c, pw));
                coords.push(c);
            }
            table[val.index() as usize] = coords;
        }
        SubfieldCoords { e, table }
    }
}

fn fixed_left_kernel(m: &Matrix, coords: &SubfieldCoords) -> Result<Matrix> {
    let (n, c) = (m.rows(), m.cols());
    let mut ex = Matrix::zeros(m.field(), n, c * coords.e);
    for i in 0..n {
        for j in 0..c {
            let cs = &coords.table[m.get(i, j).index() as usize];
            for (l, &v) in cs.iter().enumerate() {
                ex.set(i, j * coords.e + l, v);
            }
        }
    }
    Ok(ex.left_kernel())
}

/// Scans `P^h` for zeros of `F_h` built from `Theta ∘ A`.
pub fn zero_locus_scan(a: &Matrix, theta: &Automorphism, h: usize, budget: u64) -> Result<Vec<ZeroPoint>> {
    if h == 0 {
        return Err(Error::domain("h must be positive"));
    }
    if !a.is_square() {
        return Err(Error::dim("matrix must be square"));
    }
    let powers = twisted_powers(a, theta, h)?;
    let coords = SubfieldCoords::new(theta);
    let mut out = Vec::new();
    for p in projective_points(theta.field(), h, budget)? {
        let pen = pencil(&powers, &p)?;
        if !pen.det()?.is_zero() {
            continue;
        }
        let kernel = pen.left_kernel();
        let fixed_kernel = fixed_left_kernel(&pen, &coords)?;
        out.push(ZeroPoint { point: p, kernel, fixed_kernel });
    }
    Ok(out)
}

/// The cyclic code `[v]`; a seed from the scan gives `dim [v] <= h`.
pub fn code_from_point(t: &SemiLinearMap, v: &[Elem], h: usize) -> Result<LinearCode> {
    if v.iter().all(|e| e.is_zero()) {
        return Err(Error::domain("seed vector is zero"));
    }
    let cyc = t.cyclic_subspace(v)?;
    if cyc.rows() > h {
        return Err(Error::Certification(format!(
            "seed spans a cyclic code of dimension {} > {h}",
            cyc.rows()
        )));
    }
    Ok(LinearCode::from_generator(&cyc))
}

/// `Ker p(M)` computed as `Ker g(M)` with `g = gcd(p, minpoly(M))`.
pub fn gcd_kernel(p: &SkewPoly, m: &Matrix) -> Result<Matrix> {
    if !p.theta().is_identity() {
        return Err(Error::domain("gcd kernel needs the identity automorphism"));
    }
    let mu = m.minimal_polynomial()?;
    let mu = SkewPoly::from_coeffs(p.theta(), mu.coeffs().to_vec());
    let g = if p.is_zero() { mu } else { p.right_gcd(&mu)?.gcd };
    if g.degree() == Some(0) {
        return Ok(Matrix::zeros(m.field(), 0, m.rows()));
    }
    Ok(g.eval_matrix(m)?.left_kernel())
}

/// `G = sum theta(g_j) X^j`.
pub fn shorten_generator(g: &SkewPoly) -> SkewPoly {
    g.twist(1)
}

/// The code spanned by `X^i g`, `i < k`, in `F_q^n`.
pub fn generated_code(g: &SkewPoly, n: usize) -> Result<LinearCode> {
    let r = g.degree().ok_or(Error::DivisionByZero)?;
    if r > n {
        return Err(Error::dim("generator degree exceeds the length"));
    }
    let rows = (0..n - r).map(|i| g.x_times(i).coeffs_padded(n)).collect::<Vec<_>>();
    LinearCode::from_rows(g.field(), &rows, n)
}

/// Monic generators of degree `r` with nonzero constant term.
pub fn generators(theta: &Automorphism, r: usize) -> Vec<SkewPoly> {
    let f = theta.field();
    let q = f.order() as u64;
    if r == 0 {
        return vec![SkewPoly::one(theta)];
    }
    let mut out = Vec::new();
    for idx in 0..q.pow(r as u32) {
        let mut c = Vec::with_capacity(r + 1);
        let mut x = idx;
        for _ in 0..r {
            c.push(Elem((x % q) as u32));
            x /= q;
        }
        if c[0].is_zero() {
            continue;
        }
        c.push(Elem::ONE);
        out.push(SkewPoly::from_coeffs(theta, c));
    }
    out
}

/// `D(n, k)` values; `None` marks cells beyond the budget.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    pub q: u32,
    pub theta_exponent: u32,
    pub cells: BTreeMap<(usize, usize), Option<usize>>,
}

impl DistanceTable {
    pub fn get(&self, n: usize, k: usize) -> Option<usize> {
        self.cells.get(&(n, k)).copied().flatten()
    }

    /// Pairs `(n, k)` where both `D(n,k)` and `D(n+1,k+1)` are known and
    /// `D(n,k) < D(n+1,k+1)`.
    pub fn monotonicity_violations(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter_map(|(&(n, k), &d)| {
                let d = d?;
                let e = self.get(n + 1, k + 1)?;
                (d < e).then_some((n, k))
            })
            .collect()
    }

    /// `n,k,D` lines with `?` for unknown cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,D\n");
        for (&(n, k), d) in &self.cells {
            let v = d.map_or("?".to_string(), |d| d.to_string());
            out.push_str(&format!("{n},{k},{v}\n"));
        }
        out
    }
}

/// Maximum distance over all monic generators of degree `n - k` with
/// nonzero constant term, for `1 <= k <= n <= n_max`.
pub fn distance_table(theta: &Automorphism, n_max: usize, budget: u64) -> Result<DistanceTable> {
    let f = theta.field();
    let q = f.order() as u128;
    let mut cells = BTreeMap::new();
    for n in 1..=n_max {
        for k in 1..=n {
            let r = n - k;
            let gens = if r == 0 { 1 } else { q.pow(r as u32 - 1) * (q - 1) };
            let work = gens.saturating_mul(q.saturating_pow(k as u32));
            if work > budget as u128 {
                cells.insert((n, k), None);
                continue;
            }
            let mut best = 0;
            for g in generators(theta, r) {
                let d = generated_code(&g, n)?.min_distance(DISTANCE_BUDGET)?;
                best = best.max(d);
            }
            cells.insert((n, k), Some(best));
        }
    }
    Ok(DistanceTable { q: f.order(), theta_exponent: theta.exponent(), cells })
}

/// Factorisation over `F_q` (identity automorphism) by trial division with
/// monic polynomials of increasing degree. Returns monic irreducible
/// factors with multiplicities.
pub fn factor_commutative(p: &SkewPoly, budget: u64) -> Result<Vec<(SkewPoly, usize)>> {
    if !p.theta().is_identity() {
        return Err(Error::domain("factorisation needs the identity automorphism"));
    }
    let th = p.theta();
    let q = p.field().order() as u128;
    let mut rest = p.monic()?;
    let mut out = Vec::new();
    let mut d = 1;
    let mut spent: u128 = 0;
    while rest.degree().unwrap_or(0) >= 2 * d {
        spent += q.pow(d as u32);
        check_budget("factorisation candidates", spent, budget as u128)?;
        for idx in 0..q.pow(d as u32) as u64 {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                c.push(Elem((x % q as u64) as u32));
                x /= q as u64;
            }
            c.push(Elem::ONE);
            let cand = SkewPoly::from_coeffs(th, c);
            let mut e = 0;
            loop {
                let (qt, r) = rest.right_quotrem(&cand)?;
                if !r.is_zero() {
                    break;
                }
                rest = qt;
                e += 1;
            }
            if e > 0 {
                out.push((cand, e));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        match out.iter_mut().find(|(f, _)| f == &rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    Ok(out)
}

/// Dimensions `k` of `T`-codes for a linear `T` (identity automorphism):
/// all `sum a_i deg F_i` with `0 <= a_i <= alpha_i` over the elementary
/// divisors `F_i^alpha_i`.
pub fn feasible_dimensions(t: &SemiLinearMap, budget: u64) -> Result<BTreeSet<usize>> {
    if !t.theta().is_identity() {
        return Err(Error::domain("feasible dimensions need the identity automorphism"));
    }
    let rcf = t.matrix().rational_canonical_form()?;
    let mut sums = BTreeSet::from([0usize]);
    for inv in &rcf.invariant_factors {
        for (fac, e) in factor_commutative(inv, budget)? {
            let d = fac.degree().unwrap_or(0);
            let mut next = BTreeSet::new();
            for &s in &sums {
                for a in 0..=e {
                    next.insert(s + a * d);
                }
            }
            sums = next;
        }
    }
    Ok(sums)
}
