//! Independent brute-force oracles. These use only field arithmetic from the
//! library and recompute everything else with plain loops.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use skewcodes_core::{Automorphism, Elem, Field, Matrix, SkewPoly};

pub type V = Vec<Elem>;

pub fn f4() -> (Field, Automorphism) {
    let f = Field::parse_spec("p=2,s=2,mod=x^2+x+1,gen=a").unwrap();
    let th = Automorphism::frobenius(&f);
    (f, th)
}

pub fn prime(p: u32) -> (Field, Automorphism) {
    let f = Field::prime(p).unwrap();
    let th = Automorphism::identity(&f);
    (f, th)
}

pub fn poly(th: &Automorphism, s: &str) -> SkewPoly {
    SkewPoly::parse(th, s).unwrap()
}

pub fn mat(f: &Field, s: &str) -> Matrix {
    Matrix::parse(f, s).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_elem(f: &Field, r: &mut StdRng) -> Elem {
    f.elem(r.gen_range(0..f.order())).unwrap()
}

pub fn rand_unit(f: &Field, r: &mut StdRng) -> Elem {
    f.elem(r.gen_range(1..f.order())).unwrap()
}

pub fn rand_vec(f: &Field, n: usize, r: &mut StdRng) -> V {
    (0..n).map(|_| rand_elem(f, r)).collect()
}

pub fn rand_matrix(f: &Field, rows: usize, cols: usize, r: &mut StdRng) -> Matrix {
    let rs: Vec<V> = (0..rows).map(|_| rand_vec(f, cols, r)).collect();
    Matrix::from_rows_with_cols(f, &rs, cols).unwrap()
}

/// Random matrix with nonzero determinant by the Leibniz oracle.
pub fn rand_invertible(f: &Field, n: usize, r: &mut StdRng) -> Matrix {
    loop {
        let m = rand_matrix(f, n, n, r);
        if !det(f, &rows(&m)).is_zero() {
            return m;
        }
    }
}

/// Random monic polynomial of degree `n` with nonzero constant term.
pub fn rand_monic(th: &Automorphism, n: usize, r: &mut StdRng) -> SkewPoly {
    let f = th.field();
    let mut c: V = (0..n).map(|_| rand_elem(f, r)).collect();
    c[0] = rand_unit(f, r);
    c.push(Elem::ONE);
    SkewPoly::from_coeffs(th, c)
}

pub fn rows(m: &Matrix) -> Vec<V> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

pub fn from_rows(f: &Field, rs: &[V], cols: usize) -> Matrix {
    Matrix::from_rows_with_cols(f, rs, cols).unwrap()
}

pub fn vadd(f: &Field, a: &[Elem], b: &[Elem]) -> V {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vscale(f: &Field, c: Elem, a: &[Elem]) -> V {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |s, (&x, &y)| f.add(s, f.mul(x, y)))
}

/// `v M` with `v` a row vector.
pub fn vecmat(f: &Field, v: &[Elem], m: &[V]) -> V {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..v.len()).fold(Elem::ZERO, |s, i| f.add(s, f.mul(v[i], m[i][j])))).collect()
}

pub fn matmul(f: &Field, a: &[V], b: &[V]) -> Vec<V> {
    a.iter().map(|r| vecmat(f, r, b)).collect()
}

pub fn transpose(a: &[V]) -> Vec<V> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Vec<V> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect()).collect()
}

/// `(v Theta) M`.
pub fn semilinear(th: &Automorphism, m: &[V], v: &[Elem]) -> V {
    let tv: V = v.iter().map(|&x| th.apply(x)).collect();
    vecmat(th.field(), &tv, m)
}

pub fn semilinear_pow(th: &Automorphism, m: &[V], v: &[Elem], k: usize) -> V {
    (0..k).fold(v.to_vec(), |w, _| semilinear(th, m, &w))
}

/// Leibniz expansion.
pub fn det(f: &Field, m: &[V]) -> Elem {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Elem::ZERO;
    permute(&mut perm, 0, &mut |p| {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let mut term = Elem::ONE;
        for i in 0..n {
            term = f.mul(term, m[i][p[i]]);
        }
        total = if inv % 2 == 0 { f.add(total, term) } else { f.sub(total, term) };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Every vector of `F_q^n` in lexicographic order of indices.
pub fn all_vectors(f: &Field, n: usize) -> Vec<V> {
    let q = f.order() as usize;
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let e = f.elem((x % q) as u32).unwrap();
                    x /= q;
                    e
                })
                .collect()
        })
        .collect()
}

fn key(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.index()).collect()
}

/// All vectors in the span of `gens`, as a sorted set of index tuples.
pub fn span_set(f: &Field, gens: &[V], n: usize) -> BTreeSet<Vec<u32>> {
    let mut set = BTreeSet::new();
    set.insert(vec![0; n]);
    let mut list = vec![vec![Elem::ZERO; n]];
    for g in gens {
        if set.contains(&key(g)) {
            continue;
        }
        let mut next = Vec::new();
        for w in &list {
            for c in f.elements() {
                let v = vadd(f, w, &vscale(f, c, g));
                if set.insert(key(&v)) {
                    next.push(v);
                }
            }
        }
        list.extend(next);
    }
    set
}

pub fn to_vec(f: &Field, k: &[u32]) -> V {
    k.iter().map(|&i| f.elem(i).unwrap()).collect()
}

pub fn span_of(f: &Field, m: &Matrix) -> BTreeSet<Vec<u32>> {
    span_set(f, &rows(m), m.cols())
}

/// Minimum nonzero weight over an explicit codeword set.
pub fn min_weight(set: &BTreeSet<Vec<u32>>) -> Option<usize> {
    set.iter().map(|v| v.iter().filter(|&&x| x != 0).count()).filter(|&w| w > 0).min()
}

/// `{x : x . c = 0 for all generators c}` by enumeration.
pub fn brute_dual(f: &Field, gens: &[V], n: usize) -> BTreeSet<Vec<u32>> {
    all_vectors(f, n).into_iter().filter(|x| gens.iter().all(|c| dot(f, x, c).is_zero())).map(|x| key(&x)).collect()
}

/// `{x : x B c^t = 0 for all generators c}` by enumeration.
pub fn brute_form_dual(f: &Field, b: &[V], gens: &[V], n: usize) -> BTreeSet<Vec<u32>> {
    all_vectors(f, n)
        .into_iter()
        .filter(|x| {
            let xb = vecmat(f, x, b);
            gens.iter().all(|c| dot(f, &xb, c).is_zero())
        })
        .map(|x| key(&x))
        .collect()
}

/// `{x : x M = 0}` by enumeration.
pub fn brute_left_kernel(f: &Field, m: &[V], n: usize) -> BTreeSet<Vec<u32>> {
    all_vectors(f, n).into_iter().filter(|x| vecmat(f, x, m).iter().all(|e| e.is_zero())).map(|x| key(&x)).collect()
}

/// Every subspace of `F_q^n`, each as its set of vectors.
pub fn all_subspaces(f: &Field, n: usize) -> Vec<BTreeSet<Vec<u32>>> {
    let vs = all_vectors(f, n);
    let mut seen: BTreeSet<BTreeSet<Vec<u32>>> = BTreeSet::new();
    let zero = span_set(f, &[], n);
    seen.insert(zero.clone());
    let mut frontier = vec![(zero, Vec::<V>::new())];
    while let Some((_, gens)) = frontier.pop() {
        for v in &vs {
            let mut g2 = gens.clone();
            g2.push(v.clone());
            let s = span_set(f, &g2, n);
            if seen.insert(s.clone()) {
                frontier.push((s, g2));
            }
        }
    }
    seen.into_iter().collect()
}

/// A basis extracted greedily from an explicit vector set.
pub fn basis_of(f: &Field, set: &BTreeSet<Vec<u32>>, n: usize) -> Vec<V> {
    let mut basis: Vec<V> = Vec::new();
    let mut cur = span_set(f, &[], n);
    for k in set {
        if !cur.contains(k) {
            basis.push(to_vec(f, k));
            cur = span_set(f, &basis, n);
        }
    }
    basis
}

/// Naive skew product `sum a_i theta^i(b_j) X^(i+j)` on coefficient lists.
pub fn skew_mul(th: &Automorphism, a: &[Elem], b: &[Elem]) -> V {
    let f = th.field();
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, th.apply_pow(y, i as i64)));
        }
    }
    trim(out)
}

pub fn trim(mut v: V) -> V {
    while v.last().is_some_and(|e| e.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the left ideal generated by a monic `b`,
/// eliminating leading terms with `c X^k b`.
pub fn skew_rem_right(th: &Automorphism, a: &[Elem], b: &[Elem]) -> V {
    let f = th.field();
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).unwrap();
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let k = r.len() - 1 - db;
        // c X^k b has leading coefficient c theta^k(b_db).
        let c = f.mul(r[r.len() - 1], th.apply_pow(lead_inv, k as i64));
        let mut mono = vec![Elem::ZERO; k + 1];
        mono[k] = c;
        let sub = skew_mul(th, &mono, &b);
        for (i, &s) in sub.iter().enumerate() {
            r[i] = f.sub(r[i], s);
        }
        r = trim(r);
    }
    r
}

pub fn padded(v: &[Elem], n: usize) -> V {
    let mut w = v.to_vec();
    w.resize(n, Elem::ZERO);
    w
}

/// Smallest `k >= 1` with `M^k = I` by repeated multiplication.
pub fn naive_order(f: &Field, m: &[V], limit: u64) -> Option<u64> {
    let id = identity(m.len());
    let mut p = m.to_vec();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = matmul(f, &p, m);
    }
    None
}

/// Companion with superdiagonal ones and last row `-c_0..-c_(n-1)` for a
/// monic `sum c_i X^i`.
pub fn companion(f: &Field, c: &[Elem]) -> Vec<V> {
    let n = c.len() - 1;
    let mut m = vec![vec![Elem::ZERO; n]; n];
    for i in 0..n.saturating_sub(1) {
        m[i][i + 1] = Elem::ONE;
    }
    for j in 0..n {
        m[n - 1][j] = f.neg(c[j]);
    }
    m
}

/// `sum c_i M^i` by Horner's rule.
pub fn eval_poly(f: &Field, c: &[Elem], m: &[V]) -> Vec<V> {
    let n = m.len();
    let mut acc = vec![vec![Elem::ZERO; n]; n];
    for &ci in c.iter().rev() {
        acc = matmul(f, &acc, m);
        for i in 0..n {
            acc[i][i] = f.add(acc[i][i], ci);
        }
    }
    acc
}

pub fn is_invariant_set(th: &Automorphism, m: &[V], set: &BTreeSet<Vec<u32>>) -> bool {
    let f = th.field();
    set.iter().all(|k| set.contains(&key(&semilinear(th, m, &to_vec(f, k)))))
}

pub fn as_key(v: &[Elem]) -> Vec<u32> {
    key(v)
}
