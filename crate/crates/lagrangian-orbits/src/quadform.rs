//! Exact symmetric bilinear forms over the rationals: congruence
//! diagonalization, Sylvester signatures, and a constructive solver for the
//! congruence equation X^T A X = B.
//!
//! Signatures only need diagonalization. Witness construction needs more:
//! given two rationally congruent forms, an explicit congruence must be
//! produced. That reduces to representing target values by diagonal forms,
//! which for binary forms is Legendre's equation a x^2 + b y^2 + c z^2 = 0.
//! Solvability is decided exactly by Legendre's quadratic-residue criterion;
//! solutions are found by Lagrange descent plus a bounded search inside
//! Holzer's bound, all in exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{Field, Scalar};

/// Congruence diagonalization: returns (C, D) with C invertible, D diagonal
/// and C^T B C = D. Zero diagonal pivots are repaired by the standard
/// row-plus-column addition.
pub fn diagonalize(b: &Mat) -> Result<(Mat, Mat)> {
    if !b.is_symmetric() {
        return Err(Error::Shape("diagonalization needs a symmetric matrix".into()));
    }
    if b.field() != Field::Rationals {
        return Err(Error::RationalsOnly);
    }
    let n = b.rows();
    let mut m = b.clone();
    let mut c = Mat::identity(Field::Rationals, n);

    // col_op(j, i, f): col_j += f * col_i, applied congruently to m and to c
    let col_op = |m: &mut Mat, c: &mut Mat, j: usize, i: usize, f: &Scalar| {
        for r in 0..n {
            let v = &(m.at(r, j).clone()) + &(f * m.at(r, i));
            m.set(r, j, v);
        }
        for cc in 0..n {
            let v = &(m.at(j, cc).clone()) + &(f * m.at(i, cc));
            m.set(j, cc, v);
        }
        for r in 0..n {
            let v = &(c.at(r, j).clone()) + &(f * c.at(r, i));
            c.set(r, j, v);
        }
    };
    let swap = |m: &mut Mat, c: &mut Mat, i: usize, j: usize| {
        for r in 0..n {
            let a = m.at(r, i).clone();
            let b = m.at(r, j).clone();
            m.set(r, i, b);
            m.set(r, j, a);
        }
        for cc in 0..n {
            let a = m.at(i, cc).clone();
            let b = m.at(j, cc).clone();
            m.set(i, cc, b);
            m.set(j, cc, a);
        }
        for r in 0..n {
            let a = c.at(r, i).clone();
            let b = c.at(r, j).clone();
            c.set(r, i, b);
            c.set(r, j, a);
        }
    };

    for k in 0..n {
        if m.at(k, k).is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !m.at(l, l).is_zero()) {
                swap(&mut m, &mut c, k, l);
            } else if let Some(l) = (k + 1..n).find(|&l| !m.at(k, l).is_zero()) {
                let one = Field::Rationals.one();
                col_op(&mut m, &mut c, k, l, &one);
            } else {
                continue; // trailing row k is zero
            }
        }
        let pivot = m.at(k, k).clone();
        for l in k + 1..n {
            if !m.at(k, l).is_zero() {
                let f = -&(m.at(k, l) / &pivot);
                col_op(&mut m, &mut c, l, k, &f);
            }
        }
    }
    debug_assert_eq!(&(&c.transpose() * b) * &c, m);
    Ok((c, m))
}

/// Sylvester signature (p, q): the counts of positive and negative entries
/// in any congruence diagonalization. p + q = rank.
pub fn signature(b: &Mat) -> Result<(usize, usize)> {
    let (_, d) = diagonalize(b)?;
    let mut p = 0;
    let mut q = 0;
    for k in 0..d.rows() {
        match d.at(k, k).signum() {
            1 => p += 1,
            -1 => q += 1,
            _ => {}
        }
    }
    Ok((p, q))
}

/// Finds X with X^T A X = B for symmetric invertible rational A, B, or None
/// when the forms are not rationally congruent.
pub fn solve_congruence(a: &Mat, b: &Mat) -> Result<Option<Mat>> {
    if !a.is_symmetric() || !b.is_symmetric() || a.rows() != b.rows() {
        return Err(Error::Shape("congruence needs symmetric matrices of equal size".into()));
    }
    let (cb, db) = diagonalize(b)?;
    let targets: Vec<Scalar> = (0..db.rows()).map(|k| db.at(k, k).clone()).collect();
    if targets.iter().any(|t| t.is_zero()) {
        return Err(Error::Shape("congruence solver needs nondegenerate forms".into()));
    }
    let Some(x0) = solve_to_diagonal(a, &targets) else {
        return Ok(None);
    };
    // x0^T A x0 = diag(targets) = cb^T B cb
    let x = &x0 * &cb.inverse().expect("diagonalizer is invertible");
    debug_assert_eq!(&(&x.transpose() * a) * &x, *b);
    Ok(Some(x))
}

/// Recursive Witt-style construction: X with X^T A X = diag(targets).
fn solve_to_diagonal(a: &Mat, targets: &[Scalar]) -> Option<Mat> {
    let n = a.rows();
    if targets.is_empty() {
        return Some(Mat::zeros(Field::Rationals, n, 0));
    }
    let v = represent(a, &targets[0])?;
    let vmat = Mat::col_vector(Field::Rationals, &v);
    // complement: kernel of the single row v^T A
    let row = (&vmat.transpose() * a).clone();
    let w = row.kernel_basis();
    let restricted = &(&w.transpose() * a) * &w;
    let t_rest = solve_to_diagonal(&restricted, &targets[1..])?;
    Some(vmat.hstack(&(&w * &t_rest)))
}

/// Finds a rational vector v with v^T A v = t (t nonzero), or None when the
/// form does not represent t over the rationals.
pub fn represent(a: &Mat, t: &Scalar) -> Option<Vec<Scalar>> {
    assert!(!t.is_zero());
    let n = a.rows();
    if n == 0 {
        return None;
    }
    let (c, d) = diagonalize(a).expect("symmetric rational input");
    let diag: Vec<Scalar> = (0..n).map(|k| d.at(k, k).clone()).collect();
    let coords = represent_diagonal(&diag, t)?;
    let v = c.apply(&coords);
    debug_assert_eq!(quad_value(a, &v), *t);
    Some(v)
}

fn quad_value(a: &Mat, v: &[Scalar]) -> Scalar {
    let av = a.apply(v);
    let mut acc = Field::Rationals.zero();
    for i in 0..v.len() {
        acc = &acc + &(&v[i] * &av[i]);
    }
    acc
}

fn represent_diagonal(diag: &[Scalar], t: &Scalar) -> Option<Vec<Scalar>> {
    let n = diag.len();
    let zero = || Field::Rationals.zero();
    // single coordinate: d_a x^2 = t needs t/d_a to be a square
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        if let Some(x) = (t / d).sqrt_exact() {
            let mut v = vec![zero(); n];
            v[i] = x;
            return Some(v);
        }
    }
    // coordinate pairs: a binary conic each
    for i in 0..n {
        for j in i + 1..n {
            if diag[i].is_zero() || diag[j].is_zero() {
                continue;
            }
            if let Some((x, y)) = solve_binary(&diag[i], &diag[j], t) {
                let mut v = vec![zero(); n];
                v[i] = x;
                v[j] = y;
                return Some(v);
            }
        }
    }
    if n < 3 {
        return None;
    }
    // coordinate triples, via the common-value split
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if diag[i].is_zero() || diag[j].is_zero() || diag[k].is_zero() {
                    continue;
                }
                if let Some((x, y, z)) = represent_ternary(&diag[i], &diag[j], &diag[k], t) {
                    let mut v = vec![zero(); n];
                    v[i] = x;
                    v[j] = y;
                    v[k] = z;
                    return Some(v);
                }
            }
        }
    }
    if n < 4 {
        return None;
    }
    // higher rank: mix in deterministic small vectors and retry on planes
    let d = Mat::from_fn(Field::Rationals, n, n, |r, c| {
        if r == c { diag[r].clone() } else { zero() }
    });
    let mut attempts = 0;
    for v0 in small_vectors(n, 2) {
        if attempts > 200 {
            break;
        }
        let qv = quad_value(&d, &v0);
        if qv.is_zero() {
            // isotropic vector: the form is universal on a hyperbolic pair
            if let Some(sol) = represent_from_isotropic(&d, &v0, t) {
                return Some(sol);
            }
            continue;
        }
        if let Some(x) = (t / &qv).sqrt_exact() {
            return Some(v0.iter().map(|c| c * &x).collect());
        }
        // plane spanned by v0 and a standard vector
        for j in 0..n {
            attempts += 1;
            let mut ej = vec![zero(); n];
            ej[j] = Field::Rationals.one();
            if let Some(sol) = represent_on_plane(&d, &v0, &ej, t) {
                return Some(sol);
            }
        }
    }
    None
}

/// Integer ternary coefficients of the diagonal form <a, b, c> scaled by a
/// positive rational; scaling changes neither isotropy nor solvability tests.
fn integerize3(a: &Scalar, b: &Scalar, c: &Scalar) -> (BigInt, BigInt, BigInt) {
    let (ar, br, cr) = (a.as_rational(), b.as_rational(), c.as_rational());
    let lcm = ar.denom().lcm(br.denom()).lcm(cr.denom());
    let f = BigRational::from_integer(lcm);
    ((ar * &f).to_integer(), (br * &f).to_integer(), (cr * &f).to_integer())
}

/// Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial rational solution,
/// decided exactly by the sign and quadratic-residue criterion.
fn ternary_solvable(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let (a, b, c) = integerize3(a, b, c);
    ternary_isotropic_decide(a, b, c).is_some()
}

/// Representation of t by a nondegenerate diagonal ternary form.
///
/// If the form is isotropic it is universal and a hyperbolic-pair argument
/// produces the vector. Otherwise search for a common value s represented by
/// <d1, d2> and by <-d3, t>; gluing the two conic solutions represents t.
fn represent_ternary(d1: &Scalar, d2: &Scalar, d3: &Scalar, t: &Scalar) -> Option<(Scalar, Scalar, Scalar)> {
    let zero = || Field::Rationals.zero();
    let gram = Mat::from_fn(Field::Rationals, 3, 3, |r, c| {
        if r != c {
            zero()
        } else if r == 0 {
            d1.clone()
        } else if r == 1 {
            d2.clone()
        } else {
            d3.clone()
        }
    });
    let (ia, ib, ic) = integerize3(d1, d2, d3);
    if let Some((x, y, z)) = ternary_isotropic(ia, ib, ic) {
        let v0 = vec![
            Scalar::Rat(BigRational::from_integer(x)),
            Scalar::Rat(BigRational::from_integer(y)),
            Scalar::Rat(BigRational::from_integer(z)),
        ];
        let sol = represent_from_isotropic(&gram, &v0, t)?;
        return Some((sol[0].clone(), sol[1].clone(), sol[2].clone()));
    }
    // anisotropic: sweep candidate common values s (squarefree, both signs)
    for s_abs in 1i64..=20_000 {
        let (sf, _) = squarefree_decomp(&BigInt::from(s_abs));
        if sf != BigInt::from(s_abs) {
            continue;
        }
        for sign in [1i64, -1] {
            let s = Field::Rationals.from_i64(sign * s_abs);
            let neg_s = -&s;
            let neg_t = -t;
            if !ternary_solvable(d1, d2, &neg_s) || !ternary_solvable(d3, &neg_t, &s) {
                continue;
            }
            let (x, y) = solve_binary(d1, d2, &s)?;
            let (z, w) = solve_binary(d3, &neg_t, &neg_s)?;
            if w.is_zero() {
                // d3 z^2 = -s makes (x, y, z) isotropic; use universality
                let v0 = vec![x, y, z];
                debug_assert!(quad_value(&gram, &v0).is_zero());
                let sol = represent_from_isotropic(&gram, &v0, t)?;
                return Some((sol[0].clone(), sol[1].clone(), sol[2].clone()));
            }
            // d1 x^2 + d2 y^2 + d3 z^2 = s + (-s) + t w^2
            let sol = (&x / &w, &y / &w, &z / &w);
            return Some(sol);
        }
    }
    None
}

/// Exact representation using an isotropic vector: pick u with B(v0, u) != 0;
/// then q(alpha v0 + u) = 2 alpha B(v0, u) + q(u) is linear in alpha.
fn represent_from_isotropic(a: &Mat, v0: &[Scalar], t: &Scalar) -> Option<Vec<Scalar>> {
    let n = a.rows();
    let av0 = a.apply(v0);
    let j = (0..n).find(|&j| !av0[j].is_zero())?;
    let mut u = vec![Field::Rationals.zero(); n];
    u[j] = Field::Rationals.one();
    let b = av0[j].clone(); // B(v0, u)
    let qu = quad_value(a, &u);
    let two = Field::Rationals.from_i64(2);
    let alpha = &(t - &qu) / &(&two * &b);
    let sol: Vec<Scalar> = (0..n).map(|i| &(&alpha * &v0[i]) + &u[i]).collect();
    debug_assert_eq!(quad_value(a, &sol), *t);
    Some(sol)
}

fn represent_on_plane(a: &Mat, v1: &[Scalar], v2: &[Scalar], t: &Scalar) -> Option<Vec<Scalar>> {
    let q1 = quad_value(a, v1);
    let av1 = a.apply(v1);
    let cross: Scalar = v2
        .iter()
        .zip(&av1)
        .fold(Field::Rationals.zero(), |acc, (x, y)| &acc + &(x * y));
    let q2 = quad_value(a, v2);
    if q1.is_zero() {
        return None; // handled by the isotropic path
    }
    // diagonalize the plane: w = v2 - (cross/q1) v1 has q(w) = q2 - cross^2/q1
    let f = &cross / &q1;
    let w: Vec<Scalar> = (0..v1.len()).map(|i| &v2[i] - &(&f * &v1[i])).collect();
    let qw = &q2 - &(&cross * &f);
    if qw.is_zero() {
        return None;
    }
    let (x, y) = solve_binary(&q1, &qw, t)?;
    Some((0..v1.len()).map(|i| &(&x * &v1[i]) + &(&y * &w[i])).collect())
}

/// Deterministic enumeration of small integer direction vectors.
fn small_vectors(n: usize, radius: i64) -> impl Iterator<Item = Vec<Scalar>> {
    let base = 2 * radius + 1;
    let total = (base as usize).pow(n as u32);
    (0..total).filter_map(move |idx| {
        let mut v = Vec::with_capacity(n);
        let mut x = idx;
        let mut nonzero = false;
        for _ in 0..n {
            let digit = (x % base as usize) as i64 - radius;
            x /= base as usize;
            nonzero |= digit != 0;
            v.push(Field::Rationals.from_i64(digit));
        }
        if nonzero { Some(v) } else { None }
    })
}

/// Solves a x^2 + b y^2 = t over the rationals (all nonzero), exactly.
pub fn solve_binary(a: &Scalar, b: &Scalar, t: &Scalar) -> Option<(Scalar, Scalar)> {
    // quick wins before the full machinery
    if let Some(x) = (t / a).sqrt_exact() {
        return Some((x, Field::Rationals.zero()));
    }
    if let Some(y) = (t / b).sqrt_exact() {
        return Some((Field::Rationals.zero(), y));
    }
    // clear denominators: A x^2 + B y^2 - T z^2 = 0 with z = 1
    let (ar, br, tr) = (a.as_rational(), b.as_rational(), t.as_rational());
    let lcm = ar.denom().lcm(br.denom()).lcm(tr.denom());
    let to_int = |r: &BigRational| (r * BigRational::from_integer(lcm.clone())).to_integer();
    let (x, y, z) = ternary_isotropic(to_int(ar), to_int(br), -to_int(tr))?;
    let (x, y, z) = (
        BigRational::from_integer(x),
        BigRational::from_integer(y),
        BigRational::from_integer(z),
    );
    if !z.is_zero() {
        let sol = (Scalar::Rat(&x / &z), Scalar::Rat(&y / &z));
        return Some(sol);
    }
    // z = 0: the binary part is isotropic, hence universal
    let d = Mat::from_fn(Field::Rationals, 2, 2, |r, c| {
        if r != c {
            Field::Rationals.zero()
        } else if r == 0 {
            a.clone()
        } else {
            b.clone()
        }
    });
    let v0 = vec![Scalar::Rat(x), Scalar::Rat(y)];
    represent_from_isotropic(&d, &v0, t).map(|v| (v[0].clone(), v[1].clone()))
}

// ---- Legendre's equation over the integers ----

/// Solvability test only: normalizes and applies the sign and residue
/// criterion, returning Some(()) when a nontrivial solution exists.
fn ternary_isotropic_decide(a: BigInt, b: BigInt, c: BigInt) -> Option<()> {
    assert!(!a.is_zero() && !b.is_zero() && !c.is_zero());
    let mut co = [a, b, c];
    loop {
        let mut changed = false;
        for item in co.iter_mut() {
            let (sf, sq) = squarefree_decomp(item);
            if !sq.is_one() {
                *item = sf;
                changed = true;
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let g = co[i].gcd(&co[j]);
                if g > BigInt::one() {
                    let k = 3 - i - j;
                    co[i] = &co[i] / &g;
                    co[j] = &co[j] / &g;
                    co[k] = &co[k] * &g;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let [a, b, c] = co;
    if a.sign() == b.sign() && b.sign() == c.sign() {
        return None;
    }
    if sqrt_mod_squarefree(&(-(&a * &b)), &c.abs()).is_none()
        || sqrt_mod_squarefree(&(-(&b * &c)), &a.abs()).is_none()
        || sqrt_mod_squarefree(&(-(&a * &c)), &b.abs()).is_none()
    {
        return None;
    }
    Some(())
}

/// Nontrivial integer solution of a x^2 + b y^2 + c z^2 = 0, or None when
/// none exists. Arbitrary nonzero integer coefficients.
pub fn ternary_isotropic(a: BigInt, b: BigInt, c: BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    assert!(!a.is_zero() && !b.is_zero() && !c.is_zero());
    // normalize to squarefree pairwise-coprime coefficients, recording the
    // projective rescalings needed to map a solution back
    enum Op {
        // coefficient i lost a square factor f^2: new var X_i = f x_i,
        // so scale the OTHER variables by f on the way back
        MulOthers(usize, BigInt),
        // pair step z_k -> z_k / g: scale variable k by g on the way back
        MulVar(usize, BigInt),
    }
    let mut ops: Vec<Op> = Vec::new();
    let mut co = [a, b, c];
    loop {
        let mut changed = false;
        for i in 0..3 {
            let (sf, sq) = squarefree_decomp(&co[i]);
            if !sq.is_one() {
                co[i] = sf;
                ops.push(Op::MulOthers(i, sq));
                changed = true;
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let g = co[i].gcd(&co[j]);
                if g > BigInt::one() {
                    let k = 3 - i - j;
                    co[i] = &co[i] / &g;
                    co[j] = &co[j] / &g;
                    co[k] = &co[k] * &g;
                    ops.push(Op::MulVar(k, g));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let [a, b, c] = co;
    let (x, y, z) = legendre_normalized(a, b, c)?;
    let mut sol = [x, y, z];
    for op in ops.into_iter().rev() {
        match op {
            Op::MulOthers(i, f) => {
                for j in 0..3 {
                    if j != i {
                        sol[j] = &sol[j] * &f;
                    }
                }
            }
            Op::MulVar(i, f) => {
                sol[i] = &sol[i] * &f;
            }
        }
        let g = sol[0].gcd(&sol[1]).gcd(&sol[2]);
        if g > BigInt::one() {
            for s in sol.iter_mut() {
                *s = &*s / &g;
            }
        }
    }
    let [x, y, z] = sol;
    Some((x, y, z))
}

/// Legendre solvability criterion plus Lagrange descent, for squarefree
/// pairwise coprime coefficients.
fn legendre_normalized(a: BigInt, b: BigInt, c: BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    if a.sign() == b.sign() && b.sign() == c.sign() {
        return None;
    }
    // the classical criterion decides solvability exactly
    if sqrt_mod_squarefree(&(-(&a * &b)), &c.abs()).is_none()
        || sqrt_mod_squarefree(&(-(&b * &c)), &a.abs()).is_none()
        || sqrt_mod_squarefree(&(-(&a * &c)), &b.abs()).is_none()
    {
        return None;
    }
    let sol = descend(a.clone(), b.clone(), c.clone());
    debug_assert!((&a * &sol.0 * &sol.0 + &b * &sol.1 * &sol.1 + &c * &sol.2 * &sol.2).is_zero());
    Some(sol)
}

const SEARCH_THRESHOLD: i64 = 4096;

/// Lagrange descent on the largest coefficient; the input is known solvable.
fn descend(a: BigInt, b: BigInt, c: BigInt) -> (BigInt, BigInt, BigInt) {
    // order so |c| is the largest, remembering the permutation
    let mut trip = [(a, 0usize), (b, 1), (c, 2)];
    trip.sort_by(|x, y| x.0.abs().cmp(&y.0.abs()));
    let perm = [trip[0].1, trip[1].1, trip[2].1];
    let (a, b, c) = (trip[0].0.clone(), trip[1].0.clone(), trip[2].0.clone());

    let sol = if c.abs() <= BigInt::from(SEARCH_THRESHOLD) {
        holzer_search(&a, &b, &c)
    } else {
        let t = sqrt_mod_squarefree(&(-(&a * &b)), &c.abs()).expect("criterion already passed");
        // choose the representative with |t| <= |c|/2
        let t = if &t * 2 > c.abs() { &t - &c.abs() } else { t };
        let m_big = (&t * &t + &a * &b) / &c;
        if m_big.is_zero() {
            // t^2 = -ab: (t, a, 0) solves directly
            (t, a.clone(), BigInt::zero())
        } else {
            let (m, k) = squarefree_decomp(&m_big);
            let (x1, y1, z1) = {
                let (xx, yy, zz) = ternary_isotropic(a.clone(), b.clone(), m.clone())
                    .expect("descent preserves solvability");
                (xx, yy, zz)
            };
            // (a x1^2 + b y1^2)(t^2 + ab) = a(x1 t - b y1)^2 + b(y1 t + a x1)^2
            // and a x1^2 + b y1^2 = -m z1^2, t^2 + ab = c m k^2
            let x = &x1 * &t - &b * &y1;
            let y = &y1 * &t + &a * &x1;
            let z = &m * &k * &z1;
            if x.is_zero() && y.is_zero() && z.is_zero() {
                // can only happen when z1 = 0 and the binary part is isotropic;
                // fall back to the direct bounded search
                holzer_search(&a, &b, &c)
            } else {
                (x, y, z)
            }
        }
    };
    // undo the sort permutation and clear common factors
    let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    let parts = [sol.0, sol.1, sol.2];
    for (pos, &orig) in perm.iter().enumerate() {
        out[orig] = parts[pos].clone();
    }
    let g = out[0].gcd(&out[1]).gcd(&out[2]);
    if g > BigInt::one() {
        for s in out.iter_mut() {
            *s = &*s / &g;
        }
    }
    (out[0].clone(), out[1].clone(), out[2].clone())
}

/// Exhaustive search inside Holzer's bound |z| <= sqrt|ab| etc.; only called
/// on provably solvable instances, where the bound guarantees a hit.
fn holzer_search(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt) {
    let bx = (b * c).abs().sqrt() + 1u32;
    let by = (a * c).abs().sqrt() + 1u32;
    let bz = (a * b).abs().sqrt() + 1u32;
    // iterate the two smallest bounds, solve for the third variable exactly
    let mut dims = [(bx.clone(), 0usize), (by.clone(), 1), (bz.clone(), 2)];
    dims.sort_by(|u, v| u.0.cmp(&v.0));
    let coeffs = [a.clone(), b.clone(), c.clone()];
    let (outer, inner, solved) = (dims[0].1, dims[1].1, dims[2].1);
    let ob: i64 = dims[0].0.to_string().parse().unwrap_or(i64::MAX);
    let ib: i64 = dims[1].0.to_string().parse().unwrap_or(i64::MAX);
    assert!(
        ob.checked_mul(ib).map(|p| p < 100_000_000).unwrap_or(false),
        "Holzer search bound unexpectedly large"
    );
    for u in 0..=ob {
        for v in 0..=ib {
            if u == 0 && v == 0 {
                continue;
            }
            for (su, sv) in [(1i64, 1i64), (1, -1)] {
                let uu = BigInt::from(su * u);
                let vv = BigInt::from(sv * v);
                let partial = &coeffs[outer] * &uu * &uu + &coeffs[inner] * &vv * &vv;
                let rhs = -partial;
                let (q, r) = rhs.div_rem(&coeffs[solved]);
                if !r.is_zero() || q.is_negative() {
                    continue;
                }
                let w = q.sqrt();
                if &w * &w == q {
                    let mut sol = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                    sol[outer] = uu;
                    sol[inner] = vv;
                    sol[solved] = w;
                    return (sol[0].clone(), sol[1].clone(), sol[2].clone());
                }
            }
        }
    }
    unreachable!("no solution within Holzer's bound on a solvable instance");
}

/// Writes n = s * k^2 with s squarefree (sign kept on s).
pub fn squarefree_decomp(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut s = BigInt::one() * n.signum();
    let mut k = BigInt::one();
    let mut rest = n.abs();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest = &rest / &p;
            e += 1;
        }
        if e % 2 == 1 {
            s = &s * &p;
        }
        k = &k * &p.pow(e / 2);
        p = if p == BigInt::from(2) { BigInt::from(3) } else { &p + 2 };
    }
    // leftover is prime, 1, or a large square
    let r = rest.sqrt();
    if &r * &r == rest {
        k = &k * &r;
    } else {
        s = &s * &rest;
    }
    (s, k)
}

/// Square root of n modulo a squarefree modulus (via factoring and CRT),
/// or None when n is not a quadratic residue.
fn sqrt_mod_squarefree(n: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    assert!(modulus.is_positive());
    if modulus.is_one() {
        return Some(BigInt::zero());
    }
    let primes = factor(modulus);
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for p in primes {
        let np = n.mod_floor(&p);
        let r = sqrt_mod_prime(&np, &p)?;
        // CRT combine x mod m with r mod p
        let (g, inv, _) = extended_gcd(&m, &p);
        debug_assert!(g.is_one());
        let diff = (&r - &x).mod_floor(&p);
        x = &x + &m * ((&diff * &inv).mod_floor(&p));
        m = &m * &p;
    }
    Some(x.mod_floor(&m))
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let (g, x, y) = extended_gcd(b, &a.mod_floor(b));
    let q = a.div_floor(b);
    (g, y.clone(), x - q * y)
}

fn factor(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if (&rest % &p).is_zero() {
            out.push(p.clone());
            while (&rest % &p).is_zero() {
                rest = &rest / &p;
            }
        }
        p = if p == BigInt::from(2) { BigInt::from(3) } else { &p + 2 };
    }
    if rest > BigInt::one() {
        out.push(rest);
    }
    out
}

/// Tonelli-Shanks square root mod an odd prime (p = 2 handled directly).
fn sqrt_mod_prime(n: &BigInt, p: &BigInt) -> Option<BigInt> {
    let n = n.mod_floor(p);
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == BigInt::from(2) {
        return Some(n);
    }
    let one = BigInt::one();
    let exp = (p - &one) / 2;
    if n.modpow(&exp, p) != one {
        return None;
    }
    // write p - 1 = q * 2^s with q odd
    let mut q = p - &one;
    let mut s = 0u32;
    while q.is_even() {
        q /= 2;
        s += 1;
    }
    if s == 1 {
        return Some(n.modpow(&((p + 1) / 4), p));
    }
    // find a quadratic non-residue z
    let mut z = BigInt::from(2);
    while z.modpow(&exp, p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = n.modpow(&q, p);
    let mut r = n.modpow(&((&q + 1u32) / 2), p);
    while t != one {
        let mut i = 0u32;
        let mut tt = t.clone();
        while tt != one {
            tt = (&tt * &tt).mod_floor(p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&BigInt::from(2u32).pow(m - i - 1), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    const Q: Field = Field::Rationals;

    fn diag(entries: &[i64]) -> Mat {
        Mat::from_fn(Q, entries.len(), entries.len(), |r, c| {
            if r == c { Q.from_i64(entries[r]) } else { Q.zero() }
        })
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&diag(&[1, -1])).unwrap(), (1, 1));
        let hyp = Mat::from_i64_rows(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&hyp).unwrap(), (1, 1));
        assert_eq!(signature(&diag(&[])).unwrap(), (0, 0));
    }

    #[test]
    fn signature_rejects_non_symmetric() {
        let m = Mat::from_i64_rows(Q, &[&[0, 1], &[2, 0]]);
        assert!(matches!(signature(&m), Err(Error::Shape(_))));
    }

    fn random_invertible(rng: &mut ChaCha12Rng, n: usize) -> Mat {
        loop {
            let m = Mat::from_fn(Q, n, n, |_, _| Q.from_i64(rng.gen_range(-3..=3)));
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    #[test]
    fn sylvester_stability_under_congruence() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let entries: Vec<i64> = (0..n).map(|_| *[1, -1, 2, -3, 5].get(rng.gen_range(0..5)).unwrap()).collect();
            let b = diag(&entries);
            let c = random_invertible(&mut rng, n);
            let pushed = &(&c.transpose() * &b) * &c;
            assert_eq!(signature(&pushed).unwrap(), signature(&b).unwrap());
        }
    }

    #[test]
    fn ternary_known_cases() {
        // x^2 + y^2 - 2 z^2 = 0 has (1, 1, 1)
        let s = ternary_isotropic(BigInt::from(1), BigInt::from(1), BigInt::from(-2)).unwrap();
        let val: BigInt = &s.0 * &s.0 + &s.1 * &s.1 - BigInt::from(2) * &s.2 * &s.2;
        assert!(val.is_zero());
        // x^2 + y^2 - 3 z^2 = 0 has no nontrivial solution
        assert!(ternary_isotropic(BigInt::from(1), BigInt::from(1), BigInt::from(-3)).is_none());
        // definite forms are anisotropic
        assert!(ternary_isotropic(BigInt::from(1), BigInt::from(2), BigInt::from(3)).is_none());
    }

    #[test]
    fn ternary_matches_brute_force_on_small_triples() {
        // whenever a small solution exists, the solver must find one too
        let brute = |a: i64, b: i64, c: i64| -> bool {
            for x in 0..=12i64 {
                for y in -12..=12i64 {
                    for z in -12..=12i64 {
                        if (x, y, z) != (0, 0, 0) && a * x * x + b * y * y + c * z * z == 0 {
                            return true;
                        }
                    }
                }
            }
            false
        };
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..120 {
            let a = rng.gen_range(1..=12i64);
            let b = rng.gen_range(-12..=12i64);
            let c = rng.gen_range(-12..=-1i64);
            if b == 0 {
                continue;
            }
            let got = ternary_isotropic(BigInt::from(a), BigInt::from(b), BigInt::from(c));
            if let Some((x, y, z)) = &got {
                assert!(
                    (a * x * x + b * y * y + c * z * z).is_zero(),
                    "bad solution for {a},{b},{c}"
                );
            }
            if brute(a, b, c) {
                assert!(got.is_some(), "missed solvable triple {a},{b},{c}");
            }
        }
    }

    #[test]
    fn binary_representation() {
        let two = Q.from_i64(2);
        let one = Q.one();
        // x^2 + y^2 = 2
        let (x, y) = solve_binary(&one, &one, &two).unwrap();
        assert_eq!(&(&x * &x) + &(&y * &y), two);
        // x^2 + y^2 = 3 is impossible
        assert!(solve_binary(&one, &one, &Q.from_i64(3)).is_none());
        // 2x^2 + (1/2)y^2 = 1
        let half = Q.parse("1/2").unwrap();
        let (x, y) = solve_binary(&two, &half, &one).unwrap();
        assert_eq!(&(&two * &(&x * &x)) + &(&half * &(&y * &y)), one);
    }

    #[test]
    fn congruence_solver_on_pushed_forms() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for n in 1..=4usize {
            for _ in 0..25 {
                let entries: Vec<i64> = (0..n)
                    .map(|_| *[1i64, -1, 1, -1, 2].get(rng.gen_range(0..5)).unwrap())
                    .collect();
                let a = diag(&entries);
                let c = random_invertible(&mut rng, n);
                let b = &(&c.transpose() * &a) * &c;
                let x = solve_congruence(&a, &b).unwrap().expect("pushed form is congruent");
                assert_eq!(&(&x.transpose() * &a) * &x, b);
            }
        }
    }

    #[test]
    fn congruence_solver_detects_inequivalence() {
        // diag(1) vs diag(2): same signature, different square class
        let a = diag(&[1]);
        let b = diag(&[2]);
        assert!(solve_congruence(&a, &b).unwrap().is_none());
        // diag(1,1) vs diag(7,7): 7 is not a sum of two rational squares
        assert!(solve_congruence(&diag(&[1, 1]), &diag(&[7, 7])).unwrap().is_none());
        // but diag(1,1) vs diag(2,2) is congruent: 2 = 1+1
        let x = solve_congruence(&diag(&[1, 1]), &diag(&[2, 2])).unwrap().unwrap();
        assert_eq!(&(&x.transpose() * &diag(&[1, 1])) * &x, diag(&[2, 2]));
    }

    #[test]
    fn squarefree_decomposition() {
        let (s, k) = squarefree_decomp(&BigInt::from(72));
        assert_eq!((s, k), (BigInt::from(2), BigInt::from(6)));
        let (s, k) = squarefree_decomp(&BigInt::from(-50));
        assert_eq!((s, k), (BigInt::from(-2), BigInt::from(5)));
    }
}
