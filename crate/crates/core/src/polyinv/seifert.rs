//! Seifert-matrix invariants of 2-bridge knots built from the even form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::conway::{to_even_form, ConwaySeq, MirrorMode};
use crate::matrix::IntMatrix;
use crate::trivial::RationalKnot;

use super::laurent::LaurentPoly;

/// Even form of `k`, empty for the unknot.
pub fn even_form(k: &RationalKnot) -> Vec<BigInt> {
    if k.is_unknot() {
        return vec![];
    }
    to_even_form(k.p(), k.q(), MirrorMode::Strict).map(ConwaySeq::into_entries).expect("p odd and coprime to q")
}

/// Diagonal of the Seifert matrix: `(-1)^i·b_i` for even-form entries `2·b_i`, `i ≥ 1`.
fn seifert_diagonal(e: &[BigInt]) -> Vec<BigInt> {
    e.iter()
        .enumerate()
        .map(|(i, x)| {
            let b: BigInt = x / 2;
            if i % 2 == 0 { -b } else { b }
        })
        .collect()
}

/// Bidiagonal Seifert matrix with unit superdiagonal.
pub fn seifert_matrix(k: &RationalKnot) -> IntMatrix {
    let d = seifert_diagonal(&even_form(k));
    let mut m = IntMatrix::diagonal(&d);
    for i in 1..d.len() {
        m[(i - 1, i)] = BigInt::one();
    }
    m
}

/// Dense three-term recurrence `D_k = x_k·(u + v·y)·D_{k-1} + w·y·D_{k-2}` in one variable `y`,
/// returned as coefficients of `y^0, y^1, ...`.
fn continuant(d: &[BigInt], u: i64, v: i64, w: i64) -> Vec<BigInt> {
    let (mut prev, mut cur) = (Vec::<BigInt>::new(), vec![BigInt::one()]);
    for x in d {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            let xc = x * c;
            if u != 0 {
                next[i] += &xc * u;
            }
            next[i + 1] += xc * v;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c * w;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn dense(coeffs: Vec<BigInt>, offset: i64) -> LaurentPoly {
    LaurentPoly::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64 + offset, c)))
}

/// `det(V - t·Vᵀ)` via the tridiagonal continuant
/// `D_k = d_k(1 - t)·D_{k-1} + t·D_{k-2}`.
fn seifert_continuant(d: &[BigInt]) -> LaurentPoly {
    dense(continuant(d, 1, -1, 1), 0)
}

/// Alexander polynomial, symmetric with `Δ(1) = 1`.
pub fn alexander(k: &RationalKnot) -> LaurentPoly {
    let d = seifert_diagonal(&even_form(k));
    let raw = seifert_continuant(&d).shift(-(d.len() as i64) / 2);
    if raw.eval_int(1).is_negative() { -raw } else { raw }
}

/// `∇(z)` with `Δ(t) = ∇(t^{1/2} - t^{-1/2})`, for symmetric `Δ`.
pub fn conway_from_alexander(delta: &LaurentPoly) -> LaurentPoly {
    let z2 = LaurentPoly::from_i64_terms(&[(-1, 1), (0, -2), (1, 1)]);
    let top = delta.max_degree().unwrap_or(0).max(0) as usize;
    let mut powers = vec![LaurentPoly::one()];
    for j in 1..=top {
        powers.push(&powers[j - 1] * &z2);
    }
    let mut rest = delta.clone();
    let mut nabla = LaurentPoly::zero();
    while let Some(m) = rest.max_degree() {
        assert!(m >= 0, "Alexander polynomial is not symmetric");
        let c = rest.coeff(m);
        nabla = &nabla + &LaurentPoly::monomial(c.clone(), 2 * m);
        rest = &rest - &powers[m as usize].scale(&c);
    }
    nabla
}

/// `∇(z) = det(t^{1/2}V - t^{-1/2}Vᵀ)` via `D_k = d_k·z·D_{k-1} + D_{k-2}`, with `∇(0) = 1`.
pub fn conway(k: &RationalKnot) -> LaurentPoly {
    // with y = z the D_{k-2} term has no factor of z; shift it back by one degree
    let d = seifert_diagonal(&even_form(k));
    let (mut prev, mut cur) = (Vec::<BigInt>::new(), vec![BigInt::one()]);
    for x in &d {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += x * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] += c;
        }
        prev = cur;
        cur = next;
    }
    let cur = dense(cur, 0);
    if cur.coeff(0).is_negative() { -cur } else { cur }
}

/// `(Δ(t), ∇(z))`
pub fn alexander_conway(k: &RationalKnot) -> (LaurentPoly, LaurentPoly) {
    (alexander(k), conway(k))
}

/// Signature of a symmetric integer matrix by rational congruence diagonalization.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_signature(m: &IntMatrix) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(m[(i, j)].clone())).collect()).collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j makes the pivot 2·a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                if a[k][c].is_zero() {
                    continue;
                }
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    sig
}

/// Signature of `V + Vᵀ`.
pub fn signature(k: &RationalKnot) -> i64 {
    let v = seifert_matrix(k);
    symmetric_signature(&v.add(&v.transpose()).expect("square"))
}

/// Half the length of the even form.
pub fn genus_rational(k: &RationalKnot) -> usize {
    even_form(k).len() / 2
}
