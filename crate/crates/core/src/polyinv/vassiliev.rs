//! Low-degree Vassiliev invariants read off the Jones and Conway polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{precondition, Result};
use crate::trivial::RationalKnot;

use super::bracket::jones;
use super::laurent::LaurentPoly;
use super::seifert::alexander_conway;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VassilievData {
    pub v2: BigInt,
    pub v3: BigRational,
    /// `u_0, …, u_n` with `V(e^x) = Σ u_k x^k`.
    pub jones_taylor: Vec<BigRational>,
}

/// `u_k = Σ_j c_j j^k / k!` for `V(t) = Σ_j c_j t^j`.
pub fn taylor_at_one(v: &LaurentPoly, n: usize) -> Vec<BigRational> {
    let mut fact = BigInt::one();
    (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            let s: BigInt = v.terms().map(|(j, c)| c * BigInt::from(j).pow(k as u32)).sum();
            BigRational::new(s, fact.clone())
        })
        .collect()
}

/// `Σ_j c_j·j(j-1)…(j-r+1)`, the `r`-th derivative at `t = 1`.
fn derivative_at_one(v: &LaurentPoly, r: u32) -> BigInt {
    v.terms().map(|(j, c)| c * (0..r as i64).map(|i| BigInt::from(j - i)).product::<BigInt>()).sum()
}

/// `v2 = -V''(1)/6`, `v3 = -V''(1)/12 - V'''(1)/36`, and the Taylor series
/// of `V(e^x)` to order `n`.
pub fn vassiliev_from_jones(v: &LaurentPoly, n: usize) -> VassilievData {
    let d2 = derivative_at_one(v, 2);
    let d3 = derivative_at_one(v, 3);
    let v2 = BigRational::new(-&d2, 6.into());
    assert!(v2.is_integer(), "V''(1) is divisible by 6 for every knot");
    let v3 = BigRational::new(-d2, 12.into()) - BigRational::new(d3, 36.into());
    VassilievData { v2: v2.to_integer(), v3, jones_taylor: taylor_at_one(v, n) }
}

pub fn vassiliev_extract(k: &RationalKnot, n: usize) -> Result<VassilievData> {
    if n < 2 {
        return Err(precondition("the degree bound must be at least 2"));
    }
    Ok(vassiliev_from_jones(&jones(k), n))
}

/// Outcome of the polynomial test for `n`-similarity to the unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityReport {
    pub degree: usize,
    /// Degrees `k ∈ [2, n]` with `u_k ≠ 0`.
    pub jones_failures: Vec<usize>,
    /// Degrees `j ∈ [2, n]` with a non-zero `z^j` coefficient.
    pub conway_failures: Vec<usize>,
}

impl SimilarityReport {
    /// `true` when every checked coefficient vanishes.
    pub fn holds(&self) -> bool {
        self.jones_failures.is_empty() && self.conway_failures.is_empty()
    }

    /// What a positive answer does and does not establish.
    pub fn scope(&self) -> &'static str {
        "only invariants derived from the Jones and Conway polynomials are checked; \
         this is necessary but not sufficient for n-similarity to the unknot"
    }
}

/// Checks `u_k = 0` and `[z^k]∇ = 0` for `2 ≤ k ≤ n`.
pub fn similarity_report(k: &RationalKnot, n: usize) -> Result<SimilarityReport> {
    let data = vassiliev_extract(k, n)?;
    let (_, nabla) = alexander_conway(k);
    let jones_failures = (2..=n).filter(|&i| !data.jones_taylor[i].is_zero()).collect();
    let conway_failures = (2..=n).filter(|&j| !nabla.coeff(j as i64).is_zero()).collect();
    Ok(SimilarityReport { degree: n, jones_failures, conway_failures })
}

/// Necessary condition for `n`-similarity to the unknot; see [`SimilarityReport::scope`].
pub fn certify_n_similar_to_unknot(k: &RationalKnot, n: usize) -> Result<bool> {
    similarity_report(k, n).map(|r| r.holds())
}
