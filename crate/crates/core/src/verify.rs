//! Batch verification of the library's headline claims, each against an
//! independent computation and a wall-clock budget.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{self, Rho};
use crate::conway::ConwaySeq;
use crate::homology::{realize_module, solve_det_congruence, unit_lift};
use crate::oracle;
use crate::polyinv::diagram::TangleDiagram;
use crate::polyinv::{self, bracket_pair};
use crate::tangle::{closure_determinant, krebes_of_sequence};
use crate::trivial::{
    certify_unknotting_one, family_knot, lm1_fraction, lm1_det, make_wn, verify_n_trivial_structure, RationalKnot,
    Sign, TwistParams,
};

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Depth of the w_n constructions used by the congruence and homology checks.
    pub depth: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 7, depth: 3 }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    /// The checked property held.
    pub holds: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.holds && self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let over = if self.holds && self.elapsed > self.limit { " [over time limit]" } else { "" };
        write!(
            f,
            "[{status}] {:>2}. {} ({:.3?} / limit {:?}){over}: {}",
            self.id, self.title, self.elapsed, self.limit, self.detail
        )
    }
}

fn timed(id: u8, title: &'static str, limit: Duration, f: impl FnOnce() -> (bool, String)) -> CriterionReport {
    let start = Instant::now();
    let (holds, detail) = f();
    CriterionReport { id, title, holds, elapsed: start.elapsed(), limit, detail }
}

fn ints(v: &[i64]) -> ConwaySeq {
    ConwaySeq::from_i64s(v).expect("non-empty")
}

fn sign_patterns(n: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0..1usize << n).map(move |bits| (0..n).map(|i| if bits >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect())
}

pub fn wn_example() -> CriterionReport {
    timed(1, "w_n example", Duration::from_millis(1), || {
        let t = TwistParams::from_i64s(&[2, -4, 2]).expect("even");
        let stages = [
            (make_wn(&TwistParams::from_i64s(&[2]).expect("even")), ints(&[2])),
            (make_wn(&TwistParams::from_i64s(&[2, -4]).expect("even")), ints(&[2, -4, -2])),
            (make_wn(&t), ints(&[2, -4, -2, 2, 2, 4, -2])),
        ];
        let ok = stages.iter().all(|(got, want)| got == want);
        (ok, format!("w_3 = {}", stages[2].0))
    })
}

pub fn structure(seed: u64) -> CriterionReport {
    timed(2, "zeroing any a_i trivializes w_n", Duration::from_secs(1), || {
        let mut checks = 0;
        let mut bad = Vec::new();
        for n in 1..=5usize {
            let base = TwistParams::from_i64s(&vec![2; n]).expect("even");
            let r = verify_n_trivial_structure(&base, 100, seed.wrapping_add(n as u64));
            checks += r.checks;
            bad.extend(r.violations.into_iter().map(|v| (n, v)));
        }
        let detail = match bad.first() {
            None => format!("{checks} fraction checks for n ≤ 5, 100 random vectors each"),
            Some((n, v)) => format!("{} violations; first at n = {n}: {:?} gives {}", bad.len(), v.kind, v.fraction),
        };
        (bad.is_empty(), detail)
    })
}

pub fn closed_form() -> CriterionReport {
    timed(3, "closed form for a_i = ±2", Duration::from_secs(5), || {
        let mut checks = 0;
        for n in 1..=6usize {
            for signs in sign_patterns(n) {
                let w = make_wn(&TwistParams::from_signs(&signs).expect("even"));
                let f = lm1_fraction(n, &signs).expect("length matches");
                if f.abs() != w.if_eval().abs() {
                    return (false, format!("closed form {f} ≠ IF(w_{n}) for {signs:?}"));
                }
                for s in -10i64..=10 {
                    let det = lm1_det(n, &signs, &s.into()).expect("length matches");
                    let mut seq = w.clone();
                    seq.push(s.into());
                    let oracle = closure_determinant(&krebes_of_sequence(&seq));
                    if det.abs() != oracle {
                        return (false, format!("det {det} ≠ {oracle} for {signs:?}, s = {s}"));
                    }
                    checks += 1;
                }
            }
        }
        (true, format!("{checks} determinants over all sign patterns, n ≤ 6"))
    })
}

/// Depth `n ≤ 4` family knots: `a_i = ±2`, `c ∈ {±2, ±4}`.
fn family() -> Vec<(usize, Vec<Sign>, i64, RationalKnot)> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        for signs in sign_patterns(n) {
            let t = TwistParams::from_signs(&signs).expect("even");
            for c in [2i64, -2, 4, -4] {
                let k = family_knot(&t, &c.into()).expect("non-zero even parameters");
                out.push((n, signs.clone(), c, k));
            }
        }
    }
    out
}

pub fn family_triviality() -> CriterionReport {
    timed(4, "family knots: u_2..u_n, z^1..z^n vanish; genus 2^(n-1)", Duration::from_secs(30), || {
        let mut stated_failures = Vec::new();
        let mut below_failures = 0usize;
        let mut genus_failures = 0usize;
        let knots = family();
        for (n, signs, c, k) in &knots {
            let n = *n;
            let data = polyinv::vassiliev_extract(k, n.max(2)).expect("degree ≥ 2");
            let (_, nabla) = polyinv::alexander_conway(k);
            let u_bad: Vec<usize> = (2..=n).filter(|&d| !data.jones_taylor[d].is_zero()).collect();
            let z_bad: Vec<usize> = (1..=n).filter(|&d| !nabla.coeff(d as i64).is_zero()).collect();
            if u_bad.iter().any(|&d| d < n) || z_bad.iter().any(|&d| d < n) {
                below_failures += 1;
            }
            if !u_bad.is_empty() || !z_bad.is_empty() {
                stated_failures.push((n, signs.clone(), *c, u_bad, z_bad));
            }
            if polyinv::genus_rational(k) != 1 << (n - 1) {
                genus_failures += 1;
            }
        }
        let holds = stated_failures.is_empty() && genus_failures == 0;
        let mut detail = format!(
            "{} knots; {} with a non-zero coefficient of degree ≤ n; {} of degree < n; {} genus mismatches",
            knots.len(),
            stated_failures.len(),
            below_failures,
            genus_failures
        );
        if let Some((n, signs, c, u, z)) = stated_failures.first() {
            let signs: String = signs.iter().map(ToString::to_string).collect();
            detail.push_str(&format!("; first: n = {n}, signs {signs}, c = {c}, u_k ≠ 0 at {u:?}, z^k ≠ 0 at {z:?}"));
        }
        (holds, detail)
    })
}

pub fn unknotting() -> CriterionReport {
    timed(5, "one crossing change unknots the family", Duration::from_secs(1), || {
        let mut count = 0;
        for n in 1..=4usize {
            for signs in sign_patterns(n) {
                let t = TwistParams::from_signs(&signs).expect("even");
                for c in [2i64, -2, 4, -4] {
                    match certify_unknotting_one(&t, &c.into()) {
                        Ok(true) => count += 1,
                        other => return (false, format!("{signs:?}, c = {c}: {other:?}")),
                    }
                }
            }
        }
        (true, format!("{count} knots unknot after a_n ↦ 0"))
    })
}

pub fn signature_parity() -> CriterionReport {
    timed(6, "4 | σ iff p ≡ 1 mod 4, |Δ(-1)| = p", Duration::from_secs(30), || {
        let mut count = 0;
        for p in (3..=200i64).step_by(2) {
            for q in (1..p).filter(|q| q.gcd(&p) == 1) {
                let k = RationalKnot::from_i64(p, q).expect("coprime odd");
                let sigma = polyinv::signature(&k);
                if (sigma % 4 == 0) != (p % 4 == 1) {
                    return (false, format!("{k}: σ = {sigma}"));
                }
                let (delta, _) = polyinv::alexander_conway(&k);
                let at = delta.eval_int(-1);
                if at.abs() != num_rational::BigRational::from_integer(p.into()) {
                    return (false, format!("{k}: Δ(-1) = {at}"));
                }
                count += 1;
            }
        }
        (true, format!("{count} knots with odd p ≤ 200"))
    })
}

/// Random positive Conway notation with crossing number in `1..=max`.
pub fn random_positive_form(rng: &mut impl Rng, max: u32) -> ConwaySeq {
    let c = rng.gen_range(1..=max);
    let len = rng.gen_range(1..=c.min(6));
    // composition of c into len positive parts
    let mut cuts: Vec<u32> = Vec::new();
    while cuts.len() < (len - 1) as usize {
        let x = rng.gen_range(1..c);
        if !cuts.contains(&x) {
            cuts.push(x);
        }
    }
    cuts.sort_unstable();
    cuts.push(c);
    let mut prev = 0;
    let parts: Vec<i64> = cuts
        .into_iter()
        .map(|x| {
            let d = x - prev;
            prev = x;
            d as i64
        })
        .collect();
    ints(&parts)
}

pub fn bracket_oracle(seed: u64) -> CriterionReport {
    timed(7, "transfer bracket equals the state sum", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut crossings = 0;
        for _ in 0..50 {
            let a = random_positive_form(&mut rng, 12);
            let d = TangleDiagram::conway(&a);
            crossings += d.crossing_count();
            let transfer = bracket_pair(&a);
            if transfer.numerator_closure() != oracle::state_sum_bracket(&d.numerator_closure()) {
                return (false, format!("closure bracket differs for {a}"));
            }
            if transfer != oracle::state_sum_pair(&d) {
                return (false, format!("tangle bracket differs for {a}"));
            }
        }
        (true, format!("50 diagrams, {crossings} crossings in total"))
    })
}

pub fn congruence_solvers(depth: usize) -> CriterionReport {
    timed(8, "determinant congruences and unit lifts", Duration::from_secs(10), || {
        let mut solves = 0;
        for p in (3..=25i64).step_by(2) {
            let pb = BigInt::from(p);
            for n in 1..=depth {
                for signs in sign_patterns(n) {
                    for k in 0..p {
                        let kb = BigInt::from(k);
                        let sol = match solve_det_congruence(&pb, &kb, n, &signs) {
                            Ok(s) => s,
                            Err(e) => return (false, format!("p = {p}, k = {k}: {e}")),
                        };
                        let scan = oracle::scan_residues(&pb, &kb, |s| lm1_det(n, &signs, s).expect("length"));
                        let independent = sol.sequence.if_eval().numer().clone();
                        if !scan.contains(&sol.s.mod_floor(&pb))
                            || independent.mod_floor(&pb) != kb
                            || independent != sol.det
                            || !sol.unknotting_one
                        {
                            return (false, format!("p = {p}, k = {k}, n = {n}: s = {}", sol.s));
                        }
                        solves += 1;
                    }
                }
            }
        }
        let mut lifts = 0;
        for p in 1..=200u64 {
            for q in (1..=p).filter(|q| p % q == 0) {
                for u in (0..q).filter(|u| u.gcd(&q) == 1) {
                    let w = match unit_lift(&p.into(), &q.into(), &u.into()) {
                        Ok(w) => w,
                        Err(e) => return (false, format!("unit_lift({p}, {q}, {u}): {e}")),
                    };
                    let w = u64::try_from(&w).unwrap_or(u64::MAX);
                    if w % q != u % q || w.gcd(&p) != 1 || !oracle::scan_unit_lifts(p, q, u).contains(&w) {
                        return (false, format!("unit_lift({p}, {q}, {u}) = {w}"));
                    }
                    lifts += 1;
                }
            }
        }
        (true, format!("{solves} congruences (depth ≤ {depth}), {lifts} unit lifts for p ≤ 200"))
    })
}

pub fn homology_realization(depth: usize) -> CriterionReport {
    timed(9, "ℤ_p-homology realization", Duration::from_secs(10), || {
        let mut count = 0;
        for p in [9i64, 15, 21] {
            let divisors: Vec<i64> = (2..=p).filter(|d| p % d == 0).collect();
            for mask in 0..1usize << divisors.len() {
                let h: Vec<BigInt> =
                    divisors.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &d)| d.into()).collect();
                match realize_module(&p.into(), &h, depth) {
                    Ok(r) if r.verified() && r.parts.iter().all(|s| s.unknotting_one) => count += 1,
                    Ok(r) => return (false, format!("p = {p}, H = {}: got {}", r.target, r.achieved)),
                    Err(e) => return (false, format!("p = {p}, H = {h:?}: {e}")),
                }
            }
        }
        (true, format!("{count} target modules for p ∈ {{9, 15, 21}}"))
    })
}

pub const CENSUS_MAX_K: u64 = 1 << 16;

pub fn census_check() -> CriterionReport {
    timed(10, "census recursion, growth bound and enumeration", Duration::from_secs(60), || {
        let table = census::count_dk(CENSUS_MAX_K).expect("positive");
        if let Some(k) = table.first_inconsistency() {
            return (false, format!("recursion fails at k = {k}"));
        }
        let head: Vec<BigInt> = (1..=4).map(|k| table.d(k).clone()).collect();
        if head != [2, 4, 4, 12].map(BigInt::from) {
            return (false, format!("d_1..d_4 = {head:?}"));
        }
        let rho: Rho = "0.3".parse().expect("valid");
        let report = census::asymptotic_check(&table, CENSUS_MAX_K, &rho).expect("in range");
        let k0_ok = report.k0.is_some_and(|k0| k0 <= 1 << 10);
        let rows = census::compare_enumeration(&table, 24).expect("k ≤ 64");
        let differing: Vec<u64> = rows.iter().filter(|r| !r.agrees()).map(|r| r.k).collect();
        let documented = differing.contains(&1) && differing.contains(&2);
        let detail = format!(
            "d_k for k ≤ {CENSUS_MAX_K}; ρ = 0.3 holds from k_0 = {:?} ({} failures); \
             enumeration differs from the recursion at k = {differing:?}",
            report.k0, report.failures
        );
        (k0_ok && documented, detail)
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    vec![
        wn_example(),
        structure(cfg.seed),
        closed_form(),
        family_triviality(),
        unknotting(),
        signature_parity(),
        bracket_oracle(cfg.seed),
        congruence_solvers(cfg.depth),
        homology_realization(cfg.depth),
        census_check(),
    ]
}
