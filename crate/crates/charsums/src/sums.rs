//! Short character sums, their `2r`-th moments, and complete sums of the
//! rational-function combinations attached to a tuple.
//!
//! Values flow out of the exact character layer into `f64` complex numbers
//! here; every assertion downstream carries a relative tolerance of `1e-8`,
//! far above the roundoff of these accumulations at desk scale.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::fmt::format_sig;
use crate::polynomials::{build_f_pair, horner_mod};

/// Fixed sliding-window chunk length. Each chunk recomputes its first inner
/// sum and slides within itself, so results do not depend on how chunks are
/// distributed over worker threads.
const MOMENT_CHUNK: u64 = 512;

/// Desk-scale guards mirrored from the operation contracts.
const MAX_V: u64 = 1000;
const MAX_R: u32 = 5;

/// One computed moment, ready for CSV emission.
#[derive(Debug, Clone)]
pub struct MomentRecord {
    pub q: u64,
    pub char_label: String,
    pub v: u64,
    pub r: u32,
    pub value: f64,
}

impl MomentRecord {
    pub const CSV_HEADER: &'static str = "q,char_label,V,r,value";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.q,
            self.char_label,
            self.v,
            self.r,
            format_sig(self.value)
        )
    }
}

/// `sum_{M < n <= M+N} chi(n)`.
pub fn short_sum(chi: &DirichletCharacter, m: i64, n: u64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for x in (m + 1)..=(m + n as i64) {
        acc += chi.eval(x).to_complex();
    }
    acc
}

/// `sum_{lambda=1}^{q} |sum_{1 <= v <= V} chi(lambda + v)|^{2r}`, by a
/// sliding window inside fixed chunks; deterministic under any parallelism.
pub fn moment(chi: &DirichletCharacter, v: u64, r: u32) -> Result<MomentRecord> {
    if v == 0 || v > MAX_V {
        return Err(Error::Precondition(format!("V={v} outside 1..={MAX_V}")));
    }
    if r == 0 || r > MAX_R {
        return Err(Error::Precondition(format!("r={r} outside 1..={MAX_R}")));
    }
    let q = chi.modulus();
    let table = chi.complex_table();
    let at = |n: u64| table[(n % q) as usize];

    let chunk_starts: Vec<u64> = (1..=q).step_by(MOMENT_CHUNK as usize).collect();
    let partials: Vec<f64> = chunk_starts
        .par_iter()
        .map(|&start| {
            let end = (start + MOMENT_CHUNK - 1).min(q);
            let mut inner = Complex64::new(0.0, 0.0);
            for n in start + 1..=start + v {
                inner += at(n);
            }
            let mut acc = inner.norm_sqr().powi(r as i32);
            for lam in start + 1..=end {
                inner += at(lam + v) - at(lam);
                acc += inner.norm_sqr().powi(r as i32);
            }
            acc
        })
        .collect();
    let value = partials.iter().sum();
    Ok(MomentRecord { q, char_label: chi.label(), v, r, value })
}

/// Naive recomputation of the moment, one fresh inner sum per `lambda`.
/// Oracle for the windowed path.
pub fn moment_naive(chi: &DirichletCharacter, v: u64, r: u32) -> f64 {
    let q = chi.modulus();
    let table = chi.complex_table();
    let mut acc = 0.0;
    for lam in 1..=q {
        let mut inner = Complex64::new(0.0, 0.0);
        for n in lam + 1..=lam + v {
            inner += table[(n % q) as usize];
        }
        acc += inner.norm_sqr().powi(r as i32);
    }
    acc
}

/// `sum_{lambda=1}^{q} chi(f1(lambda)) conj(chi(f2(lambda)))` where the
/// monic halves `f1, f2` come from the tuple via `build_f_pair`.
pub fn complete_sum(chi: &DirichletCharacter, v: &[i64]) -> Result<Complex64> {
    let q = chi.modulus();
    let (f1, f2) = build_f_pair(v)?;
    let c1 = f1.coeffs_mod(q);
    let c2 = f2.coeffs_mod(q);
    let table = chi.complex_table();
    let mut acc = Complex64::new(0.0, 0.0);
    for lam in 1..=q {
        let a = table[horner_mod(&c1, lam % q, q) as usize];
        let b = table[horner_mod(&c2, lam % q, q) as usize];
        acc += a * b.conj();
    }
    Ok(acc)
}

/// Both sides of the expansion step: the moment on the left, the sum of
/// `|complete_sum|` over all tuples `1 <= v_i <= V` on the right. The left
/// side never exceeds the right.
pub fn moment_expansion_gap(chi: &DirichletCharacter, v: u64, r: u32) -> Result<(f64, f64)> {
    let q = chi.modulus();
    let half = v.checked_pow(r).ok_or(Error::BudgetExceeded {
        count: u128::MAX,
        budget: GAP_BUDGET,
    })?;
    let tuples = (half as u128) * (half as u128);
    if tuples.saturating_mul(q as u128) > GAP_BUDGET {
        return Err(Error::BudgetExceeded { count: tuples * q as u128, budget: GAP_BUDGET });
    }
    let lhs = moment(chi, v, r)?.value;

    // One residue-value vector per half tuple; the right side is then a sum
    // of inner products over ordered pairs of halves.
    let table = chi.complex_table();
    let halves: Vec<Vec<Complex64>> = half_products(&table, q, v, r);
    let pair_sums: Vec<f64> = (0..halves.len())
        .into_par_iter()
        .map(|i| {
            let a = &halves[i];
            let mut acc = 0.0;
            for b in &halves {
                let mut s = Complex64::new(0.0, 0.0);
                for (x, y) in a.iter().zip(b) {
                    s += x * y.conj();
                }
                acc += s.norm();
            }
            acc
        })
        .collect();
    let rhs = pair_sums.iter().sum();
    Ok((lhs, rhs))
}

const GAP_BUDGET: u128 = 50_000_000;

/// `prod_i chi(lambda + u_i)` for every half tuple `u` in `[1, V]^r`,
/// evaluated over `lambda = 1..=q`.
fn half_products(table: &[Complex64], q: u64, v: u64, r: u32) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); q as usize]];
    for _ in 0..r {
        let mut next = Vec::with_capacity(out.len() * v as usize);
        for prev in &out {
            for u in 1..=v {
                let row: Vec<Complex64> = (1..=q)
                    .map(|lam| prev[(lam - 1) as usize] * table[((lam + u) % q) as usize])
                    .collect();
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Largest `|short_sum(M, N)| / (sqrt(q) log q)` over `0 <= M < q`,
/// `1 <= N <= q`, for a primitive character.
pub fn pv_ratio(chi: &DirichletCharacter) -> Result<f64> {
    let q = chi.modulus();
    if q < 3 {
        return Err(Error::ModulusTooSmall(q));
    }
    if q > 1000 {
        // The full (M, N) double loop is quadratic in q.
        return Err(Error::Precondition(format!("pv_ratio caps q at 1000, got {q}")));
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive(q));
    }
    let table = chi.complex_table();
    // Prefix sums over two periods cover every window with M < q, N <= q.
    let mut prefix = Vec::with_capacity(2 * q as usize + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    for n in 1..=2 * q {
        prefix.push(prefix[(n - 1) as usize] + table[(n % q) as usize]);
    }
    let rows: Vec<f64> = (0..q)
        .into_par_iter()
        .map(|m| {
            let base = prefix[m as usize];
            let mut best = 0.0f64;
            for n in 1..=q {
                let d = (prefix[(m + n) as usize] - base).norm_sqr();
                if d > best {
                    best = d;
                }
            }
            best
        })
        .collect();
    let best = rows.iter().cloned().fold(0.0f64, f64::max).sqrt();
    Ok(best / ((q as f64).sqrt() * (q as f64).ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::euler_phi;
    use crate::characters::CharacterGroup;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-8;

    fn rel_close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn short_sum_examples() {
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.character_from_label("5:1").unwrap();
        // chi(1) + chi(2) = 1 + i
        let s = short_sum(&chi, 0, 2);
        assert!((s - Complex64::new(1.0, 1.0)).norm() < TOL);
        assert_eq!(short_sum(&chi, 3, 0).norm(), 0.0);
        for q in [7u64, 12, 45] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters(false) {
                if chi.is_trivial() {
                    continue;
                }
                assert!(short_sum(&chi, 0, q).norm() < TOL, "q={q}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.character_from_label("5:1").unwrap();
        let m = moment(&chi, 2, 1).unwrap();
        assert!(rel_close(m.value, 6.0));
        // V = 1 gives phi(q) for every character.
        for q in [5u64, 8, 45] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters(false) {
                let m = moment(&chi, 1, 2).unwrap();
                assert!(rel_close(m.value, euler_phi(q).unwrap() as f64), "q={q}");
            }
        }
        // Full-period window of the trivial character mod a prime.
        for p in [5u64, 7, 11] {
            let g = CharacterGroup::new(p).unwrap();
            for r in 1..=2u32 {
                let m = moment(&g.trivial(), p, r).unwrap();
                let expect = p as f64 * ((p - 1) as f64).powi(2 * r as i32);
                assert!(rel_close(m.value, expect), "p={p} r={r}");
            }
        }
    }

    #[test]
    fn moment_window_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let q = rng.gen_range(2u64..=600);
            let g = CharacterGroup::new(q).unwrap();
            let all = g.characters(false);
            let chi = &all[rng.gen_range(0..all.len())];
            let v = rng.gen_range(1u64..=30);
            let r = rng.gen_range(1u32..=3);
            let windowed = moment(chi, v, r).unwrap().value;
            let naive = moment_naive(chi, v, r);
            assert!(rel_close(windowed, naive), "q={q} v={v} r={r}");
        }
    }

    #[test]
    fn moment_conjugation_invariant() {
        for q in 1..=200u64 {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters(false) {
                let a = moment(&chi, 3, 2).unwrap().value;
                let b = moment(&chi.conjugate(), 3, 2).unwrap().value;
                assert!(rel_close(a, b), "q={q} chi={}", chi.label());
            }
        }
    }

    #[test]
    fn complete_sum_examples() {
        // Equal halves count the units in a shifted window.
        for q in [7u64, 12, 45] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters(false) {
                let s = complete_sum(&chi, &[3, 3]).unwrap();
                let phi = euler_phi(q).unwrap() as f64;
                assert!((s - Complex64::new(phi, 0.0)).norm() < TOL, "q={q}");
            }
        }
        // Weil envelope at a prime, r = 1, distinct shifts.
        for p in [11u64, 13, 101] {
            let g = CharacterGroup::new(p).unwrap();
            for chi in g.characters(true) {
                let s = complete_sum(&chi, &[0, 1]).unwrap();
                assert!(s.norm() <= 2.0 * (p as f64).sqrt() + TOL, "p={p}");
            }
        }
        // Trivial character counts lambdas with both values coprime to q.
        let g = CharacterGroup::new(12).unwrap();
        let chi = g.trivial();
        let s = complete_sum(&chi, &[0, 1, 2, 5]).unwrap();
        let direct = (1..=12i64)
            .filter(|&lam| {
                let f1 = (lam) * (lam - 1);
                let f2 = (lam - 2) * (lam - 5);
                crate::arithmetic::gcd_i64(f1, 12) == 1 && crate::arithmetic::gcd_i64(f2, 12) == 1
            })
            .count() as f64;
        assert!((s - Complex64::new(direct, 0.0)).norm() < TOL);
    }

    #[test]
    fn complete_sum_half_permutation_invariance() {
        let g = CharacterGroup::new(45).unwrap();
        let chi = &g.characters(true)[1];
        let base = complete_sum(chi, &[1, 2, 3, 4, 5, 6]).unwrap();
        for v in [
            [2i64, 3, 1, 4, 5, 6],
            [3, 1, 2, 4, 5, 6],
            [1, 2, 3, 6, 4, 5],
            [2, 1, 3, 5, 6, 4],
        ] {
            let s = complete_sum(chi, &v).unwrap();
            assert!((s - base).norm() < TOL, "v={v:?}");
        }
    }

    #[test]
    fn expansion_gap_examples() {
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.character_from_label("5:1").unwrap();
        let (lhs, rhs) = moment_expansion_gap(&chi, 2, 1).unwrap();
        assert!(rel_close(lhs, 6.0));
        assert!(lhs <= rhs + TOL);
        // V = 1: single tuple, equality.
        for q in [5u64, 9, 12] {
            let g = CharacterGroup::new(q).unwrap();
            for chi in g.characters(false) {
                let (lhs, rhs) = moment_expansion_gap(&chi, 1, 2).unwrap();
                assert!(rel_close(lhs, rhs), "q={q} chi={}", chi.label());
                assert!(rel_close(lhs, euler_phi(q).unwrap() as f64));
            }
        }
    }

    #[test]
    fn moment_preconditions() {
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.trivial();
        assert!(moment(&chi, 0, 1).is_err());
        assert!(moment(&chi, 1, 0).is_err());
        assert!(moment(&chi, 1001, 1).is_err());
        assert!(moment(&chi, 1, 6).is_err());
        assert!(moment(&chi, 1000, 5).is_ok());
    }

    #[test]
    fn moment_record_csv() {
        let g = CharacterGroup::new(5).unwrap();
        let chi = g.character_from_label("5:1").unwrap();
        let rec = moment(&chi, 2, 1).unwrap();
        assert_eq!(MomentRecord::CSV_HEADER, "q,char_label,V,r,value");
        assert_eq!(rec.csv_line(), "5,5:1,2,1,6.0");
    }

    #[test]
    fn pv_ratio_examples() {
        let g = CharacterGroup::new(3).unwrap();
        let chi = &g.characters(true)[0];
        let expected = 1.0 / (3.0f64.sqrt() * 3.0f64.ln());
        let got = pv_ratio(chi).unwrap();
        assert!(rel_close(got, expected));
        let g4 = CharacterGroup::new(4).unwrap();
        for chi in g4.characters(true) {
            assert!(pv_ratio(&chi).unwrap() <= 1.0);
        }
        let g12 = CharacterGroup::new(12).unwrap();
        assert!(pv_ratio(&g12.trivial()).is_err());
    }
}
