//! Exact counters for congruence-solution quantities: the Kloosterman
//! fraction counter and its distinct/repeated split, the Wronskian root
//! count, the multiplicative congruence counter, boxed variants, and the
//! archimedean count over a fixed complex point.
//!
//! The workhorse is a meet-in-the-middle enumeration: residues of r-fold
//! half sums are aggregated into multiplicity tables and matched, which
//! turns `O(V^{2r})` work into `O(V^r)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arithmetic::{gcd, gcd_i64, mod_inverse};
use crate::error::{Error, Result};
use crate::polynomials::{build_pv_kloosterman, wronskian_combo, IntPolynomial};

/// Half-tuple enumeration budget for the meet-in-the-middle counters.
pub const HALF_BUDGET: u128 = 100_000_000;
/// Full-tuple budget for the direct enumerators.
pub const DIRECT_BUDGET: u128 = 100_000_000;

/// One coordinate range: the values `lo, lo+step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
    pub step: u64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi, step: 1 }
    }

    pub fn strided(lo: i64, hi: i64, step: u64) -> Self {
        assert!(step >= 1);
        Interval { lo, hi, step }
    }

    pub fn len(&self) -> u64 {
        if self.hi < self.lo {
            0
        } else {
            ((self.hi as i128 - self.lo as i128) as u128 / self.step as u128 + 1)
                .try_into()
                .expect("interval length fits u64")
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len()).map(move |i| self.lo + (i * self.step) as i64)
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= self.lo && x <= self.hi && ((x - self.lo) as u64).is_multiple_of(self.step)
    }
}

/// The variable domain of a congruence counter: one interval per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleBox {
    pub intervals: Vec<Interval>,
}

impl TupleBox {
    pub fn new(intervals: Vec<Interval>) -> Self {
        TupleBox { intervals }
    }

    /// The symmetric box `|v_i| <= V` in `2r` coordinates.
    pub fn symmetric(r: u32, v: u64) -> Self {
        TupleBox {
            intervals: vec![Interval::new(-(v as i64), v as i64); 2 * r as usize],
        }
    }

    /// The shifted window `1 <= v_i <= V` in `2r` coordinates.
    pub fn positive(r: u32, v: u64) -> Self {
        TupleBox { intervals: vec![Interval::new(1, v as i64); 2 * r as usize] }
    }

    pub fn volume(&self) -> u128 {
        self.intervals.iter().map(|iv| iv.len() as u128).product()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| {
                if iv.step == 1 {
                    format!("{}..{}", iv.lo, iv.hi)
                } else {
                    format!("{}..{}/{}", iv.lo, iv.hi, iv.step)
                }
            })
            .collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Exact count plus the number of tuples skipped for non-invertibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    pub excluded: u64,
}

impl CountResult {
    pub fn csv_line(&self, kind: &str, r: u32, q: u64, lambda: i64, descriptor: &str) -> String {
        format!(
            "{kind},{r},{q},{lambda},{descriptor},{},{}",
            self.count, self.excluded
        )
    }
}

pub const COUNT_CSV_HEADER: &str = "kind,r,q,lambda,box_descriptor,count,excluded";

/// Inverses of `lambda + x` mod `q` for each coordinate value, `None` where
/// not invertible. For `q = 1` everything is a unit with inverse 0.
fn coordinate_inverses(iv: &Interval, lambda: i64, q: u64) -> Vec<Option<u64>> {
    iv.values()
        .map(|x| {
            let y = (lambda as i128 + x as i128).rem_euclid(q as i128) as u64;
            if q == 1 {
                Some(0)
            } else {
                mod_inverse(y, q).ok()
            }
        })
        .collect()
}

/// Multiplicity table of `sum_i inv(lambda + v_i) mod q` over all half
/// tuples with every coordinate invertible, plus the number of valid halves.
fn half_sum_table(coords: &[Vec<Option<u64>>], q: u64) -> (HashMap<u64, u64>, u64) {
    fn walk(
        coords: &[Vec<Option<u64>>],
        q: u64,
        acc: u64,
        table: &mut HashMap<u64, u64>,
        valid: &mut u64,
    ) {
        match coords.split_first() {
            None => {
                *table.entry(acc).or_insert(0) += 1;
                *valid += 1;
            }
            Some((head, rest)) => {
                for inv in head.iter().flatten() {
                    walk(rest, q, (acc + inv) % q, table, valid);
                }
            }
        }
    }
    let mut table = HashMap::new();
    let mut valid = 0u64;
    walk(coords, q, 0, &mut table, &mut valid);
    (table, valid)
}

/// Counts tuples in the box with every `lambda + v_i` invertible mod `q`
/// whose two r-fold sums of inverses agree mod `q`. Meet in the middle:
/// `O(V^r)` time and space.
pub fn count_k(r: u32, q: u64, lambda: i64, bx: &TupleBox) -> Result<CountResult> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = bx.intervals.len();
    if n != 2 * r as usize {
        return Err(Error::Precondition(format!(
            "box has {n} coordinates, expected {}",
            2 * r
        )));
    }
    let (left, right) = bx.intervals.split_at(r as usize);
    let half_vol = |ivs: &[Interval]| -> u128 { ivs.iter().map(|iv| iv.len() as u128).product() };
    let budget = half_vol(left).max(half_vol(right));
    if budget > HALF_BUDGET {
        return Err(Error::BudgetExceeded { count: budget, budget: HALF_BUDGET });
    }

    let lcoords: Vec<Vec<Option<u64>>> =
        left.iter().map(|iv| coordinate_inverses(iv, lambda, q)).collect();
    let rcoords: Vec<Vec<Option<u64>>> =
        right.iter().map(|iv| coordinate_inverses(iv, lambda, q)).collect();
    let (ltable, lvalid) = half_sum_table(&lcoords, q);
    let (rtable, rvalid) = half_sum_table(&rcoords, q);

    let mut count = 0u64;
    for (s, lm) in &ltable {
        if let Some(rm) = rtable.get(s) {
            count += lm * rm;
        }
    }
    let volume = bx.volume();
    let valid = lvalid as u128 * rvalid as u128;
    let excluded = (volume - valid) as u64;
    Ok(CountResult { count, excluded })
}

/// Tuple filters for the direct enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleFilter {
    All,
    /// All `2r` entries pairwise distinct.
    Distinct,
    /// At least one repeated entry.
    Repeated,
}

fn tuple_passes(filter: TupleFilter, tuple: &[i64]) -> bool {
    match filter {
        TupleFilter::All => true,
        TupleFilter::Distinct | TupleFilter::Repeated => {
            let mut sorted = tuple.to_vec();
            sorted.sort_unstable();
            let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
            if filter == TupleFilter::Distinct {
                distinct
            } else {
                !distinct
            }
        }
    }
}

/// Direct enumeration of the Kloosterman-fraction congruence over the box,
/// with an optional tuple filter. Independent oracle for `count_k` and the
/// engine behind the distinct/repeated split.
pub fn count_k_direct(
    r: u32,
    q: u64,
    lambda: i64,
    bx: &TupleBox,
    filter: TupleFilter,
) -> Result<CountResult> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = bx.intervals.len();
    if n != 2 * r as usize {
        return Err(Error::Precondition(format!(
            "box has {n} coordinates, expected {}",
            2 * r
        )));
    }
    if bx.volume() > DIRECT_BUDGET {
        return Err(Error::BudgetExceeded { count: bx.volume(), budget: DIRECT_BUDGET });
    }
    let coords: Vec<Vec<(i64, Option<u64>)>> = bx
        .intervals
        .iter()
        .map(|iv| iv.values().zip(coordinate_inverses(iv, lambda, q)).collect())
        .collect();
    struct Walker {
        coords: Vec<Vec<(i64, Option<u64>)>>,
        r: usize,
        q: u64,
        filter: TupleFilter,
        tuple: Vec<i64>,
        invs: Vec<u64>,
        count: u64,
        excluded: u64,
    }
    impl Walker {
        fn walk(&mut self, pos: usize, any_noninvertible: bool) {
            if pos == self.coords.len() {
                if !tuple_passes(self.filter, &self.tuple) {
                    return;
                }
                if any_noninvertible {
                    self.excluded += 1;
                    return;
                }
                let lhs: u64 = self.invs[..self.r].iter().fold(0, |a, &x| (a + x) % self.q);
                let rhs: u64 = self.invs[self.r..].iter().fold(0, |a, &x| (a + x) % self.q);
                if lhs == rhs {
                    self.count += 1;
                }
                return;
            }
            for i in 0..self.coords[pos].len() {
                let (x, inv) = self.coords[pos][i];
                self.tuple[pos] = x;
                match inv {
                    Some(val) => {
                        self.invs[pos] = val;
                        self.walk(pos + 1, any_noninvertible);
                    }
                    None => {
                        self.invs[pos] = 0;
                        self.walk(pos + 1, true);
                    }
                }
            }
        }
    }
    let mut walker = Walker {
        coords,
        r: r as usize,
        q,
        filter,
        tuple: vec![0i64; n],
        invs: vec![0u64; n],
        count: 0,
        excluded: 0,
    };
    walker.walk(0, false);
    Ok(CountResult { count: walker.count, excluded: walker.excluded })
}

/// The distinct-entry restriction of the counter (direct enumeration only).
pub fn count_k_distinct(r: u32, q: u64, lambda: i64, v: u64) -> Result<CountResult> {
    count_k_direct(r, q, lambda, &TupleBox::symmetric(r, v), TupleFilter::Distinct)
}

/// Tuples with a repeated entry; together with the distinct count this
/// recovers the full counter.
pub fn count_k_repeated(r: u32, q: u64, lambda: i64, v: u64) -> Result<CountResult> {
    count_k_direct(r, q, lambda, &TupleBox::symmetric(r, v), TupleFilter::Repeated)
}

/// Number of `lambda` in `[0, q)` with the Wronskian combination of the
/// tuple vanishing mod `q` and both half polynomials coprime to `q`.
pub fn count_nv(q: u64, v: &[i64]) -> Result<u64> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let w = wronskian_combo(v)?;
    let (f1, f2) = crate::polynomials::build_f_pair(v)?;
    let wm = w.coeffs_mod(q);
    let c1 = f1.coeffs_mod(q);
    let c2 = f2.coeffs_mod(q);
    let mut count = 0u64;
    for lam in 0..q {
        if crate::polynomials::horner_mod(&wm, lam, q) != 0 {
            continue;
        }
        let a = crate::polynomials::horner_mod(&c1, lam, q);
        let b = crate::polynomials::horner_mod(&c2, lam, q);
        if gcd(a, q) == 1 && gcd(b, q) == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// `prod_{i != j} (v_j - v_i)`, `j` one-based; zero exactly when `v_j`
/// collides with another entry.
pub fn compute_aj(v: &[i64], j: usize) -> Result<i128> {
    if j == 0 || j > v.len() {
        return Err(Error::IndexOutOfRange(j, v.len()));
    }
    let vj = v[j - 1] as i128;
    let mut prod = 1i128;
    for (i, &vi) in v.iter().enumerate() {
        if i != j - 1 {
            prod *= vj - vi as i128;
        }
    }
    Ok(prod)
}

/// Counts tuples `1 <= v_i <= V` with the two half products of `v_i +
/// lambda` congruent mod `q`. Same meet-in-the-middle structure with
/// products instead of fraction sums; no invertibility exclusion.
pub fn count_mult_cong(r: u32, q: u64, lambda: i64, v: u64) -> Result<CountResult> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if v == 0 {
        return Ok(CountResult { count: 0, excluded: 0 });
    }
    let half = (v as u128).pow(r);
    if half > HALF_BUDGET {
        return Err(Error::BudgetExceeded { count: half, budget: HALF_BUDGET });
    }
    let residues: Vec<u64> = (1..=v as i64)
        .map(|x| (lambda as i128 + x as i128).rem_euclid(q as i128) as u64)
        .collect();
    let mut table: HashMap<u64, u64> = HashMap::new();
    fn walk(residues: &[u64], depth: u32, q: u64, acc: u64, table: &mut HashMap<u64, u64>) {
        if depth == 0 {
            *table.entry(acc).or_insert(0) += 1;
            return;
        }
        for &x in residues {
            walk(residues, depth - 1, q, (acc as u128 * x as u128 % q as u128) as u64, table);
        }
    }
    walk(&residues, r, q, 1 % q, &mut table);
    let count = table.values().map(|m| m * m).sum();
    Ok(CountResult { count, excluded: 0 })
}

/// Per-box counts over a partition of the symmetric cube; errors when the
/// boxes overlap, leave gaps, or carry strides.
pub fn count_k_boxed(
    r: u32,
    q: u64,
    lambda: i64,
    boxes: &[TupleBox],
) -> Result<Vec<CountResult>> {
    if boxes.is_empty() {
        return Err(Error::BadPartition("no boxes".into()));
    }
    let dims = 2 * r as usize;
    for bx in boxes {
        if bx.intervals.len() != dims {
            return Err(Error::BadPartition(format!(
                "box {} has {} coordinates, expected {dims}",
                bx.describe(),
                bx.intervals.len()
            )));
        }
        if bx.intervals.iter().any(|iv| iv.step != 1) {
            return Err(Error::BadPartition("strided boxes cannot be validated".into()));
        }
    }
    // The union must be exactly [-V, V]^{2r}: bounding box symmetric and
    // equal across coordinates, volumes adding up, boxes pairwise disjoint.
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for bx in boxes {
        for iv in &bx.intervals {
            if !iv.is_empty() {
                lo = lo.min(iv.lo);
                hi = hi.max(iv.hi);
            }
        }
    }
    if lo > hi || lo != -hi {
        return Err(Error::BadPartition(format!(
            "bounding range {lo}..{hi} is not symmetric"
        )));
    }
    let v = hi as u64;
    let full = TupleBox::symmetric(r, v);
    let total: u128 = boxes.iter().map(|b| b.volume()).sum();
    if total != full.volume() {
        return Err(Error::BadPartition(format!(
            "volumes sum to {total}, cube has {}",
            full.volume()
        )));
    }
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            let overlap = a
                .intervals
                .iter()
                .zip(&b.intervals)
                .all(|(x, y)| x.lo.max(y.lo) <= x.hi.min(y.hi));
            if overlap {
                return Err(Error::BadPartition(format!(
                    "{} overlaps {}",
                    a.describe(),
                    b.describe()
                )));
            }
        }
    }
    boxes.iter().map(|bx| count_k(r, q, lambda, bx)).collect()
}

/// Product over coordinate pairs of the number of admissible diagonal
/// values: a certified lower bound for `count_k` via tuples whose second
/// half repeats the first.
pub fn diagonal_lower_bound(r: u32, q: u64, lambda: i64, bx: &TupleBox) -> Result<u64> {
    let dims = 2 * r as usize;
    if bx.intervals.len() != dims {
        return Err(Error::Precondition(format!(
            "box has {} coordinates, expected {dims}",
            bx.intervals.len()
        )));
    }
    let mut prod = 1u64;
    for i in 0..r as usize {
        let a = &bx.intervals[i];
        let b = &bx.intervals[i + r as usize];
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let n = small
            .values()
            .filter(|&x| {
                big.contains(x)
                    && (q == 1
                        || gcd_i64((lambda as i128 + x as i128).rem_euclid(q as i128) as i64, q as i64)
                            == 1)
            })
            .count() as u64;
        prod = prod.saturating_mul(n);
    }
    Ok(prod)
}

/// The point at which the archimedean count is taken: a rational number or
/// an algebraic number given by an irreducible integer polynomial.
#[derive(Debug, Clone)]
pub enum Sigma {
    Rational(BigRational),
    /// Minimal polynomial; must pass the irreducibility screen.
    Algebraic(IntPolynomial),
}

impl Sigma {
    pub fn integer(n: i64) -> Self {
        Sigma::Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

const J_BUDGET: u128 = 10_000_000;

/// Counts tuples `|v_i| <= V`, `v_i != -sigma`, whose two half sums of
/// `1/(sigma + v_i)` agree exactly. Equality is decided through the
/// cleared-denominator polynomial: exact evaluation for rational points,
/// divisibility by the minimal polynomial for algebraic ones.
pub fn count_j(r: u32, v: u64, sigma: &Sigma) -> Result<u64> {
    let dims = 2 * r as usize;
    let volume = (2 * v as u128 + 1).pow(dims as u32);
    if volume > J_BUDGET {
        return Err(Error::BudgetExceeded { count: volume, budget: J_BUDGET });
    }
    let forbidden: Option<i64> = match sigma {
        Sigma::Rational(x) => {
            let neg = -x;
            if neg.is_integer() {
                use num_traits::ToPrimitive;
                neg.to_integer().to_i64()
            } else {
                None
            }
        }
        Sigma::Algebraic(m) => {
            m.irreducibility_screen()?;
            if m.degree() == Some(1) {
                // Degree one means a rational point; reroute so integer
                // poles are excluded correctly.
                let root = BigRational::new(-m.coeff(0), m.coeff(1));
                return count_j(r, v, &Sigma::Rational(root));
            }
            None
        }
    };
    let values: Vec<i64> = (-(v as i64)..=v as i64)
        .filter(|&x| Some(x) != forbidden)
        .collect();
    let mut tuple = vec![0i64; dims];
    let mut count = 0u64;
    fn walk(
        values: &[i64],
        pos: usize,
        tuple: &mut [i64],
        sigma: &Sigma,
        count: &mut u64,
    ) -> Result<()> {
        if pos == tuple.len() {
            let p = build_pv_kloosterman(tuple)?;
            let holds = match sigma {
                Sigma::Rational(x) => p.eval_rational(x).is_zero(),
                Sigma::Algebraic(m) => {
                    p.is_zero() || p.gcd(m).degree().is_some_and(|d| d >= 1)
                }
            };
            if holds {
                *count += 1;
            }
            return Ok(());
        }
        for &x in values {
            tuple[pos] = x;
            walk(values, pos + 1, tuple, sigma, count)?;
        }
        Ok(())
    }
    walk(&values, 0, &mut tuple, sigma, &mut count)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::build_pv_mult;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn count_k_examples() {
        // r=1, q=7, lambda=0, |v| <= 2: only the diagonal, v=0 excluded.
        let res = count_k(1, 7, 0, &TupleBox::symmetric(1, 2)).unwrap();
        assert_eq!(res.count, 4);
        assert_eq!(res.excluded, 9); // tuples touching v = 0
        // Single-point box at the origin with gcd(lambda, q) = 1.
        let point = TupleBox::new(vec![Interval::new(0, 0); 4]);
        let res = count_k(2, 9, 2, &point).unwrap();
        assert_eq!(res.count, 1);
        assert_eq!(res.excluded, 0);
        // Diagonal lower bound.
        for (r, q, lam, v) in [(1u32, 11u64, 3i64, 4u64), (2, 35, 0, 3), (2, 8, 1, 2)] {
            let bx = TupleBox::symmetric(r, v);
            let res = count_k(r, q, lam, &bx).unwrap();
            let lower = diagonal_lower_bound(r, q, lam, &bx).unwrap();
            assert!(res.count >= lower, "r={r} q={q} lam={lam} v={v}");
        }
    }

    #[test]
    fn count_k_accounting_invariant() {
        let bx = TupleBox::symmetric(2, 3);
        let res = count_k(2, 21, 4, &bx).unwrap();
        let direct = count_k_direct(2, 21, 4, &bx, TupleFilter::All).unwrap();
        assert_eq!(res, direct);
        assert!(res.count as u128 + res.excluded as u128 <= bx.volume());
    }

    #[test]
    fn mitm_matches_direct_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..60 {
            let r = rng.gen_range(1u32..=3);
            let q = rng.gen_range(1u64..=300);
            let lambda = rng.gen_range(-20i64..=20);
            let v = rng.gen_range(0u64..=4);
            let bx = TupleBox::symmetric(r, v);
            let a = count_k(r, q, lambda, &bx).unwrap();
            let b = count_k_direct(r, q, lambda, &bx, TupleFilter::All).unwrap();
            assert_eq!(a, b, "r={r} q={q} lambda={lambda} v={v}");
        }
    }

    #[test]
    fn count_k_symmetries() {
        let v = 3u64;
        for (r, q, lam) in [(1u32, 13u64, 2i64), (2, 15, 4), (2, 9, -2)] {
            let bx = TupleBox::symmetric(r, v);
            let base = count_k(r, q, lam, &bx).unwrap();
            // Swapping the halves of a symmetric box changes nothing.
            let mut swapped = bx.intervals.clone();
            swapped.rotate_left(r as usize);
            assert_eq!(base, count_k(r, q, lam, &TupleBox::new(swapped)).unwrap());
            // Negating lambda together with reflecting the box.
            assert_eq!(base, count_k(r, q, -lam, &bx).unwrap());
            // Translating lambda by q.
            assert_eq!(base, count_k(r, q, lam + q as i64, &bx).unwrap());
        }
    }

    #[test]
    fn distinct_split_examples() {
        // r = 1: the congruence forces v1 = v2 once 2V < q.
        for q in [11u64, 23] {
            for lam in [0i64, 5] {
                let d = count_k_distinct(1, q, lam, 3).unwrap();
                assert_eq!(d.count, 0, "q={q} lam={lam}");
            }
        }
        // K = K' + K'' exactly.
        for (r, q, lam, v) in [(2u32, 101u64, 0i64, 3u64), (2, 35, 2, 3), (1, 7, 0, 2)] {
            let all = count_k(r, q, lam, &TupleBox::symmetric(r, v)).unwrap();
            let kp = count_k_distinct(r, q, lam, v).unwrap();
            let kpp = count_k_repeated(r, q, lam, v).unwrap();
            assert_eq!(all.count, kp.count + kpp.count);
            assert_eq!(all.excluded, kp.excluded + kpp.excluded);
        }
        // Fewer than 2r admissible values leaves nothing distinct.
        assert_eq!(count_k_distinct(2, 101, 0, 1).unwrap().count, 0);
    }

    #[test]
    fn count_nv_examples() {
        assert_eq!(count_nv(11, &[0, 1, 2, 3]).unwrap(), 2);
        assert_eq!(count_nv(5, &[0, 1, 2, 3]).unwrap(), 0);
        // Equal halves: the Wronskian vanishes identically, so the count is
        // the number of lambdas with the half polynomial a unit.
        let v = [1i64, 4, 1, 4];
        for q in [7u64, 12, 45] {
            let direct = (0..q)
                .filter(|&lam| {
                    let f = |x: i64| (x - 1) * (x - 4);
                    gcd_i64(f(lam as i64), q as i64) == 1
                })
                .count() as u64;
            assert_eq!(count_nv(q, &v).unwrap(), direct, "q={q}");
        }
    }

    #[test]
    fn aj_examples() {
        assert_eq!(compute_aj(&[1, 2, 3, 4], 1).unwrap(), -6);
        assert_eq!(compute_aj(&[1, 2, 3, 4], 4).unwrap(), 6);
        assert_eq!(compute_aj(&[5, 2, 5, 9], 1).unwrap(), 0);
        assert!(compute_aj(&[1, 2], 3).is_err());
        assert!(compute_aj(&[1, 2], 0).is_err());
    }

    #[test]
    fn mult_cong_examples() {
        for q in [8u64, 23] {
            for lam in [0i64, 3] {
                let v = 5u64.min(q - 1);
                let res = count_mult_cong(1, q, lam, v).unwrap();
                assert_eq!(res.count, v, "q={q} lam={lam}");
            }
        }
        assert_eq!(count_mult_cong(3, 17, 2, 1).unwrap().count, 1);
        // Exhaustive oracle at r=2, q=35, lambda=0, V=5.
        let res = count_mult_cong(2, 35, 0, 5).unwrap();
        let mut direct = 0u64;
        for v1 in 1..=5i64 {
            for v2 in 1..=5i64 {
                for v3 in 1..=5i64 {
                    for v4 in 1..=5i64 {
                        if (v1 * v2).rem_euclid(35) == (v3 * v4).rem_euclid(35) {
                            direct += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(res.count, direct);
        assert_eq!(res.excluded, 0);
    }

    #[test]
    fn mult_cong_matches_pv_mult_roots() {
        // A solution tuple is exactly a root of the product difference.
        let q = 13u64;
        let lam = 4i64;
        for v1 in 1..=3i64 {
            for v2 in 1..=3 {
                for v3 in 1..=3 {
                    for v4 in 1..=3 {
                        let p = build_pv_mult(&[v1, v2, v3, v4]).unwrap();
                        let holds = p.eval_mod(lam as u64, q) == 0;
                        let direct = ((lam + v1) * (lam + v2)).rem_euclid(q as i64)
                            == ((lam + v3) * (lam + v4)).rem_euclid(q as i64);
                        assert_eq!(holds, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn boxed_counts() {
        let r = 2u32;
        let q = 101u64;
        let v = 3u64;
        let full = count_k(r, q, 0, &TupleBox::symmetric(r, v)).unwrap();
        // Split coordinate 1 into two halves.
        let mut a = TupleBox::symmetric(r, v);
        a.intervals[0] = Interval::new(-3, 0);
        let mut b = TupleBox::symmetric(r, v);
        b.intervals[0] = Interval::new(1, 3);
        let parts = count_k_boxed(r, q, 0, &[a.clone(), b.clone()]).unwrap();
        let total: u64 = parts.iter().map(|c| c.count).sum();
        assert_eq!(total, full.count);
        // Single box reproduces the plain counter.
        let single = count_k_boxed(r, q, 0, &[TupleBox::symmetric(r, v)]).unwrap();
        assert_eq!(single[0], full);
        // Overlap and gaps are rejected.
        assert!(count_k_boxed(r, q, 0, &[a.clone(), a.clone()]).is_err());
        assert!(count_k_boxed(r, q, 0, &[a]).is_err());
        // Pigeonhole: with a K-way split per coordinate, the max box count
        // is at least total / K^{2r}.
        let mut boxes = Vec::new();
        for c0 in [(-3i64, -1i64), (0, 3)] {
            for c1 in [(-3i64, -1i64), (0, 3)] {
                let mut bx = TupleBox::symmetric(r, v);
                bx.intervals[0] = Interval::new(c0.0, c0.1);
                bx.intervals[1] = Interval::new(c1.0, c1.1);
                boxes.push(bx);
            }
        }
        let parts = count_k_boxed(r, q, 0, &boxes).unwrap();
        let max = parts.iter().map(|c| c.count).max().unwrap();
        assert!(max as f64 >= full.count as f64 / 4.0_f64.powi(2));
    }

    #[test]
    fn count_j_examples() {
        assert_eq!(count_j(2, 2, &Sigma::integer(0)).unwrap(), 36);
        // r = 1 at an algebraic point: only the diagonal survives, and the
        // diagonal has 2V + 1 points.
        let m = IntPolynomial::from_i64(&[1, 0, 1]); // x^2 + 1
        assert_eq!(count_j(1, 4, &Sigma::Algebraic(m.clone())).unwrap(), 9);
        // r = 2 at a root of x^2 + 1, V = 1, against a direct loop below.
        let got = count_j(2, 1, &Sigma::Algebraic(m.clone())).unwrap();
        let mut direct = 0u64;
        for v1 in -1i64..=1 {
            for v2 in -1i64..=1 {
                for v3 in -1i64..=1 {
                    for v4 in -1i64..=1 {
                        let p = build_pv_kloosterman(&[v1, v2, v3, v4]).unwrap();
                        if p.is_zero() || p.gcd(&m).degree().is_some_and(|d| d >= 1) {
                            direct += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(got, direct);
        // Reducible minimal polynomials are rejected.
        let bad = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(count_j(1, 2, &Sigma::Algebraic(bad)).is_err());
    }

    #[test]
    fn count_j_multiplicity_square_identity() {
        // J at sigma = 0 for r = 2 is the second moment of the pair-sum
        // multiplicities.
        use std::collections::BTreeMap;
        for v in 1..=3u64 {
            let vals: Vec<i64> = (-(v as i64)..=v as i64).filter(|&x| x != 0).collect();
            let mut mult: BTreeMap<BigRational, u64> = BTreeMap::new();
            for &a in &vals {
                for &b in &vals {
                    let s = BigRational::new(BigInt::from(1), BigInt::from(a))
                        + BigRational::new(BigInt::from(1), BigInt::from(b));
                    *mult.entry(s).or_insert(0) += 1;
                }
            }
            let expect: u64 = mult.values().map(|m| m * m).sum();
            assert_eq!(count_j(2, v, &Sigma::integer(0)).unwrap(), expect, "V={v}");
        }
    }

    #[test]
    fn strided_boxes_count_like_direct_enumeration() {
        let bx = TupleBox::new(vec![
            Interval::strided(-6, 6, 2),
            Interval::strided(-6, 5, 3),
            Interval::new(-4, 4),
            Interval::strided(1, 7, 2),
        ]);
        for (q, lam) in [(35u64, 3i64), (49, 0), (11, -5)] {
            let a = count_k(2, q, lam, &bx).unwrap();
            let b = count_k_direct(2, q, lam, &bx, TupleFilter::All).unwrap();
            assert_eq!(a, b, "q={q} lam={lam}");
        }
    }

    #[test]
    fn shifted_progression_boxes_realize_the_coupled_counter() {
        // Count tuples (v1, v1 + u2*m2, v1 + u3*m3, v1 + u4*m4) with
        // 1 <= v1 <= V, |uj| <= V/mj, satisfying the fraction congruence.
        // Per fixed v1 this is a product box with strides (1, m2, m3, m4),
        // so summing a strided counter over v1 recovers the coupled count.
        let (r, q, lam, v) = (2u32, 35u64, 3i64, 6i64);
        let (m2, m3, m4) = (2i64, 3i64, 6i64);
        let mut via_boxes = 0u64;
        for v1 in 1..=v {
            let bx = TupleBox::new(vec![
                Interval::new(v1, v1),
                Interval::strided(v1 - (v / m2) * m2, v1 + (v / m2) * m2, m2 as u64),
                Interval::strided(v1 - (v / m3) * m3, v1 + (v / m3) * m3, m3 as u64),
                Interval::strided(v1 - (v / m4) * m4, v1 + (v / m4) * m4, m4 as u64),
            ]);
            via_boxes += count_k(r, q, lam, &bx).unwrap().count;
        }
        let mut direct = 0u64;
        let inv = |x: i64| -> Option<u64> {
            mod_inverse(x.rem_euclid(q as i64) as u64, q).ok()
        };
        for v1 in 1..=v {
            for u2 in -(v / m2)..=(v / m2) {
                for u3 in -(v / m3)..=(v / m3) {
                    for u4 in -(v / m4)..=(v / m4) {
                        let coords = [v1, v1 + u2 * m2, v1 + u3 * m3, v1 + u4 * m4];
                        let invs: Option<Vec<u64>> =
                            coords.iter().map(|&x| inv(lam + x)).collect();
                        if let Some(invs) = invs {
                            if (invs[0] + invs[1]) % q == (invs[2] + invs[3]) % q {
                                direct += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(via_boxes, direct);
        assert!(direct > 0);
    }

    #[test]
    fn empty_interval_is_a_count_not_an_error() {
        let mut bx = TupleBox::symmetric(2, 3);
        bx.intervals[1] = Interval::new(5, 2);
        let res = count_k(2, 11, 0, &bx).unwrap();
        assert_eq!(res, CountResult { count: 0, excluded: 0 });
        assert_eq!(bx.volume(), 0);
    }

    #[test]
    fn budget_guards() {
        let bx = TupleBox::symmetric(5, 100);
        assert!(matches!(
            count_k(5, 7, 0, &bx),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(count_j(3, 30, &Sigma::integer(0)).is_err());
    }
}
