//! Exact integer arithmetic, factorization and modulus decompositions.
//!
//! Everything in this module is deterministic and allocation-light: trial
//! division up to 10^6 followed by Miller-Rabin and Brent's variant of
//! Pollard rho covers the full 64-bit range.

use crate::error::{Error, Result};

/// Prime-exponent factorization of a positive integer.
///
/// Primes are strictly increasing and the product of `p^e` equals `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recomputes the product of all prime powers.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
    }
}

/// Decomposition `q = q1 * s * c` with `q1` squarefree, `s` a square whose
/// square root is squarefree, and `c` cubefull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QPartsBurgess {
    pub q1: u64,
    pub s: u64,
    pub c: u64,
}

/// Five-way split `q = q1 * q2^2 * q3^2 * q4^2 * q5` keyed by the exponent
/// pattern of each prime: exponent 1 feeds `q1`, exponent 2 feeds `q2`, even
/// exponent `2a` (a >= 2) contributes `p^a` to `q3`, odd exponent `2b+1`
/// (b >= 1) contributes `p^b` to `q4` and `p` to `q5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QPartsCRT {
    pub q1: u64,
    pub q2: u64,
    pub q3: u64,
    pub q4: u64,
    pub q5: u64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of `a` mod `q`, or an error when `gcd(a, q) != 1`.
pub fn mod_inverse(a: u64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if q == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible(a % q, q));
    }
    Ok(t0.rem_euclid(q as i128) as u64)
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // These twelve bases decide primality for every n < 3.3 * 10^24.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle detection with a fixed sequence of additive constants,
    // so the factor found for a given n never changes between runs.
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut ys) = (2u64, 2u64);
        let mut y = 2u64;
        let mut d = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && d == 1 {
                ys = y;
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                d = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if d == n {
            // Backtrack one step at a time.
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd(x.abs_diff(ys), n);
            }
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho exhausted its constant pool on {n}");
}

/// Factors `n` into strictly increasing prime powers.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, factors: &mut Vec<(u64, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += e;
                return;
            }
        }
        factors.push((p, e));
    };
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            push(d, e, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        // What's left has no prime factor below 10^6: split recursively.
        let mut stack = vec![rest];
        let mut big: Vec<u64> = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                big.push(m);
            } else if let Some(r) = exact_power_root(m) {
                stack.push(r.0);
                for _ in 1..r.1 {
                    stack.push(r.0);
                }
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
        big.sort_unstable();
        for p in big {
            push(p, 1, &mut factors);
        }
    }
    factors.sort_unstable();
    // Merge any duplicates introduced by the ordering pass.
    let mut merged: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(Factorization { n, factors: merged })
}

/// Returns `(b, k)` with `b^k = m`, `k >= 2`, when `m` is a perfect power.
fn exact_power_root(m: u64) -> Option<(u64, u32)> {
    for k in (2..=63u32).rev() {
        let b = (m as f64).powf(1.0 / k as f64).round() as u64;
        for cand in b.saturating_sub(1)..=b + 1 {
            if cand >= 2 {
                if let Some(pow) = cand.checked_pow(k) {
                    if pow == m {
                        return Some((cand, k));
                    }
                }
            }
        }
    }
    None
}

/// Splits `q = q1 * s * c` by exponent: 1 into `q1`, exactly 2 into `s`,
/// at least 3 into `c`.
pub fn decompose_burgess(q: u64) -> Result<QPartsBurgess> {
    let f = factorize(q)?;
    let (mut q1, mut s, mut c) = (1u64, 1u64, 1u64);
    for &(p, e) in &f.factors {
        match e {
            1 => q1 *= p,
            2 => s *= p * p,
            _ => c *= p.pow(e),
        }
    }
    Ok(QPartsBurgess { q1, s, c })
}

/// Five-way exponent split; see [`QPartsCRT`].
pub fn decompose_crt(q: u64) -> Result<QPartsCRT> {
    let f = factorize(q)?;
    let (mut q1, mut q2, mut q3, mut q4, mut q5) = (1u64, 1, 1, 1, 1);
    for &(p, e) in &f.factors {
        if e == 1 {
            q1 *= p;
        } else if e == 2 {
            q2 *= p;
        } else if e % 2 == 0 {
            q3 *= p.pow(e / 2);
        } else {
            q4 *= p.pow((e - 1) / 2);
            q5 *= p;
        }
    }
    Ok(QPartsCRT { q1, q2, q3, q4, q5 })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product())
}

/// Number of divisors.
pub fn tau(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(_, e)| (e + 1) as u64).product())
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.factors.len() as u32)
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(p, _)| p).product())
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut out = vec![1u64];
    for &(p, e) in &f.factors {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Exact count of `n` in `(M, M+N]` with `gcd(n, q) = 1`, by inclusion-
/// exclusion over the squarefree divisors of `q`.
pub fn count_coprime_interval(m: i64, n: u64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let f = factorize(q)?;
    let primes: Vec<i128> = f.factors.iter().map(|&(p, _)| p as i128).collect();
    let lo = m as i128;
    let hi = lo + n as i128;
    let mut total = 0i128;
    for mask in 0u32..(1 << primes.len()) {
        let mut d = 1i128;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
            }
        }
        let cnt = hi.div_euclid(d) - lo.div_euclid(d);
        if mask.count_ones() % 2 == 0 {
            total += cnt;
        } else {
            total -= cnt;
        }
    }
    Ok(total as u64)
}

/// Smallest `n` in `(M, M+N]` coprime to `q`, if any.
pub fn find_coprime(m: i64, n: u64, q: u64) -> Result<Option<i64>> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut x = m as i128;
    let hi = x + n as i128;
    while x < hi {
        x += 1;
        if gcd((x.rem_euclid(q as i128)) as u64, q) == 1 {
            return i64::try_from(x)
                .map(Some)
                .map_err(|_| Error::Precondition("window end exceeds i64".into()));
        }
    }
    Ok(None)
}

/// Combines residue-modulus pairs with pairwise coprime moduli into the
/// residue mod their product.
pub fn crt_reconstruct(pairs: &[(u64, u64)]) -> Result<(u64, u64)> {
    let mut r = 0u64;
    let mut m = 1u64;
    for &(ri, mi) in pairs {
        if mi == 0 {
            return Err(Error::ZeroModulus);
        }
        let g = gcd(m, mi);
        if g != 1 {
            return Err(Error::NotCoprime(m, mi));
        }
        let prod = m.checked_mul(mi).ok_or(Error::ModulusOverflow)?;
        // r' = r + m * ((ri - r) * m^{-1} mod mi)
        let diff = (ri % mi + mi - r % mi) % mi;
        let step = mul_mod(diff, mod_inverse(m % mi, mi)?, mi);
        r += m * step;
        m = prod;
    }
    Ok((r, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(360).unwrap().factors, vec![(2, 3), (3, 2), (5, 1)]);
        // 2^61 - 1 is a Mersenne prime; Miller-Rabin is the oracle here.
        let m61 = (1u64 << 61) - 1;
        assert!(is_prime(m61));
        assert_eq!(factorize(m61).unwrap().factors, vec![(m61, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_large_composites() {
        // Both factors above the trial-division limit.
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert!(is_prime(p) && is_prime(q));
        assert_eq!(factorize(p * q).unwrap().factors, vec![(p, 1), (q, 1)]);
        let sq = p * p;
        assert_eq!(factorize(sq).unwrap().factors, vec![(p, 2)]);
    }

    #[test]
    fn factorize_exhaustive_small() {
        for n in 1..=20_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.product(), n, "n={n}");
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            for &(p, _) in &f.factors {
                assert!(is_prime(p));
            }
        }
    }

    #[test]
    fn burgess_examples() {
        assert_eq!(decompose_burgess(1).unwrap(), QPartsBurgess { q1: 1, s: 1, c: 1 });
        assert_eq!(decompose_burgess(12).unwrap(), QPartsBurgess { q1: 3, s: 4, c: 1 });
        assert_eq!(decompose_burgess(360).unwrap(), QPartsBurgess { q1: 5, s: 9, c: 8 });
    }

    #[test]
    fn crt_split_examples() {
        assert_eq!(
            decompose_crt(4).unwrap(),
            QPartsCRT { q1: 1, q2: 2, q3: 1, q4: 1, q5: 1 }
        );
        let q = 4 * 81 * 125 * 7;
        assert_eq!(
            decompose_crt(q).unwrap(),
            QPartsCRT { q1: 7, q2: 2, q3: 9, q4: 5, q5: 5 }
        );
        assert_eq!(
            decompose_crt(97).unwrap(),
            QPartsCRT { q1: 97, q2: 1, q3: 1, q4: 1, q5: 1 }
        );
    }

    #[test]
    fn split_consistency() {
        for q in 1..=5000u64 {
            let b = decompose_burgess(q).unwrap();
            let c = decompose_crt(q).unwrap();
            assert_eq!(b.q1 * b.s * b.c, q);
            assert_eq!(b.q1, c.q1);
            assert_eq!(b.s, c.q2 * c.q2);
            assert_eq!(b.c, c.q3 * c.q3 * c.q4 * c.q4 * c.q5);
            assert_eq!(gcd(b.q1, b.s), 1);
            assert_eq!(gcd(b.q1, b.c), 1);
            assert_eq!(gcd(b.s, b.c), 1);
        }
    }

    #[test]
    fn coprime_interval_examples() {
        for q in 1..=60 {
            assert_eq!(count_coprime_interval(0, q, q).unwrap(), euler_phi(q).unwrap());
            assert_eq!(count_coprime_interval(0, 0, q).unwrap(), 0);
        }
        assert_eq!(count_coprime_interval(3, 4, 6).unwrap(), 2);
    }

    #[test]
    fn coprime_interval_matches_direct_loop() {
        for q in 1..=40u64 {
            for m in -25i64..25 {
                for n in 0..=30u64 {
                    let direct = ((m + 1)..=(m + n as i64))
                        .filter(|&x| gcd_i64(x, q as i64) == 1)
                        .count() as u64;
                    assert_eq!(count_coprime_interval(m, n, q).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn find_coprime_examples() {
        assert_eq!(find_coprime(0, 1, 2).unwrap(), Some(1));
        assert_eq!(find_coprime(3, 3, 6).unwrap(), Some(5));
        assert_eq!(find_coprime(1, 2, 6).unwrap(), None);
    }

    #[test]
    fn mod_inverse_roundtrip() {
        for q in 2..=200u64 {
            for a in 1..q {
                match mod_inverse(a, q) {
                    Ok(inv) => {
                        assert_eq!(gcd(a, q), 1);
                        assert_eq!(mul_mod(a, inv, q), 1);
                    }
                    Err(_) => assert_ne!(gcd(a, q), 1),
                }
            }
        }
    }

    #[test]
    fn divisor_functions() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(tau(12).unwrap(), 6);
        assert_eq!(omega(12).unwrap(), 2);
        assert_eq!(radical(12).unwrap(), 6);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(divisors(1).unwrap(), vec![1]);
    }

    #[test]
    fn crt_reconstruct_works() {
        let (r, m) = crt_reconstruct(&[(2, 3), (3, 5), (2, 7)]).unwrap();
        assert_eq!(m, 105);
        assert_eq!(r % 3, 2);
        assert_eq!(r % 5, 3);
        assert_eq!(r % 7, 2);
        assert!(crt_reconstruct(&[(1, 6), (2, 4)]).is_err());
    }
}
