//! Exact integer-coefficient polynomial and matrix algebra.
//!
//! Houses the tuple polynomials `f_v1`, `f_v2`, their Wronskian combination,
//! the two cleared-denominator polynomials built from a tuple, the Sylvester
//! matrix, resultants by fraction-free elimination, and the adjugate. No
//! floating point is used anywhere except the explicit bound evaluators at
//! the bottom.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arithmetic;
use crate::error::{Error, Result};

/// Integer polynomial, coefficients stored in ascending degree with a
/// nonzero leading coefficient; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn x() -> Self {
        IntPolynomial { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monic linear factor `x - root`.
    pub fn linear(root: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(-root), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Coefficients reduced into `[0, q)`.
    pub fn coeffs_mod(&self, q: u64) -> Vec<u64> {
        let m = BigInt::from(q);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("reduced coefficient fits u64"))
            .collect()
    }

    /// Evaluation mod `q` by Horner over the reduced coefficients.
    pub fn eval_mod(&self, x: u64, q: u64) -> u64 {
        horner_mod(&self.coeffs_mod(q), x, q)
    }

    /// Quotient and remainder by a monic divisor, exact over the integers.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(
            divisor.leading().is_some_and(|c| c.is_one()),
            "divisor must be monic"
        );
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] -= &c * b;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Greatest common divisor of the coefficients (positive), 0 for zero.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = big_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and normalizes the leading sign to positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive gcd over the rationals via a pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Rational roots of the polynomial, exact and deduplicated.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>> {
        let p = self.primitive_part();
        if p.is_zero() || p.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let mut roots = Vec::new();
        let mut work = p;
        if work.coeff(0).is_zero() {
            roots.push(BigRational::zero());
            while work.coeff(0).is_zero() && work.degree() > Some(0) {
                work = Self::from_coeffs(work.coeffs[1..].to_vec());
            }
        }
        let a0 = work.coeff(0).abs();
        let lead = work.leading().cloned().unwrap_or_else(BigInt::one).abs();
        let (Some(a0u), Some(leadu)) = (a0.to_u64(), lead.to_u64()) else {
            return Err(Error::Precondition(
                "coefficients too large for the rational-root screen".into(),
            ));
        };
        if a0u == 0 {
            return Ok(roots);
        }
        for num in arithmetic::divisors(a0u)? {
            for den in arithmetic::divisors(leadu)? {
                if arithmetic::gcd(num, den) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = BigRational::new(
                        BigInt::from(sign) * BigInt::from(num),
                        BigInt::from(den),
                    );
                    if work.eval_rational(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        Ok(roots)
    }

    /// Irreducibility screen used by the algebraic tuple counter: conclusive
    /// for degree at most 3 (no rational root), and a rational-root check
    /// only beyond that, where the caller asserts irreducibility.
    pub fn irreducibility_screen(&self) -> Result<()> {
        let deg = self.degree().ok_or_else(|| {
            Error::ReduciblePolynomial("zero polynomial".into())
        })?;
        if deg == 0 {
            return Err(Error::ReduciblePolynomial("constant polynomial".into()));
        }
        if deg == 1 {
            return Ok(());
        }
        if !self.rational_roots()?.is_empty() {
            return Err(Error::ReduciblePolynomial(format!(
                "degree {deg} polynomial has a rational root"
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for IntPolynomial {
    /// Space-separated ascending coefficients; the zero polynomial prints "0".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for tok in s.split_whitespace() {
            let c: BigInt = tok
                .parse()
                .map_err(|_| Error::Precondition(format!("bad coefficient {tok:?}")))?;
            coeffs.push(c);
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Horner evaluation of reduced coefficients mod `q`.
pub fn horner_mod(coeffs_mod: &[u64], x: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let x = x % q;
    let mut acc = 0u64;
    for &c in coeffs_mod.iter().rev() {
        acc = (arithmetic::mul_mod(acc, x, q) + c) % q;
    }
    acc
}

fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    debug_assert!(da >= db);
    let lc = b.leading().unwrap().clone();
    let mut rem = a.scale(&lc.pow((da - db + 1) as u32));
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let factor = rem.leading().unwrap() / &lc;
        let mut sub = vec![BigInt::zero(); dr - db];
        sub.push(factor);
        let sub = IntPolynomial::from_coeffs(sub);
        rem = rem.sub(&sub.mul(b));
    }
    rem
}

/// `n`-th cyclotomic polynomial by exact division of `x^n - 1`.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let divs = arithmetic::divisors(n)?;
    let mut table: Vec<(u64, IntPolynomial)> = Vec::new();
    for &d in &divs {
        let mut xm1 = vec![BigInt::zero(); d as usize + 1];
        xm1[0] = BigInt::from(-1);
        xm1[d as usize] = BigInt::one();
        let mut phi = IntPolynomial::from_coeffs(xm1);
        for &(e, ref pe) in &table {
            if d % e == 0 {
                let (q, r) = phi.div_rem_monic(pe);
                debug_assert!(r.is_zero());
                phi = q;
            }
        }
        table.push((d, phi));
    }
    Ok(table.pop().unwrap().1)
}

// ---------------------------------------------------------------------------
// Tuple polynomials

/// Monic polynomials whose roots are the two halves of the tuple:
/// `f1(x) = prod (x - v_j)` over the first half, `f2` over the second.
pub fn build_f_pair(v: &[i64]) -> Result<(IntPolynomial, IntPolynomial)> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddTupleLength(v.len()));
    }
    let r = v.len() / 2;
    let prod = |vals: &[i64]| {
        vals.iter()
            .fold(IntPolynomial::one(), |acc, &root| acc.mul(&IntPolynomial::linear(root)))
    };
    Ok((prod(&v[..r]), prod(&v[r..])))
}

/// `W = f1' f2 - f1 f2'`; identically zero exactly when the two monic
/// halves coincide.
pub fn wronskian_combo(v: &[i64]) -> Result<IntPolynomial> {
    let (f1, f2) = build_f_pair(v)?;
    Ok(f1.derivative().mul(&f2).sub(&f1.mul(&f2.derivative())))
}

/// Cleared-denominator form of the fraction-sum equation: the sum of
/// `prod_{j != i} (X + v_j)` over the first half minus the same sum over the
/// second. Vanishes at `s` exactly when the two sums of `1/(s + v_i)` agree,
/// provided no `s + v_i` is zero. Degree at most `2k - 2`.
pub fn build_pv_kloosterman(v: &[i64]) -> Result<IntPolynomial> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddTupleLength(v.len()));
    }
    let k = v.len() / 2;
    let mut acc = IntPolynomial::zero();
    for i in 0..v.len() {
        let mut term = IntPolynomial::one();
        for (j, &vj) in v.iter().enumerate() {
            if j != i {
                term = term.mul(&IntPolynomial::linear(-vj));
            }
        }
        acc = if i < k { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Difference of the two half products `prod (X + v_i)`; the monic leading
/// terms cancel so the degree is at most `r - 1`.
pub fn build_pv_mult(v: &[i64]) -> Result<IntPolynomial> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddTupleLength(v.len()));
    }
    let r = v.len() / 2;
    let prod = |vals: &[i64]| {
        vals.iter()
            .fold(IntPolynomial::one(), |acc, &root| acc.mul(&IntPolynomial::linear(-root)))
    };
    Ok(prod(&v[..r]).sub(&prod(&v[r..])))
}

// ---------------------------------------------------------------------------
// Matrices

/// Square matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, data: Vec<BigInt>) -> Self {
        assert!(n >= 1 && data.len() == n * n);
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n);
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        Self::new(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Self::new(n, data)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.n, self.data.iter().map(|a| a * c).collect())
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 1 {
            return self.data[0].clone();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    fn minor(&self, row: usize, col: usize) -> IntMatrix {
        let n = self.n;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix::new(n - 1, data)
    }
}

/// Transpose of the cofactor matrix; `A * adj(A) = det(A) * I` exactly.
/// A 1x1 matrix has adjugate `[1]` by the empty-minor convention.
pub fn adjugate(a: &IntMatrix) -> IntMatrix {
    let n = a.dim();
    if n == 1 {
        return IntMatrix::identity(1);
    }
    let mut out = IntMatrix::new(n, vec![BigInt::zero(); n * n]);
    for i in 0..n {
        for j in 0..n {
            let mut c = a.minor(j, i).determinant();
            if (i + j) % 2 == 1 {
                c = -c;
            }
            out.set(i, j, c);
        }
    }
    out
}

/// Sylvester matrix with the rows of `f` above the rows of `g`.
pub fn sylvester(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntMatrix> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let m = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n + m == 0 {
        return Err(Error::Precondition(
            "resultant needs at least one nonconstant polynomial".into(),
        ));
    }
    let size = n + m;
    let mut mat = IntMatrix::new(size, vec![BigInt::zero(); size * size]);
    for row in 0..m {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat.set(row, row + k, c.clone());
        }
    }
    for row in 0..n {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat.set(m + row, row + k, c.clone());
        }
    }
    Ok(mat)
}

/// Determinant of the Sylvester matrix. Zero exactly when `f` and `g` share
/// a complex root. With this row layout `Res(f, x - c) = (-1)^{deg f} f(c)`.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    Ok(sylvester(f, g)?.determinant())
}

/// Checks the resultant lifting property: when `f(lambda) = g(lambda) = 0
/// mod q` and `gcd(lambda, q) = 1`, the resultant must vanish mod `q`.
/// Returns whether it does; the statement asserts this is always true.
pub fn resultant_lift_check(
    f: &IntPolynomial,
    g: &IntPolynomial,
    lambda: i64,
    q: u64,
) -> Result<bool> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if arithmetic::gcd_i64(lambda, q as i64) != 1 {
        return Err(Error::Precondition(format!(
            "gcd({lambda}, {q}) != 1"
        )));
    }
    let lam = lambda.rem_euclid(q as i64) as u64;
    if f.eval_mod(lam, q) != 0 || g.eval_mod(lam, q) != 0 {
        return Err(Error::Precondition(format!(
            "f or g does not vanish at {lambda} mod {q}"
        )));
    }
    let res = resultant(f, g)?;
    Ok(res.mod_floor(&BigInt::from(q)).is_zero())
}

/// The height-bound value `H^{(M-1+sigma)(N-1+theta) - theta*sigma}`.
pub fn resultant_height_rhs(h: f64, sigma: f64, theta: f64, m: u32, n: u32) -> Result<f64> {
    if h <= 1.0 {
        return Err(Error::Precondition("height H must exceed 1".into()));
    }
    let exponent = (m as f64 - 1.0 + sigma) * (n as f64 - 1.0 + theta) - theta * sigma;
    Ok(h.powf(exponent))
}

/// Hadamard bound on the absolute determinant: the product of the Euclidean
/// row norms, computed in log space to avoid overflow.
pub fn hadamard_bound(m: &IntMatrix) -> f64 {
    let n = m.dim();
    let mut log_sum = 0.0f64;
    for i in 0..n {
        let mut sq = BigInt::zero();
        for j in 0..n {
            let a = m.get(i, j);
            sq += a * a;
        }
        if sq.is_zero() {
            return 0.0;
        }
        log_sum += 0.5 * big_ln(&sq);
    }
    log_sum.exp()
}

fn big_ln(x: &BigInt) -> f64 {
    // ln via mantissa + bit length, valid far beyond f64 range.
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}
