//! Dirichlet characters mod composite `q` with exact root-of-unity values.
//!
//! A character is stored as one index per prime-power factor of `q`. For odd
//! `p^k` the index is taken against the smallest primitive root of `p^2`
//! (which generates every `p^k`); for `2^k`, `k >= 3`, against the generator
//! pair `(-1, 5)`. Discrete logarithms come from dense tables built once per
//! modulus, so evaluation is a table lookup plus exact angle arithmetic.

use std::sync::Arc;

use crate::arithmetic::{self, factorize, gcd, lcm, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::polynomials::{cyclotomic, IntPolynomial};
use num_bigint::BigInt;
use num_complex::Complex64;

/// Largest modulus for which character tables are built.
pub const MAX_MODULUS: u64 = 100_000;

const NON_UNIT: u32 = u32::MAX;

/// Exact value of a character: zero, or the root of unity `e^{2 pi i t/d}`
/// stored in lowest terms with `0 <= t < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub fn one() -> Self {
        CharValue::Root { num: 0, den: 1 }
    }

    pub fn root(num: u64, den: u64) -> Self {
        assert!(den > 0, "root of unity needs a positive order");
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            CharValue::Root { num: 0, den: 1 }
        } else {
            CharValue::Root { num: num / g, den: den / g }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (CharValue::Zero, _) | (_, CharValue::Zero) => CharValue::Zero,
            (
                CharValue::Root { num: n1, den: d1 },
                CharValue::Root { num: n2, den: d2 },
            ) => {
                let l = lcm(*d1, *d2);
                let num = (n1 * (l / d1) + n2 * (l / d2)) % l;
                CharValue::root(num, l)
            }
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => CharValue::root((den - num) % den, *den),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root { num, den } => {
                let theta = 2.0 * std::f64::consts::PI * (*num as f64) / (*den as f64);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

#[derive(Debug, Clone)]
enum ComponentTables {
    /// `p^k = 2`: only the trivial character.
    Two,
    /// `p^k = 4`: sign of the class of `-1`.
    Four,
    /// Odd `p^k`, cyclic with generator `g`: `dlog[n] = t` when `n = g^t`.
    OddPrime { generator: u64, dlog: Vec<u32> },
    /// `2^k`, `k >= 3`: `n = (-1)^s 5^t`; `dlog[n] = t`, `sign[n] = s`.
    TwoPower { dlog: Vec<u32>, sign: Vec<u8> },
}

/// Tables for one prime power `p^k` dividing the modulus.
#[derive(Debug, Clone)]
pub struct PrimePowerGroup {
    pub p: u64,
    pub k: u32,
    pub pk: u64,
    pub phi: u64,
    tables: ComponentTables,
}

impl PrimePowerGroup {
    fn build(p: u64, k: u32) -> Result<Self> {
        let pk = p.pow(k);
        let phi = pk / p * (p - 1);
        let tables = if p == 2 {
            match k {
                1 => ComponentTables::Two,
                2 => ComponentTables::Four,
                _ => {
                    let half = pk / 4; // 2^{k-2}
                    let mut dlog = vec![NON_UNIT; pk as usize];
                    let mut sign = vec![0u8; pk as usize];
                    let mut val = 1u64;
                    for t in 0..half {
                        dlog[val as usize] = t as u32;
                        sign[val as usize] = 0;
                        let neg = pk - val;
                        dlog[neg as usize] = t as u32;
                        sign[neg as usize] = 1;
                        val = mul_mod(val, 5, pk);
                    }
                    ComponentTables::TwoPower { dlog, sign }
                }
            }
        } else {
            let generator = smallest_primitive_root_sq(p)?;
            let mut dlog = vec![NON_UNIT; pk as usize];
            let mut val = 1u64;
            for t in 0..phi {
                dlog[val as usize] = t as u32;
                val = mul_mod(val, generator % pk, pk);
            }
            debug_assert_eq!(val, 1);
            ComponentTables::OddPrime { generator, dlog }
        };
        Ok(PrimePowerGroup { p, k, pk, phi, tables })
    }

    /// Number of characters of this component, `phi(p^k)`.
    pub fn index_count(&self) -> u64 {
        self.phi
    }

    /// Canonical generator for odd prime powers, none for powers of two.
    pub fn generator(&self) -> Option<u64> {
        match self.tables {
            ComponentTables::OddPrime { generator, .. } => Some(generator),
            _ => None,
        }
    }

    /// Denominator of the exact angles this component produces.
    fn angle_den(&self) -> u64 {
        match self.tables {
            ComponentTables::Two => 1,
            ComponentTables::Four => 2,
            ComponentTables::OddPrime { .. } => self.phi,
            ComponentTables::TwoPower { .. } => self.pk / 4,
        }
    }

    /// Angle numerator over `angle_den()` for character `index` at `n`
    /// (`n` already reduced mod `p^k`), or `None` off the units.
    fn angle(&self, index: u64, n: u64) -> Option<u64> {
        match &self.tables {
            ComponentTables::Two => (n % 2 == 1).then_some(0),
            ComponentTables::Four => match n % 4 {
                1 => Some(0),
                3 => Some(index % 2),
                _ => None,
            },
            ComponentTables::OddPrime { dlog, .. } => {
                let t = dlog[n as usize];
                (t != NON_UNIT).then(|| mul_mod(index, t as u64, self.phi))
            }
            ComponentTables::TwoPower { dlog, sign } => {
                let t = dlog[n as usize];
                if t == NON_UNIT {
                    return None;
                }
                // eps * s / 2 + a * t / half over the common denominator
                // half = 2^{k-2}, which is even or equal to 2 since k >= 3.
                let half = self.pk / 4;
                let eps = index / half;
                let a = index % half;
                let s = sign[n as usize] as u64;
                let from_sign = (eps * s % 2) * (half / 2);
                Some((from_sign + mul_mod(a, t as u64, half)) % half)
            }
        }
    }

    /// Conductor of the component character with the given index.
    fn conductor(&self, index: u64) -> u64 {
        match self.tables {
            ComponentTables::Two => 1,
            ComponentTables::Four => {
                if index % 2 == 1 {
                    4
                } else {
                    1
                }
            }
            ComponentTables::OddPrime { .. } => {
                if index == 0 {
                    return 1;
                }
                let mut m = 0u32;
                let mut a = index;
                while a.is_multiple_of(self.p) {
                    a /= self.p;
                    m += 1;
                }
                self.p.pow(self.k - m)
            }
            ComponentTables::TwoPower { .. } => {
                let half = self.pk / 4;
                let eps = index / half;
                let a = index % half;
                if a == 0 {
                    return if eps == 1 { 4 } else { 1 };
                }
                let m = a.trailing_zeros();
                self.pk >> m
            }
        }
    }

    fn is_primitive(&self, index: u64) -> bool {
        self.conductor(index) == self.pk
    }

    /// Multiplicative order of the component character.
    fn order(&self, index: u64) -> u64 {
        match self.tables {
            ComponentTables::Two => 1,
            ComponentTables::Four => {
                if index % 2 == 1 {
                    2
                } else {
                    1
                }
            }
            ComponentTables::OddPrime { .. } => self.phi / gcd(index, self.phi),
            ComponentTables::TwoPower { .. } => {
                let half = self.pk / 4;
                let eps = index / half;
                let a = index % half;
                let ord5 = half / gcd(a, half).max(1);
                let ord5 = if a == 0 { 1 } else { ord5 };
                lcm(if eps == 1 { 2 } else { 1 }, ord5)
            }
        }
    }

    fn conj_index(&self, index: u64) -> u64 {
        match self.tables {
            ComponentTables::Two => 0,
            ComponentTables::Four => index,
            ComponentTables::OddPrime { .. } => (self.phi - index) % self.phi,
            ComponentTables::TwoPower { .. } => {
                let half = self.pk / 4;
                let eps = index / half;
                let a = index % half;
                eps * half + (half - a) % half
            }
        }
    }
}

/// Smallest `g` generating the units mod `p^2` (hence mod every `p^k`).
fn smallest_primitive_root_sq(p: u64) -> Result<u64> {
    let p2 = p * p;
    let phi = p * (p - 1);
    let mut prime_divs: Vec<u64> = factorize(p - 1)?.factors.iter().map(|&(q, _)| q).collect();
    prime_divs.push(p);
    'outer: for g in 2..p2 {
        if g % p == 0 {
            continue;
        }
        for &ell in &prime_divs {
            if pow_mod(g, phi / ell, p2) == 1 {
                continue 'outer;
            }
        }
        return Ok(g);
    }
    unreachable!("odd prime powers always have a primitive root");
}

/// Evaluation tables for all characters of one modulus; build once, share.
#[derive(Debug)]
pub struct CharacterGroup {
    pub q: u64,
    components: Vec<PrimePowerGroup>,
    /// Common denominator of every angle produced by this modulus.
    angle_lcm: u64,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        if q > MAX_MODULUS {
            return Err(Error::Precondition(format!(
                "modulus {q} exceeds the table limit {MAX_MODULUS}"
            )));
        }
        let f = factorize(q)?;
        let mut components = Vec::with_capacity(f.factors.len());
        for &(p, k) in &f.factors {
            components.push(PrimePowerGroup::build(p, k)?);
        }
        let angle_lcm = components.iter().fold(1u64, |l, c| lcm(l, c.angle_den()));
        Ok(Arc::new(CharacterGroup { q, components, angle_lcm }))
    }

    pub fn components(&self) -> &[PrimePowerGroup] {
        &self.components
    }

    pub fn phi(&self) -> u64 {
        self.components.iter().map(|c| c.phi).product()
    }

    /// All characters mod `q` in canonical order (lexicographic over the
    /// component index vectors), optionally only the primitive ones.
    pub fn characters(self: &Arc<Self>, primitive_only: bool) -> Vec<DirichletCharacter> {
        let sizes: Vec<u64> = self.components.iter().map(|c| c.index_count()).collect();
        let mut out = Vec::new();
        let mut indices = vec![0u64; sizes.len()];
        loop {
            let chi = DirichletCharacter { group: Arc::clone(self), indices: indices.clone() };
            if !primitive_only || chi.is_primitive() {
                out.push(chi);
            }
            // Increment the mixed-radix counter, last component fastest.
            let mut pos = sizes.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                indices[pos] += 1;
                if indices[pos] < sizes[pos] {
                    break;
                }
                indices[pos] = 0;
            }
        }
    }

    pub fn trivial(self: &Arc<Self>) -> DirichletCharacter {
        DirichletCharacter {
            group: Arc::clone(self),
            indices: vec![0; self.components.len()],
        }
    }

    pub fn character(self: &Arc<Self>, indices: Vec<u64>) -> Result<DirichletCharacter> {
        if indices.len() != self.components.len() {
            return Err(Error::BadCharLabel(
                format!("{indices:?}"),
                format!("expected {} component indices", self.components.len()),
            ));
        }
        for (c, &i) in self.components.iter().zip(&indices) {
            if i >= c.index_count() {
                return Err(Error::BadCharLabel(
                    format!("{indices:?}"),
                    format!("index {i} out of range for component {}^{}", c.p, c.k),
                ));
            }
        }
        Ok(DirichletCharacter { group: Arc::clone(self), indices })
    }

    /// Parses `"q:i1,i2,..."`; the modulus must match this group.
    pub fn character_from_label(self: &Arc<Self>, label: &str) -> Result<DirichletCharacter> {
        let (qs, idx) = label
            .split_once(':')
            .ok_or_else(|| Error::BadCharLabel(label.into(), "missing ':'".into()))?;
        let q: u64 = qs
            .trim()
            .parse()
            .map_err(|_| Error::BadCharLabel(label.into(), "bad modulus".into()))?;
        if q != self.q {
            return Err(Error::BadCharLabel(
                label.into(),
                format!("label modulus {q} != group modulus {}", self.q),
            ));
        }
        let mut indices = Vec::new();
        for part in idx.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let i: u64 = part
                .parse()
                .map_err(|_| Error::BadCharLabel(label.into(), format!("bad index {part:?}")))?;
            indices.push(i);
        }
        self.character(indices)
    }
}

/// A Dirichlet character mod `q`, immutable once built.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    indices: Vec<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    pub fn group(&self) -> &Arc<CharacterGroup> {
        &self.group
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Stable identifier `"q:i1,i2,..."` with components in prime order.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        format!("{}:{}", self.group.q, parts.join(","))
    }

    /// Angle numerator over `angle_lcm()` at `n`, or `None` off the units.
    pub fn eval_index(&self, n: i64) -> Option<u64> {
        let q = self.group.q;
        let l = self.group.angle_lcm;
        let nq = n.rem_euclid(q as i64) as u64;
        let mut acc = 0u64;
        for (comp, &idx) in self.group.components.iter().zip(&self.indices) {
            let np = nq % comp.pk;
            let num = comp.angle(idx, np)?;
            let d = comp.angle_den();
            acc = (acc + mul_mod(num, l / d, l)) % l;
        }
        Some(acc)
    }

    /// Denominator shared by every angle this character can produce.
    pub fn angle_lcm(&self) -> u64 {
        self.group.angle_lcm
    }

    /// Exact value at `n`.
    pub fn eval(&self, n: i64) -> CharValue {
        match self.eval_index(n) {
            None => CharValue::Zero,
            Some(t) => CharValue::root(t, self.group.angle_lcm),
        }
    }

    /// Component value at `n` for component `i`.
    pub fn component_value(&self, i: usize, n: i64) -> CharValue {
        let comp = &self.group.components[i];
        let np = n.rem_euclid(comp.pk as i64) as u64;
        match comp.angle(self.indices[i], np) {
            None => CharValue::Zero,
            Some(t) => CharValue::root(t, comp.angle_den()),
        }
    }

    /// Smallest `f | q` such that the character is induced from mod `f`.
    pub fn conductor(&self) -> u64 {
        self.group
            .components
            .iter()
            .zip(&self.indices)
            .map(|(c, &i)| c.conductor(i))
            .product()
    }

    pub fn is_primitive(&self) -> bool {
        self.group
            .components
            .iter()
            .zip(&self.indices)
            .all(|(c, &i)| c.is_primitive(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.iter().all(|&i| i == 0)
    }

    pub fn order(&self) -> u64 {
        self.group
            .components
            .iter()
            .zip(&self.indices)
            .fold(1u64, |l, (c, &i)| lcm(l, c.order(i)))
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let indices = self
            .group
            .components
            .iter()
            .zip(&self.indices)
            .map(|(c, &i)| c.conj_index(i))
            .collect();
        DirichletCharacter { group: Arc::clone(&self.group), indices }
    }

    /// Dense table of complex values over `[0, q)`.
    pub fn complex_table(&self) -> Vec<Complex64> {
        let l = self.group.angle_lcm;
        let roots: Vec<Complex64> = (0..l)
            .map(|t| CharValue::root(t, l).to_complex())
            .collect();
        (0..self.group.q as i64)
            .map(|n| match self.eval_index(n) {
                None => Complex64::new(0.0, 0.0),
                Some(t) => roots[t as usize],
            })
            .collect()
    }
}

/// Sum of exact roots of unity with a fixed order: `counts[t]` copies of
/// `e^{2 pi i t / order}`.
#[derive(Debug, Clone)]
pub struct UnitRootSum {
    order: u64,
    counts: Vec<i64>,
}

impl UnitRootSum {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1);
        UnitRootSum { order, counts: vec![0; order as usize] }
    }

    pub fn add(&mut self, t: u64, mult: i64) {
        self.counts[(t % self.order) as usize] += mult;
    }

    /// Exact test for vanishing in the complex numbers: equidistributed
    /// multiplicities short-circuit; otherwise the coefficient vector must
    /// reduce to zero mod the cyclotomic polynomial of the order.
    pub fn is_zero(&self) -> Result<bool> {
        if self.counts.iter().all(|&c| c == self.counts[0]) {
            return Ok(self.order > 1 || self.counts[0] == 0);
        }
        let phi = cyclotomic(self.order)?;
        let poly = IntPolynomial::from_coeffs(
            self.counts.iter().map(|&c| BigInt::from(c)).collect(),
        );
        let (_, rem) = poly.div_rem_monic(&phi);
        Ok(rem.is_zero())
    }
}

/// Conductor by direct restriction: smallest `f | q` with the character
/// trivial on every unit `n = 1 mod f`. Quadratic in `q`; test oracle.
pub fn conductor_by_restriction(chi: &DirichletCharacter) -> Result<u64> {
    let q = chi.modulus();
    for f in arithmetic::divisors(q)? {
        let mut induced = true;
        let mut n = 1u64;
        while n <= q {
            if gcd(n, q) == 1 && chi.eval(n as i64) != CharValue::one() {
                induced = false;
                break;
            }
            n += f;
        }
        if induced {
            return Ok(f);
        }
    }
    Ok(q)
}
