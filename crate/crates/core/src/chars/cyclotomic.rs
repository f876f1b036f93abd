use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{CharError, Result};

/// Largest root order accepted by [`Cyclotomic`].
pub const MAX_ORDER: u32 = 2520;

/// Exact element of `ℤ[ζ_N]`, stored in the power basis `1, ζ, …, ζ^{φ(N)−1}`
/// after reduction modulo the `N`-th cyclotomic polynomial, so equal values
/// have equal coefficient vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<i64>,
}

/// Coefficients of `Φ_N` from the constant term up.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    // Φ_N = (x^N − 1) / ∏_{d | N, d < N} Φ_d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.lock().expect("cache").insert(n, p.clone());
    p
}

/// Quotient of `a` by the monic polynomial `d`, which must divide it.
fn exact_div(a: &[i64], d: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let dd = d.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &di) in d.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Reduce a polynomial in `ζ_N` of any degree to the power basis.
fn reduce(n: u32, mut a: Vec<i64>) -> Vec<i64> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..a.len()).rev() {
        let c = a[top];
        if c != 0 {
            let base = top - deg;
            for (i, &pi) in phi.iter().enumerate() {
                a[base + i] -= c * pi;
            }
        }
    }
    a.resize(deg, 0);
    a
}

impl Cyclotomic {
    fn check_order(n: u32) -> Result<()> {
        if n == 0 || n > MAX_ORDER {
            return Err(CharError::UnsupportedOrder(n));
        }
        Ok(())
    }

    /// `Σ_k terms[k] ζ_N^k` for exponents taken modulo `N`.
    pub fn from_powers(n: u32, terms: &[(u32, i64)]) -> Result<Self> {
        Self::check_order(n)?;
        let mut full = vec![0i64; n as usize];
        for &(k, c) in terms {
            full[(k % n) as usize] += c;
        }
        Ok(Cyclotomic { n, coeffs: reduce(n, full) })
    }

    /// `ζ_N^j`.
    pub fn zeta(n: u32, j: i64) -> Result<Self> {
        Self::from_powers(n, &[(j.rem_euclid(n as i64) as u32, 1)])
    }

    pub fn from_int(n: u32, v: i64) -> Result<Self> {
        Self::from_powers(n, &[(0, v)])
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::from_int(n, 0)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients (length `φ(N)`).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(CharError::OrderMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { n: self.n, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let mut full = vec![0i64; 2 * self.coeffs.len()];
        mul_into(&mut full, &self.coeffs, &other.coeffs);
        Ok(Cyclotomic { n: self.n, coeffs: reduce(self.n, full) })
    }

    pub fn scale(&self, c: i64) -> Self {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Image under `ζ ↦ ζ^c` for `c` prime to `N`.
    pub fn galois(&self, c: i64) -> Result<Self> {
        let n = self.n as i64;
        if gcd(c.rem_euclid(n) as u64, n as u64) != 1 {
            return Err(CharError::NotAUnit(c, self.n));
        }
        let terms: Vec<(u32, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (((k as i64) * c).rem_euclid(n) as u32, v))
            .collect();
        Self::from_powers(self.n, &terms)
    }

    /// Complex conjugate, `ζ^j ↦ ζ^{N−j}`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("−1 is a unit")
    }

    /// The same number written over `ζ_M` for a multiple `M` of `N`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.n != 0 {
            return Err(CharError::OrderMismatch(self.n, m));
        }
        let step = m / self.n;
        let terms: Vec<(u32, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (k as u32 * step, v))
            .collect();
        Self::from_powers(m, &terms)
    }

    /// Complex value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let w = 2.0 * std::f64::consts::PI / self.n as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let a = w * k as f64;
            (re + c as f64 * a.cos(), im + c as f64 * a.sin())
        })
    }

    /// Parse the grammar `<int>`, `z^<k>`, `<int>*z^<k>` joined by `+`/`-`,
    /// where `z` stands for `ζ_N`.
    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let bad = || CharError::Parse(format!("bad cyclotomic expression {text:?}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let (term, tail) = body.split_at(end);
            rest = tail;
            let (coef, power) = match term.split_once('z') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0u32),
                Some((c, p)) => {
                    let c = match c {
                        "" => 1,
                        c => c.strip_suffix('*').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?,
                    };
                    let p = match p {
                        "" => 1,
                        p => p.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
                    };
                    (c, p)
                }
            };
            terms.push((power, sign * coef));
        }
        Self::from_powers(n, &terms)
    }
}

/// `acc += a·b` as polynomials, skipping zero coefficients.
pub(crate) fn mul_into(acc: &mut [i64], a: &[i64], b: &[i64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                acc[i + j] += x * y;
            }
        }
    }
}

/// `Σ_k w_k · a_k · b_k` reduced once at the end.
pub(crate) fn weighted_inner(n: u32, items: impl Iterator<Item = (i64, Vec<i64>, Vec<i64>)>) -> Cyclotomic {
    let len = euler_phi(n) as usize;
    let mut acc = vec![0i64; 2 * len];
    for (w, a, b) in items {
        let a: Vec<i64> = a.iter().map(|x| x * w).collect();
        mul_into(&mut acc, &a, &b);
    }
    Cyclotomic { n, coeffs: reduce(n, acc) }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            match (k, mag) {
                (0, _) => write!(f, "{sign}{mag}")?,
                (_, 1) => write!(f, "{sign}z^{k}")?,
                _ => write!(f, "{sign}{mag}*z^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (N={})", self, self.n)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("root orders differ")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(&-rhs).expect("root orders differ")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("root orders differ")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    n: u32,
    value: String,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            n: self.n,
            value: self.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(de)?;
        Cyclotomic::parse(r.n, &r.value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, j: i64) -> Cyclotomic {
        Cyclotomic::zeta(n, j).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        // Φ_105 is the first with a coefficient −2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(420).len() - 1, euler_phi(420) as usize);
    }

    #[test]
    fn trivial_identities() {
        assert!((&z(4, 1) + &z(4, -1)).is_zero());
        let r2 = &z(8, 1) + &z(8, -1);
        assert_eq!((&r2 * &r2).as_integer(), Some(2));
        for j in 0..12 {
            assert_eq!(z(12, j).conj(), z(12, 12 - j));
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u32, 3, 6, 15, 24, 105] {
            let mut acc = Cyclotomic::zero(n).unwrap();
            for j in 0..n as i64 {
                acc = &acc + &z(n, j);
            }
            assert!(acc.is_zero(), "N = {n}");
        }
    }

    #[test]
    fn lift_and_galois() {
        let a = &z(4, 1) + &Cyclotomic::from_int(4, 3).unwrap();
        let b = a.lift(12).unwrap();
        assert_eq!(b, &z(12, 3) + &Cyclotomic::from_int(12, 3).unwrap());
        assert_eq!(a.galois(3).unwrap(), a.conj());
        assert!(matches!(a.galois(2), Err(CharError::NotAUnit(2, 4))));
    }

    #[test]
    fn text_round_trip() {
        let x = &(&z(8, 1) - &z(8, 3)).scale(2) + &Cyclotomic::from_int(8, -1).unwrap();
        let s = x.to_string();
        assert_eq!(s, "-1+2*z^1-2*z^3");
        assert_eq!(Cyclotomic::parse(8, &s).unwrap(), x);
        assert_eq!(Cyclotomic::parse(8, "z^7+z").unwrap(), &z(8, 1) + &z(8, -1));
        assert_eq!(Cyclotomic::parse(4, "0").unwrap().to_string(), "0");
        assert!(Cyclotomic::parse(4, "z^^2").is_err());
    }
}
