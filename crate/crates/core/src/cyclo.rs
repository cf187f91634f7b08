//! Exact arithmetic in Q(mu_N) = Q[t]/Phi_N(t) and the Galois group (Z/NZ)^x.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, ParseError, Result};

/// Largest supported level. Letter codes are bytes and one byte value is
/// reserved as a tensor separator.
pub const MAX_LEVEL: u32 = 200;

/// Divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// Units of Z/NZ, as representatives in `1..N`.
pub fn units(n: u32) -> Vec<u32> {
    (1..n.max(2)).filter(|&k| k.gcd(&n) == 1).collect()
}

/// Reduce `e` into `0..n`.
pub fn residue(e: i64, n: u32) -> u32 {
    e.rem_euclid(n as i64) as u32
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient of integer polynomials, `den` monic.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// An element of Q(mu_N) in the power basis `1, z, ..., z^(phi-1)`, stored as
/// integer numerators over a common positive denominator in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(phi: usize) -> Self {
        CycNum { num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(phi: usize) -> Self {
        Self::from_int(phi, 1)
    }

    pub fn from_int(phi: usize, v: i64) -> Self {
        let mut num = vec![BigInt::zero(); phi];
        num[0] = BigInt::from(v);
        CycNum { num, den: BigInt::one() }
    }

    pub fn from_rational(phi: usize, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); phi];
        num[0] = r.numer().clone();
        Self::from_parts(num, r.denom().clone())
    }

    pub fn from_ratio(phi: usize, p: i64, q: i64) -> Self {
        Self::from_rational(phi, &BigRational::new(p.into(), q.into()))
    }

    /// Build from numerators over a common denominator, normalizing.
    pub fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycNum { num, den: BigInt::one() };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for x in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(x);
            }
            if !g.is_one() {
                for x in num.iter_mut() {
                    *x /= &g;
                }
                den /= &g;
            }
        }
        CycNum { num, den }
    }

    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(num, den)
    }

    pub fn phi(&self) -> usize {
        self.num.len()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.phi()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeff(0))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::from_parts(self.num.iter().map(|x| x * k).collect(), self.den.clone())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::from_parts(
            self.num.iter().map(|x| x * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    /// Size heuristic used for pivot selection: total bit length.
    pub fn bits(&self) -> u64 {
        self.num.iter().map(|x| x.bits()).sum::<u64>() + self.den.bits()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(format_rational).collect()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})z", format_rational(c))?,
                _ => write!(f, "({})z^{}", format_rational(c), i)?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return CycNum::from_parts(num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycNum::from_parts(num, &self.den * &rhs.den)
    }
}

impl std::ops::Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl std::ops::AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<BigRational, ParseError> {
    let bad = || ParseError::BadRational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Level-N context: the cyclotomic modulus and precomputed powers of zeta.
#[derive(Debug)]
pub struct CycContext {
    n: u32,
    phi: usize,
    poly: Vec<BigInt>,
    zeta: Vec<CycNum>,
    zeta_int: Vec<Vec<i64>>,
}

pub type Ctx = Arc<CycContext>;

impl CycContext {
    pub fn new(n: u32) -> Result<Ctx> {
        if !(3..=MAX_LEVEL).contains(&n) {
            return Err(Error::InvalidLevel(n));
        }
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut zeta_int = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            zeta_int.push(cur.clone());
            // multiply by t and reduce with the monic modulus
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            if top != 0 {
                for j in 0..phi {
                    next[j] -= top * poly[j].to_i64().expect("small cyclotomic coefficient");
                }
            }
            cur = next;
        }
        debug_assert!(cur[0] == 1 && cur[1..].iter().all(|&x| x == 0));
        let zeta = zeta_int
            .iter()
            .map(|v| CycNum::from_parts(v.iter().map(|&x| BigInt::from(x)).collect(), BigInt::one()))
            .collect();
        Ok(Arc::new(CycContext { n, phi, poly, zeta, zeta_int }))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn cyclo_poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn zero(&self) -> CycNum {
        CycNum::zero(self.phi)
    }

    pub fn one(&self) -> CycNum {
        CycNum::one(self.phi)
    }

    pub fn int(&self, v: i64) -> CycNum {
        CycNum::from_int(self.phi, v)
    }

    pub fn ratio(&self, p: i64, q: i64) -> CycNum {
        CycNum::from_ratio(self.phi, p, q)
    }

    pub fn rational(&self, r: &BigRational) -> CycNum {
        CycNum::from_rational(self.phi, r)
    }

    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> std::result::Result<CycNum, ParseError> {
        if coeffs.len() != self.phi {
            return Err(ParseError::CoeffLength { expected: self.phi, got: coeffs.len() });
        }
        Ok(CycNum::from_coeffs(coeffs))
    }

    /// Integer coordinates of `zeta^e` in the power basis.
    pub fn zeta_coords(&self, e: i64) -> &[i64] {
        &self.zeta_int[residue(e, self.n) as usize]
    }

    pub fn zeta_power(&self, e: i64) -> CycNum {
        self.zeta[residue(e, self.n) as usize].clone()
    }

    /// Reduce a polynomial with integer numerators (over `den`) modulo Phi_N.
    pub fn reduce(&self, mut num: Vec<BigInt>, den: BigInt) -> CycNum {
        let phi = self.phi;
        if num.len() < phi {
            num.resize(phi, BigInt::zero());
        }
        for i in (phi..num.len()).rev() {
            if num[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut num[i]);
            for j in 0..phi {
                num[i - phi + j] -= &c * &self.poly[j];
            }
        }
        num.truncate(phi);
        CycNum::from_parts(num, den)
    }

    pub fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if b.is_rational() {
            return CycNum::from_parts(a.num.iter().map(|x| x * &b.num[0]).collect(), &a.den * &b.den);
        }
        if a.is_rational() {
            return self.mul(b, a);
        }
        let mut prod = vec![BigInt::zero(); 2 * self.phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod, &a.den * &b.den)
    }

    /// Multiply by `zeta^e` using the precomputed integer table.
    pub fn mul_zeta(&self, a: &CycNum, e: i64) -> CycNum {
        let phi = self.phi;
        let mut out = vec![BigInt::zero(); phi];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let z = self.zeta_coords(e + i as i64);
            for j in 0..phi {
                if z[j] != 0 {
                    out[j] += x * z[j];
                }
            }
        }
        CycNum::from_parts(out, a.den.clone())
    }

    pub fn inv(&self, a: &CycNum) -> Result<CycNum> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.n));
        }
        if a.is_rational() {
            let mut num = vec![BigInt::zero(); self.phi];
            num[0] = a.den.clone();
            return Ok(CycNum::from_parts(num, a.num[0].clone()));
        }
        let ap: Vec<BigRational> = a.coeffs();
        let m: Vec<BigRational> = self.poly.iter().map(|c| BigRational::from(c.clone())).collect();
        let s = poly::inverse_mod(&ap, &m).ok_or(Error::DivisionByZero(self.n))?;
        let mut s = s;
        s.resize(self.phi, BigRational::zero());
        Ok(CycNum::from_coeffs(&s))
    }

    pub fn div(&self, a: &CycNum, b: &CycNum) -> Result<CycNum> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &CycNum, mut e: u32) -> CycNum {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sum of `zeta^(M j)` over `j = 1..=N`.
    pub fn root_power_sum(&self, m: i64) -> CycNum {
        let mut acc = self.zero();
        for j in 1..=self.n as i64 {
            acc += &self.zeta_power(m * j);
        }
        acc
    }

    /// Apply the automorphism `zeta -> zeta^k`.
    pub fn galois_apply(&self, sigma: &GaloisElement, a: &CycNum) -> CycNum {
        self.apply_power_map(sigma.k as i64, a)
    }

    fn apply_power_map(&self, k: i64, a: &CycNum) -> CycNum {
        if a.is_rational() {
            return a.clone();
        }
        let phi = self.phi;
        let mut out = vec![BigInt::zero(); phi];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let z = self.zeta_coords(k * i as i64);
            for j in 0..phi {
                if z[j] != 0 {
                    out[j] += x * z[j];
                }
            }
        }
        CycNum::from_parts(out, a.den.clone())
    }

    /// Evaluate Phi_N at the class of `t` inside the quotient.
    pub fn phi_at_zeta(&self) -> CycNum {
        let mut acc = self.zero();
        for (i, c) in self.poly.iter().enumerate() {
            acc += &self.zeta_power(i as i64).scale_int(c);
        }
        acc
    }

    /// Complex value under the embedding `zeta -> exp(2 pi i / N)`.
    pub fn to_complex(&self, a: &CycNum) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        let den = a.den.to_f64().unwrap_or(f64::INFINITY);
        for (i, x) in a.num.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / (self.n as f64);
            z += num_complex::Complex64::from_polar(x.to_f64().unwrap_or(f64::NAN) / den, ang);
        }
        z
    }
}

/// The automorphism `zeta -> zeta^k` for a unit `k` modulo `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisElement {
    k: u32,
}

impl GaloisElement {
    pub fn new(ctx: &CycContext, k: i64) -> Result<Self> {
        let r = residue(k, ctx.n);
        if r == 0 || r.gcd(&ctx.n) != 1 {
            return Err(Error::NotAUnit(k, ctx.n));
        }
        Ok(GaloisElement { k: r })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn compose(&self, other: &GaloisElement, ctx: &CycContext) -> GaloisElement {
        GaloisElement { k: (self.k * other.k) % ctx.n }
    }

    pub fn inverse(&self, ctx: &CycContext) -> GaloisElement {
        let k = (1..ctx.n).find(|j| (j * self.k) % ctx.n == 1).expect("unit");
        GaloisElement { k }
    }

    pub fn all(ctx: &CycContext) -> Vec<GaloisElement> {
        units(ctx.n).into_iter().map(|k| GaloisElement { k }).collect()
    }
}

mod poly {
    //! Dense polynomials over Q, lowest degree first.
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![], r);
        }
        let lead = &b[db];
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / lead;
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[shift + j] -= t;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let len = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
        let mut out = vec![BigRational::zero(); len];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in q.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// `s` with `s * a = 1 mod m`, when `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        if r1.is_empty() {
            return None;
        }
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let (_, s) = divrem(&s0.iter().map(|x| x / &c).collect::<Vec<_>>(), m);
        Some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn elem(ctx: &CycContext, v: &[i64]) -> CycNum {
        let mut num = ints(v);
        num.resize(ctx.phi(), BigInt::zero());
        CycNum::from_parts(num, BigInt::one())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn modulus_is_monic_of_totient_degree() {
        for n in 3..40 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.len() - 1, totient(n) as usize);
            assert!(p.last().unwrap().is_one());
        }
    }

    #[test]
    fn small_levels_rejected() {
        assert!(CycContext::new(2).is_err());
        assert!(CycContext::new(1).is_err());
    }

    #[test]
    fn zeta_squared() {
        let c4 = CycContext::new(4).unwrap();
        let z = c4.zeta_power(1);
        assert_eq!(c4.mul(&z, &z), c4.int(-1));
        let c3 = CycContext::new(3).unwrap();
        let z = c3.zeta_power(1);
        assert_eq!(c3.mul(&z, &z), elem(&c3, &[-1, -1]));
        assert_eq!(c3.zeta_power(2), elem(&c3, &[-1, -1]));
        assert_eq!(c3.zeta_power(3), c3.one());
        assert_eq!(c4.zeta_power(-1), elem(&c4, &[0, -1]));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let c = CycContext::new(5).unwrap();
        assert!(matches!(c.inv(&c.zero()), Err(Error::DivisionByZero(5))));
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let c = CycContext::new(5).unwrap();
        let a = elem(&c, &[1, 1]);
        let b = c.inv(&a).unwrap();
        assert_eq!(c.mul(&a, &b), c.one());
    }

    #[test]
    fn root_power_sums() {
        let c3 = CycContext::new(3).unwrap();
        assert_eq!(c3.root_power_sum(3), c3.int(3));
        assert_eq!(c3.root_power_sum(1), c3.zero());
        let c4 = CycContext::new(4).unwrap();
        assert_eq!(c4.root_power_sum(2), c4.zero());
    }

    #[test]
    fn galois_on_generator() {
        let c3 = CycContext::new(3).unwrap();
        let s = GaloisElement::new(&c3, 2).unwrap();
        assert_eq!(c3.galois_apply(&s, &c3.zeta_power(1)), elem(&c3, &[-1, -1]));
        assert!(GaloisElement::new(&c3, 3).is_err());
        let c6 = CycContext::new(6).unwrap();
        assert!(GaloisElement::new(&c6, 2).is_err());
        assert_eq!(GaloisElement::all(&c6).len(), 2);
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in 3..30 {
            let c = CycContext::new(n).unwrap();
            assert!(c.phi_at_zeta().is_zero());
        }
    }

    #[test]
    fn rational_round_trip() {
        let r = parse_rational(" -6/4 ").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn complex_embedding() {
        let c = CycContext::new(4).unwrap();
        let z = c.to_complex(&c.zeta_power(1));
        assert!((z.re).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
    }
}
