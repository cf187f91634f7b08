//! Double-precision evaluation of multiple polylogarithm values at roots of
//! unity and of congruence-restricted multiple zeta values, with a-priori tail
//! bounds, and numerical checks of the identities relating them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported depth.
pub const MAX_DEPTH: usize = 3;
/// Largest supported weight.
pub const MAX_WEIGHT: u32 = 5;

/// `Li_{k_1..k_r}(z_1..z_r)` with `z_i = zeta_N^{m_i}`, summed over
/// `n_1 > ... > n_r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpvIndex {
    pub n: u32,
    pub ks: Vec<u32>,
    pub exps: Vec<i64>,
}

/// Sum of `1 / (n_1^k_1 ... n_r^k_r)` over `n_1 > ... > n_r >= 1` with
/// `n_i = alpha_i mod N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmzvIndex {
    pub n: u32,
    pub ks: Vec<u32>,
    pub alphas: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    /// Bound on the omitted tail.
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub value: [f64; 2],
    pub bound: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(check: &str, value: Complex64, residual: f64, bound: f64, tol: f64) -> Self {
        CheckResult {
            check: check.to_string(),
            value: [value.re, value.im],
            bound,
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol + bound,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

fn residue(a: i64, n: u32) -> usize {
    a.rem_euclid(n as i64) as usize
}

/// `zeta_N^j` for `j` in `0..N`, each from its exact angle.
fn root_table(n: u32) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)).collect()
}

fn validate_shape(ks: &[u32], len: usize) -> Result<()> {
    if ks.is_empty() || ks.len() > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!("depth must be in 1..={}, got {}", MAX_DEPTH, ks.len())));
    }
    if ks.len() != len {
        return Err(Error::InvalidParameter(format!("{} exponents for {} roots", ks.len(), len)));
    }
    if ks.iter().any(|&k| k == 0) {
        return Err(Error::InvalidParameter("exponents must be positive".into()));
    }
    let w: u32 = ks.iter().sum();
    if w > MAX_WEIGHT {
        return Err(Error::InvalidParameter(format!("weight {} exceeds {}", w, MAX_WEIGHT)));
    }
    Ok(())
}

impl MpvIndex {
    pub fn new(n: u32, ks: Vec<u32>, exps: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        validate_shape(&ks, exps.len())?;
        if ks[0] == 1 && residue(exps[0], n) == 0 {
            return Err(Error::Divergent(format!("Li with (k_1, z_1) = (1, 1) at ks {:?}", ks)));
        }
        Ok(MpvIndex { n, ks, exps })
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }
}

impl CmzvIndex {
    pub fn new(n: u32, ks: Vec<u32>, alphas: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        validate_shape(&ks, alphas.len())?;
        if ks[0] < 2 {
            return Err(Error::Divergent(format!("congruent value needs k_1 >= 2, got ks {:?}", ks)));
        }
        Ok(CmzvIndex { n, ks, alphas })
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }
}

fn pow_inv(n: u64, k: u32) -> f64 {
    (n as f64).powi(-(k as i32))
}

/// A-priori bound for the tail `n_1 > M` of a nested sum whose outer factor
/// is `z^n / n^k` and whose inner sums are dominated by `(1 + ln n)^(r-1)`.
fn tail_bound(k1: u32, z1: Complex64, depth: usize, m: u64) -> f64 {
    let m = m.max(2) as f64;
    let r = (depth - 1) as i32;
    let l = 1.0 + m.ln();
    if k1 >= 2 {
        let k = (k1 - 1) as f64;
        (l + r as f64 / k).powi(r) / (k * m.powf(k))
    } else {
        // Abel summation against the bounded partial sums of z^n.
        let gap = (Complex64::new(1.0, 0.0) - z1).norm();
        4.0 * (l + 1.0).powi(r) / (gap * m)
    }
}

/// Nested sum `sum_{n_1 > ... > n_r >= 1} prod w_i(n_i) / n_i^k_i`, with the
/// innermost sum accumulated first.
fn nested_forward(ks: &[u32], weight: impl Fn(usize, u64) -> Complex64, m: u64) -> Complex64 {
    let r = ks.len();
    // acc[i] = sum over n_i < current n of the depth-(r-i) tail starting at i.
    let mut acc = vec![Complex64::new(0.0, 0.0); r + 1];
    acc[r] = Complex64::new(1.0, 0.0);
    for n in 1..=m {
        let mut inner = acc.clone();
        for i in (0..r).rev() {
            let w = weight(i, n);
            if w != Complex64::new(0.0, 0.0) {
                inner[i] = acc[i] + w * pow_inv(n, ks[i]) * acc[i + 1];
            }
        }
        acc = inner;
    }
    acc[0]
}

/// The same sum accumulated from the outermost index inward.
fn nested_backward(ks: &[u32], weight: impl Fn(usize, u64) -> Complex64, m: u64) -> Complex64 {
    let r = ks.len();
    // acc[i] = sum over n_i > current n of the depth-(i+1) head ending at i.
    let mut acc = vec![Complex64::new(0.0, 0.0); r + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    for n in (1..=m).rev() {
        let mut next = acc.clone();
        for i in 0..r {
            let w = weight(i, n);
            if w != Complex64::new(0.0, 0.0) {
                next[i + 1] = acc[i + 1] + w * pow_inv(n, ks[i]) * acc[i];
            }
        }
        acc = next;
    }
    acc[r]
}

/// Summation order for nested sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    #[default]
    InnerFirst,
    OuterFirst,
}

pub fn mpv_with(idx: &MpvIndex, n_max: u64, order: Order) -> Estimate<Complex64> {
    let roots = root_table(idx.n);
    let n = idx.n as u64;
    let exps: Vec<u64> = idx.exps.iter().map(|&e| residue(e, idx.n) as u64).collect();
    let weight = |i: usize, k: u64| roots[((exps[i] * (k % n)) % n) as usize];
    let value = match order {
        Order::InnerFirst => nested_forward(&idx.ks, weight, n_max),
        Order::OuterFirst => nested_backward(&idx.ks, weight, n_max),
    };
    Estimate { value, bound: tail_bound(idx.ks[0], roots[exps[0] as usize], idx.depth(), n_max) }
}

pub fn mpv(idx: &MpvIndex, n_max: u64) -> Estimate<Complex64> {
    mpv_with(idx, n_max, Order::InnerFirst)
}

pub fn cmzv_with(idx: &CmzvIndex, n_max: u64, order: Order) -> Estimate<f64> {
    let n = idx.n as u64;
    let alphas: Vec<u64> = idx.alphas.iter().map(|&a| residue(a, idx.n) as u64).collect();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let weight = |i: usize, k: u64| if k % n == alphas[i] { one } else { zero };
    let value = match order {
        Order::InnerFirst => nested_forward(&idx.ks, weight, n_max),
        Order::OuterFirst => nested_backward(&idx.ks, weight, n_max),
    };
    Estimate { value: value.re, bound: tail_bound(idx.ks[0], zero, idx.depth(), n_max) }
}

pub fn cmzv(idx: &CmzvIndex, n_max: u64) -> Estimate<f64> {
    cmzv_with(idx, n_max, Order::InnerFirst)
}

/// The congruent value against `N^-r sum_m zeta^(-sum m_i a_i) Li(zeta^m_1, ...)`.
pub fn check_bridge(idx: &CmzvIndex, n_max: u64, tol: f64) -> Result<CheckResult> {
    let n = idx.n;
    let r = idx.depth();
    let lhs = cmzv(idx, n_max);
    let roots = root_table(n);
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut bound = lhs.bound;
    let mut exps = vec![0i64; r];
    loop {
        let phase: i64 = exps.iter().zip(&idx.alphas).map(|(m, a)| -m * a).sum();
        let li = mpv(&MpvIndex::new(n, idx.ks.clone(), exps.clone())?, n_max);
        rhs += roots[residue(phase, n)] * li.value;
        bound += li.bound / (n as f64).powi(r as i32);
        let mut i = 0;
        while i < r {
            exps[i] += 1;
            if exps[i] < n as i64 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    rhs /= (n as f64).powi(r as i32);
    let residual = (Complex64::new(lhs.value, 0.0) - rhs).norm();
    Ok(CheckResult::new("bridge", Complex64::new(lhs.value, 0.0), residual, bound, tol))
}

/// `d^(k_1+..+k_r)` times the value at `alpha` against the sum over all
/// `alpha'` with `d alpha' = alpha`. The right side is truncated at
/// `n_max / d` so that both sides cover the same integers.
pub fn check_distribution(idx: &CmzvIndex, d: u32, n_max: u64, tol: f64) -> Result<CheckResult> {
    let n = idx.n;
    if d == 0 || n % d != 0 {
        return Err(Error::NotADivisor(d, n));
    }
    if let Some(a) = idx.alphas.iter().find(|&&a| residue(a, n) % d as usize != 0) {
        return Err(Error::SupportViolation(format!("residue {} is not in {}Z/{}Z", a, d, n)));
    }
    let lhs = cmzv(idx, n_max);
    let scale = (d as f64).powi(idx.ks.iter().sum::<u32>() as i32);
    let r = idx.depth();
    // Preimages of alpha under multiplication by d on Z/NZ.
    let pre: Vec<Vec<i64>> = idx
        .alphas
        .iter()
        .map(|&a| (0..n as i64).filter(|&x| residue(x * d as i64, n) == residue(a, n)).collect())
        .collect();
    let mut rhs = 0.0;
    let mut bound = 0.0;
    let mut pick = vec![0usize; r];
    loop {
        let alphas: Vec<i64> = pick.iter().zip(&pre).map(|(&i, p)| p[i]).collect();
        let e = cmzv(&CmzvIndex::new(n, idx.ks.clone(), alphas)?, n_max / d as u64);
        rhs += e.value;
        bound += e.bound;
        let mut i = 0;
        while i < r {
            pick[i] += 1;
            if pick[i] < pre[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    let residual = (scale * lhs.value - rhs).abs();
    Ok(CheckResult::new("distribution", Complex64::new(scale * lhs.value, 0.0), residual, bound + scale * lhs.bound, tol))
}

/// `Li_1(z) Li_1(w) = Li_{1,1}(z, w) + Li_{1,1}(w, z) + Li_2(zw)` for
/// `z = zeta^a`, `w = zeta^b`, both different from 1.
pub fn check_stuffle_numeric(n: u32, a: i64, b: i64, n_max: u64, tol: f64) -> Result<CheckResult> {
    let li1 = |e| MpvIndex::new(n, vec![1], vec![e]);
    let p = mpv(&li1(a)?, n_max);
    let q = mpv(&li1(b)?, n_max);
    let s1 = mpv(&MpvIndex::new(n, vec![1, 1], vec![a, b])?, n_max);
    let s2 = mpv(&MpvIndex::new(n, vec![1, 1], vec![b, a])?, n_max);
    let s3 = mpv(&MpvIndex::new(n, vec![2], vec![a + b])?, n_max);
    let lhs = p.value * q.value;
    let residual = (lhs - s1.value - s2.value - s3.value).norm();
    let bound = p.bound * q.value.norm() + q.bound * p.value.norm() + p.bound * q.bound + s1.bound + s2.bound + s3.bound;
    Ok(CheckResult::new("stuffle", lhs, residual, bound, tol))
}

/// Difference between the two summation orders.
pub fn order_discrepancy(idx: &MpvIndex, n_max: u64) -> f64 {
    (mpv_with(idx, n_max, Order::InnerFirst).value - mpv_with(idx, n_max, Order::OuterFirst).value).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_constants() {
        let z2 = mpv(&MpvIndex::new(3, vec![2], vec![0]).unwrap(), 1_000_000);
        assert!((z2.value.re - PI * PI / 6.0).abs() <= z2.bound + 1e-9);
        assert!(z2.bound < 1.1e-6);
        let l = mpv(&MpvIndex::new(2, vec![1], vec![1]).unwrap(), 1_000_000);
        assert!((l.value.re + 2f64.ln()).abs() < 1e-6);
        assert!(l.value.im.abs() < 1e-9);
    }

    #[test]
    fn cmzv_reindexing() {
        let e = cmzv(&CmzvIndex::new(3, vec![2], vec![3]).unwrap(), 1_000_000);
        assert!((e.value - PI * PI / 54.0).abs() < 1e-6);
        assert!((e.value - 0.182_770_45).abs() < 1e-6);
    }

    #[test]
    fn divergent_rejected() {
        assert!(matches!(MpvIndex::new(3, vec![1], vec![3]), Err(Error::Divergent(_))));
        assert!(matches!(CmzvIndex::new(3, vec![1, 2], vec![1, 1]), Err(Error::Divergent(_))));
        assert!(MpvIndex::new(3, vec![3, 3], vec![1, 1]).is_err());
    }

    #[test]
    fn orders_agree() {
        let idx = MpvIndex::new(3, vec![1, 1], vec![1, 2]).unwrap();
        assert!(order_discrepancy(&idx, 100_000) < 1e-9);
        let c = CmzvIndex::new(3, vec![2, 1], vec![1, 2]).unwrap();
        let (a, b) = (cmzv_with(&c, 50_000, Order::InnerFirst), cmzv_with(&c, 50_000, Order::OuterFirst));
        assert!((a.value - b.value).abs() < 1e-9);
    }

    #[test]
    fn empty_congruence() {
        let e = cmzv(&CmzvIndex::new(10, vec![2], vec![7]).unwrap(), 5);
        assert_eq!(e.value, 0.0);
        assert!(e.bound > 0.0);
    }

    #[test]
    fn small_checks() {
        assert!(check_bridge(&CmzvIndex::new(3, vec![2], vec![1]).unwrap(), 10_000, 1e-6).unwrap().pass);
        assert!(check_distribution(&CmzvIndex::new(6, vec![2], vec![0]).unwrap(), 3, 10_000, 1e-9).unwrap().pass);
        assert!(check_stuffle_numeric(4, 1, 3, 10_000, 1e-9).unwrap().pass);
        assert!(check_distribution(&CmzvIndex::new(4, vec![2], vec![1]).unwrap(), 2, 100, 1e-6).is_err());
    }
}
