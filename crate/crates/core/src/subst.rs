//! Letter-substitution engine.
//!
//! Every structure map in this crate that acts letter by letter (F, its
//! inverse, t, t~, the Galois permutations, the distribution maps) sends each
//! letter to a combination `sum_j (p_j/q_j) zeta^(e_j) y_j` of letters. Such a
//! map is applied one word position at a time, so that the cost stays close to
//! the size of the output instead of the product of image sizes. Coefficients
//! are held as integer vectors in the power basis over a per-word denominator;
//! the fast path uses `i128` and falls back to big integers on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::cyclo::{CycContext, CycNum};
use crate::series::{Series, TensorSeries, TermMap};
use crate::words::{Alphabet, Word, SEP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageTerm {
    pub code: u8,
    pub num: i64,
    pub den: i64,
    /// Exponent of zeta, reduced modulo N.
    pub exp: u32,
}

impl ImageTerm {
    pub fn letter(code: u8) -> Self {
        ImageTerm { code, num: 1, den: 1, exp: 0 }
    }
}

/// A letter-by-letter linear substitution on words of fixed length.
#[derive(Clone, Debug)]
pub struct Substitution {
    n: u32,
    images: Vec<Vec<ImageTerm>>,
    identity: Vec<bool>,
}

impl Substitution {
    /// `image(code)` gives the image of each code in `0..=N`.
    pub fn new(n: u32, image: impl Fn(u8) -> Vec<ImageTerm>) -> Self {
        let images: Vec<Vec<ImageTerm>> = (0..=n as u8)
            .map(|c| {
                image(c)
                    .into_iter()
                    .filter(|t| t.num != 0)
                    .map(|t| ImageTerm { exp: t.exp % n, ..t })
                    .collect()
            })
            .collect();
        let identity = images
            .iter()
            .enumerate()
            .map(|(c, img)| img.len() == 1 && img[0] == ImageTerm::letter(c as u8))
            .collect();
        Substitution { n, images, identity }
    }

    pub fn image(&self, code: u8) -> &[ImageTerm] {
        &self.images[code as usize]
    }

    pub fn apply_terms(&self, ctx: &CycContext, input: &TermMap) -> TermMap {
        debug_assert_eq!(ctx.n(), self.n);
        match self.run::<i128>(ctx, input) {
            Some(t) => t,
            None => self.run::<BigInt>(ctx, input).expect("big integer arithmetic cannot overflow"),
        }
    }

    pub fn apply(&self, f: &Series, target: Alphabet) -> Series {
        let terms = self.apply_terms(f.ctx(), f.terms());
        Series::from_terms(f.ctx(), target, f.max_degree(), terms)
    }

    /// Apply the substitution to every tensor factor at once.
    pub fn apply_tensor(&self, t: &TensorSeries, target: Alphabet) -> TensorSeries {
        let terms = self.apply_terms(t.ctx(), t.raw_terms());
        TensorSeries::from_joined(t.ctx(), target, t.max_degree(), t.arity(), terms)
    }

    fn run<S: EngineInt>(&self, ctx: &CycContext, input: &TermMap) -> Option<TermMap> {
        let phi = ctx.phi();
        let mut cur: FxHashMap<Word, Acc<S>> = FxHashMap::default();
        let mut maxlen = 0;
        for (w, c) in input {
            maxlen = maxlen.max(w.len());
            cur.insert(w.clone(), Acc::from_cyc(c)?);
        }
        for pos in 0..maxlen {
            let active = cur.keys().any(|w| pos < w.len() && w[pos] != SEP && !self.identity[w[pos] as usize]);
            if !active {
                continue;
            }
            let mut next: FxHashMap<Word, Acc<S>> = FxHashMap::default();
            next.reserve(cur.len());
            for (w, acc) in cur.drain() {
                if pos >= w.len() || w[pos] == SEP || self.identity[w[pos] as usize] {
                    merge(&mut next, w, acc)?;
                    continue;
                }
                for t in &self.images[w[pos] as usize] {
                    let mut w2 = w.clone();
                    w2[pos] = t.code;
                    merge(&mut next, w2, acc.times(ctx, phi, t)?)?;
                }
            }
            next.retain(|_, a| !a.is_zero());
            cur = next;
        }
        Some(cur.into_iter().map(|(w, a)| (w, a.into_cyc())).filter(|(_, c)| !c.is_zero()).collect())
    }
}

trait EngineInt: Clone + Integer + Signed + CheckedMul + CheckedAdd {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn from_i64(v: i64) -> Self;
}

impl EngineInt for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl EngineInt for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

struct Acc<S> {
    num: SmallVec<[S; 8]>,
    den: S,
}

impl<S: EngineInt> Acc<S> {
    fn from_cyc(c: &CycNum) -> Option<Self> {
        let num = c.numerators().iter().map(S::from_big).collect::<Option<SmallVec<_>>>()?;
        Some(Acc { num, den: S::from_big(c.denominator())? })
    }

    fn into_cyc(self) -> CycNum {
        CycNum::from_parts(self.num.iter().map(S::to_big).collect(), self.den.to_big())
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn times(&self, ctx: &CycContext, phi: usize, t: &ImageTerm) -> Option<Self> {
        let k = S::from_i64(t.num);
        let mut out: SmallVec<[S; 8]> = SmallVec::from_elem(S::zero(), phi);
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xk = x.checked_mul(&k)?;
            let z = ctx.zeta_coords(t.exp as i64 + i as i64);
            for j in 0..phi {
                if z[j] != 0 {
                    let v = xk.checked_mul(&S::from_i64(z[j]))?;
                    out[j] = out[j].checked_add(&v)?;
                }
            }
        }
        let den = if t.den == 1 { self.den.clone() } else { self.den.checked_mul(&S::from_i64(t.den))? };
        Some(Acc { num: out, den })
    }
}

fn merge<S: EngineInt>(map: &mut FxHashMap<Word, Acc<S>>, w: Word, a: Acc<S>) -> Option<()> {
    match map.entry(w) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(a);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let cur = e.get_mut();
            if cur.den == a.den {
                for (x, y) in cur.num.iter_mut().zip(a.num.iter()) {
                    *x = x.checked_add(y)?;
                }
            } else {
                let g = cur.den.gcd(&a.den);
                let fa = cur.den.div_floor(&g);
                let fb = a.den.div_floor(&g);
                for (x, y) in cur.num.iter_mut().zip(a.num.iter()) {
                    *x = x.checked_mul(&fb)?.checked_add(&y.checked_mul(&fa)?)?;
                }
                cur.den = cur.den.checked_mul(&fb)?;
            }
            if cur.is_zero() {
                cur.den = S::one();
            }
        }
    }
    Some(())
}
