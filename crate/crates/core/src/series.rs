//! Degree-truncated noncommutative series and tensor series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::cyclo::{parse_rational, CycContext, CycNum, Ctx};
use crate::error::{Error, ParseError, Result};
use crate::words::{cmp_words, format_word, is_valid_code, Alphabet, Word, SEP};

pub type TermMap = FxHashMap<Word, CycNum>;

/// A series truncated at `max_degree`; zero coefficients are never stored.
#[derive(Clone)]
pub struct Series {
    ctx: Ctx,
    alphabet: Alphabet,
    max_degree: usize,
    terms: TermMap,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n() == other.ctx.n()
            && self.alphabet == other.alphabet
            && self.max_degree == other.max_degree
            && self.terms == other.terms
    }
}

impl Series {
    pub fn new(ctx: &Ctx, alphabet: Alphabet, max_degree: usize) -> Self {
        Series { ctx: ctx.clone(), alphabet, max_degree, terms: TermMap::default() }
    }

    pub fn from_terms(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, terms: TermMap) -> Self {
        let mut s = Series::new(ctx, alphabet, max_degree);
        for (w, c) in terms {
            s.add_term(w, &c);
        }
        s
    }

    pub fn one(ctx: &Ctx, alphabet: Alphabet, max_degree: usize) -> Self {
        Self::monomial(ctx, alphabet, max_degree, &[], ctx.one())
    }

    pub fn letter(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, code: u8) -> Self {
        Self::monomial(ctx, alphabet, max_degree, &[code], ctx.one())
    }

    pub fn monomial(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, w: &[u8], c: CycNum) -> Self {
        let mut s = Series::new(ctx, alphabet, max_degree);
        s.add_term(Word::from_slice(w), &c);
        s
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn into_terms(self) -> TermMap {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &CycNum)> {
        self.terms.iter()
    }

    /// Terms ordered by degree, then lexicographically in letter order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &CycNum)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        let (a, n) = (self.alphabet, self.n());
        v.sort_by(|x, y| cmp_words(a, n, x.0, y.0));
        v
    }

    /// Add `c * w`; words above the truncation degree are dropped.
    pub fn add_term(&mut self, w: Word, c: &CycNum) {
        if w.len() > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn set(&mut self, w: Word, c: CycNum) {
        if w.len() > self.max_degree {
            return;
        }
        if c.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, c);
        }
    }

    /// Coefficient of `w`, zero when absent (no truncation check).
    pub fn coeff(&self, w: &[u8]) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// The pairing `(f | w)`.
    pub fn pairing(&self, w: &[u8]) -> Result<CycNum> {
        if w.len() > self.max_degree {
            return Err(Error::TruncationExceeded { degree: w.len(), max_degree: self.max_degree });
        }
        Ok(self.coeff(w))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(CycNum::is_rational)
    }

    pub fn constant_term(&self) -> CycNum {
        self.coeff(&[])
    }

    pub fn check_compatible(&self, other: &Series) -> Result<()> {
        if self.n() != other.n() || self.alphabet != other.alphabet {
            return Err(Error::ContextMismatch(format!(
                "N={} {} vs N={} {}",
                self.n(),
                self.alphabet.tag(),
                other.n(),
                other.alphabet.tag()
            )));
        }
        Ok(())
    }

    fn check_alphabet(&self, a: Alphabet) -> Result<()> {
        if self.alphabet != a {
            return Err(Error::ContextMismatch(format!(
                "expected alphabet {}, got {}",
                a.tag(),
                self.alphabet.tag()
            )));
        }
        Ok(())
    }

    pub fn expect_alphabet(&self, a: Alphabet) -> Result<()> {
        self.check_alphabet(a)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let d = self.max_degree.min(other.max_degree);
        let mut out = self.truncate(d);
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, k: &CycNum) -> Series {
        if k.is_zero() {
            return Series::new(&self.ctx, self.alphabet, self.max_degree);
        }
        let ctx = self.ctx.clone();
        self.map_coeffs(|c| ctx.mul(c, k))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Series {
        let k = self.ctx.rational(r);
        self.scale(&k)
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycNum) -> CycNum) -> Series {
        let mut out = Series::new(&self.ctx, self.alphabet, self.max_degree);
        for (w, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(w.clone(), v);
            }
        }
        out
    }

    /// Apply a word-to-word transform that is a bijection on the support.
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> Series {
        let mut out = Series::new(&self.ctx, self.alphabet, self.max_degree);
        for (w, c) in &self.terms {
            out.add_term(f(w), c);
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Series {
        let mut out = Series::new(&self.ctx, self.alphabet, self.max_degree);
        for (w, c) in &self.terms {
            if keep(w) {
                out.terms.insert(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn truncate(&self, d: usize) -> Series {
        let d = d.min(self.max_degree);
        let mut out = self.filter(|w| w.len() <= d);
        out.max_degree = d;
        out
    }

    /// Change the truncation degree. Raising it treats the series as a
    /// polynomial whose missing coefficients are zero.
    pub fn with_max_degree(&self, d: usize) -> Series {
        let mut s = self.truncate(d);
        s.max_degree = d;
        s
    }

    pub fn homogeneous(&self, d: usize) -> Series {
        self.filter(|w| w.len() == d)
    }

    /// Relabel the alphabet without touching the terms.
    pub fn with_alphabet(mut self, a: Alphabet) -> Series {
        self.alphabet = a;
        self
    }

    /// Concatenation product truncated at the smaller of the two degrees.
    pub fn concat_mul(&self, other: &Series) -> Result<Series> {
        self.check_compatible(other)?;
        let d = self.max_degree.min(other.max_degree);
        let mut out = Series::new(&self.ctx, self.alphabet, d);
        for (u, a) in &self.terms {
            if u.len() > d {
                continue;
            }
            for (v, b) in &other.terms {
                if u.len() + v.len() > d {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &self.ctx.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Series) -> Result<Series> {
        self.concat_mul(other)?.sub(&other.concat_mul(self)?)
    }

    /// First word (in sorted order) where the two series differ.
    pub fn first_difference(&self, other: &Series) -> Option<(Word, CycNum, CycNum)> {
        let mut keys: Vec<&Word> = self.terms.keys().chain(other.terms.keys()).collect();
        let (a, n) = (self.alphabet, self.n());
        keys.sort_by(|x, y| cmp_words(a, n, x, y));
        keys.dedup();
        keys.into_iter().find_map(|w| {
            let (x, y) = (self.coeff(w), other.coeff(w));
            (x != y).then(|| (w.clone(), x, y))
        })
    }

    pub fn format_word(&self, w: &[u8]) -> String {
        format_word(self.alphabet, self.n(), w)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*[{}]", c, self.format_word(w))?;
        }
        Ok(())
    }
}

/// A truncated element of the `arity`-fold completed tensor power. Keys are
/// the factors joined by `SEP`; the bound applies to the total degree.
#[derive(Clone)]
pub struct TensorSeries {
    ctx: Ctx,
    alphabet: Alphabet,
    max_degree: usize,
    arity: usize,
    terms: TermMap,
}

impl PartialEq for TensorSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n() == other.ctx.n()
            && self.alphabet == other.alphabet
            && self.arity == other.arity
            && self.terms == other.terms
    }
}

pub fn join_key(parts: &[&[u8]]) -> Word {
    let mut k = Word::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            k.push(SEP);
        }
        k.extend_from_slice(p);
    }
    k
}

pub fn split_key(key: &[u8]) -> Vec<&[u8]> {
    key.split(|&c| c == SEP).collect()
}

fn key_degree(key: &[u8]) -> usize {
    key.iter().filter(|&&c| c != SEP).count()
}

impl TensorSeries {
    pub fn new(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, arity: usize) -> Self {
        TensorSeries { ctx: ctx.clone(), alphabet, max_degree, arity, terms: TermMap::default() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn raw_terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn add_joined(&mut self, key: Word, c: &CycNum) {
        if key_degree(&key) > self.max_degree || c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_term(&mut self, parts: &[&[u8]], c: &CycNum) {
        debug_assert_eq!(parts.len(), self.arity);
        self.add_joined(join_key(parts), c);
    }

    pub fn get(&self, parts: &[&[u8]]) -> CycNum {
        self.terms.get(&join_key(parts)).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn sub(&self, other: &TensorSeries) -> TensorSeries {
        let mut out = self.clone();
        out.max_degree = self.max_degree.min(other.max_degree);
        out.terms.retain(|k, _| key_degree(k) <= out.max_degree);
        for (k, c) in &other.terms {
            out.add_joined(k.clone(), &-c);
        }
        out
    }

    pub fn truncate(&self, d: usize) -> TensorSeries {
        let mut out = self.clone();
        out.max_degree = d.min(self.max_degree);
        out.terms.retain(|k, _| key_degree(k) <= out.max_degree);
        out
    }

    /// Terms with their factors, sorted factor by factor.
    pub fn sorted_terms(&self) -> Vec<(Vec<Word>, CycNum)> {
        let (a, n) = (self.alphabet, self.ctx.n());
        let mut v: Vec<(Vec<Word>, CycNum)> = self
            .terms
            .iter()
            .map(|(k, c)| (split_key(k).into_iter().map(Word::from_slice).collect(), c.clone()))
            .collect();
        v.sort_by(|x, y| {
            let kx: usize = x.0.iter().map(|w| w.len()).sum();
            let ky: usize = y.0.iter().map(|w| w.len()).sum();
            kx.cmp(&ky).then_with(|| {
                for (p, q) in x.0.iter().zip(&y.0) {
                    let o = cmp_words(a, n, p, q);
                    if o.is_ne() {
                        return o;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        v
    }

    pub fn first_difference(&self, other: &TensorSeries) -> Option<(Vec<Word>, CycNum, CycNum)> {
        let diff = self.sub(other);
        diff.sorted_terms().into_iter().next().map(|(parts, _)| {
            let refs: Vec<&[u8]> = parts.iter().map(|w| w.as_slice()).collect();
            (parts.clone(), self.get(&refs), other.get(&refs))
        })
    }

    /// Build directly from a joined-key map (used by substitutions).
    pub(crate) fn from_joined(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, arity: usize, terms: TermMap) -> Self {
        let mut t = TensorSeries::new(ctx, alphabet, max_degree, arity);
        for (k, c) in terms {
            if !c.is_zero() && key_degree(&k) <= max_degree {
                t.terms.insert(k, c);
            }
        }
        t
    }
}

impl fmt::Debug for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, n) = (self.alphabet, self.ctx.n());
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (parts, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let ps: Vec<String> = parts.iter().map(|w| format_word(a, n, w)).collect();
            write!(f, "({})*[{}]", c, ps.join(" (x) "))?;
        }
        Ok(())
    }
}

/// Parameters for `random_series`.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    /// Coefficients in Q rather than Q(mu_N).
    pub rational: bool,
    /// No constant term.
    pub zero_constant: bool,
    /// Number of terms drawn per degree.
    pub density: usize,
    /// Restrict to words not ending in the zero letter.
    pub y_only: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { rational: true, zero_constant: true, density: 4, y_only: false }
    }
}

pub fn random_coeff<R: Rng>(ctx: &CycContext, rng: &mut R, rational: bool) -> CycNum {
    let draw = |rng: &mut R| BigRational::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4)));
    let mut c = vec![BigRational::from(BigInt::from(0)); ctx.phi()];
    c[0] = draw(rng);
    if !rational {
        for x in c.iter_mut().skip(1) {
            if rng.gen_bool(0.5) {
                *x = draw(rng);
            }
        }
    }
    CycNum::from_coeffs(&c)
}

pub fn random_series_rng<R: Rng>(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, rng: &mut R, spec: RandomSpec) -> Series {
    let n = ctx.n() as u8;
    let mut s = Series::new(ctx, alphabet, max_degree);
    let start = if spec.zero_constant { 1 } else { 0 };
    for d in start..=max_degree {
        for _ in 0..spec.density {
            let mut w = Word::new();
            for i in 0..d {
                let lo = if spec.y_only && i + 1 == d { 1 } else { 0 };
                w.push(rng.gen_range(lo..=n));
            }
            let c = random_coeff(ctx, rng, spec.rational);
            s.add_term(w, &c);
        }
    }
    s
}

/// Deterministic pseudo-random sparse series.
pub fn random_series(ctx: &Ctx, alphabet: Alphabet, max_degree: usize, seed: u64, spec: RandomSpec) -> Series {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_series_rng(ctx, alphabet, max_degree, &mut rng, spec)
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(rename = "N")]
    n: u32,
    alphabet: String,
    max_degree: usize,
    rational: bool,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    word: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    left: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    right: Option<Vec<i64>>,
    coeff: Vec<String>,
}

fn word_to_json(w: &[u8]) -> Vec<i64> {
    w.iter().map(|&c| c as i64).collect()
}

fn word_from_json(v: &[i64], n: u32) -> std::result::Result<Word, ParseError> {
    v.iter()
        .map(|&c| {
            if c < 0 || c > n as i64 || !is_valid_code(c as u8, n) {
                Err(ParseError::LetterRange { letter: c, n })
            } else {
                Ok(c as u8)
            }
        })
        .collect()
}

fn coeff_from_json(ctx: &CycContext, v: &[String]) -> std::result::Result<CycNum, ParseError> {
    let rs = v.iter().map(|s| parse_rational(s)).collect::<std::result::Result<Vec<_>, _>>()?;
    ctx.from_coeffs(&rs)
}

pub fn to_json_value(f: &Series) -> serde_json::Value {
    let terms = f
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| TermJson { word: Some(word_to_json(w)), left: None, right: None, coeff: c.to_strings() })
        .collect();
    let j = SeriesJson {
        n: f.n(),
        alphabet: f.alphabet().tag().to_string(),
        max_degree: f.max_degree(),
        rational: f.is_rational(),
        terms,
    };
    serde_json::to_value(j).expect("series serializes")
}

pub fn serialize(f: &Series) -> String {
    serde_json::to_string(&to_json_value(f)).expect("series serializes")
}

fn parse_header(j: &SeriesJson) -> std::result::Result<(Ctx, Alphabet), ParseError> {
    let alphabet = Alphabet::from_tag(&j.alphabet).ok_or_else(|| ParseError::UnknownAlphabet(j.alphabet.clone()))?;
    let ctx = CycContext::new(j.n).map_err(|_| ParseError::Level(j.n))?;
    Ok((ctx, alphabet))
}

pub fn deserialize(text: &str) -> Result<Series> {
    let j: SeriesJson = serde_json::from_str(text).map_err(ParseError::Json)?;
    let (ctx, alphabet) = parse_header(&j)?;
    let mut s = Series::new(&ctx, alphabet, j.max_degree);
    for t in &j.terms {
        let w = word_from_json(t.word.as_deref().unwrap_or(&[]), j.n)?;
        if w.len() > j.max_degree {
            return Err(ParseError::DegreeExceeded { degree: w.len(), max_degree: j.max_degree }.into());
        }
        let c = coeff_from_json(&ctx, &t.coeff)?;
        if j.rational && !c.is_rational() {
            return Err(ParseError::NotRational(format_word(alphabet, j.n, &w)).into());
        }
        if s.terms.contains_key(&w) {
            return Err(ParseError::Duplicate(format_word(alphabet, j.n, &w)).into());
        }
        s.set(w, c);
    }
    Ok(s)
}

pub fn tensor_to_json_value(t: &TensorSeries) -> serde_json::Value {
    assert_eq!(t.arity(), 2, "only tensor squares have a JSON form");
    let terms = t
        .sorted_terms()
        .into_iter()
        .map(|(parts, c)| TermJson {
            word: None,
            left: Some(word_to_json(&parts[0])),
            right: Some(word_to_json(&parts[1])),
            coeff: c.to_strings(),
        })
        .collect();
    let j = SeriesJson {
        n: t.ctx().n(),
        alphabet: t.alphabet().tag().to_string(),
        max_degree: t.max_degree(),
        rational: t.raw_terms().values().all(CycNum::is_rational),
        terms,
    };
    serde_json::to_value(j).expect("tensor serializes")
}

pub fn serialize_tensor(t: &TensorSeries) -> String {
    serde_json::to_string(&tensor_to_json_value(t)).expect("tensor serializes")
}

pub fn deserialize_tensor(text: &str) -> Result<TensorSeries> {
    let j: SeriesJson = serde_json::from_str(text).map_err(ParseError::Json)?;
    let (ctx, alphabet) = parse_header(&j)?;
    let mut t = TensorSeries::new(&ctx, alphabet, j.max_degree, 2);
    for term in &j.terms {
        let l = word_from_json(term.left.as_deref().unwrap_or(&[]), j.n)?;
        let r = word_from_json(term.right.as_deref().unwrap_or(&[]), j.n)?;
        if l.len() + r.len() > j.max_degree {
            return Err(ParseError::DegreeExceeded { degree: l.len() + r.len(), max_degree: j.max_degree }.into());
        }
        let c = coeff_from_json(&ctx, &term.coeff)?;
        if j.rational && !c.is_rational() {
            return Err(ParseError::NotRational(format_word(alphabet, j.n, &l)).into());
        }
        t.add_term(&[&l, &r], &c);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn ctx(n: u32) -> Ctx {
        CycContext::new(n).unwrap()
    }

    #[test]
    fn concat_of_letters() {
        let c = ctx(3);
        let a = Series::letter(&c, Alphabet::X, 3, 0);
        let b = Series::letter(&c, Alphabet::X, 3, 3);
        let p = a.concat_mul(&b).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.coeff(&[0, 3]).is_one());
    }

    #[test]
    fn pairing_examples() {
        let c = ctx(3);
        let mut f = Series::new(&c, Alphabet::X, 2);
        f.add_term(smallvec![0, 3], &c.one());
        f.add_term(smallvec![3, 0], &c.int(2));
        assert_eq!(f.pairing(&[3, 0]).unwrap(), c.int(2));
        assert!(f.pairing(&[1, 1]).unwrap().is_zero());
        assert!(matches!(f.pairing(&[1, 1, 1]), Err(Error::TruncationExceeded { .. })));
    }

    #[test]
    fn self_commutator_vanishes() {
        let c = ctx(4);
        for seed in 0..10 {
            let f = random_series(&c, Alphabet::X, 4, seed, RandomSpec { rational: false, ..Default::default() });
            assert!(f.commutator(&f).unwrap().is_zero());
        }
    }

    #[test]
    fn product_truncates_to_smaller_degree() {
        let c = ctx(3);
        let f = random_series(&c, Alphabet::X, 4, 1, RandomSpec::default());
        let g = random_series(&c, Alphabet::X, 2, 2, RandomSpec::default());
        let p = f.concat_mul(&g).unwrap();
        assert_eq!(p.max_degree(), 2);
        assert!(p.iter().all(|(w, _)| w.len() <= 2));
    }

    #[test]
    fn mismatched_alphabets() {
        let c = ctx(3);
        let f = Series::letter(&c, Alphabet::X, 2, 1);
        let g = Series::letter(&c, Alphabet::Xt, 2, 1);
        assert!(matches!(f.add(&g), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn random_is_deterministic() {
        let c = ctx(5);
        let spec = RandomSpec { rational: false, ..Default::default() };
        assert_eq!(random_series(&c, Alphabet::Xt, 4, 9, spec), random_series(&c, Alphabet::Xt, 4, 9, spec));
        let zero = random_series(&c, Alphabet::Xt, 4, 9, RandomSpec { density: 0, ..spec });
        assert!(zero.is_zero());
        assert!(random_series(&c, Alphabet::X, 4, 3, RandomSpec::default()).is_rational());
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(5);
        for seed in 0..50 {
            let f = random_series(&c, Alphabet::Xt, 4, seed, RandomSpec { rational: seed % 2 == 0, zero_constant: false, ..Default::default() });
            assert_eq!(deserialize(&serialize(&f)).unwrap(), f);
        }
    }

    #[test]
    fn json_errors_are_distinct() {
        let bad_json = deserialize("{");
        assert!(matches!(bad_json, Err(Error::Parse(ParseError::Json(_)))));
        let bad_alpha = deserialize(r#"{"N":3,"alphabet":"Z","max_degree":2,"rational":true,"terms":[]}"#);
        assert!(matches!(bad_alpha, Err(Error::Parse(ParseError::UnknownAlphabet(_)))));
        let bad_letter = deserialize(r#"{"N":3,"alphabet":"X","max_degree":2,"rational":true,"terms":[{"word":[4],"coeff":["1","0"]}]}"#);
        assert!(matches!(bad_letter, Err(Error::Parse(ParseError::LetterRange { letter: 4, n: 3 }))));
        let bad_len = deserialize(r#"{"N":3,"alphabet":"X","max_degree":2,"rational":true,"terms":[{"word":[1],"coeff":["1"]}]}"#);
        assert!(matches!(bad_len, Err(Error::Parse(ParseError::CoeffLength { expected: 2, got: 1 }))));
        let bad_rat = deserialize(r#"{"N":3,"alphabet":"X","max_degree":2,"rational":true,"terms":[{"word":[1],"coeff":["1","1"]}]}"#);
        assert!(matches!(bad_rat, Err(Error::Parse(ParseError::NotRational(_)))));
    }

    #[test]
    fn spec_example_parses() {
        let f = deserialize(r#"{"N":3,"alphabet":"X","max_degree":4,"rational":true,"terms":[{"word":[0,1],"coeff":["1/2","0"]}]}"#).unwrap();
        assert_eq!(f.coeff(&[0, 1]), f.ctx().ratio(1, 2));
    }

    #[test]
    fn tensor_json_round_trip() {
        let c = ctx(3);
        let mut t = TensorSeries::new(&c, Alphabet::X, 3, 2);
        t.add_term(&[&[0], &[1, 2]], &c.ratio(-3, 7));
        t.add_term(&[&[], &[3]], &c.zeta_power(1));
        let back = deserialize_tensor(&serialize_tensor(&t)).unwrap();
        assert!(back == t);
    }
}
