//! Shuffle and harmonic products and their dual coproducts.

use rustc_hash::FxHashMap;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::series::{join_key, split_key, Series, TensorSeries};
use crate::words::{
    cmp_words, code_of, enumerate_up_to, format_word, is_y_word, y_embed, y_factor, Alphabet, Word, YWord,
    DEFAULT_WORD_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    ShuffleX,
    ShuffleXt,
    /// Contracts `y_{k1,m1}` and `y_{k2,m2}` to `y_{k1+k2, m1+m2}`.
    HarmonicY,
    /// Contracts only equal classes: `y~_{k1,a}`, `y~_{k2,a}` to `y~_{k1+k2,a}`.
    HarmonicYt,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] =
        [ProductKind::ShuffleX, ProductKind::ShuffleXt, ProductKind::HarmonicY, ProductKind::HarmonicYt];

    pub fn alphabet(self) -> Alphabet {
        match self {
            ProductKind::ShuffleX | ProductKind::HarmonicY => Alphabet::X,
            ProductKind::ShuffleXt | ProductKind::HarmonicYt => Alphabet::Xt,
        }
    }

    pub fn is_harmonic(self) -> bool {
        matches!(self, ProductKind::HarmonicY | ProductKind::HarmonicYt)
    }

    pub fn shuffle(a: Alphabet) -> Self {
        match a {
            Alphabet::X => ProductKind::ShuffleX,
            Alphabet::Xt => ProductKind::ShuffleXt,
        }
    }

    pub fn harmonic(a: Alphabet) -> Self {
        match a {
            Alphabet::X => ProductKind::HarmonicY,
            Alphabet::Xt => ProductKind::HarmonicYt,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::ShuffleX => "shuffle(X)",
            ProductKind::ShuffleXt => "shuffle(Xt)",
            ProductKind::HarmonicY => "harmonic(Y)",
            ProductKind::HarmonicYt => "harmonic(Yt)",
        }
    }
}

pub type IntPoly = FxHashMap<Word, u64>;

/// Shuffle product of two words, by the first-letter recursion.
pub fn shuffle(u: &[u8], v: &[u8]) -> IntPoly {
    let mut out = IntPoly::default();
    shuffle_into(&mut Word::new(), u, v, &mut out);
    out
}

fn shuffle_into(prefix: &mut Word, u: &[u8], v: &[u8], out: &mut IntPoly) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        *out.entry(w).or_insert(0) += 1;
        return;
    }
    prefix.push(u[0]);
    shuffle_into(prefix, &u[1..], v, out);
    prefix.pop();
    prefix.push(v[0]);
    shuffle_into(prefix, u, &v[1..], out);
    prefix.pop();
}

fn contract(kind: ProductKind, n: u32, a: (u32, u8), b: (u32, u8)) -> Option<(u32, u8)> {
    match kind {
        ProductKind::HarmonicY => Some((a.0 + b.0, code_of(a.1 as i64 + b.1 as i64, n))),
        ProductKind::HarmonicYt => (a.1 == b.1).then_some((a.0 + b.0, a.1)),
        _ => None,
    }
}

/// Harmonic product of two Y-words.
pub fn harmonic(u: &YWord, v: &YWord, kind: ProductKind, n: u32) -> Result<FxHashMap<YWord, u64>> {
    if !kind.is_harmonic() {
        return Err(Error::InvalidParameter(format!("{} is not a harmonic product", kind.name())));
    }
    let mut out = FxHashMap::default();
    harmonic_into(&mut Vec::new(), &u.0, &v.0, kind, n, &mut out);
    Ok(out)
}

fn harmonic_into(
    prefix: &mut Vec<(u32, u8)>,
    u: &[(u32, u8)],
    v: &[(u32, u8)],
    kind: ProductKind,
    n: u32,
    out: &mut FxHashMap<YWord, u64>,
) {
    if u.is_empty() || v.is_empty() {
        let mut w = prefix.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        *out.entry(YWord(w)).or_insert(0) += 1;
        return;
    }
    prefix.push(u[0]);
    harmonic_into(prefix, &u[1..], v, kind, n, out);
    prefix.pop();
    prefix.push(v[0]);
    harmonic_into(prefix, u, &v[1..], kind, n, out);
    prefix.pop();
    if let Some(c) = contract(kind, n, u[0], v[0]) {
        prefix.push(c);
        harmonic_into(prefix, &u[1..], &v[1..], kind, n, out);
        prefix.pop();
    }
}

/// The product `u . v` of two words of the alphabet of `kind`, as words.
pub fn product(kind: ProductKind, n: u32, u: &[u8], v: &[u8]) -> Result<IntPoly> {
    if !kind.is_harmonic() {
        return Ok(shuffle(u, v));
    }
    let h = harmonic(&y_factor(u)?, &y_factor(v)?, kind, n)?;
    Ok(h.into_iter().map(|(y, c)| (y_embed(&y), c)).collect())
}

/// All pairs `(u, v)` with `w` in the support of `u . v`, repeated according
/// to the coefficient of `w` in `u . v`.
pub fn decompositions(kind: ProductKind, n: u32, w: &[u8]) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    if !kind.is_harmonic() {
        let len = w.len();
        for mask in 0u32..(1u32 << len) {
            let mut u = Word::new();
            let mut v = Word::new();
            for (i, &c) in w.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    u.push(c);
                } else {
                    v.push(c);
                }
            }
            out.push((u, v));
        }
        return Ok(out);
    }
    let y = y_factor(w)?;
    let mut u = Vec::new();
    let mut v = Vec::new();
    split_harmonic(&y.0, kind, n, &mut u, &mut v, &mut out);
    Ok(out)
}

fn split_harmonic(
    rest: &[(u32, u8)],
    kind: ProductKind,
    n: u32,
    u: &mut Vec<(u32, u8)>,
    v: &mut Vec<(u32, u8)>,
    out: &mut Vec<(Word, Word)>,
) {
    let Some((&head, tail)) = rest.split_first() else {
        out.push((y_embed(&YWord(u.clone())), y_embed(&YWord(v.clone()))));
        return;
    };
    u.push(head);
    split_harmonic(tail, kind, n, u, v, out);
    u.pop();
    v.push(head);
    split_harmonic(tail, kind, n, u, v, out);
    v.pop();
    let (k, m) = head;
    for k1 in 1..k {
        let k2 = k - k1;
        match kind {
            ProductKind::HarmonicY => {
                for m1 in 1..=n as u8 {
                    let m2 = code_of(m as i64 - m1 as i64, n);
                    u.push((k1, m1));
                    v.push((k2, m2));
                    split_harmonic(tail, kind, n, u, v, out);
                    u.pop();
                    v.pop();
                }
            }
            _ => {
                u.push((k1, m));
                v.push((k2, m));
                split_harmonic(tail, kind, n, u, v, out);
                u.pop();
                v.pop();
            }
        }
    }
}

fn check_kind(f_alphabet: Alphabet, kind: ProductKind) -> Result<()> {
    if f_alphabet != kind.alphabet() {
        return Err(Error::ContextMismatch(format!(
            "{} requires alphabet {}, got {}",
            kind.name(),
            kind.alphabet().tag(),
            f_alphabet.tag()
        )));
    }
    Ok(())
}

fn check_y_support(f: &Series) -> Result<()> {
    let bad = f.sorted_terms().into_iter().find(|(w, _)| !is_y_word(w));
    match bad {
        Some((w, _)) => Err(Error::NotInY(f.format_word(w))),
        None => Ok(()),
    }
}

/// The dual coproduct `sum (f | u . v) u (x) v`, truncated at total degree D.
///
/// Computed by enumerating, for each word of `f`, the pairs whose product
/// contains it.
pub fn coproduct(f: &Series, kind: ProductKind) -> Result<TensorSeries> {
    check_kind(f.alphabet(), kind)?;
    if kind.is_harmonic() {
        check_y_support(f)?;
    }
    let n = f.n();
    let mut t = TensorSeries::new(f.ctx(), f.alphabet(), f.max_degree(), 2);
    for (w, c) in f.iter() {
        for (u, v) in decompositions(kind, n, w)? {
            t.add_term(&[&u, &v], c);
        }
    }
    Ok(t)
}

/// The same coproduct evaluated literally as `(f | u . v)` over every pair of
/// words with `|u| + |v| <= D`.
pub fn coproduct_by_pairing(f: &Series, kind: ProductKind) -> Result<TensorSeries> {
    check_kind(f.alphabet(), kind)?;
    if kind.is_harmonic() {
        check_y_support(f)?;
    }
    let n = f.n();
    let d = f.max_degree();
    let mut words = enumerate_up_to(f.alphabet(), n, d, DEFAULT_WORD_CAP)?;
    if kind.is_harmonic() {
        words.retain(|w| is_y_word(w));
    }
    let mut t = TensorSeries::new(f.ctx(), f.alphabet(), d, 2);
    for u in &words {
        for v in &words {
            if u.len() + v.len() > d {
                continue;
            }
            let mut acc = f.ctx().zero();
            for (w, k) in product(kind, n, u, v)? {
                let c = f.coeff(&w);
                if !c.is_zero() {
                    acc += &c.scale_int(&(k as i64).into());
                }
            }
            t.add_term(&[u, v], &acc);
        }
    }
    Ok(t)
}

/// Apply the coproduct to one tensor factor, raising the arity by one.
pub fn coproduct_on_factor(t: &TensorSeries, kind: ProductKind, slot: usize) -> Result<TensorSeries> {
    check_kind(t.alphabet(), kind)?;
    let n = t.ctx().n();
    let mut out = TensorSeries::new(t.ctx(), t.alphabet(), t.max_degree(), t.arity() + 1);
    for (key, c) in t.raw_terms() {
        let parts = split_key(key);
        for (u, v) in decompositions(kind, n, parts[slot])? {
            let mut new_parts: Vec<&[u8]> = Vec::with_capacity(parts.len() + 1);
            new_parts.extend_from_slice(&parts[..slot]);
            new_parts.push(&u);
            new_parts.push(&v);
            new_parts.extend_from_slice(&parts[slot + 1..]);
            out.add_joined(join_key(&new_parts), c);
        }
    }
    Ok(out)
}

/// Factorwise concatenation product of two tensors of the same arity.
pub fn tensor_concat(a: &TensorSeries, b: &TensorSeries) -> TensorSeries {
    let d = a.max_degree().min(b.max_degree());
    let ctx = a.ctx();
    let mut out = TensorSeries::new(ctx, a.alphabet(), d, a.arity());
    for (ka, ca) in a.raw_terms() {
        let pa = split_key(ka);
        for (kb, cb) in b.raw_terms() {
            let pb = split_key(kb);
            let parts: Vec<Word> = pa
                .iter()
                .zip(&pb)
                .map(|(x, y)| {
                    let mut w = Word::from_slice(x);
                    w.extend_from_slice(y);
                    w
                })
                .collect();
            let refs: Vec<&[u8]> = parts.iter().map(|w| w.as_slice()).collect();
            out.add_joined(join_key(&refs), &ctx.mul(ca, cb));
        }
    }
    out
}

/// `f (x) 1 + 1 (x) f`.
pub fn primitive_tensor(f: &Series) -> TensorSeries {
    let mut t = TensorSeries::new(f.ctx(), f.alphabet(), f.max_degree(), 2);
    for (w, c) in f.iter() {
        t.add_term(&[w, &[]], c);
        t.add_term(&[&[], w], c);
    }
    t
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub left: Word,
    pub right: Word,
    pub value: CycNum,
}

impl Witness {
    pub fn describe(&self, alphabet: Alphabet, n: u32) -> String {
        format!(
            "({} | {}) -> {}",
            format_word(alphabet, n, &self.left),
            format_word(alphabet, n, &self.right),
            self.value
        )
    }
}

/// The part of the coproduct with both factors nonempty; zero iff primitive.
pub fn primitive_defect(f: &Series, kind: ProductKind) -> Result<TensorSeries> {
    let mut t = coproduct(f, kind)?;
    let keep: Vec<(Word, CycNum)> = t
        .raw_terms()
        .iter()
        .filter(|(k, _)| {
            let p = split_key(k);
            !p[0].is_empty() && !p[1].is_empty()
        })
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect();
    t = TensorSeries::new(f.ctx(), f.alphabet(), f.max_degree(), 2);
    for (k, c) in keep {
        t.add_joined(k, &c);
    }
    Ok(t)
}

/// Smallest violating pair of a defect tensor, if any.
pub fn first_witness(defect: &TensorSeries) -> Option<Witness> {
    let (a, n) = (defect.alphabet(), defect.ctx().n());
    defect
        .raw_terms()
        .iter()
        .map(|(k, c)| {
            let p = split_key(k);
            (Word::from_slice(p[0]), Word::from_slice(p[1]), c.clone())
        })
        .min_by(|x, y| {
            (x.0.len() + x.1.len())
                .cmp(&(y.0.len() + y.1.len()))
                .then_with(|| cmp_words(a, n, &x.0, &y.0))
                .then_with(|| cmp_words(a, n, &x.1, &y.1))
        })
        .map(|(left, right, value)| Witness { left, right, value })
}

#[derive(Clone, Debug)]
pub struct Primitivity {
    pub primitive: bool,
    pub witness: Option<Witness>,
}

/// Primitivity of `f`: `(f | u . v) = 0` for all nonempty `u`, `v`.
pub fn is_primitive(f: &Series, kind: ProductKind) -> Result<Primitivity> {
    let defect = primitive_defect(f, kind)?;
    let witness = first_witness(&defect);
    Ok(Primitivity { primitive: witness.is_none(), witness })
}
