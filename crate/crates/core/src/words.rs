//! Alphabets, words and the Y-word views.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A word as a sequence of letter codes. Code 0 is the zero letter.
pub type Word = SmallVec<[u8; 8]>;

/// Separator between tensor factors inside a joined key.
pub const SEP: u8 = u8::MAX;

/// Default cap on the number of words a single enumeration may produce.
pub const DEFAULT_WORD_CAP: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `{x0, x_z : z in mu_N}`
    X,
    /// `{x~, x~_a : a in Z/NZ}`
    Xt,
}

impl Alphabet {
    pub fn tag(self) -> &'static str {
        match self {
            Alphabet::X => "X",
            Alphabet::Xt => "Xt",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "X" => Some(Alphabet::X),
            "Xt" => Some(Alphabet::Xt),
            _ => None,
        }
    }

    /// Letter codes in enumeration order.
    ///
    /// For `X` this is `x0 < x_{z^1} < ... < x_{z^N}`; for `Xt` it is
    /// `x~ < x~_0 < x~_1 < ... < x~_{N-1}`, so the class of zero (code `N`)
    /// comes right after `x~`.
    pub fn letter_order(self, n: u32) -> Vec<u8> {
        let n = n as u8;
        match self {
            Alphabet::X => (0..=n).collect(),
            Alphabet::Xt => std::iter::once(0).chain(std::iter::once(n)).chain(1..n).collect(),
        }
    }

    /// Rank of a code inside `letter_order`.
    pub fn letter_rank(self, code: u8, n: u32) -> u8 {
        match self {
            Alphabet::X => code,
            Alphabet::Xt => {
                if code == 0 {
                    0
                } else if code as u32 == n {
                    1
                } else {
                    code + 1
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Zero,
    /// `x_{z^m}`, `m` in `1..=N`
    Root(u8),
    Tilde,
    /// `x~_a`, `a` the canonical residue in `0..N`
    Class(u8),
}

impl Letter {
    pub fn from_code(alphabet: Alphabet, code: u8, n: u32) -> Letter {
        match (alphabet, code) {
            (Alphabet::X, 0) => Letter::Zero,
            (Alphabet::X, m) => Letter::Root(m),
            (Alphabet::Xt, 0) => Letter::Tilde,
            (Alphabet::Xt, m) => Letter::Class(iota(m as i64, n)),
        }
    }

    pub fn code(self, n: u32) -> u8 {
        match self {
            Letter::Zero | Letter::Tilde => 0,
            Letter::Root(m) => m,
            Letter::Class(a) => iota_inv(a, n),
        }
    }
}

/// Canonical residue of `a` modulo `n`, in `0..n`.
pub fn iota(a: i64, n: u32) -> u8 {
    a.rem_euclid(n as i64) as u8
}

/// Representative of a residue in `1..=n`.
pub fn iota_inv(alpha: u8, n: u32) -> u8 {
    if alpha == 0 {
        n as u8
    } else {
        alpha
    }
}

/// Letter code in `1..=n` of the residue class of `a`.
pub fn code_of(a: i64, n: u32) -> u8 {
    iota_inv(iota(a, n), n)
}

pub fn is_valid_code(code: u8, n: u32) -> bool {
    (code as u32) <= n
}

/// All words of degree exactly `d` in enumeration order.
pub fn enumerate_words(alphabet: Alphabet, n: u32, d: usize, cap: u128) -> Result<Vec<Word>> {
    let size = (n as u128 + 1).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::ResourceCap { size, cap });
    }
    let order = alphabet.letter_order(n);
    let mut out: Vec<Word> = vec![Word::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * order.len());
        for w in &out {
            for &c in &order {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// All words of degree at most `d`, grouped by degree.
pub fn enumerate_up_to(alphabet: Alphabet, n: u32, d: usize, cap: u128) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(enumerate_words(alphabet, n, k, cap)?);
    }
    Ok(out)
}

/// Compare words by degree, then lexicographically in letter order.
pub fn cmp_words(alphabet: Alphabet, n: u32, a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        let ra = a.iter().map(|&c| if c == SEP { u8::MAX } else { alphabet.letter_rank(c, n) });
        let rb = b.iter().map(|&c| if c == SEP { u8::MAX } else { alphabet.letter_rank(c, n) });
        ra.cmp(rb)
    })
}

/// A word in the letters `y_{k,m}` (or `y~_{k,a}`), stored as `(k, code)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YWord(pub Vec<(u32, u8)>);

impl YWord {
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&(k, _)| k as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

/// `y_{k,m} -> x0^(k-1) x_m`.
pub fn y_embed(w: &YWord) -> Word {
    let mut out = Word::new();
    for &(k, m) in &w.0 {
        debug_assert!(k >= 1 && m != 0);
        for _ in 1..k {
            out.push(0);
        }
        out.push(m);
    }
    out
}

pub fn is_y_word(w: &[u8]) -> bool {
    w.last().is_none_or(|&c| c != 0)
}

/// Inverse of `y_embed` on words that do not end in the zero letter.
pub fn y_factor(w: &[u8]) -> Result<YWord> {
    if !is_y_word(w) {
        return Err(Error::NotInY(format!("{:?}", w)));
    }
    let mut out = Vec::new();
    let mut k = 1u32;
    for &c in w {
        if c == 0 {
            k += 1;
        } else {
            out.push((k, c));
            k = 1;
        }
    }
    Ok(YWord(out))
}

/// Sum of the representatives in `1..=N` of the class letters, modulo `N`.
pub fn word_weight(w: &[u8], n: u32) -> u8 {
    iota(w.iter().filter(|&&c| c != 0).map(|&c| c as i64).sum(), n)
}

/// Human-readable rendering, e.g. `x0 x2 x3` or `xt xt_1 xt_0`.
pub fn format_word(alphabet: Alphabet, n: u32, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|&c| {
            if c == SEP {
                return "|".to_string();
            }
            match Letter::from_code(alphabet, c, n) {
                Letter::Zero => "x0".to_string(),
                Letter::Root(m) => format!("x{}", m),
                Letter::Tilde => "xt".to_string(),
                Letter::Class(a) => format!("xt_{}", a),
            }
        })
        .collect();
    parts.join(" ")
}

pub struct DisplayWord<'a> {
    pub alphabet: Alphabet,
    pub n: u32,
    pub word: &'a [u8],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self.alphabet, self.n, self.word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_words(Alphabet::X, 3, 0, DEFAULT_WORD_CAP).unwrap(), vec![Word::new()]);
        assert_eq!(enumerate_words(Alphabet::X, 3, 1, DEFAULT_WORD_CAP).unwrap().len(), 4);
        assert_eq!(enumerate_words(Alphabet::Xt, 4, 3, DEFAULT_WORD_CAP).unwrap().len(), 125);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_words(Alphabet::X, 9, 7, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { size: 10_000_000, cap: 1000 }));
    }

    #[test]
    fn enumeration_order_golden() {
        let x: Vec<Word> = enumerate_words(Alphabet::X, 3, 2, DEFAULT_WORD_CAP).unwrap();
        let flat: Vec<Vec<u8>> = x.iter().map(|w| w.to_vec()).collect();
        assert_eq!(flat[..5], [vec![0, 0], vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 0]]);
        let xt = enumerate_words(Alphabet::Xt, 3, 1, DEFAULT_WORD_CAP).unwrap();
        let flat: Vec<u8> = xt.iter().map(|w| w[0]).collect();
        assert_eq!(flat, vec![0, 3, 1, 2]);
        for a in [Alphabet::X, Alphabet::Xt] {
            let ws = enumerate_up_to(a, 3, 3, DEFAULT_WORD_CAP).unwrap();
            for p in ws.windows(2) {
                assert_eq!(cmp_words(a, 3, &p[0], &p[1]), std::cmp::Ordering::Less);
            }
        }
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(y_embed(&YWord(vec![(2, 3)])).to_vec(), vec![0, 3]);
        assert_eq!(y_embed(&YWord(vec![(1, 2)])).to_vec(), vec![2]);
        assert_eq!(y_embed(&YWord(vec![(1, 1), (3, 2)])).to_vec(), vec![1, 0, 0, 2]);
    }

    #[test]
    fn factor_examples() {
        assert_eq!(y_factor(&[0, 0, 3]).unwrap(), YWord(vec![(3, 3)]));
        assert_eq!(y_factor(&[]).unwrap(), YWord::default());
        assert!(matches!(y_factor(&[3, 0]), Err(Error::NotInY(_))));
    }

    #[test]
    fn every_word_is_y_or_ends_in_zero() {
        for w in enumerate_up_to(Alphabet::X, 3, 5, DEFAULT_WORD_CAP).unwrap() {
            match y_factor(&w) {
                Ok(y) => assert_eq!(y_embed(&y), w),
                Err(_) => assert_eq!(w.last(), Some(&0)),
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(word_weight(&[0], 3), 0);
        assert_eq!(word_weight(&[1, 2], 3), 0);
        assert_eq!(word_weight(&[2], 5), 2);
        assert_eq!(word_weight(&[3, 3, 1], 4), 3);
    }

    #[test]
    fn letters_and_codes() {
        assert_eq!(Letter::from_code(Alphabet::Xt, 4, 4), Letter::Class(0));
        assert_eq!(Letter::Class(0).code(4), 4);
        assert_eq!(Letter::Root(2).code(4), 2);
        assert_eq!(code_of(-1, 4), 3);
        assert_eq!(code_of(8, 4), 4);
        let w: Word = smallvec![0, 4, 1];
        assert_eq!(format_word(Alphabet::Xt, 4, &w), "xt xt_0 xt_1");
    }
}
