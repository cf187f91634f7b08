//! Structure maps between and on the two alphabets.

use std::fmt;
use std::str::FromStr;

use crate::cyclo::{CycContext, GaloisElement};
use crate::error::{Error, Result};
use crate::fault::{self, Fault};
use crate::series::{Series, TensorSeries};
use crate::subst::{ImageTerm, Substitution};
use crate::words::{code_of, is_y_word, word_weight, Alphabet, Word};

/// Kill every word ending in the zero letter. Works on both alphabets.
pub fn proj_y(f: &Series) -> Series {
    f.filter(|w| is_y_word(w))
}

/// `p` (or its inverse) on words over `X`: root exponents become partial sums
/// (resp. consecutive differences).
pub fn map_p(f: &Series, inverse: bool) -> Result<Series> {
    f.expect_alphabet(Alphabet::X)?;
    let n = f.n();
    Ok(f.map_words(|w| p_word(w, n, inverse)))
}

pub fn p_word(w: &[u8], n: u32, inverse: bool) -> Word {
    let mut prev = 0i64;
    w.iter()
        .map(|&c| {
            if c == 0 {
                return 0;
            }
            let m = c as i64;
            if inverse {
                let out = code_of(m - prev, n);
                prev = m;
                out
            } else {
                prev += m;
                code_of(prev, n)
            }
        })
        .collect()
}

/// `q~` (or its inverse) on words over `X~`: classes become differences with
/// the next class letter (resp. suffix sums).
pub fn map_q(f: &Series, inverse: bool) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    let n = f.n();
    let flipped = fault::is(Fault::QtildeSign);
    Ok(f.map_words(|w| q_word(w, n, inverse, flipped)))
}

fn q_word(w: &[u8], n: u32, inverse: bool, flipped: bool) -> Word {
    let mut out = Word::from_slice(w);
    let mut next: Option<i64> = None;
    for i in (0..w.len()).rev() {
        if w[i] == 0 {
            continue;
        }
        let a = w[i] as i64;
        if inverse {
            let s = a + next.unwrap_or(0);
            out[i] = code_of(s, n);
            next = Some(s);
        } else {
            out[i] = match next {
                Some(b) if flipped => code_of(a + b, n),
                Some(b) => code_of(a - b, n),
                None => w[i],
            };
            next = Some(a);
        }
    }
    out
}

/// `t_z` for `z = zeta^m`: `x_eta -> x_{z eta}`.
pub fn t_zeta(f: &Series, m: i64) -> Result<Series> {
    f.expect_alphabet(Alphabet::X)?;
    let n = f.n();
    Ok(f.map_words(|w| w.iter().map(|&c| if c == 0 { 0 } else { code_of(c as i64 + m, n) }).collect()))
}

/// `t~_a`: each word is scaled by `zeta^(a * weight)`.
pub fn t_tilde(f: &Series, a: i64) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    let (ctx, n) = (f.ctx().clone(), f.n());
    let mut out = Series::new(&ctx, Alphabet::Xt, f.max_degree());
    for (w, c) in f.iter() {
        out.add_term(w.clone(), &ctx.mul_zeta(c, a * word_weight(w, n) as i64));
    }
    Ok(out)
}

/// `T~_a = (1/N) sum_{m=1}^N zeta^(-m a) t~_m`, evaluated as written.
pub fn big_t(f: &Series, a: i64) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    let ctx = f.ctx().clone();
    let n = ctx.n() as i64;
    let sign = if fault::is(Fault::TProjectorSign) { 1 } else { -1 };
    let mut acc = Series::new(&ctx, Alphabet::Xt, f.max_degree());
    for m in 1..=n {
        let term = t_tilde(f, m)?.scale(&ctx.zeta_power(sign * m * a));
        acc = acc.add(&term)?;
    }
    Ok(acc.scale(&ctx.ratio(1, n)))
}

/// Keep the words whose weight is `a` modulo N.
pub fn weight_projector(f: &Series, a: i64) -> Series {
    let n = f.n();
    let target = code_of(a, n) as u32 % n;
    f.filter(|w| word_weight(w, n) as u32 == target)
}

fn f_subst(n: u32) -> Substitution {
    Substitution::new(n, |c| {
        if c == 0 {
            vec![ImageTerm::letter(0)]
        } else {
            (1..=n)
                .map(|m| ImageTerm { code: m as u8, num: 1, den: 1, exp: neg_exp(m as i64 * c as i64, n) })
                .collect()
        }
    })
}

fn f_inv_subst(n: u32) -> Substitution {
    Substitution::new(n, |c| {
        if c == 0 {
            vec![ImageTerm::letter(0)]
        } else {
            (1..=n)
                .map(|a| ImageTerm {
                    code: a as u8,
                    num: 1,
                    den: n as i64,
                    exp: ((a as i64 * c as i64).rem_euclid(n as i64)) as u32,
                })
                .collect()
        }
    })
}

pub(crate) fn neg_exp(e: i64, n: u32) -> u32 {
    (-e).rem_euclid(n as i64) as u32
}

/// `F`: `x~ -> x0`, `x~_a -> sum_m zeta^(-m a) x_{zeta^m}`.
pub fn map_f(f: &Series) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    Ok(f_subst(f.n()).apply(f, Alphabet::X))
}

/// `F^-1`: `x0 -> x~`, `x_{zeta^m} -> (1/N) sum_a zeta^(a m) x~_a`.
pub fn map_f_inv(f: &Series) -> Result<Series> {
    f.expect_alphabet(Alphabet::X)?;
    Ok(f_inv_subst(f.n()).apply(f, Alphabet::Xt))
}

fn check_y(f: &Series) -> Result<()> {
    match f.sorted_terms().into_iter().find(|(w, _)| !is_y_word(w)) {
        Some((w, _)) => Err(Error::NotInY(f.format_word(w))),
        None => Ok(()),
    }
}

/// `F` restricted to series supported on `Y~`.
pub fn map_fy(f: &Series) -> Result<Series> {
    check_y(f)?;
    map_f(f)
}

pub fn map_fy_inv(f: &Series) -> Result<Series> {
    check_y(f)?;
    map_f_inv(f)
}

/// `F (x) F` on each tensor factor.
pub fn map_f_tensor(t: &TensorSeries) -> Result<TensorSeries> {
    if t.alphabet() != Alphabet::Xt {
        return Err(Error::ContextMismatch("F expects tensors over Xt".into()));
    }
    Ok(f_subst(t.ctx().n()).apply_tensor(t, Alphabet::X))
}

fn check_unit(ctx: &CycContext, gamma: i64) -> Result<u32> {
    Ok(GaloisElement::new(ctx, gamma)?.k())
}

fn scale_letters(f: &Series, k: u32) -> Series {
    let n = f.n();
    f.map_words(|w| w.iter().map(|&c| if c == 0 { 0 } else { code_of(c as i64 * k as i64, n) }).collect())
}

/// `delta_g`: `x_z -> x_{z^g}` over `X`.
pub fn delta(f: &Series, gamma: i64) -> Result<Series> {
    f.expect_alphabet(Alphabet::X)?;
    let k = check_unit(f.ctx(), gamma)?;
    Ok(scale_letters(f, k))
}

/// `delta~_g`: `x~_a -> x~_{g a}` over `X~`.
pub fn delta_tilde(f: &Series, gamma: i64) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    let k = check_unit(f.ctx(), gamma)?;
    Ok(scale_letters(f, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisVariant {
    /// `sigma (x) delta_g` over `X`.
    Delta,
    /// `sigma (x) delta~_g` over `X~`.
    DeltaTilde,
    /// `sigma (x) id`: acts on coefficients only.
    CoeffOnly,
}

pub fn galois_act(f: &Series, sigma: &GaloisElement, variant: GaloisVariant) -> Result<Series> {
    let ctx = f.ctx().clone();
    let g = f.map_coeffs(|c| ctx.galois_apply(sigma, c));
    match variant {
        GaloisVariant::CoeffOnly => Ok(g),
        GaloisVariant::Delta => delta(&g, sigma.k() as i64),
        GaloisVariant::DeltaTilde => delta_tilde(&g, sigma.k() as i64),
    }
}

/// A structure map selected by name, as used by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapDescriptor {
    ProjY,
    P,
    Pinv,
    Qt,
    Qtinv,
    Tzeta(i64),
    Tta(i64),
    TTa(i64),
    F,
    Finv,
    FY,
    FYinv,
    Delta(i64),
    DeltaTilde(i64),
    GaloisDelta(i64),
    GaloisDeltaTilde(i64),
    SigmaCoeff(i64),
}

impl MapDescriptor {
    pub const NAMES: [&'static str; 17] = [
        "proj-y",
        "p",
        "p-inv",
        "q",
        "q-inv",
        "t-zeta",
        "t-tilde",
        "T-tilde",
        "F",
        "F-inv",
        "FY",
        "FY-inv",
        "delta",
        "delta-tilde",
        "galois-delta",
        "galois-delta-tilde",
        "sigma-coeff",
    ];

    pub fn needs_param(name: &str) -> bool {
        matches!(
            name,
            "t-zeta" | "t-tilde" | "T-tilde" | "delta" | "delta-tilde" | "galois-delta" | "galois-delta-tilde" | "sigma-coeff"
        )
    }

    pub fn parse(name: &str, param: Option<i64>) -> Result<Self> {
        let need = || param.ok_or_else(|| Error::InvalidParameter(format!("map {} needs --param", name)));
        Ok(match name {
            "proj-y" => MapDescriptor::ProjY,
            "p" => MapDescriptor::P,
            "p-inv" => MapDescriptor::Pinv,
            "q" => MapDescriptor::Qt,
            "q-inv" => MapDescriptor::Qtinv,
            "t-zeta" => MapDescriptor::Tzeta(need()?),
            "t-tilde" => MapDescriptor::Tta(need()?),
            "T-tilde" => MapDescriptor::TTa(need()?),
            "F" => MapDescriptor::F,
            "F-inv" => MapDescriptor::Finv,
            "FY" => MapDescriptor::FY,
            "FY-inv" => MapDescriptor::FYinv,
            "delta" => MapDescriptor::Delta(need()?),
            "delta-tilde" => MapDescriptor::DeltaTilde(need()?),
            "galois-delta" => MapDescriptor::GaloisDelta(need()?),
            "galois-delta-tilde" => MapDescriptor::GaloisDeltaTilde(need()?),
            "sigma-coeff" => MapDescriptor::SigmaCoeff(need()?),
            _ => return Err(Error::InvalidParameter(format!("unknown map {}", name))),
        })
    }

    fn check_range(&self, n: u32) -> Result<()> {
        let p = match *self {
            MapDescriptor::Tzeta(p) | MapDescriptor::Tta(p) | MapDescriptor::TTa(p) => p,
            _ => return Ok(()),
        };
        if p < 1 || p > n as i64 {
            return Err(Error::InvalidParameter(format!("parameter {} outside 1..={}", p, n)));
        }
        Ok(())
    }

    pub fn apply(&self, f: &Series) -> Result<Series> {
        self.check_range(f.n())?;
        let ctx = f.ctx();
        match *self {
            MapDescriptor::ProjY => Ok(proj_y(f)),
            MapDescriptor::P => map_p(f, false),
            MapDescriptor::Pinv => map_p(f, true),
            MapDescriptor::Qt => map_q(f, false),
            MapDescriptor::Qtinv => map_q(f, true),
            MapDescriptor::Tzeta(m) => t_zeta(f, m),
            MapDescriptor::Tta(a) => t_tilde(f, a),
            MapDescriptor::TTa(a) => big_t(f, a),
            MapDescriptor::F => map_f(f),
            MapDescriptor::Finv => map_f_inv(f),
            MapDescriptor::FY => map_fy(f),
            MapDescriptor::FYinv => map_fy_inv(f),
            MapDescriptor::Delta(g) => delta(f, g),
            MapDescriptor::DeltaTilde(g) => delta_tilde(f, g),
            MapDescriptor::GaloisDelta(k) => galois_act(f, &GaloisElement::new(ctx, k)?, GaloisVariant::Delta),
            MapDescriptor::GaloisDeltaTilde(k) => {
                galois_act(f, &GaloisElement::new(ctx, k)?, GaloisVariant::DeltaTilde)
            }
            MapDescriptor::SigmaCoeff(k) => galois_act(f, &GaloisElement::new(ctx, k)?, GaloisVariant::CoeffOnly),
        }
    }
}

impl FromStr for MapDescriptor {
    type Err = Error;

    /// Accepts `name` or `name:param`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, p)) => {
                let p = p.parse().map_err(|_| Error::InvalidParameter(format!("bad parameter {}", p)))?;
                MapDescriptor::parse(name, Some(p))
            }
            None => MapDescriptor::parse(s, None),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MapDescriptor::ProjY => write!(f, "proj-y"),
            MapDescriptor::P => write!(f, "p"),
            MapDescriptor::Pinv => write!(f, "p-inv"),
            MapDescriptor::Qt => write!(f, "q"),
            MapDescriptor::Qtinv => write!(f, "q-inv"),
            MapDescriptor::Tzeta(m) => write!(f, "t-zeta:{}", m),
            MapDescriptor::Tta(a) => write!(f, "t-tilde:{}", a),
            MapDescriptor::TTa(a) => write!(f, "T-tilde:{}", a),
            MapDescriptor::F => write!(f, "F"),
            MapDescriptor::Finv => write!(f, "F-inv"),
            MapDescriptor::FY => write!(f, "FY"),
            MapDescriptor::FYinv => write!(f, "FY-inv"),
            MapDescriptor::Delta(g) => write!(f, "delta:{}", g),
            MapDescriptor::DeltaTilde(g) => write!(f, "delta-tilde:{}", g),
            MapDescriptor::GaloisDelta(k) => write!(f, "galois-delta:{}", k),
            MapDescriptor::GaloisDeltaTilde(k) => write!(f, "galois-delta-tilde:{}", k),
            MapDescriptor::SigmaCoeff(k) => write!(f, "sigma-coeff:{}", k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycContext;
    use crate::series::{random_series, RandomSpec};

    fn mono(ctx: &crate::cyclo::Ctx, a: Alphabet, w: &[u8]) -> Series {
        Series::monomial(ctx, a, 4, w, ctx.one())
    }

    #[test]
    fn projection_examples() {
        let ctx = CycContext::new(3).unwrap();
        assert!(proj_y(&mono(&ctx, Alphabet::X, &[3, 0])).is_zero());
        let f = mono(&ctx, Alphabet::X, &[0, 3]);
        assert_eq!(proj_y(&f), f);
        let g = Series::one(&ctx, Alphabet::X, 4).add(&Series::letter(&ctx, Alphabet::X, 4, 0)).unwrap();
        assert_eq!(proj_y(&g), Series::one(&ctx, Alphabet::X, 4));
    }

    #[test]
    fn p_examples() {
        let n = 5;
        assert_eq!(p_word(&[2, 1], n, false).to_vec(), vec![2, 3]);
        assert_eq!(p_word(&[0], n, false).to_vec(), vec![0]);
        assert_eq!(p_word(&[2, 0, 1, 0], n, false).to_vec(), vec![2, 0, 3, 0]);
        assert_eq!(p_word(&[2, 3], n, true).to_vec(), vec![2, 1]);
        assert_eq!(p_word(&[4, 1], n, true).to_vec(), vec![4, 2]);
    }

    #[test]
    fn q_examples() {
        let n = 5;
        assert_eq!(q_word(&[3, 1], n, false, false).to_vec(), vec![2, 1]);
        assert_eq!(q_word(&[0], n, false, false).to_vec(), vec![0]);
        assert_eq!(q_word(&[1, 0, 3], n, false, false).to_vec(), vec![3, 0, 3]);
        assert_eq!(q_word(&[2, 4], n, true, false).to_vec(), vec![1, 4]);
    }

    #[test]
    fn p_and_q_round_trip() {
        for n in [3u32, 4] {
            for w in crate::words::enumerate_up_to(Alphabet::X, n, 4, 1 << 20).unwrap() {
                assert_eq!(p_word(&p_word(&w, n, true), n, false), w);
                assert_eq!(p_word(&p_word(&w, n, false), n, true), w);
                assert_eq!(q_word(&q_word(&w, n, true, false), n, false, false), w);
                assert_eq!(q_word(&q_word(&w, n, false, false), n, true, false), w);
            }
        }
    }

    #[test]
    fn t_examples() {
        let ctx = CycContext::new(4).unwrap();
        let f = mono(&ctx, Alphabet::X, &[3, 0]);
        assert_eq!(t_zeta(&f, 2).unwrap(), mono(&ctx, Alphabet::X, &[1, 0]));
        let g = mono(&ctx, Alphabet::Xt, &[3]);
        let expect = Series::monomial(&ctx, Alphabet::Xt, 4, &[3], ctx.zeta_power(3));
        assert_eq!(t_tilde(&g, 1).unwrap(), expect);
        let h = mono(&ctx, Alphabet::Xt, &[0]);
        assert_eq!(t_tilde(&h, 3).unwrap(), h);
    }

    #[test]
    fn big_t_examples() {
        let ctx = CycContext::new(3).unwrap();
        let f = mono(&ctx, Alphabet::Xt, &[1]);
        assert_eq!(big_t(&f, 1).unwrap(), f);
        assert!(big_t(&f, 2).unwrap().is_zero());
        let r = random_series(&ctx, Alphabet::Xt, 3, 9, RandomSpec::default());
        for a in 1..=3 {
            let t = big_t(&r, a).unwrap();
            assert!(t.is_rational());
            assert_eq!(t, weight_projector(&r, a));
        }
    }

    #[test]
    fn f_examples() {
        let ctx = CycContext::new(3).unwrap();
        assert_eq!(map_f(&mono(&ctx, Alphabet::Xt, &[0])).unwrap(), mono(&ctx, Alphabet::X, &[0]));
        let img = map_f(&mono(&ctx, Alphabet::Xt, &[3])).unwrap();
        let mut expect = Series::new(&ctx, Alphabet::X, 4);
        for m in 1..=3 {
            expect.add_term(Word::from_slice(&[m]), &ctx.one());
        }
        assert_eq!(img, expect);
        let img = map_f(&mono(&ctx, Alphabet::Xt, &[1])).unwrap();
        assert_eq!(img.coeff(&[1]), ctx.zeta_power(-1));
    }

    #[test]
    fn f_round_trip() {
        for n in [3u32, 4, 5] {
            let ctx = CycContext::new(n).unwrap();
            for seed in 0..5 {
                let spec = RandomSpec { rational: false, ..Default::default() };
                let f = random_series(&ctx, Alphabet::Xt, 4, seed, spec);
                assert_eq!(map_f_inv(&map_f(&f).unwrap()).unwrap(), f);
                let g = random_series(&ctx, Alphabet::X, 4, seed, spec);
                assert_eq!(map_f(&map_f_inv(&g).unwrap()).unwrap(), g);
            }
        }
    }

    #[test]
    fn fy_requires_y() {
        let ctx = CycContext::new(3).unwrap();
        assert!(matches!(map_fy(&mono(&ctx, Alphabet::Xt, &[1, 0])), Err(Error::NotInY(_))));
        assert!(map_fy(&mono(&ctx, Alphabet::Xt, &[0, 1])).is_ok());
    }

    #[test]
    fn delta_examples() {
        let ctx = CycContext::new(5).unwrap();
        let f = random_series(&ctx, Alphabet::X, 3, 1, RandomSpec::default());
        assert_eq!(delta(&f, 1).unwrap(), f);
        assert_eq!(delta(&delta(&f, 3).unwrap(), 2).unwrap(), f);
        assert_eq!(delta_tilde(&mono(&ctx, Alphabet::Xt, &[2]), 3).unwrap(), mono(&ctx, Alphabet::Xt, &[1]));
        assert!(matches!(delta(&f, 5), Err(Error::NotAUnit(5, 5))));
    }

    #[test]
    fn galois_on_letter() {
        let ctx = CycContext::new(3).unwrap();
        let sigma = GaloisElement::new(&ctx, 2).unwrap();
        let r = ctx.from_coeffs(&[num_rational::BigRational::from_integer(2.into()), num_rational::BigRational::from_integer(5.into())]).unwrap();
        let f = Series::monomial(&ctx, Alphabet::Xt, 3, &[1], r.clone());
        let g = galois_act(&f, &sigma, GaloisVariant::DeltaTilde).unwrap();
        assert_eq!(g, Series::monomial(&ctx, Alphabet::Xt, 3, &[2], ctx.galois_apply(&sigma, &r)));
    }

    #[test]
    fn descriptors_parse() {
        for name in MapDescriptor::NAMES {
            let d = MapDescriptor::parse(name, Some(1)).unwrap();
            let back: MapDescriptor = d.to_string().parse().unwrap();
            assert_eq!(back, d);
        }
        assert!(MapDescriptor::parse("t-zeta", None).is_err());
        assert!("bogus".parse::<MapDescriptor>().is_err());
    }
}
