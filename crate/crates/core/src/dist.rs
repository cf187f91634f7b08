//! Divisor alphabets and the distribution conditions.
//!
//! The letters of `X_d` (resp. `X~_d`) are kept inside the level-N code space:
//! `x_{zeta_N^{dm}}` is code `dm`, and the class `b` of `Z/(N/d)Z` is the code
//! of `nu_d(b) = d b mod N`. Series over the divisor alphabets therefore only
//! use codes that are `0` or multiples of `d`.

use crate::cyclo::divisors;
use crate::error::{Error, Result};
use crate::maps::neg_exp;
use crate::series::Series;
use crate::subst::{ImageTerm, Substitution};
use crate::words::{code_of, format_word, Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisorContext {
    n: u32,
    d: u32,
}

impl DivisorContext {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if d == 0 || n % d != 0 {
            return Err(Error::NotADivisor(d, n));
        }
        Ok(DivisorContext { n, d })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The sub-level `N/d`.
    pub fn sub_level(&self) -> u32 {
        self.n / self.d
    }

    /// `nu_d : Z/(N/d)Z -> dZ/NZ`, on canonical residues.
    pub fn nu(&self, beta: u32) -> u32 {
        (self.d * (beta % self.sub_level())) % self.n
    }

    /// Inverse of `nu_d`; `None` outside `dZ/NZ`.
    pub fn nu_inv(&self, alpha: u32) -> Option<u32> {
        let alpha = alpha % self.n;
        (alpha % self.d == 0).then_some(alpha / self.d)
    }

    /// Level-N letter code of the class `beta` of `Z/(N/d)Z`.
    pub fn sub_code(&self, beta: u32) -> u8 {
        code_of(self.nu(beta) as i64, self.n)
    }

    pub fn is_sub_code(&self, code: u8) -> bool {
        code == 0 || code as u32 % self.d == 0
    }

    fn check_support(&self, f: &Series) -> Result<()> {
        for (w, _) in f.sorted_terms() {
            if !w.iter().all(|&c| self.is_sub_code(c)) {
                return Err(Error::SupportViolation(format!(
                    "{} uses a letter outside the divisor alphabet for d = {}",
                    format_word(f.alphabet(), self.n, w),
                    self.d
                )));
            }
        }
        Ok(())
    }
}

fn check_level(f: &Series, dctx: &DivisorContext) -> Result<()> {
    if f.n() != dctx.n {
        return Err(Error::ContextMismatch(format!("series at level {} with divisor context at level {}", f.n(), dctx.n)));
    }
    Ok(())
}

fn substitute(f: &Series, alphabet: Alphabet, dctx: &DivisorContext, image: impl Fn(u8) -> Vec<ImageTerm>) -> Result<Series> {
    f.expect_alphabet(alphabet)?;
    check_level(f, dctx)?;
    Ok(Substitution::new(dctx.n, image).apply(f, alphabet))
}

fn scaled(code: u8, k: i64) -> ImageTerm {
    ImageTerm { code, num: k, den: 1, exp: 0 }
}

/// `p^d_*`: `x0 -> d x0`, `x_z -> x_{z^d}`.
pub fn map_pd_star(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    let (n, d) = (dctx.n, dctx.d);
    substitute(f, Alphabet::X, dctx, |c| {
        if c == 0 {
            vec![scaled(0, d as i64)]
        } else {
            vec![ImageTerm::letter(code_of(c as i64 * d as i64, n))]
        }
    })
}

/// `i*_d`: keeps `x0` and the letters of `mu_{N/d}`, kills the rest.
pub fn map_id_star(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    let d = dctx.d;
    substitute(f, Alphabet::X, dctx, |c| {
        if c == 0 || c as u32 % d == 0 {
            vec![ImageTerm::letter(c)]
        } else {
            vec![]
        }
    })
}

/// `p~^d_*`: `x~ -> d x~`, `x~_a -> d x~_{nu_d^-1(a)}` for `a` in `dZ/NZ`, else 0.
pub fn map_pd_star_tilde(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    let d = dctx.d;
    substitute(f, Alphabet::Xt, dctx, |c| {
        if c == 0 || c as u32 % d == 0 {
            vec![scaled(c, d as i64)]
        } else {
            vec![]
        }
    })
}

/// `i~*_d`: `x~ -> x~`, `x~_a -> x~_{nu_d^-1(d a)}`.
pub fn map_id_star_tilde(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    let (n, d) = (dctx.n, dctx.d);
    substitute(f, Alphabet::Xt, dctx, |c| {
        if c == 0 {
            vec![ImageTerm::letter(0)]
        } else {
            vec![ImageTerm::letter(code_of(c as i64 * d as i64, n))]
        }
    })
}

/// `F_d : Q(mu_N)<<X~_d>> -> Q(mu_N)<<X_d>>`.
pub fn map_f_d(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    f.expect_alphabet(Alphabet::Xt)?;
    check_level(f, dctx)?;
    dctx.check_support(f)?;
    let (n, d, sub) = (dctx.n, dctx.d, dctx.sub_level());
    let s = Substitution::new(n, |c| {
        if c == 0 {
            return vec![ImageTerm::letter(0)];
        }
        if c as u32 % d != 0 {
            return vec![];
        }
        (1..=sub)
            .map(|m| ImageTerm {
                code: code_of((d * m) as i64, n),
                num: 1,
                den: 1,
                exp: neg_exp(m as i64 * c as i64, n),
            })
            .collect()
    });
    Ok(s.apply(f, Alphabet::X))
}

/// Inverse of `F_d`.
pub fn map_f_d_inv(f: &Series, dctx: &DivisorContext) -> Result<Series> {
    f.expect_alphabet(Alphabet::X)?;
    check_level(f, dctx)?;
    dctx.check_support(f)?;
    let (n, d, sub) = (dctx.n, dctx.d, dctx.sub_level());
    let s = Substitution::new(n, |c| {
        if c == 0 {
            return vec![ImageTerm::letter(0)];
        }
        if c as u32 % d != 0 {
            return vec![];
        }
        (1..=sub)
            .map(|a| ImageTerm {
                code: code_of((d * a) as i64, n),
                num: d as i64,
                den: n as i64,
                exp: ((a as i64 * c as i64).rem_euclid(n as i64)) as u32,
            })
            .collect()
    });
    Ok(s.apply(f, Alphabet::Xt))
}

/// Which coefficient feeds the correction term of the congruent distribution
/// condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DistCorrection {
    /// The letter of the class of zero.
    #[default]
    ClassZeroLetter,
    /// The letter `x~` itself.
    TildeLetter,
    /// The sum of the class letters in `(N/d)Z/NZ`, the image of the classical
    /// correction under `F_d^-1`.
    Transported,
    /// Both forms sum over the kernel `mu_d` of `z -> z^d` instead of
    /// `mu_{N/d}`: the classical correction is `sum_{z^d = 1} (psi | x_z) x1`
    /// and the congruent one is its transport, `(d^2/N) sum_{a in dZ/NZ} c_a`.
    Kernel,
}

impl DistCorrection {
    pub fn tag(self) -> &'static str {
        match self {
            DistCorrection::ClassZeroLetter => "class-zero",
            DistCorrection::TildeLetter => "tilde",
            DistCorrection::Transported => "transported",
            DistCorrection::Kernel => "kernel",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "class-zero" => Some(DistCorrection::ClassZeroLetter),
            "tilde" => Some(DistCorrection::TildeLetter),
            "transported" => Some(DistCorrection::Transported),
            "kernel" => Some(DistCorrection::Kernel),
            _ => None,
        }
    }
}

/// Residual `p^d_*(psi) - i*_d(psi) - sum_{z in mu_{N/d}} (psi | x_z) x1` for a
/// single divisor (`mu_d` under `DistCorrection::Kernel`).
pub fn dmrd_residual(psi: &Series, dctx: &DivisorContext, correction: DistCorrection) -> Result<Series> {
    let (n, d) = (dctx.n, dctx.d);
    let mut r = map_pd_star(psi, dctx)?.sub(&map_id_star(psi, dctx)?)?;
    let step = if correction == DistCorrection::Kernel { n / d } else { d };
    let mut k = psi.ctx().zero();
    for m in (step..=n).step_by(step as usize) {
        k += &psi.coeff(&[m as u8]);
    }
    r.add_term(Word::from_slice(&[n as u8]), &-&k);
    Ok(r)
}

/// Congruent analogue of `dmrd_residual`.
pub fn dmrd_residual_tilde(psi: &Series, dctx: &DivisorContext, correction: DistCorrection) -> Result<Series> {
    let (n, sub) = (dctx.n, dctx.sub_level());
    let mut r = map_pd_star_tilde(psi, dctx)?.sub(&map_id_star_tilde(psi, dctx)?)?;
    let k = match correction {
        DistCorrection::ClassZeroLetter => psi.coeff(&[n as u8]),
        DistCorrection::TildeLetter => psi.coeff(&[0]),
        DistCorrection::Transported => {
            let mut k = psi.ctx().zero();
            for a in (sub..=n).step_by(sub as usize) {
                k += &psi.coeff(&[a as u8]);
            }
            k
        }
        DistCorrection::Kernel => {
            let ctx = psi.ctx();
            let mut k = ctx.zero();
            for a in (dctx.d..=n).step_by(dctx.d as usize) {
                k += &psi.coeff(&[a as u8]);
            }
            ctx.mul(&k, &ctx.ratio((dctx.d * dctx.d) as i64, n as i64))
        }
    };
    let k = -&k;
    for beta in 1..=sub {
        r.add_term(Word::from_slice(&[dctx.sub_code(beta)]), &k);
    }
    Ok(r)
}

/// Residuals for every divisor of N, smallest divisor first.
pub fn dmrd_residuals(psi: &Series, correction: DistCorrection) -> Result<Vec<(u32, Series)>> {
    let n = psi.n();
    divisors(n)
        .into_iter()
        .map(|d| {
            let dctx = DivisorContext::new(n, d)?;
            let r = match psi.alphabet() {
                Alphabet::X => dmrd_residual(psi, &dctx, correction)?,
                Alphabet::Xt => dmrd_residual_tilde(psi, &dctx, correction)?,
            };
            Ok((d, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycContext;
    use crate::series::{random_series, RandomSpec};

    fn mono(ctx: &crate::cyclo::Ctx, a: Alphabet, w: &[u8]) -> Series {
        Series::monomial(ctx, a, 3, w, ctx.one())
    }

    #[test]
    fn nu_is_an_isomorphism() {
        for n in [4u32, 6, 12] {
            for d in divisors(n) {
                let dc = DivisorContext::new(n, d).unwrap();
                let sub = dc.sub_level();
                let mut seen = std::collections::BTreeSet::new();
                for b in 0..sub {
                    assert_eq!(dc.nu_inv(dc.nu(b)), Some(b));
                    seen.insert(dc.nu(b));
                    for b2 in 0..sub {
                        assert_eq!(dc.nu((b + b2) % sub), (dc.nu(b) + dc.nu(b2)) % n);
                    }
                }
                assert_eq!(seen.len() as u32, sub);
                for a in 1..=sub {
                    assert_eq!(dc.nu(a % sub), (d * a) % n);
                }
            }
        }
        assert!(matches!(DivisorContext::new(6, 4), Err(Error::NotADivisor(4, 6))));
    }

    #[test]
    fn classical_examples() {
        let ctx = CycContext::new(4).unwrap();
        let dc = DivisorContext::new(4, 2).unwrap();
        assert_eq!(map_pd_star(&mono(&ctx, Alphabet::X, &[1]), &dc).unwrap(), mono(&ctx, Alphabet::X, &[2]));
        let x0 = mono(&ctx, Alphabet::X, &[0]);
        assert_eq!(map_pd_star(&x0, &dc).unwrap(), x0.scale(&ctx.int(2)));
        assert!(map_id_star(&mono(&ctx, Alphabet::X, &[1]), &dc).unwrap().is_zero());
        assert_eq!(map_id_star(&mono(&ctx, Alphabet::X, &[2]), &dc).unwrap(), mono(&ctx, Alphabet::X, &[2]));
        assert_eq!(map_id_star(&x0, &dc).unwrap(), x0);
        let one = DivisorContext::new(4, 1).unwrap();
        let f = random_series(&ctx, Alphabet::X, 3, 2, RandomSpec::default());
        assert_eq!(map_pd_star(&f, &one).unwrap(), f);
    }

    #[test]
    fn tilde_examples() {
        let ctx = CycContext::new(4).unwrap();
        let dc = DivisorContext::new(4, 2).unwrap();
        let img = map_pd_star_tilde(&mono(&ctx, Alphabet::Xt, &[2]), &dc).unwrap();
        assert_eq!(img, mono(&ctx, Alphabet::Xt, &[dc.sub_code(1)]).scale(&ctx.int(2)));
        assert!(map_pd_star_tilde(&mono(&ctx, Alphabet::Xt, &[1]), &dc).unwrap().is_zero());
        let img = map_id_star_tilde(&mono(&ctx, Alphabet::Xt, &[1]), &dc).unwrap();
        assert_eq!(img, mono(&ctx, Alphabet::Xt, &[dc.sub_code(1)]));
    }

    #[test]
    fn f_d_examples() {
        let ctx = CycContext::new(4).unwrap();
        let dc = DivisorContext::new(4, 2).unwrap();
        assert_eq!(map_f_d(&mono(&ctx, Alphabet::Xt, &[0]), &dc).unwrap(), mono(&ctx, Alphabet::X, &[0]));
        let img = map_f_d(&mono(&ctx, Alphabet::Xt, &[2]), &dc).unwrap();
        let expect = mono(&ctx, Alphabet::X, &[4]).sub(&mono(&ctx, Alphabet::X, &[2])).unwrap();
        assert_eq!(img, expect);
        assert!(matches!(map_f_d(&mono(&ctx, Alphabet::Xt, &[1]), &dc), Err(Error::SupportViolation(_))));
    }

    #[test]
    fn f_d_round_trip() {
        let ctx = CycContext::new(6).unwrap();
        for d in divisors(6) {
            let dc = DivisorContext::new(6, d).unwrap();
            let f = random_series(&ctx, Alphabet::Xt, 3, d as u64, RandomSpec { rational: false, ..Default::default() });
            let f = map_id_star_tilde(&f, &dc).unwrap();
            assert_eq!(map_f_d_inv(&map_f_d(&f, &dc).unwrap(), &dc).unwrap(), f);
        }
    }

    #[test]
    fn zero_is_a_member() {
        let ctx = CycContext::new(4).unwrap();
        for a in [Alphabet::X, Alphabet::Xt] {
            for (_, r) in dmrd_residuals(&Series::new(&ctx, a, 3), DistCorrection::default()).unwrap() {
                assert!(r.is_zero());
            }
        }
    }

    #[test]
    fn unit_divisor_condition() {
        let ctx = CycContext::new(4).unwrap();
        let psi = mono(&ctx, Alphabet::X, &[1]).add(&mono(&ctx, Alphabet::X, &[3])).unwrap();
        let dc = DivisorContext::new(4, 1).unwrap();
        let r = dmrd_residual(&psi, &dc, DistCorrection::default()).unwrap();
        assert_eq!(r, mono(&ctx, Alphabet::X, &[4]).scale(&ctx.int(-2)));
    }
}
