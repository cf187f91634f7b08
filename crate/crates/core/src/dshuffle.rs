//! Double shuffle conditions, derivations, brackets, graded pieces and Galois
//! descent for the classical and congruent forms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::cyclo::{CycContext, CycNum, Ctx, GaloisElement};
use crate::dist::{dmrd_residuals, DistCorrection};
use crate::error::{Error, Result};
use crate::fault::{self, Fault};
use crate::linalg::{invariant_subspace, semilinear_matrix, Matrix, Rationals, SparseEliminator};
use crate::maps::{big_t, galois_act, map_f, map_f_inv, map_p, map_q, proj_y, t_zeta, GaloisVariant};
use crate::products::{first_witness, primitive_defect, ProductKind, Witness};
use crate::series::{split_key, Series, TensorSeries};
use crate::words::{code_of, enumerate_words, format_word, Alphabet, Word, DEFAULT_WORD_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// Alphabet `X`.
    Classical,
    /// Alphabet `X~`.
    Congruent,
}

impl Form {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Form::Classical => Alphabet::X,
            Form::Congruent => Alphabet::Xt,
        }
    }

    pub fn of(a: Alphabet) -> Form {
        match a {
            Alphabet::X => Form::Classical,
            Alphabet::Xt => Form::Congruent,
        }
    }

    pub fn other(self) -> Form {
        match self {
            Form::Classical => Form::Congruent,
            Form::Congruent => Form::Classical,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DmrVariant {
    DmrMuN,
    DmrN,
    DmrdMuN,
    DmrdN,
}

impl DmrVariant {
    pub const ALL: [DmrVariant; 4] = [DmrVariant::DmrMuN, DmrVariant::DmrN, DmrVariant::DmrdMuN, DmrVariant::DmrdN];

    pub fn form(self) -> Form {
        match self {
            DmrVariant::DmrMuN | DmrVariant::DmrdMuN => Form::Classical,
            DmrVariant::DmrN | DmrVariant::DmrdN => Form::Congruent,
        }
    }

    pub fn with_distribution(self) -> bool {
        matches!(self, DmrVariant::DmrdMuN | DmrVariant::DmrdN)
    }

    pub fn base(form: Form) -> Self {
        match form {
            Form::Classical => DmrVariant::DmrMuN,
            Form::Congruent => DmrVariant::DmrN,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            DmrVariant::DmrMuN => "dmr0-muN",
            DmrVariant::DmrN => "dmr0-N",
            DmrVariant::DmrdMuN => "dmrd0-muN",
            DmrVariant::DmrdN => "dmrd0-N",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        DmrVariant::ALL.into_iter().find(|v| v.tag() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    QmuN,
}

impl FieldTag {
    pub fn tag(self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::QmuN => "QmuN",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "Q" => Some(FieldTag::Q),
            "QmuN" => Some(FieldTag::QmuN),
            _ => None,
        }
    }
}

/// Normalization of the correction series in the congruent `psi_*`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StarNormalization {
    /// `(-1)^(n-1) / (n N^n)`: the value for which `F_Y` carries the congruent
    /// series onto the classical one.
    #[default]
    Consistent,
    /// `(-1)^(n-1) / (n N^(n+1))`.
    Printed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DmrOptions {
    pub star: StarNormalization,
    pub correction: DistCorrection,
}

/// `psi_* = pi_Y p^-1(psi) + sum_{n>=2} (-1)^(n-1)/n (psi | x0^(n-1) x1) y_{1,1}^n`.
pub fn psi_star(psi: &Series) -> Result<Series> {
    psi.expect_alphabet(Alphabet::X)?;
    let (ctx, n, dd) = (psi.ctx().clone(), psi.n(), psi.max_degree());
    let mut out = proj_y(&map_p(psi, true)?);
    for k in 2..=dd {
        let mut w: Word = std::iter::repeat(0).take(k - 1).collect();
        w.push(n as u8);
        let c = psi.coeff(&w);
        if c.is_zero() {
            continue;
        }
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let coef = ctx.mul(&c, &ctx.ratio(sign, k as i64));
        out.add_term(std::iter::repeat(n as u8).take(k).collect(), &coef);
    }
    Ok(out)
}

/// Congruent `psi_*`: `pi_Y~ q~^-1(psi)` plus, for each `n >= 2`, the sum of
/// the coefficients of `x~^(n-1) x~_a` over `a`, times a normalizing constant,
/// times the sum of all `N^n` words in the class letters.
pub fn psi_star_tilde(psi: &Series, norm: StarNormalization) -> Result<Series> {
    psi.expect_alphabet(Alphabet::Xt)?;
    let (ctx, n, dd) = (psi.ctx().clone(), psi.n(), psi.max_degree());
    let mut out = proj_y(&map_q(psi, true)?);
    for k in 2..=dd {
        let mut w: Word = std::iter::repeat(0).take(k - 1).collect();
        w.push(0);
        let mut c = ctx.zero();
        for a in 1..=n as u8 {
            w[k - 1] = a;
            c += &psi.coeff(&w);
        }
        if c.is_zero() {
            continue;
        }
        let extra = match norm {
            StarNormalization::Consistent => 0,
            StarNormalization::Printed => 1,
        };
        let mut sign: i64 = if k % 2 == 0 { -1 } else { 1 };
        if fault::is(Fault::StarCorrectionSign) {
            sign = -sign;
        }
        let den = BigInt::from(k) * BigInt::from(n).pow((k + extra) as u32);
        let coef = ctx.mul(&c, &ctx.rational(&BigRational::new(BigInt::from(sign), den)));
        for word in enumerate_words(Alphabet::Xt, n, k, DEFAULT_WORD_CAP)? {
            if word.iter().all(|&l| l != 0) {
                out.add_term(word, &coef);
            }
        }
    }
    Ok(out)
}

pub fn star(psi: &Series, norm: StarNormalization) -> Result<Series> {
    match psi.alphabet() {
        Alphabet::X => psi_star(psi),
        Alphabet::Xt => psi_star_tilde(psi, norm),
    }
}

/// Extend letter images to a derivation and apply it to `target`.
fn apply_derivation(target: &Series, images: &[Series], max_degree: usize) -> Result<Series> {
    let ctx = target.ctx().clone();
    let mut out = Series::new(&ctx, target.alphabet(), max_degree);
    for (w, c) in target.iter() {
        for (i, &l) in w.iter().enumerate() {
            let img = &images[l as usize];
            for (v, b) in img.iter() {
                if w.len() - 1 + v.len() > max_degree {
                    continue;
                }
                let mut word = Word::from_slice(&w[..i]);
                word.extend_from_slice(v);
                word.extend_from_slice(&w[i + 1..]);
                out.add_term(word, &ctx.mul(c, b));
            }
        }
    }
    Ok(out)
}

/// `d_psi`: `x0 -> 0`, `x_z -> [x_z, t_z(psi)]`.
pub fn derivation(psi: &Series, target: &Series) -> Result<Series> {
    psi.expect_alphabet(Alphabet::X)?;
    psi.check_compatible(target)?;
    let dd = psi.max_degree().min(target.max_degree());
    let (ctx, n) = (psi.ctx().clone(), psi.n());
    let psi = psi.truncate(dd);
    let mut images = vec![Series::new(&ctx, Alphabet::X, dd)];
    for m in 1..=n as u8 {
        let x = Series::letter(&ctx, Alphabet::X, dd, m);
        images.push(x.commutator(&t_zeta(&psi, m as i64)?)?);
    }
    apply_derivation(target, &images, dd)
}

/// `d~_psi`: `x~ -> 0`, `x~_a -> T~_a([sum_b x~_b, psi])`.
pub fn derivation_tilde(psi: &Series, target: &Series) -> Result<Series> {
    psi.expect_alphabet(Alphabet::Xt)?;
    psi.check_compatible(target)?;
    let dd = psi.max_degree().min(target.max_degree());
    let (ctx, n) = (psi.ctx().clone(), psi.n());
    let psi = psi.truncate(dd);
    let mut sum = Series::new(&ctx, Alphabet::Xt, dd);
    for b in 1..=n as u8 {
        sum.add_term(Word::from_slice(&[b]), &ctx.one());
    }
    let comm = sum.commutator(&psi)?;
    let mut images = vec![Series::new(&ctx, Alphabet::Xt, dd)];
    for a in 1..=n as i64 {
        images.push(big_t(&comm, a)?);
    }
    apply_derivation(target, &images, dd)
}

pub fn derive(psi: &Series, target: &Series) -> Result<Series> {
    match psi.alphabet() {
        Alphabet::X => derivation(psi, target),
        Alphabet::Xt => derivation_tilde(psi, target),
    }
}

/// `<f, g> = d_f(g) - d_g(f) + [f, g]`, with the derivation of the form of
/// the inputs.
pub fn bracket(f: &Series, g: &Series) -> Result<Series> {
    derive(f, g)?.sub(&derive(g, f)?)?.add(&f.commutator(g)?)
}

/// One coordinate of the linear system expressing membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResidualKey {
    Constant,
    /// `(psi | x0)` or `(psi | x~)`.
    ZeroLetter,
    /// `(psi | x1)` or `sum_a (psi | x~_a)`.
    UnitLetter,
    Shuffle(Word),
    Symmetry(u8),
    Harmonic(Word),
    Distribution(u32, Word),
}

/// Everything needed to decide membership, before reduction to a verdict.
pub struct Evaluation {
    pub constant: CycNum,
    pub zero_letter: CycNum,
    pub unit_letter: CycNum,
    pub shuffle_defect: TensorSeries,
    /// `(psi | x_m - x_{-m})` for `m = 1..=N`.
    pub symmetry: Vec<CycNum>,
    pub star: Series,
    pub harmonic_defect: TensorSeries,
    pub distribution: Vec<(u32, Series)>,
}

pub fn evaluate(psi: &Series, variant: DmrVariant, opts: &DmrOptions) -> Result<Evaluation> {
    let form = variant.form();
    psi.expect_alphabet(form.alphabet())?;
    let (ctx, n) = (psi.ctx().clone(), psi.n());
    let unit_letter = match form {
        Form::Classical => psi.coeff(&[n as u8]),
        Form::Congruent => {
            let mut s = ctx.zero();
            for a in 1..=n as u8 {
                s += &psi.coeff(&[a]);
            }
            s
        }
    };
    let symmetry = (1..=n as i64).map(|m| &psi.coeff(&[m as u8]) - &psi.coeff(&[code_of(-m, n)])).collect();
    let star = star(psi, opts.star)?;
    let harmonic_defect = primitive_defect(&star, ProductKind::harmonic(form.alphabet()))?;
    let distribution = if variant.with_distribution() { dmrd_residuals(psi, opts.correction)? } else { Vec::new() };
    Ok(Evaluation {
        constant: psi.constant_term(),
        zero_letter: psi.coeff(&[0]),
        unit_letter,
        shuffle_defect: primitive_defect(psi, ProductKind::shuffle(form.alphabet()))?,
        symmetry,
        star,
        harmonic_defect,
        distribution,
    })
}

impl Evaluation {
    /// Flatten into nonzero coordinates.
    pub fn residuals(&self) -> Vec<(ResidualKey, CycNum)> {
        let mut out = Vec::new();
        let mut push = |k: ResidualKey, v: &CycNum| {
            if !v.is_zero() {
                out.push((k, v.clone()));
            }
        };
        push(ResidualKey::Constant, &self.constant);
        push(ResidualKey::ZeroLetter, &self.zero_letter);
        push(ResidualKey::UnitLetter, &self.unit_letter);
        for (k, v) in self.shuffle_defect.raw_terms() {
            push(ResidualKey::Shuffle(k.clone()), v);
        }
        for (m, v) in self.symmetry.iter().enumerate() {
            push(ResidualKey::Symmetry(m as u8 + 1), v);
        }
        for (k, v) in self.harmonic_defect.raw_terms() {
            push(ResidualKey::Harmonic(k.clone()), v);
        }
        for (d, r) in &self.distribution {
            for (w, v) in r.iter() {
                push(ResidualKey::Distribution(*d, w.clone()), v);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct DivisorResidual {
    pub d: u32,
    pub nonzero_terms: usize,
    pub first: Option<(Word, CycNum)>,
}

/// Per-condition outcome of a membership test.
#[derive(Clone, Debug)]
pub struct DmrReport {
    pub variant: DmrVariant,
    pub n: u32,
    pub max_degree: usize,
    pub constant_term: CycNum,
    pub zero_letter: CycNum,
    pub unit_letter: CycNum,
    pub shuffle_witness: Option<Witness>,
    pub shuffle_violations: usize,
    pub symmetry: Vec<CycNum>,
    pub harmonic_witness: Option<Witness>,
    pub harmonic_violations: usize,
    pub distribution: Vec<DivisorResidual>,
    pub warnings: Vec<String>,
}

impl DmrReport {
    pub fn cond_i(&self) -> bool {
        self.zero_letter.is_zero() && self.unit_letter.is_zero()
    }

    pub fn cond_ii(&self) -> bool {
        self.shuffle_witness.is_none()
    }

    pub fn cond_iii(&self) -> bool {
        self.symmetry.iter().all(CycNum::is_zero)
    }

    pub fn cond_iv(&self) -> bool {
        self.harmonic_witness.is_none()
    }

    pub fn cond_dist(&self) -> bool {
        self.distribution.iter().all(|r| r.nonzero_terms == 0)
    }

    /// `[constant, (i), (ii), (iii), (iv), distribution]`.
    pub fn verdicts(&self) -> [bool; 6] {
        [self.constant_term.is_zero(), self.cond_i(), self.cond_ii(), self.cond_iii(), self.cond_iv(), self.cond_dist()]
    }

    pub fn is_member(&self) -> bool {
        self.verdicts().iter().all(|&b| b)
    }

    fn alphabet(&self) -> Alphabet {
        self.variant.form().alphabet()
    }

    pub fn to_json(&self) -> Value {
        let (a, n) = (self.alphabet(), self.n);
        let wit = |w: &Option<Witness>| match w {
            None => Value::Null,
            Some(w) => json!({
                "left": w.left.iter().map(|&c| c as i64).collect::<Vec<_>>(),
                "right": w.right.iter().map(|&c| c as i64).collect::<Vec<_>>(),
                "value": w.value.to_strings(),
                "display": w.describe(a, n),
            }),
        };
        json!({
            "variant": self.variant.tag(),
            "N": n,
            "max_degree": self.max_degree,
            "member": self.is_member(),
            "constant_term": self.constant_term.to_strings(),
            "i": {
                "pass": self.cond_i(),
                "zero_letter": self.zero_letter.to_strings(),
                "unit_letter": self.unit_letter.to_strings(),
            },
            "ii": { "pass": self.cond_ii(), "violations": self.shuffle_violations, "witness": wit(&self.shuffle_witness) },
            "iii": { "pass": self.cond_iii(), "values": self.symmetry.iter().map(CycNum::to_strings).collect::<Vec<_>>() },
            "iv": { "pass": self.cond_iv(), "violations": self.harmonic_violations, "witness": wit(&self.harmonic_witness) },
            "distribution": self.distribution.iter().map(|r| json!({
                "d": r.d,
                "nonzero_terms": r.nonzero_terms,
                "first": r.first.as_ref().map(|(w, c)| json!({"word": format_word(a, n, w), "value": c.to_strings()})),
            })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

impl fmt::Display for DmrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, n) = (self.alphabet(), self.n);
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "{} at N = {}, degree <= {}: {}", self.variant.tag(), n, self.max_degree, if self.is_member() { "member" } else { "not a member" })?;
        writeln!(f, "  constant term        {} ({})", mark(self.constant_term.is_zero()), self.constant_term)?;
        writeln!(f, "  (i) letters          {} ({}, {})", mark(self.cond_i()), self.zero_letter, self.unit_letter)?;
        match &self.shuffle_witness {
            None => writeln!(f, "  (ii) shuffle         ok")?,
            Some(w) => writeln!(f, "  (ii) shuffle         FAIL, {} violations, first {}", self.shuffle_violations, w.describe(a, n))?,
        }
        let bad: Vec<String> = self
            .symmetry
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| format!("m={}: {}", m + 1, v))
            .collect();
        writeln!(f, "  (iii) symmetry       {}{}", mark(bad.is_empty()), if bad.is_empty() { String::new() } else { format!(" [{}]", bad.join(", ")) })?;
        match &self.harmonic_witness {
            None => writeln!(f, "  (iv) harmonic        ok")?,
            Some(w) => writeln!(f, "  (iv) harmonic        FAIL, {} violations, first {}", self.harmonic_violations, w.describe(a, n))?,
        }
        for r in &self.distribution {
            match &r.first {
                None => writeln!(f, "  distribution d={}    ok", r.d)?,
                Some((w, c)) => writeln!(f, "  distribution d={}    FAIL, {} terms, first {} -> {}", r.d, r.nonzero_terms, format_word(a, n, w), c)?,
            }
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {}", w)?;
        }
        Ok(())
    }
}

/// Higher-depth symmetry identities of the classical `psi_*`, reported but not
/// required.
fn symmetry_warnings(star: &Series) -> Vec<String> {
    let (n, dd) = (star.n(), star.max_degree());
    let mut out = Vec::new();
    for k in 2..=dd {
        for m in 1..=n as i64 {
            let mut w: Word = std::iter::repeat(0).take(k - 1).collect();
            w.push(m as u8);
            let mut w2 = w.clone();
            w2[k - 1] = code_of(-m, n);
            let lhs = star.coeff(&w);
            let rhs = star.coeff(&w2);
            let rhs = if k % 2 == 0 { -&rhs } else { rhs };
            if lhs != rhs {
                out.push(format!(
                    "psi_* symmetry fails at {}: {} vs {}",
                    format_word(Alphabet::X, n, &w),
                    lhs,
                    rhs
                ));
            }
        }
    }
    out
}

pub fn dmr_check(psi: &Series, variant: DmrVariant, opts: &DmrOptions) -> Result<DmrReport> {
    let ev = evaluate(psi, variant, opts)?;
    let warnings = match variant.form() {
        Form::Classical => symmetry_warnings(&ev.star),
        Form::Congruent => Vec::new(),
    };
    let (a, n) = (psi.alphabet(), psi.n());
    let distribution = ev
        .distribution
        .iter()
        .map(|(d, r)| DivisorResidual {
            d: *d,
            nonzero_terms: r.len(),
            first: r.sorted_terms().first().map(|(w, c)| ((*w).clone(), (*c).clone())),
        })
        .collect();
    let _ = (a, n);
    Ok(DmrReport {
        variant,
        n: psi.n(),
        max_degree: psi.max_degree(),
        constant_term: ev.constant.clone(),
        zero_letter: ev.zero_letter.clone(),
        unit_letter: ev.unit_letter.clone(),
        shuffle_witness: first_witness(&ev.shuffle_defect),
        shuffle_violations: ev.shuffle_defect.len(),
        symmetry: ev.symmetry.clone(),
        harmonic_witness: first_witness(&ev.harmonic_defect),
        harmonic_violations: ev.harmonic_defect.len(),
        distribution,
        warnings,
    })
}

/// A basis of a graded piece, each vector stored as a homogeneous series.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub variant: DmrVariant,
    pub field: FieldTag,
    pub degree: usize,
    pub words: Vec<Word>,
    /// Index into `words` of the free coordinate of each basis vector.
    pub free: Vec<usize>,
    pub vectors: Vec<Series>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in this basis; errors if `v` is outside the span.
    pub fn coordinates(&self, v: &Series) -> Result<Vec<CycNum>> {
        let coords: Vec<CycNum> = self.free.iter().map(|&i| v.coeff(&self.words[i])).collect();
        let ctx = v.ctx();
        let mut recon = Series::new(ctx, v.alphabet(), v.max_degree());
        for (c, b) in coords.iter().zip(&self.vectors) {
            recon = recon.add(&b.scale(c))?;
        }
        if let Some((w, _, _)) = recon.first_difference(v) {
            return Err(Error::SupportViolation(format!("vector leaves the span at {}", v.format_word(&w))));
        }
        Ok(coords)
    }
}

fn to_rational(c: &CycNum) -> Result<BigRational> {
    c.to_rational().ok_or_else(|| Error::InvalidParameter(format!("coefficient {} is not rational", c)))
}

/// Basis of the degree-`d` part of the algebra described by `variant`.
///
/// Every condition is linear in the coefficients, so the residuals of the
/// monomials of degree `d` are the columns of a matrix whose kernel is the
/// graded piece.
pub fn dmr_graded_basis(ctx: &Ctx, d: usize, variant: DmrVariant, field: FieldTag, opts: &DmrOptions) -> Result<GradedBasis> {
    dmr_graded_basis_capped(ctx, d, variant, field, opts, DEFAULT_WORD_CAP)
}

pub fn dmr_graded_basis_capped(
    ctx: &Ctx,
    d: usize,
    variant: DmrVariant,
    field: FieldTag,
    opts: &DmrOptions,
    cap: u128,
) -> Result<GradedBasis> {
    let alphabet = variant.form().alphabet();
    let n = ctx.n();
    let words = enumerate_words(alphabet, n, d, cap)?;
    let mut rows: FxHashMap<ResidualKey, Vec<(usize, CycNum)>> = FxHashMap::default();
    for (j, w) in words.iter().enumerate() {
        let psi = Series::monomial(ctx, alphabet, d, w, ctx.one());
        for (k, v) in evaluate(&psi, variant, opts)?.residuals() {
            rows.entry(k).or_default().push((j, v));
        }
    }
    let mut keys: Vec<&ResidualKey> = rows.keys().collect();
    keys.sort();
    let (free, kernel): (Vec<usize>, Vec<Vec<CycNum>>) = match field {
        FieldTag::Q => {
            let mut e = SparseEliminator::new(&Rationals, words.len());
            for k in &keys {
                let row = rows[*k].iter().map(|(j, v)| Ok((*j, to_rational(v)?))).collect::<Result<Vec<_>>>()?;
                e.add_row(row);
            }
            let ker = e.kernel_basis();
            (e.free_columns(), ker.into_iter().map(|v| v.iter().map(|x| ctx.rational(x)).collect()).collect())
        }
        FieldTag::QmuN => {
            let f: &CycContext = ctx;
            let mut e = SparseEliminator::new(f, words.len());
            for k in &keys {
                e.add_row(rows[*k].iter().cloned());
            }
            (e.free_columns(), e.kernel_basis())
        }
    };
    let vectors = kernel
        .into_iter()
        .map(|v| {
            let mut s = Series::new(ctx, alphabet, d);
            for (j, c) in v.into_iter().enumerate() {
                s.add_term(words[j].clone(), &c);
            }
            s
        })
        .collect();
    Ok(GradedBasis { variant, field, degree: d, words, free, vectors })
}

pub fn graded_dim(ctx: &Ctx, d: usize, variant: DmrVariant, field: FieldTag, opts: &DmrOptions) -> Result<usize> {
    Ok(dmr_graded_basis(ctx, d, variant, field, opts)?.dim())
}

#[derive(Clone, Debug)]
pub struct DescentResult {
    pub source: Form,
    pub degree: usize,
    /// `dim_Q` of the graded piece of the source form.
    pub source_dim: usize,
    /// `dim_Q` of the graded piece of the other form.
    pub target_dim: usize,
    /// `dim_Q` of the Galois invariants of `Q(mu_N) (x) source`.
    pub invariant_dim: usize,
    /// Images of the invariants under `F` (or `F^-1`).
    pub images: Vec<Series>,
    pub images_rational: bool,
    pub images_members: bool,
}

impl DescentResult {
    pub fn holds(&self) -> bool {
        self.invariant_dim == self.target_dim && self.images_rational && self.images_members
    }
}

/// Galois invariants of `Q(mu_N) (x) V` for the graded piece `V` of `source`,
/// mapped across by `F` (congruent source) or `F^-1` (classical source).
pub fn galois_descent(ctx: &Ctx, d: usize, source: Form, opts: &DmrOptions) -> Result<DescentResult> {
    let basis = dmr_graded_basis(ctx, d, DmrVariant::base(source), FieldTag::Q, opts)?;
    let target_dim = graded_dim(ctx, d, DmrVariant::base(source.other()), FieldTag::Q, opts)?;
    let dim = basis.dim();
    let phi = ctx.phi();
    let variant = match source {
        Form::Classical => GaloisVariant::Delta,
        Form::Congruent => GaloisVariant::DeltaTilde,
    };
    let mut ops = Vec::new();
    for sigma in GaloisElement::all(ctx) {
        let mut a = Matrix::filled(dim, dim, BigRational::from_integer(0.into()));
        for (j, b) in basis.vectors.iter().enumerate() {
            let img = galois_act(b, &sigma, variant)?;
            for (i, c) in basis.coordinates(&img)?.iter().enumerate() {
                a.set(i, j, to_rational(c)?);
            }
        }
        ops.push(semilinear_matrix(ctx, sigma.k(), &a)?);
    }
    let invariants = if dim == 0 { Vec::new() } else { invariant_subspace(&ops)? };
    let mut images = Vec::new();
    let (mut rational, mut members) = (true, true);
    for v in &invariants {
        let mut f = Series::new(ctx, source.alphabet(), d);
        for j in 0..dim {
            let coeffs: Vec<BigRational> = (0..phi).map(|i| v[crate::linalg::restricted_index(phi, i, j)].clone()).collect();
            f = f.add(&basis.vectors[j].scale(&CycNum::from_coeffs(&coeffs)))?;
        }
        let img = match source {
            Form::Congruent => map_f(&f)?,
            Form::Classical => map_f_inv(&f)?,
        };
        rational &= img.is_rational();
        members &= dmr_check(&img, DmrVariant::base(source.other()), opts)?.is_member();
        images.push(img);
    }
    Ok(DescentResult {
        source,
        degree: d,
        source_dim: dim,
        target_dim,
        invariant_dim: invariants.len(),
        images,
        images_rational: rational,
        images_members: members,
    })
}

/// Split a tensor defect into its nonempty pairs, for display.
pub fn defect_pairs(t: &TensorSeries) -> Vec<(Word, Word, CycNum)> {
    let mut v: Vec<(Word, Word, CycNum)> = t
        .raw_terms()
        .iter()
        .map(|(k, c)| {
            let p = split_key(k);
            (Word::from_slice(p[0]), Word::from_slice(p[1]), c.clone())
        })
        .collect();
    v.sort_by(|a, b| (a.0.len() + a.1.len(), &a.0, &a.1).cmp(&(b.0.len() + b.1.len(), &b.0, &b.1)));
    v
}
