//! Named batteries of exact identity checks, each reporting a concrete
//! counterexample when an identity fails.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::cyclo::{divisors, CycContext, Ctx, GaloisElement};
use crate::dist::{map_f_d, map_f_d_inv, map_id_star, map_id_star_tilde, map_pd_star, map_pd_star_tilde, DivisorContext};
use crate::dshuffle::{
    bracket, derivation, derivation_tilde, dmr_check, dmr_graded_basis, galois_descent, graded_dim, psi_star, psi_star_tilde, DmrOptions,
    DmrVariant, FieldTag, Form,
};
use crate::error::{Error, Result};
use crate::maps::{
    big_t, galois_act, map_f, map_f_inv, map_f_tensor, map_fy, map_p, map_q, proj_y, t_tilde, t_zeta, weight_projector, GaloisVariant,
};
use crate::products::{coproduct, coproduct_by_pairing, coproduct_on_factor, ProductKind};
use crate::series::{random_series, RandomSpec, Series, TensorSeries};
use crate::words::{enumerate_up_to, Alphabet, DEFAULT_WORD_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Iso,
    Diagrams,
    Hopf,
    TCompat,
    TProjector,
    DCompat,
    Bracket,
    DmrTransport,
    Galois,
    Descent,
    Dist,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Iso,
        Suite::Diagrams,
        Suite::Hopf,
        Suite::TCompat,
        Suite::TProjector,
        Suite::DCompat,
        Suite::Bracket,
        Suite::DmrTransport,
        Suite::Galois,
        Suite::Descent,
        Suite::Dist,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Iso => "iso",
            Suite::Diagrams => "diagrams",
            Suite::Hopf => "hopf",
            Suite::TCompat => "t-compat",
            Suite::TProjector => "T-projector",
            Suite::DCompat => "d-compat",
            Suite::Bracket => "bracket",
            Suite::DmrTransport => "dmr-transport",
            Suite::Galois => "galois",
            Suite::Descent => "descent",
            Suite::Dist => "dist",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.into_iter().find(|x| x.id() == s).map(|x| vec![x])
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Iso => "F^-1 F = id and F F^-1 = id on every word up to the degree",
            Suite::Diagrams => "pi_Y F = F_Y pi_Y~, F q~ = p F, F q~^-1 = p^-1 F, F t~_a = t_(zeta^a) F, F d~ = d F",
            Suite::Hopf => "F intertwines both coproduct pairs; coassociativity; dual enumeration matches literal pairing",
            Suite::TCompat => "F t~_a = t_(zeta^a) F; t-maps are algebra morphisms; t~_a t~_b = t~_(a+b)",
            Suite::TProjector => "T~_a keeps rational series rational; sum_a T~_a = id; T~_a T~_b = delta_ab T~_a; T~_a is the weight projector",
            Suite::DCompat => "F d~_psi = d_F(psi) F; Leibniz rule for both derivations; d~ preserves rationality",
            Suite::Bracket => "F carries the congruent bracket to the classical one; antisymmetry; Jacobi; closure on degree 1",
            Suite::DmrTransport => "F_Y(psi~_*) = (F psi~)_*; every membership condition has the same verdict on psi~ and F(psi~); equal graded dimensions",
            Suite::Galois => "F (sigma (x) id) = Delta_sigma F and F Delta~_sigma = (sigma (x) id) F for every sigma",
            Suite::Descent => "Galois invariants of each form, scalar-extended, have the dimension of the other form and map onto it",
            Suite::Dist => "F_d p~^d_* = p^d_* F and F_d i~*_d = i*_d F on every word; F_d round trip; dmrd dimensions agree",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub ns: Vec<u32>,
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub opts: DmrOptions,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { ns: vec![3], degree: 3, trials: 25, seed: 0, opts: DmrOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub n: u32,
    pub passed: bool,
    pub cases: usize,
    pub witness: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub description: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {}", self.suite, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            writeln!(f, "  {} N={} {} ({} cases, {} ms)", if c.passed { "ok  " } else { "FAIL" }, c.n, c.name, c.cases, c.millis)?;
            if let Some(w) = &c.witness {
                writeln!(f, "       witness: {}", w)?;
            }
        }
        Ok(())
    }
}

/// Outcome of one check: number of cases tried and the first counterexample.
type Outcome = (usize, Option<String>);

struct Runner<'p> {
    params: &'p SuiteParams,
    checks: Vec<Check>,
    counter: u64,
}

impl<'p> Runner<'p> {
    fn new(params: &'p SuiteParams) -> Self {
        Runner { params, checks: Vec::new(), counter: 0 }
    }

    fn seed(&mut self) -> u64 {
        self.counter += 1;
        self.params.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(self.counter)
    }

    fn run(&mut self, name: &str, n: u32, body: impl FnOnce(&mut Self) -> Result<Outcome>) -> Result<()> {
        let t = Instant::now();
        let (cases, witness) = body(self)?;
        self.checks.push(Check {
            name: name.to_string(),
            n,
            passed: witness.is_none(),
            cases,
            witness,
            millis: t.elapsed().as_millis(),
        });
        Ok(())
    }

    fn random(&mut self, ctx: &Ctx, a: Alphabet, d: usize, spec: RandomSpec) -> Series {
        let seed = self.seed();
        random_series(ctx, a, d, seed, spec)
    }

    /// Compare `lhs(f)` and `rhs(f)` on random `f`; both sides must be linear
    /// in `f` so that a failure can be reduced to a single monomial.
    fn linear(
        &mut self,
        ctx: &Ctx,
        a: Alphabet,
        d: usize,
        spec: RandomSpec,
        lhs: impl Fn(&Series) -> Result<Series>,
        rhs: impl Fn(&Series) -> Result<Series>,
    ) -> Result<Outcome> {
        let trials = self.params.trials;
        for i in 0..trials {
            let spec = RandomSpec { rational: spec.rational && i % 2 == 0, ..spec };
            let f = self.random(ctx, a, d, spec);
            if lhs(&f)? != rhs(&f)? {
                return Ok((i + 1, Some(minimize(&f, &lhs, &rhs)?)));
            }
        }
        Ok((trials, None))
    }
}

fn differs(l: &Series, r: &Series) -> Option<String> {
    l.first_difference(r).map(|(w, a, b)| format!("coefficient of {}: {} vs {}", l.format_word(&w), a, b))
}

fn tensor_differs(l: &TensorSeries, r: &TensorSeries) -> Option<String> {
    l.first_difference(r).map(|(parts, a, b)| {
        let words: Vec<String> = parts.iter().map(|w| crate::words::format_word(l.alphabet(), l.ctx().n(), w)).collect();
        format!("coefficient of {}: {} vs {}", words.join(" (x) "), a, b)
    })
}

/// Reduce a failing input of a linear identity to one failing monomial.
fn minimize(f: &Series, lhs: &impl Fn(&Series) -> Result<Series>, rhs: &impl Fn(&Series) -> Result<Series>) -> Result<String> {
    for (w, c) in f.sorted_terms() {
        let m = Series::monomial(f.ctx(), f.alphabet(), f.max_degree(), w, c.clone());
        let (l, r) = (lhs(&m)?, rhs(&m)?);
        if let Some(d) = differs(&l, &r) {
            return Ok(format!("input {}; {}", m, d));
        }
    }
    let (l, r) = (lhs(f)?, rhs(f)?);
    Ok(format!("input {}; {}", f, differs(&l, &r).unwrap_or_default()))
}

fn words_check(ctx: &Ctx, a: Alphabet, d: usize, mut each: impl FnMut(&Series) -> Result<Option<String>>) -> Result<Outcome> {
    let words = enumerate_up_to(a, ctx.n(), d, DEFAULT_WORD_CAP)?;
    for (i, w) in words.iter().enumerate() {
        let m = Series::monomial(ctx, a, d, w, ctx.one());
        if let Some(msg) = each(&m)? {
            return Ok((i + 1, Some(format!("word {}: {}", m.format_word(w), msg))));
        }
    }
    Ok((words.len(), None))
}

const NONRATIONAL: RandomSpec = RandomSpec { rational: false, zero_constant: true, density: 4, y_only: false };
const RATIONAL: RandomSpec = RandomSpec { rational: true, zero_constant: true, density: 4, y_only: false };
const Y_ONLY: RandomSpec = RandomSpec { rational: false, zero_constant: true, density: 4, y_only: true };

pub fn run(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    for &n in &params.ns {
        if n < 3 {
            return Err(Error::InvalidLevel(n));
        }
    }
    let mut r = Runner::new(params);
    for &n in &params.ns {
        let ctx = CycContext::new(n)?;
        match suite {
            Suite::Iso => iso(&mut r, &ctx)?,
            Suite::Diagrams => diagrams(&mut r, &ctx)?,
            Suite::Hopf => hopf(&mut r, &ctx)?,
            Suite::TCompat => t_compat(&mut r, &ctx)?,
            Suite::TProjector => t_projector(&mut r, &ctx)?,
            Suite::DCompat => d_compat(&mut r, &ctx)?,
            Suite::Bracket => brackets(&mut r, &ctx)?,
            Suite::DmrTransport => transport(&mut r, &ctx)?,
            Suite::Galois => galois(&mut r, &ctx)?,
            Suite::Descent => descent(&mut r, &ctx)?,
            Suite::Dist => dist(&mut r, &ctx)?,
        }
    }
    Ok(SuiteReport { suite: suite.id(), description: suite.description(), checks: r.checks })
}

fn iso(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    r.run("F^-1 F = id on words over X~", n, |_| {
        words_check(ctx, Alphabet::Xt, d, |m| Ok(differs(&map_f_inv(&map_f(m)?)?, m)))
    })?;
    r.run("F F^-1 = id on words over X", n, |_| {
        words_check(ctx, Alphabet::X, d, |m| Ok(differs(&map_f(&map_f_inv(m)?)?, m)))
    })
}

fn diagrams(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    r.run("pi_Y F = F_Y pi_Y~", n, |r| {
        r.linear(ctx, Alphabet::Xt, d, NONRATIONAL, |f| Ok(proj_y(&map_f(f)?)), |f| map_fy(&proj_y(f)))
    })?;
    r.run("F q~ = p F", n, |r| r.linear(ctx, Alphabet::Xt, d, NONRATIONAL, |f| map_f(&map_q(f, false)?), |f| map_p(&map_f(f)?, false)))?;
    r.run("F q~^-1 = p^-1 F", n, |r| {
        r.linear(ctx, Alphabet::Xt, d, NONRATIONAL, |f| map_f(&map_q(f, true)?), |f| map_p(&map_f(f)?, true))
    })?;
    r.run("F t~_a = t_(zeta^a) F for all a", n, |r| t_identity(r, ctx))?;
    r.run("F d~_psi = d_F(psi) F", n, |r| d_identity(r, ctx))
}

fn t_identity(r: &mut Runner, ctx: &Ctx) -> Result<Outcome> {
    let (n, d) = (ctx.n(), r.params.degree);
    let mut cases = 0;
    for a in 1..=n as i64 {
        let (c, w) = r.linear(ctx, Alphabet::Xt, d, NONRATIONAL, |f| map_f(&t_tilde(f, a)?), |f| t_zeta(&map_f(f)?, a))?;
        cases += c;
        if let Some(w) = w {
            return Ok((cases, Some(format!("a = {}: {}", a, w))));
        }
    }
    Ok((cases, None))
}

fn d_identity(r: &mut Runner, ctx: &Ctx) -> Result<Outcome> {
    let d = r.params.degree;
    let trials = r.params.trials;
    for i in 0..trials {
        let psi = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
        let fpsi = map_f(&psi)?;
        let lhs = |g: &Series| map_f(&derivation_tilde(&psi, g)?);
        let rhs = |g: &Series| derivation(&fpsi, &map_f(g)?);
        let g = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
        if lhs(&g)? != rhs(&g)? {
            return Ok((i + 1, Some(format!("psi~ = {}; {}", psi, minimize(&g, &lhs, &rhs)?))));
        }
    }
    Ok((trials, None))
}

fn hopf(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    r.run("shuffle coproduct: Delta F = (F (x) F) Delta~", n, |r| {
        for i in 0..trials {
            let f = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
            let lhs = coproduct(&map_f(&f)?, ProductKind::ShuffleX)?;
            let rhs = map_f_tensor(&coproduct(&f, ProductKind::ShuffleXt)?)?;
            if let Some(w) = tensor_differs(&lhs, &rhs) {
                return Ok((i + 1, Some(format!("input {}; {}", f, w))));
            }
        }
        Ok((trials, None))
    })?;
    r.run("harmonic coproduct: Delta F_Y = (F_Y (x) F_Y) Delta~", n, |r| {
        for i in 0..trials {
            let f = r.random(ctx, Alphabet::Xt, d, Y_ONLY);
            let lhs = coproduct(&map_fy(&f)?, ProductKind::HarmonicY)?;
            let rhs = map_f_tensor(&coproduct(&f, ProductKind::HarmonicYt)?)?;
            if let Some(w) = tensor_differs(&lhs, &rhs) {
                return Ok((i + 1, Some(format!("input {}; {}", f, w))));
            }
        }
        Ok((trials, None))
    })?;
    let dc = d.min(3);
    r.run("coassociativity of all four coproducts", n, |r| {
        let mut cases = 0;
        for kind in ProductKind::ALL {
            for _ in 0..trials.min(10) {
                cases += 1;
                let spec = if kind.is_harmonic() { Y_ONLY } else { NONRATIONAL };
                let f = r.random(ctx, kind.alphabet(), dc, spec);
                let t = coproduct(&f, kind)?;
                let left = coproduct_on_factor(&t, kind, 0)?;
                let right = coproduct_on_factor(&t, kind, 1)?;
                if let Some(w) = tensor_differs(&left, &right) {
                    return Ok((cases, Some(format!("{}: input {}; {}", kind.name(), f, w))));
                }
            }
        }
        Ok((cases, None))
    })?;
    r.run("dual enumeration equals literal pairing", n, |r| {
        let mut cases = 0;
        for kind in ProductKind::ALL {
            for _ in 0..trials.min(5) {
                cases += 1;
                let spec = if kind.is_harmonic() { Y_ONLY } else { NONRATIONAL };
                let f = r.random(ctx, kind.alphabet(), dc, spec);
                if let Some(w) = tensor_differs(&coproduct(&f, kind)?, &coproduct_by_pairing(&f, kind)?) {
                    return Ok((cases, Some(format!("{}: input {}; {}", kind.name(), f, w))));
                }
            }
        }
        Ok((cases, None))
    })
}

fn t_compat(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    r.run("F t~_a = t_(zeta^a) F for all a", n, |r| t_identity(r, ctx))?;
    r.run("t_(zeta^m) and t~_a are algebra morphisms", n, |r| {
        for i in 0..trials {
            let m = (i as i64 % n as i64) + 1;
            for a in [Alphabet::X, Alphabet::Xt] {
                let f = r.random(ctx, a, d, NONRATIONAL);
                let g = r.random(ctx, a, d, NONRATIONAL);
                let t = |s: &Series| match a {
                    Alphabet::X => t_zeta(s, m),
                    Alphabet::Xt => t_tilde(s, m),
                };
                let lhs = t(&f.concat_mul(&g)?)?;
                let rhs = t(&f)?.concat_mul(&t(&g)?)?;
                if let Some(w) = differs(&lhs, &rhs) {
                    return Ok((i + 1, Some(format!("m = {}, f = {}, g = {}; {}", m, f, g, w))));
                }
            }
        }
        Ok((trials, None))
    })?;
    r.run("t~_a t~_b = t~_(a+b)", n, |r| {
        for i in 0..trials {
            let (a, b) = ((i as i64 % n as i64) + 1, ((i as i64 / n as i64) % n as i64) + 1);
            let f = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
            if let Some(w) = differs(&t_tilde(&t_tilde(&f, b)?, a)?, &t_tilde(&f, a + b)?) {
                return Ok((i + 1, Some(format!("a = {}, b = {}, input {}; {}", a, b, f, w))));
            }
        }
        Ok((trials, None))
    })
}

fn t_projector(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    r.run("T~_a maps rational series to rational series", n, |r| {
        for i in 0..trials {
            let f = r.random(ctx, Alphabet::Xt, d, RATIONAL);
            for a in 1..=n as i64 {
                let t = big_t(&f, a)?;
                if let Some((w, c)) = t.sorted_terms().into_iter().find(|(_, c)| !c.is_rational()) {
                    return Ok((i + 1, Some(format!("a = {}, input {}; coefficient of {} is {}", a, f, t.format_word(w), c))));
                }
            }
        }
        Ok((trials, None))
    })?;
    r.run("T~_a is the projector onto class-weight a", n, |r| {
        let mut cases = 0;
        for a in 1..=n as i64 {
            let (c, w) = r.linear(ctx, Alphabet::Xt, d, NONRATIONAL, |f| big_t(f, a), |f| Ok(weight_projector(f, a)))?;
            cases += c;
            if let Some(w) = w {
                return Ok((cases, Some(format!("a = {}: {}", a, w))));
            }
        }
        Ok((cases, None))
    })?;
    r.run("sum_a T~_a = id", n, |r| {
        r.linear(
            ctx,
            Alphabet::Xt,
            d,
            NONRATIONAL,
            |f| {
                let mut s = Series::new(ctx, Alphabet::Xt, f.max_degree());
                for a in 1..=n as i64 {
                    s = s.add(&big_t(f, a)?)?;
                }
                Ok(s)
            },
            |f| Ok(f.clone()),
        )
    })?;
    r.run("T~_a T~_b = delta_ab T~_a", n, |r| {
        let mut cases = 0;
        for a in 1..=n as i64 {
            for b in 1..=n as i64 {
                let (c, w) = r.linear(
                    ctx,
                    Alphabet::Xt,
                    d.min(3),
                    NONRATIONAL,
                    |f| big_t(&big_t(f, b)?, a),
                    |f| if a == b { big_t(f, a) } else { Ok(Series::new(ctx, Alphabet::Xt, f.max_degree())) },
                )?;
                cases += c;
                if let Some(w) = w {
                    return Ok((cases, Some(format!("a = {}, b = {}: {}", a, b, w))));
                }
            }
        }
        Ok((cases, None))
    })
}

fn d_compat(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    r.run("F d~_psi = d_F(psi) F", n, |r| d_identity(r, ctx))?;
    r.run("Leibniz rule for d and d~", n, |r| {
        for i in 0..trials {
            for a in [Alphabet::X, Alphabet::Xt] {
                let psi = r.random(ctx, a, d, NONRATIONAL);
                let f = r.random(ctx, a, d, NONRATIONAL);
                let g = r.random(ctx, a, d, NONRATIONAL);
                let dv = |s: &Series| match a {
                    Alphabet::X => derivation(&psi, s),
                    Alphabet::Xt => derivation_tilde(&psi, s),
                };
                let lhs = dv(&f.concat_mul(&g)?)?;
                let rhs = dv(&f)?.concat_mul(&g)?.add(&f.concat_mul(&dv(&g)?)?)?;
                if let Some(w) = differs(&lhs, &rhs) {
                    return Ok((i + 1, Some(format!("psi = {}, f = {}, g = {}; {}", psi, f, g, w))));
                }
            }
        }
        Ok((trials, None))
    })?;
    r.run("d~ of rational series is rational", n, |r| {
        for i in 0..trials {
            let psi = r.random(ctx, Alphabet::Xt, d, RATIONAL);
            let g = r.random(ctx, Alphabet::Xt, d, RATIONAL);
            let out = derivation_tilde(&psi, &g)?;
            if !out.is_rational() {
                return Ok((i + 1, Some(format!("psi~ = {}, target {}; image {}", psi, g, out))));
            }
        }
        Ok((trials, None))
    })
}

fn brackets(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    let opts = r.params.opts;
    r.run("F <a, b>~ = <F a, F b>", n, |r| {
        for i in 0..trials {
            let a = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
            let b = r.random(ctx, Alphabet::Xt, d, NONRATIONAL);
            let lhs = map_f(&bracket(&a, &b)?)?;
            let rhs = bracket(&map_f(&a)?, &map_f(&b)?)?;
            if let Some(w) = differs(&lhs, &rhs) {
                return Ok((i + 1, Some(format!("a = {}, b = {}; {}", a, b, w))));
            }
        }
        Ok((trials, None))
    })?;
    r.run("antisymmetry", n, |r| {
        for i in 0..trials {
            for al in [Alphabet::X, Alphabet::Xt] {
                let a = r.random(ctx, al, d, NONRATIONAL);
                let b = r.random(ctx, al, d, NONRATIONAL);
                if let Some(w) = differs(&bracket(&a, &b)?, &bracket(&b, &a)?.neg()) {
                    return Ok((i + 1, Some(format!("a = {}, b = {}; {}", a, b, w))));
                }
            }
        }
        Ok((trials, None))
    })?;
    let dj = d.min(3);
    r.run("Jacobi identity", n, |r| {
        for i in 0..trials {
            for al in [Alphabet::X, Alphabet::Xt] {
                let a = r.random(ctx, al, dj, NONRATIONAL);
                let b = r.random(ctx, al, dj, NONRATIONAL);
                let c = r.random(ctx, al, dj, NONRATIONAL);
                let j = bracket(&bracket(&a, &b)?, &c)?.add(&bracket(&bracket(&b, &c)?, &a)?)?.add(&bracket(&bracket(&c, &a)?, &b)?)?;
                if !j.is_zero() {
                    return Ok((i + 1, Some(format!("a = {}, b = {}, c = {}; residual {}", a, b, c, j))));
                }
            }
        }
        Ok((trials, None))
    })?;
    r.run("brackets of degree-1 members are members", n, |_| {
        let mut cases = 0;
        for form in [Form::Classical, Form::Congruent] {
            let v = DmrVariant::base(form);
            let basis = dmr_graded_basis(ctx, 1, v, FieldTag::Q, &opts)?;
            let lift: Vec<Series> = basis.vectors.iter().map(|b| b.with_max_degree(2)).collect();
            for a in &lift {
                for b in &lift {
                    cases += 1;
                    let br = bracket(a, b)?;
                    let rep = dmr_check(&br, v, &opts)?;
                    if !rep.is_member() {
                        return Ok((cases, Some(format!("{}: <{}, {}> = {}\n{}", v.tag(), a, b, br, rep))));
                    }
                }
            }
        }
        Ok((cases, None))
    })
}

fn random_member(r: &mut Runner, ctx: &Ctx, form: Form, d: usize, opts: &DmrOptions, bases: &[Vec<Series>]) -> Result<Series> {
    let _ = opts;
    let mut f = Series::new(ctx, form.alphabet(), d);
    let mut rng_seed = r.seed();
    for basis in bases {
        for b in basis {
            rng_seed = rng_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = ((rng_seed >> 33) % 7) as i64 - 3;
            if c != 0 {
                f = f.add(&b.with_max_degree(d).scale(&ctx.int(c)))?;
            }
        }
    }
    Ok(f)
}

fn transport(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let trials = r.params.trials;
    let opts = r.params.opts;
    r.run("F_Y(psi~_*) = (F psi~)_*", n, |r| {
        for i in 0..trials {
            let psi = r.random(ctx, Alphabet::Xt, d.max(2), RandomSpec { density: 6, ..NONRATIONAL });
            let lhs = map_fy(&psi_star_tilde(&psi, opts.star)?)?;
            let rhs = psi_star(&map_f(&psi)?)?;
            if let Some(w) = differs(&lhs, &rhs) {
                return Ok((i + 1, Some(format!("psi~ = {}; {}", psi, w))));
            }
        }
        Ok((trials, None))
    })?;
    let mut bases = [Vec::new(), Vec::new()];
    for (slot, form) in [Form::Congruent, Form::Classical].into_iter().enumerate() {
        for k in 1..=d {
            bases[slot].push(dmr_graded_basis(ctx, k, DmrVariant::base(form), FieldTag::Q, &opts)?.vectors);
        }
    }
    r.run("verdicts agree per condition: random, members, perturbed members", n, |r| {
        let mut cases = 0;
        for i in 0..trials {
            for (slot, form) in [Form::Congruent, Form::Classical].into_iter().enumerate() {
                let (random, member) = (r.random(ctx, form.alphabet(), d, NONRATIONAL), random_member(r, ctx, form, d, &opts, &bases[slot])?);
                let perturbed = member.add(&r.random(ctx, form.alphabet(), d, RandomSpec { density: 1, ..RATIONAL }))?;
                for (label, psi) in [("random", random), ("member", member), ("perturbed", perturbed)] {
                    cases += 1;
                    let image = match form {
                        Form::Congruent => map_f(&psi)?,
                        Form::Classical => map_f_inv(&psi)?,
                    };
                    let a = dmr_check(&psi, DmrVariant::base(form), &opts)?;
                    let b = dmr_check(&image, DmrVariant::base(form.other()), &opts)?;
                    if a.verdicts() != b.verdicts() {
                        return Ok((cases, Some(format!("trial {} ({}) {}: {:?} vs {:?}\n{}{}", i, label, psi, a.verdicts(), b.verdicts(), a, b))));
                    }
                    if label == "member" && !a.is_member() {
                        return Ok((cases, Some(format!("basis combination is not a member: {}\n{}", psi, a))));
                    }
                }
            }
        }
        Ok((cases, None))
    })?;
    r.run("graded dimensions agree", n, |_| {
        for k in 1..=d {
            let a = bases[1][k - 1].len();
            let b = bases[0][k - 1].len();
            if a != b {
                return Ok((k, Some(format!("degree {}: classical {} vs congruent {}", k, a, b))));
            }
        }
        Ok((d, None))
    })
}

fn galois(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    for sigma in GaloisElement::all(ctx) {
        let k = sigma.k();
        r.run(&format!("F (sigma_{k} (x) id) = Delta_sigma_{k} F"), n, |r| {
            r.linear(
                ctx,
                Alphabet::Xt,
                d,
                NONRATIONAL,
                |f| map_f(&galois_act(f, &sigma, GaloisVariant::CoeffOnly)?),
                |f| galois_act(&map_f(f)?, &sigma, GaloisVariant::Delta),
            )
        })?;
        r.run(&format!("F Delta~_sigma_{k} = (sigma_{k} (x) id) F"), n, |r| {
            r.linear(
                ctx,
                Alphabet::Xt,
                d,
                NONRATIONAL,
                |f| map_f(&galois_act(f, &sigma, GaloisVariant::DeltaTilde)?),
                |f| galois_act(&map_f(f)?, &sigma, GaloisVariant::CoeffOnly),
            )
        })?;
    }
    Ok(())
}

fn descent(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let n = ctx.n();
    let opts = r.params.opts;
    for k in 1..=r.params.degree.min(2) {
        for source in [Form::Congruent, Form::Classical] {
            r.run(&format!("invariants of the {:?} form, degree {}", source, k), n, |_| {
                let res = galois_descent(ctx, k, source, &opts)?;
                let msg = (!res.holds()).then(|| {
                    format!(
                        "source dim {}, invariant dim {}, target dim {}, images rational {}, images members {}",
                        res.source_dim, res.invariant_dim, res.target_dim, res.images_rational, res.images_members
                    )
                });
                Ok((1, msg))
            })?;
        }
    }
    Ok(())
}

fn dist(r: &mut Runner, ctx: &Ctx) -> Result<()> {
    let (n, d) = (ctx.n(), r.params.degree);
    let opts = r.params.opts;
    for dv in divisors(n) {
        let dctx = DivisorContext::new(n, dv)?;
        r.run(&format!("d = {}: F_d p~^d_* = p^d_* F", dv), n, |_| {
            words_check(ctx, Alphabet::Xt, d, |m| Ok(differs(&map_f_d(&map_pd_star_tilde(m, &dctx)?, &dctx)?, &map_pd_star(&map_f(m)?, &dctx)?)))
        })?;
        r.run(&format!("d = {}: F_d i~*_d = i*_d F", dv), n, |_| {
            words_check(ctx, Alphabet::Xt, d, |m| Ok(differs(&map_f_d(&map_id_star_tilde(m, &dctx)?, &dctx)?, &map_id_star(&map_f(m)?, &dctx)?)))
        })?;
        r.run(&format!("d = {}: F_d^-1 F_d = id", dv), n, |_| {
            words_check(ctx, Alphabet::Xt, d, |m| {
                let sub = map_id_star_tilde(m, &dctx)?;
                Ok(differs(&map_f_d_inv(&map_f_d(&sub, &dctx)?, &dctx)?, &sub))
            })
        })?;
    }
    r.run("dmrd dimensions agree in degree 1", n, |_| {
        let a = graded_dim(ctx, 1, DmrVariant::DmrdMuN, FieldTag::Q, &opts)?;
        let b = graded_dim(ctx, 1, DmrVariant::DmrdN, FieldTag::Q, &opts)?;
        Ok((1, (a != b).then(|| format!("classical {} vs congruent {}", a, b))))
    })
}

pub fn list() -> String {
    let mut s = String::new();
    for suite in Suite::ALL {
        s.push_str(&format!("{:<14} {}\n", suite.id(), suite.description()));
    }
    s.push_str(&format!("{:<14} every suite above\n", "all"));
    s
}
