//! Framed superpotentials and their BPS numbers.
//!
//! From a phase we get coordinates `U_i = -x^{mu_i}` and `V_i = -x^{-nu_i}`
//! on the chart. Eliminating the chart variables gives the zero-framing
//! relations between `U` and `V`. A framing `M` with signs `s` substitutes
//! `U_i = s_i U'_i prod_j V_j^{M_ij}`, the system is solved as power series in
//! `U'`, and the superpotential is read off from `-log V_i = U'_i d/dU'_i W`.
//! BPS numbers come from `K_m = sum_{n | m} a(m/n) / n^2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::gcd::gcd;
use crate::exactalg::moebius::{divisors, moebius};
use crate::exactalg::mpoly::{MPoly, Monomial};
use crate::exactalg::ratfunc::RatFunc;
use crate::exactalg::rational::{is_integer, Q};
use crate::exactalg::resultant::resultant_eliminate;
use crate::exactalg::series::TruncSeries;
use crate::exactalg::solve::series_solve;
use crate::homlattice::{h1_presentation, validate_phase_framing, PhaseFraming};
use crate::periods::{build_chart, Gauge, PeriodChart};
use crate::ribbon::RibbonGraph;

/// Number of random points used to verify derived relations.
pub const VERIFY_POINTS: usize = 20;
pub const DEFAULT_SEED: u64 = 20240917;
pub const DEFAULT_ORDER: u32 = 10;

/// `U_i` and `V_i` as functions on the chart.
pub fn build_uv_monomials(chart: &PeriodChart, pf: &PhaseFraming) -> (Vec<RatFunc>, Vec<RatFunc>) {
    let u = pf.lift_classes.iter().map(|c| -chart.monomial(c)).collect();
    let v = pf
        .kernel_classes
        .iter()
        .map(|c| -chart.monomial(&c.scale(-1)))
        .collect();
    (u, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationMode {
    /// Chart variables solved one at a time from equations linear in them.
    Triangular,
    /// Successive resultants.
    Resultant,
}

/// Relations between `U` and `V`, as polynomials in `U_1..U_g, V_1..V_g`.
#[derive(Clone, Debug)]
pub struct ZeroFraming {
    pub g: usize,
    pub mode: EliminationMode,
    pub relations: Vec<MPoly>,
    /// `V_i` as rational functions of `U`, when the triangular solve worked.
    pub closed_forms: Option<Vec<RatFunc>>,
}

impl ZeroFraming {
    pub fn var_names(&self) -> Vec<String> {
        let mut names = uv_names("U", self.g);
        names.extend(uv_names("V", self.g));
        names
    }
}

fn uv_names(prefix: &str, g: usize) -> Vec<String> {
    if g == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=g).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=17);
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Random chart points where all of `fs` are finite, with their values.
fn sample_points(fs: &[&RatFunc], nvars: usize, rng: &mut ChaCha8Rng, count: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 100 * count + 1000, "could not find regular sample points");
        let pt: Vec<Q> = (0..nvars).map(|_| random_q(rng)).collect();
        let vals: Option<Vec<Q>> = fs.iter().map(|f| f.eval(&pt)).collect();
        if let Some(v) = vals {
            if v.iter().all(|x| !x.is_zero()) {
                out.push(v);
            }
        }
    }
    out
}

/// Drops polynomial factors that do not involve any variable in `keep`.
fn strip_content_outside(p: &MPoly, keep: &[usize]) -> MPoly {
    let n = p.nvars();
    let mut groups: BTreeMap<Vec<u32>, MPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<u32> = keep.iter().map(|&v| m.get(v)).collect();
        let mut rest = m.clone();
        for &v in keep {
            rest = rest.with(v, 0);
        }
        groups
            .entry(key)
            .or_insert_with(|| MPoly::zero(n))
            .add_term(rest, c.clone());
    }
    let mut content = MPoly::zero(n);
    for q in groups.values() {
        content = gcd(&content, q);
        if content.is_constant() {
            return p.normalized();
        }
    }
    p.exact_div(&content).expect("content divides").normalized()
}

/// Solves for the chart variables in terms of `U` by repeatedly using an
/// equation that is linear in one of them.
fn triangular_solve(u: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let g = u.len();
    let nv = 2 * g;
    let tvars: Vec<usize> = (g..nv).collect();
    let tmap: Vec<usize> = tvars.clone();
    let mut eqs: Vec<MPoly> = u
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let num = f.num().remap(nv, &tmap);
            let den = f.den().remap(nv, &tmap);
            &(&MPoly::var(nv, j) * &den) - &num
        })
        .collect();
    let mut solved: Vec<Option<RatFunc>> = vec![None; g];
    let mut order = Vec::with_capacity(g);
    while order.len() < g {
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, eq) in eqs.iter().enumerate() {
            if eq.is_zero() {
                continue;
            }
            for k in 0..g {
                if solved[k].is_none() && eq.degree_in(g + k) == 1 {
                    let size = eq.num_terms();
                    if best.is_none_or(|b| size < b.2) {
                        best = Some((j, k, size));
                    }
                }
            }
        }
        let Some((j, k, _)) = best else {
            return Err(Error::TriangularSolveStuck(format!(
                "{} chart variables left",
                g - order.len()
            )));
        };
        let eq = eqs.remove(j);
        let c1 = eq.coeff_in(g + k, 1);
        let c0 = eq.coeff_in(g + k, 0);
        let expr = RatFunc::new(-&c0, c1).expect("linear coefficient is nonzero");
        let mut images: Vec<RatFunc> = (0..nv).map(|v| RatFunc::var(nv, v)).collect();
        images[g + k] = expr.clone();
        for other in eqs.iter_mut() {
            if other.uses_var(g + k) {
                let r = RatFunc::from_poly(other.clone())
                    .compose(&images)
                    .ok_or_else(|| Error::TriangularSolveStuck("substitution hit a pole".into()))?;
                let remaining: Vec<usize> = (0..g)
                    .filter(|&x| x != k && solved[x].is_none())
                    .map(|x| g + x)
                    .collect();
                let p = r.num().clone();
                *other = if remaining.iter().any(|&v| p.uses_var(v)) {
                    strip_content_outside(&p, &remaining)
                } else {
                    p
                };
                if !other.is_zero() && !remaining.iter().any(|&v| other.uses_var(v)) {
                    return Err(Error::TriangularSolveStuck("U coordinates are dependent".into()));
                }
            }
        }
        solved[k] = Some(expr);
        order.push(k);
    }
    // Back-substitute so every t_k depends on U only.
    let mut images: Vec<RatFunc> = (0..nv).map(|v| RatFunc::var(nv, v)).collect();
    for &k in order.iter().rev() {
        let e = solved[k]
            .as_ref()
            .unwrap()
            .compose(&images)
            .ok_or_else(|| Error::TriangularSolveStuck("back-substitution hit a pole".into()))?;
        images[g + k] = e;
    }
    let back: Vec<usize> = (0..g).collect();
    let mut out = Vec::with_capacity(g);
    for k in 0..g {
        let e = &images[g + k];
        if tvars.iter().any(|&v| e.num().uses_var(v) || e.den().uses_var(v)) {
            return Err(Error::TriangularSolveStuck(
                "chart variable left after back-substitution".into(),
            ));
        }
        // Drop the now unused chart variables.
        let sel: Vec<usize> = (0..nv).map(|v| if v < g { back[v] } else { 0 }).collect();
        out.push(e.remap(g, &sel));
    }
    Ok(out)
}

/// Eliminates the chart variables to relate `U` and `V`, verifying every
/// relation at seeded random chart points.
pub fn zero_framing_relations(u: &[RatFunc], v: &[RatFunc], seed: u64) -> Result<ZeroFraming> {
    let g = u.len();
    assert_eq!(v.len(), g);
    match triangular_solve(u) {
        Ok(t_of_u) => {
            let forms = v
                .iter()
                .map(|vi| {
                    vi.compose(&t_of_u)
                        .ok_or_else(|| Error::VerificationFailed("V has a pole along the solution".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let nv = 2 * g;
            let umap: Vec<usize> = (0..g).collect();
            let relations: Vec<MPoly> = forms
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let num = f.num().remap(nv, &umap);
                    let den = f.den().remap(nv, &umap);
                    (&(&MPoly::var(nv, g + i) * &den) - &num).normalized()
                })
                .collect();
            let zf = ZeroFraming {
                g,
                mode: EliminationMode::Triangular,
                relations,
                closed_forms: Some(forms),
            };
            verify_relations(&zf, u, v, seed)?;
            Ok(zf)
        }
        Err(Error::TriangularSolveStuck(_)) => eliminate_by_resultants(u, v, seed),
        Err(e) => Err(e),
    }
}

fn verify_relations(zf: &ZeroFraming, u: &[RatFunc], v: &[RatFunc], seed: u64) -> Result<()> {
    let g = zf.g;
    let nvars = u.first().map_or(0, RatFunc::nvars);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<&RatFunc> = u.iter().chain(v.iter()).collect();
    for vals in sample_points(&fs, nvars, &mut rng, VERIFY_POINTS) {
        for (i, r) in zf.relations.iter().enumerate() {
            if !r.eval(&vals).is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "relation {} fails at a sample point",
                    i + 1
                )));
            }
        }
        if let Some(forms) = &zf.closed_forms {
            for (i, f) in forms.iter().enumerate() {
                if f.eval(&vals[..g]).as_ref() != Some(&vals[g + i]) {
                    return Err(Error::VerificationFailed(format!("V{} closed form fails", i + 1)));
                }
            }
        }
    }
    Ok(())
}

/// Resultant fallback: for each `V_i`, eliminate all chart variables from
/// the `U` equations and the `V_i` equation, keep a candidate involving
/// `V_i` that vanishes on the sample points.
pub fn eliminate_by_resultants(u: &[RatFunc], v: &[RatFunc], seed: u64) -> Result<ZeroFraming> {
    let g = u.len();
    let nv = 3 * g;
    let tmap: Vec<usize> = (2 * g..3 * g).collect();
    let cleared = |f: &RatFunc, var: usize| {
        let num = f.num().remap(nv, &tmap);
        let den = f.den().remap(nv, &tmap);
        &(&MPoly::var(nv, var) * &den) - &num
    };
    let nvars = u.first().map_or(0, RatFunc::nvars);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<&RatFunc> = u.iter().chain(v.iter()).collect();
    let points = sample_points(&fs, nvars, &mut rng, VERIFY_POINTS);
    let mut relations = Vec::with_capacity(g);
    let keep: Vec<usize> = (0..2 * g).collect();
    for i in 0..g {
        let mut polys: Vec<MPoly> = (0..g).map(|j| cleared(&u[j], j)).collect();
        polys.push(cleared(&v[i], g + i));
        let out = resultant_eliminate(&polys, &tmap)?;
        let found = out.into_iter().find(|p| {
            p.uses_var(g + i)
                && points.iter().all(|vals| {
                    let mut pt = vals.clone();
                    pt.extend(std::iter::repeat_n(Q::zero(), g));
                    p.eval(&pt).is_zero()
                })
        });
        let p = found.ok_or_else(|| Error::VerificationFailed(format!("no verified relation for V{}", i + 1)))?;
        relations.push(p.remap(
            2 * g,
            &(0..nv).map(|x| if x < 2 * g { keep[x] } else { 0 }).collect::<Vec<_>>(),
        ));
    }
    Ok(ZeroFraming {
        g,
        mode: EliminationMode::Resultant,
        relations,
        closed_forms: None,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum TwistOrientation {
    /// `U_i = s_i U'_i prod_j V_j^{M_ij}`.
    #[default]
    Standard,
    /// `U_i = s_i U'_i prod_j V_j^{-M_ij}`.
    Flipped,
}

/// The framed system: unknowns `U, V` as series in `U'`.
#[derive(Clone, Debug)]
pub struct UVSystem {
    pub g: usize,
    pub zero_framing: Vec<MPoly>,
    pub framing: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
    pub orientation: TwistOrientation,
    /// Equations in `U'_1..U'_g, U_1..U_g, V_1..V_g`.
    pub equations: Vec<MPoly>,
    pub seed: Vec<Q>,
}

pub fn framed_system(
    relations: &[MPoly],
    framing: &[Vec<i64>],
    signs: &[i64],
    orientation: TwistOrientation,
) -> Result<UVSystem> {
    let g = relations.len();
    if framing.len() != g || framing.iter().any(|r| r.len() != g) || signs.len() != g {
        return Err(Error::DimensionMismatch(format!("framing data does not match g = {g}")));
    }
    for i in 0..g {
        for j in 0..g {
            if framing[i][j] != framing[j][i] {
                return Err(Error::FramingNotSymmetric);
            }
        }
    }
    let nv = 3 * g;
    let shift: Vec<usize> = (g..3 * g).collect();
    let mut equations: Vec<MPoly> = relations.iter().map(|r| r.remap(nv, &shift)).collect();
    let flip = if orientation == TwistOrientation::Flipped {
        -1
    } else {
        1
    };
    for i in 0..g {
        let mut pos = vec![0u32; nv];
        let mut neg = vec![0u32; nv];
        pos[i] = 1;
        neg[g + i] = 1;
        for j in 0..g {
            let m = flip * framing[i][j];
            if m > 0 {
                pos[2 * g + j] += m as u32;
            } else {
                neg[2 * g + j] += (-m) as u32;
            }
        }
        let s = Q::from_integer(BigInt::from(signs[i]));
        let eq = &MPoly::monomial(Monomial::from_exps(pos), Q::one()) - &MPoly::monomial(Monomial::from_exps(neg), s);
        equations.push(eq);
    }
    let mut seed = vec![Q::zero(); g];
    seed.extend(std::iter::repeat_n(Q::one(), g));
    let mut base = vec![Q::zero(); g];
    base.extend_from_slice(&seed);
    for (i, r) in relations.iter().enumerate() {
        let mut pt = vec![Q::zero(); g];
        pt.extend(std::iter::repeat_n(Q::one(), g));
        if !r.eval(&pt).is_zero() {
            return Err(Error::ConventionError(format!(
                "relation {} does not pass through U = 0, V = 1",
                i + 1
            )));
        }
    }
    Ok(UVSystem {
        g,
        zero_framing: relations.to_vec(),
        framing: framing.to_vec(),
        signs: signs.to_vec(),
        orientation,
        equations,
        seed,
    })
}

/// Exponent vector keyed map of exact rationals.
pub type Coeffs = BTreeMap<Vec<u32>, Q>;

#[derive(Clone, Debug)]
pub struct Solved {
    pub k: Coeffs,
    pub v_series: Vec<TruncSeries>,
    pub u_series: Vec<TruncSeries>,
    pub closedness_ok: bool,
    pub residual_ok: bool,
}

/// Solves the framed system and integrates `-log V` to `W`.
pub fn solve_and_integrate(system: &UVSystem, order: u32) -> Result<Solved> {
    let g = system.g;
    let ys = series_solve(&system.equations, g, &system.seed, order)?;
    let u_series = ys[..g].to_vec();
    let v_series = ys[g..].to_vec();
    let mut w = Vec::with_capacity(g);
    for (i, v) in v_series.iter().enumerate() {
        if !v.constant_term().is_one() {
            return Err(Error::ConventionError(format!("V{}(0) = {}", i + 1, v.constant_term())));
        }
        w.push(v.log()?.neg());
    }
    let mut monos: Vec<Monomial> = w.iter().flat_map(|s| s.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let mut k = Coeffs::new();
    for m in monos {
        let d = m.exps();
        let c: Vec<Q> = w.iter().map(|s| s.coeff(&m)).collect();
        for i in 0..g {
            for j in 0..g {
                let lhs = &c[i] * Q::from_integer(d[j].into());
                let rhs = &c[j] * Q::from_integer(d[i].into());
                if lhs != rhs {
                    return Err(Error::NotClosed(format!("{d:?}")));
                }
            }
        }
        let i = d.iter().position(|&x| x > 0).expect("no constant term in -log V");
        let val = &c[i] / Q::from_integer(d[i].into());
        if !val.is_zero() {
            k.insert(d.to_vec(), val);
        }
    }
    Ok(Solved {
        k,
        v_series,
        u_series,
        closedness_ok: true,
        residual_ok: true,
    })
}

fn gcd_vec(d: &[u32]) -> u64 {
    d.iter().fold(0u64, |acc, &x| num_integer::gcd(acc, x as u64))
}

/// All exponent vectors of total degree `1..=n` in `g` variables.
pub fn exponents_up_to(g: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(g: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == g {
            if cur.iter().any(|&x| x > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(g, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then(b.cmp(a)));
    out
}

/// `a(m) = sum_{n | gcd(m)} mu(n) K(m/n) / n^2` for `|m| <= order`.
pub fn bps_invert(k: &Coeffs, g: usize, order: u32) -> (Coeffs, bool) {
    let mut a = Coeffs::new();
    let mut integral = true;
    for m in exponents_up_to(g, order) {
        let mut acc = Q::zero();
        for n in divisors(gcd_vec(&m)) {
            let mu = moebius(n);
            if mu == 0 {
                continue;
            }
            let key: Vec<u32> = m.iter().map(|&x| x / n as u32).collect();
            if let Some(kv) = k.get(&key) {
                acc += kv * Q::new(BigInt::from(mu), BigInt::from(n * n));
            }
        }
        if !is_integer(&acc) {
            integral = false;
        }
        if !acc.is_zero() {
            a.insert(m, acc);
        }
    }
    (a, integral)
}

/// The multiple-cover sum `K_m = sum_{n | gcd(m)} a(m/n) / n^2`.
pub fn multiple_cover(a: &Coeffs, g: usize, order: u32) -> Coeffs {
    let mut k = Coeffs::new();
    for m in exponents_up_to(g, order) {
        let mut acc = Q::zero();
        for n in divisors(gcd_vec(&m)) {
            let key: Vec<u32> = m.iter().map(|&x| x / n as u32).collect();
            if let Some(av) = a.get(&key) {
                acc += av * Q::new(BigInt::one(), BigInt::from(n * n));
            }
        }
        if !acc.is_zero() {
            k.insert(m, acc);
        }
    }
    k
}

/// `Li₂(U1) + Li₂(U2) - Li₂(U1*U2)` style rendering.
pub fn li2_form(a: &Coeffs, g: usize) -> String {
    let names = uv_names("U", g);
    let mut keys: Vec<&Vec<u32>> = a.keys().collect();
    keys.sort_by(|x, y| x.iter().sum::<u32>().cmp(&y.iter().sum::<u32>()).then(y.cmp(x)));
    let mut out = String::new();
    for key in keys {
        let c = &a[key];
        let mono = Monomial::from_exps(key.clone()).fmt_with(&names);
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs} "));
        }
        out.push_str(&format!("Li₂({mono})"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub d: Vec<u32>,
    pub value: String,
}

fn entries(c: &Coeffs) -> Vec<CoeffEntry> {
    let mut keys: Vec<&Vec<u32>> = c.keys().collect();
    keys.sort_by(|x, y| x.iter().sum::<u32>().cmp(&y.iter().sum::<u32>()).then(x.cmp(y)));
    keys.into_iter()
        .map(|k| CoeffEntry {
            d: k.clone(),
            value: c[k].to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperpotentialReport {
    pub order: u32,
    pub genus: usize,
    pub framing: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
    pub orientation: TwistOrientation,
    pub elimination: EliminationMode,
    pub zero_framing_relations: Vec<String>,
    #[serde(rename = "K")]
    pub k_entries: Vec<CoeffEntry>,
    #[serde(rename = "a")]
    pub a_entries: Vec<CoeffEntry>,
    pub integral: bool,
    pub li2_form: Option<String>,
    pub closedness_ok: bool,
    pub residual_ok: bool,
    #[serde(skip)]
    pub k: Coeffs,
    #[serde(skip)]
    pub a: Coeffs,
}

impl SuperpotentialReport {
    pub fn k_at(&self, d: &[u32]) -> Q {
        self.k.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn a_at(&self, d: &[u32]) -> Q {
        self.a.get(d).cloned().unwrap_or_else(Q::zero)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub order: u32,
    pub gauge: Option<Gauge>,
    pub orientation: TwistOrientation,
    /// Overrides the effective signs `signs_i * (-1)^{M_ii}` when set.
    pub signs_override: Option<Vec<i64>>,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            order: DEFAULT_ORDER,
            gauge: None,
            orientation: TwistOrientation::Standard,
            signs_override: None,
            seed: DEFAULT_SEED,
        }
    }
}

/// Reduces a framed computation to zero-framing relations.
pub fn zero_framing_for(graph: &RibbonGraph, pf: &PhaseFraming, opts: &PipelineOptions) -> Result<ZeroFraming> {
    let pres = h1_presentation(graph)?;
    validate_phase_framing(&pres, pf)?;
    let chart = build_chart(graph, opts.gauge)?;
    let (u, v) = build_uv_monomials(&chart, pf);
    zero_framing_relations(&u, &v, opts.seed)
}

/// Framing, series solve and BPS inversion on given zero-framing relations.
pub fn superpotential_from_relations(
    zf: &ZeroFraming,
    framing: &[Vec<i64>],
    signs: &[i64],
    opts: &PipelineOptions,
) -> Result<SuperpotentialReport> {
    let g = zf.g;
    let names = zf.var_names();
    let rels: Vec<String> = zf.relations.iter().map(|r| r.fmt_with(&names)).collect();
    if g == 0 {
        return Ok(SuperpotentialReport {
            order: opts.order,
            genus: 0,
            framing: vec![],
            signs: vec![],
            orientation: opts.orientation,
            elimination: zf.mode,
            zero_framing_relations: rels,
            k_entries: vec![],
            a_entries: vec![],
            integral: true,
            li2_form: Some("0".into()),
            closedness_ok: true,
            residual_ok: true,
            k: Coeffs::new(),
            a: Coeffs::new(),
        });
    }
    let system = framed_system(&zf.relations, framing, signs, opts.orientation)?;
    let solved = solve_and_integrate(&system, opts.order)?;
    let (a, integral) = bps_invert(&solved.k, g, opts.order);
    Ok(SuperpotentialReport {
        order: opts.order,
        genus: g,
        framing: framing.to_vec(),
        signs: signs.to_vec(),
        orientation: opts.orientation,
        elimination: zf.mode,
        zero_framing_relations: rels,
        k_entries: entries(&solved.k),
        a_entries: entries(&a),
        integral,
        li2_form: integral.then(|| li2_form(&a, g)),
        closedness_ok: solved.closedness_ok,
        residual_ok: solved.residual_ok,
        k: solved.k,
        a,
    })
}

/// The whole computation from a graph and a framed phase.
pub fn pipeline(graph: &RibbonGraph, pf: &PhaseFraming, opts: &PipelineOptions) -> Result<SuperpotentialReport> {
    let zf = zero_framing_for(graph, pf, opts)?;
    let signs = opts.signs_override.clone().unwrap_or_else(|| pf.effective_signs());
    superpotential_from_relations(&zf, &pf.framing, &signs, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{q, qf};
    use crate::homlattice::presets as phases;
    use crate::ribbon::presets as graphs;

    #[test]
    fn tetrahedron_zero_framing() {
        let opts = PipelineOptions::default();
        let zf = zero_framing_for(&graphs::tetrahedron(), &phases::tetra_p(0), &opts).unwrap();
        assert_eq!(zf.mode, EliminationMode::Triangular);
        assert_eq!(zf.relations[0].fmt_with(&zf.var_names()), "U + V - 1");
    }

    #[test]
    fn tetrahedron_li2() {
        let opts = PipelineOptions {
            order: 6,
            ..Default::default()
        };
        let r = pipeline(&graphs::tetrahedron(), &phases::tetra_p(0), &opts).unwrap();
        for n in 1..=6u32 {
            assert_eq!(r.k_at(&[n]), qf(1, (n * n) as i64));
        }
        assert!(r.integral);
        assert_eq!(r.li2_form.as_deref(), Some("Li₂(U)"));
    }

    #[test]
    fn bps_roundtrip() {
        let mut a = Coeffs::new();
        a.insert(vec![1, 0], q(1));
        a.insert(vec![1, 1], q(-1));
        a.insert(vec![2, 1], q(3));
        let k = multiple_cover(&a, 2, 8);
        let (back, integral) = bps_invert(&k, 2, 8);
        assert!(integral);
        assert_eq!(back, a);
    }

    #[test]
    fn li2_rendering() {
        let mut a = Coeffs::new();
        a.insert(vec![1, 0], q(1));
        a.insert(vec![0, 1], q(1));
        a.insert(vec![1, 1], q(-1));
        a.insert(vec![2, 2], q(2));
        assert_eq!(li2_form(&a, 2), "Li₂(U1) + Li₂(U2) - Li₂(U1*U2) + 2 Li₂(U1^2*U2^2)");
    }

    #[test]
    fn framed_system_rejects_asymmetric() {
        let r = MPoly::zero(4);
        assert_eq!(
            framed_system(
                &[r.clone(), r],
                &[vec![0, 1], vec![2, 0]],
                &[1, 1],
                TwistOrientation::Standard
            )
            .unwrap_err(),
            Error::FramingNotSymmetric
        );
    }

    #[test]
    fn resultant_fallback_agrees() {
        let chart = build_chart(&graphs::tetrahedron(), None).unwrap();
        let (u, v) = build_uv_monomials(&chart, &phases::tetra_p(0));
        let zf = eliminate_by_resultants(&u, &v, 7).unwrap();
        assert_eq!(zf.mode, EliminationMode::Resultant);
        assert_eq!(zf.relations[0].fmt_with(&zf.var_names()), "U + V - 1");
    }

    fn prism(m: [[i64; 2]; 2], order: u32) -> SuperpotentialReport {
        let pf = phases::prism_m(m.iter().map(|r| r.to_vec()).collect());
        let opts = PipelineOptions {
            order,
            ..Default::default()
        };
        pipeline(&graphs::prism(), &pf, &opts).unwrap()
    }

    #[test]
    fn prism_zero_framing() {
        let opts = PipelineOptions::default();
        let zf = zero_framing_for(&graphs::prism(), &phases::prism_m(vec![vec![0, 0], vec![0, 0]]), &opts).unwrap();
        let names = zf.var_names();
        let rels: Vec<String> = zf.relations.iter().map(|r| r.fmt_with(&names)).collect();
        assert_eq!(rels, ["U1 + V1 - 1", "U2 + V2 - 1"]);
        let r = prism([[0, 0], [0, 0]], 6);
        assert_eq!(r.li2_form.as_deref(), Some("Li₂(U1) + Li₂(U2)"));
    }

    #[test]
    fn prism_off_diagonal() {
        let r = prism([[0, 1], [1, 0]], 6);
        assert_eq!(r.li2_form.as_deref(), Some("Li₂(U1) + Li₂(U2) - Li₂(U1*U2)"));
    }

    #[test]
    fn prism_negative_table_corner() {
        let r = prism([[0, -1], [-1, 0]], 6);
        assert!(r.integral);
        assert_eq!(r.a_at(&[2, 2]), q(2));
        assert_eq!(r.a_at(&[2, 3]), q(4));
        assert_eq!(r.a_at(&[3, 3]), q(11));
        assert_eq!(r.a_at(&[1, 5]), q(1));
        assert_eq!(r.a_at(&[2, 0]), q(0));
    }

    #[test]
    fn tetrahedron_framings_are_integral() {
        for p in [-2, -1, 1, 2, 3] {
            let opts = PipelineOptions {
                order: 7,
                ..Default::default()
            };
            let r = pipeline(&graphs::tetrahedron(), &phases::tetra_p(p), &opts).unwrap();
            assert!(r.integral, "p = {p}");
        }
    }

    #[test]
    fn flipping_the_twist_changes_k() {
        let pf = phases::tetra_p(1);
        let std = pipeline(
            &graphs::tetrahedron(),
            &pf,
            &PipelineOptions {
                order: 4,
                ..Default::default()
            },
        )
        .unwrap();
        let flip = pipeline(
            &graphs::tetrahedron(),
            &pf,
            &PipelineOptions {
                order: 4,
                orientation: TwistOrientation::Flipped,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(std.k_at(&[1]), flip.k_at(&[1]));
        assert_ne!(std.k_at(&[2]), flip.k_at(&[2]));
    }
}
