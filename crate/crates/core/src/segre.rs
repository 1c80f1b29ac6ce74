//! Push-forward Segre classes by residual intersections: the subscheme is
//! cut by `k` random sections of a common degree α, the residual schemes of
//! the partial intersections are measured through lengths of zero-dimensional
//! slices, and the Segre components follow from a recursion in the Chow ring.

use std::sync::Arc;

use rayon::prelude::*;

use crate::chow::{monomials_of_total_degree, ChowClass, ChowRing};
use crate::cones::{find_alpha, is_nef, wall_curves, WallCurve};
use crate::error::{Error, Result};
use crate::exactpoly::{random_homogeneous, rat, MultiDegree, Polynomial, Rational, RingContext, SeededRandomSource};
use crate::fan::{chart_dehomogenize, cone_complement_monomial, CoxContext, Fan};
use crate::groebner::{saturate_ideal_gens, Ideal, MultigradedIdeal};
use crate::intmat::IntMatrix;
use crate::linear::{row_reduce, solve_square};

/// Everything derived from the fan alone.
#[derive(Clone, Debug)]
pub struct ToricSetup {
    pub cox: CoxContext,
    pub chow: ChowRing,
    pub walls: Vec<WallCurve>,
}

impl ToricSetup {
    pub fn new(fan: Fan, names: Option<Vec<String>>, degrees: Option<IntMatrix>) -> Result<ToricSetup> {
        let cox = CoxContext::new(fan, names, degrees)?;
        let chow = ChowRing::build(cox.fan())?;
        let walls = wall_curves(cox.fan(), cox.ring())?;
        Ok(ToricSetup { cox, chow, walls })
    }

    pub fn fan(&self) -> &Fan {
        self.cox.fan()
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        self.cox.ring()
    }

    pub fn dim(&self) -> usize {
        self.fan().dim()
    }

    /// Multigraded ideal from generators over this ring.
    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<MultigradedIdeal> {
        MultigradedIdeal::new(self.ring().clone(), gens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SegreOptions {
    pub seed: u64,
    pub coeff_bound: u64,
    /// Number of additional resampling rounds after the first attempt.
    pub retries: u32,
}

impl Default for SegreOptions {
    fn default() -> Self {
        SegreOptions { seed: 0, coeff_bound: 100, retries: 5 }
    }
}

/// Generators of the subscheme's ideal and the dimension of the subscheme.
#[derive(Clone, Debug)]
pub struct SubschemeInput {
    pub ideal: MultigradedIdeal,
    pub n: usize,
}

/// Smallest subset of `gens` (taken by increasing heft weight) generating the same ideal.
fn minimal_generators(gens: &[Polynomial], ctx: &Arc<RingContext>) -> Result<MultigradedIdeal> {
    let full = MultigradedIdeal::new(ctx.clone(), gens.to_vec())?;
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| (ctx.weight_of(&full.degrees()[i]), gens[i].len()));
    let mut kept: Vec<Polynomial> = Vec::new();
    for i in order {
        if kept.is_empty() || !Ideal::with_weights(ctx.weights().to_vec(), kept.clone()).contains(&full.gens()[i]) {
            kept.push(full.gens()[i].clone());
        }
    }
    MultigradedIdeal::new(ctx.clone(), kept)
}

/// Picks generators for the subscheme (the given ones or those of the
/// B-saturation, whichever needs the smaller α) and computes its dimension.
pub fn preprocess(ideal: &MultigradedIdeal, setup: &ToricSetup) -> Result<SubschemeInput> {
    let ctx = setup.ring();
    if ideal.is_zero() {
        return Err(Error::WholeSpace);
    }
    let sat = saturate_ideal_gens(ideal.gens(), ctx.weights(), setup.cox.irrelevant().gens());
    let sat = MultigradedIdeal::new(ctx.clone(), sat)?;
    if sat.is_zero() {
        return Err(Error::WholeSpace);
    }
    if sat.is_unit() {
        return Err(Error::EmptySubscheme);
    }
    let cone_dim = sat.as_ideal().krull_dimension().ok_or(Error::EmptySubscheme)?;
    // both generating sets define the same ideal sheaf; keep the one needing the smaller α
    let given = minimal_generators(ideal.gens(), ctx)?;
    let ideal = if sat.same_as(ideal) {
        given
    } else {
        let saturated = minimal_generators(sat.gb().elements(), ctx)?;
        let weight = |i: &MultigradedIdeal| find_alpha(i.degrees(), &setup.walls, ctx.heft()).map(|a| ctx.weight_of(&a));
        if weight(&saturated)? < weight(&given)? {
            saturated
        } else {
            given
        }
    };
    let n = cone_dim.checked_sub(ctx.rank()).ok_or(Error::EmptySubscheme)?;
    if n >= setup.dim() {
        return Err(Error::WholeSpace);
    }
    Ok(SubschemeInput { ideal, n })
}

/// `count` random elements of degree α in the ideal: `Σ_i g_i · (random form of degree α − deg g_i)`.
pub fn pick_sections(z: &SubschemeInput, alpha: &MultiDegree, seed_path: (u64, &[u64]), bound: u64, count: usize) -> Result<Vec<Polynomial>> {
    let ctx = z.ideal.ctx();
    (0..count)
        .map(|j| {
            let mut path = seed_path.1.to_vec();
            path.push(j as u64);
            let mut rng = SeededRandomSource::derive(seed_path.0, &path);
            let mut f = Polynomial::zero(ctx.nvars());
            for (g, d) in z.ideal.gens().iter().zip(z.ideal.degrees()) {
                let c = random_homogeneous(&(alpha - d), &mut rng, bound, ctx)?;
                f = &f + &(g * &c);
            }
            Ok(f)
        })
        .collect()
}

/// `J_d = ((J_{d-1} + f_d) : B^∞)` (which equals `((f_1..f_d) : B^∞)`) and `(J_d : I^∞)`.
pub fn residual_ideal(prev: &[Polynomial], f: &Polynomial, z: &SubschemeInput, setup: &ToricSetup) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let w = setup.ring().weights();
    let mut gens = prev.to_vec();
    gens.push(f.clone());
    let j = if prev.is_empty() {
        // a principal ideal is saturated with respect to B, whose zero set has codimension at least 2
        gens
    } else {
        saturate_ideal_gens(&gens, w, setup.cox.irrelevant().gens())
    };
    let j = Ideal::with_weights(w.to_vec(), j).gb().elements().to_vec();
    let r = saturate_ideal_gens(&j, w, z.ideal.gens());
    let r = Ideal::with_weights(w.to_vec(), r).gb().elements().to_vec();
    (j, r)
}

/// Dimension of the subscheme of `X` cut out by a B-saturated ideal; `None` if empty.
pub fn subscheme_dimension(gens: &[Polynomial], ctx: &RingContext) -> Option<usize> {
    let d = Ideal::with_weights(ctx.weights().to_vec(), gens.to_vec()).krull_dimension()?;
    d.checked_sub(ctx.rank())
}

/// Length of the zero-dimensional subscheme cut out by `gens`, summed over
/// the affine charts; each point is counted in the first chart containing it.
pub fn zero_dim_length(gens: &[Polynomial], fan: &Fan) -> Result<usize> {
    let mut total = 0;
    for t in 0..fan.max_cones().len() {
        let jt = chart_dehomogenize(gens, fan, t);
        if jt.is_unit() {
            continue;
        }
        if jt.krull_dimension() != Some(0) {
            return Err(Error::NotZeroDimensional);
        }
        let full = jt.vector_space_dimension()?;
        if t == 0 {
            total += full;
            continue;
        }
        // points already seen lie where some earlier chart monomial is a unit;
        // high powers of those monomials kill exactly these points
        let exponent = full as u32;
        let earlier: Vec<Polynomial> = (0..t).map(|s| chart_dehomogenize(&[cone_complement_monomial(fan, s)], fan, t).gens()[0].pow(exponent)).collect();
        total += jt.add(&earlier).vector_space_dimension()?;
    }
    Ok(total)
}

/// The same length via colon ideals; slower, kept as a cross-check.
pub fn zero_dim_length_by_colon(gens: &[Polynomial], fan: &Fan) -> Result<usize> {
    let mut total = 0;
    for t in 0..fan.max_cones().len() {
        let jt = chart_dehomogenize(gens, fan, t);
        if jt.is_unit() {
            continue;
        }
        if jt.krull_dimension() != Some(0) {
            return Err(Error::NotZeroDimensional);
        }
        let full = jt.vector_space_dimension()?;
        let seen = if t == 0 {
            0
        } else {
            let m: Vec<Polynomial> = (0..t).map(|s| chart_dehomogenize(&[cone_complement_monomial(fan, s)], fan, t).gens()[0].clone()).collect();
            jt.saturate(&Ideal::new(jt.nvars(), m)).vector_space_dimension()?
        };
        total += full - seen;
    }
    Ok(total)
}

/// How a tuple `p` was used when solving for a residual class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowRole {
    /// Part of the square system that determines the class.
    Basis,
    /// Extra equation checked against the solution.
    Check,
    /// The slice was not zero-dimensional; not used.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLog {
    pub tuple: Vec<u32>,
    pub beta: Vec<i64>,
    pub gamma: Option<usize>,
    pub role: RowRole,
}

#[derive(Clone, Debug)]
pub struct ResidualStep {
    pub d: usize,
    pub j_gens: Vec<Polynomial>,
    pub residual_gens: Vec<Polynomial>,
    /// Dimension of the residual scheme, `None` when it is empty.
    pub residual_dim: Option<usize>,
    pub class: ChowClass,
    pub rows: Vec<RowLog>,
}

impl ResidualStep {
    pub fn checks_passed(&self) -> usize {
        self.rows.iter().filter(|r| r.role == RowRole::Check).count()
    }
}

#[derive(Clone, Debug)]
pub struct SegreResult {
    pub alpha: MultiDegree,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Polynomial>,
    pub sections: Vec<Polynomial>,
    pub residuals: Vec<ResidualStep>,
    /// `s_0..s_n`, with `s_i` in codimension `k − n + i`.
    pub segre: Vec<ChowClass>,
    pub options: SegreOptions,
    /// Zero-based index of the round that succeeded.
    pub round: u32,
}

/// `[R_d]` from lengths of slices of the residual scheme by random divisors
/// against the matching intersection numbers of the basis classes.
pub fn residual_class(d: usize, residual: &[Polynomial], setup: &ToricSetup, seed_path: (u64, &[u64]), bound: u64) -> Result<(ChowClass, Vec<RowLog>)> {
    let chow = &setup.chow;
    let k = setup.dim();
    let ctx = setup.ring();
    let h = chow.rank(d);
    let ideal = Ideal::with_weights(ctx.weights().to_vec(), residual.to_vec());
    if ideal.is_unit() {
        return Ok((chow.zero(d), Vec::new()));
    }
    let r = chow.ngens();
    let tuples: Vec<Vec<u32>> = monomials_of_total_degree(r, (k - d) as u32).into_iter().map(|m| m.exponents().to_vec()).collect();
    let betas: Vec<Vec<i64>> = tuples
        .iter()
        .map(|p| {
            let mono = chow.monomial_class(p);
            (0..h).map(|i| chow.degree(&chow.multiply(&chow.basis_class(d, i), &mono).expect("integral product"))).collect()
        })
        .collect();
    let gamma = |idx: usize| -> Result<Option<usize>> {
        let mut path = seed_path.1.to_vec();
        path.push(idx as u64);
        let mut rng = SeededRandomSource::derive(seed_path.0, &path);
        let mut forms = Vec::new();
        for (j, &e) in tuples[idx].iter().enumerate() {
            for _ in 0..e {
                forms.push(random_homogeneous(&ctx.var_degree(j), &mut rng, bound, ctx)?);
            }
        }
        match zero_dim_length(ideal.add(&forms).gens(), setup.fan()) {
            Ok(v) => Ok(Some(v)),
            Err(Error::NotZeroDimensional) => Ok(None),
            Err(e) => Err(e),
        }
    };
    // rows that raise the rank of β, in tuple order; the next informative tuple checks the solution
    let mut logs: Vec<RowLog> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<Rational>> = Vec::new();
    let mut values: Vec<usize> = Vec::new();
    let mut pending: Vec<usize> = (0..tuples.len()).filter(|&i| betas[i].iter().any(|&b| b != 0)).collect();
    pending.reverse();
    while chosen.len() < h {
        // collect the next batch of rank-raising candidates and evaluate them in parallel
        let mut batch = Vec::new();
        let mut trial = reduced.clone();
        while batch.len() + chosen.len() < h {
            let Some(i) = pending.pop() else { break };
            trial.push(betas[i].iter().map(|&b| rat(b)).collect());
            if row_reduce(&mut trial.clone()).len() == trial.len() {
                batch.push(i);
            } else {
                trial.pop();
            }
        }
        if batch.is_empty() {
            return Err(Error::InconsistentSystem { d });
        }
        let results: Vec<Result<Option<usize>>> = batch.par_iter().map(|&i| gamma(i)).collect();
        for (i, res) in batch.into_iter().zip(results) {
            let g = res?;
            logs.push(RowLog { tuple: tuples[i].clone(), beta: betas[i].clone(), gamma: g, role: if g.is_some() { RowRole::Basis } else { RowRole::Skipped } });
            if let Some(g) = g {
                chosen.push(i);
                reduced.push(betas[i].iter().map(|&b| rat(b)).collect());
                values.push(g);
            }
        }
    }
    let m: Vec<Vec<Rational>> = chosen.iter().map(|&i| betas[i].iter().map(|&b| rat(b)).collect()).collect();
    let rhs: Vec<Rational> = values.iter().map(|&v| rat(v as i64)).collect();
    let b = solve_square(&m, &rhs).ok_or(Error::InconsistentSystem { d })?;
    // one verified extra row when available
    while let Some(i) = pending.pop() {
        let g = gamma(i)?;
        let role = if g.is_some() { RowRole::Check } else { RowRole::Skipped };
        logs.push(RowLog { tuple: tuples[i].clone(), beta: betas[i].clone(), gamma: g, role });
        if let Some(g) = g {
            let lhs: Rational = betas[i].iter().zip(&b).map(|(&x, y)| rat(x) * y).sum();
            if lhs != rat(g as i64) {
                return Err(Error::InconsistentSystem { d });
            }
            break;
        }
    }
    let coeffs = b
        .iter()
        .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).map_err(|_| Error::NonIntegerSolution { d }) } else { Err(Error::NonIntegerSolution { d }) })
        .collect::<Result<Vec<_>>>()?;
    Ok((ChowClass { codim: d, coeffs }, logs))
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `s_i = α^{c} − [R_c] − Σ_{j<i} C(c, i−j) α^{i−j} s_j` with `c = i + k − n`.
pub fn segre_recursion(chow: &ChowRing, alpha: &ChowClass, residuals: &[ChowClass], n: usize) -> Result<Vec<ChowClass>> {
    let k = chow.dim();
    assert!(residuals.len() > n, "need a residual class for every s_i");
    let mut s: Vec<ChowClass> = Vec::with_capacity(n + 1);
    for (i, residual) in residuals.iter().enumerate().take(n + 1) {
        let c = i + k - n;
        let mut cur = chow.sub(&chow.power(alpha, c)?, residual);
        for (j, sj) in s.iter().enumerate() {
            let term = chow.multiply(&chow.power(alpha, i - j)?, sj)?;
            cur = chow.sub(&cur, &chow.scale(&term, binomial(c, i - j)));
        }
        s.push(cur);
    }
    Ok(s)
}

fn attempt(setup: &ToricSetup, z: &SubschemeInput, alpha: &MultiDegree, alpha_class: &ChowClass, options: &SegreOptions, round: u32) -> Result<SegreResult> {
    let k = setup.dim();
    let n = z.n;
    let seed = options.seed;
    let sections = pick_sections(z, alpha, (seed, &[u64::from(round), 0]), options.coeff_bound, k)?;
    let mut steps = Vec::new();
    let mut prev: Vec<Polynomial> = Vec::new();
    let mut ideals = Vec::new();
    for (idx, f) in sections.iter().enumerate() {
        let d = idx + 1;
        let (j, r) = residual_ideal(&prev, f, z, setup);
        if d >= k - n {
            let dim = subscheme_dimension(&r, setup.ring());
            if dim.is_some_and(|x| x != k - d) {
                return Err(Error::DimensionFailure { d });
            }
            ideals.push((d, j.clone(), r, dim));
        }
        prev = j;
    }
    let classes: Vec<Result<(ChowClass, Vec<RowLog>)>> =
        ideals.par_iter().map(|(d, _, r, _)| residual_class(*d, r, setup, (seed, &[u64::from(round), 1, *d as u64]), options.coeff_bound)).collect();
    for ((d, j, r, dim), res) in ideals.into_iter().zip(classes) {
        let (class, rows) = res?;
        steps.push(ResidualStep { d, j_gens: j, residual_gens: r, residual_dim: dim, class, rows });
    }
    let residual_classes: Vec<ChowClass> = steps.iter().map(|s| s.class.clone()).collect();
    let segre = segre_recursion(&setup.chow, alpha_class, &residual_classes, n)?;
    Ok(SegreResult { alpha: alpha.clone(), n, k, generators: z.ideal.gens().to_vec(), sections, residuals: steps, segre, options: *options, round })
}

/// The push-forward Segre class of the subscheme defined by `ideal`.
pub fn segre_class(setup: &ToricSetup, ideal: &MultigradedIdeal, options: &SegreOptions) -> Result<SegreResult> {
    let z = preprocess(ideal, setup)?;
    let alpha = find_alpha(z.ideal.degrees(), &setup.walls, setup.ring().heft())?;
    debug_assert!(z.ideal.degrees().iter().all(|d| is_nef(&(&alpha - d), &setup.walls)));
    let alpha_class = setup.chow.pic_to_chow(&alpha, setup.ring())?;
    let mut last = None;
    for round in 0..=options.retries {
        match attempt(setup, &z, &alpha, &alpha_class, options, round) {
            Ok(res) => return Ok(res),
            Err(e) if e.is_retryable() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetriesExhausted { rounds: options.retries + 1, last: Box::new(last.expect("at least one round")) })
}
