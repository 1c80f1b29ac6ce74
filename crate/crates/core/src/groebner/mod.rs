//! Gröbner bases and the ideal operations built on them: normal forms,
//! elimination, intersection, colon/saturation, Krull dimension and the
//! length of Artinian quotients.

mod engine;
pub mod order;

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactpoly::{multidegree_of, Monomial, MultiDegree, Polynomial, RingContext};
use engine::IPoly;
pub use order::MonomialOrder;

/// Reduced Gröbner basis with respect to a fixed order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    internal: Vec<IPoly>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Monic basis elements, ascending by leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|g| g.lead().exp.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].lead().exp.is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> GroebnerBasis {
    let internal = engine::buchberger(gens, order);
    let nvars = order.nvars();
    let elements = internal
        .iter()
        .map(|g| {
            let p = g.to_poly(nvars);
            let lc = p.coefficient(&g.lead().exp);
            p.scale(&lc.recip())
        })
        .collect();
    GroebnerBasis { order: order.clone(), elements, internal, reduced: true }
}

/// Remainder of `f` on division by `basis`; zero iff `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let (fi, s0) = IPoly::from_poly(f, &basis.order);
    let refs: Vec<&IPoly> = basis.internal.iter().collect();
    let (r, s) = engine::reduce(&fi, &refs, true);
    // r = s * s0 * f modulo the ideal
    let total = s * s0;
    r.to_poly(basis.nvars()).scale(&total.recip())
}

/// Generators of `I ∩ k[remaining variables]`, still written in all variables.
pub fn eliminate_gens(gens: &[Polynomial], weights: &[u64], vars: &[usize]) -> Vec<Polynomial> {
    let order = MonomialOrder::elimination(weights, vars);
    let gb = groebner_basis(gens, &order);
    gb.elements.into_iter().filter(|g| vars.iter().all(|&v| !g.involves(v))).collect()
}

fn weighted_homogeneous(f: &Polynomial, weights: &[u64]) -> Option<u64> {
    let mut deg = None;
    for (m, _) in f.terms() {
        let d: u64 = m.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum();
        match deg {
            None => deg = Some(d),
            Some(d0) if d0 != d => return None,
            _ => {}
        }
    }
    Some(deg.unwrap_or(0))
}

/// `(I : x_var^∞)` for weighted-homogeneous `I`, by dividing a grevlex basis
/// with `x_var` smallest by the largest power of `x_var`.
fn saturate_by_variable(gens: &[Polynomial], weights: &[u64], var: usize) -> Vec<Polynomial> {
    let order = MonomialOrder::weighted_grevlex_with_last(weights, var);
    let gb = groebner_basis(gens, &order);
    gb.elements
        .iter()
        .map(|g| {
            let k = g.var_valuation(var);
            g.div_var_power(var, k)
        })
        .collect()
}

/// `(I : g^∞)` by the Rabinowitsch trick: adjoin `t`, add `1 - t g`, eliminate `t`.
pub fn saturate_element_rabinowitsch(gens: &[Polynomial], weights: &[u64], g: &Polynomial) -> Vec<Polynomial> {
    let n = weights.len();
    let t = n;
    let mut w = weights.to_vec();
    w.push(1);
    let mut ext: Vec<Polynomial> = gens.iter().map(|f| f.extend_vars(1)).collect();
    let tg = &Polynomial::var(n + 1, t) * &g.extend_vars(1);
    ext.push(&Polynomial::one(n + 1) - &tg);
    let keep: Vec<usize> = (0..n).collect();
    eliminate_gens(&ext, &w, &[t]).iter().map(|f| f.restrict_vars(&keep)).collect()
}

/// `(I : g^∞)` for an arbitrary ideal given by generators in a ring with the given
/// (positive) weights. Homogeneous inputs use a graded method, other inputs the
/// Rabinowitsch trick.
pub fn saturate_element_gens(gens: &[Polynomial], weights: &[u64], g: &Polynomial) -> Vec<Polynomial> {
    assert!(!g.is_zero(), "saturation by zero");
    if g.is_constant() {
        return gens.to_vec();
    }
    let homogeneous = gens.iter().all(|f| weighted_homogeneous(f, weights).is_some());
    let gdeg = weighted_homogeneous(g, weights);
    match gdeg {
        Some(gw) if homogeneous => {
            if g.len() == 1 {
                // monomial: saturate variable by variable
                let m = g.terms()[0].0.clone();
                let mut cur = gens.to_vec();
                for v in m.support() {
                    cur = saturate_by_variable(&cur, weights, v);
                }
                return cur;
            }
            // adjoin t of the same weight as g; (I + (g - t)) : t^∞, then t -> g
            let n = weights.len();
            let mut w = weights.to_vec();
            w.push(gw);
            let mut ext: Vec<Polynomial> = gens.iter().map(|f| f.extend_vars(1)).collect();
            ext.push(&g.extend_vars(1) - &Polynomial::var(n + 1, n));
            let sat = saturate_by_variable(&ext, &w, n);
            let gext = g.extend_vars(1);
            let keep: Vec<usize> = (0..n).collect();
            let out: Vec<Polynomial> = sat.iter().map(|f| f.substitute(n, &gext).restrict_vars(&keep)).filter(|f| !f.is_zero()).collect();
            let gb = groebner_basis(&out, &MonomialOrder::weighted_grevlex(weights));
            gb.elements
        }
        _ => saturate_element_rabinowitsch(gens, weights, g),
    }
}

/// Generators of `I ∩ J` via a tag variable.
pub fn intersect_gens(a: &[Polynomial], b: &[Polynomial], weights: &[u64]) -> Vec<Polynomial> {
    let a: Vec<&Polynomial> = a.iter().filter(|f| !f.is_zero()).collect();
    let b: Vec<&Polynomial> = b.iter().filter(|f| !f.is_zero()).collect();
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = weights.len();
    if a.iter().any(|f| f.is_unit()) {
        return b.into_iter().cloned().collect();
    }
    if b.iter().any(|f| f.is_unit()) {
        return a.into_iter().cloned().collect();
    }
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let mut ext: Vec<Polynomial> = a.iter().map(|f| &t * &f.extend_vars(1)).collect();
    ext.extend(b.iter().map(|f| &one_minus_t * &f.extend_vars(1)));
    let mut w = weights.to_vec();
    w.push(1);
    let keep: Vec<usize> = (0..n).collect();
    eliminate_gens(&ext, &w, &[n]).iter().map(|f| f.restrict_vars(&keep)).collect()
}

/// `(I : J^∞)` as the intersection of the element saturations `(I : g^∞)`, g in J.
pub fn saturate_ideal_gens(gens: &[Polynomial], weights: &[u64], by: &[Polynomial]) -> Vec<Polynomial> {
    let by: Vec<&Polynomial> = by.iter().filter(|g| !g.is_zero()).collect();
    assert!(!by.is_empty(), "saturation by the zero ideal");
    if by.iter().any(|g| g.is_constant()) {
        return gens.to_vec();
    }
    let parts: Vec<Vec<Polynomial>> = by.par_iter().map(|g| saturate_element_gens(gens, weights, g)).collect();
    let mut it = parts.into_iter();
    let mut acc = it.next().unwrap();
    for p in it {
        acc = intersect_gens(&acc, &p, weights);
    }
    acc
}

/// Krull dimension of `k[x]/I` from the leading monomials of a Gröbner basis;
/// `None` for the unit ideal.
pub fn krull_dimension_of_basis(gb: &GroebnerBasis) -> Option<usize> {
    if gb.is_unit() {
        return None;
    }
    let n = gb.nvars();
    let leads: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    // largest variable set containing no leading-monomial support
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if leads.iter().all(|&l| l & !mask != 0) {
            best = size;
        }
    }
    Some(best)
}

/// Number of standard monomials of a zero-dimensional ideal (0 for the unit ideal).
pub fn vector_space_dimension_of_basis(gb: &GroebnerBasis) -> Result<usize> {
    if gb.is_unit() {
        return Ok(0);
    }
    let n = gb.nvars();
    let leads = gb.leading_monomials();
    let mut bounds = vec![0u32; n];
    for (i, b) in bounds.iter_mut().enumerate() {
        let pure = leads.iter().filter(|m| m.support().all(|j| j == i)).map(|m| m.exponents()[i]).filter(|&e| e > 0).min();
        *b = pure.ok_or(Error::NotZeroDimensional)?;
    }
    fn count(pos: usize, e: &mut Vec<u32>, bounds: &[u32], leads: &[Monomial]) -> usize {
        if pos == e.len() {
            let m = Monomial::from_exponents(e);
            return usize::from(!leads.iter().any(|l| l.divides(&m)));
        }
        let mut total = 0;
        for x in 0..bounds[pos] {
            e[pos] = x;
            // prune: if the partial monomial is already divisible, all extensions are too
            let partial = Monomial::from_exponents(e);
            if leads.iter().any(|l| l.divides(&partial)) {
                break;
            }
            total += count(pos + 1, e, bounds, leads);
        }
        e[pos] = 0;
        total
    }
    let mut e = vec![0u32; n];
    Ok(count(0, &mut e, &bounds, &leads))
}

/// An ideal of an ungraded (or weight-graded) polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    weights: Vec<u64>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Self {
        Self::with_weights(vec![1; nvars], gens)
    }

    pub fn with_weights(weights: Vec<u64>, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { weights, gens, gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Reduced basis in weighted grevlex.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| groebner_basis(&self.gens, &MonomialOrder::weighted_grevlex(&self.weights)))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_unit()) || self.gb().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn add(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::with_weights(self.weights.clone(), gens)
    }

    pub fn saturate_element(&self, g: &Polynomial) -> Ideal {
        Ideal::with_weights(self.weights.clone(), saturate_element_gens(&self.gens, &self.weights, g))
    }

    pub fn saturate(&self, by: &Ideal) -> Ideal {
        Ideal::with_weights(self.weights.clone(), saturate_ideal_gens(&self.gens, &self.weights, &by.gens))
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        Ideal::with_weights(self.weights.clone(), intersect_gens(&self.gens, &other.gens, &self.weights))
    }

    pub fn krull_dimension(&self) -> Option<usize> {
        krull_dimension_of_basis(self.gb())
    }

    pub fn vector_space_dimension(&self) -> Result<usize> {
        vector_space_dimension_of_basis(self.gb())
    }
}

/// Ideal of the Cox ring generated by nonzero multihomogeneous polynomials.
#[derive(Clone, Debug)]
pub struct MultigradedIdeal {
    ctx: Arc<RingContext>,
    inner: Ideal,
    degrees: Vec<MultiDegree>,
}

impl MultigradedIdeal {
    pub fn new(ctx: Arc<RingContext>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::new();
        let mut degrees = Vec::new();
        for (index, g) in gens.into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let d = multidegree_of(&g, &ctx).map_err(|e| match e {
                Error::NotHomogeneous { first, second } => Error::NonHomogeneousGenerator { index, first, second },
                other => other,
            })?;
            degrees.push(d);
            kept.push(g);
        }
        let inner = Ideal::with_weights(ctx.weights().to_vec(), kept);
        Ok(MultigradedIdeal { ctx, inner, degrees })
    }

    pub fn unit(ctx: Arc<RingContext>) -> Self {
        let n = ctx.nvars();
        Self::new(ctx, vec![Polynomial::one(n)]).unwrap()
    }

    pub fn zero(ctx: Arc<RingContext>) -> Self {
        Self::new(ctx, vec![]).unwrap()
    }

    fn from_trusted(ctx: Arc<RingContext>, gens: Vec<Polynomial>) -> Self {
        Self::new(ctx, gens).expect("ideal operation produced a non-homogeneous generator")
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        self.inner.gens()
    }

    pub fn degrees(&self) -> &[MultiDegree] {
        &self.degrees
    }

    pub fn as_ideal(&self) -> &Ideal {
        &self.inner
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.inner.gb()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.gens().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.inner.contains(f)
    }

    pub fn same_as(&self, other: &MultigradedIdeal) -> bool {
        self.inner.same_as(&other.inner)
    }

    /// Same ideal with generators replaced by its reduced Gröbner basis.
    pub fn minimized(&self) -> MultigradedIdeal {
        Self::from_trusted(self.ctx.clone(), self.gb().elements().to_vec())
    }

    pub fn add(&self, extra: &[Polynomial]) -> Result<MultigradedIdeal> {
        let mut gens = self.gens().to_vec();
        gens.extend(extra.iter().cloned());
        Self::new(self.ctx.clone(), gens)
    }
}

/// Generators of `I ∩ k[variables not in vars]`.
pub fn eliminate(ideal: &MultigradedIdeal, vars: &[usize]) -> MultigradedIdeal {
    let gens = eliminate_gens(ideal.gens(), ideal.ctx.weights(), vars);
    MultigradedIdeal::from_trusted(ideal.ctx.clone(), gens)
}

/// `(I : g^∞)`.
pub fn saturate_element(ideal: &MultigradedIdeal, g: &Polynomial) -> MultigradedIdeal {
    let gens = saturate_element_gens(ideal.gens(), ideal.ctx.weights(), g);
    MultigradedIdeal::from_trusted(ideal.ctx.clone(), gens)
}

/// `(I : J^∞)`.
pub fn saturate_ideal(ideal: &MultigradedIdeal, by: &MultigradedIdeal) -> MultigradedIdeal {
    let gens = saturate_ideal_gens(ideal.gens(), ideal.ctx.weights(), by.gens());
    MultigradedIdeal::from_trusted(ideal.ctx.clone(), gens)
}

pub fn intersect(a: &MultigradedIdeal, b: &MultigradedIdeal) -> MultigradedIdeal {
    let gens = intersect_gens(a.gens(), b.gens(), a.ctx.weights());
    MultigradedIdeal::from_trusted(a.ctx.clone(), gens)
}

/// Krull dimension of the affine quotient; `None` for the unit ideal.
pub fn krull_dimension(ideal: &MultigradedIdeal) -> Option<usize> {
    ideal.inner.krull_dimension()
}

/// Length of an Artinian quotient.
pub fn vector_space_dimension(ideal: &MultigradedIdeal) -> Result<usize> {
    ideal.inner.vector_space_dimension()
}
