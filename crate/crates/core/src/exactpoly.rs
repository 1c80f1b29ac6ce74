//! Exact rational arithmetic and sparse multivariate polynomials over the Cox ring.
//!
//! Coefficients are arbitrary-precision rationals. A [`Polynomial`] keeps its
//! terms sorted by descending exponent vector (plain lexicographic on the
//! exponents), which makes the representation canonical independently of any
//! monomial order; Gröbner computations re-sort internally.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept with nonzero coefficients, no repeated monomial, sorted by
/// descending exponent vector. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    /// Assumes `terms` are already sorted descending, distinct, and nonzero.
    #[allow(dead_code)]
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// True for a nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplication by a monomial preserves lexicographic order
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Whether `x_var` occurs in any term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        let nvars = self.nvars + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.extend(std::iter::repeat_n(0, extra));
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial { nvars, terms }
    }

    /// Keeps only the listed variables (in that order). Panics if a dropped
    /// variable occurs.
    pub fn restrict_vars(&self, keep: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            debug_assert!((0..self.nvars).filter(|i| !keep.contains(i)).all(|i| m.0[i] == 0));
            (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone())
        });
        Polynomial::from_terms(keep.len(), terms)
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e: SmallVec<[u32; 8]> = SmallVec::from_elem(0, nvars);
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(nvars, terms)
    }

    /// Sets every variable outside `keep` to 1 and drops it.
    pub fn dehomogenize(&self, keep: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()));
        Polynomial::from_terms(keep.len(), terms)
    }

    /// Substitutes `value` for variable `var`; the result still has `nvars` variables.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.nvars)];
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            acc = &acc + &powers[e].mul_monomial(&rest).scale(c);
        }
        acc
    }

    /// Largest power of `var` dividing every term.
    pub fn var_valuation(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).min().unwrap_or(0)
    }

    /// Divides by `var^k`; requires `k <= var_valuation(var)`.
    pub fn div_var_power(&self, var: usize, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.0[var] -= k;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies through by a positive rational so coefficients are coprime
    /// integers with a positive leading (lexicographically largest) coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            content = content.gcd(&n);
        }
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let factor = Rational::new(den, content);
        self.scale(&factor)
    }

    /// Monic with respect to the lexicographically largest term.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn merge_add(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    assert_eq!(a.nvars, b.nvars, "polynomials from different rings");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let bcoef = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.terms.len() && j < b.terms.len() {
        match a.terms[i].0.cmp(&b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b.terms[j].0.clone(), bcoef(&b.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a.terms[i].1 + bcoef(&b.terms[j].1);
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), bcoef(c))));
    Polynomial { nvars: a.nvars, terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge_add(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge_add(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomials from different rings");
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars: self.nvars, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A class in Pic(X) written in the coordinates fixed by the grading matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(len: usize) -> Self {
        MultiDegree(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// Variables, Pic-grading and heft of a Cox ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    names: Vec<String>,
    /// `grading[row][var]`, shape (r-k) x r.
    grading: Vec<Vec<i64>>,
    heft: Vec<i64>,
    weights: Vec<u64>,
}

impl RingContext {
    pub fn new(names: Vec<String>, grading: Vec<Vec<i64>>, heft: Vec<i64>) -> Result<Self> {
        let r = names.len();
        if grading.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("grading matrix width differs from variable count".into()));
        }
        if heft.len() != grading.len() {
            return Err(Error::InvalidInput("heft vector length differs from grading rank".into()));
        }
        let mut weights = Vec::with_capacity(r);
        for i in 0..r {
            let w: i64 = grading.iter().zip(&heft).map(|(row, h)| row[i] * h).sum();
            if w <= 0 {
                return Err(Error::NoPositiveGrading);
            }
            weights.push(w as u64);
        }
        Ok(RingContext { names, grading, heft, weights })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn rank(&self) -> usize {
        self.grading.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &[Vec<i64>] {
        &self.grading
    }

    pub fn heft(&self) -> &[i64] {
        &self.heft
    }

    /// Heft-weighted degree of each variable; all positive.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn var_degree(&self, i: usize) -> MultiDegree {
        MultiDegree(self.grading.iter().map(|row| row[i]).collect())
    }

    pub fn degree_of_monomial(&self, m: &Monomial) -> MultiDegree {
        MultiDegree(self.grading.iter().map(|row| row.iter().zip(m.0.iter()).map(|(a, &e)| a * e as i64).sum()).collect())
    }

    pub fn weight_of(&self, d: &MultiDegree) -> i64 {
        d.dot(&self.heft)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Multidegree of a nonzero homogeneous polynomial.
pub fn multidegree_of(f: &Polynomial, ctx: &RingContext) -> Result<MultiDegree> {
    let mut it = f.terms().iter();
    let (m0, _) = it.next().ok_or(Error::ZeroPolynomial)?;
    let d0 = ctx.degree_of_monomial(m0);
    for (m, _) in it {
        let d = ctx.degree_of_monomial(m);
        if d != d0 {
            return Err(Error::NotHomogeneous { first: d0, second: d });
        }
    }
    Ok(d0)
}

pub fn is_homogeneous(f: &Polynomial, ctx: &RingContext) -> bool {
    f.is_zero() || multidegree_of(f, ctx).is_ok()
}

/// All exponent vectors `e >= 0` with `A e = degree`, in ascending lexicographic order.
pub fn monomials_of_degree(degree: &MultiDegree, ctx: &RingContext) -> Vec<Monomial> {
    let r = ctx.nvars();
    let target = ctx.weight_of(degree);
    let mut out = Vec::new();
    if target < 0 {
        return out;
    }
    let weights: Vec<i64> = ctx.weights().iter().map(|&w| w as i64).collect();
    let mut e = vec![0u32; r];
    // descend from the last variable so that the output comes out lexicographically ascending
    fn rec(pos: usize, remaining: i64, e: &mut Vec<u32>, weights: &[i64], degree: &MultiDegree, ctx: &RingContext, out: &mut Vec<Monomial>) {
        if pos == 0 {
            if remaining == 0 {
                let m = Monomial::from_exponents(e);
                if &ctx.degree_of_monomial(&m) == degree {
                    out.push(m);
                }
            }
            return;
        }
        let i = pos - 1;
        if i == 0 {
            if remaining % weights[0] == 0 {
                e[0] = (remaining / weights[0]) as u32;
                rec(0, 0, e, weights, degree, ctx, out);
                e[0] = 0;
            }
            return;
        }
        let max = remaining / weights[i];
        for x in 0..=max {
            e[i] = x as u32;
            rec(i, remaining - x * weights[i], e, weights, degree, ctx, out);
        }
        e[i] = 0;
    }
    rec(r, target, &mut e, &weights, degree, ctx, &mut out);
    out.sort();
    out
}

/// Deterministic random source; independent streams are derived from a
/// master seed and a path of indices.
#[derive(Clone, Debug)]
pub struct SeededRandomSource {
    rng: ChaCha8Rng,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl SeededRandomSource {
    pub fn new(seed: u64) -> Self {
        SeededRandomSource { rng: ChaCha8Rng::seed_from_u64(splitmix(seed)) }
    }

    /// Stream determined by `seed` and `path` only.
    pub fn derive(seed: u64, path: &[u64]) -> Self {
        let mut h = splitmix(seed);
        for &p in path {
            h = splitmix(h ^ splitmix(p.wrapping_add(0x5851_F42D_4C95_7F2D)));
        }
        SeededRandomSource { rng: ChaCha8Rng::seed_from_u64(h) }
    }

    /// Uniform nonzero integer in `[-bound, bound]`.
    pub fn nonzero_int(&mut self, bound: u64) -> i64 {
        let bound = bound.max(1) as i64;
        let k = self.rng.gen_range(0..2 * bound);
        if k < bound {
            k - bound
        } else {
            k - bound + 1
        }
    }
}

/// `sum c_m * m` over all monomials `m` of the given degree, with random nonzero `c_m`.
pub fn random_homogeneous(degree: &MultiDegree, rng: &mut SeededRandomSource, bound: u64, ctx: &RingContext) -> Result<Polynomial> {
    let monos = monomials_of_degree(degree, ctx);
    if monos.is_empty() {
        return Err(Error::EmptyDegree(degree.clone()));
    }
    let terms: Vec<_> = monos.into_iter().map(|m| (m, rat(rng.nonzero_int(bound)))).collect();
    Ok(Polynomial::from_terms(ctx.nvars(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1_ctx() -> RingContext {
        RingContext::new(vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()], vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]], vec![1, 1]).unwrap()
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(e), rat(1))
    }

    #[test]
    fn degree_on_hirzebruch() {
        let ctx = f1_ctx();
        // x1*y0^2
        assert_eq!(multidegree_of(&mono(&[0, 1, 2, 0]), &ctx).unwrap(), MultiDegree(vec![3, 2]));
        let five = Polynomial::constant(4, rat(5));
        assert_eq!(multidegree_of(&five, &ctx).unwrap(), MultiDegree(vec![0, 0]));
        let bad = &mono(&[1, 0, 0, 0]) + &mono(&[0, 0, 0, 1]);
        assert!(matches!(multidegree_of(&bad, &ctx), Err(Error::NotHomogeneous { .. })));
        assert!(matches!(multidegree_of(&Polynomial::zero(4), &ctx), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn monomials_of_small_degrees() {
        let ctx = f1_ctx();
        assert_eq!(monomials_of_degree(&MultiDegree(vec![0, 0]), &ctx), vec![Monomial::one(4)]);
        let ms = monomials_of_degree(&MultiDegree(vec![1, 0]), &ctx);
        assert_eq!(ms, vec![Monomial::from_exponents(&[0, 1, 0, 0]), Monomial::from_exponents(&[1, 0, 0, 0])]);
        let ms = monomials_of_degree(&MultiDegree(vec![0, 1]), &ctx);
        assert_eq!(ms, vec![Monomial::from_exponents(&[0, 0, 0, 1])]);
        assert!(monomials_of_degree(&MultiDegree(vec![-1, 0]), &ctx).is_empty());
        assert_eq!(monomials_of_degree(&MultiDegree(vec![2, 2]), &ctx).len(), 6);
    }

    #[test]
    fn random_sections_are_deterministic() {
        let ctx = f1_ctx();
        let d = MultiDegree(vec![1, 0]);
        let a = random_homogeneous(&d, &mut SeededRandomSource::new(7), 3, &ctx).unwrap();
        let b = random_homogeneous(&d, &mut SeededRandomSource::new(7), 3, &ctx).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        for (_, c) in a.terms() {
            assert!(!c.is_zero() && c.abs() <= rat(3));
        }
        let single = random_homogeneous(&MultiDegree(vec![0, 1]), &mut SeededRandomSource::new(1), 5, &ctx).unwrap();
        assert_eq!(single.len(), 1);
        assert!(matches!(random_homogeneous(&MultiDegree(vec![-1, 0]), &mut SeededRandomSource::new(1), 5, &ctx), Err(Error::EmptyDegree(_))));
    }

    #[test]
    fn substitution_and_valuation() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let f = &(&x * &x) * &y + &x * &y; // x^2 y + x y
        assert_eq!(f.var_valuation(1), 1);
        assert_eq!(f.var_valuation(0), 1);
        let g = f.substitute(1, &(&x + &Polynomial::one(2)));
        let expect = (&(&x * &x) * &x) + &(&x * &x) * &Polynomial::constant(2, rat(2)) + x.clone();
        assert_eq!(g, expect);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..6), 0..5)
                .prop_map(|ts| Polynomial::from_terms(3, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), rat(c)))))
        }

        proptest! {
            #[test]
            fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
                prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
                prop_assert!((&f - &f).is_zero());
            }

            #[test]
            fn degree_is_additive(a in prop::collection::vec(0u32..3, 4), b in prop::collection::vec(0u32..3, 4),
                                  c in prop::collection::vec(0u32..3, 4)) {
                let ctx = f1_ctx();
                // build homogeneous f from all monomials of the degree of a
                let da = ctx.degree_of_monomial(&Monomial::from_exponents(&a));
                let db = ctx.degree_of_monomial(&Monomial::from_exponents(&b));
                let mut rng = SeededRandomSource::new(c.iter().map(|&x| x as u64).sum());
                let f = random_homogeneous(&da, &mut rng, 4, &ctx).unwrap();
                let g = random_homogeneous(&db, &mut rng, 4, &ctx).unwrap();
                prop_assert_eq!(multidegree_of(&(&f * &g), &ctx).unwrap(), &da + &db);
            }

            #[test]
            fn enumerated_monomials_are_exact(a in 0i64..5, b in 0i64..5) {
                let ctx = f1_ctx();
                let d = MultiDegree(vec![a, b]);
                let ms = monomials_of_degree(&d, &ctx);
                let mut dedup = ms.clone();
                dedup.dedup();
                prop_assert_eq!(dedup.len(), ms.len());
                for m in &ms {
                    prop_assert_eq!(&ctx.degree_of_monomial(m), &d);
                }
                // brute force count over a box
                let mut count = 0;
                for e0 in 0..=a { for e1 in 0..=a { for e2 in 0..=b { for e3 in 0..=b {
                    let m = Monomial::from_exponents(&[e0 as u32, e1 as u32, e2 as u32, e3 as u32]);
                    if ctx.degree_of_monomial(&m) == d { count += 1; }
                }}}}
                prop_assert_eq!(count, ms.len());
            }
        }
    }
}
