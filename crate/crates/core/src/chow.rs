//! The Chow ring of a smooth complete toric variety: presentation by
//! Stanley–Reisner monomials and linear relations, graded monomial bases,
//! products, the degree map and the class of a Picard degree.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, Monomial, MultiDegree, Polynomial, Rational, RingContext};
use crate::fan::Fan;
use crate::groebner::{groebner_basis, normal_form, GroebnerBasis, MonomialOrder};
use crate::intmat;

/// A class of pure codimension, as integer coefficients over the stored basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChowClass {
    pub codim: usize,
    pub coeffs: Vec<i64>,
}

impl ChowClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug)]
pub struct ChowRing {
    k: usize,
    r: usize,
    gb: GroebnerBasis,
    bases: Vec<Vec<Monomial>>,
    /// Degree of the single top-codimension basis monomial.
    top_degree: i64,
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Ranks `h_0..h_k` predicted from the numbers `d_j` of `j`-dimensional cones.
pub fn predicted_ranks(cone_counts: &[usize]) -> Vec<i64> {
    let k = cone_counts.len() - 1;
    (0..=k).map(|i| (i..=k).map(|j| if (j - i) % 2 == 0 { 1 } else { -1 } * binomial(j as i64, i as i64) * cone_counts[k - j] as i64).sum()).collect()
}

pub(crate) fn monomials_of_total_degree(r: usize, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == e.len() {
            e[pos] = left;
            out.push(Monomial::from_exponents(e));
            return;
        }
        for x in (0..=left).rev() {
            e[pos] = x;
            rec(pos + 1, left - x, e, out);
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; r], &mut out);
    out
}

impl ChowRing {
    /// Builds the presentation and checks the graded ranks against the cone counts.
    pub fn build(fan: &Fan) -> Result<ChowRing> {
        let (k, r) = (fan.dim(), fan.nrays());
        let mut gens: Vec<Polynomial> = fan
            .minimal_nonfaces()
            .iter()
            .map(|s| {
                let e: Vec<u32> = (0..r).map(|i| u32::from(s.contains(&i))).collect();
                Polynomial::monomial(Monomial::from_exponents(&e), rat(1))
            })
            .collect();
        for j in 0..k {
            gens.push(Polynomial::from_terms(r, (0..r).map(|i| (Monomial::var(r, i), rat(fan.rays()[i][j])))));
        }
        // grevlex with later divisors larger, so earlier divisors form the bases
        let order = MonomialOrder::weighted_grevlex_ranked(&vec![1; r], (0..r).rev().collect());
        let gb = groebner_basis(&gens, &order);
        let leads = gb.leading_monomials();
        let expected = predicted_ranks(&fan.cone_counts());
        let mut bases = Vec::with_capacity(k + 1);
        for codim in 0..=k + 1 {
            let mut std: Vec<Monomial> = monomials_of_total_degree(r, codim as u32).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).collect();
            std.sort_by(|a, b| order.cmp(a, b));
            let want = if codim <= k { expected[k - codim] } else { 0 };
            if std.len() as i64 != want {
                return Err(Error::RankMismatch { codim, expected: want, found: std.len() });
            }
            if codim <= k {
                bases.push(std);
            }
        }
        let mut ring = ChowRing { k, r, gb, bases, top_degree: 1 };
        let mut value: Option<Rational> = None;
        for cone in fan.max_cones() {
            let e: Vec<u32> = (0..r).map(|i| u32::from(cone.contains(&i))).collect();
            let c = ring.reduce(&Polynomial::monomial(Monomial::from_exponents(&e), rat(1)), k)?;
            let c = c.into_iter().next().unwrap();
            match &value {
                None => value = Some(c),
                Some(v) if *v != c => return Err(Error::NormalizationInconsistent),
                Some(_) => {}
            }
        }
        let v = value.unwrap();
        if v != rat(1) && v != rat(-1) {
            return Err(Error::NonIntegerCoefficient);
        }
        ring.top_degree = if v == rat(1) { 1 } else { -1 };
        Ok(ring)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn ngens(&self) -> usize {
        self.r
    }

    pub fn basis(&self, codim: usize) -> &[Monomial] {
        self.bases.get(codim).map_or(&[], |b| b.as_slice())
    }

    pub fn rank(&self, codim: usize) -> usize {
        self.basis(codim).len()
    }

    /// Rational coordinates of a homogeneous polynomial of the given codimension.
    fn reduce(&self, p: &Polynomial, codim: usize) -> Result<Vec<Rational>> {
        let nf = normal_form(p, &self.gb);
        let basis = self.basis(codim);
        let mut out = vec![Rational::zero(); basis.len()];
        for (m, c) in nf.terms() {
            let pos = basis.iter().position(|b| b == m).ok_or(Error::NonIntegerCoefficient)?;
            out[pos] = c.clone();
        }
        Ok(out)
    }

    /// Class of a homogeneous polynomial in the divisors `D_0..D_{r-1}`.
    pub fn class_of(&self, p: &Polynomial, codim: usize) -> Result<ChowClass> {
        if codim > self.k {
            return Ok(self.zero(codim));
        }
        let coeffs = self
            .reduce(p, codim)?
            .into_iter()
            .map(|c| if c.is_integer() { i64::try_from(c.to_integer()).map_err(|_| Error::NonIntegerCoefficient) } else { Err(Error::NonIntegerCoefficient) })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChowClass { codim, coeffs })
    }

    pub fn to_polynomial(&self, a: &ChowClass) -> Polynomial {
        let terms = self.basis(a.codim).iter().zip(&a.coeffs).map(|(m, &c)| (m.clone(), rat(c)));
        Polynomial::from_terms(self.r, terms)
    }

    pub fn zero(&self, codim: usize) -> ChowClass {
        ChowClass { codim, coeffs: vec![0; self.rank(codim)] }
    }

    pub fn one(&self) -> ChowClass {
        ChowClass { codim: 0, coeffs: vec![1] }
    }

    pub fn divisor(&self, i: usize) -> ChowClass {
        self.class_of(&Polynomial::var(self.r, i), 1).expect("divisor classes are integral")
    }

    pub fn monomial_class(&self, exponents: &[u32]) -> ChowClass {
        let m = Monomial::from_exponents(exponents);
        let codim = m.total_degree() as usize;
        self.class_of(&Polynomial::monomial(m, rat(1)), codim).expect("monomial classes are integral")
    }

    pub fn basis_class(&self, codim: usize, i: usize) -> ChowClass {
        let mut c = self.zero(codim);
        c.coeffs[i] = 1;
        c
    }

    pub fn multiply(&self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
        let codim = a.codim + b.codim;
        if codim > self.k {
            return Ok(self.zero(codim));
        }
        self.class_of(&(&self.to_polynomial(a) * &self.to_polynomial(b)), codim)
    }

    pub fn power(&self, a: &ChowClass, n: usize) -> Result<ChowClass> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn add(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        assert_eq!(a.codim, b.codim, "adding classes of different codimension");
        ChowClass { codim: a.codim, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, a: &ChowClass, c: i64) -> ChowClass {
        ChowClass { codim: a.codim, coeffs: a.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn sub(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        self.add(a, &self.scale(b, -1))
    }

    /// Degree of a top-codimension class; every maximal-cone monomial has degree 1.
    pub fn degree(&self, a: &ChowClass) -> i64 {
        assert_eq!(a.codim, self.k, "degree of a class that is not zero-dimensional");
        a.coeffs[0] * self.top_degree
    }

    /// Class of the divisor with the given Picard degree.
    pub fn pic_to_chow(&self, delta: &MultiDegree, ctx: &RingContext) -> Result<ChowClass> {
        let lift_matrix = intmat::right_inverse(ctx.grading()).ok_or_else(|| Error::NoIntegerLift(delta.clone()))?;
        let lift = intmat::mat_vec(&lift_matrix, &delta.0);
        let p = Polynomial::from_terms(self.r, lift.iter().enumerate().map(|(i, &c)| (Monomial::var(self.r, i), rat(c))));
        self.class_of(&p, 1)
    }

    /// Human-readable class using the given divisor names.
    pub fn display<'a>(&'a self, a: &'a ChowClass, names: &'a [String]) -> ClassDisplay<'a> {
        ClassDisplay { ring: self, class: a, names }
    }
}

pub struct ClassDisplay<'a> {
    ring: &'a ChowRing,
    class: &'a ChowClass,
    names: &'a [String],
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &c) in self.ring.basis(self.class.codim).iter().zip(&self.class.coeffs) {
            if c == 0 {
                continue;
            }
            let mono = monomial_name(m, self.names);
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let sep = if first { "" } else { " " };
            let abs = c.abs();
            let body = match (abs, mono.is_empty()) {
                (_, true) => abs.to_string(),
                (1, false) => mono,
                (_, false) => format!("{abs}*{mono}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sep}{sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `D_i*D_j^2`-style name of a monomial in the divisors.
pub fn monomial_name(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> =
        m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) }).collect();
    parts.join("*")
}

/// Whether the pairing between complementary codimensions is unimodular.
pub fn pairing_is_unimodular(ring: &ChowRing, codim: usize) -> Result<bool> {
    let (a, b) = (ring.rank(codim), ring.rank(ring.dim() - codim));
    if a != b {
        return Ok(false);
    }
    let mut m = vec![vec![0i64; a]; a];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = ring.degree(&ring.multiply(&ring.basis_class(codim, i), &ring.basis_class(ring.dim() - codim, j))?);
        }
    }
    Ok(intmat::det(&m).abs() == 1)
}

impl ChowClass {
    pub fn rational_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|&c| rat(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hirzebruch(e: i64) -> Fan {
        Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, e], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    fn cube() -> Fan {
        let rays = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]];
        let mut cones = Vec::new();
        for a in [0, 3] {
            for b in [1, 4] {
                for c in [2, 5] {
                    cones.push(vec![a, b, c]);
                }
            }
        }
        Fan::new(rays, cones).unwrap()
    }

    #[test]
    fn hirzebruch_relations() {
        for e in 0..4 {
            let ring = ChowRing::build(&hirzebruch(e)).unwrap();
            let (f, ee) = (ring.divisor(0), ring.divisor(1));
            assert_eq!(ring.basis(1).len(), 2);
            let ff = ring.multiply(&f, &f).unwrap();
            assert!(ff.is_zero());
            let ef = ring.multiply(&ee, &f).unwrap();
            let e2 = ring.multiply(&ee, &ee).unwrap();
            assert_eq!(e2, ring.scale(&ef, -e));
            assert_eq!(ring.degree(&ef), 1);
        }
    }

    #[test]
    fn cube_ranks_and_relations() {
        let ring = ChowRing::build(&cube()).unwrap();
        assert_eq!((0..=3).map(|c| ring.rank(c)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        assert_eq!(ring.divisor(0), ring.divisor(3));
        assert!(ring.multiply(&ring.divisor(0), &ring.divisor(3)).unwrap().is_zero());
        assert_eq!(ring.degree(&ring.monomial_class(&[1, 1, 1, 0, 0, 0])), 1);
        for c in 0..=3 {
            assert!(pairing_is_unimodular(&ring, c).unwrap());
        }
    }

    #[test]
    fn predicted_rank_formula() {
        assert_eq!(predicted_ranks(&[1, 6, 12, 8]), vec![1, 3, 3, 1]);
        assert_eq!(predicted_ranks(&[1, 3, 3]), vec![1, 1, 1]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn products_are_associative_and_commutative(e in 0i64..4, a in prop::collection::vec(-3i64..4, 3), b in prop::collection::vec(-3i64..4, 3)) {
            let fan = if e == 3 { cube() } else { hirzebruch(e) };
            let ring = ChowRing::build(&fan).unwrap();
            let r = ring.ngens();
            let lin = |c: &[i64]| -> ChowClass {
                let p = Polynomial::from_terms(r, c.iter().enumerate().map(|(i, &x)| (Monomial::var(r, i), rat(x))));
                ring.class_of(&p, 1).unwrap()
            };
            let (x, y, z) = (lin(&a), lin(&b), lin(&[a[1], b[2], 1]));
            prop_assert_eq!(ring.multiply(&x, &y).unwrap(), ring.multiply(&y, &x).unwrap());
            let left = ring.multiply(&ring.multiply(&x, &y).unwrap(), &z).unwrap();
            let right = ring.multiply(&x, &ring.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
