//! Complete smooth fans: validation, the class-group grading of the Cox ring,
//! the irrelevant ideal and affine charts.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactpoly::{rat, Monomial, Polynomial, Rational, RingContext};
use crate::groebner::{Ideal, MultigradedIdeal};
use crate::intmat::{self, IntMatrix};
use crate::linear::{feasible_point, Inequality};

/// Rays (primitive vectors in `Z^k`) and maximal cones (sorted ray index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: IntMatrix,
    cones: Vec<Vec<usize>>,
    dim: usize,
}

/// Shared facet of two adjacent maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub cones: (usize, usize),
    pub facet: Vec<usize>,
    /// The ray of each cone not on the facet.
    pub extra: (usize, usize),
}

impl Fan {
    /// Checks the structural invariants only; see [`validate_smooth_complete`].
    pub fn new(rays: IntMatrix, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let invalid = |m: String| Err(Error::InvalidInput(m));
        if rays.is_empty() || cones.is_empty() {
            return invalid("fan needs at least one ray and one cone".into());
        }
        let dim = rays[0].len();
        if dim == 0 {
            return invalid("rays must have positive length".into());
        }
        for (i, v) in rays.iter().enumerate() {
            if v.len() != dim {
                return invalid(format!("ray {i} has length {}, expected {dim}", v.len()));
            }
            if v.iter().fold(0, |g, &x| intmat::gcd(g, x)) != 1 {
                return invalid(format!("ray {i} is not a primitive vector"));
            }
        }
        let mut sorted = Vec::with_capacity(cones.len());
        for (c, cone) in cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != cone.len() || set.is_empty() {
                return invalid(format!("cone {c} is empty or repeats a ray"));
            }
            if let Some(&i) = set.iter().find(|&&i| i >= rays.len()) {
                return invalid(format!("cone {c} refers to ray {i}, but there are {} rays", rays.len()));
            }
            sorted.push(set.into_iter().collect::<Vec<_>>());
        }
        for (a, ca) in sorted.iter().enumerate() {
            for (b, cb) in sorted.iter().enumerate() {
                if a != b && ca.iter().all(|i| cb.contains(i)) {
                    return invalid(format!("cone {a} is contained in cone {b}"));
                }
            }
        }
        if let Some(i) = (0..rays.len()).find(|i| !sorted.iter().any(|c| c.contains(i))) {
            return invalid(format!("ray {i} lies in no cone"));
        }
        Ok(Fan { rays, cones: sorted, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Whether the ray set spans a cone of the fan.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.cones.iter().any(|c| rays.iter().all(|i| c.contains(i)))
    }

    /// Number of cones of each dimension `0..=k`.
    pub fn cone_counts(&self) -> Vec<usize> {
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u64..(1 << c.len()) {
                faces.insert(c.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &i)| i).collect());
            }
        }
        let mut counts = vec![0; self.dim + 1];
        for f in faces {
            if f.len() <= self.dim {
                counts[f.len()] += 1;
            }
        }
        counts
    }

    /// Minimal subsets of rays that do not span a cone.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let r = self.nrays();
        let mut out: Vec<Vec<usize>> = Vec::new();
        // a minimal non-face has at most k+1 elements; grow by size
        for size in 2..=(self.dim + 1).min(r) {
            for set in subsets(r, size) {
                if !self.is_face(&set) && out.iter().all(|m| !m.iter().all(|i| set.contains(i))) {
                    out.push(set);
                }
            }
        }
        out
    }

    fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// All walls, each listed once with `cones.0 < cones.1`.
    pub fn walls(&self) -> Vec<Wall> {
        let mut out = Vec::new();
        for (a, ca) in self.cones.iter().enumerate() {
            for (b, cb) in self.cones.iter().enumerate().skip(a + 1) {
                let facet: Vec<usize> = ca.iter().copied().filter(|i| cb.contains(i)).collect();
                if facet.len() + 1 == self.dim && ca.len() == self.dim && cb.len() == self.dim {
                    let ea = *ca.iter().find(|i| !facet.contains(i)).unwrap();
                    let eb = *cb.iter().find(|i| !facet.contains(i)).unwrap();
                    out.push(Wall { cones: (a, b), facet, extra: (ea, eb) });
                }
            }
        }
        out
    }
}

pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Integer normal vector of the hyperplane spanned by `k - 1` vectors in `Z^k`.
fn cofactor_normal(vectors: &[Vec<i64>], k: usize) -> Vec<i64> {
    (0..k)
        .map(|i| {
            let minor: IntMatrix = vectors.iter().map(|v| v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()).collect();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * intmat::det(&minor)
        })
        .collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smoothness (every maximal cone is spanned by a lattice basis) and
/// completeness (every facet borders exactly two cones lying on opposite
/// sides, and a generic vector lies in exactly one cone).
pub fn validate_smooth_complete(fan: &Fan) -> Result<()> {
    let k = fan.dim;
    for (c, cone) in fan.cones.iter().enumerate() {
        if cone.len() != k || intmat::det(&fan.cone_matrix(cone)).abs() != 1 {
            return Err(Error::NotSmooth { cone: c });
        }
    }
    for (c, cone) in fan.cones.iter().enumerate() {
        for &out in cone {
            let facet: Vec<usize> = cone.iter().copied().filter(|&i| i != out).collect();
            let mut normal = cofactor_normal(&fan.cone_matrix(&facet), k);
            if dot(&normal, &fan.rays[out]) < 0 {
                normal.iter_mut().for_each(|x| *x = -*x);
            }
            let neighbours: Vec<usize> = (0..fan.cones.len()).filter(|&d| d != c && facet.iter().all(|i| fan.cones[d].contains(i))).collect();
            let opposite = |d: usize| {
                let extra = fan.cones[d].iter().find(|i| !facet.contains(i)).unwrap();
                dot(&normal, &fan.rays[*extra]) < 0
            };
            if neighbours.len() != 1 || !opposite(neighbours[0]) {
                return Err(Error::NotComplete { cone: c, facet });
            }
        }
    }
    // local pairing makes the covering number constant; check it is one
    for base in 2i64.. {
        let w: Vec<i64> = (0..k as u32).map(|i| base.pow(i) * if i % 2 == 0 { 1 } else { -1 } + i as i64).collect();
        let mut hits = 0;
        let mut degenerate = false;
        for cone in &fan.cones {
            let m = intmat::transpose(&fan.cone_matrix(cone));
            let d = intmat::det(&m);
            // Cramer: coordinates of w in the cone's ray basis, up to the sign of d
            let coords: Vec<i64> = (0..k)
                .map(|j| {
                    let mut mj = m.clone();
                    for (row, wi) in mj.iter_mut().zip(&w) {
                        row[j] = *wi;
                    }
                    intmat::det(&mj) * d
                })
                .collect();
            if coords.contains(&0) {
                degenerate = true;
                break;
            }
            if coords.iter().all(|&x| x > 0) {
                hits += 1;
            }
        }
        if degenerate {
            continue;
        }
        if hits != 1 {
            return Err(Error::NotComplete { cone: 0, facet: Vec::new() });
        }
        break;
    }
    Ok(())
}

/// Canonical grading: the Hermite normal form of the integer relations among
/// the rays, with a heft vector.
pub fn grading_matrix(fan: &Fan) -> Result<(IntMatrix, Vec<i64>)> {
    let a = intmat::hermite_normal_form(&intmat::left_kernel(&fan.rays));
    let heft = find_heft(&a)?;
    Ok((a, heft))
}

/// Checks that a user-supplied degree matrix is a valid class map for the fan.
pub fn validate_grading(fan: &Fan, a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = fan.nrays();
    let expect = r - fan.dim;
    if a.len() != expect {
        return Err(Error::InvalidGrading(format!("expected {expect} rows, found {}", a.len())));
    }
    if let Some(i) = a.iter().position(|row| row.len() != r) {
        return Err(Error::InvalidGrading(format!("row {i} does not have {r} entries")));
    }
    if intmat::mul(a, &fan.rays).iter().flatten().any(|&x| x != 0) {
        return Err(Error::InvalidGrading("degrees do not annihilate the ray relations".into()));
    }
    let inv = intmat::smith_invariants(a);
    if inv.len() != expect || inv.iter().any(|&x| x != 1) {
        return Err(Error::InvalidGrading("degree map is not onto the class group".into()));
    }
    find_heft(a)
}

/// Integer `h` with `h · a_i > 0` for every column `a_i`.
pub fn find_heft(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let ineqs: Vec<Inequality> = (0..cols).map(|j| Inequality::from_ints(&a.iter().map(|row| row[j]).collect::<Vec<_>>(), 1)).collect();
    let x = feasible_point(&ineqs, rows).ok_or(Error::NoPositiveGrading)?;
    Ok(clear_denominators(&x))
}

/// Smallest positive multiple of a rational vector that is integral, divided
/// by the gcd of its entries.
pub(crate) fn clear_denominators(x: &[Rational]) -> Vec<i64> {
    let l = x.iter().fold(num_bigint::BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<num_bigint::BigInt> = x.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::from(0), |g, v| g.gcd(v));
    let g = if g == num_bigint::BigInt::from(0) { num_bigint::BigInt::one() } else { g };
    ints.iter().map(|v| i64::try_from(v / &g).expect("integer overflow")).collect()
}

/// Cox ring of a validated fan: grading, heft and irrelevant ideal.
#[derive(Clone, Debug)]
pub struct CoxContext {
    fan: Fan,
    ring: Arc<RingContext>,
    irrelevant: MultigradedIdeal,
}

impl CoxContext {
    /// Validates the fan, then builds the ring with the given (or canonical)
    /// grading and variable names (default `z0, z1, ...`).
    pub fn new(fan: Fan, names: Option<Vec<String>>, degrees: Option<IntMatrix>) -> Result<CoxContext> {
        validate_smooth_complete(&fan)?;
        let r = fan.nrays();
        let names = match names {
            Some(n) if n.len() != r => return Err(Error::InvalidInput(format!("{} variable names for {r} rays", n.len()))),
            Some(n) => {
                let distinct: BTreeSet<&String> = n.iter().collect();
                if distinct.len() != n.len() {
                    return Err(Error::InvalidInput("variable names must be distinct".into()));
                }
                n
            }
            None => (0..r).map(|i| format!("z{i}")).collect(),
        };
        let (a, heft) = match degrees {
            Some(a) => {
                let h = validate_grading(&fan, &a)?;
                (a, h)
            }
            None => grading_matrix(&fan)?,
        };
        let ring = Arc::new(RingContext::new(names, a, heft)?);
        let irrelevant = irrelevant_ideal(&fan, &ring);
        Ok(CoxContext { fan, ring, irrelevant })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn irrelevant(&self) -> &MultigradedIdeal {
        &self.irrelevant
    }
}

/// `x^σ̂` for the maximal cone σ: the product of the variables off σ.
pub fn cone_complement_monomial(fan: &Fan, cone: usize) -> Polynomial {
    let e: Vec<u32> = (0..fan.nrays()).map(|i| u32::from(!fan.cones[cone].contains(&i))).collect();
    Polynomial::monomial(Monomial::from_exponents(&e), rat(1))
}

pub fn irrelevant_ideal(fan: &Fan, ctx: &Arc<RingContext>) -> MultigradedIdeal {
    let gens = (0..fan.cones.len()).map(|c| cone_complement_monomial(fan, c)).collect();
    MultigradedIdeal::new(ctx.clone(), gens).expect("monomials are homogeneous")
}

/// Affine chart of the maximal cone: variables off the cone are set to 1;
/// the remaining ones keep their order.
pub fn chart_dehomogenize(gens: &[Polynomial], fan: &Fan, cone: usize) -> Ideal {
    let keep = &fan.cones[cone];
    Ideal::new(keep.len(), gens.iter().map(|g| g.dehomogenize(keep)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn p1() -> Fan {
        Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    pub(crate) fn p2() -> Fan {
        Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    pub(crate) fn hirzebruch(e: i64) -> Fan {
        Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, e], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap()
    }

    #[test]
    fn library_fans_validate() {
        for f in [p1(), p2(), hirzebruch(0), hirzebruch(1), hirzebruch(3)] {
            validate_smooth_complete(&f).unwrap();
        }
    }

    #[test]
    fn singular_and_incomplete_fans_are_rejected() {
        let f = Fan::new(vec![vec![1, 0], vec![1, 2], vec![-1, -1], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        assert_eq!(validate_smooth_complete(&f), Err(Error::NotSmooth { cone: 0 }));
        let f = Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(matches!(validate_smooth_complete(&f), Err(Error::NotComplete { .. })));
        // octagon fan
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1]];
        let cones = vec![vec![0, 4], vec![4, 1], vec![1, 5], vec![5, 2], vec![2, 6], vec![6, 3], vec![3, 7], vec![7, 0]];
        validate_smooth_complete(&Fan::new(rays, cones).unwrap()).unwrap();
        assert!(Fan::new(vec![vec![2, 0]], vec![vec![0]]).is_err());
    }

    #[test]
    fn canonical_gradings() {
        assert_eq!(grading_matrix(&p2()).unwrap().0, vec![vec![1, 1, 1]]);
        let (a, h) = grading_matrix(&hirzebruch(1)).unwrap();
        assert_eq!(intmat::mul(&a, hirzebruch(1).rays()), vec![vec![0, 0], vec![0, 0]]);
        for (x, y) in a[0].iter().zip(&a[1]) {
            assert!(h[0] * x + h[1] * y > 0);
        }
    }

    #[test]
    fn user_grading_is_checked() {
        // variable order x0, x1, y0, y1 with rays (1,0), (-1,1), (0,-1), (0,1)
        let f = Fan::new(vec![vec![1, 0], vec![-1, 1], vec![0, -1], vec![0, 1]], vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let given = vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]];
        validate_grading(&f, &given).unwrap();
        assert!(validate_grading(&f, &[vec![2, 2, 2, 0], vec![0, 0, 1, 1]]).is_err());
        assert!(validate_grading(&f, &[vec![1, 1, 1, 0]]).is_err());
        // the canonical and the supplied grading differ by a unimodular change
        let (a, _) = grading_matrix(&f).unwrap();
        let inv = intmat::right_inverse(&given).unwrap();
        let t = intmat::mul(&a, &inv);
        assert_eq!(intmat::mul(&t, &given), a);
        assert_eq!(intmat::det(&t).abs(), 1);
    }

    #[test]
    fn irrelevant_ideal_and_charts() {
        let f = hirzebruch(1);
        let ctx = CoxContext::new(f.clone(), None, None).unwrap();
        assert_eq!(ctx.irrelevant().gens().len(), 4);
        for c in 0..4 {
            assert!(chart_dehomogenize(ctx.irrelevant().gens(), &f, c).is_unit());
        }
        let p = p2();
        let x0 = Polynomial::var(3, 0);
        assert!(!chart_dehomogenize(std::slice::from_ref(&x0), &p, 0).is_unit());
        assert!(chart_dehomogenize(&[x0], &p, 1).is_unit());
    }

    #[test]
    fn faces_and_counts() {
        assert_eq!(p2().cone_counts(), vec![1, 3, 3]);
        assert_eq!(p2().minimal_nonfaces(), vec![vec![0, 1, 2]]);
        assert_eq!(hirzebruch(1).minimal_nonfaces(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(hirzebruch(1).walls().len(), 4);
    }
}
