//! Exact feasibility of systems of linear inequalities `a · x ≥ b` over ℚ by
//! Fourier–Motzkin elimination, plus small exact linear solves.

use num_traits::{One, Signed, Zero};

use crate::exactpoly::Rational;

/// One inequality `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Self {
        Inequality { coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), rhs: Rational::from_integer(rhs.into()) }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs >= self.rhs
    }

    /// Scale so the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= &p;
            }
            self.rhs /= &p;
        }
        self
    }
}

fn dedup(rows: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::with_capacity(rows.len());
    for r in rows.into_iter().map(Inequality::normalized) {
        // keep the tightest right-hand side among parallel rows
        match out.iter_mut().find(|o| o.coeffs == r.coeffs) {
            Some(o) if r.rhs > o.rhs => o.rhs = r.rhs,
            Some(_) => {}
            None => out.push(r),
        }
    }
    out
}

/// A point satisfying every inequality, or `None` if the system is infeasible.
/// Integers are preferred whenever the admissible interval of a coordinate
/// contains one.
pub fn feasible_point(rows: &[Inequality], nvars: usize) -> Option<Vec<Rational>> {
    // systems[j] only involves variables 0..j
    let mut systems = vec![dedup(rows.to_vec())];
    for j in (0..nvars).rev() {
        let cur = systems.last().unwrap();
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in cur {
            if r.coeffs[j].is_positive() {
                lower.push(r);
            } else if r.coeffs[j].is_negative() {
                upper.push(r);
            } else {
                rest.push(r.clone());
            }
        }
        for l in &lower {
            for u in &upper {
                let (a, b) = (l.coeffs[j].clone(), -u.coeffs[j].clone());
                let coeffs = l.coeffs.iter().zip(&u.coeffs).map(|(x, y)| x * &b + y * &a).collect();
                rest.push(Inequality::new(coeffs, &l.rhs * &b + &u.rhs * &a));
            }
        }
        systems.push(dedup(rest));
    }
    if systems.last().unwrap().iter().any(|r| r.rhs.is_positive()) {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for j in 0..nvars {
        let sys = &systems[nvars - 1 - j];
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for r in sys {
            let c = &r.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let others: Rational = (0..j).map(|i| &r.coeffs[i] * &x[i]).sum();
            let bound = (&r.rhs - others) / c;
            if c.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |v| v.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |v| v.min(bound)));
            }
        }
        x[j] = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some(l), None) => l.ceil(),
            (None, Some(h)) => h.floor(),
            (Some(l), Some(h)) => {
                let c = l.ceil();
                if c <= h {
                    c
                } else {
                    l
                }
            }
        };
    }
    debug_assert!(rows.iter().all(|r| r.holds(&x)));
    Some(x)
}

/// Unique solution of a square system `m x = b`, or `None` if singular.
pub fn solve_square(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[c].clone();
                for (v, p) in a[i].iter_mut().zip(pivot) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Reduced row echelon form; returns the pivot columns.
pub fn row_reduce(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (v, p) in a[i].iter_mut().zip(pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn triangle_is_feasible() {
        // x >= 1, y >= 1, -x - y >= -3
        let rows = vec![Inequality::from_ints(&[1, 0], 1), Inequality::from_ints(&[0, 1], 1), Inequality::from_ints(&[-1, -1], -3)];
        let x = feasible_point(&rows, 2).unwrap();
        assert!(rows.iter().all(|r| r.holds(&x)));
    }

    #[test]
    fn contradiction_is_infeasible() {
        let rows = vec![Inequality::from_ints(&[1, 1], 3), Inequality::from_ints(&[-1, 0], -5), Inequality::from_ints(&[0, -1], -2)];
        assert!(feasible_point(&rows, 2).is_some());
        let rows = vec![Inequality::from_ints(&[1, 1], 5), Inequality::from_ints(&[-1, 0], -2), Inequality::from_ints(&[0, -1], -2)];
        assert!(feasible_point(&rows, 2).is_none());
    }

    #[test]
    fn fractional_only_region() {
        // 2x >= 1, -2x >= -1  => x = 1/2
        let rows = vec![Inequality::from_ints(&[2], 1), Inequality::from_ints(&[-2], -1)];
        assert_eq!(feasible_point(&rows, 1).unwrap(), vec![Rational::new(1.into(), 2.into())]);
    }

    #[test]
    fn square_solve() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        assert_eq!(solve_square(&m, &[rat(3), rat(4)]).unwrap(), vec![rat(1), rat(1)]);
        let s = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(solve_square(&s, &[rat(1), rat(2)]).is_none());
    }
}
