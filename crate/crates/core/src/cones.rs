//! Invariant curves of walls, nefness, ample classes, and the common section
//! degree α dominating a list of generator degrees.

use crate::error::{Error, Result};
use crate::exactpoly::{rat, MultiDegree, Rational, RingContext};
use crate::fan::{subsets, Fan, Wall};
use crate::intmat;
use crate::linear::{feasible_point, solve_square, Inequality};

/// The torus-invariant curve of a wall and its intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCurve {
    pub wall: Wall,
    /// `D_ρ · C` for every ray ρ.
    pub pairing: Vec<i64>,
    /// The same functional in Picard coordinates.
    pub pic_pairing: Vec<i64>,
}

impl WallCurve {
    pub fn pair(&self, delta: &MultiDegree) -> i64 {
        delta.dot(&self.pic_pairing)
    }
}

/// One curve per wall: the relation `u + u' + Σ c_i u_i = 0` between the two
/// extra rays and the facet rays gives the pairing vector.
pub fn wall_curves(fan: &Fan, ctx: &RingContext) -> Result<Vec<WallCurve>> {
    let k = fan.dim();
    let lift = intmat::right_inverse(ctx.grading()).ok_or_else(|| Error::InvalidGrading("degree map is not onto".into()))?;
    let mut out = Vec::new();
    for wall in fan.walls() {
        let (u, u2) = wall.extra;
        let mut basis = wall.facet.clone();
        basis.push(u);
        // coordinates of -(u + u') in the basis (facet rays, u), by Cramer's rule
        let m = intmat::transpose(&basis.iter().map(|&i| fan.rays()[i].clone()).collect::<Vec<_>>());
        let d = intmat::det(&m);
        let target: Vec<i64> = (0..k).map(|j| -(fan.rays()[u][j] + fan.rays()[u2][j])).collect();
        let coords: Vec<i64> = (0..k)
            .map(|c| {
                let mut mc = m.clone();
                for (row, t) in mc.iter_mut().zip(&target) {
                    row[c] = *t;
                }
                intmat::det(&mc) * d
            })
            .collect();
        if coords[k - 1] != 0 {
            return Err(Error::NotComplete { cone: wall.cones.0, facet: wall.facet.clone() });
        }
        let mut pairing = vec![0; fan.nrays()];
        pairing[u] = 1;
        pairing[u2] = 1;
        for (j, &i) in wall.facet.iter().enumerate() {
            pairing[i] = coords[j];
        }
        let pic_pairing = (0..ctx.rank()).map(|c| (0..fan.nrays()).map(|i| pairing[i] * lift[i][c]).sum()).collect();
        out.push(WallCurve { wall, pairing, pic_pairing });
    }
    Ok(out)
}

pub fn is_nef(delta: &MultiDegree, walls: &[WallCurve]) -> bool {
    walls.iter().all(|w| w.pair(delta) >= 0)
}

/// Distinct wall functionals, each with the largest bound requested for it.
fn distinct_functionals(walls: &[WallCurve], bound: impl Fn(&WallCurve) -> i64) -> Vec<(Vec<i64>, i64)> {
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    for w in walls {
        let b = bound(w);
        match out.iter_mut().find(|(f, _)| *f == w.pic_pairing) {
            Some(entry) => entry.1 = entry.1.max(b),
            None => out.push((w.pic_pairing.clone(), b)),
        }
    }
    out
}

/// An integral class pairing to at least 1 with every wall curve; among the
/// candidates in a box around the first feasible point, one of least heft weight.
pub fn find_ample(walls: &[WallCurve], heft: &[i64]) -> Result<MultiDegree> {
    let n = heft.len();
    let rows = distinct_functionals(walls, |_| 1);
    let ineqs: Vec<Inequality> = rows.iter().map(|(f, b)| Inequality::from_ints(f, *b)).collect();
    let x = feasible_point(&ineqs, n).ok_or(Error::NotProjective)?;
    let l = x.iter().fold(num_bigint::BigInt::from(1), |l, v| num_integer::Integer::lcm(&l, v.denom()));
    let start: Vec<i64> = x.iter().map(|v| i64::try_from((v * Rational::from_integer(l.clone())).to_integer()).expect("integer overflow")).collect();
    let ok = |d: &[i64]| rows.iter().all(|(f, b)| f.iter().zip(d).map(|(a, c)| a * c).sum::<i64>() >= *b);
    debug_assert!(ok(&start));
    let weight = |d: &[i64]| d.iter().zip(heft).map(|(a, b)| a * b).sum::<i64>();
    let radius = start.iter().map(|v| v.abs()).max().unwrap_or(0).max(1);
    let mut best = start.clone();
    if (2 * radius + 1).checked_pow(n as u32).is_some_and(|s| s <= 2_000_000) {
        let mut cur = vec![-radius; n];
        loop {
            if ok(&cur) && (weight(&cur), &cur) < (weight(&best), &best) {
                best = cur.clone();
            }
            let Some(pos) = (0..n).find(|&i| cur[i] < radius) else { break };
            cur[pos] += 1;
            for c in cur.iter_mut().take(pos) {
                *c = -radius;
            }
        }
    }
    Ok(MultiDegree(best))
}

/// The system `⟨C_w, α⟩ ≥ max_i ⟨C_w, deg g_i⟩` over all walls.
#[derive(Clone, Debug)]
pub struct NefProblem {
    pub degrees: Vec<MultiDegree>,
    pub rows: Vec<(Vec<i64>, i64)>,
}

impl NefProblem {
    pub fn new(degrees: &[MultiDegree], walls: &[WallCurve]) -> NefProblem {
        let rows = distinct_functionals(walls, |w| degrees.iter().map(|d| w.pair(d)).max().unwrap_or(0));
        NefProblem { degrees: degrees.to_vec(), rows }
    }

    pub fn feasible(&self, alpha: &MultiDegree) -> bool {
        self.rows.iter().all(|(f, b)| alpha.dot(f) >= *b)
    }

    /// Vertices of the feasible polyhedron.
    pub fn vertices(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for set in subsets(self.rows.len(), n) {
            let m: Vec<Vec<Rational>> = set.iter().map(|&i| self.rows[i].0.iter().map(|&x| rat(x)).collect()).collect();
            let b: Vec<Rational> = set.iter().map(|&i| rat(self.rows[i].1)).collect();
            let Some(x) = solve_square(&m, &b) else { continue };
            let feasible = self.rows.iter().all(|(f, b)| f.iter().zip(&x).map(|(a, c)| rat(*a) * c).sum::<Rational>() >= rat(*b));
            if feasible && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }
}

/// Section degree α with every `α − deg g_i` nef: the apex of the feasible
/// region when it has a single integral vertex, otherwise `deg g_0` plus
/// enough ample classes.
pub fn find_alpha(degrees: &[MultiDegree], walls: &[WallCurve], heft: &[i64]) -> Result<MultiDegree> {
    assert!(!degrees.is_empty(), "find_alpha needs at least one degree");
    let problem = NefProblem::new(degrees, walls);
    let vertices = problem.vertices(heft.len());
    if let [v] = vertices.as_slice() {
        if v.iter().all(|x| x.is_integer()) {
            let alpha = MultiDegree(v.iter().map(|x| i64::try_from(x.to_integer()).expect("integer overflow")).collect());
            debug_assert!(problem.feasible(&alpha));
            return Ok(alpha);
        }
    }
    let ample = find_ample(walls, heft)?;
    let mut alpha = degrees[0].clone();
    while !problem.feasible(&alpha) {
        alpha = &alpha + &ample;
    }
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::CoxContext;

    /// F_e with the variable order x0, x1, y0, y1 and degrees (1,0), (1,0), (e,1), (0,1).
    fn hirzebruch(e: i64) -> CoxContext {
        let fan = Fan::new(vec![vec![1, 0], vec![-1, e], vec![0, -1], vec![0, 1]], vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let names = ["x0", "x1", "y0", "y1"].iter().map(|s| s.to_string()).collect();
        CoxContext::new(fan, Some(names), Some(vec![vec![1, 1, e, 0], vec![0, 0, 1, 1]])).unwrap()
    }

    fn curves(ctx: &CoxContext) -> Vec<WallCurve> {
        wall_curves(ctx.fan(), ctx.ring()).unwrap()
    }

    #[test]
    fn pairings_annihilate_linear_relations() {
        for e in 0..4 {
            let ctx = hirzebruch(e);
            for w in curves(&ctx) {
                for j in 0..2 {
                    assert_eq!((0..4).map(|i| ctx.fan().rays()[i][j] * w.pairing[i]).sum::<i64>(), 0);
                }
            }
        }
    }

    #[test]
    fn hirzebruch_nef_cone() {
        for e in 0..4 {
            let walls = curves(&hirzebruch(e));
            for a in 0..=5 {
                for b in 0..=5 {
                    assert_eq!(is_nef(&MultiDegree(vec![a, b]), &walls), a >= e * b, "e={e} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn ample_classes() {
        let ctx = hirzebruch(1);
        assert_eq!(find_ample(&curves(&ctx), ctx.ring().heft()).unwrap(), MultiDegree(vec![2, 1]));
        let p2 = CoxContext::new(Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap(), None, None).unwrap();
        assert_eq!(find_ample(&curves(&p2), p2.ring().heft()).unwrap(), MultiDegree(vec![1]));
    }

    #[test]
    fn alpha_on_hirzebruch() {
        let ctx = hirzebruch(1);
        let walls = curves(&ctx);
        let heft = ctx.ring().heft();
        let alpha = find_alpha(&[MultiDegree(vec![4, 2]), MultiDegree(vec![3, 4])], &walls, heft).unwrap();
        assert_eq!(alpha, MultiDegree(vec![6, 4]));
        assert_eq!(find_alpha(&[MultiDegree(vec![3, 1])], &walls, heft).unwrap(), MultiDegree(vec![3, 1]));
    }

    #[test]
    fn alpha_matches_closed_form_on_hirzebruch() {
        // a = max e*b_i - min (e*b_i - a_i), b = max b_i
        for e in 0..4 {
            let ctx = hirzebruch(e);
            let walls = curves(&ctx);
            for degs in [vec![(4, 2), (3, 4)], vec![(1, 0), (0, 1), (5, 3)], vec![(2, 2)]] {
                let ds: Vec<MultiDegree> = degs.iter().map(|&(a, b)| MultiDegree(vec![a, b])).collect();
                let b = degs.iter().map(|d| d.1).max().unwrap();
                let a = degs.iter().map(|d| e * d.1).max().unwrap() - degs.iter().map(|d| e * d.1 - d.0).min().unwrap();
                let alpha = find_alpha(&ds, &walls, ctx.ring().heft()).unwrap();
                for d in &ds {
                    assert!(is_nef(&(&alpha - d), &walls));
                }
                assert_eq!(alpha, MultiDegree(vec![a, b]), "e={e} {degs:?}");
            }
        }
    }
}
