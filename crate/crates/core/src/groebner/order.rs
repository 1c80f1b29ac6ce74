use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::exactpoly::Monomial;

/// Integer sort key of a monomial; comparing keys lexicographically compares
/// monomials. Keys are additive under monomial multiplication.
pub type Key = SmallVec<[i64; 16]>;

/// A block of variables compared by weighted degree, then reverse-lexicographically.
/// `vars` runs from the largest variable to the smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vars: Vec<usize>,
    pub weights: Vec<u64>,
}

/// Product of weighted degree-reverse-lexicographic blocks.
///
/// A single block over all variables is a weighted grevlex order; several
/// blocks give an elimination order in which earlier blocks dominate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    nvars: usize,
    blocks: Vec<Block>,
}

impl MonomialOrder {
    pub fn new(nvars: usize, blocks: Vec<Block>) -> Self {
        let mut seen = vec![false; nvars];
        for b in &blocks {
            assert_eq!(b.vars.len(), b.weights.len());
            for (&v, &w) in b.vars.iter().zip(&b.weights) {
                assert!(w > 0, "weights must be positive");
                assert!(!seen[v], "variable {v} in two blocks");
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "every variable needs a block");
        MonomialOrder { nvars, blocks }
    }

    /// Standard degree reverse lexicographic order, `x0 > x1 > ...`.
    pub fn grevlex(nvars: usize) -> Self {
        Self::weighted_grevlex(&vec![1; nvars])
    }

    pub fn weighted_grevlex(weights: &[u64]) -> Self {
        let n = weights.len();
        Self::new(n, vec![Block { vars: (0..n).collect(), weights: weights.to_vec() }])
    }

    /// Weighted grevlex with an explicit variable ranking, largest first.
    pub fn weighted_grevlex_ranked(weights: &[u64], ranking: Vec<usize>) -> Self {
        let w = ranking.iter().map(|&v| weights[v]).collect();
        Self::new(weights.len(), vec![Block { vars: ranking, weights: w }])
    }

    /// Weighted grevlex in which `last` is the smallest variable.
    pub fn weighted_grevlex_with_last(weights: &[u64], last: usize) -> Self {
        let mut ranking: Vec<usize> = (0..weights.len()).filter(|&v| v != last).collect();
        ranking.push(last);
        Self::weighted_grevlex_ranked(weights, ranking)
    }

    /// Block order with `eliminate` greater than every remaining variable.
    pub fn elimination(weights: &[u64], eliminate: &[usize]) -> Self {
        let n = weights.len();
        let first: Vec<usize> = (0..n).filter(|v| eliminate.contains(v)).collect();
        let rest: Vec<usize> = (0..n).filter(|v| !eliminate.contains(v)).collect();
        let mut blocks = Vec::new();
        for vars in [first, rest] {
            if !vars.is_empty() {
                let w = vars.iter().map(|&v| weights[v]).collect();
                blocks.push(Block { vars, weights: w });
            }
        }
        Self::new(n, blocks)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn key(&self, m: &Monomial) -> Key {
        let e = m.exponents();
        let mut k = Key::new();
        for b in &self.blocks {
            let deg: i64 = b.vars.iter().zip(&b.weights).map(|(&v, &w)| w as i64 * e[v] as i64).sum();
            k.push(deg);
            for &v in b.vars.iter().rev() {
                k.push(-(e[v] as i64));
            }
        }
        k
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

pub(crate) fn add_keys(a: &Key, b: &Key) -> Key {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_matches_textbook() {
        let o = MonomialOrder::grevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
        // degree first
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_dominates() {
        let o = MonomialOrder::elimination(&[1, 1, 1], &[0]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn keys_are_additive() {
        let o = MonomialOrder::weighted_grevlex_with_last(&[1, 2, 3], 0);
        let a = m(&[1, 2, 0]);
        let b = m(&[3, 0, 1]);
        assert_eq!(o.key(&a.mul(&b)), add_keys(&o.key(&a), &o.key(&b)));
    }
}
