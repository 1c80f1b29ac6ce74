//! Buchberger's algorithm over the integers (fraction-free, primitive parts).
//!
//! Polynomials are kept with integer coefficients sorted by the active order.
//! Reductions scale by the reducer's leading coefficient instead of dividing,
//! and contents are divided out periodically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::order::{add_keys, Key, MonomialOrder};
use crate::exactpoly::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub exp: Monomial,
    pub c: BigInt,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct IPoly {
    pub terms: Vec<Term>,
}

impl IPoly {
    /// Integer multiple of `p` (denominators cleared, content removed), sorted by `order`.
    /// Returns the polynomial and the factor `s` with `result = s * p`.
    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> (IPoly, Rational) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<Term> = p.terms().iter().map(|(m, c)| Term { key: order.key(m), exp: m.clone(), c: c.numer() * (&den / c.denom()) }).collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let mut q = IPoly { terms };
        let content = q.content();
        if !content.is_zero() && !content.is_one() {
            q.divide_exact(&content);
        }
        let scale = Rational::new(den, if content.is_zero() { BigInt::one() } else { content });
        (q, scale)
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().map(|t| (t.exp.clone(), Rational::from_integer(t.c.clone()))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn divide_exact(&mut self, d: &BigInt) {
        for t in &mut self.terms {
            t.c = &t.c / d;
        }
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].c.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            self.divide_exact(&g);
        }
    }
}

/// `a * f[skip_f..] - b * m * g[skip_g..]`
fn combine(f: &[Term], a: &BigInt, mkey: &Key, mexp: &Monomial, g: &[Term], b: &BigInt) -> Vec<Term> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let a_one = a.is_one();
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Term> = None;
    let shifted = |t: &Term| Term { key: add_keys(&t.key, mkey), exp: t.exp.mul(mexp), c: -(b * &t.c) };
    loop {
        if gj.is_none() && j < g.len() {
            gj = Some(shifted(&g[j]));
            j += 1;
        }
        match (f.get(i), gj.as_ref()) {
            (None, None) => break,
            (Some(ft), None) => {
                out.push(Term { key: ft.key.clone(), exp: ft.exp.clone(), c: if a_one { ft.c.clone() } else { a * &ft.c } });
                i += 1;
            }
            (None, Some(_)) => out.push(gj.take().unwrap()),
            (Some(ft), Some(gt)) => match ft.key.cmp(&gt.key) {
                std::cmp::Ordering::Greater => {
                    out.push(Term { key: ft.key.clone(), exp: ft.exp.clone(), c: if a_one { ft.c.clone() } else { a * &ft.c } });
                    i += 1;
                }
                std::cmp::Ordering::Less => out.push(gj.take().unwrap()),
                std::cmp::Ordering::Equal => {
                    let gt = gj.take().unwrap();
                    let c = if a_one { &ft.c + gt.c } else { a * &ft.c + gt.c };
                    if !c.is_zero() {
                        out.push(Term { key: gt.key, exp: gt.exp, c });
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

fn find_reducer<'a>(exp: &Monomial, basis: &'a [&'a IPoly]) -> Option<&'a IPoly> {
    basis.iter().copied().find(|g| g.lead().exp.divides(exp))
}

/// Reduces `f` modulo `basis`. With `full`, every term is reduced; otherwise
/// only the leading term. Returns `(r, s)` with `r ≡ s * f` modulo the ideal.
pub(crate) fn reduce(f: &IPoly, basis: &[&IPoly], full: bool) -> (IPoly, Rational) {
    let mut done: Vec<Term> = Vec::new();
    let mut rest: Vec<Term> = f.terms.clone();
    let mut start = 0;
    let mut scale = Rational::one();
    let mut steps = 0usize;
    while start < rest.len() {
        let lead = &rest[start];
        match find_reducer(&lead.exp, basis) {
            Some(g) => {
                let gl = g.lead();
                let gcd = gl.c.gcd(&lead.c);
                let mut a = &gl.c / &gcd;
                let mut b = &lead.c / &gcd;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                let mexp = lead.exp.div(&gl.exp);
                let mkey: Key = lead.key.iter().zip(gl.key.iter()).map(|(x, y)| x - y).collect();
                rest = combine(&rest[start + 1..], &a, &mkey, &mexp, &g.terms[1..], &b);
                start = 0;
                if !a.is_one() {
                    for t in &mut done {
                        t.c = &a * &t.c;
                    }
                    scale *= Rational::from_integer(a);
                }
                steps += 1;
                if steps.is_multiple_of(8) {
                    let mut c = BigInt::zero();
                    for t in done.iter().chain(rest.iter()) {
                        c = c.gcd(&t.c);
                        if c.is_one() {
                            break;
                        }
                    }
                    if !c.is_zero() && !c.is_one() {
                        for t in done.iter_mut().chain(rest.iter_mut()) {
                            t.c = &t.c / &c;
                        }
                        scale /= Rational::from_integer(c);
                    }
                }
            }
            None => {
                if !full {
                    break;
                }
                start += 1;
            }
        }
        if full && start > 0 {
            // move irreducible prefix into `done`
            done.extend(rest.drain(..start));
            start = 0;
        }
    }
    done.extend(rest.drain(start..));
    let mut out = IPoly { terms: done };
    if !out.is_zero() {
        let mut c = out.content();
        if out.terms[0].c.is_negative() {
            c = -c;
        }
        if !c.is_one() {
            out.divide_exact(&c);
            scale /= Rational::from_integer(c);
        }
    }
    (out, scale)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: Key,
}

fn spoly(f: &IPoly, g: &IPoly, lcm: &Monomial, order: &MonomialOrder) -> IPoly {
    let (fl, gl) = (f.lead(), g.lead());
    let gcd = fl.c.gcd(&gl.c);
    let a = &gl.c / &gcd;
    let b = &fl.c / &gcd;
    let mf = lcm.div(&fl.exp);
    let mg = lcm.div(&gl.exp);
    let mfk = order.key(&mf);
    let mgk = order.key(&mg);
    // a*mf*f - b*mg*g, leading terms cancel
    let f_shift: Vec<Term> = f.terms[1..].iter().map(|t| Term { key: add_keys(&t.key, &mfk), exp: t.exp.mul(&mf), c: t.c.clone() }).collect();
    IPoly { terms: combine(&f_shift, &a, &mgk, &mg, &g.terms[1..], &b) }
}

/// Gebauer–Möller update of the pair list and the basis index set.
fn update(polys: &[IPoly], basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize, order: &MonomialOrder) {
    let hl = polys[h].lead().exp.clone();
    let mut cand: Vec<Pair> = basis
        .iter()
        .map(|&g| {
            let lcm = hl.lcm(&polys[g].lead().exp);
            let key = order.key(&lcm);
            Pair { i: g, j: h, lcm, key }
        })
        .collect();
    // criterion: drop (h,g1) if some other (h,g2) has lcm properly dividing, keeping coprime ones
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = cand.pop() {
        let coprime = polys[p.i].lead().exp.coprime(&hl);
        let dominated = cand.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    // among pairs with equal lcm keep one; drop coprime (product criterion)
    let mut new_pairs: Vec<Pair> = Vec::new();
    for p in kept {
        if polys[p.i].lead().exp.coprime(&hl) {
            continue;
        }
        new_pairs.push(p);
    }
    pairs.retain(|p| !(hl.divides(&p.lcm) && hl.lcm(&polys[p.i].lead().exp) != p.lcm && hl.lcm(&polys[p.j].lead().exp) != p.lcm));
    pairs.extend(new_pairs);
    basis.retain(|&g| !hl.divides(&polys[g].lead().exp));
    basis.push(h);
}

/// Reduced Gröbner basis (primitive integer polynomials, positive leading
/// coefficients, sorted by ascending leading monomial).
pub(crate) fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Vec<IPoly> {
    let mut polys: Vec<IPoly> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| IPoly::from_poly(g, order).0).collect();
    inputs.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    for f in inputs {
        let reducers: Vec<&IPoly> = basis.iter().map(|&i| &polys[i]).collect();
        let (mut r, _) = reduce(&f, &reducers, false);
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        if r.lead().exp.is_one() {
            return vec![unit(order)];
        }
        polys.push(r);
        let h = polys.len() - 1;
        update(&polys, &mut basis, &mut pairs, h, order);
    }

    while !pairs.is_empty() {
        let (idx, _) = pairs.iter().enumerate().min_by(|a, b| a.1.key.cmp(&b.1.key)).unwrap();
        let p = pairs.swap_remove(idx);
        let s = spoly(&polys[p.i], &polys[p.j], &p.lcm, order);
        if s.is_zero() {
            continue;
        }
        let reducers: Vec<&IPoly> = basis.iter().map(|&i| &polys[i]).collect();
        let (mut r, _) = reduce(&s, &reducers, false);
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        if r.lead().exp.is_one() {
            return vec![unit(order)];
        }
        polys.push(r);
        let h = polys.len() - 1;
        update(&polys, &mut basis, &mut pairs, h, order);
    }

    // minimal basis -> interreduce tails
    let mut minimal: Vec<IPoly> = basis.iter().map(|&i| polys[i].clone()).collect();
    minimal.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
        let (mut r, _) = reduce(&minimal[i], &others, true);
        r.make_primitive();
        reduced.push(r);
    }
    reduced
}

fn unit(order: &MonomialOrder) -> IPoly {
    let one = Monomial::one(order.nvars());
    IPoly { terms: vec![Term { key: order.key(&one), exp: one, c: BigInt::one() }] }
}
