//! Buchberger's algorithm with sugar selection and the Gebauer–Möller
//! criteria, optionally recording each basis element as a combination of
//! the input generators.

use std::collections::BTreeSet;

use crate::num::Rational;
use crate::poly::{Monomial, MultiPoly, Vars};

/// A polynomial together with its expression over the generators.
#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub p: MultiPoly,
    pub row: Option<Vec<MultiPoly>>,
    pub sugar: u32,
}

impl Tracked {
    fn add_scaled(&mut self, c: &Rational, m: &Monomial, o: &Tracked) {
        self.p.add_scaled(c, m, &o.p);
        if let (Some(r), Some(or)) = (self.row.as_mut(), o.row.as_ref()) {
            for (a, b) in r.iter_mut().zip(or) {
                a.add_scaled(c, m, b);
            }
        }
        self.sugar = self.sugar.max(o.sugar + m.degree());
    }

    fn scale(&mut self, c: &Rational) {
        self.p = self.p.scale(c);
        if let Some(r) = self.row.as_mut() {
            for a in r.iter_mut() {
                *a = a.scale(c);
            }
        }
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.p.leading_coeff().cloned() {
            self.scale(&lc.recip());
        }
    }
}

/// Full reduction of `t` by `basis` (every term, not only the leading one).
/// Quotient contributions are folded into the tracked row.
pub(crate) fn reduce_full(t: Tracked, basis: &[Tracked]) -> Tracked {
    let refs: Vec<&Tracked> = basis.iter().collect();
    reduce_refs(t, &refs)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

fn make_pair(g: &[Tracked], i: usize, j: usize) -> Pair {
    let li = g[i].p.leading_monomial().unwrap();
    let lj = g[j].p.leading_monomial().unwrap();
    let lcm = li.lcm(lj);
    let si = g[i].sugar + lcm.degree() - li.degree();
    let sj = g[j].sugar + lcm.degree() - lj.degree();
    Pair { sugar: si.max(sj), lcm, i, j }
}

fn spoly(g: &[Tracked], p: &Pair) -> Tracked {
    let (a, b) = (&g[p.i], &g[p.j]);
    let ma = p.lcm.div(a.p.leading_monomial().unwrap()).unwrap();
    let mb = p.lcm.div(b.p.leading_monomial().unwrap()).unwrap();
    let vars = a.p.vars().clone();
    let mut s = Tracked {
        p: MultiPoly::zero(vars),
        row: a.row.as_ref().map(|r| r.iter().map(|x| MultiPoly::zero(x.vars().clone())).collect()),
        sugar: 0,
    };
    // both are monic
    s.add_scaled(&Rational::from_integer(1.into()), &ma, a);
    s.add_scaled(&Rational::from_integer((-1).into()), &mb, b);
    s
}

/// Gebauer–Möller update after appending `g[h]`.
fn update(g: &[Tracked], active: &mut Vec<bool>, pairs: &mut BTreeSet<Pair>, h: usize) {
    let lh = g[h].p.leading_monomial().unwrap().clone();
    let cand: Vec<usize> = (0..h).filter(|&i| active[i]).collect();
    let mut new: Vec<(Pair, bool)> = cand
        .iter()
        .map(|&i| {
            let p = make_pair(g, i, h);
            let coprime = g[i].p.leading_monomial().unwrap().coprime(&lh);
            (p, coprime)
        })
        .collect();
    // criterion M: drop pairs whose lcm is strictly divisible by another new lcm
    let lcms: Vec<Monomial> = new.iter().map(|(p, _)| p.lcm.clone()).collect();
    new.retain(|(p, _)| !lcms.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));
    // criterion F: one pair per lcm; if any pair with that lcm is coprime, drop all
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    for (p, c) in new {
        if let Some(k) = kept.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
            k.1 |= c;
        } else {
            kept.push((p, c));
        }
    }
    // criterion B on old pairs
    let old: Vec<Pair> = pairs.iter().cloned().collect();
    for p in old {
        if lh.divides(&p.lcm) {
            let li = g[p.i].p.leading_monomial().unwrap().lcm(&lh);
            let lj = g[p.j].p.leading_monomial().unwrap().lcm(&lh);
            if li != p.lcm && lj != p.lcm {
                pairs.remove(&p);
            }
        }
    }
    for (p, coprime) in kept {
        if !coprime {
            pairs.insert(p);
        }
    }
    for i in cand {
        if lh.divides(g[i].p.leading_monomial().unwrap()) {
            active[i] = false;
        }
    }
}

/// Reduced Gröbner basis of `gens`. When `track` is set, each result comes
/// with its row of cofactors over `gens`.
pub(crate) fn buchberger(gens: &[MultiPoly], vars: &Vars, track: bool) -> Vec<Tracked> {
    let r = gens.len();
    let mut g: Vec<Tracked> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let zero_row = || vec![MultiPoly::zero(vars.clone()); r];
    let mut input: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| {
            let row = track.then(|| {
                let mut row = zero_row();
                row[i] = MultiPoly::one(vars.clone());
                row
            });
            Tracked { p: p.with_vars(vars), row, sugar: p.total_degree().unwrap_or(0) }
        })
        .collect();
    input.sort_by(|a, b| a.p.leading_monomial().cmp(&b.p.leading_monomial()));
    let push = |t: Tracked, g: &mut Vec<Tracked>, active: &mut Vec<bool>, pairs: &mut BTreeSet<Pair>| {
        let mut t = t;
        t.make_monic();
        g.push(t);
        active.push(true);
        update(g, active, pairs, g.len() - 1);
    };
    for t in input {
        let reducers: Vec<Tracked> = g.iter().zip(&active).filter(|(_, a)| **a).map(|(x, _)| x.clone()).collect();
        let t = reduce_full(t, &reducers);
        if !t.p.is_zero() {
            push(t, &mut g, &mut active, &mut pairs);
        }
    }
    while let Some(p) = pairs.pop_first() {
        let s = spoly(&g, &p);
        let reducers: Vec<&Tracked> = g.iter().zip(&active).filter(|(_, a)| **a).map(|(x, _)| x).collect();
        let h = reduce_refs(s, &reducers);
        if !h.p.is_zero() {
            if h.p.is_constant() {
                let mut h = h;
                h.make_monic();
                return vec![h];
            }
            push(h, &mut g, &mut active, &mut pairs);
        }
    }
    // minimal basis, then interreduce
    let mut min: Vec<Tracked> = g.into_iter().zip(active).filter(|(_, a)| *a).map(|(x, _)| x).collect();
    min.sort_by(|a, b| a.p.leading_monomial().cmp(&b.p.leading_monomial()));
    let mut keep: Vec<Tracked> = Vec::new();
    for t in min {
        let lm = t.p.leading_monomial().unwrap();
        if !keep.iter().any(|k| k.p.leading_monomial().unwrap().divides(lm)) {
            keep.push(t);
        }
    }
    let n = keep.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<Tracked> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
        let lead = keep[i].p.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // the leading term is irreducible by the others; reduce the tail
        let mut t = keep[i].clone();
        t.p.add_term(lead.0.clone(), -lead.1.clone());
        let mut red = reduce_full(t, &others);
        red.p.add_term(lead.0, lead.1);
        red.make_monic();
        out.push(red);
    }
    out.sort_by(|a, b| a.p.leading_monomial().cmp(&b.p.leading_monomial()));
    out
}

pub(crate) fn reduce_refs(mut t: Tracked, basis: &[&Tracked]) -> Tracked {
    let vars = t.p.vars().clone();
    let mut rem = MultiPoly::zero(vars);
    while let Some((m, c)) = t.p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = basis.iter().find_map(|g| {
            let lm = g.p.leading_monomial()?;
            m.div(lm).map(|q| (*g, q))
        });
        match hit {
            Some((g, q)) => {
                let f = -(&c / g.p.leading_coeff().unwrap());
                t.add_scaled(&f, &q, g);
            }
            None => {
                t.p.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    debug_assert!(t.p.is_zero());
    Tracked { p: rem, row: t.row, sugar: t.sugar }
}
