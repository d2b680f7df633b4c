//! Noncommutative polynomials in operator generators, kept in PBW normal
//! form by rewriting out-of-order adjacent pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalars::{join_terms, Gq, Param, ParamMono, ParamScalar};

pub type Word = Vec<u8>;
type Terms = BTreeMap<Word, ParamScalar>;

/// The built-in operator algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpAlgebraKind {
    /// Weyl algebra on `n` degrees of freedom, order `Q1 < .. < Qn < P1 < .. < Pn`.
    Weyl(usize),
    /// Enveloping algebra of su(2), order `S1 < S2 < S3`.
    Su2,
    /// e(2) operators with `S^2 + C^2 = 1`, order `L < C < S`.
    E2,
}

/// Generators and rewrite rules `w -> replacement` for length-two words.
#[derive(Debug)]
pub struct OpAlgebraSpec {
    pub kind: OpAlgebraKind,
    pub names: Vec<String>,
    rules: HashMap<(u8, u8), Vec<(Word, ParamScalar)>>,
}

pub type OpAlgebra = Arc<OpAlgebraSpec>;

impl OpAlgebraSpec {
    pub fn name(&self) -> String {
        match self.kind {
            OpAlgebraKind::Weyl(n) => format!("weyl({n})"),
            OpAlgebraKind::Su2 => "su2".into(),
            OpAlgebraKind::E2 => "e2".into(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    fn rule(&self, a: u8, b: u8) -> Option<&Vec<(Word, ParamScalar)>> {
        self.rules.get(&(a, b))
    }

    fn redexes(&self, w: &[u8]) -> impl Iterator<Item = usize> + '_ {
        let w = w.to_vec();
        (0..w.len().saturating_sub(1)).filter(move |&k| self.rules.contains_key(&(w[k], w[k + 1])))
    }

    fn first_redex(&self, w: &[u8]) -> Option<usize> {
        (0..w.len().saturating_sub(1)).find(|&k| self.rules.contains_key(&(w[k], w[k + 1])))
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.first_redex(w).is_none()
    }
}

fn ihbar(k: i64) -> ParamScalar {
    &ParamScalar::i() * &ParamScalar::hbar().scale(&Gq::int(k))
}

/// Builds one of the built-in operator algebras.
pub fn op_algebra(kind: OpAlgebraKind) -> OpAlgebra {
    let mut rules = HashMap::new();
    let names: Vec<String> = match kind {
        OpAlgebraKind::Weyl(n) => {
            let names = if n == 1 {
                vec!["Q".to_string(), "P".to_string()]
            } else {
                (1..=n)
                    .map(|i| format!("Q{i}"))
                    .chain((1..=n).map(|i| format!("P{i}")))
                    .collect()
            };
            let n8 = n as u8;
            for a in 0..2 * n8 {
                for b in 0..a {
                    // a b -> b a + [a, b]; only [P_i, Q_i] = -i hbar is nonzero
                    let mut rhs = vec![(vec![b, a], ParamScalar::one())];
                    if a >= n8 && a - n8 == b {
                        rhs.push((vec![], ihbar(-1)));
                    }
                    rules.insert((a, b), rhs);
                }
            }
            names
        }
        OpAlgebraKind::Su2 => {
            rules.insert(
                (1, 0),
                vec![(vec![0, 1], ParamScalar::one()), (vec![2], ihbar(-1))],
            );
            rules.insert(
                (2, 0),
                vec![(vec![0, 2], ParamScalar::one()), (vec![1], ihbar(1))],
            );
            rules.insert(
                (2, 1),
                vec![(vec![1, 2], ParamScalar::one()), (vec![0], ihbar(-1))],
            );
            vec!["S1".into(), "S2".into(), "S3".into()]
        }
        OpAlgebraKind::E2 => {
            let (l, c, s) = (0u8, 1u8, 2u8);
            rules.insert(
                (c, l),
                vec![(vec![l, c], ParamScalar::one()), (vec![s], ihbar(-1))],
            );
            rules.insert(
                (s, l),
                vec![(vec![l, s], ParamScalar::one()), (vec![c], ihbar(1))],
            );
            rules.insert((s, c), vec![(vec![c, s], ParamScalar::one())]);
            rules.insert(
                (s, s),
                vec![
                    (vec![], ParamScalar::one()),
                    (vec![c, c], ParamScalar::int(-1)),
                ],
            );
            vec!["L".into(), "C".into(), "S".into()]
        }
    };
    Arc::new(OpAlgebraSpec { kind, names, rules })
}

fn add_into(map: &mut Terms, w: Word, c: &ParamScalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}

/// Rewrites to normal form, choosing the redex with `pick` among all
/// available positions.
fn rewrite(alg: &OpAlgebraSpec, input: Terms, mut pick: impl FnMut(&[usize]) -> usize) -> Terms {
    // longest words first so equal tails merge before expanding further
    let mut pending: BTreeMap<(usize, Word), ParamScalar> =
        input.into_iter().map(|(w, c)| ((w.len(), w), c)).collect();
    let mut done = Terms::new();
    while let Some(((_, w), c)) = pending.pop_last() {
        let sites: Vec<usize> = alg.redexes(&w).collect();
        if sites.is_empty() {
            add_into(&mut done, w, &c);
            continue;
        }
        let k = sites[pick(&sites)];
        let rhs = alg.rule(w[k], w[k + 1]).expect("redex has a rule");
        for (rw, rc) in rhs {
            let mut nw = Vec::with_capacity(w.len() + rw.len());
            nw.extend_from_slice(&w[..k]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[k + 2..]);
            let v = rc * &c;
            let key = (nw.len(), nw);
            match pending.get_mut(&key) {
                Some(slot) => {
                    *slot = &*slot + &v;
                    if slot.is_zero() {
                        pending.remove(&key);
                    }
                }
                None => {
                    if !v.is_zero() {
                        pending.insert(key, v);
                    }
                }
            }
        }
    }
    done
}

/// Element of an operator algebra in normal form.
#[derive(Clone, Debug)]
pub struct OpPoly {
    alg: OpAlgebra,
    terms: Terms,
}

impl PartialEq for OpPoly {
    fn eq(&self, o: &Self) -> bool {
        self.alg.kind == o.alg.kind && self.terms == o.terms
    }
}

impl Eq for OpPoly {}

impl OpPoly {
    /// Normal form of an arbitrary combination of words.
    pub fn normal_form(
        alg: &OpAlgebra,
        raw: impl IntoIterator<Item = (Word, ParamScalar)>,
    ) -> Self {
        let mut input = Terms::new();
        for (w, c) in raw {
            add_into(&mut input, w, &c);
        }
        OpPoly {
            alg: alg.clone(),
            terms: rewrite(alg, input, |_| 0),
        }
    }

    pub fn zero(alg: &OpAlgebra) -> Self {
        OpPoly {
            alg: alg.clone(),
            terms: Terms::new(),
        }
    }

    pub fn scalar(alg: &OpAlgebra, c: ParamScalar) -> Self {
        OpPoly::normal_form(alg, [(vec![], c)])
    }

    pub fn identity(alg: &OpAlgebra) -> Self {
        OpPoly::scalar(alg, ParamScalar::one())
    }

    pub fn generator(alg: &OpAlgebra, i: u8) -> Self {
        OpPoly::normal_form(alg, [(vec![i], ParamScalar::one())])
    }

    pub fn named(alg: &OpAlgebra, name: &str) -> Result<Self> {
        let i = alg
            .index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(OpPoly::generator(alg, i))
    }

    /// Normal form of a single word, e.g. `[P, Q]` for `P*Q`.
    pub fn word(alg: &OpAlgebra, w: &[u8]) -> Self {
        OpPoly::normal_form(alg, [(w.to_vec(), ParamScalar::one())])
    }

    pub fn algebra(&self) -> &OpAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u8]) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Scalar value when the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn check(&self, o: &OpPoly) -> Result<()> {
        if self.alg.kind == o.alg.kind {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(self.alg.name(), o.alg.name()))
        }
    }

    fn assert_same(&self, o: &OpPoly) {
        if let Err(e) = self.check(o) {
            panic!("{e}");
        }
    }

    pub fn add(&self, o: &OpPoly) -> OpPoly {
        self.assert_same(o);
        let mut t = self.terms.clone();
        for (w, c) in &o.terms {
            add_into(&mut t, w.clone(), c);
        }
        OpPoly {
            alg: self.alg.clone(),
            terms: t,
        }
    }

    pub fn sub(&self, o: &OpPoly) -> OpPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> OpPoly {
        self.scale(&ParamScalar::int(-1))
    }

    pub fn scale(&self, c: &ParamScalar) -> OpPoly {
        let mut t = Terms::new();
        for (w, v) in &self.terms {
            add_into(&mut t, w.clone(), &(v * c));
        }
        OpPoly {
            alg: self.alg.clone(),
            terms: t,
        }
    }

    /// Product in the algebra; panics if the algebras differ.
    pub fn mul(&self, o: &OpPoly) -> OpPoly {
        self.assert_same(o);
        let mut raw = Terms::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                add_into(&mut raw, w, &(c1 * c2));
            }
        }
        OpPoly {
            alg: self.alg.clone(),
            terms: rewrite(&self.alg, raw, |_| 0),
        }
    }

    pub fn pow(&self, k: u32) -> OpPoly {
        let mut acc = OpPoly::identity(&self.alg);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, o: &OpPoly) -> OpPoly {
        self.mul(o).add(&o.mul(self))
    }

    /// Exact division of every coefficient by a parameter monomial.
    pub fn div_mono(&self, m: &ParamMono) -> Result<OpPoly> {
        let mut t = Terms::new();
        for (w, c) in &self.terms {
            let q = c.div_mono(m).ok_or_else(|| {
                Error::NotDivisible(
                    self.to_string(),
                    ParamScalar::term(Gq::one(), *m).to_string(),
                )
            })?;
            t.insert(w.clone(), q);
        }
        Ok(OpPoly {
            alg: self.alg.clone(),
            terms: t,
        })
    }

    /// Signed printable terms, shortest words first.
    pub(crate) fn rendered_terms(&self) -> Vec<(bool, String)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(b.0.cmp(a.0)));
        let mut out = Vec::new();
        for (w, c) in v {
            let f = word_factors(w, &self.alg.names);
            out.extend(c.signed_terms(&f));
        }
        out
    }
}

fn word_factors(w: &[u8], names: &[String]) -> Vec<String> {
    if w.is_empty() {
        return vec!["I".to_string()];
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let mut run = 1;
        while k + run < w.len() && w[k + run] == w[k] {
            run += 1;
        }
        let name = &names[w[k] as usize];
        out.push(if run == 1 {
            name.clone()
        } else {
            format!("{name}^{run}")
        });
        k += run;
    }
    out
}

impl fmt::Display for OpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.rendered_terms()))
    }
}

/// `xy - yx` in normal form.
pub fn commutator(x: &OpPoly, y: &OpPoly) -> Result<OpPoly> {
    x.check(y)?;
    Ok(x.mul(y).sub(&y.mul(x)))
}

/// `(i/hbar)[x, y]`, with the division by `hbar` done exactly.
pub fn i_over_hbar_commutator(x: &OpPoly, y: &OpPoly) -> Result<OpPoly> {
    commutator(x, y)?
        .scale(&ParamScalar::i())
        .div_mono(&ParamMono::of(Param::Hbar, 1))
}

/// Outcome of [`confluence_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub counterexample: Option<Word>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Reduces random words of length at most 6 under two independently
/// randomized redex orders and compares the results.
pub fn confluence_probe(alg: &OpAlgebra, trials: usize, seed: u64) -> ConfluenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.ngens() as u8;
    for _ in 0..trials {
        let len = rng.gen_range(1..=6);
        let w: Word = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let mut results = Vec::new();
        for _ in 0..2 {
            let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
            let mut input = Terms::new();
            input.insert(w.clone(), ParamScalar::one());
            results.push(rewrite(alg, input, |sites| local.gen_range(0..sites.len())));
        }
        if results[0] != results[1] {
            return ConfluenceReport {
                trials,
                counterexample: Some(w),
            };
        }
    }
    ConfluenceReport {
        trials,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_swap() {
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        assert_eq!(OpPoly::word(&w, &[1, 0]).to_string(), "-i*hbar*I + Q*P");
    }

    #[test]
    fn su2_swap() {
        let a = op_algebra(OpAlgebraKind::Su2);
        assert_eq!(OpPoly::word(&a, &[1, 0]).to_string(), "-i*hbar*S3 + S1*S2");
    }

    #[test]
    fn e2_swap_and_circle_relation() {
        let a = op_algebra(OpAlgebraKind::E2);
        assert_eq!(OpPoly::word(&a, &[2, 0]).to_string(), "i*hbar*C + L*S");
        let l = OpPoly::named(&a, "L").unwrap();
        let s = OpPoly::named(&a, "S").unwrap();
        let c = OpPoly::named(&a, "C").unwrap();
        let circle = s.pow(2).add(&c.pow(2));
        assert_eq!(circle, OpPoly::identity(&a));
        assert!(commutator(&l, &circle).unwrap().is_zero());
    }

    #[test]
    fn weyl_quadratic_commutator() {
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        let q = OpPoly::generator(&w, 0);
        let p = OpPoly::generator(&w, 1);
        let lhs = commutator(&q.pow(2), &p.pow(2)).unwrap();
        let rhs = q.anticommutator(&p).scale(&ihbar(2));
        assert_eq!(lhs, rhs);
        assert!(commutator(&q, &q).unwrap().is_zero());
    }

    #[test]
    fn i_over_hbar_of_canonical_pair() {
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        let q = OpPoly::generator(&w, 0);
        let p = OpPoly::generator(&w, 1);
        assert_eq!(
            i_over_hbar_commutator(&p, &q).unwrap(),
            OpPoly::identity(&w)
        );
    }

    #[test]
    fn mismatched_algebras() {
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        let s = op_algebra(OpAlgebraKind::Su2);
        assert!(matches!(
            commutator(&OpPoly::generator(&w, 0), &OpPoly::generator(&s, 0)),
            Err(Error::AlgebraMismatch(_, _))
        ));
    }

    #[test]
    fn probes_pass() {
        for kind in [
            OpAlgebraKind::Weyl(1),
            OpAlgebraKind::Weyl(2),
            OpAlgebraKind::Su2,
            OpAlgebraKind::E2,
        ] {
            assert!(confluence_probe(&op_algebra(kind), 50, 7).passed());
        }
    }
}
