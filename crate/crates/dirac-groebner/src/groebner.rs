//! Multivariate division and Buchberger's algorithm.
//!
//! Bases are always returned in reduced monic form, which is unique for a
//! given ideal and order, so two runs over the same input are bit-identical.
//! The critical-pair queue is keyed by the lcm of the leading monomials
//! (smallest first) with ties broken by generator indices; the coprimality
//! and chain criteria prune pairs before reduction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num::Zero;

use crate::error::AnalysisError;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::variable::{VarKind, VariableTable};

/// Working representation during division: terms sorted descending under the
/// active order, leading term first.
#[derive(Debug, Clone)]
struct OrdPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Self {
        OrdPoly {
            terms: p.sorted_terms(ord),
        }
    }

    fn to_poly(&self, table: &Arc<VariableTable>) -> Polynomial {
        Polynomial::from_terms(table, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Monomial, Rational) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !num::One::is_one(&lc) {
            for (_, c) in &mut self.terms {
                *c /= lc.clone();
            }
        }
    }

    /// `self - c * shift * g`, merging sorted term lists.
    fn sub_scaled(
        &self,
        c: &Rational,
        shift: &Monomial,
        g: &OrdPoly,
        table: &VariableTable,
        ord: &MonomialOrder,
    ) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < g.terms.len() {
            let gm = g.terms[j].0.mul(shift);
            match ord.compare(table, &self.terms[i].0, &gm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, -(&g.terms[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &self.terms[i].1 - &(&g.terms[j].1 * c);
                    if !coeff.is_zero() {
                        out.push((self.terms[i].0.clone(), coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, k) in &g.terms[j..] {
            out.push((m.mul(shift), -(k * c)));
        }
        OrdPoly { terms: out }
    }
}

/// Full normal form of `f` with respect to `reducers` (tried in list order,
/// greatest reducible monomial first). The reducers need not form a Gröbner
/// basis; the result then depends on the list but is still deterministic.
pub fn normal_form(f: &Polynomial, reducers: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let table = f.table();
    let basis: Vec<OrdPoly> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrdPoly::from_poly(g, ord))
        .collect();
    let reduced = reduce_ordered(OrdPoly::from_poly(f, ord), &basis, table, ord);
    reduced.to_poly(table)
}

fn reduce_ordered(
    f: OrdPoly,
    basis: &[OrdPoly],
    table: &VariableTable,
    ord: &MonomialOrder,
) -> OrdPoly {
    let mut pending = f;
    let mut done: Vec<(Monomial, Rational)> = Vec::new();
    'outer: while !pending.is_zero() {
        let (lm, lc) = pending.leading().clone();
        for g in basis {
            let (gm, gc) = g.leading();
            if let Some(shift) = lm.checked_div(gm) {
                let factor = &lc / gc;
                pending = pending.sub_scaled(&factor, &shift, g, table, ord);
                continue 'outer;
            }
        }
        // irreducible leading term moves to the result
        done.push(pending.terms.remove(0));
    }
    OrdPoly { terms: done }
}

/// The S-polynomial `lcm/lt(f) * f - lcm/lt(g) * g`.
///
/// Panics on zero input.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(ord).expect("s_polynomial of zero");
    let (gm, gc) = g.leading_term(ord).expect("s_polynomial of zero");
    let lcm = fm.lcm(&gm);
    let left = f.mul_term(
        &lcm.checked_div(&fm).unwrap(),
        &fc.recip(),
    );
    let right = g.mul_term(
        &lcm.checked_div(&gm).unwrap(),
        &gc.recip(),
    );
    &left - &right
}

/// A reduced monic Gröbner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    /// Buchberger's algorithm with coprimality and chain criteria; output is
    /// the reduced monic basis, elements sorted by ascending leading monomial.
    pub fn compute(generators: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
        let table = match generators.iter().find(|g| !g.is_zero()) {
            Some(g) => g.table().clone(),
            None => {
                return GroebnerBasis {
                    elements: Vec::new(),
                    order,
                }
            }
        };
        // lift everything onto the finest table among the inputs
        let table = generators
            .iter()
            .fold(table, |acc, g| {
                crate::variable::unify(&acc, g.table()).clone()
            });

        let mut basis: Vec<OrdPoly> = Vec::new();
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let mut op = OrdPoly::from_poly(&g.lift_to(&table), &order);
            op.make_monic();
            let new = basis.len();
            for old in 0..new {
                pending.insert((old, new));
            }
            basis.push(op);
        }

        while let Some(&(i, j)) = select_pair(&pending, &basis, &table, &order) {
            pending.remove(&(i, j));
            let (lmi, _) = basis[i].leading();
            let (lmj, _) = basis[j].leading();
            // Buchberger's first criterion
            if lmi.is_coprime_with(lmj) {
                continue;
            }
            // chain criterion
            let lcm = lmi.lcm(lmj);
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].leading().0.divides(&lcm)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if chained {
                continue;
            }
            let s = s_poly_ordered(&basis[i], &basis[j], &table, &order);
            let mut r = reduce_ordered(s, &basis, &table, &order);
            if !r.is_zero() {
                r.make_monic();
                let new = basis.len();
                for old in 0..new {
                    pending.insert((old, new));
                }
                basis.push(r);
            }
        }

        let elements = reduce_basis(basis, &table, &order);
        GroebnerBasis {
            elements: elements
                .into_iter()
                .map(|op| op.to_poly(&table))
                .collect(),
            order,
        }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn table(&self) -> Option<&Arc<VariableTable>> {
        self.elements.first().map(|p| p.table())
    }

    /// Basis of the unit ideal, i.e. `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Normal form modulo this basis; unique remainder by the defining
    /// property of Gröbner bases.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements, &self.order)
    }

    /// Ideal membership: `f` reduces to zero.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// The basis elements involving only variables of the `keep` kinds: a
    /// Gröbner basis of the elimination ideal, provided the order eliminates
    /// everything else.
    pub fn eliminate(&self, keep: &[VarKind]) -> Result<Vec<Polynomial>, AnalysisError> {
        let table = match self.table() {
            Some(t) => t,
            None => return Ok(Vec::new()),
        };
        let eliminated: BTreeSet<_> = table
            .vars()
            .filter(|v| !keep.contains(&table.kind(*v)))
            .collect();
        if !self.order.eliminates(table, &eliminated) {
            let names: Vec<&str> = eliminated.iter().map(|v| table.name(*v)).collect();
            return Err(AnalysisError::NotEliminationOrder {
                variables: names.join(", "),
            });
        }
        Ok(self
            .elements
            .iter()
            .filter(|p| p.support_vars().iter().all(|v| keep.contains(&table.kind(*v))))
            .cloned()
            .collect())
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Normal selection strategy: smallest lcm first, then smallest index pair.
fn select_pair<'a>(
    pending: &'a BTreeSet<(usize, usize)>,
    basis: &[OrdPoly],
    table: &VariableTable,
    ord: &MonomialOrder,
) -> Option<&'a (usize, usize)> {
    pending.iter().min_by(|a, b| {
        let la = basis[a.0].leading().0.lcm(&basis[a.1].leading().0);
        let lb = basis[b.0].leading().0.lcm(&basis[b.1].leading().0);
        ord.compare(table, &la, &lb).then(a.cmp(b))
    })
}

fn s_poly_ordered(
    f: &OrdPoly,
    g: &OrdPoly,
    table: &VariableTable,
    ord: &MonomialOrder,
) -> OrdPoly {
    // both inputs monic
    let lcm = f.leading().0.lcm(&g.leading().0);
    let sf = lcm.checked_div(&f.leading().0).unwrap();
    let sg = lcm.checked_div(&g.leading().0).unwrap();
    let shifted = OrdPoly {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect(),
    };
    shifted.sub_scaled(&crate::rational::one(), &sg, g, table, ord)
}

/// Minimization + interreduction; returns elements sorted by ascending
/// leading monomial.
fn reduce_basis(
    mut basis: Vec<OrdPoly>,
    table: &VariableTable,
    ord: &MonomialOrder,
) -> Vec<OrdPoly> {
    basis.retain(|p| !p.is_zero());
    basis.sort_by(|a, b| ord.compare(table, &a.leading().0, &b.leading().0));
    // minimize: drop any element whose leading monomial is divisible by the
    // leading monomial of an element kept before it
    let mut minimal: Vec<OrdPoly> = Vec::new();
    for p in basis {
        if !minimal
            .iter()
            .any(|q| q.leading().0.divides(&p.leading().0))
        {
            minimal.push(p);
        }
    }
    // interreduce tails until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<OrdPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            let r = reduce_ordered(minimal[i].clone(), &others, table, ord);
            if r.terms != minimal[i].terms {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal
}

/// Radical membership via the Rabinowitsch trick: `h` is in the radical of
/// `<gens>` iff `gens ∪ {1 - t*h}` generates the unit ideal, with `t` a
/// fresh auxiliary variable (which never leaks into any output).
pub fn radical_member(h: &Polynomial, gens: &[Polynomial]) -> bool {
    if h.is_zero() {
        return true;
    }
    let table = gens
        .iter()
        .fold(h.table().clone(), |acc, g| {
            crate::variable::unify(&acc, g.table()).clone()
        });
    let (ext, t) = table.extend_with_auxiliary();
    let mut extended: Vec<Polynomial> = gens.iter().map(|g| g.lift_to(&ext)).collect();
    let witness = &Polynomial::one(&ext) - &(&Polynomial::var(&ext, t) * &h.lift_to(&ext));
    extended.push(witness);
    GroebnerBasis::compute(
        &extended,
        MonomialOrder::velocity_elimination(crate::order::BaseOrder::DegRevLex),
    )
    .is_trivial()
}
