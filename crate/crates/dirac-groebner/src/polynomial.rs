//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] is an immutable association of monomials to nonzero
//! rational coefficients over one [`VariableTable`]. All arithmetic is exact;
//! zero coefficients are pruned on every operation. Values are freely
//! shareable across threads.
//!
//! Binary operations accept operands whose tables are extension stages of
//! one another (the result lives over the finer table) and panic on operands
//! from unrelated problems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::rational::{self, Rational};
use crate::variable::{unify, VarId, VarKind, VariableTable};

#[derive(Debug, Clone)]
pub struct Polynomial {
    table: Arc<VariableTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(table: &Arc<VariableTable>) -> Self {
        Polynomial {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VariableTable>) -> Self {
        Self::constant(table, rational::one())
    }

    pub fn constant(table: &Arc<VariableTable>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn var(table: &Arc<VariableTable>, v: VarId) -> Self {
        Self::from_terms(table, [(Monomial::var(v), rational::one())])
    }

    /// Builds a polynomial, summing duplicate monomials and pruning zeros.
    pub fn from_terms(
        table: &Arc<VariableTable>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(
                m.support().all(|(v, _)| v.index() < table.len()),
                "monomial mentions a variable outside the table"
            );
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Polynomial {
            table: Arc::clone(table),
            terms: map,
        }
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map_or(false, |c| c.is_one())
    }

    /// The constant value when the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in structural key order (not a monomial order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn support_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.support().map(|(v, _)| v));
        }
        out
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn contains_kind(&self, kind: VarKind) -> bool {
        self.support_vars()
            .iter()
            .any(|v| self.table.kind(*v) == kind)
    }

    /// First variable of `kind` occurring in the polynomial, if any.
    pub fn first_var_of_kind(&self, kind: VarKind) -> Option<VarId> {
        self.support_vars()
            .into_iter()
            .find(|v| self.table.kind(*v) == kind)
    }

    /// Re-homes the polynomial onto an extension of its table.
    pub fn lift_to(&self, table: &Arc<VariableTable>) -> Polynomial {
        assert!(
            self.table.is_prefix_of(table),
            "lift target is not an extension of the polynomial's table"
        );
        Polynomial {
            table: Arc::clone(table),
            terms: self.terms.clone(),
        }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.table);
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

    /// Formal partial derivative with respect to `v`.
    pub fn diff(&self, v: VarId) -> Polynomial {
        assert!(v.index() < self.table.len(), "unknown variable");
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            let lowered = m
                .checked_div(&Monomial::var(v))
                .expect("exponent is positive");
            Some((lowered, c * Rational::from_integer(e.into())))
        });
        Polynomial::from_terms(&self.table, terms)
    }

    /// The `ord`-greatest term; `None` for the zero polynomial.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(Monomial, Rational)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(cur) => {
                    if ord.compare(&self.table, m, cur) == std::cmp::Ordering::Greater {
                        m
                    } else {
                        cur
                    }
                }
            });
        }
        best.map(|m| (m.clone(), self.terms[m].clone()))
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Scales the polynomial so its `ord`-leading coefficient is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, lc)) => self.scalar_mul(&lc.recip()),
        }
    }

    /// Terms sorted from `ord`-greatest to least.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| ord.compare(&self.table, b, a));
        v
    }

    /// Checks the stored-term invariants (no zero coefficients, every
    /// coefficient normalized). Used by tests and debug audits.
    pub fn audit(&self) -> bool {
        self.terms
            .values()
            .all(|c| !c.is_zero() && rational::is_normalized(c))
    }

    fn add_scaled(&self, other: &Polynomial, sign: i64) -> Polynomial {
        let table = unify(&self.table, &other.table);
        let mut terms = self.terms.clone();
        let s = rational::from_i64(sign);
        for (m, c) in &other.terms {
            let delta = c * &s;
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(delta);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Polynomial {
            table: Arc::clone(table),
            terms,
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        // tables must belong to the same problem for equality to make sense
        unify(&self.table, &other.table);
        self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, -1)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let table = unify(&self.table, &rhs.table);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Polynomial {
            table: Arc::clone(table),
            terms,
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scalar_mul(&rational::from_i64(-1))
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in descending degrevlex order, monomials in
    /// `name^e*...` form. Output parses back through the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ord = MonomialOrder::degrevlex();
        for (i, (m, c)) in self.sorted_terms(&ord).into_iter().enumerate() {
            let mag = c.abs();
            let sign = c.is_negative();
            if i == 0 {
                if sign {
                    write!(f, "-")?;
                }
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff = rational::render_rational(&mag);
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.render(&self.table))?;
            } else {
                write!(f, "{}*{}", coeff, m.render(&self.table))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_i64, from_i64s};

    fn table2() -> Arc<VariableTable> {
        VariableTable::for_coordinates(&["x", "y"]).unwrap()
    }

    fn x(t: &Arc<VariableTable>) -> Polynomial {
        Polynomial::var(t, t.coordinate(0))
    }

    fn y(t: &Arc<VariableTable>) -> Polynomial {
        Polynomial::var(t, t.coordinate(1))
    }

    #[test]
    fn difference_of_squares() {
        let t = table2();
        let one = Polynomial::one(&t);
        let lhs = &(&x(&t) + &one) * &(&x(&t) - &one);
        let rhs = &x(&t).pow(2) - &one;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_inverse_gives_zero() {
        let t = table2();
        let f = &x(&t).pow(3) + &y(&t).scalar_mul(&from_i64s(2, 3));
        assert!((&f - &f).is_zero());
        assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn term_by_term_build_matches_arithmetic() {
        // (1/2)*dq1^2 + q2 assembled from raw terms
        let t = VariableTable::for_coordinates(&["q1", "q2"]).unwrap();
        let built = Polynomial::from_terms(
            &t,
            [
                (Monomial::var_pow(t.velocity(0), 2), from_i64s(1, 2)),
                (Monomial::var(t.coordinate(1)), from_i64(1)),
            ],
        );
        let dq1 = Polynomial::var(&t, t.velocity(0));
        let q2 = Polynomial::var(&t, t.coordinate(1));
        let composed = &dq1.pow(2).scalar_mul(&from_i64s(1, 2)) + &q2;
        assert_eq!(built, composed);
    }

    #[test]
    fn differentiation() {
        let t = VariableTable::for_coordinates(&["q1", "q2", "q3"]).unwrap();
        let dq1 = Polynomial::var(&t, t.velocity(0));
        let half_dq1_sq = dq1.pow(2).scalar_mul(&from_i64s(1, 2));
        assert_eq!(half_dq1_sq.diff(t.velocity(0)), dq1);

        let c = Polynomial::constant(&t, from_i64(17));
        assert!(c.diff(t.coordinate(0)).is_zero());

        // L = q1*(dq2 - q3) - dq1*q2, dL/d(dq1) = -q2
        let q1 = Polynomial::var(&t, t.coordinate(0));
        let q2 = Polynomial::var(&t, t.coordinate(1));
        let q3 = Polynomial::var(&t, t.coordinate(2));
        let dq2 = Polynomial::var(&t, t.velocity(1));
        let lagrangian = &(&q1 * &(&dq2 - &q3)) - &(&dq1 * &q2);
        assert_eq!(lagrangian.diff(t.velocity(0)), -&q2);
        assert_eq!(lagrangian.diff(t.velocity(1)), q1);
        assert!(lagrangian.diff(t.velocity(2)).is_zero());
    }

    #[test]
    fn leading_terms_under_orders() {
        let t = table2();
        let ord = MonomialOrder::degrevlex();
        let f = &x(&t).pow(2) + &y(&t).pow(3);
        let (m, c) = f.leading_term(&ord).unwrap();
        assert_eq!(m, Monomial::var_pow(t.coordinate(1), 3));
        assert!(c.is_one());

        let g = &x(&t).pow(2) + &y(&t).pow(2);
        let (m, _) = g.leading_term(&ord).unwrap();
        assert_eq!(m, Monomial::var_pow(t.coordinate(0), 2));

        assert_eq!(Polynomial::zero(&t).leading_term(&ord), None);
    }

    #[test]
    fn leading_term_under_block_order() {
        use crate::order::BaseOrder;
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let ord = MonomialOrder::velocity_elimination(BaseOrder::DegRevLex);
        let p1 = Polynomial::var(&t, t.momentum(0));
        let dq1 = Polynomial::var(&t, t.velocity(0));
        let f = &(&p1 * &dq1) + &p1.pow(3);
        let (m, _) = f.leading_term(&ord).unwrap();
        assert_eq!(
            m,
            Monomial::from_exponents([(t.velocity(0), 1), (t.momentum(0), 1)])
        );
    }

    #[test]
    fn display_round_trips_sign_and_fractions() {
        let t = table2();
        let f = &(-&x(&t).pow(2)).scalar_mul(&from_i64s(3, 2)) + &(&y(&t) - &Polynomial::one(&t));
        assert_eq!(f.to_string(), "-3/2*x^2 + y - 1");
        assert_eq!(Polynomial::zero(&t).to_string(), "0");
        assert_eq!(Polynomial::one(&t).to_string(), "1");
    }

    #[test]
    fn lift_and_mixed_table_arithmetic() {
        let t = table2();
        let f = x(&t);
        let (t2, mults) = t.extend_with_multipliers(1);
        let u = Polynomial::var(&t2, mults[0]);
        let sum = &f + &u; // old-table poly + new-table poly
        assert!(Arc::ptr_eq(sum.table(), &t2));
        assert_eq!(sum.num_terms(), 2);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            // up to 4 terms, 3 coordinate variables, degree <= 3 per variable
            let term = (
                prop::collection::vec(0u32..3, 3),
                -6i64..=6,
                1i64..=3,
            );
            prop::collection::vec(term, 0..4).prop_map(|terms| {
                let t = VariableTable::for_coordinates(&["x", "y", "z"]).unwrap();
                Polynomial::from_terms(
                    &t,
                    terms.into_iter().map(|(exps, num, den)| {
                        (
                            Monomial::from_exponents(
                                exps.iter()
                                    .enumerate()
                                    .map(|(i, &e)| (t.coordinate(i), e)),
                            ),
                            from_i64s(num, den),
                        )
                    }),
                )
            })
        }

        proptest! {
            #[test]
            fn ring_axioms((f, g, h) in (arb_poly(), arb_poly(), arb_poly())) {
                prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
                prop_assert_eq!(&f + &g, &g + &f);
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            }

            #[test]
            fn mixed_partials_commute(f in arb_poly()) {
                let t = f.table().clone();
                let v = t.coordinate(0);
                let w = t.coordinate(2);
                prop_assert_eq!(f.diff(v).diff(w), f.diff(w).diff(v));
            }

            #[test]
            fn stored_coefficients_stay_normalized((f, g) in (arb_poly(), arb_poly())) {
                prop_assert!((&f * &g).audit());
                prop_assert!((&f - &g).audit());
                prop_assert!(f.pow(3).audit());
            }
        }
    }
}
