//! Hamiltonian formalism over polynomial phase space.
//!
//! Given a polynomial Lagrangian, this module builds the momenta relations
//! `p_i - dL/d(dq_i)`, performs the Legendre transform by Gröbner-basis
//! velocity elimination, extracts the primary constraints, and provides the
//! canonical Poisson bracket, the total Hamiltonian and the equations of
//! motion.
//!
//! The bracket convention is
//! `{f,g} = sum_i df/dp_i * dg/dq_i - dg/dp_i * df/dq_i`,
//! which makes `dq_i/dt = {H,q_i} = dH/dp_i` and
//! `dp_i/dt = {H,p_i} = -dH/dq_i`. Multipliers are ring variables for
//! storage but constants for differentiation: the bracket only ever
//! differentiates canonical pairs, so a differentiated-multiplier term can
//! never arise in the first place.

use std::sync::Arc;

use crate::dirac::{Constraint, ConstraintClass, ConstraintOrigin};
use crate::error::AnalysisError;
use crate::groebner::GroebnerBasis;
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;
use crate::variable::{unify, VarId, VarKind, VariableTable};

/// A polynomial Lagrangian `L(q, dq)` over its variable table.
#[derive(Debug, Clone)]
pub struct LagrangianSystem {
    table: Arc<VariableTable>,
    lagrangian: Polynomial,
}

impl LagrangianSystem {
    /// Validates that `lagrangian` only involves coordinates and velocities.
    pub fn new(
        table: Arc<VariableTable>,
        lagrangian: Polynomial,
    ) -> Result<Self, AnalysisError> {
        for v in lagrangian.support_vars() {
            let kind = table.kind(v);
            if kind != VarKind::Coordinate && kind != VarKind::Velocity {
                return Err(AnalysisError::ForeignVariableInLagrangian {
                    kind: format!("{kind:?}").to_lowercase(),
                    variable: table.name(v).to_owned(),
                });
            }
        }
        let lagrangian = lagrangian.lift_to(&table);
        Ok(LagrangianSystem { table, lagrangian })
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn lagrangian(&self) -> &Polynomial {
        &self.lagrangian
    }

    pub fn n_coordinates(&self) -> usize {
        self.table.n_coordinates()
    }
}

/// Momenta relations `{p_i - dL/d(dq_i)}`, one per coordinate, each linear
/// in the momenta.
pub fn momenta_relations(sys: &LagrangianSystem) -> Vec<Polynomial> {
    let t = &sys.table;
    (0..sys.n_coordinates())
        .map(|i| {
            &Polynomial::var(t, t.momentum(i)) - &sys.lagrangian.diff(t.velocity(i))
        })
        .collect()
}

/// Canonical Hamiltonian plus primary constraint data.
#[derive(Debug, Clone)]
pub struct HamiltonianSystem {
    table: Arc<VariableTable>,
    order: MonomialOrder,
    h_c: Polynomial,
    primary: Vec<Constraint>,
    /// Reduced basis of the primary constraint ideal in the phase variables.
    g0: GroebnerBasis,
}

impl HamiltonianSystem {
    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn canonical_hamiltonian(&self) -> &Polynomial {
        &self.h_c
    }

    pub fn primary_constraints(&self) -> &[Constraint] {
        &self.primary
    }

    pub fn primary_basis(&self) -> &GroebnerBasis {
        &self.g0
    }

    /// No primary constraints: the Legendre transform is invertible.
    pub fn is_regular(&self) -> bool {
        self.primary.is_empty()
    }
}

/// Legendre transform by velocity elimination.
///
/// Computes the Gröbner basis `G` of the momenta relations under `ord`
/// (which must eliminate the velocities), reduces `sum_i p_i*dq_i - L`
/// modulo `G` to obtain the canonical Hamiltonian, and reads the primary
/// constraints off as the velocity-free part of `G`.
pub fn canonical_hamiltonian(
    sys: &LagrangianSystem,
    ord: &MonomialOrder,
) -> Result<HamiltonianSystem, AnalysisError> {
    let t = &sys.table;
    let velocities: std::collections::BTreeSet<VarId> =
        (0..sys.n_coordinates()).map(|i| t.velocity(i)).collect();
    if !ord.eliminates(t, &velocities) {
        let names: Vec<&str> = velocities.iter().map(|v| t.name(*v)).collect();
        return Err(AnalysisError::NotEliminationOrder {
            variables: names.join(", "),
        });
    }

    let relations = momenta_relations(sys);
    let g = GroebnerBasis::compute(&relations, ord.clone());

    let mut legendre = -&sys.lagrangian;
    for i in 0..sys.n_coordinates() {
        legendre = &legendre
            + &(&Polynomial::var(t, t.momentum(i)) * &Polynomial::var(t, t.velocity(i)));
    }
    let h_c = g.normal_form(&legendre);
    if let Some(v) = h_c.first_var_of_kind(VarKind::Velocity) {
        return Err(AnalysisError::VelocityEliminationFailed {
            variable: t.name(v).to_owned(),
            remainder: h_c.to_string(),
        });
    }

    let primary_polys = g.eliminate(&[VarKind::Momentum, VarKind::Coordinate])?;
    let primary: Vec<Constraint> = primary_polys
        .iter()
        .enumerate()
        .map(|(i, p)| Constraint {
            poly: p.clone(),
            origin: ConstraintOrigin::Primary { index: i + 1 },
            class: ConstraintClass::Unknown,
        })
        .collect();
    // same order, restricted to the phase subring where these polynomials live
    let g0 = GroebnerBasis::compute(&primary_polys, ord.clone());

    Ok(HamiltonianSystem {
        table: Arc::clone(t),
        order: ord.clone(),
        h_c,
        primary,
        g0,
    })
}

/// Canonical Poisson bracket; multipliers and any other non-canonical
/// variables are treated as constants.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let table = unify(f.table(), g.table()).clone();
    let mut out = Polynomial::zero(&table);
    for (p, q) in table.canonical_pairs() {
        let term = &(&f.diff(p) * &g.diff(q)) - &(&g.diff(p) * &f.diff(q));
        out = &out + &term;
    }
    out
}

/// Total Hamiltonian `H_t = H_c + sum_a u_a * phi_a` with one fresh
/// multiplier per primary constraint; the extended table travels with the
/// returned polynomial. For a regular system this is just `H_c`.
pub fn total_hamiltonian(h: &HamiltonianSystem) -> Polynomial {
    if h.primary.is_empty() {
        return h.h_c.clone();
    }
    let (ext, mults) = h.table.extend_with_multipliers(h.primary.len());
    let mut h_t = h.h_c.lift_to(&ext);
    for (u, c) in mults.iter().zip(&h.primary) {
        h_t = &h_t + &(&Polynomial::var(&ext, *u) * &c.poly.lift_to(&ext));
    }
    h_t
}

/// Hamiltonian equations of motion: pairs `(v, {H, v})` meaning
/// `dv/dt = {H, v}`, listed coordinates first, then momenta.
pub fn equations_of_motion(h_t: &Polynomial) -> Vec<(VarId, Polynomial)> {
    let t = h_t.table().clone();
    let mut out = Vec::with_capacity(2 * t.n_coordinates());
    for i in 0..t.n_coordinates() {
        let q = t.coordinate(i);
        out.push((q, poisson_bracket(h_t, &Polynomial::var(&t, q))));
    }
    for i in 0..t.n_coordinates() {
        let p = t.momentum(i);
        out.push((p, poisson_bracket(h_t, &Polynomial::var(&t, p))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::BaseOrder;
    use crate::rational::{from_i64, from_i64s};

    fn ord() -> MonomialOrder {
        MonomialOrder::velocity_elimination(BaseOrder::DegRevLex)
    }

    /// L = 1/2*dq1^2 + q2
    fn linear_potential() -> LagrangianSystem {
        let t = VariableTable::for_coordinates(&["q1", "q2"]).unwrap();
        let dq1 = Polynomial::var(&t, t.velocity(0));
        let q2 = Polynomial::var(&t, t.coordinate(1));
        let l = &dq1.pow(2).scalar_mul(&from_i64s(1, 2)) + &q2;
        LagrangianSystem::new(t, l).unwrap()
    }

    /// L = q1*(dq2 - q3) - dq1*q2
    fn mixed_class_system() -> LagrangianSystem {
        let t = VariableTable::for_coordinates(&["q1", "q2", "q3"]).unwrap();
        let q1 = Polynomial::var(&t, t.coordinate(0));
        let q2 = Polynomial::var(&t, t.coordinate(1));
        let q3 = Polynomial::var(&t, t.coordinate(2));
        let dq1 = Polynomial::var(&t, t.velocity(0));
        let dq2 = Polynomial::var(&t, t.velocity(1));
        let l = &(&q1 * &(&dq2 - &q3)) - &(&dq1 * &q2);
        LagrangianSystem::new(t, l).unwrap()
    }

    #[test]
    fn momenta_relations_examples() {
        let sys = linear_potential();
        let t = sys.table();
        let rels = momenta_relations(&sys);
        assert_eq!(
            rels[0],
            &Polynomial::var(t, t.momentum(0)) - &Polynomial::var(t, t.velocity(0))
        );
        assert_eq!(rels[1], Polynomial::var(t, t.momentum(1)));

        let sys = mixed_class_system();
        let t = sys.table();
        let p = |i| Polynomial::var(t, t.momentum(i));
        let q = |i| Polynomial::var(t, t.coordinate(i));
        assert_eq!(
            momenta_relations(&sys),
            vec![&p(0) + &q(1), &p(1) - &q(0), p(2)]
        );
    }

    #[test]
    fn momenta_relations_are_linear_in_momenta() {
        for sys in [linear_potential(), mixed_class_system()] {
            let t = sys.table();
            let deg_l = sys.lagrangian().total_degree();
            for (i, rel) in momenta_relations(&sys).iter().enumerate() {
                assert!(rel.total_degree() <= deg_l.max(1));
                // exactly linear in p_i, free of other momenta
                for j in 0..sys.n_coordinates() {
                    let expected = if i == j { 1 } else { 0 };
                    let max_exp = rel
                        .terms()
                        .map(|(m, _)| m.exponent(t.momentum(j)))
                        .max()
                        .unwrap();
                    assert_eq!(max_exp, expected);
                }
            }
        }
    }

    #[test]
    fn legendre_transform_with_primary_constraint() {
        let sys = linear_potential();
        let t = sys.table();
        let h = canonical_hamiltonian(&sys, &ord()).unwrap();
        let p1 = Polynomial::var(t, t.momentum(0));
        let q2 = Polynomial::var(t, t.coordinate(1));
        assert_eq!(
            h.canonical_hamiltonian(),
            &(&p1.pow(2).scalar_mul(&from_i64s(1, 2)) - &q2)
        );
        assert_eq!(h.primary_constraints().len(), 1);
        assert_eq!(
            h.primary_constraints()[0].poly,
            Polynomial::var(t, t.momentum(1))
        );
        assert!(!h.is_regular());
    }

    #[test]
    fn regular_system_has_no_constraints() {
        let t = VariableTable::for_coordinates(&["q1", "q2"]).unwrap();
        let kinetic = (0..2).fold(Polynomial::zero(&t), |acc, i| {
            &acc + &Polynomial::var(&t, t.velocity(i)).pow(2)
        });
        let sys = LagrangianSystem::new(t.clone(), kinetic.scalar_mul(&from_i64s(1, 2))).unwrap();
        let h = canonical_hamiltonian(&sys, &ord()).unwrap();
        assert!(h.is_regular());
        let expected = (0..2).fold(Polynomial::zero(&t), |acc, i| {
            &acc + &Polynomial::var(&t, t.momentum(i)).pow(2)
        });
        assert_eq!(
            h.canonical_hamiltonian(),
            &expected.scalar_mul(&from_i64s(1, 2))
        );
        assert!(!h
            .canonical_hamiltonian()
            .contains_kind(VarKind::Velocity));
    }

    #[test]
    fn degenerate_first_order_lagrangian() {
        let sys = mixed_class_system();
        let t = sys.table();
        let h = canonical_hamiltonian(&sys, &ord()).unwrap();
        let q1 = Polynomial::var(t, t.coordinate(0));
        let q3 = Polynomial::var(t, t.coordinate(2));
        assert_eq!(h.canonical_hamiltonian(), &(&q1 * &q3));
        let polys: Vec<&Polynomial> =
            h.primary_constraints().iter().map(|c| &c.poly).collect();
        let p = |i| Polynomial::var(t, t.momentum(i));
        let q = |i| Polynomial::var(t, t.coordinate(i));
        assert_eq!(polys, vec![&(&p(0) + &q(1)), &(&p(1) - &q(0)), &p(2)]);
    }

    #[test]
    fn cubic_kinetic_term_fails_velocity_elimination() {
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let l = Polynomial::var(&t, t.velocity(0)).pow(3);
        let sys = LagrangianSystem::new(t, l).unwrap();
        match canonical_hamiltonian(&sys, &ord()) {
            Err(AnalysisError::VelocityEliminationFailed { variable, .. }) => {
                assert_eq!(variable, "dq1");
            }
            other => panic!("expected VelocityEliminationFailed, got {other:?}"),
        }
    }

    #[test]
    fn hamiltonian_is_reduced_and_velocity_free() {
        for sys in [linear_potential(), mixed_class_system()] {
            let h = canonical_hamiltonian(&sys, &ord()).unwrap();
            assert!(!h.canonical_hamiltonian().contains_kind(VarKind::Velocity));
            assert_eq!(
                &h.primary_basis().normal_form(h.canonical_hamiltonian()),
                h.canonical_hamiltonian()
            );
        }
    }

    #[test]
    fn canonical_bracket_relations() {
        let t = VariableTable::for_coordinates(&["q1", "q2", "q3"]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let p = Polynomial::var(&t, t.momentum(i));
                let q = Polynomial::var(&t, t.coordinate(j));
                let expected = if i == j {
                    Polynomial::one(&t)
                } else {
                    Polynomial::zero(&t)
                };
                assert_eq!(poisson_bracket(&p, &q), expected);
                assert!(poisson_bracket(
                    &Polynomial::var(&t, t.coordinate(i)),
                    &Polynomial::var(&t, t.coordinate(j))
                )
                .is_zero());
                assert!(poisson_bracket(
                    &Polynomial::var(&t, t.momentum(i)),
                    &Polynomial::var(&t, t.momentum(j))
                )
                .is_zero());
            }
        }
    }

    #[test]
    fn bracket_with_constant_vanishes() {
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let f = &Polynomial::var(&t, t.momentum(0)).pow(2)
            + &Polynomial::var(&t, t.coordinate(0));
        let c = Polynomial::constant(&t, from_i64s(7, 3));
        assert!(poisson_bracket(&f, &c).is_zero());
    }

    #[test]
    fn bracket_of_primary_constraints() {
        // {p1 + q2, p2 - q1} = -2 for the first-order system
        let sys = mixed_class_system();
        let t = sys.table();
        let f = &Polynomial::var(t, t.momentum(0)) + &Polynomial::var(t, t.coordinate(1));
        let g = &Polynomial::var(t, t.momentum(1)) - &Polynomial::var(t, t.coordinate(0));
        assert_eq!(
            poisson_bracket(&f, &g),
            Polynomial::constant(t, from_i64(-2))
        );
    }

    #[test]
    fn total_hamiltonian_appends_multiplier_terms() {
        let sys = linear_potential();
        let h = canonical_hamiltonian(&sys, &ord()).unwrap();
        let h_t = total_hamiltonian(&h);
        let ext = h_t.table();
        let u1 = ext.lookup("u1").unwrap();
        assert_eq!(ext.kind(u1), VarKind::Multiplier);
        // H_t = 1/2*p1^2 - q2 + u1*p2
        let expected = &h.canonical_hamiltonian().lift_to(ext)
            + &(&Polynomial::var(ext, u1) * &Polynomial::var(ext, ext.momentum(1)));
        assert_eq!(h_t, expected);
    }

    #[test]
    fn equations_of_motion_examples() {
        let sys = linear_potential();
        let h = canonical_hamiltonian(&sys, &ord()).unwrap();
        let h_t = total_hamiltonian(&h);
        let ext = h_t.table().clone();
        let eom = equations_of_motion(&h_t);
        let lookup = |v: VarId| {
            eom.iter()
                .find(|(w, _)| *w == v)
                .map(|(_, rhs)| rhs.clone())
                .unwrap()
        };
        // dq1/dt = p1, dq2/dt = u1, dp2/dt = 1
        assert_eq!(lookup(ext.coordinate(0)), Polynomial::var(&ext, ext.momentum(0)));
        assert_eq!(
            lookup(ext.coordinate(1)),
            Polynomial::var(&ext, ext.lookup("u1").unwrap())
        );
        assert_eq!(lookup(ext.momentum(1)), Polynomial::one(&ext));
        assert!(lookup(ext.momentum(0)).is_zero());
    }

    #[test]
    fn free_particle_motion() {
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let h_t = Polynomial::var(&t, t.momentum(0))
            .pow(2)
            .scalar_mul(&from_i64s(1, 2));
        let eom = equations_of_motion(&h_t);
        assert_eq!(eom[0].1, Polynomial::var(&t, t.momentum(0)));
        assert!(eom[1].1.is_zero());
    }

    #[test]
    fn lagrangian_validation_rejects_momenta() {
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let bad = Polynomial::var(&t, t.momentum(0));
        assert!(LagrangianSystem::new(t, bad).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_phase_poly() -> impl Strategy<Value = Polynomial> {
            // polynomials in p1..p3, q1..q3 of degree <= 3
            let term = (prop::collection::vec(0u32..2, 6), -5i64..=5, 1i64..=3);
            prop::collection::vec(term, 0..5).prop_map(|terms| {
                let t = VariableTable::for_coordinates(&["q1", "q2", "q3"]).unwrap();
                Polynomial::from_terms(
                    &t,
                    terms.into_iter().map(|(exps, num, den)| {
                        let mon = crate::monomial::Monomial::from_exponents(
                            exps.iter().enumerate().map(|(i, &e)| {
                                if i < 3 {
                                    (t.momentum(i), e)
                                } else {
                                    (t.coordinate(i - 3), e)
                                }
                            }),
                        );
                        (mon, from_i64s(num, den))
                    }),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn bracket_axioms((f, g, h) in (arb_phase_poly(), arb_phase_poly(), arb_phase_poly())) {
                // antisymmetry
                prop_assert_eq!(poisson_bracket(&f, &g), -&poisson_bracket(&g, &f));
                // bilinearity
                prop_assert_eq!(
                    poisson_bracket(&(&f + &g), &h),
                    &poisson_bracket(&f, &h) + &poisson_bracket(&g, &h)
                );
                // Leibniz rule
                prop_assert_eq!(
                    poisson_bracket(&f, &(&g * &h)),
                    &(&g * &poisson_bracket(&f, &h)) + &(&poisson_bracket(&f, &g) * &h)
                );
                // Jacobi identity
                let jac = &(&poisson_bracket(&f, &poisson_bracket(&g, &h))
                    + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
                    + &poisson_bracket(&h, &poisson_bracket(&f, &g));
                prop_assert!(jac.is_zero());
            }
        }
    }
}
