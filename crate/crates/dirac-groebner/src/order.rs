//! Monomial orders: degrevlex, lex, and block (elimination) compositions.
//!
//! An order is a sequence of blocks over a partition of the variable kinds.
//! Monomials are compared block by block: the first block with differing
//! restrictions decides. A block order whose leading blocks exactly cover a
//! set of variables is an elimination order for that set — any monomial
//! containing such a variable outranks every monomial free of them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::monomial::Monomial;
use crate::variable::{VarId, VarKind, VariableTable, ALL_KINDS};

/// Order applied inside a single block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseOrder {
    DegRevLex,
    Lex,
}

impl BaseOrder {
    /// Compares restrictions of `a`, `b` to `vars` (highest precedence first).
    fn compare(self, vars: &[VarId], a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            BaseOrder::Lex => {
                for &v in vars {
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            BaseOrder::DegRevLex => {
                let da: u64 = vars.iter().map(|&v| u64::from(a.exponent(v))).sum();
                let db: u64 = vars.iter().map(|&v| u64::from(b.exponent(v))).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // equal degree: the monomial with the larger exponent on the
                // lowest-precedence differing variable is the smaller one
                for &v in vars.iter().rev() {
                    match a.exponent(v).cmp(&b.exponent(v)) {
                        Ordering::Equal => continue,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for BaseOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseOrder::DegRevLex => write!(f, "degrevlex"),
            BaseOrder::Lex => write!(f, "lex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    kinds: Vec<VarKind>,
    base: BaseOrder,
}

/// A total, multiplicative well-order on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    blocks: Vec<Block>,
}

impl MonomialOrder {
    /// Degree-reverse-lexicographic order over all variables by precedence.
    pub fn degrevlex() -> Self {
        Self::single(BaseOrder::DegRevLex)
    }

    /// Lexicographic order over all variables by precedence.
    pub fn lex() -> Self {
        Self::single(BaseOrder::Lex)
    }

    fn single(base: BaseOrder) -> Self {
        MonomialOrder {
            blocks: vec![Block {
                kinds: ALL_KINDS.to_vec(),
                base,
            }],
        }
    }

    /// The analysis order: blocks `[auxiliary] > [velocities] >
    /// [momenta, coordinates] > [multipliers]`, each ordered by `base`.
    ///
    /// Eliminates velocities, and restricts to plain `base` on the
    /// momentum/coordinate subring, which is the order the constraint
    /// computation continues with.
    pub fn velocity_elimination(base: BaseOrder) -> Self {
        MonomialOrder {
            blocks: vec![
                Block {
                    kinds: vec![VarKind::Auxiliary],
                    base,
                },
                Block {
                    kinds: vec![VarKind::Velocity],
                    base,
                },
                Block {
                    kinds: vec![VarKind::Momentum, VarKind::Coordinate],
                    base,
                },
                Block {
                    kinds: vec![VarKind::Multiplier],
                    base,
                },
            ],
        }
    }

    pub fn compare(&self, table: &VariableTable, a: &Monomial, b: &Monomial) -> Ordering {
        for block in &self.blocks {
            let vars = self.block_vars(table, block);
            match block.base.compare(&vars, a, b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    fn block_vars(&self, table: &VariableTable, block: &Block) -> Vec<VarId> {
        table
            .by_precedence()
            .iter()
            .copied()
            .filter(|v| block.kinds.contains(&table.kind(*v)))
            .collect()
    }

    /// True when the leading blocks cover exactly `eliminated`, making any
    /// monomial containing one of those variables larger than every monomial
    /// free of them.
    pub fn eliminates(&self, table: &VariableTable, eliminated: &BTreeSet<VarId>) -> bool {
        let mut acc = BTreeSet::new();
        if acc == *eliminated {
            return true;
        }
        for block in &self.blocks {
            acc.extend(self.block_vars(table, block));
            if acc == *eliminated {
                return true;
            }
            if acc.len() > eliminated.len() {
                return false;
            }
        }
        false
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.len() == 1 {
            return write!(f, "{}", self.blocks[0].base);
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let kinds: Vec<&str> = b
                    .kinds
                    .iter()
                    .map(|k| match k {
                        VarKind::Auxiliary => "aux",
                        VarKind::Velocity => "velocities",
                        VarKind::Momentum => "momenta",
                        VarKind::Coordinate => "coordinates",
                        VarKind::Multiplier => "multipliers",
                    })
                    .collect();
                format!("[{} : {}]", kinds.join(","), b.base)
            })
            .collect();
        write!(f, "{}", parts.join(" > "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variable::VariableTable;
    use std::cmp::Ordering::*;

    // coordinates x > y > z; only the coordinate slots are used
    fn coords3() -> std::sync::Arc<VariableTable> {
        VariableTable::for_coordinates(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn degrevlex_prefers_total_degree() {
        let t = coords3();
        let ord = MonomialOrder::degrevlex();
        let x2 = Monomial::var_pow(t.coordinate(0), 2);
        let y3 = Monomial::var_pow(t.coordinate(1), 3);
        assert_eq!(ord.compare(&t, &y3, &x2), Greater);
    }

    #[test]
    fn degrevlex_tie_break() {
        let t = coords3();
        let ord = MonomialOrder::degrevlex();
        let x2 = Monomial::var_pow(t.coordinate(0), 2);
        let y2 = Monomial::var_pow(t.coordinate(1), 2);
        assert_eq!(ord.compare(&t, &x2, &y2), Greater);

        // equal degree: y^2 beats x*z because x*z has the larger exponent on
        // the smallest variable involved
        let xz = Monomial::from_exponents([(t.coordinate(0), 1), (t.coordinate(2), 1)]);
        assert_eq!(ord.compare(&t, &y2, &xz), Greater);
        assert_eq!(ord.compare(&t, &xz, &y2), Less);
    }

    #[test]
    fn lex_ignores_degree() {
        let t = coords3();
        let ord = MonomialOrder::lex();
        let x = Monomial::var(t.coordinate(0));
        let y3 = Monomial::var_pow(t.coordinate(1), 3);
        assert_eq!(ord.compare(&t, &x, &y3), Greater);
    }

    #[test]
    fn reflexive_equality() {
        let t = coords3();
        let m = Monomial::from_exponents([(t.coordinate(0), 2), (t.coordinate(1), 1)]);
        for ord in [
            MonomialOrder::degrevlex(),
            MonomialOrder::lex(),
            MonomialOrder::velocity_elimination(BaseOrder::DegRevLex),
        ] {
            assert_eq!(ord.compare(&t, &m, &m), Equal);
        }
    }

    #[test]
    fn velocity_block_dominates_any_phase_monomial() {
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let ord = MonomialOrder::velocity_elimination(BaseOrder::DegRevLex);
        let dq = Monomial::var(t.velocity(0));
        let big = Monomial::from_exponents([(t.momentum(0), 10), (t.coordinate(0), 10)]);
        assert_eq!(ord.compare(&t, &dq, &big), Greater);
    }

    #[test]
    fn block_order_on_mixed_product() {
        // leading monomial of p1*dq1 under the elimination order is p1*dq1
        // itself: compare against p1^2 (velocity block wins first).
        let t = VariableTable::for_coordinates(&["q1"]).unwrap();
        let ord = MonomialOrder::velocity_elimination(BaseOrder::DegRevLex);
        let mixed = Monomial::from_exponents([(t.velocity(0), 1), (t.momentum(0), 1)]);
        let p2 = Monomial::var_pow(t.momentum(0), 2);
        assert_eq!(ord.compare(&t, &mixed, &p2), Greater);
    }

    #[test]
    fn elimination_detection() {
        let t = VariableTable::for_coordinates(&["q1", "q2"]).unwrap();
        let velocities: BTreeSet<_> = [t.velocity(0), t.velocity(1)].into();
        assert!(MonomialOrder::velocity_elimination(BaseOrder::DegRevLex)
            .eliminates(&t, &velocities));
        // lex by precedence also eliminates velocities; degrevlex does not
        assert!(MonomialOrder::lex().eliminates(&t, &velocities));
        assert!(!MonomialOrder::degrevlex().eliminates(&t, &velocities));
        let one_velocity: BTreeSet<_> = [t.velocity(0)].into();
        assert!(!MonomialOrder::velocity_elimination(BaseOrder::DegRevLex)
            .eliminates(&t, &one_velocity));
    }

    #[test]
    fn multiplicativity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = coords3();
        let orders = [
            MonomialOrder::degrevlex(),
            MonomialOrder::lex(),
            MonomialOrder::velocity_elimination(BaseOrder::DegRevLex),
        ];
        let random_mon = |rng: &mut rand_chacha::ChaCha8Rng| {
            Monomial::from_exponents(
                (0..t.len()).map(|i| (crate::variable::VarId(i), rng.gen_range(0..3))),
            )
        };
        for _ in 0..200 {
            let (a, b, c) = (random_mon(&mut rng), random_mon(&mut rng), random_mon(&mut rng));
            for ord in &orders {
                let before = ord.compare(&t, &a, &b);
                let after = ord.compare(&t, &a.mul(&c), &b.mul(&c));
                assert_eq!(before, after, "order must be multiplicative");
                // 1 is minimal
                assert_ne!(
                    ord.compare(&t, &Monomial::one(), &a.mul(&b).mul(&c)),
                    std::cmp::Ordering::Greater
                );
            }
        }
    }
}
