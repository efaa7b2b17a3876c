//! Power products of variables.

use std::fmt;

use crate::variable::{VarId, VariableTable};

/// A power product, stored as an exponent vector indexed by [`VarId`].
///
/// Trailing zero exponents are trimmed so equal monomials compare equal even
/// when built over tables of different extension stages. The derived `Ord` is
/// a plain structural order used for map keys; monomial-order comparisons
/// live in [`crate::order`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The empty product `1`.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        let mut exps = vec![0; v.index() + 1];
        exps[v.index()] = e;
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            if v.index() >= m.exps.len() {
                m.exps.resize(v.index() + 1, 0);
            }
            m.exps[v.index()] += e;
        }
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps.get(v.index()).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VarId(i), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.exps.get(i).copied().unwrap_or(0);
            let b = other.exps.get(i).copied().unwrap_or(0);
            exps.push(a + b);
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        };
        m.trim();
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= other.exps.get(i).copied().unwrap_or(0))
    }

    /// `self / divisor` when `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let mut exps = self.exps.clone();
        for (i, &e) in divisor.exps.iter().enumerate() {
            exps[i] -= e;
        }
        let mut m = Monomial { exps };
        m.trim();
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.exps.get(i).copied().unwrap_or(0);
            let b = other.exps.get(i).copied().unwrap_or(0);
            exps.push(a.max(b));
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.support().all(|(v, _)| other.exponent(v) == 0)
    }

    /// Text form like `p_q1^2*q2`, or `1` for the empty product.
    pub fn render(&self, table: &VariableTable) -> String {
        if self.is_one() {
            return "1".to_owned();
        }
        // factors listed by descending precedence, for stable output
        let mut parts = Vec::new();
        for &v in table.by_precedence() {
            let e = self.exponent(v);
            if e == 1 {
                parts.push(table.name(v).to_owned());
            } else if e > 1 {
                parts.push(format!("{}^{}", table.name(v), e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(v, e)| {
                if e == 1 {
                    format!("x{}", v.index())
                } else {
                    format!("x{}^{}", v.index(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
