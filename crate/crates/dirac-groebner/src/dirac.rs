//! Constraint completion and first/second class separation.
//!
//! Starting from the primary constraints, the completion loop enforces the
//! consistency condition `{H_t, phi} = 0` on the constraint manifold for
//! every constraint, enlarging the set with each new velocity-free,
//! multiplier-free consequence until a fixpoint is reached, the ideal
//! becomes the whole ring (inconsistent system), or the safety cap trips.
//! The total Hamiltonian is built once, from the primary constraints only;
//! consequences found later never receive multipliers.
//!
//! Classification evaluates the mutual Poisson-bracket matrix on the
//! constraint manifold (entrywise normal forms) and splits the set along
//! the kernel of that matrix: kernel combinations are first class, a
//! complementary kernel-of-the-kernel basis spans the second class.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{Integer, One, Signed, Zero};

use crate::error::AnalysisError;
use crate::groebner::{radical_member, GroebnerBasis};
use crate::order::{BaseOrder, MonomialOrder};
use crate::phasespace::{
    canonical_hamiltonian, equations_of_motion, poisson_bracket, total_hamiltonian,
    HamiltonianSystem, LagrangianSystem,
};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::variable::{VarId, VarKind, VariableTable};

/// Dirac class of a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintClass {
    Unknown,
    First,
    Second,
}

/// How a constraint entered the analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintOrigin {
    /// Forced by the Legendre transform; `index` is 1-based.
    Primary { index: usize },
    /// Consistency condition of the constraint `phi_parent` (1-based),
    /// found during completion pass `pass`.
    Consistency { parent: usize, pass: usize },
    /// Linear combination of the complete set with the given coefficients.
    Combination { coefficients: Vec<Polynomial> },
}

/// A constraint polynomial with provenance and class tag.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub poly: Polynomial,
    pub origin: ConstraintOrigin,
    pub class: ConstraintClass,
}

/// A consistency bracket that involves multipliers: weakly,
/// `u_free + sum_a coefficients[a] * u_a = 0`. Recorded instead of a new
/// constraint; only coefficients with nonzero normal form are kept.
#[derive(Debug, Clone)]
pub struct MultiplierCondition {
    /// 1-based index of the constraint whose consistency produced this.
    pub source: usize,
    /// Multiplier-free part, reduced modulo the constraint basis.
    pub u_free: Polynomial,
    /// `(multiplier index, reduced coefficient)`, 1-based, nonzero.
    pub coefficients: Vec<(usize, Polynomial)>,
}

/// Overall outcome of the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisStatus {
    /// Invertible Legendre transform, no constraints at all.
    Regular,
    /// Completion reached a fixpoint.
    Consistent,
    /// The constraint ideal collapsed to the whole ring.
    Inconsistent,
}

impl AnalysisStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            AnalysisStatus::Regular => "regular",
            AnalysisStatus::Consistent => "consistent",
            AnalysisStatus::Inconsistent => "inconsistent",
        }
    }
}

/// Knobs for the completion loop.
#[derive(Debug, Clone, Default)]
pub struct CompletionOptions {
    /// Accept a consistency polynomial as weakly zero when it lies in the
    /// radical of the constraint ideal, not only in the ideal itself.
    pub radical_check: bool,
    /// Pass cap; defaults to `10 * (2n)` for `n` canonical pairs.
    pub max_passes: Option<usize>,
}

/// One constraint insertion, with the basis it was reduced against.
#[derive(Debug, Clone)]
pub struct CompletionStep {
    pub pass: usize,
    pub parent: usize,
    pub added: Polynomial,
    pub basis_before: GroebnerBasis,
}

/// Result of [`complete_constraints`].
#[derive(Debug, Clone)]
pub struct CompletionOutcome {
    pub status: AnalysisStatus,
    pub constraints: Vec<Constraint>,
    pub basis: GroebnerBasis,
    pub conditions: Vec<MultiplierCondition>,
    /// `H_c + sum u_a phi_a`; `None` for regular systems.
    pub total_hamiltonian: Option<Polynomial>,
    pub multipliers: Vec<VarId>,
    pub trace: Vec<CompletionStep>,
    pub warnings: Vec<String>,
    pub passes: usize,
    pub groebner_runs: usize,
}

/// Runs the completion loop to a fixpoint.
///
/// Every pass rescans the full constraint set against the current basis.
/// A bracket splits as `h0 + sum_a u_a * h_a` (it is linear in the
/// multipliers because they are never differentiated); if any reduced `h_a`
/// is nonzero the pass records a [`MultiplierCondition`] and adds nothing,
/// otherwise a nonzero reduced `h0` joins the set monically and the basis is
/// recomputed.
pub fn complete_constraints(
    h: &HamiltonianSystem,
    opts: &CompletionOptions,
) -> Result<CompletionOutcome, AnalysisError> {
    if h.is_regular() {
        return Ok(CompletionOutcome {
            status: AnalysisStatus::Regular,
            constraints: Vec::new(),
            basis: h.primary_basis().clone(),
            conditions: Vec::new(),
            total_hamiltonian: None,
            multipliers: Vec::new(),
            trace: Vec::new(),
            warnings: Vec::new(),
            passes: 0,
            groebner_runs: 0,
        });
    }

    let h_t = total_hamiltonian(h);
    let ext = h_t.table().clone();
    let multipliers = ext.vars_of_kind(VarKind::Multiplier);
    let cap = opts
        .max_passes
        .unwrap_or_else(|| 10 * 2 * ext.n_coordinates());

    let mut constraints: Vec<Constraint> = h
        .primary_constraints()
        .iter()
        .map(|c| Constraint {
            poly: c.poly.lift_to(&ext),
            origin: c.origin.clone(),
            class: c.class,
        })
        .collect();
    let mut basis = h.primary_basis().clone();
    let mut trace = Vec::new();
    let mut warnings = Vec::new();
    let mut non_radical_seen: BTreeSet<String> = BTreeSet::new();
    let mut groebner_runs = 0usize;
    let mut passes = 0usize;

    loop {
        passes += 1;
        if passes > cap {
            return Err(AnalysisError::IterationLimitExceeded { limit: cap });
        }
        let mut conditions = Vec::new();
        let mut added = false;
        let mut idx = 0;
        while idx < constraints.len() {
            let bracket = poisson_bracket(&h_t, &constraints[idx].poly);
            let (u_free, u_parts) = split_multipliers(&bracket, &multipliers);
            let mut coeffs = Vec::new();
            for (alpha, part) in u_parts {
                let nf = basis.normal_form(&part);
                if !nf.is_zero() {
                    coeffs.push((alpha, nf));
                }
            }
            let h0 = basis.normal_form(&u_free);
            if !coeffs.is_empty() {
                conditions.push(MultiplierCondition {
                    source: idx + 1,
                    u_free: h0,
                    coefficients: coeffs,
                });
            } else if !h0.is_zero() {
                let weakly_zero = opts.radical_check && {
                    groebner_runs += 1;
                    radical_member(&h0, basis.elements())
                };
                if weakly_zero {
                    // vanishes on the manifold but not in the ideal
                    if non_radical_seen.insert(h0.to_string()) {
                        warnings.push(format!(
                            "NON-RADICAL constraint ideal: `{h0}` vanishes on the \
                             constraint manifold but is not in the constraint ideal \
                             (consistency of phi_{})",
                            idx + 1
                        ));
                    }
                } else {
                    let monic = h0.monic(h.order());
                    trace.push(CompletionStep {
                        pass: passes,
                        parent: idx + 1,
                        added: monic.clone(),
                        basis_before: basis.clone(),
                    });
                    constraints.push(Constraint {
                        poly: monic,
                        origin: ConstraintOrigin::Consistency {
                            parent: idx + 1,
                            pass: passes,
                        },
                        class: ConstraintClass::Unknown,
                    });
                    let polys: Vec<Polynomial> =
                        constraints.iter().map(|c| c.poly.clone()).collect();
                    basis = GroebnerBasis::compute(&polys, h.order().clone());
                    groebner_runs += 1;
                    added = true;
                    if basis.is_trivial() {
                        warnings.push(format!(
                            "inconsistent system: the consistency condition of phi_{} \
                             forces a nonzero constant to vanish",
                            idx + 1
                        ));
                        return Ok(CompletionOutcome {
                            status: AnalysisStatus::Inconsistent,
                            constraints,
                            basis,
                            conditions: Vec::new(),
                            total_hamiltonian: Some(h_t),
                            multipliers,
                            trace,
                            warnings,
                            passes,
                            groebner_runs,
                        });
                    }
                }
            }
            idx += 1;
        }
        if !added {
            return Ok(CompletionOutcome {
                status: AnalysisStatus::Consistent,
                constraints,
                basis,
                conditions,
                total_hamiltonian: Some(h_t),
                multipliers,
                trace,
                warnings,
                passes,
                groebner_runs,
            });
        }
    }
}

/// Splits a polynomial linear in the multipliers into its multiplier-free
/// part and the coefficient of each multiplier (1-based indexing matching
/// the primary constraints).
fn split_multipliers(
    p: &Polynomial,
    multipliers: &[VarId],
) -> (Polynomial, Vec<(usize, Polynomial)>) {
    let table = p.table().clone();
    let mut free = Vec::new();
    let mut per_mult: Vec<Vec<(crate::monomial::Monomial, Rational)>> =
        vec![Vec::new(); multipliers.len()];
    'term: for (m, c) in p.terms() {
        for (a, u) in multipliers.iter().enumerate() {
            match m.exponent(*u) {
                0 => {}
                1 => {
                    let rest = m
                        .checked_div(&crate::monomial::Monomial::var(*u))
                        .expect("exponent checked");
                    assert!(
                        multipliers.iter().all(|w| rest.exponent(*w) == 0),
                        "consistency bracket is not linear in the multipliers"
                    );
                    per_mult[a].push((rest, c.clone()));
                    continue 'term;
                }
                _ => panic!("consistency bracket is not linear in the multipliers"),
            }
        }
        free.push((m.clone(), c.clone()));
    }
    let u_free = Polynomial::from_terms(&table, free);
    let parts = per_mult
        .into_iter()
        .enumerate()
        .filter(|(_, terms)| !terms.is_empty())
        .map(|(a, terms)| (a + 1, Polynomial::from_terms(&table, terms)))
        .collect();
    (u_free, parts)
}

/// The antisymmetric matrix of constraint brackets, evaluated on the
/// constraint manifold, together with its generic rank.
#[derive(Debug, Clone)]
pub struct BracketMatrix {
    pub entries: Vec<Vec<Polynomial>>,
    pub rank: usize,
}

/// Builds the bracket matrix `M[a][b] = NF({phi_a, phi_b})` and computes its
/// rank modulo the ideal. Returns any rank-related warnings alongside.
pub fn bracket_matrix(
    constraints: &[Constraint],
    g: &GroebnerBasis,
) -> (BracketMatrix, Vec<String>) {
    let k = constraints.len();
    let mut warnings = Vec::new();
    if k == 0 {
        return (
            BracketMatrix {
                entries: Vec::new(),
                rank: 0,
            },
            warnings,
        );
    }
    let table = constraints[0].poly.table().clone();
    let zero = Polynomial::zero(&table);
    let mut entries = vec![vec![zero; k]; k];
    for a in 0..k {
        for b in (a + 1)..k {
            let e = g.normal_form(&poisson_bracket(
                &constraints[a].poly,
                &constraints[b].poly,
            ));
            entries[b][a] = -&e;
            entries[a][b] = e;
        }
    }
    let ech = echelonize(&entries, g);
    let rank = ech.pivot_cols.len();
    if ech.nonconstant_pivot {
        warnings.push(
            "rank computation used a non-constant pivot: the reported rank is the \
             generic rank and may differ on components of a reducible constraint variety"
                .to_owned(),
        );
    }
    if rank % 2 != 0 {
        warnings.push(format!(
            "bracket matrix has odd rank {rank}; for a skew-symmetric matrix this \
             signals a degenerate constraint variety"
        ));
    }
    (BracketMatrix { entries, rank }, warnings)
}

struct Echelon {
    rows: Vec<Vec<Polynomial>>,
    pivot_cols: Vec<usize>,
    nonconstant_pivot: bool,
}

/// Fraction-free forward elimination over the quotient ring: every product
/// and difference is replaced by its normal form, and a pivot is admissible
/// exactly when its normal form is nonzero.
fn echelonize(m: &[Vec<Polynomial>], g: &GroebnerBasis) -> Echelon {
    let mut rows: Vec<Vec<Polynomial>> = m
        .iter()
        .map(|row| row.iter().map(|e| g.normal_form(e)).collect())
        .collect();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut nonconstant_pivot = false;
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot = rows[r][col].clone();
        if pivot.as_constant().is_none() {
            nonconstant_pivot = true;
        }
        for i in (r + 1)..nrows {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in 0..ncols {
                let val = &(&pivot * &rows[i][c]) - &(&factor * &rows[r][c]);
                rows[i][c] = g.normal_form(&val);
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    Echelon {
        rows,
        pivot_cols,
        nonconstant_pivot,
    }
}

/// Generic rank of a polynomial matrix over the quotient ring `Q[p,q]/<G>`.
pub fn rank_mod_ideal(m: &[Vec<Polynomial>], g: &GroebnerBasis) -> usize {
    echelonize(m, g).pivot_cols.len()
}

/// Basis of the kernel of `m` over the quotient ring, fraction-free.
///
/// Each vector has polynomial entries with denominators cleared, integer
/// content removed, and the sign fixed so the first nonzero entry has a
/// positive leading coefficient.
pub fn nullspace_mod_ideal(m: &[Vec<Polynomial>], g: &GroebnerBasis) -> Vec<Vec<Polynomial>> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    if ncols == 0 {
        return Vec::new();
    }
    let table = m[0][0].table().clone();
    let ech = echelonize(m, g);
    let pivots: BTreeSet<usize> = ech.pivot_cols.iter().copied().collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Polynomial::zero(&table); ncols];
        v[free] = Polynomial::one(&table);
        for (ri, &pc) in ech.pivot_cols.iter().enumerate().rev() {
            let mut s = Polynomial::zero(&table);
            for c in 0..ncols {
                if c != pc && !v[c].is_zero() && !ech.rows[ri][c].is_zero() {
                    s = &s + &(&ech.rows[ri][c] * &v[c]);
                }
            }
            s = g.normal_form(&s);
            if s.is_zero() {
                continue;
            }
            let pivot = ech.rows[ri][pc].clone();
            for c in 0..ncols {
                if c != pc && !v[c].is_zero() {
                    v[c] = g.normal_form(&(&pivot * &v[c]));
                }
            }
            v[pc] = g.normal_form(&(-&s));
        }
        normalize_vector(&mut v, g.order());
        debug_assert!(
            (0..nrows).all(|a| {
                let mut acc = Polynomial::zero(&table);
                for (b, vb) in v.iter().enumerate() {
                    acc = &acc + &(&m[a][b] * vb);
                }
                g.normal_form(&acc).is_zero()
            }),
            "kernel vector fails verification against the original matrix"
        );
        out.push(v);
    }
    out
}

/// Clears denominators, removes integer content, and fixes the overall sign.
fn normalize_vector(v: &mut [Polynomial], ord: &MonomialOrder) {
    use num::BigInt;
    let mut denom_lcm = BigInt::one();
    for p in v.iter() {
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    let scale = Rational::from_integer(denom_lcm);
    for p in v.iter_mut() {
        *p = p.scalar_mul(&scale);
    }
    let mut content = BigInt::zero();
    for p in v.iter() {
        for (_, c) in p.terms() {
            debug_assert!(c.is_integer());
            content = content.gcd(c.numer());
        }
    }
    if !content.is_zero() && !content.is_one() {
        let inv = Rational::from_integer(content).recip();
        for p in v.iter_mut() {
            *p = p.scalar_mul(&inv);
        }
    }
    if let Some(first) = v.iter().position(|p| !p.is_zero()) {
        let (_, lc) = v[first].leading_term(ord).expect("nonzero");
        if lc.is_negative() {
            for p in v.iter_mut() {
                *p = -&*p;
            }
        }
    }
}

/// Splits the complete set into first- and second-class combinations.
///
/// With `r = rank(M)` and `k` constraints: kernel vectors of `M` give the
/// `k - r` first-class combinations; a kernel basis of the matrix made of
/// those vectors gives the `r` second-class combinations. Degenerate edge
/// cases short-circuit: full rank means everything is second class, rank
/// zero means everything is first class.
pub fn separate(
    constraints: &[Constraint],
    matrix: &BracketMatrix,
    g: &GroebnerBasis,
) -> (Vec<Constraint>, Vec<Constraint>) {
    let k = constraints.len();
    let r = matrix.rank;
    if r == 0 {
        let first = constraints
            .iter()
            .map(|c| Constraint {
                class: ConstraintClass::First,
                ..c.clone()
            })
            .collect();
        return (first, Vec::new());
    }
    if r == k {
        let second = constraints
            .iter()
            .map(|c| Constraint {
                class: ConstraintClass::Second,
                ..c.clone()
            })
            .collect();
        return (Vec::new(), second);
    }
    let kernel = nullspace_mod_ideal(&matrix.entries, g);
    let first: Vec<Constraint> = kernel
        .iter()
        .filter_map(|coeffs| combine(constraints, coeffs, ConstraintClass::First, g.order()))
        .collect();
    let cokernel = nullspace_mod_ideal(&kernel, g);
    let second: Vec<Constraint> = cokernel
        .iter()
        .filter_map(|coeffs| combine(constraints, coeffs, ConstraintClass::Second, g.order()))
        .collect();
    (first, second)
}

fn combine(
    constraints: &[Constraint],
    coeffs: &[Polynomial],
    class: ConstraintClass,
    ord: &MonomialOrder,
) -> Option<Constraint> {
    let table = constraints[0].poly.table();
    let mut poly = Polynomial::zero(table);
    for (c, phi) in coeffs.iter().zip(constraints) {
        poly = &poly + &(c * &phi.poly);
    }
    let (_, lc) = poly.leading_term(ord)?;
    let inv = lc.recip();
    Some(Constraint {
        poly: poly.scalar_mul(&inv),
        origin: ConstraintOrigin::Combination {
            coefficients: coeffs.iter().map(|c| c.scalar_mul(&inv)).collect(),
        },
        class,
    })
}

/// Deterministic work counters plus wall-clock time. Only the counters
/// appear in rendered reports; the elapsed time is for callers.
#[derive(Debug, Clone)]
pub struct AnalysisStats {
    pub completion_passes: usize,
    pub groebner_runs: usize,
    pub constraints_added: usize,
    pub elapsed: Duration,
}

/// Options for the full pipeline.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Base order inside the blocks of the elimination order.
    pub base_order: BaseOrder,
    pub radical_check: bool,
    pub max_passes: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            base_order: BaseOrder::DegRevLex,
            radical_check: false,
            max_passes: None,
        }
    }
}

/// Everything the analysis produces.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub status: AnalysisStatus,
    pub canonical_hamiltonian: Polynomial,
    /// `None` for regular systems.
    pub total_hamiltonian: Option<Polynomial>,
    pub primary: Vec<Constraint>,
    pub complete: Vec<Constraint>,
    pub first_class: Vec<Constraint>,
    pub second_class: Vec<Constraint>,
    pub bracket_matrix: Option<BracketMatrix>,
    pub multiplier_conditions: Vec<MultiplierCondition>,
    pub equations_of_motion: Vec<(VarId, Polynomial)>,
    pub warnings: Vec<String>,
    /// Reduced basis of the final constraint ideal; `{1}` when inconsistent.
    pub basis: GroebnerBasis,
    pub stats: AnalysisStats,
}

impl AnalysisReport {
    /// The table every reported polynomial lives over (the extended one when
    /// multipliers exist).
    pub fn table(&self) -> &Arc<VariableTable> {
        self.total_hamiltonian
            .as_ref()
            .map(|p| p.table())
            .unwrap_or_else(|| self.canonical_hamiltonian.table())
    }
}

/// Full pipeline: Legendre transform, completion, classification, equations
/// of motion.
pub fn analyze(
    sys: &LagrangianSystem,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let start = Instant::now();
    let ord = MonomialOrder::velocity_elimination(opts.base_order);
    let ham = canonical_hamiltonian(sys, &ord)?;
    let completion = complete_constraints(
        &ham,
        &CompletionOptions {
            radical_check: opts.radical_check,
            max_passes: opts.max_passes,
        },
    )?;
    let mut warnings = completion.warnings.clone();
    // momenta relations + primary ideal + completion recomputations
    let groebner_runs = 2 + completion.groebner_runs;

    let (complete, first_class, second_class, matrix) = match completion.status {
        AnalysisStatus::Regular => (Vec::new(), Vec::new(), Vec::new(), None),
        AnalysisStatus::Inconsistent => (completion.constraints.clone(), Vec::new(), Vec::new(), None),
        AnalysisStatus::Consistent => {
            let (matrix, rank_warnings) =
                bracket_matrix(&completion.constraints, &completion.basis);
            warnings.extend(rank_warnings);
            let tagged: Vec<Constraint> = completion
                .constraints
                .iter()
                .enumerate()
                .map(|(a, c)| Constraint {
                    class: if matrix.entries[a].iter().all(Polynomial::is_zero) {
                        ConstraintClass::First
                    } else {
                        ConstraintClass::Second
                    },
                    ..c.clone()
                })
                .collect();
            let (first, second) = separate(&tagged, &matrix, &completion.basis);
            let k = tagged.len();
            if first.len() != k - matrix.rank || second.len() != matrix.rank {
                warnings.push(format!(
                    "class counts deviate from the rank law: got {} first / {} second \
                     for rank {} of {}",
                    first.len(),
                    second.len(),
                    matrix.rank,
                    k
                ));
            }
            warn_on_underdetermined_multipliers(&completion, &mut warnings);
            (tagged, first, second, Some(matrix))
        }
    };

    let primary: Vec<Constraint> = complete
        .iter()
        .filter(|c| matches!(c.origin, ConstraintOrigin::Primary { .. }))
        .cloned()
        .collect();
    let motion_source = completion
        .total_hamiltonian
        .clone()
        .unwrap_or_else(|| ham.canonical_hamiltonian().clone());

    Ok(AnalysisReport {
        status: completion.status,
        canonical_hamiltonian: ham.canonical_hamiltonian().clone(),
        total_hamiltonian: completion.total_hamiltonian.clone(),
        primary,
        complete,
        first_class,
        second_class,
        bracket_matrix: matrix,
        multiplier_conditions: completion.conditions,
        equations_of_motion: equations_of_motion(&motion_source),
        warnings,
        basis: completion.basis,
        stats: AnalysisStats {
            completion_passes: completion.passes,
            groebner_runs,
            constraints_added: completion.trace.len(),
            elapsed: start.elapsed(),
        },
    })
}

/// Flags a singular multiplier-condition system: when the stacked coefficient
/// matrix of the recorded conditions has rank below the number of
/// multipliers, some multiplier combinations stay undetermined, and a full
/// Dirac treatment could in principle extract further constraints there.
fn warn_on_underdetermined_multipliers(completion: &CompletionOutcome, warnings: &mut Vec<String>) {
    if completion.conditions.is_empty() || completion.multipliers.is_empty() {
        return;
    }
    let table = completion
        .total_hamiltonian
        .as_ref()
        .expect("constrained system")
        .table();
    let m = completion.multipliers.len();
    let rows: Vec<Vec<Polynomial>> = completion
        .conditions
        .iter()
        .map(|cond| {
            let mut row = vec![Polynomial::zero(table); m];
            for (alpha, coeff) in &cond.coefficients {
                row[alpha - 1] = coeff.clone();
            }
            row
        })
        .collect();
    let rank = rank_mod_ideal(&rows, &completion.basis);
    if rank < m {
        warnings.push(format!(
            "multiplier conditions determine only {rank} of {m} multipliers; \
             undetermined combinations are gauge freedom or, on a singular \
             condition matrix, possible further constraints that this analysis \
             does not extract"
        ));
    }
}
