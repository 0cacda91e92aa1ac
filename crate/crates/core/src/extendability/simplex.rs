//! Exact Phase-I simplex with row generation.
//!
//! Each active constraint `a_k·v >= b_k` becomes a row
//! `a_k·v − s_k (+ t_k) = b_k` with slack `s_k >= 0`; rows violated at the
//! current point get an artificial `t_k >= 0` of cost 1. The variables `v`
//! are free: they may enter in either direction and never leave the basis.
//! At a Phase-I optimum the reduced cost of slack `s_k` is the dual price
//! `y_k >= 0` of row `k`. Free columns price to zero, so `Σ y_k a_k = 0`,
//! and a positive optimum equals `Σ y_k b_k`. Those prices are the Farkas
//! multipliers.
//!
//! Rows enter lazily. After each zero optimum the rows violated by the
//! current point (untouched variables read as 0) are appended, expressed
//! in the current basis, and optimisation resumes.
//!
//! Pricing is Dantzig's largest-coefficient rule. After a run of
//! degenerate pivots it falls back to Bland's smallest-index rule until the
//! objective moves again, so the method cannot cycle.

use super::system::ConstraintSystem;
use crate::scalar::Field;

pub(crate) enum Outcome<T> {
    /// Multipliers indexed by constraint.
    Farkas(Vec<(usize, T)>),
    /// One value per system variable.
    Witness(Vec<T>),
}

const DEGENERATE_LIMIT: usize = 50;
const BATCH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Free(usize),
    /// Slack of the row holding constraint `.0`.
    Slack(usize),
    Artificial,
}

/// Sorted `(column, coefficient)` pairs without explicit zeros.
type Row<T> = Vec<(usize, T)>;

fn coefficient<T: Field>(row: &Row<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `row − factor·other`
fn subtract_scaled<T: Field>(row: &Row<T>, factor: &T, other: &Row<T>) -> Row<T> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        if j == other.len() || (i < row.len() && row[i].0 < other[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || other[j].0 < row[i].0 {
            out.push((other[j].0, -(factor.clone() * other[j].1.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - factor.clone() * other[j].1.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Tableau<T> {
    rows: Vec<Row<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    columns: Vec<Column>,
    basic_row: Vec<Option<usize>>,
    /// Artificials that have left the basis never return.
    retired: Vec<bool>,
    reduced: Vec<T>,
    objective: T,
    free_of: Vec<Option<usize>>,
}

impl<T: Field> Tableau<T> {
    fn new(var_count: usize) -> Self {
        Tableau {
            rows: Vec::new(),
            rhs: Vec::new(),
            basis: Vec::new(),
            columns: Vec::new(),
            basic_row: Vec::new(),
            retired: Vec::new(),
            reduced: Vec::new(),
            objective: T::zero(),
            free_of: vec![None; var_count],
        }
    }

    fn push_column(&mut self, kind: Column) -> usize {
        self.columns.push(kind);
        self.basic_row.push(None);
        self.retired.push(false);
        self.reduced.push(T::zero());
        self.columns.len() - 1
    }

    fn free_column(&mut self, var: usize) -> usize {
        match self.free_of[var] {
            Some(c) => c,
            None => {
                let c = self.push_column(Column::Free(var));
                self.free_of[var] = Some(c);
                c
            }
        }
    }

    /// Current value of system variable `var`.
    fn value(&self, var: usize) -> T {
        self.free_of[var]
            .and_then(|c| self.basic_row[c])
            .map_or_else(T::zero, |r| self.rhs[r].clone())
    }

    /// Appends constraint `k` as a row over the nonbasic columns.
    fn add_row(&mut self, k: usize, terms: &[(usize, T)], b: &T) {
        let slack = self.push_column(Column::Slack(k));
        let mut row: Row<T> = vec![(slack, -T::one())];
        let mut rhs = b.clone();
        for (var, a) in terms {
            let col = self.free_column(*var);
            row = subtract_scaled(&row, &-a.clone(), &vec![(col, T::one())]);
            if let Some(r) = self.basic_row[col] {
                row = subtract_scaled(&row, a, &self.rows[r]);
                rhs = rhs - a.clone() * self.rhs[r].clone();
            }
        }
        let r = self.rows.len();
        if rhs.is_positive() {
            let art = self.push_column(Column::Artificial);
            for (c, v) in &row {
                self.reduced[*c] = self.reduced[*c].clone() - v.clone();
            }
            self.objective = self.objective.clone() + rhs.clone();
            row.push((art, T::one()));
            self.basis.push(art);
            self.basic_row[art] = Some(r);
        } else {
            row = row.into_iter().map(|(c, v)| (c, -v)).collect();
            rhs = -rhs;
            self.basis.push(slack);
            self.basic_row[slack] = Some(r);
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn eligible(&self, c: usize) -> bool {
        if self.basic_row[c].is_some() || self.retired[c] {
            return false;
        }
        match self.columns[c] {
            Column::Free(_) => !self.reduced[c].is_zero(),
            _ => self.reduced[c].is_negative(),
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let alpha = coefficient(&self.rows[pr], pc).expect("pivot entry is nonzero").clone();
        let inv = T::one() / alpha;
        let pivot_row: Row<T> = self.rows[pr]
            .iter()
            .map(|(c, v)| (*c, v.clone() * inv.clone()))
            .collect();
        let pivot_rhs = self.rhs[pr].clone() * inv;
        for r in 0..self.rows.len() {
            if r == pr {
                continue;
            }
            if let Some(factor) = coefficient(&self.rows[r], pc).cloned() {
                self.rows[r] = subtract_scaled(&self.rows[r], &factor, &pivot_row);
                self.rhs[r] = self.rhs[r].clone() - factor * pivot_rhs.clone();
            }
        }
        let factor = self.reduced[pc].clone();
        if !factor.is_zero() {
            for (c, v) in &pivot_row {
                self.reduced[*c] = self.reduced[*c].clone() - factor.clone() * v.clone();
            }
            self.objective = self.objective.clone() + factor * pivot_rhs.clone();
        }
        let leaving = self.basis[pr];
        self.basic_row[leaving] = None;
        if self.columns[leaving] == Column::Artificial {
            self.retired[leaving] = true;
        }
        self.rows[pr] = pivot_row;
        self.rhs[pr] = pivot_rhs;
        self.basis[pr] = pc;
        self.basic_row[pc] = Some(pr);
    }

    fn optimise(&mut self) {
        let mut degenerate = 0;
        loop {
            let entering = if degenerate < DEGENERATE_LIMIT {
                let mut best: Option<(usize, T)> = None;
                for c in (0..self.columns.len()).filter(|&c| self.eligible(c)) {
                    let size = self.reduced[c].abs();
                    if best.as_ref().is_none_or(|(_, b)| size > *b) {
                        best = Some((c, size));
                    }
                }
                best.map(|(c, _)| c)
            } else {
                (0..self.columns.len()).find(|&c| self.eligible(c))
            };
            let Some(pc) = entering else {
                return;
            };
            // a negative reduced cost means the entering column increases
            let up = self.reduced[pc].is_negative();
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                if matches!(self.columns[self.basis[r]], Column::Free(_)) {
                    continue;
                }
                let Some(a) = coefficient(&self.rows[r], pc) else {
                    continue;
                };
                if a.is_positive() != up {
                    continue;
                }
                let ratio = self.rhs[r].clone() / a.abs();
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let (pr, ratio) = best.expect("phase one objective is bounded below");
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(pr, pc);
        }
    }

    fn farkas(&self) -> Vec<(usize, T)> {
        let mut out: Vec<(usize, T)> = self
            .columns
            .iter()
            .enumerate()
            .filter_map(|(c, kind)| match kind {
                Column::Slack(k) if !self.reduced[c].is_zero() => Some((*k, self.reduced[c].clone())),
                _ => None,
            })
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// `Σ terms >= rhs`
#[derive(Clone, Debug)]
pub(crate) struct LinearRow<T> {
    pub terms: Vec<(usize, T)>,
    pub rhs: T,
}

impl<T: Field> LinearRow<T> {
    fn slack(&self, values: &[T]) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (v, a)| acc + a.clone() * values[*v].clone())
            - self.rhs.clone()
    }
}

/// Decides `rows` over `var_count` free variables. Rows flagged in
/// `initial` start in the tableau; the rest enter when violated.
pub(crate) fn solve_rows<T: Field>(var_count: usize, rows: &[LinearRow<T>], initial: &[bool]) -> Outcome<T> {
    if let Some(k) = rows.iter().position(|r| r.terms.is_empty() && r.rhs.is_positive()) {
        return Outcome::Farkas(vec![(k, T::one())]);
    }
    let mut tableau = Tableau::<T>::new(var_count);
    let mut active = vec![false; rows.len()];
    for (k, row) in rows.iter().enumerate() {
        if initial[k] && !row.terms.is_empty() {
            active[k] = true;
            tableau.add_row(k, &row.terms, &row.rhs);
        }
    }

    loop {
        tableau.optimise();
        if tableau.objective.is_positive() {
            return Outcome::Farkas(tableau.farkas());
        }
        let values: Vec<T> = (0..var_count).map(|v| tableau.value(v)).collect();
        let mut violated: Vec<(T, usize)> = (0..rows.len())
            .filter(|&k| !active[k] && !rows[k].terms.is_empty())
            .map(|k| (rows[k].slack(&values), k))
            .filter(|(s, _)| s.is_negative())
            .collect();
        if violated.is_empty() {
            return Outcome::Witness(values);
        }
        violated.sort();
        for (_, k) in violated.into_iter().take(BATCH) {
            active[k] = true;
            tableau.add_row(k, &rows[k].terms, &rows[k].rhs);
        }
    }
}

/// Square systems seed the tableau with the squares having at least two
/// defined corners.
pub(crate) fn solve<T: Field>(sys: &ConstraintSystem<T>) -> Outcome<T> {
    let rows: Vec<LinearRow<T>> = sys
        .constraints()
        .iter()
        .map(|c| LinearRow {
            terms: c
                .terms
                .iter()
                .map(|&(v, sign)| (v, if sign > 0 { T::one() } else { -T::one() }))
                .collect(),
            rhs: c.rhs.clone(),
        })
        .collect();
    let initial: Vec<bool> = sys.constraints().iter().map(|c| c.terms.len() <= 2).collect();
    solve_rows(sys.variables().len(), &rows, &initial)
}
