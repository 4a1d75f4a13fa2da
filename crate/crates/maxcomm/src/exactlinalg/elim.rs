//! Incremental fraction-free echelon engine over the integers.
//!
//! Rows enter one at a time, are cleared of denominators, reduced against
//! the pivot rows collected so far, and kept when independent. Every stored
//! row is normalized to content gcd 1 with a positive leading coefficient,
//! which keeps coefficient growth under control on the large centralizer
//! systems (tens of thousands of equations over ~800 unknowns) without ever
//! leaving exact arithmetic.
//!
//! Rows are stored sparsely: the equations arising from commutator systems
//! have a handful of nonzero coefficients each, and fill-in during
//! elimination stays moderate in practice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A sparse integer row: column indices (strictly increasing) paired with
/// nonzero coefficients.
#[derive(Clone, Debug)]
pub(crate) struct SparseRow {
    cols: Vec<u32>,
    vals: Vec<BigInt>,
}

impl SparseRow {
    /// Builds a row from possibly unsorted, possibly duplicated rational
    /// entries. Duplicate column indices are summed, denominators are
    /// cleared by the common multiple, and zeros are dropped.
    pub fn from_rational_entries(entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut items: Vec<(usize, Rational)> = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        items.sort_by_key(|(c, _)| *c);

        // Merge duplicates.
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(items.len());
        for (c, v) in items {
            match merged.last_mut() {
                Some((mc, mv)) if *mc == c => *mv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());

        // Clear denominators by their lcm.
        let mut lcm = BigInt::one();
        for (_, v) in &merged {
            lcm = lcm.lcm(v.denom());
        }
        let mut cols = Vec::with_capacity(merged.len());
        let mut vals = Vec::with_capacity(merged.len());
        for (c, v) in &merged {
            cols.push(*c as u32);
            vals.push(v.numer() * (&lcm / v.denom()));
        }
        let mut row = SparseRow { cols, vals };
        row.normalize();
        row
    }

    /// Builds a row from integer entries, merging duplicates.
    #[cfg(test)]
    pub fn from_int_entries(entries: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut items: Vec<(usize, BigInt)> = entries
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        items.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(items.len());
        for (c, v) in items {
            match merged.last_mut() {
                Some((mc, mv)) if *mc == c => *mv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let cols = merged.iter().map(|(c, _)| *c as u32).collect();
        let vals = merged.into_iter().map(|(_, v)| v).collect();
        let mut row = SparseRow { cols, vals };
        row.normalize();
        row
    }

    fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    fn lead_col(&self) -> u32 {
        self.cols[0]
    }

    fn lead_val(&self) -> &BigInt {
        &self.vals[0]
    }

    /// Divides by the content gcd and flips signs so the leading
    /// coefficient is positive.
    fn normalize(&mut self) {
        if self.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for v in &self.vals {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        let negate = self.vals[0].is_negative();
        if g.is_one() && !negate {
            return;
        }
        for v in &mut self.vals {
            let mut q = &*v / &g;
            if negate {
                q = -q;
            }
            *v = q;
        }
    }
}

/// `a * row - b * pivot`, with `a = pivot.lead / g`, `b = row.lead / g`,
/// `g = gcd(leads)`; the leading term cancels exactly. Result is
/// gcd-normalized.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    debug_assert_eq!(row.lead_col(), pivot.lead_col());
    let g = row.lead_val().gcd(pivot.lead_val());
    let a = pivot.lead_val() / &g;
    let b = row.lead_val() / &g;

    let mut cols = Vec::with_capacity(row.cols.len() + pivot.cols.len());
    let mut vals = Vec::with_capacity(cols.capacity());
    let (mut i, mut j) = (1, 1); // leading entries cancel, skip them
    while i < row.cols.len() || j < pivot.cols.len() {
        let rc = row.cols.get(i).copied().unwrap_or(u32::MAX);
        let pc = pivot.cols.get(j).copied().unwrap_or(u32::MAX);
        let (c, v) = if rc < pc {
            let v = &a * &row.vals[i];
            i += 1;
            (rc, v)
        } else if pc < rc {
            let v = -(&b * &pivot.vals[j]);
            j += 1;
            (pc, v)
        } else {
            let v = &a * &row.vals[i] - &b * &pivot.vals[j];
            i += 1;
            j += 1;
            (rc, v)
        };
        if !v.is_zero() {
            cols.push(c);
            vals.push(v);
        }
    }
    let mut out = SparseRow { cols, vals };
    out.normalize();
    out
}

const NO_PIVOT: u32 = u32::MAX;

/// Incremental row-echelon form of a growing system of linear equations.
pub(crate) struct Echelon {
    width: usize,
    /// Column index -> position in `rows`, or `NO_PIVOT`.
    pivot_of_col: Vec<u32>,
    rows: Vec<SparseRow>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            pivot_of_col: vec![NO_PIVOT; width],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current pivots; stores it and returns
    /// `true` when it is independent of everything seen so far.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            if row.is_empty() {
                return false;
            }
            let lead = row.lead_col();
            debug_assert!((lead as usize) < self.width);
            let p = self.pivot_of_col[lead as usize];
            if p == NO_PIVOT {
                self.pivot_of_col[lead as usize] = self.rows.len() as u32;
                self.rows.push(row);
                return true;
            }
            row = eliminate(&row, &self.rows[p as usize]);
        }
    }

    pub fn insert_rational(
        &mut self,
        entries: impl IntoIterator<Item = (usize, Rational)>,
    ) -> bool {
        self.insert(SparseRow::from_rational_entries(entries))
    }

    /// Columns with no pivot, in ascending order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|&c| self.pivot_of_col[c] == NO_PIVOT)
            .collect()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Solves the homogeneous system with the given free coordinates fixed
    /// (all other free coordinates are zero) and every pivot coordinate
    /// determined by back-substitution. The assignment must only name
    /// pivot-free columns.
    pub fn back_solve(&self, fixed: &[(usize, Rational)]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.width];
        for (c, val) in fixed {
            debug_assert!(!self.has_pivot(*c), "assigned column {c} has a pivot");
            v[*c] = val.clone();
        }
        // Pivot rows in decreasing lead-column order: every coefficient to
        // the right of a lead is already final when its row is processed.
        let mut order: Vec<&SparseRow> = self.rows.iter().collect();
        order.sort_by_key(|r| std::cmp::Reverse(r.lead_col()));
        for row in order {
            let lead = row.lead_col() as usize;
            let mut acc = Rational::zero();
            for (c, coef) in row.cols.iter().zip(&row.vals).skip(1) {
                let x = &v[*c as usize];
                if !x.is_zero() {
                    acc += x * Rational::from(coef.clone());
                }
            }
            v[lead] = if acc.is_zero() {
                Rational::zero()
            } else {
                -acc / Rational::from(row.lead_val().clone())
            };
        }
        v
    }

    /// Canonical kernel basis: one vector per free column in ascending
    /// order, with that coordinate set to one and the other free
    /// coordinates to zero. This is exactly the reduced-echelon
    /// parameterization of the nullspace.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| self.back_solve(&[(f, Rational::one())]))
            .collect()
    }

    /// Treats the last column as the right-hand side of `A x = b` and
    /// returns the canonical particular solution (free coordinates zero),
    /// or `None` when the system is inconsistent.
    pub fn solve_augmented(&self) -> Option<Vec<Rational>> {
        let b_col = self.width - 1;
        if self.has_pivot(b_col) {
            return None;
        }
        let mut v = self.back_solve(&[(b_col, -Rational::one())]);
        v.truncate(b_col);
        Some(v)
    }
}
