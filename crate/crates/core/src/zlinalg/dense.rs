//! Dense exact matrices, Smith normal form with transformations, and
//! adapted bases. Entries are big integers; these paths serve the public
//! API and small reference computations, while the streaming sparse code
//! carries the large bar-complex reductions.

use num::bigint::BigInt;

use thiserror::Error;

use super::entry::Ent;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZlinalgError {
    #[error("generators do not lie in the row span of the ambient basis")]
    NotSubmodule,
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::from(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::from(1);
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn matmul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if num::Zero::is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| {
            (0..self.cols).all(|c| r == c || num::Zero::is_zero(self.at(r, c)))
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row_a += q * row_b`
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let add = q * self.at(b, c);
            *self.at_mut(a, c) += add;
        }
    }

    /// `col_a += q * col_b`
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        for r in 0..self.rows {
            let add = q * self.at(r, b);
            *self.at_mut(r, a) += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith normal form.
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn divisors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d.at(i, i).clone())
            .filter(|v| !num::Zero::is_zero(v))
            .collect()
    }
}

/// Smith normal form with both transformations.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);

    for t in 0..steps {
        // pivot: entry of least magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if num::Zero::is_zero(d.at(i, j)) {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if num::Signed::abs(d.at(i, j)) < num::Signed::abs(d.at(*bi, *bj)) {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'clear: loop {
            // clear the column below and above
            for i in 0..m.rows {
                if i == t || num::Zero::is_zero(d.at(i, t)) {
                    continue;
                }
                let (q, r) = Ent::div_rem_euclid(d.at(i, t), d.at(t, t));
                let nq = -q;
                d.row_axpy(i, t, &nq);
                u.row_axpy(i, t, &nq);
                if !num::Zero::is_zero(&r) {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    continue 'clear;
                }
            }
            // clear the row
            for j in 0..m.cols {
                if j == t || num::Zero::is_zero(d.at(t, j)) {
                    continue;
                }
                let (q, r) = Ent::div_rem_euclid(d.at(t, j), d.at(t, t));
                let nq = -q;
                d.col_axpy(j, t, &nq);
                v.col_axpy(j, t, &nq);
                if !num::Zero::is_zero(&r) {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    continue 'clear;
                }
            }
            // confirm both are clean (row ops may have refilled the row)
            let col_clean = (0..m.rows).all(|i| i == t || num::Zero::is_zero(d.at(i, t)));
            let row_clean = (0..m.cols).all(|j| j == t || num::Zero::is_zero(d.at(t, j)));
            if col_clean && row_clean {
                break;
            }
        }
    }

    // positive diagonal
    for t in 0..steps {
        if num::Signed::is_negative(d.at(t, t)) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    // divisibility chain
    loop {
        let mut changed = false;
        for i in 0..steps {
            for j in (i + 1)..steps {
                let a = d.at(i, i).clone();
                let b = d.at(j, j).clone();
                if num::Zero::is_zero(&a) {
                    // push zeros to the end by swapping
                    if !num::Zero::is_zero(&b) {
                        d.swap_rows(i, j);
                        u.swap_rows(i, j);
                        d.swap_cols(i, j);
                        v.swap_cols(i, j);
                        changed = true;
                    }
                    continue;
                }
                if num::Zero::is_zero(&(&b % &a)) {
                    continue;
                }
                // fold b into position i: col_i += col_j, then re-clear
                d.col_axpy(i, j, &BigInt::from(1));
                v.col_axpy(i, j, &BigInt::from(1));
                'rc: loop {
                    for r in 0..m.rows {
                        if r == i || num::Zero::is_zero(d.at(r, i)) {
                            continue;
                        }
                        let (q, rem) = Ent::div_rem_euclid(d.at(r, i), d.at(i, i));
                        let nq = -q;
                        d.row_axpy(r, i, &nq);
                        u.row_axpy(r, i, &nq);
                        if !num::Zero::is_zero(&rem) {
                            d.swap_rows(i, r);
                            u.swap_rows(i, r);
                            continue 'rc;
                        }
                    }
                    for c in 0..m.cols {
                        if c == i || num::Zero::is_zero(d.at(i, c)) {
                            continue;
                        }
                        let (q, rem) = Ent::div_rem_euclid(d.at(i, c), d.at(i, i));
                        let nq = -q;
                        d.col_axpy(c, i, &nq);
                        v.col_axpy(c, i, &nq);
                        if !num::Zero::is_zero(&rem) {
                            d.swap_cols(i, c);
                            v.swap_cols(i, c);
                            continue 'rc;
                        }
                    }
                    let col_clean = (0..m.rows).all(|r| r == i || num::Zero::is_zero(d.at(r, i)));
                    let row_clean = (0..m.cols).all(|c| c == i || num::Zero::is_zero(d.at(i, c)));
                    if col_clean && row_clean {
                        break;
                    }
                }
                if num::Signed::is_negative(d.at(i, i)) {
                    d.negate_row(i);
                    u.negate_row(i);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for t in 0..steps {
        if num::Signed::is_negative(d.at(t, t)) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfResult { u, d, v }
}

/// Invariant factors of an integer matrix given as `i64` rows (test helper
/// and oracle hook).
pub fn snf_divisors_i64(rows: &[Vec<i64>]) -> Vec<i128> {
    let m = IntMatrix::from_rows_i64(rows);
    smith_normal_form(&m)
        .divisors()
        .into_iter()
        .map(|d| i128::try_from(d).expect("divisor fits i128"))
        .collect()
}

/// Basis of a free module adapted to a submodule.
#[derive(Debug)]
pub struct AdaptedBasis {
    /// Rows: adapted basis of `F` in the ambient coordinates.
    pub new_basis: IntMatrix,
    /// `s_1 | s_2 | ... | s_l`; `{s_i · b_i}` is a basis of `S`.
    pub factors: Vec<BigInt>,
    /// Unimodular `C` with `new_basis = C · f_basis`.
    pub change: IntMatrix,
}

/// Adapted basis of the row module of `f_basis` with respect to the
/// submodule generated by the rows of `s_generators`.
///
/// `f_basis` rows must be independent; `s_generators` rows must lie in their
/// integral row span.
pub fn adapted_basis(
    f_basis: &IntMatrix,
    s_generators: &IntMatrix,
) -> Result<AdaptedBasis, ZlinalgError> {
    assert_eq!(f_basis.cols, s_generators.cols);
    let _ = f_basis.rows;
    // express generators in the F-coordinates: T with S = T * F
    let t = express_in_basis(f_basis, s_generators).ok_or(ZlinalgError::NotSubmodule)?;
    let snf = smith_normal_form(&t);
    // S = U⁻¹ D V⁻¹ F, so with Z' = V⁻¹ F the rows s_i·z'_i span S
    let v_inv = invert_unimodular(&snf.v);
    let new_basis = v_inv.matmul(f_basis);
    let factors = snf.divisors();
    Ok(AdaptedBasis {
        new_basis,
        factors,
        change: v_inv,
    })
}

/// Solves `X * basis = targets` over the integers, returning `X`.
pub fn express_in_basis(basis: &IntMatrix, targets: &IntMatrix) -> Option<IntMatrix> {
    use super::sparse::{row_axpy, SparseRow};
    // echelonize the basis rows, tracking the expression of each echelon row
    // in terms of the original rows
    let mut ech: Vec<(SparseRow<BigInt>, SparseRow<BigInt>)> = Vec::new();
    for r in 0..basis.rows {
        let mut row: SparseRow<BigInt> = (0..basis.cols)
            .filter(|&c| !num::Zero::is_zero(basis.at(r, c)))
            .map(|c| (c as u32, basis.at(r, c).clone()))
            .collect();
        let mut expr: SparseRow<BigInt> = vec![(r as u32, BigInt::from(1))];
        // reduce against existing echelon rows (gcd exchanges allowed)
        let mut i = 0;
        while !row.is_empty() && i < ech.len() {
            let (erow, eexpr) = &ech[i];
            if erow[0].0 == row[0].0 {
                let (g, x, y) = Ent::ext_gcd(&erow[0].1, &row[0].1).unwrap();
                let a = Ent::div_exact(&erow[0].1, &g);
                let b = Ent::div_exact(&row[0].1, &g);
                let new_erow = add_scaled(&scale(erow, &x), &scale(&row, &y));
                let new_eexpr = add_scaled(&scale(eexpr, &x), &scale(&expr, &y));
                let new_row = add_scaled(&scale(&row, &a), &scale(erow, &(-b.clone())));
                let new_expr = add_scaled(&scale(&expr, &a), &scale(eexpr, &(-b)));
                ech[i] = (new_erow, new_eexpr);
                row = new_row;
                expr = new_expr;
            } else if erow[0].0 < row[0].0 {
                i += 1;
            } else {
                break;
            }
        }
        if !row.is_empty() {
            ech.insert(i, (row, expr));
        }
    }
    // solve each target against the echelon
    let mut out = IntMatrix::zero(targets.rows, basis.rows);
    for tr in 0..targets.rows {
        let mut rem: SparseRow<BigInt> = (0..targets.cols)
            .filter(|&c| !num::Zero::is_zero(targets.at(tr, c)))
            .map(|c| (c as u32, targets.at(tr, c).clone()))
            .collect();
        let mut coeff: SparseRow<BigInt> = Vec::new();
        while let Some((lead, val)) = rem.first().map(|(c, v)| (*c, v.clone())) {
            let Some((erow, eexpr)) = ech.iter().find(|(e, _)| e[0].0 == lead) else {
                return None;
            };
            if !num::Zero::is_zero(&(&val % &erow[0].1)) {
                return None;
            }
            let q = -Ent::div_exact(&val, &erow[0].1);
            rem = row_axpy(&rem, erow, &q).unwrap();
            coeff = row_axpy(&coeff, eexpr, &q).unwrap();
        }
        for (c, v) in coeff {
            *out.at_mut(tr, c as usize) = -v;
        }
    }
    Some(out)
}

fn scale(row: &super::sparse::SparseRow<BigInt>, c: &BigInt) -> super::sparse::SparseRow<BigInt> {
    if num::Zero::is_zero(c) {
        return Vec::new();
    }
    row.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn add_scaled(
    a: &super::sparse::SparseRow<BigInt>,
    b: &super::sparse::SparseRow<BigInt>,
) -> super::sparse::SparseRow<BigInt> {
    super::sparse::row_axpy(a, b, &BigInt::from(1)).unwrap()
}

/// Inverse of a unimodular matrix via its Smith form (D = I).
pub fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows, m.cols);
    let snf = smith_normal_form(m);
    assert!(
        snf.d == IntMatrix::identity(m.rows),
        "matrix is not unimodular"
    );
    // U M V = I  =>  M⁻¹ = V U
    snf.v.matmul(&snf.u)
}
