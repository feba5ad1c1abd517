//! Sparse integer rows and incremental lattice reduction.
//!
//! Rows are column-sorted `(col, value)` pairs without explicit zeros.  The
//! `Echelon` accumulator ingests a stream of rows and maintains a row basis
//! of the generated lattice in echelon form, pivoting on leading columns;
//! appending witness coordinates past `ncols` turns the same reduction into
//! a kernel computation.

use super::entry::{Ent, Overflow};

pub type SparseRow<E> = Vec<(u32, E)>;

pub fn row_from_dense<E: Ent>(dense: &[i64]) -> SparseRow<E> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i as u32, E::from_i64(v)))
        .collect()
}

pub fn row_to_dense<E: Ent>(row: &SparseRow<E>, cols: usize) -> Vec<E> {
    let mut out = vec![E::zero(); cols];
    for (c, v) in row {
        out[*c as usize] = v.clone();
    }
    out
}

/// `dst += c * src`, merging sorted supports.
pub fn row_axpy<E: Ent>(dst: &SparseRow<E>, src: &SparseRow<E>, c: &E) -> Result<SparseRow<E>, Overflow> {
    if c.is_zero() {
        return Ok(dst.clone());
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            let v = c.mul(&src[j].1)?;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = dst[i].1.add(&c.mul(&src[j].1)?)?;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// `a*x + b*y` for rows `x`, `y`.
pub fn row_combine<E: Ent>(
    a: &E,
    x: &SparseRow<E>,
    b: &E,
    y: &SparseRow<E>,
) -> Result<SparseRow<E>, Overflow> {
    let scaled: SparseRow<E> = x
        .iter()
        .map(|(c, v)| Ok((*c, a.mul(v)?)))
        .collect::<Result<_, Overflow>>()?;
    let scaled: SparseRow<E> = scaled.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    row_axpy(&scaled, y, b)
}

pub fn row_scale<E: Ent>(row: &mut SparseRow<E>, c: &E) -> Result<(), Overflow> {
    for (_, v) in row.iter_mut() {
        *v = v.mul(c)?;
    }
    Ok(())
}

pub fn row_neg<E: Ent>(row: &mut SparseRow<E>) {
    for (_, v) in row.iter_mut() {
        *v = v.neg();
    }
}

pub fn row_dot<E: Ent>(a: &SparseRow<E>, b: &SparseRow<E>) -> Result<E, Overflow> {
    let mut acc = E::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            i += 1;
        } else if b[j].0 < a[i].0 {
            j += 1;
        } else {
            acc = acc.add(&a[i].1.mul(&b[j].1)?)?;
            i += 1;
            j += 1;
        }
    }
    Ok(acc)
}

/// Incremental row-echelon accumulator over the integers.
///
/// Pivot rows are keyed by leading column. Inserting a row reduces it
/// against the pivots; a nonzero remnant becomes a new pivot (possibly after
/// unimodular gcd exchanges that replace an existing pivot).  Columns at
/// `watermark` and beyond never serve as pivots, so appending witness
/// coordinates there yields kernel vectors when the visible part dies.
pub struct Echelon<E: Ent> {
    watermark: u32,
    pivots: std::collections::BTreeMap<u32, SparseRow<E>>,
}

pub enum Inserted<E: Ent> {
    /// Row was independent (its remnant became a pivot at the given column).
    Pivot(u32),
    /// Row reduced to zero below the watermark; the remnant holds whatever
    /// lived at or past the watermark (empty when no witness was attached).
    Dependent(SparseRow<E>),
}

impl<E: Ent> Echelon<E> {
    pub fn new(watermark: usize) -> Self {
        Echelon {
            watermark: watermark as u32,
            pivots: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, mut row: SparseRow<E>) -> Result<Inserted<E>, Overflow> {
        loop {
            let Some((lead, lead_val)) = row.first().map(|(c, v)| (*c, v.clone())) else {
                return Ok(Inserted::Dependent(row));
            };
            if lead >= self.watermark {
                return Ok(Inserted::Dependent(row));
            }
            match self.pivots.get(&lead) {
                None => {
                    if row[0].1.is_negative() {
                        row_neg(&mut row);
                    }
                    self.pivots.insert(lead, row);
                    return Ok(Inserted::Pivot(lead));
                }
                Some(pivot) => {
                    let p = pivot[0].1.clone();
                    let (q, r) = lead_val.div_rem_euclid(&p);
                    if r.is_zero() {
                        row = row_axpy(&row, pivot, &q.neg())?;
                    } else {
                        // unimodular exchange: new pivot gcd(p, v), row continues
                        let (g, x, y) = p.ext_gcd(&lead_val)?;
                        let new_pivot = row_combine(&x, pivot, &y, &row)?;
                        let cont = row_combine(&p.div_exact(&g), &row, &lead_val.div_exact(&g).neg(), pivot)?;
                        debug_assert!(new_pivot[0].0 == lead && new_pivot[0].1 == g);
                        self.pivots.insert(lead, new_pivot);
                        row = cont;
                    }
                }
            }
        }
    }

    /// Echelon rows in leading-column order (not back-reduced).
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow<E>> {
        self.pivots.values()
    }

    /// Canonical Hermite normal form: pivots positive, entries above each
    /// pivot reduced into `[0, pivot)`.
    pub fn into_hnf(self) -> Vec<SparseRow<E>> {
        let cols: Vec<u32> = self.pivots.keys().copied().collect();
        let mut rows: Vec<SparseRow<E>> = self.pivots.into_values().collect();
        // reduce above pivots, walking pivots left to right and fixing all
        // earlier rows against each
        for pi in 0..cols.len() {
            let (head, tail) = rows.split_at_mut(pi);
            let pivot = &tail[0];
            let pcol = cols[pi];
            let pval = pivot[0].1.clone();
            for r in head.iter_mut() {
                if let Ok(idx) = r.binary_search_by_key(&pcol, |e| e.0) {
                    let (q, _) = r[idx].1.div_rem_euclid(&pval);
                    if !q.is_zero() {
                        *r = row_axpy(r, pivot, &q.neg()).expect("hnf reduction overflow");
                    }
                }
            }
        }
        rows
    }
}

/// Reduces a stream of rows to a row basis of the generated lattice in
/// canonical Hermite form.
pub fn hermite_basis<E: Ent, I: IntoIterator<Item = SparseRow<E>>>(
    cols: usize,
    rows: I,
) -> Result<Vec<SparseRow<E>>, Overflow> {
    let mut ech = Echelon::new(cols);
    for row in rows {
        ech.insert(row)?;
    }
    Ok(ech.into_hnf())
}

/// A basis of the left kernel lattice `{x : x·M = 0}` of the row-stacked
/// matrix whose rows are streamed in.  Returned rows are in echelon form by
/// *trailing* coordinate: vector `i` ends at the index of the row whose
/// reduction produced it.
pub fn kernel_basis<E: Ent>(
    ncols: usize,
    rows: impl Iterator<Item = SparseRow<E>>,
    nrows_hint: usize,
) -> Result<Vec<SparseRow<E>>, Overflow> {
    let mut ech = Echelon::new(ncols);
    let mut kernel = Vec::with_capacity(nrows_hint.saturating_sub(ncols));
    let watermark = ncols as u32;
    for (i, mut row) in rows.enumerate() {
        // witness coordinate appended past the watermark
        row.push((watermark + i as u32, E::one()));
        match ech.insert(row)? {
            Inserted::Pivot(_) => {}
            Inserted::Dependent(witness) => {
                let mut shifted: SparseRow<E> = witness
                    .into_iter()
                    .map(|(c, v)| (c - watermark, v))
                    .collect();
                debug_assert!(!shifted.is_empty());
                if shifted.last().unwrap().1.is_negative() {
                    row_neg(&mut shifted);
                }
                kernel.push(shifted);
            }
        }
    }
    Ok(kernel)
}

/// Expresses `target` in the span of `basis`, where `basis` is in echelon
/// form by trailing coordinate (as produced by [`kernel_basis`]).  Returns
/// the coefficient row (indexed by basis position) or `None` when `target`
/// is not in the integral span.
pub fn solve_in_trailing_echelon<E: Ent>(
    basis: &[SparseRow<E>],
    trailing_index: &std::collections::HashMap<u32, usize>,
    target: &SparseRow<E>,
) -> Result<Option<SparseRow<E>>, Overflow> {
    let mut rem = target.clone();
    let mut coeffs: SparseRow<E> = Vec::new();
    while let Some((tcol, tval)) = rem.last().map(|(c, v)| (*c, v.clone())) {
        let Some(&bi) = trailing_index.get(&tcol) else {
            return Ok(None);
        };
        let bval = &basis[bi].last().unwrap().1;
        let (q, r) = tval.div_rem_euclid(bval);
        if !r.is_zero() {
            return Ok(None);
        }
        rem = row_axpy(&rem, &basis[bi], &q.neg())?;
        if !q.is_zero() {
            coeffs.push((bi as u32, q));
        }
    }
    coeffs.sort_by_key(|e| e.0);
    Ok(Some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Row = SparseRow<i128>;

    fn r(v: &[i64]) -> Row {
        row_from_dense(v)
    }

    #[test]
    fn gcd_of_parallel_rows() {
        let basis = hermite_basis(2, vec![r(&[2, 0]), r(&[3, 0])]).unwrap();
        assert_eq!(basis, vec![r(&[1, 0])]);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let basis = hermite_basis(3, vec![r(&[1, 2, 3]), r(&[1, 2, 3])]).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn hnf_is_canonical_for_permuted_input() {
        let a = hermite_basis(3, vec![r(&[2, 1, 0]), r(&[0, 3, 1]), r(&[4, 5, 1])]).unwrap();
        let b = hermite_basis(3, vec![r(&[4, 5, 1]), r(&[0, 3, 1]), r(&[2, 1, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kernel_of_tall_matrix() {
        // rows (1,0), (0,1), (1,1): kernel of x·M = 0 is spanned by (1,1,-1)
        let rows = vec![r(&[1, 0]), r(&[0, 1]), r(&[1, 1])];
        let k = kernel_basis(2, rows.into_iter(), 3).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(row_to_dense(&k[0], 3), vec![-1, -1, 1]);
    }

    #[test]
    fn kernel_vectors_kill_the_matrix() {
        // pseudo-random small matrix, checked against direct substitution
        let mut rows = Vec::new();
        let mut state = 97i64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 4
        };
        for _ in 0..12 {
            let row: Vec<i64> = (0..5).map(|_| next()).collect();
            rows.push(r(&row));
        }
        let k = kernel_basis(5, rows.clone().into_iter(), 12).unwrap();
        assert_eq!(k.len() + hermite_basis(5, rows.clone()).unwrap().len(), 12);
        for v in &k {
            let dense = row_to_dense(v, 12);
            for c in 0..5u32 {
                let mut acc = 0i128;
                for (i, row) in rows.iter().enumerate() {
                    if let Ok(idx) = row.binary_search_by_key(&c, |e| e.0) {
                        acc += dense[i] * row[idx].1;
                    }
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn trailing_echelon_solve_round_trips() {
        let rows = vec![r(&[2, 4]), r(&[1, 2]), r(&[3, 6]), r(&[0, 0])];
        let k = kernel_basis(2, rows.into_iter(), 4).unwrap();
        let index: std::collections::HashMap<u32, usize> = k
            .iter()
            .enumerate()
            .map(|(i, row)| (row.last().unwrap().0, i))
            .collect();
        // combination of kernel vectors must solve back exactly
        let target = row_axpy(&k[0], &k[1], &3).unwrap();
        let coeffs = solve_in_trailing_echelon(&k, &index, &target)
            .unwrap()
            .expect("in span");
        let mut rebuilt: Row = Vec::new();
        for (bi, c) in &coeffs {
            rebuilt = row_axpy(&rebuilt, &k[*bi as usize], c).unwrap();
        }
        assert_eq!(rebuilt, target);
        // something outside the span
        let outside = r(&[0, 0, 0, 1, 0, 0, 0]);
        if !index.contains_key(&3) {
            assert!(solve_in_trailing_echelon(&k, &index, &outside)
                .unwrap()
                .is_none());
        }
    }
}
