//! Normalized bar chain complex of a finite group, tensored down to ℤ.
//!
//! Degree-n basis elements are the tuples `(g_1, .., g_n)` with every
//! `g_i ≠ 1`, in lexicographic order, so the rank in degree n is
//! `(|G|-1)^n`.  The differential is the bar differential with the group
//! action trivialized; summands containing the identity are dropped.

use thiserror::Error;

use crate::groups::{FiniteGroup, GroupHom};
use crate::zlinalg::{Ent, SparseRow};

/// Default cap on `(|G|-1)^maxDegree`; the classification driver raises it
/// for the two largest catalog orders.
pub const SIZE_BOUND: usize = 600_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarError {
    #[error("complex of rank {0} exceeds the configured bound {1}")]
    SizeBound(usize, usize),
    #[error("complex not constructed to degree {0}")]
    DegreeMissing(usize),
}

/// Sparse boundary rows with small coefficients; row `t` lists the
/// coefficients of `∂(basis_t)` in the next-lower degree.
pub type BoundaryRow = Vec<(u32, i8)>;

pub struct ChainComplex {
    group: FiniteGroup,
    max_degree: usize,
    /// `boundaries[n-1]` holds `∂_n : K_n -> K_{n-1}` for `n = 1..=max_degree`.
    boundaries: Vec<Vec<BoundaryRow>>,
}

impl ChainComplex {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self, degree: usize) -> usize {
        (self.group.order() - 1).pow(degree as u32)
    }

    pub fn boundary(&self, degree: usize) -> Result<&[BoundaryRow], BarError> {
        if degree == 0 || degree > self.max_degree {
            return Err(BarError::DegreeMissing(degree));
        }
        Ok(&self.boundaries[degree - 1])
    }

    /// Basis tuple of `index` in degree `n` (group element indices, all ≥ 1).
    pub fn tuple_of_index(&self, n: usize, index: usize) -> Vec<u16> {
        let s = self.group.order() - 1;
        let mut idx = index;
        let mut tuple = vec![0u16; n];
        for i in (0..n).rev() {
            tuple[i] = (idx % s) as u16 + 1;
            idx /= s;
        }
        debug_assert_eq!(idx, 0);
        tuple
    }

    /// Index of a normalized tuple; `None` when any entry is the identity.
    pub fn index_of_tuple(&self, tuple: &[u16]) -> Option<usize> {
        let s = self.group.order() - 1;
        let mut idx = 0usize;
        for &g in tuple {
            if g == 0 {
                return None;
            }
            idx = idx * s + (g as usize - 1);
        }
        Some(idx)
    }

    pub fn boundary_rows_as<E: Ent>(
        &self,
        degree: usize,
    ) -> impl Iterator<Item = SparseRow<E>> + '_ {
        self.boundaries[degree - 1]
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, E::from_i64(*v as i64))).collect())
    }
}

fn boundary_of_tuple(group: &FiniteGroup, tuple: &[u16], complex: &ChainComplex) -> BoundaryRow {
    let n = tuple.len();
    let mut terms: Vec<(usize, i8)> = Vec::with_capacity(n + 1);
    // leading face drops g_1, trailing face drops g_n, inner faces multiply
    if n >= 1 {
        if let Some(idx) = complex.index_of_tuple(&tuple[1..]) {
            terms.push((idx, 1));
        }
        let sign_last = if n % 2 == 0 { 1 } else { -1 };
        if let Some(idx) = complex.index_of_tuple(&tuple[..n - 1]) {
            terms.push((idx, sign_last));
        }
    }
    let mut scratch = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        scratch.clear();
        scratch.extend_from_slice(&tuple[..i - 1]);
        scratch.push(group.mul(tuple[i - 1], tuple[i]));
        scratch.extend_from_slice(&tuple[i + 1..]);
        if let Some(idx) = complex.index_of_tuple(&scratch) {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            terms.push((idx, sign));
        }
    }
    terms.sort_by_key(|(c, _)| *c);
    let mut out: BoundaryRow = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c as u32 => *lv += v,
            _ => out.push((c as u32, v)),
        }
    }
    out.retain(|(_, v)| *v != 0);
    out
}

/// Builds the normalized bar complex of `group` through `max_degree`.
pub fn bar_complex(
    group: &FiniteGroup,
    max_degree: usize,
    bound: usize,
) -> Result<ChainComplex, BarError> {
    assert!(max_degree >= 1);
    let s = group.order() - 1;
    let top = s.checked_pow(max_degree as u32).unwrap_or(usize::MAX);
    if top > bound {
        return Err(BarError::SizeBound(top, bound));
    }
    let mut complex = ChainComplex {
        group: group.clone(),
        max_degree,
        boundaries: Vec::new(),
    };
    for n in 1..=max_degree {
        let rank = complex.rank(n);
        let mut rows = Vec::with_capacity(rank);
        for idx in 0..rank {
            let tuple = complex.tuple_of_index(n, idx);
            rows.push(boundary_of_tuple(group, &tuple, &complex));
        }
        complex.boundaries.push(rows);
    }
    Ok(complex)
}

/// The chain-map matrix of a homomorphism in degree `n`: row `t` of the
/// result is the image of source tuple `t`, either a unit entry at the image
/// tuple or empty when the image hits the identity (normalization).
pub fn chain_map(
    phi: &GroupHom,
    source: &ChainComplex,
    target: &ChainComplex,
    n: usize,
) -> Result<Vec<BoundaryRow>, BarError> {
    if n > source.max_degree() || n > target.max_degree() {
        return Err(BarError::DegreeMissing(n));
    }
    let rank = source.rank(n);
    let mut rows = Vec::with_capacity(rank);
    let mut image = vec![0u16; n];
    for idx in 0..rank {
        let tuple = source.tuple_of_index(n, idx);
        for (i, &g) in tuple.iter().enumerate() {
            image[i] = phi.apply(g);
        }
        match target.index_of_tuple(&image) {
            Some(t) => rows.push(vec![(t as u32, 1)]),
            None => rows.push(Vec::new()),
        }
    }
    Ok(rows)
}

/// Pullback of a mod-`modulus` cochain along a chain-map matrix: value at a
/// source tuple is the cochain value at its image tuple.
pub fn pull_back_cochain(map_rows: &[BoundaryRow], values: &[u64], modulus: u64) -> Vec<u64> {
    map_rows
        .iter()
        .map(|row| {
            let mut acc: u128 = 0;
            for (c, v) in row {
                let term = (*v as i128).rem_euclid(modulus as i128) as u128;
                acc += term * values[*c as usize] as u128;
            }
            (acc % modulus as u128) as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;
    use crate::groups::FiniteGroup;

    fn composes_to_zero(k: &ChainComplex, n: usize) -> bool {
        let upper = k.boundary(n).unwrap();
        let lower = k.boundary(n - 1).unwrap();
        for row in upper {
            let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
            for (mid, c1) in row {
                for (lo, c2) in &lower[*mid as usize] {
                    *acc.entry(*lo).or_default() += *c1 as i64 * *c2 as i64;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    #[test]
    fn z2_complex_alternates_zero_and_doubling() {
        // hand evaluation on the single tuple (x, .., x)
        let g = FiniteGroup::cyclic(2);
        let k = bar_complex(&g, 4, SIZE_BOUND).unwrap();
        for n in 1..=4 {
            assert_eq!(k.rank(n), 1);
        }
        assert_eq!(k.boundary(1).unwrap()[0], vec![]);
        assert_eq!(k.boundary(2).unwrap()[0], vec![(0, 2)]);
        assert_eq!(k.boundary(3).unwrap()[0], vec![]);
        assert_eq!(k.boundary(4).unwrap()[0], vec![(0, 2)]);
    }

    #[test]
    fn trivial_group_has_rank_zero_above_degree_zero() {
        let g = FiniteGroup::trivial();
        let k = bar_complex(&g, 3, SIZE_BOUND).unwrap();
        assert_eq!(k.rank(0), 1);
        for n in 1..=3 {
            assert_eq!(k.rank(n), 0);
        }
    }

    #[test]
    fn rank_formula() {
        let g = catalog_group(8, 5).unwrap();
        let k = bar_complex(&g, 3, SIZE_BOUND).unwrap();
        assert_eq!(k.rank(3), 343);
    }

    #[test]
    fn size_bound_enforced() {
        let g = catalog_group(8, 1).unwrap();
        assert!(matches!(
            bar_complex(&g, 4, 100),
            Err(BarError::SizeBound(2401, 100))
        ));
    }

    #[test]
    fn boundary_squares_to_zero_for_small_catalog_groups() {
        for (order, index) in [(4, 1), (4, 2), (6, 1), (8, 3), (8, 4), (9, 2), (12, 3)] {
            let g = catalog_group(order, index).unwrap();
            let k = bar_complex(&g, 4, SIZE_BOUND).unwrap();
            for n in 2..=4 {
                assert!(composes_to_zero(&k, n), "group {order}.{index} degree {n}");
            }
        }
    }

    #[test]
    fn boundary_coefficients_are_bounded() {
        let g = catalog_group(8, 3).unwrap();
        let k = bar_complex(&g, 4, SIZE_BOUND).unwrap();
        for n in 1..=4 {
            for row in k.boundary(n).unwrap() {
                assert!(row.len() <= n + 1);
                for (_, v) in row {
                    assert!(v.unsigned_abs() as usize <= n + 1);
                }
            }
        }
    }

    #[test]
    fn identity_chain_map_is_identity() {
        let g = catalog_group(6, 1).unwrap();
        let k = bar_complex(&g, 3, SIZE_BOUND).unwrap();
        let id = GroupHom::identity(6);
        let rows = chain_map(&id, &k, &k, 3).unwrap();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row, &vec![(i as u32, 1)]);
        }
    }

    #[test]
    fn projection_chain_map_hits_all_odd_tuples() {
        // ℤ/4 -> ℤ/2 in degree 3: unit rows exactly on tuples of odd residues
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let k4 = bar_complex(&c4, 3, SIZE_BOUND).unwrap();
        let k2 = bar_complex(&c2, 3, SIZE_BOUND).unwrap();
        let phi = GroupHom {
            image: vec![0, 1, 0, 1],
        };
        assert!(phi.is_homomorphism(&c4, &c2));
        let rows = chain_map(&phi, &k4, &k2, 3).unwrap();
        assert_eq!(rows.len(), 27);
        let mut unit_rows = 0;
        for (i, row) in rows.iter().enumerate() {
            let tuple = k4.tuple_of_index(3, i);
            let all_odd = tuple.iter().all(|&g| g % 2 == 1);
            if all_odd {
                assert_eq!(row, &vec![(0u32, 1)]);
                unit_rows += 1;
            } else {
                assert!(row.is_empty());
            }
        }
        assert_eq!(unit_rows, 8);
    }

    #[test]
    fn trivial_homomorphism_maps_to_zero() {
        let g = catalog_group(4, 1).unwrap();
        let k = bar_complex(&g, 3, SIZE_BOUND).unwrap();
        let phi = GroupHom {
            image: vec![0, 0, 0, 0],
        };
        let rows = chain_map(&phi, &k, &k, 3).unwrap();
        assert!(rows.iter().all(|r| r.is_empty()));
    }

    #[test]
    fn chain_map_commutes_with_boundaries() {
        // boundary then map equals map then boundary, for D8 -> D8/Z
        let g = catalog_group(8, 3).unwrap();
        let (q, pr) = g.quotient(&g.center()).unwrap();
        let kg = bar_complex(&g, 3, SIZE_BOUND).unwrap();
        let kq = bar_complex(&q, 3, SIZE_BOUND).unwrap();
        for n in 2..=3 {
            let f_n = chain_map(&pr, &kg, &kq, n).unwrap();
            let f_lower = chain_map(&pr, &kg, &kq, n - 1).unwrap();
            let dg = kg.boundary(n).unwrap();
            let dq = kq.boundary(n).unwrap();
            for t in 0..kg.rank(n) {
                let mut r1: std::collections::BTreeMap<u32, i64> = Default::default();
                for (mid, c) in &dg[t] {
                    for (lo, c2) in &f_lower[*mid as usize] {
                        *r1.entry(*lo).or_default() += *c as i64 * *c2 as i64;
                    }
                }
                let mut r2: std::collections::BTreeMap<u32, i64> = Default::default();
                for (mid, c) in &f_n[t] {
                    for (lo, c2) in &dq[*mid as usize] {
                        *r2.entry(*lo).or_default() += *c as i64 * *c2 as i64;
                    }
                }
                r1.retain(|_, v| *v != 0);
                r2.retain(|_, v| *v != 0);
                assert_eq!(r1, r2, "degree {n} tuple {t}");
            }
        }
    }
}
