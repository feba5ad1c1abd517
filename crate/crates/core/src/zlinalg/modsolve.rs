//! Linear solving over ℤ/m for composite m.
//!
//! Equations are reduced to an echelon form whose pivots divide the modulus
//! (Howell-style, with annihilator rows enqueued on pivot creation), after
//! which back-substitution with free variables at zero finds a solution of
//! any consistent system.

use std::collections::BTreeMap;

/// Sparse equation over ℤ/m: sorted `(column, residue)` pairs plus rhs.
pub type ModRow = Vec<(u32, u64)>;

pub struct ModSystem {
    m: u64,
    ncols: usize,
    nrhs: usize,
    /// pivot column -> (normalized equation, rhs vector); pivot divides m
    pivots: BTreeMap<u32, (ModRow, Vec<u64>)>,
    inconsistent: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Modular inverse of `a` mod `m` for `gcd(a, m) = 1`.
fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(m as i128) as u64
}

/// A unit `u` mod `m` with `u * v ≡ gcd(v, m) (mod m)`.
fn unit_to_associate(v: u64, m: u64) -> u64 {
    let d = gcd(v, m);
    let v1 = (v / d) % m;
    let m1 = m / d;
    let mut u = if m1 == 1 { 1 } else { inv_mod(v1 % m1, m1) };
    // lift to a unit mod m
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

impl ModSystem {
    pub fn new(m: u64, ncols: usize) -> Self {
        Self::with_rhs(m, ncols, 1)
    }

    pub fn with_rhs(m: u64, ncols: usize, nrhs: usize) -> Self {
        assert!(m >= 1);
        ModSystem {
            m,
            ncols,
            nrhs,
            pivots: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    fn normalize(&self, row: &mut ModRow, rhs: &mut [u64]) {
        row.retain(|(_, v)| *v % self.m != 0);
        for (_, v) in row.iter_mut() {
            *v %= self.m;
        }
        for r in rhs.iter_mut() {
            *r %= self.m;
        }
    }

    /// Adds the equation `Σ coeff_c · x_c ≡ rhs (mod m)` for a single rhs.
    pub fn add_equation(&mut self, row: ModRow, rhs: u64) {
        self.add_equation_multi(row, vec![rhs]);
    }

    /// Adds one equation with one rhs value per solve target.
    pub fn add_equation_multi(&mut self, mut row: ModRow, mut rhs: Vec<u64>) {
        assert_eq!(rhs.len(), self.nrhs);
        if self.m == 1 || self.inconsistent {
            return;
        }
        self.normalize(&mut row, &mut rhs);
        let mut stack = vec![(row, rhs)];
        while let Some((mut row, mut rhs)) = stack.pop() {
            loop {
                let Some(&(lead, val)) = row.first() else {
                    if rhs.iter().any(|r| r % self.m != 0) {
                        self.inconsistent = true;
                    }
                    break;
                };
                match self.pivots.get(&lead) {
                    None => {
                        // normalize pivot to a divisor of m, store, and
                        // enqueue the annihilator of the new pivot
                        let u = unit_to_associate(val, self.m);
                        let d = gcd(val, self.m);
                        let srow: ModRow = row
                            .iter()
                            .map(|(c, v)| (*c, (*v as u128 * u as u128 % self.m as u128) as u64))
                            .filter(|(_, v)| *v != 0)
                            .collect();
                        let srhs: Vec<u64> = rhs
                            .iter()
                            .map(|r| (*r as u128 * u as u128 % self.m as u128) as u64)
                            .collect();
                        debug_assert_eq!(srow[0].1, d);
                        let ann = self.m / d;
                        if ann > 1 {
                            let arow: ModRow = srow
                                .iter()
                                .skip(1)
                                .map(|(c, v)| {
                                    (*c, (*v as u128 * ann as u128 % self.m as u128) as u64)
                                })
                                .filter(|(_, v)| *v != 0)
                                .collect();
                            let arhs: Vec<u64> = srhs
                                .iter()
                                .map(|r| (*r as u128 * ann as u128 % self.m as u128) as u64)
                                .collect();
                            stack.push((arow, arhs));
                        }
                        self.pivots.insert(lead, (srow, srhs));
                        break;
                    }
                    Some((prow, prhs)) => {
                        let d = prow[0].1;
                        if val % d == 0 {
                            let q = self.m - (val / d) % self.m;
                            let (nrow, nrhs) = self.axpy(&row, &rhs, prow, prhs, q);
                            row = nrow;
                            rhs = nrhs;
                        } else {
                            // combine into a smaller pivot
                            let (g, x, y) = ext_gcd_u(d, val, self.m);
                            let (crow, crhs) = self.combine(prow, prhs, &row, &rhs, x, y);
                            let qa = d / g;
                            let qb = (self.m - (val / g) % self.m) % self.m;
                            let (nrow, nrhs) = self.combine(&row, &rhs, prow, prhs, qa, qb);
                            self.pivots.remove(&lead);
                            stack.push((crow, crhs));
                            row = nrow;
                            rhs = nrhs;
                        }
                    }
                }
            }
        }
    }

    fn axpy(
        &self,
        a: &ModRow,
        arhs: &[u64],
        b: &ModRow,
        brhs: &[u64],
        q: u64,
    ) -> (ModRow, Vec<u64>) {
        self.combine(a, arhs, b, brhs, 1, q)
    }

    /// `qa * (a, arhs) + qb * (b, brhs)` mod m.
    fn combine(
        &self,
        a: &ModRow,
        arhs: &[u64],
        b: &ModRow,
        brhs: &[u64],
        qa: u64,
        qb: u64,
    ) -> (ModRow, Vec<u64>) {
        let m = self.m as u128;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (c, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                let e = (a[i].0, a[i].1 as u128 * qa as u128 % m);
                i += 1;
                e
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let e = (b[j].0, b[j].1 as u128 * qb as u128 % m);
                j += 1;
                e
            } else {
                let e = (
                    a[i].0,
                    (a[i].1 as u128 * qa as u128 + b[j].1 as u128 * qb as u128) % m,
                );
                i += 1;
                j += 1;
                e
            };
            if v != 0 {
                out.push((c, v as u64));
            }
        }
        let rhs: Vec<u64> = arhs
            .iter()
            .zip(brhs)
            .map(|(ra, rb)| ((*ra as u128 * qa as u128 + *rb as u128 * qb as u128) % m) as u64)
            .collect();
        (out, rhs)
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// A solution with free variables set to zero, or `None`.
    pub fn solve(&self) -> Option<Vec<u64>> {
        self.solve_column(0)
    }

    /// Solves for the `which`-th rhs column.
    pub fn solve_column(&self, which: usize) -> Option<Vec<u64>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        if self.m == 1 {
            return Some(x);
        }
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let d = row[0].1;
            let mut acc = rhs[which] as i128;
            for (c, v) in row.iter().skip(1) {
                acc -= *v as i128 * x[*c as usize] as i128;
            }
            let r = acc.rem_euclid(self.m as i128) as u64;
            if r % d != 0 {
                return None;
            }
            x[col as usize] = r / d;
        }
        Some(x)
    }
}

/// `(g, x, y)` with `x·a + y·b ≡ g (mod m)` and `g = gcd(a, b)` computed
/// over the integers, coefficients reduced mod m.
fn ext_gcd_u(a: u64, b: u64, m: u64) -> (u64, u64, u64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    (
        r0 as u64,
        x0.rem_euclid(m as i128) as u64,
        y0.rem_euclid(m as i128) as u64,
    )
}

/// Solves the dense system `A·x ≡ b (mod m)`; rows of `a` are equations.
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], m: u64) -> Option<Vec<u64>> {
    assert!(m >= 2);
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut sys = ModSystem::new(m, ncols);
    for (row, rhs) in a.iter().zip(b) {
        let srow: ModRow = row
            .iter()
            .enumerate()
            .filter(|(_, &v)| v.rem_euclid(m as i64) != 0)
            .map(|(c, &v)| (c as u32, v.rem_euclid(m as i64) as u64))
            .collect();
        sys.add_equation(srow, rhs.rem_euclid(m as i64) as u64);
    }
    let x = sys.solve()?;
    // verify by substitution
    for (row, rhs) in a.iter().zip(b) {
        let mut acc: i128 = 0;
        for (c, &v) in row.iter().enumerate() {
            acc += v as i128 * x[c] as i128;
        }
        if (acc - *rhs as i128).rem_euclid(m as i128) != 0 {
            return None;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn impossible_congruence() {
        // 2x ≡ 1 (mod 4) has no solution
        assert_eq!(solve_mod(&[vec![2]], &[1], 4), None);
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let x = solve_mod(&a, &[5, 6, 7], 8).unwrap();
        assert_eq!(x, vec![5, 6, 7]);
    }

    #[test]
    fn planted_solutions_are_recovered() {
        // random systems with a planted solution over composite moduli
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for m in [4u64, 6, 8, 9, 12, 16, 27] {
            for _ in 0..40 {
                let rows = 3 + (next() % 6) as usize;
                let cols = 2 + (next() % 5) as usize;
                let a: Vec<Vec<i64>> = (0..rows)
                    .map(|_| (0..cols).map(|_| (next() % m) as i64).collect())
                    .collect();
                let planted: Vec<u64> = (0..cols).map(|_| next() % m).collect();
                let b: Vec<i64> = a
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&planted)
                            .map(|(&c, &x)| c * x as i64)
                            .sum::<i64>()
                            .rem_euclid(m as i64) as i64
                    })
                    .collect();
                let x = solve_mod(&a, &b, m)
                    .unwrap_or_else(|| panic!("missed planted solution mod {m}: {a:?} {b:?}"));
                for (row, rhs) in a.iter().zip(&b) {
                    let acc: i64 = row.iter().zip(&x).map(|(&c, &v)| c * v as i64).sum();
                    assert_eq!(acc.rem_euclid(m as i64), *rhs);
                }
            }
        }
    }

    #[test]
    fn detects_inconsistency_against_brute_force() {
        // exhaustive comparison on tiny systems
        for m in [4u64, 6] {
            let combos: Vec<Vec<i64>> = (0..(m * m))
                .map(|k| vec![(k % m) as i64, (k / m) as i64])
                .collect();
            for a0 in &combos {
                for b in 0..m as i64 {
                    let system = vec![a0.clone(), vec![2, 3]];
                    let rhs = vec![b, 1];
                    let brute = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).any(
                        |(x, y)| {
                            let e1 = (a0[0] * x as i64 + a0[1] * y as i64 - b).rem_euclid(m as i64);
                            let e2 = (2 * x as i64 + 3 * y as i64 - 1).rem_euclid(m as i64);
                            e1 == 0 && e2 == 0
                        },
                    );
                    assert_eq!(
                        solve_mod(&system, &rhs, m).is_some(),
                        brute,
                        "m={m} a0={a0:?} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_to_associate_properties() {
        for m in [4u64, 6, 8, 12, 27, 16] {
            for v in 1..m {
                let u = unit_to_associate(v, m);
                assert_eq!(gcd(u, m), 1, "u={u} not a unit mod {m}");
                assert_eq!(u * v % m, gcd(v, m), "v={v} m={m}");
            }
        }
    }
}
