//! ℂ×-valued cohomology of finite groups through the integral homology of
//! the bar complex.
//!
//! For each degree the pipeline computes the cycle lattice, the boundary
//! lattice, and an adapted basis of the quotient; classes in `H^n(G, ℂ×)`
//! are represented by homomorphisms `H_n(K) -> ℤ/m` with `m` the exponent
//! of `H_n(K)`, together with explicit generator cocycles lifted to the
//! chain level.  Induced maps, restriction and inflation tests, and
//! automorphism orbits all act on that representation.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barres::{bar_complex, chain_map, pull_back_cochain, BarError, BoundaryRow, ChainComplex};
use crate::groups::{FiniteGroup, GroupError, GroupHom, Subgroup};
use crate::zlinalg::{
    kernel_basis, hermite_basis, solve_in_trailing_echelon, sparse_snf, v_column, v_inv_row,
    Ent, ModSystem, Overflow, SparseRow,
};

pub const ORBIT_CLASS_BOUND: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("class enumeration of size {0} exceeds the bound {1}")]
    SizeBound(u64, u64),
    #[error("integrality violated while transporting a class (internal bug)")]
    IntegralityViolation,
}

/// Homology of the bar complex in one degree: invariant factors of
/// `Z_n / B_n` plus the torsion rows of the adapted basis expressed in the
/// ambient chain coordinates.
pub struct HomologyData {
    pub degree: usize,
    /// rank of the cycle lattice `Z_n`
    pub cycle_rank: usize,
    /// all invariant factors (ascending divisibility), including the 1s
    pub all_factors: Vec<u64>,
    /// the factors greater than 1
    pub factors: Vec<u64>,
    /// exponent of the homology group (1 when trivial)
    pub exponent: u64,
    /// adapted-basis rows `z'_i` for the nontrivial factors, in `K_n` coords
    pub torsion_cycles: Vec<SparseRow<i128>>,
    /// functional targets for the generator lift: values of `h_i` on the
    /// cycle-basis rows, one vector per nontrivial factor
    gen_targets: Vec<Vec<u64>>,
    /// trailing-echelon basis of `Z_n`
    cycle_basis: Vec<SparseRow<i128>>,
    /// Hermite basis of `B_n`
    boundary_basis: Vec<SparseRow<i128>>,
}

impl HomologyData {
    pub fn cycle_basis(&self) -> &[SparseRow<i128>] {
        &self.cycle_basis
    }
    pub fn boundary_basis(&self) -> &[SparseRow<i128>] {
        &self.boundary_basis
    }
}

fn to_i128_row<E: Ent>(row: &[(u32, E)]) -> SparseRow<i128> {
    row.iter()
        .map(|(c, v)| {
            (
                *c,
                v.to_i64()
                    .map(|x| x as i128)
                    .unwrap_or_else(|| panic!("entry {v} exceeds i64 in homology data")),
            )
        })
        .collect()
}

fn homology_data_generic<E: Ent>(
    complex: &ChainComplex,
    n: usize,
) -> Result<HomologyData, Overflow> {
    let n_lower = complex.rank(n - 1);
    let n_here = complex.rank(n);

    // cycles: left kernel of the boundary matrix
    let cycles: Vec<SparseRow<E>> = kernel_basis(
        n_lower,
        complex.boundary_rows_as::<E>(n),
        n_here,
    )?;
    let trailing_index: HashMap<u32, usize> = cycles
        .iter()
        .enumerate()
        .map(|(i, r)| (r.last().expect("nonempty kernel row").0, i))
        .collect();

    // boundaries: row lattice of the next boundary matrix
    let boundaries: Vec<SparseRow<E>> =
        hermite_basis(n_here, complex.boundary_rows_as::<E>(n + 1))?;

    // express boundaries in cycle coordinates
    let k = cycles.len();
    let mut t_rows: Vec<SparseRow<E>> = Vec::with_capacity(boundaries.len());
    for b in &boundaries {
        let coeffs = solve_in_trailing_echelon(&cycles, &trailing_index, b)?
            .expect("boundary lattice must lie inside the cycle lattice");
        t_rows.push(coeffs);
    }

    let snf = sparse_snf(t_rows, k)?;
    debug_assert_eq!(snf.divisors.len(), boundaries.len());

    let mut all_factors: Vec<u64> = Vec::with_capacity(k);
    // columns of the reduction that carry no divisor correspond to free
    // parts; finite homology in positive degrees means they do not occur
    let mut torsion: Vec<(u64, u32)> = Vec::new();
    for (d, col) in &snf.divisors {
        let dv = d
            .to_i64()
            .unwrap_or_else(|| panic!("invariant factor {d} exceeds i64")) as u64;
        all_factors.push(dv);
        if dv > 1 {
            torsion.push((dv, *col));
        }
    }
    while all_factors.len() < k {
        // missing diagonal entries would be zeros (free rank); record and let
        // callers decide — positive-degree bar homology never produces them
        all_factors.push(0);
    }

    let exponent = torsion.last().map(|(d, _)| *d).unwrap_or(1);
    let factors: Vec<u64> = torsion.iter().map(|(d, _)| *d).collect();

    let mut torsion_cycles = Vec::with_capacity(torsion.len());
    let mut gen_targets = Vec::with_capacity(torsion.len());
    for (d, col) in &torsion {
        // z'_i = (row `col` of V⁻¹) · Z
        let vrow = v_inv_row(&snf.col_ops, *col)?;
        let mut acc: SparseRow<E> = Vec::new();
        for (j, coeff) in &vrow {
            acc = crate::zlinalg::sparse::row_axpy(&acc, &cycles[*j as usize], coeff)?;
        }
        torsion_cycles.push(to_i128_row(&acc));

        // f_Z = (m / s_i) · (column `col` of V): values of h_i on the
        // cycle-basis rows, reduced mod m
        let scale = exponent / d;
        let vcol = v_column(&snf.col_ops, *col)?;
        let mut target = vec![0u64; k];
        for (j, coeff) in &vcol {
            let c = coeff.mod_u64(exponent);
            target[*j as usize] = (c as u128 * scale as u128 % exponent as u128) as u64;
        }
        gen_targets.push(target);
    }

    Ok(HomologyData {
        degree: n,
        cycle_rank: k,
        all_factors,
        factors,
        exponent,
        torsion_cycles,
        gen_targets,
        cycle_basis: cycles.iter().map(|r| to_i128_row(r)).collect(),
        boundary_basis: boundaries.iter().map(|r| to_i128_row(r)).collect(),
    })
}

/// Invariant factors and adapted torsion basis of `H_n(K)`, escalating to
/// big integers when machine arithmetic overflows.
pub fn homology_data(complex: &ChainComplex, n: usize) -> HomologyData {
    match homology_data_generic::<i128>(complex, n) {
        Ok(h) => h,
        Err(Overflow) => homology_data_generic::<num::BigInt>(complex, n)
            .expect("bigint path cannot overflow"),
    }
}

/// `H^n(G, ℂ×)` presented as `Hom(H_n(K), ℤ/m)` together with generator
/// cocycles realized on the normalized bar basis.
#[derive(Clone)]
pub struct CohomologyGroup {
    pub group: FiniteGroup,
    pub degree: usize,
    /// modulus m = exponent of `H_n(K)` (1 when the group is trivial)
    pub modulus: u64,
    /// orders of the generators: `s_1 | s_2 | ... | s_l`, each > 1
    pub factors: Vec<u64>,
    /// generator cocycles as value tables on the degree-n basis, mod m
    pub generators: Vec<Vec<u64>>,
    /// torsion rows of the adapted cycle basis, for class evaluation
    pub torsion_cycles: Vec<SparseRow<i128>>,
    /// rank of `K_n`
    pub rank: usize,
}

/// A cohomology class: exponent vector over the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CocycleClass {
    pub exponents: Vec<u64>,
}

impl CohomologyGroup {
    pub fn class_count(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &s| acc.saturating_mul(s))
    }

    pub fn zero_class(&self) -> CocycleClass {
        CocycleClass {
            exponents: vec![0; self.factors.len()],
        }
    }

    pub fn class(&self, exponents: &[u64]) -> CocycleClass {
        assert_eq!(exponents.len(), self.factors.len());
        CocycleClass {
            exponents: exponents
                .iter()
                .zip(&self.factors)
                .map(|(e, s)| e % s)
                .collect(),
        }
    }

    /// Canonical realization `Σ e_i · ω̃_i` as a value table mod m.
    pub fn realize(&self, class: &CocycleClass) -> Vec<u64> {
        let m = self.modulus as u128;
        let mut values = vec![0u64; self.rank];
        for (e, gen) in class.exponents.iter().zip(&self.generators) {
            if *e == 0 {
                continue;
            }
            for (v, g) in values.iter_mut().zip(gen) {
                *v = ((*v as u128 + *e as u128 * *g as u128) % m) as u64;
            }
        }
        values
    }

    /// Class of a cocycle given by values mod `p`, where `m | p`.  The dot
    /// products against the adapted torsion rows determine the exponents;
    /// non-integral division signals a non-cocycle input.
    pub fn class_of_values(&self, values: &[u64], p: u64) -> Result<CocycleClass, CohomologyError> {
        debug_assert_eq!(values.len(), self.rank);
        debug_assert_eq!(p % self.modulus, 0);
        let mut exponents = Vec::with_capacity(self.factors.len());
        for (z, s) in self.torsion_cycles.iter().zip(&self.factors) {
            let mut acc: u128 = 0;
            for (c, v) in z {
                let zv = (*v).rem_euclid(p as i128) as u128;
                acc = (acc + zv * values[*c as usize] as u128) % p as u128;
            }
            let step = p / s;
            if acc % step as u128 != 0 {
                return Err(CohomologyError::IntegralityViolation);
            }
            exponents.push((acc / step as u128) as u64 % s);
        }
        Ok(CocycleClass { exponents })
    }

    /// Least `t >= 1` with `t · class = 0`.
    pub fn class_order(&self, class: &CocycleClass) -> u64 {
        class
            .exponents
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&e, &s)| {
                num::integer::lcm(acc, s / num::integer::gcd(s, e))
            })
    }

    /// Mixed-radix encoding of an exponent vector.
    pub fn encode(&self, class: &CocycleClass) -> u64 {
        let mut code = 0u64;
        for (e, s) in class.exponents.iter().zip(&self.factors) {
            code = code * s + e;
        }
        code
    }

    pub fn decode(&self, mut code: u64) -> CocycleClass {
        let mut exponents = vec![0u64; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            exponents[i] = code % self.factors[i];
            code /= self.factors[i];
        }
        CocycleClass { exponents }
    }

    /// Checks `δω = 0 (mod m)` for a value table.
    pub fn is_cocycle(&self, values: &[u64], complex: &ChainComplex) -> bool {
        let m = self.modulus;
        if m == 1 {
            return true;
        }
        match complex.boundary(self.degree + 1) {
            Err(_) => true,
            Ok(rows) => rows.iter().all(|row| {
                let mut acc: i128 = 0;
                for (c, coeff) in row {
                    acc += *coeff as i128 * values[*c as usize] as i128;
                }
                acc.rem_euclid(m as i128) == 0
            }),
        }
    }
}

fn lift_generators(
    complex: &ChainComplex,
    n: usize,
    h: &HomologyData,
) -> Vec<Vec<u64>> {
    let m = h.exponent;
    let rank = complex.rank(n);
    if h.factors.is_empty() || m == 1 {
        return Vec::new();
    }
    // one echelon pass, one rhs column per generator
    let mut sys = ModSystem::with_rhs(m, rank, h.factors.len());
    for (j, z) in h.cycle_basis.iter().enumerate() {
        let row: Vec<(u32, u64)> = z
            .iter()
            .map(|(c, v)| (*c, v.rem_euclid(m as i128) as u64))
            .filter(|(_, v)| *v != 0)
            .collect();
        let rhs: Vec<u64> = h.gen_targets.iter().map(|t| t[j]).collect();
        sys.add_equation_multi(row, rhs);
    }
    (0..h.factors.len())
        .map(|i| {
            sys.solve_column(i)
                .expect("generator lift must exist: cycle lattice is saturated")
        })
        .collect()
}

/// Full cohomology computation for one group and degree.
pub fn cohomology_of(
    group: &FiniteGroup,
    n: usize,
    bound: usize,
) -> Result<CohomologyGroup, CohomologyError> {
    let complex = bar_complex(group, n + 1, bound)?;
    Ok(cohomology_from_complex(&complex, n))
}

pub fn cohomology_from_complex(complex: &ChainComplex, n: usize) -> CohomologyGroup {
    let h = homology_data(complex, n);
    let generators = lift_generators(complex, n, &h);
    let coh = CohomologyGroup {
        group: complex.group().clone(),
        degree: n,
        modulus: h.exponent,
        factors: h.factors.clone(),
        generators,
        torsion_cycles: h.torsion_cycles.clone(),
        rank: complex.rank(n),
    };
    #[cfg(debug_assertions)]
    {
        for (i, gen) in coh.generators.iter().enumerate() {
            debug_assert!(coh.is_cocycle(gen, complex), "generator {i} not a cocycle");
            let class = coh.class_of_values(gen, coh.modulus).expect("generator class");
            let expected: Vec<u64> = (0..coh.factors.len())
                .map(|j| u64::from(j == i))
                .collect();
            debug_assert_eq!(class.exponents, expected, "generator {i} class");
        }
    }
    coh
}

/// Contravariant map on classes induced by a group homomorphism
/// `phi: G -> G'`: classes on `G'` pull back to classes on `G`.
pub struct InducedMap {
    rows: Vec<BoundaryRow>,
    source: Arc<CohomologyGroup>,
    target: Arc<CohomologyGroup>,
}

impl InducedMap {
    pub fn new(
        phi: &GroupHom,
        k_source: &ChainComplex,
        k_target: &ChainComplex,
        coh_source: Arc<CohomologyGroup>,
        coh_target: Arc<CohomologyGroup>,
    ) -> Result<InducedMap, CohomologyError> {
        let n = coh_source.degree;
        debug_assert_eq!(n, coh_target.degree);
        let rows = chain_map(phi, k_source, k_target, n)?;
        Ok(InducedMap {
            rows,
            source: coh_source,
            target: coh_target,
        })
    }

    /// Image on `G` of a class living on `G'`.
    pub fn apply(&self, class: &CocycleClass) -> Result<CocycleClass, CohomologyError> {
        let m_target = self.target.modulus;
        let m = self.source.modulus;
        let p = num::integer::lcm(m, m_target);
        let values = self.target.realize(class);
        // scale into ℤ/p, pull back along the chain map, read off the class
        let scale = p / m_target;
        let scaled: Vec<u64> = values.iter().map(|v| v * scale).collect();
        let pulled = pull_back_cochain(&self.rows, &scaled, p);
        self.source.class_of_values(&pulled, p)
    }
}

/// Orbits of the full class list under a set of automorphisms.
pub struct OrbitData {
    pub cohomology: Arc<CohomologyGroup>,
    /// lexicographically minimal exponent vector per orbit, sorted
    pub orbits: Vec<Orbit>,
}

pub struct Orbit {
    pub representative: CocycleClass,
    pub size: usize,
}

/// A small generating subset of a permutation-like list of automorphisms.
fn generating_subset(autos: &[GroupHom]) -> Vec<GroupHom> {
    let mut gens: Vec<GroupHom> = Vec::new();
    let mut span: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
    let degree = autos.first().map_or(0, |a| a.image.len());
    span.insert(GroupHom::identity(degree).image);
    for a in autos {
        if span.contains(&a.image) {
            continue;
        }
        gens.push(a.clone());
        // close the span under composition with the new generator set
        let mut frontier: Vec<Vec<u16>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let xh = GroupHom { image: x };
            for g in &gens {
                for y in [g.compose(&xh), xh.compose(g)] {
                    if span.insert(y.image.clone()) {
                        frontier.push(y.image);
                    }
                }
            }
        }
    }
    gens
}

pub fn automorphism_orbits(
    session: &Session,
    group: &FiniteGroup,
    n: usize,
) -> Result<OrbitData, CohomologyError> {
    let coh = session.cohomology(group, n)?;
    let total = coh.class_count();
    if total > ORBIT_CLASS_BOUND {
        return Err(CohomologyError::SizeBound(total, ORBIT_CLASS_BOUND));
    }
    let complex = session.complex(group, n + 1)?;
    let autos = group.automorphisms();
    let gens = generating_subset(&autos);

    // matrix of each generator action on exponent vectors
    let mut matrices: Vec<Vec<Vec<u64>>> = Vec::with_capacity(gens.len());
    for phi in &gens {
        let map = InducedMap::new(phi, &complex, &complex, coh.clone(), coh.clone())?;
        let mut cols = Vec::with_capacity(coh.factors.len());
        for i in 0..coh.factors.len() {
            let mut e = vec![0u64; coh.factors.len()];
            e[i] = 1;
            let img = map.apply(&CocycleClass { exponents: e })?;
            cols.push(img.exponents);
        }
        matrices.push(cols);
    }

    let apply = |mat: &Vec<Vec<u64>>, e: &[u64]| -> Vec<u64> {
        let l = coh.factors.len();
        let mut out = vec![0u64; l];
        for (j, &ej) in e.iter().enumerate() {
            if ej == 0 {
                continue;
            }
            for i in 0..l {
                out[i] = (out[i] + ej as u64 * mat[j][i]) % coh.factors[i];
            }
        }
        out
    };

    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for code in 0..total {
        if seen[code as usize] {
            continue;
        }
        let mut members = vec![code];
        seen[code as usize] = true;
        let mut head = 0;
        while head < members.len() {
            let e = coh.decode(members[head]);
            for mat in &matrices {
                let img = apply(mat, &e.exponents);
                let c = coh.encode(&CocycleClass { exponents: img });
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    members.push(c);
                }
            }
            head += 1;
        }
        let rep = members.iter().copied().min().unwrap();
        orbits.push(Orbit {
            representative: coh.decode(rep),
            size: members.len(),
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(OrbitData {
        cohomology: coh,
        orbits,
    })
}

/// Does `class` arise by inflation from the quotient `G/N`?  Returns the
/// preimage class on the quotient when one exists.
pub fn is_inflation(
    session: &Session,
    group: &FiniteGroup,
    class: &CocycleClass,
    normal: &Subgroup,
) -> Result<Option<CocycleClass>, CohomologyError> {
    let n = 3;
    let (quotient, projection) = group.quotient(normal)?;
    let coh_g = session.cohomology(group, n)?;
    let coh_q = session.cohomology(&quotient, n)?;
    let k_g = session.complex(group, n + 1)?;
    let k_q = session.complex(&quotient, n + 1)?;
    let map = InducedMap::new(&projection, &k_g, &k_q, coh_g, coh_q.clone())?;
    let total = coh_q.class_count();
    if total > ORBIT_CLASS_BOUND {
        return Err(CohomologyError::SizeBound(total, ORBIT_CLASS_BOUND));
    }
    for code in 0..total {
        let cq = coh_q.decode(code);
        if map.apply(&cq)? == *class {
            return Ok(Some(cq));
        }
    }
    Ok(None)
}

/// True when the realized cochain of `class` vanishes identically on all
/// normalized triples from `sub` (pointwise, not merely up to coboundary).
pub fn restriction_is_trivial_cochain(
    coh: &CohomologyGroup,
    class: &CocycleClass,
    sub: &Subgroup,
) -> bool {
    let values = coh.realize(class);
    restriction_values_vanish(coh, &values, sub)
}

pub fn restriction_values_vanish(coh: &CohomologyGroup, values: &[u64], sub: &Subgroup) -> bool {
    let s = coh.group.order() - 1;
    let elems: Vec<u16> = sub.elements.iter().copied().filter(|&e| e != 0).collect();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                let idx =
                    ((a as usize - 1) * s + (b as usize - 1)) * s + (c as usize - 1);
                if values[idx] % coh.modulus != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn group_hash(group: &FiniteGroup) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let n = group.order() as u16;
    for a in 0..n {
        for b in 0..n {
            h ^= group.mul(a, b) as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h ^= n as u64;
    h.wrapping_mul(0x100000001b3)
}

#[derive(Serialize, Deserialize)]
struct CachedCohomology {
    degree: usize,
    modulus: u64,
    factors: Vec<u64>,
    generators: Vec<Vec<u64>>,
    torsion_cycles: Vec<Vec<(u32, i64)>>,
    rank: usize,
}

/// Shared computation context: memoizes complexes and cohomology groups per
/// group, optionally persisting cohomology to a cache directory.
pub struct Session {
    pub bound: usize,
    complexes: Mutex<HashMap<(u64, usize), Arc<ChainComplex>>>,
    groups: Mutex<HashMap<(u64, usize), Arc<CohomologyGroup>>>,
    disk: Option<PathBuf>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(crate::barres::SIZE_BOUND)
    }
}

impl Session {
    pub fn new(bound: usize) -> Self {
        Session {
            bound,
            complexes: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
            disk: None,
        }
    }

    pub fn with_cache_dir(bound: usize, dir: PathBuf) -> Self {
        std::fs::create_dir_all(&dir).ok();
        Session {
            bound,
            complexes: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
            disk: Some(dir),
        }
    }

    pub fn complex(
        &self,
        group: &FiniteGroup,
        max_degree: usize,
    ) -> Result<Arc<ChainComplex>, CohomologyError> {
        let key = (group_hash(group), max_degree);
        if let Some(k) = self.complexes.lock().unwrap().get(&key) {
            return Ok(k.clone());
        }
        let built = Arc::new(bar_complex(group, max_degree, self.bound)?);
        self.complexes.lock().unwrap().insert(key, built.clone());
        Ok(built)
    }

    pub fn cohomology(
        &self,
        group: &FiniteGroup,
        n: usize,
    ) -> Result<Arc<CohomologyGroup>, CohomologyError> {
        let key = (group_hash(group), n);
        if let Some(c) = self.groups.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        if let Some(c) = self.load_disk(group, key.0, n) {
            let arc = Arc::new(c);
            self.groups.lock().unwrap().insert(key, arc.clone());
            return Ok(arc);
        }
        let complex = self.complex(group, n + 1)?;
        let coh = cohomology_from_complex(&complex, n);
        self.store_disk(key.0, &coh);
        let arc = Arc::new(coh);
        self.groups.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn cache_path(&self, hash: u64, degree: usize) -> Option<PathBuf> {
        self.disk.as_ref().map(|d| {
            d.join(format!(
                "coh-{:016x}-{degree}-{:016x}.json",
                hash,
                crate::catalog::catalog_fingerprint()
            ))
        })
    }

    fn load_disk(&self, group: &FiniteGroup, hash: u64, degree: usize) -> Option<CohomologyGroup> {
        let path = self.cache_path(hash, degree)?;
        let text = std::fs::read_to_string(path).ok()?;
        let cached: CachedCohomology = serde_json::from_str(&text).ok()?;
        if cached.degree != degree {
            return None;
        }
        Some(CohomologyGroup {
            group: group.clone(),
            degree,
            modulus: cached.modulus,
            factors: cached.factors,
            generators: cached.generators,
            torsion_cycles: cached
                .torsion_cycles
                .into_iter()
                .map(|r| r.into_iter().map(|(c, v)| (c, v as i128)).collect())
                .collect(),
            rank: cached.rank,
        })
    }

    fn store_disk(&self, hash: u64, coh: &CohomologyGroup) {
        let Some(path) = self.cache_path(hash, coh.degree) else {
            return;
        };
        let cached = CachedCohomology {
            degree: coh.degree,
            modulus: coh.modulus,
            factors: coh.factors.clone(),
            generators: coh.generators.clone(),
            torsion_cycles: coh
                .torsion_cycles
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, i64::try_from(*v).expect("torsion entry fits i64")))
                        .collect()
                })
                .collect(),
            rank: coh.rank,
        };
        if let Ok(text) = serde_json::to_string(&cached) {
            let tmp = path.with_extension("tmp");
            if std::fs::write(&tmp, text).is_ok() {
                std::fs::rename(&tmp, &path).ok();
            }
        }
    }
}
