//! Finite-group kernel: Cayley tables, subgroup and quotient machinery,
//! automorphism groups and isomorphism testing.
//!
//! Groups are stored as full multiplication tables over element indices,
//! with the identity at index 0.  Element order inside a group is the
//! breadth-first word order from the identity over the generating set, which
//! keeps every downstream vector reproducible across runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::perm::Perm;

/// Default bound on the order of a generated closure.
pub const CLOSURE_BOUND: usize = 512;

/// Bound accepted for central extensions; `μ_27 ×_α (ℤ/27)` has order 729.
pub const EXTENSION_BOUND: usize = 1024;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeds the configured bound of {0} elements")]
    ClosureBound(usize),
    #[error("no catalog entry for order {0} index {1}")]
    UnknownEntry(usize, usize),
    #[error("subgroup is not normal")]
    NotNormal,
}

/// A finite group presented by its Cayley table. Identity is element 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    element_orders: Vec<u16>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order={})", self.order)
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            element_orders: vec![1],
        }
    }

    pub fn from_mul_table(order: usize, mul: Vec<u16>) -> Self {
        assert_eq!(mul.len(), order * order);
        let mut inv = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        assert!(inv.iter().all(|&x| x != u16::MAX), "not a group table");
        let mut element_orders = vec![0u16; order];
        for g in 0..order {
            let mut x = g as u16;
            let mut k = 1;
            while x != 0 {
                x = mul[x as usize * order + g];
                k += 1;
            }
            element_orders[g] = k;
        }
        FiniteGroup {
            order,
            mul,
            inv,
            element_orders,
        }
    }

    /// Cyclic group of order `n` with generator at index 1 (for `n > 1`).
    pub fn cyclic(n: usize) -> Self {
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = ((a + b) % n) as u16;
            }
        }
        FiniteGroup::from_mul_table(n, mul)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn element_order(&self, a: u16) -> u16 {
        self.element_orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u16] {
        &self.element_orders
    }

    /// `a ▷ b = a b a⁻¹`.
    #[inline]
    pub fn conj(&self, a: u16, b: u16) -> u16 {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn pow(&self, g: u16, e: i64) -> u16 {
        let o = self.element_orders[g as usize] as i64;
        let mut e = e.rem_euclid(o) as u16;
        let mut acc = 0u16;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn exponent(&self) -> usize {
        self.element_orders
            .iter()
            .fold(1u64, |acc, &o| num::integer::lcm(acc, o as u64)) as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u16)
            .all(|a| (0..self.order as u16).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive associativity/identity/inverse check, used by tests on
    /// every catalog group.
    pub fn check_axioms(&self) -> bool {
        let n = self.order as u16;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Greedy generating sequence: prepends elements until the closure is
    /// the whole group. Deterministic.
    pub fn generating_sequence(&self) -> Vec<u16> {
        let mut gens: Vec<u16> = Vec::new();
        let mut span = vec![false; self.order];
        span[0] = true;
        let mut span_size = 1;
        while span_size < self.order {
            let g = (1..self.order as u16).find(|&g| !span[g as usize]).unwrap();
            gens.push(g);
            // close the span under multiplication by the new generator
            let mut stack: Vec<u16> = (0..self.order as u16).filter(|&x| span[x as usize]).collect();
            while let Some(x) = stack.pop() {
                for &h in &gens {
                    for y in [self.mul(x, h), self.mul(h, x)] {
                        if !span[y as usize] {
                            span[y as usize] = true;
                            span_size += 1;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        gens
    }

    /// Conjugacy classes, identity class first, then ordered by minimal
    /// representative. The representative is the minimal index in the class.
    pub fn conjugacy_classes(&self) -> Vec<(u16, Vec<u16>)> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order as u16 {
            if seen[g as usize] {
                continue;
            }
            let mut members: Vec<u16> = (0..self.order as u16)
                .map(|x| self.conj(x, g))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            members.sort_unstable();
            for &m in &members {
                seen[m as usize] = true;
            }
            classes.push((members[0], members));
        }
        classes
    }

    pub fn class_of(&self, g: u16) -> Vec<u16> {
        let set: std::collections::BTreeSet<u16> =
            (0..self.order as u16).map(|x| self.conj(x, g)).collect();
        set.into_iter().collect()
    }

    pub fn centralizer(&self, g: u16) -> Subgroup {
        let elements = (0..self.order as u16)
            .filter(|&x| self.mul(x, g) == self.mul(g, x))
            .collect();
        Subgroup { elements }
    }

    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order as u16)
            .filter(|&z| (0..self.order as u16).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect();
        Subgroup { elements }
    }

    /// Closure of a set of element indices.
    pub fn closure(&self, seed: &[u16]) -> Subgroup {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut elements: Vec<u16> = vec![0];
        let mut stack: Vec<u16> = vec![0];
        for &s in seed {
            if !in_set[s as usize] {
                in_set[s as usize] = true;
                elements.push(s);
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for &g in &elements.clone() {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !in_set[y as usize] {
                        in_set[y as usize] = true;
                        elements.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order as u16).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        sub.elements.iter().all(|&h| {
            (0..self.order as u16).all(|g| sub.contains(self.conj(g, h)))
        })
    }

    /// Factor group by a normal subgroup, with the projection homomorphism.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        // cosets keyed by sorted member list; labelled by minimal member,
        // identity coset first
        let mut coset_of = vec![u16::MAX; self.order];
        let mut reps: Vec<u16> = Vec::new();
        for g in 0..self.order as u16 {
            if coset_of[g as usize] != u16::MAX {
                continue;
            }
            let idx = reps.len() as u16;
            for &h in &n.elements {
                coset_of[self.mul(g, h) as usize] = idx;
            }
            reps.push(g);
        }
        let q = reps.len();
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let quotient = FiniteGroup::from_mul_table(q, mul);
        let hom = GroupHom {
            image: coset_of,
        };
        debug_assert!(hom.is_homomorphism(self, &quotient));
        Ok((quotient, hom))
    }

    /// Componentwise direct product; elements ordered as `a * |G2| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let n = self.order * other.order;
        if n > CLOSURE_BOUND {
            return Err(GroupError::ClosureBound(CLOSURE_BOUND));
        }
        let m = other.order;
        let mut mul = vec![0u16; n * n];
        for a1 in 0..self.order {
            for b1 in 0..m {
                for a2 in 0..self.order {
                    for b2 in 0..m {
                        let x = a1 * m + b1;
                        let y = a2 * m + b2;
                        mul[x * n + y] = (self.mul(a1 as u16, a2 as u16) as usize * m
                            + other.mul(b1 as u16, b2 as u16) as usize)
                            as u16;
                    }
                }
            }
        }
        Ok(FiniteGroup::from_mul_table(n, mul))
    }

    /// All subgroups, as joins of cyclic subgroups. Sorted by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut subs: Vec<Subgroup> = Vec::new();
        let mut seen: std::collections::HashSet<Vec<u16>> = std::collections::HashSet::new();
        let cyclics: Vec<Subgroup> = {
            let mut cs = Vec::new();
            for g in 0..self.order as u16 {
                let c = self.closure(&[g]);
                if seen.insert(c.elements.clone()) {
                    cs.push(c.clone());
                    subs.push(c);
                }
            }
            cs
        };
        let mut frontier = subs.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclics {
                    if c.elements.iter().all(|e| s.contains(*e)) {
                        continue;
                    }
                    let mut seed = s.elements.clone();
                    seed.extend_from_slice(&c.elements);
                    let joined = self.closure(&seed);
                    if seen.insert(joined.elements.clone()) {
                        next.push(joined.clone());
                        subs.push(joined);
                    }
                }
            }
            frontier = next;
        }
        subs.sort_by(|a, b| {
            (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements))
        });
        subs
    }

    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order as u16 {
            let c = self.closure(&[g]);
            if seen.insert(c.elements.clone()) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| {
            (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements))
        });
        out
    }

    pub fn abelian_normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .into_iter()
            .filter(|s| self.is_normal(s) && self.subgroup_is_abelian(s))
            .collect()
    }

    pub fn subgroup_is_abelian(&self, s: &Subgroup) -> bool {
        s.elements
            .iter()
            .all(|&a| s.elements.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup as a standalone group plus the inclusion homomorphism
    /// into the parent. Element `i` of the result is `s.elements[i]`.
    pub fn subgroup_group(&self, s: &Subgroup) -> (FiniteGroup, GroupHom) {
        let k = s.elements.len();
        let mut index_of = HashMap::new();
        for (i, &e) in s.elements.iter().enumerate() {
            index_of.insert(e, i as u16);
        }
        let mut mul = vec![0u16; k * k];
        for a in 0..k {
            for b in 0..k {
                mul[a * k + b] = index_of[&self.mul(s.elements[a], s.elements[b])];
            }
        }
        let sub = FiniteGroup::from_mul_table(k, mul);
        let hom = GroupHom {
            image: s.elements.clone(),
        };
        debug_assert!(hom.is_homomorphism(&sub, self));
        (sub, hom)
    }

    /// The full automorphism group as bijective endomorphisms, in a
    /// deterministic order.
    pub fn automorphisms(&self) -> Vec<GroupHom> {
        let gens = self.generating_sequence();
        let mut out = Vec::new();
        let mut partial = vec![u16::MAX; self.order];
        partial[0] = 0;
        self.extend_automorphism(&gens, 0, &mut partial, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        gens: &[u16],
        pos: usize,
        partial: &mut Vec<u16>,
        out: &mut Vec<GroupHom>,
    ) {
        if pos == gens.len() {
            let image = partial.clone();
            let mut seen = vec![false; self.order];
            if image.iter().all(|&x| {
                let ok = x != u16::MAX && !seen[x as usize];
                if x != u16::MAX {
                    seen[x as usize] = true;
                }
                ok
            }) {
                let hom = GroupHom { image };
                if hom.is_homomorphism(self, self) {
                    out.push(hom);
                }
            }
            return;
        }
        let g = gens[pos];
        let g_ord = self.element_order(g);
        for cand in 0..self.order as u16 {
            if self.element_order(cand) != g_ord {
                continue;
            }
            let snapshot = partial.clone();
            if self.try_assign(g, cand, partial) {
                self.extend_automorphism(gens, pos + 1, partial, out);
            }
            *partial = snapshot;
        }
    }

    /// Extends a partial map by `g ↦ img` and closes it under products,
    /// failing on any inconsistency. `partial` must already be closed.
    fn try_assign(&self, g: u16, img: u16, partial: &mut Vec<u16>) -> bool {
        self.try_assign_into(self, g, img, partial)
    }

    /// Searches for an isomorphism; `None` when the groups are not isomorphic.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<GroupHom> {
        if self.order != other.order {
            return None;
        }
        let mut mine: Vec<u16> = self.element_orders.clone();
        let mut theirs: Vec<u16> = other.element_orders.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return None;
        }
        let gens = self.generating_sequence();
        let mut partial = vec![u16::MAX; self.order];
        partial[0] = 0;
        self.extend_isomorphism(other, &gens, 0, &mut partial)
    }

    fn extend_isomorphism(
        &self,
        other: &FiniteGroup,
        gens: &[u16],
        pos: usize,
        partial: &mut Vec<u16>,
    ) -> Option<GroupHom> {
        if pos == gens.len() {
            let image = partial.clone();
            if image.iter().any(|&x| x == u16::MAX) {
                return None;
            }
            let mut seen = vec![false; self.order];
            for &x in &image {
                if seen[x as usize] {
                    return None;
                }
                seen[x as usize] = true;
            }
            let hom = GroupHom { image };
            return hom.is_homomorphism(self, other).then_some(hom);
        }
        let g = gens[pos];
        let g_ord = self.element_order(g);
        for cand in 0..other.order as u16 {
            if other.element_order(cand) != g_ord {
                continue;
            }
            let snapshot = partial.clone();
            if self.try_assign_into(other, g, cand, partial) {
                if let Some(h) = self.extend_isomorphism(other, gens, pos + 1, partial) {
                    return Some(h);
                }
            }
            *partial = snapshot;
        }
        None
    }

    fn try_assign_into(
        &self,
        other: &FiniteGroup,
        g: u16,
        img: u16,
        partial: &mut Vec<u16>,
    ) -> bool {
        if partial[g as usize] != u16::MAX {
            return partial[g as usize] == img;
        }
        let mut assigned: Vec<u16> = (0..self.order as u16)
            .filter(|&x| partial[x as usize] != u16::MAX)
            .collect();
        partial[g as usize] = img;
        assigned.push(g);
        let mut queue = vec![g];
        while let Some(x) = queue.pop() {
            let fx = partial[x as usize];
            // pair x with everything assigned so far (including itself);
            // later discoveries pair with x when they are popped
            let len = assigned.len();
            for i in 0..len {
                let y = assigned[i];
                let fy = partial[y as usize];
                for (p, fp) in [
                    (self.mul(x, y), other.mul(fx, fy)),
                    (self.mul(y, x), other.mul(fy, fx)),
                ] {
                    let cur = partial[p as usize];
                    if cur == u16::MAX {
                        partial[p as usize] = fp;
                        assigned.push(p);
                        queue.push(p);
                    } else if cur != fp {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Sorted element-index list of a subgroup of some parent group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subgroup {
    pub elements: Vec<u16>,
}

impl Subgroup {
    pub fn contains(&self, g: u16) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A homomorphism given by its image table; `image[g]` is the image of `g`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom {
    pub image: Vec<u16>,
}

impl GroupHom {
    pub fn identity(order: usize) -> Self {
        GroupHom {
            image: (0..order as u16).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, g: u16) -> u16 {
        self.image[g as usize]
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.image.len() != source.order() || self.image[0] != 0 {
            return false;
        }
        for a in 0..source.order() as u16 {
            for b in 0..source.order() as u16 {
                if self.image[source.mul(a, b) as usize]
                    != target.mul(self.image[a as usize], self.image[b as usize])
                {
                    return false;
                }
            }
        }
        true
    }

    /// `self ∘ first`, mapping through `first` and then `self`.
    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            image: first.image.iter().map(|&g| self.image[g as usize]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        self.image.iter().all(|&x| {
            let ok = (x as usize) < seen.len() && !seen[x as usize];
            if ok {
                seen[x as usize] = true;
            }
            ok
        })
    }

    pub fn inverse(&self) -> GroupHom {
        let mut image = vec![0u16; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u16;
        }
        GroupHom { image }
    }
}

/// Generates the group closure of permutations, elements ordered by
/// breadth-first word order from the identity. Returns the group and
/// the permutation realizing each element.
pub fn group_from_generators_with_elements(
    generators: &[Perm],
    bound: usize,
) -> Result<(FiniteGroup, Vec<Perm>), GroupError> {
    let degree = generators.iter().map(|g| g.degree()).max().unwrap_or(1);
    let id = Perm::identity(degree);
    let mut elements: Vec<Perm> = vec![id.clone()];
    let mut index: HashMap<Perm, u16> = HashMap::new();
    index.insert(id, 0);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for g in generators {
            let next = current.compose(g);
            if !index.contains_key(&next) {
                if elements.len() >= bound {
                    return Err(GroupError::ClosureBound(bound));
                }
                index.insert(next.clone(), elements.len() as u16);
                elements.push(next);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = index[&elements[a].compose(&elements[b])];
        }
    }
    Ok((FiniteGroup::from_mul_table(n, mul), elements))
}

pub fn group_from_generators(generators: &[Perm], bound: usize) -> Result<FiniteGroup, GroupError> {
    group_from_generators_with_elements(generators, bound).map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_generators;

    fn dihedral8() -> FiniteGroup {
        let gens = parse_generators("(1,2,3,4);(1,3)").unwrap();
        group_from_generators(&gens, CLOSURE_BOUND).unwrap()
    }

    fn sym3() -> FiniteGroup {
        let gens = parse_generators("(1,2,3);(1,2)").unwrap();
        group_from_generators(&gens, CLOSURE_BOUND).unwrap()
    }

    fn quaternion8() -> FiniteGroup {
        let gens = parse_generators("(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6)").unwrap();
        group_from_generators(&gens, CLOSURE_BOUND).unwrap()
    }

    #[test]
    fn single_involution_generates_c2() {
        let gens = parse_generators("(1,2)").unwrap();
        let g = group_from_generators(&gens, CLOSURE_BOUND).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = group_from_generators(&[], CLOSURE_BOUND).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn dihedral_closure_has_order_8() {
        // brute-force closure enumeration oracle: the 8 words
        // id, r, r2, r3, s, sr, sr2, sr3 exhaust the closure
        let g = dihedral8();
        assert_eq!(g.order(), 8);
        assert!(g.check_axioms());
    }

    #[test]
    fn closure_bound_is_enforced() {
        let gens = parse_generators("(1,2,3,4,5,6,7)").unwrap();
        assert_eq!(
            group_from_generators(&gens, 5),
            Err(GroupError::ClosureBound(5))
        );
    }

    #[test]
    fn conjugacy_classes_of_abelian_group_are_singletons() {
        let g = FiniteGroup::cyclic(4);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|(_, m)| m.len() == 1));
    }

    #[test]
    fn quaternion_classes_brute_force() {
        let g = quaternion8();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|(_, m)| m.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn sym3_classes_brute_force() {
        let mut sizes: Vec<usize> = sym3().conjugacy_classes().iter().map(|(_, m)| m.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn center_of_quaternion_has_order_2() {
        assert_eq!(quaternion8().center().order(), 2);
    }

    #[test]
    fn centralizer_in_abelian_group_is_everything() {
        let g = FiniteGroup::cyclic(6);
        for x in 0..6 {
            assert_eq!(g.centralizer(x).order(), 6);
        }
    }

    #[test]
    fn quotient_of_dihedral_by_center_is_klein() {
        let g = dihedral8();
        let (q, pr) = g.quotient(&g.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 2);
        assert!(pr.is_homomorphism(&g, &q));
        // kernel is exactly the center
        let kernel: Vec<u16> = (0..8).filter(|&x| pr.apply(x) == 0).collect();
        assert_eq!(kernel, g.center().elements);
    }

    #[test]
    fn quotient_rejects_non_normal_subgroup() {
        let g = sym3();
        let s = g.closure(&[g
            .element_orders()
            .iter()
            .position(|&o| o == 2)
            .unwrap() as u16]);
        assert_eq!(g.quotient(&s).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroup::cyclic(2).automorphisms().len(), 1);
        assert_eq!(FiniteGroup::cyclic(8).automorphisms().len(), 4);
        assert_eq!(quaternion8().automorphisms().len(), 24);
        assert_eq!(sym3().automorphisms().len(), 6);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = dihedral8();
        let autos = g.automorphisms();
        assert_eq!(autos.len(), 8);
        let set: std::collections::HashSet<Vec<u16>> =
            autos.iter().map(|a| a.image.clone()).collect();
        for a in &autos {
            assert!(set.contains(&a.inverse().image));
            for b in &autos {
                assert!(set.contains(&a.compose(b).image));
            }
        }
    }

    #[test]
    fn cyclic_subgroups_of_c2() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(g.cyclic_subgroups().len(), 2);
    }

    #[test]
    fn abelian_group_has_all_subgroups_abelian_normal() {
        let g = FiniteGroup::cyclic(12);
        let all = g.all_subgroups();
        let an = g.abelian_normal_subgroups();
        assert_eq!(all.len(), an.len());
        // subgroup count of Z/12 is the number of divisors of 12
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn isomorphism_distinguishes_c4_from_klein() {
        let c4 = FiniteGroup::cyclic(4);
        let klein = FiniteGroup::cyclic(2)
            .direct_product(&FiniteGroup::cyclic(2))
            .unwrap();
        assert!(c4.isomorphism_to(&klein).is_none());
        assert!(klein.isomorphism_to(&c4).is_none());
    }

    #[test]
    fn isomorphism_finds_witness_for_d8() {
        let d8 = dihedral8();
        // same group generated from different permutations
        let gens = parse_generators("(1,2,3,4)(5,6);(1,3)(5,6)").unwrap();
        let other = group_from_generators(&gens, CLOSURE_BOUND).unwrap();
        assert_eq!(other.order(), 8);
        let iso = d8.isomorphism_to(&other).expect("isomorphic");
        assert!(iso.is_homomorphism(&d8, &other));
        assert!(iso.is_bijective());
    }

    #[test]
    fn self_isomorphism_is_found() {
        let g = sym3();
        let iso = g.isomorphism_to(&g).unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn direct_product_orders_and_bounds() {
        let c2 = FiniteGroup::cyclic(2);
        let klein = c2.direct_product(&c2).unwrap();
        assert_eq!(klein.order(), 4);
        assert_eq!(klein.exponent(), 2);
        let trivial = FiniteGroup::trivial();
        let same = trivial.direct_product(&sym3()).unwrap();
        assert!(same.isomorphism_to(&sym3()).is_some());
    }

    #[test]
    fn element_orders_match_definition() {
        let g = dihedral8();
        for x in 0..8u16 {
            let o = g.element_order(x);
            assert_eq!(g.pow(x, o as i64), 0);
            for k in 1..o {
                assert_ne!(g.pow(x, k as i64), 0);
            }
        }
    }
}
