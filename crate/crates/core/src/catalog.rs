//! The catalog of all groups of order 2..31.
//!
//! Entries carry permutation generators; the generated Cayley tables are
//! cached per process so repeated calls return identical tables.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::groups::{group_from_generators, FiniteGroup, GroupError, CLOSURE_BOUND};
use crate::perm::{parse_generators, Perm};

/// One catalog line: `(order, index)` is the unique key.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub order: usize,
    pub index: usize,
    pub name: String,
    pub generators: Vec<Perm>,
}

const CATALOG_TEXT: &str = include_str!("../data/catalog.txt");

/// Number of isomorphism classes of groups per order 2..=31.
pub const GROUP_COUNTS: [usize; 30] = [
    1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1,
];

pub fn parse_catalog(text: &str) -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let order: usize = parts.next().unwrap().parse().expect("catalog order");
        let index: usize = parts.next().unwrap().parse().expect("catalog index");
        let name = parts.next().expect("catalog name").to_string();
        let gens = parts.next().expect("catalog generators");
        let generators = parse_generators(gens).expect("catalog cycle notation");
        entries.push(CatalogEntry {
            order,
            index,
            name,
            generators,
        });
    }
    entries
}

fn entries() -> &'static Vec<CatalogEntry> {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| parse_catalog(CATALOG_TEXT))
}

fn group_cache() -> &'static std::sync::Mutex<HashMap<(usize, usize), FiniteGroup>> {
    static CACHE: OnceLock<std::sync::Mutex<HashMap<(usize, usize), FiniteGroup>>> =
        OnceLock::new();
    CACHE.get_or_init(|| std::sync::Mutex::new(HashMap::new()))
}

/// A stable fingerprint of the catalog text, used to key result caches.
pub fn catalog_fingerprint() -> u64 {
    // FNV-1a, deterministic across runs
    let mut h: u64 = 0xcbf29ce484222325;
    for b in CATALOG_TEXT.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn catalog_entry(order: usize, index: usize) -> Result<&'static CatalogEntry, GroupError> {
    entries()
        .iter()
        .find(|e| e.order == order && e.index == index)
        .ok_or(GroupError::UnknownEntry(order, index))
}

pub fn entries_of_order(order: usize) -> Vec<&'static CatalogEntry> {
    entries().iter().filter(|e| e.order == order).collect()
}

pub fn group_count(order: usize) -> usize {
    entries().iter().filter(|e| e.order == order).count()
}

/// The catalog group for `(order, index)`; repeated calls return identical
/// Cayley tables.
pub fn catalog_group(order: usize, index: usize) -> Result<FiniteGroup, GroupError> {
    if let Some(g) = group_cache().lock().unwrap().get(&(order, index)) {
        return Ok(g.clone());
    }
    let entry = catalog_entry(order, index)?;
    let group = group_from_generators(&entry.generators, CLOSURE_BOUND)?;
    assert_eq!(
        group.order(),
        order,
        "catalog entry {order}.{index} generates a group of order {}",
        group.order()
    );
    group_cache()
        .lock()
        .unwrap()
        .insert((order, index), group.clone());
    Ok(group)
}

/// Identifies an abstract group inside the catalog, returning `(index, iso)`.
pub fn identify(group: &FiniteGroup) -> Option<(usize, crate::groups::GroupHom)> {
    let order = group.order();
    for entry in entries_of_order(order) {
        let g = catalog_group(order, entry.index).ok()?;
        if let Some(iso) = group.isomorphism_to(&g) {
            return Some((entry.index, iso));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_order() {
        for (i, &expected) in GROUP_COUNTS.iter().enumerate() {
            let order = i + 2;
            assert_eq!(group_count(order), expected, "order {order}");
        }
    }

    #[test]
    fn every_entry_generates_its_stated_order_and_is_a_group() {
        for e in entries() {
            let g = catalog_group(e.order, e.index).unwrap();
            assert_eq!(g.order(), e.order, "{}.{} ({})", e.order, e.index, e.name);
            assert!(g.check_axioms(), "{}.{} ({})", e.order, e.index, e.name);
        }
    }

    #[test]
    fn entries_within_one_order_are_pairwise_non_isomorphic() {
        for order in 2..=31usize {
            let idxs: Vec<usize> = entries_of_order(order).iter().map(|e| e.index).collect();
            for (a, &i) in idxs.iter().enumerate() {
                for &j in &idxs[a + 1..] {
                    let gi = catalog_group(order, i).unwrap();
                    let gj = catalog_group(order, j).unwrap();
                    assert!(
                        gi.isomorphism_to(&gj).is_none(),
                        "{order}.{i} is isomorphic to {order}.{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn unknown_entry_is_rejected() {
        assert!(matches!(
            catalog_group(8, 6),
            Err(GroupError::UnknownEntry(8, 6))
        ));
        assert!(matches!(
            catalog_group(32, 1),
            Err(GroupError::UnknownEntry(32, 1))
        ));
    }

    #[test]
    fn quaternion_is_the_fourth_group_of_order_8() {
        let q8 = catalog_group(8, 4).unwrap();
        assert_eq!(q8.center().order(), 2);
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(q8.automorphisms().len(), 24);
    }

    #[test]
    fn z2_is_the_group_of_order_2() {
        let g = catalog_group(2, 1).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn elementary_abelian_is_last_of_order_16() {
        let g = catalog_group(16, 14).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn direct_product_matches_catalog_16_14() {
        let c2 = catalog_group(2, 1).unwrap();
        let e8 = catalog_group(8, 5).unwrap();
        let p = c2.direct_product(&e8).unwrap();
        let (idx, _) = identify(&p).unwrap();
        assert_eq!(idx, 14);
    }

    #[test]
    fn repeated_calls_return_identical_tables() {
        let a = catalog_group(12, 3).unwrap();
        let b = catalog_group(12, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn paper_automorphism_orders_at_8_and_27() {
        let expected8 = [4usize, 8, 8, 24, 168];
        for (i, &aut) in expected8.iter().enumerate() {
            let g = catalog_group(8, i + 1).unwrap();
            assert_eq!(g.automorphisms().len(), aut, "order 8 index {}", i + 1);
        }
        let expected27 = [18usize, 108, 432, 54, 11232];
        for (i, &aut) in expected27.iter().enumerate() {
            let g = catalog_group(27, i + 1).unwrap();
            assert_eq!(g.automorphisms().len(), aut, "order 27 index {}", i + 1);
        }
    }

    #[test]
    #[ignore = "slow: |Aut(C2^4)| = 20160 backtracking plus order-16 sweep"]
    fn paper_automorphism_orders_at_16() {
        let expected = [8usize, 96, 32, 32, 16, 16, 32, 16, 32, 192, 64, 192, 48, 20160];
        for (i, &aut) in expected.iter().enumerate() {
            let g = catalog_group(16, i + 1).unwrap();
            assert_eq!(g.automorphisms().len(), aut, "order 16 index {}", i + 1);
        }
    }

    #[test]
    fn q16_has_unique_involution() {
        let g = catalog_group(16, 9).unwrap();
        assert_eq!(g.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(g.element_orders().iter().filter(|&&o| o == 4).count(), 10);
    }

    #[test]
    fn heisenberg_has_exponent_3() {
        let g = catalog_group(27, 3).unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 3);
        let g4 = catalog_group(27, 4).unwrap();
        assert!(!g4.is_abelian());
        assert_eq!(g4.exponent(), 9);
    }

    #[test]
    fn z2_x_d8_has_13_nontrivial_abelian_normal_subgroups() {
        let g = catalog_group(16, 11).unwrap();
        let nontrivial = g
            .abelian_normal_subgroups()
            .into_iter()
            .filter(|s| s.order() > 1)
            .count();
        assert_eq!(nontrivial, 13);
    }
}
