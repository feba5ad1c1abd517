//! Permutations in cycle notation, the input format of the group catalog.

use std::fmt;

use thiserror::Error;

/// A permutation of `{0, .., degree-1}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u16>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {0} repeated within a cycle expression")]
    RepeatedPoint(usize),
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            image: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(image: Vec<u16>) -> Self {
        debug_assert!(Self::is_bijection(&image));
        Perm { image }
    }

    fn is_bijection(image: &[u16]) -> bool {
        let mut seen = vec![false; image.len()];
        image.iter().all(|&p| {
            let ok = (p as usize) < image.len() && !seen[p as usize];
            if ok {
                seen[p as usize] = true;
            }
            ok
        })
    }

    /// Parses one permutation in cycle notation with 1-based points,
    /// e.g. `(1,2,3)(4,5)`. The empty string denotes the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut image: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let body = text.trim();
        if body.is_empty() || body == "()" {
            return Ok(Perm { image });
        }
        if !body.starts_with('(') || !body.ends_with(')') {
            return Err(PermError::Parse(body.to_string()));
        }
        for cycle in body[1..body.len() - 1].split(")(") {
            let pts: Result<Vec<usize>, _> = cycle
                .split(',')
                .map(|tok| tok.trim().parse::<usize>())
                .collect();
            let pts = pts.map_err(|_| PermError::Parse(cycle.to_string()))?;
            if pts.iter().any(|&p| p == 0 || p > degree) {
                return Err(PermError::Parse(cycle.to_string()));
            }
            for &p in &pts {
                if moved[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                moved[p - 1] = true;
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                image[from] = to as u16;
            }
        }
        Ok(Perm { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.image[point as usize]
    }

    /// `self * other` acts as "apply `other` first, then `self`".
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            image: other.image.iter().map(|&p| self.image[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0u16; self.image.len()];
        for (i, &p) in self.image.iter().enumerate() {
            image[p as usize] = i as u16;
        }
        Perm { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i as u16 == p)
    }

    /// Largest moved point plus one, or 0 for the identity.
    pub fn support_bound(&self) -> usize {
        (0..self.image.len())
            .rev()
            .find(|&i| self.image[i] != i as u16)
            .map_or(0, |i| i + 1)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.image.len()];
        let mut wrote = false;
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.image[p] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses a `;`-separated generator list, sizing the domain by the largest
/// point mentioned anywhere in the list.
pub fn parse_generators(text: &str) -> Result<Vec<Perm>, PermError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut degree = 1;
    for tok in text.replace(['(', ')'], " ").split([' ', ',', ';']) {
        if let Ok(p) = tok.trim().parse::<usize>() {
            degree = degree.max(p);
        }
    }
    text.split(';').map(|g| Perm::parse(g, degree)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse("(1,2,3,4)(5,6)", 6).unwrap();
        assert_eq!(p.to_string(), "(1,2,3,4)(5,6)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(3), 0);
        assert_eq!(p.apply(5), 4);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        // (a*b)(3) = a(b(3)) = a(2) = 1
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn inverse_cancels() {
        let p = Perm::parse("(1,5,2)(3,4)", 5).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn rejects_repeated_point() {
        assert_eq!(
            Perm::parse("(1,2)(2,3)", 3),
            Err(PermError::RepeatedPoint(2))
        );
    }

    #[test]
    fn generator_list_sizes_domain() {
        let gens = parse_generators("(1,2,3,4);(1,3)").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].degree(), 4);
    }
}
