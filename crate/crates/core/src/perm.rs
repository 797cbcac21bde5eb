use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A permutation of `0..m`, acting on the right: `x^(gh) = (x^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidTable(format!(
                    "image list is not a permutation of 0..{m}"
                )));
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Build from cycles on `m` points, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x >= m || y >= m {
                    return Err(Error::InvalidTable(format!("cycle point out of range 0..{m}")));
                }
                images[x] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (0..m as u32).collect();
        images.shuffle(rng);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `g^-1 self g`, i.e. the map `x -> g(self(g^-1(x)))`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[y as usize];
        }
        Perm { images }
    }

    pub fn order(&self) -> u64 {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut lcm = 1u64;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lcm = num_integer::lcm(lcm, len);
        }
        lcm
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The one-line image form `p: i0 i1 ... i{m-1}` used in JSON reports.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("p:")?;
        for x in &self.images {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_action() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap().order(), 6);
    }

    #[test]
    fn display_is_image_list() {
        let p = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p.to_string(), "p: 1 2 0");
    }

    #[test]
    fn conjugation_matches_definition() {
        let f = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let g = Perm::from_cycles(4, &[&[0, 2]]).unwrap();
        let c = f.conjugate_by(&g);
        for x in 0..4 {
            assert_eq!(c.apply(g.apply(x)), g.apply(f.apply(x)));
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }
}
