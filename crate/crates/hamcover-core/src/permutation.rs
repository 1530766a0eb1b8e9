//! Permutations of `0..n` with cycle-structure queries.

use alloc::vec::Vec;
use core::fmt;

/// A bijection on `0..n` with its cycle decomposition precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<u32>,
    inverse: Vec<u32>,
    /// Cycles in order of smallest member, each rotated to start at it.
    cycles: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotABijection;

impl fmt::Display for NotABijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "image is not a bijection on 0..n")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotABijection {}

impl Permutation {
    pub fn from_image(image: Vec<u32>) -> Result<Self, NotABijection> {
        let n = image.len();
        let mut inverse = alloc::vec![u32::MAX; n];
        for (i, &j) in image.iter().enumerate() {
            if j as usize >= n || inverse[j as usize] != u32::MAX {
                return Err(NotABijection);
            }
            inverse[j as usize] = i as u32;
        }
        let cycles = cycle_decomposition(&image);
        Ok(Permutation { image, inverse, cycles })
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_image((0..n as u32).collect()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.image[i as usize]
    }

    pub fn inverse(&self, j: u32) -> u32 {
        self.inverse[j as usize]
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    /// Number of cycles including fixed points: `C(π)`.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// Length of the cycle containing `v` (1 for fixed points).
    pub fn cycle_length_of(&self, v: u32) -> usize {
        let mut len = 1;
        let mut u = self.apply(v);
        while u != v {
            len += 1;
            u = self.apply(u);
        }
        len
    }

    /// `π ∘ m`: first `m`, then `π`.
    pub fn compose(&self, m: &Permutation) -> Permutation {
        let image: Vec<u32> = (0..self.n() as u32).map(|i| self.apply(m.apply(i))).collect();
        Permutation::from_image(image).unwrap()
    }
}

fn cycle_decomposition(image: &[u32]) -> Vec<Vec<u32>> {
    let n = image.len();
    let mut seen = alloc::vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v as usize] {
            seen[v as usize] = true;
            cycle.push(v);
            v = image[v as usize];
        }
        cycles.push(cycle);
    }
    cycles
}
