use serde::{Deserialize, Serialize};

pub type GenId = usize;

/// A word in the generators; each letter has exponent `+1` or `-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<(GenId, i8)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(g: GenId) -> Self {
        Self::power(g, 1)
    }

    /// `g^k`, spelled out letter by letter.
    pub fn power(g: GenId, k: i32) -> Self {
        let e = if k < 0 { -1 } else { 1 };
        Self {
            letters: vec![(g, e); k.unsigned_abs() as usize],
        }
    }

    /// Letters with arbitrary nonzero exponents, expanded to `±1` steps.
    pub fn from_powers(powers: impl IntoIterator<Item = (GenId, i32)>) -> Self {
        let mut w = Self::identity();
        for (g, k) in powers {
            w.letters.extend(Self::power(g, k).letters);
        }
        w
    }

    pub fn letters(&self) -> &[(GenId, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn exponent_sum(&self, g: GenId) -> i32 {
        self.letters
            .iter()
            .filter(|l| l.0 == g)
            .map(|l| i32::from(l.1))
            .sum()
    }

    pub fn occurrences(&self, g: GenId) -> usize {
        self.letters.iter().filter(|l| l.0 == g).count()
    }

    pub fn free_reduced(&self) -> Self {
        let mut out: Vec<(GenId, i8)> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&(g, e)) if g == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Self { letters: out }
    }

    /// Freely reduced, then with cancelling first/last letters stripped.
    pub fn cyclically_reduced(&self) -> Self {
        let w = self.free_reduced().letters;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo].0 == w[hi - 1].0 && w[lo].1 == -w[hi - 1].1 {
            lo += 1;
            hi -= 1;
        }
        Self {
            letters: w[lo..hi].to_vec(),
        }
    }

    /// Replaces every occurrence of `g` by `w` (and `g^-1` by `w^-1`).
    pub fn substitute(&self, g: GenId, w: &Word) -> Self {
        let inv = w.inverse();
        let mut letters = Vec::with_capacity(self.letters.len());
        for &(h, e) in &self.letters {
            if h != g {
                letters.push((h, e));
            } else if e > 0 {
                letters.extend_from_slice(&w.letters);
            } else {
                letters.extend_from_slice(&inv.letters);
            }
        }
        Self { letters }
    }

    /// Runs of one generator collapsed into powers.
    pub fn syllables(&self) -> Vec<(GenId, i32)> {
        let mut out: Vec<(GenId, i32)> = Vec::new();
        for &(g, e) in &self.letters {
            match out.last_mut() {
                Some((h, k)) if *h == g && (*k > 0) == (e > 0) => *k += i32::from(e),
                _ => out.push((g, i32::from(e))),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        let w = Word::from_powers([(0, 1), (1, 1), (1, -1), (2, 1), (0, -1)]);
        assert_eq!(w.free_reduced(), Word::from_powers([(0, 1), (2, 1), (0, -1)]));
        assert_eq!(w.cyclically_reduced(), Word::generator(2));
        assert!(w.mul(&w.inverse()).free_reduced().is_empty());
    }

    #[test]
    fn substitution_and_sums() {
        let w = Word::from_powers([(0, 2), (1, -1)]);
        let v = w.substitute(1, &Word::from_powers([(2, 1), (3, 1)]));
        assert_eq!(v, Word::from_powers([(0, 2), (3, -1), (2, -1)]));
        assert_eq!(v.exponent_sum(0), 2);
        assert_eq!(v.occurrences(3), 1);
        assert_eq!(Word::from_powers([(0, 3), (0, -1)]).syllables(), vec![(0, 3), (0, -1)]);
    }
}
