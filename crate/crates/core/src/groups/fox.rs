use std::collections::BTreeMap;

use serde::Serialize;

use super::word::{GenId, Word};
use super::GroupPresentation;
use crate::laurent::{gcd_all, LaurentPoly, PolyMatrix};

/// Images of the generators in `Z[s^{±1}, t^{±1}]` under abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    images: BTreeMap<GenId, LaurentPoly>,
}

impl Abelianization {
    /// Regular-component generators go to `t`, ω generators to `s`.
    pub fn graded(p: &GroupPresentation) -> Self {
        let images = p
            .generators()
            .iter()
            .map(|g| {
                let x = if g.tag.is_omega() {
                    LaurentPoly::s()
                } else {
                    LaurentPoly::t()
                };
                (g.id, x)
            })
            .collect();
        Self { images }
    }

    pub fn from_images(images: impl IntoIterator<Item = (GenId, LaurentPoly)>) -> Self {
        Self {
            images: images.into_iter().collect(),
        }
    }

    pub fn image(&self, g: GenId) -> &LaurentPoly {
        &self.images[&g]
    }

    pub fn apply(&self, w: &Word) -> LaurentPoly {
        let mut m = LaurentPoly::one();
        for &(g, e) in w.letters() {
            m = &m * &self.image(g).pow(i32::from(e)).expect("generator images are units");
        }
        m
    }
}

/// Element of the integral group ring of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    fn add_term(&mut self, w: Word, c: i64) {
        let key = w.free_reduced();
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn abelianize(&self, alpha: &Abelianization) -> LaurentPoly {
        self.terms
            .iter()
            .map(|(w, &c)| alpha.apply(w).scale(i128::from(c)))
            .sum()
    }
}

/// `∂w/∂x`: `∂(uv) = ∂u + u ∂v`, `∂x = 1`, `∂x^{-1} = -x^{-1}`.
pub fn fox_derivative(w: &Word, x: GenId) -> GroupRingElement {
    let mut out = GroupRingElement::default();
    let mut prefix = Word::identity();
    for &(g, e) in w.letters() {
        let step = Word::power(g, i32::from(e));
        if g == x {
            if e > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.mul(&step), -1);
            }
        }
        prefix = prefix.mul(&step);
    }
    out
}

/// One row per relator, one column per generator, entries `(∂r/∂g)^α`.
pub fn alexander_matrix(p: &GroupPresentation, alpha: &Abelianization) -> PolyMatrix {
    let gens = p.generators();
    let col: BTreeMap<GenId, usize> = gens.iter().enumerate().map(|(j, g)| (g.id, j)).collect();
    let mut a = PolyMatrix::zeros(p.relators().len(), gens.len());
    for (i, r) in p.relators().iter().enumerate() {
        // same as abelianizing fox_derivative, one pass per relator
        let mut m = LaurentPoly::one();
        for &(g, e) in r.letters() {
            let j = col[&g];
            let x = alpha.image(g);
            if e > 0 {
                let v = a.get(i, j) + &m;
                a.set(i, j, v);
                m = &m * x;
            } else {
                m = &m * &x.pow(-1).expect("generator images are units");
                let v = a.get(i, j) - &m;
                a.set(i, j, v);
            }
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryIdeal {
    pub k: usize,
    /// Distinct nonzero minors, canonicalized up to units.
    pub generators: Vec<LaurentPoly>,
    /// Generator of the smallest principal ideal containing this one.
    pub gcd_generator: LaurentPoly,
}

/// `𝓔_0 .. 𝓔_{k_max}` of the Alexander matrix. With `n` generators, `𝓔_k` is
/// spanned by the `(n-k)`-minors; it is the whole ring once `k >= n` and zero
/// when `n-k` exceeds the number of relators.
pub fn elementary_ideals(
    p: &GroupPresentation,
    alpha: &Abelianization,
    k_max: usize,
) -> Vec<ElementaryIdeal> {
    let a = alexander_matrix(p, alpha);
    let n = a.cols();
    (0..=k_max)
        .map(|k| {
            let generators = if k >= n {
                vec![LaurentPoly::one()]
            } else if n - k > a.rows() {
                Vec::new()
            } else {
                let mut g: Vec<LaurentPoly> = a
                    .minors(n - k)
                    .expect("size checked")
                    .into_iter()
                    .filter(|m| !m.is_zero())
                    .map(|m| m.canonicalize(Default::default()).poly)
                    .collect();
                g.sort();
                g.dedup();
                g
            };
            let gcd_generator = gcd_all(&generators);
            ElementaryIdeal {
                k,
                generators,
                gcd_generator,
            }
        })
        .collect()
}
