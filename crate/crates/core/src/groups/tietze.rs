use super::word::{GenId, Word};
use super::GroupPresentation;

/// Eliminates generators that occur exactly once in some relator. Each step
/// picks the shortest such relator (ties: smallest generator id, then
/// earliest relator), solves it for the generator and substitutes. Relators
/// are kept cyclically reduced and empty ones are dropped.
pub fn tietze_eliminate(p: &GroupPresentation) -> GroupPresentation {
    let mut gens = p.generators().to_vec();
    let mut rels: Vec<Word> = p
        .relators()
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|r| !r.is_empty())
        .collect();
    while let Some((ri, g)) = pick(&gens, &rels) {
        let r = rels.remove(ri);
        let value = solve(&r, g);
        gens.retain(|x| x.id != g);
        rels = rels
            .iter()
            .map(|w| w.substitute(g, &value).cyclically_reduced())
            .filter(|w| !w.is_empty())
            .collect();
    }
    GroupPresentation::new(gens, rels).expect("eliminated generators were substituted away")
}

fn pick(gens: &[super::Generator], rels: &[Word]) -> Option<(usize, GenId)> {
    let mut best: Option<(usize, GenId, usize)> = None;
    for (ri, r) in rels.iter().enumerate() {
        for g in gens {
            if r.occurrences(g.id) != 1 {
                continue;
            }
            let key = (r.len(), g.id, ri);
            if best.is_none_or(|(bi, bg, bl)| key < (bl, bg, bi)) {
                best = Some((ri, g.id, r.len()));
            }
        }
    }
    best.map(|(ri, g, _)| (ri, g))
}

/// From `u g^e v = 1`, the word equal to `g`.
fn solve(r: &Word, g: GenId) -> Word {
    let letters = r.letters();
    let i = letters.iter().position(|l| l.0 == g).expect("g occurs in r");
    let u = Word::from_powers(letters[..i].iter().map(|&(h, e)| (h, i32::from(e))));
    let v = Word::from_powers(letters[i + 1..].iter().map(|&(h, e)| (h, i32::from(e))));
    if letters[i].1 > 0 {
        u.inverse().mul(&v.inverse()).free_reduced()
    } else {
        v.mul(&u).free_reduced()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_diagram;
    use crate::groups::{elementary_ideals, wirtinger, Abelianization};

    #[test]
    fn solve_both_signs() {
        // a b c = 1  =>  b = a^-1 c^-1
        let r = Word::from_powers([(0, 1), (1, 1), (2, 1)]);
        assert_eq!(solve(&r, 1), Word::from_powers([(0, -1), (2, -1)]));
        // a b^-1 c = 1  =>  b = c a
        let r = Word::from_powers([(0, 1), (1, -1), (2, 1)]);
        assert_eq!(solve(&r, 1), Word::from_powers([(2, 1), (0, 1)]));
    }

    #[test]
    fn trefoil_shrinks() {
        let p = wirtinger(&parse_diagram("O1+U2+O3+U1+O2+U3+").unwrap());
        let q = tietze_eliminate(&p);
        assert!(q.generators().len() <= 2);
        let alpha = Abelianization::graded(&q);
        let before = &elementary_ideals(&p, &Abelianization::graded(&p), 1)[1].gcd_generator;
        let after = &elementary_ideals(&q, &alpha, 1)[1].gcd_generator;
        assert!(before.equivalent(after, Default::default()));
    }

    #[test]
    fn free_presentation_unchanged() {
        let p = wirtinger(&parse_diagram("").unwrap());
        assert_eq!(tietze_eliminate(&p), p);
    }
}
