//! Random diagrams and random Reidemeister moves for property tests.
//!
//! The `gauss` module applies moves only at sites it is handed; this module
//! finds the sites.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::gauss::{
    GaussCode, GaussDiagram, Passage, R1Kind, R2Orientation, Sign, SlotRef, Token,
};

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A uniformly shuffled knot code with `n` crossings. Every Gauss code is
/// realized by some virtual knot, so the result is always valid.
pub fn random_knot<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GaussDiagram {
    random_link(rng, n, 1)
}

/// Random `n`-crossing code spread over `components` circles (some may end
/// up empty).
pub fn random_link<R: Rng + ?Sized>(rng: &mut R, n: usize, components: usize) -> GaussDiagram {
    let mut tokens = Vec::with_capacity(2 * n);
    for label in 1..=n as u32 {
        let sign = random_sign(rng);
        for passage in [Passage::Over, Passage::Under] {
            tokens.push(Token {
                passage,
                label,
                sign,
            });
        }
    }
    tokens.shuffle(rng);
    let mut comps = vec![Vec::new(); components.max(1)];
    for (i, t) in tokens.into_iter().enumerate() {
        // keep the first circles nonempty when there is enough material
        let c = if i < comps.len() { i } else { rng.gen_range(0..comps.len()) };
        comps[c].push(t);
    }
    let code = GaussCode::new(comps).expect("each label once over, once under");
    GaussDiagram::from_code(&code)
}

/// Every gap of every circle.
pub fn gaps(d: &GaussDiagram) -> Vec<SlotRef> {
    d.components()
        .iter()
        .enumerate()
        .flat_map(|(c, slots)| (0..=slots.len()).map(move |p| SlotRef::new(c, p)))
        .collect()
}

/// Chords removable by an inverse R1 move.
pub fn r1_removals(d: &GaussDiagram) -> Vec<usize> {
    (0..d.crossing_count())
        .filter(|&c| d.undo_r1(c).is_ok())
        .collect()
}

/// Chord pairs removable by an inverse R2 move.
pub fn r2_removals(d: &GaussDiagram) -> Vec<(usize, usize)> {
    (0..d.crossing_count())
        .tuple_combinations()
        .filter(|&(a, b)| d.undo_r2(a, b).is_ok())
        .collect()
}

fn neighbours(d: &GaussDiagram, at: SlotRef) -> [SlotRef; 2] {
    let len = d.components()[at.component].len();
    let prev = SlotRef::new(at.component, (at.position + len - 1) % len);
    [prev, d.next_slot(at)]
}

/// Chord triples accepted by `apply_r3`. Candidates are triangles in the
/// graph joining chords with neighbouring endpoints.
pub fn r3_sites(d: &GaussDiagram) -> Vec<[usize; 3]> {
    let n = d.crossing_count();
    let mut adj = vec![vec![false; n]; n];
    for c in d.chords() {
        for end in [c.over, c.under] {
            for nb in neighbours(d, end) {
                let o = d.endpoint(nb).chord;
                let me = d.endpoint(end).chord;
                if o != me {
                    adj[me][o] = true;
                    adj[o][me] = true;
                }
            }
        }
    }
    (0..n)
        .tuple_combinations()
        .filter(|&(a, b, c)| adj[a][b] && adj[b][c] && adj[a][c])
        .map(|(a, b, c)| [a, b, c])
        .filter(|&t| d.apply_r3(t).is_ok())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R1Insert,
    R1Remove,
    R2Insert,
    R2Remove,
    R3,
}

fn random_r1<R: Rng + ?Sized>(rng: &mut R, d: &GaussDiagram) -> GaussDiagram {
    let site = *gaps(d).choose(rng).expect("at least one gap");
    let kind = if rng.gen() {
        R1Kind::OverFirst
    } else {
        R1Kind::UnderFirst
    };
    d.apply_r1(site, random_sign(rng), kind).expect("gap is valid")
}

fn random_r2<R: Rng + ?Sized>(rng: &mut R, d: &GaussDiagram) -> GaussDiagram {
    let g = gaps(d);
    let over = *g.choose(rng).expect("at least one gap");
    let under = *g.choose(rng).expect("at least one gap");
    d.apply_r2(over, under, random_sign(rng), random_orientation(rng))
        .expect("gaps are valid")
}

/// One random move. Insertions are favoured while the diagram has fewer
/// than `soft_max` crossings and removals afterwards; R3 is taken whenever
/// drawn and available.
pub fn random_move<R: Rng + ?Sized>(
    rng: &mut R,
    d: &GaussDiagram,
    soft_max: usize,
) -> (GaussDiagram, MoveKind) {
    let grow = d.crossing_count() < soft_max;
    loop {
        match rng.gen_range(0..5) {
            0 if grow => return (random_r1(rng, d), MoveKind::R1Insert),
            1 if grow => return (random_r2(rng, d), MoveKind::R2Insert),
            2 => {
                if let Some(&c) = r1_removals(d).choose(rng) {
                    return (d.undo_r1(c).expect("listed"), MoveKind::R1Remove);
                }
            }
            3 => {
                if let Some(&(a, b)) = r2_removals(d).choose(rng) {
                    return (d.undo_r2(a, b).expect("listed"), MoveKind::R2Remove);
                }
            }
            4 => {
                if let Some(&t) = r3_sites(d).choose(rng) {
                    return (d.apply_r3(t).expect("listed"), MoveKind::R3);
                }
            }
            _ if !grow && d.crossing_count() == 0 => {
                return (random_r1(rng, d), MoveKind::R1Insert);
            }
            _ => {}
        }
    }
}

fn random_orientation<R: Rng + ?Sized>(rng: &mut R) -> R2Orientation {
    if rng.gen() {
        R2Orientation::Parallel
    } else {
        R2Orientation::Antiparallel
    }
}

/// Creates an R3 triangle with three R2 moves, which leave the class of the
/// diagram unchanged: strand `x` over strand `y`, then `z` over `x` between
/// the two new over endpoints, then `z` over `y` between the two new under
/// endpoints of the first bigon. Signs and orientations are redrawn until
/// `apply_r3` accepts the triangle. Returns the diagram and the triangle.
pub fn plant_triangle<R: Rng + ?Sized>(
    rng: &mut R,
    d: &GaussDiagram,
) -> Option<(GaussDiagram, [usize; 3])> {
    let g = gaps(d);
    for _ in 0..64 {
        let (x, y, z) = (*g.choose(rng)?, *g.choose(rng)?, *g.choose(rng)?);
        let l1 = d.next_label();
        let e1 = d
            .apply_r2(x, y, random_sign(rng), random_orientation(rng))
            .ok()?;
        let over1 = chord_by_label(&e1, l1)?.over;
        let e2 = e1
            .apply_r2(z, gap_after(over1), random_sign(rng), random_orientation(rng))
            .ok()?;
        let l2 = e1.next_label();
        let over2 = chord_by_label(&e2, l2)?.over;
        let under1 = chord_by_label(&e2, l1)?.under;
        // the other under endpoint of the first bigon sits on one side of under1
        let partner_next = e2.chords()[e2.endpoint(e2.next_slot(under1)).chord].label == l1 + 1;
        let y_gap = if partner_next { gap_after(under1) } else { under1 };
        let e3 = e2
            .apply_r2(gap_after(over2), y_gap, random_sign(rng), random_orientation(rng))
            .ok()?;
        let l3 = e2.next_label();
        let idx = |label: u32| e3.chords().iter().position(|c| c.label == label);
        let tri = [idx(l1)?, idx(l2)?, idx(l3)?];
        if e3.apply_r3(tri).is_ok() {
            return Some((e3, tri));
        }
    }
    None
}

fn gap_after(at: SlotRef) -> SlotRef {
    SlotRef::new(at.component, at.position + 1)
}

fn chord_by_label(d: &GaussDiagram, label: u32) -> Option<&crate::gauss::Chord> {
    d.chords().iter().find(|c| c.label == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_codes_are_knots() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..7 {
            let d = random_knot(&mut rng, n);
            assert!(d.is_knot());
            assert_eq!(d.crossing_count(), n);
        }
        let l = random_link(&mut rng, 4, 3);
        assert_eq!(l.component_count(), 3);
    }

    #[test]
    fn removal_sites() {
        let d = crate::gauss::parse_diagram("O1+U1+O2-O3+U2-U3+").unwrap();
        assert_eq!(r1_removals(&d), vec![0]);
        assert_eq!(r2_removals(&d), vec![(1, 2)]);
    }

    #[test]
    fn planting_yields_r3_sites() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = crate::gauss::parse_diagram("O1-O2-U1-O3+U2-O4+U3+U4+").unwrap();
        let mut planted = 0;
        for _ in 0..20 {
            if let Some((e, tri)) = plant_triangle(&mut rng, &d) {
                assert_eq!(e.crossing_count(), d.crossing_count() + 6);
                let mut t = tri;
                t.sort();
                assert!(r3_sites(&e).contains(&t));
                planted += 1;
            }
        }
        assert!(planted > 0);
    }

    #[test]
    fn random_moves_terminate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut d = crate::gauss::parse_diagram("").unwrap();
        for _ in 0..50 {
            d = random_move(&mut rng, &d, 6).0;
        }
        assert!(d.is_knot());
    }
}
