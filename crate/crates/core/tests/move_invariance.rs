mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use valex::fuzz::{plant_triangle, random_move, MoveKind};
use valex::gauss::{parse_diagram, GaussDiagram};
use valex::sawollek::{delta0, delta0_with, INCOMING_ARC_CONVENTION};
use valex::{LaurentPoly, UnitClass};

fn canonical(d: &GaussDiagram, mode: UnitClass) -> LaurentPoly {
    delta0(d).unwrap().raw.canonicalize(mode).poly
}

#[test]
fn random_moves_preserve_delta0() {
    let mut r3 = 0;
    for (i, (name, code, _)) in census_rows().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        let start = parse_diagram(code).unwrap();
        let want = canonical(&start, UnitClass::UpToPowersOfST);
        let soft_max = start.crossing_count() + 3;
        let mut d = start;
        for step in 0..200 {
            let (next, kind) = random_move(&mut rng, &d, soft_max);
            r3 += usize::from(kind == MoveKind::R3);
            assert_eq!(
                canonical(&next, UnitClass::UpToPowersOfST),
                want,
                "{name} step {step} {kind:?}: {} -> {}",
                d.to_code(),
                next.to_code()
            );
            d = next;
        }
    }
    assert!(r3 > 0, "the walks never reached an R3 site");
}

#[test]
fn planted_r3_moves_preserve_delta0() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, code, _) in census_rows() {
        let d = parse_diagram(code).unwrap();
        let want = canonical(&d, UnitClass::UpToPowersOfST);
        let mut done = 0;
        for _ in 0..40 {
            let Some((e, tri)) = plant_triangle(&mut rng, &d) else { continue };
            assert_eq!(canonical(&e, UnitClass::UpToPowersOfST), want, "{name} planted");
            let f = e.apply_r3(tri).unwrap();
            assert_eq!(canonical(&f, UnitClass::UpToPowersOfST), want, "{name} after R3");
            done += 1;
            if done == 3 {
                break;
            }
        }
        assert!(done > 0, "{name}: no triangle planted");
    }
}

#[test]
fn basepoint_rotations() {
    for (name, code, _) in census_rows() {
        let d = parse_diagram(code).unwrap();
        let want = canonical(&d, UnitClass::UpToMonomialSign);
        for k in 0..d.components()[0].len() {
            let r = d.rotate_component(0, k).unwrap();
            assert_eq!(canonical(&r, UnitClass::UpToMonomialSign), want, "{name} rotated by {k}");
        }
    }
}

#[test]
fn relabelings_and_block_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, code, _) in census_rows() {
        let d = parse_diagram(code).unwrap();
        let want = canonical(&d, UnitClass::UpToMonomialSign);
        let n = d.next_label();
        for _ in 0..10 {
            let mut perm: Vec<u32> = (1..n).collect();
            perm.shuffle(&mut rng);
            let r = d.relabel(|l| perm[l as usize - 1]);
            assert_eq!(canonical(&r, UnitClass::UpToMonomialSign), want, "{name} relabeled");
            let mut order: Vec<usize> = (0..d.crossing_count()).collect();
            order.shuffle(&mut rng);
            let g = delta0_with(&d, &order, INCOMING_ARC_CONVENTION).unwrap();
            assert_eq!(g.raw.canonicalize(UnitClass::UpToMonomialSign).poly, want, "{name} reordered");
        }
    }
}
