use serde::Serialize;

use super::word::{GenId, Word};
use super::{GenTag, Generator, GroupPresentation, GroupsError};
use crate::gauss::{ComponentRole, GaussDiagram, Passage, SlotRef};
use crate::zh::zh;

/// Arcs of a diagram cut at undercrossings. The basepoint of each circle sits
/// just before slot 0, so the first arc of a circle runs from its last
/// undercrossing, through the basepoint, to its first one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WirtingerArcs {
    /// Generator of the arc through each slot; at an undercrossing this is
    /// the incoming arc.
    pub arc_at: Vec<Vec<GenId>>,
    /// Generators of each circle, in order from the basepoint.
    pub arcs: Vec<Vec<GenId>>,
    pub generators: Vec<Generator>,
}

impl WirtingerArcs {
    pub fn of(d: &GaussDiagram) -> Self {
        let mut generators = Vec::new();
        let mut arc_at = Vec::with_capacity(d.component_count());
        let mut arcs = Vec::with_capacity(d.component_count());
        for (ci, slots) in d.components().iter().enumerate() {
            let tag = match d.roles()[ci] {
                ComponentRole::Omega => GenTag::Omega,
                ComponentRole::Regular => GenTag::Component(ci),
            };
            let unders = slots.iter().filter(|e| e.passage == Passage::Under).count();
            let base = generators.len();
            let ids: Vec<GenId> = (base..base + unders.max(1)).collect();
            generators.extend(ids.iter().map(|&id| Generator { id, tag }));
            let mut seen = 0;
            let mut at = Vec::with_capacity(slots.len());
            for e in slots {
                at.push(ids[seen % ids.len()]);
                if e.passage == Passage::Under {
                    seen += 1;
                }
            }
            arc_at.push(at);
            arcs.push(ids);
        }
        Self {
            arc_at,
            arcs,
            generators,
        }
    }

    fn at(&self, s: SlotRef) -> GenId {
        self.arc_at[s.component][s.position]
    }

    /// Arc leaving the undercrossing at `s`.
    fn outgoing(&self, s: SlotRef) -> GenId {
        let ids = &self.arcs[s.component];
        let j = ids.iter().position(|&g| g == self.at(s)).expect("arc on its circle");
        ids[(j + 1) % ids.len()]
    }
}

/// Wirtinger presentation: a generator per arc, and at each undercrossing
/// with incoming arc `a`, outgoing arc `b`, over arc `x` and sign `e` the
/// relator `x^e a x^-e b^-1`. Circles without undercrossings contribute a
/// free generator.
pub fn wirtinger(d: &GaussDiagram) -> GroupPresentation {
    let arcs = WirtingerArcs::of(d);
    let mut relators = Vec::with_capacity(d.crossing_count());
    for (ci, slots) in d.components().iter().enumerate() {
        for (pi, e) in slots.iter().enumerate() {
            if e.passage != Passage::Under {
                continue;
            }
            let here = SlotRef::new(ci, pi);
            let c = &d.chords()[e.chord];
            let x = arcs.at(c.over);
            let eps = c.sign.value();
            relators.push(Word::from_powers([
                (x, eps),
                (arcs.at(here), 1),
                (x, -eps),
                (arcs.outgoing(here), -1),
            ]));
        }
    }
    GroupPresentation::new(arcs.generators, relators).expect("relators use arc generators")
}

/// Reduced virtual link group, presented as the Wirtinger presentation of
/// `Zh(d)` with the ω generator tagged `Omega`.
pub fn reduced_group(d: &GaussDiagram) -> Result<GroupPresentation, GroupsError> {
    Ok(wirtinger(&zh(d)?.diagram))
}

/// Longitude of circle `comp`: walking from the basepoint, the over arc of
/// each undercrossing raised to the crossing sign, then corrected by a power
/// of the first arc so that the circle's generators have exponent sum zero.
pub fn longitude(d: &GaussDiagram, comp: usize) -> Result<Word, GroupsError> {
    if comp >= d.component_count() {
        return Err(GroupsError::BadIndex(comp));
    }
    let arcs = WirtingerArcs::of(d);
    let mut powers = Vec::new();
    for e in &d.components()[comp] {
        if e.passage == Passage::Under {
            let c = &d.chords()[e.chord];
            powers.push((arcs.at(c.over), c.sign.value()));
        }
    }
    let w = Word::from_powers(powers);
    let own = &arcs.arcs[comp];
    let sum: i32 = own.iter().map(|&g| w.exponent_sum(g)).sum();
    Ok(w.mul(&Word::power(own[0], -sum)).free_reduced())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_diagram;
    use crate::groups::Abelianization;

    const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";

    #[test]
    fn trefoil_counts() {
        let p = wirtinger(&parse_diagram(TREFOIL).unwrap());
        assert_eq!(p.generators().len(), 3);
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.to_string(), "gens: a1 a2 a3 ; rels: a3 a1 a3^-1 a2^-1 ; a1 a2 a1^-1 a3^-1 ; a2 a3 a2^-1 a1^-1");
    }

    #[test]
    fn unknot_is_free() {
        let p = wirtinger(&parse_diagram("").unwrap());
        assert_eq!(p.to_string(), "gens: a1 ; rels:");
        assert!(longitude(&parse_diagram("").unwrap(), 0).unwrap().is_empty());
        let r = reduced_group(&parse_diagram("").unwrap()).unwrap();
        assert_eq!(r.to_string(), "gens: a1 v ; rels:");
    }

    #[test]
    fn kink_longitude() {
        let d = parse_diagram("O1+U1+").unwrap();
        let l = longitude(&d, 0).unwrap();
        assert_eq!(l.exponent_sum(0), 0);
        assert!(matches!(longitude(&d, 1), Err(GroupsError::BadIndex(1))));
    }

    #[test]
    fn trefoil_longitude_is_trivial_in_abelianization() {
        let d = parse_diagram(TREFOIL).unwrap();
        let p = wirtinger(&d);
        let l = longitude(&d, 0).unwrap();
        assert!(Abelianization::graded(&p).apply(&l).is_one());
    }

    #[test]
    fn reduced_group_has_deficiency_one() {
        let d = parse_diagram("O1-O2-U1-O3+U2-O4+U3+U4+").unwrap();
        let p = reduced_group(&d).unwrap();
        assert_eq!(p.deficiency(), 1);
        assert_eq!(p.generators().iter().filter(|g| g.tag.is_omega()).count(), 1);
    }
}
