use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::code::{GaussCode, Passage, Sign, Token};
use super::GaussError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentRole {
    Regular,
    Omega,
}

/// Position of one endpoint: component index and 0-based slot on its circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlotRef {
    pub component: usize,
    pub position: usize,
}

impl SlotRef {
    pub fn new(component: usize, position: usize) -> Self {
        Self {
            component,
            position,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Endpoint {
    pub chord: usize,
    pub passage: Passage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chord {
    pub label: u32,
    pub sign: Sign,
    pub over: SlotRef,
    pub under: SlotRef,
}

/// Gauss diagram of a virtual link: oriented circles carrying chord endpoints.
///
/// Chords are numbered by order of first appearance when the circles are read
/// in order from slot 0; that numbering is the crossing order used by every
/// invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussDiagram {
    components: Vec<Vec<Endpoint>>,
    chords: Vec<Chord>,
    roles: Vec<ComponentRole>,
}

impl GaussDiagram {
    pub fn from_code(code: &GaussCode) -> Self {
        let roles = vec![ComponentRole::Regular; code.components().len()];
        Self::from_tokens(code.components(), roles)
    }

    /// Builds from token lists assumed valid (each label once as O, once as U).
    pub(crate) fn from_tokens(tokens: &[Vec<Token>], roles: Vec<ComponentRole>) -> Self {
        debug_assert_eq!(tokens.len(), roles.len());
        let mut index: HashMap<u32, usize> = HashMap::new();
        let mut chords: Vec<Chord> = Vec::new();
        let mut components = Vec::with_capacity(tokens.len());
        for (ci, comp) in tokens.iter().enumerate() {
            let mut slots = Vec::with_capacity(comp.len());
            for (pi, tok) in comp.iter().enumerate() {
                let here = SlotRef::new(ci, pi);
                let id = *index.entry(tok.label).or_insert_with(|| {
                    chords.push(Chord {
                        label: tok.label,
                        sign: tok.sign,
                        over: here,
                        under: here,
                    });
                    chords.len() - 1
                });
                match tok.passage {
                    Passage::Over => chords[id].over = here,
                    Passage::Under => chords[id].under = here,
                }
                slots.push(Endpoint {
                    chord: id,
                    passage: tok.passage,
                });
            }
            components.push(slots);
        }
        Self {
            components,
            chords,
            roles,
        }
    }

    /// Readback: walk each circle and emit its tokens.
    pub fn to_tokens(&self) -> Vec<Vec<Token>> {
        self.components
            .iter()
            .map(|slots| {
                slots
                    .iter()
                    .map(|e| Token {
                        passage: e.passage,
                        label: self.chords[e.chord].label,
                        sign: self.chords[e.chord].sign,
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_code(&self) -> GaussCode {
        GaussCode::new(self.to_tokens()).expect("diagram tokens are always valid")
    }

    /// Rebuilds a diagram from edited token lists, renumbering chords.
    pub(crate) fn rebuilt(&self, tokens: Vec<Vec<Token>>, roles: Vec<ComponentRole>) -> Self {
        Self::from_tokens(&tokens, roles)
    }

    pub fn components(&self) -> &[Vec<Endpoint>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn crossing_count(&self) -> usize {
        self.chords.len()
    }

    pub fn roles(&self) -> &[ComponentRole] {
        &self.roles
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn endpoint(&self, at: SlotRef) -> Endpoint {
        self.components[at.component][at.position]
    }

    /// Slot following `at` on its circle.
    pub fn next_slot(&self, at: SlotRef) -> SlotRef {
        let len = self.components[at.component].len();
        SlotRef::new(at.component, (at.position + 1) % len)
    }

    pub fn writhe(&self) -> i32 {
        self.chords.iter().map(|c| c.sign.value()).sum()
    }

    pub fn next_label(&self) -> u32 {
        self.chords.iter().map(|c| c.label).max().map_or(1, |m| m + 1)
    }

    pub fn with_roles(mut self, roles: Vec<ComponentRole>) -> Result<Self, GaussError> {
        if roles.len() != self.components.len() {
            return Err(GaussError::BadIndex(roles.len()));
        }
        self.roles = roles;
        Ok(self)
    }

    /// Removes component `idx` and every chord with an endpoint on it.
    pub fn delete_component(&self, idx: usize) -> Result<GaussDiagram, GaussError> {
        if idx >= self.components.len() {
            return Err(GaussError::BadIndex(idx));
        }
        let doomed: Vec<bool> = self
            .chords
            .iter()
            .map(|c| c.over.component == idx || c.under.component == idx)
            .collect();
        let mut tokens = self.to_tokens();
        let mut roles = self.roles.clone();
        tokens.remove(idx);
        roles.remove(idx);
        let keep: Vec<Vec<Token>> = self
            .components
            .iter()
            .enumerate()
            .filter(|(ci, _)| *ci != idx)
            .zip(tokens)
            .map(|((_, slots), toks)| {
                slots
                    .iter()
                    .zip(toks)
                    .filter(|(e, _)| !doomed[e.chord])
                    .map(|(_, t)| t)
                    .collect()
            })
            .collect();
        Ok(self.rebuilt(keep, roles))
    }

    /// Same diagram read from another basepoint on one component.
    pub fn rotate_component(&self, idx: usize, by: usize) -> Result<GaussDiagram, GaussError> {
        if idx >= self.components.len() {
            return Err(GaussError::BadIndex(idx));
        }
        let mut tokens = self.to_tokens();
        let comp = &mut tokens[idx];
        if !comp.is_empty() {
            let k = by % comp.len();
            comp.rotate_left(k);
        }
        Ok(self.rebuilt(tokens, self.roles.clone()))
    }

    /// Reorders the components (`order[i]` is the old index of new component i).
    pub fn permute_components(&self, order: &[usize]) -> Result<GaussDiagram, GaussError> {
        let n = self.components.len();
        if order.len() != n || !order.iter().copied().sorted().eq(0..n) {
            return Err(GaussError::BadIndex(order.len()));
        }
        let tokens = self.to_tokens();
        let new_tokens = order.iter().map(|&i| tokens[i].clone()).collect();
        let roles = order.iter().map(|&i| self.roles[i]).collect();
        Ok(self.rebuilt(new_tokens, roles))
    }

    /// Renames crossing labels; combinatorics are untouched.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> GaussDiagram {
        let mut d = self.clone();
        for c in &mut d.chords {
            c.label = f(c.label);
        }
        d
    }

    /// Isomorphism of Gauss diagrams with components kept in order: some
    /// choice of basepoint per component and a bijection of chords matches
    /// passages and signs.
    pub fn is_isomorphic(&self, other: &GaussDiagram) -> bool {
        if self.roles != other.roles
            || self.chords.len() != other.chords.len()
            || self
                .components
                .iter()
                .zip(&other.components)
                .any(|(a, b)| a.len() != b.len())
        {
            return false;
        }
        let target = normalized(&other.to_tokens());
        let tokens = self.to_tokens();
        let ranges = tokens.iter().map(|c| 0..c.len().max(1));
        ranges.multi_cartesian_product().any(|rot| {
            let rotated: Vec<Vec<Token>> = tokens
                .iter()
                .zip(&rot)
                .map(|(c, &k)| {
                    let mut c = c.clone();
                    if !c.is_empty() {
                        c.rotate_left(k);
                    }
                    c
                })
                .collect();
            normalized(&rotated) == target
        }) || (tokens.is_empty() && other.components.is_empty())
    }
}

/// Labels replaced by order of first appearance.
fn normalized(tokens: &[Vec<Token>]) -> Vec<Vec<Token>> {
    let mut map: HashMap<u32, u32> = HashMap::new();
    tokens
        .iter()
        .map(|c| {
            c.iter()
                .map(|t| {
                    let n = map.len() as u32 + 1;
                    let label = *map.entry(t.label).or_insert(n);
                    Token { label, ..*t }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(code: &str) -> GaussDiagram {
        GaussDiagram::from_code(&code.parse().unwrap())
    }

    #[test]
    fn knot_4_12_diagram() {
        let d = diagram("O1-O2-U1-O3+U2-O4+U3+U4+");
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.components()[0].len(), 8);
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.chords()[0].over, SlotRef::new(0, 0));
        assert_eq!(d.chords()[0].under, SlotRef::new(0, 2));
        assert_eq!(d.to_code().to_string(), "O1-O2-U1-O3+U2-O4+U3+U4+");
    }

    #[test]
    fn empty_diagram() {
        let d = diagram("");
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.roles(), &[ComponentRole::Regular]);
    }

    #[test]
    fn crossing_order_is_first_appearance() {
        let d = diagram("U7+O3-U3-O7+");
        assert_eq!(d.chords()[0].label, 7);
        assert_eq!(d.chords()[1].label, 3);
    }

    #[test]
    fn delete_components() {
        let d = diagram("O1+U1+");
        let e = d.delete_component(0).unwrap();
        assert_eq!(e.component_count(), 0);
        assert_eq!(e.crossing_count(), 0);

        let split = diagram("O1-O2-U1-O3+U2-O4+U3+U4+,");
        let k = split.delete_component(1).unwrap();
        assert_eq!(k, diagram("O1-O2-U1-O3+U2-O4+U3+U4+"));

        let hopf = diagram("O1+U2+,U1+O2+");
        let h = hopf.delete_component(1).unwrap();
        assert_eq!(h.component_count(), 1);
        assert_eq!(h.components()[0].len(), 0);
        assert_eq!(d.delete_component(3), Err(GaussError::BadIndex(3)));
    }

    #[test]
    fn isomorphism_up_to_rotation_and_labels() {
        let d = diagram("O1-O2-U1-O3+U2-O4+U3+U4+");
        let r = d.rotate_component(0, 3).unwrap().relabel(|l| l + 10);
        assert!(d.is_isomorphic(&r));
        assert!(!d.is_isomorphic(&diagram("O1+O2-U1+O3+U2-O4+U3+U4+")));
    }
}
