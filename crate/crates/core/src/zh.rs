//! The Zh-construction: add an ω circle that passes over both strands next to
//! every classical crossing.

use serde::Serialize;
use thiserror::Error;

use crate::gauss::{ComponentRole, GaussDiagram, Passage, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZhError {
    #[error("diagram already has an omega component")]
    AlreadyHasOmega,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZhDiagram {
    pub diagram: GaussDiagram,
    pub omega_index: usize,
}

impl ZhDiagram {
    /// The input diagram back, with ω and its chords removed.
    pub fn strip_omega(&self) -> GaussDiagram {
        self.diagram
            .delete_component(self.omega_index)
            .expect("omega index is valid")
    }
}

/// `Zh(d)`. For each chord `c`, an ω-chord of sign `-sign(c)` ends just
/// before the over endpoint (foot) of `c` and one of sign `sign(c)` ends just
/// after its under endpoint (head). The ω circle meets the new chords in the
/// order their under endpoints are met walking `d`.
pub fn zh(d: &GaussDiagram) -> Result<ZhDiagram, ZhError> {
    if d.roles().contains(&ComponentRole::Omega) {
        return Err(ZhError::AlreadyHasOmega);
    }
    let base = d.next_label();
    let chords = d.chords();
    let mut omega = Vec::with_capacity(2 * chords.len());
    let mut tokens: Vec<Vec<Token>> = Vec::with_capacity(d.component_count() + 1);
    for slots in d.components() {
        let mut comp = Vec::with_capacity(3 * slots.len());
        for e in slots {
            let c = &chords[e.chord];
            let own = Token {
                passage: e.passage,
                label: c.label,
                sign: c.sign,
            };
            let new = match e.passage {
                Passage::Over => Token {
                    passage: Passage::Under,
                    label: base + 2 * e.chord as u32,
                    sign: c.sign.flip(),
                },
                Passage::Under => Token {
                    passage: Passage::Under,
                    label: base + 2 * e.chord as u32 + 1,
                    sign: c.sign,
                },
            };
            match e.passage {
                Passage::Over => comp.extend([new, own]),
                Passage::Under => comp.extend([own, new]),
            }
            omega.push(Token {
                passage: Passage::Over,
                ..new
            });
        }
        tokens.push(comp);
    }
    tokens.push(omega);
    let mut roles = d.roles().to_vec();
    roles.push(ComponentRole::Omega);
    let omega_index = tokens.len() - 1;
    Ok(ZhDiagram {
        diagram: GaussDiagram::from_tokens(&tokens, roles),
        omega_index,
    })
}

pub fn zh_component_count(z: &ZhDiagram) -> usize {
    z.diagram.component_count()
}
