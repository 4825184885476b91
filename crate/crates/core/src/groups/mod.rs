//! Group presentations of virtual links: Wirtinger presentations, the
//! reduced group via Zh, Fox calculus, elementary ideals and longitudes.

mod fox;
mod tietze;
mod wirtinger;
mod word;

pub use fox::{
    alexander_matrix, elementary_ideals, fox_derivative, Abelianization, ElementaryIdeal,
    GroupRingElement,
};
pub use tietze::tietze_eliminate;
pub use wirtinger::{longitude, reduced_group, wirtinger, WirtingerArcs};
pub use word::{GenId, Word};

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupsError {
    #[error("relator uses undeclared generator {0}")]
    UndeclaredGenerator(GenId),
    #[error("component {0} out of range")]
    BadIndex(usize),
    #[error(transparent)]
    Zh(#[from] crate::zh::ZhError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GenTag {
    /// Arc on a regular component.
    Component(usize),
    Omega,
}

impl GenTag {
    pub fn is_omega(self) -> bool {
        self == GenTag::Omega
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub id: GenId,
    pub tag: GenTag,
}

impl Generator {
    /// `v` for the ω generator, `a<id+1>` otherwise.
    pub fn name(&self) -> String {
        match self.tag {
            GenTag::Omega => "v".to_string(),
            GenTag::Component(_) => format!("a{}", self.id + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, GroupsError> {
        let ids: BTreeSet<GenId> = generators.iter().map(|g| g.id).collect();
        for r in &relators {
            if let Some(&(g, _)) = r.letters().iter().find(|l| !ids.contains(&l.0)) {
                return Err(GroupsError::UndeclaredGenerator(g));
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator(&self, id: GenId) -> Option<&Generator> {
        self.generators.iter().find(|g| g.id == id)
    }

    /// `#generators - #relators`.
    pub fn deficiency(&self) -> isize {
        self.generators.len() as isize - self.relators.len() as isize
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.syllables()
            .into_iter()
            .map(|(g, k)| {
                let name = self.generator(g).map_or_else(|| format!("g{g}"), |x| x.name());
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators.iter().map(|g| g.name()).join(" ");
        let rels = self.relators.iter().map(|r| self.format_word(r)).join(" ; ");
        write!(f, "gens: {gens} ; rels:")?;
        if !rels.is_empty() {
            write!(f, " {rels}")?;
        }
        Ok(())
    }
}
