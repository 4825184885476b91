use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GaussError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i32) -> Self {
        if v >= 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub passage: Passage,
    pub label: u32,
    pub sign: Sign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.passage {
            Passage::Over => 'O',
            Passage::Under => 'U',
        };
        let s = match self.sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        write!(f, "{p}{}{s}", self.label)
    }
}

/// A validated Gauss code: one token sequence per link component.
///
/// Every crossing label occurs exactly twice over all components, once as
/// `O` and once as `U`, with the same sign on both occurrences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussCode {
    components: Vec<Vec<Token>>,
}

impl GaussCode {
    /// Validates token sequences. A code with no components is promoted to a
    /// single empty component (the 0-crossing unknot).
    pub fn new(mut components: Vec<Vec<Token>>) -> Result<Self, GaussError> {
        if components.is_empty() {
            components.push(Vec::new());
        }
        let mut seen: BTreeMap<u32, (Option<Sign>, Option<Sign>)> = BTreeMap::new();
        for tok in components.iter().flatten() {
            let entry = seen.entry(tok.label).or_default();
            let slot = match tok.passage {
                Passage::Over => &mut entry.0,
                Passage::Under => &mut entry.1,
            };
            if slot.is_some() {
                return Err(GaussError::Validation {
                    label: tok.label,
                    reason: format!("appears more than once as {:?}", tok.passage),
                });
            }
            *slot = Some(tok.sign);
        }
        for (label, (o, u)) in seen {
            match (o, u) {
                (Some(a), Some(b)) if a != b => {
                    return Err(GaussError::Validation {
                        label,
                        reason: "signs of the over and under occurrences differ".into(),
                    })
                }
                (Some(_), Some(_)) => {}
                (None, _) => {
                    return Err(GaussError::Validation {
                        label,
                        reason: "has no over occurrence".into(),
                    })
                }
                (_, None) => {
                    return Err(GaussError::Validation {
                        label,
                        reason: "has no under occurrence".into(),
                    })
                }
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[Vec<Token>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> GaussError {
        GaussError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn token(&mut self) -> Result<Token, GaussError> {
        let passage = match self.peek() {
            Some(b'O') => Passage::Over,
            Some(b'U') => Passage::Under,
            Some(c) => return Err(self.err(format!("expected 'O' or 'U', found '{}'", c as char))),
            None => return Err(self.err("expected 'O' or 'U', found end of input")),
        };
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected crossing label digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let label = digits
            .parse::<u32>()
            .map_err(|_| self.err("crossing label out of range"))?;
        let sign = match self.peek() {
            Some(b'+') => Sign::Pos,
            Some(b'-') => Sign::Neg,
            _ => return Err(self.err("expected '+' or '-' after crossing label")),
        };
        self.pos += 1;
        Ok(Token {
            passage,
            label,
            sign,
        })
    }
}

/// `code := component (',' component)* | ε`, `token := ('O'|'U') digit+ ('+'|'-')`.
/// Whitespace between tokens is ignored. Empty components (`O1+U1+,` for a
/// split unknot) are accepted so every diagram has a textual form.
impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(text: &str) -> Result<Self, GaussError> {
        let mut sc = Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let mut components = vec![Vec::new()];
        loop {
            sc.skip_ws();
            match sc.peek() {
                None => break,
                Some(b',') => {
                    sc.pos += 1;
                    components.push(Vec::new());
                }
                Some(_) => {
                    let tok = sc.token()?;
                    components.last_mut().unwrap().push(tok);
                }
            }
        }
        GaussCode::new(components)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for tok in comp {
                write!(f, "{tok}")?;
            }
        }
        Ok(())
    }
}
