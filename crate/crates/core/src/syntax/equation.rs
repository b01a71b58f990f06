use std::fmt;

use super::term::{Term, TermError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strength {
    /// `≈`, equality on ordinary values and on exceptions.
    Strong,
    /// `≂`, equality on ordinary values only.
    Weak,
}

impl Strength {
    pub fn symbol(self) -> &'static str {
        match self {
            Strength::Strong => "==",
            Strength::Weak => "~",
        }
    }
}

/// A decorated equation between parallel terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub strength: Strength,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term, strength: Strength) -> Result<Equation, TermError> {
        if lhs.src() != rhs.src() {
            return Err(TermError::TypeMismatch {
                context: "equation sources",
                expected: lhs.src().clone(),
                found: rhs.src().clone(),
            });
        }
        if lhs.tgt() != rhs.tgt() {
            return Err(TermError::TypeMismatch {
                context: "equation targets",
                expected: lhs.tgt().clone(),
                found: rhs.tgt().clone(),
            });
        }
        Ok(Equation { lhs, rhs, strength })
    }

    pub fn strong(lhs: Term, rhs: Term) -> Result<Equation, TermError> {
        Equation::new(lhs, rhs, Strength::Strong)
    }

    pub fn weak(lhs: Term, rhs: Term) -> Result<Equation, TermError> {
        Equation::new(lhs, rhs, Strength::Weak)
    }

    pub fn flipped(&self) -> Equation {
        Equation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            strength: self.strength,
        }
    }

    pub fn weakened(&self) -> Equation {
        Equation {
            strength: Strength::Weak,
            ..self.clone()
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.strength.symbol(), self.rhs)
    }
}
