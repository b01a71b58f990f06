use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{ExceptionDecl, Index, Name, ObjType, UNIT};

/// A value of `X + E`: an ordinary atom of `X`, or an exception given by its
/// position in the enumeration of `E` (parameter carriers in index order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Value {
    Ordinary(u32),
    Exceptional(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no carrier for type `{0}`")]
    UnknownType(String),
    #[error("no interpretation for generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` is interpreted with a table of the wrong kind")]
    TableKind(String),
    #[error("value {value:?} lies outside the carrier of {ty}")]
    ValueOutsideCarrier { value: Value, ty: ObjType },
    #[error("unknown exception index `{0}`")]
    UnknownIndex(String),
}

/// Interpretation of a declared operation, by decoration: a pure operation
/// is a function `X -> Y`, a propagator `X -> Y + E`, a catcher
/// `X + E -> Y + E` given by its ordinary and exceptional halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenTable {
    Pure(Vec<u32>),
    Ppg(Vec<Value>),
    Ctc {
        ordinary: Vec<Value>,
        exceptional: Vec<Value>,
    },
}

/// A finite set-theoretic model: carriers for base types, the exception set
/// `E = Σ_i P_i`, and tables for the declared operations. Tags and untags are
/// the intended ones unless an untag override is installed, which only the
/// negative controls do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    carriers: Vec<(Name, Vec<String>)>,
    exceptions: Vec<ExceptionDecl>,
    exc_offsets: Vec<u32>,
    exc_size: u32,
    gens: Vec<(Name, GenTable)>,
    untag_override: Vec<(Index, Vec<Value>)>,
}

impl FiniteModel {
    /// A model with the given base carriers (atom labels in enumeration
    /// order) and exception indices. The unit type always has the single
    /// atom `*`.
    pub fn new(carriers: Vec<(Name, Vec<String>)>, exceptions: Vec<ExceptionDecl>) -> Result<Self, EvalError> {
        let mut carriers: Vec<(Name, Vec<String>)> =
            carriers.into_iter().filter(|(n, _)| n.as_str() != UNIT).collect();
        carriers.push((Name::new(UNIT), vec!["*".to_string()]));
        let mut m = FiniteModel {
            carriers,
            exceptions,
            exc_offsets: Vec::new(),
            exc_size: 0,
            gens: Vec::new(),
            untag_override: Vec::new(),
        };
        let mut off = 0;
        for e in &m.exceptions {
            m.exc_offsets.push(off);
            off += m.size(&e.param)?;
        }
        m.exc_size = off;
        Ok(m)
    }

    /// Carriers given by size; atoms are labelled `<type>_<k>` in lower case.
    pub fn with_sizes(sizes: &[(Name, u32)], exceptions: Vec<ExceptionDecl>) -> Result<Self, EvalError> {
        let carriers = sizes
            .iter()
            .map(|(n, k)| {
                let base = n.as_str().to_lowercase();
                (n.clone(), (0..*k).map(|j| format!("{base}_{j}")).collect())
            })
            .collect();
        FiniteModel::new(carriers, exceptions)
    }

    pub fn carriers(&self) -> &[(Name, Vec<String>)] {
        &self.carriers
    }

    pub fn exceptions(&self) -> &[ExceptionDecl] {
        &self.exceptions
    }

    pub fn gens(&self) -> &[(Name, GenTable)] {
        &self.gens
    }

    pub fn set_gen(&mut self, name: &str, table: GenTable) {
        match self.gens.iter_mut().find(|(n, _)| n.as_str() == name) {
            Some(slot) => slot.1 = table,
            None => self.gens.push((Name::new(name), table)),
        }
    }

    pub fn gen(&self, name: &Name) -> Result<&GenTable, EvalError> {
        self.gens
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| EvalError::UnknownGenerator(name.to_string()))
    }

    /// Replaces the interpretation of `c_i` by an arbitrary table on `E`.
    /// The result is no longer a model of exceptions; used for negative
    /// controls.
    pub fn override_untag(&mut self, i: &Index, table: Vec<Value>) {
        self.untag_override.retain(|(j, _)| j != i);
        self.untag_override.push((i.clone(), table));
    }

    pub fn untag_overrides(&self) -> &[(Index, Vec<Value>)] {
        &self.untag_override
    }

    pub fn is_intended(&self) -> bool {
        self.untag_override.is_empty()
    }

    /// The same carriers and tables with the intended tags and untags.
    pub fn intended(&self) -> FiniteModel {
        FiniteModel {
            untag_override: Vec::new(),
            ..self.clone()
        }
    }

    pub fn carrier(&self, name: &Name) -> Option<&[String]> {
        self.carriers
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_slice())
    }

    pub fn size(&self, ty: &ObjType) -> Result<u32, EvalError> {
        match ty {
            ObjType::Base(n) => self
                .carrier(n)
                .map(|c| c.len() as u32)
                .ok_or_else(|| EvalError::UnknownType(n.to_string())),
            ObjType::Zero => Ok(0),
            ObjType::Coprod(a, b) => Ok(self.size(a)? + self.size(b)?),
            ObjType::Exc => Ok(self.exc_size),
        }
    }

    pub fn exc_size(&self) -> u32 {
        self.exc_size
    }

    fn index_pos(&self, i: &Index) -> Result<usize, EvalError> {
        self.exceptions
            .iter()
            .position(|e| &e.index == i)
            .ok_or_else(|| EvalError::UnknownIndex(i.to_string()))
    }

    /// Position in `E` of the exception `t_i(a)`.
    pub fn exc_of(&self, i: &Index, a: u32) -> Result<u32, EvalError> {
        Ok(self.exc_offsets[self.index_pos(i)?] + a)
    }

    /// Splits an exception into its index position and parameter atom.
    pub fn exc_parts(&self, e: u32) -> (usize, u32) {
        let k = self.exc_offsets.partition_point(|&o| o <= e) - 1;
        // several indices may share an offset when a parameter carrier is
        // empty; the last one with that offset owns `e`
        (k, e - self.exc_offsets[k])
    }

    /// Untag of index `i` applied to exception `e`, with any override.
    pub fn untag(&self, i: &Index, e: u32) -> Result<Value, EvalError> {
        if let Some((_, table)) = self.untag_override.iter().find(|(j, _)| j == i) {
            return table.get(e as usize).copied().ok_or(EvalError::ValueOutsideCarrier {
                value: Value::Exceptional(e),
                ty: ObjType::Exc,
            });
        }
        self.intended_untag(i, e)
    }

    pub fn intended_untag(&self, i: &Index, e: u32) -> Result<Value, EvalError> {
        let k = self.index_pos(i)?;
        let (owner, a) = self.exc_parts(e);
        Ok(if owner == k {
            Value::Ordinary(a)
        } else {
            Value::Exceptional(e)
        })
    }

    /// All values of `ty + E`, ordinary first.
    pub fn values(&self, ty: &ObjType) -> Result<Vec<Value>, EvalError> {
        let n = self.size(ty)?;
        Ok((0..n)
            .map(Value::Ordinary)
            .chain((0..self.exc_size).map(Value::Exceptional))
            .collect())
    }

    /// Label of the ordinary atom `a` of `ty`.
    pub fn label(&self, ty: &ObjType, a: u32) -> String {
        match ty {
            ObjType::Base(n) => self
                .carrier(n)
                .and_then(|c| c.get(a as usize))
                .cloned()
                .unwrap_or_else(|| format!("?{a}")),
            ObjType::Coprod(l, r) => {
                let nl = self.size(l).unwrap_or(0);
                if a < nl {
                    format!("inl({})", self.label(l, a))
                } else {
                    format!("inr({})", self.label(r, a - nl))
                }
            }
            ObjType::Exc => self.exc_label(a),
            ObjType::Zero => format!("?{a}"),
        }
    }

    pub fn exc_label(&self, e: u32) -> String {
        if e >= self.exc_size {
            return format!("?exc{e}");
        }
        let (k, a) = self.exc_parts(e);
        let d = &self.exceptions[k];
        format!("{}({})", d.index, self.label(&d.param, a))
    }

    pub fn show(&self, ty: &ObjType, v: Value) -> String {
        match v {
            Value::Ordinary(a) => self.label(ty, a),
            Value::Exceptional(e) => self.exc_label(e),
        }
    }

    /// Atom of `ty` with the given label.
    pub fn atom(&self, ty: &ObjType, label: &str) -> Option<u32> {
        (0..self.size(ty).ok()?).find(|&a| self.label(ty, a) == label)
    }

    /// Parses `i(a)` as an exception.
    pub fn exc_atom(&self, label: &str) -> Option<u32> {
        (0..self.exc_size).find(|&e| self.exc_label(e) == label)
    }
}

/// The ordinary part of a type of the form `X`, `X + E` or `E`, and whether
/// `E` is present.
pub fn split_exc(ty: &ObjType) -> (ObjType, bool) {
    match ty {
        ObjType::Exc => (ObjType::Zero, true),
        ObjType::Coprod(x, e) if **e == ObjType::Exc => ((**x).clone(), true),
        _ => (ty.clone(), false),
    }
}

/// Encodes a value as an atom of the explicit type `ty`.
pub fn encode(m: &FiniteModel, ty: &ObjType, v: Value) -> Result<u32, EvalError> {
    let (x, has_exc) = split_exc(ty);
    let n = m.size(&x)?;
    match v {
        Value::Ordinary(a) if a < n => Ok(a),
        Value::Exceptional(e) if has_exc && e < m.exc_size() => Ok(n + e),
        _ => Err(EvalError::ValueOutsideCarrier {
            value: v,
            ty: ty.clone(),
        }),
    }
}

/// Decodes an atom of the explicit type `ty`.
pub fn decode(m: &FiniteModel, ty: &ObjType, a: u32) -> Result<Value, EvalError> {
    let (x, has_exc) = split_exc(ty);
    let n = m.size(&x)?;
    if a < n {
        Ok(Value::Ordinary(a))
    } else if has_exc && a - n < m.exc_size() {
        Ok(Value::Exceptional(a - n))
    } else {
        Err(EvalError::ValueOutsideCarrier {
            value: Value::Ordinary(a),
            ty: ty.clone(),
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ordinary(a) => write!(f, "#{a}"),
            Value::Exceptional(e) => write!(f, "!{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> FiniteModel {
        let ex = |i: &str, p: &str| ExceptionDecl {
            index: Index::new(i),
            param: ObjType::base(p),
        };
        FiniteModel::with_sizes(
            &[(Name::new("P1"), 2), (Name::new("P2"), 0), (Name::new("P3"), 1)],
            vec![ex("1", "P1"), ex("2", "P2"), ex("3", "P3")],
        )
        .unwrap()
    }

    #[test]
    fn exception_enumeration_skips_empty_parameters() {
        let m = model();
        assert_eq!(m.exc_size(), 3);
        assert_eq!(m.exc_parts(0), (0, 0));
        assert_eq!(m.exc_parts(1), (0, 1));
        assert_eq!(m.exc_parts(2), (2, 0));
        assert_eq!(m.exc_label(2), "3(p3_0)");
    }

    #[test]
    fn intended_untag_matches_index() {
        let m = model();
        assert_eq!(m.untag(&Index::new("1"), 1).unwrap(), Value::Ordinary(1));
        assert_eq!(m.untag(&Index::new("3"), 1).unwrap(), Value::Exceptional(1));
    }

    #[test]
    fn encode_decode_round_trip() {
        let m = model();
        let ty = ObjType::base("P1").plus_exc();
        for v in m.values(&ObjType::base("P1")).unwrap() {
            assert_eq!(decode(&m, &ty, encode(&m, &ty, v).unwrap()).unwrap(), v);
        }
    }
}
