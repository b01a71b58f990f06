use std::fmt;
use std::sync::Arc;

/// An interned identifier (type name, operation name).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// An exception index `i ∈ I`. The tag and untag operations of index `i`
/// are written `t<i>` and `c<i>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Arc<str>);

impl Index {
    pub fn new(s: &str) -> Self {
        Index(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn tag_name(&self) -> String {
        format!("t{}", self.0)
    }

    pub fn untag_name(&self) -> String {
        format!("c{}", self.0)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Index {
    fn from(s: &str) -> Self {
        Index::new(s)
    }
}

/// Name of the unit base type; its carrier is a singleton in every model.
pub const UNIT: &str = "1";

/// Type expressions shared by the decorated and explicit sides.
///
/// Binary coproducts are kept in a normal form where `0` never appears as a
/// summand: `X + 0` and `0 + X` both collapse to `X`. Build coproducts with
/// [`ObjType::coprod`] to keep that invariant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjType {
    Base(Name),
    Zero,
    Coprod(Box<ObjType>, Box<ObjType>),
    /// The type of exceptions `E`; explicit side only.
    Exc,
}

impl ObjType {
    pub fn base(name: &str) -> Self {
        ObjType::Base(Name::new(name))
    }

    pub fn unit() -> Self {
        ObjType::base(UNIT)
    }

    pub fn coprod(left: ObjType, right: ObjType) -> Self {
        match (left, right) {
            (ObjType::Zero, r) => r,
            (l, ObjType::Zero) => l,
            (l, r) => ObjType::Coprod(Box::new(l), Box::new(r)),
        }
    }

    /// `X + E`.
    pub fn plus_exc(self) -> Self {
        ObjType::coprod(self, ObjType::Exc)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ObjType::Zero)
    }

    pub fn mentions_exc(&self) -> bool {
        match self {
            ObjType::Exc => true,
            ObjType::Coprod(l, r) => l.mentions_exc() || r.mentions_exc(),
            _ => false,
        }
    }

    /// Base names occurring in the type, left to right.
    pub fn base_names(&self, out: &mut Vec<Name>) {
        match self {
            ObjType::Base(n) => out.push(n.clone()),
            ObjType::Coprod(l, r) => {
                l.base_names(out);
                r.base_names(out);
            }
            ObjType::Zero | ObjType::Exc => {}
        }
    }
}

impl fmt::Display for ObjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjType::Base(n) => write!(f, "{n}"),
            ObjType::Zero => f.write_str("0"),
            ObjType::Exc => f.write_str("E"),
            ObjType::Coprod(l, r) => {
                write!(f, "{l} + ")?;
                if matches!(**r, ObjType::Coprod(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

impl fmt::Debug for ObjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Term decorations, ordered `Pure < Ppg < Ctc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Pure,
    Ppg,
    Ctc,
}

impl Decoration {
    pub const ALL: [Decoration; 3] = [Decoration::Pure, Decoration::Ppg, Decoration::Ctc];

    pub fn keyword(self) -> &'static str {
        match self {
            Decoration::Pure => "pure",
            Decoration::Ppg => "ppg",
            Decoration::Ctc => "ctc",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "pure" => Some(Decoration::Pure),
            "ppg" => Some(Decoration::Ppg),
            "ctc" => Some(Decoration::Ctc),
            _ => None,
        }
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprod_collapses_zero() {
        let x = ObjType::base("X");
        assert_eq!(ObjType::coprod(ObjType::Zero, x.clone()), x);
        assert_eq!(ObjType::coprod(x.clone(), ObjType::Zero), x);
        assert_eq!(ObjType::Zero.plus_exc(), ObjType::Exc);
    }

    #[test]
    fn decoration_order() {
        assert!(Decoration::Pure < Decoration::Ppg);
        assert!(Decoration::Ppg < Decoration::Ctc);
        assert_eq!(Decoration::Pure.max(Decoration::Ctc), Decoration::Ctc);
    }

    #[test]
    fn display_nested_coprod() {
        let t = ObjType::coprod(
            ObjType::base("A"),
            ObjType::coprod(ObjType::base("B"), ObjType::Exc),
        );
        assert_eq!(t.to_string(), "A + (B + E)");
        let u = ObjType::coprod(
            ObjType::coprod(ObjType::base("A"), ObjType::base("B")),
            ObjType::Exc,
        );
        assert_eq!(u.to_string(), "A + B + E");
    }
}
