use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::psub::Scope;

/// The six categories built on `p`-subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Poset of subgroups under inclusion.
    S,
    /// Transporter category.
    T,
    /// Linking category: transporters modulo `O^p C_G(H)`.
    L,
    /// Frobenius (fusion) category: transporters modulo `C_G(H)`.
    F,
    /// Orbit category: transporters modulo `K`.
    O,
    /// Exterior quotient: `C_G(H)`–`K` double cosets of transporters.
    Ftilde,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::S, Kind::T, Kind::L, Kind::F, Kind::O, Kind::Ftilde];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::S => "S",
            Kind::T => "T",
            Kind::L => "L",
            Kind::F => "F",
            Kind::O => "O",
            Kind::Ftilde => "Ftilde",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(Kind::S),
            "T" => Ok(Kind::T),
            "L" => Ok(Kind::L),
            "F" => Ok(Kind::F),
            "O" => Ok(Kind::O),
            "Ftilde" | "F~" | "F̃" => Ok(Kind::Ftilde),
            _ => Err(Error::Input(format!("unknown category kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CategoryKind {
    pub kind: Kind,
    pub scope: Scope,
}

impl fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.scope {
            Scope::All => "",
            Scope::Nonidentity => "*",
            Scope::Centric => "^c",
            Scope::ElementaryAbelian => "^a",
            Scope::Radical => "^r",
        };
        write!(f, "{}{}", self.kind, suffix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.as_str().parse::<Kind>().unwrap(), k);
        }
        assert_eq!("F~".parse::<Kind>().unwrap(), Kind::Ftilde);
        assert!("X".parse::<Kind>().is_err());
        let ck = CategoryKind {
            kind: Kind::F,
            scope: Scope::Centric,
        };
        assert_eq!(ck.to_string(), "F^c");
    }
}
