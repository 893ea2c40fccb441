use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

/// Interned-ish symbol name. Cloning is a refcount bump.
pub type Name = Arc<str>;

/// Derivative orders, one slot per coordinate of the owning list
/// (chart coordinates for `UJet`, declared dependencies for `FJet`).
pub type MultiIndex = SmallVec<[u8; 6]>;

/// A generator of the differential Laurent polynomial ring.
///
/// The derived `Ord` is the canonical symbol order: variant tag first
/// (`Coord < Param < UJet < FJet`), then name, then the multi-index
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Coord(Name),
    Param(Name),
    /// Jet coordinate `u_sigma` of a dependent variable.
    UJet(Name, MultiIndex),
    /// Jet `D^sigma f` of a formal (undetermined) function of base coordinates.
    FJet(Name, MultiIndex),
}

impl Sym {
    pub fn coord(name: &str) -> Self {
        Sym::Coord(name.into())
    }

    pub fn param(name: &str) -> Self {
        Sym::Param(name.into())
    }

    pub fn ujet(name: &str, index: &[u8]) -> Self {
        Sym::UJet(name.into(), index.iter().copied().collect())
    }

    pub fn fjet(name: &str, index: &[u8]) -> Self {
        Sym::FJet(name.into(), index.iter().copied().collect())
    }

    pub fn name(&self) -> &str {
        match self {
            Sym::Coord(n) | Sym::Param(n) | Sym::UJet(n, _) | Sym::FJet(n, _) => n,
        }
    }

    pub fn index(&self) -> Option<&MultiIndex> {
        match self {
            Sym::UJet(_, i) | Sym::FJet(_, i) => Some(i),
            _ => None,
        }
    }

    /// Jet symbols are polynomial generators only; negative powers are refused.
    pub fn is_jet(&self) -> bool {
        matches!(self, Sym::UJet(..) | Sym::FJet(..))
    }

    /// Total derivative order of a jet symbol, zero otherwise.
    pub fn order(&self) -> usize {
        self.index()
            .map(|i| i.iter().map(|&k| k as usize).sum())
            .unwrap_or(0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Coord(n) | Sym::Param(n) => f.write_str(n),
            Sym::UJet(n, idx) | Sym::FJet(n, idx) => {
                write!(f, "{n}[")?;
                for (k, i) in idx.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{i}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_orders_before_name() {
        assert!(Sym::coord("z") < Sym::param("a"));
        assert!(Sym::param("z") < Sym::ujet("a", &[0]));
        assert!(Sym::ujet("u", &[9, 9]) < Sym::fjet("A", &[0, 0]));
        assert!(Sym::ujet("u", &[0, 1]) < Sym::ujet("u", &[1, 0]));
    }

    #[test]
    fn display_uses_bracketed_indexes() {
        assert_eq!(Sym::ujet("u", &[0, 0, 1, 1]).to_string(), "u[0,0,1,1]");
        assert_eq!(Sym::coord("t").to_string(), "t");
        assert_eq!(Sym::fjet("A", &[2, 1]).order(), 3);
    }
}
