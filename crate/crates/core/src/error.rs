use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::{Elem, Universe};

/// Everything that can go wrong when building or checking a structure.
///
/// Element payloads are universe indices; front ends translate them back
/// to labels for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyUniverse,
    DuplicateLabel(String),
    UnknownLabel(String),
    UnknownElement(Elem),
    UniverseMismatch,
    EmptyBlock,
    Overlap(Elem),
    Incomplete(Elem),
    EmptyCarrier,
    MissingEntry(Elem, Elem),
    ExtraEntry(Elem, Elem),
    UnknownResultLabel(Elem),
    NotInCarrier(Elem),
    CarrierNotFull,
    EmptySubset,
    MissingPair(Elem),
    DuplicatePair(Elem),
    UnknownCodomainLabel(Elem),
    CarrierMismatch(Elem),
    DomainNotUpper,
    DomainMismatch(Elem),
    SizeOutOfRange { what: &'static str, got: usize, max: usize },
    EmptySet,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    fn render(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(Elem) -> String) -> fmt::Result {
        match self {
            Error::EmptyUniverse => write!(f, "universe must have at least one element"),
            Error::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::UnknownElement(e) => write!(f, "element `{}` is not in the universe", name(*e)),
            Error::UniverseMismatch => write!(f, "operands live in different universes"),
            Error::EmptyBlock => write!(f, "partition block is empty"),
            Error::Overlap(e) => write!(f, "element `{}` appears in two blocks", name(*e)),
            Error::Incomplete(e) => write!(f, "element `{}` is not covered by any block", name(*e)),
            Error::EmptyCarrier => write!(f, "carrier must be nonempty"),
            Error::MissingEntry(x, y) => write!(f, "no table entry for (`{}`, `{}`)", name(*x), name(*y)),
            Error::ExtraEntry(x, y) => {
                write!(f, "unexpected or repeated table entry for (`{}`, `{}`)", name(*x), name(*y))
            }
            Error::UnknownResultLabel(e) => write!(f, "table result `{}` is not in the universe", name(*e)),
            Error::NotInCarrier(e) => write!(f, "element `{}` is not in the carrier", name(*e)),
            Error::CarrierNotFull => write!(f, "table carrier must be the whole universe"),
            Error::EmptySubset => write!(f, "subset must be nonempty"),
            Error::MissingPair(e) => write!(f, "mapping has no image for element `{}`", name(*e)),
            Error::DuplicatePair(e) => write!(f, "mapping lists element `{}` twice", name(*e)),
            Error::UnknownCodomainLabel(e) => {
                write!(f, "mapping value `{}` is not in the codomain universe", name(*e))
            }
            Error::CarrierMismatch(e) => {
                write!(f, "element `{}` falls outside the required carrier", name(*e))
            }
            Error::DomainNotUpper => {
                write!(f, "mapping domain/target must equal the upper approximations of the carriers")
            }
            Error::DomainMismatch(e) => {
                write!(f, "element `{}` of the inner image is outside the outer domain", name(*e))
            }
            Error::SizeOutOfRange { what, got, max } => {
                write!(f, "{what} {got} out of range (1..={max})")
            }
            Error::EmptySet => write!(f, "set must be nonempty"),
        }
    }

    /// Display with element labels from `universe` instead of indices.
    pub fn with_labels<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        Labelled(self, Some(universe))
    }
}

struct Labelled<'a>(&'a Error, Option<&'a Universe>);

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Some(u) => self.0.render(f, &|e| {
                if e.0 < u.size() {
                    String::from(u.label(e))
                } else {
                    format!("#{}", e.0)
                }
            }),
            None => self.0.render(f, &|e| format!("#{}", e.0)),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Labelled(self, None).fmt(f)
    }
}

impl core::error::Error for Error {}
