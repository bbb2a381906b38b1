use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite 0/1 sequence locating a subterm. The empty address is the root.
///
/// The derived order is lexicographic with prefixes first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn empty() -> Address {
        Address(Vec::new())
    }

    /// Panics if any entry is not 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Address {
        assert!(bits.iter().all(|b| *b <= 1), "address bits must be 0 or 1");
        Address(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Neither is a prefix of the other.
    pub fn is_incompatible_with(&self, other: &Address) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    /// Contains both a 0 and a 1.
    pub fn is_nonconstant(&self) -> bool {
        self.0.contains(&0) && self.0.contains(&1)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Address> {
        s.bytes()
            .enumerate()
            .map(|(i, c)| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(Error::Parse {
                    position: i,
                    message: "address digits must be 0 or 1".into(),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Address)
    }
}
