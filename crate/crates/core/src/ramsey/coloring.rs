use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::tree::{count_trees, Tree, DEFAULT_TREE_CAP};

/// `c : T_n → [0, 1]`, stored in canonical order of `T_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    values: Vec<Q>,
}

impl Coloring {
    pub fn new(n: usize, values: Vec<Q>) -> Result<Coloring> {
        if n == 0 || n > DEFAULT_TREE_CAP {
            return Err(Error::CapExceeded {
                requested: n,
                cap: DEFAULT_TREE_CAP,
            });
        }
        let expected = count_trees(n) as usize;
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.is_negative() || **v > Q::one()) {
            return Err(Error::ValueOutOfRange {
                value: v.to_string(),
            });
        }
        Ok(Coloring { n, values })
    }

    /// The 0/1 coloring giving the `i`-th tree of `T_n` the color of bit `i`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Coloring> {
        let len = count_trees(n) as usize;
        if len > 64 {
            return Err(Error::CapExceeded {
                requested: len,
                cap: 64,
            });
        }
        let values = (0..len)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
            .collect();
        Coloring::new(n, values)
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Coloring> {
        Coloring::new(
            n,
            bits.iter()
                .map(|&b| if b { Q::one() } else { Q::zero() })
                .collect(),
        )
    }

    pub fn constant(n: usize, value: Q) -> Result<Coloring> {
        Coloring::new(n, vec![value; count_trees(n) as usize])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn value_at(&self, index: usize) -> &Q {
        &self.values[index]
    }

    pub fn value(&self, t: &Tree) -> Result<&Q> {
        if t.size() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: t.size(),
            });
        }
        Ok(&self.values[t.rank() as usize])
    }

    /// Index of the first value other than 0 or 1.
    pub fn first_non_binary(&self) -> Option<usize> {
        self.values
            .iter()
            .position(|v| !(v.is_zero() || v.is_one()))
    }

    pub fn is_binary(&self) -> bool {
        self.first_non_binary().is_none()
    }
}
