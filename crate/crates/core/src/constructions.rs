//! Address statistics, the separating trees `u_σ`, the maps `h_r`, the
//! odometer, and membership in the sets `E_{r,n}` and `E_{r,p}`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::rational::Q;
use crate::tree::{Address, Tree};

/// A total preorder on trees.
pub trait QuasiOrder {
    fn compare(&self, s: &Tree, t: &Tree) -> Ordering;
}

/// `s ⪯ t` iff `#s <= #t`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SizeOrder;

impl QuasiOrder for SizeOrder {
    fn compare(&self, s: &Tree, t: &Tree) -> Ordering {
        s.size().cmp(&t.size())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressProfile {
    /// Mass where `t/σ ≺ t/ς`.
    pub less: Q,
    pub greater: Q,
    pub equiv: Q,
    /// Mass where one of the addresses runs off a leaf.
    pub undefined: Q,
}

/// Splits the mass of `mu` by how `t/σ` compares with `t/ς`.
pub fn address_profile(
    mu: &Measure<Tree>,
    sigma: &Address,
    varsigma: &Address,
    order: &impl QuasiOrder,
) -> Result<AddressProfile> {
    if !sigma.is_incompatible_with(varsigma) {
        return Err(Error::CompatibleAddresses(
            sigma.to_string(),
            varsigma.to_string(),
        ));
    }
    let mut p = AddressProfile {
        less: Q::zero(),
        greater: Q::zero(),
        equiv: Q::zero(),
        undefined: Q::zero(),
    };
    for (t, w) in mu.iter() {
        let bucket = match (t.subterm(sigma), t.subterm(varsigma)) {
            (Ok(a), Ok(b)) => match order.compare(&a, &b) {
                Ordering::Less => &mut p.less,
                Ordering::Greater => &mut p.greater,
                Ordering::Equal => &mut p.equiv,
            },
            _ => &mut p.undefined,
        };
        *bucket += w;
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityProfile {
    /// Mass of `#(t/001) < #(t/01) < #(t/10)`.
    pub chain_a: Q,
    /// Mass of `#(t/10) < #(t/01) < #(t/001)`.
    pub chain_b: Q,
    /// Everything else, including trees lacking one of the addresses.
    pub other: Q,
}

pub fn monotonicity_profile(mu: &Measure<Tree>) -> MonotonicityProfile {
    let addr = |s: &str| s.parse::<Address>().unwrap();
    let (a001, a01, a10) = (addr("001"), addr("01"), addr("10"));
    let mut p = MonotonicityProfile {
        chain_a: Q::zero(),
        chain_b: Q::zero(),
        other: Q::zero(),
    };
    for (t, w) in mu.iter() {
        let sizes = (|| {
            Some((
                t.subterm(&a001).ok()?.size(),
                t.subterm(&a01).ok()?.size(),
                t.subterm(&a10).ok()?.size(),
            ))
        })();
        let bucket = match sizes {
            Some((x, y, z)) if x < y && y < z => &mut p.chain_a,
            Some((x, y, z)) if z < y && y < x => &mut p.chain_b,
            _ => &mut p.other,
        };
        *bucket += w;
    }
    p
}

/// A finite initial segment `r↾p` of an infinite 0/1 sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitPrefix(Vec<u8>);

impl BitPrefix {
    pub fn new(bits: Vec<u8>) -> Result<BitPrefix> {
        if bits.is_empty() {
            return Err(Error::Invalid("bit prefix must be nonempty".into()));
        }
        if let Some(i) = bits.iter().position(|&b| b > 1) {
            return Err(Error::Parse {
                position: i,
                message: "expected 0 or 1".into(),
            });
        }
        Ok(BitPrefix(bits))
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

    /// `r↾k`; errors if the prefix is shorter than `k`.
    pub fn restrict(&self, k: usize) -> Result<&[u8]> {
        self.0.get(..k).ok_or(Error::CapExceeded {
            requested: k,
            cap: self.0.len(),
        })
    }
}

impl fmt::Display for BitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BitPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<BitPrefix> {
        let bits = s
            .bytes()
            .enumerate()
            .map(|(i, c)| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(Error::Parse {
                    position: i,
                    message: format!("expected 0 or 1, got `{}`", c as char),
                }),
            })
            .collect::<Result<Vec<u8>>>()?;
        BitPrefix::new(bits)
    }
}

/// `u_σ = 1` for `|σ| = 1`, `u_{0σ} = u_σ ^ 1`, `u_{1σ} = 1 ^ u_σ`.
/// The last bit of `σ` never matters.
pub fn u_sigma(sigma: &[u8]) -> Result<Tree> {
    if sigma.is_empty() {
        return Err(Error::Invalid("u_σ needs a nonempty sequence".into()));
    }
    let mut t = Tree::leaf();
    for &bit in sigma[..sigma.len() - 1].iter().rev() {
        t = match bit {
            0 => Tree::caret(t, Tree::leaf()),
            1 => Tree::caret(Tree::leaf(), t),
            _ => {
                return Err(Error::Parse {
                    position: 0,
                    message: "expected 0 or 1".into(),
                })
            }
        };
    }
    Ok(t)
}

/// `a ≪ b` on sizes: some `2^p` exceeds `a` and divides `b`.
pub fn much_less_sizes(a: usize, b: usize) -> bool {
    if b == 0 {
        return true;
    }
    // the largest admissible power is the 2-part of b
    a < 1usize << b.trailing_zeros()
}

pub fn much_less(a: &Tree, b: &Tree) -> bool {
    much_less_sizes(a.size(), b.size())
}

/// `h_r(a ^ b) = h_r(a) ^ h_r(b)` when `a ≪ b`, otherwise `u_{r↾#t}`.
pub fn h_r_tree(t: &Tree, r: &BitPrefix) -> Result<Tree> {
    r.restrict(t.size())?;
    Ok(h_r_unchecked(t, r))
}

fn h_r_unchecked(t: &Tree, r: &BitPrefix) -> Tree {
    match t.children() {
        Some((a, b)) if much_less(a, b) => Tree::caret(h_r_unchecked(a, r), h_r_unchecked(b, r)),
        _ => u_sigma(&r.bits()[..t.size()]).expect("nonempty"),
    }
}

pub fn h_r_push(mu: &Measure<Tree>, r: &BitPrefix) -> Result<Measure<Tree>> {
    for t in mu.support() {
        r.restrict(t.size())?;
    }
    Ok(mu.map(|t| h_r_unchecked(t, r)))
}

/// The first `p` bits, least significant first, of `h(t)`, where
/// `h(1) = 0` and `h(s ^ t) = h(t) + 1`; this is the right spine length.
pub fn odometer_bits(t: &Tree, p: usize) -> Vec<u8> {
    let spine = t.right_spine();
    (0..p)
        .map(|i| {
            if i < usize::BITS as usize {
                ((spine >> i) & 1) as u8
            } else {
                0
            }
        })
        .collect()
}

/// `t ∈ E_{r,p}`: the first `p` odometer bits of `t` agree with `r`.
pub fn in_e_rp(t: &Tree, r: &BitPrefix, p: usize) -> Result<bool> {
    let prefix = r.restrict(p)?;
    Ok(odometer_bits(t, p) == prefix)
}

/// `t ∈ E_{r,n}`, the sub-system generated by `{u_{r↾k} : k > n}`.
pub fn in_e_r(t: &Tree, r: &BitPrefix, n: usize) -> Result<bool> {
    r.restrict(t.size())?;
    let mut memo: HashMap<Tree, bool> = HashMap::new();
    let mut generators: HashMap<usize, Tree> = HashMap::new();
    Ok(member(t, r, n, &mut memo, &mut generators))
}

fn member(
    t: &Tree,
    r: &BitPrefix,
    n: usize,
    memo: &mut HashMap<Tree, bool>,
    generators: &mut HashMap<usize, Tree>,
) -> bool {
    if let Some(&known) = memo.get(t) {
        return known;
    }
    let k = t.size();
    let is_generator = k > n && {
        let u = generators
            .entry(k)
            .or_insert_with(|| u_sigma(&r.bits()[..k]).expect("nonempty"));
        u == t
    };
    let result = is_generator
        || match t.children() {
            Some((a, b)) => member(a, r, n, memo, generators) && member(b, r, n, memo, generators),
            None => false,
        };
    memo.insert(t.clone(), result);
    result
}
