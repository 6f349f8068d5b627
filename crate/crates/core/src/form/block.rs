use std::fmt;
use std::str::FromStr;

use super::FormError;
use crate::linalg::Matrix;
use crate::scalar::{ParameterConstraint, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [
        BlockKind::A,
        BlockKind::B,
        BlockKind::C,
        BlockKind::D,
        BlockKind::E,
        BlockKind::F,
    ];

    pub fn letter(self) -> char {
        match self {
            BlockKind::A => 'A',
            BlockKind::B => 'B',
            BlockKind::C => 'C',
            BlockKind::D => 'D',
            BlockKind::E => 'E',
            BlockKind::F => 'F',
        }
    }

    /// Whether a block of this kind may have the given size.
    pub fn allows_size(self, size: usize) -> bool {
        match self {
            BlockKind::A | BlockKind::C => size % 2 == 1,
            BlockKind::B | BlockKind::E => size >= 2 && size % 2 == 0,
            BlockKind::D => size >= 2 && size % 4 == 0,
            BlockKind::F => size >= 2 && size % 4 == 2,
        }
    }
}

/// One indecomposable congruence class: `A_{2k+1}`, `B_{2k}(c)`, `C_{2k+1}`,
/// `D_{2k}` (k even), `E_{2k}`, `F_{2k}` (k odd).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBlock {
    kind: BlockKind,
    size: usize,
    parameter: Option<Scalar>,
}

impl CanonicalBlock {
    pub fn new(kind: BlockKind, size: usize, parameter: Option<Scalar>) -> Result<Self, FormError> {
        let name = || {
            let mut s = format!("{}{}", kind.letter(), size);
            if let Some(p) = &parameter {
                s.push_str(&format!("({p})"));
            }
            s
        };
        if !kind.allows_size(size) {
            return Err(FormError::InvalidBlock(format!("{}: size not allowed", name())));
        }
        match (kind, &parameter) {
            (BlockKind::B, None) => {
                return Err(FormError::InvalidBlock(format!("{}: missing parameter", name())))
            }
            (BlockKind::B, Some(c)) => {
                if c.is_constant() && (c.is_one() || (-c).is_one()) {
                    return Err(FormError::InvalidBlock(format!(
                        "{}: parameter must differ from 1 and -1",
                        name()
                    )));
                }
            }
            (_, Some(_)) => {
                return Err(FormError::InvalidBlock(format!(
                    "{}: only B blocks take a parameter",
                    name()
                )))
            }
            _ => {}
        }
        Ok(Self {
            kind,
            size,
            parameter,
        })
    }

    // Shorthands; they panic on sizes the kind does not allow.
    pub fn a(size: usize) -> Self {
        Self::new(BlockKind::A, size, None).unwrap()
    }
    pub fn b(size: usize, c: Scalar) -> Self {
        Self::new(BlockKind::B, size, Some(c)).unwrap()
    }
    pub fn c(size: usize) -> Self {
        Self::new(BlockKind::C, size, None).unwrap()
    }
    pub fn d(size: usize) -> Self {
        Self::new(BlockKind::D, size, None).unwrap()
    }
    pub fn e(size: usize) -> Self {
        Self::new(BlockKind::E, size, None).unwrap()
    }
    pub fn f(size: usize) -> Self {
        Self::new(BlockKind::F, size, None).unwrap()
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parameter(&self) -> Option<&Scalar> {
        self.parameter.as_ref()
    }

    /// The `c ≠ ±1` constraints for every parameter named in a B block.
    pub fn constraints(&self) -> Vec<ParameterConstraint> {
        match &self.parameter {
            Some(c) => c
                .params()
                .into_iter()
                .map(ParameterConstraint::not_plus_minus_one)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Replaces a constant B parameter `c` by the smaller of `c` and `1/c`
    /// (lexicographic on real, then imaginary part). `B(c)` and `B(1/c)` are
    /// congruent.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        if let Some(c) = self.parameter.as_ref().and_then(Scalar::as_constant) {
            if let Some(inv) = c.inv() {
                out.parameter = Some(Scalar::constant(c.min(inv)));
            }
        }
        out
    }

    pub fn with_parameter(&self, c: Scalar) -> Self {
        let mut out = self.clone();
        out.parameter = Some(c);
        out
    }

    /// The block matrix. `[P\Q]` below denotes `[[0, Q], [P, 0]]`.
    pub fn matrix(&self) -> Matrix {
        let n = self.size;
        let mut m = Matrix::zeros(n, n);
        let one = Scalar::one;
        let minus = || Scalar::from_int(-1);
        match self.kind {
            BlockKind::A => {
                let k = n / 2;
                for i in 0..k {
                    m.set(i, k + 1 + i, one());
                    m.set(k + 1 + i, i + 1, one());
                }
            }
            BlockKind::C | BlockKind::E => {
                let k = n / 2;
                for i in 0..n {
                    let anti = if self.kind == BlockKind::E && i >= k {
                        minus()
                    } else {
                        one()
                    };
                    m.set(i, n - 1 - i, anti);
                    if i >= 1 {
                        let sup = if self.kind == BlockKind::C && i > k {
                            minus()
                        } else {
                            one()
                        };
                        m.set(i, n - i, sup);
                    }
                }
            }
            BlockKind::B | BlockKind::D | BlockKind::F => {
                let k = n / 2;
                let c = self.parameter.clone().unwrap_or_default();
                // (antidiagonal, next diagonal) of the lower-left and
                // upper-right k×k blocks
                let (p_anti, p_next, q_anti, q_next) = match self.kind {
                    BlockKind::B => (c.clone(), one(), one(), c),
                    BlockKind::D => (one(), minus(), one(), one()),
                    _ => (minus(), one(), one(), one()),
                };
                for i in 0..k {
                    let j = k - 1 - i;
                    m.set(k + i, j, p_anti.clone());
                    m.set(i, k + j, q_anti.clone());
                    if i >= 1 {
                        m.set(k + i, j + 1, p_next.clone());
                        m.set(i, k + j + 1, q_next.clone());
                    }
                }
            }
        }
        m
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CanonicalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.size)?;
        if let Some(c) = &self.parameter {
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalBlock {
    type Err = FormError;

    /// `kind size [ "(" scalar ")" ]`, e.g. `A3`, `B2(c)`, `B4(1/2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| FormError::InvalidBlock(format!("`{s}`: {why}"));
        let s_trim = s.trim();
        let mut chars = s_trim.chars();
        let kind = match chars.next() {
            Some('A') => BlockKind::A,
            Some('B') => BlockKind::B,
            Some('C') => BlockKind::C,
            Some('D') => BlockKind::D,
            Some('E') => BlockKind::E,
            Some('F') => BlockKind::F,
            _ => return Err(bad("expected a block kind A-F")),
        };
        let rest = chars.as_str();
        let digits_end = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
        let size: usize = rest[..digits_end].parse().map_err(|_| bad("expected a size"))?;
        let tail = &rest[digits_end..];
        let parameter = if tail.is_empty() {
            None
        } else {
            let inner = tail
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad("expected `(parameter)`"))?;
            Some(
                inner
                    .parse::<Scalar>()
                    .map_err(|e| bad(&e.to_string()))?,
            )
        };
        CanonicalBlock::new(kind, size, parameter)
    }
}

impl serde::Serialize for CanonicalBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for CanonicalBlock {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Space-separated block names.
pub fn format_blocks(blocks: &[CanonicalBlock]) -> String {
    blocks
        .iter()
        .map(CanonicalBlock::name)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a whitespace- or `+`-separated block list.
pub fn parse_blocks(s: &str) -> Result<Vec<CanonicalBlock>, FormError> {
    s.split(|c: char| c.is_whitespace() || c == '+')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}
