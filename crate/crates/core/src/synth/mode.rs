use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;

/// Stable names of every supported control strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeName {
    Toffoli2Conj,
    Toffoli2Disj,
    Deutsch2Conj,
    Deutsch2Disj,
    Deutsch2MixedWb,
    Deutsch2MixedBw,
    Deutsch2Xdisj,
    Deutsch2DisjmixedA,
    Deutsch2DisjmixedB,
    Conj3,
    Disj3,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Case6,
    Case7,
    Case8,
}

impl ModeName {
    pub const ALL: [ModeName; 19] = [
        ModeName::Toffoli2Conj,
        ModeName::Toffoli2Disj,
        ModeName::Deutsch2Conj,
        ModeName::Deutsch2Disj,
        ModeName::Deutsch2MixedWb,
        ModeName::Deutsch2MixedBw,
        ModeName::Deutsch2Xdisj,
        ModeName::Deutsch2DisjmixedA,
        ModeName::Deutsch2DisjmixedB,
        ModeName::Conj3,
        ModeName::Disj3,
        ModeName::Case1,
        ModeName::Case2,
        ModeName::Case3,
        ModeName::Case4,
        ModeName::Case5,
        ModeName::Case6,
        ModeName::Case7,
        ModeName::Case8,
    ];

    pub fn as_str(self) -> &'static str {
        use ModeName::*;
        match self {
            Toffoli2Conj => "toffoli2_conj",
            Toffoli2Disj => "toffoli2_disj",
            Deutsch2Conj => "deutsch2_conj",
            Deutsch2Disj => "deutsch2_disj",
            Deutsch2MixedWb => "deutsch2_mixed_wb",
            Deutsch2MixedBw => "deutsch2_mixed_bw",
            Deutsch2Xdisj => "deutsch2_xdisj",
            Deutsch2DisjmixedA => "deutsch2_disjmixed_a",
            Deutsch2DisjmixedB => "deutsch2_disjmixed_b",
            Conj3 => "conj3",
            Disj3 => "disj3",
            Case1 => "case1",
            Case2 => "case2",
            Case3 => "case3",
            Case4 => "case4",
            Case5 => "case5",
            Case6 => "case6",
            Case7 => "case7",
            Case8 => "case8",
        }
    }

    pub fn n_controls(self) -> usize {
        use ModeName::*;
        match self {
            Toffoli2Conj | Toffoli2Disj | Deutsch2Conj | Deutsch2Disj | Deutsch2MixedWb
            | Deutsch2MixedBw | Deutsch2Xdisj | Deutsch2DisjmixedA | Deutsch2DisjmixedB => 2,
            _ => 3,
        }
    }

    pub fn is_toffoli2(self) -> bool {
        matches!(self, ModeName::Toffoli2Conj | ModeName::Toffoli2Disj)
    }

    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            ModeName::Deutsch2DisjmixedA | ModeName::Deutsch2DisjmixedB
        )
    }

    /// Resolves a CLI short name (`conj`, `case4`, `disjmixed_a`, ...) given
    /// the number of controls and the gate class. Full names are accepted too.
    pub fn resolve(name: &str, n_controls: usize, toffoli_class: bool) -> Result<ModeName> {
        if let Ok(m) = name.parse::<ModeName>() {
            return if m.n_controls() == n_controls {
                Ok(m)
            } else {
                Err(Error::ModeMismatch(format!(
                    "mode {m} has {} controls, not {n_controls}",
                    m.n_controls()
                )))
            };
        }
        let full = match (n_controls, name) {
            (2, "conj") if toffoli_class => "toffoli2_conj".to_string(),
            (2, "disj") if toffoli_class => "toffoli2_disj".to_string(),
            (2, short) => format!("deutsch2_{short}"),
            (3, short) => format!("{short}3"),
            _ => return Err(Error::UnknownMode(name.to_string())),
        };
        full.parse::<ModeName>()
            .map_err(|_| Error::UnknownMode(name.to_string()))
    }
}

impl fmt::Display for ModeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModeName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMode(s.to_string()))
    }
}

impl Serialize for ModeName {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Per-control activation requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Polarity {
    /// Control must read `|p-1>`.
    Black,
    /// Control must read a state in `Omega = {|0>, ..., |p-2>}`.
    White,
}

/// Number of a class pattern in the abstract behavior table of the
/// three-control structure: rows are grouped by how many controls sit at
/// `p-1` (row 3 is `alpha` alone, row 6 is `alpha, beta`).
pub const TABLE4_PATTERNS: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

pub fn table4_row(pattern: u8) -> usize {
    TABLE4_PATTERNS
        .iter()
        .position(|&p| p == pattern)
        .expect("3-bit pattern")
}

/// The set of control class patterns on which the composite gate applies `Q`.
///
/// A pattern has one bit per control, control 0 (`alpha`) most significant;
/// a set bit means the control reads `|p-1>`, a clear bit means `Omega`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActivationMask {
    n_controls: usize,
    patterns: BTreeSet<u8>,
}

impl ActivationMask {
    pub fn new(n_controls: usize, patterns: impl IntoIterator<Item = u8>) -> Self {
        let patterns: BTreeSet<u8> = patterns.into_iter().collect();
        assert!(
            patterns.iter().all(|&p| (p as usize) < (1 << n_controls)),
            "pattern out of range"
        );
        Self {
            n_controls,
            patterns,
        }
    }

    /// Builds a three-control mask from abstract behavior table row numbers.
    pub fn from_table4_rows(rows: &[usize]) -> Self {
        Self::new(3, rows.iter().map(|&r| TABLE4_PATTERNS[r]))
    }

    pub fn empty(n_controls: usize) -> Self {
        Self::new(n_controls, [])
    }

    pub fn n_controls(&self) -> usize {
        self.n_controls
    }

    pub fn patterns(&self) -> impl Iterator<Item = u8> + '_ {
        self.patterns.iter().copied()
    }

    pub fn contains(&self, pattern: u8) -> bool {
        self.patterns.contains(&pattern)
    }

    pub fn insert(&mut self, pattern: u8) {
        self.patterns.insert(pattern);
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.patterns.len() == 1 << self.n_controls
    }

    /// Class pattern of a tuple of control basis values.
    pub fn pattern_of(values: &[usize], p: u32) -> u8 {
        values
            .iter()
            .fold(0u8, |acc, &v| (acc << 1) | u8::from(v == p as usize - 1))
    }

    pub fn is_active(&self, values: &[usize], p: u32) -> bool {
        debug_assert_eq!(values.len(), self.n_controls);
        self.contains(Self::pattern_of(values, p))
    }

    /// Table-row numbers (three controls) or raw patterns (two controls).
    pub fn rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = if self.n_controls == 3 {
            self.patterns.iter().map(|&p| table4_row(p)).collect()
        } else {
            self.patterns.iter().map(|&p| p as usize).collect()
        };
        rows.sort_unstable();
        rows
    }

    /// Human-readable class tuples such as `(p-1, Ω, p-1)`.
    pub fn describe(&self) -> Vec<String> {
        self.patterns
            .iter()
            .map(|&pat| describe_pattern(pat, self.n_controls))
            .collect()
    }
}

pub fn describe_pattern(pattern: u8, n_controls: usize) -> String {
    let parts: Vec<&str> = (0..n_controls)
        .rev()
        .map(|bit| if pattern >> bit & 1 == 1 { "p-1" } else { "Ω" })
        .collect();
    format!("({})", parts.join(", "))
}

impl Serialize for ActivationMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.describe().serialize(serializer)
    }
}

impl fmt::Display for ActivationMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.describe().join(" "))
    }
}

/// A named control strategy with its activation mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateMode {
    pub name: ModeName,
    pub n_controls: usize,
    /// Per-control polarity for purely conjunctive masks.
    pub polarity: Option<Vec<Polarity>>,
    pub mask: ActivationMask,
}

impl GateMode {
    pub fn new(name: ModeName) -> Self {
        use ModeName::*;
        use Polarity::{Black as B, White as W};
        let n = name.n_controls();
        let (polarity, mask) = match name {
            Toffoli2Conj | Deutsch2Conj => (Some(vec![B, B]), ActivationMask::new(2, [0b11])),
            Toffoli2Disj | Deutsch2Disj => (None, ActivationMask::new(2, [0b01, 0b10, 0b11])),
            Deutsch2MixedWb => (Some(vec![W, B]), ActivationMask::new(2, [0b01])),
            Deutsch2MixedBw => (Some(vec![B, W]), ActivationMask::new(2, [0b10])),
            Deutsch2Xdisj => (None, ActivationMask::new(2, [0b01, 0b10])),
            // Realized behavior after the degenerate reduction.
            Deutsch2DisjmixedA => (None, ActivationMask::new(2, [0b10, 0b11])),
            Deutsch2DisjmixedB => (None, ActivationMask::new(2, [0b01, 0b11])),
            Conj3 => (Some(vec![B, B, B]), ActivationMask::from_table4_rows(&[7])),
            Disj3 => (
                None,
                ActivationMask::from_table4_rows(&[1, 2, 3, 4, 5, 6, 7]),
            ),
            Case1 => (Some(vec![W, B, B]), ActivationMask::from_table4_rows(&[4])),
            Case2 => (Some(vec![B, W, B]), ActivationMask::from_table4_rows(&[5])),
            Case3 => (Some(vec![B, B, W]), ActivationMask::from_table4_rows(&[6])),
            Case4 => (Some(vec![W, W, B]), ActivationMask::from_table4_rows(&[1])),
            Case5 => (Some(vec![W, B, W]), ActivationMask::from_table4_rows(&[2])),
            Case6 => (Some(vec![B, W, W]), ActivationMask::from_table4_rows(&[3])),
            Case7 => (None, ActivationMask::from_table4_rows(&[4, 5, 6])),
            Case8 => (None, ActivationMask::from_table4_rows(&[1, 2, 3])),
        };
        Self {
            name,
            n_controls: n,
            polarity,
            mask,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }
}

/// Block labels: `G1..G3` for two controls, `A..G` for three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockLabel {
    G1,
    G2,
    G3,
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl BlockLabel {
    pub const TWO: [BlockLabel; 3] = [BlockLabel::G1, BlockLabel::G2, BlockLabel::G3];
    pub const THREE: [BlockLabel; 7] = [
        BlockLabel::A,
        BlockLabel::B,
        BlockLabel::C,
        BlockLabel::D,
        BlockLabel::E,
        BlockLabel::F,
        BlockLabel::G,
    ];

    pub fn for_controls(n: usize) -> &'static [BlockLabel] {
        if n == 2 {
            &Self::TWO
        } else {
            &Self::THREE
        }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GateClass {
    /// `Q` merely unitary; blocks are rational powers of `Q`.
    Deutsch,
    /// `Q` unitary and self-inverse; blocks are `I` or `Q`.
    Toffoli,
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateClass::Deutsch => "deutsch",
            GateClass::Toffoli => "toffoli",
        })
    }
}

/// Exponent of `Q` realized by each block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockAssignment {
    pub class: GateClass,
    pub blocks: Vec<(BlockLabel, RationalExponent)>,
}

impl BlockAssignment {
    pub fn n_controls(&self) -> usize {
        if self.blocks.len() == 3 {
            2
        } else {
            3
        }
    }

    pub fn get(&self, label: BlockLabel) -> Option<RationalExponent> {
        self.blocks
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, e)| *e)
    }

    pub fn exponents(&self) -> Vec<RationalExponent> {
        self.blocks.iter().map(|(_, e)| *e).collect()
    }

    /// Copy with one block's exponent replaced.
    pub fn with(&self, label: BlockLabel, e: RationalExponent) -> Self {
        let mut out = self.clone();
        for (l, x) in &mut out.blocks {
            if *l == label {
                *x = e;
            }
        }
        out
    }
}
