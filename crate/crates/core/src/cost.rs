//! Gate counting and closed-form cost formulas.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{make_not, validate_p};
use crate::netlist::{expand_mcx, Circuit};
use crate::synth::{synthesize, BlockLabel, GateClass, ModeName, Synthesis};

/// Number of MS gates in `c`. With `expanded` every MCX is lowered first,
/// otherwise each MCX counts as one gate.
pub fn count(c: &Circuit, expanded: bool) -> Result<usize> {
    if expanded {
        Ok(expand_mcx(c)?.len())
    } else {
        Ok(c.len())
    }
}

/// Closed-form primitive gate count, where one exists.
///
/// The three-control Toffoli formulas are the published ones; the
/// disjunctive one does not match the construction (see
/// [`construction_count`]).
pub fn formula(mode: ModeName, p: u32, class: GateClass) -> Option<u64> {
    let p = p as u64;
    let toffoli = class == GateClass::Toffoli;
    match mode {
        ModeName::Toffoli2Conj | ModeName::Toffoli2Disj => Some(2 * p),
        ModeName::Deutsch2DisjmixedA | ModeName::Deutsch2DisjmixedB => Some(1),
        m if m.n_controls() == 2 => Some(2 * p + 1),
        ModeName::Conj3 if toffoli => Some(2 * p * p + 4 * p - 1),
        ModeName::Conj3 => Some(2 * p * p + 4 * p + 1),
        ModeName::Disj3 if toffoli => Some(2 * p * p + 8 * p - 4),
        ModeName::Disj3 => Some(2 * p * p + 8 * p - 1),
        _ => None,
    }
}

/// Primitive gates contributed by one block when present.
///
/// Single blocks are one gate. Walked blocks are `p - 1` shift-gate pairs
/// and one recovery shift; for G each shift is an MCX lowered to `2p + 1`
/// gates.
pub fn block_size(label: BlockLabel, p: u32) -> u64 {
    let p = p as u64;
    match label {
        BlockLabel::G1 | BlockLabel::G2 | BlockLabel::A | BlockLabel::B | BlockLabel::C => 1,
        BlockLabel::G3 | BlockLabel::D | BlockLabel::E | BlockLabel::F => 2 * p - 1,
        BlockLabel::G => (p - 1) + p * (2 * p + 1),
    }
}

/// Primitive count implied by the three-control layout for the given set of
/// present blocks (A..G).
pub fn construction_count(p: u32, blocks_present: [bool; 7]) -> u64 {
    BlockLabel::THREE
        .iter()
        .zip(blocks_present)
        .filter(|(_, on)| *on)
        .map(|(&l, _)| block_size(l, p))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub mode: ModeName,
    pub p: u32,
    pub class: GateClass,
    /// Gates as listed, with each MCX counted once.
    pub abstract_count: usize,
    /// MS gates after lowering every MCX.
    pub primitive_count: usize,
    pub mcx_count: usize,
    pub formula_predicted: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    /// Primitive gates per present block.
    pub breakdown: Vec<(BlockLabel, u64)>,
}

pub fn cost_report(s: &Synthesis) -> Result<CostReport> {
    let c = &s.circuit;
    let p = c.p;
    let class = s.assignment.class;
    let primitive_count = count(c, true)?;
    let formula_predicted = formula(s.mode, p, class);
    let breakdown = s
        .assignment
        .blocks
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|&(l, _)| (l, block_size(l, p)))
        .collect();
    Ok(CostReport {
        mode: s.mode,
        p,
        class,
        abstract_count: c.len(),
        primitive_count,
        mcx_count: c.mcx_count(),
        formula_predicted,
        matches: formula_predicted.map(|f| f == primitive_count as u64),
        breakdown,
    })
}

/// One CSV/JSON line of the per-mode cost table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeRow {
    pub mode: String,
    pub p: u32,
    pub class: String,
    #[serde(rename = "abstract")]
    pub abstract_count: usize,
    pub primitive: usize,
    pub formula: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl From<&CostReport> for ModeRow {
    fn from(r: &CostReport) -> Self {
        Self {
            mode: r.mode.as_str().to_string(),
            p: r.p,
            class: r.class.to_string(),
            abstract_count: r.abstract_count,
            primitive: r.primitive_count,
            formula: r.formula_predicted,
            matches: r.matches,
        }
    }
}

/// Cost reports for `modes` in `class` over the given `p` values. Modes
/// that do not exist in the class are skipped.
///
/// Counts do not depend on `Q`; circuits are built with the negation matrix
/// as a stand-in.
pub fn mode_table(ps: &[u32], modes: &[ModeName], class: GateClass) -> Result<Vec<CostReport>> {
    let toffoli = class == GateClass::Toffoli;
    let mut rows = Vec::new();
    for &p in ps {
        validate_p(p)?;
        let q = make_not(p)?;
        for &mode in modes {
            if mode.is_toffoli2() && !toffoli {
                continue;
            }
            rows.push(cost_report(&synthesize(p, &q, mode, toffoli)?)?);
        }
    }
    Ok(rows)
}

/// Primitive counts of conjunctive Deutsch-class gates by number of controls.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub p: u32,
    pub n2: Option<usize>,
    pub n3: Option<usize>,
    /// `n3 / n2` when both are present.
    pub ratio: Option<f64>,
}

pub fn growth_table(ps: &[u32], ns: &[usize]) -> Result<Vec<GrowthRow>> {
    for &n in ns {
        if !(2..=3).contains(&n) {
            return Err(crate::Error::UnsupportedArity(n));
        }
    }
    let mut rows = Vec::new();
    for &p in ps {
        validate_p(p)?;
        let q = make_not(p)?;
        let at = |n: usize, mode: ModeName| -> Result<Option<usize>> {
            if !ns.contains(&n) {
                return Ok(None);
            }
            Ok(Some(count(&synthesize(p, &q, mode, false)?.circuit, true)?))
        };
        let n2 = at(2, ModeName::Deutsch2Conj)?;
        let n3 = at(3, ModeName::Conj3)?;
        let ratio = n2.zip(n3).map(|(a, b)| b as f64 / a as f64);
        rows.push(GrowthRow { p, n2, n3, ratio });
    }
    Ok(rows)
}
