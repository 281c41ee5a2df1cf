use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use qupit::linalg::{make_not, make_x, make_z, random_unitary_seeded};
use qupit::ComplexMatrix;

/// Where the target unitary comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum QSource {
    Not,
    Shift,
    Phase,
    Delta(f64),
    File(PathBuf),
    Random,
}

impl FromStr for QSource {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        Ok(match (kind, arg) {
            ("builtin", "N") => QSource::Not,
            ("builtin", "X") => QSource::Shift,
            ("builtin", "Z") => QSource::Phase,
            ("builtin", other) => bail!("unknown builtin `{other}` (expected N, X or Z)"),
            ("delta", angle) => QSource::Delta(
                angle
                    .parse()
                    .with_context(|| format!("bad angle `{angle}`"))?,
            ),
            ("file", path) if !path.is_empty() => QSource::File(path.into()),
            ("random", "") => QSource::Random,
            _ => bail!("unrecognized Q source `{s}`"),
        })
    }
}

impl QSource {
    pub fn load(&self, p: u32, seed: u64) -> anyhow::Result<ComplexMatrix> {
        let q = match self {
            QSource::Not => make_not(p)?,
            QSource::Shift => make_x(p)?,
            QSource::Phase => make_z(p)?,
            QSource::Delta(_) => {
                bail!("delta:<angle> is a two-level matrix and cannot act on a p-level line")
            }
            QSource::File(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                ComplexMatrix::from_json(&text)
                    .with_context(|| format!("parsing {}", path.display()))?
            }
            QSource::Random => random_unitary_seeded(p as usize, seed),
        };
        if q.dim() != p as usize {
            return Err(anyhow!("Q is {0}x{0} but p = {p}", q.dim()));
        }
        Ok(q)
    }
}
