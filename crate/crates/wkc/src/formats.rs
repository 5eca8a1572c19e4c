//! Text and JSON file formats: bijection files and representative lists.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use wkc_core::abelian::{AbelianGroup, EnumerationMode, Ordering, PointedBijection};
use wkc_core::perm::Permutation;

/// `{"p":2,"k":3,"mode":"graded-lex","images":[...]}`; `images[i]` is the
/// 1-based position of the image of position `i + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionFile {
    pub p: u32,
    pub k: usize,
    pub mode: String,
    pub images: Vec<usize>,
}

impl BijectionFile {
    pub fn from_bijection(f: &PointedBijection, mode: EnumerationMode) -> Result<Self> {
        let a = f.domain();
        let p = a.elementary_prime()?;
        Ok(BijectionFile { p, k: a.rank(), mode: mode.name().into(), images: f.to_position_images(&a.ordering(mode)) })
    }

    pub fn to_bijection(&self) -> Result<(PointedBijection, EnumerationMode)> {
        let mode = EnumerationMode::from_name(&self.mode)?;
        let a = AbelianGroup::elementary(self.p, self.k)?;
        Ok((PointedBijection::from_position_images(&a, &a.ordering(mode), &self.images)?, mode))
    }
}

/// A bijection of `A_{p,k}` from a command-line argument: a cycle string on
/// 1-based positions, `transposition` for the last two positions, or the
/// path of a bijection file (whose group must match).
pub fn parse_bijection(arg: &str, a: &AbelianGroup, mode: EnumerationMode) -> Result<PointedBijection> {
    let ordering = a.ordering(mode);
    let trimmed = arg.trim();
    if trimmed.starts_with('(') {
        return Ok(PointedBijection::from_cycles(a, &ordering, trimmed)?);
    }
    if trimmed == "transposition" {
        return Ok(PointedBijection::last_transposition(a, &ordering)?);
    }
    let text = std::fs::read_to_string(Path::new(trimmed)).with_context(|| format!("reading bijection file {trimmed}"))?;
    let file: BijectionFile = serde_json::from_str(&text).with_context(|| format!("parsing bijection file {trimmed}"))?;
    let (f, file_mode) = file.to_bijection()?;
    if f.domain() != a {
        bail!("bijection file is for A_{{{},{}}}, not {}", file.p, file.k, a);
    }
    if file_mode != mode {
        log::info!("bijection file is written in {} positions, not {}", file_mode.name(), mode.name());
    }
    Ok(f)
}

pub fn cycle_string(f: &PointedBijection, ordering: &Ordering) -> String {
    f.to_cycle_string(ordering)
}

/// Double-coset representatives with the data needed to reuse them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeList {
    /// Name of the acting group, e.g. `SL(3,2)`.
    pub group: String,
    pub n: usize,
    pub method: String,
    pub count: u128,
    /// Label of point 0 in the cycle strings.
    pub base: usize,
    pub representatives: Vec<String>,
}

impl RepresentativeList {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.representatives
            .iter()
            .map(|s| Ok(Permutation::parse_cycles_with_base(s, self.n, self.base)?))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_file_round_trip() {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        let mode = EnumerationMode::GradedLex;
        let f = PointedBijection::from_cycles(&a, &a.ordering(mode), "(5,6,7,8)").unwrap();
        let file = BijectionFile::from_bijection(&f, mode).unwrap();
        assert_eq!(file.images, vec![2, 3, 4, 6, 7, 8, 5]);
        let text = serde_json::to_string(&file).unwrap();
        let back: BijectionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_bijection().unwrap().0, f);
    }

    #[test]
    fn cycle_argument() {
        let a = AbelianGroup::elementary(2, 3).unwrap();
        let f = parse_bijection("(6,7)", &a, EnumerationMode::GradedLex).unwrap();
        assert_eq!(cycle_string(&f, &a.ordering(EnumerationMode::GradedLex)), "(6,7)");
        assert!(parse_bijection("(1,2)", &a, EnumerationMode::GradedLex).is_err());
    }
}
