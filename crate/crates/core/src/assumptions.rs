//! User-asserted hypotheses. The toolkit records these flags in every report
//! and never claims to have verified them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    /// `R` is a normal domain.
    NormalDomain,
    CohenMacaulay,
    /// The dualizing sheaf of `Proj R` is invertible.
    OmegaInvertible,
    /// Support points of `O_Y / I~` are smooth points of `Proj R`.
    SmoothProj,
    /// Every Koszul syzygy bundle of the ideal is strongly semistable.
    StronglySemistable,
    /// The ideal is `R_+`-primary.
    Primary,
}

pub type AssumptionSet = BTreeSet<Assumption>;

impl Assumption {
    pub const ALL: [Assumption; 6] = [
        Assumption::NormalDomain,
        Assumption::CohenMacaulay,
        Assumption::OmegaInvertible,
        Assumption::SmoothProj,
        Assumption::StronglySemistable,
        Assumption::Primary,
    ];

    pub const fn as_str(&self) -> &'static str {
        match self {
            Assumption::NormalDomain => "normal_domain",
            Assumption::CohenMacaulay => "cohen_macaulay",
            Assumption::OmegaInvertible => "omega_invertible",
            Assumption::SmoothProj => "smooth_proj",
            Assumption::StronglySemistable => "strongly_semistable",
            Assumption::Primary => "primary",
        }
    }
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Assumption {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Assumption::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| format!("unknown assumption flag `{s}`"))
    }
}

/// Flags the inclusion theorem for Frobenius powers rests on.
pub const INCLUSION_HYPOTHESES: [Assumption; 3] =
    [Assumption::NormalDomain, Assumption::CohenMacaulay, Assumption::OmegaInvertible];

/// Returns the first flag of `needed` missing from `have`.
pub fn first_missing(have: &AssumptionSet, needed: &[Assumption]) -> Option<Assumption> {
    needed.iter().copied().find(|a| !have.contains(a))
}

/// Caveats attached verbatim to reports whose meaning depends on them.
pub mod caveats {
    pub const FINITE_EVIDENCE: &str =
        "finite evidence only: tight closure quantifies over all q = p^e; passing tests for finitely many q do not prove membership in I*";

    pub const LARGE_CHARACTERISTIC: &str =
        "the degree guarantee for the generic quartic surface holds only for p >> 0; a failure at small p does not contradict it";

    pub const ASSUMED_NOT_VERIFIED: &str =
        "geometric hypotheses are user assertions recorded as flags; none of them has been verified";

    pub const KOSZUL_NOT_MINIMAL: &str =
        "slopes come from the Koszul complex, which need not be a minimal resolution; the bound may be non-optimal";
}
