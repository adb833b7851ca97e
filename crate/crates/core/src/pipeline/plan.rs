use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkpat::Kind;

/// The checks the pipeline knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// Homogeneous integer vector against the listed examples and `A_HT` / `A_n`.
    Homogeneous,
    /// Largest homogeneous component.
    Extremal,
    Exchange,
    Cyclic,
    Recursion,
    #[serde(rename = "sumrule")]
    SumRule,
    Projection,
    /// Symbolic reconstruction of the components.
    Polynomial,
    /// `T̃ S = S T`.
    Intertwine,
    /// Loop/spin relations: `B`, `Q`, `P₋`, `C`.
    #[serde(rename = "qpminus")]
    QPMinus,
    #[serde(rename = "spin-sumrules")]
    SpinSumRules,
    Bilinear,
    SRank,
    Census,
    Okada,
    SchurOracle,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::Homogeneous,
        Identity::Extremal,
        Identity::Exchange,
        Identity::Cyclic,
        Identity::Recursion,
        Identity::SumRule,
        Identity::Projection,
        Identity::Polynomial,
        Identity::Intertwine,
        Identity::QPMinus,
        Identity::SpinSumRules,
        Identity::Bilinear,
        Identity::SRank,
        Identity::Census,
        Identity::Okada,
        Identity::SchurOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Homogeneous => "homogeneous",
            Identity::Extremal => "extremal",
            Identity::Exchange => "exchange",
            Identity::Cyclic => "cyclic",
            Identity::Recursion => "recursion",
            Identity::SumRule => "sumrule",
            Identity::Projection => "projection",
            Identity::Polynomial => "polynomial",
            Identity::Intertwine => "intertwine",
            Identity::QPMinus => "qpminus",
            Identity::SpinSumRules => "spin-sumrules",
            Identity::Bilinear => "bilinear",
            Identity::SRank => "s-rank",
            Identity::Census => "census",
            Identity::Okada => "okada",
            Identity::SchurOracle => "schur-oracle",
        }
    }

    /// Whether the check draws random points.
    pub fn sampled(self) -> bool {
        matches!(
            self,
            Identity::Exchange
                | Identity::Cyclic
                | Identity::Recursion
                | Identity::SumRule
                | Identity::Projection
                | Identity::Intertwine
                | Identity::QPMinus
                | Identity::SpinSumRules
                | Identity::SchurOracle
        )
    }

    /// Whether the check needs a pattern kind.
    pub fn needs_kind(self) -> bool {
        matches!(
            self,
            Identity::Homogeneous
                | Identity::Extremal
                | Identity::Exchange
                | Identity::Cyclic
                | Identity::Recursion
                | Identity::SumRule
                | Identity::Projection
                | Identity::Polynomial
                | Identity::Census
        )
    }

    /// Paper statements tested empirically rather than proven.
    pub fn conjectural(self) -> bool {
        matches!(self, Identity::Extremal | Identity::Census)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s || i.name().replace('-', "") == s.replace(['-', '_'], ""))
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// One check of a plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub identity: Identity,
    /// Pattern kind. For `census`, `even` selects plain FPL and anything else
    /// the half-turn symmetric census.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    pub size: usize,
    #[serde(default)]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    /// Negative control: replace the odd sum-rule constant `3^{−n²}` by `3^{−n}`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub corrupt: bool,
}

impl CheckSpec {
    pub fn new(identity: Identity, kind: Option<Kind>, size: usize, samples: usize, seed: u64) -> Self {
        CheckSpec {
            identity,
            kind,
            size,
            samples,
            seed,
            corrupt: false,
        }
    }

    pub fn id(&self) -> String {
        let mut s = self.identity.name().to_string();
        if let Some(k) = self.kind {
            s.push('/');
            s.push_str(k.name());
        }
        s.push_str(&format!("/{}", self.size));
        if self.corrupt {
            s.push_str("/corrupt");
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::ConfigError(format!("{}: {why}", self.id())));
        let l = self.size;
        if self.identity.needs_kind() && self.kind.is_none() {
            return bad("a pattern kind is required".into());
        }
        if let Some(k) = self.kind {
            if self.identity == Identity::Census {
                if l == 0 || l > crate::fpl::MAX_FPL_SIZE {
                    return bad(format!("census size must be in 1..={}", crate::fpl::MAX_FPL_SIZE));
                }
            } else {
                k.check_size(l)?;
            }
        }
        if self.identity.sampled() && self.samples == 0 {
            return bad("needs at least one sample".into());
        }
        if self.corrupt && !(self.identity == Identity::SumRule && self.kind == Some(Kind::Odd)) {
            return bad("only the odd sum rule has a corruptible constant".into());
        }
        let ok = match self.identity {
            Identity::Recursion => self.kind != Some(Kind::Even) && l >= 3,
            Identity::Projection => self.kind != Some(Kind::Even),
            Identity::Exchange | Identity::Cyclic => l >= 2,
            Identity::Bilinear => l.is_multiple_of(2) && l > 0,
            Identity::SRank => l % 2 == 1,
            Identity::Polynomial => l <= 5,
            Identity::Intertwine | Identity::QPMinus | Identity::SpinSumRules => (1..=12).contains(&l),
            _ => true,
        };
        if !ok {
            return bad("unsupported kind or size for this identity".into());
        }
        Ok(())
    }
}

/// A replayable list of checks plus output locations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPlan {
    pub checks: Vec<CheckSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

impl VerifyPlan {
    /// Every check at odd sizes up to `max_odd` and even sizes up to `max_even`.
    pub fn standard(max_odd: usize, max_even: usize, samples: usize, seed: u64) -> Self {
        use Identity::*;
        let odd: Vec<usize> = (1..=max_odd).step_by(2).collect();
        let even: Vec<usize> = (2..=max_even).step_by(2).collect();
        let mut checks = Vec::new();
        let mut add = |id: Identity, kind: Option<Kind>, size: usize| {
            let n = if id.sampled() { samples } else { 0 };
            checks.push(CheckSpec::new(id, kind, size, n, seed));
        };
        for &l in &odd {
            add(Homogeneous, Some(Kind::Odd), l);
            add(Extremal, Some(Kind::Odd), l);
            add(SumRule, Some(Kind::Odd), l);
            if l >= 3 {
                add(Exchange, Some(Kind::Odd), l);
                add(Cyclic, Some(Kind::Odd), l);
                add(Recursion, Some(Kind::Odd), l);
            }
            if l < max_even {
                add(Projection, Some(Kind::Odd), l);
            }
        }
        for &l in &even {
            for kind in [Kind::Punctured, Kind::Even] {
                add(Homogeneous, Some(kind), l);
                add(Extremal, Some(kind), l);
                add(SumRule, Some(kind), l);
                add(Exchange, Some(kind), l);
                add(Cyclic, Some(kind), l);
            }
            if l >= 4 {
                add(Recursion, Some(Kind::Punctured), l);
            }
            if l < max_odd {
                add(Projection, Some(Kind::Punctured), l);
            }
        }
        add(Polynomial, Some(Kind::Odd), 3);
        for l in 1..=max_odd.max(max_even) {
            if (l % 2 == 1 && l <= max_odd) || (l % 2 == 0 && l <= max_even) {
                add(Intertwine, None, l);
                add(QPMinus, None, l);
                add(SpinSumRules, None, l);
            }
        }
        for &l in even.iter().filter(|&&l| l <= 4) {
            add(Bilinear, None, l);
        }
        for &l in odd.iter().filter(|&&l| (3..=5).contains(&l)) {
            add(SRank, None, l);
        }
        for l in 1..=max_odd.max(max_even).min(crate::fpl::MAX_FPL_SIZE) {
            let kind = if l % 2 == 1 { Kind::Odd } else { Kind::Punctured };
            add(Census, Some(kind), l);
        }
        for l in 1..=max_even.min(10) / 2 {
            add(Census, Some(Kind::Even), l);
        }
        add(Okada, None, 10);
        add(SchurOracle, None, max_odd / 2 + 1);
        VerifyPlan {
            checks,
            report: None,
            summary: None,
            cache_dir: None,
        }
    }

    /// Sizes odd ≤ 7, even ≤ 6, 20 samples, seed 1.
    pub fn default_plan() -> Self {
        Self::standard(7, 6, 20, 1)
    }

    /// Adds the corrupted odd sum rule at `L = 5`, which must fail.
    pub fn with_negative_control(mut self) -> Self {
        let seed = self.checks.first().map(|c| c.seed).unwrap_or(1);
        let mut c = CheckSpec::new(Identity::SumRule, Some(Kind::Odd), 5, 2, seed);
        c.corrupt = true;
        self.checks.push(c);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::ConfigError("plan has no checks".into()));
        }
        self.checks.iter().try_for_each(CheckSpec::validate)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let p: VerifyPlan = serde_json::from_str(s)?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
            let j = serde_json::to_string(&id).unwrap();
            assert_eq!(j, format!("\"{}\"", id.name()));
        }
        assert_eq!("QPminus".parse::<Identity>().unwrap(), Identity::QPMinus);
        assert_eq!("sumrules".parse::<Identity>().unwrap_err().to_string(), "parse error: unknown identity \"sumrules\"");
    }

    #[test]
    fn default_plan_is_valid_and_replayable() {
        let p = VerifyPlan::default_plan().with_negative_control();
        p.validate().unwrap();
        assert_eq!(VerifyPlan::from_json(&p.to_json()).unwrap(), p);
        assert!(p.checks.iter().all(|c| c.seed == 1));
    }

    #[test]
    fn invalid_checks() {
        let bad = CheckSpec::new(Identity::SumRule, Some(Kind::Odd), 4, 3, 1);
        assert!(matches!(bad.validate(), Err(Error::SizeParityMismatch { .. })));
        let none = CheckSpec::new(Identity::Exchange, Some(Kind::Odd), 5, 0, 1);
        assert!(matches!(none.validate(), Err(Error::ConfigError(_))));
        let mut c = CheckSpec::new(Identity::Cyclic, Some(Kind::Odd), 5, 1, 1);
        c.corrupt = true;
        assert!(c.validate().is_err());
    }
}
