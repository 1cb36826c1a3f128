//! G-Jiang status of objects and the consequences drawn from it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::GComplex;
use crate::fundamental::FundObject;

/// Families of spaces known to be Jiang spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum JiangFamily {
    Lens,
    HSpace,
    Homogeneous,
}

impl JiangFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lens" => Some(JiangFamily::Lens),
            "H-space" => Some(JiangFamily::HSpace),
            "homogeneous" => Some(JiangFamily::Homogeneous),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            JiangFamily::Lens => "lens",
            JiangFamily::HSpace => "H-space",
            JiangFamily::Homogeneous => "homogeneous",
        }
    }
}

/// User-supplied Jiang information.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JiangDeclarations {
    /// `X/G` is asserted to be a Jiang space.
    pub quotient_is_jiang: bool,
    /// Object id to the family its component belongs to.
    pub families: BTreeMap<usize, JiangFamily>,
    pub assert_objects: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JiangStatus {
    DetectedSimplyConnected,
    DeclaredFamily(JiangFamily),
    FreeQuotientRule,
    UserAsserted,
    Unknown,
}

impl JiangStatus {
    pub fn is_jiang(&self) -> bool {
        *self != JiangStatus::Unknown
    }

    pub fn render(&self) -> String {
        match self {
            JiangStatus::DetectedSimplyConnected => "simply connected".into(),
            JiangStatus::DeclaredFamily(f) => alloc::format!("declared {}", f.name()),
            JiangStatus::FreeQuotientRule => "free action with Jiang quotient".into(),
            JiangStatus::UserAsserted => "asserted".into(),
            JiangStatus::Unknown => "unknown".into(),
        }
    }
}

/// The status reported for an object together with every rule that applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JiangAssessment {
    pub status: JiangStatus,
    pub reasons: Vec<JiangStatus>,
}

/// Whether every non-identity element moves every simplex.
pub fn action_is_free(x: &GComplex) -> bool {
    x.all().iter().all(|s| x.isotropy(s).order() == 1)
}

pub fn is_connected(x: &GComplex) -> bool {
    x.all().components().len() == 1
}

/// Status per object, first applicable rule in the order simply connected,
/// declared family, free quotient, user assertion.
pub fn jiang_status(x: &GComplex, objects: &[FundObject], decl: &JiangDeclarations) -> Vec<JiangAssessment> {
    let free_quotient = decl.quotient_is_jiang && action_is_free(x) && is_connected(x);
    objects
        .iter()
        .map(|o| {
            let mut reasons = Vec::new();
            if o.pi1.order() == 1 && !o.pi1.is_infinite_cyclic() {
                reasons.push(JiangStatus::DetectedSimplyConnected);
            }
            if let Some(&f) = decl.families.get(&o.id) {
                reasons.push(JiangStatus::DeclaredFamily(f));
            }
            if free_quotient {
                reasons.push(JiangStatus::FreeQuotientRule);
            }
            if decl.assert_objects.contains(&o.id) {
                reasons.push(JiangStatus::UserAsserted);
            }
            JiangAssessment {
                status: reasons.first().copied().unwrap_or(JiangStatus::Unknown),
                reasons,
            }
        })
        .collect()
}

/// Size of a set of classes that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassCount {
    Finite(usize),
    Infinite,
}

impl ClassCount {
    pub fn render(&self) -> String {
        match self {
            ClassCount::Finite(n) => alloc::format!("{n}"),
            ClassCount::Infinite => "infinite".into(),
        }
    }
}

/// What the dichotomy predicts at one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// Jiang hypothesis unverified.
    Withheld,
    /// `L_G = 0`, hence `lambda_G = 0` and `N_G = 0`.
    Vanishing,
    /// `L_G != 0`, hence `N_G` equals the number of surviving classes.
    AllEssential(ClassCount),
}

/// Dichotomy conclusion with its cross-checks against the direct computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyOutcome {
    pub conclusion: Dichotomy,
    /// The predicted `N_G`, when one is made.
    pub predicted: Option<usize>,
    /// Prediction matches `N_G`, `lambda_G` vanishes when `L_G` does, and
    /// `lambda_G` is constant on classes. Vacuous when withheld.
    pub consistent: bool,
}

pub fn dichotomy(
    status: &JiangAssessment,
    lefschetz: i64,
    lambda_is_zero: bool,
    lambda_is_constant: bool,
    surviving: ClassCount,
    n_g: usize,
) -> DichotomyOutcome {
    if !status.status.is_jiang() {
        return DichotomyOutcome {
            conclusion: Dichotomy::Withheld,
            predicted: None,
            consistent: true,
        };
    }
    if lefschetz == 0 {
        return DichotomyOutcome {
            conclusion: Dichotomy::Vanishing,
            predicted: Some(0),
            consistent: lambda_is_zero && n_g == 0,
        };
    }
    let predicted = match surviving {
        ClassCount::Finite(n) => Some(n),
        ClassCount::Infinite => None,
    };
    DichotomyOutcome {
        conclusion: Dichotomy::AllEssential(surviving),
        predicted,
        consistent: lambda_is_constant && predicted == Some(n_g),
    }
}

/// Outcome of the converse Lefschetz test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConverseVerdict {
    Affirmative,
    Fails {
        nonzero_lefschetz: Vec<usize>,
        not_jiang: Vec<usize>,
        gap_fails: Vec<usize>,
    },
}

impl ConverseVerdict {
    pub fn new(nonzero_lefschetz: Vec<usize>, not_jiang: Vec<usize>, gap_fails: Vec<usize>) -> Self {
        if nonzero_lefschetz.is_empty() && not_jiang.is_empty() && gap_fails.is_empty() {
            ConverseVerdict::Affirmative
        } else {
            ConverseVerdict::Fails {
                nonzero_lefschetz,
                not_jiang,
                gap_fails,
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            ConverseVerdict::Affirmative => {
                "L_G vanishes on a G-Jiang space with gap: G-homotopic to a fixed point free G-map".into()
            }
            ConverseVerdict::Fails {
                nonzero_lefschetz,
                not_jiang,
                gap_fails,
            } => {
                let mut parts = Vec::new();
                if !nonzero_lefschetz.is_empty() {
                    parts.push(alloc::format!("L_G non-zero at objects {nonzero_lefschetz:?}"));
                }
                if !not_jiang.is_empty() {
                    parts.push(alloc::format!("Jiang hypothesis unverified at objects {not_jiang:?}"));
                }
                if !gap_fails.is_empty() {
                    parts.push(alloc::format!("gap fails at objects {gap_fails:?}"));
                }
                alloc::format!("not applicable: {}", parts.join("; "))
            }
        }
    }
}
