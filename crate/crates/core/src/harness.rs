//! Bound predictions for pendant-edge augmentation as pure functions of a
//! color profile, plus the experiment driver that cross-checks a prediction
//! against the explicit construction, the pendant-bound certificate and the
//! exhaustive solver.
//!
//! Throughout, `j` is the band index of the profile: the least class index
//! with e < c_j among the non-pendant classes 1..r. It always exists because
//! c_r > e in every valid profile.

use serde::{Deserialize, Serialize};

use crate::constructions::{augment_and_label, check_parity};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::{extract_profile, ColorProfile, EdgeLabeling};
use crate::solver::{certify, solve_chi_la, CertifyOutcome, SolveOptions};

/// Which prediction rule fired, named by where the edge count e sits among
/// the class colors and which kind of class is being augmented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundCase {
    /// e < c_1, augmenting a non-pendant class: exact.
    BelowFirstColor,
    /// c_1 <= e < c_2, augmenting class 1: exact.
    FirstBandClassOne,
    /// c_1 <= e < c_2, augmenting class 2..r: two-wide range, exact when
    /// pinned by e = c_1 and b = 1.
    FirstBand,
    /// c_{j-1} <= e < c_j, augmenting a class below the band that holds a
    /// pendant.
    MidBandPendantClass,
    /// Same band position, class holds no pendant.
    MidBandPlainClass,
    /// c_{j-1} <= e < c_j, augmenting a class at or above the band.
    MidBandUpperClass,
    /// e = c_{j-1} and b = j-1 pin the mid band to an exact value.
    MidBandPinned,
    /// e < c_1, augmenting a pendant singleton class: exact.
    SingletonBelowFirstColor,
    /// c_{j-1} <= e < c_j, augmenting a pendant singleton class.
    SingletonMidBand,
    /// b = j-1 pins the singleton mid band to an exact value.
    SingletonMidBandPinned,
    /// Base with color count = pendants + 1: augmenting its one pendant-free
    /// class.
    OptimalPendantTopClass,
    /// Base with color count = pendants + 1: augmenting any other class.
    OptimalPendantOtherClass,
    /// Star base: augmenting a leaf class.
    OptimalPendantStarLeaf,
}

/// A predicted lower/upper bound (possibly exact) for the local antimagic
/// chromatic number of an augmented graph, with an applicability record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedBounds {
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub case: Option<BoundCase>,
    pub applicable: bool,
    pub failed_preconditions: Vec<String>,
    pub notes: Vec<String>,
}

impl PredictedBounds {
    fn exact(case: BoundCase, value: u64, notes: Vec<String>) -> Self {
        PredictedBounds {
            lower: value,
            upper: value,
            exact: Some(value),
            case: Some(case),
            applicable: true,
            failed_preconditions: Vec::new(),
            notes,
        }
    }

    fn range(case: BoundCase, lower: u64, upper: u64, notes: Vec<String>) -> Self {
        debug_assert!(lower <= upper);
        PredictedBounds {
            lower,
            upper,
            exact: (lower == upper).then_some(lower),
            case: Some(case),
            applicable: true,
            failed_preconditions: Vec::new(),
            notes,
        }
    }

    fn inapplicable(failed: Vec<String>, notes: Vec<String>) -> Self {
        PredictedBounds {
            lower: 0,
            upper: 0,
            exact: None,
            case: None,
            applicable: false,
            failed_preconditions: failed,
            notes,
        }
    }
}

fn cmul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("bound arithmetic"))
}

fn cadd(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow("bound arithmetic"))
}

/// Least j in 1..=r with e < c_j.
fn band_index(p: &ColorProfile) -> usize {
    (1..=p.r)
        .find(|&j| p.e < p.color(j))
        .expect("c_r > e in a valid profile")
}

struct Preconditions {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Preconditions {
    fn new() -> Self {
        Preconditions {
            failed: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, reason: &str) {
        if !ok {
            self.failed.push(reason.to_string());
        }
    }

    fn parity(&mut self, s: u64, n_i: u64) {
        if let Err(e) = check_parity(s, n_i) {
            self.failed.push(e.to_string());
        }
    }

    /// e + s*n_i >= threshold, flagging exact equality for the report.
    fn magnitude(&mut self, p: &ColorProfile, s: u64, n_i: u64, threshold: u64) -> Result<()> {
        let reach = cadd(p.e, cmul(s, n_i)?)?;
        if reach < threshold {
            self.failed.push(format!(
                "magnitude condition fails: e + s*n_i = {reach} < {threshold}"
            ));
        } else if reach == threshold {
            self.notes
                .push(format!("magnitude condition met with equality at {threshold}"));
        }
        Ok(())
    }
}

/// Bounds for augmenting a class among 1..r of a labeled base graph.
///
/// Needs r >= 2, the parity rule on s, and e + s*n_i to reach c_r (below
/// the top class) or c_{r-1} (at the top class, where it holds automatically
/// once c_{r-1} <= e).
pub fn predict_nonpendant_class(p: &ColorProfile, i: usize, s: u64) -> Result<PredictedBounds> {
    p.validate()?;
    if i < 1 || i > p.r {
        return Err(Error::ClassOutOfRange { index: i, max: p.r });
    }
    let mut pre = Preconditions::new();
    pre.require(
        p.r >= 2,
        "needs at least two color classes containing non-pendant vertices (r >= 2)",
    );
    let n_i = p.size(i);
    pre.parity(s, n_i);
    if p.r >= 2 {
        let threshold = if i < p.r { p.color(p.r) } else { p.color(p.r - 1) };
        pre.magnitude(p, s, n_i, threshold)?;
    }
    if !pre.failed.is_empty() {
        return Ok(PredictedBounds::inapplicable(pre.failed, pre.notes));
    }

    let spread = (p.t - p.r) as u64;
    let base = cadd(cmul(s, n_i)?, spread)?;
    let b = p.b as u64;
    let j = band_index(p);
    let bounds = match j {
        1 => PredictedBounds::exact(BoundCase::BelowFirstColor, cadd(base, 1)?, pre.notes),
        2 => {
            if i == 1 {
                PredictedBounds::exact(BoundCase::FirstBandClassOne, cadd(base, 1)?, pre.notes)
            } else if p.e == p.color(1) && p.b == 1 {
                pre.notes.push("pinned exact: e = c_1 and b = 1".into());
                PredictedBounds::exact(BoundCase::FirstBand, cadd(base, 2)?, pre.notes)
            } else {
                PredictedBounds::range(
                    BoundCase::FirstBand,
                    cadd(base, b + 1)?,
                    cadd(base, 2)?,
                    pre.notes,
                )
            }
        }
        j => {
            let j64 = j as u64;
            if p.e == p.color(j - 1) && p.b == j - 1 {
                pre.notes
                    .push(format!("pinned exact: e = c_{} and b = {}", j - 1, j - 1));
                let value = if i < j {
                    cadd(base, j64 - 1)?
                } else {
                    cadd(base, j64)?
                };
                PredictedBounds::exact(BoundCase::MidBandPinned, value, pre.notes)
            } else if i < j {
                let upper = cadd(base, j64 - 1)?;
                if p.class_has_pendant(i) {
                    PredictedBounds::range(
                        BoundCase::MidBandPendantClass,
                        cadd(base, b)?,
                        upper,
                        pre.notes,
                    )
                } else {
                    PredictedBounds::range(
                        BoundCase::MidBandPlainClass,
                        cadd(base, b + 1)?,
                        upper,
                        pre.notes,
                    )
                }
            } else {
                PredictedBounds::range(
                    BoundCase::MidBandUpperClass,
                    cadd(base, b + 1)?,
                    cadd(base, j64)?,
                    pre.notes,
                )
            }
        }
    };
    Ok(bounds)
}

/// Bounds for augmenting a pendant singleton class (index in r+1..t) of a
/// labeled base graph that is not a star. Needs e + s >= c_r.
pub fn predict_pendant_class(p: &ColorProfile, i: usize, s: u64) -> Result<PredictedBounds> {
    p.validate()?;
    if i <= p.r || i > p.t {
        return Err(Error::ClassOutOfRange { index: i, max: p.t });
    }
    let mut pre = Preconditions::new();
    // All non-pendant vertices sharing one color forces a star base.
    pre.require(p.r >= 2, "base graph is a star");
    pre.parity(s, 1);
    pre.magnitude(p, s, 1, p.color(p.r))?;
    if !pre.failed.is_empty() {
        return Ok(PredictedBounds::inapplicable(pre.failed, pre.notes));
    }

    let spread = (p.t - p.r) as u64;
    let base = cadd(s, spread)?;
    let j = band_index(p);
    let bounds = if j == 1 {
        PredictedBounds::exact(BoundCase::SingletonBelowFirstColor, base, pre.notes)
    } else {
        let upper = cadd(base, j as u64 - 1)?;
        if p.b == j - 1 {
            pre.notes.push(format!("pinned exact: b = {}", j - 1));
            PredictedBounds::exact(BoundCase::SingletonMidBandPinned, upper, pre.notes)
        } else {
            PredictedBounds::range(
                BoundCase::SingletonMidBand,
                cadd(base, p.b as u64)?,
                upper,
                pre.notes,
            )
        }
    };
    Ok(bounds)
}

/// Exact values for augmenting any class of a base whose color count equals
/// its pendant count plus one (so the labeling already witnesses the pendant
/// lower bound). Class r is the unique pendant-free class and jumps to
/// s*n_r + k + 1; every other class lands on s*n_i + k. A star base only
/// admits leaf classes.
pub fn predict_optimal_base(p: &ColorProfile, i: usize, s: u64) -> Result<PredictedBounds> {
    p.validate()?;
    if i < 1 || i > p.t {
        return Err(Error::ClassOutOfRange { index: i, max: p.t });
    }
    let k = p.pendant_count();
    let mut pre = Preconditions::new();
    pre.require(k >= 1, "base has no pendant vertices");
    pre.require(
        p.t as u64 == k + 1,
        "base color count must equal pendant count + 1",
    );
    let n_i = p.size(i);
    pre.parity(s, n_i);
    if p.r == 1 && i == 1 {
        pre.failed
            .push("augmenting the star center only rebuilds a larger star".into());
    } else if p.t as u64 == k + 1 {
        let threshold = if i == p.r {
            p.color(p.r - 1)
        } else {
            p.color(p.r)
        };
        pre.magnitude(p, s, n_i, threshold)?;
    }
    if !pre.failed.is_empty() {
        return Ok(PredictedBounds::inapplicable(pre.failed, pre.notes));
    }

    if i == p.r {
        let value = cadd(cmul(s, n_i)?, k + 1)?;
        Ok(PredictedBounds::exact(
            BoundCase::OptimalPendantTopClass,
            value,
            pre.notes,
        ))
    } else {
        let case = if p.r == 1 {
            BoundCase::OptimalPendantStarLeaf
        } else {
            BoundCase::OptimalPendantOtherClass
        };
        let value = cadd(cmul(s, n_i)?, k)?;
        Ok(PredictedBounds::exact(case, value, pre.notes))
    }
}

/// Picks the strongest rule for the profile: the pendant-optimal rule when
/// the base witnesses color count = pendants + 1, otherwise the rule
/// matching the class kind.
pub fn predict_auto(p: &ColorProfile, i: usize, s: u64) -> Result<PredictedBounds> {
    p.validate()?;
    let k = p.pendant_count();
    if k >= 1 && p.t as u64 == k + 1 {
        predict_optimal_base(p, i, s)
    } else if i <= p.r {
        predict_nonpendant_class(p, i, s)
    } else {
        predict_pendant_class(p, i, s)
    }
}

/// One prediction-vs-reality row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub instance: String,
    pub class_index: usize,
    pub s: u64,
    pub predicted: PredictedBounds,
    pub constructed_color_count: Option<u64>,
    pub construction_valid: Option<bool>,
    pub certified_value: Option<u64>,
    pub solver_value: Option<u64>,
    pub consistent: bool,
}

pub(crate) fn consistency_verdict(
    predicted: &PredictedBounds,
    construction_valid: Option<bool>,
    constructed: Option<u64>,
    certified: Option<u64>,
    solver: Option<u64>,
) -> bool {
    if !predicted.applicable {
        return true;
    }
    let within = |v: u64| predicted.lower <= v && v <= predicted.upper;
    let mut ok = construction_valid != Some(false);
    if construction_valid == Some(true) {
        if let Some(cc) = constructed {
            ok &= within(cc);
        }
    }
    if let Some(sv) = solver {
        ok &= within(sv);
    }
    if let Some(cv) = certified {
        ok &= within(cv);
    }
    if let (Some(cc), Some(sv)) = (constructed, solver) {
        ok &= cc >= sv;
    }
    if let (Some(cv), Some(sv)) = (certified, solver) {
        ok &= cv == sv;
    }
    ok
}

/// Predicts, constructs, certifies and (optionally) solves one augmentation
/// instance. When the prediction is inapplicable nothing is run and the row
/// is vacuously consistent; the solver only runs within its edge limit.
pub fn run_experiment(
    instance: impl Into<String>,
    g: &Graph,
    f: &EdgeLabeling,
    class_index: usize,
    s: u64,
    use_solver: bool,
    solve_opts: SolveOptions,
) -> Result<ExperimentReport> {
    let profile = extract_profile(g, f)?;
    let predicted = predict_auto(&profile, class_index, s)?;
    let mut report = ExperimentReport {
        instance: instance.into(),
        class_index,
        s,
        predicted,
        constructed_color_count: None,
        construction_valid: None,
        certified_value: None,
        solver_value: None,
        consistent: true,
    };
    if !report.predicted.applicable {
        return Ok(report);
    }

    let built = augment_and_label(g, f, class_index, s)?;
    report.constructed_color_count = Some(built.color_count as u64);
    report.construction_valid = Some(built.local_antimagic);
    if built.local_antimagic {
        if let CertifyOutcome::Certified(result) = certify(&built.graph, &built.labeling)? {
            report.certified_value = Some(result.chi_la as u64);
        }
        if use_solver && built.graph.edge_count() <= solve_opts.edge_limit {
            report.solver_value = Some(solve_chi_la(&built.graph, solve_opts)?.chi_la as u64);
        }
    }
    report.consistent = consistency_verdict(
        &report.predicted,
        report.construction_valid,
        report.constructed_color_count,
        report.certified_value,
        report.solver_value,
    );
    Ok(report)
}
