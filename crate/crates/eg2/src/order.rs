//! Grid-based comparators for the stochastic orders: usual stochastic
//! (survival dominance), failure rate, reversed failure rate, and
//! likelihood ratio (monotone density ratio), plus an implication audit
//! and a survival-crossing finder.
//!
//! A comparator certifies dominance only on its grid window; the reports
//! carry the grid used so runs are reproducible.

use crate::error::{Error, Result};
use crate::grid::{map_points, GridSpec};
use crate::system::{ComponentSet, SystemKind};

/// Default absolute dominance tolerance.
pub const DEFAULT_DOMINANCE_TOL: f64 = 1e-10;

/// Points where both survivals sit below this are excluded from survival
/// comparisons (both tails numerically dead).
pub const DEAD_TAIL: f64 = 1e-14;

/// Relative width targets for crossing refinement.
const ST_REFINE_REL: f64 = 1e-8;
const CROSSING_REFINE_REL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    FirstDominates,
    SecondDominates,
    Equal,
    Crossing,
    Inconclusive,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Relation::FirstDominates => "FirstDominates",
            Relation::SecondDominates => "SecondDominates",
            Relation::Equal => "Equal",
            Relation::Crossing => "Crossing",
            Relation::Inconclusive => "Inconclusive",
        };
        write!(f, "{s}")
    }
}

/// A bisection-refined bracket around one sign change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingInterval {
    pub lo: f64,
    pub hi: f64,
}

impl CrossingInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Outcome of a grid comparison. `relation == Crossing` iff `crossings` is
/// non-empty. `max_violation` is the largest pointwise excursion against
/// the reported relation (for `Crossing`, the smaller of the two one-sided
/// excesses; a sign-free touch of zero shows up here, not as a crossing).
#[derive(Debug, Clone)]
pub struct DominanceVerdict {
    pub relation: Relation,
    pub crossings: Vec<CrossingInterval>,
    pub max_violation: f64,
    pub grid: GridSpec,
}

fn check_tol(tol: f64) -> Result<()> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

fn bisect_sign_change(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, rel: f64) -> CrossingInterval {
    let sign_lo = g(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel * mid {
            break;
        }
        if (g(mid) > 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    CrossingInterval { lo, hi }
}

/// Pointwise-difference classifier shared by the value comparators.
/// `diffs[i] = Some(a_i - b_i)` at usable points, `None` where excluded.
fn classify_differences(
    xs: &[f64],
    diffs: &[Option<f64>],
    tol: f64,
    refine_rel: f64,
    g: &dyn Fn(f64) -> f64,
    grid: GridSpec,
) -> DominanceVerdict {
    let mut max_d = f64::NEG_INFINITY;
    let mut min_d = f64::INFINITY;
    let mut last_signed: Option<(f64, i8)> = None;
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut any = false;
    for (&x, d) in xs.iter().zip(diffs.iter()) {
        let Some(d) = *d else { continue };
        any = true;
        max_d = max_d.max(d);
        min_d = min_d.min(d);
        let s: i8 = if d > tol {
            1
        } else if d < -tol {
            -1
        } else {
            0
        };
        if s != 0 {
            if let Some((px, ps)) = last_signed {
                if ps != s {
                    brackets.push((px, x));
                }
            }
            last_signed = Some((x, s));
        }
    }
    if !any {
        return DominanceVerdict {
            relation: Relation::Inconclusive,
            crossings: Vec::new(),
            max_violation: 0.0,
            grid,
        };
    }
    if !brackets.is_empty() {
        let crossings = brackets
            .into_iter()
            .map(|(lo, hi)| bisect_sign_change(g, lo, hi, refine_rel))
            .collect();
        return DominanceVerdict {
            relation: Relation::Crossing,
            crossings,
            max_violation: max_d.min(-min_d),
            grid,
        };
    }
    let (relation, max_violation) = if max_d > tol {
        (Relation::FirstDominates, (-min_d).max(0.0))
    } else if min_d < -tol {
        (Relation::SecondDominates, max_d.max(0.0))
    } else {
        (Relation::Equal, max_d.abs().max(min_d.abs()))
    };
    DominanceVerdict {
        relation,
        crossings: Vec::new(),
        max_violation,
        grid,
    }
}

fn survival_diffs(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    xs: &[f64],
) -> Result<Vec<Option<f64>>> {
    let pairs: Vec<Result<(f64, f64)>> = map_points(xs, |x| {
        Ok((
            a.survival(kind, x)?.value(),
            b.survival(kind, x)?.value(),
        ))
    });
    pairs
        .into_iter()
        .map(|r| {
            r.map(|(sa, sb)| {
                if sa < DEAD_TAIL && sb < DEAD_TAIL {
                    None
                } else {
                    Some(sa - sb)
                }
            })
        })
        .collect()
}

/// Usual stochastic order: pointwise comparison of the two systems'
/// survival functions on the grid, with sign changes refined by bisection
/// to a width below `1e-8 * x`.
pub fn compare_st(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
    tol: f64,
) -> Result<DominanceVerdict> {
    check_tol(tol)?;
    let xs = grid.points();
    let diffs = survival_diffs(a, b, kind, &xs)?;
    let g = move |x: f64| {
        a.survival(kind, x).map(|p| p.value()).unwrap_or(f64::NAN)
            - b.survival(kind, x).map(|p| p.value()).unwrap_or(f64::NAN)
    };
    Ok(classify_differences(&xs, &diffs, tol, ST_REFINE_REL, &g, *grid))
}

/// Failure rate order: pointwise comparison of the system hazards
/// `pdf / survival`. A stochastically larger lifetime has the smaller
/// hazard, so `FirstDominates` means the first system's hazard sits below
/// the second's everywhere (matching the "first is larger" reading of the
/// other comparators). Points where either hazard is not representable
/// are excluded.
pub fn compare_fr(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
    tol: f64,
) -> Result<DominanceVerdict> {
    check_tol(tol)?;
    let hazard = |set: &ComponentSet, x: f64| -> f64 {
        let surv = match set.survival(kind, x) {
            Ok(p) => p.value(),
            Err(_) => return f64::NAN,
        };
        match set.ln_pdf(kind, x) {
            Ok(lp) => lp.exp() / surv,
            Err(_) => f64::NAN,
        }
    };
    let xs = grid.points();
    let values: Vec<(f64, f64)> = map_points(&xs, |x| (hazard(a, x), hazard(b, x)));
    let diffs: Vec<Option<f64>> = values
        .iter()
        .map(|&(ra, rb)| {
            if ra.is_finite() && rb.is_finite() {
                Some(rb - ra)
            } else {
                None
            }
        })
        .collect();
    let g = move |x: f64| hazard(b, x) - hazard(a, x);
    Ok(classify_differences(&xs, &diffs, tol, ST_REFINE_REL, &g, *grid))
}

fn parallel_reversed_hazard_value(set: &ComponentSet, x: f64) -> f64 {
    if set.common_theta_phi().is_some() {
        set.parallel_reversed_hazard(x).unwrap_or(f64::NAN)
    } else {
        // Fallback: pdf / cdf of the parallel lifetime.
        let cdf = match set.parallel_cdf(x) {
            Ok(p) => p.value(),
            Err(_) => return f64::NAN,
        };
        if cdf == 0.0 {
            return f64::NAN;
        }
        match set.ln_pdf(SystemKind::Parallel, x) {
            Ok(lp) => lp.exp() / cdf,
            Err(_) => f64::NAN,
        }
    }
}

/// Reversed failure rate order for the parallel lifetimes: pointwise
/// comparison of the systems' reversed hazards. Uses the common-(theta,
/// phi) kernel closed form where available, else falls back to `pdf / cdf`.
pub fn compare_rf(
    a: &ComponentSet,
    b: &ComponentSet,
    grid: &GridSpec,
    tol: f64,
) -> Result<DominanceVerdict> {
    check_tol(tol)?;
    let xs = grid.points();
    let values: Vec<(f64, f64)> = map_points(&xs, |x| {
        (
            parallel_reversed_hazard_value(a, x),
            parallel_reversed_hazard_value(b, x),
        )
    });
    let diffs: Vec<Option<f64>> = values
        .iter()
        .map(|&(ra, rb)| {
            if ra.is_finite() && rb.is_finite() {
                Some(ra - rb)
            } else {
                None
            }
        })
        .collect();
    let g = move |x: f64| {
        parallel_reversed_hazard_value(a, x) - parallel_reversed_hazard_value(b, x)
    };
    Ok(classify_differences(&xs, &diffs, tol, ST_REFINE_REL, &g, *grid))
}

/// Likelihood ratio order: monotonicity of the density ratio `f_A / f_B`
/// across the grid, judged on consecutive differences of the log ratio
/// (the log form avoids overflow in deep tails).
///
/// `FirstDominates` means the ratio is nondecreasing (B <=_lr A). One
/// direction flip classifies as `Crossing`; more than one as
/// `Inconclusive`.
pub fn compare_lr(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
    tol: f64,
) -> Result<DominanceVerdict> {
    check_tol(tol)?;
    let xs = grid.points();
    let ratios: Vec<Result<f64>> = map_points(&xs, |x| {
        let la = a.ln_pdf(kind, x)?;
        let lb = b.ln_pdf(kind, x)?;
        if la == f64::NEG_INFINITY || lb == f64::NEG_INFINITY || la.is_nan() || lb.is_nan() {
            return Err(Error::ZeroDensity { x });
        }
        Ok(la - lb)
    });
    let ratios: Vec<f64> = ratios.into_iter().collect::<Result<Vec<f64>>>()?;
    let scale = ratios
        .iter()
        .fold(1f64, |acc, &r| acc.max(r.abs()));
    let band = tol * scale;

    let mut signs: Vec<(usize, i8)> = Vec::new(); // (diff index, sign)
    let mut max_pos = 0.0f64;
    let mut max_neg = 0.0f64;
    for i in 0..ratios.len() - 1 {
        let d = ratios[i + 1] - ratios[i];
        max_pos = max_pos.max(d);
        max_neg = max_neg.max(-d);
        let s: i8 = if d > band {
            1
        } else if d < -band {
            -1
        } else {
            0
        };
        if s != 0 {
            signs.push((i, s));
        }
    }
    let mut flips: Vec<CrossingInterval> = Vec::new();
    for w in signs.windows(2) {
        if w[0].1 != w[1].1 {
            flips.push(CrossingInterval {
                lo: xs[w[0].0],
                hi: xs[w[1].0 + 1],
            });
        }
    }
    let verdict = |relation, crossings, max_violation| DominanceVerdict {
        relation,
        crossings,
        max_violation,
        grid: *grid,
    };
    Ok(match (signs.first(), flips.len()) {
        (None, _) => verdict(Relation::Equal, Vec::new(), max_pos.max(max_neg)),
        (Some(&(_, 1)), 0) => verdict(Relation::FirstDominates, Vec::new(), max_neg),
        (Some(_), 0) => verdict(Relation::SecondDominates, Vec::new(), max_pos),
        (_, 1) => verdict(Relation::Crossing, flips, max_pos.min(max_neg)),
        // Multiple flips: non-monotone without clean sign structure.
        _ => verdict(Relation::Inconclusive, Vec::new(), max_pos.min(max_neg)),
    })
}

/// Audit of the implication chain lr => rf => st on one instance pair. The
/// reversed-failure-rate leg applies to parallel lifetimes only, so it is
/// audited just for `SystemKind::Parallel`.
///
/// The implications assume the stronger order holds on all of (0, inf),
/// which grid verdicts cannot certify: a ratio that is monotone across the
/// window but crosses 1 inside it produces a survival crossing with no
/// implementation fault (its compensating ratio flip lies beyond the
/// window). On instances whose stronger-order hypotheses hold globally --
/// common (theta, phi) series pairs, or parallel pairs with majorization-
/// related alphas -- any flag indicates an implementation bug, never a
/// math failure.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub lr: DominanceVerdict,
    pub rf: Option<DominanceVerdict>,
    pub st: DominanceVerdict,
    pub flags: Vec<String>,
}

fn implication_flag(
    stronger_name: &str,
    stronger: &DominanceVerdict,
    weaker_name: &str,
    weaker: &DominanceVerdict,
    flags: &mut Vec<String>,
) {
    let violated = match stronger.relation {
        Relation::FirstDominates => matches!(
            weaker.relation,
            Relation::SecondDominates | Relation::Crossing | Relation::Inconclusive
        ),
        Relation::SecondDominates => matches!(
            weaker.relation,
            Relation::FirstDominates | Relation::Crossing | Relation::Inconclusive
        ),
        _ => false,
    };
    if violated {
        flags.push(format!(
            "{stronger_name} = {} but {weaker_name} = {}",
            stronger.relation, weaker.relation
        ));
    }
}

pub fn implication_audit(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
) -> Result<AuditReport> {
    let tol = DEFAULT_DOMINANCE_TOL;
    let lr = compare_lr(a, b, kind, grid, tol)?;
    let st = compare_st(a, b, kind, grid, tol)?;
    let rf = match kind {
        SystemKind::Parallel => Some(compare_rf(a, b, grid, tol)?),
        SystemKind::Series => None,
    };
    let mut flags = Vec::new();
    match &rf {
        Some(rf) => {
            implication_flag("lr", &lr, "rf", rf, &mut flags);
            implication_flag("rf", rf, "st", &st, &mut flags);
            implication_flag("lr", &lr, "st", &st, &mut flags);
        }
        None => implication_flag("lr", &lr, "st", &st, &mut flags),
    }
    Ok(AuditReport { lr, rf, st, flags })
}

/// Locates every sign change of the survival difference on the grid and
/// refines each bracket by bisection to relative width 1e-10.
pub fn find_crossing_intervals(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
) -> Result<Vec<CrossingInterval>> {
    let tol = DEFAULT_DOMINANCE_TOL;
    let xs = grid.points();
    let diffs = survival_diffs(a, b, kind, &xs)?;
    let g = move |x: f64| {
        a.survival(kind, x).map(|p| p.value()).unwrap_or(f64::NAN)
            - b.survival(kind, x).map(|p| p.value()).unwrap_or(f64::NAN)
    };
    let mut intervals =
        classify_differences(&xs, &diffs, tol, CROSSING_REFINE_REL, &g, *grid).crossings;
    intervals.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
    Ok(intervals)
}

/// Sorted abscissae (bracket midpoints) of every survival-difference sign
/// change on the grid, each refined to relative width 1e-10.
pub fn find_crossings(
    a: &ComponentSet,
    b: &ComponentSet,
    kind: SystemKind,
    grid: &GridSpec,
) -> Result<Vec<f64>> {
    Ok(find_crossing_intervals(a, b, kind, grid)?
        .iter()
        .map(|c| c.midpoint())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Spacing;

    fn cs(triples: &[(f64, f64, f64)]) -> ComponentSet {
        ComponentSet::from_triples(triples).unwrap()
    }

    fn small_grid() -> GridSpec {
        GridSpec::new(1e-2, 1e2, 512, Spacing::Log).unwrap()
    }

    #[test]
    fn identical_systems_are_equal() {
        let a = cs(&[(1.7, 2.0, 0.54), (1.4, 2.0, 0.66)]);
        let v = compare_st(&a, &a, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Equal);
        assert_eq!(v.max_violation, 0.0);
        assert!(v.crossings.is_empty());
        let v = compare_rf(&a, &a, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Equal);
        let v = compare_lr(&a, &a, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Equal);
    }

    #[test]
    fn worked_example_series_direction() {
        // Majorizing matrix system vs its T_{0.8} transform, phi = 2: the
        // transformed (second) system dominates in the series order.
        let major = cs(&[(1.8, 2.0, 0.5), (1.3, 2.0, 0.7)]);
        let mixed = cs(&[(1.7, 2.0, 0.54), (1.4, 2.0, 0.66)]);
        let v = compare_st(&major, &mixed, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::SecondDominates);
        assert!(v.max_violation < 1e-10);
    }

    #[test]
    fn worked_example_parallel_direction() {
        // T_2 example: the majorizing matrix system dominates in the
        // parallel order.
        let major = cs(&[(1.5, 2.0, 2.1), (1.2, 2.0, 2.5)]);
        let mixed = cs(&[(1.32, 2.0, 2.34), (1.38, 2.0, 2.26)]);
        let v = compare_st(&major, &mixed, SystemKind::Parallel, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::FirstDominates);
        assert!(v.crossings.is_empty());
    }

    #[test]
    fn crossing_example_is_detected() {
        let x = cs(&[(5.0, 0.1, 2.0), (5.0, 1.14, 2.0), (5.0, 0.3, 2.0)]);
        let xstar = cs(&[(5.0, 0.6, 2.0), (5.0, 0.9, 2.0), (5.0, 0.04, 2.0)]);
        let v = compare_st(&x, &xstar, SystemKind::Parallel, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Crossing);
        assert_eq!(v.crossings.len(), 1);
        let mid = v.crossings[0].midpoint();
        assert!((mid - 39.5418258924854).abs() < 1e-4 * mid, "got {mid}");

        let roots = find_crossings(&x, &xstar, SystemKind::Parallel, &small_grid()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 39.5418258924854).abs() < 1e-8 * roots[0], "got {}", roots[0]);
    }

    #[test]
    fn crossing_refinement_width() {
        let x = cs(&[(5.0, 0.1, 2.0), (5.0, 1.14, 2.0), (5.0, 0.3, 2.0)]);
        let xstar = cs(&[(5.0, 0.6, 2.0), (5.0, 0.9, 2.0), (5.0, 0.04, 2.0)]);
        let g = small_grid();
        let xs = g.points();
        let diffs = survival_diffs(&x, &xstar, SystemKind::Parallel, &xs).unwrap();
        let f = |xx: f64| {
            x.survival(SystemKind::Parallel, xx).unwrap().value()
                - xstar.survival(SystemKind::Parallel, xx).unwrap().value()
        };
        let v = classify_differences(&xs, &diffs, 1e-10, CROSSING_REFINE_REL, &f, g);
        for c in &v.crossings {
            assert!(c.hi - c.lo <= 1.0001e-10 * c.midpoint());
        }
    }

    #[test]
    fn antisymmetry_under_swap() {
        let major = cs(&[(1.8, 2.0, 0.5), (1.3, 2.0, 0.7)]);
        let mixed = cs(&[(1.7, 2.0, 0.54), (1.4, 2.0, 0.66)]);
        let fwd = compare_st(&major, &mixed, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        let rev = compare_st(&mixed, &major, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(fwd.relation, Relation::SecondDominates);
        assert_eq!(rev.relation, Relation::FirstDominates);

        let x = cs(&[(5.0, 0.1, 2.0), (5.0, 1.14, 2.0), (5.0, 0.3, 2.0)]);
        let xstar = cs(&[(5.0, 0.6, 2.0), (5.0, 0.9, 2.0), (5.0, 0.04, 2.0)]);
        let fwd = compare_st(&x, &xstar, SystemKind::Parallel, &small_grid(), 1e-10).unwrap();
        let rev = compare_st(&xstar, &x, SystemKind::Parallel, &small_grid(), 1e-10).unwrap();
        assert_eq!(fwd.relation, Relation::Crossing);
        assert_eq!(rev.relation, Relation::Crossing);
        assert_eq!(fwd.crossings.len(), rev.crossings.len());
        let (a, b) = (fwd.crossings[0].midpoint(), rev.crossings[0].midpoint());
        assert!((a - b).abs() < 1e-6 * a);
    }

    #[test]
    fn verdicts_invariant_under_component_permutation() {
        let a1 = cs(&[(1.8, 2.0, 0.5), (1.3, 2.0, 0.7)]);
        let a2 = cs(&[(1.3, 2.0, 0.7), (1.8, 2.0, 0.5)]);
        let b = cs(&[(1.7, 2.0, 0.54), (1.4, 2.0, 0.66)]);
        let v1 = compare_st(&a1, &b, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        let v2 = compare_st(&a2, &b, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v1.relation, v2.relation);
    }

    #[test]
    fn grid_refinement_never_flips_direction() {
        let major = cs(&[(1.8, 2.0, 0.5), (1.3, 2.0, 0.7)]);
        let mixed = cs(&[(1.7, 2.0, 0.54), (1.4, 2.0, 0.66)]);
        let g = small_grid();
        let v1 = compare_st(&major, &mixed, SystemKind::Series, &g, 1e-10).unwrap();
        let v2 = compare_st(&major, &mixed, SystemKind::Series, &g.doubled(), 1e-10).unwrap();
        assert_eq!(v1.relation, v2.relation);
    }

    #[test]
    fn reversed_hazard_majorized_alphas_dominate() {
        // alpha (3,1,1) majorizes (2,2,1): the first parallel system has
        // the larger reversed hazard everywhere.
        let a = cs(&[(1.0, 1.0, 3.0), (1.0, 1.0, 1.0), (1.0, 1.0, 1.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0), (1.0, 1.0, 1.0)]);
        let v = compare_rf(&a, &b, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::FirstDominates);
    }

    #[test]
    fn rf_permuted_components_equal() {
        let a = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let v = compare_rf(&a, &b, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Equal);
    }

    #[test]
    fn fr_agrees_with_lr_direction_on_series() {
        // Common (theta, phi): the series hazard is proportional to the
        // alpha total, so the smaller-sum system is fr-larger, matching
        // the lr direction.
        let a = cs(&[(1.0, 1.0, 1.0), (1.0, 1.0, 2.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let fr = compare_fr(&a, &b, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(fr.relation, Relation::FirstDominates);
        let fr = compare_fr(&b, &a, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(fr.relation, Relation::SecondDominates);
        let fr = compare_fr(&a, &a, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(fr.relation, Relation::Equal);
    }

    #[test]
    fn lr_series_alpha_sums() {
        // Sum alpha_A = 3 < 4 = sum alpha_B with common theta = phi = 1:
        // the ratio f_A / f_B is nondecreasing, so A dominates in lr.
        let a = cs(&[(1.0, 1.0, 1.0), (1.0, 1.0, 2.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let v = compare_lr(&a, &b, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::FirstDominates);

        // Equal sums: the ratio is constant.
        let c = cs(&[(1.0, 1.0, 1.5), (1.0, 1.0, 1.5)]);
        let v = compare_lr(&a, &c, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Equal);
    }

    #[test]
    fn lr_non_monotone_ratio_is_inconclusive() {
        // Heterogeneous series pair whose log density ratio changes
        // direction more than once across the window: no clean sign
        // structure, so neither dominance nor a single crossing applies.
        let a = cs(&[
            (2.2015455456984325, 1.5354602044125505, 1.9233993412675672),
            (1.2702837960537396, 0.4412011955658559, 2.593082615544582),
        ]);
        let b = cs(&[
            (1.2840531280196636, 1.9829531886704708, 0.8406415552208282),
            (1.337542640857635, 1.1861248074387856, 0.9947292934455798),
        ]);
        let v = compare_lr(&a, &b, SystemKind::Series, &small_grid(), 1e-10).unwrap();
        assert_eq!(v.relation, Relation::Inconclusive);
        assert!(v.crossings.is_empty()); // Crossing iff crossings non-empty
    }

    #[test]
    fn audit_raises_no_flags_on_theorem_instances() {
        let a = cs(&[(1.0, 1.0, 1.0), (1.0, 1.0, 2.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let report = implication_audit(&a, &b, SystemKind::Series, &small_grid()).unwrap();
        assert!(report.flags.is_empty(), "{:?}", report.flags);
        assert_eq!(report.lr.relation, Relation::FirstDominates);
        assert_eq!(report.st.relation, Relation::FirstDominates);

        let a = cs(&[(1.0, 1.0, 3.0), (1.0, 1.0, 1.0), (1.0, 1.0, 1.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0), (1.0, 1.0, 1.0)]);
        let report = implication_audit(&a, &b, SystemKind::Parallel, &small_grid()).unwrap();
        assert!(report.flags.is_empty(), "{:?}", report.flags);
    }

    #[test]
    fn audit_of_identical_systems_is_all_equal() {
        let a = cs(&[(1.3, 0.8, 0.9), (1.3, 0.8, 2.2)]);
        for kind in [SystemKind::Series, SystemKind::Parallel] {
            let report = implication_audit(&a, &a, kind, &small_grid()).unwrap();
            assert!(report.flags.is_empty());
            assert_eq!(report.lr.relation, Relation::Equal);
            assert_eq!(report.st.relation, Relation::Equal);
            if let Some(rf) = report.rf {
                assert_eq!(rf.relation, Relation::Equal);
            }
        }
    }

    #[test]
    fn find_crossings_empty_for_dominant_pair() {
        let a = cs(&[(1.0, 1.0, 3.0), (1.0, 1.0, 1.0)]);
        let b = cs(&[(1.0, 1.0, 2.0), (1.0, 1.0, 2.0)]);
        let roots = find_crossings(&a, &b, SystemKind::Parallel, &small_grid()).unwrap();
        assert!(roots.is_empty());
        let roots = find_crossings(&a, &a, SystemKind::Parallel, &small_grid()).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn rejects_bad_tolerance() {
        let a = cs(&[(1.0, 1.0, 1.0)]);
        assert!(compare_st(&a, &a, SystemKind::Series, &small_grid(), 0.0).is_err());
        assert!(compare_st(&a, &a, SystemKind::Series, &small_grid(), -1.0).is_err());
    }
}
