//! Eigenvalue-threshold sufficient conditions for `κ'(G) ≥ k` and `τ(G) ≥ k`.
//!
//! Every condition in [`catalog`] has the shape
//!
//! ```text
//! degree requirement ∧ class requirement ∧ (x < T  or  x > T)  ⟹  κ' ≥ k  or  τ ≥ k
//! ```
//!
//! where `x` is one of `λ₃, q₂, q₃, μ_{n−2}` and the threshold is
//! `T = a·δ + b·Δ ∓ p(k) / D` with `D = δ + 1` for simple graphs and
//! `D = l = max{⌈(δ+1)/m⌉, 2}` for multigraphs of multiplicity `m`. The
//! penalty is subtracted for upper-bound conditions and added for the
//! lower-bound (`μ_{n−2}`) ones.
//!
//! [`evaluate`] checks one condition against exact `κ'` and `τ`; since the
//! conditions are theorems, an inconsistent verdict is a counterexample.

use alloc::vec::Vec;
use core::cell::OnceCell;

use num_rational::Ratio;
use thiserror::Error;

use crate::connectivity::{edge_connectivity, CutCertificate, for_each_cut, g_class_membership, ConnectivityError, Membership};
use crate::graph::{GraphError, Multigraph, VertexPartition};
use crate::packing::{component_cut_profile, tau, PackingCertificate, PackingError};
use crate::spectra::{QuotientKind, QuotientMatrix, SpectraError, SpectralSummary, SPECTRAL_TOL};
use crate::{ratio_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoremError {
    #[error("outside the formula's domain: {0}")]
    Domain(&'static str),
    #[error("class membership could not be decided: {0}")]
    UndecidedClass(ConnectivityError),
    #[error("conditions are evaluated on connected graphs with at least two vertices")]
    Disconnected,
    #[error("unknown condition id {0:?}")]
    UnknownCondition(alloc::string::String),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralQuantity {
    Lambda2,
    Lambda3,
    Q2,
    Q3,
    MuNMinus2,
}

impl SpectralQuantity {
    pub fn name(self) -> &'static str {
        match self {
            SpectralQuantity::Lambda2 => "lambda_2",
            SpectralQuantity::Lambda3 => "lambda_3",
            SpectralQuantity::Q2 => "q_2",
            SpectralQuantity::Q3 => "q_3",
            SpectralQuantity::MuNMinus2 => "mu_{n-2}",
        }
    }

    pub fn of(self, s: &SpectralSummary) -> Option<f64> {
        match self {
            SpectralQuantity::Lambda2 => s.lambda(2),
            SpectralQuantity::Lambda3 => s.lambda(3),
            SpectralQuantity::Q2 => s.q(2),
            SpectralQuantity::Q3 => s.q(3),
            SpectralQuantity::MuNMinus2 => s.mu_n_minus_2(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// Hypothesis is `x < T`.
    Below,
    /// Hypothesis is `x > T`.
    Above,
}

/// Numerator `p(k)` of the penalty term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Penalty {
    /// `2(k − 1)`
    TwoKMinusTwo,
    /// `4(k − 1)`
    FourKMinusFour,
    /// `2k − 1`
    TwoKMinusOne,
    /// `3k − 1`
    ThreeKMinusOne,
    /// `2(3k − 1)`
    SixKMinusTwo,
}

impl Penalty {
    pub fn at(self, k: i64) -> i64 {
        match self {
            Penalty::TwoKMinusTwo => 2 * (k - 1),
            Penalty::FourKMinusFour => 4 * (k - 1),
            Penalty::TwoKMinusOne => 2 * k - 1,
            Penalty::ThreeKMinusOne => 3 * k - 1,
            Penalty::SixKMinusTwo => 2 * (3 * k - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Denominator {
    /// `δ + 1` (simple graphs).
    MinDegreePlusOne,
    /// `l = max{⌈(δ+1)/m⌉, 2}` (multigraphs).
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThresholdFormula {
    pub min_degree_coef: i64,
    pub max_degree_coef: i64,
    pub penalty: Penalty,
    pub denominator: Denominator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeRequirement {
    AtLeastK,
    AtLeastTwoKMinusOne,
    AtLeastTwoK,
}

impl DegreeRequirement {
    pub fn holds(self, min_degree: u64, k: u64) -> bool {
        match self {
            DegreeRequirement::AtLeastK => min_degree >= k,
            DegreeRequirement::AtLeastTwoKMinusOne => min_degree + 1 >= 2 * k,
            DegreeRequirement::AtLeastTwoK => min_degree >= 2 * k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassRequirement {
    None,
    InClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Applies to simple graphs only.
    Simple,
    /// Applies to every loop-free multigraph.
    Multigraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conclusion {
    EdgeConnectivity,
    TreePacking,
}

/// One sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConditionSpec {
    pub id: &'static str,
    pub quantity: SpectralQuantity,
    pub comparison: Comparison,
    pub formula: ThresholdFormula,
    pub degree: DegreeRequirement,
    /// Only d-regular graphs qualify; the formula is then written in `d = δ = Δ`.
    pub regular_only: bool,
    pub class: ClassRequirement,
    pub kind: GraphKind,
    pub conclusion: Conclusion,
}

impl ConditionSpec {
    /// Threshold `T` for the given parameters, with the domain checked.
    pub fn threshold(&self, min_degree: u64, max_degree: u64, k: u64, l: u64) -> Result<Rational, TheoremError> {
        threshold(self, min_degree, max_degree, k, l)
    }
}

const fn spec(
    id: &'static str,
    quantity: SpectralQuantity,
    comparison: Comparison,
    (min_degree_coef, max_degree_coef, penalty): (i64, i64, Penalty),
    degree: DegreeRequirement,
    regular_only: bool,
    class: ClassRequirement,
    kind: GraphKind,
    conclusion: Conclusion,
) -> ConditionSpec {
    let denominator = match kind {
        GraphKind::Simple => Denominator::MinDegreePlusOne,
        GraphKind::Multigraph => Denominator::L,
    };
    ConditionSpec {
        id,
        quantity,
        comparison,
        formula: ThresholdFormula {
            min_degree_coef,
            max_degree_coef,
            penalty,
            denominator,
        },
        degree,
        regular_only,
        class,
        kind,
        conclusion,
    }
}

use ClassRequirement::{InClass, None as AnyClass};
use Comparison::{Above, Below};
use Conclusion::{EdgeConnectivity as Kappa, TreePacking as Tau};
use DegreeRequirement::{AtLeastK, AtLeastTwoK, AtLeastTwoKMinusOne};
use GraphKind::{Multigraph as Multi, Simple};
use Penalty::{FourKMinusFour, SixKMinusTwo, ThreeKMinusOne, TwoKMinusOne, TwoKMinusTwo};
use SpectralQuantity::{Lambda2, Lambda3, MuNMinus2, Q2, Q3};

static CATALOG: [ConditionSpec; 32] = [
    // Edge connectivity from λ₃, q₃, q₂ (simple graphs).
    spec("THM-3.1", Lambda3, Below, (2, -1, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("COR-3.2", Lambda3, Below, (1, 0, FourKMinusFour), AtLeastTwoKMinusOne, true, InClass, Simple, Kappa),
    spec("THM-3.3", Q3, Below, (4, -2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("COR-3.4", Q3, Below, (2, 0, FourKMinusFour), AtLeastTwoKMinusOne, true, InClass, Simple, Kappa),
    spec("THM-3.5", Q2, Below, (2, 0, TwoKMinusTwo), AtLeastK, false, AnyClass, Simple, Kappa),
    spec("COR-3.6", Q2, Below, (2, 0, TwoKMinusTwo), AtLeastK, true, AnyClass, Simple, Kappa),
    // Tree packing from λ₃, q₃, q₂ (simple graphs).
    spec("THM-4.2", Lambda3, Below, (2, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    spec("COR-4.3", Lambda3, Below, (1, 0, SixKMinusTwo), AtLeastTwoK, true, InClass, Simple, Tau),
    spec("THM-4.5", Q3, Below, (4, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    spec("COR-4.6", Q3, Below, (2, 0, SixKMinusTwo), AtLeastTwoK, true, InClass, Simple, Tau),
    spec("THM-4.11", Q2, Below, (2, 0, ThreeKMinusOne), AtLeastTwoK, false, AnyClass, Simple, Tau),
    spec("COR-4.12", Q2, Below, (2, 0, ThreeKMinusOne), AtLeastTwoK, true, AnyClass, Simple, Tau),
    // Mixed conditions through μ_{n−2}, q₃, λ₃ (simple graphs).
    spec("THM-5.1(i)", MuNMinus2, Above, (-2, 2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("THM-5.1(ii)", Q3, Below, (3, -1, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("THM-5.2(i)", MuNMinus2, Above, (-2, 2, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    spec("THM-5.2(ii)", Q3, Below, (3, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    spec("THM-5.3(i)", MuNMinus2, Above, (-3, 3, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("THM-5.3(ii)", Lambda3, Below, (3, -2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Simple, Kappa),
    spec("THM-5.4(i)", MuNMinus2, Above, (-3, 3, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    spec("THM-5.4(ii)", Lambda3, Below, (3, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
    // Multigraph versions.
    spec("THM-6.1", Lambda3, Below, (2, -1, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("THM-6.3", Lambda3, Below, (2, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
    spec("COR-6.4(i)", MuNMinus2, Above, (-2, 2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("COR-6.4(ii)", Q3, Below, (3, -1, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("COR-6.5(i)", MuNMinus2, Above, (-2, 2, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
    spec("COR-6.5(ii)", Q3, Below, (3, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
    spec("THM-6.6", Q3, Below, (4, -2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("THM-6.8", Q3, Below, (4, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
    spec("COR-6.9(i)", MuNMinus2, Above, (-3, 3, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("COR-6.9(ii)", Lambda3, Below, (3, -2, FourKMinusFour), AtLeastTwoKMinusOne, false, InClass, Multi, Kappa),
    spec("COR-6.10(i)", MuNMinus2, Above, (-3, 3, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
    spec("COR-6.10(ii)", Lambda3, Below, (3, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
];

/// Every condition, including the six d-regular specializations.
pub fn catalog() -> &'static [ConditionSpec] {
    &CATALOG
}

/// The general conditions (everything except the d-regular specializations).
pub fn general_conditions() -> impl Iterator<Item = &'static ConditionSpec> {
    CATALOG.iter().filter(|c| !c.regular_only)
}

pub fn find_condition(id: &str) -> Result<&'static ConditionSpec, TheoremError> {
    CATALOG
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| TheoremError::UnknownCondition(id.into()))
}

/// `l = max{⌈(δ+1)/m⌉, 2}`.
pub fn multigraph_l(min_degree: u64, multiplicity: u32) -> u64 {
    (min_degree + 1).div_ceil(u64::from(multiplicity.max(1))).max(2)
}

impl ThresholdFormula {
    /// `a·δ + b·Δ ∓ p(k)/D`, no domain checks.
    pub fn value(&self, comparison: Comparison, min_degree: u64, max_degree: u64, k: u64, l: u64) -> Rational {
        let (delta, big_delta, k) = (min_degree as i64, max_degree as i64, k as i64);
        let denom = match self.denominator {
            Denominator::MinDegreePlusOne => delta + 1,
            Denominator::L => l as i64,
        };
        let base = Rational::from_integer(self.min_degree_coef * delta + self.max_degree_coef * big_delta);
        let penalty = Rational::new(self.penalty.at(k), denom);
        match comparison {
            Comparison::Below => base - penalty,
            Comparison::Above => base + penalty,
        }
    }
}

/// Exact threshold of `spec`. Fails when the parameters are outside the
/// theorem's hypotheses (degree requirement, regularity, `k ≥ 2`, `l ≥ 2`).
pub fn threshold(spec: &ConditionSpec, min_degree: u64, max_degree: u64, k: u64, l: u64) -> Result<Rational, TheoremError> {
    if min_degree < 1 {
        return Err(TheoremError::Domain("minimum degree must be at least 1"));
    }
    if max_degree < min_degree {
        return Err(TheoremError::Domain("maximum degree below minimum degree"));
    }
    if k < 2 {
        return Err(TheoremError::Domain("k must be at least 2"));
    }
    if spec.kind == GraphKind::Multigraph && l < 2 {
        return Err(TheoremError::Domain("l must be at least 2"));
    }
    if spec.regular_only && min_degree != max_degree {
        return Err(TheoremError::Domain("condition is stated for regular graphs"));
    }
    if !spec.degree.holds(min_degree, k) {
        return Err(TheoremError::Domain("degree requirement violated"));
    }
    Ok(spec.formula.value(spec.comparison, min_degree, max_degree, k, l))
}

/// Everything a verdict needs about one graph, computed once.
///
/// Class membership is decided lazily, only for conditions whose other
/// hypotheses already hold.
pub struct GraphProfile<'g> {
    pub graph: &'g Multigraph,
    pub summary: SpectralSummary,
    pub kappa: u64,
    /// The Stoer–Wagner minimum cut behind `kappa`.
    pub cut: CutCertificate,
    pub packing: PackingCertificate,
    membership: OnceCell<Result<Membership, ConnectivityError>>,
}

impl<'g> GraphProfile<'g> {
    pub fn new(graph: &'g Multigraph) -> Result<Self, TheoremError> {
        if graph.vertex_count() < 2 || !graph.is_connected() {
            return Err(TheoremError::Disconnected);
        }
        let cut = edge_connectivity(graph)?;
        Ok(Self {
            graph,
            summary: SpectralSummary::of(graph)?,
            kappa: cut.value,
            cut,
            packing: tau(graph)?,
            membership: OnceCell::new(),
        })
    }

    pub fn tau(&self) -> u64 {
        self.packing.tau
    }

    pub fn membership(&self) -> &Result<Membership, ConnectivityError> {
        self.membership.get_or_init(|| g_class_membership(self.graph))
    }

    /// `Some(true/false)` when decided, `None` when undecidable or `n < 3`.
    pub fn in_class(&self) -> Option<bool> {
        self.membership().as_ref().ok().map(Membership::is_member)
    }

    pub fn multiplicity_l(&self) -> u64 {
        multigraph_l(self.summary.min_degree, self.graph.multiplicity())
    }
}

/// Where the computed eigenvalue falls relative to the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralOutcome {
    /// Strictly on the hypothesis side by more than the tolerance.
    Holds,
    /// Strictly on the other side.
    Fails,
    /// Within the tolerance of the threshold; strictness cannot be certified.
    Boundary,
    /// The quantity does not exist or the condition does not apply.
    NotEvaluated,
}

/// One condition evaluated on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict {
    pub condition_id: &'static str,
    pub k: u64,
    pub min_degree: u64,
    pub max_degree: u64,
    /// `l` for multigraph conditions.
    pub l: Option<u64>,
    /// Graph kind, regularity and the spectral index all fit the condition.
    pub applicable: bool,
    pub degree_ok: bool,
    /// `None` when the condition has no class requirement or it was not needed.
    pub class_ok: Option<bool>,
    pub spectral_value: Option<f64>,
    pub threshold: Option<Rational>,
    /// Signed slack toward the hypothesis side: `T − x` for `x < T`
    /// conditions and `x − T` for `x > T` conditions.
    pub margin: Option<f64>,
    pub spectral: SpectralOutcome,
    pub hypothesis_holds: bool,
    /// `κ'` or `τ`, whichever the condition concludes about.
    pub conclusion_value: u64,
    pub conclusion_holds: bool,
    pub consistent: bool,
}

impl ConditionVerdict {
    pub fn threshold_f64(&self) -> Option<f64> {
        self.threshold.as_ref().map(ratio_to_f64)
    }

    /// Degree and class hypotheses hold but the spectral comparison is a tie
    /// within tolerance.
    pub fn is_boundary(&self) -> bool {
        self.spectral == SpectralOutcome::Boundary && self.degree_ok && self.class_ok != Some(false)
    }

    /// A boundary case whose conclusion fails; such a tie cannot be
    /// explained away as a consistent near-miss.
    pub fn is_unexplained_boundary(&self) -> bool {
        self.is_boundary() && !self.conclusion_holds
    }
}

fn classify(margin: f64) -> SpectralOutcome {
    if margin > SPECTRAL_TOL {
        SpectralOutcome::Holds
    } else if margin < -SPECTRAL_TOL {
        SpectralOutcome::Fails
    } else {
        SpectralOutcome::Boundary
    }
}

/// Class handling for [`evaluate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassMode {
    /// Apply the condition's class requirement.
    Required,
    /// Drop the class requirement (used when probing graphs outside the class).
    Ignored,
}

/// Evaluates `spec` at `k` on a connected graph.
pub fn evaluate(g: &Multigraph, spec: &ConditionSpec, k: u64) -> Result<ConditionVerdict, TheoremError> {
    evaluate_with(&GraphProfile::new(g)?, spec, k, ClassMode::Required)
}

pub fn evaluate_with(
    profile: &GraphProfile<'_>,
    spec: &ConditionSpec,
    k: u64,
    class_mode: ClassMode,
) -> Result<ConditionVerdict, TheoremError> {
    if k < 2 {
        return Err(TheoremError::Domain("k must be at least 2"));
    }
    let g = profile.graph;
    let s = &profile.summary;
    let (delta, big_delta) = (s.min_degree, s.max_degree);
    let l = (spec.kind == GraphKind::Multigraph).then(|| profile.multiplicity_l());

    let spectral_value = spec.quantity.of(s);
    let applicable = spectral_value.is_some()
        && (spec.kind == GraphKind::Multigraph || g.is_simple())
        && (!spec.regular_only || g.is_regular());
    let degree_ok = spec.degree.holds(delta, k);

    let threshold_value = (delta >= 1).then(|| spec.formula.value(spec.comparison, delta, big_delta, k, l.unwrap_or(2)));
    let margin = match (spectral_value, &threshold_value) {
        (Some(x), Some(t)) => Some(match spec.comparison {
            Comparison::Below => ratio_to_f64(t) - x,
            Comparison::Above => x - ratio_to_f64(t),
        }),
        _ => None,
    };
    let spectral = match margin {
        Some(m) if applicable => classify(m),
        _ => SpectralOutcome::NotEvaluated,
    };

    let needs_class = spec.class == ClassRequirement::InClass && class_mode == ClassMode::Required;
    let class_ok = if needs_class
        && applicable
        && degree_ok
        && matches!(spectral, SpectralOutcome::Holds | SpectralOutcome::Boundary)
    {
        match profile.membership() {
            Ok(m) => Some(m.is_member()),
            Err(e) => return Err(TheoremError::UndecidedClass(e.clone())),
        }
    } else {
        None
    };

    let hypothesis_holds =
        applicable && degree_ok && spectral == SpectralOutcome::Holds && (!needs_class || class_ok == Some(true));
    let conclusion_value = match spec.conclusion {
        Conclusion::EdgeConnectivity => profile.kappa,
        Conclusion::TreePacking => profile.tau(),
    };
    let conclusion_holds = conclusion_value >= k;
    Ok(ConditionVerdict {
        condition_id: spec.id,
        k,
        min_degree: delta,
        max_degree: big_delta,
        l,
        applicable,
        degree_ok,
        class_ok,
        spectral_value,
        threshold: threshold_value,
        margin,
        spectral,
        hypothesis_holds,
        conclusion_value,
        conclusion_holds,
        consistent: !hypothesis_holds || conclusion_holds,
    })
}

/// What a structural statement asserts about the components `V₁, …, V_s` of
/// `G − X` for the canonical edge set `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralClaim {
    /// `r_i = e(V_i, V \ V_i) ≥ k` for every component.
    BoundariesAtLeastK,
    /// No two components with `e(V_p, V_q) = 0` and `r_p, r_q ≤ 2k − 1`.
    NoSparsePair,
}

/// A statement about the cut profile of a partition, implied by a spectral
/// hypothesis. Checked on the packing dual's partition, the canonical `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructuralCheck {
    pub id: &'static str,
    pub hypothesis: ConditionSpec,
    pub claim: StructuralClaim,
}

const fn structural(id: &'static str, hypothesis: ConditionSpec, claim: StructuralClaim) -> StructuralCheck {
    StructuralCheck { id, hypothesis, claim }
}

use StructuralClaim::{BoundariesAtLeastK, NoSparsePair};

static STRUCTURAL: [StructuralCheck; 8] = [
    structural(
        "THM-4.1",
        spec("THM-4.1", Lambda3, Below, (2, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
        BoundariesAtLeastK,
    ),
    structural(
        "COR-4.4",
        spec("COR-4.4", Q3, Below, (4, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Simple, Tau),
        BoundariesAtLeastK,
    ),
    structural(
        "THM-4.7",
        spec("THM-4.7", Lambda2, Below, (1, 0, TwoKMinusOne), AtLeastTwoK, false, AnyClass, Simple, Tau),
        NoSparsePair,
    ),
    structural(
        "COR-4.8",
        spec("COR-4.8", Q2, Below, (2, 0, TwoKMinusOne), AtLeastTwoK, false, AnyClass, Simple, Tau),
        NoSparsePair,
    ),
    structural(
        "THM-4.9",
        spec("THM-4.9", Lambda2, Below, (1, 0, TwoKMinusOne), AtLeastTwoK, false, AnyClass, Simple, Tau),
        BoundariesAtLeastK,
    ),
    structural(
        "COR-4.10",
        spec("COR-4.10", Q2, Below, (2, 0, TwoKMinusOne), AtLeastTwoK, false, AnyClass, Simple, Tau),
        BoundariesAtLeastK,
    ),
    structural(
        "THM-6.2",
        spec("THM-6.2", Lambda3, Below, (2, -1, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
        BoundariesAtLeastK,
    ),
    structural(
        "THM-6.7",
        spec("THM-6.7", Q3, Below, (4, -2, SixKMinusTwo), AtLeastTwoK, false, InClass, Multi, Tau),
        BoundariesAtLeastK,
    ),
];

pub fn structural_checks() -> &'static [StructuralCheck] {
    &STRUCTURAL
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuralVerdict {
    pub id: &'static str,
    pub k: u64,
    pub fired: bool,
    /// Meaningful only when `fired`.
    pub claim_holds: bool,
    /// Sorted `r` profile of the canonical partition, when fired.
    pub r: Vec<u64>,
}

/// Evaluates a structural check; the claim is tested only when its
/// hypothesis fires.
pub fn evaluate_structural(
    profile: &GraphProfile<'_>,
    check: &StructuralCheck,
    k: u64,
) -> Result<StructuralVerdict, TheoremError> {
    let verdict = evaluate_with(profile, &check.hypothesis, k, ClassMode::Required)?;
    if !verdict.hypothesis_holds {
        return Ok(StructuralVerdict {
            id: check.id,
            k,
            fired: false,
            claim_holds: true,
            r: Vec::new(),
        });
    }
    let g = profile.graph;
    let dual = profile
        .packing
        .dual
        .as_ref()
        .ok_or(TheoremError::Domain("packing certificate has no dual partition"))?;
    let cut = component_cut_profile(g, &dual.crossing_edges(g))?;
    let claim_holds = match check.claim {
        StructuralClaim::BoundariesAtLeastK => cut.r.iter().all(|&r| r >= k),
        StructuralClaim::NoSparsePair => {
            let parts = &cut.components;
            let s = parts.len();
            let mut boundary = alloc::vec![0u64; s];
            let mut between = alloc::vec![0u64; s * s];
            for (u, v, c) in g.edges() {
                let (a, b) = (parts.block_of(u), parts.block_of(v));
                if a != b {
                    boundary[a] += u64::from(c);
                    boundary[b] += u64::from(c);
                    between[a * s + b] += u64::from(c);
                    between[b * s + a] += u64::from(c);
                }
            }
            let sparse = |p: usize| boundary[p] < 2 * k;
            !(0..s).any(|p| (p + 1..s).any(|q| between[p * s + q] == 0 && sparse(p) && sparse(q)))
        }
    };
    Ok(StructuralVerdict {
        id: check.id,
        k,
        fired: true,
        claim_holds,
        r: cut.r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithLemma {
    /// `2(b−1)²k / (b(b−2)) − 2(b−1) / (b(b−2)) < 3k − 1` for `b ≥ 3, k ≥ 1`.
    Lemma211,
    /// `(2b′−1)k / (b′−1) − 2 / (b′−1) < 3k − 1` for `b′ ≥ 2, k ≥ 1`.
    Lemma212,
}

/// Evaluates the inequality exactly.
pub fn lemma_arith_check(which: ArithLemma, b: i64, k: i64) -> Result<bool, TheoremError> {
    type Q = Ratio<i128>;
    let (b, k) = (i128::from(b), i128::from(k));
    if k < 1 {
        return Err(TheoremError::Domain("k must be at least 1"));
    }
    let lhs = match which {
        ArithLemma::Lemma211 => {
            if b < 3 {
                return Err(TheoremError::Domain("b must be at least 3"));
            }
            let d = b * (b - 2);
            Q::new(2 * (b - 1) * (b - 1) * k, d) - Q::new(2 * (b - 1), d)
        }
        ArithLemma::Lemma212 => {
            if b < 2 {
                return Err(TheoremError::Domain("b' must be at least 2"));
            }
            Q::new((2 * b - 1) * k, b - 1) - Q::new(2, b - 1)
        }
    };
    Ok(lhs < Q::from_integer(3 * k - 1))
}

/// Checks that every side of a cut lighter than `δ` has at least `δ + 1`
/// vertices (simple graphs) or `max{⌈(δ+1)/m⌉, 2}` vertices (multigraphs).
/// Returns the first offending side as a bitmask.
pub fn small_cut_side_violation(g: &Multigraph) -> Result<Option<u32>, TheoremError> {
    if !g.is_connected() {
        return Err(TheoremError::Disconnected);
    }
    let n = g.vertex_count();
    let delta = g.min_degree();
    let bound = if g.is_simple() {
        delta + 1
    } else {
        multigraph_l(delta, g.multiplicity())
    };
    let full: u32 = if n >= 32 { u32::MAX } else { (1 << n) - 1 };
    let mut violation = None;
    for_each_cut(g, |mask, w| {
        if violation.is_none() && w + 1 <= delta {
            for side in [mask, full & !mask] {
                if u64::from(side.count_ones()) < bound {
                    violation = Some(side);
                }
            }
        }
    })?;
    Ok(violation)
}

/// Lemmas bounding `q₁` and relating `λ₂, λ₃` to `μ_{n−1}, μ_{n−2}, q₂, q₃`.
/// Returns the identifiers of the violated statements.
pub fn spectral_lemma_violations(s: &SpectralSummary, connected: bool) -> Vec<&'static str> {
    let tol = SPECTRAL_TOL;
    let (delta, big_delta) = (s.min_degree as f64, s.max_degree as f64);
    let mut bad = Vec::new();
    if let Some(q1) = s.q(1) {
        if q1 < 2.0 * delta - tol || q1 > 2.0 * big_delta + tol {
            bad.push("LEM-2.2");
        }
        if connected && s.min_degree == s.max_degree && libm::fabs(q1 - 2.0 * big_delta) > tol {
            bad.push("LEM-2.2-regular");
        }
    }
    if let (Some(mu), Some(l2), Some(q2)) = (s.mu_n_minus_1(), s.lambda(2), s.q(2)) {
        if mu + l2 > big_delta + tol {
            bad.push("LEM-2.9(i)");
        }
        if delta + l2 > q2 + tol {
            bad.push("LEM-2.9(ii)");
        }
    }
    if let (Some(mu), Some(l3), Some(q3)) = (s.mu_n_minus_2(), s.lambda(3), s.q(3)) {
        if s.n >= 3 {
            if mu + l3 > big_delta + tol {
                bad.push("LEM-2.10(i)");
            }
            if delta + l3 > q3 + tol {
                bad.push("LEM-2.10(ii)");
            }
        }
    }
    bad
}

/// Bounds on the largest quotient eigenvalue: `λ₁(A_π) ∈ [δ_π, Δ_π]` and
/// `q₁(Q_π) ∈ [2δ_π, 2Δ_π]`, where `δ_π`, `Δ_π` are the extreme block-average
/// degrees. Returns the identifiers of the violated statements.
pub fn quotient_lemma_violations(g: &Multigraph, partition: &VertexPartition) -> Result<Vec<&'static str>, TheoremError> {
    let averages = g.induced_average_degrees(partition)?;
    let lo = averages.iter().map(ratio_to_f64).fold(f64::INFINITY, f64::min);
    let hi = averages.iter().map(ratio_to_f64).fold(f64::NEG_INFINITY, f64::max);
    let mut bad = Vec::new();
    for (kind, scale, id) in [
        (QuotientKind::Adjacency, 1.0, "LEM-2.3"),
        (QuotientKind::SignlessLaplacian, 2.0, "LEM-2.4"),
    ] {
        let top = QuotientMatrix::new(g, partition, kind)?.eigenvalues()?[0];
        if top < scale * lo - SPECTRAL_TOL || top > scale * hi + SPECTRAL_TOL {
            bad.push(id);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn catalog_shape() {
        assert_eq!(catalog().len(), 32);
        assert_eq!(general_conditions().count(), 26);
        assert_eq!(catalog().iter().filter(|c| c.regular_only).count(), 6);
        let t31 = find_condition("THM-3.1").unwrap();
        assert_eq!(t31.conclusion, Conclusion::EdgeConnectivity);
        assert_eq!(t31.class, ClassRequirement::InClass);
        let t35 = find_condition("thm-3.5").unwrap();
        assert_eq!(t35.class, ClassRequirement::None);
        assert_eq!(t35.kind, GraphKind::Simple);
        let mut ids: Vec<_> = catalog().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 32);
        assert!(find_condition("THM-9.9").is_err());
    }

    #[test]
    fn worked_thresholds() {
        let t31 = find_condition("THM-3.1").unwrap();
        let t33 = find_condition("THM-3.3").unwrap();
        assert_eq!(threshold(t31, 3, 3, 2, 0), Ok(Rational::from_integer(2)));
        assert_eq!(threshold(t33, 3, 3, 2, 0), Ok(Rational::from_integer(5)));
        assert_eq!(threshold(t31, 3, 4, 2, 0), Ok(Rational::from_integer(1)));
    }

    #[test]
    fn threshold_domain() {
        let t31 = find_condition("THM-3.1").unwrap();
        assert!(threshold(t31, 2, 3, 2, 0).is_err());
        assert!(threshold(t31, 3, 3, 1, 0).is_err());
        assert!(threshold(t31, 3, 2, 2, 0).is_err());
        let c32 = find_condition("COR-3.2").unwrap();
        assert!(threshold(c32, 3, 4, 2, 0).is_err());
        assert_eq!(threshold(c32, 3, 3, 2, 0), Ok(Rational::from_integer(2)));
        let t61 = find_condition("THM-6.1").unwrap();
        assert!(threshold(t61, 3, 3, 2, 1).is_err());
        // l = 4 reproduces the simple-graph value at δ = 3.
        assert_eq!(threshold(t61, 3, 3, 2, 4), Ok(Rational::from_integer(2)));
    }

    #[test]
    fn mu_conditions_add_the_penalty() {
        let t = find_condition("THM-5.1(i)").unwrap();
        // 2Δ − 2δ + 4(k−1)/(δ+1) at δ = 3, Δ = 5, k = 2.
        assert_eq!(threshold(t, 3, 5, 2, 0), Ok(Rational::from_integer(5)));
    }

    #[test]
    fn regular_specializations_agree_with_general_forms() {
        let pairs = [
            ("COR-3.2", "THM-3.1"),
            ("COR-3.4", "THM-3.3"),
            ("COR-3.6", "THM-3.5"),
            ("COR-4.3", "THM-4.2"),
            ("COR-4.6", "THM-4.5"),
            ("COR-4.12", "THM-4.11"),
        ];
        for (cor, thm) in pairs {
            let (c, t) = (find_condition(cor).unwrap(), find_condition(thm).unwrap());
            for d in 1..30 {
                for k in 2..6 {
                    assert_eq!(threshold(c, d, d, k, 0).ok(), threshold(t, d, d, k, 0).ok(), "{cor} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn multigraph_l_values() {
        assert_eq!(multigraph_l(3, 1), 4);
        assert_eq!(multigraph_l(3, 2), 2);
        assert_eq!(multigraph_l(5, 2), 3);
        assert_eq!(multigraph_l(1, 3), 2);
    }

    #[test]
    fn c6_satisfies_thm_3_5() {
        let v = evaluate(&cycle(6), find_condition("THM-3.5").unwrap(), 2).unwrap();
        assert_eq!(v.threshold, Some(Rational::new(10, 3)));
        assert!((v.spectral_value.unwrap() - 3.0).abs() < 1e-10);
        assert!(v.hypothesis_holds);
        assert_eq!(v.conclusion_value, 2);
        assert!(v.conclusion_holds && v.consistent);
    }

    #[test]
    fn low_degree_is_vacuous() {
        let v = evaluate(&cycle(6), find_condition("THM-3.1").unwrap(), 2).unwrap();
        assert!(!v.degree_ok);
        assert!(!v.hypothesis_holds);
        assert!(v.consistent);
        assert_eq!(v.class_ok, None);
    }

    #[test]
    fn simple_conditions_skip_multigraphs() {
        let g = Multigraph::from_multiplicities(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2), (0, 2, 1), (1, 3, 1)]).unwrap();
        let v = evaluate(&g, find_condition("THM-3.1").unwrap(), 2).unwrap();
        assert!(!v.applicable);
        let v = evaluate(&g, find_condition("THM-6.1").unwrap(), 2).unwrap();
        assert!(v.applicable);
        assert_eq!(v.l, Some(multigraph_l(5, 2)));
    }

    #[test]
    fn lemma_arith_examples() {
        assert_eq!(lemma_arith_check(ArithLemma::Lemma211, 3, 1), Ok(true));
        assert_eq!(lemma_arith_check(ArithLemma::Lemma212, 2, 1), Ok(true));
        assert!(lemma_arith_check(ArithLemma::Lemma211, 2, 1).is_err());
        assert!(lemma_arith_check(ArithLemma::Lemma212, 1, 1).is_err());
        assert!(lemma_arith_check(ArithLemma::Lemma212, 2, 0).is_err());
    }

    #[test]
    fn small_cut_sides_on_bridged_cliques() {
        // δ = 4 inside two K5's; the bridge (weight 1 ≤ δ − 1) has sides of
        // size 5 = δ + 1.
        let g = Multigraph::from_adjacency_fn(10, |u, v| (u < 5) == (v < 5) || (u, v) == (4, 5)).unwrap();
        assert_eq!(small_cut_side_violation(&g), Ok(None));
    }
}
