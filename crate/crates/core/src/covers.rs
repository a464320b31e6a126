//! Invariants of double covers and of `Z2 x Z2` (bidouble) covers.
//!
//! A double cover `Y -> S` given by `2M = D` has
//!
//! ```text
//! K_Y^2   = 2 (K_S + M)^2
//! chi(Y)  = 2 chi(S) + M.(K_S + M) / 2
//! p_g(Y)  = p_g(S) + h^0(K_S + M)
//! ```
//!
//! A bidouble cover `S -> Sigma` with branch divisors `D1, D2, D3` and
//! bundles `L1, L2` satisfying `2L1 = D2 + D3`, `2L2 = D1 + D3` has
//! `pi_* O_S = O ⊕ L1^{-1} ⊕ L2^{-1} ⊕ L3^{-1}` with `L3 = L1 + L2 - D3`, and
//! `2K_S = pi^*(2K + D)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{neg_one_curves, riemann_roch_chi, DivClass, Idx, CHI_STRUCTURE_SHEAF};
use crate::linear_systems::h0;

/// `h^0(K_S + M)` for a base surface where it cannot be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PgTerm {
    Exact(u64),
    /// A lower bound obtained from geometry.
    Bound(u64),
}

impl PgTerm {
    pub fn value(self) -> u64 {
        match self {
            PgTerm::Exact(v) | PgTerm::Bound(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Bound,
}

/// The data of a smooth double cover `2M = D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "base", rename_all = "snake_case")]
pub enum DoubleCoverDatum {
    /// Cover of the del Pezzo surface; every term is computed in the lattice.
    DelPezzo { m: DivClass, d: DivClass },
    /// Cover of a surface `S` with `p_g = q = 0`, `K^2 = 6` whose bicanonical
    /// map is a degree-4 morphism onto the del Pezzo surface.
    ///
    /// Classes on `S` are given in the coordinates `x <-> phi^* x / 2`, which
    /// is an isometry onto `H^2(S, Q)` taking `-K` to `K_S`, `e_i` to `E_i`,
    /// `e'_i` to `E'_i` and `2f_i` to `F_i`.
    BicanonicalPullback {
        m: DivClass,
        d: DivClass,
        pg_term: PgTerm,
    },
    /// Bare numerics on an abstract base.
    Numeric {
        chi: i64,
        k2: i64,
        pg: u64,
        k_dot_m: i64,
        m_squared: i64,
        pg_term: PgTerm,
    },
}

/// Invariants of a cover together with what went wrong computing them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub chi: i64,
    pub pg: u64,
    pub q: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub c2: i64,
    /// `None` when the cover is not known to be minimal of general type.
    pub p2: Option<u64>,
    /// Whether `pg` (and with it `q`) is exact or a lower bound.
    pub exactness: Exactness,
    pub valid: bool,
    pub diagnostics: Vec<Diagnostic>,
    pub notes: Vec<String>,
}

impl InvariantReport {
    fn assemble(chi: i64, pg: u64, k2: i64, exactness: Exactness) -> InvariantReport {
        let q = pg as i64 - chi + 1;
        let mut diagnostics = Vec::new();
        if q < 0 && exactness == Exactness::Exact {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::NegativeIrregularity,
                format!("p_g - chi + 1 = {q} < 0"),
            ));
        }
        InvariantReport {
            chi,
            pg,
            q,
            k2,
            c2: 12 * chi - k2,
            p2: None,
            exactness,
            valid: diagnostics.is_empty(),
            diagnostics,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, d: Diagnostic) {
        self.diagnostics.push(d);
        self.valid = false;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    CongruenceL1,
    CongruenceL2,
    NotEffective,
    BranchNotSmooth,
    RepeatedRigidComponent,
    NegativeIntersection,
    NegativeIrregularity,
    DisconnectedCover,
    ZeroParameter,
    CoincidentLines,
    ConcurrentLines,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            kind,
            message: message.into(),
        }
    }
}

fn half(twice: i64) -> Result<i64> {
    if twice % 2 != 0 {
        return Err(Error::Parity(twice));
    }
    Ok(twice / 2)
}

fn check_root(m: DivClass, d: DivClass) -> Result<()> {
    let twice_m = 2 * m;
    if twice_m != d {
        return Err(Error::BranchMismatch {
            twice_m: twice_m.to_string(),
            branch: d.to_string(),
        });
    }
    Ok(())
}

/// Invariants of the double cover given by `2M = D`.
pub fn double_cover_invariants(datum: &DoubleCoverDatum) -> Result<InvariantReport> {
    // (chi, K^2, p_g, K.M, M^2, pg_term)
    let (chi, k2, pg, km, mm, term) = match *datum {
        DoubleCoverDatum::DelPezzo { m, d } => {
            check_root(m, d)?;
            let k = DivClass::canonical();
            let term = PgTerm::Exact(h0(k + m));
            (
                CHI_STRUCTURE_SHEAF,
                k.square(),
                0,
                k.dot(m),
                m.square(),
                term,
            )
        }
        DoubleCoverDatum::BicanonicalPullback { m, d, pg_term } => {
            check_root(m, d)?;
            let ks = DivClass::anticanonical();
            (1, ks.square(), 0, ks.dot(m), m.square(), pg_term)
        }
        DoubleCoverDatum::Numeric {
            chi,
            k2,
            pg,
            k_dot_m,
            m_squared,
            pg_term,
        } => (chi, k2, pg, k_dot_m, m_squared, pg_term),
    };
    let chi_y = 2 * chi + half(km + mm)?;
    let k2_y = 2 * (k2 + 2 * km + mm);
    let pg_y = pg + term.value();
    let exactness = match term {
        PgTerm::Exact(_) => Exactness::Exact,
        PgTerm::Bound(_) => Exactness::Bound,
    };
    let mut report = InvariantReport::assemble(chi_y, pg_y, k2_y, exactness);
    if exactness == Exactness::Bound {
        report
            .notes
            .push("p_g and q are lower bounds (supplied h^0 is a bound)".into());
    }
    Ok(report)
}

/// `K_Y^2 >= 16 (q(Y) - 1)`, valid for double covers of surfaces with
/// `p_g = q = 0` and `K^2 >= 3`. A `false` result is a contradiction.
pub fn albanese_bound_check(k2_y: i64, q_y: i64) -> bool {
    k2_y >= 16 * (q_y - 1)
}

/// Lower bound `2b + 2 - k` on the number of fibres divisible by 2, where `b`
/// is the genus of the Albanese curve and `k` the number of branch values.
pub fn min_divisible_fibres(b: u32, k: u32) -> u32 {
    (2 * b + 2).saturating_sub(k)
}

/// An irreducible component of a branch divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchComponent {
    Bare(DivClass),
    Labelled { class: DivClass, label: String },
}

impl BranchComponent {
    pub fn labelled(class: DivClass, label: impl Into<String>) -> BranchComponent {
        BranchComponent::Labelled {
            class,
            label: label.into(),
        }
    }

    pub fn class(&self) -> DivClass {
        match self {
            BranchComponent::Bare(c) | BranchComponent::Labelled { class: c, .. } => *c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BranchComponent::Bare(c) => c.to_string(),
            BranchComponent::Labelled { label, .. } => label.clone(),
        }
    }
}

/// Branch data `(D1, D2, D3; L1, L2)` of a bidouble cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidoubleData {
    pub d1: Vec<BranchComponent>,
    pub d2: Vec<BranchComponent>,
    pub d3: Vec<BranchComponent>,
    pub l1: DivClass,
    pub l2: DivClass,
}

impl BidoubleData {
    pub fn branch(&self, i: Idx) -> &[BranchComponent] {
        match i.get() {
            1 => &self.d1,
            2 => &self.d2,
            _ => &self.d3,
        }
    }

    pub fn branch_class(&self, i: Idx) -> DivClass {
        self.branch(i).iter().map(BranchComponent::class).sum()
    }

    pub fn total_branch(&self) -> DivClass {
        Idx::all().iter().map(|&i| self.branch_class(i)).sum()
    }

    pub fn l3(&self) -> DivClass {
        self.l1 + self.l2 - self.branch_class(Idx::THREE)
    }

    pub fn l(&self, i: Idx) -> DivClass {
        match i.get() {
            1 => self.l1,
            2 => self.l2,
            _ => self.l3(),
        }
    }

    /// Relabel `i -> i+1`, moving every class by the matching lattice symmetry.
    pub fn rotate(&self) -> BidoubleData {
        let rot = |comps: &[BranchComponent]| -> Vec<BranchComponent> {
            comps
                .iter()
                .map(|c| match c {
                    BranchComponent::Bare(d) => BranchComponent::Bare(d.rotate()),
                    BranchComponent::Labelled { class, label } => {
                        BranchComponent::labelled(class.rotate(), label.clone())
                    }
                })
                .collect()
        };
        BidoubleData {
            d1: rot(&self.d3),
            d2: rot(&self.d1),
            d3: rot(&self.d2),
            l1: self.l3().rotate(),
            l2: self.l1.rotate(),
        }
    }
}

/// Lattice-level validity of bidouble data. An empty result means valid.
///
/// Checks the two congruences and necessary conditions for `D` to be a normal
/// crossing divisor with smooth `D_i`: components are effective, components
/// of one `D_i` are disjoint, a class with negative square occurs once, and
/// distinct components never meet negatively. Whether curves really meet
/// transversally, with no three through a point, needs coordinates.
pub fn validate_bidouble(data: &BidoubleData) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let [s1, s2, s3] = Idx::all().map(|i| data.branch_class(i));
    if 2 * data.l1 != s2 + s3 {
        out.push(Diagnostic::new(
            DiagnosticKind::CongruenceL1,
            format!("2L1 = {} but D2 + D3 = {}", 2 * data.l1, s2 + s3),
        ));
    }
    if 2 * data.l2 != s1 + s3 {
        out.push(Diagnostic::new(
            DiagnosticKind::CongruenceL2,
            format!("2L2 = {} but D1 + D3 = {}", 2 * data.l2, s1 + s3),
        ));
    }

    let all: Vec<(Idx, &BranchComponent)> = Idx::all()
        .iter()
        .flat_map(|&i| data.branch(i).iter().map(move |c| (i, c)))
        .collect();

    for (i, c) in &all {
        if h0(c.class()) == 0 {
            out.push(Diagnostic::new(
                DiagnosticKind::NotEffective,
                format!("component {} of D{i} is not effective", c.label()),
            ));
        }
    }

    for (x, (i, a)) in all.iter().enumerate() {
        for (j, b) in &all[x + 1..] {
            let (ca, cb) = (a.class(), b.class());
            let meet = ca.dot(cb);
            if ca == cb && ca.square() < 0 {
                out.push(Diagnostic::new(
                    DiagnosticKind::RepeatedRigidComponent,
                    format!(
                        "{} (D{i}) and {} (D{j}) are the same rigid curve",
                        a.label(),
                        b.label()
                    ),
                ));
            } else if i == j && meet != 0 {
                out.push(Diagnostic::new(
                    DiagnosticKind::BranchNotSmooth,
                    format!(
                        "components {} and {} of D{i} meet ({meet})",
                        a.label(),
                        b.label()
                    ),
                ));
            } else if meet < 0 {
                out.push(Diagnostic::new(
                    DiagnosticKind::NegativeIntersection,
                    format!("{} (D{i}) . {} (D{j}) = {meet} < 0", a.label(), b.label()),
                ));
            }
        }
    }
    out
}

/// Conditions the lattice cannot decide and that need geometric confirmation.
pub fn geometric_flags(data: &BidoubleData) -> Vec<String> {
    let mut out = Vec::new();
    let all: Vec<(Idx, &BranchComponent)> = Idx::all()
        .iter()
        .flat_map(|&i| data.branch(i).iter().map(move |c| (i, c)))
        .collect();
    for (i, c) in &all {
        let g = c.class().arithmetic_genus();
        if g != 0 {
            out.push(format!(
                "component {} of D{i} has arithmetic genus {g}; smoothness not checked",
                c.label()
            ));
        }
    }
    for (x, (i, a)) in all.iter().enumerate() {
        for (j, b) in &all[x + 1..] {
            let meet = a.class().dot(b.class());
            if i != j && meet > 1 {
                out.push(format!(
                    "{} (D{i}) and {} (D{j}) meet in {meet} points; transversality not checked",
                    a.label(),
                    b.label()
                ));
            }
        }
    }
    out
}

/// `chi(S) = 4 chi(O) + sum L_i.(K + L_i) / 2`.
pub fn bidouble_chi(data: &BidoubleData) -> Result<i64> {
    let k = DivClass::canonical();
    let twice: i64 = Idx::all()
        .iter()
        .map(|&i| {
            let l = data.l(i);
            l.dot(k + l)
        })
        .sum();
    Ok(4 * CHI_STRUCTURE_SHEAF + half(twice)?)
}

/// `chi(S)` as `chi(O) + sum chi(-L_i)`, from the eigensheaf splitting.
pub fn bidouble_chi_by_eigensheaves(data: &BidoubleData) -> i64 {
    CHI_STRUCTURE_SHEAF
        + Idx::all()
            .iter()
            .map(|&i| riemann_roch_chi(-data.l(i)))
            .sum::<i64>()
}

/// Invariants of the bidouble cover. Fails if [`validate_bidouble`] does.
pub fn bidouble_invariants(data: &BidoubleData) -> Result<InvariantReport> {
    let errors = validate_bidouble(data);
    if !errors.is_empty() {
        return Err(Error::InvalidBidouble(
            errors.into_iter().map(|d| d.message).collect(),
        ));
    }
    let k = DivClass::canonical();
    let chi = bidouble_chi(data)?;
    let pg: u64 = Idx::all().iter().map(|&i| h0(k + data.l(i))).sum();
    let bicanonical_base = 2 * k + data.total_branch();
    let k2 = bicanonical_base.square();
    let mut report = InvariantReport::assemble(chi, pg, k2, Exactness::Exact);

    let sections: u64 = Idx::all().iter().map(|&i| h0(-data.l(i))).sum();
    if sections > 0 {
        report.push(Diagnostic::new(
            DiagnosticKind::DisconnectedCover,
            format!("h^0(O_S) = {}; the cover is not connected", 1 + sections),
        ));
    }
    // 2K_S is the pullback of 2K + D, so it is ample iff 2K + D is; the
    // six lines span the cone of curves.
    let ample = neg_one_curves()
        .iter()
        .all(|c| bicanonical_base.dot(*c) > 0);
    if ample && report.valid {
        report.p2 = Some((chi + k2) as u64);
        if pg != 0 || report.q != 0 {
            report
                .notes
                .push(format!("p_g = {pg}, q = {}: P2 uses chi + K^2", report.q));
        }
    } else {
        report
            .notes
            .push("2K + D is not ample; P2 not determined".into());
    }
    report.notes.extend(geometric_flags(data));
    Ok(report)
}
