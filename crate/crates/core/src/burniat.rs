//! The Burniat construction with `K^2 = 6`.
//!
//! Fix coordinates with `P1 = (1:0:0)`, `P2 = (0:1:0)`, `P3 = (0:0:1)`. The
//! pencil of lines through `P_i` is `{x_{i+1} = t x_{i+2}}`; `t = 0` and
//! `t = oo` are the coordinate lines through `P_i`, whose strict transforms
//! are the curves `e'_{i+1}` and `e'_{i+2}`. A Burniat arrangement picks two
//! lines `m^i_1, m^i_2` in each pencil with no three of the six concurrent.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::covers::{BidoubleData, BranchComponent, Diagnostic, DiagnosticKind};
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::lattice::{DivClass, Idx};
use crate::linear_systems::h0;
use crate::Rational;

/// Dimension of the automorphism group of the del Pezzo surface of degree 6:
/// the diagonal torus of `PGL(3)` fixing the three base points.
pub const AUT_DIMENSION: u64 = 2;

/// `h^0(K_S + eta + eta_i)` on a Burniat surface. Lives on `S`; carried as a
/// constant with no lattice derivation.
pub const H0_K_PLUS_ETA_PLUS_ETA_I: u64 = 2;

/// `h^0(K_S + eta) = h^0(K_S + eta_i)` on a Burniat surface; carried as a constant.
pub const H0_K_PLUS_ETA: u64 = 1;

/// Pencil parameters `t^i_j`, indexed `[i-1][j-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineArrangement {
    pub params: [[Rational; 2]; 3],
}

impl LineArrangement {
    pub fn new(params: [[Rational; 2]; 3]) -> LineArrangement {
        LineArrangement { params }
    }

    pub fn from_integers(t: [i64; 6]) -> LineArrangement {
        let r = |v: i64| Rational::from_integer(v.into());
        LineArrangement::new([[r(t[0]), r(t[1])], [r(t[2]), r(t[3])], [r(t[4]), r(t[5])]])
    }

    pub fn param(&self, i: Idx, j: usize) -> &Rational {
        &self.params[i.pos()][j - 1]
    }

    /// Coefficients `(c1, c2, c3)` of the line `c . x = 0` for `m^i_j`.
    pub fn line(&self, i: Idx, j: usize) -> [Rational; 3] {
        let mut v = [Rational::zero(), Rational::zero(), Rational::zero()];
        v[i.next().pos()] = Rational::one();
        v[i.prev().pos()] = -self.param(i, j).clone();
        v
    }

    /// Relabel `P_i -> P_{i+1}` together with the cyclic coordinate permutation.
    pub fn rotate(&self) -> LineArrangement {
        let [a, b, c] = self.params.clone();
        LineArrangement::new([c, a, b])
    }

    /// Swap `m^i_1` and `m^i_2`.
    pub fn swap_in_pencil(&self, i: Idx) -> LineArrangement {
        let mut p = self.params.clone();
        p[i.pos()].swap(0, 1);
        LineArrangement::new(p)
    }

    /// Draws an arrangement with small random rational parameters until it is valid.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> LineArrangement {
        loop {
            let mut draw = || {
                let num: i64 = rng.gen_range(-20..=20);
                let den: i64 = rng.gen_range(1..=9);
                Rational::new(num.into(), den.into())
            };
            let arr = LineArrangement::new([[draw(), draw()], [draw(), draw()], [draw(), draw()]]);
            if validate_arrangement(&arr).is_empty() {
                return arr;
            }
        }
    }
}

impl fmt::Display for LineArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, pair) in self.params.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "P{}: {}, {}", k + 1, pair[0], pair[1])?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Text(String),
    Int(i64),
}

fn parse_rational(input: RationalInput) -> std::result::Result<Rational, String> {
    match input {
        RationalInput::Int(v) => Ok(Rational::from_integer(v.into())),
        RationalInput::Text(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|e| format!("`{s}` is not a rational: {e}")),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile<T> {
    pencil_params: BTreeMap<String, [T; 2]>,
}

impl Serialize for LineArrangement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pencil_params = Idx::all()
            .iter()
            .map(|&i| {
                let p = &self.params[i.pos()];
                (format!("P{i}"), [p[0].to_string(), p[1].to_string()])
            })
            .collect();
        ArrangementFile { pencil_params }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LineArrangement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<LineArrangement, D::Error> {
        use serde::de::Error as _;
        let raw = ArrangementFile::<RationalInput>::deserialize(d)?;
        let mut pencils = raw.pencil_params;
        let mut take = |name: &str| -> std::result::Result<[Rational; 2], D::Error> {
            let [a, b] = pencils
                .remove(name)
                .ok_or_else(|| D::Error::custom(format!("pencil_params.{name} is missing")))?;
            let wrap = |e: String| D::Error::custom(format!("pencil_params.{name}: {e}"));
            Ok([
                parse_rational(a).map_err(wrap)?,
                parse_rational(b).map_err(wrap)?,
            ])
        };
        let params = [take("P1")?, take("P2")?, take("P3")?];
        if let Some(extra) = pencils.keys().next() {
            return Err(D::Error::custom(format!("unknown pencil `{extra}`")));
        }
        Ok(LineArrangement::new(params))
    }
}

fn concurrent(lines: [&[Rational; 3]; 3]) -> bool {
    let m = Matrix::from_rows(3, lines.iter().map(|l| l.to_vec()).collect());
    m.determinant().is_zero()
}

/// Diagnostics for an arrangement; empty iff it is a valid Burniat arrangement.
pub fn validate_arrangement(arr: &LineArrangement) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for i in Idx::all() {
        for j in 1..=2 {
            if arr.param(i, j).is_zero() {
                out.push(Diagnostic::new(
                    DiagnosticKind::ZeroParameter,
                    format!("m^{i}_{j} coincides with coordinate line x{} = 0", i.next()),
                ));
            }
        }
        if arr.param(i, 1) == arr.param(i, 2) {
            out.push(Diagnostic::new(
                DiagnosticKind::CoincidentLines,
                format!("m^{i}_1 and m^{i}_2 are the same line"),
            ));
        }
    }
    for j in 1..=2 {
        for k in 1..=2 {
            for m in 1..=2 {
                let l1 = arr.line(Idx::ONE, j);
                let l2 = arr.line(Idx::TWO, k);
                let l3 = arr.line(Idx::THREE, m);
                if concurrent([&l1, &l2, &l3]) {
                    out.push(Diagnostic::new(
                        DiagnosticKind::ConcurrentLines,
                        format!("m^1_{j}, m^2_{k}, m^3_{m} share a point (triple ({j},{k},{m}))"),
                    ));
                }
            }
        }
    }
    out
}

/// Branch data of the Burniat surface on a given arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurniatData {
    pub arrangement: LineArrangement,
    pub data: BidoubleData,
}

/// `D_i = e_i + e'_i + m^{i+1}_1 + m^{i+1}_2`, `L_1 = 3l - 2e_1 - e_3`,
/// `L_2 = 3l - 2e_2 - e_1`.
pub fn build_burniat(arr: &LineArrangement) -> Result<BurniatData> {
    let diags = validate_arrangement(arr);
    if !diags.is_empty() {
        return Err(Error::InvalidArrangement(
            diags.into_iter().map(|d| d.message).collect(),
        ));
    }
    Ok(BurniatData {
        arrangement: arr.clone(),
        data: burniat_branch_classes(),
    })
}

/// The Burniat branch data at the level of classes; independent of the arrangement.
pub fn burniat_branch_classes() -> BidoubleData {
    let branch = |i: Idx| {
        let p = i.next();
        vec![
            BranchComponent::labelled(DivClass::e(i), format!("e{i}")),
            BranchComponent::labelled(DivClass::e_prime(i), format!("e'{i}")),
            BranchComponent::labelled(DivClass::f(p), format!("m^{p}_1")),
            BranchComponent::labelled(DivClass::f(p), format!("m^{p}_2")),
        ]
    };
    let l = DivClass::l();
    let e = DivClass::e;
    BidoubleData {
        d1: branch(Idx::ONE),
        d2: branch(Idx::TWO),
        d3: branch(Idx::THREE),
        l1: 3 * l - 2 * e(Idx::ONE) - e(Idx::THREE),
        l2: 3 * l - 2 * e(Idx::TWO) - e(Idx::ONE),
    }
}

/// `(-K).D` for the total branch divisor.
pub fn branch_degree_check(data: &BidoubleData) -> i64 {
    data.total_branch().degree()
}

/// An element `c_eta*eta + c1*eta_1 + c2*eta_2` of `G = Z2^3`, with
/// `eta_3 = eta_1 + eta_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionElement {
    pub eta: bool,
    pub c1: bool,
    pub c2: bool,
}

impl TorsionElement {
    pub const ZERO: TorsionElement = TorsionElement::new(false, false, false);
    pub const ETA: TorsionElement = TorsionElement::new(true, false, false);

    pub const fn new(eta: bool, c1: bool, c2: bool) -> TorsionElement {
        TorsionElement { eta, c1, c2 }
    }

    pub fn eta_i(i: Idx) -> TorsionElement {
        match i.get() {
            1 => TorsionElement::new(false, true, false),
            2 => TorsionElement::new(false, false, true),
            _ => TorsionElement::new(false, true, true),
        }
    }

    pub fn is_zero(self) -> bool {
        self == TorsionElement::ZERO
    }

    /// The elements in the order `0, eta_1, eta_2, eta_3, eta, eta+eta_1, eta+eta_2, eta+eta_3`.
    pub fn all() -> [TorsionElement; 8] {
        let [a, b, c] = Idx::all().map(TorsionElement::eta_i);
        let e = TorsionElement::ETA;
        [TorsionElement::ZERO, a, b, c, e, e + a, e + b, e + c]
    }
}

impl std::ops::Add for TorsionElement {
    type Output = TorsionElement;
    fn add(self, rhs: TorsionElement) -> TorsionElement {
        TorsionElement::new(self.eta ^ rhs.eta, self.c1 ^ rhs.c1, self.c2 ^ rhs.c2)
    }
}

impl fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = match (self.c1, self.c2) {
            (false, false) => None,
            (true, false) => Some("eta1"),
            (false, true) => Some("eta2"),
            (true, true) => Some("eta3"),
        };
        match (self.eta, tail) {
            (false, None) => write!(f, "0"),
            (true, None) => write!(f, "eta"),
            (false, Some(t)) => write!(f, "{t}"),
            (true, Some(t)) => write!(f, "eta+{t}"),
        }
    }
}

impl Serialize for TorsionElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Addition table of `G`; `table[a][b]` is the index of `elements[a] + elements[b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub elements: Vec<TorsionElement>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|x| self.table[e][x] == x && self.table[x][e] == x))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]])
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Every element is its own inverse.
    pub fn is_elementary_two_group(&self) -> bool {
        match self.identity() {
            Some(e) => (0..self.order()).all(|a| self.table[a][a] == e),
            None => false,
        }
    }

    /// Rows are pairwise distinct permutations (a Latin square).
    pub fn is_latin(&self) -> bool {
        let n = self.order();
        let perm = |row: &Vec<usize>| {
            let mut seen = vec![false; n];
            row.iter()
                .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        self.table.iter().all(perm)
            && (0..n).all(|c| perm(&(0..n).map(|r| self.table[r][c]).collect()))
    }
}

pub fn torsion_group_table() -> GroupTable {
    let elements = TorsionElement::all().to_vec();
    let index = |t: TorsionElement| elements.iter().position(|&x| x == t).expect("closed");
    let table = elements
        .iter()
        .map(|&a| elements.iter().map(|&b| index(a + b)).collect())
        .collect();
    GroupTable { elements, table }
}

/// `G_i = {eta_i, eta + eta_{i+1}, eta + eta_{i+2}}`, the nonzero elements
/// trivial on a general curve of the pencil `|F_i|`. With `with_zero` the
/// result is the full kernel subgroup.
pub fn restriction_kernel(i: Idx, with_zero: bool) -> Vec<TorsionElement> {
    let eta = TorsionElement::ETA;
    let mut out = Vec::with_capacity(4);
    if with_zero {
        out.push(TorsionElement::ZERO);
    }
    out.extend([
        TorsionElement::eta_i(i),
        eta + TorsionElement::eta_i(i.next()),
        eta + TorsionElement::eta_i(i.prev()),
    ]);
    out
}

/// The moduli count: `sum_i (h^0(D_i) - 1)` parameters minus `dim Aut`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliCount {
    pub branch_h0: [u64; 3],
    pub parameter_dimension: u64,
    pub automorphism_dimension: u64,
    pub dimension: u64,
}

pub fn moduli_dimension() -> ModuliCount {
    let data = burniat_branch_classes();
    let branch_h0 = Idx::all().map(|i| h0(data.branch_class(i)));
    let parameter_dimension = branch_h0.iter().map(|h| h - 1).sum();
    ModuliCount {
        branch_h0,
        parameter_dimension,
        automorphism_dimension: AUT_DIMENSION,
        dimension: parameter_dimension - AUT_DIMENSION,
    }
}

/// One double fibre `2F` of the pencil `g_i`, described by the classes on the
/// del Pezzo surface of the curves under it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleFibre {
    pub label: String,
    pub components: Vec<(String, DivClass)>,
    pub class: DivClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleFibreCertificate {
    pub pencil: Idx,
    pub pencil_class: DivClass,
    pub fibres: Vec<DoubleFibre>,
}

impl DoubleFibreCertificate {
    /// Every fibre lies over the pencil class and the class is a free pencil.
    pub fn is_consistent(&self) -> bool {
        let f = self.pencil_class;
        f.square() == 0
            && f.degree() == 2
            && self.fibres.iter().all(|fib| {
                fib.class == f && fib.components.iter().map(|(_, c)| *c).sum::<DivClass>() == f
            })
    }
}

/// The four double fibres of `g_i`: `2(E_{i+1} + E'_{i+2})`,
/// `2(E'_{i+1} + E_{i+2})`, `2M^i_1` and `2M^i_2`.
pub fn double_fibre_certificate(i: Idx) -> DoubleFibreCertificate {
    let (a, b) = (i.next(), i.prev());
    let fibre = |label: String, comps: Vec<(String, DivClass)>| DoubleFibre {
        class: comps.iter().map(|(_, c)| *c).sum(),
        label,
        components: comps,
    };
    let fibres = vec![
        fibre(
            format!("2(E{a} + E'{b})"),
            vec![
                (format!("e{a}"), DivClass::e(a)),
                (format!("e'{b}"), DivClass::e_prime(b)),
            ],
        ),
        fibre(
            format!("2(E'{a} + E{b})"),
            vec![
                (format!("e'{a}"), DivClass::e_prime(a)),
                (format!("e{b}"), DivClass::e(b)),
            ],
        ),
        fibre(
            format!("2M^{i}_1"),
            vec![(format!("m^{i}_1"), DivClass::f(i))],
        ),
        fibre(
            format!("2M^{i}_2"),
            vec![(format!("m^{i}_2"), DivClass::f(i))],
        ),
    ];
    DoubleFibreCertificate {
        pencil: i,
        pencil_class: DivClass::f(i),
        fibres,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{bidouble_invariants, validate_bidouble};
    use rand::SeedableRng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn generic_arrangement_is_valid() {
        let arr = LineArrangement::from_integers([1, 2, 3, 5, 7, 11]);
        assert!(validate_arrangement(&arr).is_empty());
    }

    #[test]
    fn product_one_is_concurrent() {
        let arr = LineArrangement::from_integers([1, 2, 1, 2, 1, 2]);
        let diags = validate_arrangement(&arr);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::ConcurrentLines);
        assert!(diags[0].message.contains("(1,1,1)"));

        let arr =
            LineArrangement::new([[q(2, 1), q(5, 1)], [q(3, 1), q(-1, 1)], [q(7, 1), q(-1, 5)]]);
        let diags = validate_arrangement(&arr);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("(2,2,2)"));
    }

    #[test]
    fn zero_and_coincident_parameters() {
        let arr = LineArrangement::from_integers([0, 2, 3, 5, 7, 7]);
        let kinds: Vec<_> = validate_arrangement(&arr)
            .into_iter()
            .map(|d| d.kind)
            .collect();
        assert_eq!(
            kinds,
            vec![
                DiagnosticKind::ZeroParameter,
                DiagnosticKind::CoincidentLines
            ]
        );
        let msg = &validate_arrangement(&arr)[0].message;
        assert!(msg.contains("coordinate line"));
    }

    #[test]
    fn concurrency_is_product_one() {
        // Independent derivation: the three lines x2 = a x3, x3 = b x1,
        // x1 = c x2 meet iff a*b*c = 1.
        let vals: Vec<Rational> = [-3, -2, -1, 1, 2, 3]
            .iter()
            .flat_map(|&n| [q(n, 1), q(n, 2), q(n, 3)])
            .collect();
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    let arr = LineArrangement::new([
                        [a.clone(), q(1000, 1)],
                        [b.clone(), q(1001, 1)],
                        [c.clone(), q(1002, 1)],
                    ]);
                    let l = [
                        arr.line(Idx::ONE, 1),
                        arr.line(Idx::TWO, 1),
                        arr.line(Idx::THREE, 1),
                    ];
                    let expected = a.clone() * b.clone() * c.clone() == Rational::one();
                    assert_eq!(concurrent([&l[0], &l[1], &l[2]]), expected);
                }
            }
        }
    }

    #[test]
    fn arrangement_symmetries() {
        let cases = [
            LineArrangement::from_integers([1, 2, 3, 5, 7, 11]),
            LineArrangement::from_integers([1, 2, 1, 2, 1, 2]),
            LineArrangement::from_integers([0, 2, 1, 1, -1, 3]),
        ];
        for arr in &cases {
            let valid = validate_arrangement(arr).is_empty();
            let n = validate_arrangement(arr).len();
            assert_eq!(validate_arrangement(&arr.rotate()).len(), n);
            for i in Idx::all() {
                assert_eq!(
                    validate_arrangement(&arr.swap_in_pencil(i)).is_empty(),
                    valid
                );
                assert_eq!(validate_arrangement(&arr.swap_in_pencil(i)).len(), n);
            }
        }
    }

    #[test]
    fn small_perturbations_stay_valid() {
        let arr = LineArrangement::from_integers([1, 2, 3, 5, 7, 11]);
        let eps = q(1, 1000);
        for k in 0..6 {
            for sign in [1, -1] {
                let mut p = arr.params.clone();
                p[k / 2][k % 2] += eps.clone() * Rational::from_integer(sign.into());
                assert!(validate_arrangement(&LineArrangement::new(p)).is_empty());
            }
        }
    }

    #[test]
    fn build_and_class_sums() {
        let b = build_burniat(&LineArrangement::from_integers([1, 2, 3, 5, 7, 11])).unwrap();
        let d = &b.data;
        assert_eq!(d.branch_class(Idx::ONE), DivClass::new(3, 1, -3, -1));
        assert_eq!(d.branch_class(Idx::TWO), DivClass::new(3, -1, 1, -3));
        assert_eq!(d.branch_class(Idx::THREE), DivClass::new(3, -3, -1, 1));
        assert_eq!(d.l3(), DivClass::new(3, 0, -1, -2));
        assert_eq!(d.total_branch(), -3 * DivClass::canonical());
        assert_eq!(d.d1[2].label(), "m^2_1");
        assert!(validate_bidouble(d).is_empty());
        assert!(build_burniat(&LineArrangement::from_integers([1, 2, 1, 2, 1, 2])).is_err());
    }

    #[test]
    fn branch_degrees() {
        assert_eq!(branch_degree_check(&burniat_branch_classes()), 18);
        let empty = BidoubleData {
            d1: vec![],
            d2: vec![],
            d3: vec![],
            l1: DivClass::ZERO,
            l2: DivClass::ZERO,
        };
        assert_eq!(branch_degree_check(&empty), 0);
        let single = BidoubleData {
            d1: vec![BranchComponent::Bare(DivClass::e(Idx::ONE))],
            ..empty
        };
        assert_eq!(branch_degree_check(&single), 1);
    }

    #[test]
    fn torsion_group() {
        let t = torsion_group_table();
        assert_eq!(t.order(), 8);
        assert!(t.is_associative() && t.is_commutative() && t.is_latin());
        assert!(t.is_elementary_two_group());
        assert_eq!(t.identity(), Some(0));
        let eta = TorsionElement::ETA;
        assert!((eta + eta).is_zero());
        let [e1, e2, e3] = Idx::all().map(TorsionElement::eta_i);
        assert_eq!(e1 + e2, e3);
        assert!((e1 + e2 + e3).is_zero());
        let distinct: std::collections::BTreeSet<_> = t.table.iter().collect();
        assert_eq!(distinct.len(), 8);
        assert_eq!(
            TorsionElement::all().map(|t| t.to_string()),
            ["0", "eta1", "eta2", "eta3", "eta", "eta+eta1", "eta+eta2", "eta+eta3"]
        );
    }

    #[test]
    fn restriction_kernels() {
        let eta = TorsionElement::ETA;
        let [e1, e2, e3] = Idx::all().map(TorsionElement::eta_i);
        assert_eq!(
            restriction_kernel(Idx::ONE, false),
            vec![e1, eta + e2, eta + e3]
        );
        let sets: Vec<_> = Idx::all().map(|i| restriction_kernel(i, false)).to_vec();
        assert_ne!(sets[0], sets[1]);
        assert_ne!(sets[1], sets[2]);
        for s in &sets {
            assert_eq!(s.len(), 3);
            assert!(!s.contains(&eta));
        }
        // With zero each kernel is a subgroup of order 4.
        for i in Idx::all() {
            let k = restriction_kernel(i, true);
            assert!(k.iter().all(|&a| k.iter().all(|&b| k.contains(&(a + b)))));
        }
    }

    #[test]
    fn moduli() {
        let m = moduli_dimension();
        assert_eq!(m.branch_h0, [3, 3, 3]);
        assert_eq!(m.parameter_dimension, 6);
        assert_eq!(m.dimension, 4);
    }

    #[test]
    fn double_fibres() {
        for i in Idx::all() {
            let cert = double_fibre_certificate(i);
            assert_eq!(cert.fibres.len(), 4);
            assert!(cert.is_consistent());
        }
        let cert = double_fibre_certificate(Idx::ONE);
        assert_eq!(cert.fibres[0].class, DivClass::new(1, -1, 0, 0));
        assert_eq!(cert.fibres[0].label, "2(E2 + E'3)");
    }

    #[test]
    fn sampled_arrangements_give_burniat_invariants() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..5 {
            let arr = LineArrangement::sample(&mut rng);
            let r = bidouble_invariants(&build_burniat(&arr).unwrap().data).unwrap();
            assert_eq!(
                (r.chi, r.pg, r.q, r.k2, r.c2, r.p2),
                (1, 0, 0, 6, 6, Some(7))
            );
        }
    }

    #[test]
    fn arrangement_json() {
        let arr: LineArrangement = serde_json::from_str(
            r#"{"pencil_params": {"P1": ["1","2"], "P2": ["3/4", 5], "P3": ["7","-11/3"]}}"#,
        )
        .unwrap();
        assert_eq!(arr.param(Idx::TWO, 1), &q(3, 4));
        assert_eq!(arr.param(Idx::THREE, 2), &q(-11, 3));
        let text = serde_json::to_string(&arr).unwrap();
        assert_eq!(
            text,
            r#"{"pencil_params":{"P1":["1","2"],"P2":["3/4","5"],"P3":["7","-11/3"]}}"#
        );
        let back: LineArrangement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, arr);

        let err = serde_json::from_str::<LineArrangement>(
            r#"{"pencil_params": {"P1": ["1","x"], "P2": ["3","5"], "P3": ["7","11"]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("pencil_params.P1"));
        let err = serde_json::from_str::<LineArrangement>(
            r#"{"pencil_params": {"P1": ["1","2"], "P3": ["7","11"]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("P2 is missing"));
    }
}
