//! The Picard lattice of the degree-6 del Pezzo surface.
//!
//! `Pic = Z<l, e1, e2, e3>` with `l^2 = 1`, `ei^2 = -1` and all mixed products
//! zero. A class is stored as `a*l + b1*e1 + b2*e2 + b3*e3`, so the
//! anticanonical class `3l - e1 - e2 - e3` is `(3, -1, -1, -1)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Euler characteristic of the structure sheaf of the del Pezzo surface.
pub const CHI_STRUCTURE_SHEAF: i64 = 1;

/// Topological Euler number: 3 for the plane plus one per blown-up point.
pub const EULER_NUMBER: i64 = 6;

/// An index in `{1, 2, 3}` with arithmetic mod 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "u8")]
pub struct Idx(u8);

impl Idx {
    pub const ONE: Idx = Idx(1);
    pub const TWO: Idx = Idx(2);
    pub const THREE: Idx = Idx(3);

    pub fn new(i: i64) -> Result<Idx> {
        match i {
            1..=3 => Ok(Idx(i as u8)),
            _ => Err(Error::InvalidIndex(i)),
        }
    }

    pub fn all() -> [Idx; 3] {
        [Idx::ONE, Idx::TWO, Idx::THREE]
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position, for array indexing.
    pub fn pos(self) -> usize {
        usize::from(self.0 - 1)
    }

    /// `self + k` with representatives in `1..=3`.
    pub fn shift(self, k: i64) -> Idx {
        let r = (i64::from(self.0) - 1 + k).rem_euclid(3);
        Idx(r as u8 + 1)
    }

    pub fn next(self) -> Idx {
        self.shift(1)
    }

    pub fn prev(self) -> Idx {
        self.shift(-1)
    }
}

impl From<Idx> for u8 {
    fn from(i: Idx) -> u8 {
        i.0
    }
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A divisor class `a*l + b1*e1 + b2*e2 + b3*e3`.
///
/// Arithmetic is checked: the operator impls panic on overflow rather than
/// wrapping, and the `checked_*` / `try_*` variants report it as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DivClass {
    pub a: i32,
    pub b: [i32; 3],
}

impl DivClass {
    pub const ZERO: DivClass = DivClass { a: 0, b: [0, 0, 0] };

    pub const fn new(a: i32, b1: i32, b2: i32, b3: i32) -> DivClass {
        DivClass { a, b: [b1, b2, b3] }
    }

    pub fn from_array(v: [i32; 4]) -> DivClass {
        DivClass::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(self) -> [i32; 4] {
        [self.a, self.b[0], self.b[1], self.b[2]]
    }

    /// Pullback of a line.
    pub const fn l() -> DivClass {
        DivClass::new(1, 0, 0, 0)
    }

    /// Exceptional curve over `P_i`.
    pub fn e(i: Idx) -> DivClass {
        let mut b = [0; 3];
        b[i.pos()] = 1;
        DivClass { a: 0, b }
    }

    /// Strict transform of a general line through `P_i`: `l - e_i`.
    pub fn f(i: Idx) -> DivClass {
        DivClass::l() - DivClass::e(i)
    }

    /// Strict transform of the line through the other two points: `l - e_{i+1} - e_{i+2}`.
    pub fn e_prime(i: Idx) -> DivClass {
        DivClass::l() - DivClass::e(i.next()) - DivClass::e(i.prev())
    }

    /// Strict transform of a conic through all three points, `2l - e1 - e2 - e3`.
    pub const fn conic() -> DivClass {
        DivClass::new(2, -1, -1, -1)
    }

    /// `K = -3l + e1 + e2 + e3`.
    pub const fn canonical() -> DivClass {
        DivClass::new(-3, 1, 1, 1)
    }

    pub const fn anticanonical() -> DivClass {
        DivClass::new(3, -1, -1, -1)
    }

    pub fn is_zero(self) -> bool {
        self == DivClass::ZERO
    }

    pub fn checked_add(self, rhs: DivClass) -> Option<DivClass> {
        Some(DivClass {
            a: self.a.checked_add(rhs.a)?,
            b: [
                self.b[0].checked_add(rhs.b[0])?,
                self.b[1].checked_add(rhs.b[1])?,
                self.b[2].checked_add(rhs.b[2])?,
            ],
        })
    }

    pub fn checked_sub(self, rhs: DivClass) -> Option<DivClass> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Option<DivClass> {
        Some(DivClass {
            a: self.a.checked_neg()?,
            b: [
                self.b[0].checked_neg()?,
                self.b[1].checked_neg()?,
                self.b[2].checked_neg()?,
            ],
        })
    }

    pub fn checked_scale(self, k: i32) -> Option<DivClass> {
        Some(DivClass {
            a: self.a.checked_mul(k)?,
            b: [
                self.b[0].checked_mul(k)?,
                self.b[1].checked_mul(k)?,
                self.b[2].checked_mul(k)?,
            ],
        })
    }

    /// The intersection pairing `a*a' - sum(bi*bi')`.
    pub fn try_intersect(self, other: DivClass) -> Result<i64> {
        let mut acc = i64::from(self.a)
            .checked_mul(i64::from(other.a))
            .ok_or(Error::Overflow)?;
        for (x, y) in self.b.iter().zip(other.b.iter()) {
            let p = i64::from(*x)
                .checked_mul(i64::from(*y))
                .ok_or(Error::Overflow)?;
            acc = acc.checked_sub(p).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// The intersection pairing. Panics on overflow.
    pub fn dot(self, other: DivClass) -> i64 {
        self.try_intersect(other)
            .expect("intersection number overflows i64")
    }

    pub fn square(self) -> i64 {
        self.dot(self)
    }

    /// Degree with respect to the anticanonical polarisation, `(-K).D`.
    pub fn degree(self) -> i64 {
        DivClass::anticanonical().dot(self)
    }

    /// Arithmetic genus `1 + (D^2 + K.D)/2`.
    pub fn arithmetic_genus(self) -> i64 {
        1 + (self.square() + DivClass::canonical().dot(self)) / 2
    }

    /// gcd of the coefficients; 0 for the zero class.
    pub fn content(self) -> u32 {
        use num_integer::Integer;
        self.to_array()
            .iter()
            .fold(0i64, |g, &c| g.gcd(&i64::from(c))) as u32
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// The lattice symmetry induced by relabelling the points `P_i -> P_{i+1}`.
    pub fn rotate(self) -> DivClass {
        DivClass {
            a: self.a,
            b: [self.b[2], self.b[0], self.b[1]],
        }
    }

    /// Largest absolute coefficient.
    pub fn sup_norm(self) -> u32 {
        self.to_array()
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, rhs: DivClass) -> DivClass {
        self.checked_add(rhs).expect("lattice coefficient overflow")
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, rhs: DivClass) -> DivClass {
        self.checked_sub(rhs).expect("lattice coefficient overflow")
    }
}

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.checked_neg().expect("lattice coefficient overflow")
    }
}

impl Mul<DivClass> for i32 {
    type Output = DivClass;
    fn mul(self, rhs: DivClass) -> DivClass {
        rhs.checked_scale(self)
            .expect("lattice coefficient overflow")
    }
}

impl AddAssign for DivClass {
    fn add_assign(&mut self, rhs: DivClass) {
        *self = *self + rhs;
    }
}

impl SubAssign for DivClass {
    fn sub_assign(&mut self, rhs: DivClass) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for DivClass {
    fn sum<I: Iterator<Item = DivClass>>(iter: I) -> DivClass {
        iter.fold(DivClass::ZERO, |acc, d| acc + d)
    }
}

impl<'a> std::iter::Sum<&'a DivClass> for DivClass {
    fn sum<I: Iterator<Item = &'a DivClass>>(iter: I) -> DivClass {
        iter.copied().sum()
    }
}

impl Serialize for DivClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<DivClass, D::Error> {
        <[i32; 4]>::deserialize(d).map(DivClass::from_array)
    }
}

impl fmt::Display for DivClass {
    /// Renders as a linear combination, e.g. `3l - 2e1 - e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = std::iter::once((self.a, "l".to_string())).chain(
            self.b
                .iter()
                .enumerate()
                .map(|(k, &c)| (c, format!("e{}", k + 1))),
        );
        let mut first = true;
        for (c, sym) in terms.filter(|(c, _)| *c != 0) {
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 {
                String::new()
            } else {
                mag.to_string()
            };
            match (first, c < 0) {
                (true, true) => write!(f, "-{coeff}{sym}")?,
                (true, false) => write!(f, "{coeff}{sym}")?,
                (false, true) => write!(f, " - {coeff}{sym}")?,
                (false, false) => write!(f, " + {coeff}{sym}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Intersection number of two classes.
pub fn intersect(d1: DivClass, d2: DivClass) -> i64 {
    d1.dot(d2)
}

pub fn canonical_class() -> DivClass {
    DivClass::canonical()
}

/// Names accepted by [`named_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassName {
    L,
    E,
    F,
    EPrime,
}

impl std::str::FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassName> {
        match s {
            "l" => Ok(ClassName::L),
            "e" | "e_i" => Ok(ClassName::E),
            "f" | "f_i" => Ok(ClassName::F),
            "e_prime" | "e_prime_i" | "e'" => Ok(ClassName::EPrime),
            other => Err(Error::UnknownClassName(other.to_string())),
        }
    }
}

/// Looks up `l`, `e_i`, `f_i` or `e'_i`. The index is validated even for `l`.
pub fn named_class(name: ClassName, i: i64) -> Result<DivClass> {
    let i = Idx::new(i)?;
    Ok(match name {
        ClassName::L => DivClass::l(),
        ClassName::E => DivClass::e(i),
        ClassName::F => DivClass::f(i),
        ClassName::EPrime => DivClass::e_prime(i),
    })
}

/// `chi(O(D)) = 1 + D.(D - K)/2`. Integral by the parity `D^2 = D.K mod 2`.
pub fn riemann_roch_chi(d: DivClass) -> i64 {
    let twice = d.dot(d - DivClass::canonical());
    debug_assert!(twice % 2 == 0, "Wu parity violated by {d}");
    CHI_STRUCTURE_SHEAF + twice / 2
}

/// The six `(-1)`-curves in the fixed order `e1 < e2 < e3 < e'1 < e'2 < e'3`.
pub fn neg_one_curves() -> [DivClass; 6] {
    [
        DivClass::e(Idx::ONE),
        DivClass::e(Idx::TWO),
        DivClass::e(Idx::THREE),
        DivClass::e_prime(Idx::ONE),
        DivClass::e_prime(Idx::TWO),
        DivClass::e_prime(Idx::THREE),
    ]
}

/// Labels matching [`neg_one_curves`].
pub const NEG_ONE_CURVE_NAMES: [&str; 6] = ["e1", "e2", "e3", "e'1", "e'2", "e'3"];

/// Result of an exhaustive search over the box `|a|, |bi| <= radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSearch {
    pub radius: i32,
    pub classes: Vec<DivClass>,
    /// Solutions with some coefficient of absolute value `radius`. A nonzero
    /// count means the box may be too small to be exhaustive.
    pub boundary_hits: usize,
}

fn search_box(radius: i32, mut keep: impl FnMut(DivClass) -> bool) -> BoxSearch {
    let mut classes = Vec::new();
    for a in -radius..=radius {
        for b1 in -radius..=radius {
            for b2 in -radius..=radius {
                for b3 in -radius..=radius {
                    let d = DivClass::new(a, b1, b2, b3);
                    if keep(d) {
                        classes.push(d);
                    }
                }
            }
        }
    }
    classes.sort();
    let boundary_hits = classes
        .iter()
        .filter(|d| d.sup_norm() == radius.unsigned_abs())
        .count();
    BoxSearch {
        radius,
        classes,
        boundary_hits,
    }
}

pub const NEG_ONE_SEARCH_RADIUS: i32 = 3;
pub const PENCIL_SEARCH_RADIUS: i32 = 4;

/// All classes with `C^2 = -1` and `K.C = -1` in the box of radius 3.
///
/// On this surface every such class is the class of one of the six lines, so
/// no separate effectivity test is needed.
pub fn enumerate_neg_one_curves() -> BoxSearch {
    let k = DivClass::canonical();
    search_box(NEG_ONE_SEARCH_RADIUS, |d| {
        d.square() == -1 && k.dot(d) == -1
    })
}

/// `D.C >= 0` for every `(-1)`-curve. The six lines span the cone of curves,
/// so this is the full nef test.
pub fn is_nef(d: DivClass) -> bool {
    neg_one_curves().iter().all(|c| d.dot(*c) >= 0)
}

/// Primitive nef classes with `D^2 = 0` and `(-K).D = 2`, searched in the box of radius 4.
pub fn enumerate_free_pencil_classes() -> BoxSearch {
    search_box(PENCIL_SEARCH_RADIUS, |d| {
        d.square() == 0 && d.degree() == 2 && d.is_primitive() && is_nef(d)
    })
}

/// Numeric shadow of `phi^* D` on a surface `S` whose bicanonical map is a
/// degree-4 morphism onto the del Pezzo surface.
///
/// `phi^*` multiplies the form by 4 and `2K_S = phi^*(-K)`, so
/// `(phi^*D)^2 = 4 D^2` and `K_S.phi^*D = 2 (-K).D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PullbackClass {
    pub base: DivClass,
    pub square: i64,
    pub k_degree: i64,
}

pub fn pullback(d: DivClass) -> PullbackClass {
    PullbackClass {
        base: d,
        square: 4 * d.square(),
        k_degree: 2 * d.degree(),
    }
}
