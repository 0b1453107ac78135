//! Exact open and closed subsets of the circle 𝕋 made from finitely many arcs
//! and points with rational endpoints.
//!
//! A point of 𝕋 is written `e^{2πiθ}` and stored as its angle `θ ∈ [0, 1)`.
//! Both set kinds share one canonical representation: a sorted list of
//! breakpoints, each recording whether the breakpoint itself and the open
//! gap up to the next breakpoint (cyclically) belong to the set. A
//! breakpoint whose three flags (gap before, point, gap after) agree carries
//! no information and is dropped, which makes the representation unique.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A circle point `z = e^{2πiθ}`, stored as the reduced rational `θ` with `0 ≤ θ < 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Rational);

impl Angle {
    /// `θ = 0`, i.e. `z = 1`.
    pub const ZERO: Angle = Angle(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Angle> {
        if denom == 0 {
            return Err(Error::BadAngle(format!("{numer}/0")));
        }
        Angle::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(theta: Rational) -> Result<Angle> {
        if theta < Rational::zero() || theta >= Rational::one() {
            return Err(Error::BadAngle(format!(
                "{} is outside [0, 1)",
                fmt_rational(theta)
            )));
        }
        Ok(Angle(theta))
    }

    /// Reduces any rational modulo 1.
    pub fn wrapping(theta: Rational) -> Angle {
        Angle(theta - theta.floor())
    }

    pub fn value(self) -> Rational {
        self.0
    }

    /// The point halfway along the counter-clockwise arc from `self` to `next`.
    /// When `next == self` the arc is the whole circle.
    pub fn midpoint_towards(self, next: Angle) -> Angle {
        let mut end = next.0;
        if end <= self.0 {
            end += Rational::one();
        }
        Angle::wrapping((self.0 + end) / 2)
    }
}

pub(crate) fn fmt_rational(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::BadAngle(s.to_string());
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if denom == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(numer, denom))
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(self.0))
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Angle> {
        Angle::from_ratio(parse_rational(s)?)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Break {
    at: Angle,
    point: bool,
    after: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Region {
    breaks: Vec<Break>,
    /// Membership of every point when there are no breakpoints.
    full: bool,
}

impl Region {
    const EMPTY: Region = Region {
        breaks: Vec::new(),
        full: false,
    };
    const FULL: Region = Region {
        breaks: Vec::new(),
        full: true,
    };

    /// Breakpoints must have distinct angles.
    fn from_breaks(mut breaks: Vec<Break>) -> Region {
        breaks.sort_by_key(|b| b.at);
        debug_assert!(breaks.windows(2).all(|w| w[0].at < w[1].at));
        let n = breaks.len();
        let kept: Vec<Break> = (0..n)
            .filter(|&i| {
                let before = breaks[(i + n - 1) % n].after;
                let b = breaks[i];
                !(before == b.point && b.point == b.after)
            })
            .map(|i| breaks[i])
            .collect();
        match kept.is_empty() {
            true => Region {
                breaks: Vec::new(),
                full: breaks.first().is_some_and(|b| b.point),
            },
            false => Region {
                breaks: kept,
                full: false,
            },
        }
    }

    fn gap_before(&self, i: usize) -> bool {
        let n = self.breaks.len();
        self.breaks[(i + n - 1) % n].after
    }

    /// Membership of `θ` itself and of the open gap immediately after it.
    fn locate(&self, theta: Angle) -> (bool, bool) {
        if self.breaks.is_empty() {
            return (self.full, self.full);
        }
        match self.breaks.binary_search_by_key(&theta, |b| b.at) {
            Ok(i) => (self.breaks[i].point, self.breaks[i].after),
            Err(0) => {
                let gap = self.breaks.last().expect("nonempty").after;
                (gap, gap)
            }
            Err(i) => {
                let gap = self.breaks[i - 1].after;
                (gap, gap)
            }
        }
    }

    fn combine(&self, other: &Region, op: impl Fn(bool, bool) -> bool) -> Region {
        if self.breaks.is_empty() && other.breaks.is_empty() {
            return Region {
                breaks: Vec::new(),
                full: op(self.full, other.full),
            };
        }
        let mut angles: Vec<Angle> = self
            .breaks
            .iter()
            .chain(&other.breaks)
            .map(|b| b.at)
            .collect();
        angles.sort();
        angles.dedup();
        Region::from_breaks(
            angles
                .into_iter()
                .map(|at| {
                    let (pa, aa) = self.locate(at);
                    let (pb, ab) = other.locate(at);
                    Break {
                        at,
                        point: op(pa, pb),
                        after: op(aa, ab),
                    }
                })
                .collect(),
        )
    }

    /// Rewrites every breakpoint from `(gap before, point, gap after)`; gaps
    /// are transformed by `gap` independently of their neighbours.
    fn remap(
        &self,
        point: impl Fn(bool, bool, bool) -> bool,
        gap: impl Fn(bool) -> bool,
    ) -> Region {
        if self.breaks.is_empty() {
            return Region {
                breaks: Vec::new(),
                full: gap(self.full),
            };
        }
        Region::from_breaks(
            (0..self.breaks.len())
                .map(|i| {
                    let b = self.breaks[i];
                    Break {
                        at: b.at,
                        point: point(self.gap_before(i), b.point, b.after),
                        after: gap(b.after),
                    }
                })
                .collect(),
        )
    }

    fn complement(&self) -> Region {
        self.remap(|_, p, _| !p, |g| !g)
    }

    fn interior(&self) -> Region {
        self.remap(|before, p, after| before && p && after, |g| g)
    }

    fn closure(&self) -> Region {
        self.remap(|before, p, after| before || p || after, |g| g)
    }

    #[cfg(test)]
    fn is_open(&self) -> bool {
        *self == self.interior()
    }

    #[cfg(test)]
    fn is_closed(&self) -> bool {
        *self == self.closure()
    }

    fn endpoints(&self) -> Vec<Angle> {
        self.breaks.iter().map(|b| b.at).collect()
    }

    /// Upper end of the arc starting at breakpoint `i` and ending at breakpoint `j`.
    fn arc_end(&self, i: usize, j: usize) -> Rational {
        let (start, end) = (self.breaks[i].at.0, self.breaks[j].at.0);
        if end <= start {
            end + Rational::one()
        } else {
            end
        }
    }

    /// Open arc `(a, b)` with `a < b ≤ a + 1`.
    fn open_arc(a: Rational, b: Rational) -> Result<Region> {
        if !(a < b && b <= a + Rational::one()) {
            return Err(Error::BadArc(format!(
                "open arc ({}, {}) needs a < b ≤ a + 1",
                fmt_rational(a),
                fmt_rational(b)
            )));
        }
        let (start, end) = (Angle::wrapping(a), Angle::wrapping(b));
        if start == end {
            return Ok(Region::from_breaks(vec![Break {
                at: start,
                point: false,
                after: true,
            }]));
        }
        Ok(Region::from_breaks(vec![
            Break {
                at: start,
                point: false,
                after: true,
            },
            Break {
                at: end,
                point: false,
                after: false,
            },
        ]))
    }

    /// Closed arc `[a, b]` with `a ≤ b ≤ a + 1`.
    fn closed_arc(a: Rational, b: Rational) -> Result<Region> {
        if !(a <= b && b <= a + Rational::one()) {
            return Err(Error::BadArc(format!(
                "closed arc [{}, {}] needs a ≤ b ≤ a + 1",
                fmt_rational(a),
                fmt_rational(b)
            )));
        }
        let (start, end) = (Angle::wrapping(a), Angle::wrapping(b));
        if a == b {
            return Ok(Region::point(start));
        }
        if start == end {
            return Ok(Region::FULL);
        }
        Ok(Region::from_breaks(vec![
            Break {
                at: start,
                point: true,
                after: true,
            },
            Break {
                at: end,
                point: true,
                after: false,
            },
        ]))
    }

    fn point(at: Angle) -> Region {
        Region::from_breaks(vec![Break {
            at,
            point: true,
            after: false,
        }])
    }
}

/// An open subset of 𝕋: empty, the whole circle, or a finite union of
/// disjoint open arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenCircleSet(Region);

impl OpenCircleSet {
    pub fn empty() -> Self {
        OpenCircleSet(Region::EMPTY)
    }

    pub fn full() -> Self {
        OpenCircleSet(Region::FULL)
    }

    /// The arc `(a, b)` traversed counter-clockwise; needs `a < b ≤ a + 1`,
    /// and `b = a + 1` gives the circle minus one point.
    pub fn arc(a: Rational, b: Rational) -> Result<Self> {
        Region::open_arc(a, b).map(OpenCircleSet)
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        arcs.into_iter()
            .try_fold(OpenCircleSet::empty(), |acc, (a, b)| {
                Ok(acc.union(&OpenCircleSet::arc(a, b)?))
            })
    }

    /// `𝕋 ∖ {z}`
    pub fn co_point(z: Angle) -> Self {
        ClosedCircleSet::points([z]).complement()
    }

    pub fn contains(&self, z: Angle) -> bool {
        self.0.locate(z).0
    }

    pub fn union(&self, other: &Self) -> Self {
        OpenCircleSet(self.0.combine(&other.0, |a, b| a || b))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        OpenCircleSet(self.0.combine(&other.0, |a, b| a && b))
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a OpenCircleSet>) -> Self {
        sets.into_iter()
            .fold(OpenCircleSet::empty(), |acc, s| acc.union(s))
    }

    /// `Int(⋂ sets)`; the intersection of the empty family is the whole circle.
    pub fn interior_of_intersection<'a>(sets: impl IntoIterator<Item = &'a OpenCircleSet>) -> Self {
        let meet = sets
            .into_iter()
            .fold(Region::FULL, |acc, s| acc.combine(&s.0, |a, b| a && b));
        OpenCircleSet(meet.interior())
    }

    pub fn complement(&self) -> ClosedCircleSet {
        ClosedCircleSet(self.0.complement())
    }

    pub fn closure(&self) -> ClosedCircleSet {
        ClosedCircleSet(self.0.closure())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersect(other) == *self
    }

    /// Every open set except 𝕋 itself is proper.
    pub fn is_proper(&self) -> bool {
        !self.is_full()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == Region::EMPTY
    }

    pub fn is_full(&self) -> bool {
        self.0 == Region::FULL
    }

    /// `Some(z)` when the set is exactly `𝕋 ∖ {z}`.
    pub fn as_co_point(&self) -> Option<Angle> {
        match self.0.breaks.as_slice() {
            [only] if !only.point && only.after => Some(only.at),
            _ => None,
        }
    }

    /// Maximal arcs `(a, b)` sorted by `a ∈ [0, 1)`, with `a < b ≤ a + 1`.
    /// Empty for both the empty set and the full circle.
    pub fn arcs(&self) -> Vec<(Rational, Rational)> {
        let n = self.0.breaks.len();
        (0..n)
            .filter(|&i| self.0.breaks[i].after)
            .map(|i| (self.0.breaks[i].at.0, self.0.arc_end(i, (i + 1) % n)))
            .collect()
    }

    /// Angles at which membership changes.
    pub fn endpoints(&self) -> Vec<Angle> {
        self.0.endpoints()
    }
}

impl fmt::Display for OpenCircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("𝕋");
        }
        if self.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self
            .arcs()
            .into_iter()
            .map(|(a, b)| format!("({}, {})", fmt_rational(a), fmt_rational(b)))
            .collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// A closed subset of 𝕋: empty, the whole circle, or a finite union of
/// disjoint closed arcs and isolated points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedCircleSet(Region);

impl ClosedCircleSet {
    pub fn empty() -> Self {
        ClosedCircleSet(Region::EMPTY)
    }

    pub fn full() -> Self {
        ClosedCircleSet(Region::FULL)
    }

    /// The arc `[a, b]` traversed counter-clockwise; needs `a ≤ b ≤ a + 1`.
    pub fn arc(a: Rational, b: Rational) -> Result<Self> {
        Region::closed_arc(a, b).map(ClosedCircleSet)
    }

    /// The closed set consisting of exactly the given points; duplicates collapse.
    pub fn points(zs: impl IntoIterator<Item = Angle>) -> Self {
        zs.into_iter().fold(ClosedCircleSet::empty(), |acc, z| {
            acc.union(&ClosedCircleSet(Region::point(z)))
        })
    }

    pub fn from_parts(
        arcs: impl IntoIterator<Item = (Rational, Rational)>,
        points: impl IntoIterator<Item = Angle>,
    ) -> Result<Self> {
        let arcs = arcs
            .into_iter()
            .try_fold(ClosedCircleSet::empty(), |acc, (a, b)| {
                Ok::<_, Error>(acc.union(&ClosedCircleSet::arc(a, b)?))
            })?;
        Ok(arcs.union(&ClosedCircleSet::points(points)))
    }

    pub fn contains(&self, z: Angle) -> bool {
        self.0.locate(z).0
    }

    pub fn union(&self, other: &Self) -> Self {
        ClosedCircleSet(self.0.combine(&other.0, |a, b| a || b))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        ClosedCircleSet(self.0.combine(&other.0, |a, b| a && b))
    }

    pub fn complement(&self) -> OpenCircleSet {
        OpenCircleSet(self.0.complement())
    }

    pub fn interior(&self) -> OpenCircleSet {
        OpenCircleSet(self.0.interior())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersect(other) == *self
    }

    pub fn is_empty(&self) -> bool {
        self.0 == Region::EMPTY
    }

    pub fn is_full(&self) -> bool {
        self.0 == Region::FULL
    }

    /// Maximal closed arcs `[a, b]` of positive length, sorted by `a ∈ [0, 1)`,
    /// with `a < b < a + 1`. Empty for the full circle.
    pub fn arcs(&self) -> Vec<(Rational, Rational)> {
        let n = self.0.breaks.len();
        (0..n)
            .filter(|&i| self.0.breaks[i].after)
            .map(|i| (self.0.breaks[i].at.0, self.0.arc_end(i, (i + 1) % n)))
            .collect()
    }

    /// Isolated points, sorted.
    pub fn isolated_points(&self) -> Vec<Angle> {
        (0..self.0.breaks.len())
            .filter(|&i| !self.0.gap_before(i) && !self.0.breaks[i].after)
            .map(|i| self.0.breaks[i].at)
            .collect()
    }

    pub fn endpoints(&self) -> Vec<Angle> {
        self.0.endpoints()
    }
}

impl fmt::Display for ClosedCircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("𝕋");
        }
        if self.is_empty() {
            return f.write_str("∅");
        }
        let mut parts: Vec<String> = self
            .arcs()
            .into_iter()
            .map(|(a, b)| format!("[{}, {}]", fmt_rational(a), fmt_rational(b)))
            .collect();
        parts.extend(self.isolated_points().iter().map(|z| format!("{{{z}}}")));
        f.write_str(&parts.join(" ∪ "))
    }
}

/// The closure of a finite set of points is the set itself.
pub fn finite_closed_set(zs: impl IntoIterator<Item = Angle>) -> ClosedCircleSet {
    ClosedCircleSet::points(zs)
}

// JSON forms: angles and endpoints are "p/q" strings.
//   open:   "full" | "empty" | [["a","b"], ...]
//   closed: "full" | {"arcs": [["a","b"], ...], "points": ["p/q", ...]}
// "empty" is also accepted for a closed set.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OpenJson {
    Word(String),
    Arcs(Vec<(String, String)>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ClosedJson {
    Word(String),
    Parts {
        #[serde(default)]
        arcs: Vec<(String, String)>,
        #[serde(default)]
        points: Vec<Angle>,
    },
}

fn arcs_to_json(arcs: Vec<(Rational, Rational)>) -> Vec<(String, String)> {
    arcs.into_iter()
        .map(|(a, b)| (fmt_rational(a), fmt_rational(b)))
        .collect()
}

fn arcs_from_json(arcs: &[(String, String)]) -> Result<Vec<(Rational, Rational)>> {
    arcs.iter()
        .map(|(a, b)| Ok((parse_rational(a)?, parse_rational(b)?)))
        .collect()
}

impl Serialize for OpenCircleSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = if self.is_full() {
            OpenJson::Word("full".into())
        } else if self.is_empty() {
            OpenJson::Word("empty".into())
        } else {
            OpenJson::Arcs(arcs_to_json(self.arcs()))
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OpenCircleSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match OpenJson::deserialize(deserializer)? {
            OpenJson::Word(w) if w == "full" => Ok(OpenCircleSet::full()),
            OpenJson::Word(w) if w == "empty" => Ok(OpenCircleSet::empty()),
            OpenJson::Word(w) => Err(D::Error::custom(format!("unknown open set `{w}`"))),
            OpenJson::Arcs(arcs) => arcs_from_json(&arcs)
                .and_then(OpenCircleSet::from_arcs)
                .map_err(D::Error::custom),
        }
    }
}

impl Serialize for ClosedCircleSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = if self.is_full() {
            ClosedJson::Word("full".into())
        } else {
            ClosedJson::Parts {
                arcs: arcs_to_json(self.arcs()),
                points: self.isolated_points(),
            }
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClosedCircleSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match ClosedJson::deserialize(deserializer)? {
            ClosedJson::Word(w) if w == "full" => Ok(ClosedCircleSet::full()),
            ClosedJson::Word(w) if w == "empty" => Ok(ClosedCircleSet::empty()),
            ClosedJson::Word(w) => Err(D::Error::custom(format!("unknown closed set `{w}`"))),
            ClosedJson::Parts { arcs, points } => arcs_from_json(&arcs)
                .and_then(|arcs| ClosedCircleSet::from_parts(arcs, points))
                .map_err(D::Error::custom),
        }
    }
}
