//! Stroke-pair signatures and subcharacter inclusion mining.
//!
//! A character is described by its stroke types in drawing order together
//! with one signature per consecutive stroke pair. The signature relates the
//! two strokes by relative box sizes and by where the lines through their
//! endpoints cross, so it is unchanged when a component is translated or
//! uniformly scaled inside a larger character.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Scalar;

/// Default absolute tolerance per finite signature component.
pub const DEFAULT_TOLERANCE: f64 = 0.05;

/// Abbreviations of the 36 calligraphic stroke classes, in the order of the
/// CJK Strokes block (U+31C0..U+31E3).
pub const STROKE_CODES: [&str; 36] = [
    "t", "wg", "xg", "bxg", "sw", "hzz", "hzg", "hp", "hzwg", "szwg", "hzt", "hzzp", "hpwg", "hzw", "hzzz",
    "n", "h", "s", "p", "sp", "d", "hz", "hg", "sz", "swz", "st", "sg", "pd", "pz", "tn", "szz", "swg", "hxwg",
    "hzzzg", "pg", "q",
];

const CJK_STROKES_START: u32 = 0x31C0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrokeType(u8);

impl StrokeType {
    pub fn from_index(i: usize) -> Option<Self> {
        (i < STROKE_CODES.len()).then_some(StrokeType(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn code(self) -> &'static str {
        STROKE_CODES[self.index()]
    }

    /// The character from the CJK Strokes block.
    pub fn as_char(self) -> char {
        char::from_u32(CJK_STROKES_START + u32::from(self.0)).unwrap()
    }
}

impl fmt::Display for StrokeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for StrokeType {
    type Err = Error;

    /// Accepts a stroke abbreviation (any case) or the CJK stroke character itself.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if let Some(i) = STROKE_CODES.iter().position(|&c| c == lower) {
            return Ok(StrokeType(i as u8));
        }
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            let off = u32::from(c).wrapping_sub(CJK_STROKES_START);
            if let Some(t) = StrokeType::from_index(off as usize) {
                return Ok(t);
            }
        }
        Err(Error::InvalidParameter(format!("unknown stroke type {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stroke<T> {
    pub kind: StrokeType,
    /// Skeleton polyline; only its endpoints enter the signature.
    pub skeleton: Vec<Point<T>>,
}

impl<T: Scalar> Stroke<T> {
    pub fn new(kind: StrokeType, skeleton: Vec<Point<T>>) -> Result<Self> {
        if skeleton.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "stroke {kind} needs at least 2 skeleton points, got {}",
                skeleton.len()
            )));
        }
        Ok(Stroke { kind, skeleton })
    }

    /// Straight stroke between two points.
    pub fn segment(kind: StrokeType, from: (T, T), to: (T, T)) -> Self {
        Stroke { kind, skeleton: vec![Point::new(from.0, from.1), Point::new(to.0, to.1)] }
    }

    pub fn start(&self) -> Point<T> {
        self.skeleton[0]
    }

    pub fn end(&self) -> Point<T> {
        self.skeleton[self.skeleton.len() - 1]
    }

    fn is_degenerate(&self) -> bool {
        self.start() == self.end()
    }

    /// Applies `(x, y) -> (sx*x + tx, sy*y + ty)` to every skeleton point.
    pub fn transformed(&self, sx: T, sy: T, tx: T, ty: T) -> Self {
        let skeleton = self.skeleton.iter().map(|p| Point::new(p.x * sx + tx, p.y * sy + ty)).collect();
        Stroke { kind: self.kind, skeleton }
    }
}

/// One signature component: a finite ratio or `E` where the ratio does not exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigValue<T> {
    Finite(T),
    E,
}

impl<T: Scalar> SigValue<T> {
    fn ratio(num: T, den: T) -> Self {
        if den == T::zero() {
            SigValue::E
        } else {
            SigValue::Finite(num / den)
        }
    }

    pub fn finite(self) -> Option<T> {
        match self {
            SigValue::Finite(v) => Some(v),
            SigValue::E => None,
        }
    }

    pub fn is_e(self) -> bool {
        matches!(self, SigValue::E)
    }

    pub fn matches(self, other: Self, tolerance: T) -> bool {
        match (self, other) {
            (SigValue::Finite(a), SigValue::Finite(b)) => (a - b).abs() <= tolerance,
            (SigValue::E, SigValue::E) => true,
            _ => false,
        }
    }
}

impl<T: Scalar> fmt::Display for SigValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigValue::Finite(v) => write!(f, "{v:.1}"),
            SigValue::E => f.write_str("E"),
        }
    }
}

/// Relation between two strokes: `[p1, p2, p3, p4]`.
///
/// * `p1`: distance from the first stroke's start to the intersection of the
///   two endpoint lines, in units of the first stroke's length;
/// * `p2`: width ratio of the stroke boxes (second / first);
/// * `p3`: height ratio of the stroke boxes (second / first);
/// * `p4`: like `p1`, measured on the second stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSignature<T>(pub [SigValue<T>; 4]);

impl<T: Scalar> PairSignature<T> {
    pub fn matches(&self, other: &Self, tolerance: T) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a.matches(*b, tolerance))
    }

    pub fn components(&self) -> &[SigValue<T>; 4] {
        &self.0
    }
}

impl<T: Scalar> fmt::Display for PairSignature<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Computes the signature of stroke `b` relative to stroke `a`.
///
/// Fails with the index (0 or 1) of a stroke whose endpoints coincide.
pub fn pair_signature<T: Scalar>(a: &Stroke<T>, b: &Stroke<T>) -> Result<PairSignature<T>> {
    if a.is_degenerate() {
        return Err(Error::DegenerateStroke { index: 0 });
    }
    if b.is_degenerate() {
        return Err(Error::DegenerateStroke { index: 1 });
    }
    let (p1, p2) = (a.start(), a.end());
    let (p3, p4) = (b.start(), b.end());
    let (d1x, d1y) = (p2.x - p1.x, p2.y - p1.y);
    let (d2x, d2y) = (p4.x - p3.x, p4.y - p3.y);
    let len1 = p1.dist(p2);
    let len2 = p3.dist(p4);

    let cross = d1x * d2y - d1y * d2x;
    let parallel = cross.abs() <= T::epsilon() * T::lit(16.0) * len1 * len2;
    let (along_first, along_second) = if parallel {
        (SigValue::E, SigValue::E)
    } else {
        let (wx, wy) = (p3.x - p1.x, p3.y - p1.y);
        let t = (wx * d2y - wy * d2x) / cross;
        let x0 = Point::new(p1.x + t * d1x, p1.y + t * d1y);
        (SigValue::ratio(x0.dist(p1), len1), SigValue::ratio(x0.dist(p3), len2))
    };

    Ok(PairSignature([
        along_first,
        SigValue::ratio((p4.x - p3.x).abs(), (p2.x - p1.x).abs()),
        SigValue::ratio((p4.y - p3.y).abs(), (p2.y - p1.y).abs()),
        along_second,
    ]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharSignature<T> {
    pub stroke_types: Vec<StrokeType>,
    /// `pair_sigs[i]` relates strokes `i` and `i + 1`.
    pub pair_sigs: Vec<PairSignature<T>>,
}

impl<T: Scalar> CharSignature<T> {
    pub fn stroke_count(&self) -> usize {
        self.stroke_types.len()
    }

    /// Whether `self` occurs as a contiguous stroke block of `other` starting at `offset`.
    pub fn occurs_at(&self, other: &Self, offset: usize, tolerance: T) -> bool {
        let k = self.stroke_types.len();
        if offset + k > other.stroke_types.len() || other.stroke_types[offset..offset + k] != self.stroke_types[..] {
            return false;
        }
        self.pair_sigs
            .iter()
            .zip(&other.pair_sigs[offset..])
            .all(|(a, b)| a.matches(b, tolerance))
    }

    pub fn occurs_in(&self, other: &Self, tolerance: T) -> bool {
        let (k, n) = (self.stroke_count(), other.stroke_count());
        k <= n && (0..=n - k).any(|o| self.occurs_at(other, o, tolerance))
    }
}

pub fn char_signature<T: Scalar>(strokes: &[Stroke<T>]) -> Result<CharSignature<T>> {
    if strokes.is_empty() {
        return Err(Error::Empty("stroke list"));
    }
    let pair_sigs = strokes
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            pair_signature(&w[0], &w[1]).map_err(|e| match e {
                Error::DegenerateStroke { index } => Error::DegenerateStroke { index: i + index },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharSignature { stroke_types: strokes.iter().map(|s| s.kind).collect(), pair_sigs })
}

/// Finds every strict inclusion `(s, c)`: the whole signature of `s` occurs as
/// a contiguous block of the signature of `c`.
///
/// Candidates are looked up by stroke-type sequence, so each container is
/// only compared against subcharacters whose types already match.
pub fn detect_inclusions<T: Scalar>(
    sigs: &BTreeMap<char, CharSignature<T>>,
    tolerance: T,
) -> Result<BTreeSet<(char, char)>> {
    if !(tolerance >= T::zero()) || !tolerance.is_finite() {
        return Err(Error::InvalidParameter(format!("tolerance must be finite and nonnegative, got {tolerance}")));
    }
    let mut by_types: HashMap<&[StrokeType], Vec<char>> = HashMap::new();
    for (&c, sig) in sigs {
        by_types.entry(sig.stroke_types.as_slice()).or_default().push(c);
    }
    let lengths: BTreeSet<usize> = by_types.keys().map(|k| k.len()).collect();

    let containers: Vec<(&char, &CharSignature<T>)> = sigs.iter().collect();
    let found: Vec<(char, char)> = containers
        .par_iter()
        .flat_map_iter(|&(&c, csig)| {
            let n = csig.stroke_count();
            let mut out = Vec::new();
            for &k in lengths.iter().take_while(|&&k| k <= n) {
                for offset in 0..=n - k {
                    let Some(cands) = by_types.get(&csig.stroke_types[offset..offset + k]) else {
                        continue;
                    };
                    for &s in cands {
                        if s != c && sigs[&s].occurs_at(csig, offset, tolerance) {
                            out.push((s, c));
                        }
                    }
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(code: &str) -> StrokeType {
        code.parse().unwrap()
    }

    fn seg(code: &str, a: (f64, f64), b: (f64, f64)) -> Stroke<f64> {
        Stroke::segment(t(code), a, b)
    }

    #[test]
    fn stroke_codes_round_trip() {
        assert_eq!(STROKE_CODES.len(), 36);
        for i in 0..36 {
            let st = StrokeType::from_index(i).unwrap();
            assert_eq!(st.code().parse::<StrokeType>().unwrap(), st);
            assert_eq!(st.as_char().to_string().parse::<StrokeType>().unwrap(), st);
        }
        assert_eq!(t("HZ"), t("hz"));
        assert_eq!(t("\u{31D4}"), t("d"));
        assert!("zz".parse::<StrokeType>().is_err());
    }

    #[test]
    fn parallel_horizontals_have_no_intersection() {
        let sig = pair_signature(&seg("h", (0.0, 0.0), (4.0, 0.0)), &seg("h", (1.0, 2.0), (3.0, 2.0))).unwrap();
        assert!(sig.0[0].is_e());
        assert!(sig.0[3].is_e());
        assert_eq!(sig.0[1], SigValue::Finite(0.5));
        // both heights are zero
        assert!(sig.0[2].is_e());
    }

    #[test]
    fn horizontal_then_vertical() {
        let sig = pair_signature(&seg("h", (0.0, 0.0), (4.0, 0.0)), &seg("s", (1.0, -1.0), (1.0, 3.0))).unwrap();
        assert!(sig.0[2].is_e());
        assert_eq!(sig.0[0], SigValue::Finite(0.25));
        assert_eq!(sig.0[1], SigValue::Finite(0.0));
        assert_eq!(sig.0[3], SigValue::Finite(0.25));
    }

    #[test]
    fn degenerate_stroke_is_reported_with_index() {
        let ok = seg("h", (0.0, 0.0), (1.0, 0.0));
        let bad = seg("d", (2.0, 2.0), (2.0, 2.0));
        assert!(matches!(pair_signature(&ok, &bad), Err(Error::DegenerateStroke { index: 1 })));
        let strokes = [ok.clone(), ok.clone(), bad];
        assert!(matches!(char_signature(&strokes), Err(Error::DegenerateStroke { index: 2 })));
    }

    #[test]
    fn bent_strokes_use_endpoints_only() {
        let bent = Stroke::new(
            t("hz"),
            vec![Point::new(0.0, 0.0), Point::new(5.0, 0.0), Point::new(4.0, 3.0)],
        )
        .unwrap();
        let straight = seg("hz", (0.0, 0.0), (4.0, 3.0));
        let other = seg("h", (0.0, 5.0), (6.0, 5.0));
        assert_eq!(pair_signature(&bent, &other).unwrap(), pair_signature(&straight, &other).unwrap());
        assert!(Stroke::new(t("d"), vec![Point::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn char_signature_shapes() {
        assert!(char_signature::<f64>(&[]).is_err());
        let one = char_signature(&[seg("h", (0.0, 0.0), (1.0, 0.0))]).unwrap();
        assert_eq!((one.stroke_types.len(), one.pair_sigs.len()), (1, 0));
        let two = char_signature(&[seg("h", (0.0, 0.0), (1.0, 0.0)), seg("s", (0.5, -1.0), (0.5, 1.0))]).unwrap();
        assert_eq!((two.stroke_types.len(), two.pair_sigs.len()), (2, 1));
    }

    #[test]
    fn prefix_and_identity() {
        let a = char_signature(&[seg("h", (0.0, 0.0), (2.0, 0.0)), seg("s", (1.0, -1.0), (1.0, 1.0))]).unwrap();
        let b = char_signature(&[
            seg("h", (0.0, 0.0), (2.0, 0.0)),
            seg("s", (1.0, -1.0), (1.0, 1.0)),
            seg("p", (3.0, 0.0), (2.0, 2.0)),
        ])
        .unwrap();
        let sigs = BTreeMap::from([('A', a), ('B', b)]);
        let found = detect_inclusions(&sigs, 0.05).unwrap();
        assert_eq!(found, BTreeSet::from([('A', 'B')]));
        assert!(detect_inclusions(&sigs, -1.0).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let s: PairSignature<f32> = pair_signature(
            &Stroke::segment(t("h"), (0.0, 0.0), (4.0, 0.0)),
            &Stroke::segment(t("s"), (1.0, -1.0), (1.0, 3.0)),
        )
        .unwrap();
        assert_eq!(s.0[0], SigValue::Finite(0.25f32));
    }
}
