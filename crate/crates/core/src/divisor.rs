//! Places, divisors and the conorm/different arithmetic behind code lifting.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("InvalidPlaceDegree: place degree must be at least 1")]
    InvalidPlaceDegree,
    #[error("UnknownFiber: no fiber data for {0}")]
    UnknownFiber(Place),
    #[error("NonIntegralGenus: Riemann-Hurwitz numerator {0} is odd")]
    NonIntegralGenus(i64),
    #[error("OddDifferentExponent: d = {exponent} at {place}; {diagnosis}")]
    OddDifferentExponent {
        place: Place,
        exponent: u32,
        diagnosis: ParityDiagnosis,
    },
    #[error("NonSplitPlace: {0} does not split completely")]
    NonSplitPlace(Place),
    #[error("SupportOverlap: {0} lies in both supports")]
    SupportOverlap(Place),
    #[error("FundamentalEquality: fiber over {place} has Σe·f = {sum}, expected {degree}")]
    FundamentalEquality { place: Place, sum: u32, degree: u32 },
    #[error("DegreeIdentity: lifted deg G = {lifted}, expected {expected}")]
    DegreeIdentity { lifted: i64, expected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlaceKind {
    Infinite,
    Affine { coords: Vec<u32> },
    Labeled { label: String },
}

/// A place on a named curve. The derived order (curve, then infinite before
/// affine, affine by coordinate codes) is the canonical place order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Place {
    pub curve: String,
    #[serde(flatten)]
    pub kind: PlaceKind,
    pub degree: u32,
}

impl Place {
    pub fn infinite(curve: &str) -> Place {
        Place {
            curve: curve.to_string(),
            kind: PlaceKind::Infinite,
            degree: 1,
        }
    }

    pub fn affine(curve: &str, coords: Vec<u32>) -> Place {
        Place {
            curve: curve.to_string(),
            kind: PlaceKind::Affine { coords },
            degree: 1,
        }
    }

    pub fn labeled(curve: &str, label: &str, degree: u32) -> Result<Place, DivisorError> {
        if degree == 0 {
            return Err(DivisorError::InvalidPlaceDegree);
        }
        Ok(Place {
            curve: curve.to_string(),
            kind: PlaceKind::Labeled {
                label: label.to_string(),
            },
            degree,
        })
    }

    pub fn coords(&self) -> Option<&[u32]> {
        match &self.kind {
            PlaceKind::Affine { coords } => Some(coords),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.kind == PlaceKind::Infinite
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinite => write!(f, "{}:inf", self.curve),
            PlaceKind::Affine { coords } => write!(f, "{}:{:?}", self.curve, coords),
            PlaceKind::Labeled { label } => {
                write!(f, "{}:{}(deg {})", self.curve, label, self.degree)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place: Place,
    pub coeff: i64,
}

/// Finite formal sum of places; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<DivisorTerm>", into = "Vec<DivisorTerm>")]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl From<Vec<DivisorTerm>> for Divisor {
    fn from(terms: Vec<DivisorTerm>) -> Self {
        let mut d = Divisor::zero();
        for t in terms {
            d.add_term(t.place, t.coeff);
        }
        d
    }
}

impl From<Divisor> for Vec<DivisorTerm> {
    fn from(d: Divisor) -> Self {
        d.coeffs
            .into_iter()
            .map(|(place, coeff)| DivisorTerm { place, coeff })
            .collect()
    }
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(place: Place, coeff: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(place, coeff);
        d
    }

    /// Sum of the given places, each with coefficient 1.
    pub fn sum_of<I: IntoIterator<Item = Place>>(places: I) -> Divisor {
        let mut d = Divisor::zero();
        for p in places {
            d.add_term(p, 1);
        }
        d
    }

    pub fn add_term(&mut self, place: Place, coeff: i64) {
        let entry = self.coeffs.entry(place.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &c) in &other.coeffs {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor {
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, &c)| (p.clone(), c * k))
                .collect(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, &c)| c * p.degree as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First place common to both supports, if any.
    pub fn overlap(&self, other: &Divisor) -> Option<&Place> {
        self.coeffs.keys().find(|p| other.coeffs.contains_key(*p))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| format!("{c}·{p}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// How the top field is generated over the base; feeds the parity classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    /// `y^q + μy = f(x)`, including Artin–Schreier (`q = p`).
    ArtinSchreier,
    /// `y^n = f(x)` with `p ∤ n`.
    Kummer,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub place: Place,
    pub e: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub base: Place,
    pub over: Vec<FiberEntry>,
}

impl Fiber {
    pub fn is_ramified(&self) -> bool {
        self.over.iter().any(|t| t.e > 1)
    }
}

/// Ramification data of a finite extension `M/F`.
///
/// Lists every ramified base place and every base place the model enumerates
/// (its rational affine fibers). Places in `non_split` are known not to split
/// completely and carry no fiber data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub base: String,
    pub top: String,
    pub degree: u32,
    pub characteristic: u32,
    pub kind: ExtensionKind,
    pub fibers: Vec<Fiber>,
    pub non_split: Vec<Place>,
    pub base_genus: i64,
    pub top_genus: i64,
}

/// Which of the standard sufficient conditions for even different exponents hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityDiagnosis {
    pub artin_schreier_odd_char: bool,
    pub tame_odd_degree: bool,
    pub weakly_ramified: bool,
    pub single_totally_ramified: bool,
    /// `d(Q|P)` forced by the genus formula when exactly one place ramifies totally.
    pub forced_exponent: Option<i64>,
}

impl fmt::Display for ParityDiagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "holds" } else { "fails" };
        write!(
            f,
            "(i) Artin-Schreier in odd characteristic {}, (ii) tame of odd degree {}, (iii) weakly ramified {}, (iv) single totally ramified place {}",
            flag(self.artin_schreier_odd_char),
            flag(self.tame_odd_degree),
            flag(self.weakly_ramified),
            flag(self.single_totally_ramified)
        )?;
        if let Some(d) = self.forced_exponent {
            write!(f, " (genus formula forces d = {d})")?;
        }
        Ok(())
    }
}

impl ExtensionDescriptor {
    /// Checks `Σ e·deg(Q)/deg(P) = [M:F]` on every listed fiber.
    pub fn validate(&self) -> Result<(), DivisorError> {
        for fib in &self.fibers {
            let sum: u32 = fib
                .over
                .iter()
                .map(|t| t.e * t.place.degree / fib.base.degree)
                .sum();
            if sum != self.degree {
                return Err(DivisorError::FundamentalEquality {
                    place: fib.base.clone(),
                    sum,
                    degree: self.degree,
                });
            }
        }
        Ok(())
    }

    pub fn fiber(&self, base: &Place) -> Option<&Fiber> {
        self.fibers.iter().find(|f| &f.base == base)
    }

    pub fn is_non_split(&self, base: &Place) -> bool {
        self.non_split.contains(base)
    }

    /// True when the fiber over `base` consists of `[M:F]` unramified places.
    pub fn splits_completely(&self, base: &Place) -> bool {
        match self.fiber(base) {
            Some(f) => f.over.len() as u32 == self.degree && f.over.iter().all(|t| t.e == 1),
            None => false,
        }
    }

    pub fn ramified_fibers(&self) -> impl Iterator<Item = &Fiber> {
        self.fibers.iter().filter(|f| f.is_ramified())
    }

    pub fn diagnose(&self) -> ParityDiagnosis {
        let p = self.characteristic;
        let ramified: Vec<&FiberEntry> = self
            .ramified_fibers()
            .flat_map(|f| f.over.iter())
            .filter(|t| t.e > 1)
            .collect();
        let tame = ramified.iter().all(|t| t.e % p != 0 && t.d == t.e - 1);
        let weak = ramified
            .iter()
            .all(|t| t.e % p == 0 && t.d == 2 * (t.e - 1));
        let rfib: Vec<&Fiber> = self.ramified_fibers().collect();
        let single = rfib.len() == 1
            && rfib[0].base.degree == 1
            && rfib[0].over.len() == 1
            && rfib[0].over[0].e == self.degree;
        let forced = single
            .then(|| (2 * self.top_genus - 2) - self.degree as i64 * (2 * self.base_genus - 2));
        ParityDiagnosis {
            artin_schreier_odd_char: self.kind == ExtensionKind::ArtinSchreier && p % 2 == 1,
            tame_odd_degree: tame && self.degree % 2 == 1,
            weakly_ramified: !ramified.is_empty() && weak,
            single_totally_ramified: single,
            forced_exponent: forced,
        }
    }
}

/// `Con(D) = Σ n_P · Σ_{Q|P} e(Q|P)·Q`.
pub fn conorm(ext: &ExtensionDescriptor, d: &Divisor) -> Result<Divisor, DivisorError> {
    let mut out = Divisor::zero();
    for (p, c) in d.terms() {
        let fib = ext
            .fiber(p)
            .ok_or_else(|| DivisorError::UnknownFiber(p.clone()))?;
        for t in &fib.over {
            out.add_term(t.place.clone(), c * t.e as i64);
        }
    }
    Ok(out)
}

/// `Diff(M/F) = Σ d(Q|P)·Q` over the ramified fibers.
pub fn different(ext: &ExtensionDescriptor) -> Divisor {
    let mut out = Divisor::zero();
    for fib in &ext.fibers {
        for t in &fib.over {
            if t.d > 0 {
                out.add_term(t.place.clone(), t.d as i64);
            }
        }
    }
    out
}

/// Genus of the top field: `([M:F](2g−2) + deg Diff + 2)/2`.
pub fn riemann_hurwitz(ext: &ExtensionDescriptor) -> Result<i64, DivisorError> {
    let num = ext.degree as i64 * (2 * ext.base_genus - 2) + different(ext).degree() + 2;
    if num % 2 != 0 {
        return Err(DivisorError::NonIntegralGenus(num));
    }
    Ok(num / 2)
}

/// `deg D` even and `deg G = ½(deg D + 2g − 2)`.
pub fn isodual_degree_check(d: &Divisor, g: &Divisor, genus: i64) -> bool {
    let n = d.degree();
    n % 2 == 0 && 2 * g.degree() == n + 2 * genus - 2
}

/// `½·Diff`, refusing when any different exponent is odd.
pub fn half_different(ext: &ExtensionDescriptor) -> Result<Divisor, DivisorError> {
    let diff = different(ext);
    for (p, c) in diff.terms() {
        if c % 2 != 0 {
            return Err(DivisorError::OddDifferentExponent {
                place: p.clone(),
                exponent: c as u32,
                diagnosis: ext.diagnose(),
            });
        }
    }
    Ok(Divisor {
        coeffs: diff.coeffs.into_iter().map(|(p, c)| (p, c / 2)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedDivisors {
    pub d: Divisor,
    pub g: Divisor,
    /// Whether the input pair met the iso-dual degree condition (and so the
    /// lifted pair was checked against it too).
    pub isodual_degree: bool,
}

/// `D̃ = Con(D)`, `G̃ = Con(G) + ½Diff`.
pub fn lift_divisors(
    ext: &ExtensionDescriptor,
    d: &Divisor,
    g: &Divisor,
) -> Result<LiftedDivisors, DivisorError> {
    let half = half_different(ext)?;
    if let Some(p) = d.overlap(g) {
        return Err(DivisorError::SupportOverlap(p.clone()));
    }
    for p in d.support() {
        if !ext.splits_completely(p) {
            return Err(DivisorError::NonSplitPlace(p.clone()));
        }
    }
    let dl = conorm(ext, d)?;
    let gl = conorm(ext, g)?.add(&half);
    if let Some(p) = dl.overlap(&gl) {
        return Err(DivisorError::SupportOverlap(p.clone()));
    }
    let isodual = isodual_degree_check(d, g, ext.base_genus);
    if isodual && !isodual_degree_check(&dl, &gl, ext.top_genus) {
        let expected = (dl.degree() + 2 * ext.top_genus - 2) / 2;
        return Err(DivisorError::DegreeIdentity {
            lifted: gl.degree(),
            expected,
        });
    }
    Ok(LiftedDivisors {
        d: dl,
        g: gl,
        isodual_degree: isodual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split_ext(n_places: u32, degree: u32) -> ExtensionDescriptor {
        let fibers = (0..n_places)
            .map(|a| Fiber {
                base: Place::affine("F", vec![a]),
                over: (0..degree)
                    .map(|b| FiberEntry {
                        place: Place::affine("M", vec![a, b]),
                        e: 1,
                        d: 0,
                    })
                    .collect(),
            })
            .collect();
        ExtensionDescriptor {
            base: "F".into(),
            top: "M".into(),
            degree,
            characteristic: 2,
            kind: ExtensionKind::Other,
            fibers,
            non_split: vec![],
            base_genus: 0,
            top_genus: 1 - degree as i64,
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = Place::infinite("F");
        let mut d = Divisor::single(p.clone(), 3);
        d.add_term(p, -3);
        assert!(d.is_zero());
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn labeled_place_degree() {
        assert!(Place::labeled("K", "S_x", 0).is_err());
        let s = Place::labeled("K", "P_{x^2+x+1}", 2).unwrap();
        assert_eq!(Divisor::single(s, 1).degree(), 2);
    }

    #[test]
    fn divisor_json_is_a_term_list() {
        let d = Divisor::single(Place::affine("F", vec![3]), 2);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"[{"place":{"curve":"F","kind":"affine","coords":[3],"degree":1},"coeff":2}]"#
        );
        let back: Divisor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn trivial_extension() {
        let ext = split_ext(3, 1);
        assert!(different(&ext).is_zero());
        assert_eq!(riemann_hurwitz(&ext).unwrap(), 0);
        let l = lift_divisors(&ext, &Divisor::zero(), &Divisor::zero()).unwrap();
        assert!(l.d.is_zero() && l.g.is_zero());
        assert!(conorm(&ext, &Divisor::zero()).unwrap().is_zero());
    }

    #[test]
    fn lifting_errors() {
        let mut ext = split_ext(2, 2);
        let p0 = Place::affine("F", vec![0]);
        let d = Divisor::single(p0.clone(), 1);
        assert!(matches!(
            lift_divisors(&ext, &d, &d),
            Err(DivisorError::SupportOverlap(_))
        ));
        let unknown = Divisor::single(Place::affine("F", vec![7]), 1);
        assert!(matches!(
            lift_divisors(&ext, &unknown, &Divisor::zero()),
            Err(DivisorError::NonSplitPlace(_))
        ));
        assert!(matches!(
            conorm(&ext, &unknown),
            Err(DivisorError::UnknownFiber(_))
        ));
        ext.fibers[0].over = vec![FiberEntry {
            place: Place::affine("M", vec![0, 0]),
            e: 2,
            d: 1,
        }];
        let err = lift_divisors(&ext, &Divisor::zero(), &Divisor::zero()).unwrap_err();
        assert!(matches!(
            err,
            DivisorError::OddDifferentExponent { exponent: 1, .. }
        ));
    }

    #[test]
    fn isodual_degree_parity() {
        let d = Divisor::sum_of((0..5).map(|a| Place::affine("F", vec![a])));
        for k in -3..6 {
            assert!(!isodual_degree_check(
                &d,
                &Divisor::single(Place::infinite("F"), k),
                0
            ));
        }
    }
}
