//! The groups `W(D4) ⊂ O'(D4) ⊂ O(D4) = W(F4)` as explicit rational matrices,
//! the triality reflections `f, g, h`, and the named orbit polynomials.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::laurent::{Exponent, LaurentPoly};
use crate::rational::{int, Rational};

/// Hard cap on closure enumeration. `|W(F4)| = 1152`.
pub const CLOSURE_CAP: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("exponent {exponent} leaves the 1/4 grid under {element}")]
    ExponentOverflow { element: String, exponent: Exponent },
    #[error("matrix {0} is not orthogonal")]
    NotOrthogonal(String),
    #[error("matrix {0} does not preserve the dual lattice of D4")]
    NotLatticePreserving(String),
    #[error("group closure exceeded {CLOSURE_CAP} elements")]
    ClosureCap,
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
}

/// A 4x4 rational matrix stored as an integer matrix over a positive common
/// denominator, kept reduced.
#[derive(Clone, Debug)]
pub struct GroupElement {
    num: [[i64; 4]; 4],
    den: i64,
    label: Option<String>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl GroupElement {
    /// Builds and validates an element from `num / den`.
    pub fn new(num: [[i64; 4]; 4], den: i64, label: Option<String>) -> Result<Self, GroupError> {
        assert!(den > 0, "denominator must be positive");
        let g = Self::reduced(num, den, label);
        let name = g.name();
        if !g.is_orthogonal() {
            return Err(GroupError::NotOrthogonal(name));
        }
        if !g.preserves_d4_dual() {
            return Err(GroupError::NotLatticePreserving(name));
        }
        Ok(g)
    }

    fn reduced(num: [[i64; 4]; 4], den: i64, label: Option<String>) -> Self {
        let mut g = den;
        for row in &num {
            for &x in row {
                g = g.gcd(&x);
            }
        }
        let g = g.max(1);
        GroupElement { num: num.map(|r| r.map(|x| x / g)), den: den / g, label }
    }

    pub fn identity() -> Self {
        let mut num = [[0; 4]; 4];
        for (i, row) in num.iter_mut().enumerate() {
            row[i] = 1;
        }
        GroupElement { num, den: 1, label: Some("id".into()) }
    }

    /// Coordinate permutation: `perm[r]` is the 0-based source coordinate of
    /// output coordinate `r`.
    pub fn permutation(perm: [usize; 4]) -> Self {
        let mut num = [[0; 4]; 4];
        for (r, &c) in perm.iter().enumerate() {
            num[r][c] = 1;
        }
        let label = format!("perm:{}", perm.iter().map(|c| (c + 1).to_string()).collect::<String>());
        GroupElement { num, den: 1, label: Some(label) }
    }

    /// Sign change on the given 0-based coordinates.
    pub fn flip(coords: &[usize]) -> Self {
        let mut g = Self::identity();
        for &c in coords {
            g.num[c][c] = -1;
        }
        let label = format!("flip:{}", coords.iter().map(|c| (c + 1).to_string()).collect::<String>());
        g.label = Some(label);
        g
    }

    /// Reflection `x ↦ x − 2 (x,v)/(v,v) v` in a vector given in halves.
    pub fn reflection(halves: [i64; 4], label: &str) -> Self {
        let vv: i64 = halves.iter().map(|x| x * x).sum();
        let mut num = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                num[i][j] = if i == j { vv } else { 0 } - 2 * halves[i] * halves[j];
            }
        }
        Self::reduced(num, vv, Some(label.into()))
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("{self}"))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i][j].into(), self.den.into())
    }

    pub fn is_orthogonal(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                let s: i64 = (0..4).map(|k| self.num[k][i] * self.num[k][j]).sum();
                s == if i == j { self.den * self.den } else { 0 }
            })
        })
    }

    /// Checks the four coset representatives of `D4^∨ / D4` together with a
    /// basis of `D4`, which suffices for a linear map.
    fn preserves_d4_dual(&self) -> bool {
        let reps = [
            Exponent::from_ints([1, 0, 0, 0]),
            Exponent::from_ints([0, 1, 0, 0]),
            Exponent::from_ints([0, 0, 1, 0]),
            Exponent::from_ints([0, 0, 0, 1]),
            Exponent::from_halves([1, 1, 1, 1]),
            Exponent::from_halves([1, 1, 1, -1]),
        ];
        reps.iter().all(|&e| self.apply(e).map(|x| x.in_d4_dual()).unwrap_or(false))
    }

    pub fn determinant(&self) -> Rational {
        let m: [[Rational; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)));
        det4(&m)
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let num = std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| self.num[i][k] * other.num[k][j]).sum()));
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            _ => None,
        };
        Self::reduced(num, self.den * other.den, label)
    }

    pub fn order(&self) -> usize {
        let id = Self::identity();
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = p.compose(self);
            k += 1;
            assert!(k <= CLOSURE_CAP, "element of unbounded order");
        }
        k
    }

    /// `l ↦ gᵀ l` on a single exponent vector.
    pub fn apply(&self, e: Exponent) -> Result<Exponent, GroupError> {
        let s = e.scaled();
        let mut out = [0i32; 4];
        for (j, slot) in out.iter_mut().enumerate() {
            let v: i64 = (0..4).map(|i| self.num[i][j] * s[i] as i64).sum();
            if v % self.den != 0 {
                return Err(GroupError::ExponentOverflow { element: self.name(), exponent: e });
            }
            *slot = i32::try_from(v / self.den).map_err(|_| GroupError::ExponentOverflow { element: self.name(), exponent: e })?;
        }
        Ok(Exponent(out))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|&x| crate::rational::format(&Rational::new(x.into(), self.den.into()))).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

fn det4(m: &[[Rational; 4]; 4]) -> Rational {
    let mut a = m.clone();
    let mut det = int(1);
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..4 {
            let factor = &a[r][c] / &a[c][c];
            let pivot_row = a[c].clone();
            for (x, p) in a[r].iter_mut().zip(pivot_row).skip(c) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Parses `id`, `f`, `g`, `h`, `perm:ijkl`, `flip:S`, or a `*`-separated product.
impl FromStr for GroupElement {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownElement(text.to_string());
        let words: Vec<&str> = text.split('*').map(str::trim).collect();
        if words.iter().any(|w| w.is_empty()) {
            return Err(unknown());
        }
        let mut acc: Option<GroupElement> = None;
        for w in words {
            let (f, g, h) = triality_reflections();
            let elt = match w {
                "id" => GroupElement::identity(),
                "f" => f,
                "g" => g,
                "h" => h,
                _ => {
                    if let Some(p) = w.strip_prefix("perm:") {
                        let digits = parse_digits(p).ok_or_else(unknown)?;
                        let mut seen = [false; 4];
                        if digits.len() != 4 || digits.iter().any(|&d| std::mem::replace(&mut seen[d], true)) {
                            return Err(unknown());
                        }
                        GroupElement::permutation([digits[0], digits[1], digits[2], digits[3]])
                    } else if let Some(s) = w.strip_prefix("flip:") {
                        let mut digits = parse_digits(s).ok_or_else(unknown)?;
                        digits.sort_unstable();
                        digits.dedup();
                        GroupElement::flip(&digits)
                    } else {
                        return Err(unknown());
                    }
                }
            };
            acc = Some(match acc {
                None => elt,
                Some(a) => a.compose(&elt),
            });
        }
        acc.ok_or_else(unknown)
    }
}

fn parse_digits(s: &str) -> Option<Vec<usize>> {
    let s = s.trim_start_matches('{').trim_end_matches('}');
    s.chars().filter(|c| *c != ',').map(|c| c.to_digit(10).filter(|d| (1..=4).contains(d)).map(|d| d as usize - 1)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    WD4,
    OprimeD4,
    OD4,
}

/// `f` is the reflection in `ε1`; `g` and `h` are the reflections in
/// `½(1,1,1,1)` and `½(1,1,1,−1)`.
pub fn triality_reflections() -> (GroupElement, GroupElement, GroupElement) {
    (GroupElement::reflection([2, 0, 0, 0], "f"), GroupElement::reflection([1, 1, 1, 1], "g"), GroupElement::reflection([1, 1, 1, -1], "h"))
}

pub fn group_generators(group: Group) -> Vec<GroupElement> {
    let mut gens = vec![
        GroupElement::permutation([1, 0, 2, 3]),
        GroupElement::permutation([0, 2, 1, 3]),
        GroupElement::permutation([0, 1, 3, 2]),
        GroupElement::flip(&[0, 1]),
    ];
    if matches!(group, Group::OprimeD4 | Group::OD4) {
        gens.push(GroupElement::flip(&[0]));
    }
    if group == Group::OD4 {
        let (_, g, h) = triality_reflections();
        gens.push(g);
        gens.push(h);
    }
    gens
}

/// All elements of the group generated by `gens`, by breadth-first closure.
pub fn enumerate(gens: &[GroupElement]) -> Result<Vec<GroupElement>, GroupError> {
    let id = GroupElement::identity();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if seen.len() > CLOSURE_CAP {
                    return Err(GroupError::ClosureCap);
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Substitutes `l ↦ gᵀ l` in every exponent.
pub fn lp_act(g: &GroupElement, p: &LaurentPoly) -> Result<LaurentPoly, GroupError> {
    p.map_exponents(|e| g.apply(e))
}

/// Representative of the W(D4)-orbit of `e`: absolute values sorted in
/// decreasing order, with a minus sign on the last entry when the orbit
/// requires one (no zero entry and an odd number of negative entries).
pub fn wd4_canonical(e: Exponent) -> Exponent {
    let s = e.scaled();
    let negatives = s.iter().filter(|&&x| x < 0).count();
    let has_zero = s.contains(&0);
    let mut a = s.map(|x| x.abs());
    a.sort_unstable_by(|x, y| y.cmp(x));
    if !has_zero && negatives % 2 == 1 {
        a[3] = -a[3];
    }
    Exponent(a)
}

/// The named W(D4)-invariant orbit sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitName {
    Q0,
    P1,
    P44p,
    P44m,
    P44,
    Q2,
    P3,
    Q41,
    Q41p,
    Q41m,
    Q42,
    Q4,
    P124,
}

impl OrbitName {
    pub const ALL: [OrbitName; 13] = [
        OrbitName::Q0,
        OrbitName::P1,
        OrbitName::P44p,
        OrbitName::P44m,
        OrbitName::P44,
        OrbitName::Q2,
        OrbitName::P3,
        OrbitName::Q41,
        OrbitName::Q41p,
        OrbitName::Q41m,
        OrbitName::Q42,
        OrbitName::Q4,
        OrbitName::P124,
    ];

    /// Pairwise disjoint orbit sets from which every named sum is assembled.
    const FINE: [OrbitName; 10] = [
        OrbitName::Q0,
        OrbitName::P1,
        OrbitName::P44p,
        OrbitName::P44m,
        OrbitName::Q2,
        OrbitName::P3,
        OrbitName::Q41p,
        OrbitName::Q41m,
        OrbitName::Q42,
        OrbitName::P124,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OrbitName::Q0 => "Q0",
            OrbitName::P1 => "P1",
            OrbitName::P44p => "P44p",
            OrbitName::P44m => "P44m",
            OrbitName::P44 => "P44",
            OrbitName::Q2 => "Q2",
            OrbitName::P3 => "P3",
            OrbitName::Q41 => "Q41",
            OrbitName::Q41p => "Q41p",
            OrbitName::Q41m => "Q41m",
            OrbitName::Q42 => "Q42",
            OrbitName::Q4 => "Q4",
            OrbitName::P124 => "P124",
        }
    }

    fn parts(self) -> &'static [OrbitName] {
        match self {
            OrbitName::P44 => &[OrbitName::P44p, OrbitName::P44m],
            OrbitName::Q41 => &[OrbitName::Q41p, OrbitName::Q41m],
            OrbitName::Q4 => &[OrbitName::Q41p, OrbitName::Q41m, OrbitName::Q42],
            OrbitName::Q0 => &[OrbitName::Q0],
            OrbitName::P1 => &[OrbitName::P1],
            OrbitName::P44p => &[OrbitName::P44p],
            OrbitName::P44m => &[OrbitName::P44m],
            OrbitName::Q2 => &[OrbitName::Q2],
            OrbitName::P3 => &[OrbitName::P3],
            OrbitName::Q41p => &[OrbitName::Q41p],
            OrbitName::Q41m => &[OrbitName::Q41m],
            OrbitName::Q42 => &[OrbitName::Q42],
            OrbitName::P124 => &[OrbitName::P124],
        }
    }

    /// Membership of a scaled exponent in one of the fine orbit sets.
    fn contains_fine(self, e: Exponent) -> bool {
        let s = e.scaled();
        let abs = s.map(|x| x.abs());
        let count = |v: i32| abs.iter().filter(|&&a| a == v).count();
        let plus = s.iter().filter(|&&x| x > 0).count();
        match self {
            OrbitName::Q0 => count(0) == 4,
            OrbitName::P1 => count(4) == 1 && count(0) == 3,
            OrbitName::P44p => count(2) == 4 && plus % 2 == 0,
            OrbitName::P44m => count(2) == 4 && plus % 2 == 1,
            OrbitName::Q2 => count(4) == 2 && count(0) == 2,
            OrbitName::P3 => count(4) == 3 && count(0) == 1,
            OrbitName::Q41p => count(4) == 4 && plus % 2 == 0,
            OrbitName::Q41m => count(4) == 4 && plus % 2 == 1,
            OrbitName::Q42 => count(8) == 1 && count(0) == 3,
            OrbitName::P124 => count(6) == 1 && count(2) == 3,
            _ => unreachable!("composite orbit"),
        }
    }

    fn fine_vectors(self) -> Vec<Exponent> {
        let mut out = Vec::new();
        let range = [-8, -6, -4, -2, 0, 2, 4, 6, 8];
        for &a in &range {
            for &b in &range {
                for &c in &range {
                    for &d in &range {
                        let e = Exponent([a, b, c, d]);
                        if self.contains_fine(e) {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn vectors(self) -> Vec<Exponent> {
        let mut v: Vec<Exponent> = self.parts().iter().flat_map(|p| p.fine_vectors()).collect();
        v.sort_unstable();
        v
    }

    pub fn poly(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.vectors().into_iter().map(|e| (e, int(1))))
    }
}

impl fmt::Display for OrbitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrbitName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        OrbitName::ALL.into_iter().find(|o| o.as_str() == s).ok_or_else(|| format!("unknown orbit `{s}`"))
    }
}

pub fn orbit_poly(name: OrbitName) -> LaurentPoly {
    name.poly()
}

/// `Σ c_i · orbit_i` over named orbits.
pub fn orbit_combination(parts: &[(OrbitName, Rational)]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (name, c) in parts {
        acc = acc.add_scaled(&name.poly(), c);
    }
    acc
}

/// Decomposition of a polynomial into named orbit sums plus a remainder.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitCoordinates {
    pub coords: BTreeMap<OrbitName, Rational>,
    pub remainder: LaurentPoly,
}

impl OrbitCoordinates {
    pub fn get(&self, name: OrbitName) -> Rational {
        self.coords.get(&name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn reconstruct(&self) -> LaurentPoly {
        let parts: Vec<(OrbitName, Rational)> = self.coords.iter().map(|(k, v)| (*k, v.clone())).collect();
        &orbit_combination(&parts) + &self.remainder
    }

    /// Compact listing such as `32*Q0 + 1*P44`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.coords.iter().map(|(k, v)| format!("{}*{}", crate::rational::format(v), k)).collect();
        if !self.remainder.is_zero() {
            parts.push(format!("remainder[{} terms]", self.remainder.len()));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Matches the named orbits exactly. An orbit receives a coordinate only when
/// the coefficient is constant on it; `P44` and `Q41` are reported in place
/// of their halves when the two halves agree.
pub fn orbit_coordinates(p: &LaurentPoly) -> OrbitCoordinates {
    let mut fine: BTreeMap<OrbitName, Rational> = BTreeMap::new();
    let mut claimed: HashSet<Exponent> = HashSet::new();
    for name in OrbitName::FINE {
        let vectors = name.fine_vectors();
        let first = p.coeff(&vectors[0]);
        if first.is_zero() || vectors.iter().any(|v| p.coeff(v) != first) {
            continue;
        }
        claimed.extend(vectors.iter().copied());
        fine.insert(name, first);
    }
    let remainder = LaurentPoly::from_terms(p.terms().iter().filter(|(e, _)| !claimed.contains(e)).cloned());
    for (whole, a, b) in [(OrbitName::P44, OrbitName::P44p, OrbitName::P44m), (OrbitName::Q41, OrbitName::Q41p, OrbitName::Q41m)] {
        if let (Some(x), Some(y)) = (fine.get(&a), fine.get(&b)) {
            if x == y {
                let v = x.clone();
                fine.remove(&a);
                fine.remove(&b);
                fine.insert(whole, v);
            }
        }
    }
    OrbitCoordinates { coords: fine, remainder }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn oc(parts: &[(OrbitName, i64)]) -> LaurentPoly {
        orbit_combination(&parts.iter().map(|(n, c)| (*n, int(*c))).collect::<Vec<_>>())
    }

    #[test]
    fn term_counts() {
        use OrbitName::*;
        let expected = [(Q0, 1), (P1, 8), (P44p, 8), (P44m, 8), (P44, 16), (Q2, 24), (P3, 32), (Q41, 16), (Q42, 8), (Q4, 24), (P124, 64)];
        for (name, n) in expected {
            assert_eq!(name.poly().len(), n, "{name}");
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate(&group_generators(Group::WD4)).unwrap().len(), 192);
        assert_eq!(enumerate(&group_generators(Group::OprimeD4)).unwrap().len(), 384);
        assert_eq!(enumerate(&group_generators(Group::OD4)).unwrap().len(), 1152);
    }

    #[test]
    fn orbits_invariant_under_wd4() {
        for name in OrbitName::ALL {
            let p = name.poly();
            for g in group_generators(Group::WD4) {
                assert_eq!(lp_act(&g, &p).unwrap(), p, "{name} under {}", g.name());
            }
        }
    }

    #[test]
    fn reflections_are_involutions_with_det_minus_one() {
        let (f, g, h) = triality_reflections();
        for r in [f, g, h] {
            assert_eq!(r.order(), 2);
            assert_eq!(r.determinant(), int(-1));
            assert!(r.is_orthogonal());
        }
    }

    #[test]
    fn action_table() {
        use OrbitName::*;
        let (f, g, h) = triality_reflections();
        let table = [
            (&f, [(P1, P1), (P44p, P44m), (P44m, P44p)]),
            (&g, [(P1, P44m), (P44p, P44p), (P44m, P1)]),
            (&h, [(P1, P44p), (P44p, P1), (P44m, P44m)]),
        ];
        for (r, rows) in table {
            for (src, dst) in rows {
                assert_eq!(lp_act(r, &src.poly()).unwrap(), dst.poly(), "{} on {src}", r.name());
            }
        }
    }

    #[test]
    fn product_table() {
        use OrbitName::*;
        assert_eq!(&P44p.poly() * &P44p.poly(), oc(&[(Q0, 8), (Q2, 2), (Q41p, 1)]));
        assert_eq!(&P44m.poly() * &P44m.poly(), oc(&[(Q0, 8), (Q2, 2), (Q41m, 1)]));
        assert_eq!(&P44m.poly() * &P44p.poly(), oc(&[(P1, 4), (P3, 1)]));
        assert_eq!(&P1.poly() * &P1.poly(), oc(&[(Q0, 8), (Q2, 2), (Q42, 1)]));
        let prod = &P1.poly() * &P44.poly();
        assert_eq!(prod, oc(&[(P44, 4), (P124, 1)]));
        assert_eq!(prod.coefficient_sum(), int(128));
    }

    #[test]
    fn exact_division_inverts_table() {
        use OrbitName::*;
        let prod = oc(&[(P1, 4), (P3, 1)]);
        assert_eq!(prod.exact_div(&P44p.poly()).unwrap(), P44m.poly());
        assert!(P1.poly().exact_div(&Q2.poly()).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        use OrbitName::*;
        let p = oc(&[(Q0, -320), (P1, 112), (Q2, -32), (P3, 4), (Q41, 4)]);
        let c = orbit_coordinates(&p);
        assert_eq!(c.get(Q0), int(-320));
        assert_eq!(c.get(Q41), int(4));
        assert!(c.remainder.is_zero());
        assert_eq!(c.reconstruct(), p);

        let w = oc(&[(P44p, 1), (P44m, -1)]);
        let c = orbit_coordinates(&w);
        assert_eq!(c.get(P44p), int(1));
        assert_eq!(c.get(P44m), int(-1));
        assert_eq!(c.get(P44), int(0));

        assert_eq!(orbit_coordinates(&LaurentPoly::zero()), OrbitCoordinates::default());
    }

    #[test]
    fn non_constant_orbit_goes_to_remainder() {
        let p = LaurentPoly::from_terms([(Exponent::from_ints([1, 0, 0, 0]), rat(1, 2))]);
        let c = orbit_coordinates(&p);
        assert!(c.coords.is_empty());
        assert_eq!(c.remainder, p);
    }

    #[test]
    fn parse_elements() {
        let f: GroupElement = "f".parse().unwrap();
        assert_eq!(f, GroupElement::flip(&[0]));
        let p: GroupElement = "perm:2134".parse().unwrap();
        assert_eq!(p, GroupElement::permutation([1, 0, 2, 3]));
        let s: GroupElement = "flip:{1,2}".parse().unwrap();
        assert_eq!(s, GroupElement::flip(&[0, 1]));
        let fg: GroupElement = "f*g".parse().unwrap();
        assert_eq!(fg.order(), 3);
        for bad in ["", "k", "perm:1123", "perm:123", "flip:5", "f**g"] {
            assert!(bad.parse::<GroupElement>().is_err(), "{bad}");
        }
    }

    #[test]
    fn non_lattice_matrix_rejected() {
        let mut num = [[0; 4]; 4];
        num[0][1] = 1;
        num[1][0] = 1;
        num[2][2] = 1;
        num[3][3] = 1;
        assert!(GroupElement::new(num, 1, None).is_ok());
        let r = GroupElement::reflection([1, 1, 0, 0], "r");
        assert!(GroupElement::new(r.num, r.den, None).is_ok());
        let r = GroupElement::reflection([2, 1, 0, 0], "bad");
        assert!(matches!(
            GroupElement::new(r.num, r.den, None),
            Err(GroupError::NotLatticePreserving(_)) | Err(GroupError::NotOrthogonal(_))
        ));
    }

    #[test]
    fn canonical_representatives_classify_orbits() {
        let elements = enumerate(&group_generators(Group::WD4)).unwrap();
        let samples = [Exponent::from_halves([3, -1, 1, 1]), Exponent::from_halves([1, -1, 1, 1]), Exponent::from_ints([0, -2, 1, 0])];
        for e in samples {
            let c = wd4_canonical(e);
            for g in &elements {
                assert_eq!(wd4_canonical(g.apply(e).unwrap()), c);
            }
        }
        assert_ne!(wd4_canonical(Exponent::from_halves([1, 1, 1, 1])), wd4_canonical(Exponent::from_halves([1, 1, 1, -1])));
    }

    #[test]
    fn overflow_off_grid() {
        let (_, g, _) = triality_reflections();
        let e = Exponent([1, 0, 0, 0]);
        assert!(matches!(g.apply(e), Err(GroupError::ExponentOverflow { .. })));
    }
}
