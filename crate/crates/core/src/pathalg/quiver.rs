use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactnum::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("empty path")]
    Empty,
}

/// Vertex of the quiver.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Vertex {
    One,
    Two,
}

/// Arrows of the doubled quiver.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Arrow {
    A,
    AStar,
    X,
    XStar,
    Y,
    YStar,
}

impl Arrow {
    pub const ALL: [Arrow; 6] = [Arrow::A, Arrow::AStar, Arrow::X, Arrow::XStar, Arrow::Y, Arrow::YStar];

    pub fn source(self) -> Vertex {
        match self {
            Arrow::A | Arrow::AStar | Arrow::XStar | Arrow::Y => Vertex::One,
            Arrow::X | Arrow::YStar => Vertex::Two,
        }
    }

    pub fn target(self) -> Vertex {
        match self {
            Arrow::A | Arrow::AStar | Arrow::X | Arrow::YStar => Vertex::One,
            Arrow::XStar | Arrow::Y => Vertex::Two,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Arrow::A => "a",
            Arrow::AStar => "a*",
            Arrow::X => "x",
            Arrow::XStar => "x*",
            Arrow::Y => "y",
            Arrow::YStar => "y*",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for Arrow {
    type Err = PathError;
    fn from_str(s: &str) -> Result<Self, PathError> {
        Arrow::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| PathError::UnknownArrow(s.to_string()))
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A path: trivial at a vertex, or a nonempty composable word `r1 r2 … rk`
/// with `rk` traversed first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Path {
    Trivial(Vertex),
    Word(Vec<Arrow>),
}

impl Path {
    pub fn e1() -> Path {
        Path::Trivial(Vertex::One)
    }

    pub fn e2() -> Path {
        Path::Trivial(Vertex::Two)
    }

    pub fn arrow(a: Arrow) -> Path {
        Path::Word(vec![a])
    }

    /// Checked construction from a written word.
    pub fn word(arrows: Vec<Arrow>) -> Result<Path, PathError> {
        if arrows.is_empty() {
            return Err(PathError::Empty);
        }
        for pair in arrows.windows(2) {
            if pair[0].source() != pair[1].target() {
                return Err(PathError::NotComposable(format!("{}{}", pair[0], pair[1])));
            }
        }
        Ok(Path::Word(arrows))
    }

    pub fn source(&self) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Word(w) => w.last().expect("nonempty word").source(),
        }
    }

    pub fn target(&self) -> Vertex {
        match self {
            Path::Trivial(v) => *v,
            Path::Word(w) => w.first().expect("nonempty word").target(),
        }
    }

    pub fn arrows(&self) -> &[Arrow] {
        match self {
            Path::Trivial(_) => &[],
            Path::Word(w) => w,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows().len()
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    /// `self · other`, defined when `other` ends where `self` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source() != other.target() {
            return None;
        }
        Some(match (self, other) {
            (Path::Trivial(_), q) => q.clone(),
            (p, Path::Trivial(_)) => p.clone(),
            (Path::Word(p), Path::Word(q)) => Path::Word(p.iter().chain(q).copied().collect()),
        })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Trivial(Vertex::One) => f.write_str("e1"),
            Path::Trivial(Vertex::Two) => f.write_str("e2"),
            Path::Word(w) => {
                for (i, a) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str("·")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}

/// Element of the path algebra: a finite combination of paths.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NcPoly<R> {
    terms: BTreeMap<Path, R>,
}

impl<R: Ring> Default for NcPoly<R> {
    fn default() -> Self {
        NcPoly::zero()
    }
}

impl<R: Ring> NcPoly<R> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path) -> Self {
        NcPoly::term(R::one(), p)
    }

    pub fn term(c: R, p: Path) -> Self {
        let mut out = NcPoly::zero();
        out.add_term(p, c);
        out
    }

    pub fn arrow(a: Arrow) -> Self {
        NcPoly::from_path(Path::arrow(a))
    }

    pub fn e1() -> Self {
        NcPoly::from_path(Path::e1())
    }

    pub fn e2() -> Self {
        NcPoly::from_path(Path::e2())
    }

    /// The unit `e1 + e2`.
    pub fn one() -> Self {
        &NcPoly::e1() + &NcPoly::e2()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (R, Path)>) -> Self {
        let mut out = NcPoly::zero();
        for (c, p) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, p: Path, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&p) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(p, sum);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> R {
        self.terms.get(p).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        NcPoly::from_terms(self.terms.iter().map(|(p, x)| (x.clone() * c.clone(), p.clone())))
    }

    /// Common `(source, target)` of all terms; `None` when mixed or zero.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.terms.keys().map(|p| (p.source(), p.target()));
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.endpoints().is_some()
    }

    /// Corner `e_t · self · e_s`.
    pub fn corner(&self, target: Vertex, source: Vertex) -> Self {
        NcPoly::from_terms(
            self.terms
                .iter()
                .filter(|(p, _)| p.source() == source && p.target() == target)
                .map(|(p, c)| (c.clone(), p.clone())),
        )
    }

    /// Substitute each arrow by an element of another path algebra; trivial
    /// paths map to trivial paths.
    pub fn substitute(&self, image: &impl Fn(Arrow) -> NcPoly<R>) -> Self {
        let mut out = NcPoly::zero();
        for (p, c) in &self.terms {
            let mut acc = match p {
                Path::Trivial(v) => NcPoly::from_path(Path::Trivial(*v)),
                Path::Word(w) => {
                    let mut it = w.iter();
                    let mut acc = image(*it.next().expect("nonempty word"));
                    for a in it {
                        acc = &acc * &image(*a);
                    }
                    acc
                }
            };
            acc = acc.scale(c);
            out = &out + &acc;
        }
        out
    }
}

/// Bilinear extension of path composition.
pub fn path_mul<R: Ring>(p: &Path, q: &Path) -> NcPoly<R> {
    match p.compose(q) {
        Some(pq) => NcPoly::from_path(pq),
        None => NcPoly::zero(),
    }
}

impl<'a, R: Ring> std::ops::Add<&'a NcPoly<R>> for &'a NcPoly<R> {
    type Output = NcPoly<R>;
    fn add(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl<'a, R: Ring> std::ops::Sub<&'a NcPoly<R>> for &'a NcPoly<R> {
    type Output = NcPoly<R>;
    fn sub(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }
}

impl<'a, R: Ring> std::ops::Mul<&'a NcPoly<R>> for &'a NcPoly<R> {
    type Output = NcPoly<R>;
    fn mul(self, rhs: &NcPoly<R>) -> NcPoly<R> {
        let mut out = NcPoly::zero();
        for (p, c) in &self.terms {
            for (q, d) in &rhs.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, c.clone() * d.clone());
                }
            }
        }
        out
    }
}

impl<'a, R: Ring> std::ops::Neg for &'a NcPoly<R> {
    type Output = NcPoly<R>;
    fn neg(self) -> NcPoly<R> {
        NcPoly::from_terms(self.terms.iter().map(|(p, c)| (-c.clone(), p.clone())))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for NcPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){p}")?;
        }
        Ok(())
    }
}

/// The element `[a,a*] + [x,x*] + [y,y*]`.
pub fn symplectic_c<R: Ring>() -> NcPoly<R> {
    let pairs = [(Arrow::A, Arrow::AStar), (Arrow::X, Arrow::XStar), (Arrow::Y, Arrow::YStar)];
    let mut out = NcPoly::zero();
    for (r, s) in pairs {
        let (r, s) = (NcPoly::arrow(r), NcPoly::arrow(s));
        out = &out + &(&(&r * &s) - &(&s * &r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;
    use num_traits::One;
    use proptest::prelude::*;

    type P = NcPoly<Scalar>;

    fn w(names: &[&str]) -> Path {
        Path::word(names.iter().map(|n| n.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn path_mul_examples() {
        let xxs: P = path_mul(&Path::arrow(Arrow::X), &Path::arrow(Arrow::XStar));
        assert_eq!(xxs, P::from_path(w(&["x", "x*"])));
        assert_eq!(xxs.endpoints(), Some((Vertex::One, Vertex::One)));
        assert!(path_mul::<Scalar>(&Path::arrow(Arrow::A), &Path::arrow(Arrow::XStar)).is_zero());
        assert_eq!(path_mul::<Scalar>(&Path::e1(), &Path::arrow(Arrow::A)), P::arrow(Arrow::A));
        assert!(path_mul::<Scalar>(&Path::e2(), &Path::arrow(Arrow::A)).is_zero());
    }

    #[test]
    fn ncp_arith_examples() {
        let lhs = &(&P::arrow(Arrow::X) + &P::arrow(Arrow::YStar)) * &P::arrow(Arrow::Y);
        let rhs = &P::from_path(w(&["x", "y"])) + &P::from_path(w(&["y*", "y"]));
        assert_eq!(lhs, rhs);
        let u = &P::arrow(Arrow::A) + &P::arrow(Arrow::X);
        assert!(u.scale(&Scalar::from(0)).is_zero());
    }

    // e1·c·e1 keeps aa* − a*a + xx* − y*y; the x*x and yy* terms sit at vertex 2.
    #[test]
    fn corners_of_c() {
        let c = symplectic_c::<Scalar>();
        let e1ce1 = &(&P::e1() * &c) * &P::e1();
        let expected = P::from_terms([
            (Scalar::one(), w(&["a", "a*"])),
            (-Scalar::one(), w(&["a*", "a"])),
            (Scalar::one(), w(&["x", "x*"])),
            (-Scalar::one(), w(&["y*", "y"])),
        ]);
        assert_eq!(e1ce1, expected);
        let e2ce2 = &(&P::e2() * &c) * &P::e2();
        let expected = P::from_terms([(Scalar::one(), w(&["y", "y*"])), (-Scalar::one(), w(&["x*", "x"]))]);
        assert_eq!(e2ce2, expected);
        assert_eq!(&e1ce1 + &e2ce2, c);
    }

    fn random_path() -> impl Strategy<Value = Path> {
        (0usize..6, 0usize..5, prop::collection::vec(0usize..6, 0..5)).prop_map(|(start, len, picks)| {
            // walk backwards from a starting arrow, choosing arrows that end where the word starts
            let mut arrows = vec![Arrow::ALL[start]];
            for (i, pick) in picks.into_iter().enumerate().take(len) {
                let need = arrows.last().unwrap().source();
                let options: Vec<Arrow> = Arrow::ALL.into_iter().filter(|a| a.target() == need).collect();
                arrows.push(options[(pick + i) % options.len()]);
            }
            Path::word(arrows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn path_mul_associative(p in random_path(), q in random_path(), r in random_path()) {
            let (p, q, r) = (P::from_path(p), P::from_path(q), P::from_path(r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn unit_is_two_sided(p in random_path()) {
            let p = P::from_path(p);
            prop_assert_eq!(&P::one() * &p, p.clone());
            prop_assert_eq!(&p * &P::one(), p);
        }
    }
}
