//! Permutations of `{0..n-1}` stored as image tables.
//!
//! Composition is a left action: `p.compose(&q)` maps `v` to `p(q(v))`.
//! Cycle notation at the text boundary is 1-based, e.g. `(1 2)(3 4)`;
//! the image-table form `img: 1 0 3 2` is 0-based.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        a + 1
                    )));
                }
                if used[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice",
                        a + 1
                    )));
                }
                used[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self^k`, with negative exponents allowed.
    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `self ∘ other⁻¹` without materialising the inverse.
    pub(crate) fn div_right(&self, other: &Perm) -> Perm {
        let mut out = vec![0u32; self.degree()];
        for (v, &w) in other.images.iter().enumerate() {
            out[w as usize] = self.images[v];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i as u32 == x)
    }

    pub fn is_derangement(&self) -> bool {
        !self.has_fixed_point()
    }

    /// Two permutations intersect when they agree on some point, i.e. when
    /// `self ∘ other⁻¹` fixes a point.
    #[inline]
    pub fn intersects(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .any(|(a, b)| a == b)
    }

    /// All cycles including fixed points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths (fixed points count as 1-cycles), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn sign(&self) -> i8 {
        let parity = (self.degree() - self.cycles().len()) % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    /// True iff all cycles, fixed points included, have the same length.
    pub fn is_semiregular_elem(&self) -> bool {
        let t = self.cycle_type();
        t.windows(2).all(|w| w[0] == w[1])
    }

    /// Parses either 1-based cycle notation or a 0-based `img:` table.
    ///
    /// Cycle notation needs the degree; a table carries its own and must
    /// agree with `degree` when one is given.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Perm> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("img:") {
            let images = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad image entry {tok:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let p = Perm::from_images(images)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(Error::DegreeMismatch {
                        expected: d,
                        found: p.degree(),
                    });
                }
            }
            return Ok(p);
        }
        let degree = degree.ok_or_else(|| {
            Error::InvalidPermutation("cycle notation requires a known degree".into())
        })?;
        let cycles = parse_cycle_list(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(degree, &refs)
    }

    /// 1-based cycle notation without 1-cycles; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// `img: ...` form, 0-based.
    pub fn to_image_string(&self) -> String {
        let pts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        format!("img: {}", pts.join(" "))
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(Error::InvalidPermutation(format!(
                "expected '(' at {rest:?}"
            )));
        };
        let close = after_open
            .find(')')
            .ok_or_else(|| Error::InvalidPermutation("unclosed cycle".into()))?;
        let body = &after_open[..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let pt: usize = tok
                .parse()
                .map_err(|_| Error::InvalidPermutation(format!("bad point {tok:?}")))?;
            if pt == 0 {
                return Err(Error::InvalidPermutation(
                    "cycle points are 1-based".into(),
                ));
            }
            cycle.push(pt - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = &after_open[close + 1..];
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, s: &str) -> Perm {
        Perm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn compose_examples() {
        let p = cyc(3, "(1 2 3)");
        let q = cyc(3, "(1 2)");
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images().collect::<Vec<_>>(), vec![2, 1, 0]);
        assert_eq!(r.to_cycle_string(), "(1 3)");
        assert_eq!(p.compose(&Perm::identity(3)).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = Perm::identity(3).compose(&Perm::identity(4)).unwrap_err();
        assert!(err.to_string().starts_with("degree mismatch"));
    }

    #[test]
    fn inverse_examples() {
        assert!(Perm::identity(5).inverse().is_identity());
        assert_eq!(cyc(3, "(1 2 3)").inverse(), cyc(3, "(1 3 2)"));
        assert_eq!(cyc(3, "(1 2)").inverse(), cyc(3, "(1 2)"));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(Perm::identity(4).fixed_points(), vec![0, 1, 2, 3]);
        assert_eq!(cyc(3, "(1 2)").fixed_points(), vec![2]);
        let d = cyc(4, "(1 2)(3 4)");
        assert!(d.fixed_points().is_empty());
        assert!(d.is_derangement());
        assert!(!Perm::identity(4).is_derangement());
    }

    #[test]
    fn cycle_type_order_sign() {
        let p = cyc(6, "(1 2 3 4)(5 6)");
        assert_eq!(p.cycle_type(), vec![4, 2]);
        assert_eq!(p.order(), 4);
        // a 4-cycle and a transposition are both odd
        assert_eq!(p.sign(), 1);
        assert_eq!(cyc(6, "(1 2 3 4)").sign(), -1);
        assert_eq!(Perm::identity(7).sign(), 1);
    }

    #[test]
    fn semiregular_examples() {
        assert!(Perm::identity(5).is_semiregular_elem());
        assert!(!cyc(6, "(1 2 3 4)(5 6)").is_semiregular_elem());
        assert!(cyc(6, "(1 2 3)(4 5 6)").is_semiregular_elem());
    }

    #[test]
    fn printing_conventions() {
        assert_eq!(Perm::identity(4).to_cycle_string(), "()");
        assert_eq!(cyc(5, "(3 1)(5 4)").to_cycle_string(), "(1 3)(4 5)");
        assert_eq!(cyc(4, "(1 2)(3 4)").to_image_string(), "img: 1 0 3 2");
        assert_eq!(
            Perm::parse("img: 1 0 3 2", None).unwrap(),
            cyc(4, "(1 2)(3 4)")
        );
        assert_eq!(cyc(4, "(1,2,3)"), cyc(4, "(1 2 3)"));
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse("(1 2", Some(3)).is_err());
        assert!(Perm::parse("(1 4)", Some(3)).is_err());
        assert!(Perm::parse("(1 2)(2 3)", Some(3)).is_err());
        assert!(Perm::parse("(0 1)", Some(3)).is_err());
        assert!(Perm::parse("img: 0 0 1", None).is_err());
        assert!(Perm::parse("img: 1 0", Some(3)).is_err());
        assert!(Perm::parse("(1 2)", None).is_err());
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Perm> {
        (1..=max_n).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Perm::from_images(v).unwrap())
        })
    }

    fn arb_pair(max_n: usize) -> impl Strategy<Value = (Perm, Perm)> {
        (1..=max_n).prop_flat_map(|n| {
            let s = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (s.clone(), s).prop_map(|(a, b)| {
                (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(12)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        #[test]
        fn sign_is_multiplicative((p, q) in arb_pair(12)) {
            let pq = p.compose(&q).unwrap();
            prop_assert_eq!(pq.sign(), p.sign() * q.sign());
            prop_assert_eq!(p.div_right(&q), p.compose(&q.inverse()).unwrap());
            prop_assert_eq!(p.intersects(&q), !p.div_right(&q).is_derangement());
        }

        #[test]
        fn cycle_and_image_strings_round_trip(p in arb_perm(14)) {
            prop_assert_eq!(Perm::parse(&p.to_cycle_string(), Some(p.degree())).unwrap(), p.clone());
            prop_assert_eq!(Perm::parse(&p.to_image_string(), None).unwrap(), p);
        }

        #[test]
        fn cycle_type_consistent(p in arb_perm(14)) {
            let t = p.cycle_type();
            prop_assert_eq!(t.iter().sum::<usize>(), p.degree());
            prop_assert!(p.pow(p.order() as i64).is_identity());
            prop_assert_eq!(p.fixed_points().is_empty(), p.is_derangement());
        }

        #[test]
        fn prime_order_semiregular_powers_are_derangements(p in arb_perm(12)) {
            let ord = p.order();
            let prime = ord > 1 && (2..ord).all(|d| ord % d != 0);
            if p.is_semiregular_elem() && prime {
                for k in 1..ord {
                    prop_assert!(p.pow(k as i64).is_derangement());
                }
            }
        }
    }
}
