//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Products follow the right-action convention used throughout the crate:
//! `a.then(&b)` applies `a` first, so `x^(ab) = (x^a)^b`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Hard cap on the degree of any permutation built by the toolkit.
pub const MAX_DEGREE: usize = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its (0-based) image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree: n,
                cap: MAX_DEGREE,
            });
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(Error::RepeatedPoint(x));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds the permutation of `degree` points given by disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if seen[p] {
                    return Err(Error::RepeatedPoint(p));
                }
                seen[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint cycle notation such as `"(1 2 3)(4 5)"`.
    ///
    /// Points may be separated by whitespace and/or commas; `"()"` and the
    /// empty string denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: MAX_DEGREE,
            });
        }
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::MalformedSyntax(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = stripped.find(')') else {
                return Err(Error::MalformedSyntax("unclosed cycle".into()));
            };
            let body = &stripped[..close];
            if body.contains('(') {
                return Err(Error::MalformedSyntax("nested '('".into()));
            }
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::MalformedSyntax(format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = stripped[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles).map_err(|e| match e {
            Error::RepeatedPoint(p) => Error::RepeatedPoint(p + 1),
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn to_images(&self) -> Vec<usize> {
        self.images().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Product applying `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^-1 * self * x`, mapping `p^x` to `(p^self)^x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[x.images[p] as usize] = x.images[q as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other) == other.then(self)
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&p| self.apply(p) != p).collect()
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 == x)
            .count()
    }

    /// Image of a tuple of points.
    pub fn apply_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&p| self.apply(p)).collect()
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
