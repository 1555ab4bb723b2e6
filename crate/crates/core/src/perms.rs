//! Permutations of `0..m` in one-line notation.
//!
//! Cycle notation is accepted and produced for I/O only; the canonical form
//! is always the image array.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("label {label} out of range for degree {degree}")]
    OutOfRange { label: usize, degree: usize },
    #[error("label {0} appears more than once")]
    RepeatedLabel(usize),
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: &'static str },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("fixed point {fixed} out of range for degree {degree}")]
    FixedPointOutOfRange { fixed: usize, degree: usize },
    #[error("exponent bound must be at least 1, got {0}")]
    BadExponent(usize),
}

/// A bijection of `{0, .., m-1}`; `images[i]` is the image of `i`.
///
/// The derived ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m {
                return Err(PermError::NotBijective(m));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijective(m));
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2,4,3)(5,6)`.
    ///
    /// Labels inside a cycle are separated by commas. A cycle written without
    /// any comma, e.g. `(1243)`, is read one decimal digit per label, which is
    /// only unambiguous for degrees up to 10. `()` alone is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        if text.trim() == "()" {
            return Ok(Permutation { images });
        }
        let mut used = vec![false; degree];
        let bytes: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();

        let mut i = 0;
        while i < bytes.len() {
            let (pos, c) = bytes[i];
            if c != '(' {
                return Err(PermError::Malformed {
                    pos,
                    msg: "expected '('",
                });
            }
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].1 != ')' {
                if bytes[end].1 == '(' {
                    return Err(PermError::Malformed {
                        pos: bytes[end].0,
                        msg: "nested '('",
                    });
                }
                end += 1;
            }
            if end == bytes.len() {
                return Err(PermError::Malformed {
                    pos,
                    msg: "unclosed cycle",
                });
            }
            let body: String = bytes[start..end].iter().map(|&(_, c)| c).collect();
            let labels = parse_cycle_body(&body, bytes[start.min(end)].0)?;
            for &l in &labels {
                if l >= degree {
                    return Err(PermError::OutOfRange { label: l, degree });
                }
                if std::mem::replace(&mut used[l], true) {
                    return Err(PermError::RepeatedLabel(l));
                }
            }
            for (k, &l) in labels.iter().enumerate() {
                images[l] = labels[(k + 1) % labels.len()];
            }
            i = end + 1;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: maps `x` to `self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        // reduce by the order so large exponents stay cheap
        e %= self.order() as u64;
        let mut images: Vec<usize> = (0..self.degree()).collect();
        for _ in 0..e {
            images = images.iter().map(|&x| base.images[x]).collect();
        }
        Permutation { images }
    }

    /// Cycles of length at least two, each starting at its least point,
    /// listed by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// Cycle notation with comma-separated labels; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }
}

fn parse_cycle_body(body: &str, pos: usize) -> Result<Vec<usize>, PermError> {
    if body.is_empty() {
        return Err(PermError::Malformed {
            pos,
            msg: "empty cycle",
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| PermError::Malformed {
            pos,
            msg: "expected decimal label",
        })
    };
    if body.contains(',') {
        body.split(',').map(parse).collect()
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or(PermError::Malformed {
                        pos,
                        msg: "expected decimal label",
                    })
            })
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// All permutations `p` of `0..degree` with `p(fixed_point) = fixed_point`
/// and `p^n = id`, in lexicographic order of one-line notation.
///
/// Each result is the image of a generator under exactly one homomorphism
/// from the cyclic group of order `n` into the point stabilizer.
pub fn enumerate_stabilizer_torsion(
    degree: usize,
    fixed_point: usize,
    n: usize,
) -> Result<Vec<Permutation>, PermError> {
    if fixed_point >= degree {
        return Err(PermError::FixedPointOutOfRange {
            fixed: fixed_point,
            degree,
        });
    }
    if n < 1 {
        return Err(PermError::BadExponent(n));
    }
    let lengths: Vec<usize> = (1..=degree).filter(|d| n.is_multiple_of(*d)).collect();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut assigned = vec![false; degree];
    assigned[fixed_point] = true;
    let mut out = Vec::new();
    build_cycles(
        &lengths,
        &mut images,
        &mut assigned,
        &mut Vec::new(),
        &mut out,
    );
    out.sort_unstable();
    Ok(out)
}

// Every cycle is rooted at the least unassigned point, so each permutation is
// produced exactly once.
fn build_cycles(
    lengths: &[usize],
    images: &mut Vec<usize>,
    assigned: &mut Vec<bool>,
    cycle: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    let Some(root) = assigned.iter().position(|&a| !a) else {
        out.push(Permutation {
            images: images.clone(),
        });
        return;
    };
    let free = assigned.iter().filter(|&&a| !a).count();
    for &len in lengths {
        if len > free {
            break;
        }
        assigned[root] = true;
        cycle.clear();
        cycle.push(root);
        extend_cycle(len, lengths, images, assigned, cycle, out);
        assigned[root] = false;
    }
}

fn extend_cycle(
    len: usize,
    lengths: &[usize],
    images: &mut Vec<usize>,
    assigned: &mut Vec<bool>,
    cycle: &mut Vec<usize>,
    out: &mut Vec<Permutation>,
) {
    if cycle.len() == len {
        for (k, &x) in cycle.iter().enumerate() {
            images[x] = cycle[(k + 1) % len];
        }
        let saved = cycle.clone();
        build_cycles(lengths, images, assigned, &mut Vec::new(), out);
        for &x in &saved {
            images[x] = x;
        }
        *cycle = saved;
        return;
    }
    for x in 0..assigned.len() {
        if assigned[x] {
            continue;
        }
        assigned[x] = true;
        cycle.push(x);
        extend_cycle(len, lengths, images, assigned, cycle, out);
        cycle.pop();
        assigned[x] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, m: usize) -> Permutation {
        Permutation::parse_cycles(s, m).unwrap()
    }

    #[test]
    fn parses_digit_cycles() {
        assert_eq!(p("(1243)", 5).images(), &[0, 2, 4, 1, 3]);
        assert_eq!(p("(14)(23)", 5).images(), &[0, 4, 3, 2, 1]);
        assert!(p("", 4).is_identity());
        assert_eq!(p("(1,2,4,3)", 5), p("(1243)", 5));
        assert_eq!(p(" ( 1 , 10 ) ", 11).apply(10), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse_cycles("(15)", 5),
            Err(PermError::OutOfRange {
                label: 5,
                degree: 5
            })
        );
        assert_eq!(
            Permutation::parse_cycles("(12)(23)", 5),
            Err(PermError::RepeatedLabel(2))
        );
        assert!(matches!(
            Permutation::parse_cycles("(12", 5),
            Err(PermError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("12", 5),
            Err(PermError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(12)()", 5),
            Err(PermError::Malformed { .. })
        ));
        assert!(Permutation::parse_cycles(" () ", 5).unwrap().is_identity());
    }

    #[test]
    fn compose_and_power() {
        let c = p("(1243)", 5);
        // 1->2->4, 2->4->3, 4->3->1, 3->1->2
        assert_eq!(c.compose(&c).unwrap(), p("(14)(23)", 5));
        assert_eq!(c.power(2), p("(14)(23)", 5));
        assert_eq!(c.power(-1), c.inverse());
        assert_eq!(c.power(4), Permutation::identity(5));
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
        assert_eq!(
            c.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch(5, 4))
        );
    }

    #[test]
    fn order_and_cycle_type() {
        assert_eq!(p("(1234)", 5).order(), 4);
        assert_eq!(p("(12)(34)", 5).cycle_type(), vec![2, 2, 1]);
        assert_eq!(p("(12)(345)", 6).order(), 6);
        assert_eq!(Permutation::identity(3).order(), 1);
    }

    #[test]
    fn cycle_string_round_trip() {
        let c = p("(1,3)(2,4,5)", 6);
        assert_eq!(c.to_cycle_string(), "(1,3)(2,4,5)");
        assert_eq!(p(&c.to_cycle_string(), 6), c);
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
    }

    #[test]
    fn torsion_counts() {
        assert_eq!(enumerate_stabilizer_torsion(5, 0, 4).unwrap().len(), 16);
        assert_eq!(enumerate_stabilizer_torsion(9, 0, 3).unwrap().len(), 1233);
        assert_eq!(enumerate_stabilizer_torsion(5, 0, 2).unwrap().len(), 10);
        let only_id = enumerate_stabilizer_torsion(6, 0, 1).unwrap();
        assert_eq!(only_id, vec![Permutation::identity(6)]);
        assert!(enumerate_stabilizer_torsion(5, 5, 2).is_err());
        assert!(enumerate_stabilizer_torsion(5, 0, 0).is_err());
    }

    #[test]
    fn torsion_respects_other_fixed_point() {
        let all = enumerate_stabilizer_torsion(5, 3, 2).unwrap();
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|q| q.apply(3) == 3));
    }
}
