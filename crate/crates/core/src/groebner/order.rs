use std::cmp::Ordering;
use std::fmt;

use crate::poly::Monomial;

/// Sort key of a monomial under a term order. Keys compare
/// lexicographically and are additive: `key(a*b) = key(a) + key(b)`.
pub(crate) type OrderKey = Box<[i64]>;

/// Admissible term orders, all with `z1 > z2 > ... > zn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `k` variables: grevlex on the first
    /// block, ties broken by grevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    pub(crate) fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exponents();
        match *self {
            MonomialOrder::Lex => e.iter().map(|&x| x as i64).collect(),
            MonomialOrder::Grevlex => grevlex_key(e).collect(),
            MonomialOrder::Elimination(k) => {
                let k = k.min(e.len());
                grevlex_key(&e[..k]).chain(grevlex_key(&e[k..])).collect()
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

fn grevlex_key(e: &[u32]) -> impl Iterator<Item = i64> + '_ {
    let degree: i64 = e.iter().map(|&x| x as i64).sum();
    std::iter::once(degree).chain(e.iter().rev().map(|&x| -(x as i64)))
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(format!(
                "unknown monomial order `{s}` (expected grevlex or lex)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_key_agrees_with_direct_comparison() {
        let all: Vec<Monomial> = (0..3)
            .flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| m(&[a, b, c]))))
            .collect();
        for a in &all {
            for b in &all {
                assert_eq!(MonomialOrder::Grevlex.cmp(a, b), a.grevlex_cmp(b));
            }
        }
    }

    #[test]
    fn elimination_puts_first_block_first() {
        let ord = MonomialOrder::Elimination(1);
        // z1 beats any power of z2, z3.
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 7])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_and_multiplicativity() {
        let ord = MonomialOrder::Lex;
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        for ord in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Elimination(2),
        ] {
            let (a, b, c) = (m(&[1, 2, 0]), m(&[0, 1, 3]), m(&[2, 0, 1]));
            assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            assert_eq!(ord.cmp(&Monomial::one(3), &c), Ordering::Less);
        }
    }
}
