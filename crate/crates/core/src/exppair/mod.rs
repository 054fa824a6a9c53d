//! Exponent-pair calculus: the A and B processes, process words, and the
//! error-term bookkeeping used to balance long and short sums.

mod balance;
mod table;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::{parse_rational, OrderedScalar};

pub use balance::{balance, long_sum_terms, short_sum_terms, theta_formula, AlphaRange, BalanceResult, ErrorTerm, ShortModel};
pub use table::{appendix_table, render_csv, render_text, Applicability, TableRow};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairError {
    #[error("({k}, {l}) is not an exponent pair: need 0 <= k <= 1/2 <= l <= 1")]
    Invalid { k: String, l: String },
    #[error("cannot parse {0:?} as a pair `k,l`")]
    Parse(String),
    #[error("bad process word {word:?}: {msg}")]
    Word { word: String, msg: String },
    #[error("term lists must be nonempty")]
    NoTerms,
    #[error("the maximum of the error terms is unbounded below or has no largest minimiser on this range")]
    Unbounded,
    #[error("empty range: lower end exceeds upper end")]
    EmptyRange,
}

/// `(k, l)` with `0 <= k <= 1/2 <= l <= 1`; `eps_carry` marks pairs known only up to `+ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentPair<T> {
    pub k: T,
    pub l: T,
    pub eps_carry: bool,
}

fn half<T: OrderedScalar>() -> T {
    T::one() / T::from_int(2)
}

impl<T: OrderedScalar> ExponentPair<T> {
    pub fn new(k: T, l: T, eps_carry: bool) -> Result<Self, PairError> {
        let h = half::<T>();
        if k < T::zero() || k > h || l < h || l > T::one() {
            return Err(PairError::Invalid { k: k.to_literal(), l: l.to_literal() });
        }
        Ok(Self { k, l, eps_carry })
    }

    /// The trivial pair `(0, 1)`.
    pub fn trivial() -> Self {
        Self { k: T::zero(), l: T::one(), eps_carry: false }
    }

    /// Weyl differencing: `A(k, l) = (k/(2k+2), (k+l+1)/(2k+2))`.
    pub fn a(&self) -> Self {
        let two = T::from_int(2);
        let denom = two.clone() * self.k.clone() + two;
        Self {
            k: self.k.clone() / denom.clone(),
            l: (self.k.clone() + self.l.clone() + T::one()) / denom,
            eps_carry: self.eps_carry,
        }
    }

    /// Poisson summation: `B(k, l) = (l - 1/2, k + 1/2)`.
    pub fn b(&self) -> Result<Self, PairError> {
        let h = half::<T>();
        Self::new(self.l.clone() - h.clone(), self.k.clone() + h, self.eps_carry)
    }

    /// Applies a process word such as `BA^2` (or `BA2`), rightmost letter first.
    pub fn apply_word(&self, word: &str) -> Result<Self, PairError> {
        let mut p = self.clone();
        for step in parse_word(word)?.into_iter().rev() {
            p = match step {
                'A' => p.a(),
                _ => p.b()?,
            };
        }
        Ok(p)
    }
}

pub fn pair_a<T: OrderedScalar>(p: &ExponentPair<T>) -> ExponentPair<T> {
    p.a()
}

pub fn pair_b<T: OrderedScalar>(p: &ExponentPair<T>) -> Result<ExponentPair<T>, PairError> {
    p.b()
}

pub fn pair_apply_word<T: OrderedScalar>(word: &str, p: &ExponentPair<T>) -> Result<ExponentPair<T>, PairError> {
    p.apply_word(word)
}

/// Expands `BA^2`, `BA2`, `A^3B` into a letter sequence in written order.
fn parse_word(word: &str) -> Result<Vec<char>, PairError> {
    let err = |msg: &str| PairError::Word { word: word.to_string(), msg: msg.to_string() };
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].to_ascii_uppercase();
        if c != 'A' && c != 'B' {
            return Err(err(&format!("unexpected {:?}", chars[i])));
        }
        i += 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let reps = if start == i {
            if chars.get(i - 1) == Some(&'^') {
                return Err(err("missing exponent after '^'"));
            }
            1
        } else {
            chars[start..i].iter().collect::<String>().parse::<usize>().map_err(|_| err("exponent too large"))?
        };
        if reps > 64 {
            return Err(err("exponent too large"));
        }
        out.extend(std::iter::repeat_n(c, reps));
    }
    Ok(out)
}

/// Pairs from the literature that hold only up to `+ε`.
pub fn known_eps_pairs() -> Vec<(&'static str, ExponentPair<BigRational>)> {
    let r = |s: &str| parse_rational(s).expect("literal");
    vec![
        ("Huxley", ExponentPair { k: r("32/205"), l: r("269/410"), eps_carry: true }),
        ("Bombieri-Iwaniec", ExponentPair { k: r("9/56"), l: r("37/56"), eps_carry: true }),
        ("Lindelof", ExponentPair { k: r("0"), l: r("1/2"), eps_carry: true }),
    ]
}

pub fn huxley_pair() -> ExponentPair<BigRational> {
    known_eps_pairs().remove(0).1
}

pub fn lindelof_pair() -> ExponentPair<BigRational> {
    known_eps_pairs().remove(2).1
}

impl ExponentPair<BigRational> {
    /// Parses `k,l`, optionally suffixed with `+eps`. Known `+ε` pairs are flagged automatically.
    pub fn parse(text: &str) -> Result<Self, PairError> {
        let trimmed = text.trim();
        let (body, explicit_eps) = match trimmed.strip_suffix("+eps").or_else(|| trimmed.strip_suffix("+ε")) {
            Some(b) => (b.trim(), true),
            None => (trimmed, false),
        };
        let body = body.trim_start_matches('(').trim_end_matches(')');
        let (k, l) = body.split_once(',').ok_or_else(|| PairError::Parse(text.to_string()))?;
        let k = parse_rational(k).ok_or_else(|| PairError::Parse(text.to_string()))?;
        let l = parse_rational(l).ok_or_else(|| PairError::Parse(text.to_string()))?;
        let known = known_eps_pairs().iter().any(|(_, p)| p.k == k && p.l == l);
        Self::new(k, l, explicit_eps || known)
    }
}

impl<T: OrderedScalar> fmt::Display for ExponentPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.k.to_literal(), self.l.to_literal())?;
        if self.eps_carry {
            write!(f, " (+eps)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    fn pair(k: (i64, i64), l: (i64, i64)) -> ExponentPair<BigRational> {
        ExponentPair::new(ratio(k.0, k.1), ratio(l.0, l.1), false).unwrap()
    }

    #[test]
    fn a_process_examples() {
        assert_eq!(pair((0, 1), (1, 1)).a(), pair((0, 1), (1, 1)));
        assert_eq!(pair((1, 2), (1, 2)).a(), pair((1, 6), (2, 3)));
        let hux = huxley_pair().a();
        assert_eq!((hux.k, hux.l), (ratio(16, 237), ratio(743, 948)));
    }

    #[test]
    fn b_process_examples() {
        assert_eq!(pair((0, 1), (1, 1)).b().unwrap(), pair((1, 2), (1, 2)));
        assert_eq!(pair((1, 6), (2, 3)).b().unwrap(), pair((1, 6), (2, 3)));
        assert_eq!(pair((8, 253), (1755, 2024)).b().unwrap(), pair((743, 2024), (269, 506)));
    }

    #[test]
    fn words_apply_right_to_left() {
        let out = huxley_pair().apply_word("BA^2").unwrap();
        assert_eq!((out.k.clone(), out.l.clone()), (ratio(743, 2024), ratio(269, 506)));
        assert!(out.eps_carry);
        assert_eq!(huxley_pair().apply_word("BA2").unwrap(), out);
        let trivial = ExponentPair::<BigRational>::trivial();
        assert_eq!(trivial.apply_word("").unwrap(), trivial);
        assert_eq!(trivial.apply_word("AB").unwrap(), pair((1, 6), (2, 3)));
        assert_ne!(trivial.apply_word("BA").unwrap(), trivial.apply_word("AB").unwrap());
    }

    #[test]
    fn bad_words_and_pairs() {
        assert!(parse_word("BC").is_err());
        assert!(parse_word("A^").is_err());
        assert!(ExponentPair::new(ratio(3, 4), ratio(1, 2), false).is_err());
        assert!(ExponentPair::new(ratio(0, 1), ratio(1, 4), false).is_err());
        assert_eq!(pair((0, 1), (1, 2)).b().unwrap(), pair((0, 1), (1, 2)));
    }

    #[test]
    fn parse_and_display() {
        let p = ExponentPair::parse("32/205,269/410").unwrap();
        assert!(p.eps_carry);
        assert_eq!(p.apply_word("BA2").unwrap().to_string(), "743/2024,269/506 (+eps)");
        let q = ExponentPair::parse("1/2, 1/2").unwrap();
        assert!(!q.eps_carry);
        assert_eq!(q.to_string(), "1/2,1/2");
        assert!(ExponentPair::parse("1/6,2/3 +eps").unwrap().eps_carry);
        assert!(ExponentPair::parse("1/6").is_err());
    }

    #[test]
    fn float_pairs_follow_the_same_rules() {
        let p = ExponentPair::new(0.5f64, 0.5, false).unwrap();
        let a = p.a();
        assert!((a.k - 1.0 / 6.0).abs() < 1e-15 && (a.l - 2.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn a_preserves_validity(kn in 0i64..=50, ln in 50i64..=100) {
            let p = pair((kn, 100), (ln, 100));
            let a = p.a();
            prop_assert!(ExponentPair::new(a.k, a.l, false).is_ok());
        }

        #[test]
        fn b_is_an_involution(kn in 0i64..=50, ln in 50i64..=100) {
            let p = pair((kn, 100), (ln, 100));
            prop_assert_eq!(p.b().unwrap().b().unwrap(), p);
        }
    }
}
