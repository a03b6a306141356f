use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Zero-blocks separated by single ones: `head` zeros, a one, then for each
/// entry of `rest` that many zeros and a one, then `repeat` zeros and a one
/// forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blocks {
    pub head: BigUint,
    pub rest: Vec<BigUint>,
    pub repeat: BigUint,
}

/// Rule for every bit past the prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Zeros,
    Ones,
    Periodic(Vec<bool>),
    Blocks(Blocks),
}

/// An infinite binary sequence: a finite prefix followed by a tail rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSeq {
    prefix: Vec<bool>,
    tail: Tail,
}

// Block sequences with less total explicit length than this are stored as
// prefix plus periodic tail in canonical form.
const BLOCK_EXPAND_LIMIT: u64 = 4096;

impl BitSeq {
    pub fn new(prefix: Vec<bool>, tail: Tail) -> Self {
        if let Tail::Periodic(c) = &tail {
            assert!(!c.is_empty(), "periodic tail needs a nonempty cycle");
        }
        BitSeq { prefix, tail }.canonical()
    }

    pub fn zeros() -> Self {
        BitSeq { prefix: Vec::new(), tail: Tail::Zeros }
    }

    pub fn ones() -> Self {
        BitSeq { prefix: Vec::new(), tail: Tail::Ones }
    }

    /// `prefix` followed by zeros.
    pub fn finite(prefix: &[bool]) -> Self {
        BitSeq::new(prefix.to_vec(), Tail::Zeros)
    }

    pub fn periodic(prefix: &[bool], cycle: &[bool]) -> Self {
        BitSeq::new(prefix.to_vec(), Tail::Periodic(cycle.to_vec()))
    }

    /// `L1` zeros, a one, `L2` zeros, a one, ..., and the last block repeated
    /// forever.
    pub fn blocks(prefix: &[bool], lengths: Vec<BigUint>) -> Self {
        assert!(!lengths.is_empty(), "at least one block length");
        let repeat = lengths.last().unwrap().clone();
        let mut it = lengths.into_iter();
        let head = it.next().unwrap();
        BitSeq::new(prefix.to_vec(), Tail::Blocks(Blocks { head, rest: it.collect(), repeat }))
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The unique representative used for equality and memoization.
    fn canonical(self) -> BitSeq {
        let BitSeq { mut prefix, tail } = self;
        let cycle = match tail {
            Tail::Zeros => vec![false],
            Tail::Ones => vec![true],
            Tail::Periodic(c) => c,
            Tail::Blocks(b) => {
                let b = absorb_prefix(&prefix, b);
                match expand_small_blocks(&b) {
                    Some((p, c)) => {
                        prefix = p;
                        c
                    }
                    None => return BitSeq { prefix: Vec::new(), tail: Tail::Blocks(b) },
                }
            }
        };
        let mut cycle = primitive_cycle(cycle);
        while let (Some(&p), Some(&c)) = (prefix.last(), cycle.last()) {
            if p != c {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        let tail = match cycle.as_slice() {
            [false] => Tail::Zeros,
            [true] => Tail::Ones,
            _ => Tail::Periodic(cycle),
        };
        BitSeq { prefix, tail }
    }

    /// Bit at index `n`.
    pub fn bit(&self, n: u64) -> bool {
        if let Some(&b) = self.prefix.get(n as usize) {
            return b;
        }
        let k = n - self.prefix.len() as u64;
        match &self.tail {
            Tail::Zeros => false,
            Tail::Ones => true,
            Tail::Periodic(c) => c[(k % c.len() as u64) as usize],
            Tail::Blocks(b) => b.shift_by(&BigUint::from(k)).first_bit(),
        }
    }

    pub fn first_bit(&self) -> bool {
        self.bit(0)
    }

    /// The left shift.
    pub fn shift(&self) -> BitSeq {
        self.shift_by(&BigUint::one())
    }

    /// `sigma^n`, computed structurally, so `n` may be astronomically large.
    pub fn shift_by(&self, n: &BigUint) -> BitSeq {
        let plen = BigUint::from(self.prefix.len());
        if n < &plen {
            let k = n.to_usize().unwrap();
            return BitSeq::new(self.prefix[k..].to_vec(), self.tail.clone());
        }
        let k = n - plen;
        let tail = match &self.tail {
            Tail::Zeros | Tail::Ones => self.tail.clone(),
            Tail::Periodic(c) => {
                let r = (&k % BigUint::from(c.len())).to_usize().unwrap();
                let mut c = c.clone();
                c.rotate_left(r);
                Tail::Periodic(c)
            }
            Tail::Blocks(b) => Tail::Blocks(b.shift_by(&k)),
        };
        BitSeq::new(Vec::new(), tail)
    }

    /// Length of the leading run of equal bits, or a positive lower bound of
    /// it; `None` when the run is infinite.
    fn leading_run(&self) -> Option<BigUint> {
        if let Some(&b0) = self.prefix.first() {
            let n = self.prefix.iter().take_while(|&&b| b == b0).count();
            return Some(BigUint::from(n));
        }
        match &self.tail {
            Tail::Zeros | Tail::Ones => None,
            Tail::Periodic(c) => Some(BigUint::from(c.iter().take_while(|&&b| b == c[0]).count())),
            Tail::Blocks(b) => Some(if b.head.is_zero() { BigUint::one() } else { b.head.clone() }),
        }
    }

    /// `(p, q)`: the sequence is periodic with period `q` from index `p` on.
    pub fn preperiod_and_period(&self) -> (BigUint, BigUint) {
        let plen = BigUint::from(self.prefix.len());
        match &self.tail {
            Tail::Zeros | Tail::Ones => (plen, BigUint::one()),
            Tail::Periodic(c) => (plen, BigUint::from(c.len())),
            Tail::Blocks(b) => {
                let explicit: BigUint = &b.head + b.rest.iter().sum::<BigUint>() + BigUint::from(b.rest.len() + 1);
                (plen + explicit, &b.repeat + 1u32)
            }
        }
    }

    /// Position of the first one, or `None` if every bit is zero.
    pub fn first_one(&self) -> Option<BigUint> {
        if let Some(i) = self.prefix.iter().position(|&b| b) {
            return Some(BigUint::from(i));
        }
        let plen = BigUint::from(self.prefix.len());
        match &self.tail {
            Tail::Zeros => None,
            Tail::Ones => Some(plen),
            Tail::Periodic(c) => Some(plen + c.iter().position(|&b| b).expect("canonical cycle has a one")),
            Tail::Blocks(b) => Some(plen + &b.head),
        }
    }
}

impl Blocks {
    fn first_bit(&self) -> bool {
        self.head.is_zero()
    }

    fn shift_by(&self, n: &BigUint) -> Blocks {
        let mut b = self.clone();
        let mut n = n.clone();
        loop {
            if n <= b.head {
                b.head -= &n;
                return b;
            }
            n -= &b.head + 1u32;
            if b.rest.is_empty() {
                // inside the periodic part: reduce modulo the period
                n %= &b.repeat + 1u32;
                b.head = &b.repeat - &n;
                return b;
            } else {
                b.head = b.rest.remove(0);
            }
        }
    }
}

fn absorb_prefix(prefix: &[bool], mut b: Blocks) -> Blocks {
    for &bit in prefix.iter().rev() {
        if bit {
            let h = std::mem::take(&mut b.head);
            b.rest.insert(0, h);
        } else {
            b.head += 1u32;
        }
    }
    while b.rest.last() == Some(&b.repeat) {
        b.rest.pop();
    }
    b
}

fn expand_small_blocks(b: &Blocks) -> Option<(Vec<bool>, Vec<bool>)> {
    let (pre, _) = BitSeq { prefix: Vec::new(), tail: Tail::Blocks(b.clone()) }.preperiod_and_period();
    let total = pre + &b.repeat;
    if total > BigUint::from(BLOCK_EXPAND_LIMIT) {
        return None;
    }
    let mut prefix = Vec::new();
    for len in std::iter::once(&b.head).chain(&b.rest) {
        prefix.extend(std::iter::repeat_n(false, len.to_usize().unwrap()));
        prefix.push(true);
    }
    let mut cycle = vec![false; b.repeat.to_usize().unwrap()];
    cycle.push(true);
    Some((prefix, cycle))
}

fn primitive_cycle(c: Vec<bool>) -> Vec<bool> {
    let n = c.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| c[i] == c[i - d]) {
            return c[..d].to_vec();
        }
    }
    c
}

/// Result of a first-difference search below a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FirstDiff {
    At(BigUint),
    NoneBelow(BigUint),
}

/// Least `m < horizon` with `s_m != t_m`.
///
/// Works run by run, so horizons and block lengths may be astronomically
/// large as long as the sequences differ within few runs.
pub fn first_difference(s: &BitSeq, t: &BitSeq, horizon: impl Into<BigUint>) -> FirstDiff {
    let horizon = horizon.into();
    if s == t {
        return FirstDiff::NoneBelow(horizon);
    }
    let mut pos = BigUint::zero();
    let (mut a, mut b) = (s.clone(), t.clone());
    while pos < horizon {
        if a.first_bit() != b.first_bit() {
            return FirstDiff::At(pos);
        }
        if a == b {
            break;
        }
        let step = match (a.leading_run(), b.leading_run()) {
            (None, None) => break,
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.min(y),
        };
        pos += &step;
        a = a.shift_by(&step);
        b = b.shift_by(&step);
    }
    FirstDiff::NoneBelow(horizon)
}

/// `M(s, t)` exactly: `None` when the sequences are equal.
pub fn first_difference_exact(s: &BitSeq, t: &BitSeq) -> Option<BigUint> {
    let (p1, q1) = s.preperiod_and_period();
    let (p2, q2) = t.preperiod_and_period();
    // agreement on max(p1, p2) + lcm(q1, q2) bits implies equality
    let bound = p1.max(p2) + q1.lcm(&q2) + 1u32;
    match first_difference(s, t, bound) {
        FirstDiff::At(m) => Some(m),
        FirstDiff::NoneBelow(_) => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseBitSeqError {
    #[error("empty sequence literal")]
    Empty,
    #[error("invalid character {ch:?} at position {pos}")]
    BadChar { pos: usize, ch: char },
    #[error("malformed tail at position {pos}: {message}")]
    BadTail { pos: usize, message: String },
}

fn parse_bits(s: &str, offset: usize) -> Result<Vec<bool>, ParseBitSeqError> {
    s.chars()
        .enumerate()
        .map(|(i, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(ParseBitSeqError::BadChar { pos: offset + i, ch }),
        })
        .collect()
}

impl FromStr for BitSeq {
    type Err = ParseBitSeqError;

    /// Literals: `PREFIX` (zeros follow), `PREFIX:(CYCLE)`, `PREFIX:0...`,
    /// `PREFIX:1...` (also with `…`), and `PREFIX:[L1,L2,...]` for blocks.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let src = src.trim();
        if src.is_empty() {
            return Err(ParseBitSeqError::Empty);
        }
        let (pre, tail) = match src.find(':') {
            Some(i) => (&src[..i], Some((&src[i + 1..], i + 1))),
            None => (src, None),
        };
        let prefix = parse_bits(pre, 0)?;
        let Some((tail, at)) = tail else {
            return Ok(BitSeq::new(prefix, Tail::Zeros));
        };
        let bad = |message: &str| ParseBitSeqError::BadTail { pos: at, message: message.to_string() };
        let tail = if let Some(inner) = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let cycle = parse_bits(inner, at + 1)?;
            if cycle.is_empty() {
                return Err(bad("empty cycle"));
            }
            Tail::Periodic(cycle)
        } else if let Some(inner) = tail.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let lengths: Result<Vec<BigUint>, _> = inner.split(',').map(|x| x.trim().parse::<BigUint>()).collect();
            let lengths = lengths.map_err(|_| bad("block lengths must be nonnegative integers"))?;
            return Ok(BitSeq::blocks(&prefix, lengths));
        } else {
            match tail.trim_end_matches("...").trim_end_matches('…') {
                "0" => Tail::Zeros,
                "1" => Tail::Ones,
                _ => return Err(bad("expected (CYCLE), [L1,...], 0... or 1...")),
            }
        };
        Ok(BitSeq::new(prefix, tail))
    }
}

fn bits_str(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", bits_str(&self.prefix))?;
        match &self.tail {
            Tail::Zeros => write!(f, "0..."),
            Tail::Ones => write!(f, "1..."),
            Tail::Periodic(c) => write!(f, "({})", bits_str(c)),
            Tail::Blocks(b) => {
                let all: Vec<String> =
                    std::iter::once(&b.head).chain(&b.rest).chain(std::iter::once(&b.repeat)).map(|x| x.to_string()).collect();
                write!(f, "[{}]", all.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn literals_and_canonical_forms() {
        assert_eq!(seq("0:(0)"), BitSeq::zeros());
        assert_eq!(seq("0000"), BitSeq::zeros());
        assert_eq!(seq("1:(0)"), seq("1"));
        assert_eq!(seq("0110:(10)"), seq("011:(01)"));
        assert_eq!(seq("01:(0101)"), seq(":(01)"));
        assert_eq!(seq("1:1..."), BitSeq::ones());
        assert_eq!(seq("1:1…"), BitSeq::ones());
        assert_eq!(seq(":[2,0,3]"), seq("0011:(0001)"));
        assert!(matches!("01x".parse::<BitSeq>(), Err(ParseBitSeqError::BadChar { pos: 2, .. })));
        assert!(matches!("01:(2)".parse::<BitSeq>(), Err(ParseBitSeqError::BadChar { pos: 4, .. })));
        assert!(matches!("01:xyz".parse::<BitSeq>(), Err(ParseBitSeqError::BadTail { pos: 3, .. })));
        assert_eq!(seq("0110:(10)").to_string(), "01:(10)");
    }

    #[test]
    fn shifts() {
        let s = seq("0110:(10)");
        let bits: Vec<bool> = (0..10).map(|n| s.bit(n)).collect();
        assert_eq!(bits_str(&bits), "0110101010");
        assert_eq!(s.shift(), seq("110:(10)"));
        assert_eq!(BitSeq::zeros().shift(), BitSeq::zeros());
        let huge = BitSeq::blocks(&[], vec![big(2), num_traits::pow(big(10), 50)]);
        assert_eq!(huge.first_one(), Some(big(2)));
        let shifted = huge.shift_by(&big(3));
        assert_eq!(shifted.first_one(), Some(num_traits::pow(big(10), 50)));
    }

    #[test]
    fn first_difference_examples() {
        let h = 64u64;
        assert_eq!(first_difference(&BitSeq::zeros(), &seq("1"), h), FirstDiff::At(big(0)));
        assert_eq!(first_difference(&seq("0001"), &BitSeq::zeros(), h), FirstDiff::At(big(3)));
        let s = seq("0110:(10)");
        assert_eq!(first_difference(&s, &s, h), FirstDiff::NoneBelow(big(h)));
        assert_eq!(first_difference_exact(&s, &s.clone()), None);
        let far = BitSeq::blocks(&[], vec![num_traits::pow(big(10), 30)]);
        assert_eq!(first_difference_exact(&BitSeq::zeros(), &far), Some(num_traits::pow(big(10), 30)));
    }

    fn arb_seq() -> impl Strategy<Value = BitSeq> {
        let bits = || prop::collection::vec(any::<bool>(), 0..8);
        prop_oneof![
            bits().prop_map(|p| BitSeq::finite(&p)),
            (bits(), prop::collection::vec(any::<bool>(), 1..5)).prop_map(|(p, c)| BitSeq::periodic(&p, &c)),
            (bits(), prop::collection::vec(0u64..6, 1..4))
                .prop_map(|(p, l)| BitSeq::blocks(&p, l.into_iter().map(BigUint::from).collect())),
        ]
    }

    proptest! {
        #[test]
        fn shift_agrees_with_bits(s in arb_seq(), k in 0u64..40) {
            let t = s.shift_by(&big(k));
            for n in 0..40 {
                prop_assert_eq!(t.bit(n), s.bit(n + k));
            }
        }

        #[test]
        fn difference_agrees_with_bit_scan(s in arb_seq(), t in arb_seq()) {
            let scan = (0..200u64).find(|&n| s.bit(n) != t.bit(n));
            match first_difference_exact(&s, &t) {
                Some(m) => prop_assert_eq!(Some(m), scan.map(BigUint::from)),
                None => prop_assert_eq!(scan, None),
            }
        }

        #[test]
        fn display_round_trips(s in arb_seq()) {
            prop_assert_eq!(seq(&s.to_string()), s);
        }
    }
}
