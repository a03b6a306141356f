use super::bitseq::BitSeq;

const POOL: [&str; 20] = [
    "0",
    "1",
    "01",
    "001",
    "0001",
    "00001",
    "000001",
    "0000001",
    ":(01)",
    ":(10)",
    "0110:(10)",
    "11:(011)",
    "100110101100:(01)",
    "010011100101:(01)",
    ":[3,1,4]",
    ":[0,2]",
    "111",
    "0101:(0011)",
    "00000:1...",
    "1111110",
];

/// A fixed pool of twenty sequences whose pairwise first differences cover
/// every `m` from 0 to 5.
pub fn sequence_pool() -> Vec<BitSeq> {
    POOL.iter().map(|s| s.parse().expect("pool literal")).collect()
}
