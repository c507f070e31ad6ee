use super::check_same_alphabet;
use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Longest input length accepted by [`lcs_backtrack`], which keeps the full table.
pub const BACKTRACK_MAX_LEN: usize = 2000;

/// Quadratic LCS length with two rolling rows.
pub fn lcs_dp(a: &Sequence, b: &Sequence) -> Result<usize> {
    check_same_alphabet(a, b)?;
    Ok(dp_length(a.symbols(), b.symbols()))
}

pub(crate) fn dp_length(a: &[u8], b: &[u8]) -> usize {
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    let mut prev = vec![0u32; b.len() + 1];
    let mut cur = vec![0u32; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()] as usize
}

/// Returns one longest common subsequence of `a` and `b`.
///
/// Both inputs must be at most [`BACKTRACK_MAX_LEN`] long.
pub fn lcs_backtrack(a: &Sequence, b: &Sequence) -> Result<Sequence> {
    check_same_alphabet(a, b)?;
    if a.len() > BACKTRACK_MAX_LEN || b.len() > BACKTRACK_MAX_LEN {
        return Err(Error::resource(format!(
            "backtracking keeps the full table and is limited to length {BACKTRACK_MAX_LEN}"
        )));
    }
    let (xs, ys) = (a.symbols(), b.symbols());
    let width = ys.len() + 1;
    let mut table = vec![0u16; (xs.len() + 1) * width];
    for i in 1..=xs.len() {
        for j in 1..=ys.len() {
            table[i * width + j] = if xs[i - 1] == ys[j - 1] {
                table[(i - 1) * width + j - 1] + 1
            } else {
                table[(i - 1) * width + j].max(table[i * width + j - 1])
            };
        }
    }

    let mut out = Vec::with_capacity(table[xs.len() * width + ys.len()] as usize);
    let (mut i, mut j) = (xs.len(), ys.len());
    while i > 0 && j > 0 {
        if xs[i - 1] == ys[j - 1] {
            out.push(xs[i - 1]);
            i -= 1;
            j -= 1;
        } else if table[(i - 1) * width + j] >= table[i * width + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    Ok(Sequence::from_raw(out, a.alphabet_size()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        Sequence::from_digits(s, 2).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(lcs_dp(&seq("0110"), &seq("0110")).unwrap(), 4);
        assert_eq!(lcs_dp(&seq("000"), &seq("111")).unwrap(), 0);
        assert_eq!(lcs_dp(&seq("01101"), &seq("10011")).unwrap(), 3);
        assert_eq!(lcs_dp(&seq(""), &seq("01")).unwrap(), 0);
    }

    #[test]
    fn alphabet_mismatch_is_invalid_input() {
        let a = Sequence::from_digits("01", 2).unwrap();
        let b = Sequence::from_digits("01", 3).unwrap();
        assert!(matches!(lcs_dp(&a, &b), Err(Error::InvalidInput(_))));
        assert!(matches!(lcs_backtrack(&a, &b), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn backtrack_witness() {
        assert_eq!(lcs_backtrack(&seq("0110"), &seq("0110")).unwrap(), seq("0110"));
        assert!(lcs_backtrack(&seq("000"), &seq("111")).unwrap().is_empty());
        let w = lcs_backtrack(&seq("01101"), &seq("10011")).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.is_subsequence_of(&seq("01101")));
        assert!(w.is_subsequence_of(&seq("10011")));
    }

    #[test]
    fn backtrack_length_limit() {
        let long = Sequence::new(vec![0; BACKTRACK_MAX_LEN + 1], 2).unwrap();
        assert!(matches!(
            lcs_backtrack(&long, &seq("01")),
            Err(Error::Resource(_))
        ));
    }
}
