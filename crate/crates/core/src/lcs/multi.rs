use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Default cap on the number of cells of the m-dimensional table.
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// Longest common subsequence length of `m >= 2` sequences.
pub fn lcs_multi(seqs: &[Sequence]) -> Result<usize> {
    lcs_multi_with_budget(seqs, DEFAULT_CELL_BUDGET)
}

/// [`lcs_multi`] with an explicit cap on `prod(|s_i| + 1)`.
pub fn lcs_multi_with_budget(seqs: &[Sequence], cell_budget: usize) -> Result<usize> {
    if seqs.len() < 2 {
        return Err(Error::invalid("need at least two sequences"));
    }
    let k = seqs[0].alphabet_size();
    if seqs.iter().any(|s| s.alphabet_size() != k) {
        return Err(Error::invalid("all sequences must share one alphabet"));
    }
    if seqs.iter().any(Sequence::is_empty) {
        return Ok(0);
    }

    let dims: Vec<usize> = seqs.iter().map(|s| s.len() + 1).collect();
    let total = dims.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d).filter(|&t| t <= cell_budget)
    });
    let total = total.ok_or_else(|| {
        Error::resource(format!("table would exceed the {cell_budget}-cell budget"))
    })?;

    // Row-major layout with the last sequence varying fastest.
    let mut strides = vec![1usize; dims.len()];
    for d in (0..dims.len() - 1).rev() {
        strides[d] = strides[d + 1] * dims[d + 1];
    }
    let diag: usize = strides.iter().sum();
    let symbols: Vec<&[u8]> = seqs.iter().map(Sequence::symbols).collect();

    let mut table = vec![0u32; total];
    let mut index = vec![0usize; dims.len()];
    for cell in 0..total {
        if index.iter().all(|&i| i > 0) {
            let first = symbols[0][index[0] - 1];
            let all_match = symbols
                .iter()
                .zip(&index)
                .all(|(s, &i)| s[i - 1] == first);
            table[cell] = if all_match {
                table[cell - diag] + 1
            } else {
                strides.iter().map(|&st| table[cell - st]).max().unwrap_or(0)
            };
        }
        // Advance the mixed-radix counter.
        for d in (0..dims.len()).rev() {
            index[d] += 1;
            if index[d] < dims[d] {
                break;
            }
            index[d] = 0;
        }
    }
    Ok(table[total - 1] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(words: &[&str]) -> Vec<Sequence> {
        words.iter().map(|w| Sequence::from_digits(w, 2).unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(lcs_multi(&seqs(&["01", "01", "01"])).unwrap(), 2);
        assert_eq!(lcs_multi(&seqs(&["0011", "1100", "0101"])).unwrap(), 2);
        assert_eq!(lcs_multi(&seqs(&["0011", "", "0101"])).unwrap(), 0);
        assert_eq!(lcs_multi(&seqs(&["01101", "10011"])).unwrap(), 3);
    }

    #[test]
    fn errors() {
        assert!(matches!(lcs_multi(&seqs(&["01"])), Err(Error::InvalidInput(_))));
        let mixed = vec![
            Sequence::from_digits("01", 2).unwrap(),
            Sequence::from_digits("01", 3).unwrap(),
        ];
        assert!(matches!(lcs_multi(&mixed), Err(Error::InvalidInput(_))));
        let big = seqs(&["0101010101", "0101010101", "0101010101"]);
        assert!(matches!(
            lcs_multi_with_budget(&big, 1000),
            Err(Error::Resource(_))
        ));
        assert_eq!(lcs_multi_with_budget(&big, 1331).unwrap(), 10);
    }
}
