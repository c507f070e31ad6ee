use super::check_same_alphabet;
use crate::error::Result;
use crate::sequence::Sequence;

/// LCS length by word-parallel row updates.
///
/// Row `j` of the DP table is encoded as a bit vector `V` over the
/// positions of the shorter input, where a zero bit marks a position at
/// which the row value increases. Processing symbol `y` of the longer
/// input updates `V <- (V + (V & M_y)) | (V & !M_y)` with `M_y` the match
/// mask of `y`. The LCS length is the number of zero bits at the end.
pub fn lcs_bitparallel(a: &Sequence, b: &Sequence) -> Result<usize> {
    check_same_alphabet(a, b)?;
    Ok(bitparallel_length(a.symbols(), b.symbols(), a.alphabet_size()))
}

pub(crate) fn bitparallel_length(a: &[u8], b: &[u8], alphabet_size: usize) -> usize {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if a.is_empty() {
        return 0;
    }
    let words = a.len().div_ceil(64);
    let mut masks = vec![0u64; alphabet_size * words];
    for (i, &s) in a.iter().enumerate() {
        masks[s as usize * words + i / 64] |= 1u64 << (i % 64);
    }

    let mut v = vec![u64::MAX; words];
    for &y in b {
        let mask = &masks[y as usize * words..(y as usize + 1) * words];
        let mut carry = 0u64;
        for (vw, &mw) in v.iter_mut().zip(mask) {
            let old = *vw;
            let u = old & mw;
            let (sum, c1) = old.overflowing_add(u);
            let (sum, c2) = sum.overflowing_add(carry);
            carry = (c1 | c2) as u64;
            *vw = sum | (old & !mw);
        }
    }

    let tail = a.len() % 64;
    let mut zeros = 0usize;
    for (w, &vw) in v.iter().enumerate() {
        let live = if w + 1 == words && tail != 0 {
            (1u64 << tail) - 1
        } else {
            u64::MAX
        };
        zeros += (!vw & live).count_ones() as usize;
    }
    zeros
}
