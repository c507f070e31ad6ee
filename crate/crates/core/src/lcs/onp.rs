use super::check_same_alphabet;
use crate::error::Result;
use crate::sequence::Sequence;

/// LCS length by the O(NP) sequence comparison algorithm.
///
/// The shorter input is `a` (length M), the longer `b` (length N) and
/// `delta = N - M`. The algorithm grows `p`, the number of deletions from
/// `b` beyond `delta`, until the furthest-reaching point on diagonal `delta`
/// touches the end of `b`. The insert/delete edit distance is then
/// `D = delta + 2p`, so `LCS = (M + N - D) / 2 = M - p`.
pub fn lcs_wmmm(a: &Sequence, b: &Sequence) -> Result<usize> {
    check_same_alphabet(a, b)?;
    Ok(onp_length(a.symbols(), b.symbols()))
}

pub(crate) fn onp_length(a: &[u8], b: &[u8]) -> usize {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let m = a.len() as isize;
    let n = b.len() as isize;
    if m == 0 {
        return 0;
    }
    let delta = n - m;
    // Diagonals k = y - x range over [-(m+1), n+1].
    let offset = m + 1;
    let mut fp = vec![-1isize; (m + n + 3) as usize];

    let snake = |k: isize, mut y: isize| -> isize {
        let mut x = y - k;
        while x < m && y < n && a[x as usize] == b[y as usize] {
            x += 1;
            y += 1;
        }
        y
    };

    let mut p: isize = -1;
    loop {
        p += 1;
        for k in -p..delta {
            let i = (k + offset) as usize;
            fp[i] = snake(k, (fp[i - 1] + 1).max(fp[i + 1]));
        }
        for k in ((delta + 1)..=(delta + p)).rev() {
            let i = (k + offset) as usize;
            fp[i] = snake(k, (fp[i - 1] + 1).max(fp[i + 1]));
        }
        let i = (delta + offset) as usize;
        fp[i] = snake(delta, (fp[i - 1] + 1).max(fp[i + 1]));
        if fp[i] == n {
            break;
        }
    }
    (m - p) as usize
}
