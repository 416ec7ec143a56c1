//! Unit-cost edit distance kernels.

/// Wagner-Fischer with two rolling rows.
pub fn edit_distance(a: &[u8], b: &[u8]) -> usize {
    let (a, b) = if a.len() < b.len() { (a, b) } else { (b, a) };
    let mut prev: Vec<usize> = (0..=a.len()).collect();
    let mut cur = vec![0usize; a.len() + 1];
    for (j, &cb) in b.iter().enumerate() {
        cur[0] = j + 1;
        for i in 1..=a.len() {
            let sub = prev[i - 1] + usize::from(a[i - 1] != cb);
            cur[i] = sub.min(prev[i] + 1).min(cur[i - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[a.len()]
}

/// Myers/Hyyrö bit-vector edit distance over 64-bit blocks of the shorter
/// string. Exact; `O(ceil(m/64) * n)` word operations.
pub fn edit_distance_bitparallel(a: &[u8], b: &[u8]) -> usize {
    let (pat, text) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let m = pat.len();
    if m == 0 {
        return text.len();
    }
    let words = m.div_ceil(64);
    let mut peq = vec![0u64; 256 * words];
    for (i, &c) in pat.iter().enumerate() {
        peq[c as usize * words + i / 64] |= 1u64 << (i % 64);
    }
    let last_bit = 1u64 << ((m - 1) % 64);
    let mut pv = vec![!0u64; words];
    let mut mv = vec![0u64; words];
    let mut score = m as isize;
    for &c in text {
        let eq_row = &peq[c as usize * words..(c as usize + 1) * words];
        // horizontal delta entering the top row is +1 (D[0][j] = j)
        let mut hin: i32 = 1;
        for w in 0..words {
            let high = if w + 1 == words { last_bit } else { 1u64 << 63 };
            let (p, mm, h) = advance_block(pv[w], mv[w], eq_row[w], hin, high);
            pv[w] = p;
            mv[w] = mm;
            hin = h;
        }
        score += hin as isize;
    }
    score as usize
}

#[inline(always)]
fn advance_block(pv: u64, mv: u64, mut eq: u64, hin: i32, high: u64) -> (u64, u64, i32) {
    let hin_neg = u64::from(hin < 0);
    let xv = eq | mv;
    eq |= hin_neg;
    let xh = ((eq & pv).wrapping_add(pv) ^ pv) | eq;
    let mut ph = mv | !(xh | pv);
    let mut mh = pv & xh;
    let hout = i32::from(ph & high != 0) - i32::from(mh & high != 0);
    ph <<= 1;
    mh <<= 1;
    mh |= hin_neg;
    ph |= u64::from(hin > 0);
    (mh | !(xv | ph), ph & xv, hout)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounded {
    Within(usize),
    Exceeds,
}

impl Bounded {
    pub fn within(self) -> Option<usize> {
        match self {
            Bounded::Within(d) => Some(d),
            Bounded::Exceeds => None,
        }
    }
}

/// Ukkonen-style banded DP: only cells on diagonals `k = j - i` with
/// `|k| + |(m - n) - k| <= bound` are filled, and the scan stops as soon as a
/// whole row exceeds `bound`. Exact whenever the distance is at most `bound`.
pub fn edit_distance_banded(a: &[u8], b: &[u8], bound: usize) -> Bounded {
    let (n, m) = (a.len(), b.len());
    if n.abs_diff(m) > bound {
        return Bounded::Exceeds;
    }
    let shift = m as isize - n as isize;
    // diagonal range [lo, hi] admitted by the lower bound
    let slack = (bound as isize - shift.abs()) / 2;
    let lo = shift.min(0) - slack;
    let hi = shift.max(0) + slack;
    const INF: usize = usize::MAX / 2;
    let mut prev = vec![INF; m + 1];
    let mut cur = vec![INF; m + 1];
    for (j, v) in prev.iter_mut().enumerate().take((hi.max(0) as usize).min(m) + 1) {
        *v = j;
    }
    for i in 1..=n {
        let j_lo = (i as isize + lo).max(0) as usize;
        let j_hi = ((i as isize + hi).min(m as isize)).max(-1);
        if j_hi < j_lo as isize {
            return Bounded::Exceeds;
        }
        let j_hi = j_hi as usize;
        if j_lo > 0 {
            cur[j_lo - 1] = INF;
        }
        let mut row_min = INF;
        for j in j_lo..=j_hi {
            let v = if j == 0 {
                i
            } else {
                let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
                sub.min(prev[j] + 1).min(cur[j - 1] + 1)
            };
            cur[j] = v;
            row_min = row_min.min(v);
        }
        if j_hi < m {
            cur[j_hi + 1] = INF;
        }
        if row_min > bound {
            return Bounded::Exceeds;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    match prev[m] {
        d if d <= bound => Bounded::Within(d),
        _ => Bounded::Exceeds,
    }
}

/// Threshold query `distance <= bound`, choosing the cheaper exact engine:
/// the band when it is narrow, the bit-vector kernel otherwise.
pub fn edit_distance_within(a: &[u8], b: &[u8], bound: usize) -> Bounded {
    if a.len().abs_diff(b.len()) > bound {
        return Bounded::Exceeds;
    }
    let band = 2 * bound + 1;
    let words = a.len().min(b.len()).div_ceil(64);
    if band <= 4 * words {
        edit_distance_banded(a, b, bound)
    } else {
        match edit_distance_bitparallel(a, b) {
            d if d <= bound => Bounded::Within(d),
            _ => Bounded::Exceeds,
        }
    }
}
