//! Support enumeration and binomial coefficients.

use crate::vector::{Support, MAX_LEN};

/// Enumeration order for the size-w subsets of {0,…,m−1}.
///
/// Colexicographic order compares sets by their largest differing element;
/// for equal-size sets this coincides with numeric order of the bit masks.
/// It is the default search order because each new support overlaps the
/// recent ones heavily, so clash pruning fires early.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedOrder {
    #[default]
    Colex,
    Lex,
}

/// C(n,k) as an exact u128.
///
/// Intermediate products are reduced by gcd before multiplying so that the
/// computation never exceeds the final value, which fits in u128 for all
/// n ≤ 128.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(n−i)/(i+1) is exact; divide out gcds first to keep the
        // intermediate no larger than the result.
        let g = num_integer::gcd(acc, (i + 1) as u128);
        let d = (i + 1) as u128 / g;
        acc = acc / g * ((n - i) as u128 / d);
    }
    acc
}

/// All size-w supports over universe m, in the requested order.
pub fn enumerate_supports(m: usize, w: usize, order: SeedOrder) -> Vec<Support> {
    assert!(m <= MAX_LEN, "universe {m} exceeds {MAX_LEN}");
    assert!(w <= m, "subset size {w} exceeds universe {m}");
    match order {
        SeedOrder::Colex => colex_masks(m, w)
            .into_iter()
            .map(|bits| Support::from_bits(m, bits))
            .collect(),
        SeedOrder::Lex => {
            let mut out = Vec::with_capacity(binomial(m, w) as usize);
            let mut current = Vec::with_capacity(w);
            lex_rec(m, w, 0, &mut current, &mut out);
            out
        }
    }
}

// Same-popcount masks in increasing numeric order (Gosper's hack), which is
// exactly colex order on the sets.
fn colex_masks(m: usize, w: usize) -> Vec<u128> {
    if w == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(m, w) as usize);
    let limit: u128 = if m == MAX_LEN { u128::MAX } else { (1 << m) - 1 };
    let mut mask: u128 = if w == MAX_LEN { u128::MAX } else { (1 << w) - 1 };
    loop {
        out.push(mask);
        let u = mask & mask.wrapping_neg();
        let v = match mask.checked_add(u) {
            Some(v) => v,
            None => break,
        };
        mask = v | (((mask ^ v) / u) >> 2);
        if mask > limit {
            break;
        }
    }
    out
}

fn lex_rec(m: usize, w: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Support>) {
    if current.len() == w {
        out.push(Support::new(m, current.iter().copied()).expect("members within universe"));
        return;
    }
    let remaining = w - current.len();
    for i in from..=m.saturating_sub(remaining) {
        current.push(i);
        lex_rec(m, w, i + 1, current, out);
        current.pop();
    }
}
