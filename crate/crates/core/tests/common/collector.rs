//! Naive collector: expands a word into unit letters, moves every `t` to the
//! front one adjacent swap at a time, then bubble-sorts the `a` letters,
//! emitting `c_{i-j}^{ef}` for each swap of `a_i^e a_j^f` with `i > j`.

use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug)]
enum Letter {
    T(i64),
    A(i64, i64),
}

/// Word tokens as `(kind, index, exponent)`, kind one of `'t' 'a' 'c'`.
pub type Token = (char, i64, i64);

/// Returns `(t, a, c)` with zero entries removed and `c` normalised to
/// positive indices.
pub fn collect(tokens: &[Token]) -> (i64, BTreeMap<i64, i64>, BTreeMap<i64, i64>) {
    let mut central: BTreeMap<i64, i64> = BTreeMap::new();
    let mut add_c = |i: i64, e: i64| {
        if i == 0 || e == 0 {
            return;
        }
        let (i, e) = if i < 0 { (-i, -e) } else { (i, e) };
        *central.entry(i).or_default() += e;
    };
    let mut letters = Vec::new();
    for &(kind, idx, exp) in tokens {
        let sign = exp.signum();
        for _ in 0..exp.abs() {
            match kind {
                't' => letters.push(Letter::T(sign)),
                'a' => letters.push(Letter::A(idx, sign)),
                'c' => add_c(idx, sign),
                _ => panic!("bad kind {kind}"),
            }
        }
    }
    // a_i t = t a_{i-1}, a_i t^-1 = t^-1 a_{i+1}
    loop {
        let mut moved = false;
        for k in 0..letters.len().saturating_sub(1) {
            if let (Letter::A(i, e), Letter::T(s)) = (letters[k], letters[k + 1]) {
                letters[k] = Letter::T(s);
                letters[k + 1] = Letter::A(i - s, e);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let t: i64 = letters.iter().map(|l| if let Letter::T(s) = l { *s } else { 0 }).sum();
    let mut a: Vec<(i64, i64)> = letters
        .iter()
        .filter_map(|l| if let Letter::A(i, e) = l { Some((*i, *e)) } else { None })
        .collect();
    loop {
        let mut swapped = false;
        for k in 0..a.len().saturating_sub(1) {
            let (i, e) = a[k];
            let (j, f) = a[k + 1];
            if i > j {
                add_c(i - j, e * f);
                a.swap(k, k + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut av: BTreeMap<i64, i64> = BTreeMap::new();
    for (i, e) in a {
        *av.entry(i).or_default() += e;
    }
    av.retain(|_, v| *v != 0);
    central.retain(|_, v| *v != 0);
    (t, av, central)
}
