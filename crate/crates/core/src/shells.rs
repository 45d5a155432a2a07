//! Degeneracies of the cubic lattice shells `|n|^2 = s`, i.e. the number of
//! representations of `s` as a sum of three squares.
//!
//! `r3 = r2 * r1` as a convolution over `s`. Small tables use the direct
//! sum; large ones go through a number-theoretic transform modulo
//! `3 * 2^30 + 1`, which is exact because every count is far below the modulus.

use std::sync::{Arc, Mutex};

const MODULUS: u64 = 3_221_225_473;
const GENERATOR: u64 = 5;
const MAX_LOG_LEN: u32 = 28;
/// Largest `s_max` the transform serves: the linear convolution needs `2 s_max + 1` slots.
pub(crate) const MAX_SHELL: usize = (1 << (MAX_LOG_LEN - 1)) - 1;
const DIRECT_LIMIT: usize = 1 << 16;
/// Stages with at most this many twiddles use a table; longer ones step the root.
const TABLE_LIMIT: usize = 1 << 16;

fn weight(c: usize) -> u32 {
    if c == 0 {
        1
    } else {
        2
    }
}

fn isqrt(s: usize) -> usize {
    let mut r = (s as f64).sqrt() as usize;
    while r * r > s {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= s {
        r += 1;
    }
    r
}

/// `r2(s)` for `s <= s_max`, zero-padded to `len`.
fn two_square_counts(s_max: usize, len: usize) -> Vec<u32> {
    let mut r2 = vec![0u32; len.max(s_max + 1)];
    let top = isqrt(s_max);
    for a in 0..=top {
        let a2 = a * a;
        let b_top = isqrt(s_max - a2);
        for b in 0..=b_top {
            r2[a2 + b * b] += weight(a) * weight(b);
        }
    }
    r2
}

/// Direct convolution, `O(s_max^{3/2})`.
pub(crate) fn shell_counts_direct(s_max: usize) -> Vec<u32> {
    let r2 = two_square_counts(s_max, 0);
    let mut r3 = vec![0u32; s_max + 1];
    for c in 0..=isqrt(s_max) {
        let (c2, w) = (c * c, weight(c));
        for (out, &r) in r3[c2..].iter_mut().zip(&r2) {
            *out += w * r;
        }
    }
    r3
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    base %= MODULUS;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % MODULUS;
        }
        base = base * base % MODULUS;
        exp >>= 1;
    }
    acc
}

#[inline]
fn mul(a: u32, b: u64) -> u32 {
    (a as u64 * b % MODULUS) as u32
}

#[inline]
fn add(a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= MODULUS { s - MODULUS } else { s }) as u32
}

#[inline]
fn sub(a: u32, b: u32) -> u32 {
    (if a >= b { a as u64 - b as u64 } else { a as u64 + MODULUS - b as u64 }) as u32
}

/// Runs `butterfly(k, twiddle^k, block)` for every block of length `len`.
fn for_each_stage_block(
    values: &mut [u32],
    len: usize,
    root: u64,
    mut butterfly: impl FnMut(&mut [u32], &mut [u32], usize, u64),
) {
    let half = len / 2;
    if half <= TABLE_LIMIT {
        let mut table = Vec::with_capacity(half);
        let mut w = 1u64;
        for _ in 0..half {
            table.push(w);
            w = w * root % MODULUS;
        }
        for block in values.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for (k, &w) in table.iter().enumerate() {
                butterfly(lo, hi, k, w);
            }
        }
    } else {
        for block in values.chunks_exact_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            let mut w = 1u64;
            for k in 0..half {
                butterfly(lo, hi, k, w);
                w = w * root % MODULUS;
            }
        }
    }
}

/// Forward transform, natural order in, bit-reversed order out.
fn forward(values: &mut [u32]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two() && n <= 1 << MAX_LOG_LEN);
    let mut len = n;
    while len >= 2 {
        let root = pow_mod(GENERATOR, (MODULUS - 1) / len as u64);
        for_each_stage_block(values, len, root, |lo, hi, k, w| {
            let (u, v) = (lo[k], hi[k]);
            lo[k] = add(u, v);
            hi[k] = mul(sub(u, v), w);
        });
        len /= 2;
    }
}

/// Inverse of [`forward`] without the `1/n` scale, bit-reversed order in.
fn inverse(values: &mut [u32]) {
    let n = values.len();
    let mut len = 2;
    while len <= n {
        let root = pow_mod(pow_mod(GENERATOR, (MODULUS - 1) / len as u64), MODULUS - 2);
        for_each_stage_block(values, len, root, |lo, hi, k, w| {
            let (u, v) = (lo[k], mul(hi[k], w));
            lo[k] = add(u, v);
            hi[k] = sub(u, v);
        });
        len *= 2;
    }
}

fn shell_counts_transform(s_max: usize) -> Vec<u32> {
    assert!(s_max <= MAX_SHELL, "shell table {s_max} exceeds transform capacity");
    let n = (2 * s_max + 1).next_power_of_two();
    let mut a = two_square_counts(s_max, n);
    let mut b = vec![0u32; n];
    for c in 0..=isqrt(s_max) {
        b[c * c] = weight(c);
    }
    forward(&mut a);
    forward(&mut b);
    for (x, &y) in a.iter_mut().zip(&b) {
        *x = mul(*x, y as u64);
    }
    drop(b);
    inverse(&mut a);
    let scale = pow_mod(n as u64, MODULUS - 2);
    a.truncate(s_max + 1);
    a.shrink_to_fit();
    for x in a.iter_mut() {
        *x = mul(*x, scale);
    }
    a
}

static CACHE: Mutex<Option<Arc<Vec<u32>>>> = Mutex::new(None);

/// `r3(s)` for `0 <= s <= s_max`, shared between calls.
pub(crate) fn shell_counts(s_max: usize) -> Arc<Vec<u32>> {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(table) = cache.as_ref() {
        if table.len() > s_max {
            return Arc::clone(table);
        }
    }
    // the transform length is a power of two; fill it
    let table = Arc::new(if s_max <= DIRECT_LIMIT {
        shell_counts_direct(DIRECT_LIMIT)
    } else {
        shell_counts_transform(((2 * s_max + 1).next_power_of_two() / 2 - 1).min(MAX_SHELL))
    });
    *cache = Some(Arc::clone(&table));
    table
}
