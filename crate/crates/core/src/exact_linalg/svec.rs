//! Sparse rational vectors keyed by coordinate index.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::Rat;

/// Sparse vector; absent keys are zero and stored values are never zero.
pub type SVec = BTreeMap<usize, Rat>;

pub fn unit(i: usize) -> SVec {
    let mut v = SVec::new();
    v.insert(i, Rat::from_integer(1.into()));
    v
}

pub fn from_dense(xs: &[Rat]) -> SVec {
    xs.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Rat> {
    let mut out = alloc::vec![Rat::zero(); n];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

pub fn add_entry(v: &mut SVec, i: usize, c: &Rat) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&i) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(&i);
            }
        }
        None => {
            v.insert(i, c.clone());
        }
    }
}

/// v += c * w
pub fn axpy(v: &mut SVec, c: &Rat, w: &SVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in w {
        add_entry(v, i, &(c * x));
    }
}

pub fn scaled(v: &SVec, c: &Rat) -> SVec {
    if c.is_zero() {
        return SVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * c)).collect()
}

pub fn sub(v: &SVec, w: &SVec) -> SVec {
    let mut out = v.clone();
    axpy(&mut out, &Rat::from_integer((-1).into()), w);
    out
}

pub fn add(v: &SVec, w: &SVec) -> SVec {
    let mut out = v.clone();
    axpy(&mut out, &Rat::from_integer(1.into()), w);
    out
}

pub fn dot(v: &SVec, w: &SVec) -> Rat {
    let (a, b) = if v.len() <= w.len() { (v, w) } else { (w, v) };
    let mut acc = Rat::zero();
    for (i, x) in a {
        if let Some(y) = b.get(i) {
            acc += x * y;
        }
    }
    acc
}

/// Re-indexes a vector by adding `offset` to each key.
pub fn shifted(v: &SVec, offset: usize) -> SVec {
    v.iter().map(|(&i, x)| (i + offset, x.clone())).collect()
}

/// Keeps the keys in `[lo, hi)` and re-bases them at zero.
pub fn window(v: &SVec, lo: usize, hi: usize) -> SVec {
    v.range(lo..hi).map(|(&i, x)| (i - lo, x.clone())).collect()
}
