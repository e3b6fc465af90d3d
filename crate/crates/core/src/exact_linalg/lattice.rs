//! Finitely generated subgroups of Q^n via Euclidean row echelon forms.
//!
//! Every finitely generated subgroup of Q is cyclic, so the Euclidean algorithm runs
//! on rational entries directly and no denominator clearing is needed.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::scalar::{is_integral, rat_floor, rat_int, Int, Rat};

use super::rref::rref;
use super::svec::{self, SVec};

fn lead_below(v: &SVec, prefix: usize) -> Option<usize> {
    v.keys().next().copied().filter(|&c| c < prefix)
}

/// Echelon form of the lattice spanned by `gens`, looking only at coordinates below `prefix`.
///
/// Returns `(echelon, rest)`: echelon rows have distinct leading columns below `prefix`
/// with positive leading entries; `rest` spans the generators' combinations whose
/// prefix vanishes (rows that become entirely zero are dropped).
pub fn echelon_prefix(gens: Vec<SVec>, prefix: usize) -> (Vec<SVec>, Vec<SVec>) {
    let mut buckets: BTreeMap<usize, Vec<SVec>> = BTreeMap::new();
    let mut rest = Vec::new();
    for g in gens.into_iter().filter(|g| !g.is_empty()) {
        match lead_below(&g, prefix) {
            Some(c) => buckets.entry(c).or_default().push(g),
            None => rest.push(g),
        }
    }
    let mut out = Vec::new();
    while let Some((c, mut group)) = buckets.pop_first() {
        loop {
            // pivot: smallest |lead|, then fewest entries
            let pi = (0..group.len())
                .min_by(|&i, &j| {
                    let (a, b) = (group[i][&c].abs(), group[j][&c].abs());
                    a.cmp(&b).then(group[i].len().cmp(&group[j].len())).then(i.cmp(&j))
                })
                .expect("nonempty group");
            let piv = group.swap_remove(pi);
            if group.is_empty() {
                let piv = if piv[&c].is_negative() { svec::scaled(&piv, &Rat::from_integer((-1).into())) } else { piv };
                out.push(piv);
                break;
            }
            let pl = piv[&c].clone();
            let mut keep = alloc::vec![];
            for mut g in group.drain(..) {
                let q = rat_floor(&(&g[&c] / &pl));
                svec::axpy(&mut g, &-rat_int(&q), &piv);
                match lead_below(&g, prefix) {
                    Some(cc) if cc == c => keep.push(g),
                    Some(cc) => buckets.entry(cc).or_default().push(g),
                    None => {
                        if !g.is_empty() {
                            rest.push(g)
                        }
                    }
                }
            }
            keep.push(piv);
            group = keep;
        }
    }
    (out, rest)
}

/// Z-basis in echelon form of the subgroup of Q^n spanned by `gens`.
pub fn lattice_basis(gens: Vec<SVec>) -> Vec<SVec> {
    echelon_prefix(gens, usize::MAX).0
}

/// Integer coordinates of `x` in an echelon basis, if `x` lies in its span.
pub fn lattice_coords(basis: &[SVec], x: &SVec) -> Option<Vec<Int>> {
    let mut r = x.clone();
    let mut coeffs = Vec::with_capacity(basis.len());
    for b in basis {
        let (&c, lead) = b.iter().next()?;
        if let Some((&k, _)) = r.iter().next() {
            if k < c {
                return None;
            }
        }
        match r.get(&c) {
            Some(v) => {
                let q = v / lead;
                if !is_integral(&q) {
                    return None;
                }
                svec::axpy(&mut r, &-q.clone(), b);
                coeffs.push(q.to_integer());
            }
            None => coeffs.push(Int::zero()),
        }
    }
    if r.is_empty() {
        Some(coeffs)
    } else {
        None
    }
}

/// Z-basis of `{ y in Z^n : rows . y = 0 }` for rational equations `rows`.
pub fn integer_kernel(rows: Vec<SVec>, n: usize) -> Vec<SVec> {
    let r = rref(rows, n);
    let basis = r.kernel();
    let free = r.free_columns();
    // fractional pivot rows impose congruences on the free variables
    let frac: Vec<&SVec> = r.rows.iter().filter(|row| row.values().any(|v| !is_integral(v))).collect();
    if frac.is_empty() {
        return basis;
    }
    let k = free.len();
    let p = frac.len();
    let mut gens = Vec::new();
    for (i, &f) in free.iter().enumerate() {
        let mut g = SVec::new();
        for (j, row) in frac.iter().enumerate() {
            if let Some(v) = row.get(&f) {
                g.insert(j, v.clone());
            }
        }
        g.insert(p + i, Rat::from_integer(1.into()));
        gens.push(g);
    }
    for j in 0..p {
        gens.push(svec::unit(j));
    }
    let (_, rest) = echelon_prefix(gens, p);
    let ys = lattice_basis(rest.into_iter().map(|g| svec::window(&g, p, p + k)).collect());
    ys.into_iter()
        .map(|y| {
            let mut out = SVec::new();
            for (&i, c) in &y {
                svec::axpy(&mut out, c, &basis[i]);
            }
            out
        })
        .collect()
}
