//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Every preorder level sequence `0 = L_0, 1 ≤ L_i ≤ L_{i-1} + 1` with `n`
/// entries; each is a planar rooted tree.
pub fn level_sequences(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        for l in 1..=last + 1 {
            cur.push(l);
            go(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![0], &mut out);
    out
}

/// Parent array of a level sequence.
pub fn parents_of_levels(levels: &[usize]) -> Vec<Option<usize>> {
    let mut last_at_depth: Vec<usize> = Vec::new();
    let mut parents = Vec::with_capacity(levels.len());
    for (v, &l) in levels.iter().enumerate() {
        last_at_depth.truncate(l);
        parents.push(last_at_depth.last().copied());
        last_at_depth.push(v);
    }
    parents
}

/// AHU-style integer class labels: two rooted trees share a label iff they
/// are isomorphic. Labels are assigned through a shared table.
pub struct IsoClasses {
    table: HashMap<Vec<usize>, usize>,
}

impl IsoClasses {
    pub fn new() -> Self {
        IsoClasses { table: HashMap::new() }
    }

    pub fn label(&mut self, parents: &[Option<usize>]) -> usize {
        let n = parents.len();
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                kids[*p].push(v);
            }
        }
        let mut labels = vec![0usize; n];
        // parents precede children, so a reverse sweep sees children first
        for v in (0..n).rev() {
            let mut sig: Vec<usize> = kids[v].iter().map(|&c| labels[c]).collect();
            sig.sort_unstable();
            let next = self.table.len();
            labels[v] = *self.table.entry(sig).or_insert(next);
        }
        labels[0]
    }
}

/// Number of isomorphism classes of rooted trees with `n` vertices, by
/// classifying every level sequence.
pub fn brute_force_tree_count(n: usize) -> usize {
    let mut classes = IsoClasses::new();
    let distinct: HashSet<usize> = level_sequences(n)
        .iter()
        .map(|l| classes.label(&parents_of_levels(l)))
        .collect();
    distinct.len()
}

/// Root-preserving automorphisms of the tree with the given parent array,
/// by trying every bijection that maps parents consistently.
pub fn brute_force_automorphisms(parents: &[Option<usize>]) -> u64 {
    let n = parents.len();
    fn go(v: usize, parents: &[Option<usize>], image: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let n = parents.len();
        if v == n {
            // every edge must map onto an edge
            let ok = (1..n).all(|u| parents[image[u]] == Some(image[parents[u].unwrap()]));
            return ok as u64;
        }
        let mut total = 0;
        for w in 0..n {
            if used[w] {
                continue;
            }
            if (v == 0) != (w == 0) {
                continue;
            }
            image.push(w);
            used[w] = true;
            total += go(v + 1, parents, image, used);
            used[w] = false;
            image.pop();
        }
        total
    }
    go(0, parents, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Forest counts from tree counts via the Euler transform:
/// `F(q) = Π_k (1 − q^k)^{−t_k}`.
pub fn euler_transform(tree_counts: &[u64], n_max: usize) -> Vec<u64> {
    // tree_counts[k-1] = t_k
    let mut f = vec![0u64; n_max + 1];
    f[0] = 1;
    for (k0, &t) in tree_counts.iter().enumerate() {
        let k = k0 + 1;
        for _ in 0..t {
            // multiply by 1/(1 - q^k)
            for i in k..=n_max {
                f[i] += f[i - k];
            }
        }
    }
    f
}

/// Dyck words of semilength `n`, by filtering all bit strings.
pub fn dyck_count(n: usize) -> u64 {
    (0u64..(1 << (2 * n)))
        .filter(|bits| {
            let mut depth = 0i32;
            for i in 0..2 * n {
                depth += if bits >> i & 1 == 1 { 1 } else { -1 };
                if depth < 0 {
                    return false;
                }
            }
            depth == 0
        })
        .count() as u64
}

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                let (head, tail) = rows.split_at_mut(i.max(rank));
                let (src, dst) = if i < rank {
                    (&tail[0], &mut head[i])
                } else {
                    (&head[rank], &mut tail[0])
                };
                for j in 0..cols {
                    let delta = &f * &src[j];
                    dst[j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All compositions of `n`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut c = vec![first];
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

/// Tensor words over the free-word base, with prefix operators
/// `Ξ_α(w) = g_α w`, kept as plain maps.
pub type Tensor = BTreeMap<Vec<Vec<u32>>, BigRational>;

pub fn tensor_add(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let mut k = ka.clone();
            k.extend(kb.iter().cloned());
            let e = out.entry(k).or_insert_with(BigRational::zero);
            *e += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn tensor_unit() -> Tensor {
    let mut t = Tensor::new();
    t.insert(Vec::new(), BigRational::one());
    t
}

/// `L_g` written out directly: every basis tensor `v_1 ⊗ … ⊗ v_n` maps to
/// `Σ_j v_1 ⊗ … ⊗ v_j ⊗ (g · v_{j+1} ⋯ v_n)`.
pub fn tensor_l(g: u32, x: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (factors, c) in x {
        for j in 0..=factors.len() {
            let mut merged = vec![g];
            for v in &factors[j..] {
                merged.extend_from_slice(v);
            }
            let mut k: Vec<Vec<u32>> = factors[..j].to_vec();
            k.push(merged);
            let e = out.entry(k).or_insert_with(BigRational::zero);
            *e += c;
        }
    }
    out
}
