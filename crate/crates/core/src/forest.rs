//! Unlabeled rooted trees and forests held in canonical form.
//!
//! Every tree is stored with its children sorted by canonical key, where the
//! key is a balanced parenthesis word (`"()"` is the single vertex). Keys are
//! ordered by length first, then lexicographically with `'('` before `')'`.
//! Two trees are isomorphic exactly when their keys are equal.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Balanced parenthesis word identifying an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey(String);

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An unlabeled rooted tree in canonical form.
#[derive(Clone)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    key: CanonicalKey,
    vertex_count: usize,
    height: usize,
    leaf_count: usize,
}

impl RootedTree {
    /// The single vertex.
    pub fn singleton() -> Self {
        b_plus(RootedForest::empty())
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn key(&self) -> &CanonicalKey {
        &self.key
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn is_singleton(&self) -> bool {
        self.children.is_empty()
    }

    /// Parent array in preorder: vertex 0 is the root and `parents[v] < v`
    /// for every other vertex.
    pub fn parent_array(&self) -> Vec<Option<usize>> {
        fn walk(t: &RootedTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            let me = out.len();
            out.push(parent);
            for c in &t.children {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::with_capacity(self.vertex_count);
        walk(self, None, &mut out);
        out
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for RootedTree {}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({})", self.key)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key.as_str())
    }
}

/// A multiset of rooted trees, stored as a sorted list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootedForest {
    trees: Vec<RootedTree>,
}

impl RootedForest {
    pub fn empty() -> Self {
        RootedForest { trees: Vec::new() }
    }

    pub fn new(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        RootedForest { trees }
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(RootedTree::vertex_count).sum()
    }

    /// Disjoint union.
    pub fn union(&self, other: &RootedForest) -> RootedForest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        RootedForest::new(trees)
    }

    pub fn key(&self) -> CanonicalKey {
        CanonicalKey(self.trees.iter().map(|t| t.key.as_str()).collect())
    }
}

impl fmt::Debug for RootedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedForest({:?})", self.key().as_str())
    }
}

impl fmt::Display for RootedForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key().as_str())
    }
}

impl FromIterator<RootedTree> for RootedForest {
    fn from_iter<I: IntoIterator<Item = RootedTree>>(iter: I) -> Self {
        RootedForest::new(iter.into_iter().collect())
    }
}

/// Joins the roots of `forest` under a new root vertex.
pub fn b_plus(forest: RootedForest) -> RootedTree {
    let children = forest.trees;
    let mut key = String::with_capacity(2 * (1 + children.len()));
    key.push('(');
    let mut vertex_count = 1;
    let mut height = 0;
    let mut leaf_count = 0;
    for c in &children {
        key.push_str(c.key.as_str());
        vertex_count += c.vertex_count;
        height = height.max(c.height + 1);
        leaf_count += c.leaf_count;
    }
    key.push(')');
    RootedTree {
        children,
        key: CanonicalKey(key),
        vertex_count,
        height,
        leaf_count: leaf_count.max(1),
    }
}

/// Components left after deleting the root.
pub fn remove_root(tree: &RootedTree) -> RootedForest {
    RootedForest {
        trees: tree.children.clone(),
    }
}

/// Parses a parenthesis word into a canonical tree.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut parser = Parser::new(text);
    let tree = parser.tree()?;
    if parser.pos < parser.bytes.len() {
        return Err(Error::parse(parser.pos, "trailing input after the root tree"));
    }
    Ok(tree)
}

/// Parses a juxtaposition of parenthesis words into a forest. The empty
/// string is the empty forest.
pub fn parse_forest(text: &str) -> Result<RootedForest> {
    let text = text.trim();
    let mut parser = Parser::new(text);
    let mut trees = Vec::new();
    while parser.pos < parser.bytes.len() {
        trees.push(parser.tree()?);
    }
    Ok(RootedForest::new(trees))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn tree(&mut self) -> Result<RootedTree> {
        // Iterative so deep chains cannot overflow the stack.
        let mut stack: Vec<Vec<RootedTree>> = Vec::new();
        loop {
            match self.bytes.get(self.pos) {
                Some(b'(') => {
                    stack.push(Vec::new());
                    self.pos += 1;
                }
                Some(b')') => {
                    let children = stack
                        .pop()
                        .ok_or_else(|| Error::parse(self.pos, "unmatched ')'"))?;
                    self.pos += 1;
                    let t = b_plus(RootedForest::new(children));
                    match stack.last_mut() {
                        Some(parent) => parent.push(t),
                        None => return Ok(t),
                    }
                }
                Some(&c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected character {:?}", c as char),
                    ))
                }
                None => {
                    let msg = if stack.is_empty() {
                        "expected '('"
                    } else {
                        "unbalanced input: missing ')'"
                    };
                    return Err(Error::parse(self.pos, msg));
                }
            }
        }
    }
}

/// Order of the root-preserving automorphism group.
///
/// Children are grouped into isomorphism classes with multiplicities `k_i`;
/// the order is `Π k_i! · α(T_i)^{k_i}`.
pub fn automorphism_order(tree: &RootedTree) -> BigUint {
    let mut result = BigUint::one();
    let children = &tree.children;
    let mut i = 0;
    while i < children.len() {
        let mut j = i + 1;
        while j < children.len() && children[j] == children[i] {
            j += 1;
        }
        let k = j - i;
        let child_order = automorphism_order(&children[i]);
        for m in 1..=k {
            result *= BigUint::from(m);
            result *= &child_order;
        }
        i = j;
    }
    result
}

type TreeTable = Vec<Arc<Vec<RootedTree>>>;

fn tree_cache() -> &'static RwLock<TreeTable> {
    static CACHE: OnceLock<RwLock<TreeTable>> = OnceLock::new();
    // index 0 holds no trees
    CACHE.get_or_init(|| RwLock::new(vec![Arc::new(Vec::new())]))
}

fn trees_with(n: usize) -> Arc<Vec<RootedTree>> {
    if let Some(list) = tree_cache().read().expect("tree cache poisoned").get(n) {
        return Arc::clone(list);
    }
    let mut cache = tree_cache().write().expect("tree cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let smaller: Vec<&[RootedTree]> = cache.iter().map(|v| v.as_slice()).collect();
        let mut built: Vec<RootedTree> = multisets(&smaller, m - 1)
            .into_iter()
            .map(|children| b_plus(RootedForest::new(children)))
            .collect();
        built.sort();
        cache.push(Arc::new(built));
    }
    Arc::clone(&cache[n])
}

/// All multisets of trees drawn from `by_size` with total vertex count `total`.
fn multisets(by_size: &[&[RootedTree]], total: usize) -> Vec<Vec<RootedTree>> {
    // Items are ordered by (size, index); a multiset is chosen as a
    // non-increasing sequence of item positions.
    let items: Vec<(usize, &RootedTree)> = by_size
        .iter()
        .enumerate()
        .take(total + 1)
        .flat_map(|(size, list)| list.iter().map(move |t| (size, t)))
        .collect();

    fn go<'t>(
        items: &[(usize, &'t RootedTree)],
        max_pos: usize,
        remaining: usize,
        current: &mut Vec<&'t RootedTree>,
        out: &mut Vec<Vec<RootedTree>>,
    ) {
        if remaining == 0 {
            out.push(current.iter().map(|t| (*t).clone()).collect());
            return;
        }
        for pos in (0..max_pos).rev() {
            let (size, tree) = items[pos];
            if size > remaining {
                continue;
            }
            current.push(tree);
            go(items, pos + 1, remaining - size, current, out);
            current.pop();
        }
    }

    let mut out = Vec::new();
    go(&items, items.len(), total, &mut Vec::new(), &mut out);
    out
}

/// One representative per isomorphism class of trees with `n` vertices, in
/// canonical-key order.
pub fn enumerate_trees(n: usize) -> Result<Vec<RootedTree>> {
    if n == 0 {
        return Err(Error::domain("a rooted tree has at least one vertex"));
    }
    Ok(trees_with(n).as_ref().clone())
}

/// One representative per isomorphism class of forests with `n` vertices in
/// total, in canonical-key order. `n = 0` yields only the empty forest.
pub fn enumerate_forests(n: usize) -> Vec<RootedForest> {
    let tables: Vec<Arc<Vec<RootedTree>>> = (0..=n).map(trees_with).collect();
    let slices: Vec<&[RootedTree]> = tables.iter().map(|v| v.as_slice()).collect();
    let mut forests: Vec<RootedForest> = multisets(&slices, n)
        .into_iter()
        .map(RootedForest::new)
        .collect();
    forests.sort_by_key(RootedForest::key);
    forests
}
