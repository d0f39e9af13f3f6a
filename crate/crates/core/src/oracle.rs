//! Brute-force reference implementations. Nothing here calls into the sieve
//! modules except to read the assignment values they sample; every search and
//! every monomial sum is written out directly.

use crate::dimmatch::QdimAssignment;
use crate::edgecolor::{ColoringAssignment, ColoringMode};
use crate::error::{Error, Result};
use crate::family::{PartiteFamily, SetFamily};
use crate::gf::{Field, FieldElement};
use crate::graph::Graph;
use crate::kpath::{PathAssignment, VertexBipartition};
use crate::linalg::FieldMatrix;
use crate::setpack::{GroundBipartition, PackingAssignment};

/// Largest structure-times-labeling count the enumerators accept.
pub const ENUMERATION_LIMIT: u64 = 20_000_000;

fn too_large(what: &str) -> Error {
    Error::InstanceTooLarge(what.to_string())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Calls `f` on every tuple in `choices^len`.
fn for_each_tuple(choices: &[usize], len: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; len];
    if len > 0 && choices.is_empty() {
        return;
    }
    let mut tuple: Vec<usize> = idx.iter().map(|&i| choices[i]).collect();
    loop {
        f(&tuple);
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                tuple[pos] = choices[idx[pos]];
                break;
            }
            idx[pos] = 0;
            tuple[pos] = choices[0];
            pos += 1;
        }
    }
}

/// Calls `f` on every `p`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, p: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if p > n {
        return;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..p).rev().find(|&i| idx[i] != i + n - p) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn allowed_labels(count: usize, avoided: u64) -> Vec<usize> {
    (0..count).filter(|&l| avoided >> l & 1 == 0).collect()
}

// ---------------------------------------------------------------- decisions

/// Depth-first search over simple paths.
pub fn has_k_path_bf(graph: &Graph, k: usize) -> bool {
    fn extend(graph: &Graph, v: usize, left: usize, seen: &mut [bool]) -> bool {
        if left == 0 {
            return true;
        }
        for &(w, _) in graph.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                let found = extend(graph, w, left - 1, seen);
                seen[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let n = graph.vertex_count();
    if k == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    (0..n).any(|s| {
        seen[s] = true;
        let found = extend(graph, s, k - 1, &mut seen);
        seen[s] = false;
        found
    })
}

/// Second k-path oracle: scans every ordering of the vertices and checks
/// whether its first `k` entries form a path. Limited to `n <= 11`.
pub fn has_k_path_permutations(graph: &Graph, k: usize) -> Result<bool> {
    let n = graph.vertex_count();
    if n > 11 {
        return Err(too_large("permutation scan needs n <= 11"));
    }
    if k == 0 {
        return Ok(true);
    }
    if k > n {
        return Ok(false);
    }
    let mut found = false;
    for_each_permutation(n, |perm| {
        if !found && perm[..k].windows(2).all(|w| graph.has_edge(w[0], w[1])) {
            found = true;
        }
    });
    Ok(found)
}

/// Branch and bound over members in index order, tracking used elements.
pub fn has_p_packing_bf(family: &SetFamily, p: usize) -> bool {
    fn search(sets: &[Vec<usize>], start: usize, need: usize, used: &mut [bool]) -> bool {
        if need == 0 {
            return true;
        }
        if sets.len() - start < need {
            return false;
        }
        for i in start..sets.len() {
            if sets.len() - i < need {
                return false;
            }
            if sets[i].iter().all(|&u| !used[u]) {
                sets[i].iter().for_each(|&u| used[u] = true);
                let found = search(sets, i + 1, need - 1, used);
                sets[i].iter().for_each(|&u| used[u] = false);
                if found {
                    return true;
                }
            }
        }
        false
    }
    search(family.sets(), 0, p, &mut vec![false; family.ground_size()])
}

/// Second packing oracle: every `p`-combination, checked pairwise.
pub fn has_p_packing_combinations(family: &SetFamily, p: usize) -> bool {
    let sets = family.sets();
    let mut found = false;
    for_each_combination(sets.len(), p, |idx| {
        let disjoint = idx
            .iter()
            .enumerate()
            .all(|(a, &i)| idx[a + 1..].iter().all(|&j| sets[i].iter().all(|u| !sets[j].contains(u))));
        found |= disjoint;
        !found
    });
    found
}

fn pairwise_disjoint(sets: &[&Vec<usize>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    sets.iter().flat_map(|s| s.iter()).all(|&u| seen.insert(u))
}

/// Every `p`-combination of members, checked for disjointness.
pub fn has_qdim_packing_bf(family: &PartiteFamily, p: usize) -> bool {
    let sets = family.sets();
    let mut found = false;
    for_each_combination(sets.len(), p, |idx| {
        let chosen: Vec<&Vec<usize>> = idx.iter().map(|&i| &sets[i]).collect();
        found |= pairwise_disjoint(&chosen);
        !found
    });
    found
}

/// Maximum matching of a 2-partite family by augmenting paths.
pub fn max_bipartite_matching(family: &PartiteFamily) -> Result<usize> {
    if family.dimensions() != 2 {
        return Err(Error::InvalidParameter("bipartite matching needs q = 2".into()));
    }
    let r = family.part_size();
    let mut adjacency = vec![Vec::new(); r];
    for (a, _) in family.sets().iter().enumerate() {
        adjacency[family.coordinate(a, 0)].push(family.coordinate(a, 1));
    }
    fn augment(u: usize, adjacency: &[Vec<usize>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
        for &v in &adjacency[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            if owner[v].is_none_or(|w| augment(w, adjacency, owner, visited)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; r];
    let mut size = 0;
    for u in 0..r {
        if augment(u, &adjacency, &mut owner, &mut vec![false; r]) {
            size += 1;
        }
    }
    Ok(size)
}

/// Backtracking proper edge colouring with `colors` colours.
pub fn edge_colorable_bf(graph: &Graph, colors: usize) -> bool {
    fn assign(graph: &Graph, e: usize, colors: usize, color: &mut [usize]) -> bool {
        if e == graph.edge_count() {
            return true;
        }
        let (u, v) = graph.edge(e);
        // symmetry: edge e may open at most one new colour
        let opened = color[..e].iter().copied().max().map_or(0, |c| c + 1);
        for c in 0..colors.min(opened + 1) {
            let clash = graph.neighbors(u).iter().chain(graph.neighbors(v)).any(|&(_, f)| f < e && color[f] == c);
            if !clash {
                color[e] = c;
                if assign(graph, e + 1, colors, color) {
                    return true;
                }
            }
        }
        color[e] = usize::MAX;
        false
    }
    let mut color = vec![usize::MAX; graph.edge_count()];
    assign(graph, 0, colors, &mut color)
}

/// Chromatic index: `Δ` or `Δ + 1`. Limited to 40 edges.
pub fn edge_chromatic_bf(graph: &Graph) -> Result<usize> {
    if graph.edge_count() > 40 {
        return Err(too_large("edge colouring search needs m <= 40"));
    }
    let delta = graph.max_degree();
    Ok(if edge_colorable_bf(graph, delta) { delta } else { delta + 1 })
}

// ---------------------------------------------------------------- k-path sums

#[derive(Clone, Debug)]
struct Walk {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

fn walks_from(graph: &Graph, s: usize, k: usize, simple: bool) -> Vec<Walk> {
    fn grow(graph: &Graph, k: usize, simple: bool, walk: &mut Walk, out: &mut Vec<Walk>) {
        if walk.vertices.len() == k {
            out.push(walk.clone());
            return;
        }
        let last = *walk.vertices.last().unwrap();
        for &(w, e) in graph.neighbors(last) {
            if simple && walk.vertices.contains(&w) {
                continue;
            }
            walk.vertices.push(w);
            walk.edges.push(e);
            grow(graph, k, simple, walk, out);
            walk.vertices.pop();
            walk.edges.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || s >= graph.vertex_count() {
        return out;
    }
    grow(graph, k, simple, &mut Walk { vertices: vec![s], edges: vec![] }, &mut out);
    out
}

struct WalkOccurrences {
    v1: Vec<usize>,
    e2: Vec<usize>,
}

/// Conditions (b)-(d) of admissibility, checked literally.
fn admissible_occurrences(
    graph: &Graph,
    walk: &Walk,
    partition: &VertexBipartition,
    k1: usize,
    l2: usize,
) -> Option<WalkOccurrences> {
    let v1: Vec<usize> = walk.vertices.iter().copied().filter(|&v| partition.in_v1(v)).collect();
    let e2: Vec<usize> = walk
        .edges
        .iter()
        .copied()
        .filter(|&e| {
            let (a, b) = graph.edge(e);
            !partition.in_v1(a) && !partition.in_v1(b)
        })
        .collect();
    if v1.len() != k1 || e2.len() != l2 {
        return None;
    }
    let vs = &walk.vertices;
    for i in 0..vs.len().saturating_sub(2) {
        let palindrome = vs[i] == vs[i + 2] && walk.edges[i] == walk.edges[i + 1];
        if palindrome && !partition.in_v1(vs[i]) && partition.in_v1(vs[i + 1]) {
            return None;
        }
    }
    Some(WalkOccurrences { v1, e2 })
}

fn walk_edge_product(walk: &Walk, assignment: &PathAssignment) -> FieldElement {
    walk.edges.iter().fold(assignment.field().one(), |acc, &e| acc * assignment.x(e))
}

/// Sum of monomials over all labeled admissible k-walks from `s` whose
/// labels avoid the masks, by listing every walk and every labeling.
#[allow(clippy::too_many_arguments)]
pub fn labeled_walk_sum_bf(
    graph: &Graph,
    s: usize,
    partition: &VertexBipartition,
    k: usize,
    k1: usize,
    l2: usize,
    avoided: (u64, u64),
    assignment: &PathAssignment,
) -> Result<FieldElement> {
    if k > 7 || graph.vertex_count() > 10 {
        return Err(too_large("walk enumeration needs k <= 7 and n <= 10"));
    }
    let field = assignment.field();
    let vertex_labels = allowed_labels(k1, avoided.0);
    let edge_labels = allowed_labels(l2, avoided.1);
    let mut total = field.zero();
    for walk in walks_from(graph, s, k, false) {
        let Some(occ) = admissible_occurrences(graph, &walk, partition, k1, l2) else {
            continue;
        };
        let base = walk_edge_product(&walk, assignment);
        for_each_tuple(&vertex_labels, k1, |kappa| {
            let with_y = occ.v1.iter().zip(kappa).fold(base, |acc, (&v, &i)| acc * assignment.y(v, i));
            for_each_tuple(&edge_labels, l2, |lambda| {
                total += occ.e2.iter().zip(lambda).fold(with_y, |acc, (&e, &i)| acc * assignment.z(e, i));
            });
        });
    }
    Ok(total)
}

/// Sum of monomials over bijectively labeled admissible k-paths from `s`.
pub fn bijective_path_sum_bf(
    graph: &Graph,
    s: usize,
    partition: &VertexBipartition,
    k: usize,
    k1: usize,
    l2: usize,
    assignment: &PathAssignment,
) -> Result<FieldElement> {
    if k > 8 || graph.vertex_count() > 12 {
        return Err(too_large("path enumeration needs k <= 8 and n <= 12"));
    }
    let field = assignment.field();
    let mut total = field.zero();
    for path in walks_from(graph, s, k, true) {
        let Some(occ) = admissible_occurrences(graph, &path, partition, k1, l2) else {
            continue;
        };
        let base = walk_edge_product(&path, assignment);
        for_each_permutation(k1, |kappa| {
            let with_y = occ.v1.iter().zip(kappa).fold(base, |acc, (&v, &i)| acc * assignment.y(v, i));
            for_each_permutation(l2, |lambda| {
                total += occ.e2.iter().zip(lambda).fold(with_y, |acc, (&e, &i)| acc * assignment.z(e, i));
            });
        });
    }
    Ok(total)
}

// ---------------------------------------------------------------- Tutte / permanent

/// Terms `s_{K,k}` for every `K ⊆ {0..m-1}` with `|K| in {1, 2}`, stored at
/// `(i, j)` with `i <= j` (`i == j` for singletons).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteTerms {
    order: usize,
    terms: Vec<Vec<FieldElement>>,
}

impl TutteTerms {
    pub fn new(order: usize, mut term: impl FnMut(usize, usize) -> Vec<FieldElement>) -> Self {
        let mut terms = vec![Vec::new(); order * order];
        for i in 0..order {
            for j in i..order {
                terms[i * order + j] = term(i, j);
            }
        }
        TutteTerms { order, terms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self, i: usize, j: usize) -> &[FieldElement] {
        &self.terms[i.min(j) * self.order + i.max(j)]
    }

    /// `t_ii = Σ_k s_{i,k}^2`, `t_ij = Σ_k s_{ij,k}`.
    pub fn matrix(&self, field: Field) -> FieldMatrix {
        FieldMatrix::from_fn(field, self.order, |i, j| {
            let s = self.terms(i, j);
            if i == j {
                s.iter().fold(field.zero(), |acc, &v| acc + v * v)
            } else {
                s.iter().fold(field.zero(), |acc, &v| acc + v)
            }
        })
    }
}

/// `Σ_ι ∏_{i <= ι(i)} Σ_k s_{{i,ι(i)},k}^2` over all involutions `ι`.
pub fn involution_sum_bf(field: Field, terms: &TutteTerms) -> Result<FieldElement> {
    if terms.order() > 10 {
        return Err(too_large("involution enumeration needs order <= 10"));
    }
    fn go(field: Field, terms: &TutteTerms, free: &mut Vec<bool>) -> FieldElement {
        let Some(i) = free.iter().position(|&f| f) else {
            return field.one();
        };
        let squares = |a: usize, b: usize| terms.terms(a, b).iter().fold(field.zero(), |acc, &v| acc + v * v);
        free[i] = false;
        let mut total = squares(i, i) * go(field, terms, free);
        for j in i + 1..terms.order() {
            if free[j] {
                free[j] = false;
                total += squares(i, j) * go(field, terms, free);
                free[j] = true;
            }
        }
        free[i] = true;
        total
    }
    Ok(go(field, terms, &mut vec![true; terms.order()]))
}

/// `Σ_σ ∏_i m_{i,σ(i)}` over all permutations.
pub fn permanent_char2_bf(matrix: &FieldMatrix) -> Result<FieldElement> {
    let n = matrix.order();
    if n > 9 {
        return Err(too_large("permanent enumeration needs order <= 9"));
    }
    let field = matrix.field();
    let mut total = field.zero();
    for_each_permutation(n, |sigma| {
        total += (0..n).fold(field.one(), |acc, i| acc * matrix.get(i, sigma[i]));
    });
    Ok(total)
}

// ---------------------------------------------------------------- packings

/// Sum over bijectively labeled p-packings `(A, σ, λ)` of
/// `∏ x_A ∏_{u1} y_{u1,σ(u1)} ∏_{(u,A)} z_{u,λ(u,A)}`, with `σ` running over
/// bijections `U1 -> U2` compatible with `A`.
pub fn bijective_qdim_sum_bf(family: &PartiteFamily, p: usize, assignment: &QdimAssignment) -> Result<FieldElement> {
    let (q, r) = (family.dimensions(), family.part_size());
    let labels = p * (q - 2);
    if r > 7 || labels > 8 || family.len() > 16 {
        return Err(too_large("packing enumeration needs r <= 7, p(q-2) <= 8, |F| <= 16"));
    }
    let field = assignment.field();
    let sets = family.sets();
    let mut total = field.zero();
    for_each_combination(sets.len(), p, |idx| {
        let chosen: Vec<&Vec<usize>> = idx.iter().map(|&i| &sets[i]).collect();
        if !pairwise_disjoint(&chosen) {
            return true;
        }
        let x = idx.iter().fold(field.one(), |acc, &a| acc * assignment.x(a));
        let fixed: Vec<(usize, usize)> = idx.iter().map(|&a| (family.coordinate(a, 0), family.coordinate(a, 1))).collect();
        let free_rows: Vec<usize> = (0..r).filter(|u| fixed.iter().all(|f| f.0 != *u)).collect();
        let free_cols: Vec<usize> = (0..r).filter(|u| fixed.iter().all(|f| f.1 != *u)).collect();
        let domain: Vec<usize> = chosen.iter().flat_map(|s| s[2..].iter().copied()).collect();
        for_each_permutation(free_rows.len(), |perm| {
            let y = fixed
                .iter()
                .copied()
                .chain(free_rows.iter().zip(perm).map(|(&u, &k)| (u, free_cols[k])))
                .fold(field.one(), |acc, (u1, u2)| acc * assignment.y(u1, u2));
            for_each_permutation(labels, |lambda| {
                let z = domain.iter().zip(lambda).fold(field.one(), |acc, (&u, &l)| acc * assignment.z(u, l));
                total += x * y * z;
            });
        });
        true
    });
    Ok(total)
}

/// Fixed points and transpositions of one involution.
type Involution = (Vec<usize>, Vec<(usize, usize)>);

/// Involutions on `points`.
fn involutions(points: &[usize]) -> Vec<Involution> {
    let Some((&first, rest)) = points.split_first() else {
        return vec![(Vec::new(), Vec::new())];
    };
    let mut out = Vec::new();
    for (mut fixed, pairs) in involutions(rest) {
        fixed.push(first);
        out.push((fixed, pairs));
    }
    for (i, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        for (fixed, mut pairs) in involutions(&remaining) {
            pairs.push((first, partner));
            out.push((fixed, pairs));
        }
    }
    out
}

/// Sum over bijectively labeled `(p0, p1, p2)`-packings `(A, ι, λ)` of
/// `∏ x_A^2 ∏_{i <= ι(i)} y_{{i,ι(i)}}^2 ∏_{(u,A)} z_{u,λ(u,A)}^2`, with `ι`
/// running over involutions of `U1` compatible with `A`.
pub fn bijective_packing_sum_bf(
    family: &SetFamily,
    partition: &GroundBipartition,
    split: (usize, usize, usize),
    assignment: &PackingAssignment,
) -> Result<FieldElement> {
    let (p0, p1, p2) = split;
    let p = p0 + p1 + p2;
    let q = family.member_size();
    let labels = q * p0 + (q - 1) * p1 + q.saturating_sub(2) * p2;
    let n = family.ground_size();
    let u1: Vec<usize> = (0..n).filter(|&u| partition.in_u1(u)).collect();
    if labels > 8 || u1.len() > 8 || family.len() > 20 {
        return Err(too_large("packing enumeration needs |L| <= 8, n1 <= 8, |F| <= 20"));
    }
    let field = assignment.field();
    let sets = family.sets();
    let mut total = field.zero();
    for_each_combination(sets.len(), p, |idx| {
        let chosen: Vec<&Vec<usize>> = idx.iter().map(|&i| &sets[i]).collect();
        if !pairwise_disjoint(&chosen) {
            return true;
        }
        let meets: Vec<Vec<usize>> =
            chosen.iter().map(|s| s.iter().copied().filter(|&u| partition.in_u1(u)).collect()).collect();
        let count = |j: usize| meets.iter().filter(|m| m.len() == j).count();
        if meets.iter().any(|m| m.len() > 2) || (count(0), count(1), count(2)) != (p0, p1, p2) {
            return true;
        }
        let covered: Vec<usize> = meets.iter().flatten().copied().collect();
        let free: Vec<usize> = u1.iter().copied().filter(|u| !covered.contains(u)).collect();
        let x = idx.iter().fold(field.one(), |acc, &a| acc * assignment.x(a).square());
        let forced = meets.iter().fold(field.one(), |acc, m| match m[..] {
            [u] => acc * assignment.y_single(u).square(),
            [u, v] => acc * assignment.y_pair(u, v).square(),
            _ => acc,
        });
        let domain: Vec<usize> =
            chosen.iter().flat_map(|s| s.iter().copied().filter(|&u| !partition.in_u1(u))).collect();
        for (fixed, pairs) in involutions(&free) {
            let y = fixed.iter().fold(forced, |acc, &u| acc * assignment.y_single(u).square());
            let y = pairs.iter().fold(y, |acc, &(u, v)| acc * assignment.y_pair(u, v).square());
            for_each_permutation(labels, |lambda| {
                let z = domain.iter().zip(lambda).fold(field.one(), |acc, (&u, &l)| acc * assignment.z(u, l).square());
                total += x * y * z;
            });
        }
        true
    });
    Ok(total)
}

// ---------------------------------------------------------------- matchings

/// All matchings (`perfect_only`: only perfect ones) as edge-id lists.
fn matchings(graph: &Graph, perfect_only: bool) -> Vec<Vec<usize>> {
    fn grow(graph: &Graph, e: usize, used: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if e == graph.edge_count() {
            out.push(current.clone());
            return;
        }
        grow(graph, e + 1, used, current, out);
        let (u, v) = graph.edge(e);
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            current.push(e);
            grow(graph, e + 1, used, current, out);
            current.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    grow(graph, 0, &mut vec![false; graph.vertex_count()], &mut Vec::new(), &mut out);
    if perfect_only {
        out.retain(|m| 2 * m.len() == graph.vertex_count());
    }
    out
}

/// Ordered `p`-tuples of (perfect) matchings. In `General` mode only tuples
/// with `m` edge occurrences in total are kept.
fn matching_tuples(graph: &Graph, p: usize, mode: ColoringMode) -> Result<Vec<Vec<Vec<usize>>>> {
    let pool = matchings(graph, mode == ColoringMode::Regular);
    if (pool.len() as u64).saturating_pow(p as u32) > ENUMERATION_LIMIT {
        return Err(too_large("too many matching tuples"));
    }
    let mut out = Vec::new();
    let choices: Vec<usize> = (0..pool.len()).collect();
    for_each_tuple(&choices, p, |t| {
        let tuple: Vec<Vec<usize>> = t.iter().map(|&i| pool[i].clone()).collect();
        let size: usize = tuple.iter().map(Vec::len).sum();
        if mode == ColoringMode::Regular || size == graph.edge_count() {
            out.push(tuple);
        }
    });
    Ok(out)
}

fn tuple_x(tuple: &[Vec<usize>], assignment: &ColoringAssignment) -> FieldElement {
    tuple
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.iter().map(move |&e| (e, i)))
        .fold(assignment.field().one(), |acc, (e, i)| acc * assignment.x(e, i).square())
}

/// Sum over labeled p-tuples whose labels avoid `avoided` of
/// `∏_{(e,i)} x_{e,i}^2 y_{e,λ(e,i)}^2`, every labeling listed.
pub fn labeled_matching_tuple_sum_bf(
    graph: &Graph,
    mode: ColoringMode,
    avoided: u64,
    assignment: &ColoringAssignment,
) -> Result<FieldElement> {
    let p = assignment.matchings();
    let allowed = allowed_labels(assignment.label_count(), avoided);
    let field = assignment.field();
    let mut total = field.zero();
    for tuple in matching_tuples(graph, p, mode)? {
        let domain: Vec<usize> = tuple.iter().flatten().copied().collect();
        if (allowed.len() as u64).saturating_pow(domain.len() as u32) > ENUMERATION_LIMIT {
            return Err(too_large("too many labelings"));
        }
        let x = tuple_x(&tuple, assignment);
        for_each_tuple(&allowed, domain.len(), |lambda| {
            total += domain.iter().zip(lambda).fold(x, |acc, (&e, &l)| acc * assignment.y(e, l).square());
        });
    }
    Ok(total)
}

/// Sum over bijectively labeled p-tuples of pairwise edge-disjoint (perfect)
/// matchings of `∏_{(e,i)} x_{e,i}^2 y_{e,λ(e,i)}^2`.
pub fn bijective_matching_tuple_sum_bf(
    graph: &Graph,
    mode: ColoringMode,
    assignment: &ColoringAssignment,
) -> Result<FieldElement> {
    let p = assignment.matchings();
    let labels = assignment.label_count();
    if labels > 9 {
        return Err(too_large("bijective labelings need |L| <= 9"));
    }
    let field = assignment.field();
    let mut total = field.zero();
    for tuple in matching_tuples(graph, p, mode)? {
        let domain: Vec<usize> = tuple.iter().flatten().copied().collect();
        let mut distinct = domain.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != domain.len() || domain.len() != labels {
            continue;
        }
        let x = tuple_x(&tuple, assignment);
        for_each_permutation(labels, |lambda| {
            total += domain.iter().zip(lambda).fold(x, |acc, (&e, &l)| acc * assignment.y(e, l).square());
        });
    }
    Ok(total)
}

// ---------------------------------------------------------------- dispatch

/// One sieve instance together with the assignment it is evaluated at.
#[derive(Clone, Copy, Debug)]
pub enum SieveInstance<'a> {
    Path {
        graph: &'a Graph,
        start: usize,
        partition: &'a VertexBipartition,
        k: usize,
        k1: usize,
        l2: usize,
        assignment: &'a PathAssignment,
    },
    Qdim {
        family: &'a PartiteFamily,
        p: usize,
        assignment: &'a QdimAssignment,
    },
    Packing {
        family: &'a SetFamily,
        partition: &'a GroundBipartition,
        split: (usize, usize, usize),
        assignment: &'a PackingAssignment,
    },
    Coloring {
        graph: &'a Graph,
        mode: ColoringMode,
        assignment: &'a ColoringAssignment,
    },
}

/// The bijectively labeled target polynomial of `instance`, evaluated by
/// direct enumeration.
pub fn bijective_monomial_sum_bf(instance: SieveInstance<'_>) -> Result<FieldElement> {
    match instance {
        SieveInstance::Path { graph, start, partition, k, k1, l2, assignment } => {
            bijective_path_sum_bf(graph, start, partition, k, k1, l2, assignment)
        }
        SieveInstance::Qdim { family, p, assignment } => bijective_qdim_sum_bf(family, p, assignment),
        SieveInstance::Packing { family, partition, split, assignment } => {
            bijective_packing_sum_bf(family, partition, split, assignment)
        }
        SieveInstance::Coloring { graph, mode, assignment } => bijective_matching_tuple_sum_bf(graph, mode, assignment),
    }
}

/// Rough count of structures times labelings, for callers that want to skip
/// instances before enumerating.
pub fn labeling_count(labels: usize) -> u64 {
    factorial(labels)
}
