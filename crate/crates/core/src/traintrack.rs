//! Fat train tracks: ribbon graphs with a two-gate smoothing at every vertex.
//!
//! Edge `e` has half-edges `2e` and `2e + 1`, so `pair(h) = h ^ 1`. Each vertex
//! stores its half-edges in counterclockwise order. Edges are either real or
//! infinitesimal; transition matrices of circuits are reported on the real
//! edges.
//!
//! Transition matrices act on weight column vectors, `w_new = M w_old`. A
//! circuit with moves `M_1, ..., M_k` and relabeling permutation `P` has
//! transition matrix `P M_k ... M_1`. This order reproduces the known
//! genus-two composition matrix entry for entry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{domain, Error, Result};
use crate::matrix::{self, IntMatrix};

pub type Edge = usize;
pub type HalfEdge = usize;
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    A,
    B,
}

impl Gate {
    pub fn other(self) -> Gate {
        match self {
            Gate::A => Gate::B,
            Gate::B => Gate::A,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatTrainTrack {
    infinitesimal: Vec<bool>,
    labels: Vec<String>,
    vertex: Vec<Vertex>,
    order: Vec<Vec<HalfEdge>>,
    gate: Vec<Gate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    /// Half-edges along the component, each traversed away from its vertex.
    pub half_edges: Vec<HalfEdge>,
    pub cusps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpace {
    pub dim: usize,
    /// The real edges, when their weights form coordinates on the space.
    pub basis_edges: Option<Vec<Edge>>,
    /// Rank of the projection of the space onto the real-edge coordinates.
    pub real_rank: usize,
    /// One row per vertex: `+1` for each gate-A half-edge, `-1` for gate B.
    pub constraint_matrix: IntMatrix,
    /// Integer vectors spanning the space.
    #[serde(skip)]
    pub kernel_basis: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldMove {
    pub e1: Edge,
    pub e2: Edge,
    pub at: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingCircuit {
    pub start: FatTrainTrack,
    pub moves: Vec<FoldMove>,
    /// Image in `start` of each half-edge of the folded track.
    pub relabel: Vec<HalfEdge>,
}

impl FatTrainTrack {
    /// Builds a track from per-vertex counterclockwise half-edge lists and
    /// per-half-edge gates.
    pub fn new(
        labels: Vec<String>,
        infinitesimal: Vec<bool>,
        order: Vec<Vec<HalfEdge>>,
        gate: Vec<Gate>,
    ) -> Result<Self> {
        let ne = labels.len();
        if infinitesimal.len() != ne || gate.len() != 2 * ne {
            return Err(Error::InvalidTrack("inconsistent edge and half-edge counts".into()));
        }
        let mut vertex = vec![usize::MAX; 2 * ne];
        for (v, hs) in order.iter().enumerate() {
            for &h in hs {
                if h >= 2 * ne {
                    return Err(Error::InvalidTrack(format!("half-edge {h} out of range")));
                }
                if vertex[h] != usize::MAX {
                    return Err(Error::InvalidTrack(format!("half-edge {h} appears twice")));
                }
                vertex[h] = v;
            }
        }
        if let Some(h) = vertex.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidTrack(format!("half-edge {h} has no vertex")));
        }
        let mut t = FatTrainTrack {
            infinitesimal,
            labels,
            vertex,
            order,
            gate,
        };
        t.normalize();
        t.validate()?;
        Ok(t)
    }

    /// Starts every cyclic order at its smallest half-edge.
    fn normalize(&mut self) {
        for o in &mut self.order {
            if let Some(i) = o.iter().enumerate().min_by_key(|&(_, h)| *h).map(|(i, _)| i) {
                o.rotate_left(i);
            }
        }
    }

    fn validate(&self) -> Result<()> {
        for (v, hs) in self.order.iter().enumerate() {
            if hs.len() < 3 {
                return Err(Error::InvalidTrack(format!("vertex {v} has degree {}", hs.len())));
            }
            let changes = (0..hs.len())
                .filter(|&i| self.gate[hs[i]] != self.gate[hs[(i + 1) % hs.len()]])
                .count();
            if changes != 2 {
                return Err(Error::InvalidTrack(format!(
                    "gates at vertex {v} are not two non-empty contiguous arcs"
                )));
            }
        }
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.labels.len()
    }

    pub fn num_half_edges(&self) -> usize {
        2 * self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.order.len()
    }

    pub fn pair(h: HalfEdge) -> HalfEdge {
        h ^ 1
    }

    pub fn vertex(&self, h: HalfEdge) -> Vertex {
        self.vertex[h]
    }

    pub fn gate(&self, h: HalfEdge) -> Gate {
        self.gate[h]
    }

    pub fn order_at(&self, v: Vertex) -> &[HalfEdge] {
        &self.order[v]
    }

    pub fn label(&self, e: Edge) -> &str {
        &self.labels[e]
    }

    pub fn edge_by_label(&self, label: &str) -> Option<Edge> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_infinitesimal(&self, e: Edge) -> bool {
        self.infinitesimal[e]
    }

    pub fn real_edges(&self) -> Vec<Edge> {
        (0..self.num_edges()).filter(|&e| !self.infinitesimal[e]).collect()
    }

    fn pos(&self, h: HalfEdge) -> usize {
        self.order[self.vertex[h]].iter().position(|&x| x == h).unwrap()
    }

    pub fn cyclic_next(&self, h: HalfEdge) -> HalfEdge {
        let o = &self.order[self.vertex[h]];
        o[(self.pos(h) + 1) % o.len()]
    }

    pub fn cyclic_prev(&self, h: HalfEdge) -> HalfEdge {
        let o = &self.order[self.vertex[h]];
        o[(self.pos(h) + o.len() - 1) % o.len()]
    }

    /// Faces of the ribbon surface, traced by `h -> cyclic_next(pair(h))`.
    /// A corner between consecutive half-edges of the same gate is a cusp.
    pub fn boundary_components(&self) -> Vec<BoundaryComponent> {
        let mut seen = vec![false; self.num_half_edges()];
        let mut out = Vec::new();
        for h0 in 0..self.num_half_edges() {
            if seen[h0] {
                continue;
            }
            let mut comp = BoundaryComponent {
                half_edges: Vec::new(),
                cusps: 0,
            };
            let mut h = h0;
            while !seen[h] {
                seen[h] = true;
                comp.half_edges.push(h);
                let hp = Self::pair(h);
                let hn = self.cyclic_next(hp);
                if self.gate[hp] == self.gate[hn] {
                    comp.cusps += 1;
                }
                h = hn;
            }
            out.push(comp);
        }
        out
    }

    /// Sorted cusp counts of the boundary components.
    pub fn boundary_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.boundary_components().iter().map(|c| c.cusps).collect();
        v.sort_unstable();
        v
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    /// Genus of the closed surface obtained by capping every boundary
    /// component with a disc.
    pub fn genus_closed(&self) -> Result<usize> {
        let b = self.boundary_components().len() as i64;
        let x = 2 - self.euler_characteristic() - b;
        if x < 0 || x % 2 != 0 {
            return Err(Error::Consistency(format!(
                "chi + b = {} is not of the form 2 - 2g",
                self.euler_characteristic() + b
            )));
        }
        Ok((x / 2) as usize)
    }

    /// Whether edges can be oriented so that, at each vertex, one gate is all
    /// incoming and the other all outgoing.
    pub fn is_orientable(&self) -> bool {
        // s(v) flips the roles of the gates at v; edge e forces
        // s(u) xor s(v) = 1 xor [gate(2e) = A] xor [gate(2e+1) = A].
        let nv = self.num_vertices();
        let mut adj: Vec<Vec<(Vertex, bool)>> = vec![Vec::new(); nv];
        for e in 0..self.num_edges() {
            let (h0, h1) = (2 * e, 2 * e + 1);
            let c = !((self.gate[h0] == Gate::A) ^ (self.gate[h1] == Gate::A));
            let (u, v) = (self.vertex[h0], self.vertex[h1]);
            adj[u].push((v, c));
            adj[v].push((u, c));
        }
        let mut side: Vec<Option<bool>> = vec![None; nv];
        for root in 0..nv {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &(w, c) in &adj[u] {
                    let want = su ^ c;
                    match side[w] {
                        Some(sw) if sw != want => return false,
                        Some(_) => {}
                        None => {
                            side[w] = Some(want);
                            stack.push(w);
                        }
                    }
                }
            }
        }
        true
    }

    pub fn switch_matrix(&self) -> IntMatrix {
        self.order
            .iter()
            .map(|hs| {
                let mut row = vec![0i64; self.num_edges()];
                for &h in hs {
                    row[h / 2] += if self.gate[h] == Gate::A { 1 } else { -1 };
                }
                row
            })
            .collect()
    }

    /// Solution space of the switch conditions, by exact rational elimination.
    pub fn weight_space(&self) -> WeightSpace {
        let c = self.switch_matrix();
        let ne = self.num_edges();
        let kernel = integer_kernel(&c, ne);
        let real = self.real_edges();
        let proj: Vec<Vec<BigInt>> = kernel
            .iter()
            .map(|v| real.iter().map(|&e| v[e].clone()).collect())
            .collect();
        let real_rank = rank(&proj);
        let dim = kernel.len();
        WeightSpace {
            dim,
            basis_edges: (real_rank == dim && real.len() == dim).then_some(real),
            real_rank,
            constraint_matrix: c,
            kernel_basis: kernel,
        }
    }

    /// Whether `w` satisfies every switch condition.
    pub fn satisfies_switch(&self, w: &[BigInt]) -> bool {
        self.switch_matrix().iter().all(|row| {
            row.iter()
                .zip(w)
                .fold(BigInt::zero(), |acc, (a, x)| acc + BigInt::from(*a) * x)
                .is_zero()
        })
    }

    fn fold_error<T>(&self, e1: Edge, e2: Edge, at: Vertex, reason: impl Into<String>) -> Result<T> {
        Err(Error::Fold {
            e1,
            e2,
            vertex: at,
            reason: reason.into(),
        })
    }

    /// Folds `e1` over `e2` at the cusp they form at `at`, without absorbing
    /// infinitesimal edges. The matrix is `I + E_{e2,e1}` on edge space.
    pub fn fold_elementary(&self, e1: Edge, e2: Edge, at: Vertex) -> Result<(FatTrainTrack, IntMatrix)> {
        let ne = self.num_edges();
        if e1 >= ne || e2 >= ne || at >= self.num_vertices() {
            return self.fold_error(e1, e2, at, "edge or vertex out of range");
        }
        if e1 == e2 {
            return self.fold_error(e1, e2, at, "an edge cannot be folded over itself");
        }
        for h1 in [2 * e1, 2 * e1 + 1] {
            for h2 in [2 * e2, 2 * e2 + 1] {
                if self.vertex[h1] != at || self.vertex[h2] != at || self.gate[h1] != self.gate[h2] {
                    continue;
                }
                let before = if self.cyclic_next(h2) == h1 {
                    true
                } else if self.cyclic_next(h1) == h2 {
                    false
                } else {
                    continue;
                };
                let h2p = Self::pair(h2);
                let u = self.vertex[h2p];
                if u == at {
                    return self.fold_error(e1, e2, at, "folding over a loop is not supported");
                }
                let neighbour = if before { self.cyclic_prev(h2p) } else { self.cyclic_next(h2p) };
                if self.gate[neighbour] == self.gate[h2p] {
                    return self.fold_error(
                        e1,
                        e2,
                        at,
                        format!("the far end of edge {e2} at vertex {u} has no room on the opposite gate"),
                    );
                }
                if self.order[at].len() <= 3 {
                    return self.fold_error(e1, e2, at, format!("vertex {at} would become bivalent"));
                }
                let mut t = self.clone();
                t.order[at].retain(|&x| x != h1);
                let i = t.order[u].iter().position(|&x| x == h2p).unwrap();
                t.order[u].insert(if before { i } else { i + 1 }, h1);
                t.vertex[h1] = u;
                t.gate[h1] = self.gate[h2p].other();
                t.normalize();
                t.validate()
                    .or_else(|e| self.fold_error(e1, e2, at, e.to_string()))?;
                let mut m = matrix::identity(ne);
                m[e2][e1] += 1;
                return Ok((t, m));
            }
        }
        self.fold_error(e1, e2, at, "the edges do not meet in a cusp at this vertex")
    }

    /// Folds `e1` over `e2` at `at`, then keeps folding `e1` over any
    /// infinitesimal edge it now meets in a cusp. Returns the composite
    /// edge-space matrix.
    pub fn fold(&self, e1: Edge, e2: Edge, at: Vertex) -> Result<(FatTrainTrack, IntMatrix)> {
        let (mut t, mut m) = self.fold_elementary(e1, e2, at)?;
        for _ in 0..=self.num_edges() {
            let next = [2 * e1, 2 * e1 + 1].into_iter().find_map(|h| {
                [t.cyclic_next(h), t.cyclic_prev(h)]
                    .into_iter()
                    .find(|&nb| t.infinitesimal[nb / 2] && nb / 2 != e1 && t.gate[nb] == t.gate[h])
                    .map(|nb| (nb / 2, t.vertex[h]))
            });
            let Some((p, v)) = next else {
                return Ok((t, m));
            };
            let (t2, m2) = t.fold_elementary(e1, p, v)?;
            t = t2;
            m = matrix::mul(&m2, &m);
        }
        self.fold_error(e1, e2, at, "absorption of infinitesimal edges does not terminate")
    }

    /// All fat-graph isomorphisms from `self` to `other` that preserve edge
    /// kinds and the gate partition at each vertex, as half-edge maps.
    pub fn isomorphisms(&self, other: &FatTrainTrack) -> Vec<Vec<HalfEdge>> {
        let n = self.num_half_edges();
        if n != other.num_half_edges() || self.num_vertices() != other.num_vertices() || n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for img in 0..n {
            let mut map = vec![usize::MAX; n];
            map[0] = img;
            let mut stack = vec![0];
            let mut ok = true;
            while let Some(h) = stack.pop() {
                let g = map[h];
                for (a, b) in [
                    (Self::pair(h), Self::pair(g)),
                    (self.cyclic_next(h), other.cyclic_next(g)),
                ] {
                    if map[a] == usize::MAX {
                        map[a] = b;
                        stack.push(a);
                    } else if map[a] != b {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok || map.contains(&usize::MAX) {
                continue;
            }
            let kinds = (0..n).all(|h| self.infinitesimal[h / 2] == other.infinitesimal[map[h] / 2]);
            let gates = (0..n).all(|h| {
                let nx = self.cyclic_next(h);
                (self.gate[h] == self.gate[nx]) == (other.gate[map[h]] == other.gate[map[nx]])
            });
            if kinds && gates {
                out.push(map);
            }
        }
        out
    }

    /// Whether `map` (half-edges of `self` to half-edges of `other`) is an
    /// isomorphism of the kind returned by [`Self::isomorphisms`].
    pub fn is_isomorphism(&self, other: &FatTrainTrack, map: &[HalfEdge]) -> bool {
        let n = self.num_half_edges();
        if map.len() != n || other.num_half_edges() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &g in map {
            if g >= n || hit[g] {
                return false;
            }
            hit[g] = true;
        }
        (0..n).all(|h| {
            let nx = self.cyclic_next(h);
            map[Self::pair(h)] == Self::pair(map[h])
                && map[nx] == other.cyclic_next(map[h])
                && self.infinitesimal[h / 2] == other.infinitesimal[map[h] / 2]
                && (self.gate[h] == self.gate[nx]) == (other.gate[map[h]] == other.gate[map[nx]])
        })
    }
}

/// Integer spanning set of the right kernel of `c` (columns `ncols`).
fn integer_kernel(c: &IntMatrix, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = c
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..ncols {
                    let d = &f * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            let den = v.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect()
}

fn rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..ncols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Permutation matrix of a relabeling: entry `(g(e), e)` is one when edge `e`
/// of the folded track maps to edge `g(e)` of the start track.
pub fn relabel_matrix(relabel: &[HalfEdge]) -> IntMatrix {
    let ne = relabel.len() / 2;
    let mut p = vec![vec![0i64; ne]; ne];
    for e in 0..ne {
        p[relabel[2 * e] / 2][e] = 1;
    }
    p
}

impl FoldingCircuit {
    /// Runs the moves, returning the folded track and the product of the
    /// move matrices on edge space.
    pub fn run(&self) -> Result<(FatTrainTrack, IntMatrix)> {
        let mut t = self.start.clone();
        let mut m = matrix::identity(t.num_edges());
        for (k, mv) in self.moves.iter().enumerate() {
            let (t2, mk) = t.fold(mv.e1, mv.e2, mv.at).map_err(|e| Error::CircuitStep {
                step: k + 1,
                source: Box::new(e),
            })?;
            t = t2;
            m = matrix::mul(&mk, &m);
        }
        Ok((t, m))
    }

    /// Composite matrix `P M_k ... M_1` on all edges.
    pub fn edge_matrix(&self) -> Result<IntMatrix> {
        let (t, m) = self.run()?;
        if !t.is_isomorphism(&self.start, &self.relabel) {
            return Err(Error::CircuitStep {
                step: self.moves.len() + 1,
                source: Box::new(Error::InvalidTrack(
                    "the relabeling is not an isomorphism back to the start track".into(),
                )),
            });
        }
        Ok(matrix::mul(&relabel_matrix(&self.relabel), &m))
    }
}

/// Transition matrix of the circuit on the real edges (in increasing edge
/// order) and the digraph with that adjacency matrix.
pub fn circuit_transition_matrix(c: &FoldingCircuit) -> Result<(IntMatrix, Digraph)> {
    let full = c.edge_matrix()?;
    let real = c.start.real_edges();
    let m = matrix::submatrix(&full, &real);
    let d = Digraph::from_matrix(&m)?;
    Ok((m, d))
}

fn real_label(k: usize, count: usize) -> String {
    if count <= 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("r{k}")
    }
}

/// The track for the n-th member of the family: a central `3n`-gon of
/// infinitesimal edges meeting in cusps, with `2n` real edges attached
/// smoothly. Vertices `0..n` are four-valent, the rest trivalent.
pub fn family_traintrack(n: usize) -> Result<FatTrainTrack> {
    if n < 2 {
        return domain(format!("the family starts at n = 2, got n = {n}"));
    }
    let big = 3 * n;
    // Real edges as (vertex, slot) endpoint pairs; slot 1 exists only on
    // four-valent vertices.
    let mut ends: Vec<((usize, usize), (usize, usize))> = vec![((0, 0), (n - 1, 0))];
    ends.extend((0..n).map(|i| ((i, 1), (i + 2 * n - 1, 0))));
    ends.extend((1..n - 1).map(|i| ((i, 0), (i + n - 1, 0))));
    ends.push(((2 * n - 2, 0), (3 * n - 1, 0)));
    debug_assert_eq!(ends.len(), 2 * n);

    let ne = big + 2 * n;
    let mut labels: Vec<String> = (0..big).map(|i| format!("p{i}")).collect();
    labels.extend((0..2 * n).map(|k| real_label(k, 2 * n)));
    let mut infinitesimal = vec![true; big];
    infinitesimal.extend(std::iter::repeat_n(false, 2 * n));

    let mut slot: BTreeMap<(usize, usize), HalfEdge> = BTreeMap::new();
    for (k, (x, y)) in ends.iter().enumerate() {
        let e = big + k;
        slot.insert(*x, 2 * e);
        slot.insert(*y, 2 * e + 1);
    }
    let mut gate = vec![Gate::A; 2 * ne];
    let order: Vec<Vec<HalfEdge>> = (0..big)
        .map(|i| {
            let mut o = vec![2 * i, 2 * ((i + big - 1) % big) + 1];
            let slots = if i < n { 2 } else { 1 };
            for s in 0..slots {
                let h = slot[&(i, s)];
                gate[h] = Gate::B;
                o.push(h);
            }
            o
        })
        .collect();
    FatTrainTrack::new(labels, infinitesimal, order, gate)
}

/// The three-fold circuit on [`family_traintrack`] whose transition matrix
/// has characteristic polynomial `LT_{1,n}`, closed up by the rotation
/// `v_i -> v_{i+1}` of the polygon.
pub fn family_circuit(n: usize) -> Result<FoldingCircuit> {
    let start = family_traintrack(n)?;
    let big = 3 * n;
    let a = big;
    let s = |i: usize| big + 1 + i;
    let f = |i: usize| big + 1 + n + (i - 1);
    let t_edge = big + 2 * n - 1;
    let moves = if n == 2 {
        vec![
            FoldMove { e1: a, e2: s(1), at: 1 },
            FoldMove { e1: s(0), e2: a, at: 0 },
            FoldMove { e1: s(0), e2: s(1), at: 4 },
        ]
    } else {
        vec![
            FoldMove { e1: s(n - 1), e2: a, at: n - 1 },
            FoldMove { e1: s(n - 1), e2: t_edge, at: 3 * n - 1 },
            FoldMove { e1: f(n - 2), e2: s(n - 1), at: 2 * n - 3 },
        ]
    };
    let mut c = FoldingCircuit {
        start,
        moves,
        relabel: Vec::new(),
    };
    let (end, _) = c.run()?;
    let rotation = end.isomorphisms(&c.start).into_iter().find(|m| {
        (0..end.num_half_edges()).all(|h| c.start.vertex(m[h]) == (end.vertex(h) + 1) % big)
    });
    c.relabel = rotation.ok_or_else(|| {
        Error::Consistency(format!("no rotation closes the family circuit for n = {n}"))
    })?;
    Ok(c)
}

/// Action on the two real edges of the simplest hyperbolic braid track.
pub fn simplest_braid_matrix() -> IntMatrix {
    vec![vec![1, 1], vec![1, 2]]
}

/// Track of the simplest hyperbolic braid: two real edges `a`, `b` joining
/// three vertices, each vertex carrying an infinitesimal loop around a
/// puncture.
pub fn simplest_braid_track() -> FatTrainTrack {
    // Edges: 0 = a (v0-v1), 1 = b (v1-v2), 2..4 = loops at v0, v1, v2.
    let labels = ["a", "b", "l0", "l1", "l2"].map(String::from).to_vec();
    let infinitesimal = vec![false, false, true, true, true];
    let order = vec![vec![4, 5, 0], vec![6, 7, 1, 2], vec![8, 9, 3]];
    let mut gate = vec![Gate::B; 10];
    gate[4..].fill(Gate::A);
    FatTrainTrack::new(labels, infinitesimal, order, gate).expect("valid track")
}

#[derive(Serialize, Deserialize)]
struct TrackJson {
    half_edges: Vec<HalfEdge>,
    pair: BTreeMap<HalfEdge, HalfEdge>,
    vertex: BTreeMap<HalfEdge, Vertex>,
    cyclic_next: BTreeMap<HalfEdge, HalfEdge>,
    gate: BTreeMap<HalfEdge, Gate>,
    #[serde(default)]
    infinitesimal: Vec<Edge>,
    #[serde(default)]
    labels: BTreeMap<Edge, String>,
}

impl Serialize for FatTrainTrack {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.num_half_edges();
        TrackJson {
            half_edges: (0..n).collect(),
            pair: (0..n).map(|h| (h, Self::pair(h))).collect(),
            vertex: (0..n).map(|h| (h, self.vertex[h])).collect(),
            cyclic_next: (0..n).map(|h| (h, self.cyclic_next(h))).collect(),
            gate: (0..n).map(|h| (h, self.gate[h])).collect(),
            infinitesimal: (0..self.num_edges()).filter(|&e| self.infinitesimal[e]).collect(),
            labels: self.labels.iter().cloned().enumerate().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FatTrainTrack {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TrackJson::deserialize(d)?;
        FatTrainTrack::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<TrackJson> for FatTrainTrack {
    type Error = Error;
    fn try_from(j: TrackJson) -> Result<Self> {
        let n = j.half_edges.len();
        if !n.is_multiple_of(2) || j.half_edges.iter().copied().ne(0..n) {
            return Err(Error::InvalidTrack("half-edges must be 0..2E".into()));
        }
        for h in 0..n {
            if j.pair.get(&h) != Some(&(h ^ 1)) {
                return Err(Error::InvalidTrack(format!(
                    "pair({h}) must be {} (edge e has half-edges 2e and 2e+1)",
                    h ^ 1
                )));
            }
        }
        let get = |m: &BTreeMap<usize, usize>, h: usize, what: &str| {
            m.get(&h)
                .copied()
                .ok_or_else(|| Error::InvalidTrack(format!("missing {what} for half-edge {h}")))
        };
        let nv = (0..n).map(|h| get(&j.vertex, h, "vertex")).collect::<Result<Vec<_>>>()?;
        let nvert = nv.iter().max().map_or(0, |m| m + 1);
        let mut order: Vec<Vec<HalfEdge>> = vec![Vec::new(); nvert];
        for v in 0..nvert {
            let Some(first) = (0..n).find(|&h| nv[h] == v) else {
                return Err(Error::InvalidTrack(format!("vertex {v} has no half-edges")));
            };
            let mut h = first;
            loop {
                order[v].push(h);
                h = get(&j.cyclic_next, h, "cyclic_next")?;
                if h >= n || nv[h] != v {
                    return Err(Error::InvalidTrack(format!("cyclic_next leaves vertex {v}")));
                }
                if h == first {
                    break;
                }
                if order[v].len() > n {
                    return Err(Error::InvalidTrack("cyclic_next is not a permutation".into()));
                }
            }
            if order[v].len() != nv.iter().filter(|&&x| x == v).count() {
                return Err(Error::InvalidTrack(format!(
                    "cyclic_next at vertex {v} is not a single cycle"
                )));
            }
        }
        let gate = (0..n)
            .map(|h| {
                j.gate
                    .get(&h)
                    .copied()
                    .ok_or_else(|| Error::InvalidTrack(format!("missing gate for half-edge {h}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let ne = n / 2;
        let mut infinitesimal = vec![false; ne];
        for &e in &j.infinitesimal {
            if e >= ne {
                return Err(Error::InvalidTrack(format!("edge {e} out of range")));
            }
            infinitesimal[e] = true;
        }
        let labels = (0..ne)
            .map(|e| j.labels.get(&e).cloned().unwrap_or_else(|| format!("e{e}")))
            .collect();
        FatTrainTrack::new(labels, infinitesimal, order, gate)
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    start: FatTrainTrack,
    moves: Vec<MoveJson>,
    relabel: BTreeMap<HalfEdge, HalfEdge>,
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    fold: [Edge; 2],
    at: Vertex,
}

impl Serialize for FoldingCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircuitJson {
            start: self.start.clone(),
            moves: self
                .moves
                .iter()
                .map(|m| MoveJson {
                    fold: [m.e1, m.e2],
                    at: m.at,
                })
                .collect(),
            relabel: self.relabel.iter().copied().enumerate().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FoldingCircuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CircuitJson::deserialize(d)?;
        let n = j.start.num_half_edges();
        let relabel = (0..n)
            .map(|h| j.relabel.get(&h).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| serde::de::Error::custom("relabel must map every half-edge"))?;
        Ok(FoldingCircuit {
            start: j.start,
            moves: j
                .moves
                .into_iter()
                .map(|m| FoldMove {
                    e1: m.fold[0],
                    e2: m.fold[1],
                    at: m.at,
                })
                .collect(),
            relabel,
        })
    }
}
