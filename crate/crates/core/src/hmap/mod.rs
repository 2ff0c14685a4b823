//! Combinatorial hypermaps: a finite dart set with edge, node and face
//! permutations composing to the identity. Faces, nodes and edges are the
//! orbits of the respective permutations; planarity is the Euler identity
//! on orbit counts.

use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HmapError {
    #[error("permutation has wrong length")]
    BadLength,
    #[error("permutation is not a bijection")]
    NotBijective,
    #[error("e o n o f is not the identity (dart {0})")]
    NotIdentity(usize),
    #[error("face list inconsistent: directed edge ({0}, {1}) {2}")]
    InconsistentFaceList(usize, usize, &'static str),
    #[error("archive parse error on line {0}: {1}")]
    Archive(usize, String),
}

pub type Result<T> = std::result::Result<T, HmapError>;

/// Which permutation (or the whole group) to take orbits under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Edge,
    Node,
    Face,
    Group,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypermap {
    e: Vec<u32>,
    n: Vec<u32>,
    f: Vec<u32>,
}

impl Hypermap {
    /// Build from the three permutations, checking bijectivity and the
    /// composition identity `e o n o f = I`.
    pub fn new(e: Vec<u32>, n: Vec<u32>, f: Vec<u32>) -> Result<Self> {
        let len = e.len();
        if n.len() != len || f.len() != len {
            return Err(HmapError::BadLength);
        }
        for p in [&e, &n, &f] {
            let mut seen = vec![false; len];
            for &x in p {
                let x = x as usize;
                if x >= len || seen[x] {
                    return Err(HmapError::NotBijective);
                }
                seen[x] = true;
            }
        }
        for d in 0..len {
            let y = e[n[f[d] as usize] as usize] as usize;
            if y != d {
                return Err(HmapError::NotIdentity(d));
            }
        }
        Ok(Hypermap { e, n, f })
    }

    /// Build from the node and face permutations (`e` is determined).
    pub fn from_nf(n: Vec<u32>, f: Vec<u32>) -> Result<Self> {
        let len = n.len();
        if f.len() != len {
            return Err(HmapError::BadLength);
        }
        // e = (n o f)^(-1)
        let mut e = vec![0u32; len];
        for d in 0..len {
            let nf = n.get(f[d] as usize).copied().ok_or(HmapError::NotBijective)? as usize;
            if nf >= len {
                return Err(HmapError::NotBijective);
            }
            e[nf] = d as u32;
        }
        Hypermap::new(e, n, f)
    }

    pub fn darts(&self) -> usize {
        self.e.len()
    }

    pub fn e(&self, d: usize) -> usize {
        self.e[d] as usize
    }

    pub fn n(&self, d: usize) -> usize {
        self.n[d] as usize
    }

    pub fn f(&self, d: usize) -> usize {
        self.f[d] as usize
    }

    fn perm(&self, kind: OrbitKind) -> &[u32] {
        match kind {
            OrbitKind::Edge => &self.e,
            OrbitKind::Node => &self.n,
            OrbitKind::Face => &self.f,
            OrbitKind::Group => unreachable!("group orbits use all three"),
        }
    }

    /// Orbits of the dart set under one permutation or the full group.
    /// Single-permutation orbits are returned in cycle order.
    pub fn orbits(&self, kind: OrbitKind) -> Vec<Vec<usize>> {
        let len = self.darts();
        let mut seen = vec![false; len];
        let mut out = Vec::new();
        match kind {
            OrbitKind::Group => {
                for start in 0..len {
                    if seen[start] {
                        continue;
                    }
                    let mut orbit = vec![start];
                    seen[start] = true;
                    let mut stack = vec![start];
                    while let Some(d) = stack.pop() {
                        for next in [self.e(d), self.n(d), self.f(d)] {
                            if !seen[next] {
                                seen[next] = true;
                                orbit.push(next);
                                stack.push(next);
                            }
                        }
                    }
                    orbit.sort_unstable();
                    out.push(orbit);
                }
            }
            k => {
                let p = self.perm(k);
                for start in 0..len {
                    if seen[start] {
                        continue;
                    }
                    let mut orbit = Vec::new();
                    let mut d = start;
                    loop {
                        orbit.push(d);
                        seen[d] = true;
                        d = p[d] as usize;
                        if d == start {
                            break;
                        }
                    }
                    out.push(orbit);
                }
            }
        }
        out
    }

    pub fn count_orbits(&self, kind: OrbitKind) -> usize {
        self.orbits(kind).len()
    }

    /// `e` is an involution.
    pub fn is_involutive(&self) -> bool {
        (0..self.darts()).all(|d| self.e(self.e(d)) == d)
    }

    /// Euler identity: `#edges + #nodes + #faces = #darts + 2 #components`.
    pub fn is_planar(&self) -> bool {
        let lhs = self.count_orbits(OrbitKind::Edge)
            + self.count_orbits(OrbitKind::Node)
            + self.count_orbits(OrbitKind::Face);
        let rhs = self.darts() + 2 * self.count_orbits(OrbitKind::Group);
        lhs == rhs
    }

    pub fn is_connected(&self) -> bool {
        self.count_orbits(OrbitKind::Group) <= 1
    }

    /// Mirror image `(D, f n, n^-1, f^-1)`.
    pub fn mirror(&self) -> Hypermap {
        let len = self.darts();
        let mut e = vec![0u32; len];
        let mut n_inv = vec![0u32; len];
        let mut f_inv = vec![0u32; len];
        for d in 0..len {
            e[d] = self.f[self.n[d] as usize];
            n_inv[self.n[d] as usize] = d as u32;
            f_inv[self.f[d] as usize] = d as u32;
        }
        Hypermap::new(e, n_inv, f_inv).expect("mirror of a valid hypermap is valid")
    }

    /// Node degree and type `(p, q, r)`: triangles, quadrilaterals, larger
    /// faces met by the node.
    pub fn node_type(&self, node: &[usize]) -> NodeType {
        let face_sizes = self.orbit_sizes(OrbitKind::Face);
        let mut p = 0;
        let mut q = 0;
        let mut r = 0;
        for &d in node {
            match face_sizes[d] {
                3 => p += 1,
                4 => q += 1,
                _ => r += 1,
            }
        }
        NodeType { p, q, r }
    }

    /// For each dart, the size of its orbit under the given permutation.
    pub fn orbit_sizes(&self, kind: OrbitKind) -> Vec<usize> {
        let mut sizes = vec![0usize; self.darts()];
        for orbit in self.orbits(kind) {
            for &d in &orbit {
                sizes[d] = orbit.len();
            }
        }
        sizes
    }

    /// Canonical label sequence: for every start dart, a breadth-first
    /// relabeling driven by the `n` and `f` successors; the code records
    /// the relabeled images of `n` and `f` in discovery order. The
    /// lexicographically smallest code over all start darts is canonical
    /// per connected component; components are sorted. Two hypermaps are
    /// properly isomorphic iff their canonical forms agree.
    pub fn canonical_form(&self) -> Vec<u32> {
        let mut component_codes: Vec<Vec<u32>> = self
            .orbits(OrbitKind::Group)
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|&s| self.component_code_from(s))
                    .min()
                    .expect("orbit is nonempty")
            })
            .collect();
        component_codes.sort();
        let mut out = Vec::new();
        for (i, c) in component_codes.into_iter().enumerate() {
            if i > 0 {
                out.push(u32::MAX); // component separator
            }
            out.extend(c);
        }
        out
    }

    /// Canonical form modulo mirror symmetry (improper isomorphism).
    pub fn canonical_form_improper(&self) -> Vec<u32> {
        self.canonical_form().min(self.mirror().canonical_form())
    }

    fn component_code_from(&self, start: usize) -> Vec<u32> {
        let len = self.darts();
        let mut label = vec![u32::MAX; len];
        let mut order = Vec::with_capacity(len);
        label[start] = 0;
        order.push(start);
        let mut head = 0;
        while head < order.len() {
            let d = order[head];
            head += 1;
            for next in [self.n(d), self.f(d)] {
                if label[next] == u32::MAX {
                    label[next] = order.len() as u32;
                    order.push(next);
                }
            }
        }
        let mut code = Vec::with_capacity(2 * order.len());
        for &d in &order {
            code.push(label[self.n(d)]);
            code.push(label[self.f(d)]);
        }
        code
    }

    /// Equivariant-bijection test, optionally allowing the mirror image.
    pub fn is_isomorphic(&self, other: &Hypermap, allow_improper: bool) -> bool {
        if self.canonical_form() == other.canonical_form() {
            return true;
        }
        allow_improper && self.canonical_form() == other.mirror().canonical_form()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeType {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl NodeType {
    pub fn degree(&self) -> usize {
        self.p + self.q + self.r
    }
}

/// A hypermap together with vertex labels: darts are the directed edges of
/// a face list, and each dart remembers its tail vertex. This is the
/// bridge between the abstract permutations and graph-flavored data
/// (archives, packings).
#[derive(Debug, Clone)]
pub struct LabeledHypermap {
    pub map: Hypermap,
    /// Tail vertex of each dart.
    pub tail: Vec<usize>,
    /// Head vertex of each dart.
    pub head: Vec<usize>,
    pub n_vertices: usize,
}

impl LabeledHypermap {
    /// Build from a face list: one cycle of vertex indices per face,
    /// counterclockwise, every directed edge appearing exactly once.
    pub fn from_face_list(faces: &[Vec<usize>]) -> Result<Self> {
        let mut dart_of: HashMap<(usize, usize), usize> = HashMap::new();
        let mut tail = Vec::new();
        let mut head = Vec::new();
        let mut n_vertices = 0;
        for face in faces {
            if face.len() < 3 {
                return Err(HmapError::InconsistentFaceList(
                    face.first().copied().unwrap_or(0),
                    0,
                    "face shorter than 3",
                ));
            }
            for (i, &v) in face.iter().enumerate() {
                let w = face[(i + 1) % face.len()];
                if v == w {
                    return Err(HmapError::InconsistentFaceList(v, w, "is a loop"));
                }
                if dart_of.insert((v, w), tail.len()).is_some() {
                    return Err(HmapError::InconsistentFaceList(v, w, "appears twice"));
                }
                tail.push(v);
                head.push(w);
                n_vertices = n_vertices.max(v + 1).max(w + 1);
            }
        }
        let len = tail.len();
        // f: next directed edge around the face
        let mut f = vec![0u32; len];
        let mut idx = 0;
        for face in faces {
            let base = idx;
            for i in 0..face.len() {
                f[base + i] = (base + (i + 1) % face.len()) as u32;
            }
            idx += face.len();
        }
        // e: the reversed directed edge must exist
        let mut e = vec![0u32; len];
        for d in 0..len {
            match dart_of.get(&(head[d], tail[d])) {
                Some(&r) => e[d] = r as u32,
                None => {
                    return Err(HmapError::InconsistentFaceList(
                        head[d], tail[d], "missing reverse",
                    ))
                }
            }
        }
        // n = e o f^(-1)
        let mut f_inv = vec![0u32; len];
        for d in 0..len {
            f_inv[f[d] as usize] = d as u32;
        }
        let n: Vec<u32> = (0..len).map(|d| e[f_inv[d] as usize]).collect();
        let map = Hypermap::new(e, n, f)?;
        Ok(LabeledHypermap {
            map,
            tail,
            head,
            n_vertices,
        })
    }

    /// Back to a face list: one vertex cycle per face orbit.
    pub fn to_face_list(&self) -> Vec<Vec<usize>> {
        self.map
            .orbits(OrbitKind::Face)
            .iter()
            .map(|orbit| orbit.iter().map(|&d| self.tail[d]).collect())
            .collect()
    }

    /// Nodes as vertex ids (each node orbit has a constant tail).
    pub fn node_vertex(&self, node: &[usize]) -> usize {
        self.tail[node[0]]
    }
}

/// Archive text format: one hypermap per line,
/// `<face_count> <len> v1 v2 ... <len> v1 ...`, `#` comments allowed.
pub fn parse_archive(text: &str) -> Result<Vec<LabeledHypermap>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut nums = line.split_whitespace().map(|w| {
            w.parse::<usize>()
                .map_err(|_| HmapError::Archive(ln + 1, format!("bad number `{w}`")))
        });
        let mut next = |what: &str| {
            nums.next()
                .unwrap_or_else(|| Err(HmapError::Archive(ln + 1, format!("missing {what}"))))
        };
        let face_count = next("face count")?;
        let mut faces = Vec::with_capacity(face_count);
        for _ in 0..face_count {
            let len = next("face length")?;
            let mut face = Vec::with_capacity(len);
            for _ in 0..len {
                face.push(next("vertex")?);
            }
            faces.push(face);
        }
        out.push(
            LabeledHypermap::from_face_list(&faces)
                .map_err(|e| HmapError::Archive(ln + 1, e.to_string()))?,
        );
    }
    Ok(out)
}

/// Render one hypermap as an archive line.
pub fn archive_line(faces: &[Vec<usize>]) -> String {
    let mut s = String::new();
    write!(s, "{}", faces.len()).unwrap();
    for f in faces {
        write!(s, " {}", f.len()).unwrap();
        for v in f {
            write!(s, " {v}").unwrap();
        }
    }
    s
}

/// Exhaustive equivariant-bijection isomorphism search, used to
/// cross-validate the canonical form on small hypermaps. Connected inputs
/// only: a candidate image of dart 0 propagates through `n` and `f`.
pub fn isomorphic_brute_force(a: &Hypermap, b: &Hypermap) -> bool {
    if a.darts() != b.darts() {
        return false;
    }
    if !a.is_connected() || !b.is_connected() {
        let mut ca: Vec<_> = a.orbits(OrbitKind::Group);
        let mut cb: Vec<_> = b.orbits(OrbitKind::Group);
        ca.sort_by_key(|o| o.len());
        cb.sort_by_key(|o| o.len());
        // fall back to canonical comparison for disconnected inputs
        return a.canonical_form() == b.canonical_form();
    }
    'cand: for img0 in 0..b.darts() {
        let mut img = vec![u32::MAX; a.darts()];
        img[0] = img0 as u32;
        let mut stack = vec![0usize];
        let mut used = vec![false; b.darts()];
        used[img0] = true;
        while let Some(d) = stack.pop() {
            let id = img[d] as usize;
            for (succ_a, succ_b) in [(a.n(d), b.n(id)), (a.f(d), b.f(id))] {
                if img[succ_a] == u32::MAX {
                    if used[succ_b] {
                        continue 'cand;
                    }
                    img[succ_a] = succ_b as u32;
                    used[succ_b] = true;
                    stack.push(succ_a);
                } else if img[succ_a] as usize != succ_b {
                    continue 'cand;
                }
            }
        }
        if img.iter().all(|&x| x != u32::MAX) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests;
