use super::map::{PiecewiseMap, RatInterval};
use super::rat::Rat;
use crate::error::{Error, Result};
use crate::symbolic::tarjan;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::{BTreeMap, BTreeSet};

/// A uniform grid of half-open boxes over a closed domain (the last box is
/// closed).
#[derive(Debug, Clone)]
pub struct BoxGrid {
    lo: Rat,
    width: Rat,
    count: usize,
}

impl BoxGrid {
    pub fn new(domain: &RatInterval, width: &Rat) -> Result<BoxGrid> {
        if width <= &Rat::zero() {
            return Err(Error::Invalid("box width must be positive".into()));
        }
        let span = &domain.hi - &domain.lo;
        let count = &span / width;
        if !count.is_integer() {
            return Err(Error::Invalid(format!(
                "width {width} does not divide the domain span {span}"
            )));
        }
        let count = count
            .floor_usize()
            .ok_or_else(|| Error::Invalid("grid too large".into()))?;
        if count == 0 || count > 1 << 22 {
            return Err(Error::Invalid(format!("unusable grid size {count}")));
        }
        Ok(BoxGrid {
            lo: domain.lo.clone(),
            width: width.clone(),
            count,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn width(&self) -> &Rat {
        &self.width
    }

    pub fn box_interval(&self, i: usize) -> RatInterval {
        let lo = &self.lo + &(&Rat::int(i as i64) * &self.width);
        let hi = &lo + &self.width;
        RatInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: i + 1 == self.count,
        }
    }

    /// Index of the box containing x (None outside the domain).
    pub fn index_of(&self, x: &Rat) -> Option<usize> {
        let offset = &(x - &self.lo) / &self.width;
        let i = offset.floor_usize()?;
        if i < self.count {
            Some(i)
        } else if i == self.count && offset.is_integer() {
            Some(self.count - 1) // the right endpoint belongs to the last box
        } else {
            None
        }
    }

    /// Indices of boxes whose closure meets the closure of `[lo, hi]`,
    /// clamped to the grid.
    pub fn touching(&self, lo: &Rat, hi: &Rat) -> Option<(usize, usize)> {
        if hi < &self.lo {
            return None;
        }
        let span_hi = &self.lo + &(&Rat::int(self.count as i64) * &self.width);
        if lo > &span_hi {
            return None;
        }
        let start = {
            let off = &(lo - &self.lo) / &self.width;
            // ceil(off) - 1, clamped at 0
            let v: BigInt = -(-&off).floor_int() - 1;
            if v < BigInt::from(0) {
                0usize
            } else {
                v.to_usize()?
            }
        };
        let end = {
            let off = &(hi - &self.lo) / &self.width;
            let f = off.floor_usize()?;
            f.min(self.count - 1)
        };
        if start > end {
            None
        } else {
            Some((start.min(self.count - 1), end))
        }
    }
}

/// Transition graph of grid boxes: an edge `B -> B'` whenever the exact
/// per-piece image of B, fattened by delta, meets B' (closures taken on
/// both sides: an outer approximation).
#[derive(Debug, Clone)]
pub struct BoxGraph {
    pub grid: BoxGrid,
    pub fatten: Rat,
    adj: Vec<Vec<usize>>,
}

impl BoxGraph {
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adj[from].binary_search(&to).is_ok()
    }

    /// Union of strongly connected components containing a cycle: the
    /// box-level outer approximation of the chain recurrent set.
    pub fn cyclic_boxes(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for comp in tarjan(&self.adj) {
            let cyclic = comp.len() > 1 || self.adj[comp[0]].contains(&comp[0]);
            if cyclic {
                out.extend(comp);
            }
        }
        out
    }

    /// Is the induced subgraph on `boxes` strongly connected with at least
    /// one edge? This is the box-level internal chain transitivity check.
    pub fn induced_strongly_connected(&self, boxes: &BTreeSet<usize>) -> bool {
        if boxes.is_empty() {
            return false;
        }
        let idx: BTreeMap<usize, usize> = boxes.iter().enumerate().map(|(j, &b)| (b, j)).collect();
        let mut adj = vec![Vec::new(); boxes.len()];
        let mut edges = 0;
        for (&b, &j) in &idx {
            for t in &self.adj[b] {
                if let Some(&jt) = idx.get(t) {
                    adj[j].push(jt);
                    edges += 1;
                }
            }
        }
        edges >= 1 && tarjan(&adj).len() == 1
    }
}

/// Build the box transition graph at grid width `h` and fattening `delta`.
pub fn box_graph(map: &PiecewiseMap, h: &Rat, fatten: &Rat) -> Result<BoxGraph> {
    if fatten.is_negative() {
        return Err(Error::Invalid("fattening must be nonnegative".into()));
    }
    let grid = BoxGrid::new(&map.domain(), h)?;
    let mut adj = Vec::with_capacity(grid.count());
    for i in 0..grid.count() {
        let b = grid.box_interval(i);
        let mut targets = BTreeSet::new();
        for piece in map.pieces() {
            if let Some(sub) = b.intersect(&piece.domain) {
                let hull = piece.image_hull(&sub);
                let lo = &hull.lo - fatten;
                let hi = &hull.hi + fatten;
                if let Some((s, e)) = grid.touching(&lo, &hi) {
                    targets.extend(s..=e);
                }
            }
        }
        adj.push(targets.into_iter().collect());
    }
    Ok(BoxGraph {
        grid,
        fatten: fatten.clone(),
        adj,
    })
}

/// Boxes at scale `(h, fatten)` that can recur: the union of cyclic
/// strongly connected components of the box graph. Every internally chain
/// transitive set of the map lies inside this union at the given scale.
pub fn chain_recurrent_outer(map: &PiecewiseMap, h: &Rat, fatten: &Rat) -> Result<BoxReport> {
    let graph = box_graph(map, h, fatten)?;
    let boxes = graph.cyclic_boxes();
    Ok(BoxReport {
        boxes,
        grid: graph.grid.clone(),
        depth: None,
    })
}

/// Box-level internal chain transitivity of a candidate box set.
pub fn is_box_ict(graph: &BoxGraph, boxes: &BTreeSet<usize>) -> bool {
    graph.induced_strongly_connected(boxes)
}

/// A set of grid boxes together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct BoxReport {
    pub boxes: BTreeSet<usize>,
    pub grid: BoxGrid,
    /// Tree depth for the negative-limit computations (empirical tag).
    pub depth: Option<usize>,
}

impl BoxReport {
    /// CSV rows `index,lo,hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("box,lo,hi\n");
        for &b in &self.boxes {
            let iv = self.grid.box_interval(b);
            out.push_str(&format!("{b},{},{}\n", iv.lo, iv.hi));
        }
        out
    }

    /// Indices of boxes whose closure meets the closed `radius`-ball around
    /// any of `points`: the comparison sets used by the worked examples.
    pub fn boxes_near(grid: &BoxGrid, points: &[Rat], radius: &Rat) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for p in points {
            if let Some((s, e)) = grid.touching(&(p - radius), &(p + radius)) {
                out.extend(s..=e);
            }
        }
        out
    }
}

fn normalize(mut intervals: Vec<RatInterval>) -> Vec<RatInterval> {
    intervals.retain(|i| !i.is_empty());
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.hi.cmp(&a.hi)));
    let mut out: Vec<RatInterval> = Vec::new();
    for iv in intervals {
        if let Some(last) = out.last_mut() {
            let joinable =
                iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
            if joinable {
                if iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed) {
                    last.hi = iv.hi;
                    last.hi_closed = iv.hi_closed;
                }
                continue;
            }
        }
        out.push(iv);
    }
    out
}

/// Negative limit set in the preimage-of-sets sense: boxes of width `res`
/// hit by `f^-k({x})` at some depth `k` in `[depth/2, depth]`. Exact
/// interval-set levels, empirical depth cut.
pub fn neg_limit_a1(map: &PiecewiseMap, x: &Rat, depth: usize, res: &Rat) -> Result<BoxReport> {
    map.all_affine()?;
    let grid = BoxGrid::new(&map.domain(), res)?;
    let mut level = vec![RatInterval::point(x.clone())];
    let mut boxes = BTreeSet::new();
    for k in 1..=depth {
        let mut next = Vec::new();
        for iv in &level {
            next.extend(map.preimage_of_interval(iv)?);
        }
        level = normalize(next);
        if k >= depth / 2 {
            for iv in &level {
                mark_boxes(&grid, iv, &mut boxes);
            }
        }
    }
    Ok(BoxReport {
        boxes,
        grid,
        depth: Some(depth),
    })
}

fn mark_boxes(grid: &BoxGrid, iv: &RatInterval, out: &mut BTreeSet<usize>) {
    if let Some((s, e)) = grid.touching(&iv.lo, &iv.hi) {
        for b in s..=e {
            if grid.box_interval(b).intersect(iv).is_some() {
                out.insert(b);
            }
        }
    }
}

/// Which trajectory-based negative limit notion to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegLimitMode {
    /// Accumulation along single backward branches: a box qualifies iff
    /// some branch surviving to the full depth sits inside it at every
    /// sampled depth in `[depth/2, depth]`.
    Branches,
    /// Accumulation of tree nodes at increasing depths: a box qualifies iff
    /// nodes occupy it at two or more distinct sampled depths.
    Nodes,
}

/// Negative limit sets from the sampled preimage tree. Interval-valued
/// preimages (constant pieces) are sampled at the grid resolution; the
/// verdicts are empirical in `(depth, res)` and are compared by box
/// coverage only, never for exact equality with point sets.
pub fn neg_limit_trajectories(
    map: &PiecewiseMap,
    x: &Rat,
    mode: NegLimitMode,
    depth: usize,
    res: &Rat,
) -> Result<BoxReport> {
    map.all_affine()?;
    let grid = BoxGrid::new(&map.domain(), res)?;
    let mut children_memo: BTreeMap<Rat, Vec<Rat>> = BTreeMap::new();
    let mut children = |q: &Rat| -> Result<Vec<Rat>> {
        if let Some(c) = children_memo.get(q) {
            return Ok(c.clone());
        }
        let pre = map.preimages(q)?;
        let mut kids: BTreeSet<Rat> = pre.points;
        for iv in &pre.intervals {
            // grid-resolution samples of the interval preimage
            if let Some((s, e)) = grid.touching(&iv.lo, &iv.hi) {
                for b in s..=e {
                    let g = grid.box_interval(b).lo;
                    if iv.contains(&g) {
                        kids.insert(g);
                    }
                }
            }
            if iv.lo_closed {
                kids.insert(iv.lo.clone());
            }
            if iv.hi_closed {
                kids.insert(iv.hi.clone());
            }
        }
        let kids: Vec<Rat> = kids.into_iter().collect();
        children_memo.insert(q.clone(), kids.clone());
        Ok(kids)
    };

    let mut levels: Vec<BTreeSet<Rat>> = vec![[x.clone()].into_iter().collect()];
    for _ in 1..=depth {
        let mut next = BTreeSet::new();
        for q in levels.last().unwrap() {
            next.extend(children(q)?);
        }
        levels.push(next);
    }

    let floor = depth / 2;
    let mut boxes = BTreeSet::new();
    match mode {
        NegLimitMode::Nodes => {
            let mut seen: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for (d, level) in levels.iter().enumerate().skip(floor) {
                for q in level {
                    if let Some(b) = grid.index_of(q) {
                        seen.entry(b).or_default().insert(d);
                    }
                }
            }
            boxes = seen
                .into_iter()
                .filter(|(_, ds)| ds.len() >= 2)
                .map(|(b, _)| b)
                .collect();
        }
        NegLimitMode::Branches => {
            // run[d][q]: longest same-box descent from q at depth d
            let mut run: Vec<BTreeMap<Rat, usize>> = vec![BTreeMap::new(); depth + 1];
            for q in &levels[depth] {
                run[depth].insert(q.clone(), 1);
            }
            for d in (floor..depth).rev() {
                let mut level_run = BTreeMap::new();
                for q in &levels[d] {
                    let b = grid.index_of(q);
                    let mut best = 0usize;
                    for c in children(q)? {
                        if grid.index_of(&c) == b {
                            if let Some(&r) = run[d + 1].get(&c) {
                                best = best.max(r);
                            }
                        }
                    }
                    level_run.insert(q.clone(), if best == 0 { 0 } else { best + 1 });
                }
                run[d] = level_run;
            }
            let need = depth - floor + 1;
            for q in &levels[floor] {
                if run[floor].get(q).copied().unwrap_or(0) >= need {
                    if let Some(b) = grid.index_of(q) {
                        boxes.insert(b);
                    }
                }
            }
        }
    }
    Ok(BoxReport {
        boxes,
        grid,
        depth: Some(depth),
    })
}
