use super::{edge_key, TessellatedPolygon};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Side-length vector `k` of the rectangles glued around one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSolution {
    pub k: Vec<i64>,
    /// `n ≡ 0 mod 4`: the lengths fix `k` only up to two free parameters.
    pub underdetermined: bool,
}

/// The alternating-sum formula for `k` when `n` is not divisible by 4.
/// Checks integrality only.
pub fn k_formula(lengths: &[i64]) -> Result<Vec<i64>> {
    let n = lengths.len();
    if n < 3 {
        return Err(Error::InvalidPolygon(format!("{n} sides")));
    }
    if n.is_multiple_of(4) {
        return Err(Error::Unsolvable);
    }
    let m = if n % 2 == 1 { n } else { n / 2 };
    let mut k = Vec::with_capacity(n);
    for i in 0..n {
        let s: i64 = (0..m)
            .map(|j| {
                if j % 2 == 0 {
                    lengths[(i + 2 * j) % n]
                } else {
                    -lengths[(i + 2 * j) % n]
                }
            })
            .sum();
        if s % 2 != 0 {
            return Err(Error::NonIntegral);
        }
        k.push(s / 2);
    }
    Ok(k)
}

/// Solves `l_i = k_i + k_{i+2}` and checks feasibility. Error positions are 1-based.
pub fn solve_k(lengths: &[i64]) -> Result<KSolution> {
    let n = lengths.len();
    if n < 3 {
        return Err(Error::InvalidPolygon(format!("{n} sides")));
    }
    if let Some(i) = lengths.iter().position(|&l| l <= 0) {
        return Err(Error::InvalidPolygon(format!(
            "side {} has length {}",
            i + 1,
            lengths[i]
        )));
    }
    let sol = if !n.is_multiple_of(4) {
        KSolution {
            k: k_formula(lengths)?,
            underdetermined: false,
        }
    } else {
        KSolution {
            k: solve_cyclic(lengths)?,
            underdetermined: true,
        }
    };
    if let Some(i) = sol.k.iter().position(|&x| x < 0) {
        return Err(Error::Negative(i + 1));
    }
    check_zero_pattern(&sol.k)?;
    Ok(sol)
}

fn check_zero_pattern(k: &[i64]) -> Result<()> {
    let n = k.len();
    let zeros: Vec<usize> = (0..n).filter(|&i| k[i] == 0).collect();
    let ok = match zeros.len() {
        0 | 1 => true,
        2 => zeros[1] == zeros[0] + 1 || (zeros[0] == 0 && zeros[1] == n - 1),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BadZeroPattern(zeros.iter().map(|i| i + 1).collect()))
    }
}

/// `n = 4m`: the indices split into two cycles `i, i+2, ...` of even length,
/// each with one free parameter. Picks the parameter keeping the smallest
/// entry as large as possible.
fn solve_cyclic(lengths: &[i64]) -> Result<Vec<i64>> {
    let n = lengths.len();
    let mut k = vec![0i64; n];
    for start in 0..2 {
        // k_{start+2j} = s_j * t + c_j
        let len = n / 2;
        let mut c = vec![0i64; len];
        let mut s = vec![1i64; len];
        for j in 1..len {
            let prev = start + 2 * (j - 1);
            c[j] = lengths[prev] - c[j - 1];
            s[j] = -s[j - 1];
        }
        // closing the cycle: k_{last} + k_{start} = l_{last}
        let last = start + 2 * (len - 1);
        if c[len - 1] + c[0] != lengths[last] {
            return Err(Error::Unsolvable);
        }
        let lo = (0..len)
            .filter(|&j| s[j] > 0)
            .map(|j| -c[j])
            .max()
            .unwrap_or(i64::MIN);
        let hi = (0..len)
            .filter(|&j| s[j] < 0)
            .map(|j| c[j])
            .min()
            .unwrap_or(i64::MAX);
        if lo > hi {
            return Err(Error::Negative(start + 1));
        }
        let t = lo + (hi - lo) / 2;
        for j in 0..len {
            k[start + 2 * j] = s[j] * t + c[j];
        }
    }
    Ok(k)
}

/// Glues rectangles `R_i` of size `k_i × k_{i+1}` around one vertex, `R_i`
/// meeting `R_{i+1}` along a ray of length `k_{i+1}`.
pub fn single_vertex_polygon(lengths: &[i64]) -> Result<TessellatedPolygon> {
    let k: Vec<usize> = solve_k(lengths)?.k.iter().map(|&x| x as usize).collect();
    let n = k.len();
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut next = 0usize;
    // canonical key: centre, a point on ray i, or an interior point of R_i
    let mut vid = |i: usize, a: usize, b: usize| -> usize {
        let key = match (a, b) {
            (0, 0) => (usize::MAX, 0, 0),
            (a, 0) => (i, a, 0),
            (0, b) => ((i + 1) % n, b, 0),
            (a, b) => (i, a, b),
        };
        *ids.entry(key).or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let mut boundary = Vec::new();
    let mut corners = Vec::new();
    for i in 0..n {
        let (ki, kj, kl) = (k[i], k[(i + 1) % n], k[(i + 2) % n]);
        corners.push(boundary.len());
        for t in 0..ki {
            boundary.push(vid(i, ki - t, kj));
        }
        for t in 0..kl {
            boundary.push(vid((i + 1) % n, kj, t));
        }
    }
    let mut squares = Vec::new();
    for i in 0..n {
        let (ki, kj) = (k[i], k[(i + 1) % n]);
        for a in 0..ki {
            for b in 0..kj {
                squares.push([
                    vid(i, a, b),
                    vid(i, a + 1, b),
                    vid(i, a + 1, b + 1),
                    vid(i, a, b + 1),
                ]);
            }
        }
    }
    TessellatedPolygon::compact(next, squares, boundary, corners)
}

/// Pentagon of five `m × m` squares around a degree-5 vertex.
pub fn regular_right_pentagon(m: usize) -> Result<TessellatedPolygon> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("pentagon size {m}")));
    }
    single_vertex_polygon(&[2 * m as i64; 5])
}

/// Where `v_1` sits on the rectangle boundary and which way the sides run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutPlacement {
    /// Steps from `(0,0)` along the boundary.
    pub offset: usize,
    pub clockwise: bool,
}

/// Boundary lattice points of the `w × h` rectangle, counterclockwise from `(0,0)`.
pub(crate) fn rectangle_boundary(w: usize, h: usize) -> Vec<(usize, usize)> {
    let mut pts = Vec::with_capacity(2 * (w + h));
    pts.extend((0..w).map(|x| (x, 0)));
    pts.extend((0..h).map(|y| (w, y)));
    pts.extend((0..w).map(|x| (w - x, h)));
    pts.extend((0..h).map(|y| (0, h - y)));
    pts
}

type Boxed = (usize, usize, usize, usize);

/// Removes from the `w × h` rectangle, at each rectangle corner lying inside
/// a side, the subrectangle spanned by that corner and the side's two ends.
pub fn corner_cut_rectangle(
    w: usize,
    h: usize,
    lengths: &[usize],
    place: CutPlacement,
) -> Result<TessellatedPolygon> {
    let n = lengths.len();
    if w == 0 || h == 0 {
        return Err(Error::InvalidPolygon("empty rectangle".into()));
    }
    if n < 3 || lengths.contains(&0) {
        return Err(Error::InvalidPolygon(
            "need at least three positive side lengths".into(),
        ));
    }
    let p = 2 * (w + h);
    if lengths.iter().sum::<usize>() != p {
        return Err(Error::InvalidPolygon(format!(
            "lengths sum to {}, perimeter is {p}",
            lengths.iter().sum::<usize>()
        )));
    }
    let mut pts = rectangle_boundary(w, h);
    if place.clockwise {
        pts = (0..p).map(|t| pts[(p - t) % p]).collect();
    }
    let offset = place.offset % p;
    let mut vpos = Vec::with_capacity(n);
    let mut acc = offset;
    for &l in lengths {
        vpos.push(acc % p);
        acc += l;
    }
    let corner_pts = [(0, 0), (w, 0), (w, h), (0, h)];
    let corner_pos: Vec<usize> = corner_pts
        .iter()
        .map(|c| pts.iter().position(|q| q == c).unwrap())
        .collect();
    // cut boxes [x0,x1]×[y0,y1], degenerate when the rectangle corner is marked
    let mut boxes: Vec<Boxed> = Vec::with_capacity(4);
    for (j, &cp) in corner_pos.iter().enumerate() {
        let (cx, cy) = corner_pts[j];
        if vpos.contains(&cp) {
            boxes.push((cx, cx, cy, cy));
            continue;
        }
        // side i contains the rectangle corner strictly inside
        let i = (0..n).find(|&i| {
            let d = (cp + p - vpos[i]) % p;
            d > 0 && d < lengths[i]
        });
        let i = i.expect("every boundary point lies on some side");
        let d_end = lengths[i];
        let others = corner_pos.iter().filter(|&&q| q != cp).any(|&q| {
            let d = (q + p - vpos[i]) % p;
            d > 0 && d < d_end
        });
        if others {
            return Err(Error::InvalidPolygon(format!(
                "side {} contains two rectangle corners",
                i + 1
            )));
        }
        let a = pts[vpos[i]];
        let b = pts[vpos[(i + 1) % n]];
        let xs = [cx, a.0, b.0];
        let ys = [cy, a.1, b.1];
        boxes.push((
            *xs.iter().min().unwrap(),
            *xs.iter().max().unwrap(),
            *ys.iter().min().unwrap(),
            *ys.iter().max().unwrap(),
        ));
    }
    for j in 0..4 {
        for k in j + 1..4 {
            let (a, b) = (boxes[j], boxes[k]);
            if a.0 <= b.1 && b.0 <= a.1 && a.2 <= b.3 && b.2 <= a.3 {
                return Err(Error::Overlap(j + 1, k + 1));
            }
        }
    }
    let id = |x: usize, y: usize| y * (w + 1) + x;
    let inside = |x: usize, y: usize| {
        boxes
            .iter()
            .any(|b| b.0 <= x && x < b.1 && b.2 <= y && y < b.3)
    };
    let mut squares = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if !inside(x, y) {
                squares.push([id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)]);
            }
        }
    }
    if squares.is_empty() {
        return Err(Error::InvalidPolygon("cuts remove every square".into()));
    }
    let corners_v: Vec<usize> = vpos.iter().map(|&t| id(pts[t].0, pts[t].1)).collect();
    let cycle = boundary_cycle(&squares, corners_v[0])?;
    let mut cum = Vec::with_capacity(n);
    let mut s = 0;
    for &l in lengths {
        cum.push(s);
        s += l;
    }
    for dir in [false, true] {
        let walk: Vec<usize> = if dir {
            let m = cycle.len();
            (0..m).map(|t| cycle[(m - t) % m]).collect()
        } else {
            cycle.clone()
        };
        if walk.len() == p && cum.iter().zip(&corners_v).all(|(&c, &v)| walk[c] == v) {
            return TessellatedPolygon::compact((w + 1) * (h + 1), squares, walk, cum);
        }
    }
    Err(Error::InvalidPolygon(
        "cut region does not realize the side lengths".into(),
    ))
}

/// Boundary edges of a square set as one cycle starting at `start`.
fn boundary_cycle(squares: &[[usize; 4]], start: usize) -> Result<Vec<usize>> {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    for s in squares {
        for t in 0..4 {
            *count.entry(edge_key(s[t], s[(t + 1) % 4])).or_insert(0) += 1;
        }
    }
    let mut nbr: HashMap<usize, Vec<usize>> = HashMap::new();
    for (&(a, b), &c) in &count {
        if c == 1 {
            nbr.entry(a).or_default().push(b);
            nbr.entry(b).or_default().push(a);
        }
    }
    let bad = || Error::InvalidPolygon("boundary is not a simple cycle".into());
    if nbr.values().any(|v| v.len() != 2) {
        return Err(bad());
    }
    let mut first = nbr.get(&start).ok_or_else(bad)?.clone();
    first.sort_unstable();
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, first[0]);
    while cur != start {
        cycle.push(cur);
        let nb = &nbr[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        if cycle.len() > nbr.len() {
            return Err(bad());
        }
    }
    if cycle.len() != nbr.len() {
        return Err(bad());
    }
    Ok(cycle)
}

/// Tries every offset and both orientations; returns the first placement that works.
pub fn corner_cut_search(
    w: usize,
    h: usize,
    lengths: &[usize],
) -> Result<(CutPlacement, TessellatedPolygon)> {
    let p = 2 * (w + h);
    let mut last = Error::InvalidPolygon("no placement".into());
    for clockwise in [false, true] {
        for offset in 0..p {
            let place = CutPlacement { offset, clockwise };
            match corner_cut_rectangle(w, h, lengths, place) {
                Ok(s) => return Ok((place, s)),
                Err(e) => last = e,
            }
        }
    }
    Err(last)
}

/// Placement used for the octagon with seven sides of length 2 and one of length 4.
pub const FIG1_RECT: (usize, usize) = (5, 4);
pub const FIG1_PLACEMENT: CutPlacement = CutPlacement {
    offset: 0,
    clockwise: false,
};

/// A CAT(0) octagon with sides `(2,2,2,2,2,2,2,4)` whose curvature sits at
/// two corners and two side midpoints.
pub fn fig1_octagon() -> Result<TessellatedPolygon> {
    corner_cut_rectangle(
        FIG1_RECT.0,
        FIG1_RECT.1,
        &[2, 2, 2, 2, 2, 2, 2, 4],
        FIG1_PLACEMENT,
    )
}
