//! Shared randomized generators for the integration suites.
//!
//! Shapes are drawn from a small pool of carrier lines with rational
//! endpoints (coordinates in [-8, 8], denominators up to 4), which keeps
//! collinear merging, cutting and crossing frequent instead of
//! vanishingly rare.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapetop::{GenerateOptions, Point, Scalar, Shape, Topology};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_scalar(rng: &mut ChaCha8Rng, max_abs: i64, max_denom: i64) -> Scalar {
    let q = rng.random_range(1..=max_denom);
    let p = rng.random_range(-max_abs * q..=max_abs * q);
    Scalar::new(p, q)
}

/// A point of one of six carrier lines at parameter `t`.
fn on_line(line: usize, t: &Scalar) -> Point {
    match line {
        0 => Point::new(t.clone(), Scalar::zero()),
        1 => Point::new(t.clone(), Scalar::one()),
        2 => Point::new(Scalar::zero(), t.clone()),
        3 => Point::new(t.clone(), t.clone()),
        4 => Point::new(t.clone(), -t.clone()),
        _ => Point::new(t.clone(), Scalar::new(1, 2)),
    }
}

pub fn rand_segment(rng: &mut ChaCha8Rng) -> (Point, Point) {
    loop {
        let line = rng.random_range(0..6);
        let a = rand_scalar(rng, 8, 4);
        let b = rand_scalar(rng, 8, 4);
        if a != b {
            return (on_line(line, &a), on_line(line, &b));
        }
    }
}

/// A segment shape with up to `max_segs` raw segments (possibly empty).
pub fn rand_u1_shape(rng: &mut ChaCha8Rng, max_segs: usize) -> Shape {
    let n = rng.random_range(0..=max_segs);
    Shape::from_endpoints((0..n).map(|_| rand_segment(rng))).unwrap()
}

/// A nonempty segment shape.
pub fn rand_nonempty_u1(rng: &mut ChaCha8Rng, max_segs: usize) -> Shape {
    loop {
        let s = rand_u1_shape(rng, max_segs);
        if !s.is_empty() {
            return s;
        }
    }
}

/// A point shape over a small rational grid.
pub fn rand_u0_shape(rng: &mut ChaCha8Rng, max_points: usize) -> Shape {
    let n = rng.random_range(0..=max_points);
    Shape::from_points((0..n).map(|_| {
        Point::new(rand_scalar(rng, 3, 2), rand_scalar(rng, 3, 2))
    }))
}

const FRACTIONS: [(i64, i64); 7] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];

/// A random part of `s`: for each maximal segment, keep up to two
/// subintervals cut at simple fractions of its span. May be empty.
pub fn rand_subpart(rng: &mut ChaCha8Rng, s: &Shape) -> Shape {
    let mut pieces = Vec::new();
    for seg in s.segments() {
        let count = rng.random_range(0..=2);
        let key = seg.line_key();
        let (lo, hi) = seg.span();
        let width = &hi - &lo;
        for _ in 0..count {
            let (fa, fb) = (
                FRACTIONS[rng.random_range(0..FRACTIONS.len())],
                FRACTIONS[rng.random_range(0..FRACTIONS.len())],
            );
            let (fa, fb) = (Scalar::new(fa.0, fa.1), Scalar::new(fb.0, fb.1));
            if fa == fb {
                continue;
            }
            let (fa, fb) = if fa < fb { (fa, fb) } else { (fb, fa) };
            let a = key.point_at(&(&lo + &(fa * &width)));
            let b = key.point_at(&(&lo + &(fb * &width)));
            pieces.push((a, b));
        }
    }
    Shape::from_endpoints(pieces).unwrap()
}

/// A nonempty part of `s`.
pub fn rand_nonempty_subpart(rng: &mut ChaCha8Rng, s: &Shape) -> Shape {
    loop {
        let x = rand_subpart(rng, s);
        if !x.is_empty() {
            return x;
        }
    }
}

/// A random topology: a random carrier with up to `max_gens` recognized
/// parts, the carrier auto-added. Retries when the open budget bursts.
pub fn rand_topology(rng: &mut ChaCha8Rng, max_gens: usize, max_opens: usize) -> Topology {
    loop {
        let carrier = rand_nonempty_u1(rng, 3);
        let k = rng.random_range(1..=max_gens);
        let generators: Vec<Shape> =
            (0..k).map(|_| rand_nonempty_subpart(rng, &carrier)).collect();
        let opts = GenerateOptions { add_carrier: true, max_opens };
        match Topology::generate(&generators, &carrier, opts) {
            Ok(t) => return t,
            Err(shapetop::Error::BudgetExceeded { .. }) => continue,
            Err(e) => panic!("generator invariant broken: {e}"),
        }
    }
}

/// Sum/product/order tables over a topology's opens, built directly from
/// the shape algebra. Serves as an index-level twin of the topology for
/// exhaustive basis enumeration.
pub struct IndexLattice {
    pub opens: Vec<Shape>,
    pub sum: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    pub empty: usize,
    pub carrier: usize,
}

impl IndexLattice {
    pub fn new(t: &Topology) -> IndexLattice {
        let opens: Vec<Shape> = t.opens_sorted().into_iter().cloned().collect();
        let n = opens.len();
        let find = |s: &Shape| opens.iter().position(|o| o == s).expect("closed family");
        let mut sum = vec![vec![0; n]; n];
        let mut prod = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let s = find(&opens[i].sum(&opens[j]).unwrap());
                let p = find(&opens[i].product(&opens[j]).unwrap());
                sum[i][j] = s;
                sum[j][i] = s;
                prod[i][j] = p;
                prod[j][i] = p;
            }
        }
        let empty = find(&Shape::empty(t.carrier().kind()));
        let carrier = find(t.carrier());
        IndexLattice { opens, sum, prod, empty, carrier }
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.sum[a][b] == b
    }

    /// Fold a member set into its sum; the empty set sums to the empty open.
    pub fn sum_of(&self, members: impl IntoIterator<Item = usize>) -> usize {
        members.into_iter().fold(self.empty, |acc, i| self.sum[acc][i])
    }
}
