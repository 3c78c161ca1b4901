//! Builders for the concrete shapes used by the constructions: ratio-
//! constrained rectangles, the quasi-hexagon with its tiling lattice, and
//! rasterized regular polygons and circles.

use num_integer::Integer;

use crate::error::Error;
use crate::geometry::{Lattice, Point, Shape};

// ---------------------------------------------------------------------------
// exact rationals (just what the planners and rasters need)
// ---------------------------------------------------------------------------

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::domain("zero denominator".to_string()));
        }
        let sign = den.signum();
        let g = num.gcd(&den).max(1);
        Ok(Rational { num: sign * num / g, den: sign * den / g })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    /// Accepts `3/4`, `7`, and decimals such as `0.866`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad rational '{s}'"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse::<i64>().map_err(|_| bad())?;
            let den = b.trim().parse::<i64>().map_err(|_| bad())?;
            return Rational::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.trim_start().starts_with('-');
            let whole = if int.is_empty() || int == "-" {
                0
            } else {
                int.parse::<i64>().map_err(|_| bad())?
            };
            let den = 10i64.pow(frac.len() as u32);
            let frac_num = frac.parse::<i64>().map_err(|_| bad())?;
            let signed_frac = if negative { -frac_num } else { frac_num };
            return Rational::new(whole * den + signed_frac, den);
        }
        Rational::new(s.parse::<i64>().map_err(|_| bad())?, 1)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Compares |a/b - gamma| < |c/d - gamma| exactly by cross multiplication
/// (b, d, and the denominator of gamma are all positive).
fn closer(a: i64, b: i64, c: i64, d: i64, gamma: Rational) -> bool {
    let l = (a * gamma.den - gamma.num * b).unsigned_abs() as u128 * d as u128;
    let r = (c * gamma.den - gamma.num * d).unsigned_abs() as u128 * b as u128;
    l < r
}

// ---------------------------------------------------------------------------
// ratio-constrained rectangles
// ---------------------------------------------------------------------------

/// A rectangle plan: even alpha, alpha * beta = p^2 - 1 for a prime p,
/// with beta/alpha as close to the requested ratio as the prime bound
/// allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectanglePlan {
    pub alpha: i64,
    pub beta: i64,
    pub prime: u64,
    pub gamma_target: Rational,
    pub gamma_achieved: Rational,
}

/// Searches primes p <= p_max and factorizations alpha * beta = p^2 - 1
/// with alpha even, minimizing |beta/alpha - gamma|. Ties prefer the
/// smaller prime, then the smaller alpha.
pub fn plan_rectangle(gamma: Rational, p_max: u64) -> Result<RectanglePlan, Error> {
    if !gamma.is_positive() {
        return Err(Error::domain("ratio must be positive".to_string()));
    }
    if p_max > 1 << 15 {
        return Err(Error::envelope("prime bound too large".to_string()));
    }
    let mut best: Option<(i64, i64, u64)> = None;
    for p in 2..=p_max {
        if !crate::finite_field::is_prime(p) {
            continue;
        }
        let n = (p * p - 1) as i64;
        let mut alpha = 2;
        while alpha <= n {
            if n % alpha == 0 {
                let beta = n / alpha;
                let better = match best {
                    None => true,
                    Some((ba, bb, _)) => closer(beta, alpha, bb, ba, gamma),
                };
                if better {
                    best = Some((alpha, beta, p));
                }
            }
            alpha += 2;
        }
    }
    let (alpha, beta, prime) = best.ok_or_else(|| {
        Error::domain(format!("no even factorization of p^2-1 for primes <= {p_max}"))
    })?;
    Ok(RectanglePlan {
        alpha,
        beta,
        prime,
        gamma_target: gamma,
        gamma_achieved: Rational::new(beta, alpha)?,
    })
}

// ---------------------------------------------------------------------------
// the quasi-hexagon and its lattice
// ---------------------------------------------------------------------------

/// The tiling lattice for an alpha x beta rectangle reshaped toward a
/// hexagon: [[beta, alpha/2 + theta], [0, alpha]] with theta = 1 when
/// alpha = 0 (mod 4) and theta = 2 when alpha = 2 (mod 4).
pub fn hexagon_lattice(alpha: i64, beta: i64) -> Result<Lattice, Error> {
    if alpha <= 0 || alpha % 2 != 0 {
        return Err(Error::domain(format!("alpha = {alpha} must be even and positive")));
    }
    if beta <= 0 {
        return Err(Error::domain(format!("beta = {beta} must be positive")));
    }
    let theta = if alpha % 4 == 0 { 1 } else { 2 };
    Lattice::new(vec![vec![beta, alpha / 2 + theta], vec![0, alpha]])
}

/// Rasterizes the hexagon with vertices (beta/3, 0), (beta, 0),
/// (4 beta/3, alpha/2), (beta, alpha), (beta/3, alpha), (0, alpha/2) into
/// exactly alpha * beta cells that tile under [`hexagon_lattice`].
///
/// For each coset of the lattice the representative nearest the hexagon
/// center is chosen, preferring points strictly inside, then boundary
/// points, then outside ones; ties go to the lexicographically smaller
/// point. The result is translated so the cell nearest the center sits at
/// the origin. Choosing one representative per coset makes the cell count
/// and the tiling property hold by construction.
pub fn hexagon_shape(alpha: i64, beta: i64) -> Result<Shape, Error> {
    if beta % 3 != 0 {
        return Err(Error::domain(format!("beta = {beta} must be divisible by 3")));
    }
    let lattice = hexagon_lattice(alpha, beta)?;
    // vertices scaled by 6 so all coordinates are integers
    let verts: [(i64, i64); 6] = [
        (2 * beta, 0),
        (6 * beta, 0),
        (8 * beta, 3 * alpha),
        (6 * beta, 6 * alpha),
        (2 * beta, 6 * alpha),
        (0, 3 * alpha),
    ];
    // center of symmetry (2 beta / 3, alpha / 2); integral by the
    // divisibility preconditions
    let (cx, cy) = (2 * beta / 3, alpha / 2);
    let classify = |x: i64, y: i64| -> u8 {
        let (sx, sy) = (6 * x, 6 * y);
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for i in 0..6 {
            let (x1, y1) = verts[i];
            let (x2, y2) = verts[(i + 1) % 6];
            let cross = (x2 - x1) as i128 * (sy - y1) as i128
                - (y2 - y1) as i128 * (sx - x1) as i128;
            match cross.signum() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => zero += 1,
            }
        }
        if zero == 0 && (pos == 6 || neg == 6) {
            0 // strictly inside
        } else if pos > 0 && neg > 0 {
            2 // outside
        } else {
            1 // on the boundary
        }
    };
    // rank: (inside/boundary/outside, squared distance to center, x, y)
    type Rank = (u8, i64, i64, i64);
    let window = alpha + beta;
    let mut best: std::collections::HashMap<_, (Rank, Point)> = std::collections::HashMap::new();
    for x in cx - window..=cx + window {
        for y in cy - window..=cy + window {
            let p = Point::new(vec![x, y]);
            let r = lattice.residue(&p)?;
            let dist = (x - cx).pow(2) + (y - cy).pow(2);
            let key = (classify(x, y), dist, x, y);
            match best.get(&r) {
                Some((k, _)) if *k <= key => {}
                _ => {
                    best.insert(r, (key, p));
                }
            }
        }
    }
    let volume = (alpha * beta) as usize;
    if best.len() != volume {
        return Err(Error::domain(format!(
            "raster covered {} of {volume} cosets",
            best.len()
        )));
    }
    let mut points: Vec<Point> = best.into_values().map(|(_, p)| p).collect();
    points.sort();
    let center = points
        .iter()
        .min_by_key(|p| ((p[0] - cx).pow(2) + (p[1] - cy).pow(2), p[0], p[1]))
        .cloned()
        .expect("nonempty raster");
    let translated = points.iter().map(|p| p - &center).collect();
    Shape::new(2, translated)
}

// ---------------------------------------------------------------------------
// polygon and circle rasters
// ---------------------------------------------------------------------------

/// Grid points with squared norm strictly below radius^2, compared in
/// scaled integers so boundary cells are decided exactly.
pub fn raster_circle(radius: Rational) -> Result<Shape, Error> {
    if !radius.is_positive() {
        return Err(Error::domain("radius must be positive".to_string()));
    }
    let bound = radius.num / radius.den + 1;
    let num2 = (radius.num as i128) * (radius.num as i128);
    let den2 = (radius.den as i128) * (radius.den as i128);
    let mut points = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let norm2 = (x as i128) * (x as i128) + (y as i128) * (y as i128);
            if norm2 * den2 < num2 {
                points.push(Point::new(vec![x, y]));
            }
        }
    }
    if points.is_empty() {
        return Err(Error::domain("empty raster".to_string()));
    }
    Shape::new(2, points)
}

/// Scale for snapped polygon vertices.
const VERTEX_SCALE: f64 = 65536.0;

/// Grid points strictly inside the regular n-gon with the given radius
/// and rotation. Vertices are snapped once to a 1/65536 grid; the
/// interior test against the snapped polygon is exact integer arithmetic.
pub fn raster_polygon(sides: u32, radius: Rational, rotation: f64) -> Result<Shape, Error> {
    if sides < 3 {
        return Err(Error::domain("a polygon needs at least 3 sides".to_string()));
    }
    if !radius.is_positive() {
        return Err(Error::domain("radius must be positive".to_string()));
    }
    let r = radius.to_f64();
    let verts: Vec<(i64, i64)> = (0..sides)
        .map(|i| {
            let angle = rotation + 2.0 * std::f64::consts::PI * i as f64 / sides as f64;
            (
                (r * angle.cos() * VERTEX_SCALE).round() as i64,
                (r * angle.sin() * VERTEX_SCALE).round() as i64,
            )
        })
        .collect();
    let scale = VERTEX_SCALE as i64;
    let bound = radius.num / radius.den + 1;
    let inside = |x: i64, y: i64| -> bool {
        let (px, py) = (x * scale, y * scale);
        let mut sign = 0i8;
        for i in 0..sides as usize {
            let (x1, y1) = verts[i];
            let (x2, y2) = verts[(i + 1) % sides as usize];
            let cross =
                (x2 - x1) as i128 * (py - y1) as i128 - (y2 - y1) as i128 * (px - x1) as i128;
            if cross == 0 {
                return false;
            }
            let s = if cross > 0 { 1 } else { -1 };
            if sign == 0 {
                sign = s;
            } else if sign != s {
                return false;
            }
        }
        true
    };
    let mut points = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if inside(x, y) {
                points.push(Point::new(vec![x, y]));
            }
        }
    }
    if points.is_empty() {
        return Err(Error::domain("empty raster".to_string()));
    }
    Shape::new(2, points)
}
