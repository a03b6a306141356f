use crate::arith::Rational;

/// The staircase of a monomial ideal and the lower convex hull of its
/// generators, whose region under the hull has area `e(I) / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    /// Outer corners, from the pure `y` power to the pure `x` power.
    pub corners: Vec<(u64, u64)>,
    /// Vertices of the Newton polygon boundary in the same order.
    pub hull: Vec<(u64, u64)>,
}

impl Staircase {
    pub(super) fn of(gens: &[(u64, u64)]) -> Self {
        let mut hull: Vec<(u64, u64)> = Vec::with_capacity(gens.len());
        for &p in gens {
            while hull.len() >= 2 && !turns_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
                hull.pop();
            }
            hull.push(p);
        }
        Staircase { corners: gens.to_vec(), hull }
    }

    /// Twice the area between the axes and the hull.
    pub fn doubled_covolume(&self) -> u64 {
        self.hull.windows(2).map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum()
    }

    pub fn covolume(&self) -> Rational {
        Rational::new(self.doubled_covolume().into(), 2.into())
    }
}

// strictly convex turn seen from below, for points sorted by x
fn turns_left(a: (u64, u64), b: (u64, u64), c: (u64, u64)) -> bool {
    let (ax, ay, bx, by, cx, cy) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128, c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) > 0
}
