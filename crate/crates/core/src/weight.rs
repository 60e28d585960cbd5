use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A character of the 2-torus, i.e. a nonzero element of `Z^2`.
///
/// Edge labels are classes in `Z^2 / ±1`; a `Weight` is one chosen lift.
/// The canonical lift has its first nonzero coordinate positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl From<Weight> for [i64; 2] {
    fn from(w: Weight) -> Self {
        [w.a, w.b]
    }
}

impl From<[i64; 2]> for Weight {
    fn from([a, b]: [i64; 2]) -> Self {
        Weight { a, b }
    }
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn negated(self) -> Self {
        Weight::new(-self.a, -self.b)
    }

    pub fn is_canonical(self) -> bool {
        self.a > 0 || (self.a == 0 && self.b > 0)
    }

    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.negated()
        }
    }

    /// `det [self; other]`.
    pub fn det(self, other: Weight) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn is_independent_of(self, other: Weight) -> bool {
        self.det(other) != 0
    }

    /// gcd of the coordinates; the weight is `content * primitive`.
    pub fn content(self) -> i64 {
        self.a.gcd(&self.b)
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    pub fn primitive_part(self) -> Weight {
        let c = self.content();
        Weight::new(self.a / c, self.b / c)
    }

    pub fn scaled(self, k: i64) -> Weight {
        Weight::new(self.a * k, self.b * k)
    }

    pub fn add(self, other: Weight) -> Weight {
        Weight::new(self.a + other.a, self.b + other.b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}
