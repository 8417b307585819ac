use serde::{Deserialize, Serialize};

use super::ArithError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscriminantKind {
    Fundamental,
    NonFundamental,
    Invalid,
}

/// A quadratic discriminant together with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discriminant {
    pub value: i64,
    pub kind: DiscriminantKind,
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self, ArithError> {
        if value == 0 {
            return Err(ArithError::ZeroDiscriminant);
        }
        Ok(classify_discriminant(value))
    }

    /// Like [`Discriminant::new`] but rejects values that are not `0, 1 mod 4`.
    pub fn valid(value: i64) -> Result<Self, ArithError> {
        let d = Self::new(value)?;
        if d.kind == DiscriminantKind::Invalid {
            return Err(ArithError::InvalidDiscriminant(value));
        }
        Ok(d)
    }

    pub fn is_fundamental(&self) -> bool {
        self.kind == DiscriminantKind::Fundamental
    }

    pub fn is_valid(&self) -> bool {
        self.kind != DiscriminantKind::Invalid
    }

    pub fn kronecker(&self, n: i64) -> Result<i8, ArithError> {
        kronecker(self.value, n)
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Classifies `d` as fundamental, non-fundamental or not a discriminant.
///
/// Panics on `d == 0`; use [`Discriminant::new`] for a checked version.
pub fn classify_discriminant(d: i64) -> Discriminant {
    assert!(d != 0, "zero is not a discriminant");
    let kind = match d.rem_euclid(4) {
        1 => {
            if is_squarefree(d.unsigned_abs()) {
                DiscriminantKind::Fundamental
            } else {
                DiscriminantKind::NonFundamental
            }
        }
        0 => {
            let m = d / 4;
            if matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs()) {
                DiscriminantKind::Fundamental
            } else {
                DiscriminantKind::NonFundamental
            }
        }
        _ => DiscriminantKind::Invalid,
    };
    Discriminant { value: d, kind }
}

/// The Kronecker symbol `(d/n)`, i.e. the quadratic character attached to the
/// discriminant `d` evaluated at `n`.
pub fn kronecker(d: i64, n: i64) -> Result<i8, ArithError> {
    if d == 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(ArithError::InvalidDiscriminant(d));
    }
    Ok(kronecker_symbol(d as i128, n as i128))
}

fn kronecker_symbol(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut t: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            t = -t;
        }
    }
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            t = -t;
        }
    }
    // Jacobi symbol (a/n) for odd positive n
    a = a.rem_euclid(n);
    while a != 0 {
        let s = a.trailing_zeros();
        a >>= s;
        if s % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}
