//! Table-driven arithmetic for the small fields GF(q), q ∈ {2, 3, 4, 5}.
//!
//! Elements are encoded as `u8` in `0..q`. For the prime fields this is the
//! residue; for GF(4) the encoding is the bit pattern of a polynomial in
//! `x` modulo `x^2 + x + 1`.

use std::sync::OnceLock;

use crate::Error;

/// Field orders with shipped tables.
pub const SUPPORTED_ORDERS: [u8; 4] = [2, 3, 4, 5];

#[derive(Debug)]
pub struct Field {
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    /// The field of order `q`.
    pub fn get(q: u8) -> Result<&'static Field, Error> {
        static TABLES: OnceLock<Vec<Field>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| SUPPORTED_ORDERS.iter().map(|&q| Field::build(q)).collect());
        tables
            .iter()
            .find(|f| f.q == q)
            .ok_or(Error::UnsupportedField(q))
    }

    fn build(q: u8) -> Field {
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (s, p) = if q == 4 {
                    (a ^ b, gf4_mul(a as u8, b as u8) as usize)
                } else {
                    ((a + b) % n, (a * b) % n)
                };
                add[a * n + b] = s as u8;
                mul[a * n + b] = p as u8;
            }
        }
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (0..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
            }
        }
        Field { q, add, mul, neg, inv }
    }

    pub fn order(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Index of a coordinate vector in the carrier enumeration (little-endian base q).
    pub fn encode(&self, coords: &[u8]) -> u32 {
        coords
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.q as u32 + c as u32)
    }

    /// Coordinates of the carrier element `index` in a space of dimension `dim`.
    pub fn decode(&self, index: u32, dim: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(dim);
        let mut rest = index;
        for _ in 0..dim {
            out.push((rest % self.q as u32) as u8);
            rest /= self.q as u32;
        }
        out
    }

    /// Number of vectors in a space of dimension `dim`.
    pub fn space_size(&self, dim: usize) -> usize {
        (self.q as usize).pow(dim as u32)
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

// x^2 = x + 1
fn gf4_mul(a: u8, b: u8) -> u8 {
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 0b100 != 0 {
        r ^= 0b111;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_every_shipped_order() {
        for q in SUPPORTED_ORDERS {
            let f = Field::get(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert!(matches!(Field::get(6), Err(Error::UnsupportedField(6))));
    }

    #[test]
    fn encode_decode_roundtrip() {
        let f = Field::get(3).unwrap();
        for i in 0..27 {
            assert_eq!(f.encode(&f.decode(i, 3)), i);
        }
    }
}
