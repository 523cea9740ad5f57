//! Formal rational linear combinations of canonical graph classes.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::canon::GraphClass;

pub type Key = Vec<u8>;

/// A finite Q-linear combination of canonical keys. Zero coefficients
/// and classes killed by orientation-reversing automorphisms are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainVector(BTreeMap<Key, BigRational>);

impl ChainVector {
    pub fn new() -> Self {
        ChainVector(BTreeMap::new())
    }

    pub fn add_class(&mut self, class: &GraphClass, coeff: BigRational) {
        if class.is_zero || coeff.is_zero() {
            return;
        }
        let c = coeff * BigRational::from_integer(class.sign.into());
        let entry = self.0.entry(class.key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&class.key);
        }
    }

    pub fn add_key(&mut self, key: &Key, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(key);
        }
    }

    pub fn add(&mut self, other: &ChainVector) {
        for (k, c) in &other.0 {
            self.add_key(k, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &ChainVector, scale: &BigRational) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.0 {
            self.add_key(k, c * scale);
        }
    }

    pub fn scale(&mut self, s: &BigRational) {
        if s.is_zero() {
            self.0.clear();
            return;
        }
        for c in self.0.values_mut() {
            *c *= s;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, key: &Key) -> BigRational {
        self.0.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &BigRational)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.0.keys()
    }
}

impl FromIterator<(Key, BigRational)> for ChainVector {
    fn from_iter<T: IntoIterator<Item = (Key, BigRational)>>(iter: T) -> Self {
        let mut v = ChainVector::new();
        for (k, c) in iter {
            v.add_key(&k, c);
        }
        v
    }
}
