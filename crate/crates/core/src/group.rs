//! Finite abelian groups given as products of cyclic groups, and their characters.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycScalar, RootOfUnity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic order must be at least 1 (factor {index})")]
    BadOrder { index: usize },
    #[error("element {element:?} does not belong to group with orders {orders:?}")]
    ParentMismatch { element: Vec<u64>, orders: Vec<u64> },
}

/// `Z_{d_1} × … × Z_{d_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

/// Exponent tuple `(e_1, …, e_k)` with `0 ≤ e_j < d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

/// Character given by weights: `χ(e) = ζ_N^{N Σ w_j e_j / d_j}` with `N = exp(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<u64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(index) = orders.iter().position(|&d| d == 0) {
            return Err(GroupError::BadOrder { index });
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &d| a.lcm(&d))
    }

    /// Conductor of the cyclotomic field holding all character values.
    pub fn conductor(&self) -> u32 {
        self.exponent() as u32
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The `j`-th cyclic generator.
    pub fn generator(&self, j: usize) -> GroupElement {
        let mut e = self.identity();
        e.0[j] = 1 % self.orders[j];
        e
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|j| self.generator(j)).collect()
    }

    /// Reduces an arbitrary integer tuple into the group.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement, GroupError> {
        if exps.len() != self.rank() {
            return Err(GroupError::ParentMismatch {
                element: exps.iter().map(|&e| e as u64).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(
            exps.iter()
                .zip(&self.orders)
                .map(|(&e, &d)| e.rem_euclid(d as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.orders).all(|(e, d)| e < d)
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch {
                element: a.0.clone(),
                orders: self.orders.clone(),
            })
        }
    }

    pub fn try_compose(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.compose(a, b))
    }

    /// Group law; both arguments must belong to this group.
    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert!(self.contains(a) && self.contains(b));
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn power(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &d)| ((x as i64 * k.rem_euclid(d as i64)) % d as i64) as u64)
                .collect(),
        )
    }

    /// Least `m > 0` with `a^m = 1`.
    pub fn order_of(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &d)| acc.lcm(&(d / d.gcd(&x))))
    }

    /// All elements in lexicographic order of exponent tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (j, &d) in self.orders.iter().enumerate() {
            let prev = std::mem::take(&mut out);
            for e in prev {
                for v in 0..d {
                    let mut e = e.clone();
                    e.0[j] = v;
                    out.push(e);
                }
            }
        }
        out.sort();
        out
    }

    /// Index of `a` in [`Self::elements`].
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&e, &d)| acc * d as usize + e as usize)
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn character(&self, weights: &[i64]) -> Result<Character, GroupError> {
        self.element(weights).map(|e| Character(e.0))
    }

    /// `χ(g)` as an exponent of `ζ_N`.
    pub fn eval_root(&self, chi: &Character, g: &GroupElement) -> RootOfUnity {
        let n = self.exponent();
        let k = chi
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.orders)
            .map(|((&w, &e), &d)| (w * e % d) * (n / d))
            .sum::<u64>();
        RootOfUnity::new(n as u32, (k % n) as i64)
    }

    pub fn char_eval(&self, chi: &Character, g: &GroupElement) -> CycScalar {
        self.eval_root(chi, g).value()
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.compose(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn char_inverse(&self, a: &Character) -> Character {
        Character(self.inverse(&GroupElement(a.0.clone())).0)
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        Character(self.power(&GroupElement(a.0.clone()), k).0)
    }

    pub fn is_trivial(&self, a: &Character) -> bool {
        a.0.iter().all(|&w| w == 0)
    }

    /// Elements `g` with `χ(g) = 1`.
    pub fn kernel(&self, chi: &Character) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|g| self.eval_root(chi, g).is_one())
            .collect()
    }

    /// Order of `χ` in the dual group, i.e. the size of its image.
    pub fn image_order(&self, chi: &Character) -> u64 {
        self.generators()
            .iter()
            .fold(1, |acc, g| acc.lcm(&(self.eval_root(chi, g).order() as u64)))
    }

    /// Reads off the character taking the given values on the cyclic generators.
    pub fn character_from_generator_values(&self, values: &[RootOfUnity]) -> Option<Character> {
        let n = self.exponent();
        let mut w = Vec::with_capacity(self.rank());
        for (v, &d) in values.iter().zip(&self.orders) {
            let k = v.exponent() as u64 * d;
            if !k.is_multiple_of(n) {
                return None;
            }
            w.push(k / n % d);
        }
        Some(Character(w))
    }
}
