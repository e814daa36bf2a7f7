//! Finite abelian groups as products of cyclic groups, with elements stored
//! as residue tuples.

use std::fmt;

use num::Integer;

use super::AbelianGroup;

/// Product of cyclic groups of the given orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

/// Residue tuple; componentwise arithmetic modulo the group's orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinAbElem(Vec<u64>);

impl FinAbGroup {
    pub fn cyclic(k: u64) -> Self {
        assert!(k >= 1);
        FinAbGroup { orders: vec![k] }
    }

    pub fn product(orders: &[u64]) -> Self {
        assert!(!orders.is_empty() && orders.iter().all(|&o| o >= 1));
        FinAbGroup { orders: orders.to_vec() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn elem(&self, residues: &[u64]) -> FinAbElem {
        assert_eq!(residues.len(), self.orders.len());
        FinAbElem(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&r, &o)| r % o)
                .collect(),
        )
    }
}

impl FinAbElem {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for FinAbElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl AbelianGroup for FinAbGroup {
    type Elem = FinAbElem;

    fn zero(&self) -> FinAbElem {
        FinAbElem(vec![0; self.orders.len()])
    }

    fn add(&self, a: &FinAbElem, b: &FinAbElem) -> FinAbElem {
        FinAbElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &o)| (x + y) % o)
                .collect(),
        )
    }

    fn neg(&self, a: &FinAbElem) -> FinAbElem {
        FinAbElem(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &o)| if x == 0 { 0 } else { o - x })
                .collect(),
        )
    }

    fn contains(&self, a: &FinAbElem) -> bool {
        a.0.len() == self.orders.len() && a.0.iter().zip(&self.orders).all(|(&x, &o)| x < o)
    }

    fn order(&self) -> Option<u64> {
        Some(self.orders.iter().product())
    }

    fn elements(&self) -> Option<Vec<FinAbElem>> {
        let mut out = vec![FinAbElem(Vec::new())];
        for &o in &self.orders {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for prefix in &out {
                for r in 0..o {
                    let mut v = prefix.0.clone();
                    v.push(r);
                    next.push(FinAbElem(v));
                }
            }
            out = next;
        }
        Some(out)
    }

    fn element_order(&self, a: &FinAbElem) -> Option<u64> {
        // order of residue x mod o is o / gcd(o, x); x = 0 contributes 1
        let mut ord = 1u64;
        for (&x, &o) in a.0.iter().zip(&self.orders) {
            let comp = if x == 0 { 1 } else { o / o.gcd(&x) };
            ord = ord.lcm(&comp);
        }
        Some(ord)
    }

    fn doubling_constant(&self) -> u64 {
        self.orders.iter().map(|&o| if o % 2 == 0 { 2 } else { 1 }).product()
    }

    fn finite_subgroup_bound(&self) -> Option<u64> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_constants() {
        assert_eq!(FinAbGroup::cyclic(5).doubling_constant(), 1);
        assert_eq!(FinAbGroup::cyclic(12).doubling_constant(), 2);
        assert_eq!(FinAbGroup::product(&[2, 2]).doubling_constant(), 4);
        // multiplicative over direct products
        assert_eq!(FinAbGroup::product(&[4, 6, 5]).doubling_constant(), 4);
    }

    #[test]
    fn doubling_matches_two_torsion_count() {
        for orders in [vec![5], vec![12], vec![2, 2], vec![2, 6], vec![3, 4]] {
            let g = FinAbGroup::product(&orders);
            let count = g
                .elements()
                .unwrap()
                .into_iter()
                .filter(|e| g.add(e, e) == g.zero())
                .count() as u64;
            assert_eq!(count, g.doubling_constant(), "orders {orders:?}");
        }
    }

    #[test]
    fn element_orders() {
        let g = FinAbGroup::product(&[2, 6]);
        assert_eq!(g.element_order(&g.elem(&[0, 0])), Some(1));
        assert_eq!(g.element_order(&g.elem(&[1, 0])), Some(2));
        assert_eq!(g.element_order(&g.elem(&[0, 1])), Some(6));
        assert_eq!(g.element_order(&g.elem(&[1, 3])), Some(2));
        assert_eq!(g.element_order(&g.elem(&[1, 2])), Some(6));
    }

    #[test]
    fn enumeration() {
        let g = FinAbGroup::product(&[2, 3]);
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 6);
        assert!(elems.iter().all(|e| g.contains(e)));
    }
}
