use serde::Serialize;

use crate::category::FiniteCategory;

/// A finite group or monoid on `0..order` given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub identity: usize,
    /// `mul[a][b] = a·b`.
    pub mul: Vec<Vec<usize>>,
}

/// Printable summary of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescription {
    pub order: usize,
    pub abelian: bool,
    pub name: String,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    /// The automorphism group of `a` in `c`.
    pub fn automorphisms<C: FiniteCategory + ?Sized>(c: &C, a: usize) -> Self {
        let elems = c.hom(a, a).into_owned();
        let pos = |f: usize| elems.binary_search(&f).expect("endomorphisms are closed");
        let mul = elems
            .iter()
            .map(|&g| elems.iter().map(|&f| pos(c.compose(g, f))).collect())
            .collect();
        GroupTable {
            identity: pos(c.identity(a)),
            mul,
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]])
            })
        })
    }

    pub fn is_unital(&self) -> bool {
        (0..self.order()).all(|a| self.mul[self.identity][a] == a && self.mul[a][self.identity] == a)
    }

    pub fn has_inverses(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).any(|b| self.mul[a][b] == self.identity))
    }

    pub fn is_group(&self) -> bool {
        self.is_unital() && self.is_associative() && self.has_inverses()
    }

    fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul[acc][a])
    }

    /// Invariant factors `d₁ | d₂ | …` of an abelian group, all `> 1`.
    pub fn invariant_factors(&self) -> Vec<usize> {
        let n = self.order();
        let mut primes = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                primes.push(p);
                while rest % p == 0 {
                    rest /= p;
                }
            }
            p += 1;
        }
        // per prime, the partition of exponents, largest first
        let mut exponents: Vec<(usize, Vec<u32>)> = Vec::new();
        for &p in &primes {
            let mut conjugate = Vec::new();
            let mut previous = 1usize;
            let mut q = p;
            loop {
                let killed = (0..n).filter(|&a| self.power(a, q) == self.identity).count();
                if killed == previous {
                    break;
                }
                let mut ratio = killed / previous;
                let mut parts = 0;
                while ratio > 1 {
                    ratio /= p;
                    parts += 1;
                }
                conjugate.push(parts);
                previous = killed;
                q *= p;
            }
            let len = conjugate.first().copied().unwrap_or(0);
            let lambda = (0..len)
                .map(|i| conjugate.iter().filter(|&&d| d > i).count() as u32)
                .collect();
            exponents.push((p, lambda));
        }
        let count = exponents.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
        let mut factors: Vec<usize> = (0..count)
            .map(|j| {
                exponents
                    .iter()
                    .map(|(p, l)| l.get(j).map_or(1, |&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.reverse();
        factors
    }

    pub fn describe(&self) -> GroupDescription {
        let abelian = self.is_commutative();
        let name = if self.order() == 1 {
            "0".to_string()
        } else if abelian {
            self.invariant_factors()
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" x ")
        } else {
            format!("nonabelian of order {}", self.order())
        };
        GroupDescription {
            order: self.order(),
            abelian,
            name,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::TableCategory;

    fn cyclic_product(ns: &[usize]) -> GroupTable {
        let order: usize = ns.iter().product();
        let digits = |mut x: usize| {
            ns.iter()
                .rev()
                .map(|&n| {
                    let d = x % n;
                    x /= n;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |ds: Vec<usize>| ds.iter().rev().zip(ns).fold(0, |acc, (&d, &n)| acc * n + d);
        let mul = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let sum = digits(a)
                            .iter()
                            .zip(digits(b))
                            .zip(ns.iter().rev())
                            .map(|((&x, y), &n)| (x + y) % n)
                            .collect();
                        encode(sum)
                    })
                    .collect()
            })
            .collect();
        GroupTable { identity: 0, mul }
    }

    #[test]
    fn names_of_small_abelian_groups() {
        assert_eq!(cyclic_product(&[1]).describe().name, "0");
        assert_eq!(cyclic_product(&[3]).describe().name, "Z/3");
        assert_eq!(cyclic_product(&[3, 3]).describe().name, "Z/3 x Z/3");
        assert_eq!(cyclic_product(&[2, 3]).describe().name, "Z/6");
        assert_eq!(cyclic_product(&[2, 4]).describe().name, "Z/2 x Z/4");
        assert_eq!(cyclic_product(&[4, 2, 3]).describe().name, "Z/2 x Z/12");
    }

    #[test]
    fn automorphisms_of_cyclic_group() {
        let g = GroupTable::automorphisms(&TableCategory::cyclic_group(3), 0);
        assert!(g.is_group());
        assert_eq!(g.describe().name, "Z/3");
    }

    #[test]
    fn saturating_table_is_not_a_group() {
        let t = GroupTable {
            identity: 0,
            mul: vec![vec![0, 1], vec![1, 1]],
        };
        assert!(t.is_associative() && t.is_unital() && t.is_commutative());
        assert!(!t.is_group());
    }
}
