//! Finite Cartan data: root systems of types A/B/C/D (and products), the
//! symmetrized bilinear form, Weyl-group words, convex orders attached to
//! reduced words, the ρ-shifted dot action on characters of the Cartan
//! subalgebra, and Kostant partition multiplicities.
//!
//! Conventions: short roots have squared length 2, so `(α_i|α_i) = 2 d_i`
//! with `d_i ∈ {1, 2}` (type G2 is rejected). The Cartan matrix entry
//! `a[i][j]` is the pairing `⟨α_j, α_i^∨⟩`, hence `(α_i|α_j) = d_i a[i][j]`.
//! Weights of module vectors are tracked as offsets in the root lattice
//! ([`RootVec`], simple-root coordinates); highest weights are abstract
//! characters ([`WeightChar`]) evaluated on Cartan generators.

mod partition;
mod weight;
mod weyl;

pub use partition::{kostant_partition, kostant_partition_brute, positive_cone};
pub use weight::{verma_character, CharCombo, Character, CompMono, WeightChar};
pub use weyl::{ConvexOrder, WeylWord};

use std::collections::BTreeSet;

use crate::error::{EngineError, Result};

/// An element of the root lattice in simple-root coordinates.
pub type RootVec = Vec<i32>;

pub fn height(nu: &[i32]) -> i64 {
    nu.iter().map(|&c| c as i64).sum()
}

pub fn add_vec(a: &[i32], b: &[i32]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[i32], b: &[i32]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_vec(a: &[i32]) -> RootVec {
    a.iter().map(|x| -x).collect()
}

pub fn scale_vec(c: i32, a: &[i32]) -> RootVec {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[i32]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Pretty form `a1+2*a2` for root-lattice elements (`0` for the origin).
pub fn display_root(nu: &[i32]) -> String {
    if is_zero_vec(nu) {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, &c) in nu.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push(if c > 0 { '+' } else { '-' });
        } else if c < 0 {
            out.push('-');
        }
        let a = c.abs();
        if a != 1 {
            out.push_str(&format!("{}*", a));
        }
        out.push_str(&format!("a{}", i + 1));
    }
    out
}

/// A finite root datum of type A/B/C/D or a product of such.
#[derive(Debug)]
pub struct RootDatum {
    label: String,
    cartan: Vec<Vec<i32>>,
    d: Vec<i64>,
    pos_roots: Vec<RootVec>,
}

impl RootDatum {
    /// Parse a type label: `A2`, `B3`, `C2`, `D4`, or products like `A1xA1`.
    /// Type G2 (and anything containing it) is rejected.
    pub fn from_name(name: &str) -> Result<RootDatum> {
        let mut cartan: Vec<Vec<i32>> = Vec::new();
        let mut d: Vec<i64> = Vec::new();
        for part in name.split(['x', 'X']) {
            let part = part.trim();
            let (letter, n) = parse_component(part)?;
            let (block_a, block_d) = component_cartan(letter, n, part)?;
            let offset = cartan.len();
            let new_rank = offset + n;
            for row in cartan.iter_mut() {
                row.resize(new_rank, 0);
            }
            for row in block_a {
                let mut full = vec![0; offset];
                full.extend(row);
                debug_assert_eq!(full.len(), new_rank);
                cartan.push(full);
            }
            d.extend(block_d);
        }
        if cartan.is_empty() {
            return Err(EngineError::Parse(format!("empty type label `{name}`")));
        }
        let rank = cartan.len();
        let mut datum = RootDatum {
            label: name.to_string(),
            cartan,
            d,
            pos_roots: Vec::new(),
        };
        datum.pos_roots = datum.generate_positive_roots();
        // sanity: symmetry of the form and ht-1 roots are exactly the simples
        for i in 0..rank {
            for j in 0..rank {
                assert_eq!(
                    datum.d[i] * datum.cartan[i][j] as i64,
                    datum.d[j] * datum.cartan[j][i] as i64,
                    "Cartan data must symmetrize"
                );
            }
        }
        Ok(datum)
    }

    fn generate_positive_roots(&self) -> Vec<RootVec> {
        let rank = self.rank();
        let mut all: BTreeSet<RootVec> = BTreeSet::new();
        let mut frontier: Vec<RootVec> = Vec::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            all.insert(e.clone());
            frontier.push(e);
        }
        while let Some(root) = frontier.pop() {
            for i in 0..rank {
                let refl = self.reflect_simple(&root, i);
                if all.insert(refl.clone()) {
                    frontier.push(refl);
                }
            }
        }
        let mut pos: Vec<RootVec> = all
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by_key(|r| (height(r), r.clone()));
        pos
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Cartan matrix entry `⟨α_j, α_i^∨⟩`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    /// Symmetrizer `d_i = (α_i|α_i)/2`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// The symmetric bilinear form on the root lattice.
    pub fn bilin(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut out = 0i64;
        for i in 0..self.rank() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                out += a[i] as i64 * self.d[i] * self.cartan[i][j] as i64 * b[j] as i64;
            }
        }
        out
    }

    /// `(β|β)/2` for a root `β`; equals `d_i` on simple roots.
    pub fn root_d(&self, beta: &[i32]) -> i64 {
        let n = self.bilin(beta, beta);
        debug_assert!(n > 0 && n % 2 == 0, "root_d of a non-root {beta:?}");
        n / 2
    }

    /// `⟨μ, α_i^∨⟩ = 2(μ|α_i)/(α_i|α_i)` — always an integer on the lattice.
    pub fn simple_pairing(&self, mu: &[i32], i: usize) -> i64 {
        (0..self.rank())
            .map(|j| self.cartan[i][j] as i64 * mu[j] as i64)
            .sum()
    }

    /// `⟨μ, β^∨⟩` for a positive root `β`; integral on the root lattice.
    pub fn root_pairing(&self, mu: &[i32], beta: &[i32]) -> i64 {
        let num = self.bilin(mu, beta);
        let dd = self.root_d(beta);
        debug_assert_eq!(num % dd, 0, "non-integral coroot pairing");
        num / dd
    }

    /// `(ρ|μ)` for `μ` in the root lattice (`ρ` itself can be half-integral
    /// in root coordinates, but this pairing is always integral).
    pub fn rho_pair(&self, mu: &[i32]) -> i64 {
        mu.iter()
            .enumerate()
            .map(|(i, &c)| c as i64 * self.d[i])
            .sum()
    }

    pub fn reflect_simple(&self, mu: &[i32], i: usize) -> RootVec {
        let c = self.simple_pairing(mu, i);
        let mut out = mu.to_vec();
        out[i] -= c as i32;
        out
    }

    /// Reflection in an arbitrary positive root.
    pub fn reflect_root(&self, mu: &[i32], beta: &[i32]) -> RootVec {
        let c = self.root_pairing(mu, beta);
        let mut out = mu.to_vec();
        for (o, &b) in out.iter_mut().zip(beta) {
            *o -= (c as i32) * b;
        }
        out
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.pos_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn is_positive_root(&self, beta: &[i32]) -> bool {
        self.pos_roots.iter().any(|r| r == beta)
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }

    /// `ρ − w(ρ)`, computed as the sum of the inversion set of `w`;
    /// always in the root lattice even when `ρ` itself is not.
    pub fn rho_minus_w_rho(&self, w: &WeylWord) -> RootVec {
        let mut out = vec![0; self.rank()];
        for beta in w.inversion_set(self) {
            out = add_vec(&out, &beta);
        }
        out
    }
}

fn parse_component(part: &str) -> Result<(char, usize)> {
    let mut chars = part.chars();
    let letter = chars
        .next()
        .ok_or_else(|| EngineError::Parse("empty type component".into()))?
        .to_ascii_uppercase();
    let n: usize = chars
        .as_str()
        .parse()
        .map_err(|_| EngineError::Parse(format!("bad rank in type component `{part}`")))?;
    Ok((letter, n))
}

fn component_cartan(letter: char, n: usize, part: &str) -> Result<(Vec<Vec<i32>>, Vec<i64>)> {
    let chain = |n: usize| -> Vec<Vec<i32>> {
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    match letter {
        'A' if n >= 1 => Ok((chain(n), vec![1; n])),
        'B' if n >= 2 => {
            // long chain with one short root at the end
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            let mut d = vec![2i64; n];
            d[n - 1] = 1;
            Ok((a, d))
        }
        'C' if n >= 2 => {
            // short chain with one long root at the end
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            let mut d = vec![1i64; n];
            d[n - 1] = 2;
            Ok((a, d))
        }
        'D' if n >= 4 => {
            let mut a = chain(n - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            let mut last = vec![0; n];
            last[n - 1] = 2;
            a.push(last);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
            Ok((a, vec![1; n]))
        }
        'G' => Err(EngineError::UnsupportedType(
            part.to_string(),
            "G2 components are excluded: the straightening calculus here requires \
             symmetrizers in {1, 2}"
                .to_string(),
        )),
        _ => Err(EngineError::UnsupportedType(
            part.to_string(),
            "supported components: A(n≥1), B(n≥2), C(n≥2), D(n≥4) and x-products"
                .to_string(),
        )),
    }
}
