use crate::error::{domain, Error, Result};
use crate::symplectic::{transverse, Lagrangian, SymplecticMap, SymplecticSpace};

/// A sequence Λ₀, …, Λ_{n+1} with consecutive members transverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LagrangianPath {
    nodes: Vec<Lagrangian>,
}

impl LagrangianPath {
    pub fn new(nodes: Vec<Lagrangian>) -> Result<Self> {
        if nodes.len() < 2 {
            return domain("a path needs at least two Lagrangians");
        }
        let space = nodes[0].space();
        for (i, w) in nodes.windows(2).enumerate() {
            if w[1].space() != space {
                return Err(Error::Shape("path nodes live in different spaces".into()));
            }
            if !transverse(&w[0], &w[1])? {
                return domain(format!("nodes {i} and {} are not transverse", i + 1));
            }
        }
        Ok(LagrangianPath { nodes })
    }

    pub fn nodes(&self) -> &[Lagrangian] {
        &self.nodes
    }

    pub fn space(&self) -> SymplecticSpace {
        self.nodes[0].space()
    }

    /// Number n of interior nodes.
    pub fn interior_len(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn first(&self) -> &Lagrangian {
        &self.nodes[0]
    }

    pub fn last(&self) -> &Lagrangian {
        self.nodes.last().unwrap()
    }

    pub fn is_loop(&self) -> bool {
        self.first() == self.last()
    }

    /// α ∗ β, defined when α ends where β starts.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.last() != other.first() {
            return domain("paths do not meet");
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes[1..].iter().cloned());
        Ok(LagrangianPath { nodes })
    }

    pub fn inverse(&self) -> Self {
        LagrangianPath { nodes: self.nodes.iter().rev().cloned().collect() }
    }

    pub fn act(&self, phi: &SymplecticMap) -> Result<Self> {
        let nodes = self.nodes.iter().map(|l| phi.act(l)).collect::<Result<_>>()?;
        Ok(LagrangianPath { nodes })
    }

    /// Splits α along a transverse pair (Λᵢ, Λⱼ) into the sub-path Λᵢ..Λⱼ and
    /// the shortened path Λ₀..Λᵢ, Λⱼ..Λ_{n+1}.
    pub fn shortcut(&self, i: usize, j: usize) -> Result<(Self, Self)> {
        if !(i < j && j < self.nodes.len()) {
            return domain(format!("shortcut indices ({i}, {j}) out of range"));
        }
        if !transverse(&self.nodes[i], &self.nodes[j])? {
            return domain(format!("nodes {i} and {j} are not transverse"));
        }
        let sub = LagrangianPath { nodes: self.nodes[i..=j].to_vec() };
        let mut short = self.nodes[..=i].to_vec();
        short.extend(self.nodes[j..].iter().cloned());
        Ok((sub, LagrangianPath { nodes: short }))
    }
}
