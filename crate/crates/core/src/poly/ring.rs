//! Polynomial ring contexts built from named variable blocks.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a block holds coordinates of the space being acted on, or
/// parameters that ride along untouched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    State,
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableBlock {
    pub name: String,
    pub size: usize,
    pub role: Role,
}

impl VariableBlock {
    pub fn state(name: impl Into<String>, size: usize) -> Self {
        Self { name: name.into(), size, role: Role::State }
    }

    pub fn parameter(name: impl Into<String>, size: usize) -> Self {
        Self { name: name.into(), size, role: Role::Parameter }
    }
}

/// Global index of a variable inside its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

/// An ordered list of variable blocks. Variables are numbered block by
/// block in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    blocks: Vec<VariableBlock>,
    offsets: Vec<usize>,
}

impl Ring {
    pub fn new(blocks: Vec<VariableBlock>) -> Result<Arc<Ring>> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.name.is_empty() || b.name.contains('.') {
                return Err(Error::Validation(format!("invalid block name {:?}", b.name)));
            }
            if b.size == 0 {
                return Err(Error::Validation(format!("block {} has size 0", b.name)));
            }
            if blocks[..i].iter().any(|o| o.name == b.name) {
                return Err(Error::Validation(format!("duplicate block name {}", b.name)));
            }
            offsets.push(total);
            total += b.size;
        }
        Ok(Arc::new(Ring { blocks, offsets }))
    }

    pub fn blocks(&self) -> &[VariableBlock] {
        &self.blocks
    }

    pub fn nvars(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.blocks.last().unwrap().size)
    }

    pub fn block(&self, name: &str) -> Option<&VariableBlock> {
        self.blocks.iter().find(|b| b.name == name)
    }

    fn block_position(&self, name: &str) -> Result<usize> {
        self.blocks
            .iter()
            .position(|b| b.name == name)
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    /// The variable `(block, index)`.
    pub fn var(&self, block: &str, index: usize) -> Result<Var> {
        let p = self.block_position(block)?;
        if index >= self.blocks[p].size {
            return Err(Error::UnknownVariable(format!("{block}.{index}")));
        }
        Ok(Var(self.offsets[p] + index))
    }

    /// Inverse of [`Ring::var`].
    pub fn locate(&self, v: Var) -> (&VariableBlock, usize) {
        let p = self.offsets.partition_point(|&o| o <= v.0) - 1;
        (&self.blocks[p], v.0 - self.offsets[p])
    }

    pub fn var_name(&self, v: Var) -> String {
        let (b, i) = self.locate(v);
        format!("{}.{}", b.name, i)
    }

    /// Parses a `"block.index"` name.
    pub fn parse_var(&self, name: &str) -> Result<Var> {
        let (block, idx) = name
            .rsplit_once('.')
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::UnknownVariable(name.to_string()))?;
        self.var(block, idx)
    }

    pub fn block_vars(&self, name: &str) -> Result<Vec<Var>> {
        let p = self.block_position(name)?;
        Ok((0..self.blocks[p].size).map(|i| Var(self.offsets[p] + i)).collect())
    }

    /// All variables of state blocks, in ring order.
    pub fn state_vars(&self) -> Vec<Var> {
        self.vars_with_role(Role::State)
    }

    pub fn parameter_vars(&self) -> Vec<Var> {
        self.vars_with_role(Role::Parameter)
    }

    fn vars_with_role(&self, role: Role) -> Vec<Var> {
        self.blocks
            .iter()
            .zip(&self.offsets)
            .filter(|(b, _)| b.role == role)
            .flat_map(|(b, &o)| (o..o + b.size).map(Var))
            .collect()
    }

    pub fn state_blocks(&self) -> impl Iterator<Item = &VariableBlock> {
        self.blocks.iter().filter(|b| b.role == Role::State)
    }

    /// Same blocks, with the roles of the named blocks replaced.
    pub fn retag(&self, names: &[&str], role: Role) -> Result<Arc<Ring>> {
        for n in names {
            self.block_position(n)?;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                if names.contains(&b.name.as_str()) {
                    b.role = role;
                }
                b
            })
            .collect();
        Ring::new(blocks)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let role = match b.role {
                Role::State => "state",
                Role::Parameter => "param",
            };
            write!(f, "{}:{}:{}", b.name, b.size, role)?;
        }
        write!(f, "]")
    }
}
