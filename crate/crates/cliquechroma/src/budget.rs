/// Resource limits for clique searches and solvers.
///
/// Dense random graphs can have on the order of 3^(n/3) maximal cliques, so
/// every potentially exponential routine consumes from an explicit budget and
/// fails with [`crate::Error::Budget`] instead of running away. Budgets are
/// per call, not global.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum number of search-tree nodes a single search may visit.
    pub max_nodes: u64,
    /// Maximum number of maximal cliques a single enumeration may emit.
    pub max_cliques: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_cliques: 10_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: u64::MAX,
            max_cliques: u64::MAX,
        }
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_max_cliques(mut self, max_cliques: u64) -> Self {
        self.max_cliques = max_cliques;
        self
    }
}

/// Per-call consumption state for a [`Budget`].
pub(crate) struct BudgetMeter {
    nodes_left: u64,
    cliques_left: u64,
}

impl BudgetMeter {
    pub(crate) fn new(budget: &Budget) -> Self {
        BudgetMeter {
            nodes_left: budget.max_nodes,
            cliques_left: budget.max_cliques,
        }
    }

    #[inline]
    pub(crate) fn tick_node(&mut self) -> crate::Result<()> {
        if self.nodes_left == 0 {
            return Err(crate::Error::budget("search node budget exhausted"));
        }
        self.nodes_left -= 1;
        Ok(())
    }

    #[inline]
    pub(crate) fn tick_clique(&mut self) -> crate::Result<()> {
        if self.cliques_left == 0 {
            return Err(crate::Error::budget("maximal clique budget exhausted"));
        }
        self.cliques_left -= 1;
        Ok(())
    }
}
