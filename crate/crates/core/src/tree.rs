//! The component connection tree.
//!
//! A component is a column `(a, q)` of an incoming-term matrix. Its entries
//! all map to the connection point `6q + a` under `Syr`. An entry `n` of a
//! component is itself a Syracuse term, so the component holding `n` as a
//! connection point (column `(n - 1) / 6` of `I_1` or `(n - 5) / 6` of `I_5`,
//! depending on `n mod 6`) hangs below it. Entries that are multiples of 3
//! have nothing attached.
//!
//! The root is `(1, 0)`, whose connection point is 1. Its row-0 entry is 1
//! itself (the trivial cycle), which is recorded on the tree instead of being
//! expanded.

use std::fmt::{self, Write as _};
use std::io;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PosOdd;
use crate::matrices::{child_column, column_entries, locate, residue6, Branch, Residue6};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentId {
    pub a: Branch,
    pub q: BigUint,
}

impl ComponentId {
    pub fn new(a: Branch, q: impl Into<BigUint>) -> Self {
        ComponentId { a, q: q.into() }
    }

    pub fn root() -> Self {
        ComponentId::new(Branch::One, 0u32)
    }

    pub fn is_root(&self) -> bool {
        *self == ComponentId::root()
    }

    /// `6q + a`, the Syracuse image shared by every entry of the column.
    pub fn connection_point(&self) -> PosOdd {
        PosOdd::new(&self.q * 6u32 + self.a.value()).expect("6q + a is odd")
    }

    /// The component whose column holds `n`.
    pub fn containing(n: &PosOdd) -> Self {
        let c = locate(n);
        ComponentId { a: c.a, q: c.q }
    }

    fn node_name(&self) -> String {
        format!("I{}(p,{})", self.a, self.q)
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}(p,{})", self.a, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub parent: ComponentId,
    pub child: ComponentId,
    /// Row of the parent column at which the child attaches.
    pub p: u32,
    /// The parent entry `I_parent.a(p, parent.q)`; equals the child's
    /// connection point.
    pub via: BigUint,
}

/// A parent entry divisible by 3; it receives no connection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlackNode {
    pub component: ComponentId,
    pub p: u32,
    pub value: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLimits {
    pub max_level: u32,
    pub max_p: u32,
    /// Upper bound on the connecting entry; `None` means unbounded.
    pub max_value: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub root: ComponentId,
    /// `levels[r]` holds the edges whose child sits at level `r + 1`.
    pub levels: Vec<Vec<TreeEdge>>,
    pub limits: TreeLimits,
    /// The root's row-0 entry 1 maps to itself; kept as an attribute.
    pub trivial_cycle: bool,
    /// Multiples of 3 met while expanding level `r`, when requested.
    pub black_nodes: Vec<Vec<BlackNode>>,
}

/// Edges below `c` for rows `0..=max_p` whose entry is at most `max_value`,
/// in ascending `p`.
pub fn children(c: &ComponentId, max_p: u32, max_value: Option<&BigUint>) -> Vec<TreeEdge> {
    column_entries(c.a, &c.q, max_p, max_value)
        .filter_map(|(p, n)| {
            let (branch, q) = child_column(&n)?;
            Some(TreeEdge {
                parent: c.clone(),
                child: ComponentId::new(branch, q),
                p,
                via: n.into_inner(),
            })
        })
        .collect()
}

/// Entries of `c` within the limits that are multiples of 3.
pub fn black_nodes(c: &ComponentId, max_p: u32, max_value: Option<&BigUint>) -> Vec<BlackNode> {
    column_entries(c.a, &c.q, max_p, max_value)
        .filter(|(_, n)| residue6(n) == Residue6::R3)
        .map(|(p, n)| BlackNode {
            component: c.clone(),
            p,
            value: n.into_inner(),
        })
        .collect()
}

/// Breadth-first construction from the root.
///
/// Each level's frontier is expanded in parallel; the collected order is the
/// sequential order (parent order, then ascending `p`).
pub fn build_tree(max_level: u32, max_p: u32, max_value: Option<BigUint>) -> Tree {
    build_tree_with(max_level, max_p, max_value, false)
}

/// [`build_tree`], optionally recording black nodes.
pub fn build_tree_with(
    max_level: u32,
    max_p: u32,
    max_value: Option<BigUint>,
    with_black: bool,
) -> Tree {
    let root = ComponentId::root();
    let mut levels: Vec<Vec<TreeEdge>> = Vec::new();
    let mut blacks: Vec<Vec<BlackNode>> = Vec::new();
    let mut frontier = vec![root.clone()];
    let cap = max_value.as_ref();

    for _ in 0..max_level {
        if frontier.is_empty() {
            break;
        }
        let expanded: Vec<(Vec<TreeEdge>, Vec<BlackNode>)> = frontier
            .par_iter()
            .map(|c| {
                let black = if with_black {
                    black_nodes(c, max_p, cap)
                } else {
                    Vec::new()
                };
                (children(c, max_p, cap), black)
            })
            .collect();
        let mut edges = Vec::new();
        let mut level_black = Vec::new();
        for (e, b) in expanded {
            edges.extend(e);
            level_black.extend(b);
        }
        frontier = edges.iter().map(|e| e.child.clone()).collect();
        levels.push(edges);
        if with_black {
            blacks.push(level_black);
        }
    }

    Tree {
        root,
        levels,
        limits: TreeLimits {
            max_level,
            max_p,
            max_value,
        },
        trivial_cycle: true,
        black_nodes: blacks,
    }
}

impl Tree {
    /// Components at level `r` (the root is level 0).
    pub fn level_nodes(&self, r: usize) -> Vec<&ComponentId> {
        if r == 0 {
            return vec![&self.root];
        }
        self.levels
            .get(r - 1)
            .map(|edges| edges.iter().map(|e| &e.child).collect())
            .unwrap_or_default()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &TreeEdge> {
        self.levels.iter().flatten()
    }

    pub fn node_count(&self) -> usize {
        1 + self.edges().count()
    }

    pub fn export(&self, format: ExportFormat, out: &mut dyn io::Write) -> io::Result<()> {
        match format {
            ExportFormat::Dot => out.write_all(self.to_dot().as_bytes()),
            ExportFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json_doc())?;
                out.write_all(b"\n")
            }
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str("digraph component_tree {\n");
        s.push_str("  rankdir=BT;\n");
        s.push_str("  node [shape=box];\n");
        let root = self.root.node_name();
        writeln!(s, "  \"{root}\" [label=\"{root}\\nlevel 0\\nc=1\"];").unwrap();
        if self.trivial_cycle {
            writeln!(s, "  \"{root}\" -> \"{root}\" [label=\"via=1 (trivial cycle)\", style=dashed];").unwrap();
        }
        for (r, edges) in self.levels.iter().enumerate() {
            for e in edges {
                let child = e.child.node_name();
                writeln!(
                    s,
                    "  \"{child}\" [label=\"{child}\\nlevel {}\\nc={}\"];",
                    r + 1,
                    e.via
                )
                .unwrap();
            }
        }
        for edges in &self.levels {
            for e in edges {
                writeln!(
                    s,
                    "  \"{}\" -> \"{}\" [label=\"via={}\", p={}];",
                    e.parent.node_name(),
                    e.child.node_name(),
                    e.via,
                    e.p
                )
                .unwrap();
            }
        }
        for level in &self.black_nodes {
            for b in level {
                let name = format!("I{}({},{})", b.component.a, b.p, b.component.q);
                writeln!(
                    s,
                    "  \"{name}\" [label=\"{}\", shape=circle, style=filled, fillcolor=black, fontcolor=white];",
                    b.value
                )
                .unwrap();
                writeln!(s, "  \"{name}\" -> \"{}\" [style=dotted];", b.component.node_name()).unwrap();
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json_doc(&self) -> TreeDoc {
        let mut levels = vec![LevelDoc {
            level: 0,
            nodes: vec![NodeDoc {
                a: self.root.a.value(),
                q: self.root.q.to_string(),
                connection_point: "1".to_string(),
            }],
            edges: Vec::new(),
            black_nodes: Vec::new(),
        }];
        for (r, edges) in self.levels.iter().enumerate() {
            levels.push(LevelDoc {
                level: r as u32 + 1,
                nodes: edges
                    .iter()
                    .map(|e| NodeDoc {
                        a: e.child.a.value(),
                        q: e.child.q.to_string(),
                        connection_point: e.via.to_string(),
                    })
                    .collect(),
                edges: edges
                    .iter()
                    .map(|e| EdgeDoc {
                        parent: [e.parent.a.value().to_string(), e.parent.q.to_string()],
                        child: [e.child.a.value().to_string(), e.child.q.to_string()],
                        p: e.p,
                        via: e.via.to_string(),
                    })
                    .collect(),
                black_nodes: Vec::new(),
            });
        }
        for (r, level) in self.black_nodes.iter().enumerate() {
            levels[r].black_nodes = level
                .iter()
                .map(|b| BlackDoc {
                    component: [b.component.a.value().to_string(), b.component.q.to_string()],
                    p: b.p,
                    value: b.value.to_string(),
                })
                .collect();
        }
        TreeDoc {
            root: [self.root.a.value().to_string(), self.root.q.to_string()],
            trivial_cycle: self.trivial_cycle,
            limits: LimitsDoc {
                max_level: self.limits.max_level,
                max_p: self.limits.max_p,
                max_value: self.limits.max_value.as_ref().map(|v| v.to_string()),
            },
            levels,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// JSON export document. Unbounded integers are written as decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeDoc {
    pub root: [String; 2],
    pub trivial_cycle: bool,
    pub limits: LimitsDoc,
    pub levels: Vec<LevelDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LimitsDoc {
    pub max_level: u32,
    pub max_p: u32,
    pub max_value: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelDoc {
    pub level: u32,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub black_nodes: Vec<BlackDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NodeDoc {
    pub a: u32,
    pub q: String,
    pub connection_point: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeDoc {
    pub parent: [String; 2],
    pub child: [String; 2],
    pub p: u32,
    pub via: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlackDoc {
    pub component: [String; 2],
    pub p: u32,
    pub value: String,
}

/// One hop of a descent: the component holding the current term and the
/// term it emits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub component: ComponentId,
    pub term: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathOutcome {
    ReachedRoot,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootPath {
    pub start: BigUint,
    pub steps: Vec<PathStep>,
    pub outcome: PathOutcome,
}

impl RootPath {
    pub fn reached_root(&self) -> bool {
        self.outcome == PathOutcome::ReachedRoot
    }
}

/// Walks from `n` down the tree until the root component emits 1, taking at
/// most `max_steps` hops.
pub fn path_to_root(n: &PosOdd, max_steps: u64) -> RootPath {
    let mut steps = Vec::new();
    let mut cur = n.clone();
    let outcome = loop {
        if steps.len() as u64 >= max_steps {
            break PathOutcome::BudgetExhausted;
        }
        let c = locate(&cur);
        let component = ComponentId { a: c.a, q: c.q };
        let term = component.connection_point();
        let done = component.is_root();
        steps.push(PathStep {
            component,
            term: term.value().clone(),
        });
        if done {
            break PathOutcome::ReachedRoot;
        }
        cur = term;
    };
    RootPath {
        start: n.value().clone(),
        steps,
        outcome,
    }
}
