//! Hardware model extracted from a schematic sketch and the board-to-component
//! connector mapping traversal.
//!
//! The model is a typed connector graph: each component owns an ordered list
//! of connectors, wire links are symmetric edges. For every board connector a
//! depth-first search runs until it reaches connectors whose parent performs
//! input or output; passive components are traversed through by expanding
//! both their wire peers and their sibling connectors.

mod fritzing;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::platform_kb::ComponentType;

pub use fritzing::parse_fritzing;

#[derive(Debug, Error)]
pub enum HardwareError {
    #[error("invalid sketch XML: {message}")]
    XmlSyntax { message: String },
    #[error("cannot resolve a component type for: {}", instances.join(", "))]
    UnknownComponentType { instances: Vec<String> },
    #[error("sketch contains no board component")]
    NoBoard,
    #[error("sketch contains more than one board component")]
    MultipleBoards,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConnectorId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sketch-unique identifier (module id reference).
    pub id: String,
    pub title: String,
    /// Canonical registry name, e.g. `Basic Servo`.
    pub kind: String,
    pub ctype: ComponentType,
    pub connectors: Vec<ConnectorId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub id: String,
    pub name: String,
    pub component: ComponentId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardwareModel {
    components: Vec<Component>,
    connectors: Vec<Connector>,
    adjacency: Vec<Vec<ConnectorId>>,
    board: ComponentId,
    edge_count: usize,
}

impl HardwareModel {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn connector(&self, id: ConnectorId) -> &Connector {
        &self.connectors[id.0]
    }

    pub fn component(&self, id: ComponentId) -> &Component {
        &self.components[id.0]
    }

    pub fn board(&self) -> &Component {
        &self.components[self.board.0]
    }

    /// Total connectors (graph nodes).
    pub fn node_count(&self) -> usize {
        self.connectors.len()
    }

    /// Distinct wire links (graph edges).
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Connectors belonging to the board.
    pub fn board_connector_count(&self) -> usize {
        self.board().connectors.len()
    }

    pub fn connected_to(&self, id: ConnectorId) -> &[ConnectorId] {
        &self.adjacency[id.0]
    }

    /// Worst-case traversal budget for the whole mapping run.
    pub fn visit_bound(&self) -> usize {
        self.board_connector_count() * (self.node_count() + self.edge_count())
    }

    /// `sanitized(title) + sanitized(connector name)`, the identifier style
    /// used in mapping entries and generated port constants.
    pub fn qualified_name(&self, id: ConnectorId) -> String {
        let connector = self.connector(id);
        let component = self.component(connector.component);
        format!(
            "{}{}",
            sanitize(&component.title),
            sanitize(&connector.name)
        )
    }
}

/// Keeps alphanumerics and hyphens; everything else is stripped.
pub fn sanitize(text: &str) -> String {
    text.chars()
        .filter(|c| c.is_alphanumeric() || *c == '-')
        .collect()
}

/// Incrementally assembles a validated [`HardwareModel`].
#[derive(Debug, Default)]
pub struct ModelBuilder {
    components: Vec<Component>,
    connectors: Vec<Connector>,
    adjacency: Vec<Vec<ConnectorId>>,
    edges: std::collections::BTreeSet<(ConnectorId, ConnectorId)>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_component(
        &mut self,
        id: &str,
        title: &str,
        kind: &str,
        ctype: ComponentType,
        connector_names: &[(&str, &str)],
    ) -> ComponentId {
        let component_id = ComponentId(self.components.len());
        let mut ids = Vec::with_capacity(connector_names.len());
        for (cid, name) in connector_names {
            ids.push(self.push_connector(component_id, cid, name));
        }
        self.components.push(Component {
            id: id.to_string(),
            title: title.to_string(),
            kind: kind.to_string(),
            ctype,
            connectors: ids,
        });
        component_id
    }

    /// Arena id of the `slot`-th declared connector of `component`.
    pub fn component_connector(&self, component: ComponentId, slot: usize) -> ConnectorId {
        self.components[component.0].connectors[slot]
    }

    /// Adds a connector to an already-declared component (used for
    /// connection records that reference undeclared connectors).
    pub fn add_connector(&mut self, component: ComponentId, cid: &str, name: &str) -> ConnectorId {
        let connector_id = self.push_connector(component, cid, name);
        self.components[component.0].connectors.push(connector_id);
        connector_id
    }

    fn push_connector(&mut self, component: ComponentId, cid: &str, name: &str) -> ConnectorId {
        let connector_id = ConnectorId(self.connectors.len());
        self.connectors.push(Connector {
            id: cid.to_string(),
            name: name.to_string(),
            component,
        });
        self.adjacency.push(Vec::new());
        connector_id
    }

    /// Records a symmetric wire link; duplicates and self-links are ignored.
    pub fn connect(&mut self, a: ConnectorId, b: ConnectorId) {
        if a == b {
            return;
        }
        let key = (a.min(b), a.max(b));
        if self.edges.insert(key) {
            self.adjacency[a.0].push(b);
            self.adjacency[b.0].push(a);
        }
    }

    pub fn build(self) -> Result<HardwareModel, HardwareError> {
        let boards: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.ctype == ComponentType::Board)
            .map(|(i, _)| i)
            .collect();
        let board = match boards.as_slice() {
            [] => return Err(HardwareError::NoBoard),
            [single] => ComponentId(*single),
            _ => return Err(HardwareError::MultipleBoards),
        };
        Ok(HardwareModel {
            components: self.components,
            connectors: self.connectors,
            adjacency: self.adjacency,
            board,
            edge_count: self.edges.len(),
        })
    }
}

/// One `(board connector, endpoint)` pair found by the traversal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingEntry {
    /// Board pin label, e.g. `12`.
    pub board_connector: String,
    /// Endpoint identifier, e.g. `Red633nm-LED1WriteP1`.
    pub endpoint_qualified: String,
    pub component_kind: String,
    pub component_title: String,
    pub connector_name: String,
    pub ctype: ComponentType,
}

/// Ordered mapping entries; entries follow the board's declared connector
/// order, then discovery order within one seed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MappingsSet {
    pub entries: Vec<MappingEntry>,
}

impl MappingsSet {
    /// Endpoint qualified name -> board pin label (first entry wins when an
    /// endpoint is reachable from several board connectors).
    pub fn pin_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        for entry in &self.entries {
            map.entry(entry.endpoint_qualified.clone())
                .or_insert_with(|| entry.board_connector.clone());
        }
        map
    }

    /// Distinct component kinds of mapped endpoints, in entry order.
    pub fn mapped_kinds(&self) -> Vec<String> {
        let mut kinds = Vec::new();
        for entry in &self.entries {
            if !kinds.contains(&entry.component_kind) {
                kinds.push(entry.component_kind.clone());
            }
        }
        kinds
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for MappingsSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", entry.endpoint_qualified, entry.board_connector)?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Traversal {
    pub mappings: MappingsSet,
    /// Connectors expanded across all seeds (first dequeue per seed).
    pub visit_count: usize,
}

/// Runs the mapping identification for every board connector.
pub fn traverse(model: &HardwareModel) -> Traversal {
    let mut entries = Vec::new();
    let mut visit_count = 0usize;
    for &seed in &model.board().connectors {
        let mut stack = vec![seed];
        let mut visited = vec![false; model.node_count()];
        while let Some(current) = stack.pop() {
            if visited[current.0] {
                continue;
            }
            visited[current.0] = true;
            visit_count += 1;
            let parent = model.component(model.connector(current).component);
            match parent.ctype {
                ComponentType::Input | ComponentType::Output => {
                    entries.push(MappingEntry {
                        board_connector: model.connector(seed).name.clone(),
                        endpoint_qualified: model.qualified_name(current),
                        component_kind: parent.kind.clone(),
                        component_title: parent.title.clone(),
                        connector_name: model.connector(current).name.clone(),
                        ctype: parent.ctype,
                    });
                }
                ctype => {
                    stack.extend(model.connected_to(current));
                    if ctype != ComponentType::Board {
                        stack.extend(&parent.connectors);
                    }
                }
            }
        }
    }
    Traversal {
        mappings: MappingsSet { entries },
        visit_count,
    }
}

pub fn analyse_hardware_platform(model: &HardwareModel) -> MappingsSet {
    traverse(model).mappings
}

/// Brute-force oracle: reachability by boolean transitive closure over the
/// directed expansion graph, filtering input/output endpoints. Used by tests
/// to cross-check the stack traversal.
#[allow(clippy::needless_range_loop)]
pub fn reachable_endpoints_closure(model: &HardwareModel) -> Vec<(String, String)> {
    let n = model.node_count();
    let mut reach = vec![vec![false; n]; n];
    for u in 0..n {
        reach[u][u] = true;
        let parent = model.component(model.connector(ConnectorId(u)).component);
        if matches!(parent.ctype, ComponentType::Input | ComponentType::Output) {
            continue; // endpoints are absorbing
        }
        for &v in model.connected_to(ConnectorId(u)) {
            reach[u][v.0] = true;
        }
        if parent.ctype != ComponentType::Board {
            for &v in &parent.connectors {
                reach[u][v.0] = true;
            }
        }
    }
    // Floyd-Warshall closure
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for &seed in &model.board().connectors {
        for d in 0..n {
            let parent = model.component(model.connector(ConnectorId(d)).component);
            if matches!(parent.ctype, ComponentType::Input | ComponentType::Output)
                && reach[seed.0][d]
            {
                pairs.push((
                    model.connector(seed).name.clone(),
                    model.qualified_name(ConnectorId(d)),
                ));
            }
        }
    }
    pairs
}
