//! Text-to-model transformation for Fritzing sketch XML.
//!
//! Supported subset: root `module`, `instances/instance[@moduleIdRef]` with a
//! `title` child and per-instance `views/breadboardView/connectors/connector`
//! elements holding `connects/connect[@connectorId][@modelIndex]` records.
//! Wire instances (moduleIdRef starting with `WireModule`) are collapsed into
//! direct connector-to-connector edges; geometry, properties and the other
//! views are ignored.

use std::collections::{BTreeSet, HashMap};

use roxmltree::{Document, Node};

use super::{ConnectorId, HardwareError, HardwareModel, ModelBuilder};
use crate::platform_kb::PlatformRepository;

const WIRE_PREFIX: &str = "WireModule";

pub fn parse_fritzing(
    xml: &str,
    repo: &PlatformRepository,
) -> Result<HardwareModel, HardwareError> {
    let doc = Document::parse(xml).map_err(|e| HardwareError::XmlSyntax {
        message: e.to_string(),
    })?;
    let root = doc.root_element();
    if root.tag_name().name() != "module" {
        return Err(HardwareError::XmlSyntax {
            message: format!(
                "expected root element `module`, found `{}`",
                root.tag_name().name()
            ),
        });
    }
    let instances = collect_instances(root)?;

    let mut builder = ModelBuilder::new();
    let mut unknown = Vec::new();
    // (modelIndex, connectorId) -> arena id, for part instances
    let mut part_connectors: HashMap<(String, String), ConnectorId> = HashMap::new();
    let mut part_components = HashMap::new();
    let mut wire_instances: HashMap<String, usize> = HashMap::new();

    for (idx, instance) in instances.iter().enumerate() {
        if instance.is_wire() {
            wire_instances.insert(instance.model_index.clone(), idx);
            continue;
        }
        let Some(record) = repo
            .lookup_component(&instance.module_id_ref)
            .or_else(|| repo.lookup_component(&instance.title))
        else {
            unknown.push(format!(
                "{} (moduleIdRef {})",
                instance.title, instance.module_id_ref
            ));
            continue;
        };
        let connector_names: Vec<(&str, &str)> = instance
            .connectors
            .iter()
            .map(|c| (c.id.as_str(), c.name.as_str()))
            .collect();
        let component = builder.add_component(
            &instance.module_id_ref,
            &instance.title,
            &record.name,
            record.ctype,
            &connector_names,
        );
        part_components.insert(instance.model_index.clone(), component);
        for (slot, connector) in instance.connectors.iter().enumerate() {
            let arena_id = builder.component_connector(component, slot);
            part_connectors.insert(
                (instance.model_index.clone(), connector.id.clone()),
                arena_id,
            );
        }
    }
    if !unknown.is_empty() {
        return Err(HardwareError::UnknownComponentType { instances: unknown });
    }

    // Wire connectors form clusters (a wire's own ends are linked, wires can
    // chain); every part connector attached to a cluster joins one net.
    let mut dsu = Dsu::default();
    let mut wire_nodes: HashMap<(String, String), usize> = HashMap::new();
    for &idx in wire_instances.values() {
        let instance = &instances[idx];
        let mut first: Option<usize> = None;
        for connector in &instance.connectors {
            let node = wire_node(
                &mut dsu,
                &mut wire_nodes,
                &instance.model_index,
                &connector.id,
            );
            if let Some(anchor) = first {
                dsu.union(anchor, node);
            } else {
                first = Some(node);
            }
        }
    }

    let mut direct_edges: Vec<(ConnectorId, ConnectorId)> = Vec::new();
    let mut attachments: Vec<(usize, ConnectorId)> = Vec::new();
    for instance in &instances {
        for connector in &instance.connectors {
            for target in &connector.connects {
                let from_wire = instance.is_wire();
                let to_wire = wire_instances.contains_key(&target.model_index);
                match (from_wire, to_wire) {
                    (false, false) => {
                        let a = resolve_part_connector(
                            &mut builder,
                            &mut part_connectors,
                            &part_components,
                            &instance.model_index,
                            &connector.id,
                        )?;
                        let b = resolve_part_connector(
                            &mut builder,
                            &mut part_connectors,
                            &part_components,
                            &target.model_index,
                            &target.connector_id,
                        )?;
                        direct_edges.push((a, b));
                    }
                    (true, false) => {
                        let node = wire_node(
                            &mut dsu,
                            &mut wire_nodes,
                            &instance.model_index,
                            &connector.id,
                        );
                        let part = resolve_part_connector(
                            &mut builder,
                            &mut part_connectors,
                            &part_components,
                            &target.model_index,
                            &target.connector_id,
                        )?;
                        attachments.push((node, part));
                    }
                    (false, true) => {
                        let part = resolve_part_connector(
                            &mut builder,
                            &mut part_connectors,
                            &part_components,
                            &instance.model_index,
                            &connector.id,
                        )?;
                        let node = wire_node(
                            &mut dsu,
                            &mut wire_nodes,
                            &target.model_index,
                            &target.connector_id,
                        );
                        attachments.push((node, part));
                    }
                    (true, true) => {
                        let a = wire_node(
                            &mut dsu,
                            &mut wire_nodes,
                            &instance.model_index,
                            &connector.id,
                        );
                        let b = wire_node(
                            &mut dsu,
                            &mut wire_nodes,
                            &target.model_index,
                            &target.connector_id,
                        );
                        dsu.union(a, b);
                    }
                }
            }
        }
    }

    for (a, b) in direct_edges {
        builder.connect(a, b);
    }

    // group attachments per net, preserving first-appearance order
    let mut cluster_order: Vec<usize> = Vec::new();
    let mut clusters: HashMap<usize, Vec<ConnectorId>> = HashMap::new();
    let mut seen: BTreeSet<(usize, ConnectorId)> = BTreeSet::new();
    for (node, part) in attachments {
        let root = dsu.find(node);
        if !seen.insert((root, part)) {
            continue;
        }
        let members = clusters.entry(root).or_insert_with(|| {
            cluster_order.push(root);
            Vec::new()
        });
        members.push(part);
    }
    for root in cluster_order {
        let members = &clusters[&root];
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                builder.connect(members[i], members[j]);
            }
        }
    }

    builder.build()
}

#[derive(Debug)]
struct RawConnect {
    connector_id: String,
    model_index: String,
}

#[derive(Debug)]
struct RawConnector {
    id: String,
    name: String,
    connects: Vec<RawConnect>,
}

#[derive(Debug)]
struct RawInstance {
    module_id_ref: String,
    model_index: String,
    title: String,
    connectors: Vec<RawConnector>,
}

impl RawInstance {
    fn is_wire(&self) -> bool {
        self.module_id_ref.starts_with(WIRE_PREFIX)
    }
}

fn collect_instances(root: Node) -> Result<Vec<RawInstance>, HardwareError> {
    let Some(instances) = child_element(root, "instances") else {
        return Err(HardwareError::XmlSyntax {
            message: "missing `instances` element".to_string(),
        });
    };
    let mut out = Vec::new();
    for instance in instances.children().filter(|n| n.has_tag_name("instance")) {
        let module_id_ref = instance
            .attribute("moduleIdRef")
            .ok_or_else(|| HardwareError::XmlSyntax {
                message: "instance without moduleIdRef".to_string(),
            })?
            .to_string();
        let model_index = instance
            .attribute("modelIndex")
            .ok_or_else(|| HardwareError::XmlSyntax {
                message: format!("instance {module_id_ref} without modelIndex"),
            })?
            .to_string();
        let title = child_element(instance, "title")
            .and_then(|t| t.text())
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .unwrap_or_else(|| module_id_ref.clone());
        let mut connectors = Vec::new();
        if let Some(view) = child_element(instance, "views")
            .and_then(|v| child_element(v, "breadboardView"))
            .and_then(|v| child_element(v, "connectors"))
        {
            for connector in view.children().filter(|n| n.has_tag_name("connector")) {
                let id = connector
                    .attribute("connectorId")
                    .ok_or_else(|| HardwareError::XmlSyntax {
                        message: format!("connector without connectorId in {module_id_ref}"),
                    })?
                    .to_string();
                let name = connector.attribute("name").unwrap_or(&id).to_string();
                let mut connects = Vec::new();
                if let Some(list) = child_element(connector, "connects") {
                    for connect in list.children().filter(|n| n.has_tag_name("connect")) {
                        let (Some(cid), Some(mi)) = (
                            connect.attribute("connectorId"),
                            connect.attribute("modelIndex"),
                        ) else {
                            return Err(HardwareError::XmlSyntax {
                                message: format!(
                                    "connect record without connectorId/modelIndex in {module_id_ref}"
                                ),
                            });
                        };
                        connects.push(RawConnect {
                            connector_id: cid.to_string(),
                            model_index: mi.to_string(),
                        });
                    }
                }
                connectors.push(RawConnector { id, name, connects });
            }
        }
        out.push(RawInstance {
            module_id_ref,
            model_index,
            title,
            connectors,
        });
    }
    Ok(out)
}

fn child_element<'a>(node: Node<'a, 'a>, name: &str) -> Option<Node<'a, 'a>> {
    node.children().find(|n| n.has_tag_name(name))
}

fn resolve_part_connector(
    builder: &mut ModelBuilder,
    part_connectors: &mut HashMap<(String, String), ConnectorId>,
    part_components: &HashMap<String, super::ComponentId>,
    model_index: &str,
    connector_id: &str,
) -> Result<ConnectorId, HardwareError> {
    let key = (model_index.to_string(), connector_id.to_string());
    if let Some(&id) = part_connectors.get(&key) {
        return Ok(id);
    }
    let Some(&component) = part_components.get(model_index) else {
        return Err(HardwareError::XmlSyntax {
            message: format!("connect record references unknown modelIndex {model_index}"),
        });
    };
    // referenced but undeclared: materialize with the raw id as its name
    let id = builder.add_connector(component, connector_id, connector_id);
    part_connectors.insert(key, id);
    Ok(id)
}

fn wire_node(
    dsu: &mut Dsu,
    nodes: &mut HashMap<(String, String), usize>,
    model_index: &str,
    connector_id: &str,
) -> usize {
    let key = (model_index.to_string(), connector_id.to_string());
    if let Some(&node) = nodes.get(&key) {
        return node;
    }
    let node = dsu.push();
    nodes.insert(key, node);
    node
}

#[derive(Debug, Default)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn push(&mut self) -> usize {
        let node = self.parent.len();
        self.parent.push(node);
        node
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[rb] = ra;
        }
    }
}
