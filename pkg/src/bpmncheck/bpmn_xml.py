"""BPMN 2.0 XML front end: parse the supported subset, serialize models back.

Parsing matches elements by local name so documents with any prefix binding
(including a default namespace) are accepted. The full source document is
retained on the model so diagram-interchange sections and foreign attributes
survive edits: serialization rewrites the original DOM instead of emitting
from scratch whenever the source is available.
"""

from __future__ import annotations

import io
import re
import threading
import warnings
import xml.etree.ElementTree as ET
from collections import deque

from .errors import (
    InternalInvariantError,
    InvalidModelError,
    DanglingReferenceError,
    LossyRoundTripWarning,
    MalformedXmlError,
    UnsupportedElementError,
)
from .ir import (
    CollaborationModel,
    FlowNode,
    MessageFlow,
    NodeKind,
    Process,
    SequenceFlow,
    check_invariants,
)

BPMN_NS = "http://www.omg.org/spec/BPMN/20100524/MODEL"
BPMNDI_NS = "http://www.omg.org/spec/BPMN/20100524/DI"
DC_NS = "http://www.omg.org/spec/DD/20100524/DC"
DI_NS = "http://www.omg.org/spec/DD/20100524/DI"

XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'

# Task variants with identical token semantics; accepted in both modes.
_TASK_ALIASES = {"task", "userTask", "serviceTask", "manualTask"}
_SIMPLE_TAGS = {
    "sendTask": NodeKind.SEND_TASK,
    "receiveTask": NodeKind.RECEIVE_TASK,
    "exclusiveGateway": NodeKind.EXCLUSIVE_GATEWAY,
    "parallelGateway": NodeKind.PARALLEL_GATEWAY,
    "eventBasedGateway": NodeKind.EVENT_BASED_GATEWAY,
}
_EVENT_TAGS = {"startEvent", "endEvent", "intermediateCatchEvent", "intermediateThrowEvent"}
_FLOW_NODE_TAGS = _TASK_ALIASES | set(_SIMPLE_TAGS) | _EVENT_TAGS

# Non-executable process children that carry no control flow.
_BENIGN_TAGS = {
    "documentation",
    "extensionElements",
    "laneSet",
    "dataObject",
    "dataObjectReference",
    "dataStoreReference",
    "ioSpecification",
    "association",
    "textAnnotation",
    "group",
    "property",
    "auditing",
    "monitoring",
    "resourceRole",
    "performer",
}

_KIND_TO_TAG: dict[NodeKind, tuple[str, str | None]] = {
    NodeKind.NONE_START: ("startEvent", None),
    NodeKind.MESSAGE_START: ("startEvent", "messageEventDefinition"),
    NodeKind.TASK: ("task", None),
    NodeKind.SEND_TASK: ("sendTask", None),
    NodeKind.RECEIVE_TASK: ("receiveTask", None),
    NodeKind.EXCLUSIVE_GATEWAY: ("exclusiveGateway", None),
    NodeKind.PARALLEL_GATEWAY: ("parallelGateway", None),
    NodeKind.EVENT_BASED_GATEWAY: ("eventBasedGateway", None),
    NodeKind.MESSAGE_CATCH: ("intermediateCatchEvent", "messageEventDefinition"),
    NodeKind.MESSAGE_THROW: ("intermediateThrowEvent", "messageEventDefinition"),
    NodeKind.NONE_END: ("endEvent", None),
    NodeKind.MESSAGE_END: ("endEvent", "messageEventDefinition"),
    NodeKind.TERMINATE_END: ("endEvent", "terminateEventDefinition"),
}

# ET namespace registration is process-global; serialize under a lock.
_SERIALIZE_LOCK = threading.Lock()


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _ns_of(tag: str) -> str | None:
    if tag.startswith("{"):
        return tag[1:].split("}", 1)[0]
    return None


def _event_definitions(el: ET.Element) -> set[str]:
    return {_local(c.tag) for c in el if _local(c.tag).endswith("EventDefinition")}


def _resolve_event_kind(tag: str, defs: set[str]) -> NodeKind | None:
    if tag == "startEvent":
        if not defs:
            return NodeKind.NONE_START
        if defs == {"messageEventDefinition"}:
            return NodeKind.MESSAGE_START
    elif tag == "endEvent":
        if not defs:
            return NodeKind.NONE_END
        if defs == {"messageEventDefinition"}:
            return NodeKind.MESSAGE_END
        if defs == {"terminateEventDefinition"}:
            return NodeKind.TERMINATE_END
    elif tag == "intermediateCatchEvent":
        if defs == {"messageEventDefinition"}:
            return NodeKind.MESSAGE_CATCH
    elif tag == "intermediateThrowEvent":
        if defs == {"messageEventDefinition"}:
            return NodeKind.MESSAGE_THROW
    return None


def parse_bpmn(xml: str, lenient: bool = False) -> CollaborationModel:
    """Parse a BPMN 2.0 document into the model IR.

    Unsupported flow-node elements raise in strict mode; with ``lenient``
    they are downgraded to plain tasks and recorded in ``parse_warnings``.
    """
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise MalformedXmlError(f"not well-formed XML: {exc}") from exc
    if _local(root.tag) != "definitions":
        raise MalformedXmlError(f"expected a definitions root, got <{_local(root.tag)}>")

    parse_warnings: list[str] = []
    processes: list[Process] = []
    sequence_flows: list[SequenceFlow] = []
    message_flows: list[MessageFlow] = []
    participant_names: dict[str, str] = {}

    for child in root:
        tag = _local(child.tag)
        if tag == "collaboration":
            for item in child:
                itag = _local(item.tag)
                if itag == "participant":
                    ref = item.get("processRef")
                    if ref and item.get("name"):
                        participant_names[ref] = item.get("name")
                elif itag == "messageFlow":
                    message_flows.append(_require_flow(item, MessageFlow))
        elif tag == "process":
            processes.append(
                _parse_process(child, lenient, sequence_flows, parse_warnings)
            )

    if not processes and not message_flows:
        # A definitions document with no process at all is not a model.
        if lenient:
            parse_warnings.append("document contains no process")
        else:
            raise MalformedXmlError("document contains no process")

    named = tuple(
        Process(p.id, p.name or participant_names.get(p.id), p.nodes) for p in processes
    )
    model = CollaborationModel(
        processes=named,
        sequence_flows=tuple(sequence_flows),
        message_flows=tuple(message_flows),
        source_document=xml,
        parse_warnings=tuple(parse_warnings),
    )
    check_invariants(model)
    return model


def _parse_process(
    el: ET.Element,
    lenient: bool,
    sequence_flows: list[SequenceFlow],
    parse_warnings: list[str],
) -> Process:
    pid = el.get("id")
    if not pid:
        raise MalformedXmlError("process without id")
    nodes: list[FlowNode] = []
    for item in el:
        tag = _local(item.tag)
        if tag == "sequenceFlow":
            sequence_flows.append(_require_flow(item, SequenceFlow))
            continue
        if tag in _BENIGN_TAGS:
            continue
        kind = _kind_for_element(tag, item)
        node_id = item.get("id")
        if kind is None:
            shown = tag if tag not in _EVENT_TAGS else f"{tag}[{'+'.join(sorted(_event_definitions(item)))}]"
            if not lenient:
                raise UnsupportedElementError(shown, node_id)
            if node_id:
                parse_warnings.append(f"downgraded unsupported element <{shown}> (id={node_id}) to task")
                kind = NodeKind.TASK
            else:
                parse_warnings.append(f"skipped unsupported element <{shown}> without id")
                continue
        if not node_id:
            raise MalformedXmlError(f"<{tag}> without id in process {pid}")
        nodes.append(FlowNode(id=node_id, kind=kind, process=pid, name=item.get("name") or None))
    return Process(id=pid, name=el.get("name") or None, nodes=tuple(nodes))


def _kind_for_element(tag: str, el: ET.Element) -> NodeKind | None:
    if tag in _TASK_ALIASES:
        return NodeKind.TASK
    if tag in _SIMPLE_TAGS:
        return _SIMPLE_TAGS[tag]
    if tag in _EVENT_TAGS:
        return _resolve_event_kind(tag, _event_definitions(el))
    return None


def _require_flow(el: ET.Element, cls):
    fid = el.get("id")
    src = el.get("sourceRef")
    tgt = el.get("targetRef")
    if not (fid and src and tgt):
        raise MalformedXmlError(f"<{_local(el.tag)}> needs id, sourceRef and targetRef")
    return cls(id=fid, source=src, target=tgt)


def serialize_bpmn(model: CollaborationModel, *, diagram: bool = False) -> str:
    """Serialize a model to BPMN 2.0 XML.

    With a retained source document the original DOM is rewritten in place,
    preserving untouched elements byte-for-byte, foreign attributes, and
    diagram interchange. Otherwise a fresh document is generated; ``diagram``
    additionally emits a minimal auto-layout DI section.
    """
    try:
        check_invariants(model)
    except (InvalidModelError, DanglingReferenceError) as exc:
        raise InternalInvariantError(str(exc)) from exc
    if any(w.startswith("downgraded") for w in model.parse_warnings):
        warnings.warn(
            "model contains nodes downgraded to tasks; serialization is lossy",
            LossyRoundTripWarning,
            stacklevel=2,
        )
    with _SERIALIZE_LOCK:
        if model.source_document is not None:
            return _serialize_with_source(model)
        return _serialize_fresh(model, diagram)


# ---------------------------------------------------------------------------
# Fresh generation


def _q(tag: str) -> str:
    return f"{{{BPMN_NS}}}{tag}"


def _register_default_namespaces() -> None:
    ET.register_namespace("bpmn", BPMN_NS)
    ET.register_namespace("bpmndi", BPMNDI_NS)
    ET.register_namespace("dc", DC_NS)
    ET.register_namespace("di", DI_NS)


def _serialize_fresh(model: CollaborationModel, diagram: bool) -> str:
    _register_default_namespaces()
    root = ET.Element(_q("definitions"), {"id": "Definitions_1", "targetNamespace": BPMN_NS})
    collab_id = None
    if len(model.processes) > 1 or model.message_flows:
        collab_id = "Collaboration_1"
        collab = ET.SubElement(root, _q("collaboration"), {"id": collab_id})
        for p in model.processes:
            attrs = {"id": f"Participant_{p.id}", "processRef": p.id}
            if p.name:
                attrs["name"] = p.name
            ET.SubElement(collab, _q("participant"), attrs)
        for mf in model.message_flows:
            ET.SubElement(
                collab,
                _q("messageFlow"),
                {"id": mf.id, "sourceRef": mf.source, "targetRef": mf.target},
            )
    for p in model.processes:
        attrs = {"id": p.id}
        if p.name and collab_id is None:
            attrs["name"] = p.name
        pel = ET.SubElement(root, _q("process"), attrs)
        for node in p.nodes:
            _emit_node(pel, node)
        for f in model.sequence_flows:
            if model.nodes_by_id[f.source].process == p.id:
                ET.SubElement(
                    pel,
                    _q("sequenceFlow"),
                    {"id": f.id, "sourceRef": f.source, "targetRef": f.target},
                )
    if diagram:
        _append_auto_di(root, model, collab_id)
    return XML_HEADER + ET.tostring(root, encoding="unicode")


def _emit_node(parent: ET.Element, node: FlowNode) -> None:
    tag, event_def = _KIND_TO_TAG[node.kind]
    attrs = {"id": node.id}
    if node.name:
        attrs["name"] = node.name
    el = ET.SubElement(parent, _q(tag), attrs)
    if event_def:
        ET.SubElement(el, _q(event_def), {"id": f"{node.id}_def"})


# ---------------------------------------------------------------------------
# Auto layout (generated models only; enough for a diagram viewer)

_NODE_SIZES = {
    "event": (36, 36),
    "gateway": (50, 50),
    "task": (100, 80),
}
_X_STEP = 170
_Y_STEP = 110


def _node_size(kind: NodeKind) -> tuple[int, int]:
    if kind.value.endswith("Gateway"):
        return _NODE_SIZES["gateway"]
    if kind.value.endswith("Event") or kind.value.startswith("intermediate"):
        return _NODE_SIZES["event"]
    return _NODE_SIZES["task"]


def _layout(model: CollaborationModel) -> dict[str, tuple[int, int, int, int]]:
    bounds: dict[str, tuple[int, int, int, int]] = {}
    band_y = 60
    for p in model.processes:
        layers: dict[str, int] = {}
        heads = [n.id for n in p.nodes if not model.incoming[n.id]]
        queue = deque((h, 0) for h in heads)
        while queue:
            nid, layer = queue.popleft()
            if nid in layers:
                continue
            layers[nid] = layer
            for f in model.outgoing[nid]:
                queue.append((f.target, layer + 1))
        per_layer: dict[int, int] = {}
        max_row = 0
        for node in p.nodes:
            layer = layers.get(node.id, 0)
            row = per_layer.get(layer, 0)
            per_layer[layer] = row + 1
            max_row = max(max_row, row)
            w, h = _node_size(node.kind)
            x = 60 + layer * _X_STEP + (100 - w) // 2
            y = band_y + row * _Y_STEP + (80 - h) // 2
            bounds[node.id] = (x, y, w, h)
        band_y += (max_row + 1) * _Y_STEP + 80
    return bounds


def _append_auto_di(root: ET.Element, model: CollaborationModel, collab_id: str | None) -> None:
    bounds = _layout(model)
    diagram = ET.SubElement(root, f"{{{BPMNDI_NS}}}BPMNDiagram", {"id": "BPMNDiagram_1"})
    plane_ref = collab_id or (model.processes[0].id if model.processes else "Definitions_1")
    plane = ET.SubElement(
        diagram, f"{{{BPMNDI_NS}}}BPMNPlane", {"id": "BPMNPlane_1", "bpmnElement": plane_ref}
    )
    if collab_id:
        for p in model.processes:
            xs = [bounds[n.id] for n in p.nodes]
            if not xs:
                continue
            x0 = min(b[0] for b in xs) - 40
            y0 = min(b[1] for b in xs) - 30
            x1 = max(b[0] + b[2] for b in xs) + 40
            y1 = max(b[1] + b[3] for b in xs) + 30
            shape = ET.SubElement(
                plane,
                f"{{{BPMNDI_NS}}}BPMNShape",
                {"id": f"Participant_{p.id}_di", "bpmnElement": f"Participant_{p.id}", "isHorizontal": "true"},
            )
            _emit_bounds(shape, x0, y0, x1 - x0, y1 - y0)
    for nid, (x, y, w, h) in bounds.items():
        shape = ET.SubElement(
            plane, f"{{{BPMNDI_NS}}}BPMNShape", {"id": f"{nid}_di", "bpmnElement": nid}
        )
        _emit_bounds(shape, x, y, w, h)
    for f in list(model.sequence_flows) + list(model.message_flows):
        if f.source not in bounds or f.target not in bounds:
            continue
        edge = ET.SubElement(
            plane, f"{{{BPMNDI_NS}}}BPMNEdge", {"id": f"{f.id}_di", "bpmnElement": f.id}
        )
        for nid in (f.source, f.target):
            x, y, w, h = bounds[nid]
            ET.SubElement(
                edge, f"{{{DI_NS}}}waypoint", {"x": str(x + w // 2), "y": str(y + h // 2)}
            )


def _emit_bounds(shape: ET.Element, x: int, y: int, w: int, h: int) -> None:
    ET.SubElement(
        shape,
        f"{{{DC_NS}}}Bounds",
        {"x": str(x), "y": str(y), "width": str(w), "height": str(h)},
    )


# ---------------------------------------------------------------------------
# Source-document rewriting


def _register_source_namespaces(xml: str) -> str:
    """Re-register the source's prefix bindings; returns the BPMN model URI."""
    bpmn_uri = BPMN_NS
    try:
        for event, (prefix, uri) in ET.iterparse(io.StringIO(xml), events=("start-ns",)):
            ET.register_namespace(prefix, uri)
            if uri == BPMN_NS:
                bpmn_uri = uri
    except ET.ParseError:
        pass
    return bpmn_uri


def _serialize_with_source(model: CollaborationModel) -> str:
    _register_default_namespaces()
    _register_source_namespaces(model.source_document)
    try:
        root = ET.fromstring(model.source_document)
    except ET.ParseError as exc:
        raise InternalInvariantError(f"retained source document unparseable: {exc}") from exc

    by_id: dict[str, ET.Element] = {}
    parents: dict[ET.Element, ET.Element] = {}
    for parent in root.iter():
        for child in parent:
            parents[child] = parent
    for el in root.iter():
        eid = el.get("id")
        if eid and eid not in by_id:
            by_id[eid] = el

    ns = _ns_of(root.tag) or BPMN_NS

    def q(tag: str) -> str:
        return f"{{{ns}}}{tag}" if ns else tag

    # Ensure process containers exist.
    proc_els: dict[str, ET.Element] = {}
    for p in model.processes:
        el = by_id.get(p.id)
        if el is None or _local(el.tag) != "process":
            el = ET.Element(q("process"), {"id": p.id})
            _insert_before_di(root, el)
            by_id[p.id] = el
            parents[el] = root
        proc_els[p.id] = el

    touched_nodes: set[str] = set()
    created_nodes: list[FlowNode] = []

    for p in model.processes:
        for node in p.nodes:
            el = by_id.get(node.id)
            tag, event_def = _KIND_TO_TAG[node.kind]
            if el is None:
                el = ET.Element(q(tag), {"id": node.id})
                if node.name:
                    el.set("name", node.name)
                if event_def:
                    ET.SubElement(el, q(event_def), {"id": f"{node.id}_def"})
                proc_els[p.id].append(el)
                by_id[node.id] = el
                parents[el] = proc_els[p.id]
                created_nodes.append(node)
                continue
            current_defs = _event_definitions(el)
            wanted_defs = {event_def} if event_def else set()
            if _local(el.tag) != tag or current_defs != wanted_defs:
                el.tag = f"{{{_ns_of(el.tag)}}}{tag}" if _ns_of(el.tag) else tag
                for c in [c for c in el if _local(c.tag).endswith("EventDefinition")]:
                    el.remove(c)
                if event_def:
                    ET.SubElement(el, q(event_def), {"id": f"{node.id}_def"})
                if node.kind is NodeKind.TASK:
                    el.attrib.pop("messageRef", None)
                    el.attrib.pop("instantiate", None)
                touched_nodes.add(node.id)
            if node.name:
                if el.get("name") != node.name:
                    el.set("name", node.name)
            elif "name" in el.attrib:
                del el.attrib["name"]

    created_flows: list = []
    for f in model.sequence_flows:
        el = by_id.get(f.id)
        if el is None:
            pid = model.nodes_by_id[f.source].process
            el = ET.SubElement(
                proc_els[pid], q("sequenceFlow"), {"id": f.id, "sourceRef": f.source, "targetRef": f.target}
            )
            by_id[f.id] = el
            parents[el] = proc_els[pid]
            created_flows.append(f)
            touched_nodes.update((f.source, f.target))
        else:
            if el.get("sourceRef") != f.source or el.get("targetRef") != f.target:
                touched_nodes.update(
                    x for x in (el.get("sourceRef"), el.get("targetRef"), f.source, f.target) if x
                )
                el.set("sourceRef", f.source)
                el.set("targetRef", f.target)

    if model.message_flows:
        collab = next((c for c in root if _local(c.tag) == "collaboration"), None)
        if collab is None:
            collab = ET.Element(q("collaboration"), {"id": "Collaboration_1"})
            for p in model.processes:
                ET.SubElement(
                    collab, q("participant"), {"id": f"Participant_{p.id}", "processRef": p.id}
                )
            root.insert(0, collab)
            parents[collab] = root
        for f in model.message_flows:
            el = by_id.get(f.id)
            if el is None:
                el = ET.SubElement(
                    collab, q("messageFlow"), {"id": f.id, "sourceRef": f.source, "targetRef": f.target}
                )
                by_id[f.id] = el
                parents[el] = collab
                created_flows.append(f)
            else:
                el.set("sourceRef", f.source)
                el.set("targetRef", f.target)

    removed_ids = _remove_stale_elements(root, parents, model)
    touched_nodes.update(removed_ids)
    _sync_flow_refs(model, by_id, touched_nodes)
    _sync_di(root, model, by_id, created_nodes, created_flows, removed_ids)
    return XML_HEADER + ET.tostring(root, encoding="unicode")


def _insert_before_di(root: ET.Element, el: ET.Element) -> None:
    for i, child in enumerate(root):
        if _local(child.tag) == "BPMNDiagram":
            root.insert(i, el)
            return
    root.append(el)


def _remove_stale_elements(root, parents, model: CollaborationModel) -> set[str]:
    keep = set(model.nodes_by_id) | set(model.flows_by_id) | set(model.message_flows_by_id)
    removed: set[str] = set()
    removable = _FLOW_NODE_TAGS | {"sequenceFlow", "messageFlow"}
    for el in list(root.iter()):
        tag = _local(el.tag)
        eid = el.get("id")
        if tag in removable and eid and eid not in keep:
            parent = parents.get(el)
            if parent is not None and _local(parent.tag) in ("process", "collaboration"):
                parent.remove(el)
                removed.add(eid)
    return removed


def _sync_flow_refs(model: CollaborationModel, by_id, touched_nodes: set[str]) -> None:
    """Rebuild <incoming>/<outgoing> children for nodes whose edges changed."""
    for nid in touched_nodes:
        el = by_id.get(nid)
        if el is None or nid not in model.nodes_by_id:
            continue
        refs = [c for c in el if _local(c.tag) in ("incoming", "outgoing")]
        if not refs:
            continue
        ns = _ns_of(el.tag)
        prefix = f"{{{ns}}}" if ns else ""
        for c in refs:
            el.remove(c)
        for f in model.incoming[nid]:
            sub = ET.Element(f"{prefix}incoming")
            sub.text = f.id
            el.append(sub)
        for f in model.outgoing[nid]:
            sub = ET.Element(f"{prefix}outgoing")
            sub.text = f.id
            el.append(sub)


def _sync_di(root, model, by_id, created_nodes, created_flows, removed_ids) -> None:
    plane = None
    for el in root.iter():
        if _local(el.tag) == "BPMNPlane":
            plane = el
            break
    if plane is None:
        return
    shapes: dict[str, ET.Element] = {}
    for el in list(plane):
        ref = el.get("bpmnElement")
        if ref in removed_ids:
            plane.remove(el)
        elif ref:
            shapes[ref] = el

    def center(ref: str) -> tuple[float, float] | None:
        shape = shapes.get(ref)
        if shape is None:
            return None
        for c in shape:
            if _local(c.tag) == "Bounds":
                x, y = float(c.get("x", 0)), float(c.get("y", 0))
                w, h = float(c.get("width", 0)), float(c.get("height", 0))
                return x + w / 2, y + h / 2
        return None

    for node in created_nodes:
        anchor = None
        for f in model.sequence_flows + model.message_flows:
            if f.target == node.id:
                anchor = center(f.source)
            elif f.source == node.id:
                anchor = center(f.target)
            if anchor:
                break
        x, y = (anchor[0] + 40, anchor[1] + 120) if anchor else (60.0, 60.0)
        w, h = _node_size(node.kind)
        shape = ET.SubElement(
            plane, f"{{{BPMNDI_NS}}}BPMNShape", {"id": f"{node.id}_di", "bpmnElement": node.id}
        )
        _emit_bounds(shape, int(x), int(y), w, h)
        shapes[node.id] = shape

    for f in created_flows:
        a, b = center(f.source), center(f.target)
        if a is None or b is None:
            continue
        edge = ET.SubElement(
            plane, f"{{{BPMNDI_NS}}}BPMNEdge", {"id": f"{f.id}_di", "bpmnElement": f.id}
        )
        for px, py in (a, b):
            ET.SubElement(edge, f"{{{DI_NS}}}waypoint", {"x": str(int(px)), "y": str(int(py))})
