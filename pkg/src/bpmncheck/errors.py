"""Exception types shared across the package."""


class BpmnCheckError(Exception):
    """Base class for every error raised by bpmncheck."""


class MalformedXmlError(BpmnCheckError):
    """The input is not well-formed XML or has no BPMN definitions root."""


class UnsupportedElementError(BpmnCheckError):
    """A flow-node tag outside the supported subset was found in strict mode."""

    def __init__(self, tag: str, element_id: str | None = None):
        self.tag = tag
        self.element_id = element_id
        where = f" (id={element_id})" if element_id else ""
        super().__init__(f"unsupported element <{tag}>{where}")


class DanglingReferenceError(BpmnCheckError):
    """A flow endpoint references an element id that does not exist."""


class InvalidModelError(BpmnCheckError):
    """A structural invariant of the model is violated."""


class InternalInvariantError(BpmnCheckError):
    """An in-memory model failed its invariants before serialization."""


class NotEnabledError(BpmnCheckError):
    """fire() was called with a transition that is not enabled."""


class StaleFixError(BpmnCheckError):
    """A quick fix no longer matches the model it is being applied to."""


class LossyRoundTripWarning(UserWarning):
    """Serializing a leniently-parsed model re-emits downgraded nodes as tasks."""
