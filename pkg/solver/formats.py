# solver/formats.py
"""
Instance documents: line-oriented text and its JSON mirror.

Text form::

    version 1
    # comment
    var X1 [1,5]
    var X2 {1,3,4}
    prec X1 X2
    meta source scheduling

Both forms are checked by ``InstanceDocumentSerializer``.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from core.models import FiniteDomain, build_instance
from core.exceptions import InstanceFormatError

from .serializers import InstanceDocumentSerializer

logger = logging.getLogger(__name__)

_RANGE = re.compile(r"^\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$")
_SET = re.compile(r"^\{\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\}$")


@dataclass(frozen=True)
class VariableSpec:
    name: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(set(self.values))))

    @property
    def is_interval(self):
        return self.values[-1] - self.values[0] + 1 == len(self.values)


@dataclass(frozen=True)
class InstanceFile:
    variables: tuple
    precedences: tuple = ()
    metadata: dict = field(default_factory=dict)
    version: int = 1

    def to_instance(self):
        position = {var.name: k for k, var in enumerate(self.variables)}
        return build_instance(
            [FiniteDomain(var.values) for var in self.variables],
            [(position[a], position[b]) for a, b in self.precedences],
            names=[var.name for var in self.variables],
        )

    @classmethod
    def from_instance(cls, instance, metadata=None):
        """Document for ``instance`` in its original (denormalized) values."""
        variables = tuple(
            VariableSpec(instance.name(i), dom.shift(instance.value_offset).values)
            for i, dom in enumerate(instance.domains)
        )
        precedences = tuple((instance.name(i), instance.name(j)) for i, j in sorted(instance.graph.edges))
        return cls(variables, precedences, dict(metadata or {}))


# ===============================================================
# 🔄 DATA (dict) <-> DOCUMENT
# ===============================================================
def document_from_data(data):
    serializer = InstanceDocumentSerializer(data=data)
    if not serializer.is_valid():
        logger.warning(f"❌ Invalid instance document: {serializer.errors}")
        raise InstanceFormatError("invalid instance document", detail=serializer.errors)
    return document_from_validated(serializer.validated_data)


def document_from_validated(validated):
    variables = []
    for var in validated["variables"]:
        values = var["values"] if "values" in var else range(var["min"], var["max"] + 1)
        variables.append(VariableSpec(var["name"], tuple(values)))
    return InstanceFile(
        variables=tuple(variables),
        precedences=tuple(tuple(pair) for pair in validated.get("precedences", [])),
        metadata=dict(validated.get("metadata", {})),
        version=validated.get("version", 1),
    )


def document_to_data(doc):
    variables = []
    for var in doc.variables:
        if var.is_interval:
            variables.append({"name": var.name, "min": var.values[0], "max": var.values[-1]})
        else:
            variables.append({"name": var.name, "values": list(var.values)})
    return {
        "version": doc.version,
        "variables": variables,
        "precedences": [list(pair) for pair in doc.precedences],
        "metadata": dict(doc.metadata),
    }


# ===============================================================
# 📝 TEXT FORM
# ===============================================================
def parse_instance_text(text):
    data = {"variables": [], "precedences": [], "metadata": {}}
    seen_version = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "version":
            if seen_version or not rest.isdigit():
                raise InstanceFormatError(f"line {number}: bad version line {raw!r}")
            data["version"] = int(rest)
            seen_version = True
        elif keyword == "var":
            name, _, domain = rest.partition(" ")
            data["variables"].append({"name": name, **_parse_domain(domain.strip(), number)})
        elif keyword == "prec":
            parts = rest.split()
            if len(parts) != 2:
                raise InstanceFormatError(f"line {number}: 'prec' takes two names")
            data["precedences"].append(parts)
        elif keyword == "meta":
            key, _, value = rest.partition(" ")
            if not key:
                raise InstanceFormatError(f"line {number}: 'meta' needs a key")
            data["metadata"][key] = value.strip()
        else:
            raise InstanceFormatError(f"line {number}: unknown keyword {keyword!r}")
    if not seen_version:
        raise InstanceFormatError("missing 'version' line")
    return document_from_data(data)


def _parse_domain(text, number):
    match = _RANGE.match(text)
    if match:
        return {"min": int(match.group(1)), "max": int(match.group(2))}
    match = _SET.match(text)
    if match:
        return {"values": [int(v) for v in match.group(1).split(",")]}
    raise InstanceFormatError(f"line {number}: domain must be [a,b] or {{v,...}}, got {text!r}")


def serialize_instance_text(doc):
    lines = [f"version {doc.version}"]
    for var in doc.variables:
        if var.is_interval:
            domain = f"[{var.values[0]},{var.values[-1]}]"
        else:
            domain = "{" + ",".join(str(v) for v in var.values) + "}"
        lines.append(f"var {var.name} {domain}")
    lines += [f"prec {a} {b}" for a, b in doc.precedences]
    lines += [f"meta {key} {value}".rstrip() for key, value in doc.metadata.items()]
    return "\n".join(lines) + "\n"


# ===============================================================
# 📂 FILES
# ===============================================================
def parse_document(text, fmt=None):
    """``fmt`` is "json" or "text"; guessed from the first character when omitted."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc}")
        return document_from_data(data)
    return parse_instance_text(text)


def read_document(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}")
    return parse_document(text, "json" if path.suffix == ".json" else None)


def load_instance(path):
    return read_document(path).to_instance()
