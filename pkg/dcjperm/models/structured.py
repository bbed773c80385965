"""
Structured Output

Line-oriented `key=value` rendering of the report models, preceded by a
`format=1` header. Nested models use dotted keys and list entries use
0-based indices, e.g. `components[0].points[2]=3` or `oracle.bfs=3`.
None values and empty lists are omitted; booleans are `true`/`false`.
"""

import re
from enum import Enum
from typing import Any, Dict, List, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from dcjperm.exceptions import ParseError

FORMAT_VERSION = 1
HEADER = f"format={FORMAT_VERSION}"

_SEGMENT = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)((?:\[\d+\])*)$")
_INDEX = re.compile(r"\[(\d+)\]")

Model = TypeVar("Model", bound=BaseModel)
PathKey = Union[str, int]


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\n", "\\n")


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", lambda m: "\n" if m.group(1) == "n" else m.group(1), text)


def _flatten(value: Any, prefix: str, lines: List[str]) -> None:
    if value is None:
        return
    if isinstance(value, BaseModel):
        for name in value.__fields__:
            _flatten(getattr(value, name), f"{prefix}.{name}" if prefix else name, lines)
    elif isinstance(value, (list, tuple)):
        for index, item in enumerate(value):
            _flatten(item, f"{prefix}[{index}]", lines)
    elif isinstance(value, bool):
        lines.append(f"{prefix}={'true' if value else 'false'}")
    elif isinstance(value, Enum):
        lines.append(f"{prefix}={value.value}")
    else:
        lines.append(f"{prefix}={_escape(str(value))}")


def dump_structured(model: BaseModel) -> str:
    lines = [HEADER]
    _flatten(model, "", lines)
    return "\n".join(lines) + "\n"


def _parse_key(key: str, line: int) -> List[PathKey]:
    path: List[PathKey] = []
    for segment in key.split("."):
        match = _SEGMENT.match(segment)
        if match is None:
            raise ParseError(f"malformed key {key!r}", line, 1)
        path.append(match.group(1))
        path.extend(int(index) for index in _INDEX.findall(match.group(2)))
    return path


def _assign(tree: Dict[PathKey, Any], path: List[PathKey], value: str, line: int) -> None:
    node = tree
    for key in path[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ParseError(f"key {key!r} holds both a value and nested entries", line, 1)
    if path[-1] in node:
        raise ParseError(f"duplicate key ending in {path[-1]!r}", line, 1)
    node[path[-1]] = value


def _materialize(node: Any) -> Any:
    if not isinstance(node, dict):
        return node
    items = {key: _materialize(value) for key, value in node.items()}
    if items and all(isinstance(key, int) for key in items):
        indices = sorted(items)
        if indices != list(range(len(indices))):
            raise ParseError(f"list indices are not contiguous from 0: {indices}")
        return [items[index] for index in indices]
    return items


def load_structured(text: str) -> Dict[str, Any]:
    """Parses a structured document back into nested dicts and lists of strings."""
    tree: Dict[PathKey, Any] = {}
    header_seen = False
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if not header_seen:
            if line.strip() != HEADER:
                raise ParseError(f"structured output must start with {HEADER!r}", number, 1)
            header_seen = True
            continue
        key, separator, raw = line.partition("=")
        if not separator:
            raise ParseError("expected key=value", number, 1)
        _assign(tree, _parse_key(key, number), _unescape(raw), number)
    if not header_seen:
        raise ParseError(f"structured output must start with {HEADER!r}")
    return _materialize(tree)


def load_model(text: str, model: Type[Model]) -> Model:
    try:
        return model.parse_obj(load_structured(text))
    except ValidationError as e:
        raise ParseError(f"structured document does not describe a {model.__name__}: {e}") from e
