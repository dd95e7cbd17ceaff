"""Reproducibility-obstacle ontology and formal-context (Burmeister ``.cxt``) export.

Attributes are yes/no questions phrased so that "yes" marks an obstacle.
Records are open-world: a missing attribute means "not observed", not
"absent".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterable, List, Sequence, Tuple


@dataclass(frozen=True)
class AttributeDef:
    id: str
    category: str
    question: str


_SCHEMA: Tuple[Tuple[str, str, str], ...] = (
    ("D1", "data set/availability", "Is the data set format not documented?"),
    ("D2", "data set/availability", "Was the data set version not set explicitly?"),
    ("D3", "data set/availability", "Was the data set not directly accessible?"),
    ("D4", "data set/availability", "Did the access not work at time of study?"),
    ("D5", "data set/availability", "Is the data set privacy restricted?"),
    ("D6", "data set/availability",
     "Does the data set require a restrictive license agreement for accessing?"),
    ("D7", "data set/availability", "Is the data set available on request only?"),
    ("D8", "data set/transformation", "Are manual steps necessary for pre-processing?"),
    ("D9", "data set/transformation",
     "Is there only an incomplete description for pre-processing steps?"),
    ("D10", "data set/transformation", "Are the train, validation and test splits unclear?"),
    ("D11", "data set/transformation", "Is the number of samples not documented?"),
    ("S1", "software/environment", "Is the exact version of dependencies not documented?"),
    ("S2", "software/environment",
     "Is the specified version of dependencies not available anymore?"),
    ("S3", "software/environment", "Is necessary hardware unavailable?"),
    ("S4", "software/environment", "Are any seeds for random number generators not set?"),
    ("S5", "software/environment", "Are important variables unclear?"),
    ("S6", "software/usage", "Is the documentation not up-to-date?"),
    ("S7", "software/usage", "Are necessary arguments not clear?"),
    ("S8", "software/usage", "Are there missing hyperparameters?"),
    ("S9", "software/usage", "Are train/test scripts incomplete?"),
    ("S10", "software/usage", "Is it unclear which version of scripts was used?"),
    ("S11", "software/source-code", "Is there a bug that was never fixed?"),
    ("S12", "software/source-code", "Are there issue solutions that were not applied?"),
    ("S13", "software/source-code", "Was a bug fix distributed through other channels?"),
    ("S14", "software/source-code", "Did the API change?"),
    ("S15", "software/source-code", "Did an out of memory error occur?"),
    ("S16", "software/source-code", "Are steps for one experiment missing?"),
    ("S17", "software/source-code", "Are steps for all experiments missing?"),
    ("S18", "software/source-code", "Is the hyperparameter search not included?"),
    ("S19", "software/source-code",
     "Is only the general idea (and no experiments) implemented?"),
    ("R1", "result/model",
     "Are there no parameters (weights) of the obtained model provided?"),
    ("R2", "result/predictions", "Are there small deviation to obtained model?"),
    ("R3", "result/predictions", "Are strong differences in few experiments observed?"),
    ("R4", "result/predictions", "Are strong differences in almost all experiments observed?"),
    ("R5", "result/predictions",
     "Are the claimed results only supported by small sample size?"),
    ("R6", "result/predictions",
     "Are there no predictions (outputs of classes or decisions) on the data sets?"),
)


def builtin_schema() -> List[AttributeDef]:
    return [AttributeDef(*row) for row in _SCHEMA]


def lookup(schema: Sequence[AttributeDef], attr_id: str):
    for a in schema:
        if a.id == attr_id:
            return a
    return None


@dataclass(frozen=True)
class ReproRecord:
    label: str
    attributes: frozenset = field(default_factory=frozenset)


def validate_record(record: ReproRecord, schema: Sequence[AttributeDef]) -> List[str]:
    """Unknown attribute ids in ``record`` (sorted); empty list means valid."""
    known = {a.id for a in schema}
    return sorted(a for a in record.attributes if a not in known)


def parse_records(text: str) -> List[ReproRecord]:
    """Parse ``label: id, id, ...`` lines; ``#`` starts a comment."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'label: id, id, ...'")
        label, rest = line.split(":", 1)
        label = label.strip()
        if not label:
            raise ValueError(f"line {lineno}: empty label")
        ids = frozenset(tok.strip() for tok in rest.split(",") if tok.strip())
        records.append(ReproRecord(label, ids))
    return records


def bundled_records() -> List[ReproRecord]:
    text = resources.files("geomid").joinpath("data/records.txt").read_text(encoding="utf-8")
    return parse_records(text)


@dataclass(frozen=True)
class FormalContext:
    objects: List[str]
    attributes: List[str]
    incidence: List[List[bool]]

    def __post_init__(self):
        if len(self.incidence) != len(self.objects):
            raise ValueError("incidence rows do not match object count")
        for row in self.incidence:
            if len(row) != len(self.attributes):
                raise ValueError("incidence row length does not match attribute count")

    def as_dict(self) -> Dict[str, List[str]]:
        return {
            o: [a for a, x in zip(self.attributes, row) if x]
            for o, row in zip(self.objects, self.incidence)
        }


def build_context(records: Iterable[ReproRecord], schema: Sequence[AttributeDef]) -> FormalContext:
    records = list(records)
    for rec in records:
        unknown = validate_record(rec, schema)
        if unknown:
            raise ValueError(f"record {rec.label!r} has unknown attributes {unknown}")
    attrs = [a.id for a in schema]
    return FormalContext(
        objects=[r.label for r in records],
        attributes=attrs,
        incidence=[[a in r.attributes for a in attrs] for r in records],
    )


def export_cxt(context: FormalContext) -> bytes:
    for name in context.objects + context.attributes:
        if "\n" in name or "\r" in name:
            raise ValueError(f"name {name!r} contains a line break")
    lines = ["B", "", str(len(context.objects)), str(len(context.attributes)), ""]
    lines += context.objects
    lines += context.attributes
    lines += ["".join("X" if x else "." for x in row) for row in context.incidence]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_cxt(blob: bytes) -> FormalContext:
    lines = blob.decode("utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 5 or lines[0] != "B" or lines[1] != "":
        raise ValueError("not a Burmeister context")
    try:
        n_obj, n_attr = int(lines[2]), int(lines[3])
    except ValueError:
        raise ValueError("bad object/attribute counts") from None
    if lines[4] != "":
        raise ValueError("missing blank line after counts")
    body = lines[5:]
    if len(body) != 2 * n_obj + n_attr:
        raise ValueError(f"expected {2 * n_obj + n_attr} body lines, got {len(body)}")
    objects = body[:n_obj]
    attributes = body[n_obj : n_obj + n_attr]
    incidence = []
    for row in body[n_obj + n_attr :]:
        if len(row) != n_attr or set(row) - {"X", "."}:
            raise ValueError(f"bad incidence row {row!r}")
        incidence.append([c == "X" for c in row])
    return FormalContext(objects, attributes, incidence)
