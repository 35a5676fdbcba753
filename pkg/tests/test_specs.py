import json
import math

import pytest

from kcone import specs
from kcone.comparison import RoundSphere
from kcone.cone import ConeSpace
from kcone.dirspace import Circle, FiniteNet, Interval, Sphere, Suspension
from kcone.errors import InvalidArgument, SchemaError
from kcone.glue import AntipodalSphere, FinitePairing, GluedSpace, PolygonGluing, ReflectionCircle


@pytest.mark.parametrize(
    "text,value",
    [(1, 1.0), (2.5, 2.5), ("pi", math.pi), ("pi/2", math.pi / 2), ("3*pi/4", 0.75 * math.pi), ("2pi", 2 * math.pi), ("0.5", 0.5)],
)
def test_parse_number(text, value):
    assert specs.parse_number(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("bad", [True, "tau", None, [1]])
def test_parse_number_rejects(bad):
    with pytest.raises(SchemaError):
        specs.parse_number(bad)


def test_load_document_reports_position():
    with pytest.raises(SchemaError, match="line 2, column"):
        specs.load_document('{"schema": 1,\n "kind": }')
    with pytest.raises(SchemaError, match="schema"):
        specs.load_document('{"kind": "circle"}')
    with pytest.raises(SchemaError, match="unsupported schema"):
        specs.load_document('{"schema": 2, "kind": "circle"}')
    with pytest.raises(SchemaError, match="object"):
        specs.load_document("[1, 2]")


def test_unknown_and_missing_fields_are_named():
    with pytest.raises(SchemaError, match=r"\$\.sigma: unknown field\(s\) radius"):
        specs.space_from_spec({"kind": "cone", "kappa": 0, "R": 1, "sigma": {"kind": "circle", "radius": 1}})
    with pytest.raises(SchemaError, match="missing field"):
        specs.space_from_spec({"kind": "cone", "kappa": 0, "sigma": {"kind": "circle"}})
    with pytest.raises(SchemaError, match="unknown direction-space kind"):
        specs.space_from_spec({"kind": "torus"})


def test_domain_errors_are_not_schema_errors():
    with pytest.raises(InvalidArgument):
        specs.space_from_spec({"kind": "cone", "kappa": 1, "R": 4, "sigma": {"kind": "circle"}})


SPACES = [
    ConeSpace(Circle(math.pi), 0.0, 1.0),
    ConeSpace(Interval(1.0), -1.0, 2.0),
    ConeSpace(Suspension(Sphere(1)), 1.0, 1.0),
    ConeSpace(FiniteNet([[0, 1], [1, 0]]), 0.0, 1.0),
    GluedSpace(ConeSpace(Circle(), 0.0, 1.0), ReflectionCircle(0.3)),
    GluedSpace(ConeSpace(Sphere(2), 1.0, 2.0), AntipodalSphere(), non_admissible=True),
    GluedSpace(ConeSpace(FiniteNet([[0, 1], [1, 0]]), 0.0, 1.0), FinitePairing([(0, 1)])),
    PolygonGluing([[0, 0], [1, 0], [0, 1]]),
    RoundSphere(2.0, 3),
]


@pytest.mark.parametrize("space", SPACES, ids=repr)
def test_round_trip(space):
    doc = specs.to_document(space)
    text = json.dumps(doc)
    back = specs.space_from_spec(specs.load_document(text))
    assert specs.to_document(back) == doc
