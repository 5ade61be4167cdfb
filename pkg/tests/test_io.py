import csv
import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubforge.bent import FunctionTable
from mubforge.constructions import mubent_from_spread_z2, scalar_spread_set_z2, trace_family_odd, trace_spread_set_odd
from mubforge.engine import build_basis, build_mub_family, build_standard_basis
from mubforge.io import (
    SchemaError,
    detect_kind,
    dumps,
    mubent_from_dict,
    mubent_to_dict,
    phase_from_dict,
    phase_to_csv,
    phase_to_dict,
    spread_from_dict,
    spread_to_dict,
    table_from_dict,
    table_to_dict,
)
import json


@st.composite
def tables(draw):
    p, n, m = draw(st.sampled_from([(3, 2, 3), (2, 3, 4), (2, 2, 2), (5, 1, 5)]))
    vals = draw(st.lists(st.integers(0, m - 1), min_size=p**n, max_size=p**n))
    return FunctionTable(p, n, m, tuple(vals))


@settings(max_examples=100, deadline=None)
@given(tables())
def test_table_roundtrip(f):
    d = json.loads(dumps(table_to_dict(f)))
    assert d["schema"] == "mubforge/1"
    assert table_from_dict(d) == f
    assert detect_kind(d) == "function_table"


def test_table_schema_is_exact():
    f = FunctionTable(3, 1, 3, (0, 1, 1))
    assert dumps(table_to_dict(f)) == '{"codomain":3,"n":1,"p":3,"schema":"mubforge/1","values":[0,1,1]}\n'


@pytest.mark.parametrize("fam", [trace_family_odd(3, 2), mubent_from_spread_z2(scalar_spread_set_z2(2))])
def test_family_roundtrips(fam):
    assert mubent_from_dict(json.loads(dumps(mubent_to_dict(fam)))) == fam
    for b in build_mub_family(fam).bases:
        assert phase_from_dict(json.loads(dumps(phase_to_dict(b)))) == b


def test_spread_roundtrip():
    s = trace_spread_set_odd(3, 2)
    assert spread_from_dict(json.loads(dumps(spread_to_dict(s)))) == s
    assert detect_kind(spread_to_dict(s)) == "spread_set"


def test_phase_schema_fields():
    d = phase_to_dict(build_basis(FunctionTable(2, 1, 4, (0, 1))))
    assert d["encoding"] == "pm_i"
    assert d["exponents"] == [[[0, 0], [0, 1]], [[0, 0], [1, 1]]]
    s = phase_to_dict(build_standard_basis(3, 1))
    assert s["encoding"] == "standard" and s["exponents"] is None


@pytest.mark.parametrize("doc", [
    {"schema": "other/2", "p": 3, "n": 1, "codomain": 3, "values": [0, 0, 0]},
    {"p": 3, "n": 1, "codomain": 3, "values": [0, 0]},
    {"p": "3", "n": 1, "codomain": 3, "values": [0, 0, 0]},
])
def test_bad_tables(doc):
    with pytest.raises(SchemaError):
        table_from_dict(doc)


def test_bad_phase_matrix():
    with pytest.raises(SchemaError):
        phase_from_dict({"p": 3, "n": 1, "encoding": "zeta_p", "exponents": [[0, 0], [0, 1]]})
    with pytest.raises(SchemaError):
        phase_from_dict({"p": 3, "n": 1, "encoding": "weird", "exponents": []})
    with pytest.raises(SchemaError):
        detect_kind({"hello": 1})


def test_csv_export_is_normalized():
    b = build_basis(trace_family_odd(3, 1)[1])
    rows = list(csv.reader(io.StringIO(phase_to_csv(b))))
    assert rows[0] == ["row", "col", "re", "im"]
    assert len(rows) == 1 + 9
    vals = np.array([complex(float(r[2]), float(r[3])) for r in rows[1:]]).reshape(3, 3)
    assert np.allclose(vals, b.to_complex(), atol=1e-11)
    assert rows[1][2] == f"{1 / np.sqrt(3):.12g}"
