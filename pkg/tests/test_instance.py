import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ballcollision.errors import ParseError
from ballcollision.instance import generate, load, parse, plant_partition, save, serialize
from ballcollision.linalg import mat_vec, rank, systemize, weight
from ballcollision.params import BallCollisionParams


def test_generate_postconditions():
    inst = generate(2, 10, 5, 2, seed=1)
    inst.check()
    assert weight(inst.planted_e) == 2
    assert np.array_equal(mat_vec(inst.spec, inst.H, inst.planted_e), inst.s)
    assert rank(inst.spec, inst.H) == 5


def test_generate_deterministic():
    a = serialize(generate(3, 24, 12, 4, seed=7))
    b = serialize(generate(3, 24, 12, 4, seed=7))
    assert a == b
    assert a != serialize(generate(3, 24, 12, 4, seed=8))


def test_generate_zero_weight():
    inst = generate(5, 12, 6, 0, seed=2)
    assert not inst.s.any() and not inst.planted_e.any()


def test_generate_rejects_bad_input():
    with pytest.raises(ValueError, match="prime power"):
        generate(6, 10, 5, 2, 0)
    with pytest.raises(ValueError, match="infeasible"):
        generate(3, 10, 10, 2, 0)
    with pytest.raises(ValueError, match="infeasible"):
        generate(3, 10, 5, 10, 0)


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11]), n=st.integers(3, 16),
       data=st.data(), seed=st.integers(0, 2**32 - 1))
def test_roundtrip(q, n, data, seed):
    k = data.draw(st.integers(0, n - 1))
    t = data.draw(st.integers(0, n - 1))
    inst = generate(q, n, k, t, seed)
    inst.check()
    text = serialize(inst)
    back = parse(text)
    assert back == inst
    assert serialize(back) == text


def test_document_shape():
    inst = generate(4, 6, 3, 1, 0)
    doc = json.loads(serialize(inst))
    assert list(doc) == ["q", "modulus", "n", "k", "t", "H", "s", "e"]
    assert doc["modulus"] == [1, 1, 1]
    assert "modulus" not in json.loads(serialize(generate(5, 6, 3, 1, 0)))


def test_parse_without_error_vector():
    inst = generate(3, 8, 4, 2, 0)
    doc = json.loads(serialize(inst))
    del doc["e"]
    back = parse(json.dumps(doc))
    assert back.planted_e is None
    assert np.array_equal(back.H, inst.H)
    assert "e" not in json.loads(serialize(back))


def _doc(**changes):
    doc = json.loads(serialize(generate(4, 6, 3, 1, 0)))
    for key, v in changes.items():
        if v is None:
            del doc[key]
        else:
            doc[key] = v
    return json.dumps(doc)


@pytest.mark.parametrize("changes,match", [
    ({"s": None}, "missing"),
    ({"H": None}, "missing"),
    ({"q": None}, "missing"),
    ({"s": [0, 4, 1]}, "entry out of range"),
    ({"e": [0, 0, 0, 0, 0, -1]}, "entry out of range"),
    ({"s": [0, 1]}, "entries"),
    ({"H": [[0] * 6] * 2}, "rows"),
    ({"e": [0] * 5}, "entries"),
    ({"q": 6}, "unknown field"),
    ({"modulus": [1, 1]}, "unknown field"),
    ({"modulus": None}, "modulus"),
    ({"n": 6.0}, "integer"),
    ({"s": [0, 1.0, 1]}, "integers"),
    ({"k": 6}, "infeasible"),
])
def test_parse_errors(changes, match):
    with pytest.raises(ParseError, match=match):
        parse(_doc(**changes))


def test_parse_rejects_modulus_for_prime_field():
    doc = json.loads(serialize(generate(5, 6, 3, 1, 0)))
    doc["modulus"] = [1, 1]
    with pytest.raises(ParseError):
        parse(json.dumps(doc))


def test_parse_not_json():
    with pytest.raises(ParseError):
        parse("{not json")
    with pytest.raises(ParseError):
        parse("[1, 2]")


def test_alternate_modulus_survives_roundtrip():
    inst = generate(8, 10, 5, 2, 3, modulus=(1, 0, 1, 1))
    inst.check()
    back = parse(serialize(inst))
    assert back.spec.modulus == (1, 0, 1, 1)
    assert back == inst


def test_save_load(tmp_path):
    inst = generate(7, 9, 4, 2, 5)
    path = tmp_path / "inst.json"
    save(inst, path)
    assert load(path) == inst


def test_plant_partition_forces_split():
    params = BallCollisionParams(p1=1, p2=1, q1=1, q2=0, k1=3, k2=3, l1=2, l2=2)
    for seed in range(20):
        inst = generate(3, 16, 6, 4, seed)
        rng = np.random.default_rng(seed)
        order = plant_partition(inst, params, rng)
        sz = systemize(inst.spec, inst.H, inst.s, None, params.l1, params.l2, order)
        e = inst.planted_e
        X1 = sz.info_order[: params.k1]
        X2 = sz.info_order[params.k1:]
        counts = [weight(e[list(block)]) for block in (X1, X2, sz.Y1, sz.Y2, sz.Y3)]
        assert counts == [1, 1, 1, 0, 1]
