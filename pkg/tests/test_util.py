import json

import numpy
import pytest

from treeconc.rtree import Tree
from treeconc.util import (
    NumpyArrayEncoder, default_rng, dumps, map_in_pool, read_json, write_json
)


def test_encoder_handles_numpy_and_to_json(tmp_path):
    T = Tree.star([1.0, 2.0])
    doc = {"arr": numpy.arange(3), "x": numpy.float64(0.5),
           "k": numpy.int32(4), "b": numpy.bool_(True), "tree": T}
    parsed = json.loads(json.dumps(doc, cls=NumpyArrayEncoder))
    assert parsed["arr"] == [0, 1, 2]
    assert parsed["x"] == 0.5 and parsed["k"] == 4 and parsed["b"] is True
    assert parsed["tree"] == T.to_json()
    out = tmp_path / "doc.json"
    write_json(doc, out)
    assert read_json(out) == json.loads(dumps(doc))
    with pytest.raises(ValueError):
        read_json(tmp_path / "missing.json")


def test_default_rng_passes_generators_through():
    rng = numpy.random.default_rng(3)
    assert default_rng(rng) is rng
    assert default_rng(3).integers(100) == \
        numpy.random.default_rng(3).integers(100)


@pytest.mark.parametrize("workers", [1, 2])
def test_map_in_pool_keeps_order(workers):
    items = [-3, 1, -2, 5]
    assert map_in_pool(abs, items, workers=workers) == [3, 1, 2, 5]
