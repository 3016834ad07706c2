"""public utility functions
"""
from ._util import NumpyArrayEncoder, dumps, read_json, write_json
from ._util import map_in_pool, default_rng

__all__ = [
    "NumpyArrayEncoder", "dumps", "read_json", "write_json",
    "map_in_pool", "default_rng"
]
