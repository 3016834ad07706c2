from typing import Hashable, List, Sequence, Tuple, Union

import numpy

# all array-valued quantities in this library are plain numpy arrays,
# these aliases only document the intended dtype/shape
NDArray = numpy.ndarray
FloatArray = numpy.ndarray
IndexArray = numpy.ndarray

# vertices of a tree are referred to by arbitrary hashable ids in the
# public API (these are what appear in JSON), internally everything is
# indexed by position in `Tree.vertex_ids`
VertexId = Hashable

# an edge can be named either by its index or by its endpoint ids
# example: 3 or ("a", "b") -- the pair may be given in either order
EdgeRef = Union[int, Tuple[VertexId, VertexId]]

# a piece of a geodesic: (edge index, start offset, end offset)
# offsets are measured from the first endpoint of the edge, so a piece
# with start > end traverses the edge against its orientation
GeodesicPiece = Tuple[int, float, float]
Geodesic = List[GeodesicPiece]

# grids of mass levels and exponents used by the inequality checks
KappaGrid = Sequence[float]
ExponentGrid = Sequence[float]

# position in euclidean space, scalars are promoted to 1-vectors
Position = Union[float, Sequence[float], numpy.ndarray]
