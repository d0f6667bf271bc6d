"""Control-volume subdiffusion solver and homogenisation toolkit."""

from ._subfvm import (
    LayeredOracle,
    LayeredSpec,
    Mesh,
    Tensor2,
    bounds,
    circle_inclusion_unit_square,
    cn_wsgl_weights,
    gl_weights,
    homogenize,
    invert_laplace,
    mittag_leffler,
    parse_msh,
    structured_unit_square,
    write_msh,
    wsgl_weights,
)

__all__ = [
    "LayeredOracle",
    "LayeredSpec",
    "Mesh",
    "Tensor2",
    "bounds",
    "circle_inclusion_unit_square",
    "cn_wsgl_weights",
    "gl_weights",
    "homogenize",
    "invert_laplace",
    "mittag_leffler",
    "parse_msh",
    "structured_unit_square",
    "write_msh",
    "wsgl_weights",
]
