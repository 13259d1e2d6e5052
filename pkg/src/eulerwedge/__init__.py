"""Euler elements, abstract wedges, covering-group centers and finite-dimensional standard subspaces."""

from .errors import EulerWedgeError
from .liecore import AlgebraElement, LieAlgebra, is_euler, sl2, sl2_elements, sl2_triple
from .covergroup import CoveringElement, tag_by_name, z_subgroups, zeta
from .modular import RealSubspace, modular_data

__version__ = "0.1.0"

__all__ = ["EulerWedgeError", "AlgebraElement", "LieAlgebra", "is_euler", "sl2", "sl2_elements", "sl2_triple",
           "CoveringElement", "tag_by_name", "z_subgroups", "zeta", "RealSubspace", "modular_data"]
