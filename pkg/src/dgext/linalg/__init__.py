from .poly import Field, PolyRing
from .ring import RingDescriptor, RingElement, polynomial_ring, quotient_ring
from .matrix import RMatrix, Solution, smith_normal_form, solve_linear

__all__ = ["Field", "PolyRing", "RingDescriptor", "RingElement", "polynomial_ring", "quotient_ring",
           "RMatrix", "Solution", "smith_normal_form", "solve_linear"]
