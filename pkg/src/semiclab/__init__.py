"""semiclab: a numerical laboratory for eigenfunctions, quantized maps,
and semiclassical measures on flat tori, the round sphere, and quantized
hyperbolic toral automorphisms.
"""

from semiclab._errors import NumericalSignal

__version__ = "0.1.0"

__all__ = ["NumericalSignal", "__version__"]
