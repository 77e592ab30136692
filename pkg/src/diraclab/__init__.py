"""diraclab: numerical laboratory for perturbed Dirac operators."""

__version__ = "0.1.0"
