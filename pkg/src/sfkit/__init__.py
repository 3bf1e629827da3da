"""sfkit: sunflower (Delta-system) toolkit.

Set-family kernels, sunflower verification and extraction, the
swap/block augmentation procedures, certified evaluation of the
sunflower bound functions, exhaustive extremal oracles at desk scale,
and a batch CLI tying them together.
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
