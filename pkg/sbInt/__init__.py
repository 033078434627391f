"""
Exact and numerical integrals of monomials and inner-product powers over
spheres, balls and Gaussian-weighted space in real and complex space.
"""
import logging
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version('sbInt')
except PackageNotFoundError:
    __version__ = '0+unknown'

logging.getLogger(__name__).addHandler(logging.NullHandler())

# GLOBAL DEFAULT TOLERANCE
DEFAULT_RTOL = 1e-12

# distance from an integer below which p and q count as integers
INTEGER_TOL = 1e-9

# MONTE CARLO DEFAULTS
DEFAULT_SAMPLES = 1000000
DEFAULT_CHUNK_SIZE = 65536

SEED_ENV_VAR = 'SBINT_SEED'
