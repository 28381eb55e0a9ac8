"""Ball-collision information set decoding over F_q.

Modules:

- :mod:`.gf` finite-field arithmetic
- :mod:`.linalg` matrices over F_q and systemization
- :mod:`.instance` syndrome-decoding instances and their file format
- :mod:`.decoder` the ball-collision decoder and brute-force oracles
- :mod:`.costmodel` concrete operation counts and parameter search
- :mod:`.asymptotic` asymptotic exponents and worst-case rates
- :mod:`.cli` the ``ballcoll`` command
"""

from .decoder import DecodeResult, brute_force_decode, decode, iterate_once
from .errors import (BallCollisionError, CapExceededError, DegenerateMatrixError,
                     InfeasibleParametersError, ParseError)
from .gf import FieldSpec, field
from .instance import DecodingInstance, generate, parse, serialize
from .params import BallCollisionParams

__all__ = [
    "BallCollisionError", "BallCollisionParams", "CapExceededError", "DecodeResult",
    "DecodingInstance", "DegenerateMatrixError", "FieldSpec", "InfeasibleParametersError",
    "ParseError", "brute_force_decode", "decode", "field", "generate", "iterate_once",
    "parse", "serialize",
]
