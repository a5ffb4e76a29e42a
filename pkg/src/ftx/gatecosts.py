"""Clifford+T cost of the basic fault-tolerant operations.

Every routine returns a T-count as a non-negative integer.  Fractional
formula outputs are rounded up: T gates are indivisible and ceiling is the
conservative choice.  Register sizes enter through ceil(log2(.)), since
register widths are integer qubit counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SynthesisConstants",
    "bits_for",
    "tcount_adder",
    "tcount_power2_adder",
    "tcount_controlled_adder",
    "tcount_controlled_power2_adder",
    "tcount_mcx",
    "tcount_cswap",
    "tcount_rotation",
    "tcount_controlled_rotation",
    "tcount_uniform",
    "tcount_controlled_uniform",
]


@dataclass(frozen=True)
class SynthesisConstants:
    """Single-qubit rotation synthesis cost model: gamma * log2(1/delta) + xi."""

    gamma: float = 1.03
    xi: float = 5.6

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.xi < 0:
            raise ValueError(f"xi must be non-negative, got {self.xi}")


DEFAULT_CONSTANTS = SynthesisConstants()


def bits_for(value: int) -> int:
    """Width in qubits of a register able to hold the integer `value`."""
    if value < 0:
        raise ValueError(f"register value must be non-negative, got {value}")
    return max(1, value.bit_length())


def _log2_inv(delta_ss: float) -> int:
    if not 0.0 < delta_ss < 1.0:
        raise ValueError(f"synthesis accuracy must lie in (0, 1), got {delta_ss}")
    return math.ceil(math.log2(1.0 / delta_ss))


def tcount_adder(n: int) -> int:
    """n-qubit addition/subtraction with carry ancillas: 4n - 4."""
    if n < 2:
        raise ValueError(f"adder needs at least 2 qubits, got {n}")
    return 4 * n - 4


def tcount_power2_adder(n: int, k: int) -> int:
    """Addition/subtraction of a constant multiple of 2^k: 4(n - k - 1) - 4."""
    if k < 0 or n < k + 2:
        raise ValueError(f"power-of-two adder needs n >= k + 2, got n={n}, k={k}")
    return 4 * (n - k - 1) - 4


def tcount_controlled_adder(m: int, n: int) -> int:
    """m-controlled n-qubit addition/subtraction: 4(m - 1) + 8(n - 1)."""
    if m < 1:
        raise ValueError(f"controlled adder needs m >= 1 controls, got {m}")
    if n < 2:
        raise ValueError(f"controlled adder needs n >= 2 qubits, got {n}")
    return 4 * (m - 1) + 8 * (n - 1)


def tcount_controlled_power2_adder(m: int, n: int, k: int) -> int:
    """m-controlled addition/subtraction of a 2^k multiple: 4(m-1) + 8(n-k-2)."""
    if m < 1:
        raise ValueError(f"controlled adder needs m >= 1 controls, got {m}")
    if k < 0 or n < k + 2:
        raise ValueError(f"power-of-two adder needs n >= k + 2, got n={n}, k={k}")
    return 4 * (m - 1) + 8 * (n - k - 2)


def tcount_mcx(m: int) -> int:
    """m-controlled NOT; CNOT and X are Clifford, Toffoli costs 4 via logical AND."""
    if m < 0:
        raise ValueError(f"control count must be non-negative, got {m}")
    if m <= 1:
        return 0
    return 4 * (m - 1)


def tcount_cswap(m: int) -> int:
    """m-controlled SWAP: 4m for m >= 1, free for m = 0."""
    if m < 0:
        raise ValueError(f"control count must be non-negative, got {m}")
    return 0 if m == 0 else 4 * m


def tcount_rotation(delta_ss: float, consts: SynthesisConstants = DEFAULT_CONSTANTS) -> int:
    """Single-qubit rotation synthesized to accuracy delta_ss."""
    return math.ceil(consts.gamma * _log2_inv(delta_ss) + consts.xi)


def tcount_controlled_rotation(
    m: int, delta_ss: float, consts: SynthesisConstants = DEFAULT_CONSTANTS
) -> int:
    """m-controlled rotation: 8(m - 1) + 2*gamma*log2(1/delta_ss) + 2*xi."""
    if m < 1:
        raise ValueError(f"controlled rotation needs m >= 1 controls, got {m}")
    return math.ceil(8 * (m - 1) + 2 * consts.gamma * _log2_inv(delta_ss) + 2 * consts.xi)


def tcount_uniform(
    n_values: int, delta_ss: float, consts: SynthesisConstants = DEFAULT_CONSTANTS
) -> int:
    """Uniform superposition over n_values basis states (n_values = 2^k * L form)."""
    if n_values < 1:
        raise ValueError(f"need at least one basis state, got {n_values}")
    if n_values == 1:
        return 0
    log_l = math.ceil(math.log2(n_values))
    return math.ceil(
        8 * log_l + 2 * consts.gamma * _log2_inv(delta_ss) + 2 * consts.xi - 4
    )


def tcount_controlled_uniform(
    m: int,
    n_values: int,
    delta_ss: float,
    consts: SynthesisConstants = DEFAULT_CONSTANTS,
    k: int = 0,
) -> int:
    """m-controlled uniform superposition over 2^k * L values."""
    if m < 1:
        raise ValueError(f"controlled uniform needs m >= 1 controls, got {m}")
    if n_values < 1:
        raise ValueError(f"need at least one basis state, got {n_values}")
    log_l = math.ceil(math.log2(n_values)) if n_values > 1 else 0
    return math.ceil(
        4 * (m - 1)
        + 2 * k
        + 10 * log_l
        + 2 * consts.gamma * _log2_inv(delta_ss)
        + 2 * consts.xi
        - 4
    )
