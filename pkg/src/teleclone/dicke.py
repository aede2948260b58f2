"""Circuit fragments for split-and-shift unitaries, Dicke-state unitaries and
the Hamming-weight ladder input state, in the {RY, CNOT} alphabet.

The split-and-shift unitary on an m-qubit window acts on the "ladder" strings
|1^i 0^(m-i)> as

    |1^i 0^(m-i)>  ->  sqrt((m-i)/m) |1^i 0^(m-i)> + sqrt(i/m) |1^(i-1) 0^(m-i) 1>

i.e. it splits off amplitude sqrt(i/m) and cyclically shifts the string left.
Composing them over shrinking prefix windows turns every ladder string into
the matching equal-weight Dicke state.

Every building block here is exact only on the states the construction can
reach (ladder strings and their shifted partners); that restriction is what
buys the low CNOT counts. The blocks are:

  * a 2-CNOT Givens rotation between |10> and |01> on the last two window
    qubits (conjugating the CNOT pair with RY(pi/2) basis changes),
  * a 5-CNOT gadget performing the same Givens between a window qubit and the
    last qubit, suppressed when the in-between neighbour is |1>,
  * a 1-CNOT controlled-RY valid when its target is still |0> (the ladder
    grows onto fresh qubits, so that always holds).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Gate, Instruction


def _ry(q: int, theta: float) -> Instruction:
    return Instruction(Gate.RY, (q,), param=theta)


def _cx(c: int, t: int) -> Instruction:
    return Instruction(Gate.CNOT, (c, t))


@dataclass(frozen=True)
class LadderAngles:
    """Rotation angles theta_m = 2*arccos(sqrt(1/m)) for m = M+1 down to 2."""
    thetas: tuple[float, ...]

    @property
    def head(self) -> float:
        return self.thetas[0]


def ladder_angles(M: int) -> LadderAngles:
    if M < 1:
        raise ValueError(f"need at least one copy qubit, got M={M}")
    return LadderAngles(tuple(2.0 * math.acos(math.sqrt(1.0 / m))
                              for m in range(M + 1, 1, -1)))


def _cry_on_zero(control: int, target: int, theta: float) -> list[Instruction]:
    """Controlled-RY(theta) assuming the target qubit is in |0>.

    With a guaranteed |0> target a single CNOT suffices:
    RY(pi/2 - theta/2), CNOT, RY(theta/2 - pi/2) fixes |c=0,t=0> and sends
    |c=1,t=0> to |1>(cos(theta/2)|0> + sin(theta/2)|1>). Behaviour on a |1>
    target is undefined and never exercised.
    """
    a = math.pi / 2 - theta / 2
    return [_ry(target, a), _cx(control, target), _ry(target, -a)]


def _givens_block(x: int, last: int, theta: float) -> list[Instruction]:
    """Rotation |10> -> cos(theta/2)|10> + sin(theta/2)|01> on (x, last).

    |00> and |11> are fixed. Standard 2-CNOT form: RY(-pi/2) moves the
    target into the frame where the two CNOTs generate the needed pair
    rotation, the half-angle RYs set it.
    """
    w = math.pi / 2 - theta / 2
    return [
        _ry(x, -math.pi / 2),
        _cx(x, last),
        _ry(last, -w),
        _ry(x, w),
        _cx(last, x),
        _ry(last, math.pi / 2),
    ]


def _gated_givens_block(x: int, y: int, last: int, theta: float) -> list[Instruction]:
    """Same Givens rotation on (x, last), switched off when qubit y is |1>.

    y sits between x and the window end; y=1 means the string's domain wall
    is further right and this block must not fire. Exact on the reachable
    states (|x y last> in {000, 100, 101, 110, 111}), free elsewhere.
    """
    v = math.pi / 2 - theta / 4
    return [
        _cx(x, last),
        _ry(x, -v),
        _cx(y, x),
        _ry(x, theta / 4),
        _cx(last, x),
        _ry(x, -theta / 4),
        _cx(y, x),
        _ry(x, v),
        _cx(x, last),
    ]


def build_scs(m: int, qubit_window: list[int]) -> list[Instruction]:
    """Split-and-shift unitary on an m-qubit window (m >= 2).

    Emits one 2-qubit Givens block for the adjacent transfer and one gated
    block per remaining ladder weight, processed from the window end inward
    so earlier splits are never disturbed.
    """
    if m < 2:
        raise ValueError(f"invalid block size m={m}, need m >= 2")
    if len(qubit_window) != m or len(set(qubit_window)) != m:
        raise ValueError(f"window must hold {m} distinct qubits")
    w = qubit_window
    ops: list[Instruction] = []
    for i in range(m - 1, 0, -1):
        theta = 2.0 * math.acos(math.sqrt((m - i) / m))
        if i == m - 1:
            ops += _givens_block(w[i - 1], w[m - 1], theta)
        else:
            ops += _gated_givens_block(w[i - 1], w[i], w[m - 1], theta)
    return ops


def build_dicke_unitary(M: int, qubit_window: list[int]) -> list[Instruction]:
    """Map |1^i 0^(M-i)> to the weight-i Dicke state, for every i <= M.

    Product of split-and-shift unitaries over prefix windows of shrinking
    size; the size-1 factor is the identity and is skipped.
    """
    if M < 1 or not qubit_window:
        raise ValueError("empty qubit window")
    if len(qubit_window) != M:
        raise ValueError(f"window must hold {M} qubits")
    ops: list[Instruction] = []
    for m in range(M, 1, -1):
        ops += build_scs(m, qubit_window[:m])
    return ops


def build_weight_ladder(M: int, angles: LadderAngles, chain_qubits: list[int],
                        copy_targets: list[int]) -> list[Instruction]:
    """Prepare (1/sqrt(M+1)) * sum_i |1^i 0^(M-i)>|1^i 0^(M-i)> from |0...0>.

    One RY on the chain head, a descending chain of controlled-RY (each a
    single CNOT thanks to the fresh |0> targets), then a CNOT fan copying the
    chain pattern onto the paired qubits.
    """
    if len(chain_qubits) != M or len(copy_targets) != M:
        raise ValueError(f"need {M} chain and {M} copy qubits")
    if len(angles.thetas) != M:
        raise ValueError(f"need {M} ladder angles, got {len(angles.thetas)}")
    ops: list[Instruction] = [_ry(chain_qubits[0], angles.head)]
    for j in range(1, M):
        ops += _cry_on_zero(chain_qubits[j - 1], chain_qubits[j], angles.thetas[j])
    for c, t in zip(chain_qubits, copy_targets):
        ops.append(_cx(c, t))
    return ops
