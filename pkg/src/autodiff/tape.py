from __future__ import annotations

from typing import Any, Callable, Sequence

import numpy as np

Backward = Callable[[np.ndarray], np.ndarray]


def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum a broadcast gradient back down to `shape`."""

    g = np.asarray(g, dtype=np.float64)
    if g.shape == shape:
        return g
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g.reshape(shape)


class Var:
    """
    Array-valued node recorded on a `Tape`.

    Arithmetic with plain numbers or numpy arrays treats them as constants. Setting
    `__array_ufunc__ = None` makes `ndarray <op> Var` defer to the reflected method.
    """

    __slots__ = ("value", "tape", "parents", "index")
    __array_ufunc__ = None

    def __init__(
        self,
        value: np.ndarray,
        tape: "Tape",
        parents: tuple[tuple["Var", Backward], ...],
        index: int,
    ) -> None:
        self.value = value
        self.tape = tape
        self.parents = parents
        self.index = index

    @property
    def shape(self) -> tuple[int, ...]:
        return self.value.shape

    def item(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"Var(shape={self.shape}, index={self.index})"

    def _check(self, other: "Var") -> None:
        if other.tape is not self.tape:
            raise ValueError("cannot combine values recorded on different tapes")

    # arithmetic

    def __add__(self, other: Any) -> "Var":
        if isinstance(other, Var):
            self._check(other)
            return self.tape.record(self.value + other.value, ((self, _identity), (other, _identity)))
        return self.tape.record(self.value + other, ((self, _identity),))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Var":
        if isinstance(other, Var):
            self._check(other)
            return self.tape.record(self.value - other.value, ((self, _identity), (other, np.negative)))
        return self.tape.record(self.value - other, ((self, _identity),))

    def __rsub__(self, other: Any) -> "Var":
        return self.tape.record(other - self.value, ((self, np.negative),))

    def __neg__(self) -> "Var":
        return self.tape.record(-self.value, ((self, np.negative),))

    def __mul__(self, other: Any) -> "Var":
        a = self.value
        if isinstance(other, Var):
            self._check(other)
            b = other.value
            return self.tape.record(a * b, ((self, lambda g: g * b), (other, lambda g: g * a)))
        c = np.asarray(other, dtype=np.float64)
        return self.tape.record(a * c, ((self, lambda g: g * c),))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Var":
        a = self.value
        if isinstance(other, Var):
            self._check(other)
            b = other.value
            return self.tape.record(
                a / b,
                ((self, lambda g: g / b), (other, lambda g: -g * a / (b * b))),
            )
        c = np.asarray(other, dtype=np.float64)
        return self.tape.record(a / c, ((self, lambda g: g / c),))

    def __rtruediv__(self, other: Any) -> "Var":
        a = self.value
        c = np.asarray(other, dtype=np.float64)
        return self.tape.record(c / a, ((self, lambda g: -g * c / (a * a)),))

    def __pow__(self, p: float) -> "Var":
        if isinstance(p, Var):
            raise TypeError("variable exponents are not supported")
        a = self.value
        return self.tape.record(a**p, ((self, lambda g: g * p * a ** (p - 1)),))

    def __matmul__(self, other: Any) -> "Var":
        a = self.value
        if isinstance(other, Var):
            self._check(other)
            b = other.value
            return self.tape.record(a @ b, ((self, lambda g: g @ b.T), (other, lambda g: a.T @ g)))
        c = np.asarray(other, dtype=np.float64)
        return self.tape.record(a @ c, ((self, lambda g: g @ c.T),))

    def __rmatmul__(self, other: Any) -> "Var":
        b = self.value
        c = np.asarray(other, dtype=np.float64)
        return self.tape.record(c @ b, ((self, lambda g: c.T @ g),))

    def __getitem__(self, key: Any) -> "Var":
        # basic indexing only: no index may select the same element twice
        shape = self.value.shape

        def backward(g: np.ndarray) -> np.ndarray:
            out = np.zeros(shape)
            out[key] = g
            return out

        return self.tape.record(self.value[key], ((self, backward),))

    # elementwise functions and reductions

    def tanh(self) -> "Var":
        y = np.tanh(self.value)
        return self.tape.record(y, ((self, lambda g: g * (1.0 - y * y)),))

    def sum(self) -> "Var":
        shape = self.value.shape
        return self.tape.record(np.asarray(self.value.sum()), ((self, lambda g: np.broadcast_to(g, shape)),))

    def mean(self) -> "Var":
        shape = self.value.shape
        n = float(self.value.size)
        return self.tape.record(
            np.asarray(self.value.sum() / n),
            ((self, lambda g: np.broadcast_to(g / n, shape)),),
        )


def _identity(g: np.ndarray) -> np.ndarray:
    return g


class Tape:
    """
    Records elementary array operations in execution order. Execution order is a
    topological order, so the reverse pass walks the record backwards once.
    """

    def __init__(self) -> None:
        self._nodes: list[Var] = []

    def __len__(self) -> int:
        return len(self._nodes)

    def watch(self, value: Any) -> Var:
        """Register a leaf (typically a parameter array)."""

        return self.record(np.array(value, dtype=np.float64), ())

    def record(self, value: Any, parents: tuple[tuple[Var, Backward], ...]) -> Var:
        node = Var(np.asarray(value, dtype=np.float64), self, parents, len(self._nodes))
        self._nodes.append(node)
        return node

    def gradients(self, output: Var, wrt: Sequence[Var]) -> list[np.ndarray]:
        if output.tape is not self:
            raise ValueError("output was not recorded on this tape")
        grads: list[np.ndarray | None] = [None] * (output.index + 1)
        grads[output.index] = np.ones_like(output.value)
        for node in reversed(self._nodes[: output.index + 1]):
            g = grads[node.index]
            if g is None:
                continue
            for parent, backward in node.parents:
                contribution = _unbroadcast(backward(g), parent.value.shape)
                prev = grads[parent.index]
                grads[parent.index] = contribution if prev is None else prev + contribution
        out: list[np.ndarray] = []
        for v in wrt:
            g = grads[v.index] if v.index <= output.index else None
            out.append(np.zeros_like(v.value) if g is None else np.array(g, dtype=np.float64))
        return out


def tanh(v: Any) -> Any:
    if isinstance(v, Var):
        return v.tanh()
    return np.tanh(v)


def grad_wrt_params(tape: Tape, loss: Var, params: Sequence[Var]) -> list[np.ndarray]:
    """
    d(loss)/d(param) for every watched parameter, by one reverse sweep.
    """

    if loss.value.size != 1:
        raise ValueError("loss must be a scalar")
    if not np.isfinite(loss.value).all():
        raise ValueError("loss is not finite")
    return tape.gradients(loss, params)
