"""
Campos vectoriales en S¹ dados por sus coeficientes de Fourier reales:
v(t) = a₀ + Σ_{k=1}^{M} a_k cos kt + b_k sin kt.

Internamente b se guarda con b[0] = 0 para alinear índices con a. La
representación compleja v̂_n (n = −M..M) cumple v̂_{±n} = (a_n ∓ i b_n)/2,
v̂₀ = a₀.
"""
import logging

import numpy as np

from src.errors import NonzeroMean

logger = logging.getLogger(__name__)


class FourierField:

    def __init__(self, a, b=None):
        a = np.array(a, dtype=float).ravel()
        if a.size == 0:
            raise ValueError("Un campo necesita al menos a₀.")
        M = a.size - 1
        b = np.zeros(M) if b is None else np.asarray(b, dtype=float).ravel()
        if b.size != M:
            raise ValueError(f"Se esperaban {M} coeficientes b₁..b_M, llegaron {b.size}.")
        self.a = a
        self.b = np.concatenate([[0.0], b])
        self.a.flags.writeable = False
        self.b.flags.writeable = False

    # ── Constructores ────────────────────────────────────────────────────

    @classmethod
    def cos(cls, k: int, amplitude: float = 1.0, M: int | None = None) -> "FourierField":
        M = max(k, M or 0)
        a = np.zeros(M + 1)
        a[k] = amplitude
        return cls(a)

    @classmethod
    def sin(cls, k: int, amplitude: float = 1.0, M: int | None = None) -> "FourierField":
        if k < 1:
            raise ValueError("sin(0·t) es idénticamente nulo.")
        M = max(k, M or 0)
        b = np.zeros(M)
        b[k - 1] = amplitude
        return cls(np.zeros(M + 1), b)

    @classmethod
    def constant(cls, value: float) -> "FourierField":
        return cls([value])

    @classmethod
    def from_complex(cls, coeffs: np.ndarray) -> "FourierField":
        """Inversa de `complex_coeffs`: recibe v̂_{−M}..v̂_M."""
        coeffs = np.asarray(coeffs, dtype=complex)
        M = (coeffs.size - 1) // 2
        positive = coeffs[M:]
        a = np.concatenate([[positive[0].real], 2.0 * positive[1:].real])
        b = -2.0 * positive[1:].imag
        return cls(a, b)

    @classmethod
    def from_dict(cls, data: dict) -> "FourierField":
        return cls(data["a"], data.get("b", []))

    # ── Acceso ───────────────────────────────────────────────────────────

    @property
    def M(self) -> int:
        return self.a.size - 1

    @property
    def has_zero_mean(self) -> bool:
        return self.a[0] == 0

    def padded(self, M: int) -> "FourierField":
        if M < self.M:
            raise ValueError(f"No se puede reducir de M = {self.M} a {M} sin perder modos.")
        a = np.zeros(M + 1)
        b = np.zeros(M + 1)
        a[:self.M + 1] = self.a
        b[:self.M + 1] = self.b
        return FourierField(a, b[1:])

    def complex_coeffs(self) -> np.ndarray:
        """v̂_{−M}..v̂_M."""
        positive = np.empty(self.M + 1, dtype=complex)
        positive[0] = self.a[0]
        positive[1:] = (self.a[1:] - 1j * self.b[1:]) / 2.0
        return np.concatenate([np.conj(positive[:0:-1]), positive])

    def evaluate(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        k = np.arange(self.M + 1)
        phases = np.multiply.outer(t, k)
        return np.cos(phases) @ self.a + np.sin(phases) @ self.b

    def derivative(self, times: int = 1) -> "FourierField":
        a, b = self.a.copy(), self.b.copy()
        k = np.arange(self.M + 1)
        for _ in range(times):
            a, b = k * b, -k * a
        return FourierField(a, b[1:])

    def to_dict(self) -> dict:
        return {"a": self.a.tolist(), "b": self.b[1:].tolist()}

    # ── Aritmética lineal ────────────────────────────────────────────────

    def _aligned(self, other: "FourierField"):
        M = max(self.M, other.M)
        return self.padded(M), other.padded(M)

    def __add__(self, other: "FourierField") -> "FourierField":
        left, right = self._aligned(other)
        return FourierField(left.a + right.a, (left.b + right.b)[1:])

    def __neg__(self) -> "FourierField":
        return FourierField(-self.a, -self.b[1:])

    def __sub__(self, other: "FourierField") -> "FourierField":
        return self + (-other)

    def __mul__(self, scalar: float) -> "FourierField":
        return FourierField(self.a * scalar, self.b[1:] * scalar)

    __rmul__ = __mul__

    def allclose(self, other: "FourierField", tol: float = 1e-12) -> bool:
        left, right = self._aligned(other)
        return bool(np.max(np.abs(left.a - right.a)) < tol
                    and np.max(np.abs(left.b - right.b)) < tol)

    def __repr__(self) -> str:
        return f"FourierField(M={self.M})"


# ── Operaciones ──────────────────────────────────────────────────────────────

def _rotate(v: FourierField) -> FourierField:
    # (a_k, b_k) ↦ (b_k, −a_k) para k ≥ 1; el modo constante se anula
    a = v.b.copy()
    b = -v.a.copy()
    a[0] = 0.0
    return FourierField(a, b[1:])


def hilbert_transform(f: FourierField) -> FourierField:
    """I(e^{int}) = i·sgn(n)·e^{int}: cos kt ↦ −sin kt, sin kt ↦ cos kt, const ↦ 0."""
    return _rotate(f)


def complex_structure_J(v: FourierField) -> FourierField:
    """
    Estructura casi compleja Σ a_k cos kt + b_k sin kt ↦ Σ −a_k sin kt + b_k cos kt.

    Raises:
        NonzeroMean: si a₀ ≠ 0.
    """
    if not v.has_zero_mean:
        raise NonzeroMean(f"J requiere media nula, a₀ = {v.a[0]}")
    return _rotate(v)


def bracket(v1: FourierField, v2: FourierField) -> FourierField:
    """[v₁, v₂] = v₁v₂′ − v₁′v₂, de orden M₁ + M₂."""
    c1 = v1.complex_coeffs()
    c2 = v2.complex_coeffs()
    n1 = np.arange(-v1.M, v1.M + 1)
    n2 = np.arange(-v2.M, v2.M + 1)
    product = np.convolve(c1, 1j * n2 * c2) - np.convolve(1j * n1 * c1, c2)
    return FourierField.from_complex(product)


def inner(v1: FourierField, v2: FourierField) -> float:
    """(1/2π)∫ v₁v₂ dt por ortogonalidad."""
    left, right = v1._aligned(v2)
    return float(left.a[0] * right.a[0]
                 + 0.5 * (left.a[1:] @ right.a[1:] + left.b[1:] @ right.b[1:]))
