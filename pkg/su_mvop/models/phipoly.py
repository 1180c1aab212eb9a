"""φ 座標中的矩陣值多項式。

係數矩陣以 numpy 陣列保存：精確模式使用 object 陣列（元素為
Fraction），數值模式使用 float64 陣列。變數索引 i 一律從 1 起算，
對應 φ_1,…,φ_n。
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

Monomial = tuple[int, ...]


def exact_zeros(shape: tuple[int, int]) -> np.ndarray:
    """以 Fraction(0) 填滿的 object 陣列。"""
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def exact_matrix(rows: Sequence[Sequence[int | Fraction]]) -> np.ndarray:
    """將巢狀序列轉為 Fraction object 陣列。"""
    data = [[Fraction(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, value in enumerate(row):
            out[i, j] = value
    return out


def _is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def _is_zero(arr: np.ndarray) -> bool:
    if _is_exact(arr):
        return all(x == 0 for x in arr.flat)
    return not np.any(arr)


def _numeric(arr: np.ndarray) -> np.ndarray:
    return arr.astype(float) if _is_exact(arr) else arr


@dataclass(frozen=True, eq=False)
class PhiPoly:
    """矩陣值多項式 Σ_m C_m φ^m。

    Attributes:
        nvars: 變數個數 n。
        shape: 係數矩陣形狀 (列, 行)。
        terms: 多重指數 m 到係數矩陣的對應，不保存零矩陣。
    """

    nvars: int
    shape: tuple[int, int]
    terms: Mapping[Monomial, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[Monomial, np.ndarray] = {}
        for mono, coef in self.terms.items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != self.nvars or min(mono, default=0) < 0:
                raise ValueError(f"多重指數 {mono} 不合法")
            arr = np.asarray(coef)
            if arr.shape != tuple(self.shape):
                raise ValueError(f"係數形狀 {arr.shape} 與 {self.shape} 不符")
            if mono in cleaned:
                arr = cleaned[mono] + arr
            cleaned[mono] = arr
        object.__setattr__(self, "shape", tuple(self.shape))
        object.__setattr__(
            self, "terms", {m: c for m, c in cleaned.items() if not _is_zero(c)}
        )

    # ---- 建構 ----

    @classmethod
    def zero(cls, nvars: int, shape: tuple[int, int]) -> PhiPoly:
        """零多項式。"""
        return cls(nvars, shape)

    @classmethod
    def constant(cls, matrix: np.ndarray, nvars: int) -> PhiPoly:
        """常數矩陣多項式。"""
        matrix = np.asarray(matrix)
        return cls(nvars, matrix.shape, {(0,) * nvars: matrix})

    @classmethod
    def identity(cls, size: int, nvars: int) -> PhiPoly:
        """精確單位矩陣。"""
        eye = exact_zeros((size, size))
        for i in range(size):
            eye[i, i] = Fraction(1)
        return cls.constant(eye, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> PhiPoly:
        """1×1 的 φ_i（i 從 1 起算）。"""
        mono = tuple(int(j == i - 1) for j in range(nvars))
        return cls(nvars, (1, 1), {mono: exact_matrix([[1]])})

    @classmethod
    def scalar(cls, nvars: int, coefficients: Mapping[Monomial, int | Fraction]) -> PhiPoly:
        """由單項式係數建立 1×1 精確多項式。"""
        return cls(
            nvars, (1, 1),
            {m: exact_matrix([[c]]) for m, c in coefficients.items()},
        )

    @classmethod
    def from_entries(cls, nvars: int, entries: Sequence[Sequence[PhiPoly]]) -> PhiPoly:
        """以 1×1 多項式的二維陣列組成矩陣多項式。"""
        rows, cols = len(entries), len(entries[0])
        exact = all(e.is_exact for row in entries for e in row)
        terms: dict[Monomial, np.ndarray] = {}
        for i, row in enumerate(entries):
            for j, entry in enumerate(row):
                for mono, coef in entry.terms.items():
                    if mono not in terms:
                        terms[mono] = (
                            exact_zeros((rows, cols)) if exact
                            else np.zeros((rows, cols))
                        )
                    terms[mono][i, j] = coef[0, 0] if exact else float(coef[0, 0])
        return cls(nvars, (rows, cols), terms)

    # ---- 屬性 ----

    @property
    def is_exact(self) -> bool:
        """是否為精確有理係數。"""
        return all(_is_exact(c) for c in self.terms.values())

    def is_zero(self) -> bool:
        """是否為零多項式。"""
        return not self.terms

    def total_degree(self) -> int:
        """總次數，零多項式回傳 −1。"""
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono: Iterable[int]) -> np.ndarray:
        """取出 φ^mono 的係數矩陣（不存在時回傳零矩陣）。"""
        mono = tuple(mono)
        if mono in self.terms:
            return self.terms[mono]
        return exact_zeros(self.shape) if self.is_exact else np.zeros(self.shape)

    def entry(self, i: int, j: int) -> PhiPoly:
        """第 (i, j) 元素（0 起算）作為 1×1 多項式。"""
        return PhiPoly(
            self.nvars, (1, 1),
            {m: c[i:i + 1, j:j + 1].copy() for m, c in self.terms.items()},
        )

    def column(self, j: int) -> PhiPoly:
        """第 j 行（0 起算）作為 N×1 多項式。"""
        return PhiPoly(
            self.nvars, (self.shape[0], 1),
            {m: c[:, j:j + 1].copy() for m, c in self.terms.items()},
        )

    # ---- 代數 ----

    def _check(self, other: PhiPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("變數個數不符")

    def _unify(self, other: PhiPoly) -> tuple[PhiPoly, PhiPoly]:
        if self.is_exact == other.is_exact:
            return self, other
        return self.to_float(), other.to_float()

    def __add__(self, other: PhiPoly) -> PhiPoly:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"形狀不符：{self.shape} 與 {other.shape}")
        left, right = self._unify(other)
        terms = dict(left.terms)
        for mono, coef in right.terms.items():
            terms[mono] = terms[mono] + coef if mono in terms else coef
        return PhiPoly(self.nvars, self.shape, terms)

    def __neg__(self) -> PhiPoly:
        return PhiPoly(self.nvars, self.shape, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: PhiPoly) -> PhiPoly:
        return self + (-other)

    def scale(self, factor: int | Fraction | float) -> PhiPoly:
        """乘上純量。"""
        if isinstance(factor, int):
            factor = Fraction(factor)
        base = self.to_float() if isinstance(factor, float) else self
        return PhiPoly(
            self.nvars, self.shape, {m: c * factor for m, c in base.terms.items()}
        )

    def left_multiply(self, matrix: np.ndarray) -> PhiPoly:
        """以常數矩陣左乘。"""
        matrix = np.asarray(matrix)
        if not self.is_exact or not _is_exact(matrix):
            matrix = _numeric(matrix)
            return PhiPoly(
                self.nvars, (matrix.shape[0], self.shape[1]),
                {m: matrix @ _numeric(c) for m, c in self.terms.items()},
            )
        return PhiPoly(
            self.nvars, (matrix.shape[0], self.shape[1]),
            {m: matrix @ c for m, c in self.terms.items()},
        )

    def right_multiply(self, matrix: np.ndarray) -> PhiPoly:
        """以常數矩陣右乘。"""
        matrix = np.asarray(matrix)
        if not self.is_exact or not _is_exact(matrix):
            matrix = _numeric(matrix)
            return PhiPoly(
                self.nvars, (self.shape[0], matrix.shape[1]),
                {m: _numeric(c) @ matrix for m, c in self.terms.items()},
            )
        return PhiPoly(
            self.nvars, (self.shape[0], matrix.shape[1]),
            {m: c @ matrix for m, c in self.terms.items()},
        )

    def __matmul__(self, other: PhiPoly) -> PhiPoly:
        self._check(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError("矩陣乘法維度不符")
        left, right = self._unify(other)
        terms: dict[Monomial, np.ndarray] = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 @ c2
                terms[mono] = terms[mono] + prod if mono in terms else prod
        return PhiPoly(self.nvars, (self.shape[0], other.shape[1]), terms)

    def times_monomial(self, mono: Iterable[int]) -> PhiPoly:
        """乘上 φ^mono。"""
        mono = tuple(mono)
        return PhiPoly(
            self.nvars, self.shape,
            {tuple(a + b for a, b in zip(m, mono)): c for m, c in self.terms.items()},
        )

    def derivative(self, i: int) -> PhiPoly:
        """對 φ_i 偏微分（i 從 1 起算）。"""
        var = i - 1
        terms = {}
        for mono, coef in self.terms.items():
            power = mono[var]
            if power == 0:
                continue
            lowered = mono[:var] + (power - 1,) + mono[var + 1:]
            terms[lowered] = coef * (Fraction(power) if _is_exact(coef) else power)
        return PhiPoly(self.nvars, self.shape, terms)

    def transpose(self) -> PhiPoly:
        """轉置。"""
        return PhiPoly(
            self.nvars, (self.shape[1], self.shape[0]),
            {m: c.T.copy() for m, c in self.terms.items()},
        )

    def to_float(self) -> PhiPoly:
        """轉為 float64 係數。"""
        return PhiPoly(
            self.nvars, self.shape, {m: _numeric(c) for m, c in self.terms.items()}
        )

    # ---- 求值 ----

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """在多個 φ 點上求值。

        Args:
            points: 形狀 (P, n) 的實數或複數陣列。

        Returns:
            形狀 (P, rows, cols) 的陣列。
        """
        points = np.atleast_2d(np.asarray(points))
        dtype = np.result_type(points.dtype, np.float64)
        out = np.zeros((points.shape[0],) + self.shape, dtype=dtype)
        for mono, coef in self.terms.items():
            values = np.prod(points ** np.asarray(mono), axis=1)
            out += values[:, None, None] * _numeric(coef)[None, :, :]
        return out

    def at_ones(self) -> np.ndarray:
        """在 φ = (1,…,1)（單位元的像）上的值。"""
        total = exact_zeros(self.shape) if self.is_exact else np.zeros(self.shape)
        for coef in self.terms.values():
            total = total + coef
        return total

    # ---- 比較 ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhiPoly):
            return NotImplemented
        if self.nvars != other.nvars or self.shape != other.shape:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(
            bool(np.all(self.terms[m] == other.terms[m])) for m in self.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def max_abs_difference(self, other: PhiPoly) -> float:
        """兩多項式係數差的最大絕對值。"""
        diff = self.to_float() - other.to_float()
        return max((float(np.max(np.abs(c))) for c in diff.terms.values()), default=0.0)

    def __repr__(self) -> str:
        return (
            f"PhiPoly(nvars={self.nvars}, shape={self.shape}, "
            f"terms={len(self.terms)}, degree={self.total_degree()})"
        )


def multi_degrees(nvars: int, degree: int) -> list[Monomial]:
    """總次數為 degree 的所有多重指數，依字典序遞減排列。"""
    if nvars == 0:
        return [()] if degree == 0 else []
    result = []
    for first in range(degree, -1, -1):
        for rest in multi_degrees(nvars - 1, degree - first):
            result.append((first,) + rest)
    return result


def graded_monomials(nvars: int, max_degree: int) -> list[Monomial]:
    """總次數不超過 max_degree 的多重指數，先依總次數再依字典序遞減。"""
    return [m for d in range(max_degree + 1) for m in multi_degrees(nvars, d)]
