"""Laurent 多項式資料模型。

定義 SL(n+1) 極大環面上的指數向量、精確係數 Laurent 多項式、
環面點以及以 Laurent 多項式為元素的矩陣。指數以 t_1···t_{n+1}=1
取商，標準形式令最後一個分量為 0。
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

Exponent = tuple[int, ...]


def canonicalize(entries: Iterable[int]) -> Exponent:
    """將指數向量化為標準形式。

    Args:
        entries: 長度 n+1 的整數序列。

    Returns:
        減去 entries[n]·(1,…,1) 後的向量，最後一個分量為 0。

    Raises:
        ValueError: 向量為空時。
    """
    vec = tuple(int(x) for x in entries)
    if not vec:
        raise ValueError("指數向量不可為空")
    last = vec[-1]
    return tuple(x - last for x in vec)


def to_fraction(value: int | Fraction) -> Fraction:
    """將整數或分數轉為 Fraction，拒絕浮點數。"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    raise TypeError(f"係數必須為精確有理數，收到 {type(value).__name__}")


@dataclass(frozen=True)
class TorusPoint:
    """環面 A_c 上的點。

    Attributes:
        angles: θ_1,…,θ_n（弧度），t_{n+1} = exp(−i Σθ_j)。
    """

    angles: tuple[float, ...]

    @property
    def rank(self) -> int:
        """自由角度個數 n。"""
        return len(self.angles)

    def t(self) -> np.ndarray:
        """回傳 (t_1,…,t_{n+1}) 複數陣列。"""
        theta = np.asarray(self.angles, dtype=float)
        last = -theta.sum()
        return np.exp(1j * np.append(theta, last))

    @classmethod
    def identity(cls, n: int) -> TorusPoint:
        """單位元（所有角度為 0）。"""
        return cls(tuple(0.0 for _ in range(n)))


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """環面上的精確係數 Laurent 多項式。

    Attributes:
        rank: 自由角度個數 n，指數向量長度為 n+1。
        terms: 標準指數向量到非零有理係數的對應。
    """

    rank: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[Exponent, Fraction] = {}
        for exp, coef in self.terms.items():
            if len(exp) != self.rank + 1:
                raise ValueError(
                    f"指數向量長度 {len(exp)} 與 rank {self.rank} 不符"
                )
            key = canonicalize(exp)
            cleaned[key] = cleaned.get(key, Fraction(0)) + to_fraction(coef)
        object.__setattr__(
            self, "terms", {k: v for k, v in cleaned.items() if v != 0}
        )

    @classmethod
    def _raw(cls, rank: int, terms: dict[Exponent, Fraction]) -> LaurentPoly:
        """以已標準化且不含零係數的字典直接建立。"""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def constant(cls, value: int | Fraction, rank: int) -> LaurentPoly:
        """常數多項式。"""
        return cls(rank, {(0,) * (rank + 1): to_fraction(value)})

    @classmethod
    def monomial(
        cls, exponent: Iterable[int], rank: int, coef: int | Fraction = 1,
    ) -> LaurentPoly:
        """單項式 coef·t^exponent。"""
        return cls(rank, {tuple(exponent): to_fraction(coef)})

    # ---- 環運算 ----

    def _check_rank(self, other: LaurentPoly) -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank 不符：{self.rank} 與 {other.rank}")

    def __add__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.rank)
        self._check_rank(other)
        result = dict(self.terms)
        for exp, coef in other.terms.items():
            value = result.get(exp, Fraction(0)) + coef
            if value:
                result[exp] = value
            else:
                result.pop(exp, None)
        return LaurentPoly._raw(self.rank, result)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(
            self.rank, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.rank)
        return self + (-other)

    def __rsub__(self, other: int | Fraction) -> LaurentPoly:
        return LaurentPoly.constant(other, self.rank) - self

    def __mul__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            factor = to_fraction(other)
            if factor == 0:
                return LaurentPoly(self.rank)
            return LaurentPoly._raw(
                self.rank, {e: c * factor for e, c in self.terms.items()}
            )
        self._check_rank(other)
        result: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                # 兩個標準向量相加後最後一個分量仍為 0
                key = tuple(a + b for a, b in zip(e1, e2))
                result[key] = result.get(key, Fraction(0)) + c1 * c2
        return LaurentPoly._raw(
            self.rank, {e: c for e, c in result.items() if c != 0}
        )

    __rmul__ = __mul__

    def __pow__(self, power: int) -> LaurentPoly:
        if power < 0:
            raise ValueError("僅支援非負整數次方")
        result = LaurentPoly.constant(1, self.rank)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.rank)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and dict(self.terms) == dict(other.terms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        items = ", ".join(
            f"{list(e)}: {c}" for e, c in sorted(self.terms.items())
        )
        return f"LaurentPoly(rank={self.rank}, {{{items}}})"

    # ---- 查詢 ----

    def is_zero(self) -> bool:
        """是否為零多項式。"""
        return not self.terms

    def constant_term(self) -> Fraction:
        """常數項（環面上 Haar 平均）。"""
        return self.terms.get((0,) * (self.rank + 1), Fraction(0))

    def fourier_degree(self) -> tuple[int, ...]:
        """每個角度 θ_j 的最大 |頻率|。"""
        degree = [0] * self.rank
        for exp in self.terms:
            for j in range(self.rank):
                degree[j] = max(degree[j], abs(exp[j]))
        return tuple(degree)

    # ---- 變換 ----

    def map_exponents(self, fn: Callable[[Exponent], Iterable[int]]) -> LaurentPoly:
        """對每個指數向量套用 fn 後重新標準化。"""
        return LaurentPoly(
            self.rank, _accumulate((tuple(fn(e)), c) for e, c in self.terms.items())
        )

    def weighted(self, weight: Callable[[Exponent], Fraction | int]) -> LaurentPoly:
        """每一項乘上 weight(指數)。"""
        result = {}
        for exp, coef in self.terms.items():
            value = coef * to_fraction(weight(exp))
            if value:
                result[exp] = value
        return LaurentPoly._raw(self.rank, result)

    def permute(self, perm: tuple[int, ...]) -> LaurentPoly:
        """變數置換：第 j 個變數移到位置 perm[j]。"""
        def _move(exp: Exponent) -> list[int]:
            moved = [0] * len(exp)
            for j, value in enumerate(exp):
                moved[perm[j]] = value
            return moved

        return self.map_exponents(_move)

    def conjugate(self) -> LaurentPoly:
        """環面上的複共軛（有理係數下即 t ↦ t⁻¹）。"""
        return LaurentPoly._raw(
            self.rank, {tuple(-x for x in e): c for e, c in self.terms.items()}
        )

    # ---- 求值 ----

    def evaluate(self, point: TorusPoint) -> complex:
        """在環面點上求值。"""
        if point.rank != self.rank:
            raise ValueError(f"環面點維度 {point.rank} 與 rank {self.rank} 不符")
        return complex(self.evaluate_angles(np.asarray([point.angles]))[0])

    def evaluate_angles(self, angles: np.ndarray) -> np.ndarray:
        """向量化求值。

        Args:
            angles: 形狀 (P, n) 的角度陣列。

        Returns:
            形狀 (P,) 的複數陣列。
        """
        angles = np.atleast_2d(np.asarray(angles, dtype=float))
        if not self.terms:
            return np.zeros(angles.shape[0], dtype=complex)
        exps = np.array([e[: self.rank] for e in self.terms], dtype=float)
        coefs = np.array([float(c) for c in self.terms.values()])
        if self.rank == 0:
            return np.full(angles.shape[0], coefs.sum(), dtype=complex)
        phases = angles @ exps.T
        return np.exp(1j * phases) @ coefs


def _accumulate(pairs: Iterable[tuple[Exponent, Fraction]]) -> dict[Exponent, Fraction]:
    """合併相同指數的係數（未標準化的鍵交由建構子處理）。"""
    result: dict[Exponent, Fraction] = {}
    for exp, coef in pairs:
        key = canonicalize(exp)
        result[key] = result.get(key, Fraction(0)) + coef
    return result


@dataclass(frozen=True, eq=False)
class MatrixLaurent:
    """元素為 LaurentPoly 的矩陣。

    Attributes:
        rank: 自由角度個數 n。
        rows: 各列元素。
    """

    rank: int
    rows: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise ValueError("矩陣各列長度不一致")
        for row in self.rows:
            for entry in row:
                if entry.rank != self.rank:
                    raise ValueError("矩陣元素 rank 不一致")

    @classmethod
    def from_function(
        cls, rank: int, nrows: int, ncols: int,
        fn: Callable[[int, int], LaurentPoly],
    ) -> MatrixLaurent:
        """以 fn(i, j) 建立矩陣（0 起算索引）。"""
        return cls(
            rank,
            tuple(tuple(fn(i, j) for j in range(ncols)) for i in range(nrows)),
        )

    @classmethod
    def identity(cls, size: int, rank: int) -> MatrixLaurent:
        """單位矩陣。"""
        return cls.from_function(
            rank, size, size,
            lambda i, j: LaurentPoly.constant(int(i == j), rank),
        )

    @property
    def shape(self) -> tuple[int, int]:
        """(列數, 行數)。"""
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, index: tuple[int, int]) -> LaurentPoly:
        i, j = index
        return self.rows[i][j]

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> MatrixLaurent:
        """逐元素套用 fn。"""
        return MatrixLaurent(
            self.rank, tuple(tuple(fn(x) for x in row) for row in self.rows)
        )

    def __add__(self, other: MatrixLaurent) -> MatrixLaurent:
        if self.shape != other.shape:
            raise ValueError("矩陣形狀不符")
        return MatrixLaurent.from_function(
            self.rank, *self.shape, lambda i, j: self[i, j] + other[i, j]
        )

    def __sub__(self, other: MatrixLaurent) -> MatrixLaurent:
        if self.shape != other.shape:
            raise ValueError("矩陣形狀不符")
        return MatrixLaurent.from_function(
            self.rank, *self.shape, lambda i, j: self[i, j] - other[i, j]
        )

    def scale(self, factor: LaurentPoly | int | Fraction) -> MatrixLaurent:
        """每個元素乘上同一個多項式或常數。"""
        return self.map(lambda x: x * factor)

    def __matmul__(self, other: MatrixLaurent) -> MatrixLaurent:
        rows, inner = self.shape
        if inner != other.shape[0]:
            raise ValueError("矩陣乘法維度不符")

        def _entry(i: int, j: int) -> LaurentPoly:
            total = LaurentPoly(self.rank)
            for m in range(inner):
                if self[i, m].terms and other[m, j].terms:
                    total = total + self[i, m] * other[m, j]
            return total

        return MatrixLaurent.from_function(self.rank, rows, other.shape[1], _entry)

    def transpose(self) -> MatrixLaurent:
        """轉置。"""
        rows, cols = self.shape
        return MatrixLaurent.from_function(
            self.rank, cols, rows, lambda i, j: self[j, i]
        )

    def adjoint(self) -> MatrixLaurent:
        """環面上的共軛轉置。"""
        return self.transpose().map(LaurentPoly.conjugate)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixLaurent):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.shape == other.shape
            and all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        """所有元素皆為零。"""
        return all(x.is_zero() for row in self.rows for x in row)

    def fourier_degree(self) -> tuple[int, ...]:
        """所有元素中每個角度的最大頻率。"""
        degree = [0] * self.rank
        for row in self.rows:
            for entry in row:
                for j, value in enumerate(entry.fourier_degree()):
                    degree[j] = max(degree[j], value)
        return tuple(degree)

    def determinant(self) -> LaurentPoly:
        """以第一列 Laplace 展開計算行列式（適用小矩陣）。"""
        size, cols = self.shape
        if size != cols:
            raise ValueError("行列式僅適用方陣")
        return _laplace(self.rows, self.rank)

    def evaluate(self, point: TorusPoint) -> np.ndarray:
        """在環面點上求值為複數矩陣。"""
        return self.evaluate_angles(np.asarray([point.angles]))[0]

    def evaluate_angles(self, angles: np.ndarray) -> np.ndarray:
        """向量化求值，回傳形狀 (P, rows, cols)。"""
        angles = np.atleast_2d(np.asarray(angles, dtype=float))
        rows, cols = self.shape
        out = np.empty((angles.shape[0], rows, cols), dtype=complex)
        for i, j in itertools.product(range(rows), range(cols)):
            out[:, i, j] = self[i, j].evaluate_angles(angles)
        return out


def _laplace(rows: tuple[tuple[LaurentPoly, ...], ...], rank: int) -> LaurentPoly:
    # 依列展開，子式以剩餘行集合快取
    size = len(rows)
    cache: dict[tuple[int, ...], LaurentPoly] = {}

    def _minor(depth: int, columns: tuple[int, ...]) -> LaurentPoly:
        if depth == size:
            return LaurentPoly.constant(1, rank)
        if columns in cache:
            return cache[columns]
        total = LaurentPoly(rank)
        for pos, col in enumerate(columns):
            pivot = rows[depth][col]
            if pivot.is_zero():
                continue
            rest = columns[:pos] + columns[pos + 1:]
            term = pivot * _minor(depth + 1, rest)
            total = total + term if pos % 2 == 0 else total - term
        cache[columns] = total
        return total

    return _minor(0, tuple(range(size)))
