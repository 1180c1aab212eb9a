"""(n, k) = (2, 1) 與 (3, 1) 的精確參考資料。

L_k、C_k、Υ_ℓ、G_{kℓ}、W_pol、P 與特徵值表。多項式元素以
{變數索引: 係數} 表示一次式（索引 0 為常數項），二次式以多重指數表示。
"""

from collections.abc import Mapping, Sequence
from fractions import Fraction as F

import numpy as np

from su_mvop.models.phipoly import Monomial, PhiPoly, exact_matrix

Linear = Mapping[int, F | int]

SUPPORTED_RANKS = (2, 3)


def _linear_poly(n: int, rows: Sequence[Sequence[Linear]]) -> PhiPoly:
    entries = []
    for row in rows:
        line = []
        for entry in row:
            coefs = {}
            for index, value in entry.items():
                mono = tuple(int(j == index - 1) for j in range(n))
                coefs[mono] = F(value)
            line.append(PhiPoly.scalar(n, coefs))
        entries.append(line)
    return PhiPoly.from_entries(n, entries)


def _scalar(n: int, terms: Mapping[Monomial, F | int]) -> PhiPoly:
    return PhiPoly.scalar(n, {m: F(c) for m, c in terms.items()})


# ---- (2, 1) ----

_L_2 = {
    1: [[{1: F(8, 3)}, {2: -2}, {}], [{}, {1: 4}, {}], [{}, {}, {1: F(4, 3)}]],
    2: [[{2: F(4, 3)}, {}, {}], [{}, {2: 4}, {}], [{}, {1: -2}, {2: F(8, 3)}]],
}
_C_2 = {
    1: [[0, 0, F(-4, 3)], [F(-8, 3), 0, 0], [0, -2, 0]],
    2: [[0, -2, 0], [0, 0, F(-8, 3)], [F(-4, 3), 0, 0]],
}
_UPSILON_2 = {
    1: [
        [{1: F(4, 3)}, {2: 1}, {0: F(2, 3)}],
        [{0: F(-4, 3)}, {1: F(-2, 3)}, {}],
        [{}, {0: F(-1, 3)}, {1: F(-2, 3)}],
    ],
    2: [
        [{2: F(2, 3)}, {0: F(1, 3)}, {}],
        [{}, {2: F(2, 3)}, {0: F(4, 3)}],
        [{0: F(-2, 3)}, {1: -1}, {2: F(-4, 3)}],
    ],
}
_G_2 = {
    (1, 1): {(2, 0): F(8, 3), (0, 1): F(-8, 3)},
    (1, 2): {(1, 1): F(4, 3), (0, 0): F(-4, 3)},
    (2, 2): {(0, 2): F(8, 3), (1, 0): F(-8, 3)},
}
_W_2 = [
    [{(0, 0): 3}, {(1, 0): 3}, {(0, 1): 3}],
    [{(0, 1): 3}, {(1, 1): F(9, 4), (0, 0): F(3, 4)}, {(1, 0): 3}],
    [{(1, 0): 3}, {(0, 1): 3}, {(0, 0): 3}],
]
_P_2 = {
    (2, 2): 81, (3, 0): -108, (0, 3): -108, (1, 1): 162, (0, 0): -27,
}

# ---- (3, 1) ----

_L_3 = {
    1: [
        [{1: 3}, {2: -2}, {3: F(-4, 3)}, {}],
        [{}, {1: 5}, {}, {}],
        [{}, {}, {1: 3}, {}],
        [{}, {}, {}, {1: 1}],
    ],
    2: [
        [{2: 2}, {3: F(-8, 3)}, {}, {}],
        [{}, {2: 6}, {3: F(-8, 3)}, {}],
        [{}, {1: F(-8, 3)}, {2: 6}, {}],
        [{}, {}, {1: F(-8, 3)}, {2: 2}],
    ],
    3: [
        [{3: 1}, {}, {}, {}],
        [{}, {3: 3}, {}, {}],
        [{}, {}, {3: 5}, {}],
        [{}, {1: F(-4, 3)}, {2: -2}, {3: 3}],
    ],
}
_C_3 = {
    1: [[0, 0, 0, -1], [-3, 0, 0, 0], [0, -3, 0, 0], [0, 0, F(-5, 3), 0]],
    2: [[0, 0, F(-2, 3), 0], [0, 0, 0, -2], [-2, 0, 0, 0], [0, F(-2, 3), 0, 0]],
    3: [[0, F(-5, 3), 0, 0], [0, 0, -3, 0], [0, 0, 0, -3], [-1, 0, 0, 0]],
}
_UPSILON_3 = {
    1: [
        [{1: F(3, 2)}, {2: 1}, {3: F(2, 3)}, {0: F(1, 2)}],
        [{0: F(-3, 2)}, {1: F(-1, 2)}, {}, {}],
        [{}, {0: F(-1, 2)}, {1: F(-1, 2)}, {}],
        [{}, {}, {0: F(-1, 6)}, {1: F(-1, 2)}],
    ],
    2: [
        [{2: 1}, {3: F(4, 9)}, {0: F(1, 9)}, {}],
        [{}, {2: 1}, {3: F(4, 3)}, {0: 1}],
        [{0: -1}, {1: F(-4, 3)}, {2: -1}, {}],
        [{}, {0: F(-1, 9)}, {1: F(-4, 9)}, {2: -1}],
    ],
    3: [
        [{3: F(1, 2)}, {0: F(1, 6)}, {}, {}],
        [{}, {3: F(1, 2)}, {0: F(1, 2)}, {}],
        [{}, {}, {3: F(1, 2)}, {0: F(3, 2)}],
        [{0: F(-1, 2)}, {1: F(-2, 3)}, {2: -1}, {3: F(-3, 2)}],
    ],
}
_G_3 = {
    (1, 1): {(2, 0, 0): 3, (0, 1, 0): -3},
    (1, 2): {(1, 1, 0): 2, (0, 0, 1): -2},
    (1, 3): {(1, 0, 1): 1, (0, 0, 0): -1},
    (2, 2): {(0, 2, 0): 4, (1, 0, 1): F(-32, 9), (0, 0, 0): F(-4, 9)},
    (2, 3): {(0, 1, 1): 2, (1, 0, 0): -2},
    (3, 3): {(0, 0, 2): 3, (0, 1, 0): -3},
}
_W_3 = [
    [{(0, 0, 0): 4}, {(1, 0, 0): 4}, {(0, 1, 0): 4}, {(0, 0, 1): 4}],
    [
        {(0, 0, 1): 4},
        {(1, 0, 1): F(32, 9), (0, 0, 0): F(4, 9)},
        {(0, 1, 1): F(8, 3), (1, 0, 0): F(4, 3)},
        {(0, 1, 0): 4},
    ],
    [
        {(0, 1, 0): 4},
        {(1, 1, 0): F(8, 3), (0, 0, 1): F(4, 3)},
        {(1, 0, 1): F(32, 9), (0, 0, 0): F(4, 9)},
        {(1, 0, 0): 4},
    ],
    [{(1, 0, 0): 4}, {(0, 1, 0): 4}, {(0, 0, 1): 4}, {(0, 0, 0): 4}],
]
_P_3 = {
    (2, 1, 0): 13824,
    (1, 0, 1): -3072,
    (3, 0, 3): -16384,
    (2, 3, 0): -13824,
    (2, 0, 2): -1536,
    (0, 3, 2): -13824,
    (0, 1, 2): 13824,
    (4, 0, 0): -6912,
    (0, 2, 0): -4608,
    (2, 2, 2): 9216,
    (3, 1, 1): 27648,
    (1, 1, 3): 27648,
    (1, 2, 1): -46080,
    (0, 4, 0): 20736,
    (0, 0, 4): -6912,
    (0, 0, 0): 256,
}

_TABLES = {
    2: {"L": _L_2, "C": _C_2, "upsilon": _UPSILON_2, "G": _G_2, "W": _W_2, "P": _P_2},
    3: {"L": _L_3, "C": _C_3, "upsilon": _UPSILON_3, "G": _G_3, "W": _W_3, "P": _P_3},
}


def _table(n: int) -> dict:
    if n not in _TABLES:
        raise ValueError(f"n={n} 沒有參考資料，僅支援 {SUPPORTED_RANKS}")
    return _TABLES[n]


def first_order_table(n: int) -> dict[int, tuple[PhiPoly, np.ndarray]]:
    """k → (L_k, C_k)。"""
    table = _table(n)
    return {
        k: (_linear_poly(n, rows), exact_matrix(table["C"][k]))
        for k, rows in table["L"].items()
    }


def upsilon_table(n: int) -> dict[int, PhiPoly]:
    """ℓ → Υ_ℓ。"""
    return {ell: _linear_poly(n, rows) for ell, rows in _table(n)["upsilon"].items()}


def symbol_table(n: int) -> dict[tuple[int, int], PhiPoly]:
    """(k, ℓ) → G_{kℓ}，k ≤ ℓ。"""
    return {key: _scalar(n, terms) for key, terms in _table(n)["G"].items()}


def weight_table(n: int) -> PhiPoly:
    """k = 1 的 W_pol。"""
    rows = _table(n)["W"]
    return PhiPoly.from_entries(n, [[_scalar(n, e) for e in row] for row in rows])


def scalar_p_table(n: int) -> PhiPoly:
    """純量密度 P。"""
    return _scalar(n, _table(n)["P"])


def gamma_plus_table(n: int, d: Sequence[int]) -> tuple[F, ...]:
    """Γ⁺_d 的對角元素。"""
    if n == 2:
        d1, d2 = d
        common = F(4, 3) * (d1 * d1 + d1 * d2 + d2 * d2)
        return (
            common + F(16, 3) * d1 + F(14, 3) * d2 + F(8, 3),
            common + 6 * d1 + 6 * d2 + F(16, 3),
            common + F(14, 3) * d1 + F(16, 3) * d2 + F(8, 3),
        )
    if n == 3:
        d1, d2, d3 = d
        common = (
            F(3, 2) * d1 * d1 + 2 * d2 * d2 + F(3, 2) * d3 * d3
            + 2 * d1 * d2 + d1 * d3 + 2 * d2 * d3
        )
        return (
            common + F(15, 2) * d1 + 9 * d2 + F(13, 2) * d3 + F(15, 4),
            common + F(17, 2) * d1 + 11 * d2 + F(15, 2) * d3 + F(35, 4),
            common + F(15, 2) * d1 + 11 * d2 + F(17, 2) * d3 + F(35, 4),
            common + F(13, 2) * d1 + 9 * d2 + F(15, 2) * d3 + F(15, 4),
        )
    raise ValueError(f"n={n} 沒有特徵值表")


def gamma_minus_table(n: int, d: Sequence[int]) -> tuple[F, ...]:
    """Γ⁻_d 的對角元素。"""
    if n == 2:
        d1, d2 = d
        return (
            F(4, 3) * d1 + F(2, 3) * d2 + F(8, 3),
            F(-2, 3) * d1 + F(2, 3) * d2,
            F(-2, 3) * d1 - F(4, 3) * d2 - F(8, 3),
        )
    if n == 3:
        d1, d2, d3 = d
        return (
            F(3, 2) * d1 + d2 + F(1, 2) * d3 + F(15, 4),
            F(-1, 2) * d1 + d2 + F(1, 2) * d3 + F(5, 4),
            F(-1, 2) * d1 - d2 + F(1, 2) * d3 - F(5, 4),
            F(-1, 2) * d1 - d2 - F(3, 2) * d3 - F(15, 4),
        )
    raise ValueError(f"n={n} 沒有特徵值表")
