"""
素体 F_p 上の厳密な線形代数

行列はすべて numpy の int64 配列で、成分は 0..p-1 に正規化して扱う。
"""
from typing import List, Tuple

import numpy as np


def as_matrix(values, p: int, shape: Tuple[int, int] = None) -> np.ndarray:
    """
    任意の配列を F_p 上の int64 行列に変換

    Args:
        values: 行列（リスト、numpy配列）
        p: 標数
        shape: 空行列の場合に使う形状

    Returns:
        成分を mod p に正規化した行列
    """
    matrix = np.array(values, dtype=np.int64)
    if matrix.size == 0 and shape is not None:
        return np.zeros(shape, dtype=np.int64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1) if matrix.size else np.zeros((0, 0), dtype=np.int64)
    return matrix % p


def zeros(rows: int, cols: int) -> np.ndarray:
    """
    零行列

    Args:
        rows: 行数
        cols: 列数

    Returns:
        rows x cols の int64 零行列（空の形も可）
    """
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    """
    単位行列

    Args:
        n: 次数

    Returns:
        n x n の int64 単位行列
    """
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    mod p の行列積

    Args:
        a: m x k 行列
        b: k x n 行列
        p: 標数

    Returns:
        m x n 行列（k = 0 のときは零行列）
    """
    if a.shape[1] == 0 or b.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def row_reduce(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    被約行階段形を計算

    Args:
        matrix: m x n 行列
        p: 標数

    Returns:
        (R, pivots): 被約行階段形とピボット列の一覧（長さ = 階数）
    """
    reduced = np.array(matrix, dtype=np.int64) % p
    rows, cols = reduced.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(reduced[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            reduced[[r, k]] = reduced[[k, r]]
        inv = pow(int(reduced[r, c]), -1, p)
        reduced[r] = (reduced[r] * inv) % p
        factors = reduced[:, c].copy()
        factors[r] = 0
        targets = np.nonzero(factors)[0]
        if targets.size:
            reduced[targets] = (reduced[targets] - np.outer(factors[targets], reduced[r])) % p
        pivots.append(c)
        r += 1
    return reduced, pivots


def rank(matrix: np.ndarray, p: int) -> int:
    """
    F_p 上の階数

    Args:
        matrix: m x n 行列
        p: 標数

    Returns:
        階数（空行列は 0）
    """
    if matrix.size == 0:
        return 0
    _, pivots = row_reduce(matrix, p)
    return len(pivots)


def nullspace(matrix: np.ndarray, p: int) -> np.ndarray:
    """
    零空間の基底を列ベクトルとして返す

    Args:
        matrix: m x n 行列
        p: 標数

    Returns:
        n x k 行列（k = n - 階数）
    """
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return identity(n)
    reduced, pivots = row_reduce(matrix, p)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = zeros(n, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, c in enumerate(pivots):
            basis[c, j] = (-reduced[i, f]) % p
    return basis


def column_basis(matrix: np.ndarray, p: int) -> np.ndarray:
    """列空間の基底（元の列から独立なものを選ぶ）"""
    if matrix.shape[1] == 0:
        return zeros(matrix.shape[0], 0)
    _, pivots = row_reduce(matrix, p)
    return matrix[:, pivots] % p


def complement_basis(span: np.ndarray, n: int, p: int) -> np.ndarray:
    """
    部分空間の補空間の基底を標準基底から選ぶ

    Args:
        span: n x k 行列（列が部分空間を張る）
        n: 全空間の次元
        p: 標数

    Returns:
        n x c 行列（span の列と合わせて F_p^n の基底になる）
    """
    augmented = np.hstack([span, identity(n)])
    _, pivots = row_reduce(augmented, p)
    offset = augmented.shape[1] - n
    chosen = [c - offset for c in pivots if c >= offset]
    return identity(n)[:, chosen]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    AX = B の解を一つ返す

    Raises:
        ValueError: 解が存在しない場合
    """
    rows, cols = a.shape
    rhs = b if b.ndim == 2 else b.reshape(-1, 1)
    if cols == 0:
        if np.any(rhs % p):
            raise ValueError("連立一次方程式に解がありません")
        return zeros(0, rhs.shape[1])
    reduced, pivots = row_reduce(np.hstack([a, rhs]), p)
    if any(c >= cols for c in pivots):
        raise ValueError("連立一次方程式に解がありません")
    solution = zeros(cols, rhs.shape[1])
    for i, c in enumerate(pivots):
        solution[c] = reduced[i, cols:]
    return solution


def inverse(matrix: np.ndarray, p: int) -> np.ndarray:
    """正方行列の逆行列"""
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"正方行列ではありません: {matrix.shape}")
    reduced, pivots = row_reduce(np.hstack([matrix, identity(n)]), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("逆行列が存在しません")
    return reduced[:, n:] % p


def is_invertible(matrix: np.ndarray, p: int) -> bool:
    """
    F_p 上で可逆かどうか

    Args:
        matrix: 行列
        p: 標数

    Returns:
        正方行列かつ階数が次数に等しければ True
    """
    n = matrix.shape[0]
    return matrix.shape == (n, n) and rank(matrix, p) == n


def quotient_maps(span: np.ndarray, n: int, p: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    商空間 F_p^n / span への射影とその切断

    Returns:
        (Q, S): Q は c x n（Q @ span = 0）、S は n x c（Q @ S = I）
    """
    basis = column_basis(span, p)
    section = complement_basis(basis, n, p)
    full = np.hstack([basis, section])
    inv = inverse(full, p) if n else zeros(0, 0)
    projection = inv[basis.shape[1]:, :]
    return projection % p, section
