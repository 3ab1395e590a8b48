"""
CLI 引数からの代数・加群の解決

代数はファイルパスか組み込み名（lambda:<n>, a2, semisimple:<n>, kronecker, loop）、
加群はファイルパスか略記（S:<v>, P:<v>, I:<v>, R）で指定する。
"""
from typing import Callable, Dict

from src.algebra.bound_algebra import DEFAULT_LENGTH_CAP, DEFAULT_PATH_CAP, BoundQuiverAlgebra
from src.algebra.text_format import load_algebra
from src.harness import generators
from src.homology.duality import injective_module
from src.representation.module import Representation, projective_module, regular_module, simple_module
from src.representation.text_format import load_module
from src.utils.exceptions import InputError

_BUILTIN: Dict[str, Callable[..., BoundQuiverAlgebra]] = {
    "a2": generators.a2_algebra,
    "kronecker": generators.kronecker_algebra,
    "loop": generators.loop_algebra,
}

_PARAMETRIZED: Dict[str, Callable[..., BoundQuiverAlgebra]] = {
    "lambda": generators.example_2_5,
    "semisimple": generators.semisimple_algebra,
}


def resolve_algebra(
    spec: str,
    p: int,
    length_cap: int = DEFAULT_LENGTH_CAP,
    path_cap: int = DEFAULT_PATH_CAP,
    explicit: bool = True
) -> BoundQuiverAlgebra:
    """
    代数指定を解決

    Args:
        spec: ファイルパスまたは組み込み名
        p: 標数（組み込み代数、および char: のない代数ファイルで使う）
        length_cap: パス長上限
        path_cap: パス数上限
        explicit: p が明示指定か（True ならファイルの char: より優先）

    Raises:
        InputError: 解決できない場合
    """
    if spec in _BUILTIN:
        return _BUILTIN[spec](p)
    head, sep, argument = spec.partition(":")
    if sep and head in _PARAMETRIZED:
        if not argument.isdigit():
            raise InputError(f"組み込み代数 {head} の引数は整数です: {spec}")
        return _PARAMETRIZED[head](int(argument), p)
    return load_algebra(
        spec,
        characteristic=p if explicit else None,
        default_characteristic=p,
        length_cap=length_cap,
        path_cap=path_cap,
    )


def resolve_module(spec: str, algebra: BoundQuiverAlgebra) -> Representation:
    """
    加群指定を解決

    Args:
        spec: ファイルパスまたは略記
        algebra: 加群の代数

    Raises:
        InputError: 解決できない場合
    """
    if spec == "R":
        return regular_module(algebra, "left")
    head, sep, vertex = spec.partition(":")
    if sep and head in ("S", "P", "I"):
        if head == "S":
            return simple_module(algebra, vertex)
        if head == "P":
            return projective_module(algebra, vertex)
        return injective_module(algebra, vertex)
    return load_module(spec, algebra)
