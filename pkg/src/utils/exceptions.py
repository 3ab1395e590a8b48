"""
例外クラス定義

CLIは InputError 系を終了コード3、UndeterminedIsomorphism を終了コード2に対応付ける。
"""


class GPCError(Exception):
    """本パッケージの例外の基底クラス"""


class InputError(GPCError):
    """入力（代数・加群・パラメータ）の誤り"""


class ParseError(InputError):
    """テキスト形式の構文エラー"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{line}行{column}列: {message}")


class NotPrime(InputError):
    """標数が素数でない"""


class NotAdmissible(InputError):
    """関係式が許容イデアルを生成しない"""


class UnknownVertex(InputError):
    """箙に存在しない頂点が指定された"""


class AlgebraMismatch(InputError):
    """異なる代数上の加群を組み合わせようとした"""


class NotNakayama(InputError):
    """中山代数でない代数に列挙を要求した"""


class PreconditionError(InputError):
    """操作の事前条件違反"""


class GenerationExhausted(InputError):
    """ファザーのランダム生成が再試行上限に達した"""


class UndeterminedIsomorphism(GPCError):
    """同型判定が決着せず、証明書の発行を中断した"""
