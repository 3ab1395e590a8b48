"""
ホモロジー計算モジュール
"""
