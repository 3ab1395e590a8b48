"""
定理検証ハーネスモジュール
"""
