"""
Gorenstein 射影加群の計算エンジンと定理検証ハーネス
"""

__version__ = "1.0.0"
