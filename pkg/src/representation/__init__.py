"""
加群（箙の表現）モジュール
"""
