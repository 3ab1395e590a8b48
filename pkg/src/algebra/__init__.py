"""
束縛箙代数モジュール
"""
