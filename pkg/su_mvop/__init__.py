"""SU(n+1)×SU(n+1) 群情形的矩陣值正交多項式工具。"""

__version__ = "0.1.0"
