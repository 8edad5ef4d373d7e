"""
距離幾何ツールキット
"""

__version__ = "0.1.0"
