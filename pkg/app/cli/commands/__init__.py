"""CLI command groups"""
__all__ = ["groups", "roots", "torus", "twisted", "verify"]
