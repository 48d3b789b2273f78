"""
Group-theory services
"""

__all__ = []
