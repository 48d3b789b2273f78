"""Utility modules"""
from .logger import debug_logger

__all__ = ['debug_logger']
