"""Core module for configuration, errors and dependency wiring"""
__all__ = []
