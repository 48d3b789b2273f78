"""Pydantic schemas for reports, requests and the cache file"""
from .models import *
