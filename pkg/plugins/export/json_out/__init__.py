"""JSON export plugin"""
from .plugin import JsonExportPlugin

__all__ = ["JsonExportPlugin"]
