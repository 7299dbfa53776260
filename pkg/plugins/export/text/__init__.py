"""Plain-text export plugin"""
from .plugin import TextExportPlugin

__all__ = ["TextExportPlugin"]
