"""CSV export plugin"""
from .plugin import CsvExportPlugin

__all__ = ["CsvExportPlugin"]
