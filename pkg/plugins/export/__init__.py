"""Export plugins"""
