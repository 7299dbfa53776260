"""CLI module for toric-weyl"""
