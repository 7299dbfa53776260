"""Plugins for toric-weyl"""
