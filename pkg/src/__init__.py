"""toric-weyl - virtual action and Weyl bounds of toric del Pezzo surfaces"""

__version__ = "0.1.0"
