"""Block families of axis-parallel boxes and exact tools around them."""
__version__ = "0.1.0"
