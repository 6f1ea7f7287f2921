"""
hkcolor

Quandle colorings of handlebody-knot diagrams: G-flows, coloring counts by
G-families of quandles, and the tunnel number, cutting number and
constituent bounds they imply.
"""

__version__ = "1.0.0"
__author__ = "hkcolor developers"
