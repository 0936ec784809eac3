"""A_alpha spectral radii, scattering number, toughness and tau-toughness of small graphs.

Also builds join-of-cliques extremal families with closed-form quotient
matrices and checks spectral sufficient conditions by exhaustive and random search.
"""
from spectough.graph import Graph, MalformedInput, emit_graph6, parse_graph6
from spectough.invariants import scattering_number, tau, toughness
from spectough.kernels import BACKEND
from spectough.spectral import a_alpha, power_iteration, rho, spectral_radius

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Graph",
    "MalformedInput",
    "a_alpha",
    "emit_graph6",
    "parse_graph6",
    "power_iteration",
    "rho",
    "scattering_number",
    "spectral_radius",
    "tau",
    "toughness",
]
