"""Desk-scale computations around quotients of curve graphs.

Subpackages and modules:

graphcore
    Finite graphs, electrification, and metric diagnostics.
orbifolds
    Euler characteristics, Teichmuller dimensions, and cover signatures.
traintrack
    Ribbon train tracks, weights, regions, and vertex cycles.
ncie
    Non-classical interval exchanges and Rauzy induction.
farey
    The Farey model of the curve graphs of S_{1,1} and S_{0,4}.
"""
__version__ = "0.1.0"
