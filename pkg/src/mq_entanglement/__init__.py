"""MQ NMR spin dynamics and entanglement.

Simulates multiple-quantum coherence dynamics of small dipolar-coupled
spin-1/2 systems and quantifies the entanglement the dynamics creates.
"""

__version__ = "0.1.0"
