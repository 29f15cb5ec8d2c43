"""Simulation and analysis of QKD post-processing with encrypted error correction.

Compares the Holevo-bound (Devetak-Winter) key rate with the rate obtained
when Eve is limited to her accessible information, simulates the
reconciliation / privacy-amplification pipeline with a pre-shared key
ledger, and reproduces the XOR locking example where an entangled
measurement beats every product measurement.
"""

__version__ = "0.1.0"
