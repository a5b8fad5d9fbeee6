"""
Stress MDS Engine - raw-stress embedding, Approximate Lipschitz Embedding and consistency experiments
"""

__version__ = "0.1.0"
