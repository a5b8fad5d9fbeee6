"""Classical MDS initialization"""

from app.classical.cmds import classical_mds, double_centered

__all__ = ["classical_mds", "double_centered"]
