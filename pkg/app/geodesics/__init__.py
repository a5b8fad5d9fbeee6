"""Isomap-style geodesic dissimilarities"""

from app.geodesics.graph import KNN, Epsilon, GraphRule, NeighborhoodGraph, build_graph
from app.geodesics.shortest_paths import graph_components, shortest_path_dissimilarity

__all__ = [
    "KNN",
    "Epsilon",
    "GraphRule",
    "NeighborhoodGraph",
    "build_graph",
    "graph_components",
    "shortest_path_dissimilarity",
]
