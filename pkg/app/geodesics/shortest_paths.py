"""Graph-geodesic dissimilarities"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, csgraph_from_dense, dijkstra

from app.exceptions import DisconnectedGraph
from app.geodesics.graph import NeighborhoodGraph
from app.models import DissimilarityMatrix
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


def graph_components(graph: NeighborhoodGraph) -> np.ndarray:
    """Component label of every vertex"""
    if graph.n == 0:
        return np.zeros(0, dtype=int)
    rows = [i for i, _, _ in graph.adjacency]
    cols = [j for _, j, _ in graph.adjacency]
    structure = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(graph.n, graph.n))
    _, labels = connected_components(structure, directed=False)
    return labels


def shortest_path_dissimilarity(graph: NeighborhoodGraph) -> DissimilarityMatrix:
    """
    All-pairs shortest weighted path lengths, one Dijkstra run per source

    Raises:
        DisconnectedGraph: carrying the component labels
    """
    labels = graph_components(graph)
    if graph.n and labels.max() > 0:
        raise DisconnectedGraph(labels, n=graph.n)

    # null_value=inf keeps zero-weight edges between coincident points
    sparse = csgraph_from_dense(graph.dense_weights(), null_value=np.inf)
    lengths = dijkstra(sparse, directed=False)
    lengths = np.minimum(lengths, lengths.T)
    np.fill_diagonal(lengths, 0.0)

    logger.debug(f"Shortest paths over {graph.n} vertices, {len(graph.adjacency)} edges")
    return DissimilarityMatrix(lengths)
