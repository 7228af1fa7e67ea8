import numpy as np

from graphlap import from_edge_list


def path_graph(n, weight=1.0):
    return from_edge_list(n, [(i, i + 1, weight) for i in range(n - 1)])
