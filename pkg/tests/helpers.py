"""Shared graph lists for the tests."""
from rinfty.engine import graph_from_adjacency, unlabeled_graphs


def graphs_up_to(n_max: int, nonempty: bool = False) -> list:
    """One representative per isomorphism class, n = 1..n_max."""
    out = []
    for n in range(1, n_max + 1):
        for adj in unlabeled_graphs(n):
            g = graph_from_adjacency(n, adj)
            if g.edges or not nonempty:
                out.append(g)
    return out


# certificate tampering ---------------------------------------------------------------------

# fields the recomputation reads; everything else is derived from them
INPUT_FIELDS = ("format_version", "kind", "graph", "parameters", "psi", "signs")


def _mutate(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, int):
        return value + 1
    if value is None:
        return 0
    if isinstance(value, str):
        if value in ("+", "-"):
            return "-" if value == "+" else "+"
        if "/" in value:
            p, q = value.split("/")
            return "%d/%s" % (int(p) + int(q), q)
        return value + "x"
    raise TypeError(type(value))


def leaf_paths(doc, prefix=()):
    if isinstance(doc, dict):
        for k, v in doc.items():
            yield from leaf_paths(v, prefix + (k,))
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            yield from leaf_paths(v, prefix + (i,))
    else:
        yield prefix


def tampered(doc, path):
    """Deep copy of doc with the single leaf at path changed."""
    import copy
    out = copy.deepcopy(doc)
    node = out
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = _mutate(node[path[-1]])
    return out
