"""Graph views of automata, backed by networkx."""

import networkx as nx


def transition_graph(automaton, states=None):
    """
    Directed graph of an automaton's transitions.

    Each edge carries the sorted list of letters labelling it under the
    ``letters`` attribute.

    Args:
        automaton (Automaton): The automaton.
        states (set, optional): Restrict the graph to these states.
    """
    graph = nx.DiGraph()
    keep = set(range(automaton.num_states)) if states is None else set(states)
    graph.add_nodes_from(sorted(keep))
    for q, letter, target in automaton.edges():
        if q in keep and target in keep:
            if graph.has_edge(q, target):
                graph[q][target]["letters"].append(letter)
            else:
                graph.add_edge(q, target, letters=[letter])
    return graph


def reachable_from(graph, sources):
    seen = set()
    for source in sources:
        if source in graph and source not in seen:
            seen.add(source)
            seen |= nx.descendants(graph, source)
    return seen


def cyclic_nodes(graph):
    """Nodes lying on some cycle: nontrivial SCCs and self-loops."""
    cyclic = set()
    for component in nx.strongly_connected_components(graph):
        if len(component) > 1:
            cyclic |= component
        else:
            (node,) = component
            if graph.has_edge(node, node):
                cyclic.add(node)
    return cyclic


def can_reach_cycle(graph):
    """Nodes from which an infinite path exists."""
    cyclic = cyclic_nodes(graph)
    result = set(cyclic)
    for node in cyclic:
        result |= nx.ancestors(graph, node)
    return result


def find_lasso(graph, sources, target):
    """
    Shortest stem from one of ``sources`` to ``target`` and a shortest cycle back.

    Returns:
        tuple: ``(stem_nodes, loop_nodes)`` where the stem ends right before
        ``target`` and the loop starts at ``target``; ``None`` when no lasso
        through ``target`` exists.
    """
    best_stem = None
    for source in sorted(sources):
        if source not in graph:
            continue
        try:
            path = nx.shortest_path(graph, source, target)
        except nx.NetworkXNoPath:
            continue
        if best_stem is None or len(path) < len(best_stem):
            best_stem = path
    if best_stem is None:
        return None

    best_loop = None
    for successor in sorted(graph.successors(target)):
        try:
            back = nx.shortest_path(graph, successor, target)
        except nx.NetworkXNoPath:
            continue
        loop = [target] + back[:-1]
        if best_loop is None or len(loop) < len(best_loop):
            best_loop = loop
    if best_loop is None:
        return None
    return best_stem[:-1], best_loop


def path_letters(graph, nodes):
    """Smallest letter on each edge of a closed or open node path."""
    return [min(graph[u][v]["letters"]) for u, v in zip(nodes, nodes[1:])]
