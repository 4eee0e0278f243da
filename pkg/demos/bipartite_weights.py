"""Edge weights on a bipartite graph such that the lightest edge at every
left vertex, and the heaviest at every right vertex, form perfect matchings."""
from matroid_pricing import bipartite_edge_weights, matching_selections

U = V = 3
edges = [[u, v] for u in range(U) for v in range(V)]   # K3,3

w = bipartite_edge_weights(U, V, edges)
light, heavy = matching_selections(U, V, edges, w)
for i, (u, v) in enumerate(edges):
    print(f"edge {u}-{v}: weight {w[i]}")
print("lightest per left vertex:", [edges[i] for i in light])
print("heaviest per right vertex:", [edges[i] for i in heavy])
