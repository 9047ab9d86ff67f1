# Exceptional collections on a few toric quotients, built by crossing walls.
from gkz import toric
from gkz.toric import GitProblem

# P^2: three coordinates of weight 1
P2 = GitProblem(1, [(1,), (1,), (1,)])
tree = toric.exceptional_collection(P2, (1,))
for obj in toric.flatten(tree):
    print("P2 object", obj.character, "twist", obj.chain[0].twist)

# one wall, three copies of a point
(block,) = tree.blocks
print("mu =", block.crossing.wall.mu, "copies =", len(block.copies))

# The blow-up of P^2 at a point. Two chambers sit inside the effective cone.
BL = GitProblem(2, [(1, 0), (1, 0), (0, 1), (1, 1)])
print(toric.sigma_bases(BL, (2, 1)))
print(toric.sigma_bases(BL, (1, 2)))

tree = toric.exceptional_collection(BL, (2, 1))
for b in tree.blocks:
    w = b.crossing.wall
    child = b.copies[0][1]
    print("wall", w.lam, "mu", w.mu, "child columns", child.problem.columns)
print("leaves:", toric.tree_length(tree), "k0:", toric.k0_rank(BL, (2, 1)))

# the chamber adjacency graph
g = toric.chamber_graph(BL)
print(len(g.nodes), "chambers,", len(g.edges), "walls")

# weighted projective space: the stacky point contributes twice
P123 = GitProblem(1, [(1,), (2,), (3,)])
print("P(1,2,3):", len(toric.flatten(toric.exceptional_collection(P123, (1,)))), "objects")

# Hirzebruch surfaces
for a in range(4):
    F = GitProblem(2, [(1, 0), (1, 0), (0, 1), (-a, 1)])
    print(f"F_{a}", toric.tree_length(toric.exceptional_collection(F, (1, 1))))
