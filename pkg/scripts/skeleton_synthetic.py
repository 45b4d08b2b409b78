"""Skeleton-shaped stand-in for motion-capture data: disagreements per pipeline over repeated draws."""
from _common import parser, write_rows

from treeggm.skeleton import recover_skeleton, synthetic_skeleton_data

p = parser(__doc__, trials=50)
p.add_argument("--n", type=int, default=200_000)
p.add_argument("--methods", default="raw,sign,1,3,6")
args = p.parse_args()
methods = args.methods.split(",")
rows = []
for t in range(args.trials):
    tree, X = synthetic_skeleton_data(args.n, seed=(args.seed, t))
    for rec in recover_skeleton(X, methods, reference=tree):
        rows.append({"trial": t, "method": rec["method"], "disagreements": rec["disagreements"],
                     "edge_f1": rec["edge_f1"]})
write_rows(rows, args.out)
