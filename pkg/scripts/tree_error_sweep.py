"""Tree error rate against n for sign, per-symbol (R=1,2,4) and raw data on a random 20-node tree."""
from _common import parser, write_rows

from treeggm.experiments import SweepConfig, sweep_n_R
from treeggm.ggm import random_tree

p = parser(__doc__)
p.add_argument("--tree-seed", type=int, default=0)
p.add_argument("--workers", type=int, default=1)
args = p.parse_args()
tree = random_tree(20, 0.1, 0.9, seed=args.tree_seed)
cfg = SweepConfig(tree, [500, 1000, 2000, 4000, 8000, 16000], ["sign", 1, 2, 4, "raw"],
                  args.trials, args.seed, args.workers)
write_rows(sweep_n_R(cfg), args.out)
