"""Sign-method tree error on a 20-node star with correlation 0.5, next to the tree error bound."""
from _common import parser, write_rows

from treeggm.experiments import StarConfig, star_bound_table

p = parser(__doc__)
p.add_argument("--workers", type=int, default=1)
args = p.parse_args()
write_rows(star_bound_table(StarConfig(trials=args.trials, seed=args.seed, workers=args.workers)), args.out)
