"""Crossover probability on the 0.9 / 0.1 chain: Monte Carlo, exact, Chernoff, Hoeffding, exponents."""
from _common import parser, write_rows

from treeggm.experiments import CrossoverConfig, crossover_table

args = parser(__doc__).parse_args()
write_rows(crossover_table(CrossoverConfig(trials=args.trials, seed=args.seed)), args.out)
