"""Fixed 1000-bit budget per machine: correlation error as the rate R trades off against sample count."""
from _common import parser, write_rows

from treeggm.experiments import BudgetConfig, budget_table

args = parser(__doc__).parse_args()
write_rows(budget_table(BudgetConfig(trials=args.trials, seed=args.seed)), args.out)
