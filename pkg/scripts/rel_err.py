"""Quantization-induced drift of the sample correlation per bit rate, against the distortion bound."""
from _common import parser, write_rows

from treeggm.experiments import RelErrConfig, rel_err_table

args = parser(__doc__).parse_args()
write_rows(rel_err_table(RelErrConfig(trials=args.trials, seed=args.seed)), args.out)
