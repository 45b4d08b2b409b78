"""Communication-constrained Chow-Liu learning of tree-structured Gaussian graphical models."""

from .chowliu import EstimatedTree, kruskal_mwst, recover_tree
from .errors import DataError, IngestionError, NumericError, ParameterError
from .ggm import ShardSet, WeightedTree, covariance_from_tree, random_tree, sample_gaussian, shard, star_tree
from .quantizers import Codebook, QuantizedShard, build_codebook, decode, persym_encode, sign_encode
from .simnet import ProtocolConfig, run_protocol

__version__ = "0.1.0"
