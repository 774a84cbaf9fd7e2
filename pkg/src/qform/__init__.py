"""Primitive representations of integers by positive definite quaternary quadratic forms."""
from .enumeration import (ExceptionScan, Witness, exception_scan, find_vector, iter_vectors,
                          represents, represents_primitively, theta_prefix, vectors_with_norm)
from .errors import (CoreNotFound, CorpusError, InvalidForm, ParseError, QFormError,
                     QFormOverflowError, RecipeError)
from .forms import (FormRecord, GramLattice, ResidueClass, Sextuple, default_corpus, discriminant,
                    gram_from_sextuple, load_corpus, parse_sextuple, resolve_form)
from .isometry import IsometryWitness, embeds, is_isometric
from .local import (core_gen_predicate, genus_represents, primitively_represented_over_zp,
                    represented_over_zp, unimodular_rank_2adic)
from .transform import (CoreDecomposition, Sublattice, core_decomposition, lambda2,
                        lambda2_sublattice, orthogonal_complement)

__version__ = "0.1.0"
