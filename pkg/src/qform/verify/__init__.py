from .lemmas import (check_lemma_123, check_lemma_124, check_lemma_125, check_lemma_core1,
                     check_lemma_core2, check_oy_substitution, run_lemmas)
from .recipes import (TheoremRecipe, analogous_recipes, assemble, check_guard_partition,
                      check_theorem_recipe, thm124_instances, thm124_recipe, transcribed_recipes)
from .report import VerificationReport, all_passed, summary_table
from .suites import SUITES, SuiteConfig, run_suite
from .tables import reproduce_tables
from .watson import WATSON_PAIRS, check_watson_lemma, run_watson
