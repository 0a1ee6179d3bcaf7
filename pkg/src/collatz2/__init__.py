"""Level decomposition of the naturals under the Collatz map."""

from .collatz3 import (OddLevelRecord, build_collatz3_direct, check_equivalence,
                       filter_odds)
from .core import (DEFAULT_BUDGET, StoppingCache, f_step, odd_step, stopping_steps,
                   trajectory)
from .cycles import (CycleBoundReport, Parity, ParityCase, classify_parity,
                     cycle_bound_report, cycle_divisor_bound, is_cyclic_pair,
                     pq_bounds, search_cyclic_pairs)
from .errors import (BudgetExceeded, CollatzError, NotOdd, NotRetained, OutOfRange,
                     Overflow, ParityError, ParseError, SchemaError)
from .levels import (LevelRecord, LevelTable, SeenSet, build_levels, level_elements,
                     maximal_of, query)
from .persistence import (export_levels, export_stats, import_levels,
                          load_oeis_fixture, oeis_crosscheck)
from .stats import (LemmaReport, StatsSeries, check_structure, lambda_of,
                    stats_series, verify_lemmas)

__version__ = "0.1.0"
