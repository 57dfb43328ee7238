"""Multi-resolution perception automata.

Functions on the perception space [-1, +1] are approximated by a hierarchy
of percept-let bases: two boundary bases at level 1, a mid-point bump at
level 2, and 2**(i-2) narrower bumps at level i. Each level corrects the
one before it, so the model can be read at any resolution.
"""
from .automaton import (Activation, Automaton, AutomatonConfig, Realization, decompose,
                        load_model, realize, save_model, timing_estimate)
from .basis import (BasisId, Perceptlet, ValidationReport, bases_up_to, centers_at_level,
                    eval_basis, eval_daughter, eval_father, eval_mother, grid_nodes,
                    validate_perceptlet)
from .errors import GridError, ModelFormatError, PerceptionDomainError
from .learner import (FitReport, OnlineTrainer, RlsState, Sample, batch_weight, fit_boundary,
                      fit_neighborhood, fit_online, is_hierarchical_order, rls_init, rls_update)
from .logic import (NULL, Association, Cbit, Tensor2, apply_association, cbit_and,
                    cbit_from_perception, cbit_or, complement, estimate_association,
                    perception_of, subspace_coordinates, tensor)
from .model import (PerceptionModel, TruncationReport, basis_count, evaluate,
                    from_perception_space, full_model, level_difference, range_violations,
                    realize_all_levels, resolution_for, to_perception_space, truncate)

__version__ = "0.1.0"
