"""Three-valued epistemic logic on impure chromatic simplicial complexes."""

from .complex import (SimplexError, SimplicialModel, SkeletonError, Vertex, canonical_key,
                      check_simplicial_map, dimension, faces, find_isomorphism, is_full_pure,
                      is_isomorphic, is_pure, m_skeleton, normalize, skeleton_by_agents,
                      validate)
from .enumeration import EnumerationSpec, enumerate_formulas, enumerate_kripke, enumerate_simplicial
from .formula import (AgentTop, And, Formula, FormulaBindingError, FormulaSyntaxError, Hat, Iff,
                      Implies, Know, Neg, Or, Var, agents_of, check_binding, desugar, parse,
                      substitute, to_text, top_transform)
from .harness import SUITES, SuiteReport, run_suite, search_counterexample
from .kripke import (LocalEpistemicModel, NotLocalEpistemicError, denotation, eval3_k,
                     find_kripke_isomorphism, is_defined_k, kappa, roundtrip_check, sigma,
                     validate_kripke)
from .semantics import (PureSemanticsError, TruthValue, UndefinedFormulaError, check_axiom_instance,
                        check_rule, equivalent, eval3, eval_pure, eval_via_facets, is_defined,
                        reference_eval3, valid_over)

__version__ = "0.1.0"

__all__ = [
    "agents_of", "AgentTop", "And", "canonical_key", "check_axiom_instance", "check_binding",
    "check_rule", "check_simplicial_map", "denotation", "desugar", "dimension",
    "enumerate_formulas", "enumerate_kripke", "enumerate_simplicial", "EnumerationSpec",
    "equivalent", "eval3", "eval3_k", "eval_pure", "eval_via_facets", "faces", "find_isomorphism",
    "find_kripke_isomorphism", "Formula", "FormulaBindingError", "FormulaSyntaxError", "Hat",
    "Iff", "Implies", "is_defined", "is_defined_k", "is_full_pure", "is_isomorphic", "is_pure",
    "kappa", "Know", "LocalEpistemicModel", "m_skeleton", "Neg", "normalize",
    "NotLocalEpistemicError", "Or", "parse", "PureSemanticsError", "reference_eval3",
    "roundtrip_check", "run_suite", "search_counterexample", "sigma", "SimplexError",
    "SimplicialModel", "skeleton_by_agents", "SkeletonError", "substitute", "SuiteReport",
    "SUITES", "to_text", "top_transform", "TruthValue", "UndefinedFormulaError", "valid_over",
    "validate", "validate_kripke", "Var", "Vertex",
]
