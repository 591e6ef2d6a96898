"""fdekit: a many-valued propositional-logic kernel for the FDE family.

Eleven finitely-valued logics (FDE, K3, LP, M, their +cmi conditional
extensions, L3, RM3, and classical logic) with a shared formula language,
exhaustive consequence checking, defined connectives and quantified
constants, translations between synonymous logics, truth-function synthesis,
and a Fitch-style natural-deduction checker.  Everything is decidable by
finite enumeration and the kernel leans into that: brute-force sweeps over
all admitted valuations, accelerated by an optional compiled extension.
"""

from .values import TruthValue, VALUES, meet, join, negate, leq, from_letter
from .formulas import (
    Formula, Atom, Const, Neg, And, Or, Arrow, Hook, DArrow, Bicond, DBicond,
    Forall, Exists, FormulaError, FormulaSyntaxError,
    parse, render, free_atoms, substitute, substitute_all, positions,
    subformula_at, replace_at,
)
from .logics import (
    Logic, registry, get_logic, LOGIC_NAMES,
    LogicError, UnknownLogicError, UnsupportedConnectiveError, UnboundAtomError,
)
from .semantics import (
    Valuation, evaluate, enumerate_valuations, is_designated, apply_connective,
)
from .consequence import (
    Sequent, TruthTable, valid, entails, countermodel, countermodels,
    truth_table, equivalent,
)
from .interop import (
    Definition, BUILTIN_DEFINITIONS, expand, constant_check,
    block_closure_values, TranslationScheme, BUILTIN_SCHEMES, translate,
    SynonymyReport, SYNONYMY_PAIRS, check_synonymy,
)
from .synthesis import TruthFunction, value_probe, synthesize
from .proofs import (
    Step, Subproof, Proof, CheckReport, StepDiagnostic,
    ProofSyntaxError, ProofNotAcceptedError,
    parse_proof, check_proof, soundness_audit, load_corpus, corpus_paths,
)
from .kernel import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
