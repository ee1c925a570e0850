# pep8: noqa
from aspconf.exceptions import *
from aspconf.formula import Formula  # noqa

from .abduction import (
    AbductiveProgram,
    ChangeSet,
    NameMap,
    UpdateProgram,
    apply_changeset,
    extract_changeset,
    is_abducible,
    normal_form,
    u_minimal,
    update_program,
)
from .confidentiality import (
    DELETE_INSERT,
    DELETE_ONLY,
    ConfidentialitySetup,
    Policy,
    PtrProgram,
    PublishResult,
    PublishSolution,
    Transformation,
    VerificationReport,
    abducibles_deletion,
    brute_force_publish,
    dependency_abducibles,
    dependency_layers,
    is_skeptical_solution,
    minimality_audit,
    normalize_policy,
    ptr_cred,
    publish,
    transform,
    verify,
)
from .parser import SourceProgram, parse_policy, parse_program, parse_query, serialize
from .program import (
    Atom,
    BodyElem,
    Interpretation,
    Literal,
    Program,
    Rule,
    Term,
    free_vars,
    ground,
    reduct,
    satisfies,
    set_minus_modulo_inst,
    unify,
    variants_equal,
)
from .solver import (
    AnswerSetResult,
    Query,
    Solver,
    answer_sets,
    brute_force_answer_sets,
    cred,
    entails,
    is_consistent,
    least_model,
)

__license__ = "MIT"
__package__ = "aspconf"
__version__ = "0.1.0"
