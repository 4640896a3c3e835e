"""machlog: a workbench for straight-line machine-integer programs.

Programs are lists of atomic statements over integers bounded by a
machine parameter N.  The workbench parses and validates such programs,
interprets them (exhibiting the closure failures of bounded addition
and multiplication), and treats verified programs as proofs: axioms and
extracted theorems extend a proof by sublist derivation, proofs replay
line by line, and theorems are extracted from completed proofs.
"""

from .terms import (
    DEFAULT_CONFIG,
    Ident,
    Lit,
    MachineConfig,
    ParseError,
    TermError,
    concat,
    dedupe,
    extract,
    intersect,
    is_sublist,
    parse_term,
    parse_term_list,
    render_term,
    substitute,
)
from .programs import (
    MainIO,
    ProgramError,
    Statement,
    Violation,
    conc,
    derive_io,
    parse_program,
    parse_statement,
    render_program,
    validate_program,
)
from .equivalence import MatchResult, apply_renaming, eqio, eqseq, match_premise
from .machine import (
    CLOSURE_SCENARIOS,
    ClosureReport,
    ExecError,
    exec_atomic,
    falsify_closure,
    run_program,
)
from .store import Axiom, AxiomStore, Schema, StoreError, load_store, parse_store
from .engine import (
    Connection,
    DerivationOption,
    EngineError,
    ExtractionResult,
    ProofState,
    ReplayReport,
    StaleOptionError,
    apply_option,
    enumerate_options,
    extract_theorem,
    new_session,
    parse_proof,
    render_listing,
    render_proof_document,
    replay,
    undo,
)
from . import corpus

__version__ = "0.1.0"
